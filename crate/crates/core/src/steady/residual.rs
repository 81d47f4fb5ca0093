//! Independent verification oracle for steady profiles: evaluates the steady
//! momentum balance and the discharge law with high-order finite differences
//! on the profile's own grid.

use crate::channel::ChannelSpec;
use crate::diagnostics::friction_slope;
use crate::error::{Error, Result};
use crate::num::Real;
use crate::profile::SolutionProfile;
use crate::steady::rain_discharge;

/// Maximum defects of the steady balance over the evaluated cells.
#[derive(Debug, Clone, Copy)]
pub struct SteadyDefect<R> {
    /// L-infinity defect of the momentum balance, in slope units.
    pub momentum: R,
    /// L-infinity defect of `q(x) = R x + q0`.
    pub discharge: R,
    /// Number of cells that entered the momentum norm.
    pub evaluated: usize,
}

/// First derivative of sampled values: 6th-order central stencils in the
/// interior, one-sided/offset 4th-order stencils on the three cells at each
/// boundary. `valid` marks samples that may enter a stencil; outputs carry
/// their own validity.
fn derivative<R: Real>(f: &[R], valid: &[bool], dx: R) -> (Vec<R>, Vec<bool>) {
    let n = f.len();
    let mut out = vec![R::zero(); n];
    let mut ok = vec![false; n];
    let c60 = R::of(60.0);
    let c12 = R::of(12.0);
    for i in 0..n {
        let (value, window): (R, std::ops::RangeInclusive<usize>) = if i >= 3 && i + 3 < n {
            (
                (-f[i - 3] + R::of(9.0) * f[i - 2] - R::of(45.0) * f[i - 1] + R::of(45.0) * f[i + 1]
                    - R::of(9.0) * f[i + 2]
                    + f[i + 3])
                    / (c60 * dx),
                i - 3..=i + 3,
            )
        } else if i == 0 {
            (
                (R::of(-25.0) * f[0] + R::of(48.0) * f[1] - R::of(36.0) * f[2] + R::of(16.0) * f[3]
                    - R::of(3.0) * f[4])
                    / (c12 * dx),
                0..=4,
            )
        } else if i == 1 {
            (
                (R::of(-3.0) * f[0] - R::of(10.0) * f[1] + R::of(18.0) * f[2] - R::of(6.0) * f[3]
                    + f[4])
                    / (c12 * dx),
                0..=4,
            )
        } else if i == 2 {
            ((f[0] - R::of(8.0) * f[1] + R::of(8.0) * f[3] - f[4]) / (c12 * dx), 0..=4)
        } else if i == n - 3 {
            (
                (f[n - 5] - R::of(8.0) * f[n - 4] + R::of(8.0) * f[n - 2] - f[n - 1]) / (c12 * dx),
                n - 5..=n - 1,
            )
        } else if i == n - 2 {
            (
                (R::of(3.0) * f[n - 1] + R::of(10.0) * f[n - 2] - R::of(18.0) * f[n - 3]
                    + R::of(6.0) * f[n - 4]
                    - f[n - 5])
                    / (c12 * dx),
                n - 5..=n - 1,
            )
        } else {
            (
                (R::of(25.0) * f[n - 1] - R::of(48.0) * f[n - 2] + R::of(36.0) * f[n - 3]
                    - R::of(16.0) * f[n - 4]
                    + R::of(3.0) * f[n - 5])
                    / (c12 * dx),
                n - 5..=n - 1,
            )
        };
        out[i] = value;
        ok[i] = window.clone().all(|k| valid[k]);
    }
    (out, ok)
}

/// Evaluates both steady balance lines on the profile:
///
/// * momentum: `dz/dx = (q^2/(g h^3) - 1) dh/dx - S_f + (mu/(g h)) d/dx(h d(q/h)/dx)`
/// * discharge: `q(x) = R x + q0`
///
/// Cells are skipped wherever a stencil window touches a dry cell. Needs at
/// least 8 cells.
pub fn steady_residual<R: Real>(
    profile: &SolutionProfile<R>,
    spec: &ChannelSpec<R>,
    q0: R,
) -> Result<SteadyDefect<R>> {
    let n = profile.grid.n;
    if n < 8 {
        return Err(Error::StencilTooCoarse { cells: n, required: 8 });
    }
    let g = spec.gravity;
    let dx = profile.grid.dx;
    let wet: Vec<bool> = profile.h.iter().map(|&h| h > spec.dry_tolerance).collect();
    let q: Vec<R> = (0..n).map(|i| profile.q(i)).collect();

    let mut discharge = R::zero();
    for (i, x) in profile.grid.centers().enumerate() {
        if wet[i] {
            discharge = discharge.max((q[i] - rain_discharge(spec, q0, x)).abs());
        }
    }

    let (dh, dh_ok) = derivative(&profile.h, &wet, dx);
    let (dz, dz_ok) = derivative(&profile.z, &wet, dx);

    // Viscous contribution needs the nested derivative of h * d(q/h)/dx.
    let viscous: Option<(Vec<R>, Vec<bool>)> = if spec.viscosity > R::zero() {
        let w: Vec<R> =
            (0..n).map(|i| if wet[i] { q[i] / profile.h[i] } else { R::zero() }).collect();
        let (dw, dw_ok) = derivative(&w, &wet, dx);
        let v: Vec<R> = (0..n).map(|i| profile.h[i] * dw[i]).collect();
        let (dv, dv_ok) = derivative(&v, &dw_ok, dx);
        let ok = (0..n).map(|i| dv_ok[i] && dw_ok[i]).collect();
        Some((dv, ok))
    } else {
        None
    };

    let mut momentum = R::zero();
    let mut evaluated = 0usize;
    for i in 0..n {
        if !(wet[i] && dh_ok[i] && dz_ok[i]) {
            continue;
        }
        let h = profile.h[i];
        let sf = friction_slope(&spec.friction, h, q[i], g, spec.dry_tolerance)?;
        let mut expected = (q[i] * q[i] / (g * h * h * h) - R::one()) * dh[i] - sf;
        if let Some((dv, ok)) = &viscous {
            if !ok[i] {
                continue;
            }
            expected += spec.viscosity / (g * h) * dv[i];
        }
        momentum = momentum.max((dz[i] - expected).abs());
        evaluated += 1;
    }
    if evaluated == 0 {
        return Err(Error::InvalidConfig("no wet stencil window to evaluate".into()));
    }
    Ok(SteadyDefect { momentum, discharge, evaluated })
}
