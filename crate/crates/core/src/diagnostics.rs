//! Pointwise hydraulic diagnostics: wave speeds, Froude number, critical and
//! normal depths, friction slopes, and the regime/slope taxonomies.

use crate::channel::{ChannelSpec, FrictionLaw};
use crate::error::{Error, Result};
use crate::num::Real;

/// Local flow regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowRegime {
    Subcritical,
    Supercritical,
    Critical,
    Dry,
}

/// Bottom-slope class of a reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeClass {
    Mild,
    Critical,
    Steep,
    Horizontal,
    Adverse,
}

impl SlopeClass {
    pub fn letter(&self) -> &'static str {
        match self {
            SlopeClass::Mild => "M",
            SlopeClass::Critical => "C",
            SlopeClass::Steep => "S",
            SlopeClass::Horizontal => "H",
            SlopeClass::Adverse => "A",
        }
    }
}

/// Tolerance on |Fr - 1| below which a state counts as critical.
pub const CRITICAL_FROUDE_TOL: f64 = 1e-10;
/// Relative tolerance for the h_n = h_c comparison in slope classification.
pub const SLOPE_CLASS_TOL: f64 = 1e-8;

fn dry_error<R: Real>(h: R, tolerance: R) -> Error {
    Error::Dry {
        depth: h.to_f64().unwrap_or(f64::NAN),
        tolerance: tolerance.to_f64().unwrap_or(f64::NAN),
    }
}

/// Characteristic wave speeds `(u - sqrt(gh), u + sqrt(gh))`.
///
/// The speeds coincide exactly when `h = 0`.
pub fn wave_speeds<R: Real>(h: R, u: R, gravity: R) -> Result<(R, R)> {
    if h < R::zero() {
        return Err(Error::NegativeDepth(h.to_f64().unwrap_or(f64::NAN)));
    }
    let c = (gravity * h).sqrt();
    Ok((u - c, u + c))
}

/// Froude number `|u| / sqrt(gh)`.
///
/// Signals [`Error::Dry`] for `h <= dry_tolerance` so no NaN can escape.
pub fn froude<R: Real>(h: R, u: R, gravity: R, dry_tolerance: R) -> Result<R> {
    if h <= dry_tolerance {
        return Err(dry_error(h, dry_tolerance));
    }
    Ok(u.abs() / (gravity * h).sqrt())
}

/// Critical depth `(|q| / sqrt(g))^(2/3)`; zero discharge gives zero.
pub fn critical_height<R: Real>(q: R, gravity: R) -> R {
    (q.abs() / gravity.sqrt()).powf(R::of(2.0 / 3.0))
}

/// Friction slope in the discharge form `S_f = C_f q|q| / h^p`.
///
/// The sign of the result follows the sign of `q`; a frictionless law gives
/// zero. Signals [`Error::Dry`] for `h <= dry_tolerance`.
pub fn friction_slope<R: Real>(
    law: &FrictionLaw<R>,
    h: R,
    q: R,
    gravity: R,
    dry_tolerance: R,
) -> Result<R> {
    if h <= dry_tolerance {
        return Err(dry_error(h, dry_tolerance));
    }
    if law.is_none() {
        return Ok(R::zero());
    }
    Ok(law.cf(gravity) * q * q.abs() / h.powf(law.depth_exponent()))
}

/// Normal depth: the unique `h_n > 0` with `S_f(h_n, q) = s0`, or `None`
/// when no such depth exists (horizontal or adverse slope, frictionless bed).
///
/// All shipped friction laws admit the closed form
/// `h_n = (C_f q^2 / s0)^(1/p)`.
pub fn normal_height<R: Real>(
    law: &FrictionLaw<R>,
    q: R,
    s0: R,
    gravity: R,
) -> Result<Option<R>> {
    if q == R::zero() {
        return Err(Error::ZeroDischarge);
    }
    if s0 <= R::zero() || law.is_none() {
        return Ok(None);
    }
    let p = law.depth_exponent();
    let hn = (law.cf(gravity) * q * q / s0).powf(p.recip());
    Ok(Some(hn))
}

/// Classifies the local flow regime from depth and unit discharge.
///
/// States at or below the dry tolerance are `Dry`, in line with the domain of
/// [`froude`]; the band `|Fr - 1| <= 1e-10` counts as `Critical`.
pub fn classify_regime<R: Real>(h: R, q: R, spec: &ChannelSpec<R>) -> FlowRegime {
    if h <= spec.dry_tolerance {
        return FlowRegime::Dry;
    }
    let fr = (q / h).abs() / (spec.gravity * h).sqrt();
    if (fr - R::one()).abs() <= R::of(CRITICAL_FROUDE_TOL) {
        FlowRegime::Critical
    } else if fr < R::one() {
        FlowRegime::Subcritical
    } else {
        FlowRegime::Supercritical
    }
}

/// Classifies the bottom slope by comparing normal and critical depths.
///
/// `Horizontal` for `s0 = 0`, `Adverse` for `s0 < 0`; otherwise mild, critical
/// or steep by the `h_n` vs `h_c` ordering at relative tolerance 1e-8.
pub fn classify_slope<R: Real>(
    law: &FrictionLaw<R>,
    q: R,
    s0: R,
    gravity: R,
) -> Result<SlopeClass> {
    if q == R::zero() {
        return Err(Error::ZeroDischarge);
    }
    if s0 == R::zero() {
        return Ok(SlopeClass::Horizontal);
    }
    if s0 < R::zero() {
        return Ok(SlopeClass::Adverse);
    }
    let hn = normal_height(law, q, s0, gravity)?.ok_or(Error::NoNormalDepth)?;
    let hc = critical_height(q, gravity);
    if (hn - hc).abs() <= R::of(SLOPE_CLASS_TOL) * hc.max(hn) {
        Ok(SlopeClass::Critical)
    } else if hn > hc {
        Ok(SlopeClass::Mild)
    } else {
        Ok(SlopeClass::Steep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    const G: f64 = 9.81;
    const DRY: f64 = 1e-8;

    /// Bisection oracle for the normal depth: root of s0 - S_f(h) on a wide
    /// bracket, independent of the closed form used by the implementation.
    fn normal_depth_bisection(law: &FrictionLaw<f64>, q: f64, s0: f64) -> f64 {
        let f = |h: f64| s0 - friction_slope(law, h, q, G, 0.0).unwrap();
        let (mut lo, mut hi) = (1e-6, 1e3);
        assert!(f(lo) < 0.0 && f(hi) > 0.0, "oracle bracket must straddle the root");
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn wave_speeds_dry_state_coincides() {
        let (l1, l2) = wave_speeds(0.0, 3.0, G).unwrap();
        assert_eq!((l1, l2), (3.0, 3.0));
    }

    #[test]
    fn wave_speeds_still_water_symmetric() {
        let (l1, l2) = wave_speeds(1.0, 0.0, G).unwrap();
        assert_relative_eq!(l1, -G.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(l2, G.sqrt(), max_relative = 1e-15);
        assert_abs_diff_eq!(l1, -3.1321, epsilon = 1e-4);
    }

    #[test]
    fn wave_speeds_match_jacobian_trace_and_determinant() {
        // For W = (h, hu) the flux Jacobian is [[0, 1], [gh - u^2, 2u]], so
        // the eigenvalues must satisfy l1 + l2 = 2u and l1 l2 = u^2 - gh.
        let (h, u) = (0.25, 2.0);
        let (l1, l2) = wave_speeds(h, u, G).unwrap();
        let trace = 2.0 * u;
        let det = u * u - G * h;
        assert_relative_eq!(l1 + l2, trace, max_relative = 1e-14);
        assert_relative_eq!(l1 * l2, det, max_relative = 1e-14);
        assert_relative_eq!(l1, 2.0 - 2.4525_f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(l2, 2.0 + 2.4525_f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn wave_speeds_reject_negative_depth() {
        assert!(matches!(wave_speeds(-0.1, 0.0, G), Err(Error::NegativeDepth(_))));
    }

    #[test]
    fn froude_still_and_critical() {
        assert_eq!(froude(1.0, 0.0, G, DRY).unwrap(), 0.0);
        let h = 0.37;
        let u = (G * h).sqrt();
        assert_relative_eq!(froude(h, u, G, DRY).unwrap(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn froude_value_and_sign_pattern() {
        let fr = froude(0.5, 2.0, G, DRY).unwrap();
        assert_abs_diff_eq!(fr, 0.9031, epsilon = 1e-4);
        // Fr < 1 exactly when the wave speeds straddle zero.
        let (l1, l2) = wave_speeds(0.5, 2.0, G).unwrap();
        assert!(fr < 1.0 && l1 < 0.0 && l2 > 0.0);
        let fr = froude(0.1, 2.0, G, DRY).unwrap();
        let (l1, l2) = wave_speeds(0.1, 2.0, G).unwrap();
        assert!(fr > 1.0 && l1 > 0.0 && l2 > 0.0);
    }

    #[test]
    fn froude_signals_dry() {
        assert!(matches!(froude(1e-9, 1.0, G, DRY), Err(Error::Dry { .. })));
        assert!(matches!(froude(DRY, 1.0, G, DRY), Err(Error::Dry { .. })));
    }

    #[test]
    fn critical_height_cases() {
        assert_eq!(critical_height(0.0, G), 0.0);
        assert_relative_eq!(critical_height(G.sqrt(), G), 1.0, max_relative = 1e-15);
        let hc = critical_height(2.0, G);
        assert_abs_diff_eq!(hc, 0.7416, epsilon = 1e-4);
        // Criticality oracle: Fr(h_c, q / h_c) = 1.
        assert_relative_eq!(froude(hc, 2.0 / hc, G, DRY).unwrap(), 1.0, max_relative = 1e-13);
    }

    #[test]
    fn friction_slope_families() {
        assert_eq!(friction_slope(&FrictionLaw::None, 1.0, 5.0, G, DRY).unwrap(), 0.0);
        let manning = friction_slope(&FrictionLaw::Manning(0.03), 1.0, 1.0, G, DRY).unwrap();
        assert_relative_eq!(manning, 9e-4, max_relative = 1e-14);
        let chezy = friction_slope(&FrictionLaw::Chezy(30.0), 0.5, 1.0, G, DRY).unwrap();
        assert_relative_eq!(chezy, 8.0 / 900.0, max_relative = 1e-14);
        assert_abs_diff_eq!(chezy, 8.889e-3, epsilon = 1e-6);
        // Velocity form C_f u|u| / h^(p-2) with u = q/h matches the discharge form.
        let (h, q): (f64, f64) = (0.5, 1.0);
        let u = q / h;
        let velocity_form = (1.0 / 900.0) * u * u.abs() / h;
        assert_relative_eq!(chezy, velocity_form, max_relative = 1e-14);
    }

    #[test]
    fn friction_slope_opposes_flow() {
        let law = FrictionLaw::Manning(0.03);
        let fwd = friction_slope(&law, 0.8, 1.3, G, DRY).unwrap();
        let bwd = friction_slope(&law, 0.8, -1.3, G, DRY).unwrap();
        assert_eq!(fwd, -bwd);
        assert!(fwd > 0.0);
    }

    #[test]
    fn normal_height_matches_bisection_oracle() {
        let law = FrictionLaw::Manning(0.03);
        let hn = normal_height(&law, 1.0, 0.001, G).unwrap().unwrap();
        let oracle = normal_depth_bisection(&law, 1.0, 0.001);
        assert_relative_eq!(hn, oracle, max_relative = 1e-10);
        assert_abs_diff_eq!(hn, 0.9689, epsilon = 1e-4);
        // Frozen from the oracle above.
        assert_relative_eq!(hn, 0.9688861611972633, max_relative = 1e-12);
    }

    #[test]
    fn normal_height_inverse_construction() {
        // Chezy with s0 = S_f evaluated at h = 2 must return exactly 2.
        let law = FrictionLaw::Chezy(30.0);
        let s0 = friction_slope(&law, 2.0, 1.0, G, DRY).unwrap();
        assert_relative_eq!(s0, 1.0 / 7200.0, max_relative = 1e-14);
        let hn = normal_height(&law, 1.0, s0, G).unwrap().unwrap();
        assert_relative_eq!(hn, 2.0, max_relative = 1e-13);
    }

    #[test]
    fn normal_height_edge_cases() {
        let law = FrictionLaw::Manning(0.03);
        assert_eq!(normal_height(&law, 1.0, 0.0, G).unwrap(), None);
        assert_eq!(normal_height(&law, 1.0, -0.02, G).unwrap(), None);
        assert_eq!(normal_height(&FrictionLaw::None, 1.0, 0.01, G).unwrap(), None);
        assert!(matches!(normal_height(&law, 0.0, 0.01, G), Err(Error::ZeroDischarge)));
    }

    #[test]
    fn regime_classification() {
        let spec = ChannelSpec::new(1.0_f64);
        assert_eq!(classify_regime(1.0, 0.0, &spec), FlowRegime::Subcritical);
        let hc = critical_height(2.0, G);
        assert_eq!(classify_regime(hc, 2.0, &spec), FlowRegime::Critical);
        assert_eq!(classify_regime(0.1, 1.0, &spec), FlowRegime::Supercritical);
        // Supercritical iff h < h_c for the same discharge.
        assert!(0.1 < critical_height(1.0, G));
        assert_eq!(classify_regime(1e-9, 0.0, &spec), FlowRegime::Dry);
    }

    #[test]
    fn slope_classification() {
        let law = FrictionLaw::Manning(0.03);
        assert_eq!(classify_slope(&law, 1.0, 0.0, G).unwrap(), SlopeClass::Horizontal);
        assert_eq!(classify_slope(&law, 1.0, -0.01, G).unwrap(), SlopeClass::Adverse);
        // h_n ~ 0.9689 > h_c ~ 0.4673 so the slope is mild.
        assert_eq!(classify_slope(&law, 1.0, 0.001, G).unwrap(), SlopeClass::Mild);
        assert_eq!(classify_slope(&law, 1.0, 0.05, G).unwrap(), SlopeClass::Steep);
        // Slope tuned so h_n = h_c.
        let hc = critical_height(1.0, G);
        let sc = friction_slope(&law, hc, 1.0, G, DRY).unwrap();
        assert_eq!(classify_slope(&law, 1.0, sc, G).unwrap(), SlopeClass::Critical);
        assert!(matches!(classify_slope(&law, 0.0, 0.001, G), Err(Error::ZeroDischarge)));
        assert!(matches!(
            classify_slope(&FrictionLaw::None, 1.0, 0.001, G),
            Err(Error::NoNormalDepth)
        ));
    }

    #[test]
    fn generic_scalar_f32_agrees() {
        let hc32 = critical_height(2.0_f32, 9.81);
        assert!((hc32 as f64 - critical_height(2.0_f64, 9.81)).abs() < 1e-6);
    }
}
