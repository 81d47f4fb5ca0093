//! Gradually-varied-flow engine: the thirteen backwater profile types and the
//! direction-aware integration of `dh/dx = (S0 - S_f) / (1 - Fr^2)`.

use crate::channel::ChannelSpec;
use crate::diagnostics::{classify_slope, critical_height, friction_slope, normal_height, SlopeClass};
use crate::error::{Error, Result};
use crate::num::Real;
use crate::profile::{Grid1, SolutionProfile};

/// Guard on |1 - Fr^2| below which the backwater equation counts as singular.
pub const SINGULARITY_GUARD: f64 = 1e-6;
/// Relative tolerance on depth comparisons against the h_n / h_c lines.
pub const ZONE_TOL: f64 = 1e-6;

/// One of the thirteen admissible backwater profile types.
///
/// Mild, steep and critical slopes admit zones 1-3 (the critical class
/// degenerates to the uniform C2 profile between its coincident dividing
/// lines); horizontal and adverse slopes have no normal depth and admit only
/// zones 2 and 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileType {
    slope: SlopeClass,
    zone: u8,
}

impl ProfileType {
    pub fn new(slope: SlopeClass, zone: u8) -> Result<Self> {
        let admissible = match slope {
            SlopeClass::Mild | SlopeClass::Steep | SlopeClass::Critical => (1..=3).contains(&zone),
            SlopeClass::Horizontal | SlopeClass::Adverse => zone == 2 || zone == 3,
        };
        if admissible {
            Ok(Self { slope, zone })
        } else {
            Err(Error::InvalidProfileType { slope: slope.letter(), zone })
        }
    }

    pub fn slope(&self) -> SlopeClass {
        self.slope
    }

    pub fn zone(&self) -> u8 {
        self.zone
    }

    /// All thirteen admissible types, M1 through A3.
    pub fn all() -> Vec<ProfileType> {
        let mut out = Vec::with_capacity(13);
        for slope in [
            SlopeClass::Mild,
            SlopeClass::Steep,
            SlopeClass::Critical,
            SlopeClass::Horizontal,
            SlopeClass::Adverse,
        ] {
            for zone in 1..=3 {
                if let Ok(t) = ProfileType::new(slope, zone) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Sign of `dh/dx` for this type: +1 rising downstream, -1 falling,
    /// 0 for the uniform C2 profile.
    pub fn depth_trend(&self) -> i8 {
        match (self.slope, self.zone) {
            (SlopeClass::Critical, 2) => 0,
            (_, 2) => -1,
            _ => 1,
        }
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.slope.letter(), self.zone)
    }
}

/// A single-reach backwater problem.
#[derive(Debug, Clone)]
pub struct GvfProblem<R> {
    pub spec: ChannelSpec<R>,
    /// Constant unit discharge along the reach.
    pub q0: R,
    /// Constant bed slope of the reach.
    pub s0: R,
    /// Depth imposed at the control section (downstream when subcritical,
    /// upstream when supercritical).
    pub boundary_depth: R,
    pub reach_length: R,
    pub n_cells: usize,
}

impl<R: Real> GvfProblem<R> {
    pub fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        if self.q0 == R::zero() {
            return Err(Error::ZeroDischarge);
        }
        if self.spec.rain_rate != R::zero() || self.spec.viscosity != R::zero() {
            return Err(Error::InvalidConfig(
                "backwater profiles assume no rain and no viscosity".into(),
            ));
        }
        if self.boundary_depth <= self.spec.dry_tolerance {
            return Err(Error::InvalidConfig("boundary depth must be wet".into()));
        }
        if self.n_cells < 2 {
            return Err(Error::InvalidConfig("need at least two cells".into()));
        }
        if self.reach_length <= R::zero() {
            return Err(Error::InvalidConfig("reach length must be positive".into()));
        }
        Ok(())
    }

    fn froude_sq(&self, h: R) -> R {
        self.q0 * self.q0 / (self.spec.gravity * h * h * h)
    }
}

/// Right-hand side of the backwater equation at depth `h`.
///
/// Errors with [`Error::CriticalSingularity`] when `|1 - Fr^2|` falls below
/// the guard, and with [`Error::Dry`] below the dry tolerance.
pub fn gvf_rhs<R: Real>(problem: &GvfProblem<R>, h: R) -> Result<R> {
    let spec = &problem.spec;
    if h <= spec.dry_tolerance {
        return Err(Error::Dry {
            depth: h.to_f64().unwrap_or(f64::NAN),
            tolerance: spec.dry_tolerance.to_f64().unwrap_or(f64::NAN),
        });
    }
    let sf = friction_slope(&spec.friction, h, problem.q0, spec.gravity, spec.dry_tolerance)?;
    let denom = R::one() - problem.froude_sq(h);
    if denom.abs() < R::of(SINGULARITY_GUARD) {
        return Err(Error::CriticalSingularity { position: f64::NAN });
    }
    Ok((problem.s0 - sf) / denom)
}

/// Classifies the profile type from the boundary depth and the slope class.
///
/// Within the relative tolerance [`ZONE_TOL`] of a dividing line the zone is
/// ambiguous, except on a critical slope where the coincident lines make the
/// uniform C2 profile the unambiguous answer.
pub fn classify_profile<R: Real>(problem: &GvfProblem<R>) -> Result<ProfileType> {
    problem.validate()?;
    let spec = &problem.spec;
    let slope = classify_slope(&spec.friction, problem.q0, problem.s0, spec.gravity)?;
    let hc = critical_height(problem.q0, spec.gravity);
    let depth = problem.boundary_depth;
    let tol = R::of(ZONE_TOL);

    let near = |line: R| (depth - line).abs() <= tol * line.max(depth);

    match slope {
        SlopeClass::Critical => {
            if near(hc) {
                return ProfileType::new(slope, 2);
            }
            let zone = if depth > hc { 1 } else { 3 };
            ProfileType::new(slope, zone)
        }
        SlopeClass::Horizontal | SlopeClass::Adverse => {
            if near(hc) {
                return Err(Error::AmbiguousZone {
                    depth: depth.to_f64().unwrap_or(f64::NAN),
                    line: "critical-depth",
                });
            }
            let zone = if depth > hc { 2 } else { 3 };
            ProfileType::new(slope, zone)
        }
        SlopeClass::Mild | SlopeClass::Steep => {
            let hn = normal_height(&spec.friction, problem.q0, problem.s0, spec.gravity)?
                .ok_or(Error::NoNormalDepth)?;
            if near(hn) {
                return Err(Error::AmbiguousZone {
                    depth: depth.to_f64().unwrap_or(f64::NAN),
                    line: "normal-depth",
                });
            }
            if near(hc) {
                return Err(Error::AmbiguousZone {
                    depth: depth.to_f64().unwrap_or(f64::NAN),
                    line: "critical-depth",
                });
            }
            let upper = hn.max(hc);
            let lower = hn.min(hc);
            let zone = if depth > upper {
                1
            } else if depth > lower {
                2
            } else {
                3
            };
            ProfileType::new(slope, zone)
        }
    }
}

/// Integration direction implied by the boundary regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum March {
    /// Subcritical: control downstream, march upstream (negative x steps).
    Upstream,
    /// Supercritical: control upstream, march downstream.
    Downstream,
}

fn rk4_step<R: Real>(problem: &GvfProblem<R>, h: R, dx: R) -> Result<R> {
    let k1 = gvf_rhs(problem, h)?;
    let k2 = gvf_rhs(problem, h + dx.half() * k1)?;
    let k3 = gvf_rhs(problem, h + dx.half() * k2)?;
    let k4 = gvf_rhs(problem, h + dx * k3)?;
    Ok(h + dx / R::of(6.0) * (k1 + R::of(2.0) * (k2 + k3) + k4))
}

/// Integrates the backwater profile over the reach `[0, reach_length]`.
///
/// Marches with classical fourth-order Runge-Kutta from the control boundary
/// (downstream end for subcritical profiles, upstream end otherwise) to every
/// cell center. Topography is rebuilt from the bed slope with `z = 0` at the
/// downstream end.
///
/// A boundary depth within [`ZONE_TOL`] of the normal depth is accepted as
/// uniform flow and returns the exact constant profile; this also covers the
/// degenerate C2 type, whose dividing lines coincide.
pub fn integrate_backwater<R: Real>(problem: &GvfProblem<R>) -> Result<SolutionProfile<R>> {
    problem.validate()?;
    let grid = Grid1::new(R::zero(), problem.reach_length, problem.n_cells)?;
    let spec = &problem.spec;
    let mk_profile = |grid: Grid1<R>, h: Vec<R>| -> Result<SolutionProfile<R>> {
        let u: Vec<R> = h.iter().map(|&hi| problem.q0 / hi).collect();
        let z: Vec<R> =
            grid.centers().map(|x| problem.s0 * (problem.reach_length - x)).collect();
        SolutionProfile::new(grid, h, u, z, R::zero())
    };

    if let Some(hn) = normal_height(&spec.friction, problem.q0, problem.s0, spec.gravity)? {
        let depth = problem.boundary_depth;
        if (depth - hn).abs() <= R::of(ZONE_TOL) * hn.max(depth) {
            // Fixed point of the backwater equation: uniform flow.
            return mk_profile(grid, vec![depth; grid.n]);
        }
    }

    // Classification is also the precondition gate (ambiguous boundaries
    // error out here).
    let _profile_type = classify_profile(problem)?;

    // Subcritical flow is controlled from downstream, supercritical from
    // upstream; the regime is the position relative to critical depth.
    let hc = critical_height(problem.q0, spec.gravity);
    let boundary_above_critical = problem.boundary_depth > hc;
    let march = if boundary_above_critical { March::Upstream } else { March::Downstream };

    let mut h = vec![R::zero(); grid.n];
    let mut depth = problem.boundary_depth;
    let order: Box<dyn Iterator<Item = usize>> = match march {
        March::Upstream => Box::new((0..grid.n).rev()),
        March::Downstream => Box::new(0..grid.n),
    };
    // The first step covers the half cell from the boundary face to the
    // nearest center, then whole cells follow.
    let mut position = match march {
        March::Upstream => grid.end(),
        March::Downstream => R::zero(),
    };
    for i in order {
        let target = grid.center(i);
        let dx = target - position;
        // Stage failures here mean the step ran into the critical-depth
        // singularity: the right-hand side blows up on approach, so stages
        // either trip the guard or overshoot into invalid depths.
        depth = rk4_step(problem, depth, dx).map_err(|e| match e {
            Error::CriticalSingularity { .. } | Error::Dry { .. } => Error::PartialProfile {
                position: position.to_f64().unwrap_or(f64::NAN),
                reason: "profile reached critical depth".into(),
            },
            other => other,
        })?;
        // A step that lands on the other side of h_c overran the singularity
        // that the pointwise guard is too narrow to catch.
        if (depth > hc) != boundary_above_critical {
            return Err(Error::PartialProfile {
                position: position.to_f64().unwrap_or(f64::NAN),
                reason: "profile reached critical depth".into(),
            });
        }
        if depth <= spec.dry_tolerance {
            return Err(Error::DryOut { position: target.to_f64().unwrap_or(f64::NAN) });
        }
        h[i] = depth;
        position = target;
    }
    mk_profile(grid, h)
}

/// Depth extrapolated from the profile end to the reach face, for comparing
/// integrations whose cell centers do not coincide.
#[cfg(test)]
fn upstream_face_depth<R: Real>(problem: &GvfProblem<R>, profile: &SolutionProfile<R>) -> R {
    rk4_step(problem, profile.h[0], -profile.grid.center(0)).unwrap()
}

/// Joins contiguous single-reach profiles into one composite profile.
///
/// Grids must share the spacing and abut exactly; the unit discharge must be
/// identical across reaches. Per-reach topography datums are shifted so the
/// composite bed is continuous, keeping `z = 0` at the global downstream end.
pub fn concatenate_reaches<R: Real>(profiles: &[SolutionProfile<R>]) -> Result<SolutionProfile<R>> {
    let first = profiles
        .first()
        .ok_or_else(|| Error::InvalidConfig("no reaches to concatenate".into()))?;
    if profiles.len() == 1 {
        return Ok(first.clone());
    }
    let dx = first.grid.dx;
    let tol = dx * R::of(1e-9);
    let mut q_ref: Option<R> = None;
    for p in profiles {
        if (p.grid.dx - dx).abs() > tol {
            return Err(Error::GridMismatch("reaches must share the cell size".into()));
        }
        for i in 0..p.grid.n {
            let q = p.q(i);
            match q_ref {
                None => q_ref = Some(q),
                Some(q0) => {
                    if (q - q0).abs() > R::of(1e-9) * q0.abs().max(R::one()) {
                        return Err(Error::InvalidConfig(format!(
                            "discharge discontinuity: {q} vs {q0}"
                        )));
                    }
                }
            }
        }
    }
    for pair in profiles.windows(2) {
        let gap = (pair[1].grid.origin - pair[0].grid.end()).abs();
        if gap > tol {
            return Err(Error::GridMismatch(format!(
                "reaches are not contiguous: gap {gap}"
            )));
        }
    }

    // Shift topography datums so the bed is continuous at every junction,
    // keeping z = 0 at the global downstream end.
    let mut z_offsets = vec![R::zero(); profiles.len()];
    for k in (0..profiles.len() - 1).rev() {
        let left = &profiles[k];
        let right = &profiles[k + 1];
        let z_left_at_face = left.z[left.grid.n - 1]
            - slope_of(left) * (left.grid.end() - left.grid.center(left.grid.n - 1));
        let z_right_at_face = right.z[0]
            + slope_of(right) * (right.grid.center(0) - right.grid.origin)
            + z_offsets[k + 1];
        z_offsets[k] = z_right_at_face - z_left_at_face;
    }

    let n_total: usize = profiles.iter().map(|p| p.grid.n).sum();
    let grid = Grid1 { origin: first.grid.origin, dx, n: n_total };
    let mut h = Vec::with_capacity(n_total);
    let mut u = Vec::with_capacity(n_total);
    let mut z = Vec::with_capacity(n_total);
    for (k, p) in profiles.iter().enumerate() {
        h.extend_from_slice(&p.h);
        u.extend_from_slice(&p.u);
        z.extend(p.z.iter().map(|&zi| zi + z_offsets[k]));
    }
    SolutionProfile::new(grid, h, u, z, first.time)
}

/// Bed slope of a reach recovered from its topography samples.
fn slope_of<R: Real>(p: &SolutionProfile<R>) -> R {
    if p.grid.n < 2 {
        return R::zero();
    }
    -(p.z[p.grid.n - 1] - p.z[0]) / (p.grid.center(p.grid.n - 1) - p.grid.center(0))
}
