//! First-order finite-volume solver: Rusanov flux, hydrostatic reconstruction
//! or naive centered topography source, semi-implicit friction.

use crate::channel::{ChannelSpec, FrictionLaw};
use crate::error::{Error, Result};
use crate::num::Real;
use crate::profile::SolutionProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluxScheme {
    /// Local Lax-Friedrichs.
    Rusanov,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopographyScheme {
    /// Well-balanced interface reconstruction.
    HydrostaticReconstruction,
    /// Pointwise centered source term; deliberately not well-balanced.
    NaiveCentered,
}

/// Boundary treatment of one domain side.
///
/// Inflow and outflow follow the characteristic counting rule: subcritical
/// inflow imposes the discharge, subcritical outflow imposes the depth,
/// supercritical inflow imposes both, supercritical outflow copies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundarySide<R> {
    Wall,
    Free,
    Inflow { q: R, h: R },
    Outflow { h: R },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeConfig<R> {
    pub flux: FluxScheme,
    pub topography: TopographyScheme,
    pub cfl: R,
    pub left: BoundarySide<R>,
    pub right: BoundarySide<R>,
    pub periodic: bool,
    /// Hard cap on time steps per run.
    pub max_steps: usize,
}

impl<R: Real> SchemeConfig<R> {
    pub fn hydrostatic() -> Self {
        Self {
            flux: FluxScheme::Rusanov,
            topography: TopographyScheme::HydrostaticReconstruction,
            cfl: R::of(0.8),
            left: BoundarySide::Wall,
            right: BoundarySide::Wall,
            periodic: false,
            max_steps: 2_000_000,
        }
    }

    pub fn naive() -> Self {
        Self { topography: TopographyScheme::NaiveCentered, ..Self::hydrostatic() }
    }

    pub fn with_cfl(mut self, cfl: R) -> Self {
        self.cfl = cfl;
        self
    }

    pub fn with_boundaries(mut self, left: BoundarySide<R>, right: BoundarySide<R>) -> Self {
        self.left = left;
        self.right = right;
        self.periodic = false;
        self
    }

    pub fn periodic(mut self) -> Self {
        self.periodic = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.cfl <= R::zero() || self.cfl > R::one() {
            return Err(Error::InvalidConfig(format!(
                "Courant number must lie in (0, 1], got {}",
                self.cfl
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell<R> {
    h: R,
    q: R,
}

fn pressure<R: Real>(g: R, h: R) -> R {
    g * h * h.half()
}

fn physical_flux<R: Real>(g: R, w: Cell<R>, dry_tol: R) -> (R, R) {
    if w.h <= dry_tol {
        return (R::zero(), R::zero());
    }
    let u = w.q / w.h;
    (w.q, w.q * u + pressure(g, w.h))
}

fn max_signal<R: Real>(g: R, w: Cell<R>, dry_tol: R) -> R {
    if w.h <= dry_tol {
        return R::zero();
    }
    (w.q / w.h).abs() + (g * w.h).sqrt()
}

fn rusanov<R: Real>(g: R, left: Cell<R>, right: Cell<R>, dry_tol: R) -> (R, R) {
    let (fl_h, fl_q) = physical_flux(g, left, dry_tol);
    let (fr_h, fr_q) = physical_flux(g, right, dry_tol);
    let c = max_signal(g, left, dry_tol).max(max_signal(g, right, dry_tol));
    (
        (fl_h + fr_h).half() - c.half() * (right.h - left.h),
        (fl_q + fr_q).half() - c.half() * (right.q - left.q),
    )
}

fn ghost_state<R: Real>(side: &BoundarySide<R>, adjacent: Cell<R>, g: R, dry_tol: R) -> Cell<R> {
    match *side {
        BoundarySide::Wall => Cell { h: adjacent.h, q: -adjacent.q },
        BoundarySide::Free => adjacent,
        BoundarySide::Inflow { q, h } => {
            let fr = if h > dry_tol { (q / h).abs() / (g * h).sqrt() } else { R::zero() };
            if fr >= R::one() {
                Cell { h, q }
            } else {
                // Subcritical inflow: impose the discharge, let the depth
                // come from the interior.
                Cell { h: adjacent.h, q }
            }
        }
        BoundarySide::Outflow { h } => {
            let fr = if adjacent.h > dry_tol {
                (adjacent.q / adjacent.h).abs() / (g * adjacent.h).sqrt()
            } else {
                R::zero()
            };
            if fr >= R::one() {
                adjacent
            } else {
                // Subcritical outflow: impose the depth, copy the velocity.
                let u = if adjacent.h > dry_tol { adjacent.q / adjacent.h } else { R::zero() };
                Cell { h, q: h * u }
            }
        }
    }
}

/// In-flight solver state; one `advance` call is one explicit step.
struct Stepper<'a, R> {
    spec: &'a ChannelSpec<R>,
    scheme: &'a SchemeConfig<R>,
    z: &'a [R],
    dx: R,
    state: Vec<Cell<R>>,
    time: R,
    steps: usize,
    friction_cf: R,
    friction_exponent: R,
}

impl<'a, R: Real> Stepper<'a, R> {
    fn new(
        initial: &'a SolutionProfile<R>,
        spec: &'a ChannelSpec<R>,
        scheme: &'a SchemeConfig<R>,
    ) -> Result<Self> {
        spec.validate()?;
        scheme.validate()?;
        initial.validate(spec.dry_tolerance)?;
        let state =
            (0..initial.grid.n).map(|i| Cell { h: initial.h[i], q: initial.q(i) }).collect();
        Ok(Self {
            spec,
            scheme,
            z: &initial.z,
            dx: initial.grid.dx,
            state,
            time: initial.time,
            steps: 0,
            friction_cf: spec.friction.cf(spec.gravity),
            friction_exponent: match spec.friction {
                FrictionLaw::Manning(_) => R::of(4.0 / 3.0),
                _ => R::one(),
            },
        })
    }

    /// One explicit step, no longer than `dt_cap`. Returns the step actually
    /// taken.
    fn advance(&mut self, dt_cap: Option<R>) -> Result<R> {
        let n = self.state.len();
        let g = self.spec.gravity;
        let dry = self.spec.dry_tolerance;

        let (ghost_left, ghost_right, z_left, z_right) = if self.scheme.periodic {
            (self.state[n - 1], self.state[0], self.z[n - 1], self.z[0])
        } else {
            (
                ghost_state(&self.scheme.left, self.state[0], g, dry),
                ghost_state(&self.scheme.right, self.state[n - 1], g, dry),
                self.z[0],
                self.z[n - 1],
            )
        };

        let lambda = self
            .state
            .iter()
            .map(|&w| max_signal(g, w, dry))
            .fold(R::zero(), R::max)
            .max(max_signal(g, ghost_left, dry))
            .max(max_signal(g, ghost_right, dry));
        let mut dt = if lambda > R::of(1e-14) {
            self.scheme.cfl * self.dx / lambda
        } else {
            // Fully dry or still: nothing moves, jump ahead.
            dt_cap.unwrap_or(self.dx)
        };
        if let Some(cap) = dt_cap {
            dt = dt.min(cap);
        }
        let sigma = dt / self.dx;

        let cell_at = |i: isize| -> (Cell<R>, R) {
            if i < 0 {
                (ghost_left, z_left)
            } else if i as usize >= n {
                (ghost_right, z_right)
            } else {
                (self.state[i as usize], self.z[i as usize])
            }
        };

        let mut flux_h = vec![R::zero(); n + 1];
        let mut flux_q = vec![R::zero(); n + 1];
        let mut press_left = vec![R::zero(); n + 1];
        let mut press_right = vec![R::zero(); n + 1];
        for k in 0..=n {
            let (wl, zl) = cell_at(k as isize - 1);
            let (wr, zr) = cell_at(k as isize);
            match self.scheme.topography {
                TopographyScheme::HydrostaticReconstruction => {
                    let z_face = zl.max(zr);
                    let hl_star = (wl.h + zl - z_face).max(R::zero());
                    let hr_star = (wr.h + zr - z_face).max(R::zero());
                    let ul = if wl.h > dry { wl.q / wl.h } else { R::zero() };
                    let ur = if wr.h > dry { wr.q / wr.h } else { R::zero() };
                    let (fh, fq) = rusanov(
                        g,
                        Cell { h: hl_star, q: hl_star * ul },
                        Cell { h: hr_star, q: hr_star * ur },
                        dry,
                    );
                    flux_h[k] = fh;
                    flux_q[k] = fq;
                    press_left[k] = pressure(g, hl_star);
                    press_right[k] = pressure(g, hr_star);
                }
                TopographyScheme::NaiveCentered => {
                    let (fh, fq) = rusanov(g, wl, wr, dry);
                    flux_h[k] = fh;
                    flux_q[k] = fq;
                }
            }
        }

        let z_at = |i: isize| -> R {
            if i < 0 {
                z_left
            } else if i as usize >= n {
                z_right
            } else {
                self.z[i as usize]
            }
        };
        let h_scale = self.state.iter().fold(R::zero(), |m, c| m.max(c.h));
        let dust_floor = -R::of(1e3) * R::epsilon() * (h_scale + R::one());
        for i in 0..n {
            let old = self.state[i];
            let mut h_new = old.h - sigma * (flux_h[i + 1] - flux_h[i]);
            let mut q_new = match self.scheme.topography {
                TopographyScheme::HydrostaticReconstruction => {
                    // Factored so the balanced pressure terms cancel exactly
                    // at rest.
                    old.q
                        - sigma
                            * ((flux_q[i + 1] - press_left[i + 1])
                                - (flux_q[i] - press_right[i]))
                }
                TopographyScheme::NaiveCentered => {
                    let source = -g * old.h * (z_at(i as isize + 1) - z_at(i as isize - 1))
                        / (R::of(2.0) * self.dx);
                    old.q - sigma * (flux_q[i + 1] - flux_q[i]) + dt * source
                }
            };
            if h_new < R::zero() {
                // Roundoff dust below the positivity floor is flushed to
                // zero; anything larger is a genuine stability failure.
                if h_new >= dust_floor {
                    h_new = R::zero();
                } else {
                    return Err(Error::Stability {
                        step: self.steps,
                        cell: i,
                        reason: format!("negative depth {h_new}"),
                    });
                }
            }
            if self.spec.rain_rate > R::zero() {
                h_new += self.spec.rain_rate * dt;
            }
            if self.friction_cf > R::zero() && h_new > dry {
                // Semi-implicit friction: the velocity magnitude shrinks and
                // cannot flip sign within the step.
                let u = q_new / h_new;
                let damp = R::one()
                    + dt * g * self.friction_cf * u.abs() / h_new.powf(self.friction_exponent);
                q_new = h_new * (u / damp);
            }
            if h_new <= dry {
                q_new = R::zero();
            }
            if !h_new.is_finite() || !q_new.is_finite() {
                return Err(Error::NumericalFailure { step: self.steps, cell: i });
            }
            self.state[i] = Cell { h: h_new, q: q_new };
        }

        self.time += dt;
        self.steps += 1;
        Ok(dt)
    }

    fn into_profile(self, initial: &SolutionProfile<R>) -> Result<SolutionProfile<R>> {
        let dry = self.spec.dry_tolerance;
        let h: Vec<R> = self.state.iter().map(|c| c.h).collect();
        let u: Vec<R> =
            self.state.iter().map(|c| if c.h > dry { c.q / c.h } else { R::zero() }).collect();
        let mut out = SolutionProfile::new(initial.grid, h, u, initial.z.clone(), self.time)?;
        out.settle_dry(dry);
        Ok(out)
    }
}

/// Advances the initial profile to `t_end` with the explicit first-order
/// scheme. Depth positivity is maintained; the lake at rest is a bitwise
/// fixed point under hydrostatic reconstruction.
pub fn run_solver<R: Real>(
    initial: &SolutionProfile<R>,
    spec: &ChannelSpec<R>,
    scheme: &SchemeConfig<R>,
    t_end: R,
) -> Result<SolutionProfile<R>> {
    if t_end < initial.time {
        return Err(Error::InvalidConfig("t_end precedes the initial time".into()));
    }
    let mut stepper = Stepper::new(initial, spec, scheme)?;
    while stepper.time < t_end {
        if stepper.steps >= scheme.max_steps {
            return Err(Error::Stability {
                step: stepper.steps,
                cell: 0,
                reason: format!("step cap {} reached before t_end", scheme.max_steps),
            });
        }
        stepper.advance(Some(t_end - stepper.time))?;
    }
    stepper.into_profile(initial)
}

/// Outcome of a run to numerical steady state.
#[derive(Debug, Clone)]
pub struct SteadyRun<R> {
    pub profile: SolutionProfile<R>,
    pub steps: usize,
    /// Final discrete update rate `max(|dh|, |dq|) / dt`.
    pub update_rate: R,
    pub converged: bool,
}

/// Iterates until the discrete update rate drops below `threshold` or the
/// scheme's step cap is reached.
pub fn run_to_steady<R: Real>(
    initial: &SolutionProfile<R>,
    spec: &ChannelSpec<R>,
    scheme: &SchemeConfig<R>,
    threshold: R,
) -> Result<SteadyRun<R>> {
    let mut stepper = Stepper::new(initial, spec, scheme)?;
    let mut previous: Vec<Cell<R>> = stepper.state.clone();
    let mut rate = R::infinity();
    let mut converged = false;
    while stepper.steps < scheme.max_steps {
        let dt = stepper.advance(None)?;
        rate = stepper
            .state
            .iter()
            .zip(previous.iter())
            .map(|(now, before)| (now.h - before.h).abs().max((now.q - before.q).abs()))
            .fold(R::zero(), R::max)
            / dt;
        if rate <= threshold {
            converged = true;
            break;
        }
        previous.clone_from(&stepper.state);
    }
    let steps = stepper.steps;
    Ok(SteadyRun { profile: stepper.into_profile(initial)?, steps, update_rate: rate, converged })
}
