//! Dam-break solutions of increasing complexity: dry-bed rarefaction,
//! wet-bed shock, and the friction-corrected dry-bed wave.

use crate::channel::FrictionLaw;
use crate::error::{Error, Result};
use crate::num::Real;
use crate::solve::{bisect, bisect_newton};

/// Idealized dam-break configuration on a flat bottom.
#[derive(Debug, Clone)]
pub struct DamBreakSetup<R> {
    /// Upstream depth behind the dam.
    pub h_left: R,
    /// Downstream depth; zero selects the dry-bed branch.
    pub h_right: R,
    /// Dam location.
    pub dam_position: R,
    /// Resistance for the friction-corrected wave (Chezy family).
    pub friction: FrictionLaw<R>,
    pub gravity: R,
    /// Domain extent, used when discretizing snapshots.
    pub length: R,
}

impl<R: Real> DamBreakSetup<R> {
    pub fn frictionless(h_left: R, h_right: R, dam_position: R, length: R) -> Self {
        Self {
            h_left,
            h_right,
            dam_position,
            friction: FrictionLaw::None,
            gravity: R::of(9.81),
            length,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.h_left <= R::zero() || self.h_right < R::zero() || self.h_left <= self.h_right {
            return Err(Error::InvalidConfig(format!(
                "need h_left > h_right >= 0, got ({}, {})",
                self.h_left, self.h_right
            )));
        }
        if self.gravity <= R::zero() {
            return Err(Error::InvalidConfig("gravity must be positive".into()));
        }
        Ok(())
    }

    /// Step initial condition at t = 0.
    pub fn initial_state(&self, x: R) -> (R, R) {
        if x < self.dam_position {
            (self.h_left, R::zero())
        } else {
            (self.h_right, R::zero())
        }
    }

    fn require_positive_time(&self, t: R) -> Result<()> {
        self.validate()?;
        if t <= R::zero() {
            return Err(Error::InvalidConfig(
                "dam-break evaluators need t > 0; use initial_state for t = 0".into(),
            ));
        }
        Ok(())
    }
}

/// Dry-bed dam break: undisturbed state, parabolic rarefaction fan, dry bed.
///
/// Preconditions: `h_right = 0`, no friction, flat bottom, `t > 0`.
pub fn ritter<R: Real>(setup: &DamBreakSetup<R>, x: R, t: R) -> Result<(R, R)> {
    setup.require_positive_time(t)?;
    if setup.h_right != R::zero() {
        return Err(Error::InvalidConfig("dry-bed wave needs h_right = 0".into()));
    }
    let g = setup.gravity;
    let c0 = (g * setup.h_left).sqrt();
    let xi = (x - setup.dam_position) / (t * c0);
    Ok(ritter_at(setup.h_left, c0, xi))
}

fn ritter_at<R: Real>(h_left: R, c0: R, xi: R) -> (R, R) {
    if xi <= R::of(-1.0) {
        (h_left, R::zero())
    } else if xi >= R::of(2.0) {
        (R::zero(), R::zero())
    } else {
        let h = h_left * (R::of(2.0) - xi).powi(2) / R::of(9.0);
        let u = R::of(2.0 / 3.0) * c0 * (R::one() + xi);
        (h, u)
    }
}

/// Intermediate state and shock data of the wet-bed dam break.
#[derive(Debug, Clone, Copy)]
pub struct StokerWave<R> {
    pub h_m: R,
    pub u_m: R,
    pub shock_speed: R,
}

impl<R: Real> StokerWave<R> {
    /// Solves the compatibility equation coupling the rarefaction invariant
    /// `u_m = 2 (sqrt(g h_l) - sqrt(g h_m))` with the jump relations, by
    /// bracketed Newton on `(h_right, h_left)` to residual 1e-12.
    pub fn solve(setup: &DamBreakSetup<R>) -> Result<Self> {
        setup.validate()?;
        if setup.h_right <= R::zero() {
            return Err(Error::InvalidConfig("wet-bed wave needs h_right > 0".into()));
        }
        let g = setup.gravity;
        let (hl, hr) = (setup.h_left, setup.h_right);
        let c0 = (g * hl).sqrt();
        let rarefaction = |h: R| R::of(2.0) * (c0 - (g * h).sqrt());
        let shock_compat = |h: R| (h - hr) * (g * (h + hr) / (R::of(2.0) * h * hr)).sqrt();
        let f = |h: R| rarefaction(h) - shock_compat(h);
        let df = |h: R| {
            let delta = R::of(1e-7) * hl;
            (f(h + delta) - f(h - delta)) / (R::of(2.0) * delta)
        };
        let lo = hr * (R::one() + R::of(1e-14));
        let hi = hl * (R::one() - R::of(1e-14));
        let h_m = bisect_newton(f, df, lo, hi, R::of(1e-12) * c0, R::of(1e-15) * hl)?;
        let u_m = rarefaction(h_m);
        let shock_speed = h_m * u_m / (h_m - hr);
        Ok(Self { h_m, u_m, shock_speed })
    }

    /// Both jump-condition defects at the shock: mass and momentum.
    pub fn rankine_hugoniot_defects(&self, setup: &DamBreakSetup<R>) -> (R, R) {
        let g = setup.gravity;
        let (hm, um, s, hr) = (self.h_m, self.u_m, self.shock_speed, setup.h_right);
        let mass = s * (hm - hr) - hm * um;
        let momentum =
            s * hm * um - (hm * um * um + g * hm * hm.half() - g * hr * hr.half());
        (mass, momentum)
    }
}

/// Wet-bed dam break: undisturbed left state, rarefaction fan, constant
/// intermediate state, shock, undisturbed right state.
pub fn stoker<R: Real>(setup: &DamBreakSetup<R>, x: R, t: R) -> Result<(R, R)> {
    let wave = StokerWave::solve(setup)?;
    setup.require_positive_time(t)?;
    Ok(stoker_at(setup, &wave, x, t))
}

/// Pointwise wet-bed solution from a pre-solved wave (cheap in hot loops).
pub fn stoker_at<R: Real>(setup: &DamBreakSetup<R>, wave: &StokerWave<R>, x: R, t: R) -> (R, R) {
    let g = setup.gravity;
    let c0 = (g * setup.h_left).sqrt();
    let cm = (g * wave.h_m).sqrt();
    let s = (x - setup.dam_position) / t;
    if s <= -c0 {
        (setup.h_left, R::zero())
    } else if s < wave.u_m - cm {
        ritter_at(setup.h_left, c0, s / c0)
    } else if s < wave.shock_speed {
        (wave.h_m, wave.u_m)
    } else {
        (setup.h_right, R::zero())
    }
}

/// First-order resistance corrections to the dry-bed wave, as functions of
/// the similarity variable `xi` in `[-1, 2)`.
fn dressler_alpha<R: Real>(xi: R) -> (R, R) {
    let w = R::of(2.0) - xi;
    let sqrt3 = R::of(3.0).sqrt();
    let a1 = R::of(6.0) / (R::of(5.0) * w) - R::of(2.0 / 3.0)
        + R::of(4.0) * sqrt3 / R::of(135.0) * w.powf(R::of(1.5));
    let a2 = R::of(12.0) / w - R::of(8.0 / 3.0)
        + R::of(8.0) * sqrt3 / R::of(189.0) * w.powf(R::of(1.5))
        - R::of(108.0) / (R::of(7.0) * w * w);
    (a1, a2)
}

fn dressler_alpha2_prime<R: Real>(xi: R) -> R {
    let w = R::of(2.0) - xi;
    let sqrt3 = R::of(3.0).sqrt();
    R::of(12.0) / (w * w) - R::of(12.0) * sqrt3 / R::of(189.0) * w.sqrt()
        - R::of(216.0 / 7.0) / (w * w * w)
}

/// Friction-corrected dry-bed wave at one instant, with its wave-tip closure.
#[derive(Debug, Clone, Copy)]
pub struct DresslerWave<R> {
    h_left: R,
    dam_position: R,
    gravity: R,
    c0: R,
    /// Resistance correction scale `g^2 C_f t`.
    k: R,
    t: R,
    /// Similarity coordinate where the corrected velocity peaks; the
    /// expansion is replaced by the tip closure beyond it.
    xi_tip: R,
    u_tip: R,
    alpha1_tip: R,
}

impl<R: Real> DresslerWave<R> {
    pub fn at(setup: &DamBreakSetup<R>, t: R) -> Result<Self> {
        setup.require_positive_time(t)?;
        if setup.h_right != R::zero() {
            return Err(Error::InvalidConfig("dry-bed wave needs h_right = 0".into()));
        }
        let cf = match setup.friction {
            FrictionLaw::Chezy(_) | FrictionLaw::DarcyWeisbach(_) => {
                setup.friction.cf(setup.gravity)
            }
            _ => {
                return Err(Error::InvalidConfig(
                    "friction-corrected dam break needs a Chezy-family law".into(),
                ))
            }
        };
        let g = setup.gravity;
        let c0 = (g * setup.h_left).sqrt();
        let k = g * g * cf * t;
        let (xi_tip, u_tip, alpha1_tip) = if k == R::zero() {
            (R::of(2.0), R::of(2.0) * c0, R::zero())
        } else {
            // The corrected velocity peaks where its xi-derivative vanishes;
            // beyond that point the expansion is invalid.
            let du = |xi: R| R::of(2.0 / 3.0) * c0 + k * dressler_alpha2_prime(xi);
            let lo = R::of(-1.0) + R::of(1e-12);
            let mut hi = R::of(2.0) - R::of(1e-3);
            let mut tries = 0;
            while du(hi) > R::zero() && tries < 60 {
                hi = R::of(2.0) - (R::of(2.0) - hi).half();
                tries += 1;
            }
            let xi_tip = bisect(du, lo, hi, R::of(1e-12))?;
            let (a1, a2) = dressler_alpha(xi_tip);
            let u_tip = R::of(2.0 / 3.0) * c0 * (R::one() + xi_tip) + k * a2;
            (xi_tip, u_tip, a1)
        };
        Ok(Self {
            h_left: setup.h_left,
            dam_position: setup.dam_position,
            gravity: g,
            c0,
            k,
            t,
            xi_tip,
            u_tip,
            alpha1_tip,
        })
    }

    /// Interval of x masked by the tip closure at this instant.
    pub fn tip_interval(&self) -> (R, R) {
        (
            self.dam_position + self.xi_tip * self.t * self.c0,
            self.dam_position + R::of(2.0) * self.t * self.c0,
        )
    }

    pub fn eval(&self, x: R) -> (R, R) {
        let xi = (x - self.dam_position) / (self.t * self.c0);
        if xi <= R::of(-1.0) {
            return (self.h_left, R::zero());
        }
        if xi >= R::of(2.0) {
            return (R::zero(), R::zero());
        }
        let c_r = self.c0 * (R::of(2.0) - xi) / R::of(3.0);
        if xi < self.xi_tip {
            let (a1, a2) = dressler_alpha(xi);
            let c = c_r + self.k * a1;
            let u = R::of(2.0 / 3.0) * self.c0 * (R::one() + xi) + self.k * a2;
            (c * c / self.gravity, u)
        } else {
            // Tip closure: hold the peak velocity and fade the depth
            // correction linearly so the front stays at the dry-bed position.
            let fade = (R::of(2.0) - xi) / (R::of(2.0) - self.xi_tip);
            let c = c_r + self.k * self.alpha1_tip * fade;
            (c * c / self.gravity, self.u_tip)
        }
    }
}

/// Friction-corrected dry-bed dam break (Chezy-family resistance).
pub fn dressler<R: Real>(setup: &DamBreakSetup<R>, x: R, t: R) -> Result<(R, R)> {
    Ok(DresslerWave::at(setup, t)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    const G: f64 = 9.81;

    fn dry_setup() -> DamBreakSetup<f64> {
        DamBreakSetup::frictionless(1.0, 0.0, 5.0, 10.0)
    }

    #[test]
    fn ritter_zones() {
        let s = dry_setup();
        assert_eq!(ritter(&s, 0.0, 0.5).unwrap(), (1.0, 0.0));
        let front = 5.0 + 2.0 * G.sqrt() * 0.5;
        assert_eq!(ritter(&s, front + 0.1, 0.5).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn ritter_at_dam_position() {
        let s = dry_setup();
        let (h, u) = ritter(&s, 5.0, 0.73).unwrap();
        assert_relative_eq!(h, 4.0 / 9.0, max_relative = 1e-14);
        assert_relative_eq!(u, 2.0 / 3.0 * G.sqrt(), max_relative = 1e-14);
        assert_abs_diff_eq!(u, 2.0881, epsilon = 1e-4);
    }

    #[test]
    fn ritter_riemann_invariant_constant_through_fan() {
        let s = dry_setup();
        let c0 = G.sqrt();
        for k in 0..100 {
            let x = 5.0 - c0 + (3.0 * c0) * k as f64 / 99.0;
            let (h, u) = ritter(&s, x, 1.0).unwrap();
            if h > 0.0 {
                assert_relative_eq!(u + 2.0 * (G * h).sqrt(), 2.0 * c0, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn ritter_continuity_at_junctions() {
        let s = dry_setup();
        let t = 0.8;
        let c0 = G.sqrt();
        let eps = 1e-9;
        let left = 5.0 - c0 * t;
        let (h_in, u_in) = ritter(&s, left + eps, t).unwrap();
        assert_abs_diff_eq!(h_in, 1.0, epsilon = 1e-7);
        assert_abs_diff_eq!(u_in, 0.0, epsilon = 1e-7);
        let front = 5.0 + 2.0 * c0 * t;
        let (h_f, _) = ritter(&s, front - eps, t).unwrap();
        assert_abs_diff_eq!(h_f, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn ritter_rejects_nonpositive_time() {
        let s = dry_setup();
        assert!(ritter(&s, 5.0, 0.0).is_err());
        assert_eq!(s.initial_state(4.9), (1.0, 0.0));
        assert_eq!(s.initial_state(5.1), (0.0, 0.0));
    }

    /// Bisection oracle for the intermediate depth, independent of the
    /// Newton path used by `StokerWave::solve`.
    fn stoker_oracle(hl: f64, hr: f64) -> f64 {
        let c0 = (G * hl).sqrt();
        let f = |h: f64| {
            2.0 * (c0 - (G * h).sqrt()) - (h - hr) * (G * (h + hr) / (2.0 * h * hr)).sqrt()
        };
        let (mut lo, mut hi) = (hr * 1.0000001, hl * 0.9999999);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn stoker_intermediate_state_and_jumps() {
        let setup = DamBreakSetup::frictionless(1.0, 0.1, 5.0, 10.0);
        let wave = StokerWave::solve(&setup).unwrap();
        let oracle = stoker_oracle(1.0, 0.1);
        assert_relative_eq!(wave.h_m, oracle, max_relative = 1e-9);
        assert!(wave.h_m > 0.1 && wave.h_m < 1.0);
        let (dm, dp) = wave.rankine_hugoniot_defects(&setup);
        assert!(dm.abs() < 1e-10 && dp.abs() < 1e-10, "defects ({dm}, {dp})");
        // Compressive, supersonic-relative shock.
        assert!(wave.shock_speed > wave.u_m);
    }

    #[test]
    fn stoker_zones() {
        let setup = DamBreakSetup::frictionless(1.0, 0.1, 5.0, 10.0);
        let wave = StokerWave::solve(&setup).unwrap();
        let t = 0.5;
        assert_eq!(stoker(&setup, 0.0, t).unwrap(), (1.0, 0.0));
        assert_eq!(stoker(&setup, 9.9, t).unwrap(), (0.1, 0.0));
        let plateau_mid =
            5.0 + 0.5 * t * ((wave.u_m - (G * wave.h_m).sqrt()) + wave.shock_speed);
        let (h, u) = stoker(&setup, plateau_mid, t).unwrap();
        assert_eq!((h, u), (wave.h_m, wave.u_m));
    }

    #[test]
    fn dressler_alpha_vanishes_at_minus_one() {
        let (a1, a2) = dressler_alpha(-1.0_f64);
        assert_abs_diff_eq!(a1, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(a2, 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(dressler_alpha2_prime(-1.0_f64), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn dressler_velocity_correction_is_negative_inside_fan() {
        for k in 1..40 {
            let xi = -1.0 + 2.9 * k as f64 / 40.0;
            let (_, a2) = dressler_alpha(xi);
            assert!(a2 <= 1e-12, "alpha2({xi}) = {a2}");
        }
    }

    #[test]
    fn dressler_reduces_to_ritter_without_resistance() {
        let mut setup = dry_setup();
        setup.friction = FrictionLaw::Chezy(1e9);
        let t = 1.0;
        for k in 0..50 {
            let x = 2.0 + 9.0 * k as f64 / 49.0;
            let (hd, ud) = dressler(&setup, x, t).unwrap();
            let (hr, ur) = ritter(&dry_setup(), x, t).unwrap();
            assert_abs_diff_eq!(hd, hr, epsilon = 1e-9);
            assert_abs_diff_eq!(ud, ur, epsilon = 1e-8);
        }
    }

    #[test]
    fn dressler_slows_the_flow() {
        let mut setup = dry_setup();
        setup.friction = FrictionLaw::Chezy(40.0);
        let t = 1.0;
        let wave = DresslerWave::at(&setup, t).unwrap();
        let (tip_lo, tip_hi) = wave.tip_interval();
        assert!(tip_lo < tip_hi);
        for k in 1..60 {
            let xi = -0.95 + (1.9) * k as f64 / 60.0;
            let x = 5.0 + xi * t * G.sqrt();
            if x >= tip_lo {
                continue;
            }
            let (hd, ud) = wave.eval(x);
            let (hr, ur) = ritter(&dry_setup(), x, t).unwrap();
            assert!(ud < ur, "corrected velocity must drop: {ud} vs {ur} at xi = {xi}");
            assert!(hd >= hr, "resistance holds water back: {hd} vs {hr}");
        }
        // Depth continuous at the tip and zero at the dry front.
        let (h_at_tip, _) = wave.eval(tip_lo - 1e-9);
        let (h_at_tip2, _) = wave.eval(tip_lo + 1e-9);
        assert_abs_diff_eq!(h_at_tip, h_at_tip2, epsilon = 1e-6);
        let (h_front, u_front) = wave.eval(tip_hi + 1e-9);
        assert_eq!((h_front, u_front), (0.0, 0.0));
    }

    #[test]
    fn dressler_requires_chezy_family() {
        let mut setup = dry_setup();
        setup.friction = FrictionLaw::Manning(0.03);
        assert!(dressler(&setup, 5.0, 1.0).is_err());
        setup.friction = FrictionLaw::None;
        assert!(dressler(&setup, 5.0, 1.0).is_err());
    }
}
