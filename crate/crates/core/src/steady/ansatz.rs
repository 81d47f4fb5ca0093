//! Prescribed depth and topography profiles with analytic derivatives.

use crate::error::{Error, Result};
use crate::num::Real;

/// Smooth positive depth profile `h(x)` with analytic first and second
/// derivatives.
pub trait DepthAnsatz<R: Real> {
    fn depth(&self, x: R) -> R;
    fn depth_prime(&self, x: R) -> R;
    fn depth_second(&self, x: R) -> R;

    /// Checks the hand-coded derivatives against central differences at 32
    /// low-discrepancy points of `[0, length]` (step `1e-5 * length`), and
    /// that the depth stays above `floor` there.
    fn check(&self, length: R, floor: R) -> Result<()> {
        let delta = R::of(1e-5) * length;
        let golden = 0.618_033_988_749_894_9_f64;
        let eps = R::epsilon();
        for k in 1..=32u32 {
            let frac = (f64::from(k) * golden).fract();
            let x = R::of(frac) * length;
            let h = self.depth(x);
            if h < floor {
                return Err(Error::InvalidConfig(format!(
                    "depth {h} below floor {floor} at x = {x}"
                )));
            }
            let hp = self.depth_prime(x);
            let hpp = self.depth_second(x);
            let fd1 = (self.depth(x + delta) - self.depth(x - delta)) / (R::of(2.0) * delta);
            let fd2 = (self.depth(x + delta) - R::of(2.0) * h + self.depth(x - delta))
                / (delta * delta);
            // Relative agreement plus a roundoff allowance for the stencil.
            let tol1 = R::of(1e-6) * hp.abs() + R::of(4.0) * eps * h / delta;
            let tol2 = R::of(1e-6) * hpp.abs() + R::of(8.0) * eps * h / (delta * delta);
            if (fd1 - hp).abs() > tol1 {
                return Err(Error::InvalidConfig(format!(
                    "first derivative inconsistent at x = {x}: analytic {hp}, differenced {fd1}"
                )));
            }
            if (fd2 - hpp).abs() > tol2 {
                return Err(Error::InvalidConfig(format!(
                    "second derivative inconsistent at x = {x}: analytic {hpp}, differenced {fd2}"
                )));
            }
        }
        Ok(())
    }
}

/// Constant depth.
#[derive(Debug, Clone, Copy)]
pub struct ConstantDepth<R>(pub R);

impl<R: Real> DepthAnsatz<R> for ConstantDepth<R> {
    fn depth(&self, _x: R) -> R {
        self.0
    }
    fn depth_prime(&self, _x: R) -> R {
        R::zero()
    }
    fn depth_second(&self, _x: R) -> R {
        R::zero()
    }
}

/// Linearly varying depth `h0 + slope x`.
#[derive(Debug, Clone, Copy)]
pub struct LinearDepth<R> {
    pub h0: R,
    pub slope: R,
}

impl<R: Real> DepthAnsatz<R> for LinearDepth<R> {
    fn depth(&self, x: R) -> R {
        self.h0 + self.slope * x
    }
    fn depth_prime(&self, _x: R) -> R {
        self.slope
    }
    fn depth_second(&self, _x: R) -> R {
        R::zero()
    }
}

/// Gaussian hump on a constant base:
/// `h(x) = h0 (1 + a exp(-((x - center) / width)^2))`.
#[derive(Debug, Clone, Copy)]
pub struct GaussianDepth<R> {
    pub h0: R,
    pub amplitude: R,
    pub center: R,
    pub width: R,
}

impl<R: Real> GaussianDepth<R> {
    fn bump(&self, x: R) -> R {
        let s = (x - self.center) / self.width;
        self.amplitude * (-s * s).exp()
    }
}

impl<R: Real> DepthAnsatz<R> for GaussianDepth<R> {
    fn depth(&self, x: R) -> R {
        self.h0 * (R::one() + self.bump(x))
    }
    fn depth_prime(&self, x: R) -> R {
        let s = (x - self.center) / self.width;
        -self.h0 * self.bump(x) * R::of(2.0) * s / self.width
    }
    fn depth_second(&self, x: R) -> R {
        let s = (x - self.center) / self.width;
        self.h0 * self.bump(x) * (R::of(4.0) * s * s - R::of(2.0)) / (self.width * self.width)
    }
}

/// Smooth transition between two depths:
/// `h(x) = h0 + dh (1 + tanh((x - center) / width)) / 2`.
#[derive(Debug, Clone, Copy)]
pub struct TanhDepth<R> {
    pub h0: R,
    pub dh: R,
    pub center: R,
    pub width: R,
}

impl<R: Real> DepthAnsatz<R> for TanhDepth<R> {
    fn depth(&self, x: R) -> R {
        let s = (x - self.center) / self.width;
        self.h0 + self.dh.half() * (R::one() + s.tanh())
    }
    fn depth_prime(&self, x: R) -> R {
        let t = ((x - self.center) / self.width).tanh();
        self.dh.half() * (R::one() - t * t) / self.width
    }
    fn depth_second(&self, x: R) -> R {
        let t = ((x - self.center) / self.width).tanh();
        -self.dh * t * (R::one() - t * t) / (self.width * self.width)
    }
}

/// Smooth topography `z(x)` with an analytic derivative and a single crest.
pub trait TopographyAnsatz<R: Real> {
    fn elevation(&self, x: R) -> R;
    fn elevation_prime(&self, x: R) -> R;
    /// Position of the crest (the unique maximum of `z`).
    fn crest(&self) -> R;
}

/// Gaussian bump topography `z(x) = height exp(-((x - center) / width)^2)`.
#[derive(Debug, Clone, Copy)]
pub struct GaussianBump<R> {
    pub height: R,
    pub center: R,
    pub width: R,
}

impl<R: Real> TopographyAnsatz<R> for GaussianBump<R> {
    fn elevation(&self, x: R) -> R {
        let s = (x - self.center) / self.width;
        self.height * (-s * s).exp()
    }
    fn elevation_prime(&self, x: R) -> R {
        let s = (x - self.center) / self.width;
        -self.elevation(x) * R::of(2.0) * s / self.width
    }
    fn crest(&self) -> R {
        self.center
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_spot_checks_pass() {
        ConstantDepth(0.7_f64).check(100.0, 1e-3).unwrap();
        LinearDepth { h0: 0.5_f64, slope: 1e-3 }.check(100.0, 1e-3).unwrap();
        GaussianDepth { h0: 0.6_f64, amplitude: 0.4, center: 50.0, width: 10.0 }
            .check(100.0, 1e-3)
            .unwrap();
        TanhDepth { h0: 0.4_f64, dh: 0.3, center: 50.0, width: 8.0 }.check(100.0, 1e-3).unwrap();
    }

    #[test]
    fn depth_floor_violation_detected() {
        let err = LinearDepth { h0: 0.5_f64, slope: -0.01 }.check(100.0, 1e-3);
        assert!(err.is_err());
    }

    #[test]
    fn broken_derivative_detected() {
        struct Broken;
        impl DepthAnsatz<f64> for Broken {
            fn depth(&self, x: f64) -> f64 {
                1.0 + 0.1 * x
            }
            fn depth_prime(&self, _x: f64) -> f64 {
                0.2 // wrong on purpose
            }
            fn depth_second(&self, _x: f64) -> f64 {
                0.0
            }
        }
        assert!(Broken.check(10.0, 1e-3).is_err());
    }
}
