//! Oscillations in a parabolic basin with moving wet/dry shorelines.
//!
//! Three classical frictionless solutions are provided: a planar surface
//! sloshing in a 1D parabola, a planar surface rotating in a 2D paraboloid,
//! and the radially symmetric curved surface in a 2D paraboloid. All are
//! exactly periodic; no elementary curved-surface solution exists in 1D, so
//! that combination is rejected at construction.

use crate::error::{Error, Result};
use crate::num::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThackerVariant {
    /// Free surface stays a plane; spatially uniform velocity.
    PlanarSurface,
    /// Radially symmetric curved free surface (2D only).
    CurvedSurface,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimensionality {
    OneD,
    TwoD,
}

/// Parabolic-basin oscillation setup.
///
/// The basin is `z(r) = h0 (r/a)^2 - h0` with `r = |x|` in 1D and
/// `r = sqrt(x^2 + y^2)` in 2D; the rest state has shoreline at `r = a`.
/// `amplitude` is the velocity amplitude B for the planar variant and the
/// dimensionless parameter A in (0, 1) for the curved one.
#[derive(Debug, Clone, Copy)]
pub struct ThackerSetup<R> {
    half_length: R,
    reference_depth: R,
    variant: ThackerVariant,
    dimensionality: Dimensionality,
    amplitude: R,
    gravity: R,
    domain_half: R,
}

impl<R: Real> ThackerSetup<R> {
    pub fn new(
        half_length: R,
        reference_depth: R,
        variant: ThackerVariant,
        dimensionality: Dimensionality,
        amplitude: R,
        gravity: R,
        domain_half: R,
    ) -> Result<Self> {
        if half_length <= R::zero() || reference_depth <= R::zero() || gravity <= R::zero() {
            return Err(Error::InvalidConfig(
                "basin half-length, reference depth and gravity must be positive".into(),
            ));
        }
        if variant == ThackerVariant::CurvedSurface && dimensionality == Dimensionality::OneD {
            return Err(Error::InvalidConfig(
                "the curved-surface oscillation has no exact one-dimensional form; \
                 use the planar variant in 1D"
                    .into(),
            ));
        }
        let setup = Self {
            half_length,
            reference_depth,
            variant,
            dimensionality,
            amplitude,
            gravity,
            domain_half,
        };
        match variant {
            ThackerVariant::PlanarSurface => {
                if amplitude == R::zero() || !amplitude.is_finite() {
                    return Err(Error::InvalidConfig(
                        "planar variant needs a nonzero velocity amplitude".into(),
                    ));
                }
            }
            ThackerVariant::CurvedSurface => {
                if amplitude <= R::zero() || amplitude >= R::one() {
                    return Err(Error::InvalidConfig(
                        "curved variant needs an amplitude in (0, 1)".into(),
                    ));
                }
            }
        }
        let reach = setup.max_shoreline();
        if reach > domain_half {
            return Err(Error::InvalidConfig(format!(
                "wet region reaches {reach} but the domain half-extent is only {domain_half}"
            )));
        }
        Ok(setup)
    }

    pub fn variant(&self) -> ThackerVariant {
        self.variant
    }

    pub fn dimensionality(&self) -> Dimensionality {
        self.dimensionality
    }

    pub fn domain_half(&self) -> R {
        self.domain_half
    }

    /// Angular frequency; the curved paraboloid oscillates at twice the
    /// planar rate.
    pub fn omega(&self) -> R {
        let base = (R::of(2.0) * self.gravity * self.reference_depth).sqrt() / self.half_length;
        match self.variant {
            ThackerVariant::PlanarSurface => base,
            ThackerVariant::CurvedSurface => R::of(2.0) * base,
        }
    }

    pub fn period(&self) -> R {
        R::of(2.0) * R::of(std::f64::consts::PI) / self.omega()
    }

    /// Basin elevation at radius `r`.
    pub fn topography(&self, r: R) -> R {
        let a = self.half_length;
        self.reference_depth * (r * r / (a * a) - R::one())
    }

    /// Largest radius (1D: |x|) the shoreline ever reaches, in closed form.
    pub fn max_shoreline(&self) -> R {
        let (a, h0, g, b) = (self.half_length, self.reference_depth, self.gravity, self.amplitude);
        match (self.variant, self.dimensionality) {
            (ThackerVariant::PlanarSurface, Dimensionality::OneD) => {
                let drift = b * a / (R::of(2.0) * g * h0).sqrt();
                drift + a.half() * (R::of(4.0) + b * b / (g * h0)).sqrt()
            }
            (ThackerVariant::PlanarSurface, Dimensionality::TwoD) => {
                let drift = b * a / (R::of(2.0) * g * h0).sqrt();
                drift + a * (R::one() + b * b / (R::of(2.0) * g * h0)).sqrt()
            }
            (ThackerVariant::CurvedSurface, _) => {
                let ratio = (R::one() + b) / (R::one() - b);
                self.half_length * ratio.powf(R::of(0.25))
            }
        }
    }

    /// Wet volume, constant in time for every variant (closed form).
    pub fn wet_volume(&self) -> R {
        let (a, h0, g, b) = (self.half_length, self.reference_depth, self.gravity, self.amplitude);
        let pi = R::of(std::f64::consts::PI);
        match (self.variant, self.dimensionality) {
            (ThackerVariant::PlanarSurface, Dimensionality::OneD) => {
                let width = a * (R::of(4.0) + b * b / (g * h0)).sqrt();
                h0 / (a * a) * width * width * width / R::of(6.0)
            }
            (ThackerVariant::PlanarSurface, Dimensionality::TwoD) => {
                let drift = b * a / (R::of(2.0) * g * h0).sqrt();
                let rho_sq = a * a + drift * drift;
                h0 / (a * a) * pi * rho_sq * rho_sq / R::of(2.0)
            }
            (ThackerVariant::CurvedSurface, _) => pi.half() * h0 * a * a,
        }
    }

    /// Wet volume evaluated from the instantaneous surface coefficients, by
    /// exact integration of the wet region at time `t`. Analytically this is
    /// independent of `t`; evaluating it per instant turns volume
    /// conservation into a measurable check.
    pub fn wet_volume_at(&self, t: R) -> R {
        let (a, h0, g, b) = (self.half_length, self.reference_depth, self.gravity, self.amplitude);
        let pi = R::of(std::f64::consts::PI);
        let w = self.omega();
        match (self.variant, self.dimensionality) {
            (ThackerVariant::PlanarSurface, Dimensionality::OneD) => {
                // h(x) = -(h0/a^2) x^2 + slope x + (eta0 + h0): integrate the
                // quadratic between its roots.
                let lead = h0 / (a * a);
                let slope = -b * w / g * (w * t).cos();
                let offset =
                    -b * b / (R::of(4.0) * g) * (R::of(2.0) * w * t).cos() + h0;
                let disc = slope * slope + R::of(4.0) * lead * offset;
                let width = disc.sqrt() / lead;
                lead * width * width * width / R::of(6.0)
            }
            (ThackerVariant::PlanarSurface, Dimensionality::TwoD) => {
                // Paraboloid cap over the instantaneous wet disk.
                let lead = h0 / (a * a);
                let gx = b * w / g * (w * t).cos();
                let gy = -b * w / g * (w * t).sin();
                let (cx, cy) = (gx / (R::of(2.0) * lead), gy / (R::of(2.0) * lead));
                let rho_sq = a * a + cx * cx + cy * cy;
                lead * pi * rho_sq * rho_sq / R::of(2.0)
            }
            (ThackerVariant::CurvedSurface, _) => {
                // h(r) = h0 (s1 - (r/a)^2 s2): integrate to the shoreline.
                let phi = R::one() - b * (w * t).cos();
                let s1 = (R::one() - b * b).sqrt() / phi;
                let s2 = (R::one() - b * b) / (phi * phi);
                let r_sq = a * a * s1 / s2;
                R::of(2.0) * pi * h0 * (s1 * r_sq.half() - s2 * r_sq * r_sq / (R::of(4.0) * a * a))
            }
        }
    }

    /// Planar 1D state at `(x, t)`.
    pub fn eval_1d(&self, x: R, t: R) -> Result<(R, R)> {
        if self.dimensionality != Dimensionality::OneD {
            return Err(Error::InvalidConfig("setup is two-dimensional".into()));
        }
        let (g, b) = (self.gravity, self.amplitude);
        let w = self.omega();
        let eta = -b * b / (R::of(4.0) * g) * (R::of(2.0) * w * t).cos()
            - b * w / g * (w * t).cos() * x;
        let h = (eta - self.topography(x.abs())).max(R::zero());
        if h > R::zero() {
            Ok((h, b * (w * t).sin()))
        } else {
            Ok((R::zero(), R::zero()))
        }
    }

    /// Shoreline positions of the planar 1D solution at time `t`.
    pub fn shorelines_1d(&self, t: R) -> Result<(R, R)> {
        if self.dimensionality != Dimensionality::OneD {
            return Err(Error::InvalidConfig("setup is two-dimensional".into()));
        }
        let (a, h0, g, b) = (self.half_length, self.reference_depth, self.gravity, self.amplitude);
        let w = self.omega();
        let slope = -b * w / g * (w * t).cos();
        let center = slope * a * a / (R::of(2.0) * h0);
        let halfwidth = a.half() * (R::of(4.0) + b * b / (g * h0)).sqrt();
        Ok((center - halfwidth, center + halfwidth))
    }

    /// Two-dimensional state at `(x, y, t)`.
    pub fn eval_2d(&self, x: R, y: R, t: R) -> Result<(R, R, R)> {
        if self.dimensionality != Dimensionality::TwoD {
            return Err(Error::InvalidConfig("setup is one-dimensional".into()));
        }
        let (g, b) = (self.gravity, self.amplitude);
        let w = self.omega();
        let r = (x * x + y * y).sqrt();
        match self.variant {
            ThackerVariant::PlanarSurface => {
                let eta = b * w / g * (x * (w * t).cos() - y * (w * t).sin());
                let h = (eta - self.topography(r)).max(R::zero());
                if h > R::zero() {
                    Ok((h, -b * (w * t).sin(), -b * (w * t).cos()))
                } else {
                    Ok((R::zero(), R::zero(), R::zero()))
                }
            }
            ThackerVariant::CurvedSurface => {
                let phi = R::one() - b * (w * t).cos();
                let s1 = (R::one() - b * b).sqrt() / phi;
                let s2 = (R::one() - b * b) / (phi * phi);
                let a = self.half_length;
                let h0 = self.reference_depth;
                let h = (h0 * (s1 - r * r / (a * a) * s2)).max(R::zero());
                if h > R::zero() {
                    let vel = w * b * (w * t).sin() / (R::of(2.0) * phi);
                    Ok((h, vel * x, vel * y))
                } else {
                    Ok((R::zero(), R::zero(), R::zero()))
                }
            }
        }
    }
}
