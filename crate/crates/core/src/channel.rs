//! Physical channel configuration and friction laws.

use crate::error::{Error, Result};
use crate::num::Real;

/// Friction law family with its coefficient.
///
/// The unified coefficient used by the slope formulas is `n^2` for Manning,
/// `f / (8 g)` for Darcy-Weisbach and `1 / C^2` for Chezy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrictionLaw<R> {
    /// Frictionless bed.
    None,
    /// Manning-Strickler law with roughness coefficient `n` [T L^-1/3].
    Manning(R),
    /// Darcy-Weisbach law with dimensionless coefficient `f`.
    DarcyWeisbach(R),
    /// Chezy law with coefficient `C` [L^1/2 / T].
    Chezy(R),
}

impl<R: Real> FrictionLaw<R> {
    pub fn is_none(&self) -> bool {
        matches!(self, FrictionLaw::None)
    }

    /// Unified friction coefficient `C_f`.
    pub fn cf(&self, gravity: R) -> R {
        match *self {
            FrictionLaw::None => R::zero(),
            FrictionLaw::Manning(n) => n * n,
            FrictionLaw::DarcyWeisbach(f) => f / (R::of(8.0) * gravity),
            FrictionLaw::Chezy(c) => (c * c).recip(),
        }
    }

    /// Exponent of `h` under the discharge form `S_f = C_f q|q| / h^p`.
    pub fn depth_exponent(&self) -> R {
        match self {
            FrictionLaw::Manning(_) => R::of(10.0 / 3.0),
            _ => R::of(3.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let coefficient = match *self {
            FrictionLaw::None => return Ok(()),
            FrictionLaw::Manning(n) => n,
            FrictionLaw::DarcyWeisbach(f) => f,
            FrictionLaw::Chezy(c) => c,
        };
        if coefficient <= R::zero() || !coefficient.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "friction coefficient must be positive, got {coefficient}"
            )));
        }
        Ok(())
    }
}

/// Physical configuration of a channel reach.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec<R> {
    /// Gravitational acceleration [L/T^2].
    pub gravity: R,
    /// Domain extent in x [L].
    pub length: R,
    /// Domain extent in y for two-dimensional cases [L].
    pub width: Option<R>,
    /// Friction law of the bed.
    pub friction: FrictionLaw<R>,
    /// Rain intensity R >= 0 [L/T].
    pub rain_rate: R,
    /// Kinematic viscosity mu >= 0 [L^2/T].
    pub viscosity: R,
    /// Depth threshold below which a cell counts as dry [L].
    pub dry_tolerance: R,
}

impl<R: Real> ChannelSpec<R> {
    /// Frictionless, rainless channel of the given length with default
    /// gravity 9.81 and dry tolerance 1e-8.
    pub fn new(length: R) -> Self {
        Self {
            gravity: R::of(9.81),
            length,
            width: None,
            friction: FrictionLaw::None,
            rain_rate: R::zero(),
            viscosity: R::zero(),
            dry_tolerance: R::of(1e-8),
        }
    }

    pub fn with_friction(mut self, friction: FrictionLaw<R>) -> Self {
        self.friction = friction;
        self
    }

    pub fn with_rain(mut self, rain_rate: R) -> Self {
        self.rain_rate = rain_rate;
        self
    }

    pub fn with_viscosity(mut self, viscosity: R) -> Self {
        self.viscosity = viscosity;
        self
    }

    pub fn with_gravity(mut self, gravity: R) -> Self {
        self.gravity = gravity;
        self
    }

    pub fn with_width(mut self, width: R) -> Self {
        self.width = Some(width);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.gravity <= R::zero() {
            return Err(Error::InvalidConfig("gravity must be positive".into()));
        }
        if self.length <= R::zero() {
            return Err(Error::InvalidConfig("length must be positive".into()));
        }
        if let Some(w) = self.width {
            if w <= R::zero() {
                return Err(Error::InvalidConfig("width must be positive".into()));
            }
        }
        if self.rain_rate < R::zero() {
            return Err(Error::InvalidConfig("rain rate must be nonnegative".into()));
        }
        if self.viscosity < R::zero() {
            return Err(Error::InvalidConfig("viscosity must be nonnegative".into()));
        }
        if self.dry_tolerance <= R::zero() {
            return Err(Error::InvalidConfig("dry tolerance must be positive".into()));
        }
        self.friction.validate()
    }
}
