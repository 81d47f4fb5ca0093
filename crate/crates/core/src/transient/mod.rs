//! Time-dependent analytic solutions: dam breaks and parabolic-basin
//! oscillations, with a space-time residual oracle.

pub mod dam_break;
pub mod residual;
pub mod thacker;

pub use dam_break::{
    dressler, ritter, stoker, stoker_at, DamBreakSetup, DresslerWave, StokerWave,
};
pub use residual::{transient_residual, transient_residual_2d, Lattice2, SpaceTimeSlab, TransientDefect};
pub use thacker::{Dimensionality, ThackerSetup, ThackerVariant};
