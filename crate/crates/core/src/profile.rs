//! Discretized solution fields on uniform cell-centered grids.

use crate::error::{Error, Result};
use crate::num::Real;

/// Uniform one-dimensional cell-centered grid.
///
/// Cell centers sit at `origin + (i + 1/2) dx` for `i in 0..n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1<R> {
    pub origin: R,
    pub dx: R,
    pub n: usize,
}

impl<R: Real> Grid1<R> {
    /// Grid of `n` cells covering `[origin, origin + length]`.
    pub fn new(origin: R, length: R, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig("grid needs at least one cell".into()));
        }
        if length <= R::zero() {
            return Err(Error::InvalidConfig("grid length must be positive".into()));
        }
        Ok(Self { origin, dx: length / R::of_usize(n), n })
    }

    #[inline]
    pub fn center(&self, i: usize) -> R {
        self.origin + (R::of_usize(i) + R::of(0.5)) * self.dx
    }

    pub fn centers(&self) -> impl Iterator<Item = R> + '_ {
        (0..self.n).map(move |i| self.center(i))
    }

    /// Downstream end `origin + n dx`.
    pub fn end(&self) -> R {
        self.origin + R::of_usize(self.n) * self.dx
    }

    pub fn length(&self) -> R {
        R::of_usize(self.n) * self.dx
    }
}

/// One-dimensional solution snapshot: depth, velocity and topography per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionProfile<R> {
    pub grid: Grid1<R>,
    /// Water depth per cell, h >= 0.
    pub h: Vec<R>,
    /// Velocity per cell; zero on dry cells.
    pub u: Vec<R>,
    /// Topography elevation per cell.
    pub z: Vec<R>,
    /// Snapshot instant.
    pub time: R,
}

impl<R: Real> SolutionProfile<R> {
    pub fn new(grid: Grid1<R>, h: Vec<R>, u: Vec<R>, z: Vec<R>, time: R) -> Result<Self> {
        if h.len() != grid.n || u.len() != grid.n || z.len() != grid.n {
            return Err(Error::GridMismatch(format!(
                "field lengths ({}, {}, {}) do not match grid size {}",
                h.len(),
                u.len(),
                z.len(),
                grid.n
            )));
        }
        if let Some(bad) = h.iter().find(|v| !v.is_finite() || **v < R::zero()) {
            return Err(Error::NegativeDepth(bad.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { grid, h, u, z, time })
    }

    /// Unit discharge q = h u per cell.
    pub fn q(&self, i: usize) -> R {
        self.h[i] * self.u[i]
    }

    /// Free-surface elevation h + z per cell.
    pub fn surface(&self, i: usize) -> R {
        self.h[i] + self.z[i]
    }

    /// Zeroes velocity on cells below the dry tolerance.
    pub fn settle_dry(&mut self, dry_tolerance: R) {
        for i in 0..self.grid.n {
            if self.h[i] < dry_tolerance {
                self.u[i] = R::zero();
            }
        }
    }

    /// Checks the per-cell invariants: h >= 0 and u = 0 wherever h < tolerance.
    pub fn validate(&self, dry_tolerance: R) -> Result<()> {
        for i in 0..self.grid.n {
            if self.h[i] < R::zero() {
                return Err(Error::NegativeDepth(self.h[i].to_f64().unwrap_or(f64::NAN)));
            }
            if self.h[i] < dry_tolerance && self.u[i] != R::zero() {
                return Err(Error::InvalidConfig(format!(
                    "cell {i} is dry but carries velocity {}",
                    self.u[i]
                )));
            }
        }
        Ok(())
    }

    /// Builds a profile by evaluating `(h, u)` at every cell center.
    pub fn from_fn(
        grid: Grid1<R>,
        time: R,
        mut topo: impl FnMut(R) -> R,
        mut state: impl FnMut(R) -> (R, R),
    ) -> Result<Self> {
        let mut h = Vec::with_capacity(grid.n);
        let mut u = Vec::with_capacity(grid.n);
        let mut z = Vec::with_capacity(grid.n);
        for x in grid.centers() {
            let (hi, ui) = state(x);
            h.push(hi);
            u.push(ui);
            z.push(topo(x));
        }
        Self::new(grid, h, u, z, time)
    }
}

/// Uniform two-dimensional cell-centered grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2<R> {
    pub x0: R,
    pub y0: R,
    pub dx: R,
    pub dy: R,
    pub nx: usize,
    pub ny: usize,
}

impl<R: Real> Grid2<R> {
    pub fn new(x0: R, y0: R, lx: R, ly: R, nx: usize, ny: usize) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::InvalidConfig("grid needs at least one cell per axis".into()));
        }
        if lx <= R::zero() || ly <= R::zero() {
            return Err(Error::InvalidConfig("grid extents must be positive".into()));
        }
        Ok(Self { x0, y0, dx: lx / R::of_usize(nx), dy: ly / R::of_usize(ny), nx, ny })
    }

    #[inline]
    pub fn center(&self, i: usize, j: usize) -> (R, R) {
        (
            self.x0 + (R::of_usize(i) + R::of(0.5)) * self.dx,
            self.y0 + (R::of_usize(j) + R::of(0.5)) * self.dy,
        )
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }
}

/// Two-dimensional solution snapshot (row-major in y).
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField2<R> {
    pub grid: Grid2<R>,
    pub h: Vec<R>,
    pub u: Vec<R>,
    pub v: Vec<R>,
    pub z: Vec<R>,
    pub time: R,
}

impl<R: Real> SolutionField2<R> {
    pub fn from_fn(
        grid: Grid2<R>,
        time: R,
        mut topo: impl FnMut(R, R) -> R,
        mut state: impl FnMut(R, R) -> (R, R, R),
    ) -> Result<Self> {
        let cells = grid.nx * grid.ny;
        let mut h = Vec::with_capacity(cells);
        let mut u = Vec::with_capacity(cells);
        let mut v = Vec::with_capacity(cells);
        let mut z = Vec::with_capacity(cells);
        for j in 0..grid.ny {
            for i in 0..grid.nx {
                let (x, y) = grid.center(i, j);
                let (hij, uij, vij) = state(x, y);
                if !hij.is_finite() || hij < R::zero() {
                    return Err(Error::NegativeDepth(hij.to_f64().unwrap_or(f64::NAN)));
                }
                h.push(hij);
                u.push(uij);
                v.push(vij);
                z.push(topo(x, y));
            }
        }
        Ok(Self { grid, h, u, v, z, time })
    }
}
