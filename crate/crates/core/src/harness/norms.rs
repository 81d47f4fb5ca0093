//! Error norms and convergence orders between profiles.

use crate::error::{Error, Result};
use crate::num::Real;
use crate::profile::SolutionProfile;

/// Cell-averaged L1, L2 and pointwise L-infinity norms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Norms<R> {
    pub l1: R,
    pub l2: R,
    pub linf: R,
}

impl<R: Real> Norms<R> {
    fn of(errors: impl Iterator<Item = R>, n: usize) -> Self {
        let mut sum_abs = R::zero();
        let mut sum_sq = R::zero();
        let mut max = R::zero();
        for e in errors {
            sum_abs += e.abs();
            sum_sq += e * e;
            max = max.max(e.abs());
        }
        let count = R::of_usize(n);
        Norms { l1: sum_abs / count, l2: (sum_sq / count).sqrt(), linf: max }
    }
}

/// Norms of the depth and discharge errors between two profiles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileErrors<R> {
    pub h: Norms<R>,
    pub q: Norms<R>,
}

/// Compares two profiles on identical grids and times. Cells dry in both
/// profiles contribute zero error.
pub fn error_norms<R: Real>(
    numerical: &SolutionProfile<R>,
    exact: &SolutionProfile<R>,
    dry_tolerance: R,
) -> Result<ProfileErrors<R>> {
    let (ga, gb) = (numerical.grid, exact.grid);
    if ga.n != gb.n
        || (ga.dx - gb.dx).abs() > R::of(1e-12) * ga.dx
        || (ga.origin - gb.origin).abs() > R::of(1e-9) * ga.dx
    {
        return Err(Error::GridMismatch("profiles live on different grids".into()));
    }
    let t_scale = numerical.time.abs().max(exact.time.abs()).max(R::one());
    if (numerical.time - exact.time).abs() > R::of(1e-9) * t_scale {
        return Err(Error::GridMismatch(format!(
            "profiles are snapshots at different times: {} vs {}",
            numerical.time, exact.time
        )));
    }
    let n = ga.n;
    let both_dry =
        |i: usize| numerical.h[i] < dry_tolerance && exact.h[i] < dry_tolerance;
    let h_err = (0..n).map(|i| if both_dry(i) { R::zero() } else { numerical.h[i] - exact.h[i] });
    let q_err = (0..n).map(|i| if both_dry(i) { R::zero() } else { numerical.q(i) - exact.q(i) });
    Ok(ProfileErrors { h: Norms::of(h_err, n), q: Norms::of(q_err, n) })
}

/// Order measured between one pair of grids, or the exact-solution signal
/// when an error vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderStep<R> {
    Measured(R),
    Exact,
}

impl<R: Real> OrderStep<R> {
    pub fn measured(&self) -> Option<R> {
        match self {
            OrderStep::Measured(p) => Some(*p),
            OrderStep::Exact => None,
        }
    }
}

/// Convergence orders between consecutive `(cells, error)` entries:
/// `log(e_k / e_{k+1}) / log(n_{k+1} / n_k)`.
pub fn convergence_order<R: Real>(errors: &[(usize, R)]) -> Result<Vec<OrderStep<R>>> {
    if errors.len() < 2 {
        return Err(Error::InvalidConfig("need at least two grids for an order".into()));
    }
    for pair in errors.windows(2) {
        if pair[1].0 <= pair[0].0 {
            return Err(Error::InvalidConfig("grid sizes must increase strictly".into()));
        }
    }
    if errors.iter().any(|(_, e)| *e < R::zero()) {
        return Err(Error::InvalidConfig("errors must be nonnegative".into()));
    }
    Ok(errors
        .windows(2)
        .map(|pair| {
            let (n0, e0) = pair[0];
            let (n1, e1) = pair[1];
            if e0 == R::zero() || e1 == R::zero() {
                OrderStep::Exact
            } else {
                OrderStep::Measured(
                    (e0 / e1).ln() / (R::of_usize(n1) / R::of_usize(n0)).ln(),
                )
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Grid1;
    use approx::assert_relative_eq;

    fn profile(h: Vec<f64>, u: Vec<f64>) -> SolutionProfile<f64> {
        let n = h.len();
        let grid = Grid1::new(0.0, n as f64, n).unwrap();
        SolutionProfile::new(grid, h, u, vec![0.0; n], 0.0).unwrap()
    }

    #[test]
    fn identical_profiles_have_zero_norms() {
        let a = profile(vec![1.0, 2.0, 3.0], vec![0.1, 0.2, 0.3]);
        let e = error_norms(&a, &a, 1e-8).unwrap();
        assert_eq!((e.h.l1, e.h.l2, e.h.linf), (0.0, 0.0, 0.0));
        assert_eq!((e.q.l1, e.q.l2, e.q.linf), (0.0, 0.0, 0.0));
    }

    #[test]
    fn constant_error_is_preserved_by_all_norms() {
        let a = profile(vec![3.0; 5], vec![0.0; 5]);
        let b = profile(vec![1.0; 5], vec![0.0; 5]);
        let e = error_norms(&a, &b, 1e-8).unwrap();
        assert_eq!((e.h.l1, e.h.l2, e.h.linf), (2.0, 2.0, 2.0));
    }

    #[test]
    fn single_cell_error_hand_computed() {
        let a = profile(vec![1.0, 1.0, 4.0], vec![0.0; 3]);
        let b = profile(vec![1.0, 1.0, 1.0], vec![0.0; 3]);
        let e = error_norms(&a, &b, 1e-8).unwrap();
        assert_relative_eq!(e.h.l1, 1.0, max_relative = 1e-15);
        assert_relative_eq!(e.h.l2, 3.0_f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(e.h.linf, 3.0, max_relative = 1e-15);
    }

    #[test]
    fn dry_dry_cells_contribute_nothing() {
        let a = profile(vec![1.0, 1e-12, 1.0], vec![0.0; 3]);
        let b = profile(vec![1.0, 1e-10, 1.0], vec![0.0; 3]);
        let e = error_norms(&a, &b, 1e-8).unwrap();
        assert_eq!(e.h.linf, 0.0);
    }

    #[test]
    fn grid_mismatch_rejected() {
        let a = profile(vec![1.0; 3], vec![0.0; 3]);
        let b = profile(vec![1.0; 4], vec![0.0; 4]);
        assert!(matches!(error_norms(&a, &b, 1e-8), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn orders_from_halving_errors() {
        let steps = convergence_order(&[(100usize, 0.2), (200, 0.1)]).unwrap();
        assert_relative_eq!(steps[0].measured().unwrap(), 1.0, max_relative = 1e-12);
        let steps = convergence_order(&[(100usize, 0.16), (200, 0.04)]).unwrap();
        assert_relative_eq!(steps[0].measured().unwrap(), 2.0, max_relative = 1e-12);
    }

    #[test]
    fn zero_error_reports_exact() {
        let steps = convergence_order(&[(100usize, 0.0), (200, 0.0)]).unwrap();
        assert_eq!(steps[0], OrderStep::Exact);
    }

    #[test]
    fn invalid_sequences_rejected() {
        assert!(convergence_order(&[(100usize, 0.1)]).is_err());
        assert!(convergence_order(&[(200usize, 0.1), (100, 0.2)]).is_err());
    }
}
