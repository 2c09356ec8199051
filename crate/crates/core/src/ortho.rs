//! Numerical search for bracket-orthogonal unit vectors.
//!
//! For any unit `x` in a two-dimensional space there is a unit `y` with
//! `[x, y] = 0`: the bracket runs from `[x, x] = 4` to `[x, -x] = -4` along a
//! path on the unit sphere, so a sign change pins the zero down by bisection.
//! In higher dimensions a zero of the odd residual map
//! `y -> ([y, x_1], ..., [y, x_k])` on the sphere is guaranteed by the
//! Borsuk–Ulam theorem whenever `k <= n - 1`; that argument is
//! non-constructive, so here the residual sum of squares is minimized by
//! multi-start pattern search instead. A failed search therefore means
//! insufficient effort, never nonexistence, and the caller gets the best
//! point found.

use crate::error::{Error, Result};
use crate::linalg;
use crate::sampling;
use crate::search::{self, StepSchedule};
use crate::space::{bracket_raw, Normed};
use serde::Serialize;

/// Default residual tolerance; keeps the orthogonality defect negligible
/// against the defect terms it accompanies in downstream bounds.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Default number of seeded starts for the n-dimensional search.
pub const DEFAULT_STARTS: usize = 20;

/// A unit vector approximately bracket-orthogonal to a family.
#[derive(Debug, Clone, Serialize)]
pub struct OrthoResult {
    pub y: Vec<f64>,
    /// `[y, x_i]` for each input vector, in order.
    pub residuals: Vec<f64>,
    /// `max_i |[y, x_i]|`.
    pub residual_max: f64,
    pub starts_used: usize,
}

fn residuals_of<N: Normed + ?Sized>(space: &N, y: &[f64], xs: &[Vec<f64>]) -> (Vec<f64>, f64) {
    let residuals: Vec<f64> = xs.iter().map(|x| bracket_raw(space, y, x)).collect();
    let max = residuals.iter().fold(0.0_f64, |m, r| m.max(r.abs()));
    (residuals, max)
}

/// Deterministic sign: flip so the first significant coordinate is positive.
fn canonical_sign(y: &mut [f64]) {
    let max = y.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if max == 0.0 {
        return;
    }
    for &v in y.iter() {
        if v.abs() > 1e-9 * max {
            if v < 0.0 {
                for u in y.iter_mut() {
                    *u = -*u;
                }
            }
            return;
        }
    }
}

/// Find a unit `y` with `[x, y] = 0` in a two-dimensional space by bisecting
/// the bracket along the sphere path from `x` to `-x`.
///
/// The bisection runs to machine precision; `tol` is the acceptance bound on
/// the final residual.
pub fn orthogonal_2d<N: Normed + ?Sized>(space: &N, x: &[f64], tol: f64) -> Result<OrthoResult> {
    if space.dim() != 2 {
        return Err(Error::invalid(
            "orthogonal_2d requires a 2-dimensional space",
        ));
    }
    if x.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: x.len(),
        });
    }
    if tol <= 0.0 {
        return Err(Error::invalid("tol must be positive"));
    }
    let nx = space.norm(x);
    if (nx - 1.0).abs() > 1e-9 {
        return Err(Error::invalid(format!(
            "x must be a unit vector, got norm {nx}"
        )));
    }
    // Euclidean-independent companion direction: the axis least aligned
    // with x. The path (cos t) x + (sin t) w never passes through zero.
    let w = if x[0].abs() <= x[1].abs() {
        vec![1.0, 0.0]
    } else {
        vec![0.0, 1.0]
    };
    let point_at = |theta: f64| -> Vec<f64> {
        let raw = linalg::add(
            &linalg::scale(x, theta.cos()),
            &linalg::scale(&w, theta.sin()),
        );
        linalg::scale(&raw, 1.0 / space.norm(&raw))
    };
    let h = |theta: f64| bracket_raw(space, x, &point_at(theta));

    let (mut lo, mut hi) = (0.0_f64, std::f64::consts::PI);
    let (h_lo, h_hi) = (h(lo), h(hi));
    if !(h_lo > 0.0 && h_hi < 0.0) {
        return Err(Error::construction(format!(
            "bracket does not change sign along the sphere path: h(0) = {h_lo}, h(pi) = {h_hi}"
        )));
    }
    // h is positive at lo throughout: the zero crossing stays in [lo, hi].
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        if hi - lo < f64::EPSILON * std::f64::consts::PI {
            break;
        }
        let hm = h(mid);
        if hm == 0.0 {
            break;
        }
        if hm > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut y = point_at(mid);
    canonical_sign(&mut y);
    let (residuals, residual_max) = residuals_of(space, &y, std::slice::from_ref(&x.to_vec()));
    if residual_max > tol {
        return Err(Error::SearchFailure {
            residual: residual_max,
            tol,
            starts: 1,
            best: Box::new(OrthoResult {
                y,
                residuals,
                residual_max,
                starts_used: 1,
            }),
        });
    }
    Ok(OrthoResult {
        y,
        residuals,
        residual_max,
        starts_used: 1,
    })
}

/// Find a unit `y` with `|[y, x_i]| <= tol` for all `i` by minimizing
/// `F(y) = sum_i [y, x_i]^2` over the unit sphere with multi-start pattern
/// search. Requires `k <= n - 1` so that a zero exists. Starts run in index
/// order and the first to reach `tol` is returned, which makes the result
/// deterministic and independent of any execution interleaving.
pub fn orthogonal_nd<N: Normed + ?Sized>(
    space: &N,
    xs: &[Vec<f64>],
    tol: f64,
    starts: usize,
    seed: u64,
) -> Result<OrthoResult> {
    let n = space.dim();
    if n < 2 {
        return Err(Error::invalid("orthogonal_nd requires dimension >= 2"));
    }
    if xs.len() > n - 1 {
        return Err(Error::invalid(format!(
            "need k <= n - 1 constraints for a guaranteed zero, got k = {} in dimension {n}",
            xs.len()
        )));
    }
    for x in xs {
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
    }
    if tol <= 0.0 {
        return Err(Error::invalid("tol must be positive"));
    }
    let starts = starts.max(1);

    let objective = |y: &[f64]| -> f64 {
        xs.iter()
            .map(|x| {
                let b = bracket_raw(space, y, x);
                b * b
            })
            .sum()
    };
    let project = |y: &mut [f64]| {
        let len = space.norm(y);
        if len > 0.0 && len.is_finite() {
            for v in y.iter_mut() {
                *v /= len;
            }
        }
    };

    let mut rng = sampling::rng(seed);
    let mut best: Option<OrthoResult> = None;
    for s in 0..starts {
        let start = sampling::space_unit(space, &mut rng);
        let refined = search::minimize(objective, project, &start, &StepSchedule::fine());
        let mut y = refined.point;
        canonical_sign(&mut y);
        let (residuals, residual_max) = residuals_of(space, &y, xs);
        let result = OrthoResult {
            y,
            residuals,
            residual_max,
            starts_used: s + 1,
        };
        if residual_max <= tol {
            return Ok(result);
        }
        if best
            .as_ref()
            .is_none_or(|b| result.residual_max < b.residual_max)
        {
            best = Some(result);
        }
    }
    let mut best = best.expect("at least one start ran");
    best.starts_used = starts;
    Err(Error::SearchFailure {
        residual: best.residual_max,
        tol,
        starts,
        best: Box::new(best),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{bracket, norm_eval, NormSpec, Space};
    use approx::assert_relative_eq;

    #[test]
    fn euclidean_plane_gives_the_perpendicular() {
        let l2 = Space::euclidean(2);
        let r = orthogonal_2d(&l2, &[1.0, 0.0], 1e-10).unwrap();
        assert!(r.residual_max <= 1e-10);
        assert_relative_eq!(r.y[0].abs(), 0.0, epsilon = 1e-9);
        assert_relative_eq!(r.y[1], 1.0, max_relative = 1e-9);
    }

    #[test]
    fn l1_plane_matches_the_analytic_zero() {
        // For unit-l1 y = (a, 1 - |a|) the bracket against e1 is
        // 4a(2 - |a|) on a >= 0 and 4a(2 + a) on a <= 0, vanishing only at
        // a = 0; an independent coarse bisection on that scalar confirms it.
        let f = |a: f64| {
            let b = 1.0 - a.abs();
            let plus = (1.0 + a).abs() + b.abs();
            let minus = (1.0 - a).abs() + b.abs();
            plus * plus - minus * minus
        };
        let (mut lo, mut hi) = (-0.9_f64, 0.9_f64);
        assert!(f(lo) < 0.0 && f(hi) > 0.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if f(mid) >= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert!(lo.abs() < 1e-12 && hi.abs() < 1e-12);

        let l1 = Space::pnorm(1.0, 2).unwrap();
        let r = orthogonal_2d(&l1, &[1.0, 0.0], 1e-10).unwrap();
        assert!(r.residual_max <= 1e-10);
        assert!(r.y[0].abs() <= 1e-9, "y = {:?}", r.y);
        assert_relative_eq!(r.y[1].abs(), 1.0, max_relative = 1e-9);
    }

    #[test]
    fn postcondition_holds_on_a_gauge_norm() {
        let hexagon = NormSpec::polytope(vec![
            vec![1.0, 0.0],
            vec![0.5, 0.75_f64.sqrt()],
            vec![-0.5, 0.75_f64.sqrt()],
        ])
        .unwrap();
        let space = Space::new(2, hexagon).unwrap();
        let x = {
            let raw = vec![1.0, 0.3];
            let n = norm_eval(&space, &raw).unwrap();
            vec![raw[0] / n, raw[1] / n]
        };
        let r = orthogonal_2d(&space, &x, 1e-10).unwrap();
        assert!(bracket(&space, &x, &r.y).unwrap().abs() <= 1e-10);
        assert_relative_eq!(norm_eval(&space, &r.y).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects_non_unit_input() {
        let l2 = Space::euclidean(2);
        assert!(matches!(
            orthogonal_2d(&l2, &[2.0, 0.0], 1e-8),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn euclidean_3d_recovers_the_missing_axis() {
        let l2 = Space::euclidean(3);
        let xs = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
        let r = orthogonal_nd(&l2, &xs, 1e-8, 20, 1).unwrap();
        assert!(r.residual_max <= 1e-8);
        assert!(r.y[2] > 0.99, "sign rule should pick +e3, got {:?}", r.y);
        assert!(r.y[0].abs() < 1e-6 && r.y[1].abs() < 1e-6);
    }

    #[test]
    fn l1_3d_single_constraint() {
        // Any unit vector supported off coordinate 1 works: both ||y + e1||_1
        // and ||y - e1||_1 equal 1 + ||y||_1 by separability.
        let l1 = Space::pnorm(1.0, 3).unwrap();
        let r = orthogonal_nd(&l1, &[vec![1.0, 0.0, 0.0]], 1e-8, 20, 2).unwrap();
        assert!(r.residual_max <= 1e-8);
        assert_relative_eq!(norm_eval(&l1, &r.y).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn blend_space_two_constraints() {
        let blend = NormSpec::blend(
            NormSpec::pnorm(2.0).unwrap(),
            NormSpec::pnorm(4.0).unwrap(),
            0.1,
        )
        .unwrap();
        let space = Space::new(3, blend).unwrap();
        let xs = crate::space::sphere_sample(&space, 2, 99);
        let r = orthogonal_nd(&space, &xs, 1e-6, 50, 4).unwrap();
        assert!(r.residual_max <= 1e-6);
        for (i, x) in xs.iter().enumerate() {
            assert!((bracket(&space, &r.y, x).unwrap() - r.residuals[i]).abs() <= 1e-12);
        }
    }

    #[test]
    fn search_failure_carries_the_best_point() {
        // An unreachable tolerance forces the failure path.
        let l1 = Space::pnorm(1.0, 2).unwrap();
        let err = orthogonal_nd(&l1, &[vec![1.0, 0.0]], 1e-30, 2, 3).unwrap_err();
        match err {
            Error::SearchFailure { residual, best, .. } => {
                assert_eq!(best.residual_max, residual);
                assert_eq!(best.starts_used, 2);
            }
            other => panic!("expected SearchFailure, got {other:?}"),
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let l4 = Space::pnorm(4.0, 3).unwrap();
        let xs = vec![vec![1.0, 0.0, 0.0]];
        let a = orthogonal_nd(&l4, &xs, 1e-8, 5, 7).unwrap();
        let b = orthogonal_nd(&l4, &xs, 1e-8, 5, 7).unwrap();
        assert_eq!(a.y, b.y);
        assert_eq!(a.starts_used, b.starts_used);
    }
}
