//! Construction of explicit near-isometries between a normed space and
//! Euclidean space, distortion measurement, and the closed-form bounds the
//! construction is compared against.
//!
//! The two-dimensional builder pairs a unit vector `x` with a
//! bracket-orthogonal unit `y` and measures the map `(a, b) -> a x + b y`
//! over its circle of normalized combinations. The n-dimensional builder
//! extends a frame one direction at a time: rescale the current map to
//! operator norm at most one, adjoin a unit vector bracket-orthogonal to all
//! current columns, and repeat. The product `||L|| * ||L^-1||` of the result
//! witnesses an upper bound on the Banach–Mazur distance to Euclidean space.

use crate::error::{Error, Result};
use crate::linalg;
use crate::ortho;
use crate::sampling;
use crate::search::{self, StepSchedule};
use crate::space::{Normed, RANK_TOL};
use crate::vnj::clarkson_vnj;
use serde::Serialize;

/// Default sampling budget for distortion measurement.
pub const DISTORTION_BUDGET: usize = 100_000;
/// Budget for the per-level operator-norm estimates inside the builder.
const LEVEL_BUDGET: usize = 20_000;
/// Inflation applied when rescaling a map to operator norm <= 1, absorbing
/// the sampled estimate's refinement tolerance.
const RESCALE_INFLATION: f64 = 1.0 + 1e-9;

/// Sampled operator norms of a linear map `R^k -> X` given by columns.
#[derive(Debug, Clone, Serialize)]
pub struct OperatorNorms {
    /// `max ||M u||_X` over Euclidean-unit `u`.
    pub op_norm: f64,
    /// `1 / min ||M u||_X` over the same family.
    pub inv_op_norm: f64,
    pub op_witness: Vec<f64>,
    pub inv_witness: Vec<f64>,
}

impl OperatorNorms {
    pub fn distortion(&self) -> f64 {
        self.op_norm * self.inv_op_norm
    }
}

/// A linear map `R^k -> X` (columns are images of the standard basis) with
/// its measured distortion and per-level orthogonality residuals.
#[derive(Debug, Clone, Serialize)]
pub struct LinearMapReport {
    /// Row-major matrix; entry `[i][j]` is coordinate `i` of the image of
    /// `e_j`.
    pub matrix: Vec<Vec<f64>>,
    pub op_norm: f64,
    pub inv_op_norm: f64,
    pub distortion: f64,
    pub op_witness: Vec<f64>,
    pub inv_witness: Vec<f64>,
    /// Orthogonality residual accepted at each induction level, in order.
    pub per_level_delta: Vec<f64>,
    /// Defect value the report was compared against, when one was attached.
    pub epsilon_used: Option<f64>,
    /// Closed-form bound snapshot attached alongside `epsilon_used`.
    pub bounds: Option<BoundValues>,
}

impl LinearMapReport {
    /// Attach the defect value and bound snapshot used for comparison.
    pub fn with_bounds(mut self, n: usize, epsilon: f64) -> Result<Self> {
        let bounds = kn_bound(n, epsilon)?;
        self.epsilon_used = Some(epsilon);
        self.bounds = Some(bounds);
        Ok(self)
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        let k = self.matrix[0].len();
        (0..k)
            .map(|j| self.matrix.iter().map(|row| row[j]).collect())
            .collect()
    }
}

/// Closed-form distortion bounds for defect `epsilon`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundValues {
    pub n: usize,
    pub epsilon: f64,
    /// `18 n^2 - 17 n + 14`, the linear growth coefficient.
    pub beta_n: f64,
    /// `1 + beta_n * epsilon`.
    pub kn_linear: f64,
    /// Two-dimensional bound
    /// `sqrt((1 + 15 eps + 13.5 eps^2) / (1 - 15 eps - 13.5 eps^2))`;
    /// populated only for n = 2 and only while the denominator is positive.
    pub bound_2d: Option<f64>,
}

pub fn beta(n: usize) -> f64 {
    let n = n as f64;
    18.0 * n * n - 17.0 * n + 14.0
}

/// The two-dimensional closed-form bound; `None` once the denominator
/// `1 - 15 eps - 13.5 eps^2` stops being positive.
pub fn bound_2d_value(epsilon: f64) -> Option<f64> {
    let num = 1.0 + 15.0 * epsilon + 13.5 * epsilon * epsilon;
    let den = 1.0 - 15.0 * epsilon - 13.5 * epsilon * epsilon;
    if den > 0.0 {
        Some((num / den).sqrt())
    } else {
        None
    }
}

/// Evaluate the closed-form bounds at `(n, epsilon)`.
pub fn kn_bound(n: usize, epsilon: f64) -> Result<BoundValues> {
    if n < 2 {
        return Err(Error::invalid("kn_bound requires n >= 2"));
    }
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::invalid("epsilon must be non-negative"));
    }
    let beta_n = beta(n);
    Ok(BoundValues {
        n,
        epsilon,
        beta_n,
        kn_linear: 1.0 + beta_n * epsilon,
        bound_2d: if n == 2 {
            bound_2d_value(epsilon)
        } else {
            None
        },
    })
}

/// Distortion of the identity map from l_p^n to l_2^n: `n^|1/2 - 1/p|`.
pub fn lp_identity_distortion(p: f64, n: usize) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::invalid(format!("p must be >= 1 or inf, got {p}")));
    }
    if n == 0 {
        return Err(Error::invalid("n must be >= 1"));
    }
    let inv_p = if p.is_infinite() { 0.0 } else { 1.0 / p };
    Ok((n as f64).powf((0.5 - inv_p).abs()))
}

/// Distortion bound for l_p^n phrased through its defect:
/// `n^(log2(eps + 1) / 2)` with `eps = 2^(|2-p|/p) - 1`. Algebraically equal
/// to [`lp_identity_distortion`].
pub fn proposition_bound(p: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("proposition_bound requires n >= 2"));
    }
    let eps = clarkson_vnj(p)? - 1.0;
    Ok((n as f64).powf((eps + 1.0).log2() / 2.0))
}

fn euclid_project(z: &mut [f64]) {
    let len = linalg::norm2(z);
    if len > 0.0 {
        for v in z.iter_mut() {
            *v /= len;
        }
    }
}

/// Deterministic candidate directions probed before random sampling: the
/// coordinate axes and the sign-pattern diagonals, which are exactly the
/// extremizers for p-norm maps and harmless elsewhere.
fn corner_candidates(k: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for i in 0..k {
        let mut e = vec![0.0; k];
        e[i] = 1.0;
        out.push(e);
    }
    let scale = 1.0 / (k as f64).sqrt();
    if k <= 12 {
        for mask in 0..(1_u64 << (k - 1)) {
            let mut v = vec![scale; k];
            for (i, item) in v.iter_mut().enumerate().skip(1) {
                if mask >> (i - 1) & 1 == 1 {
                    *item = -scale;
                }
            }
            out.push(v);
        }
    } else {
        out.push(vec![scale; k]);
    }
    out
}

/// Sampled operator norms of the map given by `columns` (full column rank
/// required): `op_norm` maximizes and `inv_op_norm` reciprocates the minimum
/// of `||M u||_X` over Euclidean-unit `u`, each refined by pattern search.
/// Deterministic given `seed`.
pub fn distortion_estimate<N: Normed + ?Sized>(
    space: &N,
    columns: &[Vec<f64>],
    budget: usize,
    seed: u64,
) -> Result<OperatorNorms> {
    validate_columns(space, columns)?;
    if linalg::min_singular_ratio(columns) <= RANK_TOL {
        return Err(Error::invalid("matrix is rank-deficient"));
    }
    Ok(extreme_values(space, columns, budget, seed))
}

fn validate_columns<N: Normed + ?Sized>(space: &N, columns: &[Vec<f64>]) -> Result<()> {
    if columns.is_empty() {
        return Err(Error::invalid("matrix needs at least one column"));
    }
    for col in columns {
        if col.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: col.len(),
            });
        }
    }
    Ok(())
}

/// Shared max/min machinery; no rank check, which also makes it usable for
/// operator-norm-only questions on possibly singular maps.
pub(crate) fn extreme_values<N: Normed + ?Sized>(
    space: &N,
    columns: &[Vec<f64>],
    budget: usize,
    seed: u64,
) -> OperatorNorms {
    let k = columns.len();
    let g = |u: &[f64]| space.norm(&linalg::mat_vec(columns, u));

    let mut max_pt = Vec::new();
    let mut max_val = f64::NEG_INFINITY;
    let mut min_pt = Vec::new();
    let mut min_val = f64::INFINITY;
    let mut consider = |u: Vec<f64>| {
        let v = g(&u);
        if v > max_val {
            max_val = v;
            max_pt = u.clone();
        }
        if v < min_val {
            min_val = v;
            min_pt = u;
        }
    };
    for u in corner_candidates(k) {
        consider(u);
    }
    let mut rng = sampling::rng(seed);
    for _ in 0..budget {
        consider(sampling::euclid_unit(&mut rng, k));
    }

    let top = search::maximize(g, euclid_project, &max_pt, &StepSchedule::standard());
    let bottom = search::minimize(g, euclid_project, &min_pt, &StepSchedule::standard());
    OperatorNorms {
        op_norm: top.value,
        inv_op_norm: 1.0 / bottom.value,
        op_witness: top.point,
        inv_witness: bottom.point,
    }
}

fn unit_first_axis<N: Normed + ?Sized>(space: &N) -> Vec<f64> {
    let mut e = vec![0.0; space.dim()];
    e[0] = 1.0;
    let len = space.norm(&e);
    e[0] = 1.0 / len;
    e
}

fn report_from_columns(
    columns: &[Vec<f64>],
    norms: OperatorNorms,
    per_level_delta: Vec<f64>,
) -> LinearMapReport {
    LinearMapReport {
        matrix: linalg::rows_from_columns(columns),
        op_norm: norms.op_norm,
        inv_op_norm: norms.inv_op_norm,
        distortion: norms.op_norm * norms.inv_op_norm,
        op_witness: norms.op_witness,
        inv_witness: norms.inv_witness,
        per_level_delta,
        epsilon_used: None,
        bounds: None,
    }
}

/// Build the two-dimensional near-isometry: columns `(x, y)` with `x` the
/// normalized first axis and `y` bracket-orthogonal to it. Distortion is
/// measured over the normalized pencil `(x + t y) / sqrt(1 + t^2)`, swept
/// through the tangent parametrization on a 10^4-point grid (the endpoint
/// is `y` itself, i.e. t = inf) and then refined.
pub fn build_isometry_2d<N: Normed + ?Sized>(space: &N, tol: f64) -> Result<LinearMapReport> {
    if space.dim() != 2 {
        return Err(Error::invalid("build_isometry_2d requires dimension 2"));
    }
    let x = unit_first_axis(space);
    let found = ortho::orthogonal_2d(space, &x, tol)?;
    let columns = vec![x, found.y.clone()];
    if linalg::min_singular_ratio(&columns) <= RANK_TOL {
        return Err(Error::construction(
            "orthogonal companion is numerically parallel to x",
        ));
    }

    let g = |theta: &[f64]| {
        let u = [theta[0].cos(), theta[0].sin()];
        space.norm(&linalg::mat_vec(&columns, &u))
    };
    const GRID: usize = 10_000;
    let mut max_theta = 0.0;
    let mut max_val = f64::NEG_INFINITY;
    let mut min_theta = 0.0;
    let mut min_val = f64::INFINITY;
    for j in 0..GRID {
        let theta =
            -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * ((j + 1) as f64) / (GRID as f64);
        let v = g(&[theta]);
        if v > max_val {
            max_val = v;
            max_theta = theta;
        }
        if v < min_val {
            min_val = v;
            min_theta = theta;
        }
    }
    let no_project = |_: &mut [f64]| {};
    let top = search::maximize(g, no_project, &[max_theta], &StepSchedule::standard());
    let bottom = search::minimize(g, no_project, &[min_theta], &StepSchedule::standard());
    let norms = OperatorNorms {
        op_norm: top.value,
        inv_op_norm: 1.0 / bottom.value,
        op_witness: vec![top.point[0].cos(), top.point[0].sin()],
        inv_witness: vec![bottom.point[0].cos(), bottom.point[0].sin()],
    };
    Ok(report_from_columns(
        &columns,
        norms,
        vec![found.residual_max],
    ))
}

/// Rescale a map in place so its operator norm is at most one (dividing by
/// the measured norm times 1+1e-9), returning the rescaled map's norms
/// derived from the same measurement. Both the builder and the inequality
/// checks run this before adjoining a new direction.
pub(crate) fn rescale_to_contraction<N: Normed + ?Sized>(
    space: &N,
    columns: &mut [Vec<f64>],
    budget: usize,
    seed: u64,
) -> OperatorNorms {
    let est = extreme_values(space, columns, budget, seed);
    let scale = 1.0 / (est.op_norm * RESCALE_INFLATION);
    for col in columns.iter_mut() {
        for v in col.iter_mut() {
            *v *= scale;
        }
    }
    OperatorNorms {
        // Norms of the rescaled map, derived from the same measurement.
        op_norm: 1.0 / RESCALE_INFLATION,
        inv_op_norm: est.inv_op_norm * est.op_norm * RESCALE_INFLATION,
        op_witness: est.op_witness,
        inv_witness: est.inv_witness,
    }
}

pub(crate) struct Frame {
    pub columns: Vec<Vec<f64>>,
    /// Inverse operator norm bound for the final rescaled frame.
    pub inv_norm: f64,
}

/// Grow a bracket-orthogonal frame of `levels` columns, rescaling to a
/// contraction before each extension and once more at the end.
pub(crate) fn grow_frame<N: Normed + ?Sized>(
    space: &N,
    levels: usize,
    tol: f64,
    starts: usize,
    seed: u64,
) -> Result<Frame> {
    let mut columns = vec![unit_first_axis(space)];
    for k in 2..=levels {
        rescale_to_contraction(
            space,
            &mut columns,
            LEVEL_BUDGET,
            sampling::derive_seed(seed, 2 * k as u64),
        );
        let found = ortho::orthogonal_nd(
            space,
            &columns,
            tol,
            starts,
            sampling::derive_seed(seed, 2 * k as u64 + 1),
        )?;
        columns.push(found.y);
        if linalg::min_singular_ratio(&columns) <= RANK_TOL {
            return Err(Error::construction(format!(
                "assembled matrix is singular at level {k}: the new direction lies in the current span"
            )));
        }
    }
    let final_norms = rescale_to_contraction(
        space,
        &mut columns,
        LEVEL_BUDGET,
        sampling::derive_seed(seed, 0),
    );
    Ok(Frame {
        columns,
        inv_norm: final_norms.inv_op_norm,
    })
}

/// Build a near-isometry `R^n -> X` by induction on dimension: the base case
/// is [`build_isometry_2d`]; each further level rescales the current map to
/// a contraction, adjoins a bracket-orthogonal unit direction `x_k` (so the
/// extension `(y, t) -> y + t x_k` is near-isometric from the Euclidean
/// direct sum), and records the accepted residual. The final distortion is
/// measured on the full Euclidean sphere.
pub fn build_isometry_nd<N: Normed + ?Sized>(
    space: &N,
    tol: f64,
    seed: u64,
) -> Result<LinearMapReport> {
    let n = space.dim();
    match n {
        // Every one-dimensional norm is Euclidean up to scale.
        1 => {
            let columns = vec![unit_first_axis(space)];
            let norms = extreme_values(space, &columns, 16, sampling::derive_seed(seed, 1));
            Ok(report_from_columns(&columns, norms, Vec::new()))
        }
        2 => build_isometry_2d(space, tol),
        _ => {
            let mut columns = vec![unit_first_axis(space)];
            let mut deltas = Vec::new();
            for k in 2..=n {
                rescale_to_contraction(
                    space,
                    &mut columns,
                    LEVEL_BUDGET,
                    sampling::derive_seed(seed, 2 * k as u64),
                );
                let found = ortho::orthogonal_nd(
                    space,
                    &columns,
                    tol,
                    ortho::DEFAULT_STARTS,
                    sampling::derive_seed(seed, 2 * k as u64 + 1),
                )?;
                deltas.push(found.residual_max);
                columns.push(found.y);
                if linalg::min_singular_ratio(&columns) <= RANK_TOL {
                    return Err(Error::construction(format!(
                        "assembled matrix is singular at level {k}: x_{k} lies in the current span"
                    )));
                }
            }
            let norms = extreme_values(
                space,
                &columns,
                DISTORTION_BUDGET,
                sampling::derive_seed(seed, 1),
            );
            Ok(report_from_columns(&columns, norms, deltas))
        }
    }
}
