//! Executable versions of the explicit bracket inequalities, checked by
//! seeded randomized sampling.
//!
//! Each check draws samples from the box [-5, 5]^n (with corner cases
//! injected at fixed sample indices), evaluates the claimed quantity and its
//! bound, and reports how many samples violated the bound plus the worst
//! margin seen. Violations use a relative slack of 1e-9 against the larger
//! of the bound and the squared-norm magnitude of the sample: the quantities
//! are differences of squared norms and lose digits to cancellation at
//! exactly that scale, so a bound of zero (defect zero) must not flag pure
//! rounding noise.

use crate::error::{Error, Result};
use crate::isometry;
use crate::linalg;
use crate::sampling;
use crate::space::{bracket_raw, Normed, ABS_FLOOR};
use rand::Rng;
use serde::Serialize;

/// Relative slack of the violation threshold.
pub const REL_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    Csi,
    Defect,
    Doublelaw,
    Addlaw,
    Scalelaw,
    LinearCombo,
    InductRatio,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::Csi,
        LemmaId::Defect,
        LemmaId::Doublelaw,
        LemmaId::Addlaw,
        LemmaId::Scalelaw,
        LemmaId::LinearCombo,
        LemmaId::InductRatio,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            LemmaId::Csi => "csi",
            LemmaId::Defect => "defect",
            LemmaId::Doublelaw => "doublelaw",
            LemmaId::Addlaw => "addlaw",
            LemmaId::Scalelaw => "scalelaw",
            LemmaId::LinearCombo => "linear_combo",
            LemmaId::InductRatio => "induct_ratio",
        }
    }

    pub fn parse(name: &str) -> Option<LemmaId> {
        LemmaId::ALL.iter().copied().find(|l| l.as_str() == name)
    }
}

/// The sample achieving the worst margin: the vectors drawn, in the order
/// the corresponding `eval_*` function takes them, plus any scalars
/// (the `t` of the scaling law, coefficient vectors).
#[derive(Debug, Clone, Default, Serialize)]
pub struct Witness {
    pub vectors: Vec<Vec<f64>>,
    pub scalars: Vec<f64>,
}

/// Outcome of one sample: the measured quantity, its bound, and the scale
/// violations and margins are judged against.
#[derive(Debug, Clone, Copy)]
pub struct SampleOutcome {
    pub quantity: f64,
    pub bound: f64,
    pub scale: f64,
}

impl SampleOutcome {
    fn new(quantity: f64, bound: f64, magnitude: f64) -> Self {
        SampleOutcome {
            quantity,
            bound,
            scale: bound.max(magnitude).max(ABS_FLOOR),
        }
    }

    /// `(bound - quantity) / scale`; negative past the slack is a violation.
    pub fn margin(&self) -> f64 {
        (self.bound - self.quantity) / self.scale
    }

    pub fn violated(&self) -> bool {
        self.margin() < -REL_SLACK
    }

    /// The worse of two readings of the same sample.
    fn worse(self, other: SampleOutcome) -> SampleOutcome {
        if other.margin() < self.margin() {
            other
        } else {
            self
        }
    }
}

/// Violation statistics for one inequality on one space.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheckReport {
    pub lemma_id: LemmaId,
    pub samples: usize,
    pub violations: usize,
    /// Most negative `(bound - quantity) / scale` over all samples.
    pub worst_margin: f64,
    pub worst_witness: Witness,
    pub epsilon_used: f64,
    /// Orthogonality residual assumed by the induction-ratio bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_used: Option<f64>,
    /// Inverse-norm bound assumed by the induction-ratio bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_used: Option<f64>,
}

fn run_check<G, E>(
    lemma_id: LemmaId,
    epsilon_used: f64,
    samples: usize,
    seed: u64,
    mut gen: G,
    eval: E,
) -> BoundCheckReport
where
    G: FnMut(&mut rand_chacha::ChaCha8Rng, usize) -> Witness,
    E: Fn(&Witness) -> SampleOutcome,
{
    let samples = samples.max(1);
    let mut rng = sampling::rng(seed);
    let mut violations = 0;
    let mut worst_margin = f64::INFINITY;
    let mut worst_witness = Witness::default();
    for i in 0..samples {
        let witness = gen(&mut rng, i);
        let outcome = eval(&witness);
        if outcome.violated() {
            violations += 1;
        }
        let margin = outcome.margin();
        if margin < worst_margin {
            worst_margin = margin;
            worst_witness = witness;
        }
    }
    BoundCheckReport {
        lemma_id,
        samples,
        violations,
        worst_margin,
        worst_witness,
        epsilon_used,
        delta_used: None,
        k_used: None,
    }
}

const BOX_HALF: f64 = 5.0;

// --- Cauchy–Schwarz for the bracket ----------------------------------------

/// `|[x, y]| <= 4 ||x|| ||y||`; needs no defect, so it must hold on every
/// norm with zero violations.
pub fn eval_csi<N: Normed + ?Sized>(space: &N, x: &[f64], y: &[f64]) -> SampleOutcome {
    let q = bracket_raw(space, x, y).abs();
    let nx = space.norm(x);
    let ny = space.norm(y);
    let mag = (nx + ny) * (nx + ny);
    SampleOutcome::new(q, 4.0 * nx * ny, mag)
}

pub fn check_csi<N: Normed + ?Sized>(space: &N, samples: usize, seed: u64) -> BoundCheckReport {
    let n = space.dim();
    run_check(
        LemmaId::Csi,
        0.0,
        samples,
        seed,
        |rng, i| {
            let x = sampling::box_vec(rng, n, BOX_HALF);
            // Near-equality stress: every so often take y parallel to x,
            // where the bound is attained exactly.
            let y = if i % 97 == 13 {
                let lambda: f64 = rng.gen_range(-2.0..=2.0);
                linalg::scale(&x, lambda)
            } else {
                sampling::box_vec(rng, n, BOX_HALF)
            };
            Witness {
                vectors: vec![x, y],
                scalars: vec![],
            }
        },
        |w| eval_csi(space, &w.vectors[0], &w.vectors[1]),
    )
}

// --- Defect inequality ------------------------------------------------------

/// `|  ||a+b||^2 + ||a-b||^2 - 2(||a||^2 + ||b||^2) | <= 2 eps (||a||^2 + ||b||^2)`.
pub fn eval_defect<N: Normed + ?Sized>(
    space: &N,
    epsilon: f64,
    a: &[f64],
    b: &[f64],
) -> SampleOutcome {
    let sums = space.norm_sq(a) + space.norm_sq(b);
    let q =
        (space.norm_sq(&linalg::add(a, b)) + space.norm_sq(&linalg::sub(a, b)) - 2.0 * sums).abs();
    SampleOutcome::new(q, 2.0 * epsilon * sums, 2.0 * sums)
}

/// `epsilon` must upper-bound the true defect of the space (analytic or
/// inflated).
pub fn check_defect<N: Normed + ?Sized>(
    space: &N,
    epsilon: f64,
    samples: usize,
    seed: u64,
) -> BoundCheckReport {
    let n = space.dim();
    run_check(
        LemmaId::Defect,
        epsilon,
        samples,
        seed,
        |rng, _| Witness {
            vectors: vec![
                sampling::box_vec(rng, n, BOX_HALF),
                sampling::box_vec(rng, n, BOX_HALF),
            ],
            scalars: vec![],
        },
        |w| eval_defect(space, epsilon, &w.vectors[0], &w.vectors[1]),
    )
}

// --- Doubling law -----------------------------------------------------------

/// `|[2x, y] - 2[x, y]|` against both displayed bounds:
/// `2 eps (||x+y||^2 + ||x-y||^2 + 2||x||^2)` and its relaxation
/// `4 eps [(1+eps)(||x||^2 + ||y||^2) + ||x||^2]`. The worse margin of the
/// two is reported.
pub fn eval_doublelaw<N: Normed + ?Sized>(
    space: &N,
    epsilon: f64,
    x: &[f64],
    y: &[f64],
) -> SampleOutcome {
    let two_x = linalg::scale(x, 2.0);
    let q = (bracket_raw(space, &two_x, y) - 2.0 * bracket_raw(space, x, y)).abs();
    let nx2 = space.norm_sq(x);
    let ny2 = space.norm_sq(y);
    let nsum = space.norm_sq(&linalg::add(x, y));
    let ndiff = space.norm_sq(&linalg::sub(x, y));
    let mag = nsum + ndiff + 2.0 * nx2;
    let tight = SampleOutcome::new(q, 2.0 * epsilon * mag, 4.0 * mag);
    let loose = SampleOutcome::new(
        q,
        4.0 * epsilon * ((1.0 + epsilon) * (nx2 + ny2) + nx2),
        4.0 * mag,
    );
    tight.worse(loose)
}

pub fn check_doublelaw<N: Normed + ?Sized>(
    space: &N,
    epsilon: f64,
    samples: usize,
    seed: u64,
) -> BoundCheckReport {
    let n = space.dim();
    run_check(
        LemmaId::Doublelaw,
        epsilon,
        samples,
        seed,
        |rng, _| Witness {
            vectors: vec![
                sampling::box_vec(rng, n, BOX_HALF),
                sampling::box_vec(rng, n, BOX_HALF),
            ],
            scalars: vec![],
        },
        |w| eval_doublelaw(space, epsilon, &w.vectors[0], &w.vectors[1]),
    )
}

// --- Additivity law ----------------------------------------------------------

/// `|[x,z] + [y,z] - [x+y,z]| <= eps [(3+2eps)||x+y||^2 + ||x-y||^2 + 8(1+eps)||z||^2]`.
pub fn eval_addlaw<N: Normed + ?Sized>(
    space: &N,
    epsilon: f64,
    x: &[f64],
    y: &[f64],
    z: &[f64],
) -> SampleOutcome {
    let q = (bracket_raw(space, x, z) + bracket_raw(space, y, z)
        - bracket_raw(space, &linalg::add(x, y), z))
    .abs();
    let nsum = space.norm_sq(&linalg::add(x, y));
    let ndiff = space.norm_sq(&linalg::sub(x, y));
    let nz2 = space.norm_sq(z);
    let bound = epsilon * ((3.0 + 2.0 * epsilon) * nsum + ndiff + 8.0 * (1.0 + epsilon) * nz2);
    SampleOutcome::new(q, bound, 3.0 * nsum + ndiff + 8.0 * nz2)
}

pub fn check_addlaw<N: Normed + ?Sized>(
    space: &N,
    epsilon: f64,
    samples: usize,
    seed: u64,
) -> BoundCheckReport {
    let n = space.dim();
    run_check(
        LemmaId::Addlaw,
        epsilon,
        samples,
        seed,
        |rng, _| Witness {
            vectors: (0..3)
                .map(|_| sampling::box_vec(rng, n, BOX_HALF))
                .collect(),
            scalars: vec![],
        },
        |w| eval_addlaw(space, epsilon, &w.vectors[0], &w.vectors[1], &w.vectors[2]),
    )
}

// --- Scaling law -------------------------------------------------------------

/// `|[tx, y] - t[x, y]| <= max(1, t^2) eps [(8+7eps)||x||^2 + (20+20eps)||y||^2]`.
pub fn eval_scalelaw<N: Normed + ?Sized>(
    space: &N,
    epsilon: f64,
    x: &[f64],
    y: &[f64],
    t: f64,
) -> SampleOutcome {
    let q = (bracket_raw(space, &linalg::scale(x, t), y) - t * bracket_raw(space, x, y)).abs();
    let nx2 = space.norm_sq(x);
    let ny2 = space.norm_sq(y);
    let factor = 1.0_f64.max(t * t);
    let bound = factor * epsilon * ((8.0 + 7.0 * epsilon) * nx2 + (20.0 + 20.0 * epsilon) * ny2);
    let nx = nx2.sqrt();
    let ny = ny2.sqrt();
    let mag = factor.max(t.abs()) * (nx + ny) * (nx + ny);
    SampleOutcome::new(q, bound, mag)
}

/// Scale factors injected ahead of uniform draws: the exact-identity corners
/// and the dyadic points the doubling argument walks through.
const SPECIAL_T: [f64; 15] = [
    0.0, 1.0, -1.0, 2.0, -2.0, 0.5, -0.5, 0.25, -0.25, 0.75, -0.75, 1.5, -1.5, 1.25, -1.25,
];

pub fn check_scalelaw<N: Normed + ?Sized>(
    space: &N,
    epsilon: f64,
    samples: usize,
    seed: u64,
) -> BoundCheckReport {
    let n = space.dim();
    run_check(
        LemmaId::Scalelaw,
        epsilon,
        samples,
        seed,
        |rng, i| {
            let x = sampling::box_vec(rng, n, BOX_HALF);
            let y = sampling::box_vec(rng, n, BOX_HALF);
            // Draw unconditionally so the stream stays aligned across
            // sample counts; corners override by index.
            let uniform: f64 = rng.gen_range(-10.0..=10.0);
            let t = if i < SPECIAL_T.len() {
                SPECIAL_T[i]
            } else {
                uniform
            };
            Witness {
                vectors: vec![x, y],
                scalars: vec![t],
            }
        },
        |w| eval_scalelaw(space, epsilon, &w.vectors[0], &w.vectors[1], w.scalars[0]),
    )
}

// --- Linear-combination law ---------------------------------------------------

/// Explicit pre-asymptotic bound on
/// `|[sum a_i x_i, y] - sum a_i [x_i, y]|` for `||x_i||` the columns of a
/// contraction and `||y|| <= 1`:
/// `(k-1) eps [(4+2eps) S + 8 + 8eps] + (k + S) eps [28 + 27eps]` with
/// `S = sum a_i^2`.
pub fn linear_combo_bound(k: usize, sum_a_sq: f64, epsilon: f64) -> f64 {
    let k = k as f64;
    (k - 1.0) * epsilon * ((4.0 + 2.0 * epsilon) * sum_a_sq + 8.0 + 8.0 * epsilon)
        + (k + sum_a_sq) * epsilon * (28.0 + 27.0 * epsilon)
}

/// Witness layout: `vectors = [x_1, ..., x_k, y]`, `scalars = a`.
pub fn eval_linear_combo<N: Normed + ?Sized>(
    space: &N,
    epsilon: f64,
    xs: &[Vec<f64>],
    coeffs: &[f64],
    y: &[f64],
) -> SampleOutcome {
    let combo = linalg::mat_vec(xs, coeffs);
    let mut lhs = bracket_raw(space, &combo, y);
    // Cancellation scale: every squared norm the quantity passes through.
    let mut mag = space.norm_sq(&linalg::add(&combo, y)) + space.norm_sq(&linalg::sub(&combo, y));
    for (x, &a) in xs.iter().zip(coeffs) {
        lhs -= a * bracket_raw(space, x, y);
        mag += a.abs() * (space.norm_sq(&linalg::add(x, y)) + space.norm_sq(&linalg::sub(x, y)));
    }
    let sum_a_sq = linalg::dot(coeffs, coeffs);
    SampleOutcome::new(
        lhs.abs(),
        linear_combo_bound(xs.len(), sum_a_sq, epsilon),
        mag,
    )
}

/// Check the linear-combination law with `x_1..x_k` supplied by an internal
/// random map rescaled to operator norm <= 1 and `||y|| <= 1`.
pub fn check_linear_combo<N: Normed + ?Sized>(
    space: &N,
    epsilon: f64,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<BoundCheckReport> {
    if k == 0 {
        return Err(Error::invalid("linear combination law needs k >= 1"));
    }
    let n = space.dim();
    // The setup stream is independent of the sample stream so reports nest
    // cleanly as `samples` grows.
    let mut setup_rng = sampling::rng(sampling::derive_seed(seed, 101));
    let mut xs: Vec<Vec<f64>> = (0..k)
        .map(|_| sampling::gaussian_vec(&mut setup_rng, n))
        .collect();
    isometry::rescale_to_contraction(space, &mut xs, 4000, sampling::derive_seed(seed, 102));

    let report = run_check(
        LemmaId::LinearCombo,
        epsilon,
        samples,
        sampling::derive_seed(seed, 103),
        |rng, i| {
            let coeffs = sampling::box_vec(rng, k, BOX_HALF);
            let mut y = sampling::space_unit(space, rng);
            let shrink: f64 = rng.gen_range(0.0..=1.0);
            // Keep ||y|| <= 1, hitting the unit sphere itself on a fixed cadence.
            if i % 13 != 0 {
                y = linalg::scale(&y, shrink);
            }
            let mut vectors = xs.clone();
            vectors.push(y);
            Witness {
                vectors,
                scalars: coeffs,
            }
        },
        |w| {
            let (xs, y) = w.vectors.split_at(k);
            eval_linear_combo(space, epsilon, xs, &w.scalars, &y[0])
        },
    );
    Ok(report)
}

// --- Induction ratio ----------------------------------------------------------

/// Witness layout: `vectors = [x_1, ..., x_{n-1}, x_n]`, `scalars = a`.
/// Quantity `| ||sum a_i x_i + x_n||^2 / (||sum a_i x_i||^2 + 1) - 1 |`
/// against the fully explicit chain
/// `eps + (K^2/2) (sqrt(n-1) delta + L(n-1, a, eps) / (1 + sum a_i^2))`.
pub fn eval_induct_ratio<N: Normed + ?Sized>(
    space: &N,
    epsilon: f64,
    delta: f64,
    k_bound: f64,
    xs: &[Vec<f64>],
    xn: &[f64],
    coeffs: &[f64],
) -> SampleOutcome {
    let combo = linalg::mat_vec(xs, coeffs);
    let ratio = space.norm_sq(&linalg::add(&combo, xn)) / (space.norm_sq(&combo) + 1.0);
    let k = xs.len();
    let sum_a_sq = linalg::dot(coeffs, coeffs);
    let explicit = linear_combo_bound(k, sum_a_sq, epsilon) / (1.0 + sum_a_sq);
    let bound = epsilon + 0.5 * k_bound * k_bound * ((k as f64).sqrt() * delta + explicit);
    SampleOutcome::new((ratio - 1.0).abs(), bound, 1.0)
}

/// Check the induction ratio on an internally constructed instance: a
/// bracket-orthogonal frame of `n - 1` columns rescaled to a contraction,
/// plus a final unit vector with residual at most `delta` against it.
///
/// `k_bound`, when given, must dominate the measured inverse norm of the
/// frame (it enters the bound as the hypothesis `||L^-1|| <= K`); when
/// absent the measured value is used. A requested `delta` below what the
/// search achieves is raised to the achieved residual so the hypothesis
/// stays true.
pub fn check_induct_ratio<N: Normed + ?Sized>(
    space: &N,
    epsilon: f64,
    delta: f64,
    k_bound: Option<f64>,
    samples: usize,
    seed: u64,
) -> Result<BoundCheckReport> {
    let n = space.dim();
    if n < 2 {
        return Err(Error::invalid("induction ratio needs dimension >= 2"));
    }
    if delta < 0.0 {
        return Err(Error::invalid("delta must be non-negative"));
    }
    let frame = isometry::grow_frame(
        space,
        n - 1,
        ortho_tol_for(delta),
        crate::ortho::DEFAULT_STARTS,
        sampling::derive_seed(seed, 201),
    )?;
    let xn = crate::ortho::orthogonal_nd(
        space,
        &frame.columns,
        ortho_tol_for(delta),
        crate::ortho::DEFAULT_STARTS,
        sampling::derive_seed(seed, 202),
    )?;
    let delta_used = delta.max(xn.residual_max * (1.0 + 1e-9));
    let measured_k = frame.inv_norm * (1.0 + 1e-6);
    let k_used = match k_bound {
        Some(k) if k >= frame.inv_norm => k,
        Some(k) => {
            return Err(Error::invalid(format!(
                "supplied K = {k} is below the measured inverse norm {}",
                frame.inv_norm
            )))
        }
        None => measured_k,
    };

    let xs = frame.columns;
    let xn = xn.y;
    let mut report = run_check(
        LemmaId::InductRatio,
        epsilon,
        samples,
        sampling::derive_seed(seed, 203),
        |rng, _| {
            let coeffs = sampling::box_vec(rng, n - 1, BOX_HALF);
            let mut vectors = xs.clone();
            vectors.push(xn.clone());
            Witness {
                vectors,
                scalars: coeffs,
            }
        },
        |w| {
            let (xs, xn) = w.vectors.split_at(n - 1);
            eval_induct_ratio(space, epsilon, delta_used, k_used, xs, &xn[0], &w.scalars)
        },
    );
    report.delta_used = Some(delta_used);
    report.k_used = Some(k_used);
    Ok(report)
}

/// A requested residual below the search floor is unachievable; the check
/// then records the achieved residual as `delta_used` instead.
fn ortho_tol_for(delta: f64) -> f64 {
    delta.max(1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{NormSpec, Space};
    use crate::vnj::clarkson_vnj;

    fn eps_of(p: f64) -> f64 {
        clarkson_vnj(p).unwrap() - 1.0
    }

    #[test]
    fn csi_holds_everywhere() {
        let spaces = [
            Space::euclidean(2),
            Space::pnorm(1.0, 2).unwrap(),
            Space::new(
                2,
                NormSpec::polytope(vec![
                    vec![1.0, 0.0],
                    vec![0.5, 0.75_f64.sqrt()],
                    vec![-0.5, 0.75_f64.sqrt()],
                ])
                .unwrap(),
            )
            .unwrap(),
        ];
        for space in &spaces {
            let report = check_csi(space, 5000, 1);
            assert_eq!(report.violations, 0, "space {}", space.id());
        }
        // Independent oracle for the plane cases: a coarse grid over angle
        // pairs on the unit circles, where homogeneity reduces the general
        // statement.
        let l1 = Space::pnorm(1.0, 2).unwrap();
        for i in 0..60 {
            for j in 0..60 {
                let a = std::f64::consts::TAU * (i as f64) / 60.0;
                let b = std::f64::consts::TAU * (j as f64) / 60.0;
                let x = [a.cos(), a.sin()];
                let y = [b.cos(), b.sin()];
                let out = eval_csi(&l1, &x, &y);
                assert!(!out.violated());
            }
        }
    }

    #[test]
    fn defect_zero_on_euclidean() {
        let l2 = Space::euclidean(3);
        let report = check_defect(&l2, 0.0, 5000, 2);
        assert_eq!(report.violations, 0);
        // Exact bilinearity: the left side is pure rounding noise.
        assert!(report.worst_margin > -REL_SLACK);
    }

    #[test]
    fn defect_clarkson_spaces() {
        let l1 = Space::pnorm(1.0, 2).unwrap();
        assert_eq!(check_defect(&l1, eps_of(1.0), 5000, 3).violations, 0);
        let l4 = Space::pnorm(4.0, 2).unwrap();
        assert_eq!(check_defect(&l4, eps_of(4.0), 5000, 3).violations, 0);
    }

    #[test]
    fn doublelaw_and_addlaw() {
        let l2 = Space::euclidean(2);
        assert_eq!(check_doublelaw(&l2, 0.0, 3000, 4).violations, 0);
        assert_eq!(check_addlaw(&l2, 0.0, 3000, 4).violations, 0);

        let l1 = Space::pnorm(1.0, 2).unwrap();
        assert_eq!(check_doublelaw(&l1, 1.0, 5000, 5).violations, 0);
        let linf = Space::pnorm(f64::INFINITY, 2).unwrap();
        assert_eq!(check_addlaw(&linf, 1.0, 5000, 5).violations, 0);
        let l15 = Space::pnorm(1.5, 2).unwrap();
        assert_eq!(check_addlaw(&l15, eps_of(1.5), 5000, 5).violations, 0);
    }

    #[test]
    fn scalelaw_corners_are_exact() {
        let l1 = Space::pnorm(1.0, 2).unwrap();
        let x = [1.3, -0.4];
        let y = [0.2, 2.0];
        // t = 1 and t = -1 are identities of the bracket itself.
        assert_eq!(eval_scalelaw(&l1, 0.0, &x, &y, 1.0).quantity, 0.0);
        assert_eq!(eval_scalelaw(&l1, 0.0, &x, &y, -1.0).quantity, 0.0);
        let report = check_scalelaw(&l1, 1.0, 5000, 6);
        assert_eq!(report.violations, 0);
    }

    #[test]
    fn linear_combo_law() {
        let l2 = Space::euclidean(3);
        let r = check_linear_combo(&l2, 0.0, 2, 3000, 7).unwrap();
        assert_eq!(r.violations, 0);

        let l1 = Space::pnorm(1.0, 3).unwrap();
        let r = check_linear_combo(&l1, 1.0, 2, 5000, 7).unwrap();
        assert_eq!(r.violations, 0);
        assert!(check_linear_combo(&l1, 1.0, 0, 10, 7).is_err());
    }

    #[test]
    fn linear_combo_bound_k1_reduces_to_scaling_relaxation() {
        // With a single term the explicit bound collapses to
        // (1 + a^2) eps (28 + 27 eps), the relaxed scaling-law constant.
        for a in [0.0, 0.5, 2.0, -3.0_f64] {
            for eps in [0.0, 0.1, 1.0] {
                let direct = (1.0 + a * a) * eps * (28.0 + 27.0 * eps);
                assert!(
                    (linear_combo_bound(1, a * a, eps) - direct).abs() <= 1e-12 * direct.max(1.0)
                );
            }
        }
    }

    #[test]
    fn induct_ratio_euclidean_is_pythagoras() {
        let l2 = Space::euclidean(3);
        let r = check_induct_ratio(&l2, 0.0, 0.0, None, 3000, 8).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.delta_used.unwrap() < 1e-9);
        assert!(r.k_used.unwrap() < 1.0 + 1e-3);
    }

    #[test]
    fn induct_ratio_l1() {
        let l1 = Space::pnorm(1.0, 3).unwrap();
        let r = check_induct_ratio(&l1, 1.0, 1e-8, None, 5000, 9).unwrap();
        assert_eq!(r.violations, 0);
        let too_small = check_induct_ratio(&l1, 1.0, 1e-8, Some(1e-6), 10, 9);
        assert!(too_small.is_err());
    }

    #[test]
    fn induct_ratio_blend_with_inflated_estimate() {
        let blend = Space::new(
            3,
            NormSpec::blend(
                NormSpec::pnorm(2.0).unwrap(),
                NormSpec::pnorm(4.0).unwrap(),
                0.1,
            )
            .unwrap(),
        )
        .unwrap();
        let eps = crate::vnj::estimate_vnj(&blend, 10_000, 3).epsilon * 1.05;
        let r = check_induct_ratio(&blend, eps, 1e-8, None, 5000, 9).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.delta_used.unwrap() <= 1e-8);
    }

    #[test]
    fn worst_witness_reproduces_worst_margin() {
        let l4 = Space::pnorm(4.0, 2).unwrap();
        let eps = eps_of(4.0);

        let r = check_defect(&l4, eps, 2000, 10);
        let again = eval_defect(
            &l4,
            eps,
            &r.worst_witness.vectors[0],
            &r.worst_witness.vectors[1],
        );
        assert!((again.margin() - r.worst_margin).abs() <= 1e-12);

        let r = check_scalelaw(&l4, eps, 2000, 10);
        let w = &r.worst_witness;
        let again = eval_scalelaw(&l4, eps, &w.vectors[0], &w.vectors[1], w.scalars[0]);
        assert!((again.margin() - r.worst_margin).abs() <= 1e-12);

        let r = check_induct_ratio(&l4, eps, 1e-8, None, 500, 10).unwrap();
        let w = &r.worst_witness;
        let (xs, xn) = w.vectors.split_at(1);
        let again = eval_induct_ratio(
            &l4,
            eps,
            r.delta_used.unwrap(),
            r.k_used.unwrap(),
            xs,
            &xn[0],
            &w.scalars,
        );
        assert!((again.margin() - r.worst_margin).abs() <= 1e-12);
    }

    #[test]
    fn margins_shrink_with_nested_seeds() {
        let l4 = Space::pnorm(4.0, 2).unwrap();
        let eps = eps_of(4.0);
        let small = check_defect(&l4, eps, 500, 11);
        let large = check_defect(&l4, eps, 5000, 11);
        assert!(large.worst_margin <= small.worst_margin);

        let small = check_linear_combo(&l4, eps, 2, 500, 11).unwrap();
        let large = check_linear_combo(&l4, eps, 2, 5000, 11).unwrap();
        assert!(large.worst_margin <= small.worst_margin);
    }

    #[test]
    fn reports_are_deterministic() {
        let l1 = Space::pnorm(1.0, 2).unwrap();
        let a = check_addlaw(&l1, 1.0, 1000, 12);
        let b = check_addlaw(&l1, 1.0, 1000, 12);
        assert_eq!(a.worst_margin, b.worst_margin);
        assert_eq!(a.violations, b.violations);
        assert_eq!(a.worst_witness.vectors, b.worst_witness.vectors);
    }
}
