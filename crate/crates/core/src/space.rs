//! Norm representations, vector arithmetic, the bracket operator, subspaces,
//! and Euclidean-style direct sums.
//!
//! A [`Space`] is a dimension plus a [`NormSpec`] describing how to evaluate
//! the norm. Everything downstream (defect estimation, orthogonality search,
//! isometry construction, inequality checks) consumes spaces only through the
//! [`Normed`] trait, so [`Subspace`] and [`DirectSum`] views plug in
//! transparently.
//!
//! The bracket `[a, b] = ||a + b||^2 - ||a - b||^2` equals four times the
//! inner product whenever the norm comes from one; in a general norm it is
//! only approximately bilinear, and quantifying that failure is what the rest
//! of the crate does.

use crate::error::{Error, Result};
use crate::linalg;
use crate::sampling;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Relative tolerance for identities that are exact up to rounding.
pub const REL_TOL_EXACT: f64 = 1e-12;
/// Relative tolerance for identities that pass through squared norms.
pub const REL_TOL_SQ: f64 = 1e-10;
/// Absolute floor under every relative comparison; norm values span orders
/// of magnitude under homogeneity tests, so comparisons are relative with
/// this floor.
pub const ABS_FLOOR: f64 = 1e-14;
/// Rank-test threshold on singular values, relative to the largest.
pub const RANK_TOL: f64 = 1e-10;

const AXIOM_SAMPLES: usize = 1000;
const AXIOM_SEED: u64 = 0x6e6f_726d;

/// Declarative description of a norm on R^n.
///
/// Infinite `p` is the distinguished value `f64::INFINITY`, evaluated as the
/// max of absolute coordinates rather than through `powf`.
#[derive(Debug, Clone, PartialEq)]
pub enum NormSpec {
    /// `(sum |x_i|^p)^(1/p)`; exact (non-iterative) for p in {1, 2, inf}.
    PNorm { p: f64 },
    /// `(sum w_i |x_i|^p)^(1/p)` with strictly positive weights.
    WeightedPNorm { p: f64, weights: Vec<f64> },
    /// `max_i |<f_i, x>|`; the functionals must span R^n or this is only a
    /// seminorm, which the constructor rejects by rank test.
    PolytopeGauge { functionals: Vec<Vec<f64>> },
    /// `(1 - t) * N1(x) + t * N2(x)` for `t` in [0, 1].
    Blend {
        left: Box<NormSpec>,
        right: Box<NormSpec>,
        t: f64,
    },
}

fn check_p(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::invalid(format!("p must be >= 1 or inf, got {p}")));
    }
    Ok(())
}

impl NormSpec {
    pub fn pnorm(p: f64) -> Result<Self> {
        check_p(p)?;
        Ok(NormSpec::PNorm { p })
    }

    pub fn weighted_pnorm(p: f64, weights: Vec<f64>) -> Result<Self> {
        check_p(p)?;
        if weights.is_empty() {
            return Err(Error::invalid("weights must be non-empty"));
        }
        if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::invalid("weights must be strictly positive"));
        }
        Ok(NormSpec::WeightedPNorm { p, weights })
    }

    pub fn polytope(functionals: Vec<Vec<f64>>) -> Result<Self> {
        if functionals.is_empty() {
            return Err(Error::invalid(
                "polytope gauge needs at least one functional",
            ));
        }
        let n = functionals[0].len();
        if n == 0 || functionals.iter().any(|f| f.len() != n) {
            return Err(Error::invalid("functionals must share a positive length"));
        }
        if functionals.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::invalid("functionals must be finite"));
        }
        // The gauge is a norm only if the functionals span R^n.
        if linalg::min_singular_ratio(&transpose(&functionals)) <= RANK_TOL {
            return Err(Error::construction(
                "polytope functionals do not span the space (gauge would be a seminorm)",
            ));
        }
        Ok(NormSpec::PolytopeGauge { functionals })
    }

    pub fn blend(left: NormSpec, right: NormSpec, t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::invalid(format!(
                "blend t must be in [0, 1], got {t}"
            )));
        }
        Ok(NormSpec::Blend {
            left: Box::new(left),
            right: Box::new(right),
            t,
        })
    }

    fn eval(&self, x: &[f64]) -> f64 {
        match self {
            NormSpec::PNorm { p } => pnorm_eval(*p, x, None),
            NormSpec::WeightedPNorm { p, weights } => pnorm_eval(*p, x, Some(weights)),
            NormSpec::PolytopeGauge { functionals } => functionals
                .iter()
                .map(|f| linalg::dot(f, x).abs())
                .fold(0.0, f64::max),
            NormSpec::Blend { left, right, t } => (1.0 - t) * left.eval(x) + t * right.eval(x),
        }
    }

    /// Validate that the spec is usable on R^dim.
    fn check_dim(&self, dim: usize) -> Result<()> {
        match self {
            NormSpec::PNorm { .. } => Ok(()),
            NormSpec::WeightedPNorm { weights, .. } => {
                if weights.len() != dim {
                    Err(Error::DimensionMismatch {
                        expected: dim,
                        got: weights.len(),
                    })
                } else {
                    Ok(())
                }
            }
            NormSpec::PolytopeGauge { functionals } => {
                if functionals[0].len() != dim {
                    Err(Error::DimensionMismatch {
                        expected: dim,
                        got: functionals[0].len(),
                    })
                } else {
                    Ok(())
                }
            }
            NormSpec::Blend { left, right, .. } => {
                left.check_dim(dim)?;
                right.check_dim(dim)
            }
        }
    }

    fn id_fragment(&self) -> String {
        match self {
            NormSpec::PNorm { p } => {
                if p.is_infinite() {
                    "linf".to_string()
                } else {
                    format!("l{p}")
                }
            }
            NormSpec::WeightedPNorm { p, .. } => {
                if p.is_infinite() {
                    "wlinf".to_string()
                } else {
                    format!("wl{p}")
                }
            }
            NormSpec::PolytopeGauge { functionals } => format!("gauge{}", functionals.len()),
            NormSpec::Blend { left, right, t } => {
                format!("blend{t}({}|{})", left.id_fragment(), right.id_fragment())
            }
        }
    }
}

fn transpose(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = rows[0].len();
    (0..n)
        .map(|j| rows.iter().map(|r| r[j]).collect())
        .collect()
}

fn pnorm_eval(p: f64, x: &[f64], weights: Option<&[f64]>) -> f64 {
    let w = |i: usize| weights.map_or(1.0, |w| w[i]);
    if p.is_infinite() {
        return x
            .iter()
            .enumerate()
            .map(|(i, v)| w(i) * v.abs())
            .fold(0.0, f64::max);
    }
    if p == 1.0 {
        return x.iter().enumerate().map(|(i, v)| w(i) * v.abs()).sum();
    }
    if p == 2.0 {
        return x
            .iter()
            .enumerate()
            .map(|(i, v)| w(i) * v * v)
            .sum::<f64>()
            .sqrt();
    }
    // Scale by the largest coordinate so |x_i|^p cannot overflow.
    let m = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if m == 0.0 {
        return 0.0;
    }
    let s: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| w(i) * (v.abs() / m).powf(p))
        .sum();
    m * s.powf(1.0 / p)
}

/// Anything that can evaluate a norm on its coordinate space.
pub trait Normed {
    fn dim(&self) -> usize;

    /// Norm of `x`. Contract: `x.len() == self.dim()`; use [`norm_eval`] for
    /// a checked entry point.
    fn norm(&self, x: &[f64]) -> f64;

    fn norm_sq(&self, x: &[f64]) -> f64 {
        let v = self.norm(x);
        v * v
    }
}

/// A finite-dimensional real normed space: dimension plus norm.
#[derive(Debug, Clone)]
pub struct Space {
    dim: usize,
    spec: NormSpec,
    id: String,
}

impl Space {
    /// Build a space, validating the spec against `dim` and spot-checking the
    /// norm axioms on seeded random samples. The gauges here are norms by
    /// construction; the sampling only guards against malformed inputs.
    pub fn new(dim: usize, spec: NormSpec) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be >= 1"));
        }
        spec.check_dim(dim)?;
        let id = format!("{}^{}", spec.id_fragment(), dim);
        let space = Space { dim, spec, id };
        space.spot_check_axioms()?;
        Ok(space)
    }

    pub fn pnorm(p: f64, dim: usize) -> Result<Self> {
        Space::new(dim, NormSpec::pnorm(p)?)
    }

    pub fn euclidean(dim: usize) -> Self {
        Space::pnorm(2.0, dim).expect("euclidean space is always valid")
    }

    pub fn spec(&self) -> &NormSpec {
        &self.spec
    }

    /// Stable comma-free label, e.g. `l1.5^2` or `blend0.05(l2|l4)^3`.
    pub fn id(&self) -> &str {
        &self.id
    }

    fn spot_check_axioms(&self) -> Result<()> {
        let zero = vec![0.0; self.dim];
        if self.spec.eval(&zero) != 0.0 {
            return Err(Error::construction("norm of the zero vector is not zero"));
        }
        let mut rng = sampling::rng(AXIOM_SEED);
        for _ in 0..AXIOM_SAMPLES {
            let x = sampling::box_vec(&mut rng, self.dim, 5.0);
            let y = sampling::box_vec(&mut rng, self.dim, 5.0);
            let lambda: f64 = rng.gen_range(-10.0..=10.0);
            let nx = self.spec.eval(&x);
            let ny = self.spec.eval(&y);
            if !nx.is_finite() || !ny.is_finite() {
                return Err(Error::construction("norm evaluated to a non-finite value"));
            }
            if nx <= 0.0 {
                return Err(Error::construction(
                    "norm vanished on a nonzero sample (not positive definite)",
                ));
            }
            let scaled = self.spec.eval(&linalg::scale(&x, lambda));
            let expect = lambda.abs() * nx;
            let tol = REL_TOL_EXACT * expect.max(scaled) + ABS_FLOOR;
            if (scaled - expect).abs() > tol {
                return Err(Error::construction(format!(
                    "norm is not absolutely homogeneous: |{scaled} - {expect}| > {tol}"
                )));
            }
            let nsum = self.spec.eval(&linalg::add(&x, &y));
            if nsum > nx + ny + REL_TOL_EXACT * (nx + ny) + ABS_FLOOR {
                return Err(Error::construction(
                    "norm violates the triangle inequality on a sample",
                ));
            }
        }
        Ok(())
    }
}

impl Normed for Space {
    fn dim(&self) -> usize {
        self.dim
    }

    fn norm(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        self.spec.eval(x)
    }
}

impl<N: Normed + ?Sized> Normed for &N {
    fn dim(&self) -> usize {
        (*self).dim()
    }

    fn norm(&self, x: &[f64]) -> f64 {
        (*self).norm(x)
    }
}

/// A basis inside a parent space, carrying the restricted norm: coordinates
/// `a` are measured as `parent_norm(basis * a)`.
#[derive(Debug, Clone)]
pub struct Subspace {
    parent: Space,
    /// Columns of the basis matrix, each of length `parent.dim()`.
    basis: Vec<Vec<f64>>,
}

impl Subspace {
    pub fn parent(&self) -> &Space {
        &self.parent
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    /// Embed subspace coordinates into the parent space.
    pub fn embed(&self, coords: &[f64]) -> Vec<f64> {
        linalg::mat_vec(&self.basis, coords)
    }
}

impl Normed for Subspace {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn norm(&self, coords: &[f64]) -> f64 {
        debug_assert_eq!(coords.len(), self.basis.len());
        self.parent.norm(&self.embed(coords))
    }
}

/// `left ⊕ R` with the norm `||(y, t)|| = sqrt(||y||^2 + t^2)`.
#[derive(Debug, Clone)]
pub struct DirectSum<L: Normed> {
    left: L,
}

impl<L: Normed> DirectSum<L> {
    pub fn left(&self) -> &L {
        &self.left
    }
}

impl<L: Normed> Normed for DirectSum<L> {
    fn dim(&self) -> usize {
        self.left.dim() + 1
    }

    fn norm(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.left.dim() + 1);
        let k = self.left.dim();
        self.left.norm(&x[..k]).hypot(x[k])
    }
}

fn check_len<N: Normed + ?Sized>(space: &N, x: &[f64]) -> Result<()> {
    if x.len() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            got: x.len(),
        });
    }
    Ok(())
}

/// Checked norm evaluation.
pub fn norm_eval<N: Normed + ?Sized>(space: &N, x: &[f64]) -> Result<f64> {
    check_len(space, x)?;
    Ok(space.norm(x))
}

/// The bracket `[a, b] = ||a + b||^2 - ||a - b||^2`.
///
/// Symmetric in its arguments, homogeneous of degree 2 under joint scaling,
/// and sign-flipping under negation of one argument.
pub fn bracket<N: Normed + ?Sized>(space: &N, a: &[f64], b: &[f64]) -> Result<f64> {
    check_len(space, a)?;
    check_len(space, b)?;
    Ok(bracket_raw(space, a, b))
}

pub(crate) fn bracket_raw<N: Normed + ?Sized>(space: &N, a: &[f64], b: &[f64]) -> f64 {
    space.norm_sq(&linalg::add(a, b)) - space.norm_sq(&linalg::sub(a, b))
}

/// `count` unit vectors of the space, obtained by normalizing
/// Euclidean-uniform directions. Deterministic given `seed`.
pub fn sphere_sample<N: Normed + ?Sized>(space: &N, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = sampling::rng(seed);
    (0..count)
        .map(|_| sampling::space_unit(space, &mut rng))
        .collect()
}

/// Restrict `parent` to the span of `basis_columns` (full column rank
/// required).
pub fn subspace_restrict(parent: &Space, basis_columns: &[Vec<f64>]) -> Result<Subspace> {
    if basis_columns.is_empty() {
        return Err(Error::invalid("basis must have at least one column"));
    }
    for col in basis_columns {
        check_len(parent, col)?;
    }
    if linalg::min_singular_ratio(basis_columns) <= RANK_TOL {
        return Err(Error::construction(
            "basis is rank-deficient (columns are not linearly independent)",
        ));
    }
    Ok(Subspace {
        parent: parent.clone(),
        basis: basis_columns.to_vec(),
    })
}

/// Adjoin a Euclidean direction: `||(y, t)|| = sqrt(||y||^2 + t^2)`.
pub fn direct_sum<L: Normed>(left: L) -> DirectSum<L> {
    DirectSum { left }
}

// --- JSON representation ----------------------------------------------------

/// JSON document for a norm spec; `dim` is required at the root and optional
/// (but consistency-checked) on nested blend entries. Unknown fields are
/// rejected by name.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormSpecDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<PValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functionals: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blend: Option<Box<BlendDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlendDoc {
    pub left: NormSpecDoc,
    pub right: NormSpecDoc,
    pub t: f64,
}

/// `p` as either a JSON number or the string `"inf"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PValue {
    Num(f64),
    Word(String),
}

impl PValue {
    fn to_f64(&self) -> Result<f64> {
        match self {
            PValue::Num(v) => Ok(*v),
            PValue::Word(w) if w == "inf" => Ok(f64::INFINITY),
            PValue::Word(w) => Err(Error::Parse(format!(
                "p must be a number or \"inf\", got \"{w}\""
            ))),
        }
    }

    fn from_f64(p: f64) -> Self {
        if p.is_infinite() {
            PValue::Word("inf".to_string())
        } else {
            PValue::Num(p)
        }
    }
}

fn spec_from_doc(doc: &NormSpecDoc, dim: usize) -> Result<NormSpec> {
    if let Some(d) = doc.dim {
        if d != dim {
            return Err(Error::Parse(format!(
                "nested dim {d} conflicts with outer dim {dim}"
            )));
        }
    }
    let forbid = |field: Option<bool>, name: &str| -> Result<()> {
        if field == Some(true) {
            return Err(Error::Parse(format!(
                "field \"{name}\" is not allowed for kind \"{}\"",
                doc.kind
            )));
        }
        Ok(())
    };
    let has_p = doc.p.is_some();
    let has_w = doc.weights.is_some();
    let has_f = doc.functionals.is_some();
    let has_b = doc.blend.is_some();
    match doc.kind.as_str() {
        "pnorm" => {
            forbid(Some(has_w), "weights")?;
            forbid(Some(has_f), "functionals")?;
            forbid(Some(has_b), "blend")?;
            let p = doc
                .p
                .as_ref()
                .ok_or_else(|| Error::Parse("pnorm requires \"p\"".into()))?
                .to_f64()?;
            NormSpec::pnorm(p)
        }
        "weighted_pnorm" => {
            forbid(Some(has_f), "functionals")?;
            forbid(Some(has_b), "blend")?;
            let p = doc
                .p
                .as_ref()
                .ok_or_else(|| Error::Parse("weighted_pnorm requires \"p\"".into()))?
                .to_f64()?;
            let weights = doc
                .weights
                .clone()
                .ok_or_else(|| Error::Parse("weighted_pnorm requires \"weights\"".into()))?;
            NormSpec::weighted_pnorm(p, weights)
        }
        "polytope" => {
            forbid(Some(has_p), "p")?;
            forbid(Some(has_w), "weights")?;
            forbid(Some(has_b), "blend")?;
            let functionals = doc
                .functionals
                .clone()
                .ok_or_else(|| Error::Parse("polytope requires \"functionals\"".into()))?;
            NormSpec::polytope(functionals)
        }
        "blend" => {
            forbid(Some(has_p), "p")?;
            forbid(Some(has_w), "weights")?;
            forbid(Some(has_f), "functionals")?;
            let body = doc
                .blend
                .as_ref()
                .ok_or_else(|| Error::Parse("blend requires \"blend\"".into()))?;
            let left = spec_from_doc(&body.left, dim)?;
            let right = spec_from_doc(&body.right, dim)?;
            NormSpec::blend(left, right, body.t)
        }
        other => Err(Error::Parse(format!("unknown norm kind \"{other}\""))),
    }
}

fn spec_to_doc(spec: &NormSpec, dim: Option<usize>) -> NormSpecDoc {
    let mut doc = NormSpecDoc {
        kind: String::new(),
        p: None,
        weights: None,
        functionals: None,
        blend: None,
        dim,
    };
    match spec {
        NormSpec::PNorm { p } => {
            doc.kind = "pnorm".into();
            doc.p = Some(PValue::from_f64(*p));
        }
        NormSpec::WeightedPNorm { p, weights } => {
            doc.kind = "weighted_pnorm".into();
            doc.p = Some(PValue::from_f64(*p));
            doc.weights = Some(weights.clone());
        }
        NormSpec::PolytopeGauge { functionals } => {
            doc.kind = "polytope".into();
            doc.functionals = Some(functionals.clone());
        }
        NormSpec::Blend { left, right, t } => {
            doc.kind = "blend".into();
            doc.blend = Some(Box::new(BlendDoc {
                left: spec_to_doc(left, None),
                right: spec_to_doc(right, None),
                t: *t,
            }));
        }
    }
    doc
}

impl Space {
    pub fn from_doc(doc: &NormSpecDoc) -> Result<Self> {
        let dim = doc
            .dim
            .ok_or_else(|| Error::Parse("space document requires \"dim\"".into()))?;
        if dim == 0 {
            return Err(Error::Parse("\"dim\" must be >= 1".into()));
        }
        Space::new(dim, spec_from_doc(doc, dim)?)
    }

    pub fn to_doc(&self) -> NormSpecDoc {
        spec_to_doc(&self.spec, Some(self.dim))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: NormSpecDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Space::from_doc(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("norm spec serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pnorm_special_cases_are_exact() {
        let l1 = Space::pnorm(1.0, 2).unwrap();
        assert_eq!(norm_eval(&l1, &[3.0, -4.0]).unwrap(), 7.0);
        let l2 = Space::pnorm(2.0, 2).unwrap();
        assert_eq!(norm_eval(&l2, &[3.0, 4.0]).unwrap(), 5.0);
        let linf = Space::pnorm(f64::INFINITY, 3).unwrap();
        assert_eq!(norm_eval(&linf, &[1.0, -9.0, 4.0]).unwrap(), 9.0);
    }

    #[test]
    fn polytope_gauge_evaluates_max_functional() {
        // max(|x1|, |x2|, |x1 + x2|) at (1, 1) is 2 by direct evaluation.
        let spec =
            NormSpec::polytope(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let space = Space::new(2, spec).unwrap();
        assert_eq!(norm_eval(&space, &[1.0, 1.0]).unwrap(), 2.0);
    }

    #[test]
    fn norm_eval_rejects_dimension_mismatch() {
        let l2 = Space::pnorm(2.0, 2).unwrap();
        assert!(matches!(
            norm_eval(&l2, &[1.0, 2.0, 3.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bracket_examples() {
        let l2 = Space::pnorm(2.0, 2).unwrap();
        assert_eq!(bracket(&l2, &[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);

        // [x, x] = ||2x||^2 for any space.
        let l1 = Space::pnorm(1.0, 2).unwrap();
        let x = [0.7, -1.3];
        let nx = norm_eval(&l1, &x).unwrap();
        assert_relative_eq!(
            bracket(&l1, &x, &x).unwrap(),
            4.0 * nx * nx,
            max_relative = 1e-14
        );

        // ||(2,1)||_1^2 - ||(0,-1)||_1^2 = 9 - 1 = 8.
        assert_eq!(bracket(&l1, &[1.0, 0.0], &[1.0, 1.0]).unwrap(), 8.0);
    }

    #[test]
    fn sphere_sample_is_unit_and_deterministic() {
        for space in [Space::pnorm(2.0, 3).unwrap(), Space::pnorm(1.0, 2).unwrap()] {
            let pts = sphere_sample(&space, 10, 1);
            assert_eq!(pts.len(), 10);
            for p in &pts {
                assert_relative_eq!(norm_eval(&space, p).unwrap(), 1.0, max_relative = 1e-12);
            }
            assert_eq!(pts, sphere_sample(&space, 10, 1));
        }
    }

    #[test]
    fn subspace_restricts_parent_norm() {
        let l2 = Space::pnorm(2.0, 3).unwrap();
        let e1 = vec![1.0, 0.0, 0.0];
        let e2 = vec![0.0, 1.0, 0.0];
        let sub = subspace_restrict(&l2, &[e1.clone(), e2.clone()]).unwrap();
        assert_eq!(sub.dim(), 2);
        assert_relative_eq!(sub.norm(&[3.0, 4.0]), 5.0, max_relative = 1e-14);

        let l1 = Space::pnorm(1.0, 3).unwrap();
        let sub1 = subspace_restrict(&l1, &[e1.clone(), e2]).unwrap();
        assert_eq!(sub1.norm(&[1.0, 1.0]), 2.0);

        assert!(matches!(
            subspace_restrict(&l1, &[e1.clone(), e1]),
            Err(Error::Construction(_))
        ));
    }

    #[test]
    fn direct_sum_is_euclidean_in_the_tail() {
        let l1 = Space::pnorm(1.0, 1).unwrap();
        let sum = direct_sum(&l1);
        assert_eq!(sum.norm(&[3.0, 4.0]), 5.0);
        assert_eq!(sum.norm(&[0.0, -2.0]), 2.0);

        let l2 = Space::pnorm(2.0, 2).unwrap();
        let sum2 = direct_sum(&l2);
        assert_relative_eq!(
            sum2.norm(&[1.0, 0.0, 1.0]),
            2.0_f64.sqrt(),
            max_relative = 1e-14
        );
        // Restriction to t = 0 recovers the left norm.
        assert_eq!(sum2.norm(&[0.3, -0.4, 0.0]), l2.norm(&[0.3, -0.4]));
    }

    #[test]
    fn constructors_reject_malformed_specs() {
        assert!(NormSpec::pnorm(0.5).is_err());
        assert!(NormSpec::weighted_pnorm(2.0, vec![1.0, -1.0]).is_err());
        assert!(NormSpec::weighted_pnorm(2.0, vec![1.0, 0.0]).is_err());
        // Functionals supported on one coordinate only span a line in R^2.
        assert!(NormSpec::polytope(vec![vec![1.0, 0.0], vec![2.0, 0.0]]).is_err());
        assert!(NormSpec::blend(
            NormSpec::pnorm(1.0).unwrap(),
            NormSpec::pnorm(2.0).unwrap(),
            1.5
        )
        .is_err());
        // Weight length must match the dimension.
        let spec = NormSpec::weighted_pnorm(2.0, vec![1.0, 2.0]).unwrap();
        assert!(Space::new(3, spec).is_err());
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let hexagon = NormSpec::polytope(vec![
            vec![1.0, 0.0],
            vec![0.5, 0.75_f64.sqrt()],
            vec![-0.5, 0.75_f64.sqrt()],
        ])
        .unwrap();
        let blend = NormSpec::blend(
            NormSpec::pnorm(2.0).unwrap(),
            NormSpec::pnorm(4.0).unwrap(),
            0.05,
        )
        .unwrap();
        let spaces = [
            Space::pnorm(1.5, 2).unwrap(),
            Space::pnorm(f64::INFINITY, 3).unwrap(),
            Space::new(
                3,
                NormSpec::weighted_pnorm(3.0, vec![0.1, 2.0, 7.5]).unwrap(),
            )
            .unwrap(),
            Space::new(2, hexagon).unwrap(),
            Space::new(3, blend).unwrap(),
        ];
        for space in &spaces {
            let text = space.to_json();
            let back = Space::from_json(&text).unwrap();
            assert_eq!(back.dim(), space.dim());
            assert_eq!(back.spec(), space.spec());
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn json_rejects_unknown_fields_and_bad_kinds() {
        let err = Space::from_json(r#"{"kind":"pnorm","p":2,"dim":2,"bogus":1}"#).unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
        assert!(Space::from_json(r#"{"kind":"mystery","dim":2}"#).is_err());
        assert!(Space::from_json(r#"{"kind":"pnorm","p":2}"#).is_err());
        assert!(Space::from_json(r#"{"kind":"pnorm","p":"huge","dim":2}"#).is_err());
        assert!(Space::from_json(r#"{"kind":"pnorm","p":2,"weights":[1],"dim":1}"#).is_err());
    }

    #[test]
    fn inf_round_trips_as_word() {
        let linf = Space::pnorm(f64::INFINITY, 2).unwrap();
        let text = linf.to_json();
        assert!(text.contains("\"inf\""), "{text}");
        let back = Space::from_json(&text).unwrap();
        assert_eq!(back.spec(), linf.spec());
    }

    #[test]
    fn space_ids_are_stable() {
        assert_eq!(Space::pnorm(1.5, 2).unwrap().id(), "l1.5^2");
        assert_eq!(Space::pnorm(f64::INFINITY, 3).unwrap().id(), "linf^3");
        let blend = NormSpec::blend(
            NormSpec::pnorm(2.0).unwrap(),
            NormSpec::pnorm(4.0).unwrap(),
            0.1,
        )
        .unwrap();
        assert_eq!(Space::new(3, blend).unwrap().id(), "blend0.1(l2|l4)^3");
    }
}
