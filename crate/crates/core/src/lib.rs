//! Computational geometry of finite-dimensional real normed spaces.
//!
//! The crate measures how far a norm is from satisfying the parallelogram
//! law, builds explicit near-isometries onto Euclidean space out of
//! bracket-orthogonal frames, and certifies the quantitative inequalities
//! behind the construction by seeded randomized testing.
//!
//! - [`space`]: norm specifications ([`NormSpec`], [`Space`]), the bracket
//!   `[a, b] = ||a+b||^2 - ||a-b||^2`, subspaces, and Euclidean direct sums.
//! - [`vnj`]: the parallelogram-defect ratio, von Neumann–Jordan and James
//!   constant estimators, Clarkson's closed form for l_p.
//! - [`ortho`]: bracket-orthogonal unit vectors (bisection in the plane,
//!   multi-start sphere search in general).
//! - [`isometry`]: the near-isometry builders, distortion measurement, and
//!   closed-form distortion bounds.
//! - [`lemmas`]: the explicit bracket inequalities as randomized checks.
//!
//! Every seeded operation is deterministic in its inputs; estimators report
//! lower bounds refined by derivative-free pattern search, which keeps
//! everything applicable to non-smooth gauges.

pub mod error;
pub mod isometry;
pub mod lemmas;
mod linalg;
pub mod ortho;
pub mod sampling;
pub mod search;
pub mod space;
pub mod vnj;

pub use error::{Error, Result};
pub use isometry::{
    bound_2d_value, build_isometry_2d, build_isometry_nd, distortion_estimate, kn_bound,
    lp_identity_distortion, proposition_bound, BoundValues, LinearMapReport, OperatorNorms,
};
pub use lemmas::{
    check_addlaw, check_csi, check_defect, check_doublelaw, check_induct_ratio, check_linear_combo,
    check_scalelaw, BoundCheckReport, LemmaId, Witness,
};
pub use ortho::{orthogonal_2d, orthogonal_nd, OrthoResult};
pub use space::{
    bracket, direct_sum, norm_eval, sphere_sample, subspace_restrict, DirectSum, NormSpec,
    NormSpecDoc, Normed, Space, Subspace,
};
pub use vnj::{
    clarkson_vnj, estimate_james, estimate_vnj, parallelogram_ratio, JamesEstimate, VnjEstimate,
};
