//! The four subcommands. Each returns the rendered output body plus the
//! process exit code; callers handle writing and error mapping.

use crate::config::{p_value_to_f64, CliError, OutputFormat, RunParams, SweepDoc};
use crate::emit::{csv_line, fmt_f64, fmt_opt_f64, to_json};
use neareuclid::lemmas::{BoundCheckReport, LemmaId};
use neareuclid::sampling::derive_seed;
use neareuclid::space::NormSpecDoc;
use neareuclid::{
    build_isometry_2d, build_isometry_nd, clarkson_vnj, distortion_estimate, estimate_james,
    estimate_vnj, kn_bound, proposition_bound, Error, JamesEstimate, LinearMapReport, NormSpec,
    Normed, OrthoResult, Space, VnjEstimate,
};
use serde::Serialize;

pub struct CmdOutput {
    pub body: String,
    pub exit: i32,
}

fn require_space(params: &RunParams) -> Result<&Space, CliError> {
    params
        .space
        .as_ref()
        .ok_or_else(|| CliError::Config("a \"space\" document is required".into()))
}

/// Inflation applied to estimated defects when no analytic value exists; an
/// underestimated defect could flag true inequalities as violations.
const HEURISTIC_INFLATION: f64 = 1.05;

// --- vnj ---------------------------------------------------------------------

#[derive(Serialize)]
struct VnjCommandReport {
    space_id: String,
    space: NormSpecDoc,
    estimate: VnjEstimate,
    /// Closed-form constant when the space is a pure p-norm.
    clarkson: Option<f64>,
    james: JamesEstimate,
}

pub fn cmd_vnj(params: &RunParams) -> Result<CmdOutput, CliError> {
    let space = require_space(params)?;
    let estimate = estimate_vnj(space, params.budget, params.seed);
    let clarkson = match space.spec() {
        NormSpec::PNorm { p } => {
            Some(clarkson_vnj(*p).map_err(|e| CliError::Config(e.to_string()))?)
        }
        _ => None,
    };
    let james = estimate_james(space, params.budget, derive_seed(params.seed, 0xA));
    let body = match params.format {
        OutputFormat::Json => to_json(&VnjCommandReport {
            space_id: space.id().to_string(),
            space: space.to_doc(),
            estimate,
            clarkson,
            james,
        }),
        OutputFormat::Csv => {
            let mut body = csv_line(&[
                "space_id".into(),
                "m_lower".into(),
                "epsilon".into(),
                "samples_used".into(),
                "refinement_steps".into(),
            ]);
            body.push_str(&csv_line(&[
                space.id().to_string(),
                fmt_f64(estimate.m_lower),
                fmt_f64(estimate.epsilon),
                estimate.samples_used.to_string(),
                estimate.refinement_steps.to_string(),
            ]));
            body
        }
    };
    Ok(CmdOutput { body, exit: 0 })
}

// --- build --------------------------------------------------------------------

#[derive(Serialize)]
struct BuildCommandReport {
    space_id: String,
    space: NormSpecDoc,
    report: LinearMapReport,
}

#[derive(Serialize)]
struct BuildFailureReport {
    space_id: String,
    error: String,
    residual: f64,
    tol: f64,
    starts: usize,
    best: OrthoResult,
}

fn build_csv(space_id: &str, report: &LinearMapReport) -> String {
    let bounds = report.bounds.as_ref();
    let mut body = csv_line(&[
        "space_id".into(),
        "n".into(),
        "epsilon".into(),
        "distortion".into(),
        "kn_linear".into(),
        "bound_2d".into(),
    ]);
    body.push_str(&csv_line(&[
        space_id.to_string(),
        report.matrix.len().to_string(),
        fmt_opt_f64(report.epsilon_used),
        fmt_f64(report.distortion),
        bounds.map(|b| fmt_f64(b.kn_linear)).unwrap_or_default(),
        fmt_opt_f64(bounds.and_then(|b| b.bound_2d)),
    ]));
    body
}

pub fn cmd_build(params: &RunParams) -> Result<CmdOutput, CliError> {
    let space = require_space(params)?;
    let n = space.dim();
    match build_isometry_nd(space, params.tol, params.seed) {
        Ok(mut report) => {
            if n >= 2 {
                let epsilon = match params.epsilon {
                    Some(e) => e,
                    None => {
                        estimate_vnj(space, params.budget, derive_seed(params.seed, 0xB)).epsilon
                    }
                };
                report = report
                    .with_bounds(n, epsilon)
                    .map_err(|e| CliError::Config(e.to_string()))?;
            }
            let body = match params.format {
                OutputFormat::Json => to_json(&BuildCommandReport {
                    space_id: space.id().to_string(),
                    space: space.to_doc(),
                    report,
                }),
                OutputFormat::Csv => build_csv(space.id(), &report),
            };
            Ok(CmdOutput { body, exit: 0 })
        }
        // Best-effort report: the search result closest to orthogonal.
        Err(Error::SearchFailure {
            residual,
            tol,
            starts,
            best,
        }) => {
            let body = to_json(&BuildFailureReport {
                space_id: space.id().to_string(),
                error: "orthogonality search failed".into(),
                residual,
                tol,
                starts,
                best: *best,
            });
            Ok(CmdOutput { body, exit: 4 })
        }
        Err(e) => Err(CliError::Config(e.to_string())),
    }
}

// --- verify ---------------------------------------------------------------------

#[derive(Serialize)]
struct VerifyRow {
    space_id: String,
    epsilon_source: &'static str,
    report: BoundCheckReport,
}

/// Defect value to verify against: caller-supplied, else Clarkson's closed
/// form for (weighted) p-norms, else an inflated dense estimate.
fn epsilon_for_verify(space: &Space, params: &RunParams) -> Result<(f64, &'static str), CliError> {
    if let Some(eps) = params.epsilon {
        return Ok((eps, "analytic"));
    }
    match space.spec() {
        NormSpec::PNorm { p } | NormSpec::WeightedPNorm { p, .. } => {
            let eps = clarkson_vnj(*p).map_err(|e| CliError::Config(e.to_string()))? - 1.0;
            Ok((eps, "analytic"))
        }
        _ => {
            let est = estimate_vnj(space, params.budget, derive_seed(params.seed, 0xC));
            Ok((est.epsilon * HEURISTIC_INFLATION, "heuristic"))
        }
    }
}

pub fn cmd_verify(params: &RunParams) -> Result<CmdOutput, CliError> {
    let space = require_space(params)?;
    let n = space.dim();
    let (epsilon, source) = epsilon_for_verify(space, params)?;
    let samples = params.samples;
    let mut rows = Vec::new();
    for (i, lemma) in params.lemmas.iter().enumerate() {
        let seed = derive_seed(params.seed, 0x100 + i as u64);
        let report = match lemma {
            LemmaId::Csi => neareuclid::check_csi(space, samples, seed),
            LemmaId::Defect => neareuclid::check_defect(space, epsilon, samples, seed),
            LemmaId::Doublelaw => neareuclid::check_doublelaw(space, epsilon, samples, seed),
            LemmaId::Addlaw => neareuclid::check_addlaw(space, epsilon, samples, seed),
            LemmaId::Scalelaw => neareuclid::check_scalelaw(space, epsilon, samples, seed),
            LemmaId::LinearCombo => {
                let k = params.combo_k.unwrap_or_else(|| (n - 1).max(1));
                neareuclid::check_linear_combo(space, epsilon, k, samples, seed)
                    .map_err(|e| CliError::Config(e.to_string()))?
            }
            LemmaId::InductRatio => {
                if n < 2 {
                    return Err(CliError::Config(
                        "induct_ratio requires a space of dimension >= 2".into(),
                    ));
                }
                neareuclid::check_induct_ratio(
                    space,
                    epsilon,
                    params.delta,
                    params.k_bound,
                    samples,
                    seed,
                )
                .map_err(|e| match e {
                    Error::SearchFailure { .. } => CliError::Search(e.to_string()),
                    other => CliError::Config(other.to_string()),
                })?
            }
        };
        rows.push(VerifyRow {
            space_id: space.id().to_string(),
            epsilon_source: source,
            report,
        });
    }
    let clean = rows.iter().all(|r| r.report.violations == 0);
    let body = match params.format {
        OutputFormat::Json => to_json(&rows),
        OutputFormat::Csv => {
            let mut body = csv_line(&[
                "lemma_id".into(),
                "space_id".into(),
                "epsilon_used".into(),
                "epsilon_source".into(),
                "samples".into(),
                "violations".into(),
                "worst_margin".into(),
            ]);
            for row in &rows {
                body.push_str(&csv_line(&[
                    row.report.lemma_id.as_str().to_string(),
                    row.space_id.clone(),
                    fmt_f64(row.report.epsilon_used),
                    row.epsilon_source.to_string(),
                    row.report.samples.to_string(),
                    row.report.violations.to_string(),
                    fmt_f64(row.report.worst_margin),
                ]));
            }
            body
        }
    };
    Ok(CmdOutput {
        body,
        exit: if clean { 0 } else { 5 },
    })
}

// --- sweep ----------------------------------------------------------------------

const SWEEP_HEADER: [&str; 7] = [
    "space_id",
    "n",
    "epsilon",
    "distortion",
    "kn_linear",
    "bound_2d",
    "proposition_bound",
];

enum Member {
    P(f64),
    BlendT { t: f64, left_p: f64, right_p: f64 },
}

fn sweep_members(doc: &SweepDoc) -> Result<Vec<Member>, CliError> {
    match doc.family.as_str() {
        "pgrid" => {
            let ps = doc
                .ps
                .as_ref()
                .ok_or_else(|| CliError::Config("pgrid sweep requires \"ps\"".into()))?;
            ps.iter()
                .map(|p| p_value_to_f64(p).map(Member::P))
                .collect()
        }
        "blend" => {
            let ts = doc
                .ts
                .as_ref()
                .ok_or_else(|| CliError::Config("blend sweep requires \"ts\"".into()))?;
            let left_p = doc
                .left_p
                .as_ref()
                .map(p_value_to_f64)
                .transpose()?
                .unwrap_or(2.0);
            let right_p = doc
                .right_p
                .as_ref()
                .map(p_value_to_f64)
                .transpose()?
                .unwrap_or(4.0);
            Ok(ts
                .iter()
                .map(|&t| Member::BlendT { t, left_p, right_p })
                .collect())
        }
        other => Err(CliError::Config(format!(
            "sweep family must be \"pgrid\" or \"blend\", got \"{other}\""
        ))),
    }
}

fn identity_columns(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// One row per (member, dim). For p-norm members the distortion column
/// reports the measured identity map (the object the closed-form column
/// bounds); for blends it reports the constructed map.
pub fn cmd_sweep(params: &RunParams) -> Result<CmdOutput, CliError> {
    let doc = params
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("a \"sweep\" document is required".into()))?;
    let members = sweep_members(doc)?;
    for &dim in &doc.dims {
        if dim < 2 {
            return Err(CliError::Config("sweep dims must be >= 2".into()));
        }
    }
    let mut body = csv_line(&SWEEP_HEADER.map(String::from));
    let mut row_index: u64 = 0;
    for &dim in &doc.dims {
        for member in &members {
            let row_seed = derive_seed(params.seed, 0x5000 + row_index);
            row_index += 1;
            let (space, distortion, prop) = match member {
                Member::P(p) => {
                    let space =
                        Space::pnorm(*p, dim).map_err(|e| CliError::Config(e.to_string()))?;
                    let dist = distortion_estimate(
                        &space,
                        &identity_columns(dim),
                        params.budget,
                        derive_seed(row_seed, 2),
                    )
                    .map_err(|e| CliError::Config(e.to_string()))?
                    .distortion();
                    let prop =
                        proposition_bound(*p, dim).map_err(|e| CliError::Config(e.to_string()))?;
                    (space, dist, Some(prop))
                }
                Member::BlendT { t, left_p, right_p } => {
                    let spec = NormSpec::pnorm(*left_p)
                        .and_then(|l| Ok((l, NormSpec::pnorm(*right_p)?)))
                        .and_then(|(l, r)| NormSpec::blend(l, r, *t))
                        .map_err(|e| CliError::Config(e.to_string()))?;
                    let space =
                        Space::new(dim, spec).map_err(|e| CliError::Config(e.to_string()))?;
                    let report = if dim == 2 {
                        build_isometry_2d(&space, params.tol)
                    } else {
                        build_isometry_nd(&space, params.tol, derive_seed(row_seed, 3))
                    }
                    .map_err(|e| match e {
                        Error::SearchFailure { .. } => CliError::Search(e.to_string()),
                        other => CliError::Config(other.to_string()),
                    })?;
                    (space, report.distortion, None)
                }
            };
            let epsilon = estimate_vnj(&space, params.budget, derive_seed(row_seed, 1)).epsilon;
            let bounds = kn_bound(dim, epsilon).map_err(|e| CliError::Config(e.to_string()))?;
            body.push_str(&csv_line(&[
                space.id().to_string(),
                dim.to_string(),
                fmt_f64(epsilon),
                fmt_f64(distortion),
                fmt_f64(bounds.kn_linear),
                fmt_opt_f64(bounds.bound_2d),
                fmt_opt_f64(prop),
            ]));
        }
    }
    Ok(CmdOutput { body, exit: 0 })
}
