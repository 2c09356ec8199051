//! Run configuration: a JSON document merged with command-line overrides.
//! Unknown fields anywhere in the document are rejected by name.

use neareuclid::lemmas::LemmaId;
use neareuclid::space::{NormSpecDoc, PValue};
use neareuclid::Space;
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// On-disk configuration. Every field is optional; commands validate what
/// they actually need.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigDoc {
    pub space: Option<NormSpecDoc>,
    pub budget: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    /// Lemma names for `verify`, or `"all"`.
    pub lemmas: Option<Vec<String>>,
    /// Defect value override for `verify`; absent means analytic where
    /// available, otherwise an inflated estimate.
    pub epsilon: Option<f64>,
    /// Orthogonality residual assumed by the induction-ratio check.
    pub delta: Option<f64>,
    /// Inverse-norm hypothesis for the induction-ratio check.
    pub k_bound: Option<f64>,
    /// Number of combination terms for the linear-combination check.
    pub combo_k: Option<usize>,
    pub sweep: Option<SweepDoc>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepDoc {
    /// "pgrid" or "blend".
    pub family: String,
    pub ps: Option<Vec<PValue>>,
    pub ts: Option<Vec<f64>>,
    pub left_p: Option<PValue>,
    pub right_p: Option<PValue>,
    pub dims: Vec<usize>,
}

/// Fully merged parameters a command runs with.
#[derive(Debug)]
pub struct RunParams {
    pub space: Option<Space>,
    pub budget: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub lemmas: Vec<LemmaId>,
    pub epsilon: Option<f64>,
    pub delta: f64,
    pub k_bound: Option<f64>,
    pub combo_k: Option<usize>,
    pub sweep: Option<SweepDoc>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

pub const DEFAULT_BUDGET: usize = 10_000;
pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_DELTA: f64 = 1e-8;

#[derive(Debug)]
pub enum CliError {
    /// Bad configuration: exit 2.
    Config(String),
    /// Filesystem failure: exit 3.
    Io(String),
    /// Orthogonality search failure: exit 4.
    Search(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::Search(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config: {m}"),
            CliError::Io(m) => write!(f, "io: {m}"),
            CliError::Search(m) => write!(f, "search: {m}"),
        }
    }
}

fn parse_lemmas(names: &[String]) -> Result<Vec<LemmaId>, CliError> {
    let mut out = Vec::new();
    for name in names {
        if name == "all" {
            for id in LemmaId::ALL {
                if !out.contains(&id) {
                    out.push(id);
                }
            }
            continue;
        }
        let id = LemmaId::parse(name)
            .ok_or_else(|| CliError::Config(format!("unknown lemma name \"{name}\"")))?;
        if !out.contains(&id) {
            out.push(id);
        }
    }
    if out.is_empty() {
        return Err(CliError::Config("lemma list is empty".into()));
    }
    Ok(out)
}

fn parse_format(name: &str) -> Result<OutputFormat, CliError> {
    match name {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        other => Err(CliError::Config(format!(
            "format must be \"json\" or \"csv\", got \"{other}\""
        ))),
    }
}

/// Flag values that override the configuration file.
#[derive(Debug, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
    pub threads: Option<usize>,
}

pub fn merge(doc: RunConfigDoc, flags: Overrides) -> Result<RunParams, CliError> {
    let space = match &doc.space {
        Some(sdoc) => {
            Some(Space::from_doc(sdoc).map_err(|e| CliError::Config(format!("space: {e}")))?)
        }
        None => None,
    };
    let lemmas = match &doc.lemmas {
        Some(names) => parse_lemmas(names)?,
        None => LemmaId::ALL.to_vec(),
    };
    let format = match flags.format {
        Some(f) => f,
        None => match &doc.format {
            Some(name) => parse_format(name)?,
            None => OutputFormat::Json,
        },
    };
    let budget = flags.budget.or(doc.budget).unwrap_or(DEFAULT_BUDGET);
    let samples = flags.samples.or(doc.samples).unwrap_or(DEFAULT_SAMPLES);
    if budget == 0 || samples == 0 {
        return Err(CliError::Config("budget and samples must be >= 1".into()));
    }
    let tol = flags.tol.or(doc.tol).unwrap_or(DEFAULT_TOL);
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Config("tol must be positive".into()));
    }
    let threads = flags.threads.or(doc.threads).unwrap_or(1);
    if threads == 0 {
        return Err(CliError::Config("threads must be >= 1".into()));
    }
    if let Some(eps) = doc.epsilon {
        if eps.is_nan() || eps < 0.0 {
            return Err(CliError::Config("epsilon must be non-negative".into()));
        }
    }
    let delta = doc.delta.unwrap_or(DEFAULT_DELTA);
    if delta < 0.0 {
        return Err(CliError::Config("delta must be non-negative".into()));
    }
    Ok(RunParams {
        space,
        budget,
        samples,
        seed: flags.seed.or(doc.seed).unwrap_or(0),
        tol,
        lemmas,
        epsilon: doc.epsilon,
        delta,
        k_bound: doc.k_bound,
        combo_k: doc.combo_k,
        sweep: doc.sweep,
        out: flags.out.or(doc.out),
        format,
    })
}

pub fn load_doc(path: &std::path::Path) -> Result<RunConfigDoc, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(e.to_string()))
}

pub fn p_value_to_f64(p: &PValue) -> Result<f64, CliError> {
    match p {
        PValue::Num(v) => Ok(*v),
        PValue::Word(w) if w == "inf" => Ok(f64::INFINITY),
        PValue::Word(w) => Err(CliError::Config(format!(
            "p must be a number or \"inf\", got \"{w}\""
        ))),
    }
}
