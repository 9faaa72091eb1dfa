//! Command implementations behind the `pst` binary: network resolution,
//! analysis reports, CSV traces and quotient/full-space verification.

mod document;
mod format;

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub use document::NetworkDocument;
pub use format::{round12, sig12};

use crate::error::PstError;
use crate::fidelity::{self, FidelityTrace, TransferAmplitude, DEFAULT_PST_TOLERANCE};
use crate::network::{self, SpinNetwork};
use crate::oracle::{FullSpaceEvolution, Target};
use crate::spectral::{gauss_measure, SpectralMeasure};
use crate::stratification::{reduce, stratify, JacobiSequences};

/// Agreement bound between quotient and full-space amplitudes.
pub const ORACLE_TOLERANCE: f64 = 1e-9;

/// Demo names accepted by `--demo`; `chain:N` and `hypercube:d` take a size.
pub const DEMOS: [&str; 9] = [
    "chain:2",
    "chain:5",
    "hypercube:3",
    "w-network",
    "tree7",
    "tree16",
    "star5",
    "circulant6",
    "hypercube:1",
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] PstError),

    #[error("{source}\noracle: {probe}")]
    NotLayerRegular {
        source: PstError,
        probe: OracleProbe,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 when the network is not layer-regular from its reference, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NotLayerRegular { .. }
            | CliError::Core(PstError::QuotientClosureViolation { .. }) => 2,
            _ => 1,
        }
    }
}

/// Where a network comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum NetworkSource {
    Demo(String),
    File(PathBuf),
}

impl NetworkSource {
    fn label(&self) -> String {
        match self {
            NetworkSource::Demo(name) => name.clone(),
            NetworkSource::File(path) => path.display().to_string(),
        }
    }
}

pub fn resolve_demo(name: &str) -> Result<SpinNetwork<f64>, CliError> {
    let sized = |prefix: &str| -> Result<Option<usize>, CliError> {
        match name.strip_prefix(prefix) {
            Some(n) => n
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("bad size in demo '{name}'"))),
            None => Ok(None),
        }
    };
    if let Some(n) = sized("chain:")? {
        return Ok(network::engineered_chain(n)?);
    }
    if let Some(d) = sized("hypercube:")? {
        return Ok(network::hypercube_column(d)?);
    }
    Ok(match name {
        "w-network" => network::w_network(),
        "tree7" => network::binary_tree_unweighted(),
        "tree16" => network::binary_tree_modulated(),
        "star5" => network::star_extended(),
        "circulant6" => network::circulant6(),
        _ => {
            return Err(CliError::Usage(format!(
                "unknown demo '{name}' (expected chain:N, hypercube:d, w-network, tree7, \
                 tree16, star5, circulant6)"
            )))
        }
    })
}

/// Loads a network and applies `--reference` / `--scale` overrides.
pub fn load_network(
    source: &NetworkSource,
    reference: Option<usize>,
    scale: Option<f64>,
) -> Result<SpinNetwork<f64>, CliError> {
    let mut net = match source {
        NetworkSource::Demo(name) => resolve_demo(name)?,
        NetworkSource::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            NetworkDocument::parse(&text)
                .and_then(|d| d.to_network())
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?
        }
    };
    if let Some(r) = reference {
        net = net.with_reference(r)?;
    }
    if let Some(s) = scale {
        net = net.with_scale(s)?;
    }
    Ok(net)
}

/// What the full-space evolution shows for a network whose reduction failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleProbe {
    pub max_norm_deviation: f64,
    pub best_vertex: usize,
    pub best_time: f64,
    pub best_abs_amplitude: f64,
}

impl std::fmt::Display for OracleProbe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "full-space evolution ran (norm deviation {}); best transfer to an antipodal vertex: \
             |f| = {} at vertex {} t = {}",
            sig12(self.max_norm_deviation),
            sig12(self.best_abs_amplitude),
            self.best_vertex,
            sig12(self.best_time)
        )
    }
}

const PROBE_SAMPLES: usize = 256;

/// Evolves in the full site space over `[0, 2π]` and records the best
/// amplitude reached on the farthest layer.
pub fn oracle_probe(net: &SpinNetwork<f64>) -> Result<OracleProbe, PstError> {
    let evolution = FullSpaceEvolution::new(net)?;
    let strat = stratify(net);
    let far = &strat.layers()[strat.depth()];
    let mut probe = OracleProbe {
        max_norm_deviation: 0.0,
        best_vertex: far[0],
        best_time: 0.0,
        best_abs_amplitude: 0.0,
    };
    for i in 0..=PROBE_SAMPLES {
        let t = TAU * i as f64 / PROBE_SAMPLES as f64;
        let psi = evolution.state(t);
        let norm: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
        probe.max_norm_deviation = probe.max_norm_deviation.max((norm - 1.0).abs());
        for &v in far {
            let a = psi[v - 1].norm();
            if a > probe.best_abs_amplitude {
                probe.best_abs_amplitude = a;
                probe.best_vertex = v;
                probe.best_time = t;
            }
        }
    }
    Ok(probe)
}

fn reduce_or_probe(net: &SpinNetwork<f64>) -> Result<JacobiSequences<f64>, CliError> {
    match reduce(net) {
        Ok(j) => Ok(j),
        Err(source @ PstError::QuotientClosureViolation { .. }) => {
            let probe = oracle_probe(net)?;
            Err(CliError::NotLayerRegular { source, probe })
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkSummary {
    pub source: String,
    pub vertices: usize,
    pub edges: usize,
    pub reference: usize,
    pub scale: f64,
    pub adjacency_mode: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureSummary {
    pub atoms: Vec<f64>,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PstSummary {
    pub time: f64,
    pub deficit: f64,
    pub achieved: bool,
    pub target_layer: usize,
    pub target_is_single_vertex: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub network: NetworkSummary,
    pub strata_sizes: Vec<usize>,
    pub omega: Vec<f64>,
    pub alpha: Vec<f64>,
    pub measure: MeasureSummary,
    pub search_window: Option<f64>,
    pub pst: Option<PstSummary>,
    pub oracle_residual: f64,
}

impl AnalysisReport {
    /// Pretty JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeOptions {
    pub t_max: Option<f64>,
    pub tolerance: f64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            t_max: None,
            tolerance: DEFAULT_PST_TOLERANCE,
        }
    }
}

/// Largest quotient/full-space discrepancy over every layer at the given times.
pub fn oracle_residual(
    net: &SpinNetwork<f64>,
    j: &JacobiSequences<f64>,
    m: &SpectralMeasure<f64>,
    times: &[f64],
) -> Result<(f64, f64), PstError> {
    let evolution = FullSpaceEvolution::new(net)?;
    let amplitudes = (0..=j.depth())
        .map(|k| TransferAmplitude::new(j, m, k))
        .collect::<Result<Vec<_>, _>>()?;
    let mut worst = (0.0, 0.0);
    for &t in times {
        for f in &amplitudes {
            let r = (f.at(t) - evolution.amplitude(t, Target::Layer(f.layer()))?).norm();
            if r > worst.1 {
                worst = (t, r);
            }
        }
    }
    Ok(worst)
}

pub fn cmd_analyze(
    source: &NetworkSource,
    net: &SpinNetwork<f64>,
    opts: &AnalyzeOptions,
) -> Result<AnalysisReport, CliError> {
    let j = reduce_or_probe(net)?;
    let m = gauss_measure(&j)?;
    let window = opts.t_max.or_else(|| fidelity::default_window(&m));
    let pst = match window {
        Some(t_max) if j.depth() > 0 => {
            let c = fidelity::pst_search(&j, &m, t_max, opts.tolerance)?;
            Some(PstSummary {
                time: round12(c.time),
                deficit: round12(c.deficit),
                achieved: c.achieved,
                target_layer: c.target_layer,
                target_is_single_vertex: c.target_is_single_vertex,
            })
        }
        _ => None,
    };

    let span = window.unwrap_or(TAU);
    let mut times: Vec<f64> = (0..=16).map(|i| span * i as f64 / 16.0).collect();
    if let Some(p) = &pst {
        times.push(p.time);
    }
    let (_, residual) = oracle_residual(net, &j, &m, &times)?;

    Ok(AnalysisReport {
        network: NetworkSummary {
            source: source.label(),
            vertices: net.vertex_count(),
            edges: net.edges().len(),
            reference: net.reference(),
            scale: round12(net.scale()),
            adjacency_mode: net.adjacency_mode(),
        },
        strata_sizes: j.layer_sizes().to_vec(),
        omega: format::round_all(j.omega()),
        alpha: format::round_all(j.alpha()),
        measure: MeasureSummary {
            atoms: format::round_all(m.atoms()),
            weights: format::round_all(m.weights()),
        },
        search_window: window.map(round12),
        pst,
        oracle_residual: round12(residual),
    })
}

/// Amplitude onto the antipodal layer over a uniform grid.
pub fn compute_trace(
    net: &SpinNetwork<f64>,
    t_start: f64,
    t_end: Option<f64>,
    samples: usize,
) -> Result<FidelityTrace<f64>, CliError> {
    let j = reduce_or_probe(net)?;
    let m = gauss_measure(&j)?;
    let t_end = t_end
        .or_else(|| fidelity::default_window(&m))
        .unwrap_or(TAU);
    Ok(fidelity::trace(&j, &m, j.depth(), t_start, t_end, samples)?)
}

/// CSV with header `t,re_f,im_f,abs_f`.
pub fn trace_csv(trace: &FidelityTrace<f64>) -> String {
    let mut out = String::from("t,re_f,im_f,abs_f\n");
    for (t, f) in trace.times.iter().zip(&trace.amplitudes) {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            sig12(*t),
            sig12(f.re),
            sig12(f.im),
            sig12(f.norm())
        );
    }
    out
}

pub fn cmd_trace(
    net: &SpinNetwork<f64>,
    t_start: f64,
    t_end: Option<f64>,
    samples: usize,
    out: Option<&Path>,
) -> Result<String, CliError> {
    let csv = trace_csv(&compute_trace(net, t_start, t_end, samples)?);
    if let Some(path) = out {
        std::fs::write(path, &csv).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    }
    Ok(csv)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub source: String,
    pub trials: usize,
    pub seed: u64,
    pub target_layer: usize,
    pub target_layer_size: usize,
    pub max_residual: f64,
    pub worst_time: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Seeded uniform times in `[0, 2π)`.
pub fn seeded_times(trials: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| rng.gen_range(0.0..TAU)).collect()
}

pub fn cmd_verify(
    source: &NetworkSource,
    net: &SpinNetwork<f64>,
    trials: usize,
    seed: u64,
) -> Result<VerifyReport, CliError> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let j = reduce_or_probe(net)?;
    let m = gauss_measure(&j)?;
    let (worst_time, max_residual) = oracle_residual(net, &j, &m, &seeded_times(trials, seed))?;
    Ok(VerifyReport {
        source: source.label(),
        trials,
        seed,
        target_layer: j.depth(),
        target_layer_size: j.layer_sizes()[j.depth()],
        max_residual: round12(max_residual),
        worst_time: round12(worst_time),
        tolerance: ORACLE_TOLERANCE,
        passed: max_residual <= ORACLE_TOLERANCE,
    })
}
