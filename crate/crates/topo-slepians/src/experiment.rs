//! Experiment pipelines: the sparsity sweep (representation cost vs error
//! tolerance) and the denoising sweep (NMSE vs SNR over seeded Monte-Carlo
//! trials), with deterministic CSV / metadata / gnuplot artifacts.

use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::dictionary::{
    build_dictionary, concentration_sets, frame_certificate, FrameCertificate,
};
use crate::error::{Error, Result};
use crate::io;
use crate::sparse::{nmse, omp_error, omp_sparsity};
use crate::spectral::{hodge_spectrum, EdgeSignal, HodgeSpectrum};
use crate::synth::{
    field_flow, gaussian_vector, hex_complex, sigma_for, Extent, FieldSpec, HexGeometry, Quadrature,
};

/// Per-set atom cap for a dictionary method: a number or the full family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "KTildeRepr", into = "KTildeRepr")]
pub enum KTilde {
    Capped(usize),
    Full,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum KTildeRepr {
    Number(usize),
    Word(String),
}

impl TryFrom<KTildeRepr> for KTilde {
    type Error = String;

    fn try_from(repr: KTildeRepr) -> std::result::Result<Self, String> {
        match repr {
            KTildeRepr::Number(0) => Err("k_tilde must be positive".to_string()),
            KTildeRepr::Number(n) => Ok(KTilde::Capped(n)),
            KTildeRepr::Word(w) if w == "full" => Ok(KTilde::Full),
            KTildeRepr::Word(w) => Err(format!(
                "expected a positive integer or \"full\", got {w:?}"
            )),
        }
    }
}

impl From<KTilde> for KTildeRepr {
    fn from(k: KTilde) -> Self {
        match k {
            KTilde::Capped(n) => KTildeRepr::Number(n),
            KTilde::Full => KTildeRepr::Word("full".to_string()),
        }
    }
}

impl KTilde {
    pub fn cap(self) -> Option<usize> {
        match self {
            KTilde::Capped(n) => Some(n),
            KTilde::Full => None,
        }
    }

    pub fn label(self) -> String {
        match self {
            KTilde::Capped(n) => format!("slepian-k{n}"),
            KTilde::Full => "slepian-full".to_string(),
        }
    }
}

/// Where the complex comes from.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case", deny_unknown_fields)]
pub enum ComplexSource {
    Synth {
        #[serde(default = "default_grid_side")]
        rows: usize,
        #[serde(default = "default_grid_side")]
        cols: usize,
        #[serde(default)]
        extent: Extent,
    },
    File {
        path: PathBuf,
    },
}

fn default_grid_side() -> usize {
    15
}

impl Default for ComplexSource {
    fn default() -> Self {
        ComplexSource::Synth {
            rows: 15,
            cols: 15,
            extent: Extent::default(),
        }
    }
}

/// Where the clean signal comes from.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case", deny_unknown_fields)]
pub enum SignalSource {
    Field {
        #[serde(default)]
        spec: FieldSpec,
        #[serde(default)]
        quadrature: Quadrature,
    },
    File {
        path: PathBuf,
    },
}

impl Default for SignalSource {
    fn default() -> Self {
        SignalSource::Field {
            spec: FieldSpec::default(),
            quadrature: Quadrature::default(),
        }
    }
}

/// Full experiment description. Every field has a default, so `{}` is a
/// valid config.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub complex: ComplexSource,
    pub signal: SignalSource,
    /// Dictionary methods to run, one per cap.
    pub k_tilde: Vec<KTilde>,
    /// Neighborhood radius for the concentration sets.
    pub hops: usize,
    /// Squared-error tolerances for the sparsity sweep.
    pub epsilon_grid: Vec<f64>,
    /// SNR grid in dB for the denoising sweep.
    pub snr_db_grid: Vec<f64>,
    /// Sparsity budgets for the denoising sweep.
    pub sparsity_levels: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            complex: ComplexSource::default(),
            signal: SignalSource::default(),
            k_tilde: vec![KTilde::Capped(4), KTilde::Capped(8), KTilde::Full],
            hops: 1,
            epsilon_grid: (0..7).map(|k| 10f64.powf(-4.0 + 0.5 * k as f64)).collect(),
            snr_db_grid: (0..9).map(|k| -5.0 + 2.5 * k as f64).collect(),
            sparsity_levels: vec![5, 10, 20],
            trials: 100,
            seed: 42,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let non_empty = |name: &'static str, ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(Error::EmptySet { what: name })
            }
        };
        non_empty("k_tilde list", !self.k_tilde.is_empty())?;
        non_empty("epsilon grid", !self.epsilon_grid.is_empty())?;
        non_empty("snr grid", !self.snr_db_grid.is_empty())?;
        non_empty("sparsity levels", !self.sparsity_levels.is_empty())?;
        non_empty("trials", self.trials >= 1)?;
        if let Some(&eps) = self
            .epsilon_grid
            .iter()
            .find(|&&e| !(e > 0.0) || !e.is_finite())
        {
            return Err(Error::Format(format!(
                "epsilon must be positive, got {eps}"
            )));
        }
        if let Some(&snr) = self.snr_db_grid.iter().find(|&&s| !s.is_finite()) {
            return Err(Error::Format(format!("snr_db must be finite, got {snr}")));
        }
        if self.sparsity_levels.contains(&0) {
            return Err(Error::Format(
                "sparsity levels must be positive".to_string(),
            ));
        }
        Ok(())
    }
}

/// One reconstruction method: a label plus its unit-norm atom matrix.
#[derive(Debug, Clone)]
pub struct Method {
    pub label: String,
    pub atoms: DMatrix<f64>,
    pub certificate: Option<FrameCertificate>,
}

/// Everything the sweeps need, resolved from a config.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub complex: SimplicialComplex,
    pub geometry: Option<HexGeometry>,
    pub spectrum: HodgeSpectrum,
    pub signal: EdgeSignal,
    pub methods: Vec<Method>,
}

/// Resolves a config: builds or loads the complex and signal, computes the
/// spectrum, and assembles the Fourier baseline plus one certified Slepian
/// dictionary per requested cap. The signal is normalized to unit norm.
pub fn prepare(config: &ExperimentConfig) -> Result<Prepared> {
    config.validate()?;
    let (complex, geometry) = match &config.complex {
        ComplexSource::Synth { rows, cols, extent } => {
            let (complex, geometry) = hex_complex(*rows, *cols, extent)?;
            (complex, Some(geometry))
        }
        ComplexSource::File { path } => (io::load_complex(path)?, None),
    };
    let spectrum = hodge_spectrum(&complex.laplacian(1)?, None)?;

    let mut signal = match &config.signal {
        SignalSource::Field { spec, quadrature } => {
            let geometry = geometry.as_ref().ok_or_else(|| {
                Error::Format(
                    "field-sampled signals require a synthesized complex with geometry".to_string(),
                )
            })?;
            field_flow(geometry, spec, *quadrature)
        }
        SignalSource::File { path } => io::load_signal(path, &complex)?,
    };
    let norm = signal.norm();
    if norm == 0.0 {
        return Err(Error::ZeroSignal);
    }
    signal /= norm;

    let mut methods = vec![Method {
        label: "fourier".to_string(),
        atoms: spectrum.basis().clone(),
        certificate: None,
    }];
    let plan = concentration_sets(&complex, &spectrum, config.hops)?;
    for &k in &config.k_tilde {
        let dictionary = build_dictionary(&spectrum, &plan, k.cap())?;
        let certificate = frame_certificate(&dictionary, &spectrum)?;
        if !certificate.is_frame() {
            return Err(Error::DegenerateFrame {
                lower_bound: certificate.lower_bound,
                lower_complete: certificate.lower_complete,
                upper_complete: certificate.upper_complete,
            });
        }
        methods.push(Method {
            label: k.label(),
            atoms: dictionary.atoms().clone(),
            certificate: Some(certificate),
        });
    }

    Ok(Prepared {
        complex,
        geometry,
        spectrum,
        signal,
        methods,
    })
}

/// One sparsity-sweep measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparsityRow {
    pub epsilon: f64,
    pub method: String,
    pub l0: usize,
    pub residual: f64,
}

/// One denoising-sweep aggregate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenoiseRow {
    pub snr_db: f64,
    pub method: String,
    pub s: usize,
    pub nmse_mean: f64,
    pub nmse_stderr: f64,
}

/// A sweep cell whose solver run failed; the sweep continues without it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellFailure {
    pub context: String,
    pub code: String,
    pub message: String,
}

impl CellFailure {
    fn new(context: String, err: &Error) -> Self {
        Self {
            context,
            code: err.code().to_string(),
            message: err.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparsitySweep {
    pub rows: Vec<SparsityRow>,
    pub failures: Vec<CellFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenoiseSweep {
    pub rows: Vec<DenoiseRow>,
    pub failures: Vec<CellFailure>,
    /// (snr_db, sigma) pairs actually used.
    pub sigmas: Vec<(f64, f64)>,
}

/// Error-constrained pursuit of the clean signal on every (epsilon, method)
/// cell. Rows come back sorted by (epsilon, method).
pub fn run_sparsity_sweep(prepared: &Prepared, config: &ExperimentConfig) -> SparsitySweep {
    let cells: Vec<(usize, f64)> = prepared
        .methods
        .iter()
        .enumerate()
        .flat_map(|(m, _)| config.epsilon_grid.iter().map(move |&e| (m, e)))
        .collect();
    let outcomes: Vec<_> = cells
        .par_iter()
        .map(|&(m, epsilon)| {
            let method = &prepared.methods[m];
            let run = omp_error(&method.atoms, &prepared.signal, epsilon, None);
            (m, epsilon, run)
        })
        .collect();

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (m, epsilon, run) in outcomes {
        let label = &prepared.methods[m].label;
        match run {
            Ok(code) => rows.push(SparsityRow {
                epsilon,
                method: label.clone(),
                l0: code.support.len(),
                residual: code.residual_norm,
            }),
            Err(err) => failures.push(CellFailure::new(
                format!("sparsity epsilon={epsilon} method={label}"),
                &err,
            )),
        }
    }
    rows.sort_by(|a, b| {
        a.epsilon
            .total_cmp(&b.epsilon)
            .then_with(|| a.method.cmp(&b.method))
    });
    failures.sort_by(|a, b| a.context.cmp(&b.context));
    SparsitySweep { rows, failures }
}

/// Sparsity-constrained denoising on every (snr, method, s) cell, averaged
/// over `config.trials` seeded trials. Trial t draws its noise from RNG
/// stream t of the master seed, so every cell sees the same noise
/// realizations (common random numbers) and reruns are reproducible.
/// Rows come back sorted by (snr_db, method, s).
pub fn run_denoise_sweep(prepared: &Prepared, config: &ExperimentConfig) -> DenoiseSweep {
    let edge_count = prepared.signal.len();
    let sigmas: Vec<(f64, f64)> = config
        .snr_db_grid
        .iter()
        .map(|&db| (db, sigma_for(10f64.powf(db / 10.0), edge_count)))
        .collect();

    // cell index = (snr point, method, sparsity level)
    type TrialRun = (
        usize,
        usize,
        usize,
        std::result::Result<f64, (String, String)>,
    );
    let per_trial: Vec<Vec<TrialRun>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
            rng.set_stream(trial as u64);
            let noise = gaussian_vector(edge_count, &mut rng);
            let mut runs = Vec::new();
            for (p, &(_, sigma)) in sigmas.iter().enumerate() {
                let noisy = &prepared.signal + sigma * &noise;
                for (m, method) in prepared.methods.iter().enumerate() {
                    for (si, &s) in config.sparsity_levels.iter().enumerate() {
                        let run = omp_sparsity(&method.atoms, &noisy, s)
                            .and_then(|code| {
                                nmse(&prepared.signal, &code.reconstruct(&method.atoms))
                            })
                            .map_err(|e| (e.code().to_string(), e.to_string()));
                        runs.push((p, m, si, run));
                    }
                }
            }
            runs
        })
        .collect();

    let mut samples: Vec<Vec<f64>> =
        vec![Vec::new(); sigmas.len() * prepared.methods.len() * config.sparsity_levels.len()];
    let mut failures = Vec::new();
    for (trial, runs) in per_trial.iter().enumerate() {
        for (p, m, si, run) in runs {
            let flat = (p * prepared.methods.len() + m) * config.sparsity_levels.len() + si;
            match run {
                Ok(value) => samples[flat].push(*value),
                Err((code, message)) => failures.push(CellFailure {
                    context: format!(
                        "denoise snr_db={} method={} s={} trial={trial}",
                        sigmas[*p].0, prepared.methods[*m].label, config.sparsity_levels[*si]
                    ),
                    code: code.clone(),
                    message: message.clone(),
                }),
            }
        }
    }

    let mut rows = Vec::new();
    for (p, &(snr_db, _)) in sigmas.iter().enumerate() {
        for (m, method) in prepared.methods.iter().enumerate() {
            for (si, &s) in config.sparsity_levels.iter().enumerate() {
                let flat = (p * prepared.methods.len() + m) * config.sparsity_levels.len() + si;
                let values = &samples[flat];
                if values.is_empty() {
                    continue;
                }
                let n = values.len() as f64;
                let mean = values.iter().sum::<f64>() / n;
                let stderr = if values.len() > 1 {
                    let var =
                        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
                    (var / n).sqrt()
                } else {
                    0.0
                };
                rows.push(DenoiseRow {
                    snr_db,
                    method: method.label.clone(),
                    s,
                    nmse_mean: mean,
                    nmse_stderr: stderr,
                });
            }
        }
    }
    rows.sort_by(|a, b| {
        a.snr_db
            .total_cmp(&b.snr_db)
            .then_with(|| a.method.cmp(&b.method))
            .then_with(|| a.s.cmp(&b.s))
    });
    failures.sort_by(|a, b| a.context.cmp(&b.context));
    DenoiseSweep {
        rows,
        failures,
        sigmas,
    }
}

/// Metadata sidecar for a sweep: config echo, complex and method sizes,
/// certificates, and any failed cells. Contains nothing run-dependent
/// beyond the seed, so reruns are byte-identical.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub config: ExperimentConfig,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub triangle_count: usize,
    pub methods: Vec<MethodSummary>,
    pub failures: Vec<CellFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigmas: Option<Vec<(f64, f64)>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MethodSummary {
    pub label: String,
    pub atom_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<FrameCertificate>,
}

impl SweepMetadata {
    pub fn new(
        config: &ExperimentConfig,
        prepared: &Prepared,
        failures: Vec<CellFailure>,
        sigmas: Option<Vec<(f64, f64)>>,
    ) -> Self {
        Self {
            config: config.clone(),
            vertex_count: prepared.complex.vertex_count(),
            edge_count: prepared.complex.edge_count(),
            triangle_count: prepared.complex.triangle_count(),
            methods: prepared
                .methods
                .iter()
                .map(|m| MethodSummary {
                    label: m.label.clone(),
                    atom_count: m.atoms.ncols(),
                    certificate: m.certificate.clone(),
                })
                .collect(),
            failures,
            sigmas,
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// Writes sparsity rows as CSV with columns `epsilon,method,l0,residual`.
pub fn write_sparsity_csv(path: &Path, rows: &[SparsityRow]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["epsilon", "method", "l0", "residual"])?;
    for row in rows {
        writer.write_record(&[
            format!("{}", row.epsilon),
            row.method.clone(),
            row.l0.to_string(),
            format!("{}", row.residual),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Writes denoise rows as CSV with columns
/// `snr_db,method,s,nmse_mean,nmse_stderr`.
pub fn write_denoise_csv(path: &Path, rows: &[DenoiseRow]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["snr_db", "method", "s", "nmse_mean", "nmse_stderr"])?;
    for row in rows {
        writer.write_record(&[
            format!("{}", row.snr_db),
            row.method.clone(),
            row.s.to_string(),
            format!("{}", row.nmse_mean),
            format!("{}", row.nmse_stderr),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Writes a gnuplot script that plots l0 vs epsilon per method from the
/// sparsity CSV (referenced by file name, assumed alongside the script).
pub fn write_sparsity_plot(path: &Path, csv_name: &str, methods: &[String]) -> Result<()> {
    let mut script = String::from(
        "set datafile separator ','\n\
         set logscale xy\n\
         set xlabel 'error tolerance'\n\
         set ylabel 'atoms selected'\n\
         set key top right\n",
    );
    let terms: Vec<String> = methods
        .iter()
        .map(|m| {
            format!(
                "'{csv_name}' using (strcol('method') eq '{m}' ? column('epsilon') : NaN):(column('l0')) \
                 with linespoints title '{m}'"
            )
        })
        .collect();
    script.push_str(&format!("plot {}\n", terms.join(", \\\n     ")));
    std::fs::write(path, script)?;
    Ok(())
}

/// Writes a gnuplot script that plots NMSE vs SNR per (method, s) from the
/// denoise CSV.
pub fn write_denoise_plot(
    path: &Path,
    csv_name: &str,
    methods: &[String],
    sparsity_levels: &[usize],
) -> Result<()> {
    let mut script = String::from(
        "set datafile separator ','\n\
         set logscale y\n\
         set xlabel 'SNR (dB)'\n\
         set ylabel 'NMSE'\n\
         set key bottom left\n",
    );
    let mut terms = Vec::new();
    for m in methods {
        for &s in sparsity_levels {
            terms.push(format!(
                "'{csv_name}' using (strcol('method') eq '{m}' && column('s') == {s} ? \
                 column('snr_db') : NaN):(column('nmse_mean')) \
                 with linespoints title '{m} s={s}'"
            ));
        }
    }
    script.push_str(&format!("plot {}\n", terms.join(", \\\n     ")));
    std::fs::write(path, script)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> ExperimentConfig {
        ExperimentConfig {
            complex: ComplexSource::Synth {
                rows: 3,
                cols: 3,
                extent: Extent::default(),
            },
            k_tilde: vec![KTilde::Capped(2), KTilde::Full],
            epsilon_grid: vec![1e-3, 1e-1, 2.0],
            snr_db_grid: vec![0.0, 10.0],
            sparsity_levels: vec![2],
            trials: 3,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn k_tilde_serde_accepts_numbers_and_full() {
        let parsed: Vec<KTilde> = serde_json::from_str(r#"[4, 8, "full"]"#).unwrap();
        assert_eq!(
            parsed,
            vec![KTilde::Capped(4), KTilde::Capped(8), KTilde::Full]
        );
        assert_eq!(serde_json::to_string(&parsed).unwrap(), r#"[4,8,"full"]"#);
        assert!(serde_json::from_str::<Vec<KTilde>>(r#"["half"]"#).is_err());
        assert!(serde_json::from_str::<Vec<KTilde>>("[0]").is_err());
    }

    #[test]
    fn default_config_round_trips_and_validates() {
        let config = ExperimentConfig::default();
        config.validate().unwrap();
        let text = serde_json::to_string(&config).unwrap();
        let back: ExperimentConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back.k_tilde, config.k_tilde);
        assert_eq!(back.epsilon_grid, config.epsilon_grid);
        let empty: ExperimentConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(empty.trials, 100);
        assert_eq!(empty.seed, 42);
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn default_epsilon_grid_spans_decades() {
        let config = ExperimentConfig::default();
        assert_eq!(config.epsilon_grid.len(), 7);
        assert!((config.epsilon_grid[0] - 1e-4).abs() < 1e-18);
        assert!((config.epsilon_grid[6] - 1e-1).abs() < 1e-15);
        assert_eq!(config.snr_db_grid.len(), 9);
        assert_eq!(config.snr_db_grid[0], -5.0);
        assert_eq!(config.snr_db_grid[8], 15.0);
    }

    #[test]
    fn prepare_builds_labeled_methods() {
        let config = small_config();
        let prepared = prepare(&config).unwrap();
        let labels: Vec<&str> = prepared.methods.iter().map(|m| m.label.as_str()).collect();
        assert_eq!(labels, ["fourier", "slepian-k2", "slepian-full"]);
        assert_eq!(
            prepared.methods[0].atoms.ncols(),
            prepared.complex.edge_count()
        );
        assert!((prepared.signal.norm() - 1.0).abs() < 1e-12);
        for method in &prepared.methods[1..] {
            assert!(method.certificate.as_ref().unwrap().is_frame());
        }
    }

    #[test]
    fn sparsity_sweep_is_deterministic_and_monotone() {
        let config = small_config();
        let prepared = prepare(&config).unwrap();
        let sweep = run_sparsity_sweep(&prepared, &config);
        assert!(sweep.failures.is_empty());
        assert_eq!(
            sweep.rows.len(),
            prepared.methods.len() * config.epsilon_grid.len()
        );
        for method in &prepared.methods {
            let l0s: Vec<usize> = sweep
                .rows
                .iter()
                .filter(|r| r.method == method.label)
                .map(|r| r.l0)
                .collect();
            assert!(l0s.windows(2).all(|w| w[0] >= w[1]), "{l0s:?}");
        }
        // epsilon = 2 exceeds the unit signal energy: nothing to do.
        assert!(sweep
            .rows
            .iter()
            .filter(|r| r.epsilon == 2.0)
            .all(|r| r.l0 == 0));
        let again = run_sparsity_sweep(&prepared, &config);
        assert_eq!(again.rows, sweep.rows);
    }

    #[test]
    fn denoise_sweep_is_deterministic_with_finite_stats() {
        let config = small_config();
        let prepared = prepare(&config).unwrap();
        let sweep = run_denoise_sweep(&prepared, &config);
        assert!(sweep.failures.is_empty());
        assert_eq!(
            sweep.rows.len(),
            config.snr_db_grid.len() * prepared.methods.len() * config.sparsity_levels.len()
        );
        for row in &sweep.rows {
            assert!(row.nmse_mean.is_finite() && row.nmse_mean >= 0.0);
            assert!(row.nmse_stderr.is_finite() && row.nmse_stderr >= 0.0);
        }
        let again = run_denoise_sweep(&prepared, &config);
        assert_eq!(again.rows, sweep.rows);
    }

    #[test]
    fn artifact_writers_produce_stable_files() {
        let dir = tempfile::tempdir().unwrap();
        let config = small_config();
        let prepared = prepare(&config).unwrap();
        let sweep = run_sparsity_sweep(&prepared, &config);
        let csv_path = dir.path().join("sparsity.csv");
        write_sparsity_csv(&csv_path, &sweep.rows).unwrap();
        let text = std::fs::read_to_string(&csv_path).unwrap();
        assert!(text.starts_with("epsilon,method,l0,residual\n"));

        let labels: Vec<String> = prepared.methods.iter().map(|m| m.label.clone()).collect();
        let plot_path = dir.path().join("sparsity.gp");
        write_sparsity_plot(&plot_path, "sparsity.csv", &labels).unwrap();
        let script = std::fs::read_to_string(&plot_path).unwrap();
        assert!(script.contains("strcol('method') eq 'fourier'"));

        let metadata = SweepMetadata::new(&config, &prepared, sweep.failures.clone(), None);
        let meta_path = dir.path().join("meta.json");
        metadata.write(&meta_path).unwrap();
        let parsed: SweepMetadata =
            serde_json::from_str(&std::fs::read_to_string(&meta_path).unwrap()).unwrap();
        assert_eq!(parsed.edge_count, prepared.complex.edge_count());
        assert_eq!(parsed.methods.len(), prepared.methods.len());
    }

    #[test]
    fn file_signal_requires_matching_complex() {
        let dir = tempfile::tempdir().unwrap();
        let (complex, _) = hex_complex(2, 2, &Extent::default()).unwrap();
        let signal = nalgebra::DVector::from_fn(complex.edge_count(), |i, _| 1.0 + i as f64);
        let complex_path = dir.path().join("complex.json");
        let signal_path = dir.path().join("signal.csv");
        io::save_complex(&complex_path, &complex).unwrap();
        io::save_signal(&signal_path, &complex, &signal).unwrap();
        let config = ExperimentConfig {
            complex: ComplexSource::File { path: complex_path },
            signal: SignalSource::File { path: signal_path },
            k_tilde: vec![KTilde::Full],
            ..ExperimentConfig::default()
        };
        let prepared = prepare(&config).unwrap();
        assert_eq!(prepared.complex.edge_count(), 5);
        assert!(prepared.geometry.is_none());
    }
}
