//! Command-line front end: benchmark synthesis, dictionary construction
//! and certification, and the two experiment sweeps. All artifacts are
//! deterministic for a fixed config and seed.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use topo_slepians::complex::SimplicialComplex;
use topo_slepians::dictionary::{
    build_dictionary, concentration_sets, empirical_frame_check, frame_certificate,
    FrameCertificate, SlepianDictionary,
};
use topo_slepians::error::{Error, Result};
use topo_slepians::experiment::{
    prepare, run_denoise_sweep, run_sparsity_sweep, write_denoise_csv, write_denoise_plot,
    write_sparsity_csv, write_sparsity_plot, ComplexSource, ExperimentConfig, KTilde, SignalSource,
    SweepMetadata,
};
use topo_slepians::io;
use topo_slepians::spectral::{hodge_spectrum, HodgeSpectrum};
use topo_slepians::synth::{field_flow, hex_complex, Extent, FieldSpec, Quadrature};

#[derive(Parser)]
#[command(
    name = "topo-slepians",
    version,
    about = "Concentrated spectral dictionaries for edge flows on simplicial complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the hexagonal benchmark complex and its localized flow
    Synth(SynthArgs),
    /// Build a Slepian dictionary and print its frame certificate
    Dict(DictArgs),
    /// Re-certify a saved dictionary and stress-test its bounds
    Certify(CertifyArgs),
    /// Representation cost vs error tolerance, per method
    SparsitySweep(CommonArgs),
    /// Denoising NMSE vs SNR over seeded Monte-Carlo trials
    DenoiseSweep(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON experiment config; omitted fields take defaults
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master RNG seed (overrides the config)
    #[arg(long)]
    seed: Option<u64>,
    /// Number of Monte-Carlo trials (overrides the config)
    #[arg(long)]
    trials: Option<usize>,
    /// Output directory, created if missing
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct SynthArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Grid rows (overrides the config)
    #[arg(long)]
    rows: Option<usize>,
    /// Grid columns (overrides the config)
    #[arg(long)]
    cols: Option<usize>,
    /// Flux quadrature: midpoint or three-point (overrides the config)
    #[arg(long)]
    quadrature: Option<String>,
}

#[derive(Args)]
struct DictArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Complex JSON file (default: the config's complex source)
    #[arg(long)]
    complex: Option<PathBuf>,
    /// Per-set atom cap: a positive integer or "full"
    #[arg(long, default_value = "full")]
    k_tilde: String,
    /// Neighborhood radius for concentration sets (overrides the config)
    #[arg(long)]
    hops: Option<usize>,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Complex JSON file the dictionary was built on
    #[arg(long)]
    complex: PathBuf,
    /// Dictionary atom matrix CSV
    #[arg(long)]
    atoms: PathBuf,
    /// Dictionary JSON sidecar
    #[arg(long)]
    sidecar: PathBuf,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}: {err}", err.code());
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Synth(args) => cmd_synth(args),
        Command::Dict(args) => cmd_dict(args),
        Command::Certify(args) => cmd_certify(args),
        Command::SparsitySweep(args) => cmd_sparsity_sweep(args),
        Command::DenoiseSweep(args) => cmd_denoise_sweep(args),
    }
}

fn load_config(args: &CommonArgs) -> Result<ExperimentConfig> {
    let mut config = match &args.config {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(trials) = args.trials {
        config.trials = trials;
    }
    config.validate()?;
    Ok(config)
}

fn ensure_out_dir(args: &CommonArgs) -> Result<PathBuf> {
    std::fs::create_dir_all(&args.out_dir)?;
    Ok(args.out_dir.clone())
}

fn parse_k_tilde(text: &str) -> Result<KTilde> {
    if text == "full" {
        return Ok(KTilde::Full);
    }
    match text.parse::<usize>() {
        Ok(n) if n > 0 => Ok(KTilde::Capped(n)),
        _ => Err(Error::Format(format!(
            "expected a positive integer or \"full\" for k-tilde, got {text:?}"
        ))),
    }
}

fn parse_quadrature(text: &str) -> Result<Quadrature> {
    match text {
        "midpoint" => Ok(Quadrature::Midpoint),
        "three-point" => Ok(Quadrature::ThreePoint),
        other => Err(Error::Format(format!(
            "expected midpoint or three-point quadrature, got {other:?}"
        ))),
    }
}

fn synth_params(config: &ExperimentConfig) -> (usize, usize, Extent) {
    match &config.complex {
        ComplexSource::Synth { rows, cols, extent } => (*rows, *cols, *extent),
        ComplexSource::File { .. } => (15, 15, Extent::default()),
    }
}

fn resolve_complex(config: &ExperimentConfig, path: Option<&Path>) -> Result<SimplicialComplex> {
    if let Some(path) = path {
        return io::load_complex(path);
    }
    match &config.complex {
        ComplexSource::Synth { rows, cols, extent } => Ok(hex_complex(*rows, *cols, extent)?.0),
        ComplexSource::File { path } => io::load_complex(path),
    }
}

fn print_certificate(cert: &FrameCertificate) {
    println!(
        "frame bounds: A={} B={} (counting bound {})",
        cert.lower_bound, cert.upper_bound_rr, cert.upper_bound_thm
    );
    println!(
        "completeness: lower={} upper={} (frame operator rank {} of {})",
        cert.lower_complete, cert.upper_complete, cert.frame_operator_rank, cert.edge_count
    );
}

fn degenerate(cert: &FrameCertificate) -> Error {
    Error::DegenerateFrame {
        lower_bound: cert.lower_bound,
        lower_complete: cert.lower_complete,
        upper_complete: cert.upper_complete,
    }
}

fn cmd_synth(args: SynthArgs) -> Result<()> {
    let config = load_config(&args.common)?;
    let out_dir = ensure_out_dir(&args.common)?;
    let (mut rows, mut cols, extent) = synth_params(&config);
    if let Some(r) = args.rows {
        rows = r;
    }
    if let Some(c) = args.cols {
        cols = c;
    }
    let (spec, mut quadrature) = match &config.signal {
        SignalSource::Field { spec, quadrature } => (spec.clone(), *quadrature),
        SignalSource::File { .. } => (FieldSpec::default(), Quadrature::default()),
    };
    if let Some(q) = &args.quadrature {
        quadrature = parse_quadrature(q)?;
    }

    let (complex, geometry) = hex_complex(rows, cols, &extent)?;
    let flow = field_flow(&geometry, &spec, quadrature);
    if flow.norm() == 0.0 {
        eprintln!("warning: field misses every sampled side; signal is identically zero");
    }
    io::save_complex(&out_dir.join("complex.json"), &complex)?;
    io::save_signal(&out_dir.join("signal.csv"), &complex, &flow)?;
    println!(
        "V={} E={} T={}",
        complex.vertex_count(),
        complex.edge_count(),
        complex.triangle_count()
    );
    println!("wrote complex.json and signal.csv");
    Ok(())
}

fn build_certified(
    complex: &SimplicialComplex,
    hops: usize,
    k_tilde: KTilde,
) -> Result<(HodgeSpectrum, SlepianDictionary, FrameCertificate)> {
    let spectrum = hodge_spectrum(&complex.laplacian(1)?, None)?;
    let plan = concentration_sets(complex, &spectrum, hops)?;
    let dictionary = build_dictionary(&spectrum, &plan, k_tilde.cap())?;
    let certificate = frame_certificate(&dictionary, &spectrum)?;
    Ok((spectrum, dictionary, certificate))
}

fn cmd_dict(args: DictArgs) -> Result<()> {
    let config = load_config(&args.common)?;
    let out_dir = ensure_out_dir(&args.common)?;
    let k_tilde = parse_k_tilde(&args.k_tilde)?;
    let complex = resolve_complex(&config, args.complex.as_deref())?;
    let hops = args.hops.unwrap_or(config.hops);
    let (_, dictionary, certificate) = build_certified(&complex, hops, k_tilde)?;

    io::save_dictionary(
        &out_dir.join("dictionary.csv"),
        &out_dir.join("dictionary.json"),
        &dictionary,
        Some(&certificate),
    )?;
    let (upper_sets, lower_sets, harmonic) = dictionary.set_counts();
    println!(
        "atoms: {} (upper sets: {upper_sets}, lower sets: {lower_sets}, harmonic: {harmonic})",
        dictionary.atom_count()
    );
    print_certificate(&certificate);
    println!("wrote dictionary.csv and dictionary.json");
    if !certificate.is_frame() {
        return Err(degenerate(&certificate));
    }
    Ok(())
}

fn cmd_certify(args: CertifyArgs) -> Result<()> {
    let config = load_config(&args.common)?;
    let complex = io::load_complex(&args.complex)?;
    let (dictionary, stored) = io::load_dictionary(&args.atoms, &args.sidecar)?;
    let spectrum = hodge_spectrum(&complex.laplacian(1)?, None)?;
    let certificate = frame_certificate(&dictionary, &spectrum)?;
    print_certificate(&certificate);
    if let Some(stored) = stored {
        let consistent = (stored.lower_bound - certificate.lower_bound).abs() <= 1e-8
            && (stored.upper_bound_rr - certificate.upper_bound_rr).abs() <= 1e-8
            && stored.lower_complete == certificate.lower_complete
            && stored.upper_complete == certificate.upper_complete;
        println!("sidecar certificate consistent: {consistent}");
        if !consistent {
            return Err(Error::Format(
                "stored certificate disagrees with recomputed bounds".to_string(),
            ));
        }
    }
    let trials = args.common.trials.unwrap_or(1000);
    let report = empirical_frame_check(&dictionary, &certificate, trials, config.seed);
    println!(
        "empirical check: {} trials, quotients in [{}, {}], violations: {}",
        report.trials, report.min_quotient, report.max_quotient, report.violations
    );
    if !certificate.is_frame() {
        return Err(degenerate(&certificate));
    }
    if report.violations > 0 {
        return Err(Error::Format(format!(
            "{} of {} random vectors violated the certified bounds",
            report.violations, report.trials
        )));
    }
    Ok(())
}

fn cmd_sparsity_sweep(args: CommonArgs) -> Result<()> {
    let config = load_config(&args)?;
    let out_dir = ensure_out_dir(&args)?;
    let prepared = prepare(&config)?;
    let sweep = run_sparsity_sweep(&prepared, &config);
    write_sparsity_csv(&out_dir.join("sparsity.csv"), &sweep.rows)?;
    let labels: Vec<String> = prepared.methods.iter().map(|m| m.label.clone()).collect();
    write_sparsity_plot(&out_dir.join("sparsity.gp"), "sparsity.csv", &labels)?;
    SweepMetadata::new(&config, &prepared, sweep.failures.clone(), None)
        .write(&out_dir.join("sparsity_metadata.json"))?;
    println!(
        "wrote sparsity.csv ({} rows, {} failed cells), sparsity.gp, sparsity_metadata.json",
        sweep.rows.len(),
        sweep.failures.len()
    );
    Ok(())
}

fn cmd_denoise_sweep(args: CommonArgs) -> Result<()> {
    let config = load_config(&args)?;
    let out_dir = ensure_out_dir(&args)?;
    let prepared = prepare(&config)?;
    let sweep = run_denoise_sweep(&prepared, &config);
    write_denoise_csv(&out_dir.join("denoise.csv"), &sweep.rows)?;
    let labels: Vec<String> = prepared.methods.iter().map(|m| m.label.clone()).collect();
    write_denoise_plot(
        &out_dir.join("denoise.gp"),
        "denoise.csv",
        &labels,
        &config.sparsity_levels,
    )?;
    SweepMetadata::new(
        &config,
        &prepared,
        sweep.failures.clone(),
        Some(sweep.sigmas.clone()),
    )
    .write(&out_dir.join("denoise_metadata.json"))?;
    println!(
        "wrote denoise.csv ({} rows, {} failed cells), denoise.gp, denoise_metadata.json",
        sweep.rows.len(),
        sweep.failures.len()
    );
    Ok(())
}
