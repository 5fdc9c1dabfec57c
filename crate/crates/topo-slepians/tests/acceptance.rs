//! Acceptance gate: one test per criterion. Each prints a single
//! `ACCEPTANCE <n> PASS` line on success (visible with --nocapture);
//! a failed assertion marks the criterion failed.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use topo_slepians::complex::SimplicialComplex;
use topo_slepians::dictionary::{
    build_dictionary, default_concentration_sets, empirical_frame_check, frame_certificate,
};
use topo_slepians::experiment::{
    prepare, run_denoise_sweep, run_sparsity_sweep, ExperimentConfig, KTilde,
};
use topo_slepians::slepian::{band_limiter, edge_limiter, solve_slepians, ConcentrationPair};
use topo_slepians::sparse::omp_sparsity;
use topo_slepians::spectral::{hodge_decompose, hodge_spectrum, sft};
use topo_slepians::synth::{field_flow, hex_complex, snr_of, Extent, FieldSpec, Quadrature};

fn corpus(seed: u64, count: usize, max_vertices: usize) -> Vec<SimplicialComplex> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| common::random_complex(&mut rng, 3, max_vertices, i % 3 != 0, i % 2 == 0))
        .collect()
}

#[test]
fn criterion_1_boundary_of_boundary_vanishes_exactly() {
    let start = Instant::now();
    for complex in corpus(101, 100, 30) {
        let b1 = complex.incidence(1).unwrap();
        let b2 = complex.incidence(2).unwrap();
        let product = b1.matrix() * b2.matrix();
        assert!(
            product.iter().all(|&v| v == 0),
            "nonzero boundary-of-boundary entry on V={} E={} T={}",
            complex.vertex_count(),
            complex.edge_count(),
            complex.triangle_count()
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!(
        "ACCEPTANCE 1 PASS: B1*B2 = 0 in integer arithmetic on 100 random complexes ({elapsed:?})"
    );
}

#[test]
fn criterion_2_hodge_identities_and_parseval() {
    let mut rng = ChaCha12Rng::seed_from_u64(202);
    let mut checked = 0usize;
    for complex in corpus(101, 100, 30) {
        let e = complex.edge_count();
        let lap = complex.laplacian(1).unwrap();
        let gap = (&lap.full - (&lap.down + &lap.up)).abs().max();
        assert!(gap <= 1e-10, "L != L_down + L_up, max gap {gap}");
        if e == 0 {
            continue;
        }
        let x = DVector::from_fn(e, |_, _| rng.gen_range(-1.0..1.0));
        let norm = x.norm();

        let parts = hodge_decompose(&complex, &x).unwrap();
        let pieces = [&parts.irrotational, &parts.solenoidal, &parts.harmonic];
        for i in 0..3 {
            for j in (i + 1)..3 {
                let overlap = pieces[i].dot(pieces[j]).abs();
                assert!(overlap <= 1e-8 * norm * norm, "components not orthogonal");
            }
        }
        let recombined = &parts.irrotational + &parts.solenoidal + &parts.harmonic;
        assert!(
            (recombined - &x).norm() <= 1e-8 * norm,
            "components do not sum to x"
        );

        let spectrum = hodge_spectrum(&lap, None).unwrap();
        let xhat = sft(&spectrum, &x).unwrap();
        assert!(
            (xhat.norm() - norm).abs() <= 1e-10 * norm,
            "Parseval violated: |x^| = {}, |x| = {norm}",
            xhat.norm()
        );
        checked += 1;
    }
    assert!(checked >= 90);
    println!(
        "ACCEPTANCE 2 PASS: Laplacian split (1e-10), orthogonal decomposition (1e-8), Parseval (1e-10) on {checked} signals"
    );
}

fn random_subset(rng: &mut impl Rng, n: usize, p: f64) -> Vec<usize> {
    let mut set: Vec<usize> = (0..n).filter(|_| rng.gen_bool(p)).collect();
    if set.is_empty() {
        set.push(rng.gen_range(0..n));
    }
    set
}

#[test]
fn criterion_3_reduced_solve_matches_brute_force_operator() {
    let mut rng = ChaCha12Rng::seed_from_u64(303);
    let mut done = 0usize;
    while done < 50 {
        let with_triangles = rng.gen_bool(0.7);
        let complex = common::random_complex(&mut rng, 4, 9, true, with_triangles);
        let e = complex.edge_count();
        if e == 0 || e > 40 {
            continue;
        }
        let spectrum = hodge_spectrum(&complex.laplacian(1).unwrap(), None).unwrap();
        let edge_set = random_subset(&mut rng, e, 0.4);
        let freq_set = random_subset(&mut rng, e, 0.4);
        let pair = ConcentrationPair::new(edge_set.clone(), freq_set.clone(), e).unwrap();
        let set = solve_slepians(&spectrum, &pair, None, None).unwrap();

        // Independent route: assemble the full E x E operator and
        // eigendecompose it directly.
        let b_f = band_limiter(&spectrum, &freq_set).unwrap();
        let c_s = edge_limiter(&edge_set, e).unwrap();
        let op = &b_f * &c_s * &b_f;
        let sym = (&op + op.transpose()) * 0.5;
        let eig = nalgebra::SymmetricEigen::new(sym);
        let mut brute: Vec<f64> = eig
            .eigenvalues
            .iter()
            .copied()
            .filter(|&l| l > 1e-8)
            .collect();
        brute.sort_by(|a, b| b.total_cmp(a));

        let kept = &set.concentrations;
        let shared = kept.len().min(brute.len());
        for i in 0..shared {
            assert!(
                (kept[i] - brute[i]).abs() <= 1e-8,
                "eigenvalue {i} mismatch: reduced {} vs brute {}",
                kept[i],
                brute[i]
            );
        }
        // Any count difference must sit at the rank cutoff.
        for &l in &brute[shared..] {
            assert!(l <= 2e-8, "brute-force found extra eigenvalue {l}");
        }
        for &l in &kept[shared..] {
            assert!(l <= 2e-8, "reduced solve found extra eigenvalue {l}");
        }

        for (j, &lambda) in kept.iter().enumerate() {
            assert!(
                lambda > 0.0 && lambda <= 1.0 + 1e-10,
                "lambda out of range: {lambda}"
            );
            for i in 0..kept.len() {
                let want = if i == j { lambda } else { 0.0 };
                let got =
                    (set.vectors.column(i).transpose() * &c_s * set.vectors.column(j))[(0, 0)];
                assert!(
                    (got - want).abs() <= 1e-8,
                    "concentration identity violated at ({i}, {j}): {got} vs {want}"
                );
            }
        }
        done += 1;
    }
    println!(
        "ACCEPTANCE 3 PASS: reduced solve matches brute-force spectrum and concentration identity (1e-8) on 50 pairs"
    );
}

#[test]
fn criterion_4_default_dictionaries_certify_as_frames() {
    let mut rng = ChaCha12Rng::seed_from_u64(404);
    let mut done = 0usize;
    while done < 20 {
        let complex = common::random_complex(&mut rng, 5, 12, true, true);
        if complex.triangle_count() == 0 || complex.edge_count() == 0 {
            continue;
        }
        let spectrum = hodge_spectrum(&complex.laplacian(1).unwrap(), None).unwrap();
        let plan = default_concentration_sets(&complex, &spectrum).unwrap();
        let dictionary = build_dictionary(&spectrum, &plan, None).unwrap();
        let cert = frame_certificate(&dictionary, &spectrum).unwrap();
        assert!(
            cert.lower_complete && cert.upper_complete,
            "completeness failed"
        );
        assert!(
            cert.lower_bound > 1e-8,
            "A = {} not positive",
            cert.lower_bound
        );
        assert!(
            cert.upper_bound_rr <= cert.upper_bound_thm + 1e-8,
            "B exceeds counting bound: {} > {}",
            cert.upper_bound_rr,
            cert.upper_bound_thm
        );
        let report = empirical_frame_check(&dictionary, &cert, 1000, 4040 + done as u64);
        assert_eq!(report.violations, 0, "empirical frame violations");
        done += 1;
    }

    // Negative control: a complex with an isolated edge whose concentration
    // pairs are dropped, so no atom can see that edge.
    let mut rng = ChaCha12Rng::seed_from_u64(440);
    let base = common::random_complex(&mut rng, 5, 8, true, true);
    let v = base.vertex_count();
    let mut edges: Vec<[usize; 2]> = base.edges().iter().map(|e| [e[0], e[1]]).collect();
    edges.push([v, v + 1]);
    let triangles: Vec<[usize; 3]> = base
        .triangles()
        .iter()
        .map(|t| [t[0], t[1], t[2]])
        .collect();
    let broken = SimplicialComplex::build(v + 2, &edges, &triangles).unwrap();
    let iso = broken.edge_index(v, v + 1).unwrap();
    let spectrum = hodge_spectrum(&broken.laplacian(1).unwrap(), None).unwrap();
    let mut plan = default_concentration_sets(&broken, &spectrum).unwrap();
    plan.lower_pairs.retain(|p| !p.edge_set().contains(&iso));
    plan.upper_pairs.retain(|p| !p.edge_set().contains(&iso));
    assert!(
        !plan.coverage(broken.edge_count()).0,
        "control plan still covers"
    );
    let dictionary = build_dictionary(&spectrum, &plan, None).unwrap();
    let cert = frame_certificate(&dictionary, &spectrum).unwrap();
    assert!(
        cert.lower_bound <= 1e-8,
        "coverage-broken plan still has A = {}",
        cert.lower_bound
    );
    assert!(!cert.is_frame());
    println!(
        "ACCEPTANCE 4 PASS: 20 random 1-hop dictionaries certified (A > 1e-8, B <= counting bound, 1000-vector empirical check); coverage-broken control degenerate"
    );
}

#[test]
fn criterion_5_benchmark_scale_and_flow_localization() {
    let (complex, geometry) = hex_complex(15, 15, &Extent::default()).unwrap();
    assert_eq!(complex.vertex_count(), 225, "vertex count must be exact");
    let field = FieldSpec::default();
    let flow = field_flow(&geometry, &field, Quadrature::Midpoint);
    assert!((flow.norm() - 1.0).abs() <= 1e-12, "flow not unit norm");
    let mut inside = 0usize;
    for (i, side) in geometry.sides.iter().enumerate() {
        if flow[i] != 0.0 {
            assert!(
                field.eval(side.midpoint) != [0.0, 0.0],
                "nonzero flow on edge sampled outside the field support"
            );
            inside += 1;
        }
    }
    assert!(inside > 0, "flow is identically zero");
    println!(
        "ACCEPTANCE 5 PASS: V=225 exact; generated E={} T={} (reference counts E=629 T=405, reported not gated); unit-norm flow supported on {inside} edges inside the balls",
        complex.edge_count(),
        complex.triangle_count()
    );
}

#[test]
fn criterion_6_sparsity_sweep_monotone_and_beats_fourier() {
    let start = Instant::now();
    let config = ExperimentConfig::default();
    let first = *config.epsilon_grid.first().unwrap();
    let last = *config.epsilon_grid.last().unwrap();
    assert!(
        first <= 1e-4 && last >= 1e-1,
        "grid does not span [1e-4, 1e-1]"
    );

    let prepared = prepare(&config).unwrap();
    let sweep = run_sparsity_sweep(&prepared, &config);
    assert!(
        sweep.failures.is_empty(),
        "failed cells: {:?}",
        sweep.failures
    );

    for method in &prepared.methods {
        let l0s: Vec<usize> = sweep
            .rows
            .iter()
            .filter(|r| r.method == method.label)
            .map(|r| r.l0)
            .collect();
        assert_eq!(l0s.len(), config.epsilon_grid.len());
        assert!(
            l0s.windows(2).all(|w| w[0] >= w[1]),
            "l0 not non-increasing in epsilon for {}: {l0s:?}",
            method.label
        );
    }
    for &eps in &config.epsilon_grid {
        let l0_of = |label: &str| {
            sweep
                .rows
                .iter()
                .find(|r| r.epsilon == eps && r.method == label)
                .map(|r| r.l0)
                .unwrap()
        };
        let full = l0_of("slepian-full");
        let fourier = l0_of("fourier");
        assert!(
            full <= fourier,
            "full dictionary not sparser at eps={eps}: {full} vs fourier {fourier}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!(
        "ACCEPTANCE 6 PASS: l0 non-increasing per method; slepian-full <= fourier at all {} tolerances ({elapsed:?})",
        config.epsilon_grid.len()
    );
}

#[test]
fn criterion_7_denoising_monotone_in_snr() {
    let start = Instant::now();
    let config = ExperimentConfig {
        k_tilde: vec![KTilde::Capped(4)],
        ..ExperimentConfig::default()
    };
    let prepared = prepare(&config).unwrap();
    let edge_count = prepared.complex.edge_count();
    let sweep = run_denoise_sweep(&prepared, &config);
    assert!(
        sweep.failures.is_empty(),
        "failed cells: {:?}",
        sweep.failures
    );

    for &(db, sigma) in &sweep.sigmas {
        let configured = 10f64.powf(db / 10.0);
        let realized = snr_of(sigma, edge_count);
        assert!(
            (realized / configured - 1.0).abs() <= 1e-12,
            "SNR round-trip off at {db} dB: {realized} vs {configured}"
        );
    }

    for method in &prepared.methods {
        for &s in &config.sparsity_levels {
            let series: Vec<(f64, f64, f64)> = sweep
                .rows
                .iter()
                .filter(|r| r.method == method.label && r.s == s)
                .map(|r| (r.snr_db, r.nmse_mean, r.nmse_stderr))
                .collect();
            assert_eq!(series.len(), config.snr_db_grid.len());
            for w in series.windows(2) {
                let (_, mean_lo, se_lo) = w[0];
                let (snr_hi, mean_hi, se_hi) = w[1];
                let slack = 2.0 * (se_lo * se_lo + se_hi * se_hi).sqrt();
                assert!(
                    mean_hi <= mean_lo + slack,
                    "NMSE increased with SNR for {} s={s} at {snr_hi} dB: {mean_hi} > {mean_lo} + {slack}",
                    method.label
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    println!(
        "ACCEPTANCE 7 PASS: NMSE non-increasing in SNR within 2 stderr for {} method/s series over {} trials; SNR grid exact to 1e-12 ({elapsed:?})",
        prepared.methods.len() * config.sparsity_levels.len(),
        config.trials
    );
}

/// Least-squares residual norm of x against a fixed column subset, via
/// doubly-reorthogonalized Gram-Schmidt (independent of the library's
/// linear algebra and robust to duplicate atoms).
fn subset_residual(atoms: &DMatrix<f64>, x: &DVector<f64>, support: &[usize]) -> f64 {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for &j in support {
        let mut v: DVector<f64> = atoms.column(j).into_owned();
        let scale = v.norm();
        for _ in 0..2 {
            for q in &basis {
                let overlap = q.dot(&v);
                v -= q * overlap;
            }
        }
        if v.norm() > 1e-10 * scale.max(1.0) {
            let norm = v.norm();
            basis.push(v / norm);
        }
    }
    let mut residual = x.clone();
    for _ in 0..2 {
        for q in &basis {
            let overlap = q.dot(&residual);
            residual -= q * overlap;
        }
    }
    residual.norm()
}

fn best_exhaustive(atoms: &DMatrix<f64>, x: &DVector<f64>, s: usize) -> f64 {
    let m = atoms.ncols();
    let mut best = x.norm();
    for i in 0..m {
        if s >= 1 {
            best = best.min(subset_residual(atoms, x, &[i]));
        }
        for j in (i + 1)..m {
            if s >= 2 {
                best = best.min(subset_residual(atoms, x, &[i, j]));
            }
            for k in (j + 1)..m {
                if s >= 3 {
                    best = best.min(subset_residual(atoms, x, &[i, j, k]));
                }
            }
        }
    }
    best
}

#[test]
fn criterion_8_pursuit_tracks_exhaustive_oracle() {
    let mut rng = ChaCha12Rng::seed_from_u64(808);
    let mut dictionaries: Vec<DMatrix<f64>> = Vec::new();

    for (edges, triangles) in [
        (vec![[0, 1], [0, 2], [1, 2]], vec![[0, 1, 2]]),
        (vec![[0, 1], [0, 2], [1, 2]], vec![]),
    ] {
        let complex = SimplicialComplex::build(3, &edges, &triangles).unwrap();
        let spectrum = hodge_spectrum(&complex.laplacian(1).unwrap(), None).unwrap();
        let plan = default_concentration_sets(&complex, &spectrum).unwrap();
        let dictionary = build_dictionary(&spectrum, &plan, None).unwrap();
        dictionaries.push(dictionary.atoms().clone());
    }
    for _ in 0..2 {
        let mut random = DMatrix::from_fn(6, 12, |_, _| rng.gen_range(-1.0..1.0));
        for mut col in random.column_iter_mut() {
            let norm = col.norm();
            col /= norm;
        }
        dictionaries.push(random);
    }

    let mut max_ratio = 1.0f64;
    for atoms in &dictionaries {
        assert!(atoms.ncols() <= 12);
        for _ in 0..5 {
            let x = DVector::from_fn(atoms.nrows(), |_, _| rng.gen_range(-1.0..1.0));
            for s in 1..=3usize {
                let code = omp_sparsity(atoms, &x, s).unwrap();
                let residual = &x - code.reconstruct(atoms);
                for &j in &code.support {
                    let overlap = atoms.column(j).dot(&residual).abs();
                    assert!(
                        overlap <= 1e-8,
                        "residual not orthogonal to selected atom {j}: {overlap}"
                    );
                }
                let oracle = best_exhaustive(atoms, &x, s);
                if oracle > 1e-12 {
                    let ratio = code.residual_norm / oracle;
                    assert!(
                        ratio >= 1.0 - 1e-9,
                        "pursuit beat exhaustive search: {ratio}"
                    );
                    max_ratio = max_ratio.max(ratio);
                } else {
                    assert!(code.residual_norm <= 1e-8);
                }
            }
        }
    }
    println!(
        "ACCEPTANCE 8 PASS: residual orthogonality <= 1e-8; worst pursuit/oracle residual ratio {max_ratio:.6}"
    );
}

#[test]
fn criterion_9_cli_runs_are_byte_identical() {
    let bin = env!("CARGO_BIN_EXE_topo-slepians");
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("config.json");
    std::fs::write(
        &config_path,
        r#"{
  "complex": {"source": "synth", "rows": 4, "cols": 4},
  "k_tilde": [2, "full"],
  "epsilon_grid": [0.001, 0.1],
  "snr_db_grid": [0.0, 10.0],
  "sparsity_levels": [3],
  "trials": 3
}"#,
    )
    .unwrap();

    let run_all = |out: &std::path::Path| -> Vec<u8> {
        let mut transcripts = Vec::new();
        let run = |args: &[&str]| -> Vec<u8> {
            let output = Command::new(bin)
                .args(args)
                .output()
                .expect("binary must run");
            assert!(
                output.status.success(),
                "command {args:?} failed: {}",
                String::from_utf8_lossy(&output.stderr)
            );
            output.stdout
        };
        let cfg = config_path.to_str().unwrap();
        let out_s = out.to_str().unwrap();
        let complex = out.join("complex.json");
        let complex_s = complex.to_str().unwrap();
        transcripts.extend(run(&["synth", "--config", cfg, "--out-dir", out_s]));
        transcripts.extend(run(&[
            "dict",
            "--config",
            cfg,
            "--complex",
            complex_s,
            "--k-tilde",
            "2",
            "--out-dir",
            out_s,
        ]));
        transcripts.extend(run(&[
            "certify",
            "--config",
            cfg,
            "--complex",
            complex_s,
            "--atoms",
            out.join("dictionary.csv").to_str().unwrap(),
            "--sidecar",
            out.join("dictionary.json").to_str().unwrap(),
            "--trials",
            "100",
        ]));
        transcripts.extend(run(&[
            "sparsity-sweep",
            "--config",
            cfg,
            "--out-dir",
            out_s,
        ]));
        transcripts.extend(run(&["denoise-sweep", "--config", cfg, "--out-dir", out_s]));
        transcripts
    };

    let dir_a = dir.path().join("a");
    let dir_b = dir.path().join("b");
    let stdout_a = run_all(&dir_a);
    let stdout_b = run_all(&dir_b);
    assert_eq!(stdout_a, stdout_b, "stdout differs between runs");

    for name in [
        "complex.json",
        "signal.csv",
        "dictionary.csv",
        "dictionary.json",
        "sparsity.csv",
        "sparsity_metadata.json",
        "sparsity.gp",
        "denoise.csv",
        "denoise_metadata.json",
        "denoise.gp",
    ] {
        let a = std::fs::read(dir_a.join(name)).unwrap();
        let b = std::fs::read(dir_b.join(name)).unwrap();
        assert_eq!(a, b, "artifact {name} differs between runs");
        assert!(!a.is_empty(), "artifact {name} is empty");
    }
    println!(
        "ACCEPTANCE 9 PASS: all five subcommands byte-identical across consecutive runs (10 artifacts compared)"
    );
}
