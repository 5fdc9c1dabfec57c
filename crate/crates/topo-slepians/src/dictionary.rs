//! Slepian dictionaries and frame certification.
//!
//! A dictionary concatenates, in order: the concentrated vectors of every
//! upper (solenoidal-band) pair, then of every lower (gradient-band) pair,
//! then the harmonic basis vectors. The default concentration plan takes
//! one pair per edge on each side, with the 1-hop lower / upper edge
//! neighborhood as the edge set and the full gradient / solenoidal band as
//! the frequency set.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg;
use crate::slepian::{solve_slepians, ConcentrationPair};
use crate::spectral::HodgeSpectrum;
use crate::tol;

/// The concentration pairs a dictionary is built from. Lower pairs are
/// solved against gradient-side bands, upper pairs against solenoidal-side
/// bands; either list may be empty when the matching band is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcentrationPlan {
    pub lower_pairs: Vec<ConcentrationPair>,
    pub upper_pairs: Vec<ConcentrationPair>,
}

impl ConcentrationPlan {
    /// Whether the union of the lower (resp. upper) edge sets covers every
    /// edge. An empty pair list does not cover anything unless the complex
    /// has no edges.
    pub fn coverage(&self, edge_count: usize) -> (bool, bool) {
        let covers = |pairs: &[ConcentrationPair]| {
            let mut hit = vec![false; edge_count];
            for p in pairs {
                for &e in p.edge_set() {
                    hit[e] = true;
                }
            }
            hit.iter().all(|&h| h)
        };
        (covers(&self.lower_pairs), covers(&self.upper_pairs))
    }
}

/// One concentration pair per edge per side, edge sets from the 1-hop
/// lower / upper neighborhoods, bands equal to the full gradient /
/// solenoidal frequency sets. A side whose band is empty (e.g. no
/// triangles, hence no solenoidal frequencies) contributes no pairs.
pub fn default_concentration_sets(
    complex: &SimplicialComplex,
    spectrum: &HodgeSpectrum,
) -> Result<ConcentrationPlan> {
    concentration_sets(complex, spectrum, 1)
}

/// Same as [`default_concentration_sets`] with a configurable hop count.
pub fn concentration_sets(
    complex: &SimplicialComplex,
    spectrum: &HodgeSpectrum,
    hops: usize,
) -> Result<ConcentrationPlan> {
    let e = complex.edge_count();
    if spectrum.dim() != e {
        return Err(Error::DimensionMismatch {
            what: "spectrum dimension",
            expected: e,
            got: spectrum.dim(),
        });
    }
    let lower_band: Vec<usize> = spectrum.gradient_indices().collect();
    let upper_band: Vec<usize> = spectrum.solenoidal_indices().collect();

    let mut lower_pairs = Vec::new();
    let mut upper_pairs = Vec::new();
    for edge in 0..e {
        if !lower_band.is_empty() {
            let set = complex.lower_neighborhood(edge, hops)?;
            lower_pairs.push(ConcentrationPair::new(set, lower_band.clone(), e)?);
        }
        if !upper_band.is_empty() {
            let set = complex.upper_neighborhood(edge, hops)?;
            upper_pairs.push(ConcentrationPair::new(set, upper_band.clone(), e)?);
        }
    }
    Ok(ConcentrationPlan {
        lower_pairs,
        upper_pairs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AtomClass {
    Upper,
    Lower,
    Harmonic,
}

/// Provenance of one dictionary column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomMeta {
    pub class: AtomClass,
    /// Index of the originating pair within its class (or of the harmonic
    /// basis vector).
    pub set_index: usize,
    /// Rank of the atom inside its set, 0 = most concentrated.
    pub rank_in_set: usize,
    /// Concentration value; absent for harmonic atoms.
    pub concentration: Option<f64>,
}

/// A bank of Slepian atoms with their provenance.
#[derive(Debug, Clone)]
pub struct SlepianDictionary {
    atoms: DMatrix<f64>,
    meta: Vec<AtomMeta>,
    plan: ConcentrationPlan,
    k_tilde: Option<usize>,
    harmonic_count: usize,
}

impl SlepianDictionary {
    /// E x M atom matrix.
    pub fn atoms(&self) -> &DMatrix<f64> {
        &self.atoms
    }

    pub fn meta(&self) -> &[AtomMeta] {
        &self.meta
    }

    pub fn plan(&self) -> &ConcentrationPlan {
        &self.plan
    }

    pub fn k_tilde(&self) -> Option<usize> {
        self.k_tilde
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.ncols()
    }

    pub fn edge_count(&self) -> usize {
        self.atoms.nrows()
    }

    /// Numbers of upper pairs, lower pairs, and harmonic vectors.
    pub fn set_counts(&self) -> (usize, usize, usize) {
        (
            self.upper_set_count(),
            self.lower_set_count(),
            self.harmonic_count,
        )
    }

    pub fn lower_set_count(&self) -> usize {
        self.plan.lower_pairs.len()
    }

    pub fn upper_set_count(&self) -> usize {
        self.plan.upper_pairs.len()
    }

    pub fn harmonic_atom_count(&self) -> usize {
        self.harmonic_count
    }

    /// Reassembles a dictionary from its serialized parts (see `io`).
    pub fn from_parts(
        atoms: DMatrix<f64>,
        meta: Vec<AtomMeta>,
        plan: ConcentrationPlan,
        k_tilde: Option<usize>,
    ) -> Result<Self> {
        if atoms.ncols() != meta.len() {
            return Err(Error::DimensionMismatch {
                what: "atom metadata length",
                expected: atoms.ncols(),
                got: meta.len(),
            });
        }
        if atoms.ncols() == 0 {
            return Err(Error::EmptyDictionary);
        }
        let harmonic_count = meta
            .iter()
            .filter(|m| m.class == AtomClass::Harmonic)
            .count();
        Ok(Self {
            atoms,
            meta,
            plan,
            k_tilde,
            harmonic_count,
        })
    }
}

/// Builds the dictionary for `plan`, keeping at most `k_tilde` atoms per
/// concentration set (all of them when `None`), and appending the harmonic
/// basis. Column order: upper sets, lower sets, harmonic.
pub fn build_dictionary(
    spectrum: &HodgeSpectrum,
    plan: &ConcentrationPlan,
    k_tilde: Option<usize>,
) -> Result<SlepianDictionary> {
    if k_tilde == Some(0) {
        return Err(Error::EmptyDictionary);
    }
    let dim = spectrum.dim();
    let mut columns: Vec<DVector<f64>> = Vec::new();
    let mut meta: Vec<AtomMeta> = Vec::new();

    let mut push_sets = |pairs: &[ConcentrationPair], class: AtomClass| -> Result<()> {
        for (set_index, pair) in pairs.iter().enumerate() {
            let set = solve_slepians(spectrum, pair, k_tilde, None)?;
            for r in 0..set.count() {
                columns.push(set.vectors.column(r).clone_owned());
                meta.push(AtomMeta {
                    class,
                    set_index,
                    rank_in_set: r,
                    concentration: Some(set.concentrations[r]),
                });
            }
        }
        Ok(())
    };
    push_sets(&plan.upper_pairs, AtomClass::Upper)?;
    push_sets(&plan.lower_pairs, AtomClass::Lower)?;

    let harmonic_count = spectrum.harmonic_count();
    for (i, col) in spectrum.harmonic_indices().enumerate() {
        columns.push(spectrum.basis().column(col).clone_owned());
        meta.push(AtomMeta {
            class: AtomClass::Harmonic,
            set_index: i,
            rank_in_set: i,
            concentration: None,
        });
    }

    if columns.is_empty() {
        return Err(Error::EmptyDictionary);
    }
    let mut atoms = DMatrix::zeros(dim, columns.len());
    for (j, col) in columns.iter().enumerate() {
        atoms.set_column(j, col);
    }
    Ok(SlepianDictionary {
        atoms,
        meta,
        plan: plan.clone(),
        k_tilde,
        harmonic_count,
    })
}

/// Frame bounds and completeness diagnostics for a dictionary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameCertificate {
    /// Smallest eigenvalue of the frame operator G = sum psi psi^T.
    pub lower_bound: f64,
    /// Largest eigenvalue of G (Rayleigh upper frame bound).
    pub upper_bound_rr: f64,
    /// Counting upper bound K_u + K_d + K_h.
    pub upper_bound_thm: f64,
    /// Whether the lower atoms span the full gradient subspace.
    pub lower_complete: bool,
    /// Whether the upper atoms span the full solenoidal subspace.
    pub upper_complete: bool,
    /// Numerical rank of G.
    pub frame_operator_rank: usize,
    pub edge_count: usize,
    pub lower_set_count: usize,
    pub upper_set_count: usize,
    pub harmonic_count: usize,
}

impl FrameCertificate {
    /// A strictly positive lower bound relative to the scale of G.
    pub fn is_frame(&self) -> bool {
        self.lower_bound > tol::RANK_REL * self.upper_bound_rr.max(1.0)
    }
}

/// Certifies the frame bounds of a dictionary against the spectrum it was
/// built from.
pub fn frame_certificate(
    dict: &SlepianDictionary,
    spectrum: &HodgeSpectrum,
) -> Result<FrameCertificate> {
    if dict.edge_count() != spectrum.dim() {
        return Err(Error::DimensionMismatch {
            what: "dictionary rows",
            expected: spectrum.dim(),
            got: dict.edge_count(),
        });
    }
    let e = dict.edge_count();
    let gram = dict.atoms() * dict.atoms().transpose();
    let eig = linalg::sym_eigen(&gram)?;
    let lower_bound = eig.values.first().copied().unwrap_or(0.0);
    let upper_bound_rr = eig.values.last().copied().unwrap_or(0.0);
    let rank_cut = tol::RANK_REL * upper_bound_rr.max(f64::MIN_POSITIVE);
    let frame_operator_rank = linalg::count_above(&eig.values, rank_cut);

    let class_rank = |class: AtomClass| -> Result<usize> {
        let idx: Vec<usize> = dict
            .meta()
            .iter()
            .enumerate()
            .filter(|(_, m)| m.class == class)
            .map(|(i, _)| i)
            .collect();
        if idx.is_empty() {
            return Ok(0);
        }
        let sub = linalg::gather_columns(dict.atoms(), &idx);
        let g = &sub * sub.transpose();
        let eig = linalg::sym_eigen(&g)?;
        let top = eig.values.last().copied().unwrap_or(0.0);
        Ok(linalg::count_above(
            &eig.values,
            tol::RANK_REL * top.max(f64::MIN_POSITIVE),
        ))
    };
    let lower_complete = class_rank(AtomClass::Lower)? == spectrum.gradient_count();
    let upper_complete = class_rank(AtomClass::Upper)? == spectrum.solenoidal_count();

    let (k_u, k_d, k_h) = dict.set_counts();
    Ok(FrameCertificate {
        lower_bound,
        upper_bound_rr,
        upper_bound_thm: (k_u + k_d + k_h) as f64,
        lower_complete,
        upper_complete,
        frame_operator_rank,
        edge_count: e,
        lower_set_count: k_d,
        upper_set_count: k_u,
        harmonic_count: k_h,
    })
}

/// Monte-Carlo check of the certified bounds on random unit vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalFrameReport {
    pub trials: usize,
    pub min_quotient: f64,
    pub max_quotient: f64,
    pub violations: usize,
}

/// Evaluates sum_i |<psi_i, v>|^2 on `trials` random unit vectors and counts
/// violations of [A - tol, B_thm + tol].
pub fn empirical_frame_check(
    dict: &SlepianDictionary,
    cert: &FrameCertificate,
    trials: usize,
    seed: u64,
) -> EmpiricalFrameReport {
    let e = dict.edge_count();
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let mut min_q = f64::INFINITY;
    let mut max_q = f64::NEG_INFINITY;
    let mut violations = 0usize;
    for _ in 0..trials {
        let mut v = DVector::from_fn(e, |_, _| StandardNormal.sample(&mut rng));
        let norm = v.norm();
        if norm == 0.0 {
            continue;
        }
        v /= norm;
        let q = dict.atoms().tr_mul(&v).norm_squared();
        min_q = min_q.min(q);
        max_q = max_q.max(q);
        if q < cert.lower_bound - tol::ORTH || q > cert.upper_bound_thm + tol::ORTH {
            violations += 1;
        }
    }
    EmpiricalFrameReport {
        trials,
        min_quotient: min_q,
        max_quotient: max_q,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::hodge_spectrum;
    use approx::assert_abs_diff_eq;

    fn filled_triangle() -> (SimplicialComplex, HodgeSpectrum) {
        let c = SimplicialComplex::build(3, &[[0, 1], [0, 2], [1, 2]], &[[0, 1, 2]]).unwrap();
        let s = hodge_spectrum(&c.laplacian(1).unwrap(), None).unwrap();
        (c, s)
    }

    fn hollow_triangle() -> (SimplicialComplex, HodgeSpectrum) {
        let c = SimplicialComplex::build(3, &[[0, 1], [0, 2], [1, 2]], &[]).unwrap();
        let s = hodge_spectrum(&c.laplacian(1).unwrap(), None).unwrap();
        (c, s)
    }

    #[test]
    fn default_plan_covers_and_sizes() {
        let (c, s) = filled_triangle();
        let plan = default_concentration_sets(&c, &s).unwrap();
        assert_eq!(plan.lower_pairs.len(), 3);
        assert_eq!(plan.upper_pairs.len(), 3);
        assert_eq!(plan.coverage(c.edge_count()), (true, true));
        for p in &plan.lower_pairs {
            assert_eq!(p.edge_set(), &[0, 1, 2]);
            assert_eq!(p.freq_set(), &[0, 1]);
        }
        for p in &plan.upper_pairs {
            assert_eq!(p.freq_set(), &[2]);
        }
    }

    #[test]
    fn filled_triangle_full_dictionary_has_nine_atoms() {
        let (c, s) = filled_triangle();
        let plan = default_concentration_sets(&c, &s).unwrap();
        let dict = build_dictionary(&s, &plan, None).unwrap();
        assert_eq!(dict.atom_count(), 9);
        let upper = dict
            .meta()
            .iter()
            .filter(|m| m.class == AtomClass::Upper)
            .count();
        let lower = dict
            .meta()
            .iter()
            .filter(|m| m.class == AtomClass::Lower)
            .count();
        assert_eq!((upper, lower), (3, 6));
        assert_eq!(dict.meta()[0].class, AtomClass::Upper);
        for j in 0..dict.atom_count() {
            assert_abs_diff_eq!(dict.atoms().column(j).norm(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn hollow_triangle_dictionary_skips_upper_and_appends_harmonic() {
        let (c, s) = hollow_triangle();
        let plan = default_concentration_sets(&c, &s).unwrap();
        assert!(plan.upper_pairs.is_empty());
        let dict = build_dictionary(&s, &plan, None).unwrap();
        assert_eq!(dict.atom_count(), 7);
        assert_eq!(dict.harmonic_atom_count(), 1);
        let last = dict.meta().last().unwrap();
        assert_eq!(last.class, AtomClass::Harmonic);
        assert_eq!(last.concentration, None);
        let cert = frame_certificate(&dict, &s).unwrap();
        assert_eq!(cert.upper_set_count, 0);
        assert_eq!(cert.harmonic_count, 1);
        assert!(cert.upper_complete);
        assert_abs_diff_eq!(cert.upper_bound_thm, 4.0, epsilon = 0.0);
        assert!(cert.upper_bound_rr <= cert.upper_bound_thm + 1e-10);
    }

    #[test]
    fn k_tilde_caps_per_set_rank() {
        let (c, s) = filled_triangle();
        let plan = default_concentration_sets(&c, &s).unwrap();
        let dict = build_dictionary(&s, &plan, Some(1)).unwrap();
        assert_eq!(dict.atom_count(), 6);
        for m in dict.meta() {
            assert_eq!(m.rank_in_set, 0);
        }
    }

    #[test]
    fn filled_triangle_certificate() {
        let (c, s) = filled_triangle();
        let plan = default_concentration_sets(&c, &s).unwrap();
        let dict = build_dictionary(&s, &plan, None).unwrap();
        let cert = frame_certificate(&dict, &s).unwrap();
        assert!(cert.lower_complete && cert.upper_complete);
        assert!(cert.is_frame());
        assert_abs_diff_eq!(cert.upper_bound_thm, 6.0, epsilon = 0.0);
        assert!(cert.upper_bound_rr <= cert.upper_bound_thm + 1e-10);
        assert!(cert.lower_bound > 1e-8);
        assert_eq!(cert.frame_operator_rank, 3);
    }

    #[test]
    fn orthonormal_basis_is_a_tight_frame() {
        let (c, s) = filled_triangle();
        let e = c.edge_count();
        let all_edges: Vec<usize> = (0..e).collect();
        let plan = ConcentrationPlan {
            lower_pairs: s
                .gradient_indices()
                .map(|f| ConcentrationPair::new(all_edges.clone(), vec![f], e).unwrap())
                .collect(),
            upper_pairs: s
                .solenoidal_indices()
                .map(|f| ConcentrationPair::new(all_edges.clone(), vec![f], e).unwrap())
                .collect(),
        };
        let dict = build_dictionary(&s, &plan, None).unwrap();
        assert_eq!(dict.atom_count(), e);
        let cert = frame_certificate(&dict, &s).unwrap();
        assert_abs_diff_eq!(cert.lower_bound, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(cert.upper_bound_rr, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(cert.upper_bound_thm, e as f64, epsilon = 0.0);
    }

    #[test]
    fn coverage_broken_plan_is_rank_deficient() {
        // Filled triangle plus a disjoint edge {3, 4}: dropping the pair
        // seeded at the isolated edge removes its gradient direction from
        // every remaining atom, so the frame collapses.
        let c =
            SimplicialComplex::build(5, &[[0, 1], [0, 2], [1, 2], [3, 4]], &[[0, 1, 2]]).unwrap();
        let s = hodge_spectrum(&c.laplacian(1).unwrap(), None).unwrap();
        let isolated = c.edge_index(3, 4).unwrap();
        let mut plan = default_concentration_sets(&c, &s).unwrap();
        plan.lower_pairs.retain(|p| p.edge_set() != [isolated]);
        let (lower_cov, _) = plan.coverage(c.edge_count());
        assert!(!lower_cov);

        let dict = build_dictionary(&s, &plan, None).unwrap();
        let cert = frame_certificate(&dict, &s).unwrap();
        assert!(!cert.lower_complete);
        assert!(cert.lower_bound.abs() <= 1e-8);
        assert!(cert.frame_operator_rank < c.edge_count());
        assert!(!cert.is_frame());
    }

    #[test]
    fn frame_operator_splits_by_class() {
        let (c, s) = filled_triangle();
        let plan = default_concentration_sets(&c, &s).unwrap();
        let dict = build_dictionary(&s, &plan, None).unwrap();
        let e = c.edge_count();
        let mut by_class = std::collections::HashMap::new();
        for (j, m) in dict.meta().iter().enumerate() {
            by_class
                .entry(m.class as usize)
                .or_insert_with(Vec::new)
                .push(j);
        }
        let mut total = DMatrix::zeros(e, e);
        let mut parts = Vec::new();
        for idx in by_class.values() {
            let sub = linalg::gather_columns(dict.atoms(), idx);
            let g = &sub * sub.transpose();
            total += &g;
            parts.push(g);
        }
        let gram = dict.atoms() * dict.atoms().transpose();
        assert!((&total - &gram).amax() < 1e-10);
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                assert!((&parts[i] * &parts[j]).amax() < 1e-10);
            }
        }
    }

    #[test]
    fn empirical_check_within_bounds() {
        let (c, s) = filled_triangle();
        let plan = default_concentration_sets(&c, &s).unwrap();
        let dict = build_dictionary(&s, &plan, None).unwrap();
        let cert = frame_certificate(&dict, &s).unwrap();
        let report = empirical_frame_check(&dict, &cert, 500, 9);
        assert_eq!(report.violations, 0);
        assert!(report.min_quotient >= cert.lower_bound - 1e-8);
        assert!(report.max_quotient <= cert.upper_bound_thm + 1e-8);
    }

    #[test]
    fn empty_plan_yields_empty_dictionary_error() {
        let (_, s) = hollow_triangle();
        // Spectrum of a complex with no harmonic space and no pairs at all.
        let c2 = SimplicialComplex::build(2, &[[0, 1]], &[]).unwrap();
        let s2 = hodge_spectrum(&c2.laplacian(1).unwrap(), None).unwrap();
        assert_eq!(s2.harmonic_count(), 0);
        let plan = ConcentrationPlan {
            lower_pairs: vec![],
            upper_pairs: vec![],
        };
        let err = build_dictionary(&s2, &plan, None).unwrap_err();
        assert!(matches!(err, Error::EmptyDictionary));
        let _ = s;
    }
}
