//! Maximally edge-concentrated, perfectly band-limited vectors.
//!
//! Given an edge set S and a frequency set F, the concentration operator
//! B_F C_S B_F (with C_S the diagonal edge limiter and B_F = U_F U_F^T the
//! band limiter) is solved in reduced coordinates: its nonzero eigenpairs
//! are those of M = U_F^T C_S U_F, an |F| x |F| problem, and each reduced
//! eigenvector z lifts to a perfectly band-limited vector psi = U_F z. When
//! |S| < |F| the same nonzero spectrum is read off the |S| x |S| Gram
//! W W^T of W = rows S of U_F, which keeps the per-set cost proportional to
//! the neighborhood size rather than the band size.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::spectral::HodgeSpectrum;
use crate::tol;

/// An edge set and a frequency set, both sorted ascending and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcentrationPair {
    edge_set: Vec<usize>,
    freq_set: Vec<usize>,
}

impl ConcentrationPair {
    /// Validates both sets against the signal dimension: non-empty and in
    /// range. Input order is irrelevant; duplicates are collapsed.
    pub fn new(mut edge_set: Vec<usize>, mut freq_set: Vec<usize>, dim: usize) -> Result<Self> {
        edge_set.sort_unstable();
        edge_set.dedup();
        freq_set.sort_unstable();
        freq_set.dedup();
        if edge_set.is_empty() {
            return Err(Error::EmptySet { what: "edge" });
        }
        if freq_set.is_empty() {
            return Err(Error::EmptySet { what: "frequency" });
        }
        for &i in edge_set.iter().chain(freq_set.iter()) {
            if i >= dim {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    bound: dim,
                });
            }
        }
        Ok(Self { edge_set, freq_set })
    }

    pub fn edge_set(&self) -> &[usize] {
        &self.edge_set
    }

    pub fn freq_set(&self) -> &[usize] {
        &self.freq_set
    }
}

/// Diagonal indicator projector C_S onto the edges in `set`.
pub fn edge_limiter(set: &[usize], dim: usize) -> Result<DMatrix<f64>> {
    let mut m = DMatrix::zeros(dim, dim);
    for &i in set {
        if i >= dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: dim,
            });
        }
        m[(i, i)] = 1.0;
    }
    Ok(m)
}

/// Spectral projector B_F = U_F U_F^T onto the span of the selected
/// frequency columns.
pub fn band_limiter(spectrum: &HodgeSpectrum, freq_set: &[usize]) -> Result<DMatrix<f64>> {
    let u_f = spectrum.basis_columns(freq_set)?;
    Ok(&u_f * u_f.transpose())
}

/// Orthonormal concentrated vectors for one concentration pair, columns
/// ordered by decreasing concentration.
#[derive(Debug, Clone)]
pub struct SlepianSet {
    pub vectors: DMatrix<f64>,
    pub concentrations: Vec<f64>,
    pub pair: ConcentrationPair,
}

impl SlepianSet {
    pub fn count(&self) -> usize {
        self.vectors.ncols()
    }
}

/// Solves the concentration problem for `pair`: eigenpairs of
/// B_F C_S B_F with concentration above `tol` (default
/// `tol::SLEPIAN_RANK_ABS`), keeping at most `k_max` of them.
pub fn solve_slepians(
    spectrum: &HodgeSpectrum,
    pair: &ConcentrationPair,
    k_max: Option<usize>,
    tol: Option<f64>,
) -> Result<SlepianSet> {
    let cutoff = tol.unwrap_or(tol::SLEPIAN_RANK_ABS);
    let u_f = spectrum.basis_columns(pair.freq_set())?;
    let w = linalg::gather_rows(&u_f, pair.edge_set());
    let s = pair.edge_set().len();
    let f = pair.freq_set().len();

    let (mut vectors, concentrations) = if s < f {
        let gram = &w * w.transpose();
        let eig = linalg::sym_eigen(&gram)?;
        let keep = keep_indices(&eig.values, cutoff, k_max);
        let mut vectors = DMatrix::zeros(spectrum.dim(), keep.len());
        let mut lambdas = Vec::with_capacity(keep.len());
        for (dst, &i) in keep.iter().enumerate() {
            let y = eig.vectors.column(i);
            let z = w.tr_mul(&y) / eig.values[i].sqrt();
            vectors.set_column(dst, &(&u_f * z));
            lambdas.push(eig.values[i]);
        }
        (vectors, lambdas)
    } else {
        let m = w.tr_mul(&w);
        let eig = linalg::sym_eigen(&m)?;
        let keep = keep_indices(&eig.values, cutoff, k_max);
        let mut vectors = DMatrix::zeros(spectrum.dim(), keep.len());
        let mut lambdas = Vec::with_capacity(keep.len());
        for (dst, &i) in keep.iter().enumerate() {
            vectors.set_column(dst, &(&u_f * eig.vectors.column(i)));
            lambdas.push(eig.values[i]);
        }
        (vectors, lambdas)
    };

    linalg::canonicalize_signs(&mut vectors);
    Ok(SlepianSet {
        vectors,
        concentrations,
        pair: pair.clone(),
    })
}

/// Dual form of the concentration problem: eigenpairs of C_S B_F C_S.
/// The returned vectors are perfectly edge-limited (supported on S) and
/// share the nonzero concentration spectrum of `solve_slepians`.
pub fn dual_slepians(
    spectrum: &HodgeSpectrum,
    pair: &ConcentrationPair,
    k_max: Option<usize>,
    tol: Option<f64>,
) -> Result<SlepianSet> {
    let cutoff = tol.unwrap_or(tol::SLEPIAN_RANK_ABS);
    let u_f = spectrum.basis_columns(pair.freq_set())?;
    let w = linalg::gather_rows(&u_f, pair.edge_set());
    let gram = &w * w.transpose();
    let eig = linalg::sym_eigen(&gram)?;
    let keep = keep_indices(&eig.values, cutoff, k_max);

    let mut vectors = DMatrix::zeros(spectrum.dim(), keep.len());
    let mut lambdas = Vec::with_capacity(keep.len());
    for (dst, &i) in keep.iter().enumerate() {
        let y = eig.vectors.column(i);
        let mut col = DVector::zeros(spectrum.dim());
        for (pos, &edge) in pair.edge_set().iter().enumerate() {
            col[edge] = y[pos];
        }
        vectors.set_column(dst, &col);
        lambdas.push(eig.values[i]);
    }
    linalg::canonicalize_signs(&mut vectors);
    Ok(SlepianSet {
        vectors,
        concentrations: lambdas,
        pair: pair.clone(),
    })
}

/// Indices of eigenvalues above `cutoff`, in descending eigenvalue order,
/// truncated to `k_max`. `values` is ascending.
fn keep_indices(values: &[f64], cutoff: f64, k_max: Option<usize>) -> Vec<usize> {
    let mut keep: Vec<usize> = (0..values.len())
        .rev()
        .filter(|&i| values[i] > cutoff)
        .collect();
    if let Some(k) = k_max {
        keep.truncate(k);
    }
    keep
}
