//! Hodge spectrum, simplicial Fourier transform, and Hodge decomposition.
//!
//! The frequency basis for k-simplex signals is assembled from three
//! separately computed families: eigenvectors of the down Laplacian with
//! nonzero eigenvalue (gradient frequencies), eigenvectors of the up
//! Laplacian with nonzero eigenvalue (solenoidal/curl frequencies), and an
//! orthonormal basis of the kernel of the full Laplacian (harmonic
//! frequencies). Columns are ordered gradient, solenoidal, harmonic, each
//! family by ascending eigenvalue.

use std::ops::Range;

use nalgebra::{DMatrix, DVector};

use crate::complex::{LaplacianTriple, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg;
use crate::tol;

/// Real-valued signal indexed by the canonical edge order of a complex.
pub type EdgeSignal = DVector<f64>;

/// Orthonormal frequency basis of a Hodge Laplacian, partitioned into
/// gradient, solenoidal, and harmonic families.
#[derive(Debug, Clone)]
pub struct HodgeSpectrum {
    basis: DMatrix<f64>,
    gradient_eigs: Vec<f64>,
    solenoidal_eigs: Vec<f64>,
    harmonic_count: usize,
}

impl HodgeSpectrum {
    /// Dimension of the underlying signal space (E for edge signals).
    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Full orthonormal basis, one frequency per column.
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn gradient_count(&self) -> usize {
        self.gradient_eigs.len()
    }

    pub fn solenoidal_count(&self) -> usize {
        self.solenoidal_eigs.len()
    }

    pub fn harmonic_count(&self) -> usize {
        self.harmonic_count
    }

    /// Ascending nonzero eigenvalues of the down Laplacian.
    pub fn gradient_eigenvalues(&self) -> &[f64] {
        &self.gradient_eigs
    }

    /// Ascending nonzero eigenvalues of the up Laplacian.
    pub fn solenoidal_eigenvalues(&self) -> &[f64] {
        &self.solenoidal_eigs
    }

    pub fn gradient_indices(&self) -> Range<usize> {
        0..self.gradient_count()
    }

    pub fn solenoidal_indices(&self) -> Range<usize> {
        self.gradient_count()..self.gradient_count() + self.solenoidal_count()
    }

    pub fn harmonic_indices(&self) -> Range<usize> {
        self.gradient_count() + self.solenoidal_count()..self.dim()
    }

    /// Columns of the basis selected by frequency indices.
    pub fn basis_columns(&self, freq_set: &[usize]) -> Result<DMatrix<f64>> {
        for &f in freq_set {
            if f >= self.dim() {
                return Err(Error::IndexOutOfRange {
                    index: f,
                    bound: self.dim(),
                });
            }
        }
        Ok(linalg::gather_columns(&self.basis, freq_set))
    }
}

/// Computes the Hodge spectrum of a Laplacian triple. `tol` is the absolute
/// eigenvalue cutoff separating rank from kernel; by default it is
/// `tol::RANK_REL` times the largest eigenvalue of the full Laplacian.
///
/// Fails with `PartitionMismatch` if the three families do not add up to the
/// full dimension, which would mean the cutoff splits a borderline
/// eigenvalue inconsistently between the down and up parts.
pub fn hodge_spectrum(lap: &LaplacianTriple, tol: Option<f64>) -> Result<HodgeSpectrum> {
    let dim = lap.dim();
    let full = linalg::sym_eigen(&lap.full)?;
    let lambda_max = full.values.last().copied().unwrap_or(0.0).max(0.0);
    let cutoff = tol.unwrap_or(if lambda_max > 0.0 {
        tol::RANK_REL * lambda_max
    } else {
        f64::EPSILON
    });

    let down = linalg::sym_eigen(&lap.down)?;
    let up = linalg::sym_eigen(&lap.up)?;

    let grad_idx: Vec<usize> = (0..dim).filter(|&i| down.values[i] > cutoff).collect();
    let sol_idx: Vec<usize> = (0..dim).filter(|&i| up.values[i] > cutoff).collect();
    let harm_idx: Vec<usize> = (0..dim).filter(|&i| full.values[i] <= cutoff).collect();

    if grad_idx.len() + sol_idx.len() + harm_idx.len() != dim {
        return Err(Error::PartitionMismatch {
            gradient: grad_idx.len(),
            solenoidal: sol_idx.len(),
            harmonic: harm_idx.len(),
            edges: dim,
        });
    }

    let mut basis = DMatrix::zeros(dim, dim);
    let mut col = 0usize;
    for &i in &grad_idx {
        basis.set_column(col, &down.vectors.column(i));
        col += 1;
    }
    for &i in &sol_idx {
        basis.set_column(col, &up.vectors.column(i));
        col += 1;
    }
    for &i in &harm_idx {
        basis.set_column(col, &full.vectors.column(i));
        col += 1;
    }

    Ok(HodgeSpectrum {
        basis,
        gradient_eigs: grad_idx.iter().map(|&i| down.values[i]).collect(),
        solenoidal_eigs: sol_idx.iter().map(|&i| up.values[i]).collect(),
        harmonic_count: harm_idx.len(),
    })
}

/// Simplicial Fourier transform: coordinates of `x` in the frequency basis.
pub fn sft(spectrum: &HodgeSpectrum, x: &EdgeSignal) -> Result<DVector<f64>> {
    if x.len() != spectrum.dim() {
        return Err(Error::DimensionMismatch {
            what: "signal length",
            expected: spectrum.dim(),
            got: x.len(),
        });
    }
    Ok(spectrum.basis.tr_mul(x))
}

/// Inverse simplicial Fourier transform.
pub fn inverse_sft(spectrum: &HodgeSpectrum, xhat: &DVector<f64>) -> Result<EdgeSignal> {
    if xhat.len() != spectrum.dim() {
        return Err(Error::DimensionMismatch {
            what: "spectral coefficient length",
            expected: spectrum.dim(),
            got: xhat.len(),
        });
    }
    Ok(&spectrum.basis * xhat)
}

/// Orthogonal split of an edge signal into irrotational, solenoidal, and
/// harmonic parts.
#[derive(Debug, Clone)]
pub struct HodgeDecomposition {
    pub irrotational: EdgeSignal,
    pub solenoidal: EdgeSignal,
    pub harmonic: EdgeSignal,
}

/// Decomposes an edge signal by projecting onto the range of B_1^T
/// (irrotational part) and the range of B_2 (solenoidal part); the harmonic
/// part is the remainder. The projectors are built from singular value
/// decompositions of the incidence matrices, independently of
/// `hodge_spectrum`.
pub fn hodge_decompose(complex: &SimplicialComplex, x: &EdgeSignal) -> Result<HodgeDecomposition> {
    let e = complex.edge_count();
    if x.len() != e {
        return Err(Error::DimensionMismatch {
            what: "signal length",
            expected: e,
            got: x.len(),
        });
    }
    let b1 = complex.incidence(1)?.to_f64();
    let grad_range = linalg::orthonormal_range(&b1.transpose())?;
    let irrotational = linalg::project_onto(&grad_range, x);

    let solenoidal = if complex.order() >= 2 && complex.triangle_count() > 0 {
        let b2 = complex.incidence(2)?.to_f64();
        let curl_range = linalg::orthonormal_range(&b2)?;
        linalg::project_onto(&curl_range, x)
    } else {
        DVector::zeros(e)
    };

    let harmonic = x - &irrotational - &solenoidal;
    Ok(HodgeDecomposition {
        irrotational,
        solenoidal,
        harmonic,
    })
}
