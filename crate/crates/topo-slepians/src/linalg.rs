//! Deterministic dense linear-algebra helpers.
//!
//! Eigenvectors and orthonormal bases returned from this module follow a
//! fixed sign convention: within each column the entry of largest magnitude
//! (smallest index on ties) is made positive. This pins an otherwise
//! arbitrary per-vector sign so serialized artifacts are reproducible.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tol;

/// Eigendecomposition of a symmetric matrix with eigenvalues sorted
/// ascending and sign-canonicalized eigenvectors in matching column order.
#[derive(Debug, Clone)]
pub struct SortedEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

pub fn sym_eigen(matrix: &DMatrix<f64>) -> Result<SortedEigen> {
    assert_eq!(matrix.nrows(), matrix.ncols(), "matrix must be square");
    let n = matrix.nrows();
    if n == 0 {
        return Ok(SortedEigen {
            values: Vec::new(),
            vectors: DMatrix::zeros(0, 0),
        });
    }
    let eigen = nalgebra::SymmetricEigen::try_new(matrix.clone(), f64::EPSILON, 0)
        .ok_or(Error::EigenFailure)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eigen.eigenvalues[a]
            .partial_cmp(&eigen.eigenvalues[b])
            .unwrap()
            .then(a.cmp(&b))
    });

    let values: Vec<f64> = order.iter().map(|&i| eigen.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eigen.eigenvectors.column(src));
    }
    canonicalize_signs(&mut vectors);
    Ok(SortedEigen { values, vectors })
}

/// Flips column signs so the largest-magnitude entry (smallest index on
/// ties) of every column is nonnegative.
pub fn canonicalize_signs(matrix: &mut DMatrix<f64>) {
    for mut col in matrix.column_iter_mut() {
        let mut lead = 0usize;
        let mut best = f64::NEG_INFINITY;
        for (i, v) in col.iter().enumerate() {
            if v.abs() > best {
                best = v.abs();
                lead = i;
            }
        }
        if col[lead] < 0.0 {
            col.neg_mut();
        }
    }
}

/// Number of values strictly above `tol`.
pub fn count_above(values: &[f64], tol: f64) -> usize {
    values.iter().filter(|&&v| v > tol).count()
}

/// Orthonormal basis of the range of `m`, via rank-revealing column-pivoted
/// QR: the first r columns of Q, where r counts diagonal entries of R above
/// `tol::RANK_REL` times the largest one. (The SVD is deliberately avoided
/// here: with clustered singular values next to a kernel it can return
/// left vectors that are not singular vectors, leaking kernel directions
/// into the computed range.)
pub fn orthonormal_range(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Ok(DMatrix::zeros(m.nrows(), 0));
    }
    let qr = m.clone().col_piv_qr();
    let r = qr.r();
    let diag: Vec<f64> = (0..r.nrows().min(r.ncols()))
        .map(|i| r[(i, i)].abs())
        .collect();
    // Column pivoting makes the diagonal magnitudes non-increasing, so the
    // first entry is the scale reference.
    let top = diag.first().copied().unwrap_or(0.0);
    if !(top > 0.0) {
        return Ok(DMatrix::zeros(m.nrows(), 0));
    }
    let rank = diag
        .iter()
        .take_while(|&&d| d > tol::RANK_REL * top)
        .count();
    let q = qr.q();
    let mut basis = DMatrix::zeros(m.nrows(), rank);
    for j in 0..rank {
        basis.set_column(j, &q.column(j));
    }
    canonicalize_signs(&mut basis);
    Ok(basis)
}

/// Orthogonal projection of `x` onto the span of the orthonormal columns `q`.
pub fn project_onto(q: &DMatrix<f64>, x: &DVector<f64>) -> DVector<f64> {
    if q.ncols() == 0 {
        return DVector::zeros(x.len());
    }
    q * (q.tr_mul(x))
}

/// Gathers the listed columns of `m` into a new matrix.
pub fn gather_columns(m: &DMatrix<f64>, idx: &[usize]) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(m.nrows(), idx.len());
    for (dst, &src) in idx.iter().enumerate() {
        out.set_column(dst, &m.column(src));
    }
    out
}

/// Gathers the listed rows of `m` into a new matrix.
pub fn gather_rows(m: &DMatrix<f64>, idx: &[usize]) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(idx.len(), m.ncols());
    for (dst, &src) in idx.iter().enumerate() {
        out.set_row(dst, &m.row(src));
    }
    out
}
