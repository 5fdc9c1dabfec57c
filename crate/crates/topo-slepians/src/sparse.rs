//! Orthogonal matching pursuit over an arbitrary unit-norm atom matrix.
//!
//! Each iteration selects the unselected atom with the largest absolute
//! residual correlation (lowest column index on ties) and refits all active
//! coefficients by least squares over the support, so the residual stays
//! orthogonal to every selected atom.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// Why the pursuit stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// Squared residual reached the error budget.
    ToleranceReached,
    /// Requested number of atoms selected.
    TargetSparsity,
    /// Residual became numerically zero before the budget was spent.
    ResidualExhausted,
    /// Iteration cap hit; the returned code is a valid partial solution.
    MaxIterations,
}

/// Result of a pursuit: selected atoms (in selection order), their
/// least-squares coefficients, and the residual trajectory.
#[derive(Debug, Clone)]
pub struct SparseCode {
    pub support: Vec<usize>,
    pub coefficients: DVector<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
    /// Residual norms, starting with the input norm, one entry per iteration.
    pub residual_history: Vec<f64>,
    pub stop: StopReason,
}

impl SparseCode {
    /// Reconstruction D_S c from the selected atoms.
    pub fn reconstruct(&self, atoms: &DMatrix<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(atoms.nrows());
        for (pos, &j) in self.support.iter().enumerate() {
            out.axpy(self.coefficients[pos], &atoms.column(j), 1.0);
        }
        out
    }
}

enum Budget {
    SquaredError(f64),
    Sparsity(usize),
}

/// Error-constrained pursuit: stops once ||x - D c||^2 <= epsilon.
/// `max_iter` defaults to the signal dimension. Fails with `NoProgress` if
/// the correlations vanish while the budget is unmet; an exhausted
/// iteration cap is reported through `StopReason::MaxIterations` instead.
pub fn omp_error(
    atoms: &DMatrix<f64>,
    x: &DVector<f64>,
    epsilon: f64,
    max_iter: Option<usize>,
) -> Result<SparseCode> {
    let cap = max_iter.unwrap_or(atoms.nrows());
    omp(atoms, x, Budget::SquaredError(epsilon), cap)
}

/// Sparsity-constrained pursuit: selects exactly `s` atoms, fewer if the
/// residual hits zero first.
pub fn omp_sparsity(atoms: &DMatrix<f64>, x: &DVector<f64>, s: usize) -> Result<SparseCode> {
    omp(atoms, x, Budget::Sparsity(s), s)
}

fn omp(
    atoms: &DMatrix<f64>,
    x: &DVector<f64>,
    budget: Budget,
    max_iter: usize,
) -> Result<SparseCode> {
    if atoms.ncols() == 0 {
        return Err(Error::EmptyDictionary);
    }
    if atoms.nrows() != x.len() {
        return Err(Error::DimensionMismatch {
            what: "signal length",
            expected: atoms.nrows(),
            got: x.len(),
        });
    }

    let x_norm = x.norm();
    let zero_floor = tol::OMP_ZERO_RESIDUAL_REL * x_norm;
    let mut residual = x.clone();
    let mut residual_norm = x_norm;
    let mut history = vec![x_norm];
    let mut selected = vec![false; atoms.ncols()];
    let mut support: Vec<usize> = Vec::new();
    let mut active = DMatrix::<f64>::zeros(atoms.nrows(), 0);
    let mut gram = DMatrix::<f64>::zeros(0, 0);
    let mut rhs = DVector::<f64>::zeros(0);
    let mut coefficients = DVector::<f64>::zeros(0);

    loop {
        match budget {
            Budget::SquaredError(eps) => {
                if residual_norm * residual_norm <= eps {
                    return Ok(finish(
                        support,
                        coefficients,
                        residual_norm,
                        history,
                        StopReason::ToleranceReached,
                    ));
                }
            }
            Budget::Sparsity(s) => {
                if support.len() == s {
                    return Ok(finish(
                        support,
                        coefficients,
                        residual_norm,
                        history,
                        StopReason::TargetSparsity,
                    ));
                }
            }
        }
        if residual_norm <= zero_floor {
            return Ok(finish(
                support,
                coefficients,
                residual_norm,
                history,
                StopReason::ResidualExhausted,
            ));
        }
        if support.len() >= max_iter {
            return Ok(finish(
                support,
                coefficients,
                residual_norm,
                history,
                StopReason::MaxIterations,
            ));
        }

        let correlations = atoms.tr_mul(&residual);
        let mut best = 0usize;
        let mut best_abs = -1.0f64;
        for (j, &c) in correlations.iter().enumerate() {
            if !selected[j] && c.abs() > best_abs {
                best_abs = c.abs();
                best = j;
            }
        }
        if best_abs < tol::OMP_NO_PROGRESS {
            return Err(Error::NoProgress {
                correlation: best_abs.max(0.0),
                residual: residual_norm,
            });
        }

        selected[best] = true;
        support.push(best);
        let new_atom = atoms.column(best).clone_owned();
        let cross = active.tr_mul(&new_atom);
        active = {
            let mut grown = DMatrix::zeros(atoms.nrows(), support.len());
            grown
                .view_mut((0, 0), (atoms.nrows(), support.len() - 1))
                .copy_from(&active);
            grown.set_column(support.len() - 1, &new_atom);
            grown
        };
        gram = {
            let k = support.len();
            let mut grown = DMatrix::zeros(k, k);
            grown.view_mut((0, 0), (k - 1, k - 1)).copy_from(&gram);
            for i in 0..k - 1 {
                grown[(i, k - 1)] = cross[i];
                grown[(k - 1, i)] = cross[i];
            }
            grown[(k - 1, k - 1)] = new_atom.norm_squared();
            grown
        };
        rhs = rhs.push(new_atom.dot(x));

        coefficients = solve_normal_equations(&gram, &rhs)?;
        residual = x - &active * &coefficients;
        let new_norm = residual.norm();
        if new_norm >= residual_norm && new_norm > zero_floor {
            return Err(Error::NoProgress {
                correlation: best_abs,
                residual: new_norm,
            });
        }
        residual_norm = new_norm;
        history.push(residual_norm);
    }
}

fn finish(
    support: Vec<usize>,
    coefficients: DVector<f64>,
    residual_norm: f64,
    history: Vec<f64>,
    stop: StopReason,
) -> SparseCode {
    SparseCode {
        iterations: support.len(),
        support,
        coefficients,
        residual_norm,
        residual_history: history,
        stop,
    }
}

/// Solves G c = b by Cholesky; if the factor's diagonal spread indicates a
/// condition number beyond `tol::GRAM_COND_LIMIT` (or the factorization
/// fails), retries with `tol::GRAM_JITTER` added to the diagonal.
fn solve_normal_equations(gram: &DMatrix<f64>, rhs: &DVector<f64>) -> Result<DVector<f64>> {
    if let Some(chol) = nalgebra::Cholesky::new(gram.clone()) {
        let diag = chol.l_dirty().diagonal();
        let dmax = diag.max();
        let dmin = diag.min();
        let cond = if dmin > 0.0 {
            (dmax / dmin).powi(2)
        } else {
            f64::INFINITY
        };
        if cond <= tol::GRAM_COND_LIMIT {
            return Ok(chol.solve(rhs));
        }
    }
    let mut jittered = gram.clone();
    for i in 0..jittered.nrows() {
        jittered[(i, i)] += tol::GRAM_JITTER;
    }
    nalgebra::Cholesky::new(jittered)
        .map(|c| c.solve(rhs))
        .ok_or(Error::EigenFailure)
}

/// Normalized mean squared error ||x - x_rec||^2 / ||x||^2.
pub fn nmse(x: &DVector<f64>, x_rec: &DVector<f64>) -> Result<f64> {
    if x.len() != x_rec.len() {
        return Err(Error::DimensionMismatch {
            what: "reconstruction length",
            expected: x.len(),
            got: x_rec.len(),
        });
    }
    let denom = x.norm_squared();
    if denom == 0.0 {
        return Err(Error::ZeroSignal);
    }
    Ok((x - x_rec).norm_squared() / denom)
}
