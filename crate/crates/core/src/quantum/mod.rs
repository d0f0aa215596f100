//! Finite-dimensional quantum probability.
//!
//! Question families are orthonormal bases of a complex space, answers are
//! projectors, and states are density operators. Probabilities follow the
//! trace form `tr[ρ P]`; sequenced questions use unnormalized Lüders maps
//! `ρ ↦ P ρ P`.

mod axioms;
mod family;
mod ops;
#[cfg(test)]
pub(crate) mod testing;

pub use axioms::{validate_axioms, AxiomReport, AxiomViolation};
pub use family::{FamilySet, QuestionFamily};
pub use ops::{
    bayes_commuting_check, born, classical_bayes_ratio, history_weight, luders_update,
    seq_conditional, seq_joint, transition_matrix,
};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Numeric thresholds. `validation` decides whether an input is a valid
/// unitary, projector or state and whether a probability is nonzero;
/// `identity` is the tighter bound expected of algebraic identities on
/// small well-conditioned matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub validation: f64,
    pub identity: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            validation: 1e-9,
            identity: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn with_validation(validation: f64) -> Self {
        Tolerance {
            validation,
            ..Tolerance::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("matrix is {rows}×{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has a non-finite entry")]
    NonFinite,
    #[error("matrix is not unitary: max |U†U - I| = {max_deviation:e}")]
    NotUnitary { max_deviation: f64 },
    #[error("{labels} labels for {columns} basis columns")]
    LabelCountMismatch { labels: usize, columns: usize },
    #[error("duplicate outcome label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown outcome label `{0}`")]
    UnknownLabel(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("trace has imaginary part {imag:e}")]
    NonRealResult { imag: f64 },
    #[error("probability {value} outside [0, 1]")]
    ProbabilityOutOfRange { value: f64 },
    #[error("conditioning on an event of probability {weight:e}")]
    ZeroProbabilityConditioning { weight: f64 },
    #[error("projectors are not orthogonal: |P_a P_b| = {norm:e}")]
    NonOrthogonal { norm: f64 },
    #[error("projectors do not commute: |P_j P_k - P_k P_j| = {norm:e}")]
    NonCommuting { norm: f64 },
    #[error("matrix is not Hermitian: max |M - M†| = {max_deviation:e}")]
    NotHermitian { max_deviation: f64 },
    #[error("matrix is not idempotent: max |P² - P| = {max_deviation:e}")]
    NotIdempotent { max_deviation: f64 },
    #[error("density operator has negative eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("density operator has trace {trace}, expected 1")]
    BadTrace { trace: f64 },
    #[error("state vector has norm {norm}, expected 1")]
    NotNormalized { norm: f64 },
}

pub(crate) fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_square(m: &CMatrix) -> Result<usize, QuantumError> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(QuantumError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(QuantumError::NonFinite);
    }
    Ok(m.nrows())
}

fn check_hermitian(m: &CMatrix, tol: f64) -> Result<(), QuantumError> {
    let max_deviation = max_abs(&(m - m.adjoint()));
    if max_deviation > tol {
        return Err(QuantumError::NotHermitian { max_deviation });
    }
    Ok(())
}

fn check_dims(expected: usize, found: usize) -> Result<(), QuantumError> {
    if expected != found {
        return Err(QuantumError::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Maps rounding excursions `(-τ, 0)` and `(1, 1 + τ)` back into `[0, 1]`;
/// anything further out is an error.
pub fn clamp_probability(value: f64, tol: f64) -> Result<f64, QuantumError> {
    if !(-tol..=1.0 + tol).contains(&value) {
        return Err(QuantumError::ProbabilityOutOfRange { value });
    }
    Ok(value.clamp(0.0, 1.0))
}

/// Largest deviation of `U†U` from the identity.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    let n = u.ncols();
    max_abs(&(u.adjoint() * u - CMatrix::identity(n, n)))
}

/// Hermitian idempotent operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector(CMatrix);

impl Projector {
    pub fn new(m: CMatrix, tol: Tolerance) -> Result<Self, QuantumError> {
        check_square(&m)?;
        check_hermitian(&m, tol.validation)?;
        let max_deviation = max_abs(&(&m * &m - &m));
        if max_deviation > tol.validation {
            return Err(QuantumError::NotIdempotent { max_deviation });
        }
        Ok(Projector(m))
    }

    /// `|v⟩⟨v|` for a unit vector `v`.
    pub(crate) fn rank_one(v: &CVector) -> Self {
        Projector(v * v.adjoint())
    }

    pub fn identity(dim: usize) -> Self {
        Projector(CMatrix::identity(dim, dim))
    }

    pub fn zero(dim: usize) -> Self {
        Projector(CMatrix::zeros(dim, dim))
    }

    /// Sum of mutually orthogonal projectors, which is again a projector.
    pub fn orthogonal_sum(
        dim: usize,
        parts: &[Projector],
        tol: Tolerance,
    ) -> Result<Self, QuantumError> {
        for p in parts {
            check_dims(dim, p.dim())?;
        }
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                let norm = (&a.0 * &b.0).norm();
                if norm > tol.validation {
                    return Err(QuantumError::NonOrthogonal { norm });
                }
            }
        }
        let sum = parts
            .iter()
            .fold(CMatrix::zeros(dim, dim), |acc, p| acc + &p.0);
        Ok(Projector(sum))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// Rank, read off the trace.
    pub fn rank(&self) -> usize {
        self.0.trace().re.round().max(0.0) as usize
    }

    /// Frobenius norm of `[P, Q]`.
    pub fn commutator_norm(&self, other: &Projector) -> f64 {
        (&self.0 * &other.0 - &other.0 * &self.0).norm()
    }
}

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator(CMatrix);

impl DensityOperator {
    pub fn new(m: CMatrix, tol: Tolerance) -> Result<Self, QuantumError> {
        check_square(&m)?;
        check_hermitian(&m, tol.validation)?;
        let trace = m.trace().re;
        if (trace - 1.0).abs() > tol.validation {
            return Err(QuantumError::BadTrace { trace });
        }
        let hermitian = (&m + m.adjoint()).unscale(2.0);
        let min_eigenvalue = hermitian
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eigenvalue < -tol.validation {
            return Err(QuantumError::NotPositive { min_eigenvalue });
        }
        Ok(DensityOperator(m))
    }

    /// `|ψ⟩⟨ψ|` for a unit vector `ψ`.
    pub fn pure(psi: &CVector, tol: Tolerance) -> Result<Self, QuantumError> {
        let norm = psi.norm();
        if psi.is_empty() || (norm - 1.0).abs() > tol.validation {
            return Err(QuantumError::NotNormalized { norm });
        }
        Ok(DensityOperator(psi * psi.adjoint()))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityOperator(CMatrix::identity(dim, dim).unscale(dim as f64))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        DensityOperator(m)
    }
}
