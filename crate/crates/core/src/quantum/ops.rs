use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{
    check_dims, clamp_probability, CMatrix, DensityOperator, Projector, QuantumError,
    QuestionFamily, Tolerance,
};

fn real_trace(m: &CMatrix, tol: Tolerance) -> Result<f64, QuantumError> {
    let z: Complex64 = m.trace();
    if z.im.abs() > tol.validation {
        return Err(QuantumError::NonRealResult { imag: z.im });
    }
    Ok(z.re)
}

/// `tr[ρ P]`.
pub fn born(rho: &DensityOperator, p: &Projector, tol: Tolerance) -> Result<f64, QuantumError> {
    check_dims(rho.dim(), p.dim())?;
    clamp_probability(
        real_trace(&(rho.matrix() * p.matrix()), tol)?,
        tol.validation,
    )
}

/// Entry `(i, j)` is `|⟨j_b | i_a⟩|²`, the probability of outcome `j` of
/// `fb` given outcome `i` of `fa`.
pub fn transition_matrix(
    fa: &QuestionFamily,
    fb: &QuestionFamily,
) -> Result<DMatrix<f64>, QuantumError> {
    check_dims(fa.dim(), fb.dim())?;
    let overlap = fb.basis().adjoint() * fa.basis();
    Ok(DMatrix::from_fn(fa.dim(), fb.dim(), |i, j| {
        overlap[(j, i)].norm_sqr()
    }))
}

/// Conditions `ρ` on `P`: returns `(PρP / tr[ρP], tr[ρP])`.
pub fn luders_update(
    rho: &DensityOperator,
    p: &Projector,
    tol: Tolerance,
) -> Result<(DensityOperator, f64), QuantumError> {
    let weight = born(rho, p, tol)?;
    if weight <= tol.validation {
        return Err(QuantumError::ZeroProbabilityConditioning { weight });
    }
    let projected = p.matrix() * rho.matrix() * p.matrix();
    let hermitian = (&projected + projected.adjoint()).unscale(2.0 * weight);
    Ok((DensityOperator::from_matrix_unchecked(hermitian), weight))
}

fn unnormalized_history(
    rho: &DensityOperator,
    history: &[Projector],
) -> Result<CMatrix, QuantumError> {
    let mut sigma = rho.matrix().clone();
    for p in history {
        check_dims(rho.dim(), p.dim())?;
        sigma = p.matrix() * sigma * p.matrix();
    }
    Ok(sigma)
}

/// Probability that `target` follows the answers in `history`, asked in
/// order: `tr[T P_m ... P_1 ρ P_1 ... P_m]`.
///
/// For a pure `ρ = |i⟩⟨i|` and one history projector `P_j` this is
/// `|⟨k| P_j |i⟩|²`. Longer histories iterate the unnormalized Lüders map.
pub fn seq_joint(
    rho: &DensityOperator,
    history: &[Projector],
    target: &Projector,
    tol: Tolerance,
) -> Result<f64, QuantumError> {
    check_dims(rho.dim(), target.dim())?;
    let sigma = unnormalized_history(rho, history)?;
    clamp_probability(real_trace(&(sigma * target.matrix()), tol)?, tol.validation)
}

/// Probability of the whole history itself; 1 for an empty history.
pub fn history_weight(
    rho: &DensityOperator,
    history: &[Projector],
    tol: Tolerance,
) -> Result<f64, QuantumError> {
    match history.split_last() {
        None => Ok(1.0),
        Some((last, earlier)) => seq_joint(rho, earlier, last, tol),
    }
}

/// `seq_joint` divided by the probability of the history.
pub fn seq_conditional(
    rho: &DensityOperator,
    history: &[Projector],
    target: &Projector,
    tol: Tolerance,
) -> Result<f64, QuantumError> {
    let weight = history_weight(rho, history, tol)?;
    if weight <= tol.validation {
        return Err(QuantumError::ZeroProbabilityConditioning { weight });
    }
    let joint = seq_joint(rho, history, target, tol)?;
    clamp_probability(joint / weight, tol.validation)
}

/// `tr[ρ P_j P_k] / tr[ρ P_j]`, the conditional of ordinary probability.
pub fn classical_bayes_ratio(
    rho: &DensityOperator,
    pj: &Projector,
    pk: &Projector,
    tol: Tolerance,
) -> Result<f64, QuantumError> {
    check_dims(rho.dim(), pk.dim())?;
    let denominator = born(rho, pj, tol)?;
    if denominator <= tol.validation {
        return Err(QuantumError::ZeroProbabilityConditioning {
            weight: denominator,
        });
    }
    let numerator = real_trace(&(rho.matrix() * pj.matrix() * pk.matrix()), tol)?;
    Ok(numerator / denominator)
}

/// For commuting `P_j`, `P_k`: whether the sequenced conditional equals the
/// classical Bayes ratio within the validation tolerance.
pub fn bayes_commuting_check(
    rho: &DensityOperator,
    pj: &Projector,
    pk: &Projector,
    tol: Tolerance,
) -> Result<bool, QuantumError> {
    check_dims(pj.dim(), pk.dim())?;
    let norm = pj.commutator_norm(pk);
    if norm > tol.validation {
        return Err(QuantumError::NonCommuting { norm });
    }
    let sequenced = seq_conditional(rho, std::slice::from_ref(pj), pk, tol)?;
    let classical = classical_bayes_ratio(rho, pj, pk, tol)?;
    Ok((sequenced - classical).abs() <= tol.validation)
}
