use std::collections::HashMap;

use super::{DensityOperator, QuantumError, QuestionFamily, Tolerance};

/// Disjoint-pair enumeration is exhaustive up to this many `(A, B)` pairs
/// (3^n grows past it at dimension 8); larger families use a fixed
/// structured sample.
const EXHAUSTIVE_PAIR_LIMIT: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq)]
pub enum AxiomViolation {
    Negative {
        label: String,
        value: f64,
    },
    NotNormalized {
        total: f64,
    },
    NotAdditive {
        a: Vec<String>,
        b: Vec<String>,
        joint: f64,
        sum: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    /// Unclamped `tr[ρ P_i]` per outcome, in family order.
    pub probabilities: Vec<f64>,
    pub pairs_checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn labels_of(f: &QuestionFamily, mask: u64) -> Vec<String> {
    f.labels()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, l)| l.clone())
        .collect()
}

fn disjoint_pairs(n: usize) -> Vec<(u64, u64)> {
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    if 3usize
        .checked_pow(n as u32)
        .is_some_and(|c| c <= EXHAUSTIVE_PAIR_LIMIT)
    {
        let mut pairs = Vec::new();
        for a in 1..=full {
            let rest = full & !a;
            // every nonempty submask of the complement
            let mut b = rest;
            while b != 0 {
                pairs.push((a, b));
                b = (b - 1) & rest;
            }
        }
        return pairs;
    }
    // singletons against singletons, and contiguous ranges against the
    // range that follows them
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pairs.push((1 << i, 1 << j));
            }
        }
    }
    let range = |lo: usize, hi: usize| -> u64 { (lo..hi).fold(0, |m, i| m | (1 << i)) };
    for lo in 0..n {
        for mid in lo + 1..n {
            for hi in mid + 1..=n {
                pairs.push((range(lo, mid), range(mid, hi)));
            }
        }
    }
    pairs
}

/// Checks nonnegativity of every outcome, `p[any outcome] = 1`, and
/// `p[A ∨ B] = p[A] + p[B]` for disjoint outcome sets, each set's
/// probability taken from its own disjunction projector.
pub fn validate_axioms(
    rho: &DensityOperator,
    family: &QuestionFamily,
    tol: Tolerance,
) -> Result<AxiomReport, QuantumError> {
    super::check_dims(family.dim(), rho.dim())?;
    let n = family.dim();
    let mut cache: HashMap<u64, f64> = HashMap::new();
    let mut prob = |mask: u64| -> Result<f64, QuantumError> {
        if let Some(&p) = cache.get(&mask) {
            return Ok(p);
        }
        let p = family.disjunction_projector(&labels_of(family, mask), tol)?;
        let value = (rho.matrix() * p.matrix()).trace().re;
        cache.insert(mask, value);
        Ok(value)
    };

    let mut violations = Vec::new();
    let mut probabilities = Vec::with_capacity(n);
    for (i, label) in family.labels().iter().enumerate() {
        let value = prob(1 << i)?;
        if value < -tol.validation {
            violations.push(AxiomViolation::Negative {
                label: label.clone(),
                value,
            });
        }
        probabilities.push(value);
    }
    let total = prob((1u64 << n) - 1)?;
    if (total - 1.0).abs() > tol.validation {
        violations.push(AxiomViolation::NotNormalized { total });
    }
    let pairs = disjoint_pairs(n);
    for &(a, b) in &pairs {
        let joint = prob(a | b)?;
        let sum = prob(a)? + prob(b)?;
        if (joint - sum).abs() > tol.validation {
            violations.push(AxiomViolation::NotAdditive {
                a: labels_of(family, a),
                b: labels_of(family, b),
                joint,
                sum,
            });
        }
    }
    Ok(AxiomReport {
        probabilities,
        pairs_checked: pairs.len(),
        violations,
    })
}
