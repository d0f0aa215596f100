use std::fmt;

use thiserror::Error;

use super::QueryExpr;
use crate::quantum::{
    born, clamp_probability, seq_joint, DensityOperator, FamilySet, Projector, QuantumError,
    Tolerance,
};

/// "The answer to one of `labels` in `family` is yes". Labels are kept in
/// the family's own order, so equal events compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyEvent {
    pub family: String,
    pub labels: Vec<String>,
}

impl fmt::Display for FamilyEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}@{}", self.labels.join(","), self.family)
    }
}

/// Normal form of a query, ready for evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalPlan {
    SingleFamilyEvent(FamilyEvent),
    /// Stages in the order they are asked, earliest first.
    SequencedEvent(Vec<FamilyEvent>),
    /// Pairwise mutually exclusive sequences whose probabilities add.
    ExclusiveSum(Vec<Vec<FamilyEvent>>),
}

impl fmt::Display for EvalPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn seq(f: &mut fmt::Formatter<'_>, stages: &[FamilyEvent]) -> fmt::Result {
            for (i, s) in stages.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ; ")?;
                }
                write!(f, "{s}")?;
            }
            Ok(())
        }
        match self {
            EvalPlan::SingleFamilyEvent(e) => write!(f, "{e}"),
            EvalPlan::SequencedEvent(stages) => {
                f.write_str("[")?;
                seq(f, stages)?;
                f.write_str("]")
            }
            EvalPlan::ExclusiveSum(branches) => {
                for (i, b) in branches.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    f.write_str("[")?;
                    seq(f, b)?;
                    f.write_str("]")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("unknown atom `{label}@{family}`")]
    UnknownAtom { family: String, label: String },
    #[error("branches of `{expr}` are not mutually exclusive")]
    NotExclusive { expr: String },
    #[error("`{expr}` conjoins questions from incompatible families")]
    CrossFamilyAnd { expr: String },
    #[error("`{expr}`: negation is only defined for events of a single family")]
    UnsupportedNegation { expr: String },
    #[error("`{expr}`: conjunction is only defined for events of a single family or of compatible families")]
    UnsupportedConjunction { expr: String },
    #[error("`{expr}`: a history must be a single sequence, not a sum of alternatives")]
    AlternativeHistory { expr: String },
}

/// Compiled form used during construction: a list of branches, each a list
/// of stages, earliest first.
type Branches = Vec<Vec<FamilyEvent>>;

fn single(b: &Branches) -> Option<&FamilyEvent> {
    match b.as_slice() {
        [stages] if stages.len() == 1 => Some(&stages[0]),
        _ => None,
    }
}

/// Whether two sequences are syntactically exclusive: at some common stage
/// both ask the same family and their label sets are disjoint.
fn exclusive(x: &[FamilyEvent], y: &[FamilyEvent]) -> bool {
    x.iter()
        .zip(y)
        .any(|(a, b)| a.family == b.family && a.labels.iter().all(|l| !b.labels.contains(l)))
}

struct Compiler<'a> {
    families: &'a FamilySet,
    tol: Tolerance,
}

impl Compiler<'_> {
    fn event(&self, family: &str, keep: impl Fn(&str) -> bool) -> FamilyEvent {
        let labels = self
            .families
            .get(family)
            .map(|f| f.labels().iter().filter(|l| keep(l)).cloned().collect())
            .unwrap_or_default();
        FamilyEvent {
            family: family.to_owned(),
            labels,
        }
    }

    fn compile(&self, e: &QueryExpr) -> Result<Branches, CompileError> {
        match e {
            QueryExpr::Atom { family, label } => {
                if !self.families.get(family).is_some_and(|f| f.contains(label)) {
                    return Err(CompileError::UnknownAtom {
                        family: family.clone(),
                        label: label.clone(),
                    });
                }
                Ok(vec![vec![self.event(family, |l| l == label)]])
            }
            QueryExpr::Not(inner) => {
                let b = self.compile(inner)?;
                let ev = single(&b).ok_or_else(|| CompileError::UnsupportedNegation {
                    expr: e.to_string(),
                })?;
                Ok(vec![vec![
                    self.event(&ev.family, |l| !ev.labels.iter().any(|x| x == l))
                ]])
            }
            QueryExpr::Or(x, y) => {
                let (bx, by) = (self.compile(x)?, self.compile(y)?);
                if let (Some(a), Some(b)) = (single(&bx), single(&by)) {
                    if a.family == b.family {
                        let ev = self.event(&a.family, |l| {
                            a.labels.iter().chain(&b.labels).any(|x| x == l)
                        });
                        return Ok(vec![vec![ev]]);
                    }
                }
                for p in &bx {
                    for q in &by {
                        if !exclusive(p, q) {
                            return Err(CompileError::NotExclusive {
                                expr: e.to_string(),
                            });
                        }
                    }
                }
                Ok(bx.into_iter().chain(by).collect())
            }
            QueryExpr::And(x, y) => {
                let (bx, by) = (self.compile(x)?, self.compile(y)?);
                let (Some(a), Some(b)) = (single(&bx), single(&by)) else {
                    return Err(CompileError::UnsupportedConjunction {
                        expr: e.to_string(),
                    });
                };
                if a.family == b.family {
                    let ev = self.event(&a.family, |l| {
                        a.labels.iter().any(|x| x == l) && b.labels.iter().any(|x| x == l)
                    });
                    return Ok(vec![vec![ev]]);
                }
                let (fa, fb) = (
                    self.families.get(&a.family).expect("resolved above"),
                    self.families.get(&b.family).expect("resolved above"),
                );
                if !fa.compatible_with(fb, self.tol) {
                    return Err(CompileError::CrossFamilyAnd {
                        expr: e.to_string(),
                    });
                }
                // Commuting projectors: asking them in sequence is their meet.
                Ok(vec![vec![b.clone(), a.clone()]])
            }
            QueryExpr::Then { later, earlier } => {
                let history = self.compile(earlier)?;
                let [history] =
                    <[_; 1]>::try_from(history).map_err(|_| CompileError::AlternativeHistory {
                        expr: e.to_string(),
                    })?;
                // A sum in the later position distributes: each branch is
                // preceded by the same history, and exclusivity is kept.
                Ok(self
                    .compile(later)?
                    .into_iter()
                    .map(|branch| history.iter().cloned().chain(branch).collect())
                    .collect())
            }
        }
    }
}

/// Compiles a query against declared families.
///
/// Conjunction of two different families requires them to be compatible,
/// judged at the default tolerance.
pub fn compile(expr: &QueryExpr, families: &FamilySet) -> Result<EvalPlan, CompileError> {
    let c = Compiler {
        families,
        tol: Tolerance::default(),
    };
    let mut branches = c.compile(expr)?;
    Ok(if branches.len() == 1 {
        let mut stages = branches.pop().expect("one branch");
        if stages.len() == 1 {
            EvalPlan::SingleFamilyEvent(stages.pop().expect("one stage"))
        } else {
            EvalPlan::SequencedEvent(stages)
        }
    } else {
        EvalPlan::ExclusiveSum(branches)
    })
}

fn projector(
    ev: &FamilyEvent,
    families: &FamilySet,
    tol: Tolerance,
) -> Result<Projector, QuantumError> {
    families
        .get(&ev.family)
        .ok_or_else(|| QuantumError::UnknownLabel(ev.family.clone()))?
        .disjunction_projector(&ev.labels, tol)
}

fn sequence(
    stages: &[FamilyEvent],
    prior: &DensityOperator,
    families: &FamilySet,
    tol: Tolerance,
) -> Result<f64, QuantumError> {
    let projectors = stages
        .iter()
        .map(|s| projector(s, families, tol))
        .collect::<Result<Vec<_>, _>>()?;
    match projectors.split_last() {
        Some((target, history)) => seq_joint(prior, history, target, tol),
        None => Ok(1.0),
    }
}

/// Probability of a compiled query under `prior`.
pub fn evaluate(
    plan: &EvalPlan,
    prior: &DensityOperator,
    families: &FamilySet,
    tol: Tolerance,
) -> Result<f64, QuantumError> {
    match plan {
        EvalPlan::SingleFamilyEvent(ev) => born(prior, &projector(ev, families, tol)?, tol),
        EvalPlan::SequencedEvent(stages) => sequence(stages, prior, families, tol),
        EvalPlan::ExclusiveSum(branches) => {
            let mut total = 0.0;
            for b in branches {
                total += sequence(b, prior, families, tol)?;
            }
            clamp_probability(total, tol.validation)
        }
    }
}
