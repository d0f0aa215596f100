use std::collections::HashSet;

use super::{
    check_square, unitarity_deviation, CMatrix, CVector, Projector, QuantumError, Tolerance,
};

/// A complete set of mutually exclusive questions: one labelled outcome per
/// column of a unitary matrix, each column the outcome state written in the
/// canonical basis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuestionFamily {
    labels: Vec<String>,
    basis: CMatrix,
}

impl QuestionFamily {
    pub fn from_unitary<S: Into<String>>(
        u: CMatrix,
        labels: impl IntoIterator<Item = S>,
        tol: Tolerance,
    ) -> Result<Self, QuantumError> {
        let n = check_square(&u)?;
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != n {
            return Err(QuantumError::LabelCountMismatch {
                labels: labels.len(),
                columns: n,
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(QuantumError::DuplicateLabel(l.clone()));
            }
        }
        let max_deviation = unitarity_deviation(&u);
        if max_deviation > tol.validation {
            return Err(QuantumError::NotUnitary { max_deviation });
        }
        Ok(QuestionFamily { labels, basis: u })
    }

    /// The canonical basis with the given labels.
    pub fn canonical<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self, QuantumError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        Self::from_unitary(CMatrix::identity(n, n), labels, Tolerance::default())
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn index_of(&self, label: &str) -> Result<usize, QuantumError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| QuantumError::UnknownLabel(label.to_owned()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    /// Outcome state `|label⟩`.
    pub fn state(&self, label: &str) -> Result<CVector, QuantumError> {
        Ok(self.basis.column(self.index_of(label)?).into_owned())
    }

    /// Rank-1 projector onto the outcome `label`.
    pub fn projector(&self, label: &str) -> Result<Projector, QuantumError> {
        Ok(Projector::rank_one(&self.state(label)?))
    }

    /// Projector for "one of `labels`": the sum of their rank-1 projectors.
    /// The empty set gives the zero projector and the full set the identity.
    pub fn disjunction_projector<S: AsRef<str>>(
        &self,
        labels: &[S],
        tol: Tolerance,
    ) -> Result<Projector, QuantumError> {
        let mut seen = HashSet::new();
        let parts = labels
            .iter()
            .map(AsRef::as_ref)
            .filter(|l| seen.insert(*l))
            .map(|l| self.projector(l))
            .collect::<Result<Vec<_>, _>>()?;
        Projector::orthogonal_sum(self.dim(), &parts, tol)
    }

    /// Whether every outcome projector of `self` commutes with every
    /// outcome projector of `other`.
    pub fn compatible_with(&self, other: &QuestionFamily, tol: Tolerance) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let mine: Vec<Projector> = (0..self.dim())
            .map(|i| Projector::rank_one(&self.basis.column(i).into_owned()))
            .collect();
        let theirs: Vec<Projector> = (0..other.dim())
            .map(|i| Projector::rank_one(&other.basis.column(i).into_owned()))
            .collect();
        mine.iter().all(|p| {
            theirs
                .iter()
                .all(|q| p.commutator_norm(q) <= tol.validation)
        })
    }
}

/// Named question families sharing one space, in declaration order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FamilySet {
    entries: Vec<(String, QuestionFamily)>,
}

impl FamilySet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a family. Names must be unique and all families must share a
    /// dimension.
    pub fn insert(
        &mut self,
        name: impl Into<String>,
        family: QuestionFamily,
    ) -> Result<(), QuantumError> {
        let name = name.into();
        if let Some(dim) = self.dim() {
            if dim != family.dim() {
                return Err(QuantumError::DimensionMismatch {
                    expected: dim,
                    found: family.dim(),
                });
            }
        }
        if self.get(&name).is_some() {
            return Err(QuantumError::DuplicateLabel(name));
        }
        self.entries.push((name, family));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&QuestionFamily> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn dim(&self) -> Option<usize> {
        self.entries.first().map(|(_, f)| f.dim())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &QuestionFamily)> {
        self.entries.iter().map(|(n, f)| (n.as_str(), f))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
