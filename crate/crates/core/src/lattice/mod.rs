//! Finite bounded lattices with an optional orthocomplement.
//!
//! A [`FiniteLattice`] is built once from its Hasse edges and validated
//! eagerly: the order closure, every pairwise meet and join, and the
//! orthocomplement laws are computed or checked at construction. All later
//! queries are table lookups.

mod dot;
mod text;

pub use dot::to_dot;
pub use text::{parse_lattice, to_lattice_text, LatticeFileError};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of an element inside its owning lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub(crate) usize);

impl ElementId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundOp {
    Meet,
    Join,
}

impl fmt::Display for BoundOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundOp::Meet => f.write_str("meet"),
            BoundOp::Join => f.write_str("join"),
        }
    }
}

/// The orthocomplement law an element violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthoLaw {
    /// x⊥⊥ = x
    Involution,
    /// x ≤ y implies y⊥ ≤ x⊥
    OrderReversing,
    /// x ∧ x⊥ = bottom
    MeetIsBottom,
    /// x ∨ x⊥ = top
    JoinIsTop,
    /// two pairs or two forced derivations disagree
    Conflicting,
    /// nothing determines the complement of this element
    Undetermined,
}

impl fmt::Display for OrthoLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OrthoLaw::Involution => "involution (x⊥⊥ = x)",
            OrthoLaw::OrderReversing => "order reversal (x ≤ y ⇒ y⊥ ≤ x⊥)",
            OrthoLaw::MeetIsBottom => "x ∧ x⊥ = 0",
            OrthoLaw::JoinIsTop => "x ∨ x⊥ = 1",
            OrthoLaw::Conflicting => "conflicting complements",
            OrthoLaw::Undetermined => "complement not determined by the given pairs",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("order relation is cyclic: `{0}` and `{1}` lie below each other")]
    CyclicOrder(String, String),
    #[error("not a lattice: {op} of `{a}` and `{b}` {reason}")]
    NotALattice {
        a: String,
        b: String,
        op: BoundOp,
        reason: &'static str,
    },
    #[error("bad orthocomplement at `{element}`: {law}")]
    BadOrthocomplement { element: String, law: OrthoLaw },
    #[error("lattice has no orthocomplement")]
    NoOrthocomplement,
}

/// A validated finite bounded lattice.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    labels: Vec<String>,
    by_label: HashMap<String, ElementId>,
    leq: Vec<bool>,
    meet: Vec<ElementId>,
    join: Vec<ElementId>,
    bottom: ElementId,
    top: ElementId,
    ortho: Option<Vec<ElementId>>,
    hasse: Vec<(ElementId, ElementId)>,
}

impl FiniteLattice {
    /// Builds a lattice from element labels, covering pairs `(lower, upper)`
    /// and an optional set of orthocomplement pairs.
    ///
    /// The order is the reflexive-transitive closure of `covers`. When
    /// `ortho_pairs` is given the complement must end up total: pairs that
    /// are not listed are completed through De Morgan where that is forced,
    /// and anything left over is reported as [`OrthoLaw::Undetermined`].
    pub fn from_order_relation<S: AsRef<str>>(
        labels: &[S],
        covers: &[(S, S)],
        ortho_pairs: Option<&[(S, S)]>,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut by_label = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if by_label.insert(l.clone(), ElementId(i)).is_some() {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |s: &str| {
            by_label
                .get(s)
                .copied()
                .ok_or_else(|| LatticeError::UnknownLabel(s.to_owned()))
        };

        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let (lo, hi) = (lookup(lo.as_ref())?, lookup(hi.as_ref())?);
            if lo == hi {
                return Err(LatticeError::CyclicOrder(
                    labels[lo.0].clone(),
                    labels[hi.0].clone(),
                ));
            }
            leq[lo.0 * n + hi.0] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(LatticeError::CyclicOrder(
                        labels[i].clone(),
                        labels[j].clone(),
                    ));
                }
            }
        }

        let mut meet = vec![ElementId(0); n * n];
        let mut join = vec![ElementId(0); n * n];
        for a in 0..n {
            for b in a..n {
                let m = extremal_bound(&leq, n, a, b, BoundOp::Meet).map_err(|reason| {
                    LatticeError::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        op: BoundOp::Meet,
                        reason,
                    }
                })?;
                let j = extremal_bound(&leq, n, a, b, BoundOp::Join).map_err(|reason| {
                    LatticeError::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        op: BoundOp::Join,
                        reason,
                    }
                })?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let bottom = (0..n)
            .map(ElementId)
            .find(|x| (0..n).all(|y| leq[x.0 * n + y]))
            .expect("finite lattice has a bottom");
        let top = (0..n)
            .map(ElementId)
            .find(|x| (0..n).all(|y| leq[y * n + x.0]))
            .expect("finite lattice has a top");

        let hasse = hasse_edges(&leq, n);
        let mut lattice = FiniteLattice {
            labels,
            by_label,
            leq,
            meet,
            join,
            bottom,
            top,
            ortho: None,
            hasse,
        };
        if let Some(pairs) = ortho_pairs {
            let resolved: Vec<(ElementId, ElementId)> = pairs
                .iter()
                .map(|(a, b)| Ok((lattice.resolve(a.as_ref())?, lattice.resolve(b.as_ref())?)))
                .collect::<Result<_, LatticeError>>()?;
            let ortho = lattice.complete_orthocomplement(&resolved)?;
            lattice.validate_orthocomplement(&ortho)?;
            lattice.ortho = Some(ortho);
        }
        Ok(lattice)
    }

    fn resolve(&self, label: &str) -> Result<ElementId, LatticeError> {
        self.element(label)
            .ok_or_else(|| LatticeError::UnknownLabel(label.to_owned()))
    }

    fn complete_orthocomplement(
        &self,
        pairs: &[(ElementId, ElementId)],
    ) -> Result<Vec<ElementId>, LatticeError> {
        let n = self.len();
        let mut ortho: Vec<Option<ElementId>> = vec![None; n];
        let conflict = |x: ElementId| LatticeError::BadOrthocomplement {
            element: self.labels[x.0].clone(),
            law: OrthoLaw::Conflicting,
        };
        let assign = |ortho: &mut Vec<Option<ElementId>>,
                      x: ElementId,
                      y: ElementId|
         -> Result<bool, LatticeError> {
            let mut changed = false;
            for (p, q) in [(x, y), (y, x)] {
                match ortho[p.0] {
                    Some(existing) if existing != q => return Err(conflict(p)),
                    Some(_) => {}
                    None => {
                        ortho[p.0] = Some(q);
                        changed = true;
                    }
                }
            }
            Ok(changed)
        };
        for &(a, b) in pairs {
            assign(&mut ortho, a, b)?;
        }
        if ortho[self.bottom.0].is_none() && ortho[self.top.0].is_none() {
            assign(&mut ortho, self.bottom, self.top)?;
        }

        // De Morgan: (a ∨ b)⊥ = a⊥ ∧ b⊥ and (a ∧ b)⊥ = a⊥ ∨ b⊥.
        loop {
            let mut changed = false;
            for x in 0..n {
                for a in 0..n {
                    for b in a..n {
                        let (Some(ao), Some(bo)) = (ortho[a], ortho[b]) else {
                            continue;
                        };
                        let (ea, eb) = (ElementId(a), ElementId(b));
                        if self.join(ea, eb).0 == x {
                            changed |= assign(&mut ortho, ElementId(x), self.meet(ao, bo))?;
                        }
                        if self.meet(ea, eb).0 == x {
                            changed |= assign(&mut ortho, ElementId(x), self.join(ao, bo))?;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        ortho
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| LatticeError::BadOrthocomplement {
                    element: self.labels[i].clone(),
                    law: OrthoLaw::Undetermined,
                })
            })
            .collect()
    }

    fn validate_orthocomplement(&self, ortho: &[ElementId]) -> Result<(), LatticeError> {
        let bad = |x: usize, law| LatticeError::BadOrthocomplement {
            element: self.labels[x].clone(),
            law,
        };
        for x in 0..self.len() {
            let xo = ortho[x];
            if ortho[xo.0].0 != x {
                return Err(bad(x, OrthoLaw::Involution));
            }
            for (y, &yo) in ortho.iter().enumerate() {
                if self.leq(ElementId(x), ElementId(y)) && !self.leq(yo, xo) {
                    return Err(bad(x, OrthoLaw::OrderReversing));
                }
            }
            if self.meet(ElementId(x), xo) != self.bottom {
                return Err(bad(x, OrthoLaw::MeetIsBottom));
            }
            if self.join(ElementId(x), xo) != self.top {
                return Err(bad(x, OrthoLaw::JoinIsTop));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = ElementId> + Clone {
        (0..self.len()).map(ElementId)
    }

    pub fn element(&self, label: &str) -> Option<ElementId> {
        self.by_label.get(label).copied()
    }

    /// Like [`element`](Self::element) but panics on an unknown label.
    pub fn id(&self, label: &str) -> ElementId {
        self.element(label)
            .unwrap_or_else(|| panic!("no element labelled `{label}`"))
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.labels[x.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.leq[a.0 * self.len() + b.0]
    }

    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.meet[a.0 * self.len() + b.0]
    }

    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.join[a.0 * self.len() + b.0]
    }

    pub fn is_orthocomplemented(&self) -> bool {
        self.ortho.is_some()
    }

    pub fn complement(&self, a: ElementId) -> Result<ElementId, LatticeError> {
        self.ortho
            .as_ref()
            .map(|o| o[a.0])
            .ok_or(LatticeError::NoOrthocomplement)
    }

    /// `b` covers `a`: a < b with nothing strictly between.
    pub fn covers(&self, a: ElementId, b: ElementId) -> bool {
        a != b
            && self.leq(a, b)
            && !self
                .elements()
                .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
    }

    /// Elements covering bottom.
    pub fn atoms(&self) -> Vec<ElementId> {
        self.hasse
            .iter()
            .filter(|(lo, _)| *lo == self.bottom)
            .map(|&(_, hi)| hi)
            .collect()
    }

    /// Covering pairs `(lower, upper)` sorted by index.
    pub fn hasse_edges(&self) -> &[(ElementId, ElementId)] {
        &self.hasse
    }

    /// Length of the longest chain from bottom to `x`.
    pub fn height(&self, x: ElementId) -> usize {
        let mut height = vec![None; self.len()];
        self.height_memo(x, &mut height)
    }

    fn height_memo(&self, x: ElementId, memo: &mut [Option<usize>]) -> usize {
        if let Some(h) = memo[x.0] {
            return h;
        }
        let h = self
            .hasse
            .iter()
            .filter(|(_, hi)| *hi == x)
            .map(|&(lo, _)| self.height_memo(lo, memo) + 1)
            .max()
            .unwrap_or(0);
        memo[x.0] = Some(h);
        h
    }

    /// Complement pairs `(x, x⊥)` with `x ≤ x⊥` in index order, each pair once.
    pub fn ortho_pairs(&self) -> Option<Vec<(ElementId, ElementId)>> {
        let ortho = self.ortho.as_ref()?;
        Some(
            self.elements()
                .filter(|x| x.0 <= ortho[x.0].0)
                .map(|x| (x, ortho[x.0]))
                .collect(),
        )
    }
}

fn extremal_bound(
    leq: &[bool],
    n: usize,
    a: usize,
    b: usize,
    op: BoundOp,
) -> Result<ElementId, &'static str> {
    // below(x, y): x ≤ y for meets, y ≤ x for joins
    let below = |x: usize, y: usize| match op {
        BoundOp::Meet => leq[x * n + y],
        BoundOp::Join => leq[y * n + x],
    };
    let bounds: Vec<usize> = (0..n).filter(|&x| below(x, a) && below(x, b)).collect();
    if bounds.is_empty() {
        return Err("does not exist");
    }
    bounds
        .iter()
        .copied()
        .find(|&g| bounds.iter().all(|&x| below(x, g)))
        .map(ElementId)
        .ok_or("is not unique")
}

fn hasse_edges(leq: &[bool], n: usize) -> Vec<(ElementId, ElementId)> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || !leq[a * n + b] {
                continue;
            }
            let between = (0..n).any(|c| c != a && c != b && leq[a * n + c] && leq[c * n + b]);
            if !between {
                edges.push((ElementId(a), ElementId(b)));
            }
        }
    }
    edges
}
