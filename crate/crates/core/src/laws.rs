//! Exhaustive law checking over finite lattices.
//!
//! Every check walks all element tuples in index order and stops at the
//! first failure, so witnesses are stable for golden tests. Index order is
//! the order in which the lattice declares its elements.

use std::fmt;

use crate::lattice::{ElementId, FiniteLattice, LatticeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    Distributive,
    Modular,
    Orthomodular,
    Orthocomplemented,
    Boolean,
    Atomistic,
    Covering,
}

impl Law {
    pub const ALL: [Law; 7] = [
        Law::Orthocomplemented,
        Law::Distributive,
        Law::Modular,
        Law::Orthomodular,
        Law::Boolean,
        Law::Atomistic,
        Law::Covering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Distributive => "distributive",
            Law::Modular => "modular",
            Law::Orthomodular => "orthomodular",
            Law::Orthocomplemented => "orthocomplemented",
            Law::Boolean => "boolean",
            Law::Atomistic => "atomistic",
            Law::Covering => "covering",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failing instance of an identity: the element tuple it was evaluated at
/// and the two sides, which are distinct elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub elements: Vec<ElementId>,
    pub lhs: ElementId,
    pub rhs: ElementId,
    /// The identity that failed, written over the tuple's variable names.
    pub identity: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: Law,
    pub holds: bool,
    /// Present whenever `holds` is false, except for the orthocomplement
    /// family of laws on a lattice that carries no complement at all.
    pub witness: Option<Witness>,
}

impl LawReport {
    fn from_search(law: Law, witness: Option<Witness>) -> Self {
        LawReport {
            law,
            holds: witness.is_none(),
            witness,
        }
    }

    /// `law=distributive holds=false witness=H+,V-,V-⊥ lhs=H+ rhs=V-⊥`
    pub fn to_kv(&self, l: &FiniteLattice) -> String {
        let mut s = format!("law={} holds={}", self.law, self.holds);
        if let Some(w) = &self.witness {
            let labels: Vec<&str> = w.elements.iter().map(|&x| l.label(x)).collect();
            s.push_str(&format!(
                " witness={} lhs={} rhs={}",
                labels.join(","),
                l.label(w.lhs),
                l.label(w.rhs)
            ));
        }
        s
    }

    pub fn to_text(&self, l: &FiniteLattice) -> String {
        let verdict = if self.holds { "holds" } else { "fails" };
        match &self.witness {
            None => format!("{:<18} {verdict}", self.law.name()),
            Some(w) => {
                let labels: Vec<&str> = w.elements.iter().map(|&x| l.label(x)).collect();
                format!(
                    "{:<18} {verdict} at ({}): {}, lhs = {}, rhs = {}",
                    self.law.name(),
                    labels.join(", "),
                    w.identity,
                    l.label(w.lhs),
                    l.label(w.rhs)
                )
            }
        }
    }
}

fn triples(l: &FiniteLattice) -> impl Iterator<Item = (ElementId, ElementId, ElementId)> + '_ {
    l.elements().flat_map(move |i| {
        l.elements()
            .flat_map(move |j| l.elements().map(move |k| (i, j, k)))
    })
}

/// Both distributive identities over all triples `(i, j, k)`.
pub fn check_distributive(l: &FiniteLattice) -> LawReport {
    let witness = triples(l).find_map(|(i, j, k)| {
        let lhs = l.meet(i, l.join(j, k));
        let rhs = l.join(l.meet(i, j), l.meet(i, k));
        if lhs != rhs {
            return Some(Witness {
                elements: vec![i, j, k],
                lhs,
                rhs,
                identity: "i ∧ (j ∨ k) = (i ∧ j) ∨ (i ∧ k)",
            });
        }
        let lhs = l.join(i, l.meet(j, k));
        let rhs = l.meet(l.join(i, j), l.join(i, k));
        (lhs != rhs).then(|| Witness {
            elements: vec![i, j, k],
            lhs,
            rhs,
            identity: "i ∨ (j ∧ k) = (i ∨ j) ∧ (i ∨ k)",
        })
    });
    LawReport::from_search(Law::Distributive, witness)
}

/// The restricted form `i ∨ (j ∧ k) = (i ∨ j) ∧ k` for `i ≤ k`.
pub fn check_modular(l: &FiniteLattice) -> LawReport {
    let witness = triples(l)
        .filter(|&(i, _, k)| l.leq(i, k))
        .find_map(|(i, j, k)| {
            let lhs = l.join(i, l.meet(j, k));
            let rhs = l.meet(l.join(i, j), k);
            (lhs != rhs).then(|| Witness {
                elements: vec![i, j, k],
                lhs,
                rhs,
                identity: "i ∨ (j ∧ k) = (i ∨ j) ∧ k for i ≤ k",
            })
        });
    LawReport::from_search(Law::Modular, witness)
}

/// `i = j ∨ (i ∧ j⊥)` for every pair with `j ≤ i`.
pub fn check_orthomodular(l: &FiniteLattice) -> Result<LawReport, LatticeError> {
    if !l.is_orthocomplemented() {
        return Err(LatticeError::NoOrthocomplement);
    }
    let mut witness = None;
    'outer: for i in l.elements() {
        for j in l.elements().filter(|&j| l.leq(j, i)) {
            let rhs = l.join(j, l.meet(i, l.complement(j)?));
            if rhs != i {
                witness = Some(Witness {
                    elements: vec![i, j],
                    lhs: i,
                    rhs,
                    identity: "i = j ∨ (i ∧ j⊥) for j ≤ i",
                });
                break 'outer;
            }
        }
    }
    Ok(LawReport::from_search(Law::Orthomodular, witness))
}

/// For every atom `a` and element `b` with `a ∧ b = 0`, `a ∨ b` covers `b`.
///
/// The witness is `(a, b, c)` with `b < c < a ∨ b`; `lhs` is `a ∨ b` and
/// `rhs` the intermediate element `c`.
pub fn check_covering(l: &FiniteLattice) -> LawReport {
    let atoms = l.atoms();
    let witness = atoms.iter().find_map(|&a| {
        l.elements()
            .filter(|&b| l.meet(a, b) == l.bottom())
            .find_map(|b| {
                let ab = l.join(a, b);
                l.elements()
                    .find(|&c| c != b && c != ab && l.leq(b, c) && l.leq(c, ab))
                    .map(|c| Witness {
                        elements: vec![a, b, c],
                        lhs: ab,
                        rhs: c,
                        identity: "a ∨ b covers b for atom a with a ∧ b = 0",
                    })
            })
    });
    LawReport::from_search(Law::Covering, witness)
}

/// Every element is the join of the atoms below it.
pub fn check_atomistic(l: &FiniteLattice) -> LawReport {
    let atoms = l.atoms();
    let witness = l.elements().find_map(|x| {
        let generated = atoms
            .iter()
            .filter(|&&a| l.leq(a, x))
            .fold(l.bottom(), |acc, &a| l.join(acc, a));
        (generated != x).then(|| Witness {
            elements: vec![x],
            lhs: x,
            rhs: generated,
            identity: "x = ⋁ { a atom : a ≤ x }",
        })
    });
    LawReport::from_search(Law::Atomistic, witness)
}

/// Complement laws are validated when the lattice is built, so this only
/// reports whether a complement is present.
pub fn check_orthocomplemented(l: &FiniteLattice) -> LawReport {
    LawReport {
        law: Law::Orthocomplemented,
        holds: l.is_orthocomplemented(),
        witness: None,
    }
}

/// Boolean means distributive and orthocomplemented.
pub fn check_boolean(l: &FiniteLattice) -> LawReport {
    let distributive = check_distributive(l);
    LawReport {
        law: Law::Boolean,
        holds: distributive.holds && l.is_orthocomplemented(),
        witness: distributive.witness,
    }
}

pub fn check(l: &FiniteLattice, law: Law) -> LawReport {
    match law {
        Law::Distributive => check_distributive(l),
        Law::Modular => check_modular(l),
        Law::Orthomodular => check_orthomodular(l).unwrap_or(LawReport {
            law: Law::Orthomodular,
            holds: false,
            witness: None,
        }),
        Law::Orthocomplemented => check_orthocomplemented(l),
        Law::Boolean => check_boolean(l),
        Law::Atomistic => check_atomistic(l),
        Law::Covering => check_covering(l),
    }
}

/// Runs every check in [`Law::ALL`] order.
pub fn classify(l: &FiniteLattice) -> Vec<LawReport> {
    Law::ALL.iter().map(|&law| check(l, law)).collect()
}

pub fn holds(reports: &[LawReport], law: Law) -> bool {
    reports.iter().any(|r| r.law == law && r.holds)
}
