//! Ready-built lattices of yes/no experiments.
//!
//! Labels use `0` and `1` for the bounds and a `⊥` suffix for negated
//! answers. Composite elements of power-set lattices join atom names with
//! `|`, e.g. `m|l` for "medium or large".

use crate::lattice::FiniteLattice;

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 5] = ["egg1", "egg2", "sg1", "sg2", "o6"];

pub fn by_name(name: &str) -> Option<FiniteLattice> {
    Some(match name {
        "egg1" => egg_single_pair(),
        "egg2" => egg_two_pairs(),
        "sg1" => stern_gerlach_single(),
        "sg2" => stern_gerlach_double(),
        "o6" => hexagon_o6(),
        _ => return None,
    })
}

fn build(labels: &[&str], covers: &[(&str, &str)], ortho: &[(&str, &str)]) -> FiniteLattice {
    FiniteLattice::from_order_relation(labels, covers, Some(ortho))
        .expect("catalog lattice is valid")
}

/// Power set of `atoms`, ordered by subset size and then by the bitmask
/// over atom positions. Coatoms of lattices with at least three atoms are
/// labelled `<missing atom>⊥`.
fn power_set(atoms: &[&str]) -> FiniteLattice {
    let n = atoms.len();
    assert!(n <= 16, "power set too large");
    let full = (1usize << n) - 1;
    let mut masks: Vec<usize> = (0..=full).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let label = |m: usize| -> String {
        if m == 0 {
            "0".to_owned()
        } else if m == full {
            "1".to_owned()
        } else if n >= 3 && m.count_ones() as usize == n - 1 {
            let missing = (0..n).find(|i| m & (1 << i) == 0).unwrap();
            format!("{}⊥", atoms[missing])
        } else {
            (0..n)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| atoms[i])
                .collect::<Vec<_>>()
                .join("|")
        }
    };
    let labels: Vec<String> = masks.iter().map(|&m| label(m)).collect();
    let mut covers = Vec::new();
    for &m in &masks {
        for i in 0..n {
            if m & (1 << i) == 0 {
                covers.push((label(m), label(m | (1 << i))));
            }
        }
    }
    let ortho: Vec<(String, String)> = masks
        .iter()
        .filter(|&&m| m < full ^ m)
        .map(|&m| (label(m), label(full ^ m)))
        .collect();
    FiniteLattice::from_order_relation(&labels, &covers, Some(&ortho))
        .expect("power set is a Boolean lattice")
}

/// Boolean algebra 2^n on atoms `a0, a1, ...`.
pub fn boolean_algebra(n: usize) -> FiniteLattice {
    let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    power_set(&refs)
}

/// Egg sized with one pair of calibers: small `s`, medium `m`, large `l`,
/// where medium is "neither small nor large". Boolean, 8 elements.
pub fn egg_single_pair() -> FiniteLattice {
    power_set(&["s", "m", "l"])
}

/// Egg sized with two interleaved pairs of calibers, giving five mutually
/// exclusive size classes. Compatible measurements generate the full
/// Boolean algebra on the classes: 32 elements.
pub fn egg_two_pairs() -> FiniteLattice {
    power_set(&["xs", "s", "m", "l", "xl"])
}

/// Spin-1 through one vertical Stern-Gerlach apparatus: three exclusive
/// beams `V+`, `V0`, `V-` and their negations. Boolean, 8 elements.
pub fn stern_gerlach_single() -> FiniteLattice {
    build(
        &["0", "V+", "V0", "V-", "V+⊥", "V0⊥", "V-⊥", "1"],
        &[
            ("0", "V+"),
            ("0", "V0"),
            ("0", "V-"),
            ("V0", "V+⊥"),
            ("V-", "V+⊥"),
            ("V+", "V0⊥"),
            ("V-", "V0⊥"),
            ("V+", "V-⊥"),
            ("V0", "V-⊥"),
            ("V+⊥", "1"),
            ("V0⊥", "1"),
            ("V-⊥", "1"),
        ],
        &[("V+", "V+⊥"), ("V0", "V0⊥"), ("V-", "V-⊥")],
    )
}

/// Vertical and horizontal Stern-Gerlach answers taken together.
///
/// Two 8-element blocks glued at the bounds, plus the single cross-family
/// order `H+ ≤ V-⊥` and its dual `V- ≤ H+⊥`. This is the smallest
/// orthocomplemented lattice with `H+ ∨ V- = 1`, `H+ ∨ V-⊥ = V-⊥` and
/// `V- ∧ V-⊥ = 0`. It is not distributive, and the elements of the
/// failing triple are declared first so that `(H+, V-, V-⊥)` is the first
/// witness found. The six elements `0, H+, V-⊥, V-, H+⊥, 1` form the
/// hexagon O6, so the lattice is not orthomodular either.
pub fn stern_gerlach_double() -> FiniteLattice {
    build(
        &[
            "0", "H+", "V-", "V-⊥", "H0", "H-", "V+", "V0", "H+⊥", "H0⊥", "H-⊥", "V+⊥", "V0⊥", "1",
        ],
        &[
            ("0", "V+"),
            ("0", "V0"),
            ("0", "V-"),
            ("0", "H+"),
            ("0", "H0"),
            ("0", "H-"),
            ("V0", "V+⊥"),
            ("V-", "V+⊥"),
            ("V+", "V0⊥"),
            ("V-", "V0⊥"),
            ("V+", "V-⊥"),
            ("V0", "V-⊥"),
            ("H0", "H+⊥"),
            ("H-", "H+⊥"),
            ("H+", "H0⊥"),
            ("H-", "H0⊥"),
            ("H+", "H-⊥"),
            ("H0", "H-⊥"),
            ("H+", "V-⊥"),
            ("V-", "H+⊥"),
            ("V+⊥", "1"),
            ("V0⊥", "1"),
            ("V-⊥", "1"),
            ("H+⊥", "1"),
            ("H0⊥", "1"),
            ("H-⊥", "1"),
        ],
        &[
            ("V+", "V+⊥"),
            ("V0", "V0⊥"),
            ("V-", "V-⊥"),
            ("H+", "H+⊥"),
            ("H0", "H0⊥"),
            ("H-", "H-⊥"),
        ],
    )
}

/// The benzene-ring ortholattice: chains `0 < a < b < 1` and
/// `0 < b⊥ < a⊥ < 1`. Orthocomplemented but not orthomodular.
pub fn hexagon_o6() -> FiniteLattice {
    build(
        &["0", "a", "b", "b⊥", "a⊥", "1"],
        &[
            ("0", "a"),
            ("a", "b"),
            ("b", "1"),
            ("0", "b⊥"),
            ("b⊥", "a⊥"),
            ("a⊥", "1"),
        ],
        &[("a", "a⊥"), ("b", "b⊥")],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::{self, Law};

    #[test]
    fn egg_single_pair_structure() {
        let l = egg_single_pair();
        assert_eq!(l.len(), 8);
        assert_eq!(l.atoms(), vec![l.id("s"), l.id("m"), l.id("l")]);
        // not large implies medium or small
        assert_eq!(
            l.complement(l.id("l")).unwrap(),
            l.join(l.id("m"), l.id("s"))
        );
        assert_eq!(
            l.complement(l.id("s")).unwrap(),
            l.join(l.id("m"), l.id("l"))
        );
        assert!(laws::check_boolean(&l).holds);
    }

    #[test]
    fn egg_two_pairs_structure() {
        let l = egg_two_pairs();
        assert_eq!(l.len(), 32);
        let atoms = l.atoms();
        assert_eq!(atoms.len(), 5);
        let all = atoms.iter().fold(l.bottom(), |acc, &a| l.join(acc, a));
        assert_eq!(all, l.top());
        assert!(laws::check_distributive(&l).holds);
    }

    #[test]
    fn stern_gerlach_single_structure() {
        let l = stern_gerlach_single();
        assert_eq!(l.len(), 8);
        let (p, z, m) = (l.id("V+"), l.id("V0"), l.id("V-"));
        assert_eq!(l.atoms(), vec![p, z, m]);
        assert_eq!(l.meet(p, z), l.bottom());
        assert_eq!(l.complement(p).unwrap(), l.id("V+⊥"));
        assert_eq!(l.complement(p).unwrap(), l.join(z, m));
        for (i, j) in [(p, z), (p, m), (z, m)] {
            assert!(l.leq(i, l.complement(j).unwrap()));
        }
        assert!(laws::check_boolean(&l).holds);
    }

    #[test]
    fn stern_gerlach_double_quoted_relations() {
        let l = stern_gerlach_double();
        let (hp, vm, vmc) = (l.id("H+"), l.id("V-"), l.id("V-⊥"));
        assert_eq!(l.meet(vm, vmc), l.bottom());
        assert_eq!(l.join(hp, vm), l.top());
        assert_eq!(l.join(hp, vmc), vmc);
        assert_eq!(l.join(hp, l.meet(vm, vmc)), hp);
        assert_eq!(l.meet(l.join(hp, vm), l.join(hp, vmc)), vmc);
    }

    #[test]
    fn stern_gerlach_double_orthomodularity_fails_on_the_cross_order() {
        // H+ ≤ V-⊥ and H+ ∨ V- = 1 force V-⊥ ∧ H+⊥ = 0, so
        // H+ ∨ (V-⊥ ∧ H+⊥) = H+ ≠ V-⊥.
        let l = stern_gerlach_double();
        let r = laws::check_orthomodular(&l).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(w.elements, vec![l.id("V-⊥"), l.id("H+")]);
        assert_eq!((w.lhs, w.rhs), (l.id("V-⊥"), l.id("H+")));
    }

    #[test]
    fn hexagon_fails_orthomodularity() {
        let l = hexagon_o6();
        let reports = laws::classify(&l);
        assert!(laws::holds(&reports, Law::Orthocomplemented));
        assert!(!laws::holds(&reports, Law::Orthomodular));
    }

    #[test]
    fn by_name_covers_every_name() {
        for name in NAMES {
            assert!(by_name(name).is_some(), "{name}");
        }
        assert!(by_name("sg3").is_none());
    }
}
