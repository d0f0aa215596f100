//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every criterion runs at its stated tolerance and time budget; the test
//! fails if any criterion fails. Run with `--nocapture` to see the lines.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use qlogic::catalog;
use qlogic::laws::{check_distributive, check_orthomodular, classify, holds, Law};
use qlogic::quantum::{
    born, classical_bayes_ratio, seq_conditional, transition_matrix, validate_axioms, CMatrix,
    CVector, DensityOperator, FamilySet, Projector, QuantumError, QuestionFamily, Tolerance,
};
use qlogic::query::{compile, evaluate, parse_query, CompileError};
use qlogic::scenarios::{balanced_two_slit, phase_sweep, PhasePath, YoungSlits};
use rand::Rng;

use common::{random_density, random_state, random_unitary, random_weights, rng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn criterion_1() -> Outcome {
    let l = catalog::stern_gerlach_double();
    let r = check_distributive(&l);
    ensure(!r.holds, || "distributivity unexpectedly holds".into())?;
    let w = r.witness.ok_or("no witness")?;
    let labels: Vec<&str> = w.elements.iter().map(|&x| l.label(x)).collect();
    ensure(labels == ["H+", "V-", "V-⊥"], || {
        format!("witness {labels:?}")
    })?;
    ensure(l.label(w.lhs) == "H+", || format!("lhs {}", l.label(w.lhs)))?;
    ensure(l.label(w.rhs) == "V-⊥", || {
        format!("rhs {}", l.label(w.rhs))
    })?;
    Ok(format!(
        "witness ({}), lhs = H+, rhs = V-⊥",
        labels.join(", ")
    ))
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    for (name, l) in [
        ("egg_single_pair", catalog::egg_single_pair()),
        ("egg_two_pairs", catalog::egg_two_pairs()),
    ] {
        if !holds(&classify(&l), Law::Boolean) {
            failures.push(format!("{name} is not Boolean"));
        }
    }
    let sg2 = catalog::stern_gerlach_double();
    let reports = classify(&sg2);
    if !holds(&reports, Law::Orthocomplemented) {
        failures.push("stern_gerlach_double is not orthocomplemented".into());
    }
    if holds(&reports, Law::Distributive) {
        failures.push("stern_gerlach_double is distributive".into());
    }
    let om = check_orthomodular(&sg2).map_err(|e| e.to_string())?;
    if !om.holds {
        let w = om.witness.as_ref().expect("failures carry a witness");
        let labels: Vec<&str> = w.elements.iter().map(|&x| sg2.label(x)).collect();
        failures.push(format!(
            "stern_gerlach_double is not orthomodular: fails at ({}), {}, lhs = {}, rhs = {}",
            labels.join(", "),
            w.identity,
            sg2.label(w.lhs),
            sg2.label(w.rhs)
        ));
    }
    let o6 = catalog::hexagon_o6();
    if check_orthomodular(&o6).map_err(|e| e.to_string())?.holds {
        failures.push("O6 hexagon is orthomodular".into());
    }
    if failures.is_empty() {
        Ok("eggs Boolean; sg2 orthocomplemented, orthomodular, not distributive; O6 not orthomodular".into())
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_3() -> Outcome {
    let path = PhasePath {
        slit: 1,
        start: 0.0,
        end: 2.0 * PI,
    };
    let rows = phase_sweep(&balanced_two_slit(0.0), 0, path, 64).map_err(|e| e.to_string())?;
    ensure(rows.len() == 64, || format!("{} rows", rows.len()))?;
    let mut worst: f64 = 0.0;
    for r in &rows {
        let closed = (1.0 + r.phi.cos()) / 2.0;
        worst = worst
            .max((r.p_indistinguishable - closed).abs())
            .max((r.p_distinguishable - 0.5).abs());
    }
    ensure(worst <= 1e-9, || format!("max deviation {worst:e}"))?;
    let dark = balanced_two_slit(PI)
        .slit_prob_indistinguishable(0)
        .map_err(|e| e.to_string())?;
    ensure(dark <= 1e-9, || {
        format!("p_indistinguishable(π) = {dark:e}")
    })?;
    Ok(format!(
        "64 steps, max deviation {worst:.1e}, p(π) = {dark:.1e}"
    ))
}

/// Random slit scenario: unit source vector over slits plus wall, and a
/// detector bank made of the first rows of a random unitary.
fn random_slits(r: &mut impl Rng, n: usize) -> YoungSlits {
    let psi = random_state(r, n + 1);
    let k = r.gen_range(1..=n);
    let u = random_unitary(r, n);
    let d = u.rows(0, k).into_owned();
    YoungSlits::new(
        psi.iter().take(n).cloned().collect(),
        Some(psi[n]),
        d,
        Tolerance::default(),
    )
    .expect("valid by construction")
}

fn criterion_4() -> Outcome {
    let tol = Tolerance::default();
    let mut r = rng(4);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = r.gen_range(2..=4);
        let y = random_slits(&mut r, n);
        let (set, prior) = y.to_question_space(tol).map_err(|e| e.to_string())?;
        let slits: Vec<String> = y
            .slit_labels()
            .iter()
            .map(|s| format!("{s}@slits"))
            .collect();
        for (k, det) in y.detector_labels().iter().enumerate() {
            let d = format!("{det}@screen");
            let together = format!("{d} after ({})", slits.join(" or "));
            let apart = slits
                .iter()
                .map(|s| format!("({d} after {s})"))
                .collect::<Vec<_>>()
                .join(" or ");
            let eval = |q: &str| -> Result<f64, String> {
                let plan = compile(&parse_query(q).map_err(|e| e.to_string())?, &set)
                    .map_err(|e| e.to_string())?;
                evaluate(&plan, &prior, &set, tol).map_err(|e| e.to_string())
            };
            let indist = y
                .slit_prob_indistinguishable(k)
                .map_err(|e| e.to_string())?;
            let dist = y.slit_prob_distinguishable(k).map_err(|e| e.to_string())?;
            worst = worst
                .max((eval(&together)? - indist).abs())
                .max((eval(&apart)? - dist).abs());
        }
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("50 scenarios, max deviation {worst:.1e}"))
}

fn criterion_5() -> Outcome {
    let tol = Tolerance::default();
    let mut r = rng(5);
    let (mut stochastic, mut symmetry): (f64, f64) = (0.0, 0.0);
    for i in 0..200 {
        let n = 2 + i % 5;
        let labels = |p: &'static str| (0..n).map(move |j| format!("{p}{j}"));
        let fa = QuestionFamily::from_unitary(random_unitary(&mut r, n), labels("a"), tol)
            .map_err(|e| e.to_string())?;
        let fb = QuestionFamily::from_unitary(random_unitary(&mut r, n), labels("b"), tol)
            .map_err(|e| e.to_string())?;
        let t = transition_matrix(&fa, &fb).map_err(|e| e.to_string())?;
        for j in 0..n {
            stochastic = stochastic
                .max((t.row(j).sum() - 1.0).abs())
                .max((t.column(j).sum() - 1.0).abs());
        }
        for (ia, la) in fa.labels().iter().enumerate() {
            let rho_a = DensityOperator::pure(&fa.basis().column(ia).into_owned(), tol)
                .map_err(|e| e.to_string())?;
            let pa = fa.projector(la).map_err(|e| e.to_string())?;
            for (jb, lb) in fb.labels().iter().enumerate() {
                let rho_b = DensityOperator::pure(&fb.basis().column(jb).into_owned(), tol)
                    .map_err(|e| e.to_string())?;
                let pb = fb.projector(lb).map_err(|e| e.to_string())?;
                let forward = born(&rho_a, &pb, tol).map_err(|e| e.to_string())?;
                let backward = born(&rho_b, &pa, tol).map_err(|e| e.to_string())?;
                symmetry = symmetry.max((forward - backward).abs());
            }
        }
    }
    ensure(stochastic <= 1e-10, || {
        format!("row/column sum deviation {stochastic:e}")
    })?;
    ensure(symmetry <= 1e-12, || {
        format!("symmetry deviation {symmetry:e}")
    })?;
    Ok(format!(
        "200 unitaries, sum deviation {stochastic:.1e}, symmetry deviation {symmetry:.1e}"
    ))
}

fn criterion_6() -> Outcome {
    let tol = Tolerance::with_validation(1e-10);
    let mut r = rng(6);
    let mut pairs = 0;
    for i in 0..100 {
        let n = 2 + i % 5;
        let rho = random_density(&mut r, n);
        let family = QuestionFamily::from_unitary(
            random_unitary(&mut r, n),
            (0..n).map(|j| format!("q{j}")),
            tol,
        )
        .map_err(|e| e.to_string())?;
        let report = validate_axioms(&rho, &family, tol).map_err(|e| e.to_string())?;
        ensure(report.passed(), || {
            format!("dim {n}: {:?}", report.violations)
        })?;
        pairs += report.pairs_checked;
    }
    Ok(format!(
        "100 (state, family) pairs, {pairs} additivity checks"
    ))
}

fn co_diagonal(v: &CMatrix, mask: &[bool]) -> Projector {
    let d = CVector::from_iterator(
        mask.len(),
        mask.iter().map(|&b| c(if b { 1.0 } else { 0.0 }, 0.0)),
    );
    Projector::new(
        v * CMatrix::from_diagonal(&d) * v.adjoint(),
        Tolerance::default(),
    )
    .expect("unitary conjugate of a 0/1 diagonal")
}

fn criterion_7() -> Outcome {
    let tol = Tolerance::default();
    let mut r = rng(7);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let n = 2 + i % 5;
        let v = random_unitary(&mut r, n);
        let mut mask = || {
            let mut m: Vec<bool> = (0..n).map(|_| r.gen()).collect();
            let k = r.gen_range(0..n);
            m[k] = true;
            m
        };
        let (pj, pk) = (co_diagonal(&v, &mask()), co_diagonal(&v, &mask()));
        let w = random_weights(&mut r, n, 0.05);
        let rho = DensityOperator::new(
            CMatrix::from_diagonal(&CVector::from_iterator(n, w.iter().map(|&x| c(x, 0.0)))),
            tol,
        )
        .map_err(|e| e.to_string())?;
        let sequenced = seq_conditional(&rho, std::slice::from_ref(&pj), &pk, tol)
            .map_err(|e| e.to_string())?;
        let classical = classical_bayes_ratio(&rho, &pj, &pk, tol).map_err(|e| e.to_string())?;
        worst = worst.max((sequenced - classical).abs());
    }
    ensure(worst <= 1e-12, || format!("commuting deviation {worst:e}"))?;

    // ρ = |0⟩⟨0|, P_j = |+⟩⟨+|, P_k = |0⟩⟨0|
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let zero = CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
    let plus = CVector::from_vec(vec![c(s, 0.0), c(s, 0.0)]);
    let rho = DensityOperator::pure(&zero, tol).map_err(|e| e.to_string())?;
    let proj = |v: &CVector| Projector::new(v * v.adjoint(), tol);
    let (pj, pk) = (
        proj(&plus).map_err(|e| e.to_string())?,
        proj(&zero).map_err(|e| e.to_string())?,
    );
    let sequenced =
        seq_conditional(&rho, std::slice::from_ref(&pj), &pk, tol).map_err(|e| e.to_string())?;
    let classical = classical_bayes_ratio(&rho, &pj, &pk, tol).map_err(|e| e.to_string())?;
    let gap = (sequenced - classical).abs();
    ensure(gap > 1e-3, || format!("non-commuting gap only {gap:e}"))?;
    Ok(format!(
        "100 commuting pairs, max deviation {worst:.1e}; witness ρ=|0⟩⟨0|, Pj=|+⟩⟨+|, Pk=|0⟩⟨0|: \
         sequenced {sequenced}, Bayes {classical}"
    ))
}

fn criterion_8() -> Outcome {
    let tol = Tolerance::default();
    let zero = CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
    let one = CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]);
    let rho = DensityOperator::pure(&zero, tol).map_err(|e| e.to_string())?;
    let p1 = Projector::new(&one * one.adjoint(), tol).map_err(|e| e.to_string())?;
    let p0 = Projector::new(&zero * zero.adjoint(), tol).map_err(|e| e.to_string())?;
    let zero_history = seq_conditional(&rho, &[p1], &p0, tol);
    ensure(
        matches!(
            zero_history,
            Err(QuantumError::ZeroProbabilityConditioning { .. })
        ),
        || format!("zero-probability history gave {zero_history:?}"),
    )?;

    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut set = FamilySet::new();
    set.insert(
        "z",
        QuestionFamily::canonical(["0", "1"]).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let hadamard = CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]);
    set.insert(
        "x",
        QuestionFamily::from_unitary(hadamard, ["+", "-"], tol).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let plan = |q: &str| compile(&parse_query(q).expect("well-formed"), &set);
    let overlap = plan("(+@x after 0@z) or (+@x after 0@z)");
    ensure(
        matches!(overlap, Err(CompileError::NotExclusive { .. })),
        || format!("non-exclusive sum gave {overlap:?}"),
    )?;
    let cross = plan("0@z and +@x");
    ensure(
        matches!(cross, Err(CompileError::CrossFamilyAnd { .. })),
        || format!("incompatible conjunction gave {cross:?}"),
    )?;
    Ok("ZeroProbabilityConditioning, NotExclusive, CrossFamilyAnd raised".into())
}

/// Name, check and time budget of one criterion.
type Criterion = (&'static str, fn() -> Outcome, Duration);

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        (
            "1 distributivity counterexample",
            criterion_1,
            Duration::from_secs(1),
        ),
        (
            "2 catalog classification",
            criterion_2,
            Duration::from_secs(1),
        ),
        ("3 two-slit dichotomy", criterion_3, Duration::from_secs(1)),
        (
            "4 query-path oracle equivalence",
            criterion_4,
            Duration::from_secs(5),
        ),
        (
            "5 symmetry and sum rule",
            criterion_5,
            Duration::from_secs(10),
        ),
        ("6 probability axioms", criterion_6, Duration::from_secs(10)),
        (
            "7 Lüders/Bayes reduction",
            criterion_7,
            Duration::from_secs(10),
        ),
        (
            "8 degenerate-input contracts",
            criterion_8,
            Duration::from_secs(1),
        ),
    ];
    let mut failed = Vec::new();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => {
                Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                println!("FAIL criterion {name} ({elapsed:.2?}): {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
