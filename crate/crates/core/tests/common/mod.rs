//! Seeded random matrices shared by the integration tests.

#![allow(dead_code)]

use num_complex::Complex64;
use qlogic::quantum::{CMatrix, CVector, DensityOperator, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(r: &mut impl Rng) -> Complex64 {
    Complex64::new(StandardNormal.sample(r), StandardNormal.sample(r))
}

/// Haar unitary from the QR factorization of a complex Gaussian matrix,
/// with the phases of R's diagonal moved into Q.
pub fn random_unitary(r: &mut impl Rng, n: usize) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| gaussian(r));
    let (mut q, rr) = g.qr().unpack();
    for j in 0..n {
        let d = rr[(j, j)];
        let phase = d / d.norm();
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Uniformly random unit vector.
pub fn random_state(r: &mut impl Rng, n: usize) -> CVector {
    let v = CVector::from_fn(n, |_, _| gaussian(r));
    let norm = v.norm();
    v.unscale(norm)
}

/// Full-rank mixed state `G G† / tr(G G†)`.
pub fn random_density(r: &mut impl Rng, n: usize) -> DensityOperator {
    let g = CMatrix::from_fn(n, n, |_, _| gaussian(r));
    let m = &g * g.adjoint();
    let t = m.trace().re;
    DensityOperator::new(m.unscale(t), Tolerance::default()).expect("G G† is a state")
}

/// Probability vector with every entry at least `floor / n`.
pub fn random_weights(r: &mut impl Rng, n: usize, floor: f64) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| r.gen::<f64>() + floor).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}
