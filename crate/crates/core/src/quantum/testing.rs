//! Seeded random unitaries and states for tests.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{CMatrix, CVector, DensityOperator, Tolerance};

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(StandardNormal.sample(r), StandardNormal.sample(r))
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal folded back into Q.
pub(crate) fn random_unitary(r: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| gaussian(r));
    let (q, rr) = g.qr().unpack();
    let mut q = q;
    for j in 0..n {
        let d = rr[(j, j)];
        let phase = d / d.norm();
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

#[allow(dead_code)]
pub(crate) fn random_state(r: &mut ChaCha8Rng, n: usize) -> CVector {
    let v = CVector::from_fn(n, |_, _| gaussian(r));
    let norm = v.norm();
    v.unscale(norm)
}

/// Full-rank mixed state `G G† / tr(G G†)`.
pub(crate) fn random_density(r: &mut ChaCha8Rng, n: usize) -> DensityOperator {
    let g = CMatrix::from_fn(n, n, |_, _| gaussian(r));
    let m = &g * g.adjoint();
    let t = m.trace().re;
    DensityOperator::new(m.unscale(t), Tolerance::default()).expect("G G† is a state")
}
