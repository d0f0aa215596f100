//! Experiment builders: an N-slit interferometer and a spin-1
//! Stern–Gerlach cascade.
//!
//! A [`YoungSlits`] takes amplitudes as primitive inputs: `a_j = ⟨j|S⟩` from
//! the source to slit `j`, an optional wall amplitude `a_C` for the source
//! missing every slit, and `d_kj = ⟨D_k|j⟩` from slit `j` to detector `k`.
//! The two slit probabilities are closed-form sums over these amplitudes;
//! [`YoungSlits::to_question_space`] embeds the same experiment as question
//! families so the query language can be cross-checked against them.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::io;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::quantum::{
    transition_matrix, CMatrix, CVector, DensityOperator, FamilySet, QuantumError, QuestionFamily,
    Tolerance,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("an interferometer needs at least one slit")]
    NoSlits,
    #[error("an interferometer needs at least one detector")]
    NoDetectors,
    #[error("source amplitudes have total weight {total}, expected 1")]
    NotNormalized { total: f64 },
    #[error("detector {row} has {found} amplitudes, expected {expected}")]
    DetectorRowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("detector bank is not contractive: largest eigenvalue of M M† is {max_eigenvalue}")]
    DetectorsNotContractive { max_eigenvalue: f64 },
    #[error("detector index {index} out of range for {count} detectors")]
    BadDetectorIndex { index: usize, count: usize },
    #[error("slit index {index} out of range for {count} slits")]
    BadSlitIndex { index: usize, count: usize },
    #[error("a sweep needs at least 2 steps, got {0}")]
    TooFewSteps(usize),
    #[error("{expected} labels expected, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// Default slit labels: A, B, then letters from E on (C names the wall and
/// D the detectors); past Z, `S<j>`.
pub fn default_slit_labels(n: usize) -> Vec<String> {
    let letters = ('A'..='Z').filter(|c| *c != 'C' && *c != 'D');
    letters
        .map(String::from)
        .chain((24..).map(|j| format!("S{j}")))
        .take(n)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct YoungSlits {
    source: Vec<Complex64>,
    wall: Complex64,
    detectors: CMatrix,
    slit_labels: Vec<String>,
    wall_label: String,
    detector_labels: Vec<String>,
}

impl YoungSlits {
    /// Builds an interferometer from source amplitudes (one per slit), an
    /// optional wall amplitude and a detector matrix with one row per
    /// detector and one column per slit.
    ///
    /// Without a wall amplitude the wall takes the missing weight
    /// `sqrt(1 - Σ|a_j|²)`. The detector bank must satisfy `M M† ≼ I` so
    /// that every detector state fits in one orthonormal family.
    pub fn new(
        source: Vec<Complex64>,
        wall: Option<Complex64>,
        detectors: CMatrix,
        tol: Tolerance,
    ) -> Result<Self, ScenarioError> {
        let n = source.len();
        if n == 0 {
            return Err(ScenarioError::NoSlits);
        }
        if detectors.nrows() == 0 {
            return Err(ScenarioError::NoDetectors);
        }
        if detectors.ncols() != n {
            return Err(ScenarioError::DetectorRowLength {
                row: 0,
                expected: n,
                found: detectors.ncols(),
            });
        }
        if source
            .iter()
            .chain(detectors.iter())
            .any(|z| !z.is_finite())
        {
            return Err(QuantumError::NonFinite.into());
        }
        let slit_weight: f64 = source.iter().map(|a| a.norm_sqr()).sum();
        let wall = match wall {
            Some(w) => w,
            None if slit_weight <= 1.0 + tol.validation => {
                Complex64::new((1.0 - slit_weight).max(0.0).sqrt(), 0.0)
            }
            None => return Err(ScenarioError::NotNormalized { total: slit_weight }),
        };
        let total = slit_weight + wall.norm_sqr();
        if (total - 1.0).abs() > tol.validation {
            return Err(ScenarioError::NotNormalized { total });
        }
        let gram = &detectors * detectors.adjoint();
        let max_eigenvalue = gram
            .symmetric_eigenvalues()
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        if max_eigenvalue > 1.0 + tol.validation {
            return Err(ScenarioError::DetectorsNotContractive { max_eigenvalue });
        }
        let k = detectors.nrows();
        Ok(YoungSlits {
            source,
            wall,
            detectors,
            slit_labels: default_slit_labels(n),
            wall_label: "C".into(),
            detector_labels: (0..k).map(|i| format!("D{i}")).collect(),
        })
    }

    /// Same as [`YoungSlits::new`] with detector rows given as vectors.
    pub fn from_rows(
        source: Vec<Complex64>,
        wall: Option<Complex64>,
        rows: &[Vec<Complex64>],
        tol: Tolerance,
    ) -> Result<Self, ScenarioError> {
        let n = source.len();
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(ScenarioError::DetectorRowLength {
                row,
                expected: n,
                found: r.len(),
            });
        }
        let m = CMatrix::from_fn(rows.len(), n, |k, j| rows[k][j]);
        Self::new(source, wall, m, tol)
    }

    /// Replaces the outcome labels.
    pub fn with_labels(
        mut self,
        slits: Vec<String>,
        wall: String,
        detectors: Vec<String>,
    ) -> Result<Self, ScenarioError> {
        if slits.len() != self.n_slits() {
            return Err(ScenarioError::LabelCount {
                expected: self.n_slits(),
                found: slits.len(),
            });
        }
        if detectors.len() != self.n_detectors() {
            return Err(ScenarioError::LabelCount {
                expected: self.n_detectors(),
                found: detectors.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        for l in slits.iter().chain([&wall]) {
            if !seen.insert(l.as_str()) {
                return Err(ScenarioError::DuplicateLabel(l.clone()));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for l in &detectors {
            if !seen.insert(l.as_str()) {
                return Err(ScenarioError::DuplicateLabel(l.clone()));
            }
        }
        self.slit_labels = slits;
        self.wall_label = wall;
        self.detector_labels = detectors;
        Ok(self)
    }

    pub fn n_slits(&self) -> usize {
        self.source.len()
    }

    pub fn n_detectors(&self) -> usize {
        self.detectors.nrows()
    }

    pub fn source(&self) -> &[Complex64] {
        &self.source
    }

    pub fn wall(&self) -> Complex64 {
        self.wall
    }

    pub fn detectors(&self) -> &CMatrix {
        &self.detectors
    }

    pub fn slit_labels(&self) -> &[String] {
        &self.slit_labels
    }

    pub fn wall_label(&self) -> &str {
        &self.wall_label
    }

    pub fn detector_labels(&self) -> &[String] {
        &self.detector_labels
    }

    fn check_detector(&self, k: usize) -> Result<(), ScenarioError> {
        if k >= self.n_detectors() {
            return Err(ScenarioError::BadDetectorIndex {
                index: k,
                count: self.n_detectors(),
            });
        }
        Ok(())
    }

    /// Amplitudes `d_kj a_j` of the individual paths to detector `k`.
    fn paths(&self, k: usize) -> impl Iterator<Item = Complex64> + '_ {
        self.source
            .iter()
            .enumerate()
            .map(move |(j, a)| self.detectors[(k, j)] * a)
    }

    /// Detector `k` fires and the slit is known: `Σ_j |d_kj a_j|²`.
    pub fn slit_prob_distinguishable(&self, k: usize) -> Result<f64, ScenarioError> {
        self.check_detector(k)?;
        Ok(self.paths(k).map(|z| z.norm_sqr()).sum())
    }

    /// Detector `k` fires and the slit is unknown: `|Σ_j d_kj a_j|²`.
    pub fn slit_prob_indistinguishable(&self, k: usize) -> Result<f64, ScenarioError> {
        self.check_detector(k)?;
        Ok(self.paths(k).sum::<Complex64>().norm_sqr())
    }

    /// `2 Σ_{j<l} Re(d_kj a_j conj(d_kl a_l))`, the difference between the
    /// two slit probabilities, computed from the cross terms directly.
    pub fn interference_term(&self, k: usize) -> Result<f64, ScenarioError> {
        self.check_detector(k)?;
        let z: Vec<Complex64> = self.paths(k).collect();
        let mut sum = 0.0;
        for j in 0..z.len() {
            for l in j + 1..z.len() {
                sum += (z[j] * z[l].conj()).re;
            }
        }
        Ok(2.0 * sum)
    }

    /// Places a phase plate `e^{iφ}` behind `slit`: every detector amplitude
    /// `d_k,slit` picks up the phase. `M M†` is unchanged, so the result is
    /// valid whenever `self` is.
    pub fn with_phase(&self, slit: usize, phi: f64) -> Result<Self, ScenarioError> {
        if slit >= self.n_slits() {
            return Err(ScenarioError::BadSlitIndex {
                index: slit,
                count: self.n_slits(),
            });
        }
        let mut out = self.clone();
        let phase = Complex64::from_polar(1.0, phi);
        for z in out.detectors.column_mut(slit).iter_mut() {
            *z *= phase;
        }
        Ok(out)
    }

    /// Embeds the experiment in a space of dimension `N + 1 + K`:
    ///
    /// * `slits`: the canonical basis, labelled slits, wall, then one
    ///   auxiliary outcome per detector (`X0`, ...);
    /// * `screen`: detector states `|D_k⟩` whose slit components are
    ///   `conj(d_kj)`, completed on the auxiliary coordinates by the rows of
    ///   `sqrt(I - M M†)` so they are orthonormal, then by Gram–Schmidt
    ///   (`X0`, ...);
    /// * `source`: `|S⟩ = Σ a_j |j⟩ + a_C |C⟩` completed by Gram–Schmidt
    ///   (`S1`, ...).
    ///
    /// The returned prior is the pure state `|S⟩`.
    pub fn to_question_space(
        &self,
        tol: Tolerance,
    ) -> Result<(FamilySet, DensityOperator), ScenarioError> {
        let (n, k) = (self.n_slits(), self.n_detectors());
        let dim = n + 1 + k;
        let zero = Complex64::new(0.0, 0.0);

        let aux: Vec<String> = (0..k).map(|i| format!("X{i}")).collect();
        let slit_family = QuestionFamily::canonical(
            self.slit_labels
                .iter()
                .cloned()
                .chain([self.wall_label.clone()])
                .chain(aux.iter().cloned()),
        )?;

        let rest =
            hermitian_sqrt(&(CMatrix::identity(k, k) - &self.detectors * self.detectors.adjoint()));
        let detector_states: Vec<CVector> = (0..k)
            .map(|r| {
                CVector::from_fn(dim, |i, _| {
                    if i < n {
                        self.detectors[(r, i)].conj()
                    } else if i == n {
                        zero
                    } else {
                        rest[(r, i - n - 1)].conj()
                    }
                })
            })
            .collect();
        let screen_labels = self
            .detector_labels
            .iter()
            .cloned()
            .chain((0..dim - k).map(|i| format!("X{i}")));
        let screen =
            QuestionFamily::from_unitary(complete_basis(detector_states, dim), screen_labels, tol)?;

        let psi = CVector::from_fn(dim, |i, _| match i {
            i if i < n => self.source[i],
            i if i == n => self.wall,
            _ => zero,
        });
        let source_labels =
            std::iter::once("S".to_string()).chain((1..dim).map(|i| format!("S{i}")));
        let source = QuestionFamily::from_unitary(
            complete_basis(vec![psi.clone()], dim),
            source_labels,
            tol,
        )?;

        let mut set = FamilySet::new();
        set.insert("source", source)?;
        set.insert("slits", slit_family)?;
        set.insert("screen", screen)?;
        Ok((set, DensityOperator::pure(&psi, tol)?))
    }
}

/// Square root of a Hermitian positive semidefinite matrix; tiny negative
/// eigenvalues from rounding are treated as zero.
fn hermitian_sqrt(m: &CMatrix) -> CMatrix {
    let eig = m.clone().symmetric_eigen();
    let roots = eig
        .eigenvalues
        .map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));
    &eig.eigenvectors * CMatrix::from_diagonal(&roots) * eig.eigenvectors.adjoint()
}

/// Extends orthonormal `vectors` to a basis of `C^dim` by Gram–Schmidt over
/// the canonical basis vectors, returned as columns.
fn complete_basis(mut vectors: Vec<CVector>, dim: usize) -> CMatrix {
    for e in 0..dim {
        if vectors.len() == dim {
            break;
        }
        let mut v = CVector::zeros(dim);
        v[e] = Complex64::new(1.0, 0.0);
        // two passes keep the result orthogonal to working precision
        for _ in 0..2 {
            for u in &vectors {
                let c = u.dotc(&v);
                v -= u * c;
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            vectors.push(v.unscale(norm));
        }
    }
    CMatrix::from_columns(&vectors)
}

/// Two slits with equal source amplitudes `1/√2` and two detectors with
/// rows `(1, e^{iφ})/√2` and `(1, -e^{iφ})/√2`, a complete bank. Equal to
/// the `φ = 0` instrument with a phase plate `φ` behind slit B.
pub fn balanced_two_slit(phi: f64) -> YoungSlits {
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let e = Complex64::from_polar(FRAC_1_SQRT_2, phi);
    let d = CMatrix::from_row_slice(2, 2, &[s, e, s, -e]);
    YoungSlits::new(vec![s, s], None, d, Tolerance::default()).expect("balanced two-slit is valid")
}

/// `n` equally lit slits seen by `n` far-field detectors with phases
/// `d_kj = e^{2πi jk/n} / √n`.
pub fn far_field(n: usize) -> Result<YoungSlits, ScenarioError> {
    if n == 0 {
        return Err(ScenarioError::NoSlits);
    }
    let scale = 1.0 / (n as f64).sqrt();
    let d = CMatrix::from_fn(n, n, |k, j| {
        Complex64::from_polar(scale, 2.0 * PI * (j * k) as f64 / n as f64)
    });
    YoungSlits::new(
        vec![Complex64::new(scale, 0.0); n],
        None,
        d,
        Tolerance::default(),
    )
}

/// Phase path for a sweep: a phase plate behind `slit` runs from `start` to
/// `end` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePath {
    pub slit: usize,
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub phi: f64,
    pub p_distinguishable: f64,
    pub p_indistinguishable: f64,
    pub interference: f64,
}

/// Evaluates both slit probabilities at detector `k` along `steps` evenly
/// spaced phases, endpoints included.
pub fn phase_sweep(
    y: &YoungSlits,
    k: usize,
    path: PhasePath,
    steps: usize,
) -> Result<Vec<SweepRow>, ScenarioError> {
    if steps < 2 {
        return Err(ScenarioError::TooFewSteps(steps));
    }
    y.check_detector(k)?;
    (0..steps)
        .map(|i| {
            let phi = path.start + (path.end - path.start) * i as f64 / (steps - 1) as f64;
            let v = y.with_phase(path.slit, phi)?;
            Ok(SweepRow {
                phi,
                p_distinguishable: v.slit_prob_distinguishable(k)?,
                p_indistinguishable: v.slit_prob_indistinguishable(k)?,
                interference: v.interference_term(k)?,
            })
        })
        .collect()
}

pub const SWEEP_CSV_HEADER: &str = "phi,p_distinguishable,p_indistinguishable,interference";

/// Writes a sweep as CSV. Values use the shortest representation that
/// round-trips (exponent form for extreme magnitudes), so reruns are
/// byte-identical.
pub fn write_sweep_csv(rows: &[SweepRow], mut out: impl io::Write) -> io::Result<()> {
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{:?},{:?},{:?},{:?}",
            r.phi, r.p_distinguishable, r.p_indistinguishable, r.interference
        )?;
    }
    Ok(())
}

pub const VERTICAL_LABELS: [&str; 3] = ["V+", "V0", "V-"];
pub const HORIZONTAL_LABELS: [&str; 3] = ["H+", "H0", "H-"];

/// A spin-1 particle filtered by one Stern–Gerlach orientation and then
/// measured in another. Column `j` of `U` is the `j`-th outcome of the
/// second orientation written in the first orientation's basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SgCascade {
    vertical: QuestionFamily,
    horizontal: QuestionFamily,
}

impl SgCascade {
    pub fn new(u: CMatrix, tol: Tolerance) -> Result<Self, ScenarioError> {
        if (u.nrows(), u.ncols()) != (3, 3) {
            return Err(QuantumError::DimensionMismatch {
                expected: 3,
                found: u.nrows().max(u.ncols()),
            }
            .into());
        }
        Ok(SgCascade {
            vertical: QuestionFamily::canonical(VERTICAL_LABELS)?,
            horizontal: QuestionFamily::from_unitary(u, HORIZONTAL_LABELS, tol)?,
        })
    }

    /// Apparatus rotated by `theta` about the beam axis.
    pub fn rotated(theta: f64) -> Self {
        Self::new(spin_one_rotation(theta), Tolerance::default()).expect("rotation is unitary")
    }

    pub fn vertical(&self) -> &QuestionFamily {
        &self.vertical
    }

    pub fn horizontal(&self) -> &QuestionFamily {
        &self.horizontal
    }

    /// Both orientations as question families named `vertical` and
    /// `horizontal`.
    pub fn families(&self) -> FamilySet {
        let mut set = FamilySet::new();
        set.insert("vertical", self.vertical.clone())
            .expect("fresh set");
        set.insert("horizontal", self.horizontal.clone())
            .expect("same dimension");
        set
    }
}

/// Spin-1 rotation matrix `exp(-iθ J_y)` in the `m = +1, 0, -1` basis.
pub fn spin_one_rotation(theta: f64) -> CMatrix {
    let (s, c) = theta.sin_cos();
    let r = s * FRAC_1_SQRT_2;
    let m = [
        (1.0 + c) / 2.0,
        -r,
        (1.0 - c) / 2.0,
        r,
        c,
        -r,
        (1.0 - c) / 2.0,
        r,
        (1.0 + c) / 2.0,
    ];
    CMatrix::from_row_slice(3, 3, &m.map(|x| Complex64::new(x, 0.0)))
}

/// Entry `(i, j)` is the probability of horizontal outcome `j` for a
/// particle that passed vertical outcome `i`: `|U_ij|²`.
pub fn sg_cascade_table(c: &SgCascade) -> DMatrix<f64> {
    transition_matrix(&c.vertical, &c.horizontal).expect("both families are 3-dimensional")
}
