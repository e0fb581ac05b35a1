//! Spectra of `W = Z Z*` for quaternion skew-symmetric `Z`.
//!
//! For `n = 2`, `W = |a|² I`. For `n = 3`, writing
//! `Z = [[0, a, c], [−a, 0, b], [−c, −b, 0]]`, `W` is positive definite exactly
//! when `a ≠ 0` and `c a⁻¹ b ≠ b a⁻¹ c`; otherwise its spectrum is `(0, s, s)`
//! with `s = |a|² + |b|² + |c|²`. From `n = 4` on, `W` can have `n` distinct
//! positive eigenvalues, which rules out the pairing that the complex case
//! guarantees.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hua::positive_clusters_even;
use crate::quat_matrix::QuatMatrix;
use crate::quaternion::Quaternion;
use crate::rng::trial_seed;
use crate::spectra::{gram_product, is_positive_definite, quat_inverse, right_eigenvalues_hermitian};

pub const DEFAULT_SCALE: f64 = 1.0;
pub const DEFAULT_GAP_TOL: f64 = 1e-3;

/// The free entries of a 3×3 skew-symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SkewTriple {
    pub a: Quaternion,
    pub b: Quaternion,
    pub c: Quaternion,
}

impl SkewTriple {
    pub fn new(a: Quaternion, b: Quaternion, c: Quaternion) -> Self {
        Self { a, b, c }
    }

    /// `a = 1, b = i + j, c = i + 2j`, where `bc = −3 + k` and `cb = −3 − k`.
    pub fn noncommuting_example() -> Self {
        Self::new(Quaternion::ONE, Quaternion::new(0.0, 1.0, 1.0, 0.0), Quaternion::new(0.0, 1.0, 2.0, 0.0))
    }

    pub fn to_matrix(&self) -> QuatMatrix {
        let o = Quaternion::ZERO;
        let (a, b, c) = (self.a, self.b, self.c);
        QuatMatrix::from_rows(&[vec![o, a, c], vec![-a, o, b], vec![-c, -b, o]])
    }

    /// Reads the triple off a 3×3 matrix's upper triangle.
    pub fn from_matrix(z: &QuatMatrix) -> Result<Self> {
        if (z.rows(), z.cols()) != (3, 3) {
            return Err(Error::DimensionMismatch(format!("expected 3x3, got {}x{}", z.rows(), z.cols())));
        }
        Ok(Self::new(z[(0, 1)], z[(1, 2)], z[(0, 2)]))
    }

    /// `|a|² + |b|² + |c|²`, half the trace of `W`.
    pub fn half_trace(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr()
    }

    fn is_zero(&self) -> bool {
        self.half_trace() == 0.0
    }

    /// `|c a⁻¹ b − b a⁻¹ c|`, or `None` when `a = 0`.
    pub fn condition_gap(&self) -> Option<f64> {
        let ai = self.a.inv().ok()?;
        Some((self.c * ai * self.b - self.b * ai * self.c).norm())
    }

    /// `|conj(a⁻¹b)·conj(a⁻¹c) − conj(a⁻¹c)·conj(a⁻¹b)|`, the same condition
    /// after reducing to `a = 1`. Equals [`Self::condition_gap`] divided by `|a|`.
    pub fn reduced_condition_gap(&self) -> Option<f64> {
        let ai = self.a.inv().ok()?;
        let u = (ai * self.b).conj();
        let v = (ai * self.c).conj();
        Some((u * v - v * u).norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkewCase {
    /// Spectrum `(0, s, s)`.
    Degenerate,
    /// `W` positive definite.
    Solid,
}

impl std::fmt::Display for SkewCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Degenerate => "degenerate",
            Self::Solid => "solid",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub case_label: SkewCase,
    /// `(0, s, s)` when degenerate, empty when solid.
    pub predicted_values: Vec<f64>,
    /// Empty until verified.
    pub computed_values: Vec<f64>,
    /// Largest `|predicted − computed|`; zero for solid cases.
    pub max_deviation: f64,
    /// `|c a⁻¹ b − b a⁻¹ c|`, zero when `a = 0`.
    pub condition_lhs_rhs_gap: f64,
    /// Whether the computed spectrum matches the prediction; `None` before
    /// verification.
    pub agrees: Option<bool>,
}

/// Predicts the spectrum shape of `W` for the triple.
///
/// Solid iff `|a| > tol` and `|c a⁻¹ b − b a⁻¹ c| > tol·max(1, |a⁻¹||b||c|)`.
pub fn classify_3x3(t: &SkewTriple, tol: f64) -> Result<SpectrumReport> {
    if t.is_zero() {
        return Err(Error::ZeroTriple);
    }
    let gap = t.condition_gap().unwrap_or(0.0);
    let solid = t.a.norm() > tol && {
        let bound = (t.b.norm() * t.c.norm() / t.a.norm()).max(1.0);
        gap > tol * bound
    };
    let (case_label, predicted_values) = if solid {
        (SkewCase::Solid, Vec::new())
    } else {
        let s = t.half_trace();
        (SkewCase::Degenerate, vec![0.0, s, s])
    };
    Ok(SpectrumReport {
        case_label,
        predicted_values,
        computed_values: Vec::new(),
        max_deviation: 0.0,
        condition_lhs_rhs_gap: gap,
        agrees: None,
    })
}

/// Classifies, then computes the right spectrum of `W` and compares. A
/// degenerate prediction agrees when every value is within
/// `tol·max(1, s)`; a solid one when the smallest value exceeds `tol`.
pub fn verify_classification(t: &SkewTriple, tol: f64) -> Result<SpectrumReport> {
    let mut report = classify_3x3(t, tol)?;
    let w = gram_product(&t.to_matrix(), tol)?;
    let spectrum = right_eigenvalues_hermitian(&w, tol)?;
    report.computed_values = spectrum.values;
    match report.case_label {
        SkewCase::Degenerate => {
            report.max_deviation = report
                .predicted_values
                .iter()
                .zip(&report.computed_values)
                .map(|(p, c)| (p - c).abs())
                .fold(0.0, f64::max);
            report.agrees = Some(report.max_deviation <= tol * t.half_trace().max(1.0));
        }
        SkewCase::Solid => {
            report.agrees = Some(report.computed_values[0] > tol);
        }
    }
    Ok(report)
}

/// `Z Z*` positive definite.
pub fn is_solid(z: &QuatMatrix, tol: f64) -> Result<bool> {
    is_positive_definite(&gram_product(z, tol)?, tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InverseSkewReport {
    pub invertible: bool,
    pub inverse: Option<QuatMatrix>,
    /// `‖(Z⁻¹)ᵀ + Z⁻¹‖_F` when the inverse exists.
    pub skew_deviation: Option<f64>,
}

/// Inverts a skew-symmetric `Z` (if possible) and measures how far the
/// inverse is from skew-symmetric.
pub fn inverse_skew_report(z: &QuatMatrix, tol: f64) -> Result<InverseSkewReport> {
    z.require_square()?;
    let deviation = z.skew_deviation()?;
    if deviation > tol * z.frobenius_norm().max(1.0) {
        return Err(Error::NotSkewSymmetric { deviation });
    }
    match quat_inverse(z, tol) {
        Ok(inv) => {
            let dev = inv.transpose().add(&inv)?.frobenius_norm();
            Ok(InverseSkewReport { invertible: true, inverse: Some(inv), skew_deviation: Some(dev) })
        }
        Err(Error::Singular { .. }) => Ok(InverseSkewReport { invertible: false, inverse: None, skew_deviation: None }),
        Err(e) => Err(e),
    }
}

/// Whether every positive eigenvalue cluster of `W = Z Z*` has even size.
pub fn quaternion_even_multiplicity_check(z: &QuatMatrix, cluster_tol: f64) -> Result<bool> {
    let w = gram_product(z, crate::DEFAULT_TOL)?;
    let spectrum = right_eigenvalues_hermitian(&w, crate::DEFAULT_TOL)?;
    Ok(positive_clusters_even(&spectrum.values, cluster_tol))
}

/// A random skew-symmetric matrix whose `W` has `n` positive, well separated
/// eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub trial: u64,
    /// Seed passed to [`QuatMatrix::random_skew_symmetric`].
    pub seed: u64,
    pub z: QuatMatrix,
    /// Right eigenvalues of `W`, ascending.
    pub eigenvalues: Vec<f64>,
    /// `min_k (λ_{k+1} − λ_k) / λ_{k+1}`.
    pub min_relative_gap: f64,
}

pub fn min_relative_gap(values: &[f64]) -> f64 {
    values.windows(2).map(|w| (w[1] - w[0]) / w[1].abs()).fold(f64::INFINITY, f64::min)
}

fn evaluate_trial(n: usize, seed: u64, trial: u64, scale: f64, gap_tol: f64) -> Result<Option<Candidate>> {
    let tseed = trial_seed(seed, trial);
    let z = QuatMatrix::random_skew_symmetric(n, tseed, scale)?;
    let w = gram_product(&z, crate::DEFAULT_TOL)?;
    let spectrum = right_eigenvalues_hermitian(&w, crate::DEFAULT_TOL)?;
    let floor = crate::DEFAULT_TOL * w.frobenius_norm().max(1.0);
    let gap = min_relative_gap(&spectrum.values);
    if spectrum.min() > floor && gap > gap_tol {
        Ok(Some(Candidate { trial, seed: tseed, z, eigenvalues: spectrum.values, min_relative_gap: gap }))
    } else {
        Ok(None)
    }
}

/// Samples `trials` random `n×n` skew-symmetric matrices (trial `t` uses seed
/// [`trial_seed`]`(seed, t)`) and keeps those whose `W` has all eigenvalues
/// positive with relative gaps above `gap_tol`. Trials run in parallel on the
/// current rayon pool; the output is in trial order regardless.
///
/// A hit shows `W` has no eigenvalue pairing; it is evidence, not proof, that
/// no unitary `U` splits `U Z U*` into smaller skew-symmetric blocks.
pub fn basic_candidate_search(n: usize, trials: u64, seed: u64, scale: f64, gap_tol: f64) -> Result<Vec<Candidate>> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("search dimension {n} < 4")));
    }
    let found: Vec<Option<Candidate>> =
        (0..trials).into_par_iter().map(|t| evaluate_trial(n, seed, t, scale, gap_tol)).collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

const DISTINCT_REAL: [[f64; 4]; 4] =
    [[0.0, 1.0, 3.0, -25.0], [-1.0, 0.0, -13.0, -10.0], [-3.0, 13.0, 0.0, 10.0], [25.0, 10.0, -10.0, 0.0]];
const DISTINCT_I: [[f64; 4]; 4] =
    [[0.0, 3.0, 1.0, 7.0], [-3.0, 0.0, 1.0, -6.0], [-1.0, -1.0, 0.0, 13.0], [-7.0, 6.0, -13.0, 0.0]];
const DISTINCT_J: [[f64; 4]; 4] =
    [[0.0, 4.0, -1.0, -3.0], [-4.0, 0.0, 1.0, 0.0], [1.0, -1.0, 0.0, 3.0], [3.0, 0.0, -3.0, 0.0]];
const DISTINCT_K: [[f64; 4]; 4] =
    [[0.0, -1.0, 0.0, 9.0], [1.0, 0.0, -12.0, -3.0], [0.0, 12.0, 0.0, 3.0], [-9.0, 3.0, -3.0, 0.0]];

fn from_parts(k: &[[f64; 4]; 4]) -> QuatMatrix {
    QuatMatrix::from_fn(4, 4, |i, j| Quaternion::new(DISTINCT_REAL[i][j], DISTINCT_I[i][j], DISTINCT_J[i][j], k[i][j]))
}

/// Integer 4×4 skew-symmetric matrix `Z₁ + Z₂i + Z₃j + Z₄k` whose `W` has four
/// distinct positive right eigenvalues (≈ 141.34, 235.46, 1238.34, 1482.87).
pub fn distinct_spectrum_4x4() -> QuatMatrix {
    from_parts(&DISTINCT_K)
}

/// The same matrix with the `j` part reused as the `k` part
/// (`Z₁ + Z₂i + Z₃j + Z₃k`).
pub fn distinct_spectrum_4x4_repeated_jk() -> QuatMatrix {
    from_parts(&DISTINCT_J)
}
