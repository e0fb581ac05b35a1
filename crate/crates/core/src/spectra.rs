//! Quaternion matrices through their complex adjoint.
//!
//! Writing `A = A_c + A_d j` with complex `A_c`, `A_d`, the adjoint is
//! `χ(A) = [[A_c, A_d], [−conj(A_d), conj(A_c)]]`. It is a unital
//! homomorphism that commutes with `*`, so a Hermitian `A` maps to a Hermitian
//! `χ(A)` whose spectrum is that of `A` with every value doubled.
//!
//! Matrix tolerances in this module are relative: a check with `tol` passes
//! when the deviation is at most `tol·max(1, ‖·‖_F)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex_linalg::{self, herm_eig, lu_inverse, project_out, vec_norm, ComplexMatrix};
use crate::error::{Error, Result};
use crate::quat_matrix::QuatMatrix;
use crate::quaternion::Quaternion;
use crate::DEFAULT_CLUSTER_TOL;

/// Largest allowed gap inside a doubled eigenvalue pair, relative to `max(1, ‖A‖_F)`.
pub const PAIRING_TOL: f64 = 1e-9;

pub fn chi(a: &QuatMatrix) -> ComplexMatrix {
    let (m, n) = (a.rows(), a.cols());
    ComplexMatrix::from_fn(2 * m, 2 * n, |i, j| {
        let (c, d) = a[(i % m, j % n)].to_complex_pair();
        match (i < m, j < n) {
            (true, true) => c,
            (true, false) => d,
            (false, true) => -d.conj(),
            (false, false) => c.conj(),
        }
    })
}

/// Inverse of [`chi`] on matrices with the block structure
/// `[[P, Q], [−conj(Q), conj(P)]]`, checked entrywise against absolute `tol`.
/// The two copies of each block are averaged.
pub fn chi_inverse_map(c: &ComplexMatrix, tol: f64) -> Result<QuatMatrix> {
    if !c.rows().is_multiple_of(2) || !c.cols().is_multiple_of(2) {
        return Err(Error::DimensionMismatch(format!(
            "adjoint matrix must have even dimensions, got {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    let (m, n) = (c.rows() / 2, c.cols() / 2);
    let mut deviation = 0.0f64;
    let mut data = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let p = c[(i, j)];
            let q = c[(i, j + n)];
            let r = c[(i + m, j)];
            let s = c[(i + m, j + n)];
            deviation = deviation.max((s - p.conj()).norm()).max((r + q.conj()).norm());
            let cc = 0.5 * (p + s.conj());
            let dd = 0.5 * (q - r.conj());
            data.push(Quaternion::from_complex_pair(cc, dd));
        }
    }
    if deviation > tol {
        return Err(Error::AdjointStructure { deviation });
    }
    QuatMatrix::new(m, n, data)
}

/// Real right eigenvalues of a Hermitian quaternion matrix with a unitary
/// matrix of right eigenvectors (`A x_k = x_k λ_k`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RightSpectrum {
    /// Ascending.
    pub values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors: Option<QuatMatrix>,
    /// `μ_{2k+1} − μ_{2k}` for the sorted adjoint spectrum `μ`.
    pub pairing_gaps: Vec<f64>,
    /// Largest `‖A x_k − x_k λ_k‖` over the columns.
    pub max_residual: f64,
}

impl RightSpectrum {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Eigenvector matrix; always present on values returned by
    /// [`right_eigenvalues_hermitian`].
    pub fn vectors(&self) -> &QuatMatrix {
        self.vectors.as_ref().expect("spectrum computed without vectors")
    }
}

/// `(A + A*)/2`, exactly Hermitian in floating point.
fn hermitian_part(a: &QuatMatrix) -> QuatMatrix {
    QuatMatrix::from_fn(a.rows(), a.cols(), |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5)
}

fn lift(v: &[Complex64]) -> Vec<Quaternion> {
    let n = v.len() / 2;
    (0..n).map(|i| Quaternion::from_complex_pair(v[i], -v[i + n].conj())).collect()
}

/// Second column of `χ(x)` for the quaternion vector lifted from `v`.
fn partner(v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len() / 2;
    (0..n).map(|i| -v[i + n].conj()).chain((0..n).map(|i| v[i].conj())).collect()
}

/// Groups sorted values into runs whose consecutive gaps are at most
/// `cluster_tol·max(1, max|λ|)`; returns half-open index ranges.
pub(crate) fn clusters(values: &[f64], cluster_tol: f64) -> Vec<(usize, usize)> {
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || values[k] - values[k - 1] > cluster_tol * scale {
            out.push((start, k));
            start = k;
        }
    }
    out
}

/// Right eigenvalues and eigenvectors of a Hermitian quaternion matrix.
///
/// The sorted spectrum of `χ(A)` must pair up to `PAIRING_TOL·max(1, ‖A‖_F)`.
/// Each right eigenvalue is the mean of its pair. Eigenvectors are lifted from
/// the complex eigenspaces cluster by cluster: a unit vector `v` orthogonal to
/// everything already chosen is lifted to a quaternion vector, and `v` together
/// with its partner `[−conj(v_bot); conj(v_top)]` is then excluded from later
/// choices.
pub fn right_eigenvalues_hermitian(a: &QuatMatrix, tol: f64) -> Result<RightSpectrum> {
    let n = a.require_square()?;
    let norm = a.frobenius_norm();
    let scale = norm.max(1.0);
    let deviation = a.hermitian_deviation()?;
    if deviation > tol * scale {
        return Err(Error::NotHermitian { deviation });
    }
    let h = hermitian_part(a);
    let eig = herm_eig(&chi(&h), complex_linalg::DEFAULT_EIG_TOL)?;

    let pair_tol = PAIRING_TOL * scale;
    let mut values = Vec::with_capacity(n);
    let mut pairing_gaps = Vec::with_capacity(n);
    for k in 0..n {
        let (lo, hi) = (eig.values[2 * k], eig.values[2 * k + 1]);
        let gap = hi - lo;
        if gap > pair_tol {
            return Err(Error::PairingGap { gap, tol: pair_tol });
        }
        pairing_gaps.push(gap);
        values.push(0.5 * (lo + hi));
    }

    let mut chosen: Vec<Vec<Complex64>> = Vec::with_capacity(2 * n);
    let mut columns: Vec<Vec<Quaternion>> = Vec::with_capacity(n);
    for (start, end) in clusters(&values, DEFAULT_CLUSTER_TOL) {
        let mut candidates: Vec<Vec<Complex64>> = (2 * start..2 * end).map(|j| eig.vectors.column(j)).collect();
        for _ in start..end {
            for c in candidates.iter_mut() {
                project_out(c, &chosen);
            }
            let best = candidates.iter().enumerate().map(|(i, c)| (i, vec_norm(c))).fold((0, -1.0), |b, cur| {
                if cur.1 > b.1 {
                    cur
                } else {
                    b
                }
            });
            let mut v = candidates.swap_remove(best.0);
            v.iter_mut().for_each(|x| *x /= best.1);
            columns.push(lift(&v));
            let mut w = partner(&v);
            chosen.push(v);
            project_out(&mut w, &chosen);
            let wn = vec_norm(&w);
            w.iter_mut().for_each(|x| *x /= wn);
            chosen.push(w);
        }
    }

    let vectors = QuatMatrix::from_fn(n, n, |i, j| columns[j][i]);
    let mut max_residual = 0.0f64;
    for (k, &lambda) in values.iter().enumerate() {
        let r: f64 = (0..n)
            .map(|i| {
                let ax: Quaternion = (0..n).map(|j| h[(i, j)] * vectors[(j, k)]).sum();
                (ax - vectors[(i, k)] * lambda).norm_sqr()
            })
            .sum::<f64>()
            .sqrt();
        max_residual = max_residual.max(r);
    }

    Ok(RightSpectrum { values, vectors: Some(vectors), pairing_gaps, max_residual })
}

/// `W = Z Z*` for skew-symmetric `Z`, cross-checked against `−Z Z̄`.
pub fn gram_product(z: &QuatMatrix, tol: f64) -> Result<QuatMatrix> {
    z.require_square()?;
    let znorm = z.frobenius_norm();
    let deviation = z.skew_deviation()?;
    if deviation > tol * znorm.max(1.0) {
        return Err(Error::NotSkewSymmetric { deviation });
    }
    let w = z.matmul(&z.conj_transpose())?;
    let alt = z.matmul(&z.conj())?.scale(-1.0);
    let gap = w.max_abs_diff(&alt);
    if gap > tol * (znorm * znorm).max(1.0) {
        return Err(Error::NotSkewSymmetric { deviation: gap });
    }
    Ok(w)
}

/// Inverse through the adjoint: `χ⁻¹(χ(A)⁻¹)`.
pub fn quat_inverse(a: &QuatMatrix, tol: f64) -> Result<QuatMatrix> {
    a.require_square()?;
    let inv = lu_inverse(&chi(a), tol)?;
    let structure_tol = tol * inv.frobenius_norm().max(1.0);
    chi_inverse_map(&inv, structure_tol)
}

/// Smallest right eigenvalue `≥ −tol·max(1, ‖A‖_F)`.
pub fn is_positive_semidefinite(a: &QuatMatrix, tol: f64) -> Result<bool> {
    let spectrum = right_eigenvalues_hermitian(a, tol)?;
    Ok(spectrum.min() >= -tol * a.frobenius_norm().max(1.0))
}

/// Smallest right eigenvalue `> tol·max(1, ‖A‖_F)`.
pub fn is_positive_definite(a: &QuatMatrix, tol: f64) -> Result<bool> {
    let spectrum = right_eigenvalues_hermitian(a, tol)?;
    Ok(spectrum.min() > tol * a.frobenius_norm().max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Sampler;
    use proptest::prelude::*;
    use Quaternion as Q;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Q {
        Q::new(w, x, y, z)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_quat_matrix(m: usize, n: usize, seed: u64) -> QuatMatrix {
        let mut s = Sampler::new(seed);
        QuatMatrix::from_fn(m, n, |_, _| q(s.symmetric(1.0), s.symmetric(1.0), s.symmetric(1.0), s.symmetric(1.0)))
    }

    fn random_hermitian(n: usize, seed: u64) -> QuatMatrix {
        let a = random_quat_matrix(n, n, seed);
        a.add(&a.conj_transpose()).unwrap()
    }

    fn noncommuting_z() -> QuatMatrix {
        let b = q(0.0, 1.0, 1.0, 0.0);
        let cc = q(0.0, 1.0, 2.0, 0.0);
        QuatMatrix::from_rows(&[vec![Q::ZERO, Q::ONE, cc], vec![-Q::ONE, Q::ZERO, b], vec![-cc, -b, Q::ZERO]])
    }

    #[test]
    fn chi_examples() {
        let j = QuatMatrix::from_rows(&[vec![Q::J]]);
        let want = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(chi(&j), want);
        assert_eq!(chi(&QuatMatrix::identity(3)), ComplexMatrix::identity(6));
    }

    #[test]
    fn chi_inverse_examples() {
        assert_eq!(chi_inverse_map(&ComplexMatrix::identity(2), 1e-12).unwrap(), QuatMatrix::identity(1));
        let a = random_quat_matrix(3, 2, 4);
        let back = chi_inverse_map(&chi(&a), 1e-12).unwrap();
        assert_eq!(back, a);
        let bad = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert!(matches!(chi_inverse_map(&bad, 1e-10), Err(Error::AdjointStructure { .. })));
        assert!(chi_inverse_map(&ComplexMatrix::identity(3), 1e-10).is_err());
    }

    #[test]
    fn gram_of_2x2() {
        let a = q(0.5, -1.0, 2.0, 0.25);
        let z = QuatMatrix::from_rows(&[vec![Q::ZERO, a], vec![-a, Q::ZERO]]);
        let w = gram_product(&z, 1e-10).unwrap();
        let want = QuatMatrix::identity(2).scale(a.norm_sqr());
        assert!(w.max_abs_diff(&want) < 1e-14);
        let spectrum = right_eigenvalues_hermitian(&w, 1e-10).unwrap();
        for v in &spectrum.values {
            assert!((v - a.norm_sqr()).abs() < 1e-12);
        }
        assert_eq!(gram_product(&QuatMatrix::zeros(3, 3), 1e-10).unwrap(), QuatMatrix::zeros(3, 3));
    }

    #[test]
    fn gram_displayed_entries() {
        let w = gram_product(&noncommuting_z(), 1e-10).unwrap();
        assert_eq!(w[(0, 0)], Q::real(6.0));
        assert_eq!(w[(1, 1)], Q::real(3.0));
        assert_eq!(w[(2, 2)], Q::real(7.0));
        assert_eq!(w[(0, 1)], q(3.0, 0.0, 0.0, 1.0));
        assert_eq!(w[(0, 2)], q(0.0, 1.0, 1.0, 0.0));
        assert_eq!(w[(1, 2)], q(0.0, -1.0, -2.0, 0.0));
        assert!(w.is_hermitian(0.0).unwrap());
    }

    /// Frozen from two independent routes (this adjoint and the real 12×12
    /// left-multiplication representation, via numpy): 0.063504, 7.257608,
    /// 8.678888. The three sum to the trace 16.
    #[test]
    fn noncommuting_example_spectrum() {
        let w = gram_product(&noncommuting_z(), 1e-10).unwrap();
        let spectrum = right_eigenvalues_hermitian(&w, 1e-10).unwrap();
        let want = [0.06350419, 7.25760807, 8.67888773];
        for (got, want) in spectrum.values.iter().zip(want) {
            assert!((got - want).abs() < 1e-7, "{got} vs {want}");
        }
        assert!((spectrum.values.iter().sum::<f64>() - 16.0).abs() < 1e-12);
        assert!(is_positive_definite(&w, 1e-10).unwrap());
        assert!(spectrum.max_residual < 1e-12);
    }

    #[test]
    fn degenerate_gram_not_pd() {
        let b = Q::I;
        let cc = q(0.0, 0.3, 0.0, 0.8);
        let z = QuatMatrix::from_rows(&[vec![Q::ZERO, Q::ZERO, cc], vec![Q::ZERO, Q::ZERO, b], vec![-cc, -b, Q::ZERO]]);
        let w = gram_product(&z, 1e-10).unwrap();
        assert!(is_positive_semidefinite(&w, 1e-10).unwrap());
        assert!(!is_positive_definite(&w, 1e-10).unwrap());
    }

    #[test]
    fn real_diagonal_spectrum() {
        let a = QuatMatrix::from_rows(&[vec![Q::real(3.0), Q::ZERO], vec![Q::ZERO, Q::real(1.0)]]);
        let spectrum = right_eigenvalues_hermitian(&a, 1e-10).unwrap();
        assert!((spectrum.values[0] - 1.0).abs() < 1e-15 && (spectrum.values[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian_and_non_skew() {
        let a = QuatMatrix::from_rows(&[vec![Q::ONE, Q::I], vec![Q::I, Q::ONE]]);
        assert!(matches!(right_eigenvalues_hermitian(&a, 1e-10), Err(Error::NotHermitian { .. })));
        assert!(matches!(gram_product(&a, 1e-10), Err(Error::NotSkewSymmetric { .. })));
        assert!(matches!(is_positive_definite(&a, 1e-10), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn degenerate_clusters_give_orthonormal_vectors() {
        // U diag(2, 2, 2, 5) U* for a random quaternion unitary U
        let u = {
            let eig = right_eigenvalues_hermitian(&random_hermitian(4, 77), 1e-10).unwrap();
            eig.vectors.unwrap()
        };
        let d = QuatMatrix::from_fn(4, 4, |i, j| {
            if i != j {
                Q::ZERO
            } else if i < 3 {
                Q::real(2.0)
            } else {
                Q::real(5.0)
            }
        });
        let a = u.matmul(&d).unwrap().matmul(&u.conj_transpose()).unwrap();
        let spectrum = right_eigenvalues_hermitian(&a, 1e-10).unwrap();
        assert!(spectrum.values[..3].iter().all(|v| (v - 2.0).abs() < 1e-12));
        assert!((spectrum.values[3] - 5.0).abs() < 1e-12);
        assert!(spectrum.vectors().is_unitary(1e-10).unwrap());
        assert!(spectrum.max_residual < 1e-10);
    }

    #[test]
    fn inverse_examples() {
        let a = q(1.0, 2.0, -1.0, 0.5);
        let z = QuatMatrix::from_rows(&[vec![Q::ZERO, a], vec![-a, Q::ZERO]]);
        let inv = quat_inverse(&z, 1e-10).unwrap();
        let ai = a.inv().unwrap();
        let want = QuatMatrix::from_rows(&[vec![Q::ZERO, -ai], vec![ai, Q::ZERO]]);
        assert!(inv.max_abs_diff(&want) < 1e-14);
        assert!(quat_inverse(&QuatMatrix::identity(3), 1e-10).unwrap().max_abs_diff(&QuatMatrix::identity(3)) < 1e-15);
        assert!(matches!(quat_inverse(&QuatMatrix::zeros(2, 2), 1e-10), Err(Error::Singular { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn chi_is_multiplicative(m in 1usize..5, n in 1usize..5, r in 1usize..5, seed in any::<u64>()) {
            let a = random_quat_matrix(m, n, seed);
            let b = random_quat_matrix(n, r, seed ^ 1);
            let lhs = chi(&a.matmul(&b).unwrap());
            let rhs = chi(&a).matmul(&chi(&b)).unwrap();
            prop_assert!(lhs.sub(&rhs).unwrap().frobenius_norm() <= 1e-12 * lhs.frobenius_norm().max(1.0));
            prop_assert_eq!(chi(&a.conj_transpose()), chi(&a).conj_transpose());
        }

        #[test]
        fn hermitian_spectra_pair_and_diagonalize(n in 1usize..7, seed in any::<u64>()) {
            let a = random_hermitian(n, seed);
            let spectrum = right_eigenvalues_hermitian(&a, 1e-10).unwrap();
            let scale = a.frobenius_norm().max(1.0);
            prop_assert!(spectrum.pairing_gaps.iter().all(|&g| g <= 1e-9 * scale));
            prop_assert!(spectrum.max_residual <= 1e-10 * scale);
            let v = spectrum.vectors();
            let gram = v.conj_transpose().matmul(v).unwrap();
            prop_assert!(gram.sub(&QuatMatrix::identity(n)).unwrap().frobenius_norm() <= 1e-8);
        }

        #[test]
        fn inverse_round_trip(n in 1usize..6, seed in any::<u64>()) {
            let a = random_quat_matrix(n, n, seed).add(&QuatMatrix::identity(n).scale(2.0 * n as f64)).unwrap();
            let inv = quat_inverse(&a, 1e-10).unwrap();
            let id = QuatMatrix::identity(n);
            prop_assert!(a.matmul(&inv).unwrap().sub(&id).unwrap().frobenius_norm() <= 1e-9);
            prop_assert!(inv.matmul(&a).unwrap().sub(&id).unwrap().frobenius_norm() <= 1e-9);
            let lhs = inv.conj_transpose();
            let rhs = quat_inverse(&a.conj_transpose(), 1e-10).unwrap();
            prop_assert!(lhs.sub(&rhs).unwrap().frobenius_norm() <= 1e-10);
        }

        #[test]
        fn gram_is_psd(n in 2usize..7, seed in any::<u64>()) {
            let z = QuatMatrix::random_skew_symmetric(n, seed, 1.0).unwrap();
            let w = gram_product(&z, 1e-10).unwrap();
            prop_assert!(w.is_hermitian(1e-12 * w.frobenius_norm().max(1.0)).unwrap());
            prop_assert!(is_positive_semidefinite(&w, 1e-10).unwrap());
        }
    }
}
