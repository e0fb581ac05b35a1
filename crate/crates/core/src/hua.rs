//! Canonical form of complex skew-symmetric matrices under unitary
//! congruence: a unitary `U` with `U Z Uᵀ = Σ`, where `Σ` is
//! `diag([[0, σ₁], [−σ₁, 0]], …, [[0, σ_k], [−σ_k, 0]], 0)`.
//!
//! The construction works on `H = Z Z*`. For a unit eigenvector `u` of `H`
//! with eigenvalue `σ² > 0`, `w = Z·conj(u)/σ` is a unit eigenvector for the
//! same eigenvalue and is orthogonal to `u`. The map `u ↦ Z·conj(u)/σ` squares
//! to `−1` on the eigenspace, so eigenspaces split into pairs `{u, w}` and every
//! positive eigenvalue has even multiplicity. Rows `w*`, `u*` of `U` produce the
//! block `[[0, σ], [−σ, 0]]`; kernel vectors `x` of `H` give rows `x*` with
//! `x*·Z = 0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex_linalg::{self, herm_eig, project_out, vec_norm, ComplexMatrix};
use crate::error::{Error, Result};
use crate::spectra::clusters;
use crate::DEFAULT_CLUSTER_TOL;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HuaForm {
    #[serde(rename = "U")]
    pub u: ComplexMatrix,
    /// Descending, all positive.
    pub sigmas: Vec<f64>,
    pub zero_dim: usize,
    /// `‖U Z Uᵀ − Σ‖_F`.
    pub residual: f64,
    /// `‖U*U − I‖_F`.
    pub unitarity_residual: f64,
}

impl HuaForm {
    pub fn dim(&self) -> usize {
        2 * self.sigmas.len() + self.zero_dim
    }

    /// The block diagonal `Σ`, zero block last.
    pub fn sigma_matrix(&self) -> ComplexMatrix {
        sigma_matrix(&self.sigmas, self.zero_dim)
    }
}

pub fn sigma_matrix(sigmas: &[f64], zero_dim: usize) -> ComplexMatrix {
    let n = 2 * sigmas.len() + zero_dim;
    let mut s = ComplexMatrix::zeros(n, n);
    for (t, &sigma) in sigmas.iter().enumerate() {
        s[(2 * t, 2 * t + 1)] = Complex64::new(sigma, 0.0);
        s[(2 * t + 1, 2 * t)] = Complex64::new(-sigma, 0.0);
    }
    s
}

fn check_skew(z: &ComplexMatrix, tol: f64) -> Result<()> {
    z.require_square()?;
    let deviation = z.skew_deviation()?;
    if deviation > tol * z.frobenius_norm().max(1.0) {
        return Err(Error::NotSkewSymmetric { deviation });
    }
    Ok(())
}

fn gram(z: &ComplexMatrix) -> Result<ComplexMatrix> {
    let h = z.matmul(&z.conj_transpose())?;
    let n = h.rows();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (h[(i, j)] + h[(j, i)].conj())))
}

/// `Z·conj(u)`.
fn apply_conj(z: &ComplexMatrix, u: &[Complex64]) -> Vec<Complex64> {
    (0..z.rows()).map(|i| (0..z.cols()).map(|j| z[(i, j)] * u[j].conj()).sum()).collect()
}

/// [`hua_decompose_with`] using the default clustering tolerance.
pub fn hua_decompose(z: &ComplexMatrix, tol: f64) -> Result<HuaForm> {
    hua_decompose_with(z, tol, DEFAULT_CLUSTER_TOL)
}

/// Computes the canonical form of a complex skew-symmetric `Z`
/// (`‖Z + Zᵀ‖` entrywise at most `tol·max(1, ‖Z‖_F)`).
///
/// Eigenvalues of `Z Z*` closer than `cluster_tol·max(1, λ_max)` share a
/// cluster; a cluster touching zero is the kernel. A positive cluster of odd
/// size is an [`Error::OddCluster`].
pub fn hua_decompose_with(z: &ComplexMatrix, tol: f64, cluster_tol: f64) -> Result<HuaForm> {
    check_skew(z, tol)?;
    let n = z.rows();
    let eig = herm_eig(&gram(z)?, complex_linalg::DEFAULT_EIG_TOL)?;
    let lambda_max = eig.values.last().copied().unwrap_or(0.0);
    let zero_cut = cluster_tol * lambda_max.max(1.0);

    let mut kernel: Vec<Vec<Complex64>> = Vec::new();
    let mut pairs: Vec<(f64, Vec<Complex64>, Vec<Complex64>)> = Vec::new();
    let mut chosen: Vec<Vec<Complex64>> = Vec::with_capacity(n);

    for (start, end) in clusters(&eig.values, cluster_tol) {
        let count = end - start;
        if eig.values[start] <= zero_cut {
            kernel.extend((start..end).map(|j| eig.vectors.column(j)));
            continue;
        }
        if count % 2 != 0 {
            return Err(Error::OddCluster { value: eig.values[start], count });
        }
        let mut candidates: Vec<Vec<Complex64>> = (start..end).map(|j| eig.vectors.column(j)).collect();
        for _ in 0..count / 2 {
            for c in candidates.iter_mut() {
                project_out(c, &chosen);
            }
            let (best, bn) = candidates.iter().enumerate().map(|(i, c)| (i, vec_norm(c))).fold((0, -1.0), |b, cur| {
                if cur.1 > b.1 {
                    cur
                } else {
                    b
                }
            });
            let mut u = candidates.swap_remove(best);
            u.iter_mut().for_each(|x| *x /= bn);
            let mut w = apply_conj(z, &u);
            let sigma = vec_norm(&w);
            w.iter_mut().for_each(|x| *x /= sigma);
            chosen.push(u.clone());
            project_out(&mut w, &chosen);
            let wn = vec_norm(&w);
            w.iter_mut().for_each(|x| *x /= wn);
            chosen.push(w.clone());
            pairs.push((sigma, w, u));
        }
    }

    // stable: equal sigmas keep extraction order
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let sigmas: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let zero_dim = kernel.len();

    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for (_, w, u) in pairs {
        rows.push(w);
        rows.push(u);
    }
    rows.extend(kernel);
    // row r of U is (vector r)*
    let u = ComplexMatrix::from_fn(n, n, |i, j| rows[i][j].conj());

    let residual = u.matmul(z)?.matmul(&u.transpose())?.sub(&sigma_matrix(&sigmas, zero_dim))?.frobenius_norm();
    let unitarity_residual = u.unitarity_residual()?;
    Ok(HuaForm { u, sigmas, zero_dim, residual, unitarity_residual })
}

/// Whether every positive eigenvalue cluster of `Z Z*` has even size, with
/// clusters split at gaps above `cluster_tol·max(1, λ_max)`.
pub fn even_multiplicity_check(z: &ComplexMatrix, cluster_tol: f64) -> Result<bool> {
    z.require_square()?;
    let eig = herm_eig(&gram(z)?, complex_linalg::DEFAULT_EIG_TOL)?;
    Ok(positive_clusters_even(&eig.values, cluster_tol))
}

pub(crate) fn positive_clusters_even(values: &[f64], cluster_tol: f64) -> bool {
    let lambda_max = values.last().copied().unwrap_or(0.0);
    let zero_cut = cluster_tol * lambda_max.max(1.0);
    clusters(values, cluster_tol).into_iter().filter(|&(s, _)| values[s] > zero_cut).all(|(s, e)| (e - s) % 2 == 0)
}
