//! Dense complex linear algebra: a cyclic complex Jacobi eigensolver for
//! Hermitian matrices, LU inversion with partial pivoting, and modified
//! Gram–Schmidt.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_EIG_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
///
/// Serializes as `{"rows": m, "cols": n, "entries_c": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexMatrixRepr", into = "ComplexMatrixRepr")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct ComplexMatrixRepr {
    rows: usize,
    cols: usize,
    entries_c: Vec<[f64; 2]>,
}

impl TryFrom<ComplexMatrixRepr> for ComplexMatrix {
    type Error = Error;
    fn try_from(r: ComplexMatrixRepr) -> Result<Self> {
        Self::new(r.rows, r.cols, r.entries_c.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

impl From<ComplexMatrix> for ComplexMatrixRepr {
    fn from(m: ComplexMatrix) -> Self {
        Self { rows: m.rows, cols: m.cols, entries_c: m.data.into_iter().map(|c| [c.re, c.im]).collect() }
    }
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(format!("empty {rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(i) = data.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(format!("entry {i} is not finite")));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Matrix whose columns are `cols`. Panics on ragged input.
    pub fn from_columns(cols: &[Vec<Complex64>]) -> Self {
        let n = cols.len();
        let m = cols.first().map_or(0, Vec::len);
        assert!(cols.iter().all(|c| c.len() == m), "ragged columns");
        Self::from_fn(m, n, |i, j| cols[j][i])
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(d: &[Complex64]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| if i == j { d[i] } else { ZERO })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.rows == self.cols {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(Complex64::conj).collect() }
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|c| c * s).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `A − A*`.
    pub fn hermitian_deviation(&self) -> Result<f64> {
        let n = self.require_square()?;
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        Ok(dev)
    }

    /// Largest entrywise modulus of `A + Aᵀ`.
    pub fn skew_deviation(&self) -> Result<f64> {
        let n = self.require_square()?;
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] + self[(j, i)]).norm());
            }
        }
        Ok(dev)
    }

    /// `‖A*A − I‖_F`.
    pub fn unitarity_residual(&self) -> Result<f64> {
        let n = self.require_square()?;
        Ok(self.conj_transpose().matmul(self)?.sub(&Self::identity(n))?.frobenius_norm())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

/// Eigenvalues in ascending order and the unitary matrix whose columns are
/// the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Each rotation first removes the phase of `h_pq` with `diag(1, e^{-iφ})`
/// and then applies the real symmetric Jacobi rotation to the resulting
/// 2×2 block. Sweeps stop once the off-diagonal Frobenius mass drops to
/// `tol·‖H‖_F`. The Hermitian check uses `tol·max(1, ‖H‖_F)`.
pub fn herm_eig(h: &ComplexMatrix, tol: f64) -> Result<HermEig> {
    let n = h.require_square()?;
    let norm = h.frobenius_norm();
    let scale = norm.max(1.0);
    let deviation = h.hermitian_deviation()?;
    if deviation > tol * scale {
        return Err(Error::NotHermitian { deviation });
    }

    // work on the exactly Hermitian part
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (h[(i, j)] + h[(j, i)].conj()));
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let target = tol * norm;
    let mut off = off_norm(&a);
    let mut sweeps = 0;
    while off > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        let next = off_norm(&a);
        // rounding floor reached
        if next >= off && next <= 1e3 * f64::EPSILON * norm {
            break;
        }
        off = next;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermEig { values, vectors })
}

/// One Jacobi rotation annihilating `a[p][q]`; `a ← J* a J`, `v ← v J`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let n = a.rows;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / mag; // e^{iφ}

    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau.is_finite() { tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt()) } else { 0.0 };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
    let j00 = Complex64::new(c, 0.0);
    let j01 = Complex64::new(s, 0.0);
    let j10 = -phase.conj() * s;
    let j11 = phase.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j00 + akq * j10;
        a[(k, q)] = akp * j01 + akq * j11;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j00.conj() * apk + j10.conj() * aqk;
        a[(q, k)] = j01.conj() * apk + j11.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(app - t * mag, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j00 + vkq * j10;
        v[(k, q)] = vkp * j01 + vkq * j11;
    }
}

/// Inverse by LU factorization with partial pivoting on modulus.
///
/// Fails with [`Error::Singular`] when a pivot falls below `tol·‖A‖_F`.
pub fn lu_inverse(a: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    let threshold = tol * a.frobenius_norm();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();

    for k in 0..n {
        let (piv, pmag) =
            (k..n).map(|i| (i, lu[(i, k)].norm())).fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pmag <= threshold || pmag == 0.0 {
            return Err(Error::Singular { pivot: pmag, threshold });
        }
        if piv != k {
            for j in 0..n {
                lu.data.swap(k * n + j, piv * n + j);
            }
            perm.swap(k, piv);
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let l = lu[(i, k)] / pivot;
            lu[(i, k)] = l;
            if l != ZERO {
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= l * u;
                }
            }
        }
    }

    // solve L U x = P e_col for each column
    let mut inv = ComplexMatrix::zeros(n, n);
    let mut x = vec![ZERO; n];
    for col in 0..n {
        for i in 0..n {
            let mut s = if perm[i] == col { ONE } else { ZERO };
            for j in 0..i {
                s -= lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= lu[(i, j)] * x[j];
            }
            x[i] = s / lu[(i, i)];
        }
        for i in 0..n {
            inv[(i, col)] = x[i];
        }
    }
    Ok(inv)
}

/// Hermitian inner product `⟨u, v⟩ = u* v`.
pub fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

/// Removes the components of `v` along each (orthonormal) vector of `basis`,
/// twice over for stability.
pub(crate) fn project_out(v: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for _ in 0..2 {
        for b in basis {
            let c = dot(b, v);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
    }
}

/// Modified Gram–Schmidt with one reorthogonalization pass. Vectors whose
/// residual norm is `≤ tol` are dropped, so the output may be shorter than the
/// input.
pub fn mgs_orthonormalize(vectors: &[Vec<Complex64>], tol: f64) -> Result<Vec<Vec<Complex64>>> {
    if let Some(first) = vectors.first() {
        if vectors.iter().any(|v| v.len() != first.len()) {
            return Err(Error::DimensionMismatch("vectors differ in length".into()));
        }
    }
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        project_out(&mut w, &out);
        let nrm = vec_norm(&w);
        if nrm > tol {
            w.iter_mut().for_each(|x| *x /= nrm);
            out.push(w);
        }
    }
    Ok(out)
}
