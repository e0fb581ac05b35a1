//! Dense quaternion matrices.

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::rng::Sampler;

/// Row-major dense matrix of quaternions.
///
/// Serializes as `{"rows": m, "cols": n, "entries": [[w,x,y,z], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QuatMatrixRepr", into = "QuatMatrixRepr")]
pub struct QuatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

#[derive(Serialize, Deserialize)]
struct QuatMatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Quaternion>,
}

impl TryFrom<QuatMatrixRepr> for QuatMatrix {
    type Error = Error;
    fn try_from(r: QuatMatrixRepr) -> Result<Self> {
        Self::new(r.rows, r.cols, r.entries)
    }
}

impl From<QuatMatrix> for QuatMatrixRepr {
    fn from(m: QuatMatrix) -> Self {
        Self { rows: m.rows, cols: m.cols, entries: m.data }
    }
}

impl QuatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
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
        if let Some(i) = data.iter().position(|q| !q.is_finite()) {
            return Err(Error::InvalidArgument(format!("entry {i} is not finite")));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Quaternion::ONE } else { Quaternion::ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Self {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n), "ragged rows");
        Self { rows: m, cols: n, data: rows.concat() }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Quaternion> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&q| f(q)).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise conjugate `Ā`.
    pub fn conj(&self) -> Self {
        self.map(Quaternion::conj)
    }

    /// `A* = Āᵀ`.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Row-by-column product; entries of `self` multiply from the left.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| (0..self.cols).map(|k| self[(i, k)] * rhs[(k, j)]).sum()))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(&self, rhs: &Self, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|q| q * s)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(&a, &b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    }

    /// Largest componentwise `|a_ij − ā_ji|`.
    pub fn hermitian_deviation(&self) -> Result<f64> {
        let n = self.require_square()?;
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max(self[(i, j)].max_abs_diff(self[(j, i)].conj()));
            }
        }
        Ok(dev)
    }

    /// Largest componentwise `|a_ij + a_ji|`.
    pub fn skew_deviation(&self) -> Result<f64> {
        let n = self.require_square()?;
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max(self[(i, j)].max_abs_diff(-self[(j, i)]));
            }
        }
        Ok(dev)
    }

    pub fn is_hermitian(&self, tol: f64) -> Result<bool> {
        Ok(self.hermitian_deviation()? <= tol)
    }

    /// `Zᵀ = −Z` with the plain transpose.
    pub fn is_skew_symmetric(&self, tol: f64) -> Result<bool> {
        Ok(self.skew_deviation()? <= tol)
    }

    /// `‖A*A − I‖_F ≤ tol`.
    pub fn is_unitary(&self, tol: f64) -> Result<bool> {
        let n = self.require_square()?;
        let gram = self.conj_transpose().matmul(self)?;
        Ok(gram.sub(&Self::identity(n))?.frobenius_norm() <= tol)
    }

    /// The four real parts `A₀, A₁, A₂, A₃` of `A = A₀ + A₁i + A₂j + A₃k`,
    /// each row-major.
    pub fn to_components(&self) -> [Vec<f64>; 4] {
        [
            self.data.iter().map(|q| q.w).collect(),
            self.data.iter().map(|q| q.x).collect(),
            self.data.iter().map(|q| q.y).collect(),
            self.data.iter().map(|q| q.z).collect(),
        ]
    }

    pub fn from_components(rows: usize, cols: usize, parts: [&[f64]; 4]) -> Result<Self> {
        if parts.iter().any(|p| p.len() != rows * cols) {
            return Err(Error::DimensionMismatch(format!("components must each hold {} values", rows * cols)));
        }
        let data =
            (0..rows * cols).map(|t| Quaternion::new(parts[0][t], parts[1][t], parts[2][t], parts[3][t])).collect();
        Self::new(rows, cols, data)
    }

    /// Random `n×n` skew-symmetric matrix. Strictly-upper entries are drawn in
    /// row-major order, components `w, x, y, z` each uniform on
    /// `[-scale, scale)`; the lower triangle is the negated transpose.
    pub fn random_skew_symmetric(n: usize, seed: u64, scale: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("dimension {n} < 2")));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidArgument(format!("scale {scale} must be positive")));
        }
        let mut s = Sampler::new(seed);
        let mut z = Self::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let q = Quaternion::new(s.symmetric(scale), s.symmetric(scale), s.symmetric(scale), s.symmetric(scale));
                z[(i, j)] = q;
                z[(j, i)] = -q;
            }
        }
        Ok(z)
    }
}

impl Index<(usize, usize)> for QuatMatrix {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QuatMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Quaternion as Q;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Q {
        Q::new(w, x, y, z)
    }

    #[test]
    fn transposes() {
        let a = QuatMatrix::from_rows(&[vec![Q::I]]);
        assert_eq!(a.conj_transpose(), QuatMatrix::from_rows(&[vec![-Q::I]]));
        let b = QuatMatrix::random_skew_symmetric(3, 5, 1.0).unwrap();
        assert_eq!(b.conj_transpose(), b.conj().transpose());
        assert_eq!(b.conj_transpose(), b.transpose().conj());
        assert_eq!(b.conj_transpose().conj_transpose(), b);
    }

    #[test]
    fn products() {
        let a = QuatMatrix::random_skew_symmetric(3, 1, 2.0).unwrap();
        assert_eq!(a.matmul(&QuatMatrix::identity(3)).unwrap(), a);
        let i = QuatMatrix::from_rows(&[vec![Q::I]]);
        let j = QuatMatrix::from_rows(&[vec![Q::J]]);
        assert_eq!(i.matmul(&j).unwrap(), QuatMatrix::from_rows(&[vec![Q::K]]));
        assert!(matches!(QuatMatrix::zeros(2, 3).matmul(&QuatMatrix::zeros(2, 3)), Err(Error::DimensionMismatch(_))));
    }

    /// Exhaustive search over 2×2 matrices with entries in {±i, ±j} for pairs
    /// where transpose and conjugation fail to distribute over products.
    #[test]
    fn transpose_and_conj_do_not_distribute() {
        let units = [Q::I, -Q::I, Q::J, -Q::J];
        let mats: Vec<QuatMatrix> = (0..256)
            .map(|code: usize| QuatMatrix::new(2, 2, (0..4).map(|t| units[(code >> (2 * t)) & 3]).collect()).unwrap())
            .collect();
        let mut transpose_witness = None;
        let mut conj_witness = None;
        'outer: for a in &mats {
            for b in &mats {
                let ab = a.matmul(b).unwrap();
                if transpose_witness.is_none() && ab.transpose() != b.transpose().matmul(&a.transpose()).unwrap() {
                    transpose_witness = Some((a.clone(), b.clone()));
                }
                if conj_witness.is_none() && ab.conj() != a.conj().matmul(&b.conj()).unwrap() {
                    conj_witness = Some((a.clone(), b.clone()));
                }
                if transpose_witness.is_some() && conj_witness.is_some() {
                    break 'outer;
                }
            }
        }
        let (a, b) = transpose_witness.expect("no transpose witness");
        assert!(a.matmul(&b).unwrap().transpose().max_abs_diff(&b.transpose().matmul(&a.transpose()).unwrap()) >= 1.0);
        assert!(conj_witness.is_some());
    }

    #[test]
    fn frobenius() {
        assert!((QuatMatrix::identity(3).frobenius_norm() - 3f64.sqrt()).abs() < 1e-15);
        let a = QuatMatrix::from_rows(&[vec![Q::I, Q::J], vec![Q::K, Q::ONE]]);
        assert_eq!(a.frobenius_norm(), 2.0);
        assert_eq!(QuatMatrix::zeros(2, 2).frobenius_norm(), 0.0);
    }

    #[test]
    fn predicates() {
        let a = q(0.3, -1.0, 2.0, 0.7);
        let z = QuatMatrix::from_rows(&[vec![Q::ZERO, a], vec![-a, Q::ZERO]]);
        assert!(z.is_skew_symmetric(0.0).unwrap());

        // pure-imaginary off-diagonals make a skew matrix Hermitian as well
        let s = QuatMatrix::from_rows(&[vec![Q::ZERO, Q::J], vec![-Q::J, Q::ZERO]]);
        assert!(s.is_hermitian(1e-10).unwrap());
        let r = QuatMatrix::from_rows(&[vec![Q::ZERO, Q::ONE], vec![-Q::ONE, Q::ZERO]]);
        assert!(!r.is_hermitian(1e-10).unwrap());
        assert!(s.is_skew_symmetric(1e-10).unwrap());

        assert!(QuatMatrix::identity(4).is_unitary(1e-10).unwrap());
        let h = QuatMatrix::from_rows(&[vec![Q::ONE, Q::I], vec![-Q::I, Q::real(2.0)]]);
        assert!(h.is_hermitian(0.0).unwrap());
        assert!(!h.is_unitary(1e-10).unwrap());

        let rect = QuatMatrix::zeros(2, 3);
        assert!(matches!(rect.is_hermitian(1e-10), Err(Error::NotSquare { .. })));
        assert!(matches!(rect.is_skew_symmetric(1e-10), Err(Error::NotSquare { .. })));
        assert!(matches!(rect.is_unitary(1e-10), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn random_skew_contract() {
        let a = QuatMatrix::random_skew_symmetric(5, 42, 3.0).unwrap();
        assert!(a.is_skew_symmetric(0.0).unwrap());
        assert_eq!(a, QuatMatrix::random_skew_symmetric(5, 42, 3.0).unwrap());
        assert_ne!(a, QuatMatrix::random_skew_symmetric(5, 43, 3.0).unwrap());
        let b = QuatMatrix::random_skew_symmetric(3, 9, 1.0).unwrap();
        for i in 0..3 {
            assert_eq!(b[(i, i)], Q::ZERO);
        }
        assert!(a.entries().iter().all(|q| [q.w, q.x, q.y, q.z].iter().all(|c| c.abs() <= 3.0)));
        assert!(QuatMatrix::random_skew_symmetric(1, 0, 1.0).is_err());
        assert!(QuatMatrix::random_skew_symmetric(3, 0, 0.0).is_err());
    }

    #[test]
    fn constructor_checks() {
        assert!(matches!(QuatMatrix::new(2, 2, vec![Q::ONE; 3]), Err(Error::DimensionMismatch(_))));
        assert!(QuatMatrix::new(1, 1, vec![q(f64::NAN, 0.0, 0.0, 0.0)]).is_err());
    }

    #[test]
    fn json_schema() {
        let a = QuatMatrix::from_rows(&[vec![Q::I, Q::ONE]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"entries":[[0.0,1.0,0.0,0.0],[1.0,0.0,0.0,0.0]]}"#);
        assert_eq!(serde_json::from_str::<QuatMatrix>(&s).unwrap(), a);
        assert!(serde_json::from_str::<QuatMatrix>(r#"{"rows":2,"cols":2,"entries":[]}"#).is_err());
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = QuatMatrix> {
        prop::collection::vec(prop::array::uniform4(-2.0f64..2.0), rows * cols)
            .prop_map(move |v| QuatMatrix::new(rows, cols, v.into_iter().map(Q::from).collect()).unwrap())
    }

    fn arb_pair() -> impl Strategy<Value = (QuatMatrix, QuatMatrix)> {
        (1usize..5, 1usize..5, 1usize..5).prop_flat_map(|(m, n, r)| (arb_matrix(m, n), arb_matrix(n, r)))
    }

    proptest! {
        #[test]
        fn conj_transpose_reverses_products((a, b) in arb_pair()) {
            let lhs = a.matmul(&b).unwrap().conj_transpose();
            let rhs = b.conj_transpose().matmul(&a.conj_transpose()).unwrap();
            let scale = (a.frobenius_norm() * b.frobenius_norm()).max(1.0);
            prop_assert!(lhs.sub(&rhs).unwrap().frobenius_norm() <= 1e-12 * scale);
        }

        #[test]
        fn component_round_trip(a in (1usize..5, 1usize..5).prop_flat_map(|(m, n)| arb_matrix(m, n))) {
            let parts = a.to_components();
            let back = QuatMatrix::from_components(
                a.rows(), a.cols(), [&parts[0], &parts[1], &parts[2], &parts[3]],
            ).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn skew_has_zero_diagonal(n in 2usize..8, seed in any::<u64>()) {
            let z = QuatMatrix::random_skew_symmetric(n, seed, 1.0).unwrap();
            for i in 0..n {
                prop_assert_eq!(z[(i, i)], Q::ZERO);
            }
        }
    }
}
