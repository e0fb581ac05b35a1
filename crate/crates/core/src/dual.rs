//! Dual quaternions `q_st + q_I ε` with `ε² = 0`, and dual quaternion
//! matrices.
//!
//! The conjugate is `q̄ = q̄_st − q_I ε`: the infinitesimal part is negated but
//! not quaternion-conjugated. Under this conjugate `A* = A` holds exactly when
//! `A_st` is Hermitian and `A_I` is skew-symmetric.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat_matrix::QuatMatrix;
use crate::quaternion::Quaternion;

/// Serializes as `[[w,x,y,z], [w,x,y,z]]` (standard, infinitesimal).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[Quaternion; 2]", into = "[Quaternion; 2]")]
pub struct DualQuaternion {
    pub std: Quaternion,
    pub inf: Quaternion,
}

impl DualQuaternion {
    pub const ZERO: Self = Self::new(Quaternion::ZERO, Quaternion::ZERO);
    pub const ONE: Self = Self::new(Quaternion::ONE, Quaternion::ZERO);
    pub const EPSILON: Self = Self::new(Quaternion::ZERO, Quaternion::ONE);

    pub const fn new(std: Quaternion, inf: Quaternion) -> Self {
        Self { std, inf }
    }

    pub fn conj(self) -> Self {
        Self::new(self.std.conj(), -self.inf)
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        self.std.max_abs_diff(other.std).max(self.inf.max_abs_diff(other.inf))
    }
}

impl From<[Quaternion; 2]> for DualQuaternion {
    fn from([std, inf]: [Quaternion; 2]) -> Self {
        Self::new(std, inf)
    }
}

impl From<DualQuaternion> for [Quaternion; 2] {
    fn from(q: DualQuaternion) -> Self {
        [q.std, q.inf]
    }
}

impl Add for DualQuaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.std + o.std, self.inf + o.inf)
    }
}

impl Sub for DualQuaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.std - o.std, self.inf - o.inf)
    }
}

impl Neg for DualQuaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.std, -self.inf)
    }
}

/// `(p_st q_st) + (p_st q_I + p_I q_st) ε`.
impl Mul for DualQuaternion {
    type Output = Self;
    fn mul(self, q: Self) -> Self {
        Self::new(self.std * q.std, self.std * q.inf + self.inf * q.std)
    }
}

/// `A_st + A_I ε`.
///
/// Serializes as `{"rows", "cols", "entries": [[[w,x,y,z],[w,x,y,z]], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DualQuatMatrixRepr", into = "DualQuatMatrixRepr")]
pub struct DualQuatMatrix {
    std: QuatMatrix,
    inf: QuatMatrix,
}

#[derive(Serialize, Deserialize)]
struct DualQuatMatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<DualQuaternion>,
}

impl TryFrom<DualQuatMatrixRepr> for DualQuatMatrix {
    type Error = Error;
    fn try_from(r: DualQuatMatrixRepr) -> Result<Self> {
        let std = QuatMatrix::new(r.rows, r.cols, r.entries.iter().map(|d| d.std).collect())?;
        let inf = QuatMatrix::new(r.rows, r.cols, r.entries.iter().map(|d| d.inf).collect())?;
        Self::new(std, inf)
    }
}

impl From<DualQuatMatrix> for DualQuatMatrixRepr {
    fn from(m: DualQuatMatrix) -> Self {
        let entries = m.std.entries().iter().zip(m.inf.entries()).map(|(&s, &i)| DualQuaternion::new(s, i)).collect();
        Self { rows: m.std.rows(), cols: m.std.cols(), entries }
    }
}

impl DualQuatMatrix {
    pub fn new(std: QuatMatrix, inf: QuatMatrix) -> Result<Self> {
        if (std.rows(), std.cols()) != (inf.rows(), inf.cols()) {
            return Err(Error::DimensionMismatch(format!(
                "standard part {}x{} vs infinitesimal part {}x{}",
                std.rows(),
                std.cols(),
                inf.rows(),
                inf.cols()
            )));
        }
        Ok(Self { std, inf })
    }

    pub fn std(&self) -> &QuatMatrix {
        &self.std
    }

    pub fn inf(&self) -> &QuatMatrix {
        &self.inf
    }

    pub fn rows(&self) -> usize {
        self.std.rows()
    }

    pub fn cols(&self) -> usize {
        self.std.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> DualQuaternion {
        DualQuaternion::new(self.std[(i, j)], self.inf[(i, j)])
    }

    /// Transpose with entries conjugated by [`DualQuaternion::conj`].
    pub fn conj_transpose(&self) -> Self {
        Self { std: self.std.conj_transpose(), inf: self.inf.transpose().scale(-1.0) }
    }

    /// `A* = A` entrywise: the largest componentwise gap between `a_ij` and
    /// `conj(a_ji)` is at most `tol`.
    pub fn is_hermitian(&self, tol: f64) -> Result<bool> {
        let n = self.std.require_square()?;
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                dev = dev.max(self.get(i, j).max_abs_diff(self.get(j, i).conj()));
            }
        }
        Ok(dev <= tol)
    }

    /// `A_st` Hermitian and `A_I` skew-symmetric, each within `tol`.
    pub fn is_hermitian_by_parts(&self, tol: f64) -> Result<bool> {
        Ok(self.std.is_hermitian(tol)? && self.inf.is_skew_symmetric(tol)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Sampler;
    use proptest::prelude::*;
    use Quaternion as Q;

    fn dq(s: Q, i: Q) -> DualQuaternion {
        DualQuaternion::new(s, i)
    }

    #[test]
    fn products() {
        let e = DualQuaternion::EPSILON;
        assert_eq!(e * e, DualQuaternion::ZERO);
        assert_eq!(dq(Q::ONE, Q::I) * dq(Q::ONE, Q::J), dq(Q::ONE, Q::new(0.0, 1.0, 1.0, 0.0)));
        let p = dq(Q::new(1.0, 2.0, 3.0, 4.0), Q::new(-1.0, 0.5, 0.0, 2.0));
        assert_eq!(p * DualQuaternion::ONE, p);
    }

    #[test]
    fn conjugates() {
        assert_eq!(dq(Q::I, Q::J).conj(), dq(-Q::I, -Q::J));
        assert_eq!(DualQuaternion::ONE.conj(), DualQuaternion::ONE);
        assert_eq!(DualQuaternion::EPSILON.conj(), -DualQuaternion::EPSILON);
        let p = dq(Q::new(1.0, 2.0, 3.0, 4.0), Q::new(-1.0, 0.5, 0.0, 2.0));
        assert_eq!(p.conj().conj(), p);
    }

    #[test]
    fn hermitian_examples() {
        let st = QuatMatrix::from_rows(&[vec![Q::ONE, Q::I], vec![-Q::I, Q::real(2.0)]]);
        let inf = QuatMatrix::from_rows(&[vec![Q::ZERO, Q::J], vec![-Q::J, Q::ZERO]]);
        let a = DualQuatMatrix::new(st.clone(), inf).unwrap();
        assert!(a.is_hermitian(1e-12).unwrap());
        assert!(a.is_hermitian_by_parts(1e-12).unwrap());
        assert_eq!(a.conj_transpose(), a);

        let b = DualQuatMatrix::new(QuatMatrix::identity(2), QuatMatrix::identity(2)).unwrap();
        assert!(!b.is_hermitian(1e-12).unwrap());

        let c = DualQuatMatrix::new(st, QuatMatrix::zeros(2, 2)).unwrap();
        assert!(c.is_hermitian(1e-12).unwrap());

        let r = DualQuatMatrix::new(QuatMatrix::zeros(2, 3), QuatMatrix::zeros(2, 3)).unwrap();
        assert!(matches!(r.is_hermitian(1e-12), Err(Error::NotSquare { .. })));
        assert!(DualQuatMatrix::new(QuatMatrix::zeros(2, 2), QuatMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn json_entries() {
        let a = DualQuatMatrix::new(QuatMatrix::identity(1), QuatMatrix::from_rows(&[vec![Q::K]])).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":1,"entries":[[[1.0,0.0,0.0,0.0],[0.0,0.0,0.0,1.0]]]}"#);
        assert_eq!(serde_json::from_str::<DualQuatMatrix>(&s).unwrap(), a);
    }

    fn arb_dq() -> impl Strategy<Value = DualQuaternion> {
        (prop::array::uniform4(-3.0f64..3.0), prop::array::uniform4(-3.0f64..3.0))
            .prop_map(|(s, i)| dq(Q::from(s), Q::from(i)))
    }

    proptest! {
        #[test]
        fn associative(p in arb_dq(), q in arb_dq(), r in arb_dq()) {
            prop_assert!(((p * q) * r).max_abs_diff(p * (q * r)) <= 1e-12 * 100.0);
        }

        #[test]
        fn conj_involution(p in arb_dq()) {
            prop_assert_eq!(p.conj().conj(), p);
        }

        #[test]
        fn characterization_agrees(n in 1usize..5, seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let rq = |s: &mut Sampler| Q::new(s.symmetric(1.0), s.symmetric(1.0), s.symmetric(1.0), s.symmetric(1.0));
            let g = QuatMatrix::from_fn(n, n, |_, _| rq(&mut s));
            let st = g.add(&g.conj_transpose()).unwrap();
            let inf = QuatMatrix::random_skew_symmetric(n.max(2), seed, 1.0).unwrap();
            let inf = QuatMatrix::from_fn(n, n, |i, j| inf[(i, j)]);
            let a = DualQuatMatrix::new(st, inf).unwrap();
            prop_assert!(a.is_hermitian(1e-12).unwrap());
            prop_assert_eq!(a.is_hermitian(1e-12).unwrap(), a.is_hermitian_by_parts(1e-12).unwrap());
        }
    }
}
