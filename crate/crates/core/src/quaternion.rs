//! Real quaternions `w + x i + y j + z k` under the Hamilton relations
//! `i² = j² = k² = ijk = −1`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

/// A quaternion with scalar part `w` and vector part `(x, y, z)`.
///
/// Serializes as the array `[w, x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Embeds `re + im·i`.
    #[inline]
    pub fn from_complex(c: Complex64) -> Self {
        Self::new(c.re, c.im, 0.0, 0.0)
    }

    /// Builds `c + d·j` from the complex pair `(c, d)`; note `(y + z i) j = y j + z k`.
    #[inline]
    pub fn from_complex_pair(c: Complex64, d: Complex64) -> Self {
        Self::new(c.re, c.im, d.re, d.im)
    }

    /// Splits `q = c + d·j` into `(c, d)`.
    #[inline]
    pub fn to_complex_pair(self) -> (Complex64, Complex64) {
        (Complex64::new(self.w, self.x), Complex64::new(self.y, self.z))
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    #[inline]
    pub fn im(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Magnitude of the imaginary part.
    #[inline]
    pub fn im_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// `q̄ / |q|²`.
    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self.conj() / n2)
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Similarity `p ~ q` (some nonzero `u` with `u⁻¹ p u = q`), decided by
    /// equal real parts and equal magnitudes.
    pub fn is_similar(self, other: Self, tol: f64) -> bool {
        (self.re() - other.re()).abs() <= tol && (self.norm() - other.norm()).abs() <= tol
    }

    /// The complex representative of the similarity class `[q]` with
    /// nonnegative imaginary part: `Re(q) + |Im(q)|·i`.
    pub fn standardize(self) -> Complex64 {
        Complex64::new(self.w, self.im_norm())
    }

    /// Writes a unit quaternion as `cos θ + ω sin θ` with `ω` a unit imaginary
    /// quaternion and `θ ∈ [0, π]`. For `q = ±1` the axis is taken to be `i`.
    pub fn euler_decompose(self) -> Result<(Self, f64)> {
        self.euler_decompose_tol(DEFAULT_TOL)
    }

    pub fn euler_decompose_tol(self, tol: f64) -> Result<(Self, f64)> {
        let norm = self.norm();
        if (norm - 1.0).abs() > tol {
            return Err(Error::NotUnit { norm });
        }
        let s = self.im_norm();
        let theta = s.atan2(self.w);
        let omega = if s == 0.0 { Self::I } else { self.im() / s };
        Ok((omega, theta))
    }

    /// `cos θ + ω sin θ`.
    pub fn from_euler(omega: Self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::real(c) + omega * s
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, q: Self) -> Self {
        let p = self;
        Self::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision().unwrap_or(4);
        write!(f, "{:.*}", prec, self.w)?;
        for (v, unit) in [(self.x, "i"), (self.y, "j"), (self.z, "k")] {
            let sign = if v.is_sign_negative() { '-' } else { '+' };
            write!(f, " {} {:.*}{}", sign, prec, v.abs(), unit)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol
    }

    #[test]
    fn multiplication_table() {
        use Quaternion as Q;
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::I, -Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        for u in [Q::I, Q::J, Q::K] {
            assert_eq!(u * u, -Q::ONE);
        }
        assert_eq!(Q::I * Q::J * Q::K, -Q::ONE);
        assert_ne!(Q::I * Q::J, Q::J * Q::I);
    }

    #[test]
    fn product_examples() {
        let p = q(1.5, -2.0, 0.25, 3.0);
        assert_eq!(p * Quaternion::ONE, p);
        // (1 + i)(1 + j) = 1 + j + i + ij = 1 + i + j + k
        assert_eq!(q(1.0, 1.0, 0.0, 0.0) * q(1.0, 0.0, 1.0, 0.0), q(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn conj_and_norm() {
        assert_eq!(q(1.0, 1.0, 1.0, 1.0).conj(), q(1.0, -1.0, -1.0, -1.0));
        assert_eq!(Quaternion::real(5.0).conj(), Quaternion::real(5.0));
        assert_eq!(q(1.0, 1.0, 1.0, 1.0).norm(), 2.0);
        assert_eq!(Quaternion::ZERO.norm(), 0.0);
    }

    #[test]
    fn inverse() {
        assert_eq!(Quaternion::real(2.0).inv().unwrap(), Quaternion::real(0.5));
        assert_eq!(Quaternion::I.inv().unwrap(), -Quaternion::I);
        let p = q(1.0, 1.0, 0.0, 0.0);
        assert!(close(p.inv().unwrap() * p, Quaternion::ONE, 1e-15));
        assert!(close(p * p.inv().unwrap(), Quaternion::ONE, 1e-15));
        assert_eq!(Quaternion::ZERO.inv(), Err(Error::ZeroQuaternion));
    }

    #[test]
    fn similarity() {
        // witness u = i + j: u⁻¹ i u = j
        let u = q(0.0, 1.0, 1.0, 0.0);
        assert!(close(u.inv().unwrap() * Quaternion::I * u, Quaternion::J, 1e-15));
        assert!(Quaternion::I.is_similar(Quaternion::J, 1e-10));
        let p = q(0.3, -1.0, 2.0, 0.5);
        assert!(p.is_similar(p, 1e-10));
        assert!(!Quaternion::real(2.0).is_similar(Quaternion::real(3.0), 1e-10));
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(Quaternion::real(3.0).standardize(), Complex64::new(3.0, 0.0));
        assert_eq!(Quaternion::J.standardize(), Complex64::new(0.0, 1.0));
        assert_eq!(q(1.0, -2.0, 0.0, 0.0).standardize(), Complex64::new(1.0, 2.0));
    }

    #[test]
    fn euler_examples() {
        let (w, t) = Quaternion::K.euler_decompose().unwrap();
        assert!(close(w, Quaternion::K, 1e-15));
        assert!((t - FRAC_PI_2).abs() < 1e-15);

        let (w, t) = Quaternion::ONE.euler_decompose().unwrap();
        assert_eq!((w, t), (Quaternion::I, 0.0));

        let (w, t) = q(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0).euler_decompose().unwrap();
        assert!(close(w, Quaternion::I, 1e-15));
        assert!((t - FRAC_PI_4).abs() < 1e-15);

        let (w, t) = (-Quaternion::ONE).euler_decompose().unwrap();
        assert!(close(Quaternion::from_euler(w, t), -Quaternion::ONE, 1e-15));

        assert!(matches!(q(2.0, 0.0, 0.0, 0.0).euler_decompose(), Err(Error::NotUnit { .. })));
    }

    #[test]
    fn display() {
        assert_eq!(format!("{:.1}", q(1.0, -2.0, 0.5, 0.0)), "1.0 - 2.0i + 0.5j + 0.0k");
    }

    #[test]
    fn serde_as_array() {
        let p = q(1.0, -2.0, 0.5, 0.0);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[1.0,-2.0,0.5,0.0]");
        assert_eq!(serde_json::from_str::<Quaternion>(&s).unwrap(), p);
    }

    fn arb_quat() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-10.0f64..10.0).prop_map(Quaternion::from)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn norm_is_multiplicative(p in arb_quat(), r in arb_quat()) {
            let lhs = (p * r).norm();
            let rhs = p.norm() * r.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
        }

        #[test]
        fn conj_reverses_products(p in arb_quat(), r in arb_quat()) {
            let scale = (p.norm() * r.norm()).max(1.0);
            prop_assert!((p * r).conj().max_abs_diff(r.conj() * p.conj()) <= 1e-12 * scale);
        }

        #[test]
        fn associative(p in arb_quat(), r in arb_quat(), s in arb_quat()) {
            let scale = (p.norm() * r.norm() * s.norm()).max(1.0);
            prop_assert!(((p * r) * s).max_abs_diff(p * (r * s)) <= 1e-12 * scale);
        }

        #[test]
        fn euler_round_trip(p in arb_quat()) {
            prop_assume!(p.norm() > 1e-6);
            let u = p / p.norm();
            let (omega, theta) = u.euler_decompose().unwrap();
            prop_assert!((omega.norm() - 1.0).abs() < 1e-12);
            prop_assert!(omega.re() == 0.0);
            prop_assert!((0.0..=std::f64::consts::PI).contains(&theta));
            prop_assert!(Quaternion::from_euler(omega, theta).max_abs_diff(u) <= 1e-10);
        }

        #[test]
        fn standardize_stays_in_class(p in arb_quat()) {
            let c = p.standardize();
            prop_assert!(c.im >= 0.0);
            prop_assert_eq!(c.re, p.re());
            prop_assert!((c.norm() - p.norm()).abs() <= 1e-12 * p.norm().max(1.0));
            prop_assert!(Quaternion::from_complex(c).is_similar(p, 1e-10));
        }
    }
}
