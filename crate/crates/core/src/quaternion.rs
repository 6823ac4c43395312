//! Quaternion algebra over the basis {1, i, j, k}.
//!
//! Besides the Hamilton product this module carries the pieces the signal
//! processing layers rely on: the three anti-involutions `-mu q mu`, the
//! Cayley-Dickson split `q = z1 + z2 j` into two i-plane complex numbers, and
//! the polar Cayley-Dickson form `q = A exp(B j)` with complex modulus `A`
//! and complex phase `B`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Quaternion<T> {
    #[inline]
    pub const fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    #[inline]
    pub fn one() -> Self {
        Self::from_real(T::one())
    }

    #[inline]
    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    #[inline]
    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    #[inline]
    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    #[inline]
    pub fn from_real(w: T) -> Self {
        Self::new(w, T::zero(), T::zero(), T::zero())
    }

    /// Embeds an i-plane complex number.
    #[inline]
    pub fn from_complex(c: Complex<T>) -> Self {
        Self::new(c.re, c.im, T::zero(), T::zero())
    }

    /// `cos(theta) + sin(theta) j`, the kernel of the axis-j transform.
    #[inline]
    pub fn exp_j(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, T::zero(), s, T::zero())
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Squared modulus `q conj(q)`.
    #[inline]
    pub fn norm(self) -> T {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn modulus(self) -> T {
        self.norm().sqrt()
    }

    #[inline]
    pub fn is_pure(self) -> bool {
        self.w == T::zero()
    }

    #[inline]
    pub fn is_unit(self, tol: T) -> bool {
        (self.modulus() - T::one()).abs() <= tol
    }

    pub fn inverse(self) -> Result<Self> {
        let n = self.norm();
        if n == T::zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj() / n)
    }

    /// Anti-involution `-mu q mu` for `mu` in {i, j, k}: keeps the scalar and
    /// the `mu` component, negates the other two.
    #[inline]
    pub fn involution(self, axis: Axis) -> Self {
        match axis {
            Axis::I => Self::new(self.w, self.x, -self.y, -self.z),
            Axis::J => Self::new(self.w, -self.x, self.y, -self.z),
            Axis::K => Self::new(self.w, -self.x, -self.y, self.z),
        }
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(self, other: Self) -> T {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Simplex (i-plane) component `w + x i`.
    #[inline]
    pub fn simplex(self) -> Complex<T> {
        Complex::new(self.w, self.x)
    }

    #[inline]
    pub fn cayley_dickson(self) -> CayleyDickson<T> {
        CayleyDickson { z1: Complex::new(self.w, self.x), z2: Complex::new(self.y, self.z) }
    }

    #[inline]
    pub fn from_cayley_dickson(cd: CayleyDickson<T>) -> Self {
        Self::new(cd.z1.re, cd.z1.im, cd.z2.re, cd.z2.im)
    }

    /// Polar Cayley-Dickson form with `|B|` on the branch `[0, pi/2)`.
    ///
    /// With `q = z1 + z2 j` the form is `A = z1 |q| / |z1|` and
    /// `B = atan2(|z2|, |z1|) * (z2 conj(z1)) / |z2 conj(z1)|`, so `|A| = |q|`
    /// and `A` keeps the argument of `z1`.
    pub fn to_polar_cd(self) -> Result<PolarCd<T>> {
        let CayleyDickson { z1, z2 } = self.cayley_dickson();
        let r1 = z1.norm();
        if r1 == T::zero() {
            return Err(Error::DegeneratePolar);
        }
        let r2 = z2.norm();
        let a = z1 * (r1.hypot(r2) / r1);
        if r2 == T::zero() {
            return Ok(PolarCd { a, b: Complex::new(T::zero(), T::zero()) });
        }
        let beta = r2.atan2(r1);
        let dir = z2 * z1.conj() / (r1 * r2);
        Ok(PolarCd { a, b: dir * beta })
    }

    #[inline]
    pub fn from_polar_cd(p: PolarCd<T>) -> Self {
        Self::from_complex(p.a) * exp_degenerate(p.b.re, p.b.im)
    }
}

/// `exp(p)` for the degenerate pure quaternion `p = (c + d i) j = c j + d k`.
pub fn exp_degenerate<T: Scalar>(c: T, d: T) -> Quaternion<T> {
    let m = c.hypot(d);
    if m == T::zero() {
        return Quaternion::one();
    }
    let (s, co) = m.sin_cos();
    Quaternion::new(co, T::zero(), c / m * s, d / m * s)
}

/// `q = z1 + z2 j` with both components in the i-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CayleyDickson<T> {
    pub z1: Complex<T>,
    pub z2: Complex<T>,
}

/// `q = A exp(B j)`: complex modulus `a` and complex phase `b` (radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarCd<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
}

/// Imaginary unit selecting one of the three anti-involutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    I,
    J,
    K,
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "i" | "I" => Ok(Axis::I),
            "j" | "J" => Ok(Axis::J),
            "k" | "K" => Ok(Axis::K),
            other => Err(Error::InvalidAxis(other.to_string())),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::I => "i",
            Axis::J => "j",
            Axis::K => "k",
        })
    }
}

impl<T: Scalar> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z)
    }
}

impl<T: Scalar> Add for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl<T: Scalar> AddAssign for Quaternion<T> {
    #[inline]
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl<T: Scalar> Sub for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl<T: Scalar> SubAssign for Quaternion<T> {
    #[inline]
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

impl<T: Scalar> Neg for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl<T: Scalar> Mul for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn mul(self, r: Self) -> Self {
        let (a, b) = (self, r);
        Self::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl<T: Scalar> MulAssign for Quaternion<T> {
    #[inline]
    fn mul_assign(&mut self, r: Self) {
        *self = *self * r;
    }
}

impl<T: Scalar> Mul<T> for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Scalar> Div<T> for Quaternion<T> {
    type Output = Self;
    #[inline]
    fn div(self, s: T) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl<T: Scalar> From<Complex<T>> for Quaternion<T> {
    fn from(c: Complex<T>) -> Self {
        Self::from_complex(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    type Q = Quaternion<f64>;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Q {
        Q::new(w, x, y, z)
    }

    fn close(a: Q, b: Q, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol
    }

    #[test]
    fn basis_products() {
        assert_eq!(Q::i() * Q::j(), Q::k());
        assert_eq!(Q::j() * Q::i(), -Q::k());
        assert_eq!(Q::i() * Q::j() * Q::k(), -Q::one());
        for u in [Q::i(), Q::j(), Q::k()] {
            assert_eq!(u * u, -Q::one());
        }
        assert_eq!((Q::one() + Q::i()) * (Q::one() + Q::j()), q(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn involutions_and_conjugate() {
        let p = q(1.0, 1.0, 1.0, 1.0);
        assert_eq!(p.involution(Axis::I), q(1.0, 1.0, -1.0, -1.0));
        assert_eq!(p.involution(Axis::J), q(1.0, -1.0, 1.0, -1.0));
        assert_eq!(p.involution(Axis::K), q(1.0, -1.0, -1.0, 1.0));
        assert_eq!(q(2.0, 0.0, 0.0, 3.0).conj(), q(2.0, 0.0, 0.0, -3.0));
        // matches the sandwich definition
        let r = q(0.3, -1.2, 2.5, 0.7);
        for (axis, mu) in [(Axis::I, Q::i()), (Axis::J, Q::j()), (Axis::K, Q::k())] {
            assert!(close(r.involution(axis), -(mu * r * mu), 1e-15));
        }
    }

    #[test]
    fn axis_tokens() {
        assert_eq!("j".parse::<Axis>().unwrap(), Axis::J);
        assert!(matches!("x".parse::<Axis>(), Err(Error::InvalidAxis(_))));
    }

    #[test]
    fn inverses() {
        assert_eq!(Q::from_real(2.0).inverse().unwrap(), Q::from_real(0.5));
        assert_eq!(Q::j().inverse().unwrap(), -Q::j());
        assert_eq!(q(1.0, 1.0, 1.0, 1.0).inverse().unwrap(), q(0.25, -0.25, -0.25, -0.25));
        assert!(matches!(Q::zero().inverse(), Err(Error::ZeroInverse)));
    }

    #[test]
    fn degenerate_exponential() {
        assert!(close(exp_degenerate(FRAC_PI_2, 0.0), Q::j(), 1e-15));
        assert_eq!(exp_degenerate(0.0, 0.0), Q::one());
        let s = 1f64.sin();
        assert!(close(exp_degenerate(0.6, 0.8), q(1f64.cos(), 0.0, 0.6 * s, 0.8 * s), 1e-15));
    }

    #[test]
    fn polar_cd_examples() {
        let p = Q::from_real(2.0).to_polar_cd().unwrap();
        assert_eq!(p.a, Complex::new(2.0, 0.0));
        assert_eq!(p.b, Complex::new(0.0, 0.0));

        let src = Q::from_complex(Complex::new(1.0, 1.0)) * exp_degenerate(0.3, 0.0);
        let p = src.to_polar_cd().unwrap();
        assert!((p.a - Complex::new(1.0, 1.0)).norm() < 1e-14);
        assert!((p.b - Complex::new(0.3, 0.0)).norm() < 1e-14);

        assert_eq!(Q::from_polar_cd(PolarCd { a: Complex::new(1.0, 0.0), b: Complex::new(0.0, 0.0) }), Q::one());
        let k = Q::from_polar_cd(PolarCd { a: Complex::new(0.0, 1.0), b: Complex::new(FRAC_PI_2, 0.0) });
        assert!(close(k, Q::k(), 1e-15));
    }

    #[test]
    fn polar_cd_degenerate_inputs_error() {
        for d in [Q::zero(), Q::j(), q(0.0, 0.0, 0.3, -2.0), Q::k()] {
            assert!(matches!(d.to_polar_cd(), Err(Error::DegeneratePolar)));
        }
    }

    #[test]
    fn f32_algebra() {
        let a = Quaternion::<f32>::new(1.0, 2.0, 3.0, 4.0);
        let inv = a.inverse().unwrap();
        assert!((a * inv).max_abs_diff(Quaternion::one()) < 1e-6);
        let p = a.to_polar_cd().unwrap();
        assert!(Quaternion::from_polar_cd(p).max_abs_diff(a) < 1e-5);
    }

    fn quat() -> impl Strategy<Value = Q> {
        (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(w, x, y, z)| q(w, x, y, z))
    }

    proptest! {
        #[test]
        fn associative(a in quat(), b in quat(), c in quat()) {
            prop_assert!(close((a * b) * c, a * (b * c), 1e-13));
        }

        #[test]
        fn norm_is_multiplicative(a in quat(), b in quat()) {
            let lhs = (a * b).norm();
            let rhs = a.norm() * b.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
        }

        #[test]
        fn conjugate_reverses_products(a in quat(), b in quat()) {
            prop_assert!(close((a * b).conj(), b.conj() * a.conj(), 1e-13));
        }

        #[test]
        fn involution_is_self_inverse(a in quat()) {
            for axis in [Axis::I, Axis::J, Axis::K] {
                prop_assert_eq!(a.involution(axis).involution(axis), a);
            }
        }

        #[test]
        fn inverse_is_two_sided(a in quat()) {
            prop_assume!(a.norm() > 1e-3);
            let inv = a.inverse().unwrap();
            prop_assert!(close(a * inv, Q::one(), 1e-13 / a.norm().min(1.0)));
            prop_assert!(close(inv * a, Q::one(), 1e-13 / a.norm().min(1.0)));
        }

        #[test]
        fn degenerate_exponential_is_unit(c in -50.0..50.0f64, d in -50.0..50.0f64) {
            prop_assert!((exp_degenerate(c, d).modulus() - 1.0).abs() <= 1e-14);
        }

        #[test]
        fn polar_round_trip_from_polar(re in -2.0..2.0f64, im in -2.0..2.0f64,
                                       mag in 0.0..(FRAC_PI_2 - 1e-3), ang in -PI..PI) {
            prop_assume!(re.hypot(im) > 1e-3);
            let src = PolarCd { a: Complex::new(re, im), b: Complex::from_polar(mag, ang) };
            let back = Q::from_polar_cd(src).to_polar_cd().unwrap();
            prop_assert!((back.a - src.a).norm() <= 1e-12);
            // the direction of B is meaningless at |B| = 0
            prop_assert!((back.b - src.b).norm() <= 1e-12 * (1.0 + 1.0 / (mag.sin().max(1e-3))));
        }

        #[test]
        fn polar_reconstructs(a in quat()) {
            prop_assume!(a.w * a.w + a.x * a.x > 1e-6);
            let p = a.to_polar_cd().unwrap();
            prop_assert!(p.b.norm() < FRAC_PI_2);
            prop_assert!(close(Q::from_polar_cd(p), a, 1e-12));
        }
    }
}
