//! Exact arithmetic in the ring of numbers `a + b·φ` with rational
//! coefficients, where φ = (1+√5)/2.
//!
//! The whole crate runs on this kernel: every coordinate, length and area
//! is a [`GoldenNumber`], every predicate is an exact sign test, and floats
//! only ever appear as read-only projections (see [`crate::approx`]).
//!
//! Since φ² = φ + 1, the ring is closed under multiplication:
//! `(a+bφ)(c+dφ) = (ac+bd) + (ad+bc+bd)φ`. Because φ is irrational the
//! representation is unique, so equality of coefficients is equality of
//! numbers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::fib::fibonacci;

/// Default cap on `|n|` for [`phi_pow`]; guards against runaway exponents
/// from malformed input. Use [`phi_pow_checked`] to pick a different bound.
pub const PHI_POW_BOUND: i64 = 10_000;

/// Exponent outside the configured bound for a power of φ.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("phi exponent {n} exceeds bound {bound}")]
pub struct ExponentBoundError {
    pub n: i64,
    pub bound: i64,
}

/// An element `a + b·φ` of the golden ring, with arbitrary-precision
/// rational coefficients kept in reduced form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenNumber {
    a: BigRational,
    b: BigRational,
}

impl GoldenNumber {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    /// `a + b·φ` with integer coefficients.
    pub fn from_ints(a: i64, b: i64) -> Self {
        Self {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ints(n, 0)
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn phi() -> Self {
        Self::from_ints(0, 1)
    }

    /// Coefficient of 1.
    pub fn coeff_a(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of φ.
    pub fn coeff_b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of `a + b·φ`, computed with rational arithmetic only.
    ///
    /// Writing the value as `(u + v·√5)/2` with `u = 2a+b`, `v = b`, the
    /// sign follows from the signs of `u`, `v` and of `u² - 5v²`.
    pub fn signum(&self) -> i32 {
        let u = &self.a + &self.a + &self.b; // 2a + b
        let v = &self.b;
        let su = rational_sign(&u);
        let sv = rational_sign(v);
        match (su, sv) {
            (0, 0) => 0,
            (s, 0) => s,
            (0, s) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            // opposite signs: compare u^2 against 5 v^2
            (1, -1) => rational_sign(&(&u * &u - five() * v * v)),
            (-1, 1) => -rational_sign(&(&u * &u - five() * v * v)),
            _ => unreachable!(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            a: &self.a * r,
            b: &self.b * r,
        }
    }

    /// Exact half, handy because several closed forms carry a factor 1/2.
    pub fn halved(&self) -> Self {
        self.scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// Galois conjugate (√5 ↦ -√5): `a + bφ ↦ (a+b) - bφ`.
    pub fn conjugate(&self) -> Self {
        Self {
            a: &self.a + &self.b,
            b: -&self.b,
        }
    }

    /// Field norm `x · conj(x) = a² + ab - b²`, a rational.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(self.conjugate().scale(&n.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.recip().map(|r| self * &r)
    }

    /// If the value equals `φ^m` for some integer `|m| <= PHI_POW_BOUND`,
    /// return `m`.
    pub fn as_phi_power(&self) -> Option<i64> {
        if self.signum() <= 0 {
            return None;
        }
        // binary search the largest m with phi^m <= self, then test equality
        let (mut lo, mut hi) = (-PHI_POW_BOUND, PHI_POW_BOUND);
        if *self < phi_pow(lo) {
            return None;
        }
        while lo < hi {
            let mid = lo + (hi - lo + 1) / 2;
            if phi_pow(mid) <= *self {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        (phi_pow(lo) == *self).then_some(lo)
    }
}

fn five() -> BigRational {
    BigRational::from_integer(5.into())
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// `φ^n`, realized exactly as `F(n-1) + F(n)·φ`.
///
/// Panics when `|n|` exceeds [`PHI_POW_BOUND`]; use [`phi_pow_checked`]
/// for fallible construction from untrusted input.
pub fn phi_pow(n: i64) -> GoldenNumber {
    phi_pow_checked(n, PHI_POW_BOUND).expect("phi exponent within default bound")
}

/// `φ^n` with an explicit exponent bound.
pub fn phi_pow_checked(n: i64, bound: i64) -> Result<GoldenNumber, ExponentBoundError> {
    if n.abs() > bound {
        return Err(ExponentBoundError { n, bound });
    }
    Ok(GoldenNumber {
        a: BigRational::from_integer(fibonacci(n - 1)),
        b: BigRational::from_integer(fibonacci(n)),
    })
}

impl PartialOrd for GoldenNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: GoldenNumber) -> GoldenNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GoldenNumber> for GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: &GoldenNumber) -> GoldenNumber {
                (&self).$method(rhs)
            }
        }
        impl $trait<GoldenNumber> for &GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: GoldenNumber) -> GoldenNumber {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&GoldenNumber> for &GoldenNumber {
    type Output = GoldenNumber;
    fn add(self, rhs: &GoldenNumber) -> GoldenNumber {
        GoldenNumber {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}
forward_binop!(Add, add);

impl Sub<&GoldenNumber> for &GoldenNumber {
    type Output = GoldenNumber;
    fn sub(self, rhs: &GoldenNumber) -> GoldenNumber {
        GoldenNumber {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}
forward_binop!(Sub, sub);

impl Mul<&GoldenNumber> for &GoldenNumber {
    type Output = GoldenNumber;
    fn mul(self, rhs: &GoldenNumber) -> GoldenNumber {
        // (a+bφ)(c+dφ) = (ac+bd) + (ad+bc+bd)φ  using φ² = φ+1
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let ad = &self.a * &rhs.b;
        let bc = &self.b * &rhs.a;
        GoldenNumber {
            a: ac + &bd,
            b: ad + bc + bd,
        }
    }
}
forward_binop!(Mul, mul);

impl Div<&GoldenNumber> for &GoldenNumber {
    type Output = GoldenNumber;
    fn div(self, rhs: &GoldenNumber) -> GoldenNumber {
        self.checked_div(rhs).expect("division by zero GoldenNumber")
    }
}
forward_binop!(Div, div);

impl Neg for &GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        GoldenNumber {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        -&self
    }
}

impl AddAssign<&GoldenNumber> for GoldenNumber {
    fn add_assign(&mut self, rhs: &GoldenNumber) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&GoldenNumber> for GoldenNumber {
    fn sub_assign(&mut self, rhs: &GoldenNumber) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&GoldenNumber> for GoldenNumber {
    fn mul_assign(&mut self, rhs: &GoldenNumber) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for GoldenNumber {
    fn sum<I: Iterator<Item = GoldenNumber>>(iter: I) -> Self {
        iter.fold(GoldenNumber::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl fmt::Display for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        if self.a.is_zero() {
            return write!(f, "{}*phi", fmt_rational(&self.b));
        }
        if self.b.is_negative() {
            write!(
                f,
                "{} - {}*phi",
                fmt_rational(&self.a),
                fmt_rational(&(-&self.b))
            )
        } else {
            write!(f, "{} + {}*phi", fmt_rational(&self.a), fmt_rational(&self.b))
        }
    }
}

/// Render a rational as `"p"` or `"p/q"` in decimal.
pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    BigRational::from_str(s).ok()
}

impl Serialize for GoldenNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GoldenNumber", 2)?;
        st.serialize_field("a", &fmt_rational(&self.a))?;
        st.serialize_field("b", &fmt_rational(&self.b))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GoldenNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            a: String,
            b: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        let a = parse_rational(&raw.a)
            .ok_or_else(|| D::Error::custom(format!("invalid rational: {}", raw.a)))?;
        let b = parse_rational(&raw.b)
            .ok_or_else(|| D::Error::custom(format!("invalid rational: {}", raw.b)))?;
        Ok(GoldenNumber::new(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gn(a: i64, b: i64) -> GoldenNumber {
        GoldenNumber::from_ints(a, b)
    }

    #[test]
    fn addition_examples() {
        // 1 + φ = φ²
        assert_eq!(gn(1, 0) + gn(0, 1), gn(1, 1));
        assert_eq!(gn(7, -3) + gn(0, 0), gn(7, -3));
        // φ⁻¹ + 1 = φ
        assert_eq!(gn(-1, 1) + gn(1, 0), gn(0, 1));
    }

    #[test]
    fn multiplication_examples() {
        // φ·φ = φ + 1
        assert_eq!(gn(0, 1) * gn(0, 1), gn(1, 1));
        assert_eq!(gn(1, 0) * gn(4, -9), gn(4, -9));
        // φ⁻¹·φ = 1, float oracle
        let prod = gn(-1, 1) * gn(0, 1);
        assert_eq!(prod, gn(1, 0));
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!(((-1.0 + phi) * phi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sign_examples() {
        assert_eq!(gn(0, 0).signum(), 0);
        assert_eq!(gn(-1, 1).signum(), 1); // φ⁻¹ > 0
        assert_eq!(gn(2, -1).signum(), 1); // 2 - φ ≈ 0.382
        assert_eq!(gn(5, -4).signum(), -1); // 5 - 4φ ≈ -1.472
        assert_eq!(gn(-2, 1).signum(), -1);
        // rational coefficients too
        let x = GoldenNumber::new(
            BigRational::new(3.into(), 2.into()),
            BigRational::new((-1).into(), 1.into()),
        );
        assert_eq!(x.signum(), -1); // 3/2 - φ < 0
    }

    #[test]
    fn sign_matches_float_on_examples() {
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        for (a, b) in [(2i64, -1i64), (5, -4), (-1, 1), (3, -2), (-8, 5), (13, -8)] {
            let exact = gn(a, b).signum();
            let approx = (a as f64 + b as f64 * phi).signum() as i32;
            assert_eq!(exact, approx, "sign of {a} + {b}φ");
        }
    }

    #[test]
    fn phi_pow_examples() {
        assert_eq!(phi_pow(0), gn(1, 0));
        assert_eq!(phi_pow(1), gn(0, 1));
        assert_eq!(phi_pow(2), gn(1, 1));
        assert_eq!(phi_pow(-1), gn(-1, 1));
        assert_eq!(phi_pow(-2), gn(2, -1));
        // φ⁻² is the square of φ⁻¹
        assert_eq!(phi_pow(-1) * phi_pow(-1), phi_pow(-2));
    }

    #[test]
    fn phi_pow_is_homomorphism() {
        for m in -12..=12 {
            for n in -12..=12 {
                assert_eq!(phi_pow(m) * phi_pow(n), phi_pow(m + n), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn phi_pow_recursion() {
        for n in -100..=98i64 {
            assert_eq!(phi_pow(n + 2), phi_pow(n + 1) + phi_pow(n));
        }
    }

    #[test]
    fn phi_pow_bound() {
        assert!(phi_pow_checked(10_000, PHI_POW_BOUND).is_ok());
        let err = phi_pow_checked(10_001, PHI_POW_BOUND).unwrap_err();
        assert_eq!(err.n, 10_001);
        assert!(phi_pow_checked(-5, 4).is_err());
    }

    #[test]
    fn ordering_is_numeric() {
        assert!(gn(2, -1) > GoldenNumber::zero());
        assert!(gn(0, 1) > gn(1, 0)); // φ > 1
        assert!(gn(1, 1) < gn(0, 2)); // φ² < 2φ  (2.618 < 3.236)
        let mut v = vec![phi_pow(3), phi_pow(-2), phi_pow(0), phi_pow(-5)];
        v.sort();
        assert_eq!(v, vec![phi_pow(-5), phi_pow(-2), phi_pow(0), phi_pow(3)]);
    }

    #[test]
    fn division_and_recip() {
        let x = gn(3, 5);
        let y = gn(-2, 7);
        let q = &x / &y;
        assert_eq!(&q * &y, x);
        assert_eq!(gn(0, 0).recip(), None);
        assert_eq!(gn(0, 1).recip().unwrap(), gn(-1, 1));
    }

    #[test]
    fn recognizes_phi_powers() {
        for n in [-50i64, -7, -1, 0, 1, 2, 13, 60] {
            assert_eq!(phi_pow(n).as_phi_power(), Some(n));
        }
        assert_eq!(gn(2, 0).as_phi_power(), None);
        assert_eq!(gn(0, 2).as_phi_power(), None); // 2φ
        assert_eq!(gn(-3, 2).as_phi_power(), Some(-3)); // F(-4) + F(-3)φ
        assert_eq!(gn(-3, 3).as_phi_power(), None); // 3φ⁻¹
        assert_eq!(GoldenNumber::zero().as_phi_power(), None);
        assert_eq!((-phi_pow(4)).as_phi_power(), None);
    }

    #[test]
    fn conjugate_and_norm() {
        let x = gn(2, 3);
        let n = x.norm();
        // a² + ab - b² = 4 + 6 - 9 = 1
        assert_eq!(n, BigRational::from_integer(1.into()));
        assert_eq!(&x * &x.conjugate(), GoldenNumber::new(n, BigRational::zero()));
    }

    #[test]
    fn serde_golden_number() {
        let x = GoldenNumber::new(
            BigRational::new(3.into(), 2.into()),
            BigRational::new((-5).into(), 7.into()),
        );
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"a":"3/2","b":"-5/7"}"#);
        let back: GoldenNumber = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        // integers drop the denominator
        assert_eq!(
            serde_json::to_string(&gn(4, 0)).unwrap(),
            r#"{"a":"4","b":"0"}"#
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(gn(3, 0).to_string(), "3");
        assert_eq!(gn(0, 2).to_string(), "2*phi");
        assert_eq!(gn(123, 199).to_string(), "123 + 199*phi");
        assert_eq!(gn(5, -4).to_string(), "5 - 4*phi");
    }
}
