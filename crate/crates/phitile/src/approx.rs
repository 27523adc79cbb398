//! Read-only numeric projections of exact golden-ring values.
//!
//! Nothing in here feeds back into a geometric predicate. The projections
//! exist for float echoes in reports, for SVG coordinates, and for the
//! arctangent identity check, which the contract pins at better-than-double
//! precision. Everything is built from integer arithmetic: √5 is bracketed
//! by an integer square root, decimal digits come from exact floor
//! divisions, and arctan/π are Taylor/Machin sums in fixed-point `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::golden::GoldenNumber;

/// Default precision (in bits) for float echoes in reports.
pub const DEFAULT_ECHO_BITS: u32 = 128;

/// A correctly-rounded binary approximation `mantissa · 2^exp2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    pub mantissa: BigInt,
    pub exp2: i64,
}

impl Dyadic {
    pub fn to_rational(&self) -> BigRational {
        let one = BigInt::from(1);
        if self.exp2 >= 0 {
            BigRational::from_integer(&self.mantissa * (one << self.exp2 as u64))
        } else {
            BigRational::new(self.mantissa.clone(), one << (-self.exp2) as u64)
        }
    }
}

/// Rational interval `[lo, hi]` that brackets `√5` with width `2^-bits`.
pub fn sqrt5_interval(bits: u32) -> (BigRational, BigRational) {
    let scaled = BigInt::from(5) << (2 * bits as u64);
    let s = scaled.sqrt(); // floor(√5 · 2^bits)
    let denom = BigInt::from(1) << bits as u64;
    (
        BigRational::new(s.clone(), denom.clone()),
        BigRational::new(s + 1, denom),
    )
}

/// Rational interval bracketing `a + b·φ`, width `|b| · 2^-bits`.
pub fn golden_interval(x: &GoldenNumber, bits: u32) -> (BigRational, BigRational) {
    // a + bφ = (a + b/2) + (b/2)·√5
    let half = BigRational::new(1.into(), 2.into());
    let u = x.coeff_a() + x.coeff_b() * &half;
    let w = x.coeff_b() * &half;
    if w.is_zero() {
        return (u.clone(), u);
    }
    let (s_lo, s_hi) = sqrt5_interval(bits);
    if w.is_positive() {
        (&u + &w * s_lo, &u + &w * s_hi)
    } else {
        (&u + &w * s_hi, &u + &w * s_lo)
    }
}

/// Round a rational to `bits` significant bits, half to even.
pub fn round_rational_dyadic(r: &BigRational, bits: u32) -> Dyadic {
    assert!(bits >= 2);
    if r.is_zero() {
        return Dyadic {
            mantissa: BigInt::zero(),
            exp2: 0,
        };
    }
    let neg = r.is_negative();
    let p = r.numer().abs();
    let q = r.denom().clone(); // positive by num-rational invariant
    // scale so the floor quotient has bits+2 or bits+3 bits
    let k = bits as i64 + 2 + q.bits() as i64 - p.bits() as i64;
    let (num, den) = if k >= 0 {
        (p << k as u64, q)
    } else {
        (p, q << (-k) as u64)
    };
    let (mut quot, rem) = num.div_rem(&den);
    let mut exp2 = -k;
    let mut sticky = !rem.is_zero();
    while quot.bits() > bits as u64 + 1 {
        if quot.is_odd() {
            sticky = true;
        }
        quot >>= 1;
        exp2 += 1;
    }
    // quot now has bits+1 bits; the low bit is the round bit
    let round = quot.is_odd();
    let mut m: BigInt = quot >> 1;
    exp2 += 1;
    if round && (sticky || m.is_odd()) {
        m += 1;
        if m.bits() > bits as u64 {
            m >>= 1;
            exp2 += 1;
        }
    }
    Dyadic {
        mantissa: if neg { -m } else { m },
        exp2,
    }
}

/// Correctly-rounded `f64` of a rational.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let d = round_rational_dyadic(r, 53);
    // mantissa fits in 53 bits, so the conversion and the power-of-two
    // product are both exact within f64 range
    let m = d.mantissa.to_f64().expect("53-bit mantissa");
    m * 2f64.powi(d.exp2 as i32)
}

impl GoldenNumber {
    /// Correctly-rounded binary approximation at `bits` significant bits
    /// (`bits >= 53`). Pure rationals round exactly; irrational values are
    /// refined through the √5 bracket until both ends round identically.
    pub fn to_dyadic(&self, bits: u32) -> Dyadic {
        assert!(bits >= 53, "projection precision must be at least 53 bits");
        if self.coeff_b().is_zero() {
            return round_rational_dyadic(self.coeff_a(), bits);
        }
        let mut work = bits + 16;
        loop {
            let (lo, hi) = golden_interval(self, work);
            let d_lo = round_rational_dyadic(&lo, bits);
            let d_hi = round_rational_dyadic(&hi, bits);
            if d_lo == d_hi {
                return d_lo;
            }
            work *= 2;
        }
    }

    /// Correctly-rounded `f64` projection.
    pub fn to_f64(&self) -> f64 {
        if self.coeff_b().is_zero() {
            return rational_to_f64(self.coeff_a());
        }
        let mut work = 96u32;
        loop {
            let (lo, hi) = golden_interval(self, work);
            let f_lo = rational_to_f64(&lo);
            let f_hi = rational_to_f64(&hi);
            if f_lo == f_hi {
                return f_lo;
            }
            work *= 2;
        }
    }

    /// Plain-decimal rendering with `sig` significant digits, truncated
    /// toward zero. Digits are certified by exact interval agreement.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let v = self.abs();
        if v.coeff_b().is_zero() {
            let s = decimal_digits_of_rational(v.coeff_a(), sig);
            return if neg { format!("-{s}") } else { s };
        }
        let mut work = (sig as u32) * 4 + 64;
        loop {
            let (lo, hi) = golden_interval(&v, work);
            if let Some(s) = decimal_from_interval(&lo, &hi, sig) {
                return if neg { format!("-{s}") } else { s };
            }
            work *= 2;
        }
    }
}

fn pow10(t: u64) -> BigInt {
    BigInt::from(10).pow(t as u32)
}

/// Largest `t` with `10^t <= r`, for positive `r`. A float hint narrows the
/// search; the answer is verified with exact comparisons.
fn decimal_order(r: &BigRational) -> i64 {
    debug_assert!(r.is_positive());
    let hint = rational_to_f64(r).log10().floor();
    let mut t = if hint.is_finite() { hint as i64 } else { 0 };
    while !pow10_le(t, r) {
        t -= 1;
    }
    while pow10_le(t + 1, r) {
        t += 1;
    }
    t
}

/// Exact test `10^t <= r`.
fn pow10_le(t: i64, r: &BigRational) -> bool {
    if t >= 0 {
        BigRational::from_integer(pow10(t as u64)) <= *r
    } else {
        BigRational::new(1.into(), pow10((-t) as u64)) <= *r
    }
}

/// `floor(r · 10^k)` for positive `r` and any integer `k`.
fn floor_scaled(r: &BigRational, k: i64) -> BigInt {
    let scaled = if k >= 0 {
        r * BigRational::from_integer(pow10(k as u64))
    } else {
        r / BigRational::from_integer(pow10((-k) as u64))
    };
    scaled.floor().to_integer()
}

fn render_digits(digits: &BigInt, order: i64, sig: usize) -> String {
    let ds = digits.to_string();
    debug_assert_eq!(ds.len(), sig);
    if order >= 0 {
        let int_len = (order + 1) as usize;
        if int_len >= sig {
            // pad with zeros up to the decimal point
            format!("{}{}", ds, "0".repeat(int_len - sig))
        } else {
            format!("{}.{}", &ds[..int_len], &ds[int_len..])
        }
    } else {
        format!("0.{}{}", "0".repeat((-order - 1) as usize), ds)
    }
}

fn decimal_digits_of_rational(r: &BigRational, sig: usize) -> String {
    let order = decimal_order(r);
    let k = sig as i64 - 1 - order;
    render_digits(&floor_scaled(r, k), order, sig)
}

fn decimal_from_interval(lo: &BigRational, hi: &BigRational, sig: usize) -> Option<String> {
    if !lo.is_positive() {
        return None;
    }
    let order = decimal_order(lo);
    // interval must agree on the order and on every digit
    if pow10_le(order + 1, hi) {
        return None;
    }
    let k = sig as i64 - 1 - order;
    let d_lo = floor_scaled(lo, k);
    let d_hi = floor_scaled(hi, k);
    (d_lo == d_hi).then(|| render_digits(&d_lo, order, sig))
}

// ---------------------------------------------------------------------------
// Fixed-point elementary evaluations (value = v / 2^frac_bits).
// Only the arctangent identity check needs these.
// ---------------------------------------------------------------------------

fn fixed_mul(x: &BigInt, y: &BigInt, frac_bits: u32) -> BigInt {
    (x * y) >> frac_bits as u64
}

pub(crate) fn fixed_from_rational(r: &BigRational, frac_bits: u32) -> BigInt {
    let one = BigInt::from(1) << frac_bits as u64;
    (r * BigRational::from_integer(one)).floor().to_integer()
}

/// Truncated fixed-point of a golden value.
pub(crate) fn golden_to_fixed(x: &GoldenNumber, frac_bits: u32) -> BigInt {
    let (lo, _) = golden_interval(x, frac_bits + 8);
    fixed_from_rational(&lo, frac_bits)
}

/// Taylor arctangent for `|x| < 1` in fixed-point.
pub(crate) fn fixed_atan(x: &BigInt, frac_bits: u32) -> BigInt {
    let x2 = fixed_mul(x, x, frac_bits);
    let mut power = x.clone();
    let mut acc = x.clone();
    let mut k: u64 = 1;
    loop {
        power = fixed_mul(&power, &x2, frac_bits);
        if power.is_zero() {
            return acc;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            acc -= &term;
        } else {
            acc += &term;
        }
        k += 1;
    }
}

/// π in fixed-point via Machin's formula:
/// π = 16·arctan(1/5) − 4·arctan(1/239).
pub(crate) fn fixed_pi(frac_bits: u32) -> BigInt {
    let one = BigInt::from(1) << frac_bits as u64;
    let a5 = fixed_atan(&(&one / BigInt::from(5)), frac_bits);
    let a239 = fixed_atan(&(&one / BigInt::from(239)), frac_bits);
    a5 * 16 - a239 * 4
}

/// `arctan(φ³) − arctan(φ⁻¹)` in fixed-point, both arctangents evaluated
/// independently (φ³ > 1 is reduced through arctan(x) = π/2 − arctan(1/x)).
pub(crate) fn fixed_arctan_gap(frac_bits: u32) -> BigInt {
    let pi = fixed_pi(frac_bits);
    let inv_phi = golden_to_fixed(&crate::golden::phi_pow(-1), frac_bits);
    let inv_phi3 = golden_to_fixed(&crate::golden::phi_pow(-3), frac_bits);
    let atan_phi3 = (&pi >> 1) - fixed_atan(&inv_phi3, frac_bits);
    atan_phi3 - fixed_atan(&inv_phi, frac_bits)
}

pub(crate) fn fixed_to_decimal(x: &BigInt, frac_bits: u32, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let r = BigRational::new(x.clone(), BigInt::from(1) << frac_bits as u64);
    let neg = r.is_negative();
    let s = decimal_digits_of_rational(&r.abs(), sig);
    if neg {
        format!("-{s}")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::phi_pow;

    const PHI_F64: f64 = 1.618_033_988_749_894_8;

    #[test]
    fn sqrt5_bracket_tightens() {
        for bits in [16u32, 64, 128] {
            let (lo, hi) = sqrt5_interval(bits);
            assert!(lo.clone() * lo.clone() < BigRational::from_integer(5.into()));
            assert!(hi.clone() * hi.clone() > BigRational::from_integer(5.into()));
        }
    }

    #[test]
    fn f64_projection_of_phi_powers() {
        assert_eq!(phi_pow(1).to_f64(), PHI_F64);
        assert_eq!(phi_pow(0).to_f64(), 1.0);
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        for n in -40..=40i64 {
            let exact = phi_pow(n).to_f64();
            let float = phi.powi(n as i32);
            assert!(
                (exact - float).abs() <= float.abs() * 1e-12,
                "phi^{n}: {exact} vs {float}"
            );
        }
    }

    #[test]
    fn f64_projection_of_rationals_is_exact() {
        let r = BigRational::new(1.into(), 3.into());
        assert_eq!(rational_to_f64(&r), 1.0 / 3.0);
        let r = BigRational::new((-7).into(), 8.into());
        assert_eq!(rational_to_f64(&r), -0.875);
        // single rounding: oracle is Rust's correctly-rounded decimal parser
        let big = BigRational::new(BigInt::from(10).pow(40), 3.into());
        let oracle: f64 = "3.333333333333333333333333e39".parse().unwrap();
        assert_eq!(rational_to_f64(&big), oracle);
    }

    #[test]
    fn decimal_string_of_phi() {
        // reference digits of φ
        assert_eq!(
            phi_pow(1).to_decimal_string(30),
            "1.61803398874989484820458683436"
        );
        assert_eq!(
            phi_pow(2).to_decimal_string(20),
            "2.6180339887498948482"
        );
        assert_eq!(phi_pow(0).to_decimal_string(5), "1.0000");
        assert_eq!(
            (-phi_pow(-1)).to_decimal_string(10),
            "-0.6180339887"
        );
    }

    #[test]
    fn decimal_string_handles_magnitudes() {
        // φ¹⁰ = 55φ + 34 ≈ 122.99…
        assert_eq!(phi_pow(10).to_decimal_string(8), "122.99186");
        // small values pick up leading zeros
        assert_eq!(phi_pow(-10).to_decimal_string(6), "0.00813061");
        assert_eq!(GoldenNumber::zero().to_decimal_string(10), "0");
    }

    #[test]
    fn dyadic_rounding_agrees_with_f64() {
        for n in [-9i64, -3, 1, 4, 17] {
            let d = phi_pow(n).to_dyadic(53);
            let via = d.mantissa.to_f64().unwrap() * 2f64.powi(d.exp2 as i32);
            assert_eq!(via, phi_pow(n).to_f64(), "n={n}");
        }
        // exact halves stay exact
        let half = GoldenNumber::new(BigRational::new(1.into(), 2.into()), BigRational::zero());
        let d = half.to_dyadic(60);
        assert_eq!(d.to_rational(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn fixed_pi_reference_digits() {
        let pi = fixed_pi(160);
        let s = fixed_to_decimal(&pi, 160, 30);
        assert_eq!(s, "3.14159265358979323846264338327");
    }

    #[test]
    fn fixed_atan_reference() {
        let f = 160u32;
        let one = BigInt::from(1) << f;
        let a1 = fixed_atan(&(&one / BigInt::from(2)), f);
        // arctan(1/2) = 0.46364760900080611621...
        assert_eq!(fixed_to_decimal(&a1, f, 20), "0.46364760900080611621");
    }

    #[test]
    fn arctan_gap_is_quarter_pi() {
        let f = 192u32;
        let gap = fixed_arctan_gap(f);
        let quarter: BigInt = fixed_pi(f) >> 2;
        let err = (gap - quarter).abs();
        // residual far below 1e-12 (only rounding noise remains)
        let tol = (BigInt::from(1) << f) / BigInt::from(10).pow(30);
        assert!(err < tol, "residual {err}");
    }
}
