//! Exact verification of the geometric power-series identities the tilings
//! encode, plus the arctangent certificate for the 45° angle between the
//! slope-φ³ and slope-φ⁻¹ rays.
//!
//! Convergence is certified without limits: each report carries the exact
//! partial sum, the closed-form right-hand side, and a closed-form residual
//! in the golden ring with `partial + residual = rhs` exactly. The residual
//! forms for the plain and arithmetic-weighted series follow from re-basing
//! the tail; the Fibonacci-weighted residual comes from the partial
//! generating-function identity
//! `Σ_{k≤K} F_k x^k = (x − F_{K+1} x^{K+1} − F_K x^{K+2}) / (1 − x − x²)`
//! at `x = φ⁻²`, where `1 − x − x² = 2φ⁻³`. All of them are validated
//! against a naive term-summation oracle in the test suites.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::approx::{fixed_arctan_gap, fixed_pi, fixed_to_decimal, DEFAULT_ECHO_BITS};
use crate::fib::fibonacci;
use crate::golden::{phi_pow, GoldenNumber};
use crate::tiling::{divider, Direction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("a partial sum needs at least one term")]
    ZeroTerms,
    #[error("divider segment sums do not match the series partials")]
    DividerMismatch,
}

/// The four series under verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    /// `φ^(n-1) + φ^(n-3) + φ^(n-5) + ⋯ = φ^n`
    OddPowers,
    /// `φ^(n-1) + φ^(n-2) + φ^(n-3) + ⋯ = φ^(n+1)`
    AllPowers,
    /// `F_1 φ^(n-1) + F_2 φ^(n-3) + F_3 φ^(n-5) + ⋯ = φ^(n+2) / 2`
    FibWeighted,
    /// `1 φ^(n-1) + 2 φ^(n-2) + 3 φ^(n-3) + ⋯ = φ^(n+3)`
    ArithWeighted,
}

impl Formula {
    pub const ALL: [Formula; 4] = [
        Formula::OddPowers,
        Formula::AllPowers,
        Formula::FibWeighted,
        Formula::ArithWeighted,
    ];

    /// The k-th term (k ≥ 1).
    pub fn term(&self, n: i64, k: u32) -> GoldenNumber {
        let k = k as i64;
        match self {
            Formula::OddPowers => phi_pow(n - 2 * k + 1),
            Formula::AllPowers => phi_pow(n - k),
            Formula::FibWeighted => {
                phi_pow(n - 2 * k + 1).scale(&BigRational::from_integer(fibonacci(k)))
            }
            Formula::ArithWeighted => {
                phi_pow(n - k).scale(&BigRational::from_integer(k.into()))
            }
        }
    }

    /// Exact value of the full series.
    pub fn rhs(&self, n: i64) -> GoldenNumber {
        match self {
            Formula::OddPowers => phi_pow(n),
            Formula::AllPowers => phi_pow(n + 1),
            Formula::FibWeighted => phi_pow(n + 2).halved(),
            Formula::ArithWeighted => phi_pow(n + 3),
        }
    }

    /// Closed form of the tail after `terms` terms.
    pub fn residual(&self, n: i64, terms: u32) -> GoldenNumber {
        let k = terms as i64;
        match self {
            Formula::OddPowers => phi_pow(n - 2 * k),
            Formula::AllPowers => phi_pow(n - k + 1),
            Formula::FibWeighted => {
                let upper = phi_pow(n - 2 * k + 2).scale(&BigRational::from_integer(fibonacci(k + 1)));
                let lower = phi_pow(n - 2 * k).scale(&BigRational::from_integer(fibonacci(k)));
                (upper + lower).halved()
            }
            Formula::ArithWeighted => {
                phi_pow(n - k + 1).scale(&BigRational::from_integer(k.into())) + phi_pow(n - k + 3)
            }
        }
    }
}

/// Exact bookkeeping for one truncated series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub formula: Formula,
    pub n: i64,
    #[serde(rename = "K")]
    pub terms: u32,
    pub partial: GoldenNumber,
    pub rhs: GoldenNumber,
    pub residual: GoldenNumber,
    pub float_echo: String,
}

fn echo_digits(bits: u32) -> usize {
    // a shade under the decimal capacity of the binary precision
    ((bits as f64) * 0.30103) as usize - 2
}

/// Sum the first `terms` terms exactly and attach the closed-form residual.
pub fn partial_sum(formula: Formula, n: i64, terms: u32) -> Result<SeriesReport, SeriesError> {
    partial_sum_with_echo_bits(formula, n, terms, DEFAULT_ECHO_BITS)
}

pub fn partial_sum_with_echo_bits(
    formula: Formula,
    n: i64,
    terms: u32,
    echo_bits: u32,
) -> Result<SeriesReport, SeriesError> {
    if terms == 0 {
        return Err(SeriesError::ZeroTerms);
    }
    let partial: GoldenNumber = (1..=terms).map(|k| formula.term(n, k)).sum();
    let rhs = formula.rhs(n);
    let residual = formula.residual(n, terms);
    debug_assert_eq!(&partial + &residual, rhs.clone());
    let float_echo = partial.to_decimal_string(echo_digits(echo_bits));
    Ok(SeriesReport {
        formula,
        n,
        terms,
        partial,
        rhs,
        residual,
        float_echo,
    })
}

/// The classic instance `1φ⁻² + 2φ⁻³ + 3φ⁻⁴ + ⋯ = φ²` (the
/// arithmetic-weighted series at n = -1).
pub fn sequent_instance(terms: u32) -> Result<SeriesReport, SeriesError> {
    partial_sum(Formula::ArithWeighted, -1, terms)
}

/// Build the divider with `segments` descending segments and confirm its
/// measured lengths reproduce the series partials exactly: the horizontal
/// descending segments sum to an odd-powers partial, all descending
/// segments to an all-powers partial.
pub fn divider_sums_check(
    n: i64,
    segments: u32,
) -> Result<(SeriesReport, SeriesReport), SeriesError> {
    if segments == 0 {
        return Err(SeriesError::ZeroTerms);
    }
    let path = divider(n, segments, 1);
    let descending = path.descending_segments();
    let horizontal_sum: GoldenNumber = descending
        .iter()
        .filter(|s| s.direction == Direction::Horizontal)
        .map(|s| s.length.clone())
        .sum();
    let total_sum: GoldenNumber = descending.iter().map(|s| s.length.clone()).sum();

    let odd = partial_sum(Formula::OddPowers, n, segments.div_ceil(2))?;
    let all = partial_sum(Formula::AllPowers, n, segments)?;
    if horizontal_sum != odd.partial || total_sum != all.partial {
        return Err(SeriesError::DividerMismatch);
    }
    Ok((odd, all))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Congruence,
    Perpendicularity,
    Angle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFact {
    pub description: String,
    pub pass: bool,
}

/// A machine-checked record of an exact geometric fact, with a float echo
/// for human consumption.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub facts: Vec<CertificateFact>,
    pub float_echo: String,
}

impl Certificate {
    pub fn all_pass(&self) -> bool {
        self.facts.iter().all(|f| f.pass)
    }
}

/// Certificate that the rays of slope φ³ and φ⁻¹ enclose a 45° angle,
/// i.e. `π/4 = arctan(φ³) − arctan(φ⁻¹)`.
///
/// The geometric facts are exact ring identities on the points
/// `O = (0,0)`, `Q = (φ^(n+6), 0)`, `R = (φ^(n+6), φ^(n+5))` and
/// `T = R + (−φ^(n+5), φ^(n+6))`: the two triangle legs swap under the
/// quarter turn, so `|OR| = |RT|` and `OR ⟂ RT`. The float fact evaluates
/// both arctangents independently at `echo_bits` precision.
pub fn pi_quarter_certificate(n: i64) -> Certificate {
    pi_quarter_certificate_with_echo_bits(n, DEFAULT_ECHO_BITS)
}

pub fn pi_quarter_certificate_with_echo_bits(n: i64, echo_bits: u32) -> Certificate {
    let r = (phi_pow(n + 6), phi_pow(n + 5));
    let t = (&r.0 - phi_pow(n + 5), &r.1 + phi_pow(n + 6));

    let on_low_ray = r.1 == phi_pow(-1) * &r.0;
    let on_cubic_ray = t.1 == phi_pow(3) * &t.0;

    let or_sq = &r.0 * &r.0 + &r.1 * &r.1;
    let rt = (&t.0 - &r.0, &t.1 - &r.1);
    let rt_sq = &rt.0 * &rt.0 + &rt.1 * &rt.1;
    let expected_sq = phi_pow(2 * n + 12) + phi_pow(2 * n + 10);
    let sides_match = or_sq == rt_sq && or_sq == expected_sq;

    let slope_or = r.1.checked_div(&r.0);
    let slope_rt = rt.1.checked_div(&rt.0);
    let slopes_perpendicular = match (slope_or, slope_rt) {
        (Some(a), Some(b)) => a * b == -GoldenNumber::one(),
        _ => false,
    };

    // independent numeric evaluation of the two arctangents
    let frac_bits = echo_bits + 64;
    let gap = fixed_arctan_gap(frac_bits);
    let quarter_pi = fixed_pi(frac_bits) >> 2;
    let err = {
        let diff: num_bigint::BigInt = &gap - &quarter_pi;
        num_traits::Signed::abs(&diff)
    };
    // 10^-12 in fixed point
    let tol = (num_bigint::BigInt::from(1) << frac_bits as u64)
        / num_bigint::BigInt::from(10u64.pow(12));
    let within_tolerance = err < tol;

    let facts = vec![
        CertificateFact {
            description: "R lies on the ray y = phi^-1 x".into(),
            pass: on_low_ray,
        },
        CertificateFact {
            description: "T lies on the ray y = phi^3 x".into(),
            pass: on_cubic_ray,
        },
        CertificateFact {
            description: "|OR|^2 = |RT|^2 = phi^(2n+12) + phi^(2n+10) (side-angle-side)".into(),
            pass: sides_match,
        },
        CertificateFact {
            description: "slope(OR) * slope(RT) = -1".into(),
            pass: slopes_perpendicular,
        },
        CertificateFact {
            description: "|arctan(phi^3) - arctan(phi^-1) - pi/4| < 1e-12".into(),
            pass: within_tolerance,
        },
    ];
    Certificate {
        kind: CertificateKind::Angle,
        facts,
        float_echo: fixed_to_decimal(&gap, frac_bits, echo_digits(echo_bits)),
    }
}
