//! Fibonacci numbers extended to negative indices.
//!
//! `F(1) = F(2) = 1`, `F(n+2) = F(n+1) + F(n)` for every integer `n`,
//! which forces `F(-n) = (-1)^(n+1) F(n)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `F(n)` for any integer index, computed by fast doubling.
pub fn fibonacci(n: i64) -> BigInt {
    if n >= 0 {
        fib_pair(n as u64).0
    } else {
        let m = (-n) as u64;
        let f = fib_pair(m).0;
        // F(-n) = (-1)^(n+1) F(n)
        if m % 2 == 0 {
            -f
        } else {
            f
        }
    }
}

/// `(F(n), F(n+1))` for `n >= 0`.
///
/// F(2k)   = F(k) * (2 F(k+1) - F(k))
/// F(2k+1) = F(k)^2 + F(k+1)^2
fn fib_pair(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (a, b) = fib_pair(n / 2);
    let c = &a * ((&b << 1) - &a);
    let d = &a * &a + &b * &b;
    if n % 2 == 0 {
        (c, d)
    } else {
        let e = c + &d;
        (d, e)
    }
}
