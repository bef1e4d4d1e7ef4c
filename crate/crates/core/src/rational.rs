//! Exact rational scalars and their text form.
//!
//! Rationals are written `p/q` (or a bare integer) everywhere the crate talks
//! to the outside world: config files, CSV cells, JSON-lines records.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The scalar type of the whole crate.
pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(p: i64, q: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Renders `x` as `p/q`, or just `p` when the denominator is 1.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q` or a bare integer. Whitespace around the tokens is accepted.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().ok()?;
        let den: BigInt = q.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Q::new(num, den))
    } else {
        let num: BigInt = s.parse().ok()?;
        Some(Q::from_integer(num))
    }
}

/// Falling-factorial binomial `binom(x, k) = x(x-1)...(x-k+1) / k!` for
/// rational `x`. This is the coefficient family of the conjugation expansion.
pub fn binom_q(x: &Q, k: u32) -> Q {
    let mut num = Q::one();
    for i in 0..k {
        num *= x - q_int(i as i64);
    }
    let mut fact = Q::one();
    for i in 1..=k {
        fact *= q_int(i as i64);
    }
    num / fact
}

/// Truncates a rational towards an integer floor, used for enumeration bounds.
pub fn floor_q(x: &Q) -> BigInt {
    x.floor().to_integer()
}

pub fn q_sign(x: &Q) -> i64 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
