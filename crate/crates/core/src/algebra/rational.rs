use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Exact p-adic valuation: a rational number, or `+∞` for zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(Rational),
    Infinite,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// The valuation as an integer, when it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Valuation::Finite(v) if v.is_integer() => Some(v.to_integer()),
            _ => None,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        })
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => f.write_str(&format_rational(v)),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Multiplicity of `p` in a nonzero integer; `None` for zero.
pub fn ord_p_int(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut k = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        x = q;
        k += 1;
    }
}

pub fn ord_p_rational(x: &Rational, p: u64) -> Valuation {
    match ord_p_int(x.numer(), p) {
        None => Valuation::Infinite,
        Some(n) => {
            let d = ord_p_int(x.denom(), p).expect("denominator is nonzero");
            Valuation::Finite(rat_int(n as i64 - d as i64))
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, k)` with `n = p^k`, when `n > 1` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Euler's totient of `p^j`.
pub fn phi_prime_power(p: u64, j: u32) -> u64 {
    if j == 0 {
        1
    } else {
        (p - 1) * p.pow(j - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations_of_rationals() {
        assert_eq!(ord_p_rational(&rat(8, 3), 2), Valuation::Finite(rat_int(3)));
        assert_eq!(ord_p_rational(&rat(3, 8), 2), Valuation::Finite(rat_int(-3)));
        assert_eq!(ord_p_rational(&rat(0, 1), 5), Valuation::Infinite);
        assert_eq!(ord_p_int(&BigInt::from(-18), 3), Some(2));
    }

    #[test]
    fn rationals_are_canonical() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(parse_rational("-3/2"), Some(q));
        assert_eq!(parse_rational("7"), Some(rat_int(7)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn prime_helpers() {
        assert!(is_prime(2) && is_prime(3) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(91));
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(phi_prime_power(3, 2), 6);
        assert_eq!(phi_prime_power(7, 0), 1);
    }
}
