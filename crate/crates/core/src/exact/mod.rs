//! Exact rational scalars and dense rational matrices.
//!
//! Scalars are [`num_rational::BigRational`], which keeps every value in
//! lowest terms with a positive denominator. Matrix determinant, rank and
//! inverse go through fraction-free (Bareiss) elimination over the integers
//! after clearing row denominators.

mod matrix;

pub use matrix::{random_invertible, random_invertible_with, RatMatrix, DEFAULT_BOUND};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Integer power with a signed exponent. Panics on `0^negative`.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let x = rat_frac(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        let z = rat_frac(0, 7);
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_rational("-3/6"), Some(rat_frac(-1, 2)));
        assert_eq!(parse_rational("5"), Some(rat(5)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(rat_frac(-1, 2).to_string(), "-1/2");
    }

    #[test]
    fn signed_powers() {
        assert_eq!(pow(&rat(2), -3), rat_frac(1, 8));
        assert_eq!(pow(&rat(-3), 3), rat(-27));
        assert_eq!(pow(&rat(5), 0), rat(1));
    }
}
