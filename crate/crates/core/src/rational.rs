//! Exact rational scalars.
//!
//! All coefficients in the crate are arbitrary-precision rationals kept in
//! canonical form (reduced, positive denominator) by `num-rational`. The
//! helpers here cover the little construction/formatting vocabulary the rest
//! of the crate needs; arithmetic is the plain `BigRational` operator set.

use alloc::string::String;
use alloc::string::ToString;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Canonical exact rational: reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

/// `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` as a rational. Panics on `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats as `p` or `p/q`, matching the wire format used in reports.
pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// Parses `p` or `p/q`. Returns `None` on malformed input or zero denominator.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().ok()?;
            let q = q.trim().parse::<BigInt>().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
    }
}

/// True if `r` is a (possibly negative) integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Extracts an `i64` if `r` is an integer that fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    r.numer().to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = frac(6, -8);
        assert_eq!(r, frac(-3, 4));
        assert!(r.denom() > &BigInt::from(0));
        assert_eq!(format(&r), "-3/4");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-17", "3/4", "-1/48", "22/7"] {
            let r = parse(s).unwrap();
            assert_eq!(format(&r), s);
        }
        assert!(parse("1/0").is_none());
        assert!(parse("x").is_none());
    }

    #[test]
    fn i64_extraction() {
        assert_eq!(to_i64(&int(-5)), Some(-5));
        assert_eq!(to_i64(&frac(1, 2)), None);
        assert_eq!(to_i64(&int(i64::MAX)), Some(i64::MAX));
    }
}
