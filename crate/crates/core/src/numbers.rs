//! Arbitrary-precision integers and rationals.
//!
//! Both types come from `num-bigint`/`num-rational`; `BigRational` keeps itself
//! reduced with a positive denominator, so structural equality is value
//! equality. This module adds the checked constructors and the string forms
//! used by reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Builds `numer/denom` in lowest terms with a positive denominator.
pub fn rat_make(numer: Integer, denom: Integer) -> Result<Rational> {
    if denom.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(numer, denom))
}

/// Exact integer power; negative exponents invert first.
pub fn rat_pow(a: &Rational, e: i64) -> Result<Rational> {
    if e < 0 && a.is_zero() {
        return Err(Error::ZeroToNegativePower);
    }
    let base = if e < 0 { a.recip() } else { a.clone() };
    let mut exp = e.unsigned_abs();
    let mut acc = Rational::one();
    let mut sq = base;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = &sq * &sq;
        }
    }
    Ok(acc)
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    rat_make(Integer::from(p), Integer::from(q)).expect("nonzero denominator")
}

/// Parses a decimal integer. Accepts a leading `+`, `-` or U+2212 minus.
pub fn parse_integer(s: &str) -> Result<Integer> {
    let t = s.trim().replace('\u{2212}', "-");
    let t = t.strip_prefix('+').unwrap_or(&t);
    t.parse::<Integer>()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    match s.split_once('/') {
        Some((p, q)) => rat_make(parse_integer(p)?, parse_integer(q)?),
        None => Ok(Rational::from_integer(parse_integer(s)?)),
    }
}

/// `p/q`, or just `p` for integers.
pub fn render_rational(r: &Rational) -> String {
    r.to_string()
}

pub(crate) fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..30).prop_map(|(p, q)| ratio(p, q))
    }

    #[test]
    fn make_reduces_and_normalizes_sign() {
        assert_eq!(rat_make(2.into(), 4.into()).unwrap(), ratio(1, 2));
        let r = rat_make(3.into(), (-6).into()).unwrap();
        assert_eq!(r.numer(), &Integer::from(-1));
        assert_eq!(r.denom(), &Integer::from(2));
        let z = rat_make(0.into(), 7.into()).unwrap();
        assert_eq!(z.numer(), &Integer::from(0));
        assert_eq!(z.denom(), &Integer::from(1));
    }

    #[test]
    fn make_rejects_zero_denominator() {
        assert_eq!(rat_make(1.into(), 0.into()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn pow_cases() {
        assert_eq!(rat_pow(&rat(3), 1).unwrap(), rat(3));
        assert_eq!(rat_pow(&rat(2), -1).unwrap(), ratio(1, 2));
        assert_eq!(rat_pow(&ratio(-2, 3), 3).unwrap(), ratio(-8, 27));
        assert_eq!(rat_pow(&rat(0), 0).unwrap(), rat(1));
        assert_eq!(rat_pow(&rat(0), -2), Err(Error::ZeroToNegativePower));
        // n^(n-2) at n = 3
        assert_eq!(rat_pow(&rat(3), 3 - 2).unwrap(), rat(3));
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rational("-1/3").unwrap(), ratio(-1, 3));
        assert_eq!(parse_rational("\u{2212}1/3").unwrap(), ratio(-1, 3));
        assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 12 ").unwrap(), rat(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(render_rational(&ratio(-1, 3)), "-1/3");
        assert_eq!(render_rational(&rat(125)), "125");
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !a.is_zero() {
                prop_assert_eq!(&a * a.recip(), rat(1));
            }
        }

        #[test]
        fn scaling_numer_and_denom_is_invisible(p in -100i64..100, q in 1i64..100, k in -20i64..20) {
            prop_assume!(k != 0);
            let lhs = rat_make(Integer::from(p * k), Integer::from(q * k)).unwrap();
            prop_assert_eq!(lhs, rat_make(Integer::from(p), Integer::from(q)).unwrap());
        }

        #[test]
        fn normalization_is_idempotent(p in -100i64..100, q in -100i64..100) {
            prop_assume!(q != 0);
            let once = rat_make(Integer::from(p), Integer::from(q)).unwrap();
            let twice = rat_make(once.numer().clone(), once.denom().clone()).unwrap();
            prop_assert_eq!(once.numer(), twice.numer());
            prop_assert_eq!(once.denom(), twice.denom());
        }

        #[test]
        fn render_parse_roundtrip(a in small_rat()) {
            prop_assert_eq!(parse_rational(&render_rational(&a)).unwrap(), a);
        }
    }
}
