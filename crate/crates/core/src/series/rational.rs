//! The coefficient field: arbitrary-precision rationals.
//!
//! `num_rational::BigRational` already maintains the two invariants we rely
//! on everywhere (lowest terms, positive denominator), so the field is a
//! type alias plus the construction and formatting helpers used by the rest
//! of the crate.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact fraction of arbitrary-precision integers, stored in lowest terms
/// with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical lowest-terms string: `"p/q"`, or just `"p"` when the value is
/// an integer. This is the interchange format used in JSON output.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `"p"` or `"p/q"`, normalizing to lowest terms.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer
        .parse()
        .map_err(|_| format!("invalid numerator in {text:?}"))?;
    let denom: BigInt = denom
        .parse()
        .map_err(|_| format!("invalid denominator in {text:?}"))?;
    if denom.is_zero() {
        return Err(format!("zero denominator in {text:?}"));
    }
    Ok(Rational::new(numer, denom))
}

/// Evaluates the rational as `f64`. Used only at the floating boundary
/// (simulation references); exact paths never call it.
pub fn rational_to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn lowest_terms_and_sign() {
        let r = ratio(4, -6);
        assert_eq!(format_rational(&r), "-2/3");
        assert!(r.denom().is_positive());
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "7", "-1/2", "22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn float_evaluation() {
        assert_eq!(rational_to_f64(&ratio(1, 2)), 0.5);
        assert_eq!(rational_to_f64(&rat(-3)), -3.0);
    }
}
