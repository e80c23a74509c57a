//! Exact rational arithmetic helpers.
//!
//! All spectral quantities and criterion thresholds in this crate are exact
//! [`Rational`] values; floating point only ever appears in test oracles.
//! Rationals cross I/O boundaries as `"p/q"` strings with the denominator
//! always present (`"5/1"`, `"-3/2"`).

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;

pub type Rational = num_rational::BigRational;

pub fn rational_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Formats a rational as `p/q` in lowest terms, denominator always written.
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let text = text.trim();
    let bad = |_| Error::Parse(format!("invalid rational {text:?}"));
    match text.split_once('/') {
        Some((num, den)) => {
            let numer: BigInt = num.trim().parse().map_err(bad)?;
            let denom: BigInt = den.trim().parse().map_err(bad)?;
            if denom == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(numer, denom))
        }
        None => {
            let numer: BigInt = text.parse().map_err(bad)?;
            Ok(Rational::from_integer(numer))
        }
    }
}

/// Parses a comma-separated triple such as `2,3,2` or `1/2,0,-3/4`.
pub fn parse_rational_triple(text: &str) -> Result<[Rational; 3], Error> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "expected three comma-separated rationals, got {text:?}"
        )));
    }
    Ok([
        parse_rational(parts[0])?,
        parse_rational(parts[1])?,
        parse_rational(parts[2])?,
    ])
}

pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_with_explicit_denominator() {
        assert_eq!(format_rational(&rational_int(5)), "5/1");
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(format_rational(&half), "1/2");
        let neg = Rational::new(BigInt::from(3), BigInt::from(-6));
        assert_eq!(format_rational(&neg), "-1/2");
    }

    #[test]
    fn parse_round_trip() {
        for text in ["5/1", "-3/2", "0/1", "17/4"] {
            let r = parse_rational(text).unwrap();
            assert_eq!(format_rational(&r), text);
        }
        assert_eq!(parse_rational("7").unwrap(), rational_int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn triple() {
        let [a, b, c] = parse_rational_triple("2,3,2").unwrap();
        assert_eq!(a, rational_int(2));
        assert_eq!(b, rational_int(3));
        assert_eq!(c, rational_int(2));
        assert!(parse_rational_triple("1,2").is_err());
    }
}
