//! Exact scalars.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator, so structural equality is value equality.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `2^-k` as an exact rational.
pub fn pow2_inv(k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

/// Parses `"num/den"` or an integer. Rejects zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    Rational::from_str(t).map_err(|_| Error::Parse {
        what: "rational",
        input: s.to_string(),
    })
}

/// True iff the denominator is a power of two.
pub fn is_dyadic(x: &Rational) -> bool {
    let d = x.denom();
    // d > 0 always; d & (d - 1) == 0
    (d & (d - BigInt::one())).is_zero()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Decimal rendering with `digits` significant digits, for output columns only.
pub fn format_sig(x: &Rational, digits: usize) -> String {
    let v = to_f64(x);
    if v == 0.0 {
        return "0".to_string();
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), v);
    // Normalise through f64 parsing so trailing zeros disappear.
    let back: f64 = s.parse().unwrap_or(v);
    format!("{back}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalises() {
        assert_eq!(parse_rational("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse_rational(" -3/6 ").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn prints_canonically() {
        assert_eq!(frac(-2, 4).to_string(), "-1/2");
        assert_eq!(frac(0, 5).to_string(), "0");
        assert_eq!(frac(6, 3).to_string(), "2");
    }

    #[test]
    fn dyadic_detection() {
        assert!(is_dyadic(&frac(3, 8)));
        assert!(is_dyadic(&int(0)));
        assert!(!is_dyadic(&frac(1, 3)));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_sig(&frac(1, 3), 12), "0.333333333333");
        assert_eq!(format_sig(&frac(1, 2), 12), "0.5");
        assert_eq!(format_sig(&int(0), 12), "0");
        let tiny = Rational::new(BigInt::one(), BigInt::one() << 200usize);
        assert!((to_f64(&tiny) - 2f64.powi(-200)).abs() < 1e-70);
    }
}
