//! Exact rational scalars.
//!
//! Every coefficient in this crate is an arbitrary-precision rational. The
//! algebras studied here are usually stated over the complex numbers, but all
//! of their structure constants are rational, so every linear system that
//! arises has rational coefficients. Kernel and image dimensions of a rational
//! matrix are the same over `Q` and over `C`, hence working over `Q` loses
//! nothing and keeps every dimension an exact integer.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a rational number: {0:?}")]
pub struct ParseScalarError(pub String);

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `p` or `p/q` with optional sign. Whitespace around the number is
/// not accepted; callers trim.
pub fn parse(s: &str) -> Result<Scalar, ParseScalarError> {
    let err = || ParseScalarError(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let valid_int = |t: &str| {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num) {
        return Err(err());
    }
    let n = BigInt::from_str(num).map_err(|_| err())?;
    let d = match den {
        Some(d) => {
            if !d.bytes().all(|b| b.is_ascii_digit()) || d.is_empty() {
                return Err(err());
            }
            BigInt::from_str(d).map_err(|_| err())?
        }
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(err());
    }
    Ok(Scalar::new(n, d))
}

/// Renders as `p` for integers and `p/q` otherwise.
pub fn render(s: &Scalar) -> String {
    s.to_string()
}

/// Bit length of `|numerator| * denominator`; the pivot-selection weight.
pub fn bit_size(s: &Scalar) -> u64 {
    (s.numer().abs() * s.denom()).bits()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3").unwrap(), int(3));
        assert_eq!(parse("-1/2").unwrap(), ratio(-1, 2));
        assert_eq!(parse("+4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse("0/5").unwrap(), zero());
        for bad in ["", "1/0", "1.5", "a", "1/-2", "1/2/3", " 1", "-"] {
            assert!(parse(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn canonical_form() {
        let s = ratio(6, -4);
        assert_eq!(s.numer(), &BigInt::from(-3));
        assert_eq!(s.denom(), &BigInt::from(2));
        assert_eq!(render(&ratio(0, 7)), "0");
        assert_eq!(render(&ratio(-1, 12)), "-1/12");
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(p in -10_000i64..10_000, q in 1i64..500) {
            let s = ratio(p, q);
            prop_assert_eq!(parse(&render(&s)).unwrap(), s);
        }

        #[test]
        fn add_sub_exact(a in -500i64..500, b in 1i64..60, c in -500i64..500, d in 1i64..60) {
            let x = ratio(a, b);
            let y = ratio(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x);
        }
    }
}
