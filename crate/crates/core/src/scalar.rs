//! Weight arithmetic behind a single trait so the whole toolkit can run on
//! exact rationals, fixed-scale integers, or ordered floats.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use ordered_float::OrderedFloat;
use thiserror::Error;

/// Failure to parse a decimal weight string.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightParseError {
    #[error("empty weight string")]
    Empty,
    #[error("invalid weight literal {text:?}")]
    Invalid { text: String },
    #[error("weight {text:?} is not representable in this scalar type")]
    NotRepresentable { text: String },
}

/// Interface every weight type provides.
///
/// Curve lengths are sums of weights and the searches order them, so `Ord` is
/// part of the contract; raw `f32`/`f64` do not qualify and are exposed
/// through `OrderedFloat` wrappers instead.
pub trait Scalar:
    Clone
    + Ord
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + 'static
{
    /// Halve the value. Exact for rationals and floats; integer scalars
    /// floor, which callers must treat as a lower bound.
    fn half(&self) -> Self;

    /// Parse a decimal literal such as `"3"`, `"0.25"` or `"10.5"`.
    fn parse_decimal(text: &str) -> Result<Self, WeightParseError>;

    /// Render as decimal. Exact whenever the reduced denominator divides a
    /// power of ten; rationals fall back to a `p/q` form otherwise.
    fn format_decimal(&self) -> String;

    /// Lossy view used only for rendering coordinates and ratio logging.
    fn to_f64_lossy(&self) -> f64;

    /// Small integer multiple, used by weight-scaling tests and reports.
    fn times(&self, n: u32) -> Self {
        let mut acc = Self::zero();
        for _ in 0..n {
            acc = acc + self.clone();
        }
        acc
    }

    fn is_negative(&self) -> bool {
        self < &Self::zero()
    }
}

impl Scalar for BigRational {
    fn half(&self) -> Self {
        BigRational::new(self.numer().clone(), self.denom() * BigInt::from(2))
    }

    fn parse_decimal(text: &str) -> Result<Self, WeightParseError> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(WeightParseError::Empty);
        }
        let (negative, body) = match trimmed.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, trimmed.strip_prefix('+').unwrap_or(trimmed)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        let all_digits =
            |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        let digits = match (all_digits(int_part), all_digits(frac_part)) {
            (true, true) => format!("{int_part}{frac_part}"),
            (true, false) if frac_part.is_empty() => int_part.to_string(),
            (false, true) if int_part.is_empty() => frac_part.to_string(),
            _ => {
                return Err(WeightParseError::Invalid {
                    text: text.to_string(),
                })
            }
        };
        let mut numer = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or(
            WeightParseError::Invalid {
                text: text.to_string(),
            },
        )?;
        if negative {
            numer = -numer;
        }
        let denom = BigInt::from(10).pow(frac_part.len() as u32);
        Ok(BigRational::new(numer, denom))
    }

    fn format_decimal(&self) -> String {
        let mut rest = self.denom().clone();
        let (two, five) = (BigInt::from(2), BigInt::from(5));
        let (mut twos, mut fives) = (0u32, 0u32);
        while (&rest % &two).is_zero() {
            rest /= &two;
            twos += 1;
        }
        while (&rest % &five).is_zero() {
            rest /= &five;
            fives += 1;
        }
        if !rest.is_one() {
            return format!("{}/{}", self.numer(), self.denom());
        }
        let places = twos.max(fives);
        let scale = two.pow(places - twos) * five.pow(places - fives);
        let scaled = self.numer() * scale;
        if places == 0 {
            return scaled.to_string();
        }
        let digits = format!(
            "{:0>width$}",
            scaled.abs().to_string(),
            width = places as usize + 1
        );
        let (int_part, frac_part) = digits.split_at(digits.len() - places as usize);
        let frac_part = frac_part.trim_end_matches('0');
        let body = if frac_part.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        };
        if scaled.is_negative() {
            format!("-{body}")
        } else {
            body
        }
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn times(&self, n: u32) -> Self {
        self * BigRational::from_integer(BigInt::from(n))
    }
}

impl Scalar for i64 {
    fn half(&self) -> Self {
        // Truncating division: exact only for even values.
        self / 2
    }

    fn parse_decimal(text: &str) -> Result<Self, WeightParseError> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(WeightParseError::Empty);
        }
        if trimmed.contains('.') {
            return Err(WeightParseError::NotRepresentable {
                text: text.to_string(),
            });
        }
        trimmed.parse::<i64>().map_err(|_| WeightParseError::Invalid {
            text: text.to_string(),
        })
    }

    fn format_decimal(&self) -> String {
        self.to_string()
    }

    fn to_f64_lossy(&self) -> f64 {
        *self as f64
    }

    fn times(&self, n: u32) -> Self {
        self * n as i64
    }
}

macro_rules! ordered_float_scalar {
    ($inner:ty) => {
        impl Scalar for OrderedFloat<$inner> {
            fn half(&self) -> Self {
                OrderedFloat(self.0 * 0.5)
            }

            fn parse_decimal(text: &str) -> Result<Self, WeightParseError> {
                let trimmed = text.trim();
                if trimmed.is_empty() {
                    return Err(WeightParseError::Empty);
                }
                let value = <$inner>::from_str(trimmed).map_err(|_| {
                    WeightParseError::Invalid {
                        text: text.to_string(),
                    }
                })?;
                if !value.is_finite() {
                    return Err(WeightParseError::NotRepresentable {
                        text: text.to_string(),
                    });
                }
                Ok(OrderedFloat(value))
            }

            fn format_decimal(&self) -> String {
                self.0.to_string()
            }

            fn to_f64_lossy(&self) -> f64 {
                self.0 as f64
            }

            fn times(&self, n: u32) -> Self {
                OrderedFloat(self.0 * n as $inner)
            }
        }
    };
}

ordered_float_scalar!(f64);
ordered_float_scalar!(f32);

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(text: &str) -> BigRational {
        BigRational::parse_decimal(text).unwrap()
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(rat("3"), BigRational::from_integer(3.into()));
        assert_eq!(rat("0.25"), BigRational::new(1.into(), 4.into()));
        assert_eq!(rat("10.5"), BigRational::new(21.into(), 2.into()));
        assert_eq!(rat("-2.5"), BigRational::new((-5).into(), 2.into()));
        assert_eq!(rat(".5"), BigRational::new(1.into(), 2.into()));
        assert_eq!(rat("5."), BigRational::from_integer(5.into()));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", " ", "a", "1.2.3", "1e3", "--1", "1/2"] {
            assert!(BigRational::parse_decimal(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn formats_round_trip() {
        for text in ["0", "3", "0.25", "10.5", "-2.5", "0.125", "1000"] {
            assert_eq!(rat(text).format_decimal(), text.trim_start_matches('+'));
        }
        // Fraction fallback for non-decimal denominators.
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(third.format_decimal(), "1/3");
    }

    #[test]
    fn halving_and_scaling() {
        assert_eq!(rat("5").half(), rat("2.5"));
        assert_eq!(rat("2.5").times(3), rat("7.5"));
        assert_eq!(5i64.half(), 2);
        assert_eq!(4i64.times(3), 12);
        assert_eq!(OrderedFloat(5.0f64).half(), OrderedFloat(2.5));
    }

    #[test]
    fn integer_scalar_rejects_fractions() {
        assert!(matches!(
            i64::parse_decimal("1.5"),
            Err(WeightParseError::NotRepresentable { .. })
        ));
        assert_eq!(i64::parse_decimal("17").unwrap(), 17);
    }
}
