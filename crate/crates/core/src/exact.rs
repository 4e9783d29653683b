//! Exact rational helpers shared by the rubric, the corpus format and queries.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};

pub type Rational = Ratio<i64>;

/// Parses `"9/2"`, `"4.5"`, `"4"` or `"-0.25"` into an exact rational.
pub fn parse_rational(raw: &str) -> Option<Rational> {
    let s = raw.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().ok()?;
        let den: i64 = den.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Ratio::new(num, den));
    }
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) || frac_part.len() > 15 {
        return None;
    }
    let int: i64 = if int_part.is_empty() { 0 } else { int_part.parse().ok()? };
    let scale = 10i64.checked_pow(frac_part.len() as u32)?;
    let frac: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().ok()? };
    let value = Ratio::new(int.checked_mul(scale)?.checked_add(frac)?, scale);
    Some(if negative { -value } else { value })
}

/// Formats a nonnegative rational rounded half-up to two decimals.
pub fn two_decimals(value: Rational) -> String {
    debug_assert!(!value.is_negative());
    let numer = i128::from(*value.numer());
    let denom = i128::from(*value.denom());
    let hundredths = (200 * numer + denom) / (2 * denom);
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

/// Canonical textual form: `"9/2"`, or `"5"` when the value is integral.
pub fn format_rational(value: Rational) -> String {
    if value.is_zero() {
        "0".to_string()
    } else {
        value.to_string()
    }
}

pub(crate) fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(*value))
}

pub(crate) fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    d.deserialize_any(RationalVisitor)
}

pub(crate) mod option {
    use super::*;

    pub(crate) fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => super::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub(crate) fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        struct OptVisitor;
        impl<'de> Visitor<'de> for OptVisitor {
            type Value = Option<Rational>;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a rational number or null")
            }
            fn visit_none<E: de::Error>(self) -> Result<Self::Value, E> {
                Ok(None)
            }
            fn visit_unit<E: de::Error>(self) -> Result<Self::Value, E> {
                Ok(None)
            }
            fn visit_some<D2: Deserializer<'de>>(self, d: D2) -> Result<Self::Value, D2::Error> {
                super::deserialize(d).map(Some)
            }
        }
        d.deserialize_option(OptVisitor)
    }
}

/// Accepts JSON strings (`"9/2"`, `"4.5"`) and JSON numbers.
pub(crate) struct RationalVisitor;

impl<'de> Visitor<'de> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        f.write_str("a rational such as \"9/2\" or a decimal such as 4.5")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        parse_rational(v).ok_or_else(|| E::custom(format!("invalid rational {v:?}")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Ratio::from_integer(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        i64::try_from(v).map(Ratio::from_integer).map_err(|_| E::custom("integer out of range"))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rational, E> {
        // Shortest round-trip representation, so 4.5 parses as exactly 9/2.
        let text = format!("{v}");
        parse_rational(&text).ok_or_else(|| E::custom(format!("invalid number {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("9/2"), Some(Ratio::new(9, 2)));
        assert_eq!(parse_rational("4.5"), Some(Ratio::new(9, 2)));
        assert_eq!(parse_rational("5"), Some(Ratio::from_integer(5)));
        assert_eq!(parse_rational("-0.25"), Some(Ratio::new(-1, 4)));
        assert_eq!(parse_rational(".5"), Some(Ratio::new(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn two_decimal_rounding_is_half_up() {
        assert_eq!(two_decimals(Ratio::new(53, 12)), "4.42");
        assert_eq!(two_decimals(Ratio::new(23, 12)), "1.92");
        assert_eq!(two_decimals(Ratio::new(45, 12)), "3.75");
        assert_eq!(two_decimals(Ratio::new(29, 6)), "4.83");
        assert_eq!(two_decimals(Ratio::new(1, 200)), "0.01");
        assert_eq!(two_decimals(Ratio::new(1, 201)), "0.00");
        assert_eq!(two_decimals(Ratio::from_integer(5)), "5.00");
        assert_eq!(two_decimals(Ratio::from_integer(0)), "0.00");
    }

    #[test]
    fn canonical_form() {
        assert_eq!(format_rational(Ratio::new(9, 2)), "9/2");
        assert_eq!(format_rational(Ratio::new(10, 2)), "5");
        assert_eq!(format_rational(Ratio::from_integer(0)), "0");
    }
}
