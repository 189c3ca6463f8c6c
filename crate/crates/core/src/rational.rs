//! Exact rational scalars and their text form.
//!
//! Every comparison in this crate is exact. Decimal input such as `3.25` is
//! converted to the fraction `13/4`; there is no floating-point path.

use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Exact rational number used for all matrix entries, weights and indices.
pub type Rational = num_rational::Ratio<i128>;

/// Parses `3`, `-7/2`, `3.5`, `+0.125` or `.5` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty number".to_string());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_integer(num).ok_or_else(|| format!("malformed number `{s}`"))?;
        let d = parse_integer(den).ok_or_else(|| format!("malformed number `{s}`"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(Rational::new(n, d));
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits_ok = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if whole.is_empty() && frac.is_empty() || !digits_ok(whole) || !digits_ok(frac) {
        return Err(format!("malformed number `{s}`"));
    }
    let overflow = || format!("number `{s}` is out of range");
    let mut numer: i128 = 0;
    for b in whole.bytes().chain(frac.bytes()) {
        numer = numer
            .checked_mul(10)
            .and_then(|v| v.checked_add(i128::from(b - b'0')))
            .ok_or_else(overflow)?;
    }
    let exp = u32::try_from(frac.len()).map_err(|_| overflow())?;
    let denom = 10i128.checked_pow(exp).ok_or_else(overflow)?;
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_integer(s: &str) -> Option<i128> {
    let s = s.trim();
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text: reduced fraction `p/q`, or `p` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    let r = value.reduced();
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact half of a rational.
pub(crate) fn half(value: Rational) -> Rational {
    value / Rational::from_integer(2)
}

pub(crate) fn is_negative(value: &Rational) -> bool {
    value.is_negative()
}

/// Least common multiple of the denominators, handy for scaling to integers.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> i128 {
    values.into_iter().fold(1i128, |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn parses_integers_fractions_and_decimals() {
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("7/2").unwrap(), q(7, 2));
        assert_eq!(parse_rational("3.5").unwrap(), q(7, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), q(-1, 8));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("+2.").unwrap(), q(2, 1));
        assert_eq!(parse_rational("-6/4").unwrap(), q(-3, 2));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "abc", "1/0", "1.2.3", "--1", "1e3", ".", "1/", "/2", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad} should fail");
        }
    }

    #[test]
    fn canonical_format() {
        assert_eq!(format_rational(&q(6, 4)), "3/2");
        assert_eq!(format_rational(&q(-4, 2)), "-2");
        assert_eq!(format_rational(&q(0, 5)), "0");
    }

    #[test]
    fn lcm_of_denominators() {
        assert_eq!(common_denominator(&[q(1, 4), q(1, 6), q(3, 1)]), 12);
    }

    proptest::proptest! {
        #[test]
        fn format_parse_round_trip(n in -100_000i128..100_000, d in 1i128..10_000) {
            let v = q(n, d);
            proptest::prop_assert_eq!(parse_rational(&format_rational(&v)).unwrap(), v);
        }

        #[test]
        fn decimal_is_exact(whole in 0u32..10_000, frac in 0u32..1000) {
            let text = format!("{whole}.{frac:03}");
            let expect = q(i128::from(whole) * 1000 + i128::from(frac), 1000);
            proptest::prop_assert_eq!(parse_rational(&text).unwrap(), expect);
        }
    }
}
