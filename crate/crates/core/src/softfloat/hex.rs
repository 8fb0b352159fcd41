//! C99 hexadecimal float literals plus the tokens `-inf`, `+inf`, `-0`,
//! `+0` and `nan`. Decimal literals are accepted on input.

use num_bigint::{BigInt, BigUint};
use num_traits::{Num, One, Zero};
use thiserror::Error;

use super::exact::ExactReal;
use super::format::FloatFormat;
use super::round::round;
use super::value::{FloatVal, Kind};
use super::RoundingMode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed float literal `{0}`")]
pub struct LiteralError(pub String);

/// A parsed literal, before it is rounded into a format.
#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    NaN,
    /// Zero with its sign.
    Zero { neg: bool },
    Value(ExactReal),
}

pub fn to_hex(x: &FloatVal) -> String {
    let fmt = x.format();
    match x.kind() {
        Kind::NegInf => "-inf".into(),
        Kind::PosInf => "+inf".into(),
        Kind::QNaN | Kind::SNaN => "nan".into(),
        Kind::Finite { neg, mant: 0, .. } => if neg { "-0x0" } else { "0x0" }.into(),
        Kind::Finite { neg, exp, mant } => {
            let p = fmt.p();
            let lz = (p - 1) - (63 - mant.leading_zeros());
            let m = mant << lz;
            let e = exp - lz as i32;
            let fbits = p - 1;
            let width = fbits.div_ceil(4) * 4;
            let frac = (m - (1u64 << fbits)) << (width - fbits);
            let mut digits = if width == 0 {
                String::new()
            } else {
                format!("{:0w$x}", frac, w = (width / 4) as usize)
            };
            while digits.ends_with('0') {
                digits.pop();
            }
            let sign = if neg { "-" } else { "" };
            if digits.is_empty() {
                format!("{sign}0x1p{e}")
            } else {
                format!("{sign}0x1.{digits}p{e}")
            }
        }
    }
}

pub fn parse_literal(text: &str) -> Result<Literal, LiteralError> {
    let err = || LiteralError(text.to_string());
    let s = text.trim();
    let (neg, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let lower = body.to_ascii_lowercase();
    if lower == "inf" || lower == "infinity" {
        return Ok(Literal::Value(if neg { ExactReal::NegInf } else { ExactReal::PosInf }));
    }
    if lower == "nan" {
        return Ok(Literal::NaN);
    }
    let (mantissa, radix, exp) = if let Some(rest) = lower.strip_prefix("0x") {
        let (m, e) = match rest.split_once('p') {
            Some((m, e)) => (m, e.parse::<i64>().map_err(|_| err())?),
            None => (rest, 0),
        };
        (m.to_string(), 16u32, e)
    } else {
        let (m, e) = match lower.split_once('e') {
            Some((m, e)) => (m, e.parse::<i64>().map_err(|_| err())?),
            None => (lower.as_str(), 0),
        };
        (m.to_string(), 10u32, e)
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((&mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_digit(radix)) {
        return Err(err());
    }
    let n = BigUint::from_str_radix(&digits, radix).map_err(|_| err())?;
    if n.is_zero() {
        return Ok(Literal::Zero { neg });
    }
    if exp.abs() > 100_000 {
        return Err(err());
    }
    // value = n * radix^(-frac_len) * base^exp, base = 2 for hex, 10 for decimal
    let mut num = BigInt::from(n);
    let mut den = BigUint::one();
    let frac_len = frac_part.len() as u32;
    den *= BigUint::from(radix).pow(frac_len);
    if radix == 16 {
        if exp >= 0 {
            num <<= exp as usize;
        } else {
            den <<= (-exp) as usize;
        }
    } else if exp >= 0 {
        num *= BigInt::from(10u32).pow(exp as u32);
    } else {
        den *= BigUint::from(10u32).pow((-exp) as u32);
    }
    if neg {
        num = -num;
    }
    Ok(Literal::Value(ExactReal::Finite { num, den }))
}

/// Parses and rounds a literal into `fmt` with `mode`, reporting whether the
/// literal was exactly representable.
pub fn parse_float(fmt: FloatFormat, text: &str, mode: RoundingMode) -> Result<(FloatVal, bool), LiteralError> {
    Ok(match parse_literal(text)? {
        Literal::NaN => (fmt.qnan(), true),
        Literal::Zero { neg } => (if neg { fmt.neg_zero() } else { fmt.pos_zero() }, true),
        Literal::Value(v) => {
            let x = round(fmt, &v, mode);
            let exact = x.to_exact().map(|e| e == v).unwrap_or(false);
            (x, exact)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_binary32() {
        let f = FloatFormat::BINARY32;
        assert_eq!(to_hex(&FloatVal::from_f64(f, 13.0)), "0x1.ap3");
        assert_eq!(to_hex(&FloatVal::from_f64(f, 1.0)), "0x1p0");
        assert_eq!(to_hex(&f.pos_zero()), "0x0");
        assert_eq!(to_hex(&f.neg_zero()), "-0x0");
        assert_eq!(to_hex(&f.fmin()), "0x1p-149");
        assert_eq!(to_hex(&f.fmax().negate()), "-0x1.fffffep127");
        assert_eq!(to_hex(&f.neg_inf()), "-inf");
        assert_eq!(to_hex(&f.qnan()), "nan");
    }

    #[test]
    fn parses_tokens_and_decimals() {
        let f = FloatFormat::BINARY32;
        let p = |s: &str| parse_float(f, s, RoundingMode::Nearest).unwrap();
        assert_eq!(p("-0").0, f.neg_zero());
        assert_eq!(p("+0").0, f.pos_zero());
        assert_eq!(p("+inf").0, f.pos_inf());
        assert!(p("nan").0.is_nan());
        assert_eq!(p("0x1.ap3"), (FloatVal::from_f64(f, 13.0), true));
        assert_eq!(p("13"), (FloatVal::from_f64(f, 13.0), true));
        assert_eq!(p("0.1").0.to_f64(), 0.1f32 as f64);
        assert!(!p("0.1").1);
        assert_eq!(p("-1.5e2").0.to_f64(), -150.0);
        assert!(parse_literal("0x").is_err());
        assert!(parse_literal("1.2.3").is_err());
        assert!(parse_literal("abc").is_err());
    }

    #[test]
    fn directed_parsing() {
        let f = FloatFormat::BINARY32;
        let lo = parse_float(f, "0.1", RoundingMode::Down).unwrap().0;
        let hi = parse_float(f, "0.1", RoundingMode::Up).unwrap().0;
        assert_eq!(lo.succ().unwrap(), hi);
    }

    #[test]
    fn round_trips_binary64_bits() {
        let f = FloatFormat::BINARY64;
        for v in [1.0, -0.1, 5e-324, f64::MAX, 2.2250738585072014e-308, 123456.789] {
            let x = FloatVal::from_f64(f, v);
            let back = parse_float(f, &to_hex(&x), RoundingMode::Nearest).unwrap();
            assert_eq!(back, (x, true));
        }
    }
}
