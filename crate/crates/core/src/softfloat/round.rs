use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::exact::ExactReal;
use super::format::FloatFormat;
use super::value::FloatVal;
use super::RoundingMode;

/// Rounds an exact value into `fmt`.
///
/// Zero has no rounding (its sign is decided by the operation that produced
/// it), so passing zero is a contract violation.
pub fn round(fmt: FloatFormat, v: &ExactReal, r: RoundingMode) -> FloatVal {
    match v {
        ExactReal::PosInf => return fmt.pos_inf(),
        ExactReal::NegInf => return fmt.neg_inf(),
        _ => {}
    }
    assert!(!v.is_zero(), "round() is undefined on zero");
    let neg = v.signum() < 0;
    let (n, d) = v.magnitude_parts();

    // Away from zero or toward zero, once the sign is known.
    let away = match r {
        RoundingMode::Up => Some(!neg),
        RoundingMode::Down => Some(neg),
        RoundingMode::TowardZero => Some(false),
        RoundingMode::Nearest => None,
    };

    let e = floor_log2(&n, &d);
    if e > fmt.emax() as i64 {
        return match away {
            Some(false) => with_sign(fmt.fmax(), neg),
            _ => inf(fmt, neg),
        };
    }
    let ee = e.max(fmt.emin() as i64);
    let shift = fmt.p() as i64 - 1 - ee;
    let (num, den) = if shift >= 0 { (n << shift as usize, d) } else { (n, d << (-shift) as usize) };
    let (q, rem) = num.div_rem(&den);
    let mut q = q.to_u64().expect("significand fits in u64");
    let bump = if rem.is_zero() {
        false
    } else {
        match away {
            Some(a) => a,
            None => {
                let twice: BigUint = rem << 1usize;
                match twice.cmp(&den) {
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Equal => q & 1 == 1,
                }
            }
        }
    };
    let mut exp = ee as i32;
    if bump {
        q += 1;
        if q == fmt.hidden_bit() << 1 {
            q = fmt.hidden_bit();
            exp += 1;
            if exp > fmt.emax() {
                return inf(fmt, neg);
            }
        }
    }
    FloatVal::from_parts(fmt, neg, exp, q).expect("rounded value is canonical")
}

fn inf(fmt: FloatFormat, neg: bool) -> FloatVal {
    if neg {
        fmt.neg_inf()
    } else {
        fmt.pos_inf()
    }
}

fn with_sign(x: FloatVal, neg: bool) -> FloatVal {
    if neg {
        x.negate()
    } else {
        x
    }
}

/// `floor(log2(n / d))` for positive `n`, `d`.
fn floor_log2(n: &BigUint, d: &BigUint) -> i64 {
    let e = n.bits() as i64 - d.bits() as i64;
    let below = if e >= 0 { *n < (d << e as usize) } else { (n << (-e) as usize) < *d };
    if below {
        e - 1
    } else {
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mini() -> FloatFormat {
        FloatFormat::mini(3, 2)
    }

    fn r(v: &ExactReal, m: RoundingMode) -> f64 {
        round(mini(), v, m).to_f64()
    }

    #[test]
    fn nearest_overflow_threshold() {
        use RoundingMode::*;
        assert_eq!(r(&ExactReal::from_int(9), Nearest), f64::INFINITY);
        assert_eq!(r(&ExactReal::ratio(29, 4), Nearest), 7.0);
        assert_eq!(r(&ExactReal::ratio(15, 2), Nearest), f64::INFINITY);
        assert_eq!(r(&ExactReal::ratio(-15, 2), Nearest), f64::NEG_INFINITY);
        assert_eq!(r(&ExactReal::from_int(9), Down), 7.0);
        assert_eq!(r(&ExactReal::from_int(9), TowardZero), 7.0);
        assert_eq!(r(&ExactReal::from_int(-9), Up), -7.0);
        assert_eq!(r(&ExactReal::from_int(-9), Down), f64::NEG_INFINITY);
    }

    #[test]
    fn tiny_values_keep_their_sign() {
        use RoundingMode::*;
        let t = ExactReal::ratio(1, 100);
        assert_eq!(round(mini(), &t, Down), mini().pos_zero());
        assert_eq!(round(mini(), &t.neg(), Up), mini().neg_zero());
        assert_eq!(round(mini(), &t.neg(), TowardZero), mini().neg_zero());
        assert_eq!(round(mini(), &t, Up), mini().fmin());
        assert_eq!(round(mini(), &ExactReal::ratio(1, 16), Nearest), mini().pos_zero());
        assert_eq!(round(mini(), &ExactReal::ratio(3, 16), Nearest).to_f64(), 0.25);
    }

    #[test]
    fn ties_to_even() {
        use RoundingMode::Nearest;
        // 1.125 lies between 1.0 (even) and 1.25 (odd).
        assert_eq!(r(&ExactReal::ratio(9, 8), Nearest), 1.0);
        // 1.375 lies between 1.25 (odd) and 1.5 (even).
        assert_eq!(r(&ExactReal::ratio(11, 8), Nearest), 1.5);
    }

    #[test]
    fn binary32_matches_host_rounding() {
        let f = FloatFormat::BINARY32;
        for v in [0.1f64, 1.0 / 3.0, 1e-40, 3.4028235677973366e38, -7.0e-46, 1e39] {
            let got = round(f, &ExactReal::from_f64(v), RoundingMode::Nearest).to_f64();
            assert_eq!(got.to_bits(), (v as f32 as f64).to_bits(), "{v}");
        }
    }
}
