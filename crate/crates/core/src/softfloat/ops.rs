use super::exact::ExactReal;
use super::round::round;
use super::value::FloatVal;
use super::{Op, RoundingMode};

/// The exact real result of `y op z`, or None when the operation is
/// invalid (`inf - inf`, `0 * inf`, `0 / 0`, `inf / inf`) or an operand is
/// NaN. Division of a nonzero value by zero yields a signed infinity.
pub fn exact_result(y: &FloatVal, op: Op, z: &FloatVal) -> Option<ExactReal> {
    let a = y.to_exact()?;
    let b = z.to_exact()?;
    match op {
        Op::Add => a.add(&b),
        Op::Sub => a.sub(&b),
        Op::Mul => a.mul(&b),
        Op::Div => {
            if z.is_zero() {
                if y.is_zero() {
                    None
                } else if y.is_sign_negative() != z.is_sign_negative() {
                    Some(ExactReal::NegInf)
                } else {
                    Some(ExactReal::PosInf)
                }
            } else {
                a.div(&b)
            }
        }
    }
}

/// True when `y op z` is an IEEE invalid operation on non-NaN operands.
pub fn is_invalid(y: &FloatVal, op: Op, z: &FloatVal) -> bool {
    !y.is_nan() && !z.is_nan() && exact_result(y, op, z).is_none()
}

/// Correctly rounded `y op z` under `r`, with IEEE 754 special cases.
pub fn fp_op(y: &FloatVal, op: Op, z: &FloatVal, r: RoundingMode) -> FloatVal {
    let fmt = y.format();
    debug_assert_eq!(fmt, z.format(), "cross-format operation");
    if y.is_nan() || z.is_nan() {
        return fmt.qnan();
    }
    let Some(v) = exact_result(y, op, z) else {
        return fmt.qnan();
    };
    if !v.is_zero() {
        return round(fmt, &v, r);
    }
    let neg = match op {
        Op::Add | Op::Sub => {
            let zs = if op == Op::Sub { !z.is_sign_negative() } else { z.is_sign_negative() };
            if y.is_zero() && z.is_zero() && y.is_sign_negative() == zs {
                zs
            } else {
                r == RoundingMode::Down
            }
        }
        Op::Mul | Op::Div => y.is_sign_negative() != z.is_sign_negative(),
    };
    if neg {
        fmt.neg_zero()
    } else {
        fmt.pos_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::softfloat::FloatFormat;

    #[test]
    fn signed_zero_sums() {
        let f = FloatFormat::mini(3, 2);
        let (p, n) = (f.pos_zero(), f.neg_zero());
        assert_eq!(fp_op(&p, Op::Add, &n, RoundingMode::Down), n);
        assert_eq!(fp_op(&p, Op::Add, &n, RoundingMode::Nearest), p);
        assert_eq!(fp_op(&n, Op::Add, &n, RoundingMode::Up), n);
        assert_eq!(fp_op(&n, Op::Sub, &p, RoundingMode::Up), n);
        assert_eq!(fp_op(&p, Op::Sub, &p, RoundingMode::Down), n);
        let one = FloatVal::from_f64(f, 1.0);
        assert_eq!(fp_op(&one, Op::Sub, &one, RoundingMode::Down), n);
        assert_eq!(fp_op(&one, Op::Sub, &one, RoundingMode::TowardZero), p);
    }

    #[test]
    fn invalid_operations_give_qnan() {
        let f = FloatFormat::mini(3, 2);
        let (i, z) = (f.pos_inf(), f.pos_zero());
        assert!(fp_op(&i, Op::Sub, &i, RoundingMode::Nearest).is_nan());
        assert!(fp_op(&z, Op::Mul, &i.negate(), RoundingMode::Nearest).is_nan());
        assert!(fp_op(&z, Op::Div, &z, RoundingMode::Nearest).is_nan());
        assert!(fp_op(&i, Op::Div, &i, RoundingMode::Nearest).is_nan());
        assert_eq!(fp_op(&f.snan(), Op::Add, &z, RoundingMode::Nearest).kind(), f.qnan().kind());
    }

    #[test]
    fn signs_of_products_and_quotients() {
        let f = FloatFormat::mini(3, 2);
        let one = FloatVal::from_f64(f, 1.0);
        assert_eq!(fp_op(&one.negate(), Op::Div, &f.pos_zero(), RoundingMode::Nearest), f.neg_inf());
        assert_eq!(fp_op(&one, Op::Div, &f.neg_inf(), RoundingMode::Nearest), f.neg_zero());
        assert_eq!(fp_op(&f.neg_zero(), Op::Mul, &one.negate(), RoundingMode::Down), f.pos_zero());
    }

    #[test]
    fn binary32_sum_of_example() {
        let f = FloatFormat::BINARY32;
        let (a, b) = (FloatVal::from_f64(f, 5.0), FloatVal::from_f64(f, 8.0));
        for r in RoundingMode::ALL {
            assert_eq!(fp_op(&a, Op::Add, &b, r).to_f64(), 13.0);
        }
    }
}
