//! NaN-domain transfer for `x = y op z`.
//!
//! A NaN result arises from a NaN operand or from an invalid operation
//! (`inf - inf`, `0 * inf`, `0 / 0`, `inf / inf`), and the only operands
//! taking part in invalid operations are zeros and infinities, so the
//! rules enumerate those four special values.

use crate::intervals::{FpInterval, NanFlag, VarDomain};
use crate::projections::Operand;
use crate::softfloat::{is_invalid, FloatFormat, FloatVal, Op};

fn specials(fmt: FloatFormat) -> [FloatVal; 4] {
    [fmt.neg_inf(), fmt.neg_zero(), fmt.pos_zero(), fmt.pos_inf()]
}

/// Hull of the members of the chosen operand's interval that form an
/// invalid operation with some member of the other operand's interval.
pub fn invalid_operands(op: Op, which: Operand, y: &FpInterval, z: &FpInterval) -> FpInterval {
    let Some((l, _)) = y.bounds().or(z.bounds()) else {
        return FpInterval::Empty;
    };
    let sp = specials(l.format());
    let mut out = FpInterval::Empty;
    for a in sp.iter().filter(|a| y.contains(a)) {
        for b in sp.iter().filter(|b| z.contains(b)) {
            if is_invalid(a, op, b) {
                let own = if which == Operand::Left { *a } else { *b };
                out = out.convex_union(&FpInterval::singleton(own));
            }
        }
    }
    out
}

/// Whether some pair of members forms an invalid operation.
pub fn invalid_possible(op: Op, y: &FpInterval, z: &FpInterval) -> bool {
    !invalid_operands(op, Operand::Left, y, z).is_empty()
}

/// New NaN flag of the result: NaN is possible only if it was allowed and
/// some operand may be NaN or some operand pair is invalid.
pub fn result_flag(op: Op, x: &VarDomain, y: &VarDomain, z: &VarDomain) -> NanFlag {
    NanFlag::from_bool(x.nan.may() && (y.nan.may() || z.nan.may() || invalid_possible(op, &y.interval, &z.interval)))
}

/// New NaN flag of an operand: a NaN operand forces a NaN result.
pub fn operand_flag(x: &VarDomain, own: &VarDomain) -> NanFlag {
    NanFlag::from_bool(own.nan.may() && x.nan.may())
}

/// Non-NaN operand values that can produce a NaN result: everything when
/// the other operand may be NaN, otherwise the invalid-operation partners.
/// Empty when the result cannot be NaN.
pub fn operand_support(op: Op, which: Operand, x: &VarDomain, y: &VarDomain, z: &VarDomain) -> FpInterval {
    if !x.nan.may() {
        return FpInterval::Empty;
    }
    let (own, other) = if which == Operand::Left { (y, z) } else { (z, y) };
    if other.nan.may() {
        return own.interval;
    }
    invalid_operands(op, which, &y.interval, &z.interval)
}
