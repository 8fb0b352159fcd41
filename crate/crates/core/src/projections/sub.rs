//! Subtraction: direct projection and the two inverse projections.

use super::common::*;
use super::ProjectionResult;
use crate::errfun::EvalMode;
use crate::intervals::FpInterval;
use crate::roundsel::{inv_l_left, inv_l_right, inv_u_left, inv_u_right, sel_direct, RoundingModeSet};
use crate::softfloat::{FloatVal, Op, RoundingMode};

use Class::*;
use RoundingMode::{Down, Nearest, Up};

/// New lower bound of `x` from `y_l`, `z_u`.
pub fn ds_l(y: &FloatVal, z: &FloatVal, r: RoundingMode) -> FloatVal {
    let fmt = y.format();
    let a1 = if r == Down { fmt.neg_zero() } else { fmt.pos_zero() };
    match (class(y), class(z)) {
        (PosInf, _) | (_, NegInf) => fmt.pos_inf(),
        (NegInf, _) | (_, PosInf) => fmt.neg_inf(),
        (Neg | Pos, Neg | Pos) => f(y, Op::Sub, z, r),
        (Neg | Pos, _) => *y,
        (_, Neg | Pos) => z.negate(),
        (NegZero, PosZero) => fmt.neg_zero(),
        (PosZero, NegZero) => fmt.pos_zero(),
        _ => a1,
    }
}

/// New upper bound of `x` from `y_u`, `z_l`.
pub fn ds_u(y: &FloatVal, z: &FloatVal, r: RoundingMode) -> FloatVal {
    let fmt = y.format();
    let a2 = if r == Down { fmt.neg_zero() } else { fmt.pos_zero() };
    match (class(y), class(z)) {
        (NegInf, _) | (_, PosInf) => fmt.neg_inf(),
        (PosInf, _) | (_, NegInf) => fmt.pos_inf(),
        (Neg | Pos, Neg | Pos) => f(y, Op::Sub, z, r),
        (Neg | Pos, _) => *y,
        (_, Neg | Pos) => z.negate(),
        (NegZero, PosZero) => fmt.neg_zero(),
        (PosZero, NegZero) => fmt.pos_zero(),
        _ => a2,
    }
}

/// Direct projection of `x = y - z`.
pub fn sub_direct(x: &FpInterval, y: &FpInterval, z: &FpInterval, s: RoundingModeSet) -> ProjectionResult {
    let (Some((yl, yu)), Some((zl, zu))) = (y.bounds(), z.bounds()) else {
        return ProjectionResult::direct(FpInterval::Empty);
    };
    let (rl, _) = sel_direct(s, &yl, Op::Sub, &zu);
    let (_, ru) = sel_direct(s, &yu, Op::Sub, &zl);
    let xl = ds_l(&yl, &zu, rl);
    let xu = ds_u(&yu, &zl, ru);
    ProjectionResult::direct(x.meet(&FpInterval::or_empty(xl, xu)))
}

/// Lower bound of `y` from `x_l`, `z_l`.
pub fn isf_l(xl: &FloatVal, zl: &FloatVal, r: RoundingMode, m: EvalMode) -> BoundOutcome {
    let fmt = xl.format();
    let exact_sum = || if *xl == zl.negate() { fmt.neg_zero() } else { f(xl, Op::Add, zl, Up) };
    let a3 = || match r {
        Nearest => {
            if nabla_neg(xl).num_eq(&fmt.fmin().negate()) {
                exact_sum()
            } else {
                least_above(&near_lo(*xl).add(leaf(*zl)), even(xl), m)
            }
        }
        Down => exact_sum(),
        _ => succ(f(&pred(*xl), Op::Add, zl, Down)),
    };
    let a4 = || if r == Down { succ(*zl) } else { *zl };
    let a5 = if r == Down { fmt.pos_zero() } else { fmt.neg_zero() };
    let a6 = || match r {
        Down => fmt.pos_inf(),
        Up => succ(f(&fmt.fmax(), Op::Add, zl, Down)),
        _ => least_above(&near_hi(fmt.fmax()).add(leaf(*zl)), true, m),
    };
    let v = match (class(xl), class(zl)) {
        (NegInf, _) => fmt.neg_inf(),
        (_, PosInf) => return BoundOutcome::Unsatisfiable,
        (_, NegInf) => fmt.fmax().negate(),
        (Neg | Pos, Neg | Pos) => a3(),
        (Neg | Pos, _) => *xl,
        (NegZero, Neg | Pos) => *zl,
        (NegZero, _) => fmt.neg_zero(),
        (PosZero, NegZero) => a5,
        (PosZero, _) => a4(),
        (PosInf, Neg) => a6(),
        (PosInf, _) => fmt.pos_inf(),
    };
    v.into()
}

/// Upper bound of `y` from `x_u`, `z_u`.
pub fn isf_u(xu: &FloatVal, zu: &FloatVal, r: RoundingMode, m: EvalMode) -> BoundOutcome {
    let fmt = xu.format();
    let exact_sum = || if *xu == zu.negate() { fmt.pos_zero() } else { f(xu, Op::Add, zu, Down) };
    let a7 = || match r {
        Nearest => {
            if nabla_pos(xu).num_eq(&fmt.fmin()) {
                exact_sum()
            } else {
                greatest_below(&near_hi(*xu).add(leaf(*zu)), even(xu), m)
            }
        }
        Down => pred(f(&succ(*xu), Op::Add, zu, Up)),
        _ => exact_sum(),
    };
    // pred(+0) skips -0, which still solves -0 - +0 = -0
    let a8 = || match (r, class(zu)) {
        (Down, _) => *zu,
        (_, PosZero) => fmt.neg_zero(),
        _ => pred(*zu),
    };
    let a9 = || match r {
        Up => fmt.neg_inf(),
        Down => pred(f(zu, Op::Add, &fmt.fmax().negate(), Up)),
        _ => greatest_below(&near_lo(fmt.fmax().negate()).add(leaf(*zu)), true, m),
    };
    let v = match (class(xu), class(zu)) {
        (PosInf, _) => fmt.pos_inf(),
        (_, NegInf) => return BoundOutcome::Unsatisfiable,
        (_, PosInf) => fmt.fmax(),
        (NegInf, Pos) => a9(),
        (NegInf, _) => fmt.neg_inf(),
        (Neg | Pos, Neg | Pos) => a7(),
        (Neg | Pos, _) => *xu,
        (NegZero, _) => a8(),
        (PosZero, Neg | Pos) => *zu,
        (PosZero, _) => fmt.pos_zero(),
    };
    v.into()
}

/// Inverse projection of `x = y - z` onto the minuend `y`.
pub fn sub_inverse_first(x: &FpInterval, y: &FpInterval, z: &FpInterval, s: RoundingModeSet, m: EvalMode) -> ProjectionResult {
    let (Some((xl, xu)), Some((zl, zu))) = (x.bounds(), z.bounds()) else {
        return ProjectionResult::inverse(FpInterval::Empty);
    };
    let rl = inv_l_left(s, &xl, Op::Sub, &zl);
    let ru = inv_u_left(s, &xu, Op::Sub, &zu);
    let out = match (isf_l(&xl, &zl, rl, m), isf_u(&xu, &zu, ru, m)) {
        (BoundOutcome::Value(l), BoundOutcome::Value(u)) => y.meet(&FpInterval::or_empty(l, u)),
        _ => FpInterval::Empty,
    };
    ProjectionResult::inverse(out)
}

/// Lower bound of `z` from `y_l`, `x_u`.
pub fn iss_l(yl: &FloatVal, xu: &FloatVal, r: RoundingMode, m: EvalMode) -> BoundOutcome {
    let fmt = yl.format();
    let exact_diff = || if xu == yl { fmt.neg_zero() } else { f(yl, Op::Sub, xu, Up) };
    let a10 = || match r {
        Nearest => {
            if nabla_pos(xu).num_eq(&fmt.fmin()) {
                exact_diff()
            } else {
                least_above(&leaf(*yl).sub(near_hi(*xu)), even(xu), m)
            }
        }
        Up => exact_diff(),
        _ => succ(f(yl, Op::Sub, &succ(*xu), Down)),
    };
    let a11 = || if r == Down { *yl } else { succ(*yl) };
    let a12 = if r == Down { fmt.neg_zero() } else { fmt.pos_zero() };
    let a13 = || match r {
        Up => fmt.pos_inf(),
        Down => succ(f(yl, Op::Add, &fmt.fmax(), Down)),
        _ => least_above(&near_hi(fmt.fmax()).add(leaf(*yl)), true, m),
    };
    let v = match (class(yl), class(xu)) {
        (_, PosInf) => fmt.neg_inf(),
        (PosInf, _) => return BoundOutcome::Unsatisfiable,
        (NegInf, _) => fmt.fmax().negate(),
        (_, NegInf) if matches!(class(yl), Neg) => a13(),
        (_, NegInf) => fmt.pos_inf(),
        (Neg | Pos, Neg | Pos) => a10(),
        (Neg | Pos, NegZero) => a11(),
        (Neg | Pos, PosZero) => *yl,
        (NegZero, NegZero) => a12,
        (PosZero, NegZero) => a11(),
        (NegZero | PosZero, PosZero) => fmt.neg_zero(),
        (NegZero | PosZero, _) => xu.negate(),
    };
    v.into()
}

/// Upper bound of `z` from `y_u`, `x_l`.
pub fn iss_u(yu: &FloatVal, xl: &FloatVal, r: RoundingMode, m: EvalMode) -> BoundOutcome {
    let fmt = yu.format();
    let exact_diff = || if xl == yu { fmt.pos_zero() } else { f(yu, Op::Sub, xl, Down) };
    let a14 = || match r {
        Nearest => {
            if nabla_neg(xl).num_eq(&fmt.fmin().negate()) {
                exact_diff()
            } else {
                greatest_below(&leaf(*yu).sub(near_lo(*xl)), even(xl), m)
            }
        }
        Up => pred(f(yu, Op::Sub, &pred(*xl), Up)),
        _ => exact_diff(),
    };
    let a15 = || if r == Down { pred(*yu) } else { *yu };
    let a16 = if r == Down { fmt.neg_zero() } else { fmt.pos_zero() };
    let a17 = || match r {
        Down => fmt.neg_inf(),
        Up => pred(f(yu, Op::Sub, &fmt.fmax(), Up)),
        _ => greatest_below(&near_lo(fmt.fmax().negate()).add(leaf(*yu)), true, m),
    };
    let v = match (class(yu), class(xl)) {
        (_, NegInf) => fmt.pos_inf(),
        (NegInf, _) => return BoundOutcome::Unsatisfiable,
        (PosInf, _) => fmt.fmax(),
        (Pos, PosInf) => a17(),
        (_, PosInf) => fmt.neg_inf(),
        (Neg | Pos, Neg | Pos) => a14(),
        (Neg | Pos, NegZero) => *yu,
        (Neg | Pos, PosZero) => a15(),
        (PosZero, PosZero) => a16,
        (NegZero, PosZero) => a15(),
        (NegZero | PosZero, NegZero) => fmt.pos_zero(),
        (NegZero | PosZero, _) => xl.negate(),
    };
    v.into()
}

/// Inverse projection of `x = y - z` onto the subtrahend `z`.
pub fn sub_inverse_second(x: &FpInterval, y: &FpInterval, z: &FpInterval, s: RoundingModeSet, m: EvalMode) -> ProjectionResult {
    let (Some((xl, xu)), Some((yl, yu))) = (x.bounds(), y.bounds()) else {
        return ProjectionResult::inverse(FpInterval::Empty);
    };
    let rl = inv_l_right(s, &xu, Op::Sub, &yl);
    let ru = inv_u_right(s, &xl, Op::Sub, &yu);
    let out = match (iss_l(&yl, &xu, rl, m), iss_u(&yu, &xl, ru, m)) {
        (BoundOutcome::Value(l), BoundOutcome::Value(u)) => z.meet(&FpInterval::or_empty(l, u)),
        _ => FpInterval::Empty,
    };
    ProjectionResult::inverse(out)
}
