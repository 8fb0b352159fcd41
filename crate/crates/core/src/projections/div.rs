//! Division: direct projection and the two inverse projections.
//!
//! Every projection splits the sign-varying interval (the divisor for the
//! direct and first inverse projections, the result for the second) into
//! its negative and positive slabs and joins the two partial results.

use super::common::*;
use super::ProjectionResult;
use crate::errfun::EvalMode;
use crate::intervals::FpInterval;
use crate::roundsel::{inv_l_left, inv_l_right, inv_u_left, inv_u_right, sel_direct, RoundingModeSet};
use crate::softfloat::{FloatFormat, FloatVal, Op, RoundingMode};

use Class::*;
use RoundingMode::{Down, Up};

fn slabs(fmt: FloatFormat, w: &FpInterval) -> [FpInterval; 2] {
    [w.meet(&FpInterval::neg_slab(fmt)), w.meet(&FpInterval::pos_slab(fmt))]
}

/// New lower bound of `x` from the selected `y_L`, `w_L`.
pub fn dd_l(y: &FloatVal, w: &FloatVal, r: RoundingMode) -> FloatVal {
    let fmt = y.format();
    let (pi, ni, pz, nz) = (fmt.pos_inf(), fmt.neg_inf(), fmt.pos_zero(), fmt.neg_zero());
    match (class(y), class(w)) {
        (NegInf, NegInf | Neg | NegZero) => pi,
        (NegInf, PosZero | Pos) => ni,
        (NegInf, PosInf) => nz,
        (Neg, NegInf) => pz,
        (Neg | Pos, Neg | Pos) => f(y, Op::Div, w, r),
        (Neg, NegZero) => pi,
        (Neg, PosZero) => ni,
        (Neg, PosInf) => nz,
        (NegZero, NegInf | Neg) => pz,
        (NegZero, NegZero) => pi,
        (NegZero, _) => nz,
        (PosZero, NegInf | Neg | NegZero) => nz,
        (PosZero, PosZero) => pi,
        (PosZero, _) => pz,
        (Pos, NegInf) => nz,
        (Pos, NegZero) => ni,
        (Pos, PosZero) => pi,
        (Pos, PosInf) => pz,
        (PosInf, NegInf) => nz,
        (PosInf, Neg | NegZero) => ni,
        (PosInf, _) => pi,
    }
}

/// New upper bound of `x` from the selected `y_U`, `w_U`.
pub fn dd_u(y: &FloatVal, w: &FloatVal, r: RoundingMode) -> FloatVal {
    let fmt = y.format();
    let (pi, ni, pz, nz) = (fmt.pos_inf(), fmt.neg_inf(), fmt.pos_zero(), fmt.neg_zero());
    match (class(y), class(w)) {
        (NegInf, NegInf) => pz,
        (NegInf, Neg | NegZero) => pi,
        (NegInf, _) => ni,
        (Neg, NegInf) => pz,
        (Neg | Pos, Neg | Pos) => f(y, Op::Div, w, r),
        (Neg, NegZero) => pi,
        (Neg, PosZero) => ni,
        (Neg, PosInf) => nz,
        (NegZero, NegInf | Neg | NegZero) => pz,
        (NegZero, PosZero) => ni,
        (NegZero, _) => nz,
        (PosZero, NegInf | Neg) => nz,
        (PosZero, NegZero) => ni,
        (PosZero, _) => pz,
        (Pos, NegInf) => nz,
        (Pos, NegZero) => ni,
        (Pos, PosZero) => pi,
        (Pos, PosInf) => pz,
        (PosInf, NegInf | Neg | NegZero) => ni,
        (PosInf, PosZero | Pos) => pi,
        (PosInf, PosInf) => pz,
    }
}

/// Quotients of `[y_l, y_u]` by a single signed zero: only the nonzero
/// dividends contribute, each giving an infinity. The table entries for a
/// zero endpoint over a zero divisor stand in for a NaN and are not tight.
fn by_zero(yl: FloatVal, yu: FloatVal, w: FloatVal) -> FpInterval {
    let fmt = w.format();
    let inf = |neg: bool| if neg != w.is_sign_negative() { fmt.neg_inf() } else { fmt.pos_inf() };
    let has_neg = matches!(class(&yl), NegInf | Neg);
    let has_pos = matches!(class(&yu), Pos | PosInf);
    match (has_neg, has_pos) {
        (false, false) => FpInterval::Empty,
        (true, false) => FpInterval::singleton(inf(true)),
        (false, true) => FpInterval::singleton(inf(false)),
        (true, true) => FpInterval::full(fmt),
    }
}

/// Direct projection of `x = y / z`.
pub fn div_direct(x: &FpInterval, y: &FpInterval, z: &FpInterval, s: RoundingModeSet) -> ProjectionResult {
    let Some((yl, yu)) = y.bounds() else {
        return ProjectionResult::direct(FpInterval::Empty);
    };
    let mut out = FpInterval::Empty;
    for w in slabs(yl.format(), z) {
        let Some((wl, wu)) = w.bounds() else { continue };
        if wu.is_zero() && wl == wu {
            out = out.convex_union(&x.meet(&by_zero(yl, yu, wl)));
            continue;
        }
        let (y_l, y_u, w_l, w_u) = tau(yl, yu, wl, wu);
        let (rl, _) = sel_direct(s, &y_l, Op::Div, &w_l);
        let (_, ru) = sel_direct(s, &y_u, Op::Div, &w_u);
        let part = x.meet(&FpInterval::or_empty(dd_l(&y_l, &w_l, rl), dd_u(&y_u, &w_u, ru)));
        out = out.convex_union(&part);
    }
    ProjectionResult::direct(out)
}

/// Lower bound of `y` from the selected `x_L`, `w_L`.
pub fn idf_l(x: &FloatVal, w: &FloatVal, r: RoundingMode, m: EvalMode) -> BoundOutcome {
    let fmt = x.format();
    let (fmin, fmax) = (fmt.fmin(), fmt.fmax());
    let a3p = || match r {
        Down => f(x, Op::Mul, w, Up),
        Up => succ(f(&pred(*x), Op::Mul, w, Down)),
        _ => least_above(&near_lo(*x).mul(leaf(*w)), even(x), m),
    };
    let a3m = || match r {
        Up => f(x, Op::Mul, w, Up),
        Down => succ(f(&succ(*x), Op::Mul, w, Down)),
        _ => least_above(&near_hi(*x).mul(leaf(*w)), even(x), m),
    };
    let a4 = || match r {
        Up => fmt.pos_inf(),
        Down => succ(f(&fmax.negate(), Op::Mul, w, Down)),
        _ => least_above(&near_lo(fmax.negate()).mul(leaf(*w)), true, m),
    };
    let a5 = || match r {
        Down => fmt.pos_inf(),
        Up => succ(f(&fmax, Op::Mul, w, Down)),
        _ => least_above(&near_hi(fmax).mul(leaf(*w)), true, m),
    };
    let a6 = || match r {
        Up => fmt.neg_zero(),
        Down => succ(f(&fmin, Op::Mul, w, Down)),
        _ => halve(&f(&fmin, Op::Mul, w, Up), Up),
    };
    let a7 = || match r {
        Up => succ(f(&fmin.negate(), Op::Mul, w, Down)),
        Down => fmt.neg_zero(),
        _ => halve(&f(&fmin.negate(), Op::Mul, w, Up), Up),
    };
    let v = match (class(x), class(w)) {
        (NegInf, NegInf) => return BoundOutcome::Unsatisfiable,
        (NegInf, Neg) => a4(),
        (NegInf, NegZero) => fmin,
        (NegInf, _) => fmt.neg_inf(),
        (Neg, NegInf) => return BoundOutcome::Unsatisfiable,
        (Neg | Pos, Neg) => a3m(),
        (Neg | Pos, NegZero | PosZero) => fmin,
        (Neg | Pos, Pos) => a3p(),
        (Neg, PosInf) => fmax.negate(),
        (NegZero, NegInf | Neg | NegZero) => fmt.pos_zero(),
        (NegZero, PosZero) => fmin,
        (NegZero, Pos) => a7(),
        (NegZero, PosInf) => fmax.negate(),
        (PosZero, NegInf) => fmax.negate(),
        (PosZero, Neg) => a6(),
        (PosZero, NegZero) => fmin,
        (PosZero, _) => fmt.pos_zero(),
        (Pos, NegInf) => fmax.negate(),
        (Pos, PosInf) => return BoundOutcome::Unsatisfiable,
        (PosInf, NegInf | Neg | NegZero) => fmt.neg_inf(),
        (PosInf, PosZero) => fmin,
        (PosInf, Pos) => a5(),
        (PosInf, PosInf) => return BoundOutcome::Unsatisfiable,
    };
    v.into()
}

/// Upper bound of `y` from the selected `x_U`, `w_U`.
pub fn idf_u(x: &FloatVal, w: &FloatVal, r: RoundingMode, m: EvalMode) -> BoundOutcome {
    let fmt = x.format();
    let (fmin, fmax) = (fmt.fmin(), fmt.fmax());
    let a8p = || match r {
        Down => pred(f(&succ(*x), Op::Mul, w, Up)),
        Up => f(x, Op::Mul, w, Down),
        _ => greatest_below(&near_hi(*x).mul(leaf(*w)), even(x), m),
    };
    let a8m = || match r {
        Up => pred(f(&pred(*x), Op::Mul, w, Up)),
        Down => f(x, Op::Mul, w, Down),
        _ => greatest_below(&near_lo(*x).mul(leaf(*w)), even(x), m),
    };
    let a9 = || match r {
        Up => fmt.neg_inf(),
        Down => pred(f(&fmax.negate(), Op::Mul, w, Up)),
        _ => greatest_below(&near_lo(fmax.negate()).mul(leaf(*w)), true, m),
    };
    let a10 = || match r {
        Down => fmt.neg_inf(),
        Up => pred(f(&fmax, Op::Mul, w, Up)),
        _ => greatest_below(&near_hi(fmax).mul(leaf(*w)), true, m),
    };
    let a11 = || match r {
        Up => fmt.pos_zero(),
        Down => pred(f(&fmin, Op::Mul, w, Up)),
        _ => halve(&f(&fmin, Op::Mul, w, Down), Down),
    };
    let a12 = || match r {
        Up => pred(f(&fmin.negate(), Op::Mul, w, Up)),
        Down => fmt.pos_zero(),
        _ => halve(&f(&fmin.negate(), Op::Mul, w, Down), Down),
    };
    let v = match (class(x), class(w)) {
        (NegInf, NegInf | Neg | NegZero) => fmt.pos_inf(),
        (NegInf, PosZero) => fmin.negate(),
        (NegInf, Pos) => a9(),
        (NegInf, PosInf) => return BoundOutcome::Unsatisfiable,
        (Neg, NegInf) => fmax,
        (Neg | Pos, Neg) => a8m(),
        (Neg | Pos, NegZero | PosZero) => fmin.negate(),
        (Neg | Pos, Pos) => a8p(),
        (Neg, PosInf) => return BoundOutcome::Unsatisfiable,
        (NegZero, NegInf) => fmax,
        (NegZero, Neg) => a12(),
        (NegZero, NegZero) => fmin.negate(),
        (NegZero, _) => fmt.neg_zero(),
        (PosZero, NegInf | Neg | NegZero) => fmt.neg_zero(),
        (PosZero, PosZero) => fmin.negate(),
        (PosZero, Pos) => a11(),
        (PosZero, PosInf) => fmax,
        (Pos, NegInf) => return BoundOutcome::Unsatisfiable,
        (Pos, PosInf) => fmax,
        (PosInf, NegInf) => return BoundOutcome::Unsatisfiable,
        (PosInf, Neg) => a10(),
        (PosInf, NegZero) => fmin.negate(),
        (PosInf, _) => fmt.pos_inf(),
    };
    v.into()
}

/// Inverse projection of `x = y / z` onto the dividend `y`.
pub fn div_inverse_first(x: &FpInterval, y: &FpInterval, z: &FpInterval, s: RoundingModeSet, m: EvalMode) -> ProjectionResult {
    let Some((xl, xu)) = x.bounds() else {
        return ProjectionResult::inverse(FpInterval::Empty);
    };
    let mut out = FpInterval::Empty;
    for w in slabs(xl.format(), z) {
        let Some((wl, wu)) = w.bounds() else { continue };
        let (w_l, w_u, x_l, x_u) = sigma(wl, wu, xl, xu);
        let rl = inv_l_left(s, &x_l, Op::Div, &w_l);
        let ru = inv_u_left(s, &x_u, Op::Div, &w_u);
        if let (BoundOutcome::Value(l), BoundOutcome::Value(u)) = (idf_l(&x_l, &w_l, rl, m), idf_u(&x_u, &w_u, ru, m)) {
            out = out.convex_union(&y.meet(&FpInterval::or_empty(l, u)));
        }
    }
    ProjectionResult::inverse(out)
}

/// Lower bound of `z` from the selected `y_L`, `v_L`.
pub fn ids_l(y: &FloatVal, v: &FloatVal, r: RoundingMode, m: EvalMode) -> BoundOutcome {
    let fmt = y.format();
    let (fmin, fmax) = (fmt.fmin(), fmt.fmax());
    let a3p = || match r {
        Up => f(y, Op::Div, v, Up),
        Down => succ(f(y, Op::Div, &succ(*v), Down)),
        _ => least_above(&leaf(*y).div(near_hi(*v)), even(v), m),
    };
    let a3m = || match r {
        Down => f(y, Op::Div, v, Up),
        Up => succ(f(y, Op::Div, &pred(*v), Down)),
        _ => least_above(&leaf(*y).div(near_lo(*v)), even(v), m),
    };
    let a4 = || match r {
        Down => fmt.pos_inf(),
        Up => succ(f(y, Op::Div, &fmin.negate(), Down)),
        _ => twice(&f(y, Op::Div, &fmin.negate(), Up), Up),
    };
    let a5 = || match r {
        Down => succ(f(y, Op::Div, &fmin, Down)),
        Up => fmt.pos_inf(),
        _ => twice(&f(y, Op::Div, &fmin, Up), Up),
    };
    let a6 = || match r {
        Down => fmt.neg_zero(),
        Up => succ(f(y, Op::Div, &fmax, Down)),
        _ => least_above(&leaf(*y).div(near_hi(fmax)), true, m),
    };
    let a7 = || match r {
        Up => fmt.neg_zero(),
        Down => succ(f(y, Op::Div, &fmax.negate(), Down)),
        _ => least_above(&leaf(*y).div(near_lo(fmax.negate())), true, m),
    };
    let v = match (class(y), class(v)) {
        (NegInf, Neg | NegZero) => return BoundOutcome::Unsatisfiable,
        (PosInf, PosZero | Pos) => return BoundOutcome::Unsatisfiable,
        (NegInf, PosZero) => fmt.neg_inf(),
        (NegInf, NegInf) => fmt.pos_zero(),
        (NegInf, _) => fmax.negate(),
        (Neg, NegInf) => fmt.pos_zero(),
        (Neg, Neg | Pos) => a3m(),
        (Neg, NegZero) => a4(),
        (Neg, PosZero) => fmt.neg_inf(),
        (Neg, PosInf) => a6(),
        (NegZero, NegInf) => fmt.pos_zero(),
        (NegZero, Neg | NegZero) => fmin,
        (NegZero, PosZero) => fmt.neg_inf(),
        (NegZero, _) => fmt.pos_zero(),
        (PosZero, NegZero) => fmt.neg_inf(),
        (PosZero, PosZero | Pos) => fmin,
        (PosZero, _) => fmt.pos_zero(),
        (Pos, NegInf) => a7(),
        (Pos, Neg | Pos) => a3p(),
        (Pos, NegZero) => fmt.neg_inf(),
        (Pos, PosZero) => a5(),
        (Pos, PosInf) => fmt.pos_zero(),
        (PosInf, NegInf | Neg) => fmax.negate(),
        (PosInf, NegZero) => fmt.neg_inf(),
        (PosInf, PosInf) => fmt.pos_zero(),
    };
    v.into()
}

/// Upper bound of `z` from the selected `y_U`, `v_U`.
pub fn ids_u(y: &FloatVal, v: &FloatVal, r: RoundingMode, m: EvalMode) -> BoundOutcome {
    let fmt = y.format();
    let (fmin, fmax) = (fmt.fmin(), fmt.fmax());
    let a8p = || match r {
        Down => f(y, Op::Div, v, Down),
        Up => pred(f(y, Op::Div, &pred(*v), Up)),
        _ => greatest_below(&leaf(*y).div(near_lo(*v)), even(v), m),
    };
    let a8m = || match r {
        Up => f(y, Op::Div, v, Down),
        Down => pred(f(y, Op::Div, &succ(*v), Up)),
        _ => greatest_below(&leaf(*y).div(near_hi(*v)), even(v), m),
    };
    let a9 = || match r {
        Up => fmt.neg_inf(),
        Down => pred(f(y, Op::Div, &fmin, Up)),
        _ => twice(&f(y, Op::Div, &fmin, Down), Down),
    };
    let a10 = || match r {
        Up => pred(f(y, Op::Div, &fmin.negate(), Up)),
        Down => fmt.neg_inf(),
        _ => twice(&f(y, Op::Div, &fmin.negate(), Down), Down),
    };
    let a11 = || match r {
        Up => fmt.pos_zero(),
        Down => pred(f(y, Op::Div, &fmax.negate(), Up)),
        _ => greatest_below(&leaf(*y).div(near_lo(fmax.negate())), true, m),
    };
    let a12 = || match r {
        Down => fmt.pos_zero(),
        Up => pred(f(y, Op::Div, &fmax, Up)),
        _ => greatest_below(&leaf(*y).div(near_hi(fmax)), true, m),
    };
    let v = match (class(y), class(v)) {
        (NegInf, PosZero | Pos) => return BoundOutcome::Unsatisfiable,
        (PosInf, Neg | NegZero) => return BoundOutcome::Unsatisfiable,
        (NegInf, NegInf | Neg) => fmax,
        (NegInf, NegZero) => fmt.pos_inf(),
        (NegInf, PosInf) => fmt.neg_zero(),
        (Neg, NegInf) => a11(),
        (Neg, Neg | Pos) => a8m(),
        (Neg, NegZero) => fmt.pos_inf(),
        (Neg, PosZero) => a9(),
        (Neg, PosInf) => fmt.neg_zero(),
        (NegZero, NegZero) => fmt.pos_inf(),
        (NegZero, PosZero | Pos) => fmin.negate(),
        (NegZero, _) => fmt.neg_zero(),
        (PosZero, Neg | NegZero) => fmin.negate(),
        (PosZero, PosZero) => fmt.pos_inf(),
        (PosZero, _) => fmt.neg_zero(),
        (Pos, NegInf) => fmt.neg_zero(),
        (Pos, Neg | Pos) => a8p(),
        (Pos, NegZero) => a10(),
        (Pos, PosZero) => fmt.pos_inf(),
        (Pos, PosInf) => a12(),
        (PosInf, NegInf) => fmt.neg_zero(),
        (PosInf, PosZero) => fmt.pos_inf(),
        (PosInf, Pos | PosInf) => fmax,
    };
    v.into()
}

/// Inverse projection of `x = y / z` onto the divisor `z`.
pub fn div_inverse_second(x: &FpInterval, y: &FpInterval, z: &FpInterval, s: RoundingModeSet, m: EvalMode) -> ProjectionResult {
    let Some((yl, yu)) = y.bounds() else {
        return ProjectionResult::inverse(FpInterval::Empty);
    };
    let mut out = FpInterval::Empty;
    for v in slabs(yl.format(), x) {
        let Some((vl, vu)) = v.bounds() else { continue };
        let (y_l, y_u, v_l, v_u) = tau(yl, yu, vl, vu);
        let rl = inv_l_right(s, &v_l, Op::Div, &y_l);
        let ru = inv_u_right(s, &v_u, Op::Div, &y_u);
        if let (BoundOutcome::Value(l), BoundOutcome::Value(u)) = (ids_l(&y_l, &v_l, rl, m), ids_u(&y_u, &v_u, ru, m)) {
            out = out.convex_union(&z.meet(&FpInterval::or_empty(l, u)));
        }
    }
    ProjectionResult::inverse(out)
}
