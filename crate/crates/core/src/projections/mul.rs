//! Multiplication: direct projection and the inverse projection of an
//! operand.

use super::common::*;
use super::ProjectionResult;
use crate::errfun::EvalMode;
use crate::intervals::FpInterval;
use crate::roundsel::{inv_l_left, inv_u_left, sel_direct, RoundingModeSet};
use crate::softfloat::{FloatVal, Op, RoundingMode};

use Class::*;
use RoundingMode::{Down, Nearest, Up};

/// New lower bound of `x` from the selected `y_L`, `z_L`.
pub fn dm_l(y: &FloatVal, z: &FloatVal, r: RoundingMode) -> FloatVal {
    let fmt = y.format();
    let (pi, ni, pz, nz) = (fmt.pos_inf(), fmt.neg_inf(), fmt.pos_zero(), fmt.neg_zero());
    match (class(y), class(z)) {
        (Neg | Pos, Neg | Pos) => f(y, Op::Mul, z, r),
        (NegInf, NegInf | Neg | NegZero) => pi,
        (NegInf, PosZero) => nz,
        (NegInf, _) => ni,
        (Neg, NegInf) => pi,
        (Neg, NegZero) => pz,
        (Neg, PosZero) => nz,
        (Neg, PosInf) => ni,
        (NegZero, NegInf) => pi,
        (NegZero, Neg | NegZero) => pz,
        (NegZero, _) => nz,
        (PosZero, NegInf | Neg | NegZero) => nz,
        (PosZero, PosInf) => pi,
        (PosZero, _) => pz,
        (Pos, NegInf) => ni,
        (Pos, NegZero) => nz,
        (Pos, PosZero) => pz,
        (Pos, PosInf) => pi,
        (PosInf, NegInf | Neg) => ni,
        (PosInf, NegZero) => nz,
        (PosInf, _) => pi,
    }
}

/// New upper bound of `x` from the selected `y_U`, `z_U`.
pub fn dm_u(y: &FloatVal, z: &FloatVal, r: RoundingMode) -> FloatVal {
    let fmt = y.format();
    let (pi, ni, pz, nz) = (fmt.pos_inf(), fmt.neg_inf(), fmt.pos_zero(), fmt.neg_zero());
    match (class(y), class(z)) {
        (Neg | Pos, Neg | Pos) => f(y, Op::Mul, z, r),
        (NegInf, NegInf | Neg) => pi,
        (NegInf, NegZero) => pz,
        (NegInf, _) => ni,
        (Neg, NegInf) => pi,
        (Neg, NegZero) => pz,
        (Neg, PosZero) => nz,
        (Neg, PosInf) => ni,
        (NegZero, NegInf | Neg | NegZero) => pz,
        (NegZero, PosInf) => ni,
        (NegZero, _) => nz,
        (PosZero, NegInf) => ni,
        (PosZero, Neg | NegZero) => nz,
        (PosZero, _) => pz,
        (Pos, NegInf) => ni,
        (Pos, NegZero) => nz,
        (Pos, PosZero) => pz,
        (Pos, PosInf) => pi,
        (PosInf, NegInf | Neg | NegZero) => ni,
        (PosInf, PosZero) => pz,
        (PosInf, _) => pi,
    }
}

/// Products of a single infinity with `[o_l, o_u]`: only the nonzero
/// factors contribute. The table entries for an infinity times a zero
/// endpoint stand in for a NaN and are not tight.
fn by_infinity(inf: FloatVal, ol: FloatVal, ou: FloatVal) -> FpInterval {
    let fmt = inf.format();
    let signed = |neg: bool| if neg != inf.is_sign_negative() { fmt.neg_inf() } else { fmt.pos_inf() };
    let has_neg = matches!(class(&ol), NegInf | Neg);
    let has_pos = matches!(class(&ou), Pos | PosInf);
    match (has_neg, has_pos) {
        (false, false) => FpInterval::Empty,
        (true, false) => FpInterval::singleton(signed(true)),
        (false, true) => FpInterval::singleton(signed(false)),
        (true, true) => FpInterval::full(fmt),
    }
}

/// Direct projection of `x = y * z`.
pub fn mul_direct(x: &FpInterval, y: &FpInterval, z: &FpInterval, s: RoundingModeSet) -> ProjectionResult {
    let (Some((yl, yu)), Some((zl, zu))) = (y.bounds(), z.bounds()) else {
        return ProjectionResult::direct(FpInterval::Empty);
    };
    for ((al, au), (ol, ou)) in [((yl, yu), (zl, zu)), ((zl, zu), (yl, yu))] {
        if al.is_infinite() && al == au {
            return ProjectionResult::direct(x.meet(&by_infinity(al, ol, ou)));
        }
    }
    let (xl, xu) = if sgn(&yl) != sgn(&yu) && sgn(&zl) != sgn(&zu) {
        // The modes are selected per pair: a zero endpoint gives an exact
        // zero product whose sign test differs from the other pair's.
        let (vl, vu) = (dm_l(&yl, &zu, sel_direct(s, &yl, Op::Mul, &zu).0), dm_u(&yl, &zl, sel_direct(s, &yl, Op::Mul, &zl).1));
        let (wl, wu) = (dm_l(&yu, &zl, sel_direct(s, &yu, Op::Mul, &zl).0), dm_u(&yu, &zu, sel_direct(s, &yu, Op::Mul, &zu).1));
        (vl.sym_min(wl), vu.sym_max(wu))
    } else {
        let (y_l, y_u, z_l, z_u) = if sgn(&yl) == sgn(&yu) {
            sigma(yl, yu, zl, zu)
        } else {
            let (z_l, z_u, y_l, y_u) = sigma(zl, zu, yl, yu);
            (y_l, y_u, z_l, z_u)
        };
        let (rl, _) = sel_direct(s, &y_l, Op::Mul, &z_l);
        let (_, ru) = sel_direct(s, &y_u, Op::Mul, &z_u);
        (dm_l(&y_l, &z_l, rl), dm_u(&y_u, &z_u, ru))
    };
    ProjectionResult::direct(x.meet(&FpInterval::or_empty(xl, xu)))
}

/// Lower bound of `y` from the selected `x_L`, `w_L`.
pub fn im_l(x: &FloatVal, w: &FloatVal, r: RoundingMode, m: EvalMode) -> BoundOutcome {
    let fmt = x.format();
    let (fmin, fmax) = (fmt.fmin(), fmt.fmax());
    let a3p = || match r {
        Down => f(x, Op::Div, w, Up),
        Up => succ(f(&pred(*x), Op::Div, w, Down)),
        _ => least_above(&near_lo(*x).div(leaf(*w)), even(x), m),
    };
    let a3m = || match r {
        Up => f(x, Op::Div, w, Up),
        Down => succ(f(&succ(*x), Op::Div, w, Down)),
        _ => least_above(&near_hi(*x).div(leaf(*w)), even(x), m),
    };
    let a4 = || match r {
        Up => fmt.pos_inf(),
        Down => succ(f(&fmax.negate(), Op::Div, w, Down)),
        _ => least_above(&near_lo(fmax.negate()).div(leaf(*w)), true, m),
    };
    let a5 = || match r {
        Down => fmt.neg_zero(),
        Up => succ(f(&fmin.negate(), Op::Div, w, Down)),
        _ => f(&fmin.negate(), Op::Div, &twice(w, Nearest), Up),
    };
    let a6 = || match r {
        Down => succ(f(&fmin, Op::Div, w, Down)),
        Up => fmt.neg_zero(),
        _ => f(&fmin, Op::Div, &twice(w, Nearest), Up),
    };
    let a7 = || match r {
        Down => fmt.pos_inf(),
        Up => succ(f(&fmax, Op::Div, w, Down)),
        _ => least_above(&near_hi(fmax).div(leaf(*w)), true, m),
    };
    let v = match (class(x), class(w)) {
        (NegInf, NegInf) => fmin,
        (NegInf, Neg) => a4(),
        (NegInf, NegZero) => return BoundOutcome::Unsatisfiable,
        (NegInf, _) => fmt.neg_inf(),
        (Neg | Pos, NegInf | PosInf) => fmin,
        (Neg | Pos, Neg) => a3m(),
        (Neg | Pos, Pos) => a3p(),
        (Neg, NegZero) => return BoundOutcome::Unsatisfiable,
        (Neg, PosZero) => fmax.negate(),
        (NegZero, NegInf | Neg | NegZero) => fmt.pos_zero(),
        (NegZero, PosZero) => fmax.negate(),
        (NegZero, Pos) => a5(),
        (NegZero, PosInf) => fmin,
        (PosZero, NegInf) => fmin,
        (PosZero, Neg) => a6(),
        (PosZero, NegZero) => fmax.negate(),
        (PosZero, _) => fmt.pos_zero(),
        (Pos, NegZero) => fmax.negate(),
        (Pos, PosZero) => return BoundOutcome::Unsatisfiable,
        (PosInf, NegInf | Neg | NegZero) => fmt.neg_inf(),
        (PosInf, PosZero) => return BoundOutcome::Unsatisfiable,
        (PosInf, Pos) => a7(),
        (PosInf, PosInf) => fmin,
    };
    v.into()
}

/// Upper bound of `y` from the selected `x_U`, `w_U`.
pub fn im_u(x: &FloatVal, w: &FloatVal, r: RoundingMode, m: EvalMode) -> BoundOutcome {
    let fmt = x.format();
    let (fmin, fmax) = (fmt.fmin(), fmt.fmax());
    let a8p = || match r {
        Down => pred(f(&succ(*x), Op::Div, w, Up)),
        Up => f(x, Op::Div, w, Down),
        _ => greatest_below(&near_hi(*x).div(leaf(*w)), even(x), m),
    };
    let a8m = || match r {
        Up => pred(f(&pred(*x), Op::Div, w, Up)),
        Down => f(x, Op::Div, w, Down),
        _ => greatest_below(&near_lo(*x).div(leaf(*w)), even(x), m),
    };
    let a9 = || match r {
        Up => fmt.neg_inf(),
        Down => pred(f(&fmax.negate(), Op::Div, w, Up)),
        _ => greatest_below(&near_lo(fmax.negate()).div(leaf(*w)), true, m),
    };
    let a10 = || match r {
        Down => fmt.pos_zero(),
        Up => pred(f(&fmin.negate(), Op::Div, w, Up)),
        _ => f(&fmin.negate(), Op::Div, &twice(w, Nearest), Down),
    };
    let a11 = || match r {
        Down => pred(f(&fmin, Op::Div, w, Up)),
        Up => fmt.pos_zero(),
        _ => f(&fmin, Op::Div, &twice(w, Nearest), Down),
    };
    let a12 = || match r {
        Down => fmt.neg_inf(),
        Up => pred(f(&fmax, Op::Div, w, Up)),
        _ => greatest_below(&near_hi(fmax).div(leaf(*w)), true, m),
    };
    let v = match (class(x), class(w)) {
        (NegInf, NegInf | Neg | NegZero) => fmt.pos_inf(),
        (NegInf, PosZero) => return BoundOutcome::Unsatisfiable,
        (NegInf, Pos) => a9(),
        (NegInf, PosInf) => fmin.negate(),
        (Neg | Pos, NegInf | PosInf) => fmin.negate(),
        (Neg | Pos, Neg) => a8m(),
        (Neg | Pos, Pos) => a8p(),
        (Neg, NegZero) => fmax,
        (Neg, PosZero) => return BoundOutcome::Unsatisfiable,
        (NegZero, NegInf) => fmin.negate(),
        (NegZero, Neg) => a10(),
        (NegZero, NegZero) => fmax,
        (NegZero, _) => fmt.neg_zero(),
        (PosZero, NegInf | Neg | NegZero) => fmt.neg_zero(),
        (PosZero, PosZero) => fmax,
        (PosZero, Pos) => a11(),
        (PosZero, PosInf) => fmin.negate(),
        (Pos, NegZero) => return BoundOutcome::Unsatisfiable,
        (Pos, PosZero) => fmax,
        (PosInf, NegInf) => fmin.negate(),
        (PosInf, Neg) => a12(),
        (PosInf, NegZero) => return BoundOutcome::Unsatisfiable,
        (PosInf, _) => fmt.pos_inf(),
    };
    v.into()
}

/// Inverse projection of `x = y * z` onto `y`. By commutativity the same
/// function refines `z` when called with `y` and `z` swapped.
pub fn mul_inverse(x: &FpInterval, y: &FpInterval, z: &FpInterval, s: RoundingModeSet, m: EvalMode) -> ProjectionResult {
    let Some((xl, xu)) = x.bounds() else {
        return ProjectionResult::inverse(FpInterval::Empty);
    };
    let fmt = xl.format();
    let mut out = FpInterval::Empty;
    for w in [z.meet(&FpInterval::neg_slab(fmt)), z.meet(&FpInterval::pos_slab(fmt))] {
        let Some((wl, wu)) = w.bounds() else { continue };
        let (x_l, x_u, w_l, w_u) = tau(xl, xu, wl, wu);
        let rl = inv_l_left(s, &x_l, Op::Mul, &w_l);
        let ru = inv_u_left(s, &x_u, Op::Mul, &w_u);
        if let (BoundOutcome::Value(l), BoundOutcome::Value(u)) = (im_l(&x_l, &w_l, rl, m), im_u(&x_u, &w_u, ru, m)) {
            out = out.convex_union(&y.meet(&FpInterval::or_empty(l, u)));
        }
    }
    ProjectionResult::inverse(out)
}
