//! Operand classes, sign helpers and the extremum selectors shared by the
//! projection tables.

use crate::errfun::{err2_near_neg, err2_near_pos, eval_down, eval_up, Eval, EvalMode, RealExpr};
use crate::softfloat::{fp_op, FloatVal, Op, RoundingMode};

/// Row and column labels of the case-analysis tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    NegInf,
    Neg,
    NegZero,
    PosZero,
    Pos,
    PosInf,
}

pub fn class(x: &FloatVal) -> Class {
    debug_assert!(!x.is_nan());
    if x.is_infinite() {
        if x.is_sign_negative() {
            Class::NegInf
        } else {
            Class::PosInf
        }
    } else if x.is_zero() {
        if x.is_sign_negative() {
            Class::NegZero
        } else {
            Class::PosZero
        }
    } else if x.is_sign_negative() {
        Class::Neg
    } else {
        Class::Pos
    }
}

/// Sign by sign bit: `sgn(-0) = -1`, `sgn(+0) = 1`.
pub fn sgn(x: &FloatVal) -> i32 {
    if x.is_sign_negative() {
        -1
    } else {
        1
    }
}

/// Result of a table lookup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundOutcome {
    Value(FloatVal),
    /// No operand value can satisfy the constraint.
    Unsatisfiable,
}

impl BoundOutcome {
    pub fn value(self) -> Option<FloatVal> {
        match self {
            BoundOutcome::Value(v) => Some(v),
            BoundOutcome::Unsatisfiable => None,
        }
    }
}

impl From<FloatVal> for BoundOutcome {
    fn from(v: FloatVal) -> Self {
        BoundOutcome::Value(v)
    }
}

/// `τ(y_l, y_u, w_l, w_u)`; `w` must have constant sign.
pub fn tau(yl: FloatVal, yu: FloatVal, wl: FloatVal, wu: FloatVal) -> (FloatVal, FloatVal, FloatVal, FloatVal) {
    let (syl, syu, swl, swu) = (sgn(&yl), sgn(&yu), sgn(&wl), sgn(&wu));
    debug_assert_eq!(swl, swu);
    if swu == -1 && syu == -1 {
        (yu, yl, wl, wu)
    } else if -swu == 1 && syl == 1 {
        (yu, yl, wu, wl)
    } else if -swu == 1 && -syl == 1 && syu == 1 {
        (yu, yl, wu, wu)
    } else if -swl == -1 && syu == -1 {
        (yl, yu, wl, wu)
    } else if swl == 1 && syl == 1 {
        (yl, yu, wu, wl)
    } else {
        debug_assert!(swl == 1 && -syl == 1 && syu == 1);
        (yl, yu, wl, wl)
    }
}

/// `σ(z_l, z_u, x_l, x_u)`; `z` must have constant sign.
pub fn sigma(zl: FloatVal, zu: FloatVal, xl: FloatVal, xu: FloatVal) -> (FloatVal, FloatVal, FloatVal, FloatVal) {
    let (szl, szu, sxl, sxu) = (sgn(&zl), sgn(&zu), sgn(&xl), sgn(&xu));
    debug_assert_eq!(szl, szu);
    if szl == 1 && sxl == 1 {
        (zl, zu, xl, xu)
    } else if szl == 1 && -sxu == 1 {
        (zu, zl, xl, xu)
    } else if szl == 1 && -sxl == 1 && sxu == 1 {
        (zu, zu, xl, xu)
    } else if szu == -1 && sxu == -1 {
        (zu, zl, xu, xl)
    } else if -szu == 1 && sxl == 1 {
        (zl, zu, xu, xl)
    } else {
        debug_assert!(-szu == 1 && -sxl == 1 && sxu == 1);
        (zl, zl, xu, xl)
    }
}

/// Shorthand for `a op_r b`.
pub fn f(a: &FloatVal, o: Op, b: &FloatVal, r: RoundingMode) -> FloatVal {
    fp_op(a, o, b, r)
}

pub fn succ(x: FloatVal) -> FloatVal {
    x.succ().expect("successor defined")
}

pub fn pred(x: FloatVal) -> FloatVal {
    x.pred().expect("predecessor defined")
}

pub fn nabla_neg(x: &FloatVal) -> FloatVal {
    err2_near_neg(x).expect("∇2n- defined on non-NaN")
}

pub fn nabla_pos(x: &FloatVal) -> FloatVal {
    err2_near_pos(x).expect("∇2n+ defined on non-NaN")
}

pub fn even(x: &FloatVal) -> bool {
    x.is_even().expect("parity of a finite value")
}

pub fn leaf(x: FloatVal) -> RealExpr {
    RealExpr::float(x)
}

/// `x + ∇2n-(x)/2`.
pub fn near_lo(x: FloatVal) -> RealExpr {
    leaf(x).add(leaf(nabla_neg(&x)).half())
}

/// `x + ∇2n+(x)/2`.
pub fn near_hi(x: FloatVal) -> RealExpr {
    leaf(x).add(leaf(nabla_pos(&x)).half())
}

pub fn up(e: &RealExpr, m: EvalMode) -> Eval {
    eval_up(e, m)
}

pub fn down(e: &RealExpr, m: EvalMode) -> Eval {
    eval_down(e, m)
}

/// `x / 2`, exact whenever the half is representable.
pub fn half(x: &FloatVal) -> FloatVal {
    let two = FloatVal::from_f64(x.format(), 2.0);
    let h = fp_op(x, Op::Div, &two, RoundingMode::Nearest);
    debug_assert!(h.to_exact().map(|v| v == x.to_exact().unwrap().half()).unwrap_or(true));
    h
}

/// `x * 2`.
pub fn twice(x: &FloatVal, r: RoundingMode) -> FloatVal {
    let two = FloatVal::from_f64(x.format(), 2.0);
    fp_op(x, Op::Mul, &two, r)
}

/// `x / 2` rounded in direction `r`.
pub fn halve(x: &FloatVal, r: RoundingMode) -> FloatVal {
    let two = FloatVal::from_f64(x.format(), 2.0);
    fp_op(x, Op::Div, &two, r)
}

/// Least float above the real `e`, or at `e` when `tie_ok`.
/// Falls back to a looser bound when the evaluation is not exact.
pub fn least_above(e: &RealExpr, tie_ok: bool, m: EvalMode) -> FloatVal {
    if tie_ok {
        let u = up(e, m);
        if u.exact {
            u.value
        } else {
            down(e, m).value
        }
    } else {
        succ(down(e, m).value)
    }
}

/// Greatest float below the real `e`, or at `e` when `tie_ok`.
pub fn greatest_below(e: &RealExpr, tie_ok: bool, m: EvalMode) -> FloatVal {
    if tie_ok {
        let d = down(e, m);
        if d.exact {
            d.value
        } else {
            up(e, m).value
        }
    } else {
        pred(up(e, m).value)
    }
}
