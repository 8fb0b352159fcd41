//! Addition: direct projection and inverse projection of an operand.

use super::common::*;
use super::ProjectionResult;
use crate::errfun::EvalMode;
use crate::intervals::FpInterval;
use crate::roundsel::{inv_l_left, inv_u_left, sel_direct, RoundingModeSet};
use crate::softfloat::{FloatVal, Op, RoundingMode};

use Class::*;
use RoundingMode::{Down, Nearest, Up};

/// New lower bound of `x` from `y_l`, `z_l`.
pub fn da_l(y: &FloatVal, z: &FloatVal, r: RoundingMode) -> FloatVal {
    let fmt = y.format();
    let a1 = if r == Down { fmt.neg_zero() } else { fmt.pos_zero() };
    match (class(y), class(z)) {
        (PosInf, _) | (_, PosInf) => fmt.pos_inf(),
        (NegInf, _) | (_, NegInf) => fmt.neg_inf(),
        (Neg | Pos, Neg | Pos) => f(y, Op::Add, z, r),
        (Neg | Pos, _) => *y,
        (_, Neg | Pos) => *z,
        (NegZero, NegZero) => fmt.neg_zero(),
        (PosZero, PosZero) => fmt.pos_zero(),
        _ => a1,
    }
}

/// New upper bound of `x` from `y_u`, `z_u`.
pub fn da_u(y: &FloatVal, z: &FloatVal, r: RoundingMode) -> FloatVal {
    let fmt = y.format();
    let a2 = if r == Down { fmt.neg_zero() } else { fmt.pos_zero() };
    match (class(y), class(z)) {
        (NegInf, _) | (_, NegInf) => fmt.neg_inf(),
        (PosInf, _) | (_, PosInf) => fmt.pos_inf(),
        (Neg | Pos, Neg | Pos) => f(y, Op::Add, z, r),
        (Neg | Pos, _) => *y,
        (_, Neg | Pos) => *z,
        (NegZero, NegZero) => fmt.neg_zero(),
        (PosZero, PosZero) => fmt.pos_zero(),
        _ => a2,
    }
}

/// Direct projection of `x = y + z`.
pub fn add_direct(x: &FpInterval, y: &FpInterval, z: &FpInterval, s: RoundingModeSet) -> ProjectionResult {
    let (Some((yl, yu)), Some((zl, zu))) = (y.bounds(), z.bounds()) else {
        return ProjectionResult::direct(FpInterval::Empty);
    };
    let (rl, _) = sel_direct(s, &yl, Op::Add, &zl);
    let (_, ru) = sel_direct(s, &yu, Op::Add, &zu);
    let xl = da_l(&yl, &zl, rl);
    let xu = da_u(&yu, &zu, ru);
    ProjectionResult::direct(x.meet(&FpInterval::or_empty(xl, xu)))
}

/// Lower bound of `y` from `x_l`, `z_u`.
pub fn ia_l(xl: &FloatVal, zu: &FloatVal, r: RoundingMode, m: EvalMode) -> BoundOutcome {
    let fmt = xl.format();
    let a3 = || -> FloatVal {
        match r {
            Nearest => {
                let nabla = nabla_neg(xl);
                if nabla.num_eq(&fmt.fmin().negate()) {
                    if xl == zu {
                        fmt.neg_zero()
                    } else {
                        f(xl, Op::Sub, zu, Up)
                    }
                } else {
                    let e = near_lo(*xl).sub(leaf(*zu));
                    if even(xl) {
                        let u = up(&e, m);
                        if u.exact {
                            u.value
                        } else {
                            down(&e, m).value
                        }
                    } else {
                        succ(down(&e, m).value)
                    }
                }
            }
            Down => {
                if xl == zu {
                    fmt.neg_zero()
                } else {
                    f(xl, Op::Sub, zu, Up)
                }
            }
            _ => succ(f(&pred(*xl), Op::Sub, zu, Down)),
        }
    };
    let a4 = || if r == Down { succ(zu.negate()) } else { zu.negate() };
    let a5 = if r == Down { fmt.pos_zero() } else { fmt.neg_zero() };
    let a6 = || match r {
        Down => fmt.pos_inf(),
        Up => succ(f(&fmt.fmax(), Op::Sub, zu, Down)),
        _ => {
            // y + z_u must reach the overflow threshold fmax + ∇2n+(fmax)/2
            let e = near_hi(fmt.fmax()).sub(leaf(*zu));
            let u = up(&e, m);
            if u.exact {
                u.value
            } else {
                down(&e, m).value
            }
        }
    };
    let v = match (class(xl), class(zu)) {
        (NegInf, _) => fmt.neg_inf(),
        (_, NegInf) => return BoundOutcome::Unsatisfiable,
        (_, PosInf) => fmt.fmax().negate(),
        (Neg | Pos, Neg | Pos) => a3(),
        (Neg | Pos, _) => *xl,
        (NegZero, Neg | Pos) => zu.negate(),
        (NegZero, _) => fmt.neg_zero(),
        (PosZero, PosZero) => a5,
        (PosZero, _) => a4(),
        (PosInf, Pos) => a6(),
        (PosInf, _) => fmt.pos_inf(),
    };
    v.into()
}

/// Upper bound of `y` from `x_u`, `z_l`.
pub fn ia_u(xu: &FloatVal, zl: &FloatVal, r: RoundingMode, m: EvalMode) -> BoundOutcome {
    let fmt = xu.format();
    let a7 = || match r {
        Up => fmt.neg_inf(),
        Down => pred(f(&fmt.fmax().negate(), Op::Sub, zl, Up)),
        _ => {
            let e = near_lo(fmt.fmax().negate()).sub(leaf(*zl));
            let d = down(&e, m);
            if d.exact {
                d.value
            } else {
                up(&e, m).value
            }
        }
    };
    let a8 = || -> FloatVal {
        match r {
            Nearest => {
                let nabla = nabla_pos(xu);
                if nabla.num_eq(&fmt.fmin()) {
                    if xu == zl {
                        fmt.pos_zero()
                    } else {
                        f(xu, Op::Sub, zl, Down)
                    }
                } else {
                    let e = near_hi(*xu).sub(leaf(*zl));
                    if even(xu) {
                        let d = down(&e, m);
                        if d.exact {
                            d.value
                        } else {
                            up(&e, m).value
                        }
                    } else {
                        pred(up(&e, m).value)
                    }
                }
            }
            Down => pred(f(&succ(*xu), Op::Sub, zl, Up)),
            _ => {
                if xu == zl {
                    fmt.pos_zero()
                } else {
                    f(xu, Op::Sub, zl, Down)
                }
            }
        }
    };
    let a9 = || if r == Down { zl.negate() } else { pred(zl.negate()) };
    let a10 = if r == Down { fmt.pos_zero() } else { fmt.neg_zero() };
    let v = match (class(xu), class(zl)) {
        (PosInf, _) => fmt.pos_inf(),
        (_, PosInf) => return BoundOutcome::Unsatisfiable,
        (_, NegInf) => fmt.fmax(),
        (NegInf, Neg) => a7(),
        (NegInf, _) => fmt.neg_inf(),
        (Neg | Pos, Neg | Pos) => a8(),
        (Neg | Pos, _) => *xu,
        (NegZero, NegZero) => a10,
        (NegZero, _) => a9(),
        (PosZero, Neg | Pos) => zl.negate(),
        (PosZero, _) => fmt.pos_zero(),
    };
    v.into()
}

/// Inverse projection of `x = y + z` onto `y`. By commutativity the same
/// function refines `z` when called with `y` and `z` swapped.
pub fn add_inverse(x: &FpInterval, y: &FpInterval, z: &FpInterval, s: RoundingModeSet, m: EvalMode) -> ProjectionResult {
    let (Some((xl, xu)), Some((zl, zu))) = (x.bounds(), z.bounds()) else {
        return ProjectionResult::inverse(FpInterval::Empty);
    };
    let rl = inv_l_left(s, &xl, Op::Add, &zu);
    let ru = inv_u_left(s, &xu, Op::Add, &zl);
    let out = match (ia_l(&xl, &zu, rl, m), ia_u(&xu, &zl, ru, m)) {
        (BoundOutcome::Value(l), BoundOutcome::Value(u)) => y.meet(&FpInterval::or_empty(l, u)),
        _ => FpInterval::Empty,
    };
    ProjectionResult::inverse(out)
}
