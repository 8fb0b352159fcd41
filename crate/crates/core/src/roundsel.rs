//! Worst-case rounding-mode selection: each set of modes is reduced to one
//! mode for the lower bound and one for the upper bound.

use crate::softfloat::{exact_result, FloatVal, Op, RoundingMode};

/// A nonempty subset of the four rounding modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RoundingModeSet(u8);

fn bit(r: RoundingMode) -> u8 {
    match r {
        RoundingMode::Down => 1,
        RoundingMode::TowardZero => 2,
        RoundingMode::Up => 4,
        RoundingMode::Nearest => 8,
    }
}

impl RoundingModeSet {
    /// None for an empty list.
    pub fn new(modes: &[RoundingMode]) -> Option<Self> {
        let m = modes.iter().fold(0, |acc, r| acc | bit(*r));
        (m != 0).then_some(RoundingModeSet(m))
    }

    pub fn single(r: RoundingMode) -> Self {
        RoundingModeSet(bit(r))
    }

    pub fn all() -> Self {
        RoundingModeSet(15)
    }

    /// The 15 nonempty subsets.
    pub fn all_sets() -> Vec<Self> {
        (1..16).map(RoundingModeSet).collect()
    }

    pub fn contains(&self, r: RoundingMode) -> bool {
        self.0 & bit(r) != 0
    }

    pub fn modes(&self) -> impl Iterator<Item = RoundingMode> + '_ {
        RoundingMode::ALL.into_iter().filter(|r| self.contains(*r))
    }
}

/// Sign of the exact `y op z`; None for invalid forms.
fn exact_sign(y: &FloatVal, op: Op, z: &FloatVal) -> Option<i32> {
    exact_result(y, op, z).map(|v| v.signum())
}

/// `(r_l, r_u)` for a direct projection. Never returns `TowardZero`.
///
/// For invalid forms such as `inf - inf` the sign tests count as false.
pub fn sel_direct(s: RoundingModeSet, y: &FloatVal, op: Op, z: &FloatVal) -> (RoundingMode, RoundingMode) {
    use RoundingMode::*;
    let sign = exact_sign(y, op, z);
    let rl = if s.contains(Down) || (s.contains(TowardZero) && sign.is_some_and(|g| g > 0)) {
        Down
    } else if s.contains(Nearest) {
        Nearest
    } else {
        Up
    };
    let ru = if s.contains(Up) || (s.contains(TowardZero) && sign.is_some_and(|g| g <= 0)) {
        Up
    } else if s.contains(Nearest) {
        Nearest
    } else {
        Down
    };
    (rl, ru)
}

/// `r̂_l(S, op, b)`.
pub fn r_hat_l(s: RoundingModeSet, op: Op, b: &FloatVal) -> RoundingMode {
    use RoundingMode::*;
    let neg_zero = b.sym_le(&b.format().neg_zero());
    let pos_zero_additive = *b == b.format().pos_zero() && matches!(op, Op::Add | Op::Sub);
    if s.contains(Up) || (s.contains(TowardZero) && (neg_zero || pos_zero_additive)) {
        Up
    } else if s.contains(Nearest) {
        Nearest
    } else {
        Down
    }
}

/// `r̂_u(S, b)`.
pub fn r_hat_u(s: RoundingModeSet, b: &FloatVal) -> RoundingMode {
    use RoundingMode::*;
    if s.contains(Down) || (s.contains(TowardZero) && b.format().pos_zero().sym_le(b)) {
        Down
    } else if s.contains(Nearest) {
        Nearest
    } else {
        Up
    }
}

/// `(r̄_l^l, r̄_u^l)`: selectors when projecting the left operand `y` of
/// `x = y op a`. The lower one takes `b = x_l`, the upper one `b = x_u`
/// at the call sites; this helper evaluates both for a single `b`.
fn pair(s: RoundingModeSet, b: &FloatVal, op: Op, swap: bool) -> (RoundingMode, RoundingMode) {
    let (l, u) = (r_hat_l(s, op, b), r_hat_u(s, b));
    if swap {
        (u, l)
    } else {
        (l, u)
    }
}

fn is_neg(a: &FloatVal) -> bool {
    a.sym_le(&a.format().neg_zero())
}

/// `(r̄_l^l(S, b, op, a), r̄_u^l(S, b, op, a))`.
pub fn sel_inverse_left(s: RoundingModeSet, b: &FloatVal, op: Op, a: &FloatVal) -> (RoundingMode, RoundingMode) {
    let swap = matches!(op, Op::Mul | Op::Div) && is_neg(a);
    pair(s, b, op, swap)
}

/// `(r̄_l^r(S, b, op, a), r̄_u^r(S, b, op, a))`.
pub fn sel_inverse_right(s: RoundingModeSet, b: &FloatVal, op: Op, a: &FloatVal) -> (RoundingMode, RoundingMode) {
    let swap = match op {
        Op::Add => false,
        Op::Sub => true,
        Op::Mul => is_neg(a),
        Op::Div => !is_neg(a),
    };
    pair(s, b, op, swap)
}

/// Lower selector for the left operand: `r̄_l^l(S, b, op, a)`.
pub fn inv_l_left(s: RoundingModeSet, b: &FloatVal, op: Op, a: &FloatVal) -> RoundingMode {
    sel_inverse_left(s, b, op, a).0
}

/// Upper selector for the left operand: `r̄_u^l(S, b, op, a)`.
pub fn inv_u_left(s: RoundingModeSet, b: &FloatVal, op: Op, a: &FloatVal) -> RoundingMode {
    sel_inverse_left(s, b, op, a).1
}

/// Lower selector for the right operand: `r̄_l^r(S, b, op, a)`.
pub fn inv_l_right(s: RoundingModeSet, b: &FloatVal, op: Op, a: &FloatVal) -> RoundingMode {
    sel_inverse_right(s, b, op, a).0
}

/// Upper selector for the right operand: `r̄_u^r(S, b, op, a)`.
pub fn inv_u_right(s: RoundingModeSet, b: &FloatVal, op: Op, a: &FloatVal) -> RoundingMode {
    sel_inverse_right(s, b, op, a).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::softfloat::{fp_op, FloatFormat};
    use RoundingMode::*;

    fn mini() -> FloatFormat {
        FloatFormat::mini(3, 2)
    }

    #[test]
    fn toward_zero_on_positive_result_selects_down() {
        let f = mini();
        let one = FloatVal::from_f64(f, 1.0);
        let s = RoundingModeSet::single(TowardZero);
        assert_eq!(sel_direct(s, &one, Op::Add, &one), (Down, Down));
        assert_eq!(sel_direct(s, &one, Op::Sub, &one), (Up, Up));
        assert_eq!(sel_direct(s, &one.negate(), Op::Mul, &one), (Up, Up));
    }

    #[test]
    fn singletons_return_themselves() {
        let f = mini();
        let (y, z) = (FloatVal::from_f64(f, 1.5), FloatVal::from_f64(f, -3.0));
        for r in [Down, Up, Nearest] {
            let s = RoundingModeSet::single(r);
            assert_eq!(sel_direct(s, &y, Op::Mul, &z), (r, r));
            assert_eq!(sel_inverse_left(s, &y, Op::Mul, &z), (r, r));
            assert_eq!(sel_inverse_right(s, &y, Op::Div, &z), (r, r));
        }
    }

    #[test]
    fn never_toward_zero() {
        let vals = mini().enumerate_all();
        for s in RoundingModeSet::all_sets() {
            for y in &vals {
                for z in &vals {
                    for op in Op::ALL {
                        let (l, u) = sel_direct(s, y, op, z);
                        assert!(l != TowardZero && u != TowardZero);
                        let (l, u) = sel_inverse_left(s, y, op, z);
                        assert!(l != TowardZero && u != TowardZero);
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication_by_negative_swaps() {
        let f = mini();
        let s = RoundingModeSet::new(&[Down, Nearest]).unwrap();
        let b = FloatVal::from_f64(f, 2.0);
        let a = FloatVal::from_f64(f, -1.0);
        assert_eq!(sel_inverse_left(s, &b, Op::Add, &a), (Nearest, Down));
        assert_eq!(sel_inverse_left(s, &b, Op::Mul, &a), (Down, Nearest));
        assert_eq!(sel_inverse_right(s, &b, Op::Sub, &a), (Down, Nearest));
    }

    #[test]
    fn sandwich_on_a_few_cells() {
        let f = mini();
        let vals = f.enumerate_all();
        let s = RoundingModeSet::new(&[TowardZero, Nearest]).unwrap();
        for y in &vals {
            for z in &vals {
                if z.is_zero() {
                    continue;
                }
                let (l, u) = sel_direct(s, y, Op::Div, z);
                let lo = fp_op(y, Op::Div, z, l);
                let hi = fp_op(y, Op::Div, z, u);
                if lo.is_nan() {
                    continue;
                }
                for r in s.modes() {
                    let x = fp_op(y, Op::Div, z, r);
                    assert!(lo.sym_le(&x) && x.sym_le(&hi));
                }
            }
        }
    }
}
