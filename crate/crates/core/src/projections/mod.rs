//! Direct and inverse interval projections for `+ - * /` under sets of
//! rounding modes.
//!
//! Each case-analysis table is a dispatch on the classes
//! `{-inf, R-, -0, +0, R+, +inf}` of its two arguments.

pub mod add;
pub mod common;
pub mod div;
pub mod mul;
pub mod sub;

pub use common::{BoundOutcome, Class};

use crate::errfun::EvalMode;
use crate::intervals::FpInterval;
use crate::roundsel::RoundingModeSet;
use crate::softfloat::Op;

/// Outcome of a projection, already met with the projected variable's
/// input interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectionResult {
    pub interval: FpInterval,
    /// Set by direct projections, which target the optimal interval.
    pub optimal: bool,
}

impl ProjectionResult {
    pub(crate) fn direct(interval: FpInterval) -> Self {
        ProjectionResult { interval, optimal: true }
    }

    pub(crate) fn inverse(interval: FpInterval) -> Self {
        ProjectionResult { interval, optimal: false }
    }
}

/// Which operand of `x = y op z` is refined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operand {
    Left,
    Right,
}

/// Hook for an extra filter (for instance maximum-ULP filtering) that
/// further narrows an inverse projection. The default leaves it unchanged.
pub trait InverseFilter {
    #[allow(clippy::too_many_arguments)]
    fn refine(
        &self,
        op: Op,
        which: Operand,
        x: &FpInterval,
        y: &FpInterval,
        z: &FpInterval,
        s: RoundingModeSet,
        projected: FpInterval,
    ) -> FpInterval {
        let _ = (op, which, x, y, z, s);
        projected
    }
}

/// The identity filter.
pub struct NoFilter;

impl InverseFilter for NoFilter {}

/// Direct projection of `x = y op z`.
pub fn direct(op: Op, x: &FpInterval, y: &FpInterval, z: &FpInterval, s: RoundingModeSet) -> ProjectionResult {
    match op {
        Op::Add => add::add_direct(x, y, z, s),
        Op::Sub => sub::sub_direct(x, y, z, s),
        Op::Mul => mul::mul_direct(x, y, z, s),
        Op::Div => div::div_direct(x, y, z, s),
    }
}

/// Inverse projection of `x = y op z` onto the chosen operand.
pub fn inverse(
    op: Op,
    which: Operand,
    x: &FpInterval,
    y: &FpInterval,
    z: &FpInterval,
    s: RoundingModeSet,
    m: EvalMode,
) -> ProjectionResult {
    match (op, which) {
        (Op::Add, Operand::Left) => add::add_inverse(x, y, z, s, m),
        (Op::Add, Operand::Right) => add::add_inverse(x, z, y, s, m),
        (Op::Sub, Operand::Left) => sub::sub_inverse_first(x, y, z, s, m),
        (Op::Sub, Operand::Right) => sub::sub_inverse_second(x, y, z, s, m),
        (Op::Mul, Operand::Left) => mul::mul_inverse(x, y, z, s, m),
        (Op::Mul, Operand::Right) => mul::mul_inverse(x, z, y, s, m),
        (Op::Div, Operand::Left) => div::div_inverse_first(x, y, z, s, m),
        (Op::Div, Operand::Right) => div::div_inverse_second(x, y, z, s, m),
    }
}

/// [`inverse`] followed by an extra filter.
#[allow(clippy::too_many_arguments)]
pub fn inverse_filtered(
    op: Op,
    which: Operand,
    x: &FpInterval,
    y: &FpInterval,
    z: &FpInterval,
    s: RoundingModeSet,
    m: EvalMode,
    filter: &dyn InverseFilter,
) -> ProjectionResult {
    let r = inverse(op, which, x, y, z, s, m);
    let refined = filter.refine(op, which, x, y, z, s, r.interval);
    let own = if which == Operand::Left { y } else { z };
    ProjectionResult::inverse(refined.meet(&r.interval).meet(own))
}
