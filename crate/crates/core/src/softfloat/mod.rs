//! Parametric binary floating-point formats with exact software arithmetic.

mod exact;
mod format;
pub mod hex;
mod ops;
mod round;
mod value;

pub use exact::ExactReal;
pub use format::{FloatFormat, FormatError};
pub use ops::{exact_result, fp_op, is_invalid};
pub use round::round;
pub use value::{DomainError, FloatVal, Kind};

/// IEEE 754 rounding-direction attributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoundingMode {
    /// Toward minus infinity.
    Down,
    TowardZero,
    /// Toward plus infinity.
    Up,
    /// To nearest, ties to even.
    Nearest,
}

impl RoundingMode {
    pub const ALL: [RoundingMode; 4] =
        [RoundingMode::Down, RoundingMode::TowardZero, RoundingMode::Up, RoundingMode::Nearest];
}

/// The four arithmetic operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::Add, Op::Sub, Op::Mul, Op::Div];

    pub fn symbol(&self) -> char {
        match self {
            Op::Add => '+',
            Op::Sub => '-',
            Op::Mul => '*',
            Op::Div => '/',
        }
    }
}
