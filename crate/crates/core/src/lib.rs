//! Interval constraint propagation for IEEE 754 binary floating-point
//! arithmetic under sets of rounding modes.

pub mod softfloat;
pub mod intervals;
pub mod roundsel;
pub mod errfun;
pub mod projections;
pub mod propagate;
