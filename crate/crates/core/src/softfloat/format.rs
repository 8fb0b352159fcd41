use thiserror::Error;

use super::value::{FloatVal, Kind};

/// Errors raised when constructing a [`FloatFormat`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("precision must be in 2..=62, got {0}")]
    Precision(u32),
    #[error("emax must be in 1..=16383, got {0}")]
    Emax(i32),
}

/// A binary floating-point format with `p` significant digits and maximum
/// exponent `emax`. The minimum exponent is `1 - emax`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FloatFormat {
    p: u32,
    emax: i32,
}

impl FloatFormat {
    /// IEEE 754 binary32.
    pub const BINARY32: FloatFormat = FloatFormat { p: 24, emax: 127 };
    /// IEEE 754 binary64.
    pub const BINARY64: FloatFormat = FloatFormat { p: 53, emax: 1023 };

    pub fn new(p: u32, emax: i32) -> Result<Self, FormatError> {
        if !(2..=62).contains(&p) {
            return Err(FormatError::Precision(p));
        }
        if !(1..=16383).contains(&emax) {
            return Err(FormatError::Emax(emax));
        }
        Ok(FloatFormat { p, emax })
    }

    /// Shorthand for small test formats; panics on invalid parameters.
    pub fn mini(p: u32, emax: i32) -> Self {
        Self::new(p, emax).expect("invalid float format")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn emax(&self) -> i32 {
        self.emax
    }

    pub fn emin(&self) -> i32 {
        1 - self.emax
    }

    /// `2^(p-1)`, the smallest normal significand.
    pub(crate) fn hidden_bit(&self) -> u64 {
        1u64 << (self.p - 1)
    }

    /// Smallest positive subnormal, `2^(emin+1-p)`.
    pub fn fmin(&self) -> FloatVal {
        FloatVal::finite(*self, false, self.emin(), 1)
    }

    /// Smallest positive normal, `2^emin`.
    pub fn fnor_min(&self) -> FloatVal {
        FloatVal::finite(*self, false, self.emin(), self.hidden_bit())
    }

    /// Largest finite value, `2^emax (2 - 2^(1-p))`.
    pub fn fmax(&self) -> FloatVal {
        FloatVal::finite(*self, false, self.emax, (1u64 << self.p) - 1)
    }

    pub fn pos_inf(&self) -> FloatVal {
        FloatVal::from_kind(*self, Kind::PosInf)
    }

    pub fn neg_inf(&self) -> FloatVal {
        FloatVal::from_kind(*self, Kind::NegInf)
    }

    pub fn pos_zero(&self) -> FloatVal {
        FloatVal::finite(*self, false, self.emin(), 0)
    }

    pub fn neg_zero(&self) -> FloatVal {
        FloatVal::finite(*self, true, self.emin(), 0)
    }

    pub fn qnan(&self) -> FloatVal {
        FloatVal::from_kind(*self, Kind::QNaN)
    }

    pub fn snan(&self) -> FloatVal {
        FloatVal::from_kind(*self, Kind::SNaN)
    }

    /// Magnitude ordinal of `+inf`; finite magnitudes occupy `0..k_inf`.
    pub(crate) fn k_inf(&self) -> i128 {
        (self.emax as i128 - self.emin() as i128 + 2) * self.hidden_bit() as i128
    }

    /// Number of non-NaN values, both zeros and both infinities included.
    pub fn count(&self) -> u128 {
        2 * (self.k_inf() as u128 + 1)
    }

    /// Every non-NaN value in increasing symbolic order.
    ///
    /// Only meant for tiny formats; the caller is responsible for the size.
    pub fn enumerate_all(&self) -> Vec<FloatVal> {
        let k = self.k_inf();
        (-k - 1..=k).map(|r| FloatVal::from_rank(*self, r)).collect()
    }
}

impl std::fmt::Display for FloatFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            FloatFormat::BINARY32 => write!(f, "binary32"),
            FloatFormat::BINARY64 => write!(f, "binary64"),
            _ => write!(f, "mini({},{})", self.p, self.emax),
        }
    }
}
