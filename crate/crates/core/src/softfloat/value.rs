use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use super::exact::ExactReal;
use super::format::FloatFormat;

/// Raised when a neighbor or error function is applied outside its domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("succ(+inf) is undefined")]
    SuccOfPosInf,
    #[error("pred(-inf) is undefined")]
    PredOfNegInf,
    #[error("operation undefined on NaN")]
    NaN,
    #[error("parity undefined on infinities")]
    ParityOfInfinity,
}

/// The shape of a [`FloatVal`].
///
/// A finite value equals `mant * 2^(exp - (p - 1))`. Normal values keep
/// `mant` in `[2^(p-1), 2^p)`; subnormals and zeros have `exp == emin` and
/// `mant < 2^(p-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    NegInf,
    Finite { neg: bool, exp: i32, mant: u64 },
    PosInf,
    QNaN,
    SNaN,
}

/// One member of a [`FloatFormat`], NaNs included.
///
/// `==` is structural identity: `-0 != +0` and `NaN == NaN`. Use
/// [`FloatVal::num_eq`] for numerical equivalence.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FloatVal {
    fmt: FloatFormat,
    kind: Kind,
}

impl FloatVal {
    pub(crate) fn from_kind(fmt: FloatFormat, kind: Kind) -> Self {
        FloatVal { fmt, kind }
    }

    pub(crate) fn finite(fmt: FloatFormat, neg: bool, exp: i32, mant: u64) -> Self {
        FloatVal { fmt, kind: Kind::Finite { neg, exp, mant } }
    }

    /// Builds a finite value from sign, exponent and integral significand,
    /// rejecting non-canonical encodings.
    pub fn from_parts(fmt: FloatFormat, neg: bool, exp: i32, mant: u64) -> Option<Self> {
        let hidden = fmt.hidden_bit();
        if mant >= hidden << 1 || exp < fmt.emin() || exp > fmt.emax() {
            return None;
        }
        if mant < hidden && exp != fmt.emin() {
            return None;
        }
        Some(Self::finite(fmt, neg, exp, mant))
    }

    pub fn format(&self) -> FloatFormat {
        self.fmt
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_nan(&self) -> bool {
        matches!(self.kind, Kind::QNaN | Kind::SNaN)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.kind, Kind::NegInf | Kind::PosInf)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, Kind::Finite { .. })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, Kind::Finite { mant: 0, .. })
    }

    /// Finite and nonzero.
    pub fn is_real_nonzero(&self) -> bool {
        matches!(self.kind, Kind::Finite { mant, .. } if mant != 0)
    }

    pub fn is_subnormal(&self) -> bool {
        matches!(self.kind, Kind::Finite { mant, .. } if mant != 0 && mant < self.fmt.hidden_bit())
    }

    pub fn is_normal(&self) -> bool {
        matches!(self.kind, Kind::Finite { mant, .. } if mant >= self.fmt.hidden_bit())
    }

    /// Sign bit; false for NaN.
    pub fn is_sign_negative(&self) -> bool {
        match self.kind {
            Kind::NegInf => true,
            Kind::Finite { neg, .. } => neg,
            _ => false,
        }
    }

    /// `-x`; NaNs are returned unchanged.
    pub fn negate(&self) -> Self {
        let kind = match self.kind {
            Kind::NegInf => Kind::PosInf,
            Kind::PosInf => Kind::NegInf,
            Kind::Finite { neg, exp, mant } => Kind::Finite { neg: !neg, exp, mant },
            k => k,
        };
        FloatVal { fmt: self.fmt, kind }
    }

    pub fn abs(&self) -> Self {
        if self.is_sign_negative() {
            self.negate()
        } else {
            *self
        }
    }

    /// Position in the symbolic order: `+0` is 0, `-0` is -1, `+inf` is the
    /// largest rank. None for NaN.
    pub fn rank(&self) -> Option<i128> {
        let k = match self.kind {
            Kind::NegInf | Kind::PosInf => self.fmt.k_inf(),
            Kind::Finite { exp, mant, .. } => {
                (exp - self.fmt.emin()) as i128 * self.fmt.hidden_bit() as i128 + mant as i128
            }
            _ => return None,
        };
        Some(if self.is_sign_negative() { -k - 1 } else { k })
    }

    /// Inverse of [`FloatVal::rank`]. Panics when out of range.
    pub fn from_rank(fmt: FloatFormat, rank: i128) -> Self {
        let kinf = fmt.k_inf();
        assert!(rank >= -kinf - 1 && rank <= kinf, "rank out of range");
        let (neg, k) = if rank < 0 { (true, -rank - 1) } else { (false, rank) };
        if k == kinf {
            return if neg { fmt.neg_inf() } else { fmt.pos_inf() };
        }
        let h = fmt.hidden_bit() as i128;
        let (exp, mant) = if k < h {
            (fmt.emin(), k as u64)
        } else {
            let q = k / h;
            (fmt.emin() + (q - 1) as i32, (h + k % h) as u64)
        };
        Self::finite(fmt, neg, exp, mant)
    }

    /// Symbolic order; None when either side is NaN.
    pub fn sym_cmp(&self, other: &Self) -> Option<Ordering> {
        debug_assert_eq!(self.fmt, other.fmt, "cross-format comparison");
        Some(self.rank()?.cmp(&other.rank()?))
    }

    /// `self ≼ other`.
    pub fn sym_le(&self, other: &Self) -> bool {
        matches!(self.sym_cmp(other), Some(Ordering::Less | Ordering::Equal))
    }

    /// `self ≺ other`.
    pub fn sym_lt(&self, other: &Self) -> bool {
        matches!(self.sym_cmp(other), Some(Ordering::Less))
    }

    /// Numerical equivalence: like `==` but `-0 ≡ +0`, and false for NaN.
    pub fn num_eq(&self, other: &Self) -> bool {
        match (self.kind, other.kind) {
            _ if self.is_nan() || other.is_nan() => false,
            _ if self.is_zero() && other.is_zero() => true,
            _ => self == other,
        }
    }

    /// Smaller of two values in the symbolic order. Panics on NaN.
    pub fn sym_min(self, other: Self) -> Self {
        if other.sym_lt(&self) {
            other
        } else {
            self
        }
    }

    /// Larger of two values in the symbolic order. Panics on NaN.
    pub fn sym_max(self, other: Self) -> Self {
        if self.sym_lt(&other) {
            other
        } else {
            self
        }
    }

    /// Successor: `succ(±0) = fmin`, `succ(-fmin) = -0`, `succ(fmax) = +inf`.
    pub fn succ(&self) -> Result<Self, DomainError> {
        match self.kind {
            Kind::PosInf => Err(DomainError::SuccOfPosInf),
            _ if self.is_nan() => Err(DomainError::NaN),
            _ if self.is_zero() => Ok(self.fmt.fmin()),
            _ => Ok(Self::from_rank(self.fmt, self.rank().unwrap() + 1)),
        }
    }

    /// Predecessor, `pred(x) = -succ(-x)`.
    pub fn pred(&self) -> Result<Self, DomainError> {
        match self.kind {
            Kind::NegInf => Err(DomainError::PredOfNegInf),
            _ if self.is_nan() => Err(DomainError::NaN),
            _ if self.is_zero() => Ok(self.fmt.fmin().negate()),
            _ => Ok(Self::from_rank(self.fmt, self.rank().unwrap() - 1)),
        }
    }

    /// Parity of the last significand digit. Zeros count as even.
    pub fn is_even(&self) -> Result<bool, DomainError> {
        match self.kind {
            Kind::Finite { mant, .. } => Ok(mant & 1 == 0),
            Kind::NegInf | Kind::PosInf => Err(DomainError::ParityOfInfinity),
            _ => Err(DomainError::NaN),
        }
    }

    pub fn is_odd(&self) -> Result<bool, DomainError> {
        self.is_even().map(|e| !e)
    }

    /// Exact value; None for NaN.
    pub fn to_exact(&self) -> Option<ExactReal> {
        match self.kind {
            Kind::NegInf => Some(ExactReal::NegInf),
            Kind::PosInf => Some(ExactReal::PosInf),
            Kind::Finite { neg, exp, mant } => {
                let e = exp - (self.fmt.p() as i32 - 1);
                let v = ExactReal::dyadic(mant, e);
                Some(if neg { v.neg() } else { v })
            }
            _ => None,
        }
    }

    /// Nearest host double; exact for binary32 and binary64.
    pub fn to_f64(&self) -> f64 {
        match self.kind {
            Kind::NegInf => f64::NEG_INFINITY,
            Kind::PosInf => f64::INFINITY,
            Kind::QNaN | Kind::SNaN => f64::NAN,
            Kind::Finite { neg, exp, mant } => {
                let mut v = mant as f64;
                let mut e = exp - (self.fmt.p() as i32 - 1);
                while e != 0 {
                    let step = e.clamp(-1000, 1000);
                    v *= 2f64.powi(step);
                    e -= step;
                }
                if neg {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// Rounds a host double to nearest in `fmt`. NaN maps to QNaN.
    pub fn from_f64(fmt: FloatFormat, v: f64) -> Self {
        if v.is_nan() {
            return fmt.qnan();
        }
        if v == 0.0 {
            return if v.is_sign_negative() { fmt.neg_zero() } else { fmt.pos_zero() };
        }
        let e = ExactReal::from_f64(v);
        super::round::round(fmt, &e, super::RoundingMode::Nearest)
    }
}

impl fmt::Debug for FloatVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::hex::to_hex(self))
    }
}

impl fmt::Display for FloatVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::hex::to_hex(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mini() -> FloatFormat {
        FloatFormat::mini(3, 2)
    }

    #[test]
    fn neg_zero_precedes_pos_zero() {
        let f = mini();
        assert_eq!(f.neg_zero().sym_cmp(&f.pos_zero()), Some(Ordering::Less));
        assert_eq!(f.pos_zero().sym_cmp(&f.pos_zero()), Some(Ordering::Equal));
        assert_eq!(f.qnan().sym_cmp(&f.pos_zero()), None);
    }

    #[test]
    fn enumeration_is_strict_chain() {
        let all = mini().enumerate_all();
        for w in all.windows(2) {
            assert!(w[0].sym_lt(&w[1]));
            if w[0].is_zero() && w[1].is_zero() {
                continue;
            }
            assert!(w[0].succ().unwrap().num_eq(&w[1]));
        }
        assert_eq!(all[0], mini().neg_inf());
        assert_eq!(all[41], mini().pos_inf());
        let mut vals: Vec<f64> = all.iter().map(|v| v.to_f64()).collect();
        vals.dedup();
        assert_eq!(vals.len(), 41);
    }

    #[test]
    fn neighbor_special_cases() {
        let f = mini();
        assert_eq!(f.fmin().negate().succ().unwrap(), f.neg_zero());
        assert_eq!(f.fmax().succ().unwrap(), f.pos_inf());
        assert_eq!(f.neg_inf().succ().unwrap(), f.fmax().negate());
        assert_eq!(f.pos_zero().succ().unwrap(), f.fmin());
        assert_eq!(f.neg_zero().succ().unwrap(), f.fmin());
        assert_eq!(f.pos_inf().succ(), Err(DomainError::SuccOfPosInf));
        assert_eq!(f.neg_inf().pred(), Err(DomainError::PredOfNegInf));
        assert_eq!(f.fmin().pred().unwrap(), f.pos_zero());
        let x = FloatVal::from_f64(f, 1.5);
        assert_eq!(x.succ().unwrap().to_f64(), 1.75);
    }

    #[test]
    fn parity() {
        let f = mini();
        assert!(f.fmax().is_odd().unwrap());
        assert!(f.fmin().is_odd().unwrap());
        assert!(FloatVal::from_f64(f, 1.5).is_even().unwrap());
        assert!(f.neg_zero().is_even().unwrap());
        assert!(f.pos_inf().is_even().is_err());
    }

    #[test]
    fn rank_round_trip_binary64() {
        let f = FloatFormat::BINARY64;
        for v in [0.0, -0.0, 1.0, -2.5, f64::MIN_POSITIVE, 5e-324, f64::MAX, f64::INFINITY] {
            let x = FloatVal::from_f64(f, v);
            assert_eq!(FloatVal::from_rank(f, x.rank().unwrap()), x);
            assert_eq!(x.to_f64().to_bits(), v.to_bits());
        }
    }

    #[test]
    fn from_parts_rejects_noncanonical() {
        let f = mini();
        assert!(FloatVal::from_parts(f, false, 0, 3).is_none());
        assert!(FloatVal::from_parts(f, false, -1, 3).is_some());
        assert!(FloatVal::from_parts(f, false, 3, 4).is_none());
    }
}
