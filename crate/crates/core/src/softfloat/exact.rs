use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

/// An exact extended real: a rational `num / den` with `den > 0`, or an
/// infinity. Fractions are not reduced; every operation is exact.
#[derive(Clone, Debug)]
pub enum ExactReal {
    NegInf,
    Finite { num: BigInt, den: BigUint },
    PosInf,
}

impl ExactReal {
    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn from_int(v: i64) -> Self {
        ExactReal::Finite { num: BigInt::from(v), den: BigUint::one() }
    }

    /// `n / d`; panics on zero denominator.
    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        let r = ExactReal::Finite { num: BigInt::from(n.unsigned_abs()), den: BigUint::from(d.unsigned_abs()) };
        if (n < 0) != (d < 0) {
            r.neg()
        } else {
            r
        }
    }

    /// `mant * 2^exp`.
    pub fn dyadic(mant: u64, exp: i32) -> Self {
        let m = BigInt::from(mant);
        if exp >= 0 {
            ExactReal::Finite { num: m << exp as usize, den: BigUint::one() }
        } else {
            ExactReal::Finite { num: m, den: BigUint::one() << (-exp) as usize }
        }
    }

    /// `2^exp`.
    pub fn pow2(exp: i32) -> Self {
        Self::dyadic(1, exp)
    }

    pub fn from_f64(v: f64) -> Self {
        if v.is_infinite() {
            return if v > 0.0 { ExactReal::PosInf } else { ExactReal::NegInf };
        }
        assert!(!v.is_nan(), "NaN has no exact value");
        let bits = v.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i32;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        let r = Self::dyadic(mant, e);
        if v.is_sign_negative() {
            r.neg()
        } else {
            r
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExactReal::Finite { .. })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactReal::Finite { num, .. } if num.is_zero())
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self {
            ExactReal::NegInf => -1,
            ExactReal::PosInf => 1,
            ExactReal::Finite { num, .. } => match num.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExactReal::NegInf => ExactReal::PosInf,
            ExactReal::PosInf => ExactReal::NegInf,
            ExactReal::Finite { num, den } => ExactReal::Finite { num: -num, den: den.clone() },
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    fn inf(sign: i32) -> Self {
        if sign < 0 {
            ExactReal::NegInf
        } else {
            ExactReal::PosInf
        }
    }

    /// None for `inf - inf`.
    pub fn add(&self, o: &Self) -> Option<Self> {
        use ExactReal::*;
        match (self, o) {
            (NegInf, PosInf) | (PosInf, NegInf) => None,
            (NegInf, _) | (_, NegInf) => Some(NegInf),
            (PosInf, _) | (_, PosInf) => Some(PosInf),
            (Finite { num: a, den: b }, Finite { num: c, den: d }) => {
                if b == d {
                    return Some(Finite { num: a + c, den: b.clone() });
                }
                let bi = BigInt::from(b.clone());
                let di = BigInt::from(d.clone());
                Some(Finite { num: a * di + c * bi, den: b * d })
            }
        }
    }

    pub fn sub(&self, o: &Self) -> Option<Self> {
        self.add(&o.neg())
    }

    /// None for `0 * inf`.
    pub fn mul(&self, o: &Self) -> Option<Self> {
        match (self, o) {
            (ExactReal::Finite { num: a, den: b }, ExactReal::Finite { num: c, den: d }) => {
                Some(ExactReal::Finite { num: a * c, den: b * d })
            }
            _ => {
                let s = self.signum() * o.signum();
                if s == 0 {
                    None
                } else {
                    Some(Self::inf(s))
                }
            }
        }
    }

    /// None for division by zero and `inf / inf`.
    pub fn div(&self, o: &Self) -> Option<Self> {
        match (self, o) {
            (_, o) if o.is_zero() => None,
            (ExactReal::Finite { num: a, den: b }, ExactReal::Finite { num: c, den: d }) => {
                let mut num = a * BigInt::from(d.clone());
                if c.is_negative() {
                    num = -num;
                }
                Some(ExactReal::Finite { num, den: b * c.magnitude() })
            }
            (ExactReal::Finite { .. }, _) => Some(Self::zero()),
            (_, ExactReal::Finite { .. }) => Some(Self::inf(self.signum() * o.signum())),
            _ => None,
        }
    }

    /// Halves the value; infinities are unchanged.
    pub fn half(&self) -> Self {
        match self {
            ExactReal::Finite { num, den } => ExactReal::Finite { num: num.clone(), den: den << 1usize },
            x => x.clone(),
        }
    }

    /// Magnitude as `(numerator, denominator)`; finite values only.
    pub(crate) fn magnitude_parts(&self) -> (BigUint, BigUint) {
        match self {
            ExactReal::Finite { num, den } => (num.magnitude().clone(), den.clone()),
            _ => panic!("infinite value has no magnitude parts"),
        }
    }
}

impl PartialEq for ExactReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExactReal {}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactReal {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExactReal::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
            (Finite { num: a, den: b }, Finite { num: c, den: d }) => {
                (a * BigInt::from(d.clone())).cmp(&(c * BigInt::from(b.clone())))
            }
        }
    }
}
