//! Floating-point intervals over the symbolic order, the NaN flag and
//! variable domains.

use crate::softfloat::{FloatFormat, FloatVal};

/// Either empty or `[l, u]` with `l ≼ u`. Never contains NaN.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FpInterval {
    Empty,
    Bounds(FloatVal, FloatVal),
}

impl FpInterval {
    /// `[l, u]`, or None if a bound is NaN or `u ≺ l`.
    pub fn new(l: FloatVal, u: FloatVal) -> Option<Self> {
        if l.is_nan() || u.is_nan() || u.sym_lt(&l) {
            None
        } else {
            Some(FpInterval::Bounds(l, u))
        }
    }

    /// `[l, u]` if `l ≼ u`, empty otherwise.
    pub fn or_empty(l: FloatVal, u: FloatVal) -> Self {
        Self::new(l, u).unwrap_or(FpInterval::Empty)
    }

    pub fn singleton(x: FloatVal) -> Self {
        Self::new(x, x).expect("NaN singleton")
    }

    pub fn full(fmt: FloatFormat) -> Self {
        FpInterval::Bounds(fmt.neg_inf(), fmt.pos_inf())
    }

    /// `[-inf, -0]`.
    pub fn neg_slab(fmt: FloatFormat) -> Self {
        FpInterval::Bounds(fmt.neg_inf(), fmt.neg_zero())
    }

    /// `[+0, +inf]`.
    pub fn pos_slab(fmt: FloatFormat) -> Self {
        FpInterval::Bounds(fmt.pos_zero(), fmt.pos_inf())
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, FpInterval::Empty)
    }

    pub fn bounds(&self) -> Option<(FloatVal, FloatVal)> {
        match *self {
            FpInterval::Empty => None,
            FpInterval::Bounds(l, u) => Some((l, u)),
        }
    }

    pub fn lo(&self) -> Option<FloatVal> {
        self.bounds().map(|b| b.0)
    }

    pub fn hi(&self) -> Option<FloatVal> {
        self.bounds().map(|b| b.1)
    }

    pub fn contains(&self, x: &FloatVal) -> bool {
        match self {
            FpInterval::Empty => false,
            FpInterval::Bounds(l, u) => l.sym_le(x) && x.sym_le(u),
        }
    }

    /// Number of members.
    pub fn count(&self) -> u128 {
        match self {
            FpInterval::Empty => 0,
            FpInterval::Bounds(l, u) => (u.rank().unwrap() - l.rank().unwrap() + 1) as u128,
        }
    }

    pub fn is_singleton(&self) -> bool {
        self.count() == 1
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Self) -> bool {
        match (self, other) {
            (FpInterval::Empty, _) => true,
            (_, FpInterval::Empty) => false,
            (FpInterval::Bounds(l, u), FpInterval::Bounds(a, b)) => a.sym_le(l) && u.sym_le(b),
        }
    }

    /// Intersection.
    pub fn meet(&self, other: &Self) -> Self {
        match (self, other) {
            (FpInterval::Bounds(a, b), FpInterval::Bounds(c, d)) => {
                Self::or_empty(a.sym_max(*c), b.sym_min(*d))
            }
            _ => FpInterval::Empty,
        }
    }

    /// Smallest interval containing both.
    pub fn convex_union(&self, other: &Self) -> Self {
        match (self, other) {
            (FpInterval::Empty, x) | (x, FpInterval::Empty) => *x,
            (FpInterval::Bounds(a, b), FpInterval::Bounds(c, d)) => {
                FpInterval::Bounds(a.sym_min(*c), b.sym_max(*d))
            }
        }
    }

    /// Splits at the rank midpoint: `[l, m]` and `[succ m, u]`.
    /// Panics on empty or singleton intervals.
    pub fn split(&self) -> (Self, Self) {
        let (l, u) = self.bounds().expect("cannot split an empty interval");
        let (a, b) = (l.rank().unwrap(), u.rank().unwrap());
        assert!(a < b, "cannot split a singleton");
        let mid = a + (b - a).div_euclid(2);
        let fmt = l.format();
        (
            FpInterval::Bounds(l, FloatVal::from_rank(fmt, mid)),
            FpInterval::Bounds(FloatVal::from_rank(fmt, mid + 1), u),
        )
    }

    /// All members, in increasing order. Only for small intervals.
    pub fn members(&self) -> Vec<FloatVal> {
        match self {
            FpInterval::Empty => Vec::new(),
            FpInterval::Bounds(l, u) => {
                let fmt = l.format();
                (l.rank().unwrap()..=u.rank().unwrap()).map(|r| FloatVal::from_rank(fmt, r)).collect()
            }
        }
    }

    /// Every nonempty interval of a tiny format, plus the empty one first.
    pub fn enumerate_all(fmt: FloatFormat) -> Vec<Self> {
        let vals = fmt.enumerate_all();
        let mut out = vec![FpInterval::Empty];
        for i in 0..vals.len() {
            for j in i..vals.len() {
                out.push(FpInterval::Bounds(vals[i], vals[j]));
            }
        }
        out
    }
}

impl std::fmt::Display for FpInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FpInterval::Empty => write!(f, "empty"),
            FpInterval::Bounds(l, u) => write!(f, "[{l}, {u}]"),
        }
    }
}

/// Whether a variable may hold NaN.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NanFlag {
    MayBeNaN,
    NotNaN,
}

impl NanFlag {
    pub fn may(&self) -> bool {
        *self == NanFlag::MayBeNaN
    }

    pub fn from_bool(may: bool) -> Self {
        if may {
            NanFlag::MayBeNaN
        } else {
            NanFlag::NotNaN
        }
    }

    pub fn meet(&self, other: &Self) -> Self {
        Self::from_bool(self.may() && other.may())
    }
}

/// The values a variable may take: the interval members, plus NaN when the
/// flag says so. An empty interval with `MayBeNaN` means "must be NaN".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarDomain {
    pub interval: FpInterval,
    pub nan: NanFlag,
}

impl VarDomain {
    pub fn new(interval: FpInterval, nan: NanFlag) -> Self {
        VarDomain { interval, nan }
    }

    pub fn top(fmt: FloatFormat) -> Self {
        VarDomain { interval: FpInterval::full(fmt), nan: NanFlag::MayBeNaN }
    }

    pub fn is_empty(&self) -> bool {
        self.interval.is_empty() && !self.nan.may()
    }

    pub fn contains(&self, x: &FloatVal) -> bool {
        if x.is_nan() {
            self.nan.may()
        } else {
            self.interval.contains(x)
        }
    }

    pub fn meet(&self, other: &Self) -> Self {
        VarDomain { interval: self.interval.meet(&other.interval), nan: self.nan.meet(&other.nan) }
    }

    /// `self ⊆ other` as value sets.
    pub fn is_subset(&self, other: &Self) -> bool {
        self.interval.is_subset(&other.interval) && (!self.nan.may() || other.nan.may())
    }

    /// Number of values, NaN counted once.
    pub fn count(&self) -> u128 {
        self.interval.count() + self.nan.may() as u128
    }
}
