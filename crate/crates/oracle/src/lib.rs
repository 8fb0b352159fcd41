//! Brute-force reference implementations over small enumerable formats.
//!
//! Everything here is deliberately naive: values are enumerated from their
//! encodings and sorted by their rational value, rounding scans the sorted
//! list, and projections are computed by exhaustive enumeration. Nothing is
//! shared with the projection code under test; the kernel crate is only used
//! for its value and interval types.

pub mod gen;
pub mod systems;

use std::collections::HashMap;

use fpfilter::intervals::FpInterval;
use fpfilter::roundsel::RoundingModeSet;
use fpfilter::softfloat::{FloatFormat, FloatVal, Kind, Op, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An extended rational used by the oracle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Ext {
    NegInf,
    Fin(BigRational),
    PosInf,
}

impl Ext {
    pub fn sign(&self) -> i32 {
        match self {
            Ext::NegInf => -1,
            Ext::PosInf => 1,
            Ext::Fin(q) => {
                if q.is_zero() {
                    0
                } else if q.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

fn pow2(e: i32) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    if e >= 0 {
        num_traits::pow(two, e as usize)
    } else {
        BigRational::one() / num_traits::pow(two, (-e) as usize)
    }
}

/// Exact value of a float, computed from its encoding.
pub fn value_of(x: &FloatVal) -> Option<Ext> {
    let fmt = x.format();
    match x.kind() {
        Kind::NegInf => Some(Ext::NegInf),
        Kind::PosInf => Some(Ext::PosInf),
        Kind::Finite { neg, exp, mant } => {
            let m = BigRational::from_integer(BigInt::from(mant));
            let v = m * pow2(exp - fmt.p() as i32 + 1);
            Some(Ext::Fin(if neg { -v } else { v }))
        }
        _ => None,
    }
}

/// All values of a small format with their exact values, sorted.
pub struct Universe {
    pub fmt: FloatFormat,
    /// Non-NaN values in increasing order, `-0` before `+0`.
    pub vals: Vec<FloatVal>,
    pub exact: Vec<Ext>,
    index: HashMap<FloatVal, usize>,
    /// Indices of nonnegative finite values (`+0` first).
    pos_finite: Vec<usize>,
}

impl Universe {
    pub fn new(fmt: FloatFormat) -> Self {
        let p = fmt.p();
        let mut items: Vec<FloatVal> = vec![fmt.neg_inf(), fmt.pos_inf()];
        for neg in [false, true] {
            for exp in fmt.emin()..=fmt.emax() {
                for mant in 0..(1u64 << p) {
                    if let Some(x) = FloatVal::from_parts(fmt, neg, exp, mant) {
                        items.push(x);
                    }
                }
            }
        }
        let mut keyed: Vec<(Ext, bool, FloatVal)> = items
            .into_iter()
            .map(|x| (value_of(&x).unwrap(), !x.is_sign_negative(), x))
            .collect();
        keyed.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
        let vals: Vec<FloatVal> = keyed.iter().map(|k| k.2).collect();
        let exact: Vec<Ext> = keyed.into_iter().map(|k| k.0).collect();
        let index = vals.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let pos_finite = (0..vals.len())
            .filter(|&i| vals[i].is_finite() && !vals[i].is_sign_negative())
            .collect();
        Universe { fmt, vals, exact, index, pos_finite }
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    /// Index of a non-NaN value; NaN maps to `len()`.
    pub fn idx(&self, x: &FloatVal) -> usize {
        if x.is_nan() {
            self.len()
        } else {
            self.index[x]
        }
    }

    pub fn pos_zero(&self) -> usize {
        self.pos_finite[0]
    }

    pub fn neg_zero(&self) -> usize {
        self.pos_finite[0] - 1
    }

    fn fmax_idx(&self) -> usize {
        *self.pos_finite.last().unwrap()
    }

    fn fin(&self, i: usize) -> &BigRational {
        match &self.exact[i] {
            Ext::Fin(q) => q,
            _ => unreachable!(),
        }
    }

    /// Parity of the last significand digit, read off the magnitude's
    /// position among nonnegative values.
    pub fn even(&self, i: usize) -> bool {
        let mag = if self.vals[i].is_sign_negative() { self.neg_mirror(i) } else { i };
        (mag - self.pos_zero()).is_multiple_of(2)
    }

    fn neg_mirror(&self, i: usize) -> usize {
        self.len() - 1 - i
    }

    fn max_le(&self, q: &BigRational) -> usize {
        // largest nonnegative finite value <= q, q >= 0
        let mut best = self.pos_zero();
        for &i in &self.pos_finite {
            if self.fin(i) <= q {
                best = i;
            }
        }
        best
    }

    fn min_ge(&self, q: &BigRational) -> Option<usize> {
        self.pos_finite.iter().copied().find(|&i| self.fin(i) >= q)
    }

    /// Round a nonzero rational by scanning the value list.
    pub fn round(&self, v: &Ext, r: RoundingMode) -> usize {
        let q = match v {
            Ext::NegInf => return 0,
            Ext::PosInf => return self.len() - 1,
            Ext::Fin(q) => q,
        };
        assert!(!q.is_zero());
        let neg = q.is_negative();
        let a = q.abs();
        let fmax = self.fin(self.fmax_idx()).clone();
        // magnitude rounded toward zero / away from zero
        let tz = self.max_le(&a);
        let away = self.min_ge(&a);
        let mag = match (r, neg) {
            (RoundingMode::TowardZero, _) | (RoundingMode::Down, false) | (RoundingMode::Up, true) => Some(tz),
            (RoundingMode::Up, false) | (RoundingMode::Down, true) => away,
            (RoundingMode::Nearest, _) => {
                let threshold = pow2(self.fmt.emax()) * (BigRational::from_integer(2.into()) - pow2(-(self.fmt.p() as i32)));
                if a >= threshold {
                    None
                } else if a > fmax {
                    Some(self.fmax_idx())
                } else {
                    let up = away.unwrap();
                    let dl = &a - self.fin(tz);
                    let du = self.fin(up) - &a;
                    if dl < du || (dl == du && self.even(tz)) {
                        Some(tz)
                    } else {
                        Some(up)
                    }
                }
            }
        };
        match (mag, neg) {
            (None, false) => self.len() - 1,
            (None, true) => 0,
            (Some(i), false) => i,
            (Some(i), true) => self.neg_mirror(i),
        }
    }

    /// `y op z` rounded with `r`, from first principles. Returns an index,
    /// `len()` meaning NaN.
    pub fn apply_idx(&self, iy: usize, op: Op, iz: usize, r: RoundingMode) -> usize {
        let n = self.len();
        if iy >= n || iz >= n {
            return n;
        }
        let (y, z) = (&self.exact[iy], &self.exact[iz]);
        let (sy, sz) = (self.vals[iy].is_sign_negative(), self.vals[iz].is_sign_negative());
        let zero = |neg: bool| if neg { self.neg_zero() } else { self.pos_zero() };
        let exact: Option<Ext> = match op {
            Op::Add | Op::Sub => {
                let (z, sz) = if op == Op::Sub {
                    (
                        match z {
                            Ext::NegInf => Ext::PosInf,
                            Ext::PosInf => Ext::NegInf,
                            Ext::Fin(q) => Ext::Fin(-q),
                        },
                        !sz,
                    )
                } else {
                    (z.clone(), sz)
                };
                match (y, &z) {
                    (Ext::NegInf, Ext::PosInf) | (Ext::PosInf, Ext::NegInf) => None,
                    (Ext::NegInf, _) | (_, Ext::NegInf) => Some(Ext::NegInf),
                    (Ext::PosInf, _) | (_, Ext::PosInf) => Some(Ext::PosInf),
                    (Ext::Fin(a), Ext::Fin(b)) => {
                        let s = a + b;
                        if s.is_zero() {
                            let both_zero = a.is_zero() && b.is_zero();
                            if both_zero && sy == sz {
                                return zero(sy);
                            }
                            return zero(r == RoundingMode::Down);
                        }
                        Some(Ext::Fin(s))
                    }
                }
            }
            Op::Mul => {
                let neg = sy != sz;
                let yinf = matches!(y, Ext::NegInf | Ext::PosInf);
                let zinf = matches!(z, Ext::NegInf | Ext::PosInf);
                if (yinf && z.sign() == 0) || (zinf && y.sign() == 0) {
                    None
                } else if yinf || zinf {
                    Some(if neg { Ext::NegInf } else { Ext::PosInf })
                } else if y.sign() == 0 || z.sign() == 0 {
                    return zero(neg);
                } else {
                    let (Ext::Fin(a), Ext::Fin(b)) = (y, z) else { unreachable!() };
                    Some(Ext::Fin(a * b))
                }
            }
            Op::Div => {
                let neg = sy != sz;
                let yinf = matches!(y, Ext::NegInf | Ext::PosInf);
                let zinf = matches!(z, Ext::NegInf | Ext::PosInf);
                if (yinf && zinf) || (y.sign() == 0 && z.sign() == 0) {
                    None
                } else if yinf || z.sign() == 0 {
                    Some(if neg { Ext::NegInf } else { Ext::PosInf })
                } else if zinf || y.sign() == 0 {
                    return zero(neg);
                } else {
                    let (Ext::Fin(a), Ext::Fin(b)) = (y, z) else { unreachable!() };
                    Some(Ext::Fin(a / b))
                }
            }
        };
        match exact {
            None => n,
            Some(v) => self.round(&v, r),
        }
    }

    pub fn apply(&self, y: &FloatVal, op: Op, z: &FloatVal, r: RoundingMode) -> FloatVal {
        let i = self.apply_idx(self.idx(y), op, self.idx(z), r);
        if i == self.len() {
            self.fmt.qnan()
        } else {
            self.vals[i]
        }
    }

    /// Index range of an interval, or None when empty.
    pub fn range(&self, x: &FpInterval) -> Option<(usize, usize)> {
        x.bounds().map(|(l, u)| (self.idx(&l), self.idx(&u)))
    }

    pub fn interval(&self, lo: usize, hi: usize) -> FpInterval {
        FpInterval::new(self.vals[lo], self.vals[hi]).expect("ordered bounds")
    }

    /// All intervals, empty first.
    pub fn intervals(&self) -> Vec<FpInterval> {
        let mut out = vec![FpInterval::Empty];
        for i in 0..self.len() {
            for j in i..self.len() {
                out.push(self.interval(i, j));
            }
        }
        out
    }
}

/// Every result `y op_r z` of a format, materialized.
pub struct OpTable {
    pub uni: Universe,
    /// `[op][mode][iy * n + iz]`, value `n` meaning NaN.
    cells: Vec<Vec<Vec<u16>>>,
}

fn op_index(op: Op) -> usize {
    match op {
        Op::Add => 0,
        Op::Sub => 1,
        Op::Mul => 2,
        Op::Div => 3,
    }
}

fn mode_index(r: RoundingMode) -> usize {
    match r {
        RoundingMode::Down => 0,
        RoundingMode::TowardZero => 1,
        RoundingMode::Up => 2,
        RoundingMode::Nearest => 3,
    }
}

/// Which operand an inverse projection refines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operand {
    Left,
    Right,
}

impl OpTable {
    pub fn new(fmt: FloatFormat) -> Self {
        let uni = Universe::new(fmt);
        let n = uni.len();
        let cells = Op::ALL
            .iter()
            .map(|&op| {
                RoundingMode::ALL
                    .iter()
                    .map(|&r| {
                        let mut t = vec![0u16; n * n];
                        for iy in 0..n {
                            for iz in 0..n {
                                t[iy * n + iz] = uni.apply_idx(iy, op, iz, r) as u16;
                            }
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        OpTable { uni, cells }
    }

    pub fn n(&self) -> usize {
        self.uni.len()
    }

    /// Result index of `y op_r z` by operand indices; `n()` is NaN.
    #[inline]
    pub fn get(&self, iy: usize, op: Op, iz: usize, r: RoundingMode) -> usize {
        self.cells[op_index(op)][mode_index(r)][iy * self.n() + iz] as usize
    }

    pub fn result(&self, y: &FloatVal, op: Op, z: &FloatVal, r: RoundingMode) -> FloatVal {
        if y.is_nan() || z.is_nan() {
            return self.uni.fmt.qnan();
        }
        let i = self.get(self.uni.idx(y), op, self.uni.idx(z), r);
        if i == self.n() {
            self.uni.fmt.qnan()
        } else {
            self.uni.vals[i]
        }
    }

    /// Smallest interval containing every non-NaN `y op_r z` that lies in
    /// `X`, over `y ∈ Y`, `z ∈ Z`, `r ∈ S`.
    pub fn brute_direct(&self, x: &FpInterval, y: &FpInterval, z: &FpInterval, op: Op, s: RoundingModeSet) -> FpInterval {
        let (Some((xl, xu)), Some((yl, yu)), Some((zl, zu))) = (self.uni.range(x), self.uni.range(y), self.uni.range(z))
        else {
            return FpInterval::Empty;
        };
        let mut lo = usize::MAX;
        let mut hi = 0usize;
        for r in s.modes() {
            for iy in yl..=yu {
                for iz in zl..=zu {
                    let v = self.get(iy, op, iz, r);
                    if v >= xl && v <= xu {
                        lo = lo.min(v);
                        hi = hi.max(v);
                    }
                }
            }
        }
        if lo == usize::MAX {
            FpInterval::Empty
        } else {
            self.uni.interval(lo, hi)
        }
    }

    /// Smallest interval containing every value of the chosen operand that
    /// takes part in some solution of `x = y op_r z` with `x ∈ X`,
    /// `y ∈ Y`, `z ∈ Z`, `r ∈ S`.
    pub fn brute_inverse(
        &self,
        x: &FpInterval,
        y: &FpInterval,
        z: &FpInterval,
        op: Op,
        s: RoundingModeSet,
        which: Operand,
    ) -> FpInterval {
        let (Some((xl, xu)), Some((yl, yu)), Some((zl, zu))) = (self.uni.range(x), self.uni.range(y), self.uni.range(z))
        else {
            return FpInterval::Empty;
        };
        let modes: Vec<RoundingMode> = s.modes().collect();
        let hit = |iy: usize, iz: usize| {
            modes.iter().any(|&r| {
                let v = self.get(iy, op, iz, r);
                v >= xl && v <= xu
            })
        };
        let (outer, inner) = match which {
            Operand::Left => ((yl, yu), (zl, zu)),
            Operand::Right => ((zl, zu), (yl, yu)),
        };
        let solves = |a: usize| {
            (inner.0..=inner.1).any(|b| match which {
                Operand::Left => hit(a, b),
                Operand::Right => hit(b, a),
            })
        };
        let lo = (outer.0..=outer.1).find(|&a| solves(a));
        match lo {
            None => FpInterval::Empty,
            Some(lo) => {
                let hi = (lo..=outer.1).rev().find(|&a| solves(a)).unwrap();
                self.uni.interval(lo, hi)
            }
        }
    }

    /// Calls `f(Y, Z, hull)` for every pair of nonempty intervals, where
    /// `hull` is the optimal direct projection with `X` unconstrained.
    /// Uses incremental range minima, so the full sweep is cheap.
    pub fn direct_sweep(&self, op: Op, s: RoundingModeSet, mut f: impl FnMut(&FpInterval, &FpInterval, &FpInterval)) {
        let n = self.n();
        let modes: Vec<RoundingMode> = s.modes().collect();
        // per cell: (min, max) over modes of non-NaN results
        let mut cell = vec![(usize::MAX, 0usize); n * n];
        for iy in 0..n {
            for iz in 0..n {
                let mut c = (usize::MAX, 0);
                for &r in &modes {
                    let v = self.get(iy, op, iz, r);
                    if v < n {
                        c = (c.0.min(v), c.1.max(v));
                    }
                }
                cell[iy * n + iz] = c;
            }
        }
        let ivs: Vec<FpInterval> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| self.uni.interval(i, j)).collect();
        let mut k_y = 0;
        for yl in 0..n {
            let mut col = vec![(usize::MAX, 0usize); n];
            for yu in yl..n {
                for iz in 0..n {
                    let c = cell[yu * n + iz];
                    col[iz] = (col[iz].0.min(c.0), col[iz].1.max(c.1));
                }
                let yv = ivs[k_y];
                k_y += 1;
                let mut k_z = 0;
                for zl in 0..n {
                    let mut acc = (usize::MAX, 0usize);
                    for c in &col[zl..n] {
                        acc = (acc.0.min(c.0), acc.1.max(c.1));
                        let hull = if acc.0 == usize::MAX { FpInterval::Empty } else { self.uni.interval(acc.0, acc.1) };
                        f(&yv, &ivs[k_z], &hull);
                        k_z += 1;
                    }
                }
            }
        }
    }

    /// Calls `f(X, K, hull)` for every pair of nonempty intervals, where `K`
    /// is the domain of the known operand (`Z` when projecting the left
    /// operand, `Y` otherwise), the projected operand ranges over the whole
    /// format, and `hull` is the optimal inverse projection.
    pub fn inverse_sweep(&self, op: Op, s: RoundingModeSet, which: Operand, mut f: impl FnMut(&FpInterval, &FpInterval, &FpInterval)) {
        let n = self.n();
        assert!(n <= 128, "format too large for the sweep");
        let modes: Vec<RoundingMode> = s.modes().collect();
        // reach[a * n + b]: results of the projected value a against known value b
        let mut reach = vec![0u128; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut m = 0u128;
                for &r in &modes {
                    let v = match which {
                        Operand::Left => self.get(a, op, b, r),
                        Operand::Right => self.get(b, op, a, r),
                    };
                    if v < n {
                        m |= 1u128 << v;
                    }
                }
                reach[a * n + b] = m;
            }
        }
        let ivs: Vec<FpInterval> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| self.uni.interval(i, j)).collect();
        let mut k_b = 0;
        for bl in 0..n {
            let mut acc = vec![0u128; n];
            for bu in bl..n {
                for a in 0..n {
                    acc[a] |= reach[a * n + bu];
                }
                let known = ivs[k_b];
                k_b += 1;
                let mut k_x = 0;
                for xl in 0..n {
                    for xu in xl..n {
                        let width = xu - xl + 1;
                        let mask = if width == 128 { u128::MAX } else { ((1u128 << width) - 1) << xl };
                        let lo = (0..n).find(|&a| acc[a] & mask != 0);
                        let hull = match lo {
                            None => FpInterval::Empty,
                            Some(lo) => {
                                let hi = (lo..n).rev().find(|&a| acc[a] & mask != 0).unwrap();
                                self.uni.interval(lo, hi)
                            }
                        };
                        f(&ivs[k_x], &known, &hull);
                        k_x += 1;
                    }
                }
            }
        }
    }

    /// Every concrete solution `(y, z, r)` of `x = y op_r z` inside the
    /// given intervals, as value indices.
    pub fn solutions(&self, x: &FpInterval, y: &FpInterval, z: &FpInterval, op: Op, s: RoundingModeSet) -> Vec<(usize, usize, usize, RoundingMode)> {
        let mut out = Vec::new();
        let (Some((xl, xu)), Some((yl, yu)), Some((zl, zu))) = (self.uni.range(x), self.uni.range(y), self.uni.range(z))
        else {
            return out;
        };
        for r in s.modes() {
            for iy in yl..=yu {
                for iz in zl..=zu {
                    let v = self.get(iy, op, iz, r);
                    if v >= xl && v <= xu {
                        out.push((v, iy, iz, r));
                    }
                }
            }
        }
        out
    }
}
