//! Seeded random intervals and constraint systems over small formats.

use fpfilter::intervals::{FpInterval, NanFlag, VarDomain};
use fpfilter::propagate::{Constraint, ConstraintSystem};
use fpfilter::roundsel::RoundingModeSet;
use fpfilter::softfloat::{Op, RoundingMode};
use rand::Rng;

use crate::Universe;

/// An interval with endpoints biased towards zeros, infinities and the
/// format's extremes. Never empty.
pub fn interval(uni: &Universe, rng: &mut impl Rng) -> FpInterval {
    let n = uni.len();
    let pick = |rng: &mut dyn rand::RngCore| match rng.gen_range(0..8) {
        0 => [0, n - 1, 1, n - 2][rng.gen_range(0..4)],
        1 => uni.neg_zero() + rng.gen_range(0..2),
        2 => uni.neg_zero() + rng.gen_range(0..4) - 1,
        _ => rng.gen_range(0..n),
    };
    match rng.gen_range(0..10) {
        0 => FpInterval::full(uni.fmt),
        1 => {
            let i = pick(rng);
            uni.interval(i, i)
        }
        _ => {
            let (a, b) = (pick(rng), pick(rng));
            uni.interval(a.min(b), a.max(b))
        }
    }
}

/// A nonempty rounding-mode set, singletons being as likely as the rest.
pub fn modes(rng: &mut impl Rng) -> RoundingModeSet {
    if rng.gen_bool(0.5) {
        return RoundingModeSet::single(RoundingMode::ALL[rng.gen_range(0..4)]);
    }
    loop {
        let ms: Vec<RoundingMode> = RoundingMode::ALL.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if let Some(s) = RoundingModeSet::new(&ms) {
            return s;
        }
    }
}

fn domain(uni: &Universe, rng: &mut impl Rng) -> VarDomain {
    match rng.gen_range(0..4) {
        0 => VarDomain::top(uni.fmt),
        1 => VarDomain::new(interval(uni, rng), NanFlag::MayBeNaN),
        _ => VarDomain::new(interval(uni, rng), NanFlag::NotNaN),
    }
}

/// A system with 2 to 4 variables and 1 to `max_arith` arithmetic
/// constraints over random variables (repeats allowed), plus a few random
/// unary constraints.
pub fn system(uni: &Universe, rng: &mut impl Rng, max_arith: usize) -> ConstraintSystem {
    let mut sys = ConstraintSystem::new(uni.fmt);
    let nv = rng.gen_range(2..=4);
    for i in 0..nv {
        let v = sys.add_var(&format!("v{i}"));
        sys.domains[v] = domain(uni, rng);
    }
    for _ in 0..rng.gen_range(1..=max_arith) {
        let op = Op::ALL[rng.gen_range(0..4)];
        let (x, y, z) = (rng.gen_range(0..nv), rng.gen_range(0..nv), rng.gen_range(0..nv));
        let m = modes(rng);
        sys.arith(x, y, op, z, m);
    }
    for _ in 0..rng.gen_range(0..3) {
        let v = rng.gen_range(0..nv);
        if rng.gen_bool(0.5) {
            sys.add(Constraint::Member(v, interval(uni, rng)));
        } else {
            sys.add(Constraint::NanIs(v, NanFlag::NotNaN));
        }
    }
    sys
}

/// `x = y op z` over three distinct variables with random domains.
/// The constraint has index 0.
pub fn single_constraint(uni: &Universe, rng: &mut impl Rng) -> ConstraintSystem {
    let mut sys = ConstraintSystem::new(uni.fmt);
    let (x, y, z) = (sys.add_var("x"), sys.add_var("y"), sys.add_var("z"));
    sys.domains[x] = if rng.gen_bool(0.5) { VarDomain::top(uni.fmt) } else { domain(uni, rng) };
    sys.domains[y] = domain(uni, rng);
    sys.domains[z] = domain(uni, rng);
    let op = Op::ALL[rng.gen_range(0..4)];
    let m = modes(rng);
    sys.arith(x, y, op, z, m);
    sys
}
