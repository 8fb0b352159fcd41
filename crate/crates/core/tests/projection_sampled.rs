//! Random comparison with the brute-force oracle on F(5,3), where all three
//! intervals are constrained at once.

use fpfilter::errfun::EvalMode;
use fpfilter::intervals::FpInterval;
use fpfilter::projections::{direct, inverse, Operand};
use fpfilter::roundsel::RoundingModeSet;
use fpfilter::softfloat::{FloatFormat, Op, RoundingMode};
use fpfilter_oracle::{OpTable, Operand as OracleOperand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 4000;

fn random_interval(t: &OpTable, rng: &mut ChaCha8Rng) -> FpInterval {
    let n = t.n();
    // bias endpoints towards zeros, infinities and the extremes
    let pick = |rng: &mut ChaCha8Rng| match rng.gen_range(0..8) {
        0 => [0, n - 1, 1, n - 2][rng.gen_range(0..4)],
        1 => t.uni.neg_zero() + rng.gen_range(0..2),
        2 => t.uni.neg_zero() + rng.gen_range(0..4) - 1,
        _ => rng.gen_range(0..n),
    };
    match rng.gen_range(0..10) {
        0 => FpInterval::full(t.uni.fmt),
        1 => {
            let i = pick(rng);
            t.uni.interval(i, i)
        }
        _ => {
            let (a, b) = (pick(rng), pick(rng));
            t.uni.interval(a.min(b), a.max(b))
        }
    }
}

fn random_modes(rng: &mut ChaCha8Rng) -> RoundingModeSet {
    loop {
        let modes: Vec<RoundingMode> = RoundingMode::ALL.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
        if let Some(s) = RoundingModeSet::new(&modes) {
            return s;
        }
    }
}

fn check(op: Op, seed: u64) {
    let t = OpTable::new(FloatFormat::mini(5, 3));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..SAMPLES {
        let (x, y, z) = (random_interval(&t, &mut rng), random_interval(&t, &mut rng), random_interval(&t, &mut rng));
        let s = random_modes(&mut rng);
        // results may have gaps inside X: the projection lies between the
        // hull of the results in X and X met with the unconstrained hull
        let inner = t.brute_direct(&x, &y, &z, op, s);
        let outer = x.meet(&t.brute_direct(&FpInterval::full(t.uni.fmt), &y, &z, op, s));
        let got = direct(op, &x, &y, &z, s).interval;
        if !inner.is_subset(&got) || !got.is_subset(&outer) {
            bad.push(format!("direct {op:?} {s:?} X={x} Y={y} Z={z}: got {got}, want within {inner}..{outer}"));
        }
        for (which, ow) in [(Operand::Left, OracleOperand::Left), (Operand::Right, OracleOperand::Right)] {
            let need = t.brute_inverse(&x, &y, &z, op, s, ow);
            for m in [EvalMode::Exact, EvalMode::Composed] {
                let got = inverse(op, which, &x, &y, &z, s, m).interval;
                if !need.is_subset(&got) {
                    bad.push(format!("{which:?} {m:?} {op:?} {s:?} X={x} Y={y} Z={z}: got {got}, need {need}"));
                }
            }
        }
    }
    let count = bad.len();
    bad.truncate(8);
    assert!(count == 0, "{count} failures\n{}", bad.join("\n"));
}

#[test]
fn add_matches_oracle_on_random_boxes() {
    check(Op::Add, 1);
}

#[test]
fn sub_matches_oracle_on_random_boxes() {
    check(Op::Sub, 2);
}

#[test]
fn mul_matches_oracle_on_random_boxes() {
    check(Op::Mul, 3);
}

#[test]
fn div_matches_oracle_on_random_boxes() {
    check(Op::Div, 4);
}
