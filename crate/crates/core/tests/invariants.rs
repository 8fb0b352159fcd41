//! Property tests for the interval lattice, projections and propagation.

use std::sync::OnceLock;

use fpfilter::errfun::EvalMode;
use fpfilter::intervals::FpInterval;
use fpfilter::projections::{direct, inverse, Operand};
use fpfilter::propagate::{propagate_fixpoint, Config};
use fpfilter::softfloat::{FloatFormat, Op};
use fpfilter_oracle::{gen, OpTable, Universe};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn uni() -> Universe {
    Universe::new(FloatFormat::mini(4, 3))
}

fn table() -> &'static OpTable {
    static T: OnceLock<OpTable> = OnceLock::new();
    T.get_or_init(|| OpTable::new(FloatFormat::mini(3, 2)))
}

fn op_of(i: usize) -> Op {
    Op::ALL[i % 4]
}

fn eval_mode(b: bool) -> EvalMode {
    if b {
        EvalMode::Composed
    } else {
        EvalMode::Exact
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn meet_is_a_semilattice(seed in any::<u64>()) {
        let u = uni();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (gen::interval(&u, &mut rng), gen::interval(&u, &mut rng), gen::interval(&u, &mut rng));
        prop_assert_eq!(a.meet(&b), b.meet(&a));
        prop_assert_eq!(a.meet(&b).meet(&c), a.meet(&b.meet(&c)));
        prop_assert_eq!(a.meet(&a), a);
        prop_assert_eq!(a.meet(&FpInterval::full(u.fmt)), a);
        prop_assert!(a.meet(&FpInterval::Empty).is_empty());
        prop_assert!(a.is_subset(&a.convex_union(&b)) && b.is_subset(&a.convex_union(&b)));
    }

    #[test]
    fn membership_follows_the_order(seed in any::<u64>(), i in 0usize..1000) {
        let u = uni();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = gen::interval(&u, &mut rng);
        let x = u.vals[i % u.len()];
        let (l, h) = a.bounds().unwrap();
        prop_assert_eq!(a.contains(&x), l.sym_le(&x) && x.sym_le(&h));
    }

    #[test]
    fn split_partitions_the_interval(seed in any::<u64>()) {
        let u = uni();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = gen::interval(&u, &mut rng);
        prop_assume!(!a.is_singleton());
        let (lo, hi) = a.split();
        prop_assert!(!lo.is_empty() && !hi.is_empty());
        prop_assert!(lo.meet(&hi).is_empty());
        prop_assert_eq!(lo.convex_union(&hi), a);
        prop_assert_eq!(lo.count() + hi.count(), a.count());
    }

    #[test]
    fn projections_contract(seed in any::<u64>(), op in 0usize..4, composed in any::<bool>()) {
        let u = uni();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (gen::interval(&u, &mut rng), gen::interval(&u, &mut rng), gen::interval(&u, &mut rng));
        let s = gen::modes(&mut rng);
        let op = op_of(op);
        let m = eval_mode(composed);
        prop_assert!(direct(op, &x, &y, &z, s).interval.is_subset(&x));
        prop_assert!(inverse(op, Operand::Left, &x, &y, &z, s, m).interval.is_subset(&y));
        prop_assert!(inverse(op, Operand::Right, &x, &y, &z, s, m).interval.is_subset(&z));
    }

    #[test]
    fn addition_inverse_is_symmetric(seed in any::<u64>(), composed in any::<bool>()) {
        let u = uni();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (gen::interval(&u, &mut rng), gen::interval(&u, &mut rng), gen::interval(&u, &mut rng));
        let s = gen::modes(&mut rng);
        let m = eval_mode(composed);
        for op in [Op::Add, Op::Mul] {
            prop_assert_eq!(
                inverse(op, Operand::Right, &x, &y, &z, s, m).interval,
                inverse(op, Operand::Left, &x, &z, &y, s, m).interval
            );
        }
    }

    /// Products split the known factor, quotients the divisor when
    /// projecting the dividend and the result when projecting the divisor.
    #[test]
    fn sign_slabs_recompose(seed in any::<u64>(), case in 0usize..4, composed in any::<bool>()) {
        let u = uni();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (gen::interval(&u, &mut rng), gen::interval(&u, &mut rng), gen::interval(&u, &mut rng));
        let s = gen::modes(&mut rng);
        let m = eval_mode(composed);
        let (op, which) = [(Op::Mul, Operand::Left), (Op::Mul, Operand::Right), (Op::Div, Operand::Left), (Op::Div, Operand::Right)][case];
        let whole = inverse(op, which, &x, &y, &z, s, m).interval;
        let mut joined = FpInterval::Empty;
        for slab in [FpInterval::neg_slab(u.fmt), FpInterval::pos_slab(u.fmt)] {
            let (mut x, mut y, mut z) = (x, y, z);
            let split = match (op, which) {
                (Op::Mul, Operand::Left) | (Op::Div, Operand::Left) => &mut z,
                (Op::Mul, Operand::Right) => &mut y,
                _ => &mut x,
            };
            *split = split.meet(&slab);
            if split.is_empty() {
                continue;
            }
            joined = joined.convex_union(&inverse(op, which, &x, &y, &z, s, m).interval);
        }
        prop_assert_eq!(whole, joined);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fixpoint_is_stable_and_bounded(seed in any::<u64>(), composed in any::<bool>()) {
        let u = uni();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = gen::system(&u, &mut rng, 4);
        let cfg = Config { eval_mode: eval_mode(composed), ..Config::default() };
        if let Ok(r) = propagate_fixpoint(&sys, &cfg) {
            let heights: u64 = sys.domains.iter().map(|d| d.count() as u64 + 1).sum();
            prop_assert!(r.iterations <= sys.constraints.len() as u64 * (1 + heights));
            for (d, d0) in r.domains.iter().zip(&sys.domains) {
                prop_assert!(d.is_subset(d0));
            }
            let mut again = sys.clone();
            again.domains = r.domains.clone();
            let r2 = propagate_fixpoint(&again, &cfg).expect("a fixpoint stays consistent");
            prop_assert_eq!(r2.domains, r.domains);
        }
    }

    #[test]
    fn brute_direct_is_idempotent(seed in any::<u64>(), op in 0usize..4) {
        let t = table();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (gen::interval(&t.uni, &mut rng), gen::interval(&t.uni, &mut rng), gen::interval(&t.uni, &mut rng));
        let s = gen::modes(&mut rng);
        let once = t.brute_direct(&x, &y, &z, op_of(op), s);
        prop_assert_eq!(t.brute_direct(&once, &y, &z, op_of(op), s), once);
    }
}
