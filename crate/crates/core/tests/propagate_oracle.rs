//! Propagation, search and anomaly detection against brute-force
//! enumeration of F(3,2) systems.

use fpfilter::intervals::VarDomain;
use fpfilter::propagate::{
    detect_anomaly, labeling_search, propagate_fixpoint, AnomalyKind, AnomalyStatus, Config, ConstraintSystem,
    SearchOutcome,
};
use fpfilter::softfloat::FloatFormat;
use fpfilter::errfun::EvalMode;
use fpfilter_oracle::{gen, OpTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn table() -> OpTable {
    OpTable::new(FloatFormat::mini(3, 2))
}

fn inside(t: &OpTable, support: &[bool], d: &VarDomain) -> bool {
    support.iter().enumerate().all(|(i, &s)| {
        !s || if i == t.n() { d.nan.may() } else { d.interval.contains(&t.uni.vals[i]) }
    })
}

fn has_solution(support: &[Vec<bool>]) -> bool {
    support.iter().all(|s| s.iter().any(|&b| b))
}

#[test]
fn fixpoint_keeps_every_solution() {
    let t = table();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in [EvalMode::Exact, EvalMode::Composed] {
        let cfg = Config { eval_mode: m, ..Config::default() };
        for k in 0..400 {
            let sys = gen::system(&t.uni, &mut rng, 4);
            let sup = t.solution_supports(&sys);
            match propagate_fixpoint(&sys, &cfg) {
                Ok(r) => {
                    for (v, (s, d)) in sup.iter().zip(&r.domains).enumerate() {
                        assert!(inside(&t, s, d), "system {k} var {v}: {sys:?}\n{d:?}");
                    }
                }
                Err(_) => assert!(!has_solution(&sup), "system {k} wrongly inconsistent: {sys:?}"),
            }
        }
    }
}

#[test]
fn search_finds_a_solution_iff_one_exists() {
    let t = table();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let cfg = Config::default();
    for k in 0..300 {
        let sys: ConstraintSystem = gen::system(&t.uni, &mut rng, 3);
        let expected = has_solution(&t.solution_supports(&sys));
        let mut nodes = 0;
        let got = labeling_search(&sys, &sys.domains, &cfg, &|_| true, &mut nodes);
        match got {
            SearchOutcome::Found(vals) => {
                assert!(expected, "system {k}");
                assert!(sys.satisfied_by(&vals));
            }
            SearchOutcome::NotFound => assert!(!expected, "system {k} has a solution: {sys:?}"),
            SearchOutcome::Exhausted => panic!("budget exhausted on system {k}"),
        }
    }
}

#[test]
fn anomaly_verdicts_match_enumeration() {
    let t = table();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let cfg = Config::default();
    for kind in AnomalyKind::ALL {
        let mut found = 0;
        for k in 0..150 {
            let sys = gen::single_constraint(&t.uni, &mut rng);
            let exists = t.anomaly_exists(&sys, 0, kind);
            let r = detect_anomaly(&sys, 0, kind, &cfg);
            match &r.status {
                AnomalyStatus::WitnessFound(w) => {
                    assert!(exists, "{kind:?} system {k}: spurious witness");
                    assert!(sys.satisfied_by(&w.values));
                    let idx = |i: usize| t.uni.idx(&w.values[i]);
                    let fpfilter::propagate::Constraint::Arith { op, .. } = sys.constraints[0] else { unreachable!() };
                    assert!(t.anomaly(kind, idx(1), op, idx(2), idx(0)), "{kind:?} system {k}: {w:?}");
                    found += 1;
                }
                AnomalyStatus::ProvedImpossible => assert!(!exists, "{kind:?} system {k} missed: {sys:?}"),
                AnomalyStatus::Unknown => panic!("{kind:?} system {k}: budget exhausted"),
            }
        }
        println!("{kind:?}: {found} witnesses");
    }
}
