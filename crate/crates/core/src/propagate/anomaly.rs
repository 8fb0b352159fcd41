//! Anomaly detection: each anomaly is a predicate on one operation
//! `x = y op z`, split into cases that intervals can express; every case is
//! propagated and then searched for a concrete witness.

use super::fixpoint::Engine;
use super::search::{labeling_search, SearchOutcome};
use super::system::{Constraint, ConstraintSystem};
use super::Config;
use crate::intervals::{FpInterval, NanFlag, VarDomain};
use crate::softfloat::{exact_result, FloatFormat, FloatVal, Op, RoundingMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnomalyKind {
    /// Finite operands, infinite result.
    FiniteToInfinite,
    /// Non-NaN operands, NaN result.
    NumericToNaN,
    /// Normal operands, nonzero subnormal result.
    GradualUnderflow,
    /// Normal operands, zero result, nonzero exact result.
    HardUnderflow,
    /// A subnormal operand, zero result, nonzero exact result.
    SoftUnderflow,
    /// The result equals an operand although the other one is not neutral.
    Absorption,
}

impl AnomalyKind {
    pub const ALL: [AnomalyKind; 6] = [
        AnomalyKind::FiniteToInfinite,
        AnomalyKind::NumericToNaN,
        AnomalyKind::GradualUnderflow,
        AnomalyKind::HardUnderflow,
        AnomalyKind::SoftUnderflow,
        AnomalyKind::Absorption,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AnomalyKind::FiniteToInfinite => "finite_to_infinite",
            AnomalyKind::NumericToNaN => "numeric_to_nan",
            AnomalyKind::GradualUnderflow => "gradual_underflow",
            AnomalyKind::HardUnderflow => "hard_underflow",
            AnomalyKind::SoftUnderflow => "soft_underflow",
            AnomalyKind::Absorption => "absorption",
        }
    }

    /// The predicate on concrete values, `x` being the rounded result.
    pub fn holds(&self, y: &FloatVal, op: Op, z: &FloatVal, x: &FloatVal) -> bool {
        let exact_nonzero = || exact_result(y, op, z).is_some_and(|e| !e.is_zero());
        match self {
            AnomalyKind::FiniteToInfinite => y.is_finite() && z.is_finite() && x.is_infinite(),
            AnomalyKind::NumericToNaN => !y.is_nan() && !z.is_nan() && x.is_nan(),
            AnomalyKind::GradualUnderflow => y.is_normal() && z.is_normal() && x.is_subnormal(),
            AnomalyKind::HardUnderflow => y.is_normal() && z.is_normal() && x.is_zero() && exact_nonzero(),
            AnomalyKind::SoftUnderflow => (y.is_subnormal() || z.is_subnormal()) && x.is_zero() && exact_nonzero(),
            AnomalyKind::Absorption => y.is_finite() && z.is_finite() && absorbs(y, op, z, x),
        }
    }
}

fn absorbs(y: &FloatVal, op: Op, z: &FloatVal, x: &FloatVal) -> bool {
    let one = FloatVal::from_f64(y.format(), 1.0);
    let eq = |a: &FloatVal, b: &FloatVal| a.num_eq(b);
    let pm = |a: &FloatVal, b: &FloatVal| a.num_eq(b) || a.num_eq(&b.negate());
    match op {
        Op::Add => (eq(x, y) && !z.is_zero()) || (eq(x, z) && !y.is_zero()),
        Op::Sub => (eq(x, y) && !z.is_zero()) || (eq(x, &z.negate()) && !y.is_zero()),
        Op::Mul => (pm(x, y) && !pm(z, &one)) || (pm(x, z) && !pm(y, &one)),
        Op::Div => pm(x, y) && !pm(z, &one),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// One value per variable of the system.
    pub values: Vec<FloatVal>,
    /// A rounding mode under which the operation produces the anomaly.
    pub mode: RoundingMode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnomalyStatus {
    WitnessFound(Witness),
    ProvedImpossible,
    /// The search budget ran out.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnomalyFinding {
    pub kind: AnomalyKind,
    pub constraint: usize,
    pub status: AnomalyStatus,
    /// Search nodes spent.
    pub nodes: u64,
}

fn interval(l: FloatVal, u: FloatVal) -> FpInterval {
    FpInterval::new(l, u).expect("ordered bounds")
}

fn number(i: FpInterval) -> VarDomain {
    VarDomain::new(i, NanFlag::NotNaN)
}

/// Restrictions on `(x, y, z)` whose union covers the predicate.
fn cases(kind: AnomalyKind, f: FloatFormat) -> Vec<[VarDomain; 3]> {
    let finite = number(interval(f.fmax().negate(), f.fmax()));
    let nonnan = number(FpInterval::full(f));
    let sub_hi = f.fnor_min().pred().expect("fnor_min has a predecessor");
    let normal = [number(interval(f.fmax().negate(), f.fnor_min().negate())), number(interval(f.fnor_min(), f.fmax()))];
    let subnormal = [number(interval(sub_hi.negate(), f.fmin().negate())), number(interval(f.fmin(), sub_hi))];
    let zero = number(interval(f.neg_zero(), f.pos_zero()));
    let mut out = Vec::new();
    match kind {
        AnomalyKind::FiniteToInfinite => {
            for inf in [f.neg_inf(), f.pos_inf()] {
                out.push([number(FpInterval::singleton(inf)), finite, finite]);
            }
        }
        AnomalyKind::NumericToNaN => out.push([VarDomain::new(FpInterval::Empty, NanFlag::MayBeNaN), nonnan, nonnan]),
        AnomalyKind::GradualUnderflow => {
            for y in normal {
                for z in normal {
                    for x in subnormal {
                        out.push([x, y, z]);
                    }
                }
            }
        }
        AnomalyKind::HardUnderflow => {
            for y in normal {
                for z in normal {
                    out.push([zero, y, z]);
                }
            }
        }
        AnomalyKind::SoftUnderflow => {
            for s in subnormal {
                out.push([zero, s, nonnan]);
                out.push([zero, nonnan, s]);
            }
        }
        AnomalyKind::Absorption => {
            out.push([nonnan, finite, finite]);
        }
    }
    out
}

/// Looks for values of `sys` under which constraint `c` (an `Arith`)
/// exhibits `kind`.
pub fn detect_anomaly(sys: &ConstraintSystem, c: usize, kind: AnomalyKind, cfg: &Config) -> AnomalyFinding {
    assert!(cfg.search_budget > 0, "search budget must be positive");
    let Constraint::Arith { x, op, y, z, .. } = sys.constraints[c] else {
        panic!("anomalies are defined on arithmetic constraints");
    };
    let engine = Engine::new(sys, cfg);
    let all: Vec<usize> = (0..sys.constraints.len()).collect();
    let accept = |vals: &[FloatVal]| kind.holds(&vals[y], op, &vals[z], &vals[x]);
    let mut nodes = 0u64;
    let mut exhausted = false;
    for [cx, cy, cz] in cases(kind, sys.format) {
        let mut d = sys.domains.clone();
        for (v, r) in [(x, cx), (y, cy), (z, cz)] {
            d[v] = d[v].meet(&r);
        }
        if engine.run(&mut d, &all).is_err() {
            continue;
        }
        match labeling_search(sys, &d, cfg, &accept, &mut nodes) {
            SearchOutcome::Found(values) => {
                let mode = sys.constraints[c].arith_mode(&values).expect("witness satisfies its constraint");
                let status = AnomalyStatus::WitnessFound(Witness { values, mode });
                return AnomalyFinding { kind, constraint: c, status, nodes };
            }
            SearchOutcome::Exhausted => exhausted = true,
            SearchOutcome::NotFound => {}
        }
    }
    let status = if exhausted { AnomalyStatus::Unknown } else { AnomalyStatus::ProvedImpossible };
    AnomalyFinding { kind, constraint: c, status, nodes }
}
