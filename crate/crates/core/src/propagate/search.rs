//! Depth-first labeling search with propagation at every node.

use super::fixpoint::Engine;
use super::system::ConstraintSystem;
use super::Config;
use crate::intervals::{FpInterval, NanFlag, VarDomain};
use crate::softfloat::FloatVal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A full assignment satisfying every constraint and the acceptance
    /// predicate.
    Found(Vec<FloatVal>),
    /// The whole space was explored without success.
    NotFound,
    /// The node budget ran out.
    Exhausted,
}

/// Searches `domains` (already propagated or not) for an assignment of
/// `sys` accepted by `accept`. `nodes` counts branches taken, across calls.
pub fn labeling_search(
    sys: &ConstraintSystem,
    domains: &[VarDomain],
    cfg: &Config,
    accept: &dyn Fn(&[FloatVal]) -> bool,
    nodes: &mut u64,
) -> SearchOutcome {
    let engine = Engine::new(sys, cfg);
    let mut d = domains.to_vec();
    let all: Vec<usize> = (0..sys.constraints.len()).collect();
    if engine.run(&mut d, &all).is_err() {
        return SearchOutcome::NotFound;
    }
    let mut s = Search { sys, engine, cfg, accept, nodes };
    s.descend(d)
}

struct Search<'a, 'b> {
    sys: &'a ConstraintSystem,
    engine: Engine<'a>,
    cfg: &'a Config,
    accept: &'b dyn Fn(&[FloatVal]) -> bool,
    nodes: &'b mut u64,
}

fn value_of(d: &VarDomain) -> Option<FloatVal> {
    match (d.interval, d.nan) {
        (FpInterval::Empty, NanFlag::MayBeNaN) => None,
        (FpInterval::Bounds(l, u), NanFlag::NotNaN) if l == u => Some(l),
        _ => unreachable!("not a singleton domain"),
    }
}

impl Search<'_, '_> {
    fn descend(&mut self, d: Vec<VarDomain>) -> SearchOutcome {
        let widest = (0..d.len()).filter(|&v| d[v].count() > 1).max_by_key(|&v| (d[v].count(), std::cmp::Reverse(v)));
        let Some(v) = widest else {
            let vals: Vec<FloatVal> =
                d.iter().map(|dom| value_of(dom).unwrap_or_else(|| self.sys.format.qnan())).collect();
            return if self.sys.satisfied_by(&vals) && (self.accept)(&vals) {
                SearchOutcome::Found(vals)
            } else {
                SearchOutcome::NotFound
            };
        };
        let dom = d[v];
        let branches = if dom.nan.may() {
            [VarDomain::new(dom.interval, NanFlag::NotNaN), VarDomain::new(FpInterval::Empty, NanFlag::MayBeNaN)]
        } else {
            let (a, b) = dom.interval.split();
            [VarDomain::new(a, NanFlag::NotNaN), VarDomain::new(b, NanFlag::NotNaN)]
        };
        for b in branches {
            if *self.nodes >= self.cfg.search_budget {
                return SearchOutcome::Exhausted;
            }
            *self.nodes += 1;
            let mut child = d.clone();
            child[v] = b;
            if self.engine.run(&mut child, self.engine.watchers(v)).is_err() {
                continue;
            }
            match self.descend(child) {
                SearchOutcome::NotFound => {}
                other => return other,
            }
        }
        SearchOutcome::NotFound
    }
}
