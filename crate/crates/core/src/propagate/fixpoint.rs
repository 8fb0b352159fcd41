//! FIFO-worklist propagation to a fixpoint.

use std::collections::VecDeque;

use super::nan;
use super::system::{Constraint, ConstraintSystem, VarId};
use super::Config;
use crate::intervals::VarDomain;
use crate::projections::{direct, inverse, Operand};

/// Domains after propagation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refined {
    pub domains: Vec<VarDomain>,
    /// Constraint revisions performed.
    pub iterations: u64,
    /// Whether `max_iterations` stopped propagation before the fixpoint.
    pub truncated: bool,
}

/// Some variable's domain became empty: the system has no solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inconsistent {
    pub var: VarId,
    pub iterations: u64,
}

/// Propagates every constraint of `sys` to a fixpoint.
pub fn propagate_fixpoint(sys: &ConstraintSystem, cfg: &Config) -> Result<Refined, Inconsistent> {
    let mut domains = sys.domains.clone();
    let engine = Engine::new(sys, cfg);
    let all: Vec<usize> = (0..sys.constraints.len()).collect();
    let (iterations, truncated) = engine.run(&mut domains, &all)?;
    Ok(Refined { domains, iterations, truncated })
}

pub(crate) struct Engine<'a> {
    sys: &'a ConstraintSystem,
    cfg: &'a Config,
    watchers: Vec<Vec<usize>>,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(sys: &'a ConstraintSystem, cfg: &'a Config) -> Self {
        let mut watchers = vec![Vec::new(); sys.names.len()];
        for (i, c) in sys.constraints.iter().enumerate() {
            for v in c.vars() {
                if !watchers[v].contains(&i) {
                    watchers[v].push(i);
                }
            }
        }
        Engine { sys, cfg, watchers }
    }

    pub(crate) fn watchers(&self, v: VarId) -> &[usize] {
        &self.watchers[v]
    }

    /// Runs the worklist seeded with `seeds`. Returns the number of
    /// revisions and whether the iteration limit cut it short.
    pub(crate) fn run(&self, domains: &mut [VarDomain], seeds: &[usize]) -> Result<(u64, bool), Inconsistent> {
        let n = self.sys.constraints.len();
        let mut queued = vec![false; n];
        let mut queue = VecDeque::new();
        for &c in seeds {
            if !queued[c] {
                queued[c] = true;
                queue.push_back(c);
            }
        }
        if let Some(v) = domains.iter().position(|d| d.is_empty()) {
            return Err(Inconsistent { var: v, iterations: 0 });
        }
        let mut iterations = 0u64;
        while let Some(c) = queue.pop_front() {
            if self.cfg.max_iterations.is_some_and(|m| iterations >= m) {
                return Ok((iterations, true));
            }
            queued[c] = false;
            iterations += 1;
            let changed = self.revise(&self.sys.constraints[c], domains).map_err(|var| Inconsistent { var, iterations })?;
            for v in changed {
                for &w in &self.watchers[v] {
                    if !queued[w] {
                        queued[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        Ok((iterations, false))
    }

    /// Applies one constraint. Returns the variables whose domain shrank,
    /// or the variable whose domain emptied.
    fn revise(&self, c: &Constraint, d: &mut [VarDomain]) -> Result<Vec<VarId>, VarId> {
        let mut changed = Vec::new();
        let mut set = |d: &mut [VarDomain], v: VarId, new: VarDomain| -> Result<(), VarId> {
            let new = new.meet(&d[v]);
            if new != d[v] {
                debug_assert!(new.is_subset(&d[v]));
                d[v] = new;
                if !changed.contains(&v) {
                    changed.push(v);
                }
            }
            if d[v].is_empty() {
                Err(v)
            } else {
                Ok(())
            }
        };
        match *c {
            Constraint::Member(v, i) => set(d, v, VarDomain::new(i, d[v].nan))?,
            Constraint::NanIs(v, f) => set(d, v, VarDomain::new(d[v].interval, f))?,
            Constraint::Arith { x, op, y, z, modes } => {
                let m = self.cfg.eval_mode;
                let ix = direct(op, &d[x].interval, &d[y].interval, &d[z].interval, modes).interval;
                let nx = nan::result_flag(op, &d[x], &d[y], &d[z]);
                set(d, x, VarDomain::new(ix, nx))?;
                for (which, v) in [(Operand::Left, y), (Operand::Right, z)] {
                    let (dx, dy, dz) = (d[x], d[y], d[z]);
                    let own = if which == Operand::Left { dy } else { dz };
                    let numeric = inverse(op, which, &dx.interval, &dy.interval, &dz.interval, modes, m).interval;
                    let via_nan = nan::operand_support(op, which, &dx, &dy, &dz);
                    let iv = numeric.convex_union(&via_nan);
                    set(d, v, VarDomain::new(iv, nan::operand_flag(&dx, &own)))?;
                }
            }
        }
        Ok(changed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::{FpInterval, NanFlag};
    use crate::roundsel::RoundingModeSet;
    use crate::softfloat::{FloatFormat, FloatVal, Op, RoundingMode};

    const F: FloatFormat = FloatFormat::BINARY32;

    fn iv(l: f64, u: f64) -> FpInterval {
        FpInterval::new(FloatVal::from_f64(F, l), FloatVal::from_f64(F, u)).unwrap()
    }

    #[test]
    fn addition_example() {
        let mut sys = ConstraintSystem::new(F);
        let (x, y, z) = (sys.add_var("x"), sys.add_var("y"), sys.add_var("z"));
        sys.add(Constraint::Member(y, iv(0.0, 5.0)));
        sys.add(Constraint::Member(z, iv(-0.0, 8.0)));
        sys.add(Constraint::NanIs(y, NanFlag::NotNaN));
        sys.add(Constraint::NanIs(z, NanFlag::NotNaN));
        sys.arith(x, y, Op::Add, z, RoundingModeSet::single(RoundingMode::Nearest));
        let r = propagate_fixpoint(&sys, &Config::default()).unwrap();
        assert_eq!(r.domains[x], VarDomain::new(iv(0.0, 13.0), NanFlag::NotNaN));
        assert!(!r.truncated);
    }

    #[test]
    fn no_constraints_keeps_domains() {
        let mut sys = ConstraintSystem::new(F);
        sys.add_var("a");
        let r = propagate_fixpoint(&sys, &Config::default()).unwrap();
        assert_eq!(r.domains, sys.domains);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn detects_inconsistency() {
        let mut sys = ConstraintSystem::new(F);
        let (x, y, z) = (sys.add_var("x"), sys.add_var("y"), sys.add_var("z"));
        sys.add(Constraint::Member(y, iv(1.0, 2.0)));
        sys.add(Constraint::Member(z, iv(1.0, 2.0)));
        sys.add(Constraint::Member(x, iv(10.0, 20.0)));
        for v in [x, y, z] {
            sys.add(Constraint::NanIs(v, NanFlag::NotNaN));
        }
        sys.arith(x, y, Op::Add, z, RoundingModeSet::all());
        assert!(propagate_fixpoint(&sys, &Config::default()).is_err());
    }

    #[test]
    fn nan_result_requires_an_invalid_pair() {
        let mut sys = ConstraintSystem::new(F);
        let (x, y, z) = (sys.add_var("x"), sys.add_var("y"), sys.add_var("z"));
        sys.add(Constraint::Member(x, FpInterval::Empty));
        sys.add(Constraint::NanIs(y, NanFlag::NotNaN));
        sys.add(Constraint::NanIs(z, NanFlag::NotNaN));
        sys.add(Constraint::Member(z, iv(-1.0, 0.0)));
        sys.arith(x, y, Op::Mul, z, RoundingModeSet::all());
        let r = propagate_fixpoint(&sys, &Config::default()).unwrap();
        // only 0 * inf is invalid here
        assert_eq!(r.domains[y].interval, FpInterval::new(F.neg_inf(), F.pos_inf()).unwrap());
        assert_eq!(r.domains[z].interval, FpInterval::new(F.neg_zero(), F.pos_zero()).unwrap());
    }

    #[test]
    fn iteration_limit_truncates() {
        let mut sys = ConstraintSystem::new(F);
        let (x, y, z) = (sys.add_var("x"), sys.add_var("y"), sys.add_var("z"));
        sys.add(Constraint::Member(y, iv(0.0, 5.0)));
        sys.arith(x, y, Op::Add, z, RoundingModeSet::all());
        let cfg = Config { max_iterations: Some(1), ..Config::default() };
        let r = propagate_fixpoint(&sys, &cfg).unwrap();
        assert!(r.truncated);
        assert_eq!(r.iterations, 1);
    }
}
