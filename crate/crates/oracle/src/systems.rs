//! Brute-force solution sets of whole constraint systems, and brute-force
//! anomaly predicates, over a materialized [`OpTable`].

use std::collections::HashMap;

use fpfilter::intervals::VarDomain;
use fpfilter::propagate::{AnomalyKind, Constraint, ConstraintSystem, VarId};
use fpfilter::softfloat::Op;
use num_traits::{One, Signed, Zero};

use crate::{Ext, OpTable};

impl OpTable {
    /// Index of a value in a domain test; `n()` stands for NaN.
    fn allowed(&self, d: &VarDomain, i: usize) -> bool {
        if i == self.n() {
            d.nan.may()
        } else {
            d.interval.contains(&self.uni.vals[i])
        }
    }

    /// Result index with NaN operands handled; `n()` is NaN.
    fn get_nan(&self, iy: usize, op: Op, iz: usize, r: fpfilter::softfloat::RoundingMode) -> usize {
        if iy == self.n() || iz == self.n() {
            self.n()
        } else {
            self.get(iy, op, iz, r)
        }
    }

    /// Values (indices, `n()` for NaN) each variable takes in some solution
    /// of the whole system. All sets are empty when there is no solution.
    pub fn solution_supports(&self, sys: &ConstraintSystem) -> Vec<Vec<bool>> {
        let n = self.n();
        let nv = sys.names.len();
        // unary filters
        let mut unary: Vec<Vec<bool>> =
            (0..nv).map(|v| (0..=n).map(|i| self.allowed(&sys.domains[v], i)).collect()).collect();
        for c in &sys.constraints {
            match *c {
                Constraint::Member(v, iv) => {
                    for (ok, x) in unary[v].iter_mut().zip(&self.uni.vals) {
                        *ok &= iv.contains(x);
                    }
                }
                Constraint::NanIs(v, f) => unary[v][n] &= f.may(),
                Constraint::Arith { .. } => {}
            }
        }
        let ariths: Vec<Constraint> =
            sys.constraints.iter().copied().filter(|c| matches!(c, Constraint::Arith { .. })).collect();
        // connected components of the arithmetic constraints
        let mut comp: Vec<usize> = (0..nv).collect();
        fn find(comp: &mut [usize], v: usize) -> usize {
            if comp[v] != v {
                let r = find(comp, comp[v]);
                comp[v] = r;
            }
            comp[v]
        }
        for c in &ariths {
            let vs = c.vars();
            for w in &vs[1..] {
                let (a, b) = (find(&mut comp, vs[0]), find(&mut comp, *w));
                comp[a] = b;
            }
        }
        let mut support = unary.clone();
        let mut any_empty = unary.iter().any(|u| !u.iter().any(|&b| b));
        let roots: Vec<usize> = {
            let mut r: Vec<usize> = ariths.iter().map(|c| find(&mut comp, c.vars()[0])).collect();
            r.sort();
            r.dedup();
            r
        };
        for root in roots {
            let group: Vec<&Constraint> = ariths.iter().filter(|c| find(&mut comp, c.vars()[0]) == root).collect();
            let rel = self.join(&group, &unary);
            let vars = rel.0;
            if rel.1.is_empty() {
                any_empty = true;
                continue;
            }
            for (k, &v) in vars.iter().enumerate() {
                support[v] = vec![false; n + 1];
                for t in &rel.1 {
                    support[v][t[k] as usize] = true;
                }
            }
        }
        if any_empty {
            return vec![vec![false; n + 1]; nv];
        }
        support
    }

    /// Natural join of the constraints' relations. Returns the variable
    /// order and the tuples.
    fn join(&self, group: &[&Constraint], unary: &[Vec<bool>]) -> (Vec<VarId>, Vec<Vec<u16>>) {
        let mut vars: Vec<VarId> = Vec::new();
        let mut tuples: Vec<Vec<u16>> = vec![Vec::new()];
        let mut pending: Vec<&Constraint> = group.to_vec();
        while !pending.is_empty() {
            // prefer a constraint sharing variables with what is joined
            let k = pending.iter().position(|c| c.vars().iter().any(|v| vars.contains(v))).unwrap_or(0);
            let c = pending.remove(k);
            let Constraint::Arith { x, op, y, z, modes } = *c else { unreachable!() };
            let rel = self.relation(x, op, y, z, modes, unary);
            let cv = [x, y, z];
            let new_vars: Vec<VarId> = {
                let mut nvs = Vec::new();
                for v in cv {
                    if !vars.contains(&v) && !nvs.contains(&v) {
                        nvs.push(v);
                    }
                }
                nvs
            };
            let shared: Vec<VarId> = {
                let mut s = Vec::new();
                for v in cv {
                    if vars.contains(&v) && !s.contains(&v) {
                        s.push(v);
                    }
                }
                s
            };
            let pos_in_c = |v: VarId| cv.iter().position(|&w| w == v).unwrap();
            let mut index: HashMap<Vec<u16>, Vec<&[u16; 3]>> = HashMap::new();
            for t in &rel {
                let key: Vec<u16> = shared.iter().map(|&v| t[pos_in_c(v)]).collect();
                index.entry(key).or_default().push(t);
            }
            let pos_in_vars: Vec<usize> = shared.iter().map(|v| vars.iter().position(|w| w == v).unwrap()).collect();
            let mut out = Vec::new();
            for t in &tuples {
                let key: Vec<u16> = pos_in_vars.iter().map(|&p| t[p]).collect();
                if let Some(ms) = index.get(&key) {
                    for m in ms {
                        let mut nt = t.clone();
                        nt.extend(new_vars.iter().map(|&v| m[pos_in_c(v)]));
                        out.push(nt);
                    }
                }
            }
            vars.extend(new_vars);
            tuples = out;
            if tuples.is_empty() {
                break;
            }
        }
        (vars, tuples)
    }

    /// Tuples `(x, y, z)` of one arithmetic constraint within the unary
    /// filters; repeated variables must take equal values.
    fn relation(
        &self,
        x: VarId,
        op: Op,
        y: VarId,
        z: VarId,
        modes: fpfilter::roundsel::RoundingModeSet,
        unary: &[Vec<bool>],
    ) -> Vec<[u16; 3]> {
        let n = self.n();
        let mut out = Vec::new();
        for iy in (0..=n).filter(|&i| unary[y][i]) {
            for iz in (0..=n).filter(|&i| unary[z][i]) {
                if y == z && iy != iz {
                    continue;
                }
                let mut seen = Vec::new();
                for r in modes.modes() {
                    let ix = self.get_nan(iy, op, iz, r);
                    if seen.contains(&ix) || !unary[x][ix] {
                        continue;
                    }
                    if (x == y && ix != iy) || (x == z && ix != iz) {
                        continue;
                    }
                    seen.push(ix);
                    out.push([ix as u16, iy as u16, iz as u16]);
                }
            }
        }
        out
    }

    /// Whether some concrete solution of the single constraint `c` (within
    /// the system's unary restrictions) exhibits `kind`. Ignores the other
    /// arithmetic constraints.
    pub fn anomaly_exists(&self, sys: &ConstraintSystem, c: usize, kind: AnomalyKind) -> bool {
        let Constraint::Arith { x, op, y, z, modes } = sys.constraints[c] else {
            panic!("not an arithmetic constraint");
        };
        let mut single = sys.clone();
        single.constraints.retain(|k| !matches!(k, Constraint::Arith { .. }));
        single.constraints.push(Constraint::Arith { x, op, y, z, modes });
        let sup = self.solution_supports(&single);
        if !sup[x].iter().any(|&b| b) {
            return false;
        }
        let unary: Vec<Vec<bool>> = sup;
        self.relation(x, op, y, z, modes, &unary).iter().any(|t| self.anomaly(kind, t[1] as usize, op, t[2] as usize, t[0] as usize))
    }

    fn exact(&self, i: usize) -> Option<&Ext> {
        (i < self.n()).then(|| &self.uni.exact[i])
    }

    fn magnitude_class(&self, i: usize) -> Option<std::cmp::Ordering> {
        // compared with the smallest normal magnitude; None for NaN, zero, infinities
        let fnor = crate::pow2(self.uni.fmt.emin());
        match self.exact(i)? {
            Ext::Fin(q) if !q.is_zero() => Some(q.abs().cmp(&fnor)),
            _ => None,
        }
    }

    fn is_normal(&self, i: usize) -> bool {
        self.magnitude_class(i).is_some_and(|o| o != std::cmp::Ordering::Less)
    }

    fn is_subnormal(&self, i: usize) -> bool {
        self.magnitude_class(i) == Some(std::cmp::Ordering::Less)
    }

    fn is_finite(&self, i: usize) -> bool {
        matches!(self.exact(i), Some(Ext::Fin(_)))
    }

    fn is_zero(&self, i: usize) -> bool {
        matches!(self.exact(i), Some(Ext::Fin(q)) if q.is_zero())
    }

    fn real_result_nonzero(&self, iy: usize, op: Op, iz: usize) -> bool {
        let (Some(Ext::Fin(a)), Some(Ext::Fin(b))) = (self.exact(iy), self.exact(iz)) else {
            return false;
        };
        match op {
            Op::Add => !(a + b).is_zero(),
            Op::Sub => !(a - b).is_zero(),
            Op::Mul => !a.is_zero() && !b.is_zero(),
            Op::Div => !a.is_zero(),
        }
    }

    /// The anomaly predicate on value indices, `ix` being the rounded result.
    pub fn anomaly(&self, kind: AnomalyKind, iy: usize, op: Op, iz: usize, ix: usize) -> bool {
        let n = self.n();
        match kind {
            AnomalyKind::FiniteToInfinite => {
                self.is_finite(iy) && self.is_finite(iz) && matches!(self.exact(ix), Some(Ext::NegInf | Ext::PosInf))
            }
            AnomalyKind::NumericToNaN => iy < n && iz < n && ix == n,
            AnomalyKind::GradualUnderflow => self.is_normal(iy) && self.is_normal(iz) && self.is_subnormal(ix),
            AnomalyKind::HardUnderflow => {
                self.is_normal(iy) && self.is_normal(iz) && self.is_zero(ix) && self.real_result_nonzero(iy, op, iz)
            }
            AnomalyKind::SoftUnderflow => {
                (self.is_subnormal(iy) || self.is_subnormal(iz)) && self.is_zero(ix) && self.real_result_nonzero(iy, op, iz)
            }
            AnomalyKind::Absorption => {
                let (Some(Ext::Fin(y)), Some(Ext::Fin(z)), Some(Ext::Fin(x))) = (self.exact(iy), self.exact(iz), self.exact(ix))
                else {
                    return false;
                };
                let one = num_rational::BigRational::one();
                let pm = |a: &num_rational::BigRational, b: &num_rational::BigRational| a.abs() == b.abs();
                match op {
                    Op::Add => (x == y && !z.is_zero()) || (x == z && !y.is_zero()),
                    Op::Sub => (x == y && !z.is_zero()) || (*x == -z && !y.is_zero()),
                    Op::Mul => (pm(x, y) && !pm(z, &one)) || (pm(x, z) && !pm(y, &one)),
                    Op::Div => pm(x, y) && !pm(z, &one),
                }
            }
        }
    }
}
