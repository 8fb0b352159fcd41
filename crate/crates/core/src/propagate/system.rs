use crate::intervals::{FpInterval, NanFlag, VarDomain};
use crate::roundsel::RoundingModeSet;
use crate::softfloat::{fp_op, FloatFormat, FloatVal, Op, RoundingMode};

/// Index of a variable in its system.
pub type VarId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// `x = y op_r z` for some `r` in `modes`.
    Arith { x: VarId, op: Op, y: VarId, z: VarId, modes: RoundingModeSet },
    /// The non-NaN values of `x` lie in the interval. A NaN `x` satisfies
    /// it, so `Member(x, Empty)` forces `x` to be NaN.
    Member(VarId, FpInterval),
    /// Meets the NaN flag of `x`: `NotNaN` excludes NaN, `MayBeNaN` is
    /// no restriction.
    NanIs(VarId, NanFlag),
}

impl Constraint {
    pub fn vars(&self) -> Vec<VarId> {
        match *self {
            Constraint::Arith { x, y, z, .. } => vec![x, y, z],
            Constraint::Member(v, _) | Constraint::NanIs(v, _) => vec![v],
        }
    }

    /// The rounding mode under which an `Arith` constraint holds for the
    /// given values, if any. NaN results match any NaN.
    pub fn arith_mode(&self, vals: &[FloatVal]) -> Option<RoundingMode> {
        let Constraint::Arith { x, op, y, z, modes } = *self else {
            return None;
        };
        let found = modes.modes().find(|&r| same_value(&fp_op(&vals[y], op, &vals[z], r), &vals[x]));
        found
    }

    /// Whether concrete values satisfy the constraint.
    pub fn holds(&self, vals: &[FloatVal]) -> bool {
        match *self {
            Constraint::Arith { .. } => self.arith_mode(vals).is_some(),
            Constraint::Member(v, i) => vals[v].is_nan() || i.contains(&vals[v]),
            Constraint::NanIs(v, f) => f.may() || !vals[v].is_nan(),
        }
    }
}

/// Bitwise equality, with all NaNs equal.
pub fn same_value(a: &FloatVal, b: &FloatVal) -> bool {
    if a.is_nan() || b.is_nan() {
        a.is_nan() && b.is_nan()
    } else {
        a == b
    }
}

/// Named variables with domains, and the constraints over them.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub format: FloatFormat,
    pub names: Vec<String>,
    pub domains: Vec<VarDomain>,
    pub constraints: Vec<Constraint>,
}

impl ConstraintSystem {
    pub fn new(format: FloatFormat) -> Self {
        ConstraintSystem { format, names: Vec::new(), domains: Vec::new(), constraints: Vec::new() }
    }

    /// Declares a variable with the full domain, NaN included.
    pub fn add_var(&mut self, name: &str) -> VarId {
        self.names.push(name.to_string());
        self.domains.push(VarDomain::top(self.format));
        self.names.len() - 1
    }

    pub fn var(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn add(&mut self, c: Constraint) -> usize {
        for v in c.vars() {
            assert!(v < self.names.len(), "undeclared variable {v}");
        }
        if let Constraint::Member(_, i) = c {
            if let Some((l, _)) = i.bounds() {
                assert_eq!(l.format(), self.format, "interval of another format");
            }
        }
        self.constraints.push(c);
        self.constraints.len() - 1
    }

    pub fn arith(&mut self, x: VarId, y: VarId, op: Op, z: VarId, modes: RoundingModeSet) -> usize {
        self.add(Constraint::Arith { x, op, y, z, modes })
    }

    /// Whether an assignment lies in the declared domains and satisfies
    /// every constraint.
    pub fn satisfied_by(&self, vals: &[FloatVal]) -> bool {
        vals.len() == self.domains.len()
            && vals.iter().zip(&self.domains).all(|(v, d)| d.contains(v))
            && self.constraints.iter().all(|c| c.holds(vals))
    }
}
