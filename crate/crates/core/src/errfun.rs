//! Rounding-error functions and directed evaluation of real expressions.

use crate::softfloat::{fp_op, round, DomainError, ExactReal, FloatFormat, FloatVal, Op, RoundingMode};

fn diff(a: &FloatVal, b: &FloatVal) -> FloatVal {
    // a - b for neighbors is always representable (or infinite), so any
    // rounding gives the exact value.
    let v = fp_op(a, Op::Sub, b, RoundingMode::Nearest);
    debug_assert!(!v.is_nan());
    v
}

/// `∇↓(x) = succ(x) - x`; undefined at `+inf`.
pub fn err_down(x: &FloatVal) -> Result<FloatVal, DomainError> {
    Ok(diff(&x.succ()?, x))
}

/// `∇↑(x) = pred(x) - x`; undefined at `-inf`.
pub fn err_up(x: &FloatVal) -> Result<FloatVal, DomainError> {
    Ok(diff(&x.pred()?, x))
}

/// `∇2n-(x)`: twice the largest downward error of round-to-nearest at `x`.
pub fn err2_near_neg(x: &FloatVal) -> Result<FloatVal, DomainError> {
    let f = x.format();
    if x.is_nan() {
        return Err(DomainError::NaN);
    }
    if *x == f.neg_inf() {
        Ok(f.pos_inf())
    } else if *x == f.fmax().negate() {
        Ok(diff(x, &x.succ()?))
    } else {
        Ok(diff(&x.pred()?, x))
    }
}

/// `∇2n+(x)`: twice the largest upward error of round-to-nearest at `x`.
pub fn err2_near_pos(x: &FloatVal) -> Result<FloatVal, DomainError> {
    let f = x.format();
    if x.is_nan() {
        return Err(DomainError::NaN);
    }
    if *x == f.pos_inf() {
        Ok(f.neg_inf())
    } else if *x == f.fmax() {
        Ok(diff(x, &x.pred()?))
    } else {
        Ok(diff(&x.succ()?, x))
    }
}

/// How precisely expressions are evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum EvalMode {
    /// Evaluate over exact reals, round once.
    #[default]
    Exact,
    /// Evaluate bottom-up with one directed floating-point operation per
    /// node bound.
    Composed,
}

/// A real-valued expression over float constants.
#[derive(Clone, Debug)]
pub enum RealExpr {
    Float(FloatVal),
    /// An exact constant such as the divisor 2 in `∇/2`.
    Scalar(ExactReal),
    Bin(Box<RealExpr>, Op, Box<RealExpr>),
}

#[allow(clippy::should_implement_trait)]
impl RealExpr {
    pub fn float(x: FloatVal) -> Self {
        RealExpr::Float(x)
    }

    pub fn bin(self, op: Op, rhs: RealExpr) -> Self {
        RealExpr::Bin(Box::new(self), op, Box::new(rhs))
    }

    pub fn add(self, rhs: RealExpr) -> Self {
        self.bin(Op::Add, rhs)
    }

    pub fn sub(self, rhs: RealExpr) -> Self {
        self.bin(Op::Sub, rhs)
    }

    pub fn mul(self, rhs: RealExpr) -> Self {
        self.bin(Op::Mul, rhs)
    }

    pub fn div(self, rhs: RealExpr) -> Self {
        self.bin(Op::Div, rhs)
    }

    /// `self / 2`, as an exact real division.
    pub fn half(self) -> Self {
        self.div(RealExpr::Scalar(ExactReal::from_int(2)))
    }

    /// `self * 2`, as an exact real product.
    pub fn twice(self) -> Self {
        self.mul(RealExpr::Scalar(ExactReal::from_int(2)))
    }

    /// Exact value, or None when some node is an invalid form.
    pub fn exact(&self) -> Option<ExactReal> {
        match self {
            RealExpr::Float(x) => x.to_exact(),
            RealExpr::Scalar(c) => Some(c.clone()),
            RealExpr::Bin(a, op, b) => {
                let (a, b) = (a.exact()?, b.exact()?);
                match op {
                    Op::Add => a.add(&b),
                    Op::Sub => a.sub(&b),
                    Op::Mul => a.mul(&b),
                    Op::Div => a.div(&b),
                }
            }
        }
    }

    fn format(&self) -> Option<FloatFormat> {
        match self {
            RealExpr::Float(x) => Some(x.format()),
            RealExpr::Scalar(_) => None,
            RealExpr::Bin(a, _, b) => a.format().or_else(|| b.format()),
        }
    }

    /// Outward-rounded enclosure `[lo, hi]` computed node by node in `fmt`.
    fn composed(&self, fmt: FloatFormat) -> (FloatVal, FloatVal) {
        use RoundingMode::{Down, Up};
        let top = (fmt.neg_inf(), fmt.pos_inf());
        match self {
            RealExpr::Float(x) => {
                let v = x.to_exact().expect("finite leaf");
                if v.is_zero() {
                    let z = if x.is_sign_negative() { fmt.neg_zero() } else { fmt.pos_zero() };
                    (z, z)
                } else {
                    (round(fmt, &v, Down), round(fmt, &v, Up))
                }
            }
            RealExpr::Scalar(c) => {
                if c.is_zero() {
                    (fmt.pos_zero(), fmt.pos_zero())
                } else {
                    (round(fmt, c, Down), round(fmt, c, Up))
                }
            }
            RealExpr::Bin(a, op, b) => {
                let (al, au) = a.composed(fmt);
                let (bl, bu) = b.composed(fmt);
                let (lo, hi) = match op {
                    Op::Add => (fp_op(&al, Op::Add, &bl, Down), fp_op(&au, Op::Add, &bu, Up)),
                    Op::Sub => (fp_op(&al, Op::Sub, &bu, Down), fp_op(&au, Op::Sub, &bl, Up)),
                    Op::Mul | Op::Div => {
                        if *op == Op::Div && bl.to_f64() <= 0.0 && bu.to_f64() >= 0.0 {
                            return top;
                        }
                        let corners = [(al, bl), (al, bu), (au, bl), (au, bu)];
                        let mut lo = fmt.pos_inf();
                        let mut hi = fmt.neg_inf();
                        for (p, q) in corners {
                            let d = fp_op(&p, *op, &q, Down);
                            let u = fp_op(&p, *op, &q, Up);
                            if d.is_nan() || u.is_nan() {
                                return top;
                            }
                            lo = lo.sym_min(d);
                            hi = hi.sym_max(u);
                        }
                        (lo, hi)
                    }
                };
                if lo.is_nan() || hi.is_nan() {
                    top
                } else {
                    (lo, hi)
                }
            }
        }
    }
}

/// Working format of composed evaluation: about twice the precision and a
/// much wider exponent range than `fmt`, as when binary32 bounds are
/// computed in binary64.
fn working_format(fmt: FloatFormat) -> FloatFormat {
    FloatFormat::mini((2 * fmt.p() + 5).min(62), (8 * fmt.emax()).min(16383))
}

/// Rounds a working-format value into `fmt`.
fn narrow(fmt: FloatFormat, x: &FloatVal, dir: RoundingMode) -> FloatVal {
    match x.to_exact() {
        None if x.is_sign_negative() => fmt.neg_inf(),
        None => fmt.pos_inf(),
        Some(v) if v.is_zero() => {
            if x.is_sign_negative() {
                fmt.neg_zero()
            } else {
                fmt.pos_zero()
            }
        }
        Some(v) => round(fmt, &v, dir),
    }
}

/// A directed evaluation and whether it is the correctly rounded value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Eval {
    pub value: FloatVal,
    pub exact: bool,
}

fn eval_dir(e: &RealExpr, m: EvalMode, dir: RoundingMode) -> Eval {
    let fmt = e.format().expect("expression without float leaves");
    let v = e.exact().expect("expression is an invalid form");
    assert!(!v.is_zero(), "expression evaluates to zero");
    let correct = round(fmt, &v, dir);
    match m {
        EvalMode::Exact => Eval { value: correct, exact: true },
        EvalMode::Composed => {
            // the flag is what an inexact flag would report: the enclosure
            // collapsed to a point, so every operation was exact
            let (lo, hi) = e.composed(working_format(fmt));
            let value = narrow(fmt, if dir == RoundingMode::Down { &lo } else { &hi }, dir);
            let exact = lo == hi;
            debug_assert!(!exact || value == correct);
            Eval { value, exact }
        }
    }
}

/// `⌊e⌋↓`: a float below the correctly rounded-down value of `e`.
pub fn eval_down(e: &RealExpr, m: EvalMode) -> Eval {
    eval_dir(e, m, RoundingMode::Down)
}

/// `⌈e⌉↑`: a float above the correctly rounded-up value of `e`.
pub fn eval_up(e: &RealExpr, m: EvalMode) -> Eval {
    eval_dir(e, m, RoundingMode::Up)
}

/// Lower bound for a float `x` satisfying `x ≥ e` (or `x > e` when
/// `strict`). None when the strict relation admits no float.
pub fn bound_below(e: &RealExpr, strict: bool, m: EvalMode) -> Option<FloatVal> {
    let down = eval_down(e, m);
    if strict {
        if down.value == down.value.format().pos_inf() {
            return None;
        }
        return Some(down.value.succ().expect("finite or -inf has a successor"));
    }
    let up = eval_up(e, m);
    Some(if up.exact { up.value } else { down.value })
}

/// Upper bound for a float `x` satisfying `x ≤ e` (or `x < e` when
/// `strict`). None when the strict relation admits no float.
pub fn bound_above(e: &RealExpr, strict: bool, m: EvalMode) -> Option<FloatVal> {
    let up = eval_up(e, m);
    if strict {
        if up.value == up.value.format().neg_inf() {
            return None;
        }
        return Some(up.value.pred().expect("finite or +inf has a predecessor"));
    }
    let down = eval_down(e, m);
    Some(if down.exact { down.value } else { up.value })
}
