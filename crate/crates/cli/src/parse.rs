//! Parser for constraint programs.
//!
//! ```text
//! format mini(3, 2);          # or binary32 (default), binary64
//! rounding {n, down};         # applies to the constraints that follow
//! var a, b, c;
//! a in [0x1p0, 0x1.ap3];
//! c = a + b;
//! check overflow, nan, absorption, underflow;
//! ```

use std::collections::BTreeSet;

use fpfilter::intervals::{FpInterval, NanFlag};
use fpfilter::propagate::{AnomalyKind, Constraint, ConstraintSystem};
use fpfilter::roundsel::RoundingModeSet;
use fpfilter::softfloat::hex::parse_float;
use fpfilter::softfloat::{FloatFormat, Op, RoundingMode};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

/// A parsed program: the system and the requested checks.
#[derive(Debug, Clone)]
pub struct Program {
    pub system: ConstraintSystem,
    pub format_name: String,
    pub checks: BTreeSet<AnomalyKind>,
    /// Source text of each constraint, for reports.
    pub constraint_text: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Punct(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (ln, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphanumeric() || c == '_' || c == '.' {
                let start = i;
                let hex = c == '0' && chars.get(i + 1).is_some_and(|d| *d == 'x' || *d == 'X');
                i += 1;
                while i < chars.len() {
                    let d = chars[i];
                    let prev = chars[i - 1];
                    let exp_sign = (d == '+' || d == '-')
                        && (if hex { prev == 'p' || prev == 'P' } else { (prev == 'e' || prev == 'E') && chars[start].is_ascii_digit() });
                    if d.is_ascii_alphanumeric() || d == '_' || d == '.' || exp_sign {
                        i += 1;
                    } else {
                        break;
                    }
                }
                out.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), line: ln + 1, col });
                continue;
            }
            if "=+-*/;,[](){}".contains(c) {
                out.push(Token { tok: Tok::Punct(c), line: ln + 1, col });
                i += 1;
                continue;
            }
            return Err(ParseError { line: ln + 1, col, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

enum Stmt {
    Format(FloatFormat, String),
    Rounding(RoundingModeSet),
    Var(Vec<(String, Token)>),
    In(Token, String, Token, String),
    Arith(Token, Token, Op, Token, String),
    Check(Vec<AnomalyKind>),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn err_at(&self, t: Option<&Token>, msg: impl Into<String>) -> ParseError {
        let (line, col) = t.map(|t| (t.line, t.col)).unwrap_or(self.end);
        ParseError { line, col, msg: msg.into() }
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self, what: &str) -> Result<Token, ParseError> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| self.err_at(None, format!("expected {what}, found end of input")))?;
        self.pos += 1;
        Ok(t)
    }

    fn punct(&mut self, c: char) -> Result<Token, ParseError> {
        let t = self.next(&format!("'{c}'"))?;
        if t.tok == Tok::Punct(c) {
            Ok(t)
        } else {
            Err(self.err_at(Some(&t), format!("expected '{c}'")))
        }
    }

    fn is_punct(&self, c: char) -> bool {
        self.peek().is_some_and(|t| t.tok == Tok::Punct(c))
    }

    fn word(&mut self, what: &str) -> Result<(String, Token), ParseError> {
        let t = self.next(what)?;
        match &t.tok {
            Tok::Word(w) => Ok((w.clone(), t.clone())),
            Tok::Punct(_) => Err(self.err_at(Some(&t), format!("expected {what}"))),
        }
    }

    fn ident(&mut self) -> Result<(String, Token), ParseError> {
        let (w, t) = self.word("a variable name")?;
        let ok = w.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && w.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if ok {
            Ok((w, t))
        } else {
            Err(self.err_at(Some(&t), format!("invalid variable name '{w}'")))
        }
    }

    fn number(&mut self) -> Result<(String, Token), ParseError> {
        let first = self.next("a number")?;
        let (sign, t) = match first.tok {
            Tok::Punct('-') => ("-", self.next("a number")?),
            Tok::Punct('+') => ("+", self.next("a number")?),
            _ => ("", first.clone()),
        };
        match &t.tok {
            Tok::Word(w) => Ok((format!("{sign}{w}"), first)),
            Tok::Punct(_) => Err(self.err_at(Some(&t), "expected a number")),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let (w, t) = self.word("an integer")?;
        w.parse().map_err(|_| self.err_at(Some(&t), format!("expected an integer, found '{w}'")))
    }

    fn statement(&mut self) -> Result<Stmt, ParseError> {
        let (head, _) = self.word("a statement")?;
        let stmt = match head.as_str() {
            "format" => {
                let (name, t) = self.word("a format name")?;
                match name.as_str() {
                    "binary32" => Stmt::Format(FloatFormat::BINARY32, name),
                    "binary64" => Stmt::Format(FloatFormat::BINARY64, name),
                    "mini" => {
                        self.punct('(')?;
                        let p = self.int()?;
                        self.punct(',')?;
                        let e = self.int()?;
                        self.punct(')')?;
                        let f = FloatFormat::new(p.clamp(0, u32::MAX as i64) as u32, e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
                            .map_err(|e| self.err_at(Some(&t), e.to_string()))?;
                        Stmt::Format(f, format!("mini({p},{e})"))
                    }
                    _ => return Err(self.err_at(Some(&t), format!("unknown format '{name}'"))),
                }
            }
            "rounding" => {
                self.punct('{')?;
                let mut modes = Vec::new();
                loop {
                    let (m, t) = self.word("a rounding mode")?;
                    modes.push(match m.as_str() {
                        "n" | "nearest" => RoundingMode::Nearest,
                        "down" => RoundingMode::Down,
                        "up" => RoundingMode::Up,
                        "zero" => RoundingMode::TowardZero,
                        _ => return Err(self.err_at(Some(&t), format!("unknown rounding mode '{m}'"))),
                    });
                    if self.is_punct(',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                self.punct('}')?;
                Stmt::Rounding(RoundingModeSet::new(&modes).expect("at least one mode"))
            }
            "var" => {
                let mut names = vec![self.ident()?];
                while self.is_punct(',') {
                    self.pos += 1;
                    names.push(self.ident()?);
                }
                Stmt::Var(names)
            }
            "check" => {
                let mut kinds = Vec::new();
                loop {
                    let (k, t) = self.word("a check name")?;
                    match k.as_str() {
                        "overflow" => kinds.push(AnomalyKind::FiniteToInfinite),
                        "nan" => kinds.push(AnomalyKind::NumericToNaN),
                        "absorption" => kinds.push(AnomalyKind::Absorption),
                        "underflow" => kinds.extend([
                            AnomalyKind::GradualUnderflow,
                            AnomalyKind::HardUnderflow,
                            AnomalyKind::SoftUnderflow,
                        ]),
                        "gradual_underflow" => kinds.push(AnomalyKind::GradualUnderflow),
                        "hard_underflow" => kinds.push(AnomalyKind::HardUnderflow),
                        "soft_underflow" => kinds.push(AnomalyKind::SoftUnderflow),
                        _ => return Err(self.err_at(Some(&t), format!("unknown check '{k}'"))),
                    }
                    if self.is_punct(',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                Stmt::Check(kinds)
            }
            _ => {
                self.pos -= 1;
                let (_, x) = self.ident()?;
                if self.is_punct('=') {
                    self.pos += 1;
                    let (_, y) = self.ident()?;
                    let ot = self.next("an operator")?;
                    let op = match ot.tok {
                        Tok::Punct('+') => Op::Add,
                        Tok::Punct('-') => Op::Sub,
                        Tok::Punct('*') => Op::Mul,
                        Tok::Punct('/') => Op::Div,
                        _ => return Err(self.err_at(Some(&ot), "expected one of + - * /")),
                    };
                    let (_, z) = self.ident()?;
                    let text = format!("{} = {} {} {}", word(&x), word(&y), op.symbol(), word(&z));
                    Stmt::Arith(x, y, op, z, text)
                } else {
                    let (kw, t) = self.word("'=' or 'in'")?;
                    if kw != "in" {
                        return Err(self.err_at(Some(&t), "expected '=' or 'in'"));
                    }
                    let open = self.punct('[')?;
                    let (lo, _) = self.number()?;
                    self.punct(',')?;
                    let (hi, _) = self.number()?;
                    self.punct(']')?;
                    Stmt::In(x, lo, open, hi)
                }
            }
        };
        self.punct(';')?;
        Ok(stmt)
    }
}

fn word(t: &Token) -> &str {
    match &t.tok {
        Tok::Word(w) => w,
        Tok::Punct(_) => "",
    }
}

/// Parses a program.
pub fn parse(src: &str) -> Result<Program, ParseError> {
    let toks = lex(src)?;
    let last_line = src.lines().count().max(1);
    let end = (last_line, src.lines().last().map(|l| l.chars().count() + 1).unwrap_or(1));
    let mut p = Parser { toks, pos: 0, end };
    let mut stmts = Vec::new();
    while let Some(at) = p.peek().cloned() {
        stmts.push((p.statement()?, at));
    }
    let mut format = None;
    for (s, at) in &stmts {
        if let Stmt::Format(f, name) = s {
            if format.is_some() {
                return Err(p.err_at(Some(at), "duplicate format declaration"));
            }
            format = Some((*f, name.clone()));
        }
    }
    let (fmt, format_name) = format.unwrap_or((FloatFormat::BINARY32, "binary32".to_string()));
    let mut sys = ConstraintSystem::new(fmt);
    let mut modes = RoundingModeSet::single(RoundingMode::Nearest);
    let mut checks = BTreeSet::new();
    let mut constraint_text = Vec::new();
    let lookup = |sys: &ConstraintSystem, t: &Token| {
        sys.var(word(t)).ok_or_else(|| ParseError { line: t.line, col: t.col, msg: format!("unknown variable '{}'", word(t)) })
    };
    for (s, _) in stmts {
        match s {
            Stmt::Format(..) => {}
            Stmt::Rounding(m) => modes = m,
            Stmt::Check(k) => checks.extend(k),
            Stmt::Var(names) => {
                for (n, t) in names {
                    if sys.var(&n).is_some() {
                        return Err(ParseError { line: t.line, col: t.col, msg: format!("variable '{n}' declared twice") });
                    }
                    sys.add_var(&n);
                }
            }
            Stmt::In(x, lo, lt, hi) => {
                let v = lookup(&sys, &x)?;
                let bad = |m: String| ParseError { line: lt.line, col: lt.col, msg: m };
                // inexact literals are widened outward
                let l = parse_float(fmt, &lo, RoundingMode::Down).map_err(|e| bad(e.to_string()))?.0;
                let u = parse_float(fmt, &hi, RoundingMode::Up).map_err(|e| bad(e.to_string()))?.0;
                if l.is_nan() || u.is_nan() {
                    return Err(bad("interval bounds cannot be NaN".into()));
                }
                let iv = FpInterval::new(l, u).ok_or_else(|| bad(format!("empty interval [{lo}, {hi}]")))?;
                sys.add(Constraint::Member(v, iv));
                sys.add(Constraint::NanIs(v, NanFlag::NotNaN));
                constraint_text.push(format!("{} in [{l}, {u}]", word(&x)));
                constraint_text.push(format!("{} is not nan", word(&x)));
            }
            Stmt::Arith(x, y, op, z, text) => {
                let (vx, vy, vz) = (lookup(&sys, &x)?, lookup(&sys, &y)?, lookup(&sys, &z)?);
                sys.arith(vx, vy, op, vz, modes);
                constraint_text.push(text);
            }
        }
    }
    Ok(Program { system: sys, format_name, checks, constraint_text })
}

#[cfg(test)]
mod tests {
    use super::*;
    use fpfilter::softfloat::FloatVal;

    #[test]
    fn parses_the_addition_example() {
        let p = parse("format binary32;\nrounding {n};\nvar x, y, z;\ny in [+0, 5];\nz in [-0, 8];\nx = y + z;\n").unwrap();
        let f = FloatFormat::BINARY32;
        assert_eq!(p.system.names, vec!["x", "y", "z"]);
        assert_eq!(
            p.system.constraints[0],
            Constraint::Member(1, FpInterval::new(f.pos_zero(), FloatVal::from_f64(f, 5.0)).unwrap())
        );
        assert_eq!(
            p.system.constraints[4],
            Constraint::Arith { x: 0, op: Op::Add, y: 1, z: 2, modes: RoundingModeSet::single(RoundingMode::Nearest) }
        );
        assert_eq!(p.constraint_text[4], "x = y + z");
    }

    #[test]
    fn square_uses_one_variable_twice() {
        let p = parse("var y, z;\nz = y * y;").unwrap();
        assert!(matches!(p.system.constraints[0], Constraint::Arith { x: 1, op: Op::Mul, y: 0, z: 0, .. }));
    }

    #[test]
    fn rejects_reversed_interval() {
        let e = parse("var a;\na in [5, 1];").unwrap_err();
        assert_eq!((e.line, e.col), (2, 6));
    }

    #[test]
    fn reports_positions() {
        let e = parse("var a, b;\n\n  c = a + b;").unwrap_err();
        assert_eq!((e.line, e.col), (3, 3));
        assert!(e.msg.contains("unknown variable 'c'"));
        let e = parse("format binary32;\nformat binary64;").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse("var a\n").unwrap_err().msg.contains("';'"));
        assert!(parse("var a; a in [1, 2] # missing semicolon").is_err());
        assert!(parse("var a; a = a % a;").is_err());
        assert!(parse("var a, a;").is_err());
    }

    #[test]
    fn literals_and_comments() {
        let p = parse("format mini(3, 2); # tiny\nvar a; a in [-inf, 0x1.8p1];\ncheck underflow, overflow;").unwrap();
        let f = FloatFormat::mini(3, 2);
        assert_eq!(p.system.constraints[0], Constraint::Member(0, FpInterval::new(f.neg_inf(), FloatVal::from_f64(f, 3.0)).unwrap()));
        assert_eq!(p.checks.len(), 4);
        let p = parse("var a; a in [0.1, 1e-3];");
        assert!(p.is_err());
        let p = parse("var a; a in [1e-3, 0.1];").unwrap();
        let Constraint::Member(_, iv) = p.system.constraints[0] else { panic!() };
        let (l, u) = iv.bounds().unwrap();
        assert!(l.to_f64() < 1e-3 && u.to_f64() > 0.1);
    }
}
