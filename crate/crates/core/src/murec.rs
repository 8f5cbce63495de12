//! Partial recursive functions over the naturals.
//!
//! A [`RecFn`] is a term built from projections, zero, successor,
//! composition, primitive recursion and minimization. Terms are evaluated
//! under an explicit step budget ("fuel"): one unit per constructor
//! application, per recursion step and per minimization probe. Running out
//! of fuel yields [`EvalOutcome::Diverged`], which is a statement about the
//! budget and not a proof that the denoted function is undefined.
//!
//! Terms have a textual form, one term per file:
//!
//! ```text
//! proj p i | zero p | succ | (comp F G1 ... Gq) | (primrec F G) | (mu F)
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment running to the end
//! of the line.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::encoding::{decode_rational, encode_rational, EncodingId};
use crate::error::{Error, Result};
use crate::rational::{Natural, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RecFn {
    /// `(x_1, ..., x_arity) -> x_index`, with `index` counted from 1.
    Proj { arity: usize, index: usize },
    Zero { arity: usize },
    Succ,
    /// `x -> f(g_1(x), ..., g_q(x))`.
    Comp { f: Box<RecFn>, gs: Vec<RecFn> },
    /// `h(x, 0) = base(x)`, `h(x, y + 1) = step(x, y, h(x, y))`.
    PrimRec { base: Box<RecFn>, step: Box<RecFn> },
    /// Least `y` with `f(x, y) = 0`.
    Mu(Box<RecFn>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalOutcome {
    Value(Natural),
    /// The budget was exhausted; carries the budget that was given.
    Diverged { fuel_spent: u64 },
}

impl EvalOutcome {
    pub fn value(&self) -> Option<&Natural> {
        match self {
            EvalOutcome::Value(v) => Some(v),
            EvalOutcome::Diverged { .. } => None,
        }
    }
}

impl RecFn {
    pub fn proj(arity: usize, index: usize) -> Result<RecFn> {
        let t = RecFn::Proj { arity, index };
        t.arity()?;
        Ok(t)
    }

    pub fn zero(arity: usize) -> RecFn {
        RecFn::Zero { arity }
    }

    pub fn succ() -> RecFn {
        RecFn::Succ
    }

    pub fn comp(f: RecFn, gs: Vec<RecFn>) -> Result<RecFn> {
        let t = RecFn::Comp { f: Box::new(f), gs };
        t.arity()?;
        Ok(t)
    }

    pub fn primrec(base: RecFn, step: RecFn) -> Result<RecFn> {
        let t = RecFn::PrimRec {
            base: Box::new(base),
            step: Box::new(step),
        };
        t.arity()?;
        Ok(t)
    }

    pub fn mu(f: RecFn) -> Result<RecFn> {
        let t = RecFn::Mu(Box::new(f));
        t.arity()?;
        Ok(t)
    }

    /// Number of arguments of the denoted function, checking every
    /// constructor's arity constraint along the way.
    pub fn arity(&self) -> Result<usize> {
        match self {
            RecFn::Proj { arity, index } => {
                if *index == 0 || index > arity {
                    return Err(Error::IllFormed(format!(
                        "projection index {index} outside 1..={arity}"
                    )));
                }
                Ok(*arity)
            }
            RecFn::Zero { arity } => Ok(*arity),
            RecFn::Succ => Ok(1),
            RecFn::Comp { f, gs } => {
                let outer = f.arity()?;
                if outer != gs.len() {
                    return Err(Error::IllFormed(format!(
                        "composition of a {outer}-ary function with {} inner function(s)",
                        gs.len()
                    )));
                }
                let Some((first, rest)) = gs.split_first() else {
                    return Err(Error::IllFormed(
                        "composition needs at least one inner function".into(),
                    ));
                };
                let inner = first.arity()?;
                for g in rest {
                    let a = g.arity()?;
                    if a != inner {
                        return Err(Error::IllFormed(format!(
                            "inner functions of a composition disagree on arity ({inner} vs {a})"
                        )));
                    }
                }
                Ok(inner)
            }
            RecFn::PrimRec { base, step } => {
                let p = base.arity()?;
                let s = step.arity()?;
                if s != p + 2 {
                    return Err(Error::IllFormed(format!(
                        "primitive recursion step has arity {s}, expected {}",
                        p + 2
                    )));
                }
                Ok(p + 1)
            }
            RecFn::Mu(f) => {
                let a = f.arity()?;
                if a == 0 {
                    return Err(Error::IllFormed("minimization of a 0-ary function".into()));
                }
                Ok(a - 1)
            }
        }
    }

    /// Evaluates the term on `args` within `fuel` steps.
    pub fn eval(&self, args: &[Natural], fuel: u64) -> Result<EvalOutcome> {
        let expected = self.arity()?;
        if args.len() != expected {
            return Err(Error::ArityMismatch {
                expected,
                got: args.len(),
            });
        }
        let mut meter = Meter { remaining: fuel };
        Ok(match self.run(args, &mut meter) {
            Some(v) => EvalOutcome::Value(v),
            None => EvalOutcome::Diverged { fuel_spent: fuel },
        })
    }

    /// `None` means the meter ran dry. Assumes the term is well formed and
    /// `args` has the right length.
    fn run(&self, args: &[Natural], meter: &mut Meter) -> Option<Natural> {
        meter.tick()?;
        match self {
            RecFn::Proj { index, .. } => Some(args[index - 1].clone()),
            RecFn::Zero { .. } => Some(Natural::zero()),
            RecFn::Succ => Some(&args[0] + 1u32),
            RecFn::Comp { f, gs } => {
                let inner = gs
                    .iter()
                    .map(|g| g.run(args, meter))
                    .collect::<Option<Vec<_>>>()?;
                f.run(&inner, meter)
            }
            RecFn::PrimRec { base, step } => {
                let (y, xs) = args.split_last().expect("primitive recursion has arity >= 1");
                let mut acc = base.run(xs, meter)?;
                let mut buf = Vec::with_capacity(args.len() + 1);
                let mut i = Natural::zero();
                while &i < y {
                    meter.tick()?;
                    buf.clear();
                    buf.extend_from_slice(xs);
                    buf.push(i.clone());
                    buf.push(acc);
                    acc = step.run(&buf, meter)?;
                    i += 1u32;
                }
                Some(acc)
            }
            RecFn::Mu(f) => {
                let mut buf = args.to_vec();
                buf.push(Natural::zero());
                loop {
                    meter.tick()?;
                    if f.run(&buf, meter)?.is_zero() {
                        return buf.pop();
                    }
                    *buf.last_mut().expect("non-empty") += Natural::one();
                }
            }
        }
    }
}

struct Meter {
    remaining: u64,
}

impl Meter {
    fn tick(&mut self) -> Option<()> {
        self.remaining = self.remaining.checked_sub(1)?;
        Some(())
    }
}

/// Evaluates `term` on rationals by encoding each argument with the
/// canonical injection and decoding the numeric result.
pub fn conjugate_eval(term: &RecFn, args: &[Rational], fuel: u64) -> Result<Rational> {
    let codes: Vec<Natural> = args
        .iter()
        .map(|r| encode_rational(r, EncodingId::Canonical))
        .collect();
    match term.eval(&codes, fuel)? {
        EvalOutcome::Value(v) => decode_rational(&v, EncodingId::Canonical),
        EvalOutcome::Diverged { fuel_spent } => Err(Error::Diverged { fuel: fuel_spent }),
    }
}

impl fmt::Display for RecFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecFn::Proj { arity, index } => write!(f, "proj {arity} {index}"),
            RecFn::Zero { arity } => write!(f, "zero {arity}"),
            RecFn::Succ => f.write_str("succ"),
            RecFn::Comp { f: outer, gs } => {
                write!(f, "(comp {outer}")?;
                for g in gs {
                    write!(f, " {g}")?;
                }
                f.write_str(")")
            }
            RecFn::PrimRec { base, step } => write!(f, "(primrec {base} {step})"),
            RecFn::Mu(inner) => write!(f, "(mu {inner})"),
        }
    }
}

impl FromStr for RecFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<RecFn> {
        let tokens = tokenize(s);
        let mut parser = Parser { tokens, pos: 0 };
        let term = parser.term()?;
        if let Some(extra) = parser.peek() {
            return Err(Error::Parse(format!("trailing input starting at {extra:?}")));
        }
        Ok(term)
    }
}

fn tokenize(src: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for line in src.lines() {
        let code = line.split('#').next().unwrap_or("");
        let spaced = code.replace('(', " ( ").replace(')', " ) ");
        tokens.extend(spaced.split_whitespace().map(str::to_owned));
    }
    tokens
}

struct Parser {
    tokens: Vec<String>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(String::as_str)
    }

    fn next(&mut self) -> Result<String> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of program".into()))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: &str) -> Result<()> {
        let got = self.next()?;
        if got != want {
            return Err(Error::Parse(format!("expected {want:?}, found {got:?}")));
        }
        Ok(())
    }

    fn number(&mut self) -> Result<usize> {
        let t = self.next()?;
        t.parse()
            .map_err(|_| Error::Parse(format!("expected a number, found {t:?}")))
    }

    fn term(&mut self) -> Result<RecFn> {
        let head = self.next()?;
        match head.as_str() {
            "proj" => {
                let p = self.number()?;
                let i = self.number()?;
                RecFn::proj(p, i)
            }
            "zero" => Ok(RecFn::zero(self.number()?)),
            "succ" => Ok(RecFn::succ()),
            "(" => self.compound(),
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn compound(&mut self) -> Result<RecFn> {
        let head = self.next()?;
        match head.as_str() {
            "comp" => {
                let f = self.term()?;
                let mut gs = Vec::new();
                while self.peek().is_some_and(|t| t != ")") {
                    gs.push(self.term()?);
                }
                self.expect(")")?;
                RecFn::comp(f, gs)
            }
            "primrec" => {
                let base = self.term()?;
                let step = self.term()?;
                self.expect(")")?;
                RecFn::primrec(base, step)
            }
            "mu" => {
                let f = self.term()?;
                self.expect(")")?;
                RecFn::mu(f)
            }
            // Parenthesized atoms are accepted too.
            "proj" | "zero" | "succ" => {
                self.pos -= 1;
                let atom = self.term()?;
                self.expect(")")?;
                Ok(atom)
            }
            other => Err(Error::Parse(format!("unknown constructor {other:?}"))),
        }
    }
}

/// The shipped program corpus.
pub mod corpus {
    use super::RecFn;

    pub const ADD: &str = include_str!("../programs/add.rec");
    pub const MUL: &str = include_str!("../programs/mul.rec");
    pub const PRED: &str = include_str!("../programs/pred.rec");
    pub const MONUS: &str = include_str!("../programs/monus.rec");
    pub const SIGN: &str = include_str!("../programs/sign.rec");

    /// `(name, source)` for every shipped program.
    pub const ALL: [(&str, &str); 5] = [
        ("add", ADD),
        ("mul", MUL),
        ("pred", PRED),
        ("monus", MONUS),
        ("sign", SIGN),
    ];

    pub fn by_name(name: &str) -> Option<RecFn> {
        ALL.iter()
            .find(|(n, _)| *n == name)
            .map(|(_, src)| src.parse().expect("shipped program parses"))
    }

    pub fn add() -> RecFn {
        ADD.parse().expect("shipped program parses")
    }

    pub fn mul() -> RecFn {
        MUL.parse().expect("shipped program parses")
    }
}
