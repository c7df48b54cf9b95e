//! Knot expressions: the tree, its text grammar and the named base knots.

use super::ledger::OperatorSpec;
use super::ConcordanceError;
use crate::seifert::{Builtin, SeifertMatrix};
use std::fmt;
use std::sync::Arc;

/// Filtration level a fact can assert. `F` is counted in half steps, so
/// `F(2n)` is `F_n` and `F(2n + 1)` is `F_{n.5}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    F(u32),
    P(u32),
    N(u32),
    B(u32),
}

impl Level {
    pub fn parse(s: &str) -> Option<Level> {
        let s = s.trim();
        let (head, rest) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).unwrap_or(s.len()));
        let rest = rest.trim_start_matches('_');
        if head == "F" {
            if let Some(n) = rest.strip_suffix(".5") {
                return n.parse::<u32>().ok().map(|n| Level::F(2 * n + 1));
            }
            return rest.parse::<u32>().ok().map(|n| Level::F(2 * n));
        }
        let n = rest.parse::<u32>().ok()?;
        match head {
            "P" => Some(Level::P(n)),
            "N" => Some(Level::N(n)),
            "B" => Some(Level::B(n)),
            _ => None,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::F(h) if h % 2 == 0 => write!(f, "F{}", h / 2),
            Level::F(h) => write!(f, "F{}.5", h / 2),
            Level::P(n) => write!(f, "P{}", n),
            Level::N(n) => write!(f, "N{}", n),
            Level::B(n) => write!(f, "B{}", n),
        }
    }
}

/// Fact attached to a leaf of an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeafFact {
    Member(Level),
    Tau(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectedFact {
    pub fact: LeafFact,
    pub cite: String,
}

/// A named knot given by a Seifert matrix plus facts the matrix cannot
/// express.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseKnot {
    pub name: String,
    pub matrix: SeifertMatrix,
    pub facts: Vec<InjectedFact>,
}

const NEG_CROSSING: &str = "each left-handed trefoil unknots by changing one negative crossing; the class is closed under connected sum";
const POS_CROSSING: &str = "each right-handed trefoil unknots by changing one positive crossing; the class is closed under connected sum";

/// Names understood by `base("…")`: `trefoil`, `left-trefoil`,
/// `right-trefoils-N`, `neg-trefoils-N` (alias `left-trefoils-N`) and
/// `whitehead-double`.
pub fn base_knot(name: &str) -> Result<BaseKnot, ConcordanceError> {
    let unknown = || ConcordanceError::UnknownBase(name.to_string());
    let trefoil = SeifertMatrix::builtin(Builtin::Twist(1)).expect("builtin");
    let sum_of = |v: &SeifertMatrix, n: usize| {
        let mut acc = SeifertMatrix::empty();
        for _ in 0..n {
            acc = acc.connected_sum(v);
        }
        acc
    };
    let copies = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok()).filter(|n| (1..=64).contains(n))
    };
    let (matrix, facts) = if name == "whitehead-double" {
        let v = SeifertMatrix::from_i64(&[&[-1, 1], &[0, 0]]).expect("valid");
        let facts = vec![
            InjectedFact {
                fact: LeafFact::Tau(1),
                cite: "tau of the positive untwisted Whitehead double of the right-handed trefoil".into(),
            },
            InjectedFact {
                fact: LeafFact::Member(Level::P(0)),
                cite: "changing one positive clasp crossing unknots a positive Whitehead double".into(),
            },
        ];
        (v, facts)
    } else if name == "trefoil" || copies("right-trefoils-").is_some() {
        let n = copies("right-trefoils-").unwrap_or(1);
        let f = InjectedFact { fact: LeafFact::Member(Level::P(0)), cite: POS_CROSSING.into() };
        (sum_of(&trefoil, n), vec![f])
    } else if name == "left-trefoil" || copies("neg-trefoils-").or(copies("left-trefoils-")).is_some() {
        let n = copies("neg-trefoils-").or(copies("left-trefoils-")).unwrap_or(1);
        let f = InjectedFact { fact: LeafFact::Member(Level::N(0)), cite: NEG_CROSSING.into() };
        (sum_of(&trefoil.mirror(), n), vec![f])
    } else {
        return Err(unknown());
    };
    Ok(BaseKnot { name: name.to_string(), matrix, facts })
}

#[derive(Clone, Debug)]
pub enum KnotExpr {
    Unknot,
    Twist(i64),
    Base(Arc<BaseKnot>),
    Sum(Vec<KnotExpr>),
    MirrorReverse(Box<KnotExpr>),
    Cable(Box<KnotExpr>, u32),
    /// Always holds an uncabled operator; see [`KnotExpr::infect`].
    Infect(Arc<OperatorSpec>, Box<KnotExpr>),
}

impl PartialEq for KnotExpr {
    fn eq(&self, other: &Self) -> bool {
        self.to_string() == other.to_string()
    }
}

impl Eq for KnotExpr {}

impl KnotExpr {
    pub fn twist(j: i64) -> Result<Self, ConcordanceError> {
        if j < 1 {
            return Err(ConcordanceError::OutOfRange(format!("twist({})", j)));
        }
        Ok(KnotExpr::Twist(j))
    }

    pub fn base(name: &str) -> Result<Self, ConcordanceError> {
        Ok(KnotExpr::Base(Arc::new(base_knot(name)?)))
    }

    pub fn neg(e: KnotExpr) -> Self {
        KnotExpr::MirrorReverse(Box::new(e))
    }

    pub fn cable(e: KnotExpr, p: u32) -> Result<Self, ConcordanceError> {
        if p == 0 {
            return Err(ConcordanceError::OutOfRange("cable parameter 0".into()));
        }
        Ok(KnotExpr::Cable(Box::new(e), p))
    }

    pub fn sum(parts: Vec<KnotExpr>) -> Self {
        KnotExpr::Sum(parts)
    }

    /// Infection by an operator. A cabled operator `R_{p,1}` applied to `K`
    /// is the cable `(R(K))_{p,1}`.
    pub fn infect(op: &OperatorSpec, e: KnotExpr) -> Self {
        let inner = KnotExpr::Infect(Arc::new(op.uncabled()), Box::new(e));
        if op.cable_level() == 1 {
            inner
        } else {
            KnotExpr::Cable(Box::new(inner), op.cable_level())
        }
    }

    /// Canonical text, also used as the identifier of the knot in facts.
    pub fn id(&self) -> String {
        self.to_string()
    }

    /// Depth of nested infections along the deepest path.
    pub fn infection_depth(&self) -> usize {
        match self {
            KnotExpr::Unknot | KnotExpr::Twist(_) | KnotExpr::Base(_) => 0,
            KnotExpr::Sum(v) => v.iter().map(|e| e.infection_depth()).max().unwrap_or(0),
            KnotExpr::MirrorReverse(e) | KnotExpr::Cable(e, _) => e.infection_depth(),
            KnotExpr::Infect(_, e) => 1 + e.infection_depth(),
        }
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => write!(f, "unknot"),
            KnotExpr::Twist(j) => write!(f, "twist({})", j),
            KnotExpr::Base(b) => write!(f, "base(\"{}\")", b.name),
            KnotExpr::Sum(v) => {
                write!(f, "sum(")?;
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", e)?;
                }
                write!(f, ")")
            }
            KnotExpr::MirrorReverse(e) => write!(f, "neg({})", e),
            KnotExpr::Cable(e, p) => write!(f, "cable({}, {})", e, p),
            KnotExpr::Infect(op, e) => write!(f, "infect({}, {})", op.name(), e),
        }
    }
}

impl std::str::FromStr for KnotExpr {
    type Err = ConcordanceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}

// ---------------------------------------------------------------------------
// Parser

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn location(&self, at: usize) -> (usize, usize) {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map(|i| before[i + 1..].chars().count()).unwrap_or(before.chars().count()) + 1;
        (line, column)
    }

    fn error(&self, at: usize, message: impl Into<String>) -> ConcordanceError {
        let (line, column) = self.location(at);
        ConcordanceError::Parse { message: message.into(), line, column }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else if c == '#' {
                while let Some(c) = self.src[self.pos..].chars().next() {
                    if c == '\n' {
                        break;
                    }
                    self.pos += c.len_utf8();
                }
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ConcordanceError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(d) => Err(self.error(self.pos, format!("expected '{}', found '{}'", c, d))),
            None => Err(self.error(self.pos, format!("expected '{}', found end of input", c))),
        }
    }

    fn ident(&mut self) -> Result<(usize, String), ConcordanceError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(match self.peek() {
                Some(c) => self.error(start, format!("expected a name, found '{}'", c)),
                None => self.error(start, "expected a name, found end of input"),
            });
        }
        Ok((start, self.src[start..self.pos].to_string()))
    }

    fn integer(&mut self) -> Result<(usize, i64), ConcordanceError> {
        self.skip_ws();
        let start = self.pos;
        if self.src[self.pos..].starts_with('-') {
            self.pos += 1;
        }
        while self.src[self.pos..].chars().next().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = &self.src[start..self.pos];
        text.parse::<i64>().map(|v| (start, v)).map_err(|_| self.error(start, "expected an integer"))
    }

    fn quoted(&mut self) -> Result<String, ConcordanceError> {
        let q = match self.peek() {
            Some(c @ ('"' | '\'')) => c,
            _ => return Err(self.error(self.pos, "expected a quoted name")),
        };
        let start = self.pos;
        self.pos += 1;
        match self.src[self.pos..].find(q) {
            Some(len) => {
                let name = self.src[self.pos..self.pos + len].to_string();
                self.pos += len + 1;
                Ok(name)
            }
            None => Err(self.error(start, "unterminated string")),
        }
    }

    fn positive(&mut self, what: &str) -> Result<i64, ConcordanceError> {
        let (at, v) = self.integer()?;
        if v < 1 {
            return Err(self.error(at, format!("{} must be positive", what)));
        }
        Ok(v)
    }

    fn operator(&mut self) -> Result<OperatorSpec, ConcordanceError> {
        let (at, name) = self.ident()?;
        self.expect('(')?;
        let k = self.positive("k")?;
        let op = match name.as_str() {
            "Q" => OperatorSpec::q(k),
            "R" => {
                self.expect(',')?;
                let (jat, key) = self.ident()?;
                if key != "J" {
                    return Err(self.error(jat, format!("expected 'J', found '{}'", key)));
                }
                self.expect('=')?;
                let j = self.quoted()?;
                OperatorSpec::r(k, &j)
            }
            other => return Err(self.error(at, format!("unknown operator '{}'", other))),
        };
        self.expect(')')?;
        op.map_err(|e| match e {
            ConcordanceError::Parse { .. } => e,
            other => self.error(at, other.to_string()),
        })
    }

    fn expr(&mut self) -> Result<KnotExpr, ConcordanceError> {
        let (at, name) = self.ident()?;
        let e = match name.as_str() {
            "unknot" => KnotExpr::Unknot,
            "twist" => {
                self.expect('(')?;
                let j = self.positive("twist parameter")?;
                self.expect(')')?;
                KnotExpr::Twist(j)
            }
            "base" => {
                self.expect('(')?;
                let qat = self.pos;
                let n = self.quoted()?;
                self.expect(')')?;
                KnotExpr::base(&n).map_err(|e| self.error(qat, e.to_string()))?
            }
            "sum" => {
                self.expect('(')?;
                let mut parts = vec![self.expr()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    parts.push(self.expr()?);
                }
                self.expect(')')?;
                KnotExpr::Sum(parts)
            }
            "neg" => {
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(')')?;
                KnotExpr::neg(e)
            }
            "cable" => {
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(',')?;
                let p = self.positive("cable parameter")?;
                if self.peek() == Some(',') {
                    self.pos += 1;
                    let (qat, q) = self.integer()?;
                    if q != 1 {
                        let (line, column) = self.location(qat);
                        return Err(ConcordanceError::UnsupportedCable { q, line, column });
                    }
                }
                self.expect(')')?;
                let p = u32::try_from(p).map_err(|_| self.error(at, "cable parameter too large"))?;
                KnotExpr::Cable(Box::new(e), p)
            }
            "infect" => {
                self.expect('(')?;
                let op = self.operator()?;
                self.expect(',')?;
                let e = self.expr()?;
                self.expect(')')?;
                KnotExpr::infect(&op, e)
            }
            other => return Err(self.error(at, format!("unknown constructor '{}'", other))),
        };
        Ok(e)
    }
}

/// Parses the knot-expression grammar.
pub fn parse_expr(text: &str) -> Result<KnotExpr, ConcordanceError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(p.error(p.pos, format!("unexpected '{}' after expression", c)));
    }
    Ok(e)
}
