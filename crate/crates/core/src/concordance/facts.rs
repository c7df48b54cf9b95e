//! Cited hypotheses: the facts file format and the canonical statement
//! identifiers the certificate engine asks for.

use super::expr::{parse_expr, Level};
use super::ConcordanceError;
use std::fmt;

/// One cited hypothesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub id: String,
    pub cite: String,
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  [{}]", self.id, self.cite)
    }
}

/// Whitespace-free form with one quote style, so that `J='x'` and
/// `J = "x"` name the same statement.
pub fn canonical_id(id: &str) -> String {
    id.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '\'' { '"' } else { c }).collect()
}

#[derive(Clone, Debug, Default)]
pub struct FactBase {
    facts: Vec<Fact>,
}

impl FactBase {
    pub fn new() -> Self {
        FactBase::default()
    }

    /// Reads lines `FACT "<statement>" CITE "<locus>"`; blank lines and `#`
    /// comments are skipped. The statement may itself contain quotes.
    pub fn parse(text: &str) -> Result<Self, ConcordanceError> {
        let mut out = FactBase::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| ConcordanceError::Facts { line: i + 1, message: message.to_string() };
            let rest = line.strip_prefix("FACT").ok_or_else(|| err("expected FACT"))?.trim_start();
            let rest = rest.strip_prefix('"').ok_or_else(|| err("expected a quoted statement"))?;
            let split = rest.rfind("\" CITE \"").ok_or_else(|| err("expected CITE \"<locus>\""))?;
            let id = &rest[..split];
            let cite = rest[split + 8..].strip_suffix('"').ok_or_else(|| err("unterminated citation"))?;
            if id.trim().is_empty() {
                return Err(err("empty statement"));
            }
            out.insert(Fact { id: id.to_string(), cite: cite.to_string() });
        }
        Ok(out)
    }

    /// Adds a fact; a later fact with the same statement replaces the
    /// earlier one.
    pub fn insert(&mut self, fact: Fact) {
        let key = canonical_id(&fact.id);
        self.facts.retain(|f| canonical_id(&f.id) != key);
        self.facts.push(fact);
    }

    pub fn merge(&mut self, other: &FactBase) {
        for f in &other.facts {
            self.insert(f.clone());
        }
    }

    pub fn get(&self, id: &str) -> Option<&Fact> {
        let key = canonical_id(id);
        self.facts.iter().find(|f| canonical_id(&f.id) == key)
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    /// Facts of the form `tau(<expr>) = <n>` about the knot with canonical
    /// id `knot`.
    pub fn tau_of(&self, knot: &str) -> Option<(i64, &Fact)> {
        self.facts.iter().find_map(|f| {
            let (e, v) = parse_tau(&f.id)?;
            (e == knot).then_some((v, f))
        })
    }

    /// Facts of the form `<expr> in <level>` about the knot `knot`.
    pub fn levels_of(&self, knot: &str) -> Vec<(Level, &Fact)> {
        self.facts
            .iter()
            .filter_map(|f| {
                let (e, l) = parse_membership(&f.id)?;
                (e == knot).then_some((l, f))
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        self.facts.iter().map(|f| format!("FACT \"{}\" CITE \"{}\"\n", f.id, f.cite)).collect()
    }
}

fn parse_tau(id: &str) -> Option<(String, i64)> {
    let body = id.trim().strip_prefix("tau(")?;
    let eq = body.rfind('=')?;
    let value = body[eq + 1..].trim().parse::<i64>().ok()?;
    let inner = body[..eq].trim().strip_suffix(')')?;
    Some((parse_expr(inner).ok()?.id(), value))
}

fn parse_membership(id: &str) -> Option<(String, Level)> {
    let at = id.rfind(" in ")?;
    let level = Level::parse(&id[at + 4..])?;
    Some((parse_expr(&id[..at]).ok()?.id(), level))
}

/// Statement ids requested by the certificate engine.
pub mod ids {
    use super::super::expr::{KnotExpr, Level};

    /// `ρ(M(X), φ_P) ≠ 0`.
    pub fn first_order_nonzero(op: &str, submodule: &str) -> String {
        format!("rho(M({}), {}) != 0", op, submodule)
    }

    /// `−ρ₀(J) ∉ FOS(X)`.
    pub fn rho0_avoids_fos(knot: &str, op: &str) -> String {
        format!("-rho0({}) not in FOS({})", knot, op)
    }

    /// No nontrivial rational combination of the companions' `ρ₀` lies in
    /// the rational span of `FOS(op)`.
    pub fn rho0_span_avoids_fos(companions: &[KnotExpr], op: &str) -> String {
        let names: Vec<String> = companions.iter().map(|c| format!("rho0({})", c)).collect();
        format!("span{{{}}} meets span FOS({}) only in 0", names.join(", "), op)
    }

    pub fn tau_value(knot: &KnotExpr, value: i64) -> String {
        format!("tau({}) = {}", knot, value)
    }

    pub fn membership(knot: &KnotExpr, level: Level) -> String {
        format!("{} in {}", knot, level)
    }
}
