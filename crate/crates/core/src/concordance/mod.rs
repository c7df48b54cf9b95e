//! Knot expressions, their invariants, and certificates that separate
//! machine-checked conditions from cited hypotheses.

mod certify;
mod eval;
mod expr;
mod facts;
mod ledger;

pub use certify::*;
pub use eval::{eval_invariants, eval_invariants_with, KnotInvariants};
pub use expr::{base_knot, parse_expr, BaseKnot, InjectedFact, KnotExpr, LeafFact, Level};
pub use facts::{canonical_id, ids, Fact, FactBase};
pub use ledger::{
    cable_operator, pattern_factor, rho_ledger_infection, FosEntry, FosLedger, FosStatus, OperatorFamily, OperatorSpec,
    RhoAtom, RhoExpr,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConcordanceError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { message: String, line: usize, column: usize },
    #[error("unsupported cable: only (p, 1) cables are supported, found q = {q} at line {line}, column {column}")]
    UnsupportedCable { q: i64, line: usize, column: usize },
    #[error("unknown base knot \"{0}\"")]
    UnknownBase(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("{0} is not a submodule of the pattern module")]
    NotASubmodule(String),
    #[error("operator sequences have different depths")]
    DepthMismatch,
    #[error("missing module data for {0}")]
    MissingModuleData(String),
    #[error("facts file line {line}: {message}")]
    Facts { line: usize, message: String },
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Seifert(#[from] crate::seifert::SeifertError),
    #[error(transparent)]
    Module(#[from] crate::alexmodule::AlexModuleError),
    #[error(transparent)]
    Laurent(#[from] crate::laurent::LaurentError),
    #[error(transparent)]
    Legendrian(#[from] crate::legendrian::LegendrianError),
    #[error(transparent)]
    Profile(#[from] crate::profile::ProfileError),
    #[error(transparent)]
    Primality(#[from] crate::primality::PrimalityError),
}
