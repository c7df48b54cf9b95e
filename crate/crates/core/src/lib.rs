//! Exact invariants of knots built from doubling operators, cables and
//! connected sums, together with the primality criteria and the certificate
//! engine that combines machine-checked facts with cited hypotheses.

pub mod alexmodule;
pub mod arith;
pub mod concordance;
pub mod interval;
pub mod intpoly;
pub mod laurent;
pub mod legendrian;
pub mod linalg;
pub mod primality;
pub mod profile;
pub mod seifert;
