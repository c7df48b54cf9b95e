//! Recursive evaluation of classical invariants over expression trees.

use super::expr::{KnotExpr, LeafFact};
use super::facts::FactBase;
use super::ledger::{OperatorFamily, OperatorSpec};
use super::ConcordanceError;
use crate::laurent::LaurentPoly;
use crate::legendrian::{legendrian_satellite, q_front, tau_bounds, twist_front, classical_invariants, LegInvariants, TauBounds};
use crate::profile::{Rho0, SignatureProfile};
use crate::seifert::{twist_alexander, Builtin, SeifertMatrix};

#[derive(Clone, Debug)]
pub struct KnotInvariants {
    /// Normalized.
    pub alexander: LaurentPoly,
    pub arf: u8,
    pub profile: SignatureProfile,
    pub rho0: Rho0,
    pub genus_upper: i64,
    pub tau: TauBounds,
    /// A Legendrian representative's `(tb, rot)`, when one is known.
    pub legendrian: Option<LegInvariants>,
    /// Whether `τ` was fixed by an injected fact somewhere in the tree.
    pub tau_injected: bool,
}

fn bounds(lower: i64, upper: i64) -> TauBounds {
    TauBounds { lower, upper, exact: (lower == upper).then_some(lower) }
}

impl KnotInvariants {
    fn unknot() -> Self {
        KnotInvariants {
            alexander: LaurentPoly::one(),
            arf: 0,
            profile: SignatureProfile::empty(),
            rho0: Rho0::zero(),
            genus_upper: 0,
            tau: bounds(0, 0),
            legendrian: Some(LegInvariants::new(-1, 0)),
            tau_injected: false,
        }
    }

    fn from_matrix(v: &SeifertMatrix) -> Self {
        let profile = SignatureProfile::from_seifert(v);
        let g = v.genus() as i64;
        KnotInvariants {
            alexander: v.alexander_polynomial(),
            arf: if v.dim() == 0 { 0 } else { v.arf() },
            rho0: profile.rho0(),
            profile,
            genus_upper: g,
            tau: bounds(-g, g),
            legendrian: None,
            tau_injected: false,
        }
    }

    /// Whether the invariants computed here see no difference from the
    /// unknot.
    pub fn is_trivial(&self) -> bool {
        self.alexander.is_unit() && self.arf == 0 && self.profile.is_zero() && self.rho0.is_zero()
    }
}

/// `eval_invariants_with` without injected facts.
pub fn eval_invariants(e: &KnotExpr) -> Result<KnotInvariants, ConcordanceError> {
    eval_invariants_with(e, &FactBase::new())
}

/// Evaluates bottom-up. `τ` facts of the form `tau(<expr>) = n` in `facts`
/// fix `τ` at matching nodes; they must lie within the computed bounds.
pub fn eval_invariants_with(e: &KnotExpr, facts: &FactBase) -> Result<KnotInvariants, ConcordanceError> {
    let mut inv = match e {
        KnotExpr::Unknot => KnotInvariants::unknot(),
        KnotExpr::Twist(j) => {
            let v = SeifertMatrix::builtin(Builtin::Twist(*j))?;
            let mut inv = KnotInvariants::from_matrix(&v);
            inv.alexander = twist_alexander(*j).normalize()?;
            let leg = classical_invariants(&twist_front(*j)?)?;
            inv.tau = tau_bounds(&leg, inv.genus_upper)?;
            inv.legendrian = Some(leg);
            inv
        }
        KnotExpr::Base(b) => {
            let mut inv = KnotInvariants::from_matrix(&b.matrix);
            for f in &b.facts {
                if let LeafFact::Tau(t) = f.fact {
                    inv.tau = pin_tau(inv.tau, t, e)?;
                    inv.tau_injected = true;
                }
            }
            inv
        }
        KnotExpr::Sum(parts) => {
            let mut acc = KnotInvariants::unknot();
            acc.legendrian = None;
            for p in parts {
                let x = eval_invariants_with(p, facts)?;
                acc.alexander = (&acc.alexander * &x.alexander).normalize()?;
                acc.arf ^= x.arf;
                acc.profile = acc.profile.add(&x.profile);
                acc.rho0 = acc.rho0.add(&x.rho0);
                acc.genus_upper += x.genus_upper;
                acc.tau = bounds(acc.tau.lower + x.tau.lower, acc.tau.upper + x.tau.upper);
                acc.tau_injected |= x.tau_injected;
            }
            if parts.len() == 1 {
                acc.legendrian = eval_invariants_with(&parts[0], facts)?.legendrian;
            }
            acc
        }
        KnotExpr::MirrorReverse(x) => {
            let x = eval_invariants_with(x, facts)?;
            KnotInvariants {
                alexander: x.alexander.reciprocal().normalize()?,
                arf: x.arf,
                profile: x.profile.negate(),
                rho0: x.rho0.scale(-1),
                genus_upper: x.genus_upper,
                tau: bounds(-x.tau.upper, -x.tau.lower),
                legendrian: None,
                tau_injected: x.tau_injected,
            }
        }
        KnotExpr::Cable(x, p) => {
            let x = eval_invariants_with(x, facts)?;
            if *p == 1 {
                x
            } else {
                let g = x.genus_upper * *p as i64;
                KnotInvariants {
                    alexander: x.alexander.substitute_power(*p as i64)?.normalize()?,
                    arf: ((*p as u64 * x.arf as u64) % 2) as u8,
                    profile: x.profile.cable_pullback(*p)?,
                    rho0: x.rho0.clone(),
                    genus_upper: g,
                    tau: bounds(-g, g),
                    legendrian: None,
                    tau_injected: x.tau_injected,
                }
            }
        }
        KnotExpr::Infect(op, x) => eval_infection(op, &eval_invariants_with(x, facts)?)?,
    };
    if let Some((t, _)) = facts.tau_of(&e.id()) {
        inv.tau = pin_tau(inv.tau, t, e)?;
        inv.tau_injected = true;
    }
    Ok(inv)
}

fn pin_tau(b: TauBounds, t: i64, e: &KnotExpr) -> Result<TauBounds, ConcordanceError> {
    if t < b.lower || t > b.upper {
        return Err(ConcordanceError::Inconsistent(format!(
            "injected tau({}) = {} lies outside the computed bounds [{}, {}]",
            e, t, b.lower, b.upper
        )));
    }
    Ok(bounds(t, t))
}

/// The infected knot has the pattern's Seifert form; `τ` is pinned through
/// a Legendrian satellite when the operator has a front and the companion
/// a representative with `tb ≥ 0`.
fn eval_infection(op: &OperatorSpec, companion: &KnotInvariants) -> Result<KnotInvariants, ConcordanceError> {
    let mut inv = KnotInvariants::from_matrix(op.pattern());
    inv.alexander = op.pattern().alexander_polynomial();
    if let OperatorFamily::Q { k } = op.family() {
        if let Some(c) = companion.legendrian.and_then(|l| l.stabilize_to_zero()) {
            let front = q_front(*k)?.operator_invariants()?;
            let leg = legendrian_satellite(&front, &c)?;
            inv.tau = tau_bounds(&leg, inv.genus_upper)?;
            inv.legendrian = Some(leg);
        }
    }
    Ok(inv)
}
