//! Certificates: robustness of operators, filtration levels, linear
//! independence of families and the derivative-curve examples.

use super::eval::{eval_invariants_with, KnotInvariants};
use super::expr::{KnotExpr, LeafFact, Level};
use super::facts::{ids, Fact, FactBase};
use super::ledger::{cable_operator, FosStatus, OperatorFamily, OperatorSpec, RhoAtom, RhoExpr};
use super::ConcordanceError;
use crate::alexmodule::{beta_relation_check, is_isotropic, Isotropy, Submodule};
use crate::laurent::{fmt_rational, resultant, LaurentPoly};
use crate::legendrian::TauBounds;
use crate::primality::{is_irreducible, sequences_strongly_coprime, CoprimalityStatus};
use crate::profile::{small_relation_search, Enclose, Rho0};
use num::{BigInt, BigRational, One, Zero};
use std::fmt;

/// Outcome of a certificate run. The conclusion is present only when
/// nothing failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub claim: String,
    pub conclusion: Option<String>,
    /// Conditions checked by computation.
    pub verified: Vec<String>,
    /// Cited hypotheses the conclusion rests on.
    pub assumed: Vec<Fact>,
    /// Cited general theorems used as inference rules.
    pub rules: Vec<String>,
    pub failed: Vec<String>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn new(claim: impl Into<String>) -> Self {
        Certificate { claim: claim.into(), ..Default::default() }
    }

    fn check(&mut self, ok: bool, text: impl Into<String>) -> bool {
        let text = text.into();
        if ok {
            self.verified.push(text);
        } else {
            self.failed.push(text);
        }
        ok
    }

    fn assume(&mut self, f: &Fact) {
        if !self.assumed.iter().any(|g| g.id == f.id) {
            self.assumed.push(f.clone());
        }
    }

    fn rule(&mut self, text: &str) {
        if !self.rules.iter().any(|r| r == text) {
            self.rules.push(text.to_string());
        }
    }

    /// Requires a fact, assuming it when present.
    fn require(&mut self, facts: &FactBase, id: &str, what: &str) -> bool {
        match facts.get(id) {
            Some(f) => {
                self.assume(f);
                true
            }
            None => {
                self.failed.push(format!("{}: missing fact \"{}\"", what, id));
                false
            }
        }
    }

    fn absorb(&mut self, other: &Certificate, prefix: &str) {
        for v in &other.verified {
            self.verified.push(format!("{}: {}", prefix, v));
        }
        for f in &other.failed {
            self.failed.push(format!("{}: {}", prefix, f));
        }
        for f in &other.assumed {
            self.assume(f);
        }
        for r in &other.rules {
            self.rule(r);
        }
    }

    fn close(mut self) -> Self {
        self.conclusion = self.failed.is_empty().then(|| self.claim.clone());
        self
    }

    fn close_with(mut self, conclusion: String) -> Self {
        self.conclusion = self.failed.is_empty().then_some(conclusion);
        self
    }

    pub fn is_asserted(&self) -> bool {
        self.conclusion.is_some()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "claim: {}", self.claim)?;
        match &self.conclusion {
            Some(c) => writeln!(f, "conclusion: {}", c)?,
            None => writeln!(f, "conclusion: withheld")?,
        }
        let section = |f: &mut fmt::Formatter<'_>, name: &str, items: &[String]| -> fmt::Result {
            writeln!(f, "{} ({}):", name, items.len())?;
            for i in items {
                writeln!(f, "  - {}", i)?;
            }
            Ok(())
        };
        section(f, "verified", &self.verified)?;
        let assumed: Vec<String> = self.assumed.iter().map(|a| a.to_string()).collect();
        section(f, "assumed", &assumed)?;
        section(f, "rules", &self.rules)?;
        section(f, "failed", &self.failed)?;
        if !self.notes.is_empty() {
            section(f, "notes", &self.notes)?;
        }
        Ok(())
    }
}

pub const RULE_RIBBON: &str = "a submodule coming from a ribbon disk has vanishing first-order signature";
pub const RULE_CABLE_FOS: &str =
    "first-order signatures of a (p,1)-cabled operator equal those of the operator at the corresponding submodules";
pub const RULE_CABLE_ROBUST: &str =
    "a robust operator whose delta(t^p) is prime stays robust after (p,1)-cabling, with the same set of first-order signatures";
pub const RULE_INDEPENDENCE: &str = "robust operators, pairwise strongly coprime Alexander sequences and companions whose rho0 avoid the span of the innermost first-order signatures give independent knots modulo F_{n.5} + B_{n+1}";

/// Statement id of the hypothesis that makes a ledger value nonzero.
pub fn nonvanishing_fact_id(value: &RhoExpr) -> String {
    let terms: Vec<(&RhoAtom, &BigRational)> = value.terms().collect();
    if value.constant_term().is_zero() && terms.iter().all(|(_, c)| c.is_one()) {
        match terms.as_slice() {
            [(RhoAtom::Fos { operator, submodule }, _)] => return ids::first_order_nonzero(operator, submodule),
            [(RhoAtom::Rho0(k), _), (RhoAtom::Fos { operator, .. }, _)]
            | [(RhoAtom::Fos { operator, .. }, _), (RhoAtom::Rho0(k), _)] => return ids::rho0_avoids_fos(k, operator),
            _ => {}
        }
    }
    format!("{} != 0", value)
}

fn set_eq(a: &[Submodule], b: &[Submodule]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.contains(x))
}

fn interval_text(r: &Rho0) -> String {
    r.enclose(80).to_decimal(15)
}

/// Checks the robustness conditions for `op` cabled `p` times: module
/// structure by computation, every proper submodule covered either by a
/// ribbon marker or by a cited nonvanishing fact.
pub fn robustness_check(op: &OperatorSpec, facts: &FactBase, p: u32) -> Result<Certificate, ConcordanceError> {
    if p == 0 {
        return Err(ConcordanceError::OutOfRange("cable parameter 0".into()));
    }
    let base = op.uncabled();
    let total = op.cable_level() * p;
    let level = cable_operator(&base, total)?;
    let mut c = Certificate::new(format!("{} is a robust doubling operator", level.name()));
    let m = base.module();
    if m.delta().is_zero() {
        return Err(ConcordanceError::MissingModuleData(base.name().to_string()));
    }

    let v = is_irreducible(base.delta_factor())?;
    c.check(v.is_irreducible(), format!("delta = {} is {}", base.delta_factor(), v));
    let delta = base.pattern().alexander_polynomial();
    c.check(
        delta.associate(m.delta()),
        format!("module cyclic of order delta(t)*delta(t^-1) = {} (Alexander polynomial {})", m.delta(), delta),
    );
    c.check(m.generated_by(&[base.axis_class().clone()]), "the axis class generates the module");
    if let OperatorFamily::R { k, .. } = base.family() {
        c.check(beta_relation_check(*k), "the axis class and -k(1-t) times it generate");
    }
    for (d, s) in base.derivative_submodules() {
        let dv: Vec<BigInt> = d.iter().map(|&x| BigInt::from(x)).collect();
        let ok = base.pattern().pairing(&dv, &dv).is_zero() && !m.is_zero_submodule(s) && !s.generator().is_unit();
        c.check(ok, format!("derivative ({}, {}) has self-linking 0 and spans {} = <{}>", d[0], d[1], s.label(), s.generator()));
    }
    let listed = m.proper_submodules()?;
    c.check(
        set_eq(&listed, base.submodules()),
        format!("proper submodules enumerated: {}", base.submodules().len()),
    );
    for s in base.submodules() {
        let iso = is_isotropic(m, base.pattern(), s)?;
        c.check(iso != Isotropy::Neither, format!("{} is {:?} for the Blanchfield form", s.label(), iso));
    }

    if total > 1 {
        let v = is_irreducible(level.delta_factor())?;
        c.check(v.is_irreducible(), format!("delta(t^{}) = {} is {}", total, level.delta_factor(), v));
        let listed = level.module().proper_submodules()?;
        c.check(
            set_eq(&listed, level.submodules()),
            format!("cabled module has exactly the {} transported proper submodules", level.submodules().len()),
        );
        for s in level.submodules() {
            let iso = level.module().isotropy_by_divisibility(s);
            c.check(iso != Isotropy::Neither, format!("transported {} is {:?}", s.label(), iso));
        }
        c.rule(RULE_CABLE_FOS);
        c.rule(RULE_CABLE_ROBUST);
    }

    c.rule(RULE_RIBBON);
    for e in level.fos().entries() {
        let label = e.submodule.label();
        match &e.status {
            FosStatus::KnownZero { reason } => {
                if !e.submodule.is_ribbon() {
                    c.failed.push(format!("{}: vanishing without a ribbon marker", label));
                }
                c.notes.push(format!("{}: covered, {}", label, reason));
            }
            FosStatus::KnownNonzero { fact } => {
                if c.require(facts, fact, label) {
                    c.notes.push(format!("{}: covered, nonzero by assumption", label));
                }
            }
            FosStatus::Formal(value) => {
                let id = nonvanishing_fact_id(value);
                if c.require(facts, &id, label) {
                    c.notes.push(format!("{}: covered, {} != 0 by assumption", label, value));
                }
            }
        }
    }

    if let OperatorFamily::R { j: Some(j), .. } = base.family() {
        let r = eval_invariants_with(&KnotExpr::base(j)?, facts)?.rho0;
        let nonzero = !r.enclose(80).contains_zero();
        c.check(
            nonzero,
            format!("rho0(J) = {} in {} is nonzero, as the hypothesis requires since 0 lies in FOS(R(k,U))", r, interval_text(&r)),
        );
    }
    Ok(c.close())
}

// ---------------------------------------------------------------------------
// Filtrations

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Finite(u32),
    All,
}

impl Depth {
    fn plus_one(self) -> Depth {
        match self {
            Depth::Finite(n) => Depth::Finite(n + 1),
            Depth::All => Depth::All,
        }
    }
}

/// Certified memberships; `f` counts half steps (`F_n` is `2n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Levels {
    pub f: Option<Depth>,
    pub p: Option<Depth>,
    pub n: Option<Depth>,
    pub b: Option<Depth>,
}

fn min2(a: Option<Depth>, b: Option<Depth>) -> Option<Depth> {
    Some(a?.min(b?))
}

fn max2(a: Option<Depth>, b: Option<Depth>) -> Option<Depth> {
    a.max(b)
}

impl Levels {
    pub fn all() -> Self {
        Levels { f: Some(Depth::All), p: Some(Depth::All), n: Some(Depth::All), b: Some(Depth::All) }
    }

    /// Whether every certified level of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Levels) -> bool {
        self.f >= other.f && self.p >= other.p && self.n >= other.n && self.b >= other.b
    }

    fn raise(&mut self, l: Level) {
        let (slot, n) = match l {
            Level::F(h) => (&mut self.f, h),
            Level::P(n) => (&mut self.p, n),
            Level::N(n) => (&mut self.n, n),
            Level::B(n) => (&mut self.b, n),
        };
        *slot = max2(*slot, Some(Depth::Finite(n)));
    }

    /// `B_n = P_n ∩ N_n`.
    fn close_bipolar(&mut self) {
        self.b = max2(self.b, min2(self.p, self.n));
        self.p = max2(self.p, self.b);
        self.n = max2(self.n, self.b);
    }

    pub fn in_f(&self, n: u32) -> bool {
        self.f >= Some(Depth::Finite(2 * n))
    }

    pub fn in_b(&self, n: u32) -> bool {
        self.b >= Some(Depth::Finite(n))
    }

    /// E.g. `F_1 ∩ B_0`.
    pub fn summary(&self) -> String {
        let fmt = |name: &str, d: Option<Depth>, half: bool| -> Option<String> {
            match d? {
                Depth::All => Some(format!("{}_n for all n", name)),
                Depth::Finite(h) if half && h % 2 == 1 => Some(format!("{}_{}.5", name, h / 2)),
                Depth::Finite(h) if half => Some(format!("{}_{}", name, h / 2)),
                Depth::Finite(n) => Some(format!("{}_{}", name, n)),
            }
        };
        let mut parts: Vec<String> = fmt("F", self.f, true).into_iter().collect();
        if self.b.is_some() {
            parts.extend(fmt("B", self.b, false));
        } else {
            parts.extend(fmt("P", self.p, false));
            parts.extend(fmt("N", self.n, false));
        }
        if parts.is_empty() {
            "no certified level".into()
        } else {
            parts.join(" ∩ ")
        }
    }
}

impl fmt::Display for Levels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.summary())
    }
}

#[derive(Clone, Debug)]
pub struct FiltrationReport {
    pub levels: Levels,
    pub certificate: Certificate,
}

pub const RULE_F0: &str = "a knot lies in F_0 if and only if its Arf invariant vanishes";
pub const RULE_F_HALF: &str = "a knot lies in F_0.5 if and only if it is algebraically slice";
pub const RULE_TOP_SLICE: &str = "Alexander polynomial 1 implies topologically slice, hence membership in every F_n";
pub const RULE_INFECT: &str = "for a doubling operator R: K in F_n, P_n, N_n or B_n implies R(K) in F_{n+1}, P_{n+1}, N_{n+1} or B_{n+1}";
pub const RULE_CABLE: &str = "(p,1)-cabling preserves F_n, P_n, N_n and B_n";
pub const RULE_CROSSING: &str =
    "a knot that becomes a knot of N_0 after changing negative crossings to positive lies in N_0 (dually for P_0)";
pub const RULE_BIPOLAR: &str = "B_n is the intersection of P_n and N_n";
pub const RULE_GROUP: &str = "F_n and B_n are subgroups and P_n, N_n are closed under connected sum";
pub const RULE_MIRROR: &str = "mirror-reversal preserves F_n and B_n and exchanges P_n with N_n";

/// Derives the certified filtration levels of `e` by structural rules.
pub fn filtration_certify(e: &KnotExpr, facts: &FactBase) -> Result<FiltrationReport, ConcordanceError> {
    let mut c = Certificate::new(format!("filtration levels of {}", e));
    let levels = levels_of(e, facts, &mut c)?;
    let conclusion = format!("{} lies in {}", e, levels.summary());
    c.claim = conclusion.clone();
    Ok(FiltrationReport { levels, certificate: c.close_with(conclusion) })
}

fn leaf_levels(e: &KnotExpr, inv: &KnotInvariants, derivatives: bool, c: &mut Certificate) -> Levels {
    let mut l = Levels::default();
    if inv.alexander.is_unit() {
        c.verified.push(format!("{}: Alexander polynomial is 1", e));
        c.rule(RULE_TOP_SLICE);
        l.f = Some(Depth::All);
    } else if derivatives {
        c.verified.push(format!("{}: the Seifert form vanishes on a primitive class (algebraically slice)", e));
        c.rule(RULE_F_HALF);
        l.f = Some(Depth::Finite(1));
    } else if inv.arf == 0 {
        c.verified.push(format!("{}: Arf = 0", e));
        c.rule(RULE_F0);
        l.f = Some(Depth::Finite(0));
    }
    l
}

fn levels_of(e: &KnotExpr, facts: &FactBase, c: &mut Certificate) -> Result<Levels, ConcordanceError> {
    let mut l = match e {
        KnotExpr::Unknot => Levels::all(),
        KnotExpr::Twist(j) => {
            let inv = eval_invariants_with(e, facts)?;
            let mut l = leaf_levels(e, &inv, false, c);
            c.assume(&Fact {
                id: ids::membership(e, Level::P(0)),
                cite: format!("changing one positive clasp crossing unknots the twist knot with {} full twists", j),
            });
            c.rule(RULE_CROSSING);
            l.p = Some(Depth::Finite(0));
            l
        }
        KnotExpr::Base(b) => {
            let inv = eval_invariants_with(e, facts)?;
            let der = b.matrix.dim() == 2 && !b.matrix.genus_one_derivatives()?.is_empty();
            let mut l = leaf_levels(e, &inv, der, c);
            for f in &b.facts {
                if let LeafFact::Member(level) = f.fact {
                    c.assume(&Fact { id: ids::membership(e, level), cite: f.cite.clone() });
                    l.raise(level);
                }
            }
            l
        }
        KnotExpr::Sum(parts) => {
            c.rule(RULE_GROUP);
            let mut acc = Levels::all();
            for p in parts {
                let x = levels_of(p, facts, c)?;
                acc = Levels { f: min2(acc.f, x.f), p: min2(acc.p, x.p), n: min2(acc.n, x.n), b: min2(acc.b, x.b) };
            }
            acc
        }
        KnotExpr::MirrorReverse(x) => {
            c.rule(RULE_MIRROR);
            let x = levels_of(x, facts, c)?;
            Levels { f: x.f, p: x.n, n: x.p, b: x.b }
        }
        KnotExpr::Cable(x, p) => {
            let x = levels_of(x, facts, c)?;
            if *p > 1 {
                c.rule(RULE_CABLE);
            }
            x
        }
        KnotExpr::Infect(op, x) => {
            let x = levels_of(x, facts, c)?;
            c.rule(RULE_INFECT);
            c.rule(RULE_F_HALF);
            c.verified.push(format!("{}: winding number 0 and the pattern's Seifert form, so algebraically slice", e));
            let f_next = x.f.map(|d| match d {
                Depth::Finite(h) => Depth::Finite(2 * (h / 2) + 2),
                Depth::All => Depth::All,
            });
            let mut l = Levels {
                f: max2(Some(Depth::Finite(1)), f_next),
                p: x.p.map(Depth::plus_one),
                n: x.n.map(Depth::plus_one),
                b: x.b.map(Depth::plus_one),
            };
            if let OperatorFamily::R { k, j: Some(j) } = op.family() {
                let jexpr = KnotExpr::base(j)?;
                let mut sub = Certificate::default();
                let jl = levels_of(&jexpr, facts, &mut sub)?;
                if jl.n.is_some() {
                    c.absorb(&sub, &jexpr.to_string());
                    c.assume(&Fact {
                        id: format!("changing {} negative crossings turns {}(K) into U_eta({}) for every K", k + 1, op.name(), jexpr),
                        cite: "diagram of the operator: the clasps of the first band".into(),
                    });
                    c.rule(RULE_CROSSING);
                    c.rule(
                        "infection of the unknot along an unknotted curve of linking number 0 is a doubling operator",
                    );
                    l.n = max2(l.n, Some(Depth::Finite(0)));
                }
            }
            l
        }
    };
    for (level, fact) in facts.levels_of(&e.id()) {
        if let Level::F(h) = level {
            if h == 0 && eval_invariants_with(e, facts)?.arf != 0 {
                c.failed.push(format!("fact \"{}\" contradicts Arf = 1", fact.id));
                continue;
            }
        }
        c.assume(fact);
        l.raise(level);
    }
    let before = l;
    l.close_bipolar();
    if l != before {
        c.rule(RULE_BIPOLAR);
    }
    Ok(l)
}

// ---------------------------------------------------------------------------
// Independence

/// One sequence of operators (innermost first) with its companions; the
/// knots are the iterated infections of each companion.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub operators: Vec<OperatorSpec>,
    pub companions: Vec<KnotExpr>,
}

impl FamilyMember {
    pub fn knots(&self) -> Vec<KnotExpr> {
        self.companions
            .iter()
            .map(|k| self.operators.iter().fold(k.clone(), |e, op| KnotExpr::infect(op, e)))
            .collect()
    }

    /// Alexander polynomials of the operators, outermost first.
    pub fn alexander_sequence(&self) -> Vec<LaurentPoly> {
        self.operators.iter().rev().map(|op| op.module().delta().clone()).collect()
    }

    pub fn label(&self) -> String {
        let ops: Vec<&str> = self.operators.iter().rev().map(|o| o.name()).collect();
        format!("[{}]", ops.join(" o "))
    }
}

/// `n` copies of `R(k, J)` with the outermost one cabled by `p`, one member
/// per `p`, all sharing the companions.
pub fn cabled_iterate_family(
    k: i64,
    n: usize,
    ps: &[u32],
    companions: &[KnotExpr],
    j: &str,
) -> Result<Vec<FamilyMember>, ConcordanceError> {
    if n == 0 {
        return Err(ConcordanceError::OutOfRange("depth 0".into()));
    }
    let r = OperatorSpec::r(k, j)?;
    ps.iter()
        .map(|&p| {
            let mut ops = vec![r.clone(); n - 1];
            ops.push(cable_operator(&r, p)?);
            Ok(FamilyMember { operators: ops, companions: companions.to_vec() })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct IndependenceConfig {
    pub relation_bound: u32,
    pub precision: BigRational,
    /// Extra knots whose `ρ₀` join the companions' in the relation search.
    pub evidence_pool: Vec<KnotExpr>,
}

impl Default for IndependenceConfig {
    fn default() -> Self {
        IndependenceConfig {
            relation_bound: 100,
            precision: BigRational::new(BigInt::one(), num::pow(BigInt::from(10), 30)),
            evidence_pool: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoprimalityCell {
    pub i: usize,
    pub j: usize,
    pub status: CoprimalityStatus,
    /// Resultant of the outermost Alexander polynomials.
    pub first_resultant: BigRational,
    pub trace: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub certificate: Certificate,
    pub knots: Vec<KnotExpr>,
    pub matrix: Vec<CoprimalityCell>,
    pub relation_values: Vec<KnotExpr>,
    pub relation: Option<Vec<i64>>,
}

/// Certificate for linear independence of all knots of a family modulo
/// `F_{n.5} + B_{n+1}`.
pub fn independence_report(
    family: &[FamilyMember],
    facts: &FactBase,
    cfg: &IndependenceConfig,
) -> Result<IndependenceReport, ConcordanceError> {
    let knots: Vec<KnotExpr> = family.iter().flat_map(|m| m.knots()).collect();
    if knots.is_empty() {
        let mut c = Certificate::new("the empty family is linearly independent");
        c.notes.push("vacuous: no knots".into());
        return Ok(IndependenceReport {
            certificate: c.close(),
            knots,
            matrix: Vec::new(),
            relation_values: Vec::new(),
            relation: None,
        });
    }
    let n = family[0].operators.len();
    if n == 0 {
        return Err(ConcordanceError::OutOfRange("depth 0".into()));
    }
    if family.iter().any(|m| m.operators.len() != n) {
        return Err(ConcordanceError::DepthMismatch);
    }
    let claim = format!("{} knots are linearly independent in C/(F_{}.5 + B_{})", knots.len(), n, n + 1);
    let mut c = Certificate::new(claim.clone());
    c.rule(RULE_INDEPENDENCE);

    // Robust operators.
    let mut seen: Vec<String> = Vec::new();
    for m in family {
        for op in &m.operators {
            if seen.iter().any(|s| s == op.name()) {
                continue;
            }
            seen.push(op.name().to_string());
            let rc = robustness_check(op, facts, 1)?;
            c.absorb(&rc, op.name());
        }
    }

    // Strong coprimality of the sequences.
    let seqs: Vec<Vec<LaurentPoly>> = family.iter().map(|m| m.alexander_sequence()).collect();
    let mut matrix = Vec::new();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let v = sequences_strongly_coprime(&seqs[i], &seqs[j])?;
            let res = resultant(&seqs[i][0], &seqs[j][0])?;
            let ok = v.status == CoprimalityStatus::StronglyCoprime;
            c.check(
                ok,
                format!(
                    "sequences {} and {} strongly coprime ({}; outer resultant {})",
                    family[i].label(),
                    family[j].label(),
                    v.trace.join("; "),
                    fmt_rational(&res)
                ),
            );
            matrix.push(CoprimalityCell { i, j, status: v.status, first_resultant: res, trace: v.trace });
        }
    }

    // ρ₀ hypotheses.
    for m in family {
        let inner = &m.operators[0];
        if inner.cable_level() > 1 {
            c.rule(RULE_CABLE_FOS);
        }
        let id = ids::rho0_span_avoids_fos(&m.companions, &inner.base_name());
        c.require(facts, &id, &m.label());
        for k in &m.companions {
            let r = eval_invariants_with(k, facts)?.rho0;
            c.check(!r.enclose(80).contains_zero(), format!("rho0({}) = {} in {} is nonzero", k, r, interval_text(&r)));
        }
    }

    // Supporting evidence: no small integer relation among the ρ₀ values.
    // Repeats within one member stay, so that they show up as relations.
    let mut values: Vec<KnotExpr> = Vec::new();
    for m in family {
        let fresh: Vec<KnotExpr> = m.companions.iter().filter(|k| !values.contains(k)).cloned().collect();
        values.extend(fresh);
    }
    for k in &cfg.evidence_pool {
        if !values.contains(k) {
            values.push(k.clone());
        }
    }
    let rhos: Vec<Rho0> = values.iter().map(|k| eval_invariants_with(k, facts).map(|i| i.rho0)).collect::<Result<_, _>>()?;
    let mut relation = None;
    if values.len() > 6 {
        c.notes.push(format!("relation search skipped: {} values exceed the limit of 6", values.len()));
    } else {
        let refs: Vec<&dyn Enclose> = rhos.iter().map(|r| r as &dyn Enclose).collect();
        relation = small_relation_search(&refs, cfg.relation_bound, &cfg.precision)?;
        let names: Vec<String> = values.iter().map(|k| format!("rho0({})", k)).collect();
        match &relation {
            None => c.verified.push(format!(
                "no integer relation with coefficients up to {} among {{{}}} at precision {}",
                cfg.relation_bound,
                names.join(", "),
                fmt_rational(&cfg.precision)
            )),
            Some(rel) => {
                let support: Vec<&KnotExpr> = values.iter().zip(rel).filter(|(_, c)| **c != 0).map(|(k, _)| k).collect();
                let text = format!("integer relation {:?} among {{{}}}", rel, names.join(", "));
                let within = |m: &FamilyMember| support.iter().all(|k| m.companions.contains(k));
                if family.iter().any(within) {
                    c.failed.push(format!("{} contradicts the rho0 hypothesis", text));
                } else {
                    c.notes.push(text);
                }
            }
        }
    }

    // Projections when every knot lies in F_n ∩ B_{n−1}.
    let mut conclusion = claim;
    let all_in = knots.iter().try_fold(true, |acc, k| {
        filtration_certify(k, facts).map(|r| acc && r.levels.in_f(n as u32) && r.levels.in_b(n as u32 - 1))
    })?;
    if all_in {
        conclusion = format!(
            "{}; every member lies in F_{} ∩ B_{}, so they are also independent in F_{}/F_{}.5 and B_{}/B_{}",
            conclusion,
            n,
            n - 1,
            n,
            n,
            n - 1,
            n + 1
        );
    }
    Ok(IndependenceReport { certificate: c.close_with(conclusion), knots, matrix, relation_values: values, relation })
}

// ---------------------------------------------------------------------------
// Derivative-curve examples

#[derive(Clone, Debug)]
pub struct KauffmanCase {
    pub companion: KnotExpr,
    /// `L # −L_{2,1}`.
    pub d: KnotExpr,
    /// `Arf(T)`, `Arf(L)`, `Arf(−L)` for the winding-one satellites making up `d′`.
    pub arf_terms: [u8; 3],
    pub arf_d_prime: u8,
    pub alexander_d: LaurentPoly,
    pub topologically_slice: bool,
    pub tau_d: TauBounds,
    /// Present for companions built from a cabled iterate family.
    pub nontriviality: Option<Certificate>,
}

#[derive(Clone, Debug)]
pub struct KauffmanReport {
    pub cases: Vec<KauffmanCase>,
    pub injected: Vec<Fact>,
}

/// Facts the suite injects: `τ` of the cabled Whitehead double.
pub fn kauffman_injected() -> FactBase {
    let mut fb = FactBase::new();
    let d = KnotExpr::base("whitehead-double").expect("builtin");
    let d21 = KnotExpr::cable(d, 2).expect("p = 2");
    fb.insert(Fact {
        id: ids::tau_value(&d21, 2),
        cite: "cabling formula for tau when tau equals the genus (epsilon = 1): tau(K_{p,1}) = p*tau(K)".into(),
    });
    fb
}

/// Runs the examples for the right-handed trefoil `T`, twist knots, the
/// Whitehead double marker and a member of the cabled iterate family.
pub fn kauffman_suite(facts: &FactBase) -> Result<KauffmanReport, ConcordanceError> {
    let mut companions = vec![KnotExpr::Twist(1), KnotExpr::Twist(2), KnotExpr::base("whitehead-double")?];
    let family_companion = KnotExpr::Twist(2);
    let r = OperatorSpec::r(1, "neg-trefoils-3")?;
    companions.push(KnotExpr::infect(&r, family_companion.clone()));
    let mut report = kauffman_cases(&companions, facts)?;
    let family = cabled_iterate_family(1, 1, &[1, 2], &[family_companion], "neg-trefoils-3")?;
    let ind = independence_report(&family, facts, &IndependenceConfig::default())?;
    let mut cert = Certificate::new(format!("{} is nontrivial", report.cases[3].d));
    cert.absorb(&ind.certificate, "independence of L and L_{2,1}");
    let text = format!("{} is nontrivial in F_1/F_1.5 since L and L_{{2,1}} are independent there", report.cases[3].d);
    cert = cert.close_with(text);
    report.cases[3].nontriviality = Some(cert);
    Ok(report)
}

/// The per-companion part of the suite.
pub fn kauffman_cases(companions: &[KnotExpr], facts: &FactBase) -> Result<KauffmanReport, ConcordanceError> {
    let injected = kauffman_injected();
    let mut all = facts.clone();
    all.merge(&injected);
    let t = eval_invariants_with(&KnotExpr::Twist(1), &all)?;
    let mut cases = Vec::new();
    for l in companions {
        let d = KnotExpr::Sum(vec![l.clone(), KnotExpr::neg(KnotExpr::cable(l.clone(), 2)?)]);
        let li = eval_invariants_with(l, &all)?;
        let mi = eval_invariants_with(&KnotExpr::neg(l.clone()), &all)?;
        let di = eval_invariants_with(&d, &all)?;
        let arf_terms = [t.arf, li.arf, mi.arf];
        cases.push(KauffmanCase {
            companion: l.clone(),
            d,
            arf_terms,
            arf_d_prime: arf_terms[0] ^ arf_terms[1] ^ arf_terms[2],
            topologically_slice: di.alexander.is_unit(),
            alexander_d: di.alexander,
            tau_d: di.tau,
            nontriviality: None,
        });
    }
    Ok(KauffmanReport { cases, injected: injected.facts().to_vec() })
}

impl fmt::Display for KauffmanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "injected facts:")?;
        for i in &self.injected {
            writeln!(f, "  - {}", i)?;
        }
        for c in &self.cases {
            writeln!(f, "L = {}", c.companion)?;
            writeln!(f, "  d = {}", c.d)?;
            writeln!(
                f,
                "  Arf(d') = Arf(T) + Arf(L) + Arf(-L) = {} + {} + {} = {} (mod 2)",
                c.arf_terms[0], c.arf_terms[1], c.arf_terms[2], c.arf_d_prime
            )?;
            writeln!(f, "  Alexander(d) = {}{}", c.alexander_d, if c.topologically_slice { "  (topologically slice)" } else { "" })?;
            match c.tau_d.exact {
                Some(t) => writeln!(f, "  tau(d) = {}{}", t, if t != 0 { "  (not smoothly slice)" } else { "" })?,
                None => writeln!(f, "  tau(d) in [{}, {}]", c.tau_d.lower, c.tau_d.upper)?,
            }
            if let Some(cert) = &c.nontriviality {
                for line in cert.to_string().lines() {
                    writeln!(f, "  {}", line)?;
                }
            }
        }
        Ok(())
    }
}

