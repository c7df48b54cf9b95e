//! Doubling operators, their module data and the ledger of first-order
//! signatures kept as formal symbols.

use super::expr::KnotExpr;
use super::ConcordanceError;
use crate::alexmodule::{curve_element, CyclicAlexModule, Presentation, Submodule};
use crate::laurent::{fmt_rational, LaurentPoly};
use crate::seifert::{Builtin, SeifertMatrix};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RhoAtom {
    /// First-order signature of an operator's pattern at a submodule.
    Fos { operator: String, submodule: String },
    /// `ρ₀` of the knot with the given id.
    Rho0(String),
}

impl fmt::Display for RhoAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhoAtom::Rho0(k) => write!(f, "rho0({})", k),
            RhoAtom::Fos { operator, submodule } => write!(f, "rho(M({}), {})", operator, submodule),
        }
    }
}

/// `c + Σ qᵢ·atomᵢ` with rational coefficients, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RhoExpr {
    constant: BigRational,
    terms: BTreeMap<RhoAtom, BigRational>,
}

impl RhoExpr {
    pub fn zero() -> Self {
        RhoExpr::default()
    }

    pub fn atom(a: RhoAtom) -> Self {
        let mut e = RhoExpr::zero();
        e.terms.insert(a, BigRational::one());
        e
    }

    pub fn constant(c: BigRational) -> Self {
        RhoExpr { constant: c, terms: BTreeMap::new() }
    }

    pub fn constant_term(&self) -> &BigRational {
        &self.constant
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RhoAtom, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (a, c) in &other.terms {
            *out.terms.entry(a.clone()).or_insert_with(BigRational::zero) += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return RhoExpr::zero();
        }
        RhoExpr {
            constant: &self.constant * q,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c * q)).collect(),
        }
    }
}

impl fmt::Display for RhoExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (a, c) in &self.terms {
            let mag = c.abs();
            let body = if mag.is_one() { a.to_string() } else { format!("{}*{}", fmt_rational(&mag), a) };
            match (parts.is_empty(), c.is_negative()) {
                (true, false) => parts.push(body),
                (true, true) => parts.push(format!("-{}", body)),
                (false, false) => parts.push(format!("+ {}", body)),
                (false, true) => parts.push(format!("- {}", body)),
            }
        }
        if !self.constant.is_zero() || parts.is_empty() {
            let mag = fmt_rational(&self.constant.abs());
            match (parts.is_empty(), self.constant.is_negative()) {
                (true, false) => parts.push(mag),
                (true, true) => parts.push(format!("-{}", mag)),
                (false, false) => parts.push(format!("+ {}", mag)),
                (false, true) => parts.push(format!("- {}", mag)),
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FosStatus {
    /// Vanishes because the submodule comes from a ribbon disk.
    KnownZero { reason: String },
    /// Nonzero by a cited hypothesis.
    KnownNonzero { fact: String },
    Formal(RhoExpr),
}

#[derive(Clone, Debug)]
pub struct FosEntry {
    pub submodule: Submodule,
    pub status: FosStatus,
}

/// First-order signatures of a pattern, one entry per proper submodule.
#[derive(Clone, Debug, Default)]
pub struct FosLedger {
    entries: Vec<FosEntry>,
}

impl FosLedger {
    pub fn entries(&self) -> &[FosEntry] {
        &self.entries
    }

    pub fn get(&self, label: &str) -> Option<&FosEntry> {
        self.entries.iter().find(|e| e.submodule.label() == label)
    }

    fn push(&mut self, submodule: Submodule, value: RhoExpr) {
        let status = if submodule.is_ribbon() {
            FosStatus::KnownZero { reason: format!("{} comes from a ribbon disk", submodule.label()) }
        } else {
            FosStatus::Formal(value)
        };
        self.entries.push(FosEntry { submodule, status });
    }

    /// Every `KnownZero` sits on a ribbon-marked submodule.
    pub fn is_sound(&self) -> bool {
        self.entries
            .iter()
            .all(|e| !matches!(e.status, FosStatus::KnownZero { .. }) || e.submodule.is_ribbon())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorFamily {
    /// One band knotted by `J` along the curve dual to the unknotted
    /// derivative; `None` for the unknotted pattern.
    R { k: i64, j: Option<String> },
    /// Both bands run around the solid torus and twist `k` times.
    Q { k: i64 },
}

/// A doubling operator: a ribbon pattern with an unknotted axis of
/// winding number zero, together with its Alexander module data.
#[derive(Clone, Debug)]
pub struct OperatorSpec {
    name: String,
    family: OperatorFamily,
    cable: u32,
    pattern: SeifertMatrix,
    module: CyclicAlexModule,
    axis_class: LaurentPoly,
    submodules: Vec<Submodule>,
    derivative_submodules: Vec<(Vec<i64>, Submodule)>,
    fos: FosLedger,
}

/// `kt − (k + 1)`.
pub fn pattern_factor(k: i64) -> LaurentPoly {
    LaurentPoly::from_ints(0, &[-(k + 1), k])
}

impl OperatorSpec {
    /// Pattern matrix, module, the submodules spanned by derivative curves
    /// and the three proper submodules, with ribbon markers placed on the
    /// labels in `ribbon`.
    fn core(name: String, family: OperatorFamily, k: i64, labels: [&str; 2], ribbon: [bool; 2]) -> Result<Self, ConcordanceError> {
        if k < 1 {
            return Err(ConcordanceError::OutOfRange(format!("k = {}", k)));
        }
        let pattern = SeifertMatrix::builtin(match family {
            OperatorFamily::R { .. } => Builtin::OperatorR(k),
            OperatorFamily::Q { .. } => Builtin::OperatorQ(k),
        })?;
        let module = CyclicAlexModule::new(&pattern_factor(k), "alpha")?;
        let pres = Presentation::new(&module, &pattern)?;
        let mut derivative_submodules = Vec::new();
        for d in pattern.genus_one_derivatives()? {
            let v = [BigInt::from(d.x), BigInt::from(d.y)];
            let s = pres.submodule_of(&module, &curve_element(&pattern, &v), "");
            derivative_submodules.push((vec![d.x, d.y], s));
        }
        // The derivative (1, −1) comes first.
        derivative_submodules.sort_by_key(|(v, _)| (v[0] != 1 || v[1] != -1, v.clone()));
        let mut submodules = vec![module.zero_submodule()];
        for (i, (_, s)) in derivative_submodules.iter_mut().enumerate() {
            *s = s.clone().with_label(labels[i]).with_ribbon_marker(ribbon[i]);
            submodules.push(s.clone());
        }
        Ok(OperatorSpec {
            name,
            family,
            cable: 1,
            pattern,
            module,
            axis_class: LaurentPoly::one(),
            submodules,
            derivative_submodules,
            fos: FosLedger::default(),
        })
    }

    /// The unknotted pattern behind `R(k, J)`, whose derivative `d` bounds a
    /// ribbon disk.
    pub fn r_unknotted(k: i64) -> Result<Self, ConcordanceError> {
        let mut op = Self::core(format!("R({},U)", k), OperatorFamily::R { k, j: None }, k, ["<d>", "<d'>"], [true, false])?;
        let name = op.name.clone();
        let subs = op.submodules.clone();
        for s in subs {
            let atom = RhoExpr::atom(RhoAtom::Fos { operator: name.clone(), submodule: s.label().to_string() });
            op.fos.push(s, atom);
        }
        Ok(op)
    }

    /// `R(k, J)`: the unknotted pattern infected by `J` along a curve `η`
    /// whose class lies in `⟨d⟩`.
    pub fn r(k: i64, j: &str) -> Result<Self, ConcordanceError> {
        let companion = KnotExpr::base(j)?;
        let unknotted = Self::r_unknotted(k)?;
        let mut eta = unknotted.clone();
        eta.axis_class = unknotted.submodules[1].generator().clone();
        let mut op = Self::core(
            format!("R({}, J=\"{}\")", k, j),
            OperatorFamily::R { k, j: Some(j.to_string()) },
            k,
            ["<d>", "<d'>"],
            [true, false],
        )?;
        for (s, us) in op.submodules.clone().into_iter().zip(unknotted.submodules.iter()) {
            let value = rho_ledger_infection(&eta, &companion, us)?;
            op.fos.push(s, value);
        }
        Ok(op)
    }

    /// `Q(k)`: both derivatives `η±` bound ribbon disks obtained by cutting a
    /// band.
    pub fn q(k: i64) -> Result<Self, ConcordanceError> {
        let mut op = Self::core(format!("Q({})", k), OperatorFamily::Q { k }, k, ["<eta+>", "<eta->"], [true, true])?;
        let name = op.name.clone();
        for s in op.submodules.clone() {
            let atom = RhoExpr::atom(RhoAtom::Fos { operator: name.clone(), submodule: s.label().to_string() });
            op.fos.push(s, atom);
        }
        Ok(op)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Name of the operator before cabling.
    pub fn base_name(&self) -> String {
        self.uncabled().name
    }

    pub fn family(&self) -> &OperatorFamily {
        &self.family
    }

    pub fn k(&self) -> i64 {
        match self.family {
            OperatorFamily::R { k, .. } | OperatorFamily::Q { k } => k,
        }
    }

    pub fn cable_level(&self) -> u32 {
        self.cable
    }

    pub fn pattern(&self) -> &SeifertMatrix {
        &self.pattern
    }

    pub fn module(&self) -> &CyclicAlexModule {
        &self.module
    }

    /// `δ` of the module at the current cable level.
    pub fn delta_factor(&self) -> &LaurentPoly {
        self.module.delta_factor()
    }

    pub fn axis_class(&self) -> &LaurentPoly {
        &self.axis_class
    }

    pub fn submodules(&self) -> &[Submodule] {
        &self.submodules
    }

    /// Derivative classes of the pattern with the submodules their curves
    /// generate (uncabled level).
    pub fn derivative_submodules(&self) -> &[(Vec<i64>, Submodule)] {
        &self.derivative_submodules
    }

    pub fn ribbon_markers(&self) -> Vec<String> {
        self.submodules.iter().filter(|s| s.is_ribbon()).map(|s| s.label().to_string()).collect()
    }

    pub fn fos(&self) -> &FosLedger {
        &self.fos
    }

    pub fn is_robust_type(&self) -> bool {
        self.module.is_robust_type()
    }

    /// The same operator at cable level 1.
    pub fn uncabled(&self) -> OperatorSpec {
        if self.cable == 1 {
            return self.clone();
        }
        match &self.family {
            OperatorFamily::Q { k } => Self::q(*k),
            OperatorFamily::R { k, j: Some(j) } => Self::r(*k, j),
            OperatorFamily::R { k, j: None } => Self::r_unknotted(*k),
        }
        .expect("operator was constructible")
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// `ρ` of the infected pattern at `P`: the pattern's atom, plus `ρ₀` of the
/// companion when the axis class is not in `P`. Atoms at ribbon-marked
/// submodules are zero.
pub fn rho_ledger_infection(op: &OperatorSpec, companion: &KnotExpr, p: &Submodule) -> Result<RhoExpr, ConcordanceError> {
    if !p.generator().divides(op.module.delta()) || !op.submodules.iter().any(|s| s == p) {
        return Err(ConcordanceError::NotASubmodule(p.label().to_string()));
    }
    let mut e = if p.is_ribbon() {
        RhoExpr::zero()
    } else {
        RhoExpr::atom(RhoAtom::Fos { operator: op.base_name(), submodule: p.label().to_string() })
    };
    if !op.module.contains(p, &op.axis_class) {
        e = e.add(&RhoExpr::atom(RhoAtom::Rho0(companion.id())));
    }
    Ok(e)
}

/// `R_{p,1}` with axis `α′`: the module tensored up along `t = s^p`,
/// submodules and ribbon markers transported, and the ledger carried over
/// entry for entry.
pub fn cable_operator(op: &OperatorSpec, p: u32) -> Result<OperatorSpec, ConcordanceError> {
    if p == 0 {
        return Err(ConcordanceError::OutOfRange("cable parameter 0".into()));
    }
    if p == 1 {
        return Ok(op.clone());
    }
    let module = op.module.cable_module(p)?;
    let submodules: Vec<Submodule> = op.submodules.iter().map(|s| s.transport(&module, p)).collect();
    let mut fos = FosLedger::default();
    for (e, s) in op.fos.entries.iter().zip(&submodules) {
        fos.entries.push(FosEntry { submodule: s.clone(), status: e.status.clone() });
    }
    let cable = op.cable * p;
    Ok(OperatorSpec {
        name: format!("cable({}, {})", op.base_name(), cable),
        family: op.family.clone(),
        cable,
        pattern: op.pattern.clone(),
        axis_class: op.axis_class.substitute_power(p as i64)?,
        module,
        submodules,
        derivative_submodules: op.derivative_submodules.clone(),
        fos,
    })
}
