//! Cyclic rational Alexander modules `ℚ[t, t⁻¹]/⟨δ(t)δ(t⁻¹)⟩`, their
//! submodules and the Blanchfield pairing of a Seifert matrix.

use crate::laurent::{self, LaurentPoly};
use crate::primality::is_irreducible;
use crate::seifert::SeifertMatrix;
use num::{BigInt, BigRational, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlexModuleError {
    #[error("not a robust-type module")]
    NotRobustType,
    #[error("zero polynomial")]
    Zero,
    #[error("Alexander polynomial vanishes")]
    DegenerateForm,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("Seifert matrix does not present this module")]
    ModuleMismatch,
    #[error("cable parameter must be positive")]
    ZeroCable,
}

/// Remainder of an ordinary polynomial (all exponents `≥ 0`) modulo `d`
/// (normalized, `d(0) ≠ 0`).
fn poly_rem(f: &LaurentPoly, d: &LaurentPoly) -> LaurentPoly {
    let dd = d.max_exp().unwrap();
    let lc = d.leading_coeff();
    let mut r = f.clone();
    while let Some(top) = r.max_exp() {
        if top < dd {
            break;
        }
        let c = &r.coeff(top) / &lc;
        r = &r - &d.shift(top - dd).scale(&c);
    }
    r
}

/// Remainder of `f` in `ℚ[t, t⁻¹]/⟨d⟩`, as a polynomial of degree below
/// `span(d)` with nonnegative exponents.
pub fn residue(f: &LaurentPoly, d: &LaurentPoly) -> LaurentPoly {
    let d = d.normalize().expect("nonzero modulus");
    if d.span() == 0 {
        return LaurentPoly::zero();
    }
    let low = match f.min_exp() {
        Some(e) => e,
        None => return LaurentPoly::zero(),
    };
    if low >= 0 {
        return poly_rem(f, &d);
    }
    let mut r = poly_rem(&f.shift(-low), &d);
    // t⁻¹ ≡ (d(0) − d(t)) / (d(0)·t)
    let d0 = d.coeff(0);
    let tinv = (&LaurentPoly::constant(d0.clone()) - &d).shift(-1).scale(&d0.recip());
    for _ in 0..(-low) {
        r = poly_rem(&(&r * &tinv), &d);
    }
    r
}

/// The involution `t ↦ t⁻¹`.
pub fn conj(f: &LaurentPoly) -> LaurentPoly {
    f.reciprocal()
}

/// A class in `ℚ(t)/ℚ[t, t⁻¹]`, stored as `num/den` with `den` normalized
/// and `num` a reduced residue modulo `den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionClass {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl FractionClass {
    pub fn new(num: &LaurentPoly, den: &LaurentPoly) -> Result<Self, AlexModuleError> {
        if den.is_zero() {
            return Err(AlexModuleError::DegenerateForm);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = laurent::gcd(num, den).expect("nonzero");
        let mut n = num.checked_div(&g).unwrap().expect("gcd divides");
        let mut d = den.checked_div(&g).unwrap().expect("gcd divides");
        // Rescale so that d is normalized.
        let nd = d.normalize().unwrap();
        let (lo, e) = (nd.min_exp().unwrap(), d.min_exp().unwrap());
        n = n.scale(&(&nd.coeff(lo) / &d.coeff(e))).shift(lo - e);
        d = nd;
        if d.span() == 0 {
            return Ok(Self::zero());
        }
        Ok(FractionClass { num: residue(&n, &d), den: d })
    }

    pub fn zero() -> Self {
        FractionClass { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(&num, &(&self.den * &other.den)).expect("nonzero denominators")
    }

    pub fn mul_poly(&self, f: &LaurentPoly) -> Self {
        Self::new(&(&self.num * f), &self.den).expect("nonzero denominator")
    }

    pub fn conj(&self) -> Self {
        Self::new(&conj(&self.num), &conj(&self.den)).expect("nonzero denominator")
    }
}

impl fmt::Display for FractionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Sign convention of the pairing's `(1 − t)` factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    OneMinusT,
    TMinusOne,
}

type LMatrix = Vec<Vec<LaurentPoly>>;

fn det(m: &LMatrix) -> LaurentPoly {
    let n = m.len();
    match n {
        0 => LaurentPoly::one(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = LaurentPoly::zero();
            for j in 0..n {
                let minor = minor(m, 0, j);
                let term = &m[0][j] * &det(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn minor(m: &LMatrix, r: usize, c: usize) -> LMatrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
        .collect()
}

fn adjugate(m: &LMatrix) -> LMatrix {
    let n = m.len();
    if n == 1 {
        return vec![vec![LaurentPoly::one()]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = det(&minor(m, j, i));
                    if (i + j) % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_vec(m: &LMatrix, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(LaurentPoly::zero(), |acc, (a, b)| &acc + &(a * b)))
        .collect()
}

fn constant_matrix(v: &SeifertMatrix, transpose: bool, t_power: i64) -> LMatrix {
    let n = v.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = if transpose { &v.entries()[j][i] } else { &v.entries()[i][j] };
                    LaurentPoly::monomial(BigRational::from_integer(e.clone()), t_power)
                })
                .collect()
        })
        .collect()
}

/// `tV − Vᵀ`.
fn pairing_matrix(v: &SeifertMatrix) -> LMatrix {
    let a = constant_matrix(v, false, 1);
    let b = constant_matrix(v, true, 0);
    a.iter().zip(&b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect()).collect()
}

/// The Alexander module is `ℚ[t, t⁻¹]ⁿ / (V − tVᵀ)ℚ[t, t⁻¹]ⁿ` (column
/// vectors). Its Blanchfield pairing is `(1 − t)·xᵀ(tV − Vᵀ)⁻¹ȳ`.
pub fn blanchfield_pairing(
    v: &SeifertMatrix,
    x: &[LaurentPoly],
    y: &[LaurentPoly],
) -> Result<FractionClass, AlexModuleError> {
    blanchfield_pairing_with(v, x, y, Convention::OneMinusT)
}

pub fn blanchfield_pairing_with(
    v: &SeifertMatrix,
    x: &[LaurentPoly],
    y: &[LaurentPoly],
    conv: Convention,
) -> Result<FractionClass, AlexModuleError> {
    let n = v.dim();
    if x.len() != n || y.len() != n {
        return Err(AlexModuleError::DimensionMismatch);
    }
    let m = pairing_matrix(v);
    let d = det(&m);
    if d.is_zero() {
        return Err(AlexModuleError::DegenerateForm);
    }
    let ybar: Vec<LaurentPoly> = y.iter().map(conj).collect();
    let w = mat_vec(&adjugate(&m), &ybar);
    let s = x.iter().zip(&w).fold(LaurentPoly::zero(), |acc, (a, b)| &acc + &(a * b));
    let factor = match conv {
        Convention::OneMinusT => LaurentPoly::from_ints(0, &[1, -1]),
        Convention::TMinusOne => LaurentPoly::from_ints(0, &[-1, 1]),
    };
    FractionClass::new(&(&factor * &s), &d)
}

/// `ℚ[t, t⁻¹]/⟨δ(t)δ(t⁻¹)⟩`.
#[derive(Clone, Debug)]
pub struct CyclicAlexModule {
    delta: LaurentPoly,
    delta_factor: LaurentPoly,
    generator_name: String,
    robust_type: bool,
}

impl CyclicAlexModule {
    pub fn new(delta_factor: &LaurentPoly, generator_name: &str) -> Result<Self, AlexModuleError> {
        if delta_factor.is_zero() {
            return Err(AlexModuleError::Zero);
        }
        let delta = (delta_factor * &conj(delta_factor)).normalize().unwrap();
        let robust_type = is_irreducible(delta_factor).map(|v| v.is_irreducible()).unwrap_or(false);
        Ok(CyclicAlexModule {
            delta,
            delta_factor: delta_factor.normalize().unwrap(),
            generator_name: generator_name.to_string(),
            robust_type,
        })
    }

    pub fn delta(&self) -> &LaurentPoly {
        &self.delta
    }

    pub fn delta_factor(&self) -> &LaurentPoly {
        &self.delta_factor
    }

    pub fn generator_name(&self) -> &str {
        &self.generator_name
    }

    /// Whether `δ` is irreducible, so that the submodule lattice is the
    /// one of a robust doubling operator.
    pub fn is_robust_type(&self) -> bool {
        self.robust_type
    }

    pub fn submodule(&self, g: &LaurentPoly, label: &str) -> Submodule {
        let gen = if g.is_zero() { self.delta.clone() } else { laurent::gcd(g, &self.delta).unwrap() };
        Submodule { generator: gen, label: label.to_string(), ribbon: false }
    }

    pub fn zero_submodule(&self) -> Submodule {
        self.submodule(&LaurentPoly::zero(), "<0>")
    }

    pub fn whole(&self) -> Submodule {
        self.submodule(&LaurentPoly::one(), "<1>")
    }

    /// `⟨0⟩`, `⟨δ(t)⟩`, `⟨δ(t⁻¹)⟩`, the last two merged when `δ ≐ δ̄`.
    pub fn proper_submodules(&self) -> Result<Vec<Submodule>, AlexModuleError> {
        if !self.robust_type {
            return Err(AlexModuleError::NotRobustType);
        }
        let mut out = vec![self.zero_submodule()];
        let a = self.submodule(&self.delta_factor, "<delta(t)>");
        let b = self.submodule(&conj(&self.delta_factor), "<delta(t^-1)>");
        let same = a == b;
        out.push(a);
        if !same {
            out.push(b);
        }
        Ok(out)
    }

    /// Whether an element (a residue) lies in a submodule.
    pub fn contains(&self, p: &Submodule, element: &LaurentPoly) -> bool {
        p.generator.divides(&residue(element, &self.delta))
    }

    pub fn intersect(&self, a: &Submodule, b: &Submodule) -> Submodule {
        let l = laurent::lcm(&a.generator, &b.generator).unwrap();
        let label = format!("{} & {}", a.label, b.label);
        self.submodule(&l, &label)
    }

    pub fn is_zero_submodule(&self, p: &Submodule) -> bool {
        p.generator.associate(&self.delta)
    }

    /// `A ⊗ ℚ[s, s⁻¹]` along `t = s^p`.
    pub fn cable_module(&self, p: u32) -> Result<Self, AlexModuleError> {
        if p == 0 {
            return Err(AlexModuleError::ZeroCable);
        }
        if p == 1 {
            return Ok(self.clone());
        }
        let f = self.delta_factor.substitute_power(p as i64).unwrap();
        Self::new(&f, &self.generator_name)
    }

    /// Divisibility test for isotropy, valid for a nondegenerate pairing:
    /// `⟨g⟩ ⊆ ⟨g⟩⊥` iff `Δ | g·ḡ`.
    pub fn isotropy_by_divisibility(&self, p: &Submodule) -> Isotropy {
        let prod = &p.generator * &conj(&p.generator);
        if !self.delta.divides(&prod) {
            Isotropy::Neither
        } else if prod.associate(&self.delta) {
            Isotropy::Lagrangian
        } else {
            Isotropy::Isotropic
        }
    }

    /// Checks that `1` and `−k(1 − t)` generate the module, i.e. the ideal
    /// they span together with the order is the unit ideal.
    pub fn generated_by(&self, elements: &[LaurentPoly]) -> bool {
        let mut g = self.delta.clone();
        for e in elements {
            if !e.is_zero() {
                g = laurent::gcd(&g, e).unwrap();
            }
        }
        g.is_unit()
    }
}

/// A submodule `⟨g⟩` with `g | Δ`.
#[derive(Clone, Debug)]
pub struct Submodule {
    generator: LaurentPoly,
    label: String,
    ribbon: bool,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.generator == other.generator
    }
}

impl Submodule {
    pub fn generator(&self) -> &LaurentPoly {
        &self.generator
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_ribbon(&self) -> bool {
        self.ribbon
    }

    pub fn with_ribbon_marker(mut self, marked: bool) -> Self {
        self.ribbon = marked;
        self
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    /// `⊆` between submodules of the same module.
    pub fn is_contained_in(&self, other: &Submodule) -> bool {
        other.generator.divides(&self.generator)
    }

    /// `⟨g(t)⟩ ↦ ⟨g(s^p)⟩` inside the cabled module.
    pub fn transport(&self, target: &CyclicAlexModule, p: u32) -> Submodule {
        let g = self.generator.substitute_power(p as i64).unwrap();
        let mut s = target.submodule(&g, &self.label);
        s.ribbon = self.ribbon;
        s
    }
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = <{}>", self.label, self.generator)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Isotropy {
    Isotropic,
    Lagrangian,
    Neither,
}

/// A Seifert matrix presenting a cyclic module, with a vector whose class
/// generates.
#[derive(Clone, Debug)]
pub struct Presentation {
    v: SeifertMatrix,
    generator: Vec<LaurentPoly>,
    self_pairing: FractionClass,
}

/// `gcd(Δ, adj(V − tVᵀ)·w)`: the divisor of `Δ` indexing the submodule
/// generated by `w`.
fn span_divisor(v: &SeifertMatrix, delta: &LaurentPoly, w: &[LaurentPoly]) -> LaurentPoly {
    let adj = adjugate(&v.alexander_matrix());
    let mut g = delta.clone();
    for e in mat_vec(&adj, w) {
        if !e.is_zero() {
            g = laurent::gcd(&g, &e).unwrap();
        }
    }
    g.normalize().unwrap()
}

impl Presentation {
    pub fn new(m: &CyclicAlexModule, v: &SeifertMatrix) -> Result<Self, AlexModuleError> {
        let n = v.dim();
        if n == 0 {
            return Err(AlexModuleError::DimensionMismatch);
        }
        let delta = v.alexander_polynomial();
        if delta.is_zero() {
            return Err(AlexModuleError::DegenerateForm);
        }
        if !delta.associate(m.delta()) {
            return Err(AlexModuleError::ModuleMismatch);
        }
        // Small integer vectors first.
        let mut candidates: Vec<Vec<i64>> = Vec::new();
        for r in 1..=3i64 {
            let mut c = vec![-r; n];
            loop {
                if c.iter().any(|x| x.abs() == r) {
                    candidates.push(c.clone());
                }
                let mut i = 0;
                while i < n && c[i] == r {
                    c[i] = -r;
                    i += 1;
                }
                if i == n {
                    break;
                }
                c[i] += 1;
            }
        }
        for c in candidates {
            let w: Vec<LaurentPoly> = c.iter().map(|x| LaurentPoly::from_ints(0, &[*x])).collect();
            if span_divisor(v, &delta, &w).is_unit() {
                let self_pairing = blanchfield_pairing(v, &w, &w)?;
                return Ok(Presentation { v: v.clone(), generator: w, self_pairing });
            }
        }
        Err(AlexModuleError::ModuleMismatch)
    }

    pub fn generator(&self) -> &[LaurentPoly] {
        &self.generator
    }

    /// The vector representing the residue `g` of the cyclic module.
    pub fn embed(&self, g: &LaurentPoly) -> Vec<LaurentPoly> {
        self.generator.iter().map(|e| e * g).collect()
    }

    /// `P⊥` computed from the pairing of the generator with itself:
    /// `Bℓ(g·e, q·e) = g·q̄·c` vanishes iff `conj(D/gcd(D, g))` divides `q`,
    /// where `D` is the reduced denominator of `c`.
    pub fn orthogonal(&self, m: &CyclicAlexModule, p: &Submodule) -> Submodule {
        let d = self.self_pairing.denominator();
        let g = laurent::gcd(d, p.generator()).unwrap();
        let h = conj(&d.checked_div(&g).unwrap().unwrap());
        m.submodule(&h, &format!("{}^perp", p.label()))
    }

    pub fn pair(&self, a: &LaurentPoly, b: &LaurentPoly) -> FractionClass {
        blanchfield_pairing(&self.v, &self.embed(a), &self.embed(b)).expect("valid presentation")
    }

    /// Submodule generated by an arbitrary vector.
    pub fn submodule_of(&self, m: &CyclicAlexModule, w: &[LaurentPoly], label: &str) -> Submodule {
        m.submodule(&span_divisor(&self.v, m.delta(), w), label)
    }
}

/// Classifies `P` by computing `P⊥` through the Blanchfield pairing.
pub fn is_isotropic(m: &CyclicAlexModule, v: &SeifertMatrix, p: &Submodule) -> Result<Isotropy, AlexModuleError> {
    let pres = Presentation::new(m, v)?;
    let perp = pres.orthogonal(m, p);
    debug_assert!(pres.pair(p.generator(), perp.generator()).is_zero());
    Ok(if !p.is_contained_in(&perp) {
        Isotropy::Neither
    } else if perp.is_contained_in(p) {
        Isotropy::Lagrangian
    } else {
        Isotropy::Isotropic
    })
}

/// Module element of a curve on the Seifert surface with coordinates `d`:
/// the vector `V·d`.
pub fn curve_element(v: &SeifertMatrix, d: &[BigInt]) -> Vec<LaurentPoly> {
    let n = v.dim();
    (0..n)
        .map(|i| {
            let s = (0..n).fold(BigInt::zero(), |acc, j| acc + &v.entries()[i][j] * &d[j]);
            LaurentPoly::constant(BigRational::from_integer(s))
        })
        .collect()
}

/// Order of `R^k`'s module with `[α_k] = 1`: verifies that `[α_k]` and
/// `[β_k] = −k(1 − t)[α_k]` generate.
pub fn beta_relation_check(k: i64) -> bool {
    if k < 1 {
        return false;
    }
    let delta_k = LaurentPoly::from_ints(0, &[-(k + 1), k]);
    let m = match CyclicAlexModule::new(&delta_k, "alpha_k") {
        Ok(m) => m,
        Err(_) => return false,
    };
    let beta = LaurentPoly::from_ints(0, &[-k, k]);
    m.generated_by(&[LaurentPoly::one(), beta])
}

impl fmt::Display for CyclicAlexModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t,t^-1]/<{}> generated by {}", self.delta, self.generator_name)
    }
}
