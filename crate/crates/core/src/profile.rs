//! The Levine–Tristram signature as a step function on the circle.
//!
//! A profile stores the jumps on the open upper half-circle. Each jump point
//! `e^{iθ}` is held as the real algebraic number `x = 2cos θ` (a squarefree
//! integer polynomial with an isolating interval) together with a symbolic
//! angle `θ/π = a·φ + b`, where `φ = arccos(x₀/2)/π` for a base root `x₀`
//! coming straight from an Alexander polynomial. Cabling only rescales and
//! shifts angles, so integrals of cabled profiles stay exact.

use crate::interval::{arccos_over_pi, Interval};
use crate::intpoly::{count_roots_open, isolate_real_roots, IntPoly, IsolatedRoot};
use crate::laurent::LaurentPoly;
use crate::primality::irreducible_factors;
use crate::seifert::{CirclePoint, SeifertMatrix};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("cable parameter must be positive")]
    ZeroCable,
    #[error("signature undefined at Alexander root")]
    AtRoot,
    #[error("use smaller family")]
    TooManyValues,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A root `x₀ ∈ (−2, 2)` of an irreducible factor of the reduced Alexander
/// polynomial, identified by that factor and its index among the factor's
/// roots in `(−2, 2)` in increasing order.
#[derive(Clone, Debug)]
pub struct BaseRoot {
    minpoly: IntPoly,
    index: usize,
    iso: IsolatedRoot,
}

type BaseKey = (Vec<BigInt>, usize);

impl BaseRoot {
    fn key(&self) -> BaseKey {
        (self.minpoly.coeffs().to_vec(), self.index)
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    /// Enclosure of `arccos(x₀/2)/π`.
    pub fn phase(&self, bits: u32) -> Interval {
        let mut iso = self.iso.clone();
        let eps = BigRational::new(BigInt::one(), BigInt::one() << (bits as usize + 8));
        iso.refine_to(&self.minpoly, &eps);
        let two = q(2);
        arccos_over_pi(&(&iso.lo / &two), &(&iso.hi / &two), bits)
    }

    fn label(&self) -> String {
        if self.minpoly.deg() == 1 {
            let c = BigRational::new(-self.minpoly.coeff(0), BigInt::from(2) * self.minpoly.lc());
            format!("acos({})", crate::laurent::fmt_rational(&c))
        } else {
            format!("acos(r/2), r = root {} of {} in (-2, 2)", self.index + 1, self.minpoly)
        }
    }
}

/// `θ/π = coeff·φ + offset`.
#[derive(Clone, Debug)]
pub struct Angle {
    base: Arc<BaseRoot>,
    coeff: BigRational,
    offset: BigRational,
}

impl Angle {
    pub fn enclose(&self, bits: u32) -> Interval {
        let w = bits + 16;
        self.base
            .phase(w)
            .mul_rational(&self.coeff)
            .add(&Interval::from_rational(&self.offset, w))
            .with_bits(bits)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn offset(&self) -> &BigRational {
        &self.offset
    }
}

/// A point `x = 2cos θ` with `0 < θ < π`.
#[derive(Clone, Debug)]
pub struct CircleRoot {
    poly: IntPoly,
    iso: IsolatedRoot,
    angle: Angle,
}

impl CircleRoot {
    pub fn defining_poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn interval(&self) -> &IsolatedRoot {
        &self.iso
    }

    pub fn angle(&self) -> &Angle {
        &self.angle
    }

    fn refine(&mut self) {
        self.iso.bisect(&self.poly);
    }
}

#[derive(Clone, Debug)]
pub struct Jump {
    pub root: CircleRoot,
    pub jump: i64,
}

#[derive(Clone, Debug, Default)]
pub struct SignatureProfile {
    /// Sorted by increasing angle, nonzero jumps only.
    jumps: Vec<Jump>,
}

// ---------------------------------------------------------------------------
// Exact comparisons of algebraic points

fn disjoint(a: &IsolatedRoot, b: &IsolatedRoot) -> bool {
    if a.is_exact() && b.is_exact() {
        return a.lo != b.lo;
    }
    a.hi <= b.lo || b.hi <= a.lo
}

/// Whether two isolated points are the same real number.
fn coincide(a: &CircleRoot, b: &CircleRoot) -> bool {
    if disjoint(&a.iso, &b.iso) {
        return false;
    }
    let g = a.poly.gcd(&b.poly);
    if g.deg() == 0 {
        return false;
    }
    let inside = |iso: &IsolatedRoot, r: &BigRational| {
        if iso.is_exact() {
            &iso.lo == r
        } else {
            &iso.lo < r && r < &iso.hi
        }
    };
    if a.iso.is_exact() {
        return g.sign_at(&a.iso.lo) == Ordering::Equal && inside(&b.iso, &a.iso.lo);
    }
    if b.iso.is_exact() {
        return g.sign_at(&b.iso.lo) == Ordering::Equal && inside(&a.iso, &b.iso.lo);
    }
    let lo = (&a.iso.lo).max(&b.iso.lo).clone();
    let hi = (&a.iso.hi).min(&b.iso.hi).clone();
    lo < hi && count_roots_open(&g.sturm_sequence(), &lo, &hi) > 0
}

/// Sorts distinct points by decreasing `x` (increasing angle).
fn sort_descending(jumps: &mut [Jump]) {
    loop {
        jumps.sort_by(|a, b| b.root.iso.hi.cmp(&a.root.iso.hi));
        let mut clean = true;
        for i in 0..jumps.len().saturating_sub(1) {
            if !disjoint(&jumps[i].root.iso, &jumps[i + 1].root.iso) {
                clean = false;
                jumps[i].root.refine();
                jumps[i + 1].root.refine();
            }
        }
        if clean {
            return;
        }
    }
}

/// Compares a point with a rational: `Greater` when the point is larger.
fn cmp_point(r: &mut CircleRoot, x: &BigRational) -> Option<Ordering> {
    loop {
        if r.iso.is_exact() {
            return match r.iso.lo.cmp(x) {
                Ordering::Equal => None,
                o => Some(o),
            };
        }
        if &r.iso.hi <= x {
            return Some(Ordering::Less);
        }
        if &r.iso.lo >= x {
            return Some(Ordering::Greater);
        }
        if r.poly.sign_at(x) == Ordering::Equal {
            return None;
        }
        r.refine();
    }
}

// ---------------------------------------------------------------------------
// Symmetric reduction

/// `T_m` with `T_m(t + t⁻¹) = t^m + t⁻ᵐ` for `m ≥ 1`.
pub fn chebyshev_like(m: u32) -> IntPoly {
    let x = IntPoly::x();
    let mut prev = IntPoly::constant(BigInt::from(2));
    let mut cur = x.clone();
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// For a palindromic `Δ` of degree `2h`, the polynomial `D` with
/// `t⁻ʰΔ(t) = D(t + t⁻¹)`.
pub fn circle_polynomial(delta: &LaurentPoly) -> IntPoly {
    let (_, _, p) = delta.to_int_poly();
    let d = p.deg();
    assert!(d % 2 == 0, "Alexander polynomial of odd span");
    let h = d / 2;
    let mut acc = IntPoly::constant(p.coeff(h));
    for m in 1..=h {
        assert_eq!(p.coeff(h + m), p.coeff(h - m), "Alexander polynomial not symmetric");
        acc = acc.add(&chebyshev_like(m as u32).scale(&p.coeff(h + m)));
    }
    acc
}

/// A rational `s ≥ 0` with `a < s² < b`.
fn rational_sqrt_between(a: &BigRational, b: &BigRational) -> BigRational {
    let mut n = 0usize;
    loop {
        let scale = BigInt::one() << (2 * n);
        let fl = (a * BigRational::from_integer(scale)).floor().to_integer();
        let k = if fl.is_negative() { BigInt::zero() } else { fl.sqrt() + 1 };
        let s = BigRational::new(k, BigInt::one() << n);
        if &(&s * &s) < b && &(&s * &s) > a {
            return s;
        }
        n += 1;
    }
}

/// Circle parameter of a point with `x = 2cos θ` strictly between `lo` and
/// `hi` (both in `(−2, 2)`, `lo < hi`).
fn parameter_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = q(2);
    let f = |x: &BigRational| (&two - x) / (&two + x);
    rational_sqrt_between(&f(hi), &f(lo))
}

// ---------------------------------------------------------------------------

impl SignatureProfile {
    pub fn empty() -> Self {
        SignatureProfile { jumps: Vec::new() }
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    pub fn is_zero(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn value_at_minus_one(&self) -> i64 {
        self.jumps.iter().map(|j| j.jump).sum()
    }

    /// Merges coincident points, drops zero jumps and sorts.
    fn from_jumps(raw: Vec<Jump>) -> Self {
        let mut merged: Vec<Jump> = Vec::new();
        'outer: for j in raw {
            for m in merged.iter_mut() {
                if coincide(&m.root, &j.root) {
                    m.jump += j.jump;
                    continue 'outer;
                }
            }
            merged.push(j);
        }
        merged.retain(|j| j.jump != 0);
        sort_descending(&mut merged);
        SignatureProfile { jumps: merged }
    }

    /// Profile of `ω ↦ σ_ω(V)`.
    pub fn from_seifert(v: &SeifertMatrix) -> Self {
        let delta = v.alexander_polynomial();
        if delta.span() == 0 {
            return Self::empty();
        }
        let d = circle_polynomial(&delta).squarefree();
        let (lo, hi) = (q(-2), q(2));
        let mut pts: Vec<Jump> = Vec::new();
        for f in irreducible_factors(&d) {
            let f = Arc::new(f);
            for (index, iso) in isolate_real_roots(&f, &lo, &hi).into_iter().enumerate() {
                let base = Arc::new(BaseRoot { minpoly: (*f).clone(), index, iso: iso.clone() });
                let angle = Angle { base, coeff: BigRational::one(), offset: BigRational::zero() };
                pts.push(Jump { root: CircleRoot { poly: (*f).clone(), iso, angle }, jump: 0 });
            }
        }
        if pts.is_empty() {
            return Self::empty();
        }
        sort_descending(&mut pts);
        // Force strict gaps so that every arc has a rational sample point.
        loop {
            let mut ok = pts[0].root.iso.hi < hi;
            if !ok {
                pts[0].root.refine();
            }
            for i in 0..pts.len() - 1 {
                let (a, b) = (&pts[i].root.iso, &pts[i + 1].root.iso);
                if b.hi >= a.lo {
                    ok = false;
                    pts[i].root.refine();
                    pts[i + 1].root.refine();
                }
            }
            if ok {
                break;
            }
        }
        let sig = |s: BigRational| v.signature_at(&CirclePoint::Param(s)).expect("off the roots");
        let mut level = sig(parameter_between(&pts[0].root.iso.hi, &hi));
        for i in 0..pts.len() {
            let next = if i + 1 < pts.len() {
                sig(parameter_between(&pts[i + 1].root.iso.hi, &pts[i].root.iso.lo))
            } else {
                v.signature_at(&CirclePoint::MinusOne).expect("Δ(−1) ≠ 0")
            };
            pts[i].jump = next - level;
            level = next;
        }
        Self::from_jumps(pts)
    }

    /// Level at an exact circle point.
    pub fn level_at(&self, w: &CirclePoint) -> Result<i64, ProfileError> {
        let x = match w {
            CirclePoint::MinusOne => return Ok(self.value_at_minus_one()),
            CirclePoint::Param(s) if s.is_zero() => return Ok(0),
            _ => w.real_part() * q(2),
        };
        let mut total = 0;
        for j in &self.jumps {
            let mut r = j.root.clone();
            match cmp_point(&mut r, &x) {
                None => return Err(ProfileError::AtRoot),
                Some(Ordering::Greater) => total += j.jump,
                _ => {}
            }
        }
        Ok(total)
    }

    pub fn negate(&self) -> Self {
        SignatureProfile {
            jumps: self.jumps.iter().map(|j| Jump { root: j.root.clone(), jump: -j.jump }).collect(),
        }
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self) -> Self {
        Self::from_jumps(self.jumps.iter().chain(&other.jumps).cloned().collect())
    }

    /// Profile of `ω ↦ σ(ω^p)`.
    pub fn cable_pullback(&self, p: u32) -> Result<Self, ProfileError> {
        if p == 0 {
            return Err(ProfileError::ZeroCable);
        }
        if p == 1 {
            return Ok(self.clone());
        }
        let tp = chebyshev_like(p);
        let dtp = tp.derivative();
        let pr = q(p as i64);
        let mut raw = Vec::new();
        for j in &self.jumps {
            let r = &j.root;
            let dp = r.poly.compose(&tp).squarefree();
            // Exact test for a rational image point.
            let exact_image = if r.iso.is_exact() {
                let c = &r.iso.lo;
                let lin = IntPoly::new(vec![-c.numer().clone(), c.denom().clone()]);
                Some(dp.gcd(&lin.compose(&tp)))
            } else {
                None
            };
            let mut up: Vec<IsolatedRoot> = Vec::new();
            let mut down: Vec<IsolatedRoot> = Vec::new();
            for mut y in isolate_real_roots(&dp, &q(-2), &q(2)) {
                let maps_here = match &exact_image {
                    Some(g) => {
                        if y.is_exact() {
                            g.sign_at(&y.lo) == Ordering::Equal
                        } else {
                            g.deg() > 0 && count_roots_open(&g.sturm_sequence(), &y.lo, &y.hi) > 0
                        }
                    }
                    None => loop {
                        let (ilo, ihi) = eval_range(&tp, &y);
                        if ilo > r.iso.lo && ihi < r.iso.hi {
                            break true;
                        }
                        if ihi <= r.iso.lo || ilo >= r.iso.hi {
                            break false;
                        }
                        y.bisect(&dp);
                    },
                };
                if !maps_here {
                    continue;
                }
                let rising = loop {
                    let (dlo, dhi) = eval_range(&dtp, &y);
                    if dlo.is_positive() {
                        break true;
                    }
                    if dhi.is_negative() {
                        break false;
                    }
                    y.bisect(&dp);
                };
                if rising {
                    up.push(y);
                } else {
                    down.push(y);
                }
            }
            for (group, rising) in [(up, true), (down, false)] {
                let mut group = group;
                group.sort_by(|a, b| b.lo.cmp(&a.lo));
                for (m, y) in group.into_iter().enumerate() {
                    let a = &r.angle;
                    let two_m = q(2 * m as i64);
                    let angle = if rising {
                        Angle {
                            base: a.base.clone(),
                            coeff: &a.coeff / &pr,
                            offset: (&a.offset + &two_m) / &pr,
                        }
                    } else {
                        Angle {
                            base: a.base.clone(),
                            coeff: -&a.coeff / &pr,
                            offset: (q(2) - &a.offset + &two_m) / &pr,
                        }
                    };
                    let jump = if rising { j.jump } else { -j.jump };
                    raw.push(Jump { root: CircleRoot { poly: dp.clone(), iso: y, angle }, jump });
                }
            }
        }
        Ok(Self::from_jumps(raw))
    }

    /// `∫ σ` over the circle with total measure one.
    pub fn rho0(&self) -> Rho0 {
        let mut out = Rho0::zero();
        for j in &self.jumps {
            let a = &j.root.angle;
            let jj = q(j.jump);
            out.constant += &jj * (BigRational::one() - &a.offset);
            let key = a.base.key();
            out.bases.entry(key.clone()).or_insert_with(|| a.base.clone());
            *out.terms.entry(key).or_insert_with(BigRational::zero) -= &jj * &a.coeff;
        }
        out.clean();
        out
    }

    /// Arcs of the upper half-circle as `(start θ/π, end θ/π, level)`.
    pub fn arcs(&self, bits: u32) -> Vec<(Interval, Interval, i64)> {
        let mut out = Vec::new();
        let mut start = Interval::zero(bits);
        let mut level = 0;
        for j in &self.jumps {
            let end = j.root.angle.enclose(bits);
            out.push((start, end.clone(), level));
            start = end;
            level += j.jump;
        }
        out.push((start, Interval::from_int(1, bits), level));
        out
    }
}

/// Range of a polynomial over an isolating interval, by interval Horner.
fn eval_range(p: &IntPoly, y: &IsolatedRoot) -> (BigRational, BigRational) {
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    for c in p.coeffs().iter().rev() {
        let cands = [&lo * &y.lo, &lo * &y.hi, &hi * &y.lo, &hi * &y.hi];
        let c = BigRational::from_integer(c.clone());
        lo = cands.iter().min().unwrap() + &c;
        hi = cands.iter().max().unwrap() + &c;
    }
    (lo, hi)
}

/// An exact value `c + Σ aᵢ·arccos(xᵢ/2)/π`.
#[derive(Clone, Debug)]
pub struct Rho0 {
    constant: BigRational,
    terms: BTreeMap<BaseKey, BigRational>,
    bases: BTreeMap<BaseKey, Arc<BaseRoot>>,
}

impl PartialEq for Rho0 {
    fn eq(&self, other: &Self) -> bool {
        self.constant == other.constant && self.terms == other.terms
    }
}

impl Rho0 {
    pub fn zero() -> Self {
        Rho0 { constant: BigRational::zero(), terms: BTreeMap::new(), bases: BTreeMap::new() }
    }

    fn clean(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        let keys: Vec<BaseKey> = self.terms.keys().cloned().collect();
        self.bases.retain(|k, _| keys.contains(k));
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    pub fn constant(&self) -> &BigRational {
        &self.constant
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (k, c) in &other.terms {
            *out.terms.entry(k.clone()).or_insert_with(BigRational::zero) += c;
            out.bases.entry(k.clone()).or_insert_with(|| other.bases[k].clone());
        }
        out.clean();
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.constant *= q(k);
        for c in out.terms.values_mut() {
            *c *= q(k);
        }
        out.clean();
        out
    }

    /// Certified enclosure with absolute error below `2⁻ᵇⁱᵗˢ` (up to a few
    /// units of rounding).
    pub fn enclose(&self, bits: u32) -> Interval {
        let w = bits + 24;
        let mut acc = Interval::from_rational(&self.constant, w);
        for (k, c) in &self.terms {
            acc = acc.add(&self.bases[k].phase(w).mul_rational(c));
        }
        acc.with_bits(bits)
    }
}

impl fmt::Display for Rho0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.constant.is_zero() || self.terms.is_empty() {
            parts.push(crate::laurent::fmt_rational(&self.constant));
        }
        for (k, c) in &self.terms {
            let label = self.bases[k].label();
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            let coef = if mag.is_one() { String::new() } else { format!("{}*", crate::laurent::fmt_rational(&mag)) };
            if parts.is_empty() {
                parts.push(format!("{}{}{}/pi", if sign == "-" { "-" } else { "" }, coef, label));
            } else {
                parts.push(format!("{} {}{}/pi", sign, coef, label));
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Anything with certified enclosures at arbitrary precision.
pub trait Enclose {
    fn enclose(&self, bits: u32) -> Interval;
}

impl Enclose for Rho0 {
    fn enclose(&self, bits: u32) -> Interval {
        Rho0::enclose(self, bits)
    }
}

impl Enclose for Interval {
    fn enclose(&self, bits: u32) -> Interval {
        self.with_bits(bits)
    }
}

const MAX_RELATION_VALUES: usize = 6;

/// Exhaustive search for a nonzero integer vector `c`, `|cᵢ| ≤ bound`, with
/// `|Σ cᵢvᵢ| < precision` certified, and still certified below
/// `precision/4` at doubled working precision. Returns the relation with the
/// smallest `max |cᵢ|`, first nonzero entry positive.
pub fn small_relation_search(
    values: &[&dyn Enclose],
    bound: u32,
    precision: &BigRational,
) -> Result<Option<Vec<i64>>, ProfileError> {
    let n = values.len();
    if n > MAX_RELATION_VALUES {
        return Err(ProfileError::TooManyValues);
    }
    if n == 0 || bound == 0 {
        return Ok(None);
    }
    let need = (BigRational::one() / precision).to_integer().bits() as u32;
    let slack = ((bound as u64 * n as u64).max(2) as f64).log2().ceil() as u32;
    let bits = need + slack + 40;
    let encl: Vec<Interval> = values.iter().map(|v| v.enclose(bits)).collect();

    // Fixed-point prefilter at 2⁻⁶⁰ with rigorous rounding slack.
    const FB: u32 = 60;
    let approx: Vec<(i128, i128)> = encl
        .iter()
        .map(|iv| {
            let lo = (iv.lo() * BigRational::from_integer(BigInt::one() << FB as usize)).floor().to_integer();
            let hi = (iv.hi() * BigRational::from_integer(BigInt::one() << FB as usize)).ceil().to_integer();
            let l = lo.to_i128().expect("value too large");
            (l, hi.to_i128().expect("value too large") - l)
        })
        .collect();
    let eps_fixed = (precision * BigRational::from_integer(BigInt::one() << FB as usize))
        .ceil()
        .to_integer()
        .to_i128()
        .unwrap_or(i128::MAX / 4);

    let certify = |c: &[i64], bits: u32, vals: &[Interval], eps: &BigRational| {
        let mut s = Interval::zero(bits);
        for (ci, v) in c.iter().zip(vals) {
            s = s.add(&v.mul_int(&BigInt::from(*ci)));
        }
        &s.hi() < eps && s.lo() > -eps.clone()
    };

    let b = bound as i64;
    for r in 1..=b {
        let mut c = vec![-r; n];
        loop {
            let top = c.iter().map(|x| x.abs()).max().unwrap();
            let first = c.iter().find(|x| **x != 0).copied().unwrap_or(0);
            if top == r && first > 0 {
                let mut center: i128 = 0;
                let mut lo_slack: i128 = 0;
                let mut hi_slack: i128 = 0;
                for (ci, (a, w)) in c.iter().zip(&approx) {
                    let ci = *ci as i128;
                    center += ci * a;
                    if ci > 0 {
                        hi_slack += ci * w;
                    } else {
                        lo_slack += ci * w;
                    }
                }
                let (slo, shi) = (center + lo_slack, center + hi_slack);
                if slo < eps_fixed && shi > -eps_fixed && certify(&c, bits, &encl, precision) {
                    let fine_bits = 2 * bits;
                    let fine: Vec<Interval> = values.iter().map(|v| v.enclose(fine_bits)).collect();
                    if certify(&c, fine_bits, &fine, &(precision / q(4))) {
                        return Ok(Some(c));
                    }
                }
            }
            // odometer over [−r, r]^n
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if c[i] < r {
                    c[i] += 1;
                    for x in c.iter_mut().skip(i + 1) {
                        *x = -r;
                    }
                    break;
                }
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
    Ok(None)
}
