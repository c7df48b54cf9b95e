//! Laurent polynomials in one variable `t` with rational coefficients.
//!
//! Units of ℚ[t, t⁻¹] are the nonzero monomials, so every nonzero element has
//! a canonical associate (see [`LaurentPoly::normalize`]) and equality up to
//! units becomes plain equality of normalized forms.

use crate::intpoly::IntPoly;
use crate::linalg::{bareiss_det, ExactRing};
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("no canonical associate of zero")]
    ZeroAssociate,
    #[error("degenerate substitution")]
    DegenerateSubstitution,
    #[error("gcd of two zero polynomials")]
    GcdOfZeros,
    #[error("resultant with a zero polynomial")]
    ZeroResultant,
    #[error("evaluation of a negative power at zero")]
    PoleAtZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(BigRational::one(), 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        LaurentPoly::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    /// Integer coefficients in ascending order starting at exponent `low`.
    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        LaurentPoly::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (low + i as i64, rat(c))))
    }

    pub fn from_int_poly(p: &IntPoly, low: i64) -> Self {
        LaurentPoly::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (low + i as i64, BigRational::from_integer(c.clone()))),
        )
    }

    fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `maxexp − minexp`; zero for the zero polynomial.
    pub fn span(&self) -> u64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => (b - a) as u64,
            _ => 0,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Units of ℚ[t, t⁻¹] are exactly the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.is_monomial()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.terms.values().next_back().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn trailing_coeff(&self) -> BigRational {
        self.terms.values().next().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, a)| (e + k, a.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `f(t) ↦ f(t^k)`.
    pub fn substitute_power(&self, k: i64) -> Result<Self, LaurentError> {
        if k == 0 {
            return Err(LaurentError::DegenerateSubstitution);
        }
        Ok(LaurentPoly { terms: self.terms.iter().map(|(e, a)| (e * k, a.clone())).collect() })
    }

    /// `f(t⁻¹)`, the involution of the group ring.
    pub fn reciprocal(&self) -> Self {
        self.substitute_power(-1).expect("nonzero exponent")
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational, LaurentError> {
        if x.is_zero() && self.min_exp().map_or(false, |e| e < 0) {
            return Err(LaurentError::PoleAtZero);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rat(x, *e);
        }
        Ok(acc)
    }

    /// Least common denominator of the coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Writes `self = t^low · (1/den) · p(t)` with `p ∈ ℤ[t]`, `p(0) ≠ 0`.
    /// Returns `(low, den, p)`; the zero polynomial gives `(0, 1, 0)`.
    pub fn to_int_poly(&self) -> (i64, BigInt, IntPoly) {
        let low = match self.min_exp() {
            Some(e) => e,
            None => return (0, BigInt::one(), IntPoly::zero()),
        };
        let den = self.denominator_lcm();
        let span = self.span() as usize;
        let mut coeffs = vec![BigInt::zero(); span + 1];
        for (e, c) in &self.terms {
            let scaled = c * BigRational::from_integer(den.clone());
            coeffs[(e - low) as usize] = scaled.to_integer();
        }
        (low, den, IntPoly::new(coeffs))
    }

    /// Primitive integer polynomial associated to `self` (content 1, positive
    /// leading coefficient, nonzero constant term).
    pub fn primitive_int_poly(&self) -> IntPoly {
        self.to_int_poly().2.primitive()
    }

    /// Canonical associate: minimum exponent 0, integer coefficients with
    /// content 1, positive leading coefficient.
    pub fn normalize(&self) -> Result<Self, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroAssociate);
        }
        Ok(LaurentPoly::from_int_poly(&self.primitive_int_poly(), 0))
    }

    /// Equality up to multiplication by a unit.
    pub fn associate(&self, other: &Self) -> bool {
        match (self.normalize(), other.normalize()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// Division with remainder after shifting both inputs to minimum exponent 0.
    /// Returns `(q, r)` with `self = q·g + r` and `span(r) < span(g)` or `r = 0`.
    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self), LaurentError> {
        let (gl, gmax) = match (g.min_exp(), g.max_exp()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(LaurentError::ZeroDivisor),
        };
        let fl = match self.min_exp() {
            Some(e) => e,
            None => return Ok((LaurentPoly::zero(), LaurentPoly::zero())),
        };
        // ordinary polynomials F = t^-fl f, G = t^-gl g
        let dg = (gmax - gl) as i64;
        let lcg = g.leading_coeff();
        let mut rem: BTreeMap<i64, BigRational> =
            self.terms.iter().map(|(e, c)| (e - fl, c.clone())).collect();
        let mut quo = LaurentPoly::zero();
        loop {
            let top = match rem.keys().next_back() {
                Some(&e) if e >= dg => e,
                _ => break,
            };
            let c = &rem[&top] / &lcg;
            let s = top - dg;
            for (e, b) in &g.terms {
                let k = e - gl + s;
                let v = rem.entry(k).or_insert_with(BigRational::zero);
                *v -= &c * b;
                if v.is_zero() {
                    rem.remove(&k);
                }
            }
            quo.add_term(s, c);
        }
        let q = quo.shift(fl - gl);
        let r = LaurentPoly { terms: rem.into_iter().map(|(e, c)| (e + fl, c)).collect() };
        Ok((q, r))
    }

    /// Exact quotient in ℚ[t, t⁻¹], if `g` divides `self`.
    pub fn checked_div(&self, g: &Self) -> Result<Option<Self>, LaurentError> {
        let (q, r) = self.div_rem(g)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    pub fn divides(&self, f: &Self) -> bool {
        matches!(f.checked_div(self), Ok(Some(_)))
    }

    /// Formal derivative with respect to `t`.
    pub fn derivative(&self) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (e - 1, c * rat(*e))))
    }
}

fn pow_rat(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num::pow(x.clone(), e as usize)
    } else {
        num::pow(x.recip(), (-e) as usize)
    }
}

/// Normalized greatest common divisor; `gcd(f, 0) = normalize(f)`.
pub fn gcd(f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => Err(LaurentError::GcdOfZeros),
        (false, true) => f.normalize(),
        (true, false) => g.normalize(),
        _ => {
            let a = f.primitive_int_poly();
            let b = g.primitive_int_poly();
            Ok(LaurentPoly::from_int_poly(&a.gcd(&b).primitive(), 0))
        }
    }
}

/// Normalized least common multiple of two nonzero polynomials.
pub fn lcm(f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
    let d = gcd(f, g)?;
    let prod = f * g;
    let q = prod.checked_div(&d)?.expect("gcd divides the product");
    q.normalize()
}

/// Resultant of the ordinary polynomials obtained by shifting each input to
/// minimum exponent 0. Computed as a fraction-free Sylvester determinant.
pub fn resultant(f: &LaurentPoly, g: &LaurentPoly) -> Result<BigRational, LaurentError> {
    if f.is_zero() || g.is_zero() {
        return Err(LaurentError::ZeroResultant);
    }
    let (_, df, pf) = f.to_int_poly();
    let (_, dg, pg) = g.to_int_poly();
    let m = pf.deg();
    let n = pg.deg();
    let r = int_resultant(&pf, &pg);
    // Res(F/a, G/b) = a^-n b^-m Res(F, G)
    let denom = num::pow(df, n) * num::pow(dg, m);
    Ok(BigRational::new(r, denom))
}

/// Resultant of two integer polynomials via the Sylvester matrix.
pub fn int_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let m = f.deg();
    let n = g.deg();
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    if m == 0 {
        return num::pow(f.lc(), n);
    }
    if n == 0 {
        return num::pow(g.lc(), m);
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // rows: n shifted copies of f, m shifted copies of g; descending powers
    for i in 0..n {
        for (j, c) in f.coeffs().iter().enumerate() {
            mat[i][i + m - j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.coeffs().iter().enumerate() {
            mat[n + i][i + n - j] = c.clone();
        }
    }
    bareiss_det(mat)
}

impl ExactRing for LaurentPoly {
    fn r_zero() -> Self {
        LaurentPoly::zero()
    }
    fn r_one() -> Self {
        LaurentPoly::one()
    }
    fn r_is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn r_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn r_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn r_div(&self, other: &Self) -> Self {
        self.checked_div(other)
            .expect("nonzero divisor")
            .expect("Bareiss divisions are exact")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                $tr::$m(&self, &rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                $tr::$m(&self, rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -(&self)
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents, e.g. `2*t^2 - 5*t + 2` or `-9 + 8*t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show = *e == 0 || !a.is_one();
            if show {
                write!(f, "{}", fmt_rational(&a))?;
            }
            if *e != 0 {
                if show {
                    write!(f, "*")?;
                }
                write!(f, "t")?;
                if *e != 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}
