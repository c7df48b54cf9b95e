//! Irreducibility, strong primality and strong coprimality of Laurent
//! polynomials.
//!
//! Every negative verdict carries a witness that can be re-checked with plain
//! polynomial arithmetic; positive verdicts come from a named criterion or
//! from an exhaustive bounded factor search.

use crate::arith;
use crate::intpoly::IntPoly;
use crate::laurent::{self, LaurentPoly};
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrimalityError {
    #[error("zero polynomial")]
    ZeroInput,
    #[error("invalid prime pair")]
    InvalidPrimePair,
    #[error("monomial input")]
    MonomialInput,
    #[error("sequences must be nonempty and of equal length")]
    LengthMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityStatus {
    Irreducible,
    Reducible(LaurentPoly),
    Unit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrreducibilityMethod {
    Monomial,
    DegreeOne,
    RationalRoot,
    BonciocatCriterion,
    ExhaustiveFactorSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityVerdict {
    pub status: IrreducibilityStatus,
    pub method: IrreducibilityMethod,
}

impl IrreducibilityVerdict {
    pub fn is_irreducible(&self) -> bool {
        self.status == IrreducibilityStatus::Irreducible
    }
}

impl fmt::Display for IrreducibilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            IrreducibilityStatus::Irreducible => write!(f, "irreducible ({:?})", self.method),
            IrreducibilityStatus::Reducible(w) => {
                write!(f, "reducible, factor {} ({:?})", w, self.method)
            }
            IrreducibilityStatus::Unit => write!(f, "unit"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriterionOutcome {
    Irreducible,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongPrimalityStatus {
    StronglyPrime,
    NotStronglyPrime(i64),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongPrimalityVerdict {
    pub status: StrongPrimalityStatus,
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoprimalityStatus {
    StronglyCoprime,
    NotStronglyCoprime(i64, i64),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoprimalityVerdict {
    pub status: CoprimalityStatus,
    pub trace: Vec<String>,
}

// ---------------------------------------------------------------------------
// Irreducibility

/// Decides irreducibility in ℚ[t, t⁻¹] of a nonzero Laurent polynomial.
pub fn is_irreducible(f: &LaurentPoly) -> Result<IrreducibilityVerdict, PrimalityError> {
    if f.is_zero() {
        return Err(PrimalityError::ZeroInput);
    }
    let p = f.primitive_int_poly();
    Ok(irreducible_int(&p))
}

fn verdict(status: IrreducibilityStatus, method: IrreducibilityMethod) -> IrreducibilityVerdict {
    IrreducibilityVerdict { status, method }
}

fn reducible(w: &IntPoly, method: IrreducibilityMethod) -> IrreducibilityVerdict {
    verdict(
        IrreducibilityStatus::Reducible(LaurentPoly::from_int_poly(&w.primitive(), 0)),
        method,
    )
}

/// Irreducibility of a primitive polynomial with nonzero constant term.
fn irreducible_int(p: &IntPoly) -> IrreducibilityVerdict {
    use IrreducibilityMethod::*;
    let d = p.deg();
    match d {
        0 => verdict(IrreducibilityStatus::Unit, Monomial),
        1 => verdict(IrreducibilityStatus::Irreducible, DegreeOne),
        2 | 3 => match rational_root(p) {
            Some(lin) => reducible(&lin, RationalRoot),
            None => verdict(IrreducibilityStatus::Irreducible, RationalRoot),
        },
        _ => {
            let primes = arith::prime_divisors(&(p.coeff(0) * p.lc()));
            for (i, q1) in primes.iter().enumerate() {
                for q2 in &primes[i + 1..] {
                    if bonciocat_int(p, q1, q2) == CriterionOutcome::Irreducible {
                        return verdict(IrreducibilityStatus::Irreducible, BonciocatCriterion);
                    }
                }
            }
            match find_factor(p) {
                Some(g) => reducible(&g, ExhaustiveFactorSearch),
                None => verdict(IrreducibilityStatus::Irreducible, ExhaustiveFactorSearch),
            }
        }
    }
}

/// A linear factor `b·t − a` for a rational root `a/b`, if one exists.
fn rational_root(p: &IntPoly) -> Option<IntPoly> {
    let a0 = p.coeff(0);
    let ad = p.lc();
    if a0.is_zero() {
        return Some(IntPoly::x());
    }
    for b in arith::divisors(&ad) {
        for a in arith::divisors(&a0) {
            if !a.gcd(&b).is_one() {
                continue;
            }
            for a in [a.clone(), -a.clone()] {
                let r = BigRational::new(a.clone(), b.clone());
                if p.eval(&r).is_zero() {
                    return Some(IntPoly::new(vec![-a, b.clone()]));
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Two-prime Newton polygon criterion

/// Two-prime valuation criterion. The input is shifted to ℤ[t] and made
/// primitive first; monomials and constants are always inconclusive.
pub fn bonciocat_criterion(
    f: &LaurentPoly,
    q1: &BigInt,
    q2: &BigInt,
) -> Result<CriterionOutcome, PrimalityError> {
    if q1 == q2 || !arith::is_prime(q1) || !arith::is_prime(q2) {
        return Err(PrimalityError::InvalidPrimePair);
    }
    if f.is_zero() {
        return Err(PrimalityError::ZeroInput);
    }
    Ok(bonciocat_int(&f.primitive_int_poly(), q1, q2))
}

/// The nonzero end valuation when the valuation profile for `q` lies on or
/// above the chord joining its endpoints and exactly one endpoint is nonzero.
fn end_valuation(p: &IntPoly, q: &BigInt) -> Option<u32> {
    let d = p.deg() as i64;
    let r0 = arith::valuation(&p.coeff(0), q) as i64;
    let rd = arith::valuation(&p.lc(), q) as i64;
    if (r0 == 0) == (rd == 0) {
        return None;
    }
    for j in 1..d {
        let a = p.coeff(j as usize);
        if a.is_zero() {
            continue;
        }
        let rj = arith::valuation(&a, q) as i64;
        if d * rj < (d - j) * r0 + j * rd {
            return None;
        }
    }
    Some(r0.max(rd) as u32)
}

fn bonciocat_int(p: &IntPoly, q1: &BigInt, q2: &BigInt) -> CriterionOutcome {
    let d = p.deg() as u32;
    if d == 0 || p.coeff(0).is_zero() {
        return CriterionOutcome::Inconclusive;
    }
    match (end_valuation(p, q1), end_valuation(p, q2)) {
        (Some(a1), Some(a2)) if a1.gcd(&d).gcd(&a2.gcd(&d)) == 1 => CriterionOutcome::Irreducible,
        _ => CriterionOutcome::Inconclusive,
    }
}

// ---------------------------------------------------------------------------
// Exhaustive factor search

/// Finds a proper factor of a primitive polynomial with nonzero constant
/// term, or proves there is none.
pub(crate) fn find_factor(p: &IntPoly) -> Option<IntPoly> {
    let d = p.deg();
    if d <= 1 {
        return None;
    }
    let g = p.gcd(&p.derivative());
    if g.deg() > 0 {
        return Some(g.primitive());
    }
    let pattern = modular_pattern(p);
    if !pattern.allowed[1..=d / 2].iter().any(|&a| a) {
        return None;
    }
    zassenhaus(p, &pattern)
}

/// Irreducible factors of a squarefree polynomial, each primitive with
/// positive leading coefficient, sorted by degree then coefficients.
pub fn irreducible_factors(p: &IntPoly) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut p = p.primitive();
    if p.deg() > 0 && p.coeff(0).is_zero() {
        out.push(IntPoly::x());
        p = p.strip_x().primitive();
    }
    let mut stack = vec![p];
    while let Some(q) = stack.pop() {
        if q.deg() == 0 {
            continue;
        }
        match find_factor(&q) {
            Some(g) => {
                let h = q.div_exact(&g).expect("factor divides").primitive();
                stack.push(g);
                stack.push(h);
            }
            None => out.push(q),
        }
    }
    out.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
    out
}

mod modp {
    //! Dense polynomials over 𝔽_p, `p < 2³¹`, coefficients ascending.

    pub type Poly = Vec<u64>;

    fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    pub fn deg(a: &Poly) -> usize {
        a.len().saturating_sub(1)
    }

    pub fn rem(a: &Poly, b: &Poly, p: u64) -> Poly {
        let mut r = a.clone();
        let db = deg(b);
        let il = inv(*b.last().unwrap(), p);
        while r.len() > db && !r.is_empty() {
            let c = r.last().unwrap() * il % p;
            let shift = r.len() - 1 - db;
            for (i, bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn quo(a: &Poly, b: &Poly, p: u64) -> Poly {
        let mut r = a.clone();
        let db = deg(b);
        let il = inv(*b.last().unwrap(), p);
        let mut q = vec![0; a.len().saturating_sub(db)];
        while r.len() > db && !r.is_empty() {
            let c = r.last().unwrap() * il % p;
            let shift = r.len() - 1 - db;
            q[shift] = c;
            for (i, bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
            }
            r = trim(r);
        }
        trim(q)
    }

    pub fn mul(a: &Poly, b: &Poly, p: u64) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn derivative(a: &Poly, p: u64) -> Poly {
        trim(a.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % p) * c % p).collect())
    }

    fn powmod(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
        let mut acc: Poly = vec![1];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    pub fn from_ints(c: &[num::BigInt], p: u64) -> Poly {
        use num::ToPrimitive;
        let bp = num::BigInt::from(p);
        trim(
            c.iter()
                .map(|x| {
                    let r = ((x % &bp) + &bp) % &bp;
                    r.to_u64().unwrap()
                })
                .collect(),
        )
    }

    /// Degrees of the irreducible factors of a squarefree polynomial.
    pub fn factor_degrees(f: &Poly, p: u64) -> Vec<usize> {
        let mut degs = Vec::new();
        let mut rest = f.clone();
        let x: Poly = vec![0, 1];
        let mut h = rem(&x, &rest, p);
        let mut i = 1;
        while deg(&rest) >= 2 * i {
            h = powmod(&h, p, &rest, p);
            let mut hx = h.clone();
            hx.resize(hx.len().max(2), 0);
            hx[1] = (hx[1] + p - 1) % p;
            let hx = trim(hx);
            let g = gcd(&hx, &rest, p);
            if deg(&g) > 0 {
                for _ in 0..deg(&g) / i {
                    degs.push(i);
                }
                rest = quo(&rest, &g, p);
                h = rem(&h, &rest, p);
            }
            i += 1;
        }
        if deg(&rest) > 0 {
            degs.push(deg(&rest));
        }
        degs
    }

    pub fn monic(a: &Poly, p: u64) -> Poly {
        let il = inv(*a.last().unwrap(), p);
        a.iter().map(|c| c * il % p).collect()
    }

    pub fn add(a: &Poly, b: &Poly, p: u64) -> Poly {
        let n = a.len().max(b.len());
        let at = |v: &Poly, i: usize| v.get(i).copied().unwrap_or(0);
        trim((0..n).map(|i| (at(a, i) + at(b, i)) % p).collect())
    }

    pub fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
        let n = a.len().max(b.len());
        let at = |v: &Poly, i: usize| v.get(i).copied().unwrap_or(0);
        trim((0..n).map(|i| (at(a, i) + p - at(b, i)) % p).collect())
    }

    /// `(s, t)` with `s·a + t·b = 1`, for coprime `a` and `b`.
    pub fn bezout(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let q = quo(&r0, &r1, p);
            let r2 = sub(&r0, &mul(&q, &r1, p), p);
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            let t2 = sub(&t0, &mul(&q, &t1, p), p);
            (r0, r1, s0, s1, t0, t1) = (r1, r2, s1, s2, t1, t2);
        }
        let c = inv(r0[0], p);
        let scale = |v: Poly| trim(v.into_iter().map(|x| x * c % p).collect());
        (scale(s0), scale(t0))
    }

    fn nullspace(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Poly> {
        let n = m.len();
        let mut pivots = Vec::new();
        for c in 0..n {
            let r = pivots.len();
            let Some(k) = (r..n).find(|&k| m[k][c] != 0) else { continue };
            m.swap(r, k);
            let il = inv(m[r][c], p);
            for x in m[r].iter_mut() {
                *x = *x * il % p;
            }
            for k in 0..n {
                if k != r && m[k][c] != 0 {
                    let f = m[k][c];
                    for j in 0..n {
                        m[k][j] = (m[k][j] + p - f * m[r][j] % p) % p;
                    }
                }
            }
            pivots.push(c);
        }
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0; n];
                v[free] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m[row][free]) % p;
                }
                trim(v)
            })
            .collect()
    }

    /// Monic irreducible factors of a monic squarefree polynomial
    /// (Berlekamp).
    pub fn berlekamp(f: &Poly, p: u64) -> Vec<Poly> {
        let n = deg(f);
        if n <= 1 {
            return vec![f.clone()];
        }
        let xp = powmod(&vec![0, 1], p, f, p);
        let mut rows: Vec<Poly> = vec![vec![1]];
        for i in 1..n {
            rows.push(rem(&mul(&rows[i - 1], &xp, p), f, p));
        }
        // Matrix of v ↦ v^p − v on coefficient vectors.
        let mut m = vec![vec![0u64; n]; n];
        for (i, row) in rows.iter().enumerate() {
            for j in 0..n {
                m[j][i] = row.get(j).copied().unwrap_or(0);
            }
            m[i][i] = (m[i][i] + p - 1) % p;
        }
        let basis = nullspace(m, p);
        let r = basis.len();
        let mut factors = vec![f.clone()];
        for v in basis.iter().filter(|v| deg(v) > 0) {
            if factors.len() == r {
                break;
            }
            let mut next = Vec::new();
            for mut u in factors {
                for s in 0..p {
                    if deg(&u) <= 1 {
                        break;
                    }
                    let g = gcd(&sub(v, &vec![s], p), &u, p);
                    if deg(&g) > 0 && deg(&g) < deg(&u) {
                        u = quo(&u, &g, p);
                        next.push(monic(&g, p));
                    }
                }
                next.push(monic(&u, p));
            }
            factors = next;
        }
        factors
    }

}

/// Factor-degree constraints from several primes of good reduction, plus
/// the prime with the fewest modular factors.
struct ModularPattern {
    /// `allowed[m]`: a factor of degree `m` is compatible with every prime.
    allowed: Vec<bool>,
    best: Option<(u64, usize)>,
}

fn modular_pattern(p: &IntPoly) -> ModularPattern {
    let d = p.deg();
    let mut allowed = vec![true; d + 1];
    let mut best: Option<(u64, usize)> = None;
    let mut good = 0;
    let mut q = 3u64;
    while good < 6 && q < 2000 {
        if arith::is_prime_u64(q) {
            let lc_mod = (p.lc() % BigInt::from(q)).to_i64().unwrap();
            let fp = modp::from_ints(p.coeffs(), q);
            if lc_mod != 0 && modp::deg(&modp::gcd(&fp, &modp::derivative(&fp, q), q)) == 0 {
                good += 1;
                let degs = modp::factor_degrees(&fp, q);
                let mut reach = vec![false; d + 1];
                reach[0] = true;
                for &k in &degs {
                    for s in (k..=d).rev() {
                        if reach[s - k] {
                            reach[s] = true;
                        }
                    }
                }
                for s in 0..=d {
                    allowed[s] &= reach[s];
                }
                if best.map_or(true, |(_, n)| degs.len() < n) {
                    best = Some((q, degs.len()));
                }
            }
        }
        q += 2;
    }
    ModularPattern { allowed, best }
}

fn zpoly_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

fn zpoly_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zpoly_mod(&out, m)
}

fn to_zpoly(a: &modp::Poly) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f ≡ g·h (mod q)`, `g` monic and coprime to `h`, to a monic
/// `g` with `f ≡ g·h' (mod q^steps)`.
fn hensel_lift(f: &IntPoly, g: &modp::Poly, h: &modp::Poly, q: u64, steps: u32) -> Vec<BigInt> {
    let (s, t) = modp::bezout(g, h, q);
    let (mut gz, mut hz) = (to_zpoly(g), to_zpoly(h));
    let bq = BigInt::from(q);
    let mut m = bq.clone();
    for _ in 1..steps {
        let prod = IntPoly::new(gz.clone()).mul(&IntPoly::new(hz.clone()));
        let err: Vec<BigInt> = f.sub(&prod).coeffs().iter().map(|c| c / &m).collect();
        let e = modp::from_ints(&err, q);
        let te = modp::mul(&t, &e, q);
        let dg = modp::rem(&te, g, q);
        let quot = modp::quo(&te, g, q);
        let dh = modp::add(&modp::mul(&s, &e, q), &modp::mul(&quot, h, q), q);
        let next = &m * &bq;
        let bump = |z: &mut Vec<BigInt>, d: &modp::Poly| {
            if z.len() < d.len() {
                z.resize(d.len(), BigInt::zero());
            }
            for (i, &c) in d.iter().enumerate() {
                z[i] += &m * BigInt::from(c);
            }
            *z = zpoly_mod(z, &next);
        };
        bump(&mut gz, &dg);
        bump(&mut hz, &dh);
        m = next;
    }
    gz
}

/// A nontrivial factor of a primitive squarefree polynomial of degree ≥ 2,
/// found by factoring modulo a prime, Hensel lifting past a coefficient
/// bound for factors, and recombining subsets of the lifted factors.
fn zassenhaus(p: &IntPoly, pattern: &ModularPattern) -> Option<IntPoly> {
    let d = p.deg();
    let (q, _) = pattern.best?;
    let fp = modp::from_ints(p.coeffs(), q);
    let lc_inv = modp::inv(*fp.last().unwrap(), q);
    let monic: modp::Poly = fp.iter().map(|c| c * lc_inv % q).collect();
    let factors = modp::berlekamp(&monic, q);
    let r = factors.len();
    if r <= 1 {
        return None;
    }

    // Any factor of p, scaled to leading coefficient lc(p), has coefficients
    // below |lc|·2^d·‖p‖₂.
    let norm2: BigInt = p.coeffs().iter().map(|c| c * c).sum();
    let bound = p.lc().abs() * (BigInt::one() << d) * (arith::isqrt(&norm2) + 1);
    let bq = BigInt::from(q);
    let (mut steps, mut modulus) = (1u32, bq.clone());
    while modulus <= &bound * 2 {
        modulus *= &bq;
        steps += 1;
    }

    let lifted: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            let mut cofactor: modp::Poly = vec![*fp.last().unwrap()];
            for (j, f) in factors.iter().enumerate() {
                if j != i {
                    cofactor = modp::mul(&cofactor, f, q);
                }
            }
            hensel_lift(p, &factors[i], &cofactor, q, steps)
        })
        .collect();
    let fdeg: Vec<usize> = factors.iter().map(modp::deg).collect();
    let half = &modulus / 2;
    let lc = zpoly_mod(&[p.lc()], &modulus);
    let fits = |m: usize| m > 0 && m < d && (pattern.allowed[m.min(d - m)]);

    let mut subset: Vec<usize> = Vec::new();
    for size in 1..=r / 2 {
        subset.clear();
        subset.extend(0..size);
        loop {
            let m: usize = subset.iter().map(|&i| fdeg[i]).sum();
            if fits(m) {
                let mut g = lc.clone();
                for &i in &subset {
                    g = zpoly_mul(&g, &lifted[i], &modulus);
                }
                let sym: Vec<BigInt> = g.into_iter().map(|c| if c > half { c - &modulus } else { c }).collect();
                let cand = IntPoly::new(sym).primitive();
                if cand.deg() > 0 && cand.deg() < d && p.div_exact(&cand).is_some() {
                    return Some(cand);
                }
            }
            // Next subset of the same size in lexicographic order.
            let Some(k) = (0..size).rev().find(|&k| subset[k] < r - size + k) else { break };
            subset[k] += 1;
            for j in k + 1..size {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Strong primality

/// Whether `f(t^k)` is irreducible for every nonzero integer `k`.
pub fn strongly_prime(
    f: &LaurentPoly,
    search_bound: u32,
) -> Result<StrongPrimalityVerdict, PrimalityError> {
    if f.is_zero() {
        return Err(PrimalityError::ZeroInput);
    }
    if f.is_monomial() {
        return Err(PrimalityError::MonomialInput);
    }
    let p = f.primitive_int_poly();
    let mut trace = Vec::new();
    let done = |status, trace| Ok(StrongPrimalityVerdict { status, trace });

    let irr = irreducible_int(&p);
    trace.push(format!("f = {}: {}", p, irr));
    if !irr.is_irreducible() {
        return done(StrongPrimalityStatus::NotStronglyPrime(1), trace);
    }

    for (label, q) in [("f(t)", p.clone()), ("f(1/t)", p.reverse().primitive())] {
        match low_terms_test(&q) {
            Ok(()) => {
                trace.push(format!("low-coefficient criterion applies to {}", label));
                return done(StrongPrimalityStatus::StronglyPrime, trace);
            }
            Err(why) => trace.push(format!("low-coefficient criterion fails on {}: {}", label, why)),
        }
    }

    if let Some((q1, q2, a1, a2)) = binomial_prime_pair(&p) {
        trace.push(format!(
            "binomial with primes ({}, {}): end valuations ({}, {}) coprime, so the two-prime criterion holds for every substitution degree",
            q1, q2, a1, a2
        ));
        return done(StrongPrimalityStatus::StronglyPrime, trace);
    }
    trace.push("no symbolic two-prime certificate".to_string());

    for k in 2..=search_bound as i64 {
        let fk = f.substitute_power(k).expect("k is nonzero");
        let v = irreducible_int(&fk.primitive_int_poly());
        if let IrreducibilityStatus::Reducible(w) = &v.status {
            trace.push(format!("f(t^{}) has factor {}", k, w));
            return done(StrongPrimalityStatus::NotStronglyPrime(k), trace);
        }
    }
    trace.push(format!("f(t^k) irreducible for 2 ≤ k ≤ {}", search_bound));
    done(StrongPrimalityStatus::Unknown, trace)
}

/// Hypotheses of the low-coefficient criterion for an irreducible primitive
/// polynomial: a₀, a₁ coprime and nonzero, a₀ not ± a perfect power.
fn low_terms_test(p: &IntPoly) -> Result<(), String> {
    let a0 = p.coeff(0);
    let a1 = p.coeff(1);
    if a0.is_zero() || a1.is_zero() {
        return Err("a0 or a1 vanishes".into());
    }
    if !a0.gcd(&a1).is_one() {
        return Err(format!("gcd({}, {}) ≠ 1", a0, a1));
    }
    if arith::is_perfect_power(&a0) {
        return Err(format!("a0 = {} is ± a perfect power", a0));
    }
    Ok(())
}

/// For `a·t^d + b`, a pair of primes whose end valuations are coprime. Then
/// `a·t^(dp) + b` satisfies the two-prime criterion for every `p ≥ 1`.
fn binomial_prime_pair(p: &IntPoly) -> Option<(BigInt, BigInt, u32, u32)> {
    let d = p.deg();
    if (1..d).any(|j| !p.coeff(j).is_zero()) {
        return None;
    }
    let primes = arith::prime_divisors(&(p.coeff(0) * p.lc()));
    let ends: Vec<(BigInt, u32)> = primes
        .into_iter()
        .filter_map(|q| end_valuation(p, &q).map(|a| (q, a)))
        .collect();
    for (i, (q1, a1)) in ends.iter().enumerate() {
        for (q2, a2) in &ends[i + 1..] {
            if a1.gcd(a2) == 1 {
                return Some((q1.clone(), q2.clone(), *a1, *a2));
            }
        }
    }
    None
}

/// All `x^a − y^b = 1` with `2 ≤ x ≤ x_max`, `2 ≤ y ≤ y_max`, `2 ≤ a ≤ a_max`,
/// `2 ≤ b ≤ b_max`, as `(x, a, y, b)` in lexicographic order.
pub fn catalan_solutions(x_max: u64, y_max: u64, a_max: u32, b_max: u32) -> Vec<(u64, u32, u64, u32)> {
    let mut powers: HashMap<BigInt, Vec<(u64, u32)>> = HashMap::new();
    for y in 2..=y_max {
        let by = BigInt::from(y);
        let mut v = &by * &by;
        for b in 2..=b_max {
            powers.entry(v.clone()).or_default().push((y, b));
            v *= &by;
        }
    }
    let mut out = Vec::new();
    for x in 2..=x_max {
        let bx = BigInt::from(x);
        let mut v = &bx * &bx;
        for a in 2..=a_max {
            if let Some(hits) = powers.get(&(&v - 1)) {
                out.extend(hits.iter().map(|&(y, b)| (x, a, y, b)));
            }
            v *= &bx;
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Strong coprimality

/// `c·t^m − d` with `c > 0`, `gcd(c, d) = 1`; its roots are the `m`-th roots
/// of `d/c`.
#[derive(Clone, Debug)]
struct Binomial {
    m: u64,
    /// Prime exponents of `|d/c|`.
    exps: BTreeMap<BigInt, i64>,
    negative: bool,
}

fn binomial_poly(c: &BigInt, m: usize, d: &BigInt) -> IntPoly {
    let mut coeffs = vec![BigInt::zero(); m + 1];
    coeffs[0] = -d.clone();
    coeffs[m] = c.clone();
    IntPoly::new(coeffs)
}

fn binomial_of(c: &BigInt, m: usize, d: &BigInt) -> Binomial {
    let mut exps = BTreeMap::new();
    for (q, e) in arith::factorize(d) {
        *exps.entry(q).or_insert(0) += e as i64;
    }
    for (q, e) in arith::factorize(c) {
        *exps.entry(q).or_insert(0) -= e as i64;
    }
    exps.retain(|_, e| *e != 0);
    Binomial { m: m as u64, exps, negative: d.is_negative() }
}

/// Writes a primitive polynomial as a product of binomials, if possible.
fn binomial_decomposition(p: &IntPoly) -> Option<Vec<Binomial>> {
    let mut out = Vec::new();
    if decompose_rec(p, (1, 0), &mut out) {
        Some(out)
    } else {
        None
    }
}

fn decompose_rec(p: &IntPoly, start: (usize, usize), out: &mut Vec<Binomial>) -> bool {
    let d = p.deg();
    if d == 0 {
        return true;
    }
    let lc = p.lc();
    let a0 = p.coeff(0);
    for m in start.0..=d {
        let mut idx = 0;
        for c in arith::divisors(&lc) {
            for dd in arith::divisors(&a0) {
                if !c.gcd(&dd).is_one() {
                    continue;
                }
                for dv in [dd.clone(), -dd.clone()] {
                    idx += 1;
                    if m == start.0 && idx <= start.1 {
                        continue;
                    }
                    let b = binomial_poly(&c, m, &dv);
                    if let Some(q) = p.div_exact(&b) {
                        out.push(binomial_of(&c, m, &dv));
                        // Repeated factors may reuse the same candidate.
                        if decompose_rec(&q, (m, idx - 1), out) {
                            return true;
                        }
                        out.pop();
                    }
                }
            }
        }
    }
    false
}

fn v2(n: u64) -> u32 {
    n.trailing_zeros()
}

/// Smallest-shape exponents `(k, ℓ)`, `k > 0`, `ℓ` of sign `sigma`, for which
/// the root sets of `f(t^k)` and `g(t^ℓ)` coming from the two binomials meet.
fn binomial_witness(bf: &Binomial, bg: &Binomial, sigma: i64) -> Option<(i64, i64)> {
    let (m, n) = (bf.m, bg.m);
    let a = &bf.exps;
    let b: BTreeMap<BigInt, i64> = bg.exps.iter().map(|(q, e)| (q.clone(), sigma * e)).collect();
    let (er, es) = (bf.negative as u64, bg.negative as u64);
    let (k, l) = match (a.is_empty(), b.is_empty()) {
        (true, true) => match (er, es) {
            (0, 0) => (1, 1),
            (1, 0) => (1, 1u64 << (v2(m) + 1)),
            (0, 1) => (1u64 << (v2(n) + 1), 1),
            _ => {
                let (vm, vn) = (v2(m), v2(n));
                (1u64 << vn.saturating_sub(vm), 1u64 << vm.saturating_sub(vn))
            }
        },
        (false, false) => {
            let ga = a.values().fold(0i64, |g, e| g.gcd(e));
            let gb = b.values().fold(0i64, |g, e| g.gcd(e));
            let wa: BTreeMap<_, _> = a.iter().map(|(q, e)| (q.clone(), e / ga)).collect();
            let wb: BTreeMap<_, _> = b.iter().map(|(q, e)| (q.clone(), e / gb)).collect();
            if wa != wb {
                return None;
            }
            let g = ga.gcd(&gb);
            let (x0, y0) = ((ga / g) as u64, (gb / g) as u64);
            if (y0 * er + x0 * es) % 2 != 0 {
                return None;
            }
            let c = (m / m.gcd(&x0)).lcm(&(n / n.gcd(&y0)));
            (c * x0 / m, c * y0 / n)
        }
        _ => return None,
    };
    Some((k as i64, sigma * l as i64))
}

/// Whether `gcd(f(t^k), g(t^ℓ))` is a nonunit.
pub fn shares_factor(f: &LaurentPoly, g: &LaurentPoly, k: i64, l: i64) -> bool {
    match (f.substitute_power(k), g.substitute_power(l)) {
        (Ok(a), Ok(b)) => laurent::gcd(&a, &b).map(|d| !d.is_unit()).unwrap_or(false),
        _ => false,
    }
}

const SMALL_EXPONENT_BOUND: i64 = 4;

/// Whether `f(t^k)` and `g(t^ℓ)` are coprime for all nonzero `k, ℓ`.
pub fn strongly_coprime(f: &LaurentPoly, g: &LaurentPoly) -> Result<CoprimalityVerdict, PrimalityError> {
    if f.is_zero() || g.is_zero() {
        return Err(PrimalityError::ZeroInput);
    }
    let mut trace = Vec::new();
    let done = |status, trace| Ok(CoprimalityVerdict { status, trace });
    let pf = f.primitive_int_poly();
    let pg = g.primitive_int_poly();
    if pf.deg() == 0 || pg.deg() == 0 {
        trace.push("one side is a unit".into());
        return done(CoprimalityStatus::StronglyCoprime, trace);
    }
    if let (Some(bf), Some(bg)) = (binomial_decomposition(&pf), binomial_decomposition(&pg)) {
        trace.push(format!(
            "binomial decompositions with {} and {} factors",
            bf.len(),
            bg.len()
        ));
        let mut best: Option<(i64, i64)> = None;
        for x in &bf {
            for y in &bg {
                for sigma in [1, -1] {
                    if let Some(w) = binomial_witness(x, y, sigma) {
                        let better = match best {
                            None => true,
                            Some(b) => (w.0.abs() + w.1.abs(), -w.1) < (b.0.abs() + b.1.abs(), -b.1),
                        };
                        if better {
                            best = Some(w);
                        }
                    }
                }
            }
        }
        return match best {
            None => {
                trace.push("no pair of root sets can meet".into());
                done(CoprimalityStatus::StronglyCoprime, trace)
            }
            Some((k, l)) if shares_factor(f, g, k, l) => {
                trace.push(format!("root sets meet at exponents ({}, {})", k, l));
                done(CoprimalityStatus::NotStronglyCoprime(k, l), trace)
            }
            Some((k, l)) => {
                trace.push(format!("predicted witness ({}, {}) failed re-verification", k, l));
                done(CoprimalityStatus::Unknown, trace)
            }
        };
    }
    trace.push("outside the binomial class; small exponent search".into());
    for k in 1..=SMALL_EXPONENT_BOUND {
        for l in (1..=SMALL_EXPONENT_BOUND).flat_map(|l| [l, -l]) {
            if shares_factor(f, g, k, l) {
                trace.push(format!("common factor at exponents ({}, {})", k, l));
                return done(CoprimalityStatus::NotStronglyCoprime(k, l), trace);
            }
        }
    }
    done(CoprimalityStatus::Unknown, trace)
}

/// Strong coprimality of two sequences: the first entries coprime, or some
/// later pair strongly coprime.
pub fn sequences_strongly_coprime(
    ps: &[LaurentPoly],
    qs: &[LaurentPoly],
) -> Result<CoprimalityVerdict, PrimalityError> {
    if ps.is_empty() || ps.len() != qs.len() {
        return Err(PrimalityError::LengthMismatch);
    }
    if ps.iter().chain(qs).any(|p| p.is_zero()) {
        return Err(PrimalityError::ZeroInput);
    }
    let mut trace = Vec::new();
    let g = laurent::gcd(&ps[0], &qs[0]).expect("nonzero inputs");
    if g.is_unit() {
        trace.push("first entries coprime".into());
        return Ok(CoprimalityVerdict { status: CoprimalityStatus::StronglyCoprime, trace });
    }
    trace.push(format!("first entries share {}", g));
    let mut unknown = false;
    for (i, (p, q)) in ps.iter().zip(qs).enumerate().skip(1) {
        let v = strongly_coprime(p, q)?;
        match v.status {
            CoprimalityStatus::StronglyCoprime => {
                trace.push(format!("entry {} strongly coprime", i + 1));
                return Ok(CoprimalityVerdict { status: CoprimalityStatus::StronglyCoprime, trace });
            }
            CoprimalityStatus::Unknown => {
                trace.push(format!("entry {} undecided", i + 1));
                unknown = true;
            }
            CoprimalityStatus::NotStronglyCoprime(k, l) => {
                trace.push(format!("entry {} fails at ({}, {})", i + 1, k, l))
            }
        }
    }
    let status = if unknown {
        CoprimalityStatus::Unknown
    } else {
        CoprimalityStatus::NotStronglyCoprime(1, 1)
    };
    Ok(CoprimalityVerdict { status, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(0, c)
    }

    #[test]
    fn degree_two_rational_root() {
        let v = is_irreducible(&lp(&[2, -5, 2])).unwrap();
        assert_eq!(v.status, IrreducibilityStatus::Reducible(lp(&[-2, 1])));
        assert_eq!(v.method, IrreducibilityMethod::RationalRoot);
    }

    #[test]
    fn kronecker_finds_quadratic_factors() {
        // (t² + t + 1)(t² − t + 1)
        let v = is_irreducible(&lp(&[1, 0, 1, 0, 1])).unwrap();
        match v.status {
            IrreducibilityStatus::Reducible(w) => assert!(w.divides(&lp(&[1, 0, 1, 0, 1]))),
            _ => panic!("{}", v),
        }
        // t⁴ + 1 is irreducible though reducible mod every prime.
        assert!(is_irreducible(&lp(&[1, 0, 0, 0, 1])).unwrap().is_irreducible());
    }

    #[test]
    fn bonciocat_examples() {
        let two = BigInt::from(2);
        let three = BigInt::from(3);
        for p in 1..=12 {
            let f = LaurentPoly::from_terms([(0, laurent::rat(-9)), (p, laurent::rat(8))]);
            assert_eq!(bonciocat_criterion(&f, &two, &three).unwrap(), CriterionOutcome::Irreducible);
        }
        assert_eq!(
            bonciocat_criterion(&lp(&[-1, 0, 1]), &two, &three).unwrap(),
            CriterionOutcome::Inconclusive
        );
        assert_eq!(
            bonciocat_criterion(&lp(&[-1, 0, 1]), &two, &two),
            Err(PrimalityError::InvalidPrimePair)
        );
        assert_eq!(
            bonciocat_criterion(&lp(&[-1, 0, 1]), &two, &BigInt::from(4)),
            Err(PrimalityError::InvalidPrimePair)
        );
    }

    #[test]
    fn binomial_witness_cases() {
        let f = lp(&[-2, 1]);
        assert_eq!(
            strongly_coprime(&f, &lp(&[-4, 1])).unwrap().status,
            CoprimalityStatus::NotStronglyCoprime(1, 2)
        );
        assert_eq!(strongly_coprime(&f, &f).unwrap().status, CoprimalityStatus::NotStronglyCoprime(1, 1));
        assert_eq!(strongly_coprime(&f, &lp(&[-3, 2])).unwrap().status, CoprimalityStatus::StronglyCoprime);
        // t − 2 against 2t − 1: roots 2 and 1/2 meet only after inverting.
        assert_eq!(
            strongly_coprime(&f, &lp(&[-1, 2])).unwrap().status,
            CoprimalityStatus::NotStronglyCoprime(1, -1)
        );
        // t + 1 against t − 1 meet after squaring one side.
        assert!(matches!(
            strongly_coprime(&lp(&[1, 1]), &lp(&[-1, 1])).unwrap().status,
            CoprimalityStatus::NotStronglyCoprime(..)
        ));
        // z^k = −4 and z^ℓ = 2 force k = 2ℓ, and then z^k = 4.
        let v = strongly_coprime(&lp(&[4, 1]), &lp(&[-2, 1])).unwrap();
        assert_eq!(v.status, CoprimalityStatus::StronglyCoprime, "{:?}", v.trace);
    }
}
