//! Dense univariate polynomials over the integers.
//!
//! Used internally for gcds, factor searches, Sturm sequences and real root
//! isolation. Coefficients are stored in ascending order with no trailing
//! zeros; the zero polynomial is the empty vector.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// The monic linear polynomial `x`.
    pub fn x() -> Self {
        IntPoly::new(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, n: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `self(other(x))`, by Horner's rule.
    pub fn compose(&self, other: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(other).add(&IntPoly::constant(c.clone()));
        }
        acc
    }

    /// `x^deg · self(1/x)`.
    pub fn reverse(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_degree(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Divides out the largest power of `x`.
    pub fn strip_x(&self) -> IntPoly {
        IntPoly::new(self.coeffs[self.low_degree()..].to_vec())
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of the value at a rational point, computed without fractions.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        // d^n p(n/d) is an integer with the same sign as p(n/d) since d > 0.
        let n = x.numer();
        let d = x.denom();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        // Horner in homogeneous form: sum c_i n^i d^(deg-1-i)
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow = dpow * d;
        }
        acc.sign_cmp()
    }

    /// Exact division; `None` when `other` does not divide `self` in ℤ[x].
    pub fn div_exact(&self, other: &IntPoly) -> Option<IntPoly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.deg() < other.deg() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dl = other.deg();
        let lc = other.lc();
        let mut q = vec![BigInt::zero(); self.deg() - dl + 1];
        for i in (0..q.len()).rev() {
            let top = rem[i + dl].clone();
            if top.is_zero() {
                continue;
            }
            let (qi, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[i + j] -= &qi * b;
            }
            q[i] = qi;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero());
        if self.is_zero() || self.deg() < b.deg() {
            return self.clone();
        }
        let mut r = self.coeffs.clone();
        let db = b.deg();
        let lc = b.lc();
        let steps = self.deg() - db + 1;
        let mut top = self.deg();
        for _ in 0..steps {
            let t = r[top].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            if !t.is_zero() {
                for (j, bc) in b.coeffs.iter().enumerate() {
                    r[top - db + j] -= &t * bc;
                }
            }
            if top == 0 {
                break;
            }
            top -= 1;
        }
        r.truncate(db);
        IntPoly::new(r)
    }

    /// Greatest common divisor in ℤ[x] by the subresultant remainder
    /// sequence; primitive with positive leading coefficient times the gcd of
    /// the contents.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive().scale(&self.content());
        }
        let (mut a, mut b) = if self.deg() >= other.deg() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        let d = a.content().gcd(&b.content());
        a = a.primitive();
        b = b.primitive();
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.deg() - b.deg();
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.primitive().scale(&d);
            }
            if r.deg() == 0 {
                return IntPoly::constant(d);
            }
            a = b;
            let denom = &g * num::pow(h.clone(), delta);
            b = r.div_scalar_exact(&denom);
            g = a.lc();
            // h <- g^delta / h^(delta-1)
            if delta == 0 {
                // h unchanged up to h^1 * g^0 / h^-1 ... handled as h = h
            } else {
                let num_ = num::pow(g.clone(), delta);
                let den = num::pow(h.clone(), delta - 1);
                h = num_ / den;
            }
        }
    }

    /// Squarefree part (primitive).
    pub fn squarefree(&self) -> IntPoly {
        if self.deg() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.primitive().div_exact(&g.primitive()).expect("gcd divides").primitive()
    }

    /// Cauchy bound: every complex root has absolute value < bound.
    pub fn root_bound(&self) -> BigRational {
        let lc = self.lc().abs();
        let m = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        BigRational::new(m, lc) + BigRational::one()
    }

    /// Sturm sequence of a squarefree polynomial.
    pub fn sturm_sequence(&self) -> Vec<IntPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            let a = &seq[n - 2];
            let b = &seq[n - 1];
            if b.is_zero() || b.deg() == 0 {
                break;
            }
            let mut r = a.pseudo_rem(b);
            // prem multiplies by lc(b)^(delta+1); undo a negative factor.
            let e = a.deg() - b.deg() + 1;
            if b.lc().is_negative() && e % 2 == 1 {
                r = r.neg();
            }
            let r = r.neg();
            if r.is_zero() {
                break;
            }
            let c = r.content();
            seq.push(r.div_scalar_exact(&c));
        }
        if seq.last().map_or(false, |p| p.is_zero()) {
            seq.pop();
        }
        seq
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

/// Number of sign changes of a Sturm sequence at a rational point.
pub fn sign_variations(seq: &[IntPoly], x: &BigRational) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// An isolating interval `[lo, hi]` for a real root of a squarefree integer
/// polynomial. Either `lo == hi` (an exact rational root) or `lo < hi`,
/// neither endpoint is a root and the open interval holds exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl IsolatedRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Halves the interval (or stops at an exact rational root).
    pub fn bisect(&mut self, p: &IntPoly) {
        if self.is_exact() {
            return;
        }
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        let sm = p.sign_at(&mid);
        if sm == Ordering::Equal {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        if sm == p.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Refines until the width is at most `eps`.
    pub fn refine_to(&mut self, p: &IntPoly, eps: &BigRational) {
        while !self.is_exact() && &self.width() > eps {
            self.bisect(p);
        }
    }
}

/// Number of distinct roots of the squarefree `p` in the open interval
/// `(a, b)`; both endpoints must be non-roots.
pub fn count_roots_open(seq: &[IntPoly], a: &BigRational, b: &BigRational) -> usize {
    sign_variations(seq, a) - sign_variations(seq, b)
}

/// Isolates all real roots of `p` (made squarefree) lying in the open
/// interval `(a, b)`, returned in increasing order. Endpoints that are roots
/// are excluded.
pub fn isolate_real_roots(p: &IntPoly, a: &BigRational, b: &BigRational) -> Vec<IsolatedRoot> {
    let sf = p.squarefree();
    if sf.deg() == 0 {
        return Vec::new();
    }
    let seq = sf.sturm_sequence();
    let mut out = Vec::new();
    let mut lo = a.clone();
    let mut hi = b.clone();
    // Nudge endpoints that happen to be roots inward.
    let two = BigRational::from_integer(BigInt::from(2));
    if sf.sign_at(&lo) == Ordering::Equal {
        lo = nudge(&sf, &seq, &lo, &hi, true);
    }
    if sf.sign_at(&hi) == Ordering::Equal {
        hi = nudge(&sf, &seq, &hi, &lo, false);
    }
    let mut stack = vec![(lo, hi)];
    while let Some((l, h)) = stack.pop() {
        let n = count_roots_open(&seq, &l, &h);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(IsolatedRoot { lo: l, hi: h });
            continue;
        }
        let mid = (&l + &h) / &two;
        if sf.sign_at(&mid) == Ordering::Equal {
            // exact rational root: carve out a root-free neighbourhood
            let mut delta = (&h - &l) / BigRational::from_integer(BigInt::from(4));
            loop {
                let ml = &mid - &delta;
                let mh = &mid + &delta;
                if sf.sign_at(&ml) != Ordering::Equal
                    && sf.sign_at(&mh) != Ordering::Equal
                    && count_roots_open(&seq, &ml, &mh) == 1
                {
                    out.push(IsolatedRoot { lo: mid.clone(), hi: mid.clone() });
                    stack.push((l.clone(), ml));
                    stack.push((mh, h.clone()));
                    break;
                }
                delta = delta / &two;
            }
        } else {
            stack.push((l, mid.clone()));
            stack.push((mid, h));
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

fn nudge(p: &IntPoly, seq: &[IntPoly], root: &BigRational, other: &BigRational, upward: bool) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut delta = (other - root).abs() / &two;
    loop {
        let l = root - &delta;
        let h = root + &delta;
        if p.sign_at(&l) != Ordering::Equal
            && p.sign_at(&h) != Ordering::Equal
            && count_roots_open(seq, &l, &h) == 1
        {
            return if upward { h } else { l };
        }
        delta = delta / &two;
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
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
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", a)?;
            }
            if i > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "x")?;
                if i > 1 {
                    write!(f, "^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        let a = IntPoly::from_i64(&[2, -5, 2]); // (2x-1)(x-2)
        let b = IntPoly::from_i64(&[-2, 1]);
        assert_eq!(a.gcd(&b), IntPoly::from_i64(&[-2, 1]));
        let c = IntPoly::from_i64(&[-3, 2]);
        assert_eq!(b.gcd(&c), IntPoly::one());
    }

    #[test]
    fn gcd_subresultant_larger() {
        let f = IntPoly::from_i64(&[1, 1, 1]);
        let g1 = IntPoly::from_i64(&[3, 0, 0, 5, -1]);
        let g2 = IntPoly::from_i64(&[-7, 2, 0, 1]);
        let a = f.mul(&g1);
        let b = f.mul(&g2).scale(&BigInt::from(6));
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = IntPoly::from_i64(&[1, 2, 3, 4, 5]);
        let b = IntPoly::from_i64(&[1, 0, 3]);
        let r = a.pseudo_rem(&b);
        let lc_pow = num::pow(b.lc(), a.deg() - b.deg() + 1);
        let diff = a.scale(&lc_pow).sub(&r);
        assert!(diff.div_exact(&b).is_some());
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn isolates_roots_of_cubic() {
        // (x-1)(x+2)(2x-3) has rational roots; (x^2 - 2) irrational
        let p = IntPoly::from_i64(&[-1, 1]).mul(&IntPoly::from_i64(&[2, 1])).mul(&IntPoly::from_i64(&[-3, 2]));
        let roots = isolate_real_roots(&p, &q(-10, 1), &q(10, 1));
        assert_eq!(roots.len(), 3);
        let s = IntPoly::from_i64(&[-2, 0, 1]);
        let roots = isolate_real_roots(&s, &q(-2, 1), &q(2, 1));
        assert_eq!(roots.len(), 2);
        let mut r = roots[1].clone();
        r.refine_to(&s, &q(1, 1_000_000));
        assert!(r.lo < q(141422, 100000) && r.hi > q(141421, 100000));
    }

    #[test]
    fn endpoint_roots_are_excluded() {
        let p = IntPoly::from_i64(&[-4, 0, 1]); // roots ±2
        assert!(isolate_real_roots(&p, &q(-2, 1), &q(2, 1)).is_empty());
    }

    #[test]
    fn sturm_handles_negative_leading_coefficients() {
        let p = IntPoly::from_i64(&[1, 0, -3, 0, 1]).neg();
        let roots = isolate_real_roots(&p, &q(-5, 1), &q(5, 1));
        assert_eq!(roots.len(), 4);
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[2, -5, 2]).to_string(), "2*x^2 - 5*x + 2");
        assert_eq!(IntPoly::from_i64(&[0, -1]).to_string(), "-x");
    }
}
