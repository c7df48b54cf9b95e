//! Certified real enclosures with dyadic endpoints and directed rounding.
//!
//! An [`Interval`] at precision `bits` is `[lo·2⁻ᵇⁱᵗˢ, hi·2⁻ᵇⁱᵗˢ]`; every
//! operation rounds the lower end down and the upper end up.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn shl(a: &BigInt, k: u32) -> BigInt {
    a << k as usize
}

impl Interval {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn zero(bits: u32) -> Self {
        Interval { lo: BigInt::zero(), hi: BigInt::zero(), bits }
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        let v = shl(&BigInt::from(n), bits);
        Interval { lo: v.clone(), hi: v, bits }
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        let num = shl(q.numer(), bits);
        Interval { lo: floor_div(&num, q.denom()), hi: ceil_div(&num, q.denom()), bits }
    }

    /// Enclosure of the rational interval `[a, b]`.
    pub fn from_bounds(a: &BigRational, b: &BigRational, bits: u32) -> Self {
        let x = Self::from_rational(a, bits);
        let y = Self::from_rational(b, bits);
        Interval { lo: x.lo, hi: y.hi, bits }
    }

    pub fn lo(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.bits as usize)
    }

    pub fn hi(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.bits as usize)
    }

    pub fn width(&self) -> BigRational {
        self.hi() - self.lo()
    }

    pub fn mid_f64(&self) -> f64 {
        let m = (&self.lo + &self.hi).to_f64().unwrap_or(f64::NAN);
        m / 2f64.powi(self.bits as i32 + 1)
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo() <= q && q <= &self.hi()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `Less` if entirely below `q`, `Greater` if entirely above, `Equal`
    /// when it cannot decide.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        if &self.hi() < q {
            Ordering::Less
        } else if &self.lo() > q {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }

    /// Changes precision, rounding outward.
    pub fn with_bits(&self, bits: u32) -> Self {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => Interval {
                lo: shl(&self.lo, bits - self.bits),
                hi: shl(&self.hi, bits - self.bits),
                bits,
            },
            Ordering::Less => {
                let d = BigInt::one() << (self.bits - bits) as usize;
                Interval { lo: floor_div(&self.lo, &d), hi: ceil_div(&self.hi, &d), bits }
            }
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.bits, other.bits, "precision mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, bits: self.bits }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo, bits: self.bits }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -&self.hi, hi: -&self.lo, bits: self.bits }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let ps = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let min = ps.iter().min().unwrap();
        let max = ps.iter().max().unwrap();
        let d = BigInt::one() << self.bits as usize;
        Interval { lo: floor_div(min, &d), hi: ceil_div(max, &d), bits: self.bits }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Interval { lo: b, hi: a, bits: self.bits }
        } else {
            Interval { lo: a, hi: b, bits: self.bits }
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        self.mul_int(q.numer()).div_int(q.denom())
    }

    /// Division by a positive integer.
    pub fn div_int(&self, k: &BigInt) -> Self {
        assert!(k.is_positive());
        Interval { lo: floor_div(&self.lo, k), hi: ceil_div(&self.hi, k), bits: self.bits }
    }

    /// Division by an interval not containing zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        self.check(o);
        if o.contains_zero() {
            return None;
        }
        let s = |a: &BigInt| shl(a, self.bits);
        let mut lows = Vec::new();
        let mut highs = Vec::new();
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let (n, d) = if b.is_negative() { (-s(a), -b.clone()) } else { (s(a), b.clone()) };
                lows.push(floor_div(&n, &d));
                highs.push(ceil_div(&n, &d));
            }
        }
        Some(Interval {
            lo: lows.into_iter().min().unwrap(),
            hi: highs.into_iter().max().unwrap(),
            bits: self.bits,
        })
    }

    /// Square root of an interval; negative parts are clipped to zero.
    pub fn sqrt(&self) -> Self {
        let clip = |a: &BigInt| if a.is_negative() { BigInt::zero() } else { a.clone() };
        let lo = shl(&clip(&self.lo), self.bits).sqrt();
        let h = shl(&clip(&self.hi), self.bits);
        let mut hi = h.sqrt();
        if &hi * &hi < h {
            hi += 1;
        }
        Interval { lo, hi, bits: self.bits }
    }

    pub fn hull(&self, o: &Self) -> Self {
        self.check(o);
        Interval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            bits: self.bits,
        }
    }

    /// Widens by `k` units in the last place on each side.
    pub fn widen(&self, k: u32) -> Self {
        Interval { lo: &self.lo - k, hi: &self.hi + k, bits: self.bits }
    }

    /// Decimal rendering `[lo, hi]` with `digits` fractional digits, rounded
    /// outward.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num::pow(BigInt::from(10), digits);
        let d = BigInt::one() << self.bits as usize;
        let lo = floor_div(&(&self.lo * &scale), &d);
        let hi = ceil_div(&(&self.hi * &scale), &d);
        format!("[{}, {}]", fmt_fixed(&lo, digits), fmt_fixed(&hi, digits))
    }
}

fn fmt_fixed(v: &BigInt, digits: usize) -> String {
    let neg = v.is_negative();
    let s = v.abs().to_string();
    let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
    let (a, b) = s.split_at(s.len() - digits);
    let body = if digits == 0 { a.to_string() } else { format!("{}.{}", a, b) };
    if neg {
        format!("-{}", body)
    } else {
        body
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

/// arctan on `|x| ≤ 1/8` by its alternating series.
fn arctan_small(x: &Interval) -> Interval {
    let bits = x.bits;
    let n_terms = (bits / 6 + 2) as u64;
    let x2 = x.mul(x);
    let mut pow = x.clone();
    let mut sum = Interval::zero(bits);
    for n in 0..n_terms {
        let term = pow.div_int(&BigInt::from(2 * n + 1));
        sum = if n % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        pow = pow.mul(&x2);
    }
    // Remainder below (1/8)^(2N+1) < 2^-bits.
    sum.widen(1)
}

/// arctan of an interval enclosure.
pub fn arctan(x: &Interval) -> Interval {
    let bits = x.bits;
    if x.hi.is_negative() {
        return arctan(&x.neg()).neg();
    }
    if x.contains_zero() && x.lo.is_negative() {
        let a = arctan(&Interval { lo: BigInt::zero(), hi: x.hi.clone(), bits });
        let b = arctan(&Interval { lo: BigInt::zero(), hi: -x.lo.clone(), bits }).neg();
        return a.hull(&b);
    }
    let eighth = BigInt::one() << (bits as usize).saturating_sub(3);
    let one = Interval::from_int(1, bits);
    let mut y = x.clone();
    let mut doublings = 0u32;
    // arctan(y) = 2·arctan(y / (1 + √(1 + y²)))
    while y.hi > eighth {
        let den = one.add(&one.add(&y.mul(&y)).sqrt());
        y = y.div(&den).expect("denominator ≥ 1");
        doublings += 1;
    }
    let r = arctan_small(&y);
    r.mul_int(&(BigInt::one() << doublings as usize))
}

/// π by Machin's formula.
pub fn pi(bits: u32) -> Interval {
    let w = bits + 16;
    let a = arctan(&Interval::from_rational(&BigRational::new(1.into(), 5.into()), w));
    let b = arctan_small(&Interval::from_rational(&BigRational::new(1.into(), 239.into()), w));
    a.mul_int(&16.into()).sub(&b.mul_int(&4.into())).with_bits(bits)
}

/// arccos of a rational in `[−1, 1]`.
pub fn arccos_rational(c: &BigRational, bits: u32) -> Interval {
    let one = BigRational::one();
    assert!(c.abs() <= one, "arccos argument outside [−1, 1]");
    let w = bits + 16;
    if *c == -one.clone() {
        return pi(bits);
    }
    let q = (&one - c) / (&one + c);
    let r = Interval::from_rational(&q, w).sqrt();
    arctan(&r).mul_int(&2.into()).with_bits(bits)
}

/// Enclosure of `arccos(c)/π` for every `c` in the rational interval
/// `[a, b] ⊆ [−1, 1]`.
pub fn arccos_over_pi(a: &BigRational, b: &BigRational, bits: u32) -> Interval {
    let w = bits + 16;
    let p = pi(w);
    // arccos is decreasing.
    let lo = arccos_rational(b, w).div(&p).unwrap();
    let hi = arccos_rational(a, w).div(&p).unwrap();
    Interval { lo: lo.lo, hi: hi.hi, bits: w }.with_bits(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn pi_digits() {
        let p = pi(200);
        assert!(p.to_decimal(50).starts_with("[3.14159265358979323846264338327950288419716939937510"));
        assert!(p.width() < q(1, 1 << 30) * q(1, 1 << 30) * q(1, 1 << 30));
    }

    #[test]
    fn arccos_values() {
        let third = arccos_over_pi(&q(1, 2), &q(1, 2), 120);
        assert!(third.contains(&q(1, 3)));
        assert!(third.width() < q(1, 1 << 30) * q(1, 1 << 30));
        assert!(arccos_over_pi(&q(-1, 2), &q(-1, 2), 80).contains(&q(2, 3)));
        assert!(arccos_over_pi(&q(0, 1), &q(0, 1), 80).contains(&q(1, 2)));
        assert!(arccos_over_pi(&q(-1, 1), &q(-1, 1), 80).contains(&q(1, 1)));
        assert!(arccos_over_pi(&q(1, 1), &q(1, 1), 80).contains(&q(0, 1)));
        let v = arccos_rational(&q(3, 4), 64).mid_f64();
        assert!((v - 0.75f64.acos()).abs() < 1e-15);
    }

    #[test]
    fn arithmetic_rounds_outward() {
        let third = Interval::from_rational(&q(1, 3), 10);
        assert!(third.contains(&q(1, 3)));
        let x = third.mul(&Interval::from_int(3, 10));
        assert!(x.contains(&q(1, 1)));
        let y = Interval::from_int(1, 10).div(&Interval::from_int(3, 10)).unwrap();
        assert!(y.contains(&q(1, 3)));
        let s = Interval::from_int(2, 40).sqrt();
        assert!(s.lo() * s.lo() <= q(2, 1) && s.hi() * s.hi() >= q(2, 1));
        assert_eq!(Interval::from_rational(&q(-1, 4), 8).to_decimal(3), "[-0.250, -0.250]");
    }
}
