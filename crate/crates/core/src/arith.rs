//! Integer helpers: primality, factorization, divisors and perfect powers.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic primality for 64-bit integers (Miller–Rabin with the first
/// twelve prime bases, exact below 3.3·10²⁴).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Strong probable-prime test for arbitrary integers; exact below 2⁶⁴.
pub fn is_prime(n: &BigInt) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for &a in SMALL_PRIMES.iter().chain([41u64, 43, 47, 53, 59, 61, 67, 71].iter()) {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt) -> BigInt {
    // Brent's variant with a few increments of the polynomial constant.
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = one.clone();
        let mut iters = 0u64;
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
            iters += 1;
            if iters > 2_000_000 {
                break;
            }
        }
        if d != one && &d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of `|n|` as (prime, exponent) pairs in increasing
/// order. Zero and ±1 factor as the empty list.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = 2u64;
    while p < 10_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    let mut big: Vec<BigInt> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            big.push(m);
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    big.sort();
    for q in big {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out.sort();
    out
}

pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Positive divisors of `|n|` in increasing order; empty for zero.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return Vec::new();
    }
    let mut ds = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(ds.len() * (e as usize + 1));
        for d in &ds {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        ds = next;
    }
    ds.sort();
    ds
}

/// Number of positive divisors of `|n|`.
pub fn divisor_count(n: &BigInt) -> u64 {
    factorize(n).iter().map(|(_, e)| *e as u64 + 1).product()
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Whether `|n| = x^c` for some integer `x` and `c > 1`. One counts
/// (`1 = 1²`); zero does not.
pub fn is_perfect_power(n: &BigInt) -> bool {
    let n = n.abs();
    if n.is_zero() {
        return false;
    }
    if n.is_one() {
        return true;
    }
    let g = factorize(&n).iter().fold(0u32, |acc, (_, e)| acc.gcd(e));
    g > 1
}

/// Floor of the square root.
pub fn isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}
