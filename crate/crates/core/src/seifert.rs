//! Seifert matrices and the classical invariants read off from them.

use crate::laurent::{rat, LaurentPoly};
use crate::linalg::{bareiss_det, transpose};
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("not a Seifert matrix")]
    NotSeifert,
    #[error("signature undefined at Alexander root")]
    AlexanderRoot,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("expected a 2×2 matrix")]
    NotGenusOne,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    entries: Vec<Vec<BigInt>>,
}

/// A point on the unit circle given exactly. `Param(s)` is
/// `((1 − s²) + 2is)/(1 + s²)`; `s = 0` is `ω = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CirclePoint {
    Param(BigRational),
    MinusOne,
}

impl CirclePoint {
    /// Real part `(1 − s²)/(1 + s²)`.
    pub fn real_part(&self) -> BigRational {
        match self {
            CirclePoint::MinusOne => -BigRational::one(),
            CirclePoint::Param(s) => {
                let s2 = s * s;
                (BigRational::one() - &s2) / (BigRational::one() + s2)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivativeClass {
    pub x: i64,
    pub y: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Twist(i64),
    OperatorR(i64),
    OperatorQ(i64),
}

impl SeifertMatrix {
    /// Checks squareness, even size and `det(V − Vᵀ) = 1`.
    pub fn new(entries: Vec<Vec<BigInt>>) -> Result<Self, SeifertError> {
        let n = entries.len();
        if n % 2 != 0 || entries.iter().any(|r| r.len() != n) {
            return Err(SeifertError::NotSeifert);
        }
        let skew: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| &entries[i][j] - &entries[j][i]).collect())
            .collect();
        if n > 0 && !bareiss_det(skew).is_one() {
            return Err(SeifertError::NotSeifert);
        }
        Ok(SeifertMatrix { entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, SeifertError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn empty() -> Self {
        SeifertMatrix { entries: Vec::new() }
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn genus(&self) -> usize {
        self.dim() / 2
    }

    pub fn builtin(b: Builtin) -> Result<Self, SeifertError> {
        match b {
            Builtin::Twist(j) if j >= 1 => Self::from_i64(&[&[-1, 1], &[0, -j]]),
            Builtin::OperatorR(k) | Builtin::OperatorQ(k) if k >= 1 => {
                Self::from_i64(&[&[-k, 1], &[0, k + 1]])
            }
            other => Err(SeifertError::OutOfRange(format!("{:?}", other))),
        }
    }

    fn map(&self, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let n = self.dim();
        SeifertMatrix { entries: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn transpose(&self) -> Self {
        SeifertMatrix { entries: transpose(&self.entries) }
    }

    /// `−Vᵀ`.
    pub fn mirror(&self) -> Self {
        self.map(|i, j| -&self.entries[j][i])
    }

    /// `Vᵀ`.
    pub fn reverse(&self) -> Self {
        self.transpose()
    }

    /// `−V`, the concordance inverse.
    pub fn mirror_reverse(&self) -> Self {
        self.map(|i, j| -&self.entries[i][j])
    }

    pub fn connected_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let n = a + b;
        let mut e = vec![vec![BigInt::zero(); n]; n];
        for i in 0..a {
            for j in 0..a {
                e[i][j] = self.entries[i][j].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                e[a + i][a + j] = other.entries[i][j].clone();
            }
        }
        SeifertMatrix { entries: e }
    }

    pub fn concordance_inverse(&self) -> Self {
        self.mirror_reverse()
    }

    /// `V − t·Vᵀ` as a matrix of Laurent polynomials.
    pub fn alexander_matrix(&self) -> Vec<Vec<LaurentPoly>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        LaurentPoly::from_terms([
                            (0, BigRational::from_integer(self.entries[i][j].clone())),
                            (1, -BigRational::from_integer(self.entries[j][i].clone())),
                        ])
                    })
                    .collect()
            })
            .collect()
    }

    /// Unnormalized `det(V − tVᵀ)`.
    pub fn alexander_determinant(&self) -> LaurentPoly {
        if self.dim() == 0 {
            return LaurentPoly::one();
        }
        bareiss_det(self.alexander_matrix())
    }

    /// Normalized Alexander polynomial.
    pub fn alexander_polynomial(&self) -> LaurentPoly {
        self.alexander_determinant().normalize().expect("det(V − tVᵀ) is nonzero")
    }

    /// Levine–Tristram signature at an exact unit-circle point.
    pub fn signature_at(&self, w: &CirclePoint) -> Result<i64, SeifertError> {
        let n = self.dim();
        if n == 0 {
            return Ok(0);
        }
        // (1 − ω)V + (1 − ω̄)Vᵀ is a positive multiple of
        // sign(s)·(s(V + Vᵀ) − i(V − Vᵀ)), and of V + Vᵀ at ω = −1.
        let (scale, sym_w, skew_w) = match w {
            CirclePoint::MinusOne => (BigRational::one(), BigRational::one(), BigRational::zero()),
            CirclePoint::Param(s) if s.is_zero() => return Ok(0),
            CirclePoint::Param(s) => {
                let sg = if s.is_positive() { BigRational::one() } else { -BigRational::one() };
                (sg, s.clone(), -BigRational::one())
            }
        };
        let e = |i: usize, j: usize| BigRational::from_integer(self.entries[i][j].clone());
        // Hermitian A + iB with A symmetric, B antisymmetric; the real form
        // [[A, −B], [B, A]] has twice its signature.
        let mut m = vec![vec![BigRational::zero(); 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                let a = &scale * &sym_w * (e(i, j) + e(j, i));
                let b = &scale * &skew_w * (e(i, j) - e(j, i));
                m[i][j] = a.clone();
                m[n + i][n + j] = a;
                m[i][n + j] = -b.clone();
                m[n + i][j] = b;
            }
        }
        let (pos, neg, zero) = inertia(m);
        if zero > 0 {
            return Err(SeifertError::AlexanderRoot);
        }
        Ok((pos as i64 - neg as i64) / 2)
    }

    pub fn arf(&self) -> u8 {
        let d = self.alexander_polynomial().eval(&-BigRational::one()).expect("polynomial");
        let r = d.to_integer().abs() % BigInt::from(8);
        if r == BigInt::from(1) || r == BigInt::from(7) {
            0
        } else {
            1
        }
    }

    /// Primitive classes `(x, y)`, up to sign, on which the Seifert form of a
    /// 2×2 matrix vanishes.
    pub fn genus_one_derivatives(&self) -> Result<Vec<DerivativeClass>, SeifertError> {
        if self.dim() != 2 {
            return Err(SeifertError::NotGenusOne);
        }
        let v = &self.entries;
        let a = v[0][0].clone();
        let b = &v[0][1] + &v[1][0];
        let c = v[1][1].clone();
        let mut out: Vec<(BigInt, BigInt)> = Vec::new();
        if a.is_zero() && b.is_zero() && c.is_zero() {
            out.push((BigInt::one(), BigInt::zero()));
            out.push((BigInt::zero(), BigInt::one()));
        } else if a.is_zero() {
            // y·(b·x + c·y) = 0
            out.push((BigInt::one(), BigInt::zero()));
            out.push((c.clone(), -b.clone()));
        } else {
            let disc = &b * &b - BigInt::from(4) * &a * &c;
            if disc.is_negative() {
                return Ok(Vec::new());
            }
            let r = disc.sqrt();
            if &r * &r != disc {
                return Ok(Vec::new());
            }
            // x/y = (−b ± r)/(2a)
            for sgn in [1, -1] {
                out.push((-&b + &r * sgn, BigInt::from(2) * &a));
            }
        }
        let mut classes: Vec<DerivativeClass> = out
            .into_iter()
            .filter(|(x, y)| !(x.is_zero() && y.is_zero()))
            .map(|(x, y)| {
                let g = x.gcd(&y);
                let (mut x, mut y) = (x / &g, y / &g);
                if x.is_negative() || (x.is_zero() && y.is_negative()) {
                    x = -x;
                    y = -y;
                }
                DerivativeClass {
                    x: x.try_into().expect("small class"),
                    y: y.try_into().expect("small class"),
                }
            })
            .collect();
        classes.sort();
        classes.dedup();
        Ok(classes)
    }

    /// Value of the Seifert form `xᵀ V y` on integer vectors.
    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let n = self.dim();
        let mut acc = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                acc += &x[i] * &self.entries[i][j] * &y[j];
            }
        }
        acc
    }
}

/// Inertia `(positive, negative, zero)` of a symmetric rational matrix by
/// exact congruence diagonalization.
pub fn inertia(mut m: Vec<Vec<BigRational>>) -> (usize, usize, usize) {
    let n = m.len();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(k, j);
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                // Replace e_k by e_k + e_j; the new diagonal entry is 2·m[k][j].
                for c in 0..n {
                    let v = m[j][c].clone();
                    m[k][c] += v;
                }
                for r in 0..n {
                    let v = m[r][j].clone();
                    m[r][k] += v;
                }
            }
        }
        let p = m[k][k].clone();
        if p.is_zero() {
            zero += 1;
            continue;
        }
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &p;
            for j in k..n {
                let v = &f * &m[k][j];
                m[i][j] -= v;
            }
        }
        for i in k + 1..n {
            m[k][i] = BigRational::zero();
            m[i][k] = BigRational::zero();
        }
    }
    (pos, neg, zero)
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "g={}", self.genus())?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for SeifertMatrix {
    type Err = SeifertError;

    /// `g=<genus>` followed by `2g` rows of integers. Blank lines and lines
    /// starting with `#` are ignored.
    fn from_str(s: &str) -> Result<Self, SeifertError> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, head) = lines.next().ok_or_else(|| SeifertError::Parse("empty input".into()))?;
        let g: usize = head
            .strip_prefix("g=")
            .and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| SeifertError::Parse(format!("line {}: expected g=<genus>", ln)))?;
        let mut rows = Vec::new();
        for (ln, l) in lines {
            let row: Result<Vec<BigInt>, _> = l.split_whitespace().map(BigInt::from_str).collect();
            let row = row.map_err(|_| SeifertError::Parse(format!("line {}: bad integer", ln)))?;
            if row.len() != 2 * g {
                return Err(SeifertError::Parse(format!(
                    "line {}: expected {} entries, found {}",
                    ln,
                    2 * g,
                    row.len()
                )));
            }
            rows.push(row);
        }
        if rows.len() != 2 * g {
            return Err(SeifertError::Parse(format!("expected {} rows, found {}", 2 * g, rows.len())));
        }
        SeifertMatrix::new(rows)
    }
}

/// Twist-knot Alexander polynomial `j·t² − (2j − 1)·t + j`.
pub fn twist_alexander(j: i64) -> LaurentPoly {
    LaurentPoly::from_terms([(0, rat(j)), (1, rat(-(2 * j - 1))), (2, rat(j))])
}
