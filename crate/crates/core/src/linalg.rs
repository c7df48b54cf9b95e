//! Fraction-free determinants and small dense matrix helpers.

use num::{BigInt, BigRational, One, Zero};

/// A commutative ring with exact division, enough for Bareiss elimination.
pub trait ExactRing: Clone {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn r_is_zero(&self) -> bool;
    fn r_mul(&self, other: &Self) -> Self;
    fn r_sub(&self, other: &Self) -> Self;
    fn r_neg(&self) -> Self;
    /// Division known to be exact.
    fn r_div(&self, other: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn r_zero() -> Self {
        Zero::zero()
    }
    fn r_one() -> Self {
        One::one()
    }
    fn r_is_zero(&self) -> bool {
        Zero::is_zero(self)
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
        self / other
    }
}

impl ExactRing for BigRational {
    fn r_zero() -> Self {
        Zero::zero()
    }
    fn r_one() -> Self {
        One::one()
    }
    fn r_is_zero(&self) -> bool {
        Zero::is_zero(self)
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
        self / other
    }
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn bareiss_det<R: ExactRing>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::r_one();
    }
    let mut sign_flip = false;
    let mut prev = R::r_one();
    for k in 0..n - 1 {
        if m[k][k].r_is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].r_is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return R::r_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].r_mul(&m[k][k]).r_sub(&m[i][k].r_mul(&m[k][j]));
                m[i][j] = v.r_div(&prev);
            }
            m[i][k] = R::r_zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        d.r_neg()
    } else {
        d
    }
}

/// Transpose of a rectangular matrix.
pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}
