//! Small dense exact linear algebra over the rationals and integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::qpoly::QPolynomial;
use crate::rational::Rat;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rat::one() / m[r][c];
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let v = m[r][j] * f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x as i128)).collect())
        .collect();
    rank(&m)
}

/// Determinant by Gaussian elimination.
pub fn determinant(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for i in c + 1..n {
            let f = m[i][c] / m[c][c];
            for j in c..n {
                let v = m[c][j] * f;
                m[i][j] -= v;
            }
        }
    }
    det
}

/// Solves the square system `a x = b`; `None` when singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let piv = rref(&mut m);
    if piv.len() < n || piv.iter().any(|&c| c >= n) {
        return None;
    }
    Some(m.iter().map(|r| r[n]).collect())
}

/// Integer matrix product, row-major `n x n`.
pub fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &[i64], v: &[i64]) -> Vec<i64> {
    let n = v.len();
    (0..n)
        .map(|i| (0..n).map(|j| a[i * n + j] * v[j]).sum())
        .collect()
}

pub fn mat_vec_rat(a: &[i64], v: &[Rat]) -> Vec<Rat> {
    let n = v.len();
    (0..n)
        .map(|i| {
            (0..n).fold(Rat::zero(), |acc, j| {
                acc + Rat::from_integer(a[i * n + j] as i128) * v[j]
            })
        })
        .collect()
}

pub fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// `det(q·I - M)` by the Faddeev-LeVerrier recurrence, exact over the integers.
pub fn char_poly(m: &[i64], n: usize) -> QPolynomial {
    let a: Vec<BigInt> = m.iter().map(|&x| BigInt::from(x)).collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // mk = A * M_{k-1} + c_{n-k+1} I, with M_0 = 0.
    let mut mk = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        let mut next = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                if a[i * n + l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    next[i * n + j] += &a[i * n + l] * &mk[l * n + j];
                }
            }
            next[i * n + i] += &coeffs[n - k + 1];
        }
        mk = next;
        // c_{n-k} = -tr(A M_k) / k
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i * n + l] * &mk[l * n + i];
            }
        }
        coeffs[n - k] = -tr / BigInt::from(k as i64);
    }
    QPolynomial::from_coeffs(coeffs)
}
