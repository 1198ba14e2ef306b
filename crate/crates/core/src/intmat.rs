//! Exact integer matrix helpers: determinant, unimodular inverse and rank.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Determinant by cofactor expansion along the first row.
/// Matrices here are small (rank of the free group), so this is exact and fast enough.
pub fn det(m: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    Ok(det_unchecked(m))
}

fn det_unchecked(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    match n {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        _ => {
            let mut acc = BigInt::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * det_unchecked(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Inverse of a matrix with determinant +-1, via the adjugate.
pub fn unimodular_inverse(m: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let n = m.len();
    let d = det(m)?;
    if !(d.abs().is_one()) {
        return Err(Error::NotTwoConnected { det: d });
    }
    let mut inv = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            // adjugate entry (i,j) = cofactor (j,i)
            let minor: Vec<Vec<BigInt>> = (0..n)
                .filter(|r| *r != j)
                .map(|r| {
                    (0..n)
                        .filter(|c| *c != i)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let mut cof = det_unchecked(&minor);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            *entry = &cof * &d; // dividing by det = multiplying, since det = +-1
        }
    }
    Ok(inv)
}

/// Rank over the rationals by fraction-free Gaussian elimination.
pub fn rank(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pivot);
        let pivot_row = a[r].clone();
        for row in a.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let (p, q) = (pivot_row[c].clone(), row[c].clone());
            for (x, pj) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &p - pj * &q;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
