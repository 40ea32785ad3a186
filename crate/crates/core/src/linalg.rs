//! Small exact linear-algebra helpers over the rationals: just enough
//! Gaussian elimination for Cartan-matrix inversion and rank computations.

use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

use crate::Rat;

/// Inverse of a square rational matrix, or `None` when singular.
#[allow(clippy::needless_range_loop)]
pub fn invert(mat: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = mat.len();
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for (i, row) in mat.iter().enumerate() {
        assert_eq!(row.len(), n, "invert: matrix must be square");
        let mut ext = row.clone();
        for j in 0..n {
            ext.push(if i == j { Rat::one() } else { Rat::zero() });
        }
        a.push(ext);
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..2 * n {
                    let delta = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Rank of an integer matrix given by rows, computed exactly.
#[allow(clippy::needless_range_loop)]
pub fn int_rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut a: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "int_rank: ragged matrix");
            r.iter().map(|&x| Rat::from_integer(x.into())).collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = a[rank][col].clone();
        for x in a[rank].iter_mut() {
            *x = &*x / &inv;
        }
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..cols {
                    let delta = &factor * &a[rank][c];
                    a[r][c] = &a[r][c] - delta;
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Smallest positive integer `k` such that `k * x` is integral for every `x`.
pub fn common_denominator(xs: &[Rat]) -> num_bigint::BigInt {
    use num_integer::Integer;
    let mut lcm = num_bigint::BigInt::one();
    for x in xs {
        lcm = lcm.lcm(x.denom());
    }
    lcm.abs()
}
