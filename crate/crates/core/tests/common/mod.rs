//! Independent oracles shared by the integration tests. None of them calls
//! the Smith-form code under test.
#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use immclass_core::matrix::IntMatrix;

fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].clone()).collect()).collect()
}

/// Rank over ℚ by fraction-free elimination.
pub fn rank_rational(m: &IntMatrix) -> usize {
    let mut a = to_rows(m);
    let (rows, cols) = m.shape();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank over the prime field `F_p`.
pub fn rank_mod_p(m: &IntMatrix, p: i64) -> usize {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<i64>> = (0..rows)
        .map(|i| (0..cols).map(|j| i64::try_from(m[(i, j)].mod_floor(&BigInt::from(p))).unwrap()).collect())
        .collect();
    let inv = |x: i64| {
        let (mut r, mut e, mut b) = (1i64, p - 2, x);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let s = inv(a[rank][c]);
        for k in c..cols {
            a[rank][k] = a[rank][k] * s % p;
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for k in c..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1);
    for s in &mut with {
        s.push(n - 1);
    }
    with.extend(subsets(n - 1, k));
    with
}

/// Nonzero invariant factors `dₖ = Dₖ / Dₖ₋₁`, `Dₖ` the gcd of all `k×k` minors.
pub fn invariant_factors_by_minors(a: &IntMatrix) -> Vec<BigInt> {
    let (m, n) = a.shape();
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=m.min(n) {
        let mut g = BigInt::zero();
        for rs in subsets(m, k) {
            for cs in subsets(n, k) {
                g = g.gcd(&a.select_rows(&rs).select_cols(&cs).determinant());
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}
