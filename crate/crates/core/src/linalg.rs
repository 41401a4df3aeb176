//! Exact rank computations.
//!
//! Ranks over the rationals go through fraction-free (Bareiss) elimination on
//! integer matrices; a word-sized prime field is available as an independent
//! cross-check and as the native arithmetic of the Aomoto complex.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::rational::{denominator_lcm, Q};

/// Clears denominators row by row. Scaling a row by a nonzero integer keeps the rank.
pub fn integer_rows(rows: &[Vec<Q>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = denominator_lcm(row.iter());
            row.iter()
                .map(|x| (x * Q::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Rank of an integer matrix by fraction-free Gaussian elimination.
///
/// Every intermediate entry is a minor of the input, so the exact division
/// by the previous pivot never leaves the integers.
pub fn rank_bareiss(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        for r in rank + 1..rows {
            let factor = m[r][col].clone();
            for c in col + 1..cols {
                let v = &pivot * &m[r][c] - &factor * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank over the rationals.
pub fn rank_rational(rows: &[Vec<Q>]) -> usize {
    rank_bareiss(integer_rows(rows))
}

/// Rank of an integer matrix reduced modulo the prime `p`.
pub fn rank_mod_p(rows: &[Vec<BigInt>], p: u64) -> usize {
    let pb = BigInt::from(p);
    let reduced: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.mod_floor(&pb).to_u64().expect("reduced entry fits"))
                .collect()
        })
        .collect();
    rank_mod_p_small(reduced, p)
}

/// Gaussian elimination over the prime field with `p` elements.
pub fn rank_mod_p_small(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let p128 = p as u128;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| m[r][col] % p != 0) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let inv = inverse_mod(m[rank][col] % p, p);
        for c in col..cols {
            m[rank][c] = ((m[rank][c] as u128 * inv as u128) % p128) as u64;
        }
        for r in 0..rows {
            if r == rank || m[r][col] % p == 0 {
                continue;
            }
            let factor = m[r][col] as u128;
            for c in col..cols {
                let sub = (factor * m[rank][c] as u128) % p128;
                m[r][c] = ((m[r][c] as u128 + p128 - sub) % p128) as u64;
            }
        }
        rank += 1;
    }
    rank
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse.
    let (mut base, mut exp, mut acc) = (a as u128, p - 2, 1u128);
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u64
}

/// Trial-division primality; the moduli used here stay below 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
