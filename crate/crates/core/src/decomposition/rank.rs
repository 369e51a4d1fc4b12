//! Exact rank of integer matrices.
//!
//! [`rank_exact`] runs fraction-free (Bareiss) elimination over arbitrary
//! precision integers, so no entry can overflow. [`rank_mod_p`] is the cheap
//! route: a matrix of full row rank modulo a prime has a non-vanishing maximal
//! minor, hence full row rank over `ℚ` as well. [`rank_full`] tries the prime
//! first and falls back to the exact elimination only when it is inconclusive.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Primes below `2^31`, so products fit in `u64`.
pub const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Rank over `ℚ` by Bareiss elimination.
pub fn rank_exact(matrix: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = matrix.iter().map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            for j in col + 1..cols {
                // Exact by Sylvester's identity.
                let v = (&pivot_row[col] * &row[j] - &row[col] * &pivot_row[j]) / &prev;
                row[j] = v;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot_row[col].abs();
        if prev.is_zero() {
            prev = BigInt::from(1);
        }
        rank += 1;
    }
    rank
}

/// Rank over `GF(p)`; `p` must be prime and below `2^32`.
pub fn rank_mod_p(matrix: &[Vec<i64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> =
        matrix.iter().map(|row| row.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for v in a[rank][col..].iter_mut() {
            *v = *v * inv % p;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + p - factor * y % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Whether the rows are linearly independent over `ℚ`.
pub fn rank_full(matrix: &[Vec<i64>]) -> bool {
    let rows = matrix.len();
    if rows == 0 {
        return true;
    }
    if rank_mod_p(matrix, PRIMES[0]) == rows {
        return true;
    }
    rank_exact(matrix) == rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        let id = vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]];
        assert_eq!(rank_exact(&id), 3);
        assert!(rank_full(&id));
        let tri = vec![vec![1, 1, -1], vec![0, -1, 1], vec![0, 0, 1]];
        assert!(rank_full(&tri));
        let dup = vec![vec![1, -1, 0], vec![1, -1, 0]];
        assert_eq!(rank_exact(&dup), 1);
        assert!(!rank_full(&dup));
        assert_eq!(rank_exact(&[]), 0);
        assert!(rank_full(&[]));
        assert_eq!(rank_exact(&[vec![0, 0], vec![0, 0]]), 0);
        // Rank over GF(2) drops, over Q it does not.
        let m = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_exact(&m), 2);
    }

    #[test]
    fn dependent_combination() {
        let m = vec![vec![1, 0, 1, -1], vec![0, 1, -1, 1], vec![1, 1, 0, 0]];
        assert_eq!(rank_exact(&m), 2);
        assert_eq!(rank_mod_p(&m, PRIMES[1]), 2);
        assert!(!rank_full(&m));
    }

    /// Determinant by cofactor expansion, for tiny matrices.
    fn det(m: &[Vec<i64>]) -> i128 {
        if m.is_empty() {
            return 1;
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] as i128 * det(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn square_full_rank_iff_nonzero_determinant(
            entries in proptest::collection::vec(-1i64..=1, 16)
        ) {
            let m: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            prop_assert_eq!(rank_exact(&m) == 4, det(&m) != 0);
            prop_assert_eq!(rank_full(&m), det(&m) != 0);
        }

        #[test]
        fn modular_and_exact_agree_on_sign_matrices(
            entries in proptest::collection::vec(-1i64..=1, 5 * 7)
        ) {
            let m: Vec<Vec<i64>> = entries.chunks(7).map(|c| c.to_vec()).collect();
            let exact = rank_exact(&m);
            for p in PRIMES {
                prop_assert_eq!(rank_mod_p(&m, p), exact);
            }
        }
    }
}
