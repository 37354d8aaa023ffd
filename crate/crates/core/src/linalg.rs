//! Exact Gaussian elimination over the rationals and over F2.

use num_rational::BigRational;
use num_traits::Zero;

/// Row-reduces in place and returns the pivot columns.
fn echelon(m: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let factor = other[col].clone();
                for (x, p) in other.iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m = rows.to_vec();
    echelon(&mut m, ncols).len()
}

/// Solves an augmented system `[A | b]` with a unique solution; `None` if the
/// system is inconsistent or `A` lacks full column rank.
pub fn solve_exact(augmented: &[Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let n = augmented.first()?.len().checked_sub(1)?;
    let mut m = augmented.to_vec();
    let pivots = echelon(&mut m, n + 1);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

/// Rank over F2 of rows given as packed bit vectors.
pub fn rank_f2(rows: &[Vec<u64>]) -> usize {
    let mut m = rows.to_vec();
    let words = m.first().map(Vec::len).unwrap_or(0);
    let mut rank = 0;
    for col in 0..words * 64 {
        let (w, b) = (col / 64, col % 64);
        let Some(p) = (rank..m.len()).find(|&r| (m[r][w] >> b) & 1 == 1) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && (row[w] >> b) & 1 == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn solves_two_by_two() {
        let sys = vec![vec![q(1), q(1), q(3)], vec![q(1), q(-1), q(1)]];
        assert_eq!(solve_exact(&sys), Some(vec![q(2), q(1)]));
    }

    #[test]
    fn rejects_inconsistent() {
        let sys = vec![vec![q(1), q(1)], vec![q(2), q(3)]];
        assert_eq!(solve_exact(&sys), None);
    }

    #[test]
    fn f2_rank() {
        assert_eq!(rank_f2(&[vec![0b011], vec![0b110], vec![0b101]]), 2);
        assert_eq!(rank_f2(&[vec![0b001], vec![0b010]]), 2);
    }
}
