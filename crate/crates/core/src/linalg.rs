//! Dense exact linear algebra over ℚ(i): row reduction, kernels, solves.

use num_traits::{One, Zero};

use crate::scalar::Gq;

/// Reduces `rows` (each of length `ncols`) to reduced row echelon form in place.
/// Returns the pivot column of each non-zero row, in order.
pub fn rref(rows: &mut Vec<Vec<Gq>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Gq::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..ncols {
                let d = &f * &rows[r][j];
                rows[i][j] = &rows[i][j] - &d;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(matrix: &[Vec<Gq>], ncols: usize) -> usize {
    let mut m = matrix.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : A x = 0}` for `A` given as rows of length `ncols`.
pub fn kernel(matrix: &[Vec<Gq>], ncols: usize) -> Vec<Vec<Gq>> {
    let mut m = matrix.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Gq::zero(); ncols];
            v[f] = Gq::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solves `A x = b` where `A` is given by its columns. Returns the unique
/// solution, or `None` if the system is inconsistent or underdetermined.
pub fn solve_columns(columns: &[Vec<Gq>], b: &[Gq]) -> Option<Vec<Gq>> {
    let n = columns.len();
    let mut rows: Vec<Vec<Gq>> = (0..b.len())
        .map(|i| {
            let mut row: Vec<Gq> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows, n + 1);
    if pivots.contains(&n) || pivots.len() < n {
        return None;
    }
    Some(rows.iter().map(|r| r[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{i, int};

    #[test]
    fn kernel_of_rank_one() {
        let a = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]];
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Gq = a[0].iter().zip(v).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn complex_solve() {
        // [[1, i], [i, 1]] x = [1 + i, 1 + i]  ⇒  x = [(1+i)/(1+i), ...]
        let cols = vec![vec![int(1), i()], vec![i(), int(1)]];
        let b = vec![int(1) + i(), int(1) + i()];
        let x = solve_columns(&cols, &b).unwrap();
        let check0 = &x[0] + &(i() * &x[1]);
        assert_eq!(check0, b[0]);
    }

    #[test]
    fn inconsistent_is_none() {
        let cols = vec![vec![int(1), int(1)]];
        assert!(solve_columns(&cols, &[int(1), int(2)]).is_none());
    }
}
