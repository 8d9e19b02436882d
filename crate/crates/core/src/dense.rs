//! Dense Gaussian elimination, used as an independent reference for the
//! sparse solver and the absorption probabilities.

use crate::{Error, Result};

/// Solves `A X = B` for a square `A` and a column block `B` (row-major,
/// `b[i][j]` is row `i` of right-hand side `j`). Partial pivoting.
pub fn solve_many(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::Argument("dense system dimension mismatch".into()));
    }
    let cols = b.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb.iter()).copied().collect())
        .collect();

    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot][col].abs() < 1e-300 {
            return Err(Error::Argument("dense matrix is singular".into()));
        }
        m.swap(col, pivot);
        let (head, tail) = m.split_at_mut(col + 1);
        let prow = &head[col];
        for row in tail.iter_mut() {
            let f = row[col] / prow[col];
            if f != 0.0 {
                for k in col..n + cols {
                    row[k] -= f * prow[k];
                }
            }
        }
    }

    let mut x = vec![vec![0.0; cols]; n];
    for i in (0..n).rev() {
        for c in 0..cols {
            let mut s = m[i][n + c];
            for k in i + 1..n {
                s -= m[i][k] * x[k][c];
            }
            x[i][c] = s / m[i][i];
        }
    }
    Ok(x)
}

pub fn solve(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let block: Vec<Vec<f64>> = b.iter().map(|&v| vec![v]).collect();
    Ok(solve_many(a, &block)?.into_iter().map(|r| r[0]).collect())
}
