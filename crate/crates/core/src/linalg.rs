//! Dense Gaussian elimination with complete pivoting.

use crate::error::{Error, Result};

/// Solution of a square dense system, possibly rank deficient.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSolution {
    pub x: Vec<f64>,
    pub rank: usize,
}

/// Solves `A·x = b` by elimination with complete pivoting.
///
/// Pivots below `rel_tol·max|A|` end the elimination. The remaining equations
/// must then be consistent (`|b_i| ≤ rel_tol·max(1, max|b|)`), and the free
/// unknowns are set to zero; otherwise the system is reported singular.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>, rel_tol: f64) -> Result<DenseSolution> {
    let n = b.len();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument("matrix must be square and match the right-hand side".into()));
    }
    let a_scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let b_scale = b.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut cols: Vec<usize> = (0..n).collect();
    let mut rank = n;

    for k in 0..n {
        let (mut pi, mut pj, mut best) = (k, k, 0.0);
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, v) in row.iter().enumerate().skip(k) {
                if v.abs() > best {
                    (pi, pj, best) = (i, j, v.abs());
                }
            }
        }
        if best <= rel_tol * a_scale || best == 0.0 {
            rank = k;
            break;
        }
        a.swap(k, pi);
        b.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            cols.swap(k, pj);
        }
        let pivot_row = a[k].clone();
        for i in k + 1..n {
            let factor = a[i][k] / pivot_row[k];
            if factor == 0.0 {
                continue;
            }
            for (aij, pj) in a[i].iter_mut().zip(&pivot_row).skip(k) {
                *aij -= factor * pj;
            }
            b[i] -= factor * b[k];
        }
    }

    if let Some(i) = (rank..n).find(|&i| b[i].abs() > rel_tol * b_scale) {
        return Err(Error::SingularSystem(format!(
            "rank {rank} of {n}; equation {i} is inconsistent (residual {})",
            b[i]
        )));
    }

    let mut y = vec![0.0; n];
    for k in (0..rank).rev() {
        let s: f64 = (k + 1..rank).map(|j| a[k][j] * y[j]).sum();
        y[k] = (b[k] - s) / a[k][k];
    }
    let mut x = vec![0.0; n];
    for (k, &c) in cols.iter().enumerate() {
        x[c] = y[k];
    }
    Ok(DenseSolution { x, rank })
}
