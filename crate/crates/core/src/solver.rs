//! Jacobi-preconditioned conjugate gradient for symmetric diagonally dominant
//! positive definite systems.

use crate::{Error, Result, SolveFailure};

/// Symmetric sparse matrix in CSR form. Columns within a row are sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymmetricMatrix {
    offsets: Vec<usize>,
    columns: Vec<usize>,
    values: Vec<f64>,
}

impl SparseSymmetricMatrix {
    /// Builds from `(row, col, value)` triplets. Repeated coordinates are summed.
    /// Fails if the result is not symmetric.
    pub fn from_triplets(dimension: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut entries: Vec<(usize, usize, f64)> = Vec::with_capacity(triplets.len());
        for &(i, j, v) in triplets {
            if i >= dimension || j >= dimension {
                return Err(Error::IndexOutOfRange {
                    index: i.max(j),
                    len: dimension,
                });
            }
            entries.push((i, j, v));
        }
        entries.sort_unstable_by_key(|e| (e.0, e.1));
        let mut offsets = vec![0usize; dimension + 1];
        let mut columns = Vec::with_capacity(entries.len());
        let mut values: Vec<f64> = Vec::with_capacity(entries.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in entries {
            if last == Some((i, j)) {
                *values.last_mut().unwrap() += v;
            } else {
                columns.push(j);
                values.push(v);
                offsets[i + 1] += 1;
                last = Some((i, j));
            }
        }
        for i in 0..dimension {
            offsets[i + 1] += offsets[i];
        }
        let m = Self {
            offsets,
            columns,
            values,
        };
        if !m.is_symmetric() {
            return Err(Error::Argument("matrix is not symmetric".into()));
        }
        Ok(m)
    }

    /// Assembles directly from per-row sorted `(column, value)` lists without
    /// checking symmetry. Callers guarantee the structure.
    pub(crate) fn from_sorted_rows(rows: Vec<Vec<(usize, f64)>>) -> Self {
        let mut offsets = Vec::with_capacity(rows.len() + 1);
        offsets.push(0);
        let total = rows.iter().map(Vec::len).sum();
        let mut columns = Vec::with_capacity(total);
        let mut values = Vec::with_capacity(total);
        for row in rows {
            for (c, v) in row {
                columns.push(c);
                values.push(v);
            }
            offsets.push(columns.len());
        }
        Self {
            offsets,
            columns,
            values,
        }
    }

    pub fn identity(dimension: usize) -> Self {
        Self::from_sorted_rows((0..dimension).map(|i| vec![(i, 1.0)]).collect())
    }

    pub fn from_dense(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut triplets = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Argument("dense matrix is not square".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                if v != 0.0 {
                    triplets.push((i, j, v));
                }
            }
        }
        Self::from_triplets(n, &triplets)
    }

    pub fn dimension(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// `(column, value)` pairs of row `i`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.offsets[i]..self.offsets[i + 1];
        self.columns[r.clone()]
            .iter()
            .copied()
            .zip(self.values[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let r = self.offsets[i]..self.offsets[i + 1];
        match self.columns[r.clone()].binary_search(&j) {
            Ok(p) => self.values[r.start + p],
            Err(_) => 0.0,
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dimension()).map(|i| self.get(i, i)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dimension();
        let mut out = vec![vec![0.0; n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in self.row(i) {
                row[j] = v;
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dimension()).all(|i| self.row(i).all(|(j, v)| self.get(j, i) == v))
    }

    pub fn is_diagonally_dominant(&self) -> bool {
        (0..self.dimension()).all(|i| {
            let (diag, off) = self.row(i).fold((0.0, 0.0), |(d, o), (j, v)| {
                if j == i {
                    (d + v.abs(), o)
                } else {
                    (d, o + v.abs())
                }
            });
            diag >= off
        })
    }

    /// `y = A x`
    pub fn mul_vec_into(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i).map(|(j, v)| v * x[j]).sum();
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dimension()];
        self.mul_vec_into(x, &mut y);
        y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Preconditioner {
    None,
    #[default]
    Jacobi,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveParams {
    /// Target for `‖Ax − b‖₂ / ‖b‖₂`.
    pub rel_tolerance: f64,
    /// `None` means ten times the dimension.
    pub max_iterations: Option<usize>,
    pub preconditioner: Preconditioner,
}

impl Default for SolveParams {
    fn default() -> Self {
        Self {
            rel_tolerance: 1e-10,
            max_iterations: None,
            preconditioner: Preconditioner::Jacobi,
        }
    }
}

impl SolveParams {
    pub fn with_tolerance(rel_tolerance: f64) -> Self {
        Self {
            rel_tolerance,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tolerance > 0.0) {
            return Err(Error::Argument("rel_tolerance must be positive".into()));
        }
        if self.max_iterations == Some(0) {
            return Err(Error::Argument("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// True residual `‖Ax − b‖₂` of the returned iterate.
    pub residual: f64,
}

/// True residual is recomputed from scratch this often.
const RESIDUAL_REFRESH: usize = 50;

/// Solves `A x = b` to `‖Ax − b‖₂ ≤ rel_tolerance · ‖b‖₂`.
pub fn solve(a: &SparseSymmetricMatrix, b: &[f64], params: &SolveParams) -> Result<Solution> {
    solve_traced(a, b, params, |_, _| {})
}

/// Like [`solve`], reporting `(iteration, sqrt(rᵀ M⁻¹ r))` at every true
/// residual checkpoint.
pub fn solve_traced<F>(
    a: &SparseSymmetricMatrix,
    b: &[f64],
    params: &SolveParams,
    mut checkpoint: F,
) -> Result<Solution>
where
    F: FnMut(usize, f64),
{
    params.validate()?;
    let n = a.dimension();
    if b.len() != n {
        return Err(Error::Argument(format!(
            "right-hand side has length {}, matrix dimension is {n}",
            b.len()
        )));
    }
    let b_norm = norm(b);
    if b_norm == 0.0 {
        return Ok(Solution {
            x: vec![0.0; n],
            iterations: 0,
            residual: 0.0,
        });
    }
    let max_iterations = params.max_iterations.unwrap_or(10 * n.max(1));
    let target = params.rel_tolerance * b_norm;

    let inv_diag: Vec<f64> = match params.preconditioner {
        Preconditioner::Jacobi => a
            .diagonal()
            .into_iter()
            .map(|d| if d != 0.0 { 1.0 / d } else { 1.0 })
            .collect(),
        Preconditioner::None => vec![1.0; n],
    };

    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(r, d)| r * d).collect();
    let mut p = z.clone();
    let mut ap = vec![0.0; n];
    let mut rz = dot(&r, &z);
    checkpoint(0, rz.max(0.0).sqrt());

    let mut best = (b_norm, x.clone());
    let mut iterations = 0;
    while iterations < max_iterations {
        a.mul_vec_into(&p, &mut ap);
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            break;
        }
        let step = rz / pap;
        for i in 0..n {
            x[i] += step * p[i];
            r[i] -= step * ap[i];
        }
        iterations += 1;

        let recursive_converged = norm(&r) <= target;
        if recursive_converged || iterations % RESIDUAL_REFRESH == 0 {
            r = true_residual(a, &x, b);
            let res = norm(&r);
            if res < best.0 {
                best = (res, x.clone());
            }
            for i in 0..n {
                z[i] = r[i] * inv_diag[i];
            }
            let rz_true = dot(&r, &z);
            checkpoint(iterations, rz_true.max(0.0).sqrt());
            if res <= target {
                return Ok(Solution {
                    x,
                    iterations,
                    residual: res,
                });
            }
        } else {
            for i in 0..n {
                z[i] = r[i] * inv_diag[i];
            }
        }
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }

    let final_res = residual_norm(a, &x, b)?;
    if final_res <= target {
        return Ok(Solution {
            x,
            iterations,
            residual: final_res,
        });
    }
    if final_res < best.0 {
        best = (final_res, x);
    }
    Err(Error::NoConvergence(Box::new(SolveFailure {
        x: best.1,
        iterations,
        residual: best.0,
    })))
}

fn true_residual(a: &SparseSymmetricMatrix, x: &[f64], b: &[f64]) -> Vec<f64> {
    let mut r = a.mul_vec(x);
    for (ri, bi) in r.iter_mut().zip(b) {
        *ri = bi - *ri;
    }
    r
}

/// `‖A x − b‖₂`
pub fn residual_norm(a: &SparseSymmetricMatrix, x: &[f64], b: &[f64]) -> Result<f64> {
    let n = a.dimension();
    if x.len() != n || b.len() != n {
        return Err(Error::Argument(format!(
            "dimension mismatch: matrix {n}, x {}, b {}",
            x.len(),
            b.len()
        )));
    }
    Ok(norm(&true_residual(a, x, b)))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_returns_rhs() {
        let a = SparseSymmetricMatrix::identity(5);
        let b = [1.0, 2.0, 3.0, 4.0, 5.0];
        let sol = solve(&a, &b, &SolveParams::default()).unwrap();
        assert_eq!(sol.x, b);
        assert_eq!(sol.residual, 0.0);
    }

    #[test]
    fn two_by_two() {
        let a = SparseSymmetricMatrix::from_dense(&[vec![2.0, -1.0], vec![-1.0, 2.0]]).unwrap();
        let sol = solve(&a, &[1.0, 1.0], &SolveParams::default()).unwrap();
        for xi in sol.x {
            assert!((xi - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_rhs_short_circuits() {
        let a = SparseSymmetricMatrix::identity(3);
        let sol = solve(&a, &[0.0; 3], &SolveParams::default()).unwrap();
        assert_eq!((sol.x, sol.iterations), (vec![0.0; 3], 0));
    }

    #[test]
    fn dimension_mismatch() {
        let a = SparseSymmetricMatrix::identity(3);
        assert!(matches!(
            solve(&a, &[1.0; 2], &SolveParams::default()),
            Err(Error::Argument(_))
        ));
        assert!(residual_norm(&a, &[0.0; 3], &[0.0; 4]).is_err());
    }

    #[test]
    fn residual_norm_cases() {
        let a = SparseSymmetricMatrix::identity(4);
        let b = [3.0, 0.0, 4.0, 0.0];
        assert!(residual_norm(&a, &b, &b).unwrap() < 1e-12);
        assert!((residual_norm(&a, &[0.0; 4], &b).unwrap() - 5.0).abs() < 1e-12);
        let perturbed = [3.0 - 0.25, 0.0, 4.0, 0.0];
        assert!((residual_norm(&a, &perturbed, &b).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn rejects_asymmetric_triplets() {
        let err = SparseSymmetricMatrix::from_triplets(2, &[(0, 1, 1.0), (0, 0, 2.0), (1, 1, 2.0)]);
        assert!(err.is_err());
    }

    #[test]
    fn non_convergence_carries_best_iterate() {
        // 1D Laplacian with Dirichlet ends needs ~n iterations; cap at 2.
        let n = 30;
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 2.0));
            if i + 1 < n {
                t.push((i, i + 1, -1.0));
                t.push((i + 1, i, -1.0));
            }
        }
        let a = SparseSymmetricMatrix::from_triplets(n, &t).unwrap();
        let params = SolveParams {
            max_iterations: Some(2),
            ..Default::default()
        };
        match solve(&a, &vec![1.0; n], &params) {
            Err(Error::NoConvergence(f)) => {
                assert_eq!(f.iterations, 2);
                assert_eq!(f.x.len(), n);
                assert!(f.residual > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn invalid_params() {
        let a = SparseSymmetricMatrix::identity(1);
        let bad = SolveParams::with_tolerance(0.0);
        assert!(solve(&a, &[1.0], &bad).is_err());
    }
}
