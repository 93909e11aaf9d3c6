//! Linear solvers for the implicit step systems.
//!
//! Every implicit scheme here solves repeated systems with one constant
//! matrix, so the default path factorizes once with a sparse LU and reuses
//! the factors for the whole run. A BiCGStab iteration with a block-Jacobi
//! preconditioner sits behind the same handle for matrices where a direct
//! factorization is unwanted; both paths are deterministic because faer is
//! pinned to sequential execution.

use std::ops::Range;
use std::sync::Once;

use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::sparse::Csr;

static SEQUENTIAL: Once = Once::new();

fn force_sequential() {
    SEQUENTIAL.call_once(|| faer::set_global_parallelism(faer::Par::Seq));
}

/// Which backend a [`LinearSolver`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverKind {
    /// Sparse LU factorization, reused across solves.
    Direct,
    /// BiCGStab with a block-Jacobi preconditioner.
    BiCgStab,
}

/// A factorized (or preconditioned) system ready for repeated solves.
pub struct LinearSolver {
    n: usize,
    backend: Backend,
}

enum Backend {
    Direct(faer::sparse::linalg::solvers::Lu<usize, f64>),
    Iterative {
        matrix: Csr,
        precon: BlockJacobi,
        tol: f64,
        max_iter: usize,
    },
}

/// Dense LU factorizations of the diagonal blocks of a matrix.
struct BlockJacobi {
    blocks: Vec<(Range<usize>, nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>)>,
}

impl BlockJacobi {
    fn new(matrix: &Csr, partition: &[Range<usize>]) -> Result<Self> {
        let mut blocks = Vec::with_capacity(partition.len());
        for range in partition {
            let m = range.len();
            let mut dense = DMatrix::zeros(m, m);
            for i in range.clone() {
                let (cols, vals) = matrix.row(i);
                for (c, v) in cols.iter().zip(vals) {
                    let c = *c as usize;
                    if range.contains(&c) {
                        dense[(i - range.start, c - range.start)] = *v;
                    }
                }
            }
            let lu = dense.lu();
            if !lu.is_invertible() {
                return Err(Error::Solver(format!(
                    "singular diagonal block at rows {}..{}",
                    range.start, range.end
                )));
            }
            blocks.push((range.clone(), lu));
        }
        Ok(BlockJacobi { blocks })
    }

    fn apply(&self, r: &[f64], z: &mut [f64]) {
        z.fill(0.0);
        for (range, lu) in &self.blocks {
            let local = DVector::from_column_slice(&r[range.clone()]);
            let sol = lu.solve(&local).expect("factorized block");
            z[range.clone()].copy_from_slice(sol.as_slice());
        }
    }
}

impl LinearSolver {
    /// Factorizes the matrix with a sparse LU.
    pub fn direct(matrix: &Csr) -> Result<Self> {
        force_sequential();
        if matrix.nrows != matrix.ncols {
            return Err(Error::Solver(format!(
                "matrix is {}x{}, expected square",
                matrix.nrows, matrix.ncols
            )));
        }
        let mut triplets = Vec::with_capacity(matrix.nnz());
        for i in 0..matrix.nrows {
            let (cols, vals) = matrix.row(i);
            for (c, v) in cols.iter().zip(vals) {
                triplets.push(Triplet::new(i, *c as usize, *v));
            }
        }
        let sparse = SparseColMat::try_new_from_triplets(matrix.nrows, matrix.ncols, &triplets)
            .map_err(|e| Error::Solver(format!("building sparse matrix failed: {e:?}")))?;
        let lu = sparse
            .sp_lu()
            .map_err(|e| Error::Solver(format!("sparse LU failed: {e:?}")))?;
        Ok(LinearSolver {
            n: matrix.nrows,
            backend: Backend::Direct(lu),
        })
    }

    /// Prepares a BiCGStab solver preconditioned by dense factorizations of
    /// the diagonal blocks described by `partition` (disjoint index ranges).
    pub fn bicgstab(
        matrix: &Csr,
        partition: &[Range<usize>],
        tol: f64,
        max_iter: usize,
    ) -> Result<Self> {
        if matrix.nrows != matrix.ncols {
            return Err(Error::Solver(format!(
                "matrix is {}x{}, expected square",
                matrix.nrows, matrix.ncols
            )));
        }
        let precon = BlockJacobi::new(matrix, partition)?;
        Ok(LinearSolver {
            n: matrix.nrows,
            backend: Backend::Iterative {
                matrix: matrix.clone(),
                precon,
                tol,
                max_iter,
            },
        })
    }

    /// Solves for one right-hand side.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        assert_eq!(rhs.len(), self.n);
        match &self.backend {
            Backend::Direct(lu) => {
                let b = faer::Mat::from_fn(self.n, 1, |i, _| rhs[i]);
                let x = lu.solve(&b);
                Ok((0..self.n).map(|i| x[(i, 0)]).collect())
            }
            Backend::Iterative {
                matrix,
                precon,
                tol,
                max_iter,
            } => bicgstab_iterate(matrix, precon, rhs, *tol, *max_iter),
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn bicgstab_iterate(
    a: &Csr,
    precon: &BlockJacobi,
    b: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<Vec<f64>> {
    let n = b.len();
    let b_norm = norm(b);
    if b_norm == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let r_hat = r.clone();
    let mut rho = 1.0;
    let mut alpha = 1.0;
    let mut omega = 1.0;
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut p_hat = vec![0.0; n];
    let mut s_hat = vec![0.0; n];
    let mut t = vec![0.0; n];

    for _ in 0..max_iter {
        let rho_next = dot(&r_hat, &r);
        if rho_next.abs() < f64::MIN_POSITIVE {
            return Err(Error::Solver("BiCGStab breakdown (rho = 0)".into()));
        }
        let beta = (rho_next / rho) * (alpha / omega);
        rho = rho_next;
        for i in 0..n {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        precon.apply(&p, &mut p_hat);
        a.matvec(&p_hat, &mut v);
        alpha = rho / dot(&r_hat, &v);
        // s = r - alpha v reuses the residual storage
        for i in 0..n {
            r[i] -= alpha * v[i];
        }
        if norm(&r) <= tol * b_norm {
            for i in 0..n {
                x[i] += alpha * p_hat[i];
            }
            return Ok(x);
        }
        precon.apply(&r, &mut s_hat);
        a.matvec(&s_hat, &mut t);
        let tt = dot(&t, &t);
        if tt == 0.0 {
            return Err(Error::Solver("BiCGStab breakdown (t = 0)".into()));
        }
        omega = dot(&t, &r) / tt;
        for i in 0..n {
            x[i] += alpha * p_hat[i] + omega * s_hat[i];
            r[i] -= omega * t[i];
        }
        if norm(&r) <= tol * b_norm {
            return Ok(x);
        }
        if omega == 0.0 {
            return Err(Error::Solver("BiCGStab breakdown (omega = 0)".into()));
        }
    }
    Err(Error::Solver(format!(
        "BiCGStab did not converge in {max_iter} iterations (residual {:.3e})",
        norm(&r) / b_norm
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::Triplets;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_system(n: usize, seed: u64) -> (Csr, Vec<f64>) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut t = Triplets::new(n, n);
        for i in 0..n {
            let mut row_sum = 0.0;
            for _ in 0..4 {
                let j = rng.gen_range(0..n);
                if j == i {
                    continue;
                }
                let v: f64 = rng.gen_range(-1.0..1.0);
                t.push(i, j, v);
                row_sum += v.abs();
            }
            t.push(i, i, row_sum + 1.0 + rng.gen_range(0.0..1.0));
        }
        let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        (t.into_csr(), b)
    }

    #[test]
    fn direct_solves_small_system() {
        let mut t = Triplets::new(2, 2);
        t.push(0, 0, 2.0);
        t.push(0, 1, 1.0);
        t.push(1, 0, 1.0);
        t.push(1, 1, 3.0);
        let solver = LinearSolver::direct(&t.into_csr()).unwrap();
        let x = solver.solve(&[5.0, 10.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-13);
        assert!((x[1] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn direct_matches_dense_factorization() {
        let (a, b) = random_system(40, 7);
        let solver = LinearSolver::direct(&a).unwrap();
        let x = solver.solve(&b).unwrap();
        let dense = a.to_dense();
        let xd = dense
            .lu()
            .solve(&nalgebra::DVector::from_column_slice(&b))
            .unwrap();
        for i in 0..40 {
            assert!((x[i] - xd[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn bicgstab_matches_direct() {
        let (a, b) = random_system(64, 3);
        let partition: Vec<_> = (0..8).map(|k| 8 * k..8 * (k + 1)).collect();
        let direct = LinearSolver::direct(&a).unwrap();
        let iterative = LinearSolver::bicgstab(&a, &partition, 1e-13, 500).unwrap();
        let xd = direct.solve(&b).unwrap();
        let xi = iterative.solve(&b).unwrap();
        for i in 0..64 {
            assert!((xd[i] - xi[i]).abs() < 1e-8, "entry {i}: {} vs {}", xd[i], xi[i]);
        }
    }

    #[test]
    fn singular_matrices_are_reported() {
        let mut t = Triplets::new(2, 2);
        t.push(0, 0, 1.0);
        t.push(0, 1, 2.0);
        t.push(1, 0, 2.0);
        t.push(1, 1, 4.0);
        let m = t.into_csr();
        assert!(LinearSolver::direct(&m).is_err() || {
            // some LU backends only fail at solve time for exact singularity;
            // accept either as long as the block-Jacobi path reports it
            LinearSolver::bicgstab(&m, &[0..2], 1e-10, 10).is_err()
        });
    }
}
