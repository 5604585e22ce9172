//! Linear solvers for the Newton correction: restarted GMRES with a right
//! preconditioner, and dense LU for small or diagnostic problems.

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct GmresConfig {
    pub restart: usize,
    pub max_iter: usize,
    /// Stop when `‖b − Ax‖ ≤ rel_tol·‖b‖`.
    pub rel_tol: f64,
}

impl Default for GmresConfig {
    fn default() -> Self {
        Self { restart: 120, max_iter: 2000, rel_tol: 1e-11 }
    }
}

#[derive(Debug, Clone)]
pub struct GmresOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub rel_residual: f64,
    pub converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Solves `A x = b` with `A M⁻¹ y = b`, `x = M⁻¹ y`.
///
/// `apply` computes `A v`; `precond` computes `M⁻¹ v`.
pub fn gmres(
    mut apply: impl FnMut(&[f64]) -> Vec<f64>,
    precond: impl Fn(&[f64]) -> Vec<f64>,
    b: &[f64],
    cfg: GmresConfig,
) -> GmresOutcome {
    let n = b.len();
    let bnorm = norm(b);
    let mut x = vec![0.0; n];
    if bnorm == 0.0 {
        return GmresOutcome { x, iterations: 0, rel_residual: 0.0, converged: true };
    }
    let m = cfg.restart.max(1).min(n.max(1));
    let mut iterations = 0;
    let mut r = b.to_vec();
    let mut rel = 1.0;

    while iterations < cfg.max_iter {
        let beta = norm(&r);
        rel = beta / bnorm;
        if rel <= cfg.rel_tol {
            return GmresOutcome { x, iterations, rel_residual: rel, converged: true };
        }
        let mut basis: Vec<Vec<f64>> = vec![r.iter().map(|v| v / beta).collect()];
        let mut h = vec![vec![0.0; m]; m + 1];
        let (mut cs, mut sn) = (vec![0.0; m], vec![0.0; m]);
        let mut g = vec![0.0; m + 1];
        g[0] = beta;
        let mut k_used = 0;

        for j in 0..m {
            iterations += 1;
            let mut w = apply(&precond(&basis[j]));
            // modified Gram–Schmidt, twice for stability near breakdown
            for _ in 0..2 {
                for (i, v) in basis.iter().enumerate() {
                    let hij = dot(&w, v);
                    h[i][j] += hij;
                    axpy(&mut w, -hij, v);
                }
            }
            let hn = norm(&w);
            h[j + 1][j] = hn;
            for i in 0..j {
                let t = cs[i] * h[i][j] + sn[i] * h[i + 1][j];
                h[i + 1][j] = -sn[i] * h[i][j] + cs[i] * h[i + 1][j];
                h[i][j] = t;
            }
            let d = h[j][j].hypot(h[j + 1][j]);
            if d == 0.0 {
                k_used = j;
                break;
            }
            cs[j] = h[j][j] / d;
            sn[j] = h[j + 1][j] / d;
            h[j][j] = d;
            h[j + 1][j] = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] *= cs[j];
            k_used = j + 1;
            rel = g[j + 1].abs() / bnorm;
            if rel <= cfg.rel_tol || hn == 0.0 || iterations >= cfg.max_iter {
                break;
            }
            basis.push(w.iter().map(|v| v / hn).collect());
        }

        // back substitution for the least-squares coefficients
        let mut y = vec![0.0; k_used];
        for i in (0..k_used).rev() {
            let s: f64 = (i + 1..k_used).map(|l| h[i][l] * y[l]).sum();
            y[i] = (g[i] - s) / h[i][i];
        }
        let mut z = vec![0.0; n];
        for (yi, v) in y.iter().zip(&basis) {
            axpy(&mut z, *yi, v);
        }
        let dx = precond(&z);
        axpy(&mut x, 1.0, &dx);

        let ax = apply(&x);
        r = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        if k_used == 0 {
            break;
        }
    }
    let rel_true = norm(&r) / bnorm;
    GmresOutcome { x, iterations, rel_residual: rel_true, converged: rel_true <= cfg.rel_tol.max(rel) }
}

/// Dense LU solve; errors on a numerically singular matrix.
pub fn dense_solve(a: DMatrix<f64>, b: &[f64]) -> Result<Vec<f64>> {
    if a.nrows() != a.ncols() || a.nrows() != b.len() {
        return Err(Error::LinearSolve(format!(
            "shape {}x{} with rhs {}",
            a.nrows(),
            a.ncols(),
            b.len()
        )));
    }
    let lu = a.lu();
    let x = lu
        .solve(&DVector::from_column_slice(b))
        .ok_or_else(|| Error::LinearSolve("singular matrix".into()))?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::LinearSolve("non-finite solution".into()));
    }
    Ok(x.iter().copied().collect())
}

/// Assembles the matrix of a linear map column by column.
pub fn assemble(n: usize, mut apply: impl FnMut(&[f64]) -> Vec<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = apply(&e);
        e[j] = 0.0;
        for (i, v) in col.iter().enumerate() {
            m[(i, j)] = *v;
        }
    }
    m
}
