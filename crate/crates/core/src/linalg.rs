//! Extremal eigenpairs of symmetric operators: dense decomposition for small
//! problems, Lanczos with full reorthogonalisation otherwise.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CsbmError, Result};

/// At or below this dimension the dense solver is used directly.
pub const DENSE_CUTOFF: usize = 400;

/// Dense fallback is attempted up to this dimension when Lanczos stalls.
pub const DENSE_FALLBACK_MAX: usize = 4096;

/// Convergence tolerance on Ritz residuals, relative to the spectral norm estimate.
const RITZ_TOL: f64 = 1e-11;

/// Acceptance tolerance on final residuals `||A u - lambda u||`, relative to the norm estimate.
pub const RESIDUAL_TOL: f64 = 1e-8;

const START_SEED: u64 = 0x6c61_6e63_7a6f_7321;

/// A real symmetric linear operator.
pub trait SymmetricOperator: Sync {
    fn dim(&self) -> usize;

    /// `out = A x`.
    fn apply(&self, x: &[f64], out: &mut [f64]);

    /// Dense copy of the operator.
    fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        let mut e = vec![0.0; n];
        let mut col = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            self.apply(&e, &mut col);
            m.column_mut(j).copy_from_slice(&col);
            e[j] = 0.0;
        }
        m
    }
}

impl SymmetricOperator for DMatrix<f64> {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        let y = self * DVector::from_column_slice(x);
        out.copy_from_slice(y.as_slice());
    }

    fn to_dense(&self) -> DMatrix<f64> {
        self.clone()
    }
}

/// Eigenpairs sorted by descending eigenvalue; `vectors[l]` is unit-norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// The `top` algebraically largest and `bottom` algebraically smallest
/// eigenpairs, concatenated in descending order of eigenvalue.
pub fn extremal_eigenpairs<A: SymmetricOperator + ?Sized>(op: &A, top: usize, bottom: usize) -> Result<Eigenpairs> {
    let n = op.dim();
    if top + bottom > n {
        return Err(CsbmError::InvalidArgument(format!("requested {} eigenpairs of a {n}x{n} operator", top + bottom)));
    }
    if top + bottom == 0 {
        return Ok(Eigenpairs { values: vec![], vectors: vec![] });
    }
    if n <= DENSE_CUTOFF {
        return dense_extremal(&op.to_dense(), top, bottom);
    }
    match lanczos_extremal(op, top, bottom) {
        Ok(pairs) => Ok(pairs),
        Err(e) if n <= DENSE_FALLBACK_MAX => dense_extremal(&op.to_dense(), top, bottom).map_err(|_| e),
        Err(e) => Err(e),
    }
}

/// Dense symmetric decomposition followed by extremal selection.
pub fn dense_extremal(m: &DMatrix<f64>, top: usize, bottom: usize) -> Result<Eigenpairs> {
    let n = m.nrows();
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 0)
        .ok_or_else(|| CsbmError::EigensolverFailure("dense symmetric decomposition did not converge".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let chosen = order[..top].iter().chain(&order[n - bottom..]);
    let mut values = Vec::with_capacity(top + bottom);
    let mut vectors = Vec::with_capacity(top + bottom);
    for &idx in chosen {
        values.push(eig.eigenvalues[idx]);
        vectors.push(eig.eigenvectors.column(idx).iter().copied().collect());
    }
    Ok(Eigenpairs { values, vectors })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Removes the components of `w` along every basis vector, twice.
fn reorthogonalize(basis: &[Vec<f64>], w: &mut [f64]) {
    for _ in 0..2 {
        for v in basis {
            let c = dot(v, w);
            axpy(-c, v, w);
        }
    }
}

fn random_unit_orthogonal(basis: &[Vec<f64>], n: usize, rng: &mut ChaCha8Rng) -> Option<Vec<f64>> {
    for _ in 0..8 {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        reorthogonalize(basis, &mut v);
        let nv = norm(&v);
        if nv > 1e-8 {
            v.iter_mut().for_each(|x| *x /= nv);
            return Some(v);
        }
    }
    None
}

/// Lanczos iteration with full reorthogonalisation. The Krylov space grows
/// until the requested Ritz pairs have converged or the space is exhausted.
pub fn lanczos_extremal<A: SymmetricOperator + ?Sized>(op: &A, top: usize, bottom: usize) -> Result<Eigenpairs> {
    let n = op.dim();
    let want = top + bottom;
    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    let mut target = (3 * want + 30).min(n);
    let mut current = random_unit_orthogonal(&basis, n, &mut rng)
        .ok_or_else(|| CsbmError::EigensolverFailure("could not draw a start vector".into()))?;

    loop {
        while basis.len() < target {
            op.apply(&current, &mut w);
            let alpha = dot(&current, &w);
            if let Some(prev) = basis.last() {
                axpy(-betas.last().copied().unwrap_or(0.0), prev, &mut w);
            }
            axpy(-alpha, &current, &mut w);
            basis.push(std::mem::take(&mut current));
            reorthogonalize(&basis, &mut w);
            alphas.push(alpha);
            let beta = norm(&w);
            let scale = alphas.iter().fold(0.0f64, |m, a| m.max(a.abs())).max(1e-300);
            if basis.len() == n {
                betas.push(0.0);
                break;
            }
            if beta <= 1e-10 * scale {
                // Invariant subspace: restart in its orthogonal complement.
                betas.push(0.0);
                match random_unit_orthogonal(&basis, n, &mut rng) {
                    Some(v) => current = v,
                    None => break,
                }
            } else {
                betas.push(beta);
                current = w.iter().map(|x| x / beta).collect();
            }
            w.iter_mut().for_each(|x| *x = 0.0);
        }

        let m = basis.len();
        let mut t = DMatrix::zeros(m, m);
        for j in 0..m {
            t[(j, j)] = alphas[j];
            if j + 1 < m {
                t[(j, j + 1)] = betas[j];
                t[(j + 1, j)] = betas[j];
            }
        }
        let eig = SymmetricEigen::try_new(t, f64::EPSILON, 0)
            .ok_or_else(|| CsbmError::EigensolverFailure("tridiagonal decomposition did not converge".into()))?;
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        if want > m {
            return Err(CsbmError::EigensolverFailure(format!("Krylov space of dimension {m} is too small")));
        }
        let chosen: Vec<usize> = order[..top].iter().chain(&order[m - bottom..]).copied().collect();
        let norm_est = eig.eigenvalues.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1e-300);
        let last_beta = betas[m - 1];
        let converged = chosen
            .iter()
            .all(|&c| (last_beta * eig.eigenvectors[(m - 1, c)]).abs() <= RITZ_TOL * norm_est);

        if converged || m == n {
            let mut values = Vec::with_capacity(want);
            let mut vectors = Vec::with_capacity(want);
            let mut au = vec![0.0; n];
            for &c in &chosen {
                let mut u = vec![0.0; n];
                for (j, v) in basis.iter().enumerate() {
                    axpy(eig.eigenvectors[(j, c)], v, &mut u);
                }
                let nu = norm(&u);
                u.iter_mut().for_each(|x| *x /= nu);
                let lambda = eig.eigenvalues[c];
                op.apply(&u, &mut au);
                axpy(-lambda, &u, &mut au);
                if norm(&au) > RESIDUAL_TOL * norm_est {
                    return Err(CsbmError::EigensolverFailure(format!(
                        "residual {:.3e} for eigenvalue {lambda} exceeds tolerance",
                        norm(&au)
                    )));
                }
                values.push(lambda);
                vectors.push(u);
            }
            return Ok(Eigenpairs { values, vectors });
        }
        target = (target + target / 2).min(n);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_symmetric(n: usize, seed: u64) -> DMatrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v = rng.random::<f64>() - 0.5;
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }

    #[test]
    fn lanczos_matches_dense_on_planted_spectrum() {
        let n = 600;
        let mut m = random_symmetric(n, 3) * 0.2;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for &(lambda, _) in &[(30.0, 0), (-20.0, 1), (12.0, 2)] {
            let mut u: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
            let nu = norm(&u);
            u.iter_mut().for_each(|x| *x /= nu);
            let uu = DVector::from_vec(u);
            m += &uu * uu.transpose() * lambda;
        }
        let l = lanczos_extremal(&m, 2, 1).unwrap();
        let d = dense_extremal(&m, 2, 1).unwrap();
        for (a, b) in l.values.iter().zip(&d.values) {
            assert!((a - b).abs() < 1e-8 * b.abs().max(1.0), "{a} vs {b}");
        }
        for (u, v) in l.vectors.iter().zip(&d.vectors) {
            assert!((dot(u, v).abs() - 1.0).abs() < 1e-8);
        }
        assert!(l.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn full_krylov_space_on_small_rank_operator() {
        let n = 500;
        let mut m = DMatrix::zeros(n, n);
        m[(0, 0)] = 2.0;
        m[(1, 1)] = -1.0;
        let l = lanczos_extremal(&m, 1, 1).unwrap();
        assert!((l.values[0] - 2.0).abs() < 1e-10);
        assert!((l.values[1] + 1.0).abs() < 1e-10);
    }

    #[test]
    fn dense_selection_order() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -3.0, 5.0, 0.5]));
        let e = dense_extremal(&m, 2, 1).unwrap();
        assert_eq!(e.values, vec![5.0, 1.0, -3.0]);
        assert!(extremal_eigenpairs(&m, 3, 2).is_err());
    }
}
