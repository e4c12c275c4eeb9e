//! Signed adjacency encodings, reduced `k x k` matrices and their exception
//! sets, expected spectra, and extremal eigenpairs of sampled matrices.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

use crate::error::{CsbmError, Result};
use crate::linalg::{extremal_eigenpairs, SymmetricOperator};
use crate::model::{CensoredGraph, CommunityAssignment, EdgeStatus, ModelParams};

/// Default margin for eigenvalue magnitudes and gaps in [`exception_check`].
pub const DEFAULT_MARGIN: f64 = 1e-9;

/// Maximum number of draws in [`draw_valid_y_pair`].
pub const MAX_Y_DRAWS: usize = 1000;

/// Relative eigenvalue margin demanded of randomly drawn encodings.
pub const DRAW_RELATIVE_MARGIN: f64 = 0.05;

/// Minimum separation between the two drawn encodings.
pub const DRAW_MIN_SEPARATION: f64 = 0.5;

/// Encoding for which present and absent edges carry equal evidence,
/// `log((1 - q) / (1 - p)) / log(p / q)`.
pub fn y_value(p: f64, q: f64) -> Result<f64> {
    if p == q {
        return Err(CsbmError::InvalidArgument(format!("y(p, q) undefined for p = q = {p}")));
    }
    Ok(((1.0 - q).ln() - (1.0 - p).ln()) / (p.ln() - q.ln()))
}

/// Sparse symmetric signed adjacency matrix: present `1`, absent `-y`,
/// censored and diagonal `0`. Stored in CSR form with both triangles.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedMatrix {
    n: usize,
    y: f64,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl SignedMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    /// Stored value at `(u, v)`, zero when absent.
    pub fn get(&self, u: usize, v: usize) -> f64 {
        let range = self.row_ptr[u]..self.row_ptr[u + 1];
        match self.cols[range.clone()].binary_search(&(v as u32)) {
            Ok(pos) => self.vals[range.start + pos],
            Err(_) => 0.0,
        }
    }

    /// Stored `(column, value)` entries of row `u`.
    pub fn row(&self, u: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[u]..self.row_ptr[u + 1];
        self.cols[range.clone()].iter().map(|&c| c as usize).zip(self.vals[range].iter().copied())
    }

    /// Frobenius norm, an upper bound on the spectral norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.vals.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

impl SymmetricOperator for SignedMatrix {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (u, o) in out.iter_mut().enumerate() {
            let range = self.row_ptr[u]..self.row_ptr[u + 1];
            *o = self.cols[range.clone()].iter().zip(&self.vals[range]).map(|(&c, &v)| v * x[c as usize]).sum();
        }
    }

    fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for u in 0..self.n {
            for (v, val) in self.row(u) {
                m[(u, v)] = val;
            }
        }
        m
    }
}

/// Builds the signed adjacency matrix of `graph` with absent-edge weight `-y`.
pub fn encode(graph: &CensoredGraph, y: f64) -> Result<SignedMatrix> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(CsbmError::NonPositiveY(y));
    }
    let n = graph.n();
    let mut degree = vec![0usize; n + 1];
    for p in graph.revealed() {
        degree[p.u + 1] += 1;
        degree[p.v + 1] += 1;
    }
    for i in 0..n {
        degree[i + 1] += degree[i];
    }
    let row_ptr = degree;
    let mut fill = row_ptr.clone();
    let nnz = row_ptr[n];
    let mut cols = vec![0u32; nnz];
    let mut vals = vec![0.0; nnz];
    for p in graph.revealed() {
        let val = match p.status {
            EdgeStatus::Present => 1.0,
            EdgeStatus::Absent => -y,
        };
        for (a, b) in [(p.u, p.v), (p.v, p.u)] {
            cols[fill[a]] = b as u32;
            vals[fill[a]] = val;
            fill[a] += 1;
        }
    }
    // Revealed pairs are sorted by (u, v); rows still need column sorting for
    // entries contributed as the second endpoint.
    for u in 0..n {
        let range = row_ptr[u]..row_ptr[u + 1];
        let mut entries: Vec<(u32, f64)> = cols[range.clone()].iter().copied().zip(vals[range.clone()].iter().copied()).collect();
        entries.sort_by_key(|e| e.0);
        for (slot, (c, v)) in range.zip(entries) {
            cols[slot] = c;
            vals[slot] = v;
        }
    }
    Ok(SignedMatrix { n, y, row_ptr, cols, vals })
}

/// `M_ij = rho_j (P_ij - y (1 - P_ij))` together with its spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedMatrix {
    pub y: f64,
    pub m: DMatrix<f64>,
    /// Eigenvalues in descending order.
    pub eigenvalues: Vec<f64>,
    /// Unit eigenvectors of the symmetrised form, columns aligned with `eigenvalues`.
    pub sym_eigenvectors: DMatrix<f64>,
}

/// `P_ij - y (1 - P_ij)`.
pub fn encoded_p(params: &ModelParams, y: f64) -> DMatrix<f64> {
    let k = params.k();
    DMatrix::from_fn(k, k, |i, j| {
        let p = params.p(i, j);
        p - y * (1.0 - p)
    })
}

/// `diag(sqrt rho) P_enc diag(sqrt rho)`, similar to the reduced matrix.
pub fn symmetrized_reduced(params: &ModelParams, y: f64) -> DMatrix<f64> {
    let s: Vec<f64> = params.rho().iter().map(|r| r.sqrt()).collect();
    let pe = encoded_p(params, y);
    DMatrix::from_fn(params.k(), params.k(), |i, j| s[i] * pe[(i, j)] * s[j])
}

/// Reduced matrix at encoding `y >= 0` (`y = 0` gives `P diag(rho)`).
pub fn reduced_matrix(params: &ModelParams, y: f64) -> Result<ReducedMatrix> {
    if !(y >= 0.0 && y.is_finite()) {
        return Err(CsbmError::NonPositiveY(y));
    }
    let k = params.k();
    let pe = encoded_p(params, y);
    let m = DMatrix::from_fn(k, k, |i, j| params.rho()[j] * pe[(i, j)]);
    let eig = SymmetricEigen::new(symmetrized_reduced(params, y));
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let sym_eigenvectors = DMatrix::from_fn(k, k, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(ReducedMatrix { y, m, eigenvalues, sym_eigenvectors })
}

fn spectrum_ok(eigenvalues: &[f64], margin: f64) -> bool {
    eigenvalues.iter().all(|m| m.abs() > margin) && eigenvalues.windows(2).all(|w| (w[0] - w[1]).abs() > margin)
}

/// True iff every reduced eigenvalue exceeds `margin` in magnitude and all
/// pairwise gaps exceed `margin`. Invalid `y` gives `false`.
pub fn exception_check(params: &ModelParams, y: f64, margin: f64) -> bool {
    match reduced_matrix(params, y) {
        Ok(r) => spectrum_ok(&r.eigenvalues, margin),
        Err(_) => false,
    }
}

fn relative_ok(params: &ModelParams, y: f64) -> bool {
    match reduced_matrix(params, y) {
        Ok(r) => {
            let scale = r.eigenvalues.iter().fold(0.0f64, |a, m| a.max(m.abs()));
            spectrum_ok(&r.eigenvalues, DEFAULT_MARGIN.max(DRAW_RELATIVE_MARGIN * scale))
        }
        Err(_) => false,
    }
}

/// Draws `y1 != y2` uniformly from `(0, 1)`, rejecting encodings whose reduced
/// eigenvalues come within a relative margin of zero or of each other.
pub fn draw_valid_y_pair<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> Result<(f64, f64)> {
    for _ in 0..MAX_Y_DRAWS {
        let (y1, y2) = (rng.random::<f64>(), rng.random::<f64>());
        if (y1 - y2).abs() >= DRAW_MIN_SEPARATION && y1.min(y2) > 0.0 && relative_ok(params, y1) && relative_ok(params, y2) {
            return Ok((y1, y2));
        }
    }
    Err(CsbmError::NoValidEncoding(MAX_Y_DRAWS))
}

/// Encodings at which the reduced matrix is singular or has a repeated eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionSet {
    /// Positive `y` with a zero eigenvalue.
    pub zero_eigenvalue: Vec<f64>,
    /// Positive `y` with a repeated eigenvalue.
    pub repeated_eigenvalue: Vec<f64>,
    /// The reduced matrix is singular for every `y`.
    pub singular_everywhere: bool,
    /// The reduced matrix has a repeated eigenvalue for every `y`.
    pub repeated_everywhere: bool,
}

impl ExceptionSet {
    /// All exceptional encodings, sorted.
    pub fn all(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.zero_eigenvalue.iter().chain(&self.repeated_eigenvalue).copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

fn sym_eigenvalues(params: &ModelParams, y: f64) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(symmetrized_reduced(params, y)).eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn det_at(params: &ModelParams, y: f64) -> f64 {
    symmetrized_reduced(params, y).determinant()
}

fn discriminant_at(params: &ModelParams, y: f64) -> f64 {
    let mu = sym_eigenvalues(params, y);
    let mut d = 1.0;
    for a in 0..mu.len() {
        for b in (a + 1)..mu.len() {
            d *= (mu[a] - mu[b]).powi(2);
        }
    }
    d
}

fn min_gap_at(params: &ModelParams, y: f64) -> f64 {
    sym_eigenvalues(params, y).windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min)
}

/// Least-squares monomial fit of a degree-`deg` polynomial through samples of
/// `f` at Chebyshev nodes on `[0, 2]`, in the variable `s = y - 1`.
fn fit_polynomial(f: impl Fn(f64) -> f64, deg: usize) -> Vec<f64> {
    let nodes = 3 * deg + 3;
    let s: Vec<f64> = (0..nodes)
        .map(|i| (std::f64::consts::PI * (i as f64 + 0.5) / nodes as f64).cos())
        .collect();
    let v = DMatrix::from_fn(nodes, deg + 1, |r, c| s[r].powi(c as i32));
    let b = nalgebra::DVector::from_iterator(nodes, s.iter().map(|&si| f(si + 1.0)));
    let svd = v.svd(true, true);
    svd.solve(&b, 1e-14).map(|c| c.iter().copied().collect()).unwrap_or_else(|_| vec![0.0; deg + 1])
}

/// Real roots of `sum_c coeffs[c] s^c` via the companion matrix.
fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let scale = coeffs.iter().fold(0.0f64, |a, c| a.max(c.abs()));
    let mut deg = coeffs.len() - 1;
    while deg > 0 && coeffs[deg].abs() <= 1e-10 * scale {
        deg -= 1;
    }
    if deg == 0 {
        return vec![];
    }
    let lead = coeffs[deg];
    let mut comp = DMatrix::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -coeffs[i] / lead;
    }
    comp.complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() <= 1e-5 * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect()
}

/// Golden-section minimisation of `f` on `[a, b]`.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

fn dedup_sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + b.abs()));
    v
}

/// Isolates the positive exceptional encodings. `det P_enc(y)` is a polynomial
/// of degree at most `k` and the squared-gap product of the reduced eigenvalues
/// one of degree at most `k(k-1)`; both are interpolated, rooted through their
/// companion matrices and polished on the exact matrices.
pub fn exception_set(params: &ModelParams) -> ExceptionSet {
    let k = params.k();
    let scale = (0..3).map(|i| sym_eigenvalues(params, i as f64).iter().fold(0.0f64, |a, m| a.max(m.abs()))).fold(0.0, f64::max);
    let tol = 1e-7 * scale.max(1e-300);

    let det_poly = fit_polynomial(|y| det_at(params, y), k);
    let det_scale = det_poly.iter().fold(0.0f64, |a, c| a.max(c.abs()));
    let singular_everywhere = det_scale <= 1e-13 * scale.powi(k as i32).max(1e-300)
        || (0..5).all(|i| sym_eigenvalues(params, 0.37 + 0.71 * i as f64).iter().any(|m| m.abs() <= tol));
    let mut zero_eigenvalue = Vec::new();
    if !singular_everywhere {
        for s in real_roots(&det_poly) {
            let mut y = s + 1.0;
            if y <= 0.0 {
                continue;
            }
            // Newton polishing on the exact determinant.
            for _ in 0..50 {
                let h = 1e-7 * (1.0 + y.abs());
                let d = det_at(params, y);
                let slope = (det_at(params, y + h) - det_at(params, y - h)) / (2.0 * h);
                if slope == 0.0 {
                    break;
                }
                let step = d / slope;
                y -= step;
                if step.abs() <= 1e-15 * (1.0 + y.abs()) {
                    break;
                }
            }
            if y > 0.0 && sym_eigenvalues(params, y).iter().any(|m| m.abs() <= tol) {
                zero_eigenvalue.push(y);
            }
        }
    }

    let repeated_everywhere = (0..5).all(|i| min_gap_at(params, 0.37 + 0.71 * i as f64) <= tol);
    let mut repeated_eigenvalue = Vec::new();
    if !repeated_everywhere {
        let disc_poly = fit_polynomial(|y| discriminant_at(params, y), k * (k - 1));
        for s in real_roots(&disc_poly) {
            let guess = s + 1.0;
            let h = 1e-3 * (1.0 + guess.abs());
            let y = golden_min(|y| min_gap_at(params, y), guess - h, guess + h);
            if y > 0.0 && min_gap_at(params, y) <= tol {
                repeated_eigenvalue.push(y);
            }
        }
    }

    ExceptionSet {
        zero_eigenvalue: dedup_sorted(zero_eigenvalue),
        repeated_eigenvalue: dedup_sorted(repeated_eigenvalue),
        singular_everywhere,
        repeated_everywhere,
    }
}

/// Reference spectrum of the expected signed adjacency matrix, obtained from
/// the `k x k` reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedSpectrum {
    pub y: f64,
    pub n: usize,
    /// Reduced eigenvalues, descending.
    pub mus: Vec<f64>,
    /// `t log(n) mu_l`, descending.
    pub gammas: Vec<f64>,
    /// Row `l` holds the community values of eigenvector `l` (scaled by `sqrt n`).
    pub block_values: DMatrix<f64>,
    /// Numbers of positive and negative reference eigenvalues.
    pub signature: (usize, usize),
}

impl ExpectedSpectrum {
    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// The `n`-vector of eigenvector `l` under `assignment`.
    pub fn block_vector(&self, l: usize, assignment: &CommunityAssignment) -> Vec<f64> {
        let s = (self.n as f64).sqrt();
        assignment.labels().iter().map(|&j| self.block_values[(l, j)] / s).collect()
    }
}

fn build_spectrum(params: &ModelParams, n: usize, y: f64, keep: impl Fn(f64) -> bool) -> Result<ExpectedSpectrum> {
    let k = params.k();
    let red = reduced_matrix(params, y)?;
    let scale = params.t() * (n as f64).ln();
    let kept: Vec<usize> = (0..k).filter(|&l| keep(red.eigenvalues[l])).collect();
    let mus: Vec<f64> = kept.iter().map(|&l| red.eigenvalues[l]).collect();
    let mut block_values = DMatrix::zeros(kept.len(), k);
    for (row, &l) in kept.iter().enumerate() {
        let mut z: Vec<f64> = (0..k).map(|j| red.sym_eigenvectors[(j, l)] / params.rho()[j].sqrt()).collect();
        let big = z.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let lead = z.iter().position(|v| v.abs() >= big * (1.0 - 1e-9)).unwrap_or(0);
        if z[lead] < 0.0 {
            z.iter_mut().for_each(|v| *v = -*v);
        }
        for (j, v) in z.into_iter().enumerate() {
            block_values[(row, j)] = v;
        }
    }
    let signature = (mus.iter().filter(|&&m| m > 0.0).count(), mus.iter().filter(|&&m| m < 0.0).count());
    Ok(ExpectedSpectrum { y, n, gammas: mus.iter().map(|m| scale * m).collect(), mus, block_values, signature })
}

/// Expected spectrum at encoding `y`; requires `y` outside the exception set.
pub fn expected_spectrum(params: &ModelParams, n: usize, y: f64) -> Result<ExpectedSpectrum> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(CsbmError::NonPositiveY(y));
    }
    if !exception_check(params, y, DEFAULT_MARGIN) {
        return Err(CsbmError::ExceptionSetViolation(y));
    }
    build_spectrum(params, n, y, |_| true)
}

/// Expected spectrum restricted to the nonzero reduced eigenvalues. Fails if
/// no eigenvalue survives or the surviving ones are not distinct.
pub fn expected_signal_spectrum(params: &ModelParams, n: usize, y: f64) -> Result<ExpectedSpectrum> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(CsbmError::NonPositiveY(y));
    }
    let spec = build_spectrum(params, n, y, |m| m.abs() > DEFAULT_MARGIN)?;
    if spec.is_empty() || !spectrum_ok(&spec.mus, DEFAULT_MARGIN) {
        return Err(CsbmError::ExceptionSetViolation(y));
    }
    Ok(spec)
}

/// Eigenpairs of a sampled matrix aligned with an expected spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBundle {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    /// Numbers of largest and smallest eigenpairs taken.
    pub signature: (usize, usize),
}

/// The `m+` largest and `m-` smallest eigenpairs, `(m+, m-)` being the
/// signature of `expected`, in descending order of eigenvalue.
pub fn top_spectrum<A: SymmetricOperator + ?Sized>(matrix: &A, expected: &ExpectedSpectrum) -> Result<SpectralBundle> {
    let (top, bottom) = expected.signature;
    if matrix.dim() < expected.block_values.ncols() {
        return Err(CsbmError::InvalidArgument(format!("matrix dimension {} below k", matrix.dim())));
    }
    let pairs = extremal_eigenpairs(matrix, top, bottom)?;
    Ok(SpectralBundle { values: pairs.values, vectors: pairs.vectors, signature: expected.signature })
}

/// Per-eigenvector `min_s || s u_l - A u*_l / gamma_l ||_inf`, with `u*_l` the
/// block vector of `expected` under the true assignment.
pub fn entrywise_residual<A: SymmetricOperator + ?Sized>(
    bundle: &SpectralBundle,
    expected: &ExpectedSpectrum,
    matrix: &A,
    assignment: &CommunityAssignment,
) -> Result<Vec<f64>> {
    if bundle.vectors.len() != expected.len() || bundle.signature != expected.signature {
        return Err(CsbmError::AlignmentMismatch(format!(
            "{} eigenpairs with signature {:?} vs {} reference values with signature {:?}",
            bundle.vectors.len(),
            bundle.signature,
            expected.len(),
            expected.signature
        )));
    }
    let n = matrix.dim();
    if assignment.n() != n || bundle.vectors.iter().any(|u| u.len() != n) {
        return Err(CsbmError::AlignmentMismatch(format!("dimension {n} vs assignment of {}", assignment.n())));
    }
    let mut au = vec![0.0; n];
    Ok((0..expected.len())
        .map(|l| {
            let ustar = expected.block_vector(l, assignment);
            matrix.apply(&ustar, &mut au);
            let g = expected.gammas[l];
            [1.0, -1.0]
                .iter()
                .map(|s| bundle.vectors[l].iter().zip(&au).map(|(u, a)| (s * u - a / g).abs()).fold(0.0, f64::max))
                .fold(f64::INFINITY, f64::min)
        })
        .collect())
}
