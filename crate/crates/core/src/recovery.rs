//! Spectral community recovery with one or two signed encodings, the
//! weight systems that combine eigenvectors into score vectors, candidate
//! classification by likelihood, and the genie reference classifier.

use nalgebra::DMatrix;

use crate::error::{CsbmError, Result};
use crate::info_geometry::genie_weight;
use crate::model::{degree_profiles, CensoredGraph, CommunityAssignment, LogTable, ModelParams};
use crate::spectral::{
    encode, exception_check, expected_signal_spectrum, expected_spectrum, top_spectrum, y_value, ExpectedSpectrum,
    SignedMatrix, SpectralBundle, DEFAULT_MARGIN,
};

/// Largest number of score vectors combined by [`classify`].
pub const MAX_VECTORS: usize = 8;

/// Largest community count accepted by [`classify_multiple`].
pub const MAX_COMMUNITIES: usize = 6;

/// Largest total number of sign bits enumerated by [`classify_multiple`].
pub const MAX_SIGN_BITS: usize = 12;

/// Residual allowed in the block-reduced weight systems.
pub const SYSTEM_TOL: f64 = 1e-10;

/// Equality tolerance used when deciding which one-matrix regime applies.
const REGIME_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightVariant {
    OneMatrix,
    TwoMatrixTwo,
    TwoMatrixK,
}

/// Coefficients turning eigenvectors into score vectors.
///
/// For encoding `e`, `alphas[e]` is `k x c` (target block values per community
/// and score column) and `coeffs[e]` is `m_e x c` (weights on the `m_e`
/// eigenvectors of that encoding). `c` is 1 for two-community plans and `k`
/// otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightPlan {
    pub variant: WeightVariant,
    pub y_values: Vec<f64>,
    pub alphas: Vec<DMatrix<f64>>,
    pub coeffs: Vec<DMatrix<f64>>,
}

impl WeightPlan {
    /// Largest violation of `sum_l coeffs[l, c] zeta[l, r] / (t mu_l) = alphas[r, c]`.
    pub fn system_residual(&self, spectra: &[&ExpectedSpectrum], t: f64) -> f64 {
        spectra
            .iter()
            .zip(&self.alphas)
            .zip(&self.coeffs)
            .map(|((spec, alpha), coeff)| (block_operator(spec, t) * coeff - alpha).amax())
            .fold(0.0, f64::max)
    }

    /// Combined per-community coefficients `(sum_e alpha_e, -sum_e y_e alpha_e)`
    /// for score column `c`, in degree-profile layout.
    pub fn combined(&self, c: usize) -> Vec<f64> {
        let k = self.alphas[0].nrows();
        (0..k)
            .flat_map(|r| {
                let plus: f64 = self.alphas.iter().map(|a| a[(r, c)]).sum();
                let minus: f64 = self.alphas.iter().zip(&self.y_values).map(|(a, y)| -y * a[(r, c)]).sum();
                [plus, minus]
            })
            .collect()
    }
}

/// `k x m` matrix with entries `zeta[l, r] / (t mu_l)`: community values of
/// `sqrt(n) log(n) u*_l / lambda*_l`.
fn block_operator(spec: &ExpectedSpectrum, t: f64) -> DMatrix<f64> {
    let k = spec.block_values.ncols();
    DMatrix::from_fn(k, spec.len(), |r, l| spec.block_values[(l, r)] / (t * spec.mus[l]))
}

/// Least-squares solve of the block-reduced system; errors if the residual exceeds [`SYSTEM_TOL`].
fn solve_block(spec: &ExpectedSpectrum, t: f64, alpha: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let b = block_operator(spec, t);
    let coeffs = b
        .clone()
        .svd(true, true)
        .solve(alpha, 1e-14)
        .map_err(|e| CsbmError::RegimeViolation(format!("block system: {e}")))?;
    let scale = alpha.amax().max(1.0);
    let res = (&b * &coeffs - alpha).amax();
    if res > SYSTEM_TOL * scale {
        return Err(CsbmError::RegimeViolation(format!(
            "target block values lie outside the span of the expected eigenvectors (residual {res:.3e})"
        )));
    }
    Ok(coeffs)
}

fn two_community(params: &ModelParams) -> Result<(f64, f64, f64)> {
    if params.k() != 2 {
        return Err(CsbmError::InvalidArgument(format!("two-community method used with k = {}", params.k())));
    }
    Ok((params.p(0, 0), params.p(1, 1), params.p(0, 1)))
}

/// Encoding used by the one-matrix method, `y(p1, q)`.
pub fn one_matrix_y(params: &ModelParams) -> Result<f64> {
    let (p1, _, q) = two_community(params)?;
    y_value(p1, q)
}

/// One-matrix weights: `alpha = (log(p1/q), -log(p1/q))` when `p1 = p2`,
/// `(log(p1/q), 0)` when `p2 = q`, then the block-reduced solve.
pub fn weights_one(params: &ModelParams, expected: &ExpectedSpectrum) -> Result<WeightPlan> {
    let (p1, p2, q) = two_community(params)?;
    if (p1 - q).abs() <= REGIME_TOL {
        return Err(CsbmError::RegimeViolation(format!("p1 = q = {q}")));
    }
    let a1 = p1.ln() - q.ln();
    let a2 = if (p1 - p2).abs() <= REGIME_TOL {
        -a1
    } else if (p2 - q).abs() <= REGIME_TOL {
        0.0
    } else {
        return Err(CsbmError::RegimeViolation(format!(
            "need p1 = p2 or p2 = q, got p1 = {p1}, p2 = {p2}, q = {q}"
        )));
    };
    let y = y_value(p1, q)?;
    if (expected.y - y).abs() > 1e-12 * y.max(1.0) {
        return Err(CsbmError::InvalidArgument(format!("expected spectrum built at y = {}, need {y}", expected.y)));
    }
    let alpha = DMatrix::from_column_slice(2, 1, &[a1, a2]);
    let coeffs = solve_block(expected, params.t(), &alpha)?;
    Ok(WeightPlan { variant: WeightVariant::OneMatrix, y_values: vec![y], alphas: vec![alpha], coeffs: vec![coeffs] })
}

/// One-matrix weights at a caller-chosen `y`: per community, the least-squares
/// projection of the genie weight onto vectors of the form `(a, -y a)`.
pub fn weights_one_at(params: &ModelParams, expected: &ExpectedSpectrum) -> Result<WeightPlan> {
    two_community(params)?;
    let y = expected.y;
    let w = genie_weight(params, 0, 1)?;
    let alpha = DMatrix::from_fn(2, 1, |r, _| (w[2 * r] - y * w[2 * r + 1]) / (1.0 + y * y));
    let coeffs = solve_block(expected, params.t(), &alpha)?;
    Ok(WeightPlan { variant: WeightVariant::OneMatrix, y_values: vec![y], alphas: vec![alpha], coeffs: vec![coeffs] })
}

/// Splits `(w_plus, w_minus)` into `(alpha, alpha_tilde)` with
/// `alpha + alpha_tilde = w_plus` and `-y1 alpha - y2 alpha_tilde = w_minus`.
fn split_pair(w_plus: f64, w_minus: f64, y1: f64, y2: f64) -> (f64, f64) {
    let alpha = (w_minus + y2 * w_plus) / (y2 - y1);
    (alpha, w_plus - alpha)
}

fn check_pair(params: &ModelParams, e1: &ExpectedSpectrum, e2: &ExpectedSpectrum) -> Result<(f64, f64)> {
    let (y1, y2) = (e1.y, e2.y);
    if y1 == y2 {
        return Err(CsbmError::EqualEncodings(y1));
    }
    for y in [y1, y2] {
        if !exception_check(params, y, DEFAULT_MARGIN) {
            return Err(CsbmError::ExceptionSetViolation(y));
        }
    }
    Ok((y1, y2))
}

/// Two-matrix weights for two communities, built from the genie weight of `(1, 2)`.
pub fn weights_two(params: &ModelParams, e1: &ExpectedSpectrum, e2: &ExpectedSpectrum) -> Result<WeightPlan> {
    two_community(params)?;
    let (y1, y2) = check_pair(params, e1, e2)?;
    let w = genie_weight(params, 0, 1)?;
    let mut a = DMatrix::zeros(2, 1);
    let mut at = DMatrix::zeros(2, 1);
    for r in 0..2 {
        let (x, xt) = split_pair(w[2 * r], w[2 * r + 1], y1, y2);
        a[(r, 0)] = x;
        at[(r, 0)] = xt;
    }
    let c = solve_block(e1, params.t(), &a)?;
    let ct = solve_block(e2, params.t(), &at)?;
    Ok(WeightPlan { variant: WeightVariant::TwoMatrixTwo, y_values: vec![y1, y2], alphas: vec![a, at], coeffs: vec![c, ct] })
}

/// Two-matrix weights for `k` communities: column `i` targets the genie
/// score `(log P_ri, log(1 - P_ri))_r` of community `i`.
pub fn weights_k(params: &ModelParams, e1: &ExpectedSpectrum, e2: &ExpectedSpectrum) -> Result<WeightPlan> {
    let (y1, y2) = check_pair(params, e1, e2)?;
    let k = params.k();
    let mut a = DMatrix::zeros(k, k);
    let mut at = DMatrix::zeros(k, k);
    for r in 0..k {
        for i in 0..k {
            let p = params.p(r, i);
            let (x, xt) = split_pair(p.ln(), (1.0 - p).ln(), y1, y2);
            a[(r, i)] = x;
            at[(r, i)] = xt;
        }
    }
    let c = solve_block(e1, params.t(), &a)?;
    let ct = solve_block(e2, params.t(), &at)?;
    Ok(WeightPlan { variant: WeightVariant::TwoMatrixK, y_values: vec![y1, y2], alphas: vec![a, at], coeffs: vec![c, ct] })
}

/// Sign pattern number `b`: bit `l` set means `s_l = -1`.
pub fn sign_pattern(b: usize, m: usize) -> Vec<i8> {
    (0..m).map(|l| if b >> l & 1 == 1 { -1 } else { 1 }).collect()
}

/// Every sign candidate of [`classify`] with its log-likelihood, in enumeration order.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    pub candidates: Vec<(Vec<i8>, CommunityAssignment)>,
    pub scores: Vec<f64>,
}

fn check_vectors(n: usize, vectors: &[Vec<f64>], weights: &[f64]) -> Result<()> {
    if vectors.len() != weights.len() {
        return Err(CsbmError::LengthMismatch(vectors.len(), weights.len()));
    }
    if vectors.len() > MAX_VECTORS {
        return Err(CsbmError::TooManyVectors(vectors.len(), MAX_VECTORS));
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != n) {
        return Err(CsbmError::LengthMismatch(v.len(), n));
    }
    Ok(())
}

fn threshold_labels(vectors: &[Vec<f64>], weights: &[f64], signs: &[i8], t: f64, n: usize) -> (Vec<usize>, Vec<f64>) {
    let mut u = vec![0.0; n];
    for ((v, &w), &s) in vectors.iter().zip(weights).zip(signs) {
        let c = s as f64 * w;
        for (ui, vi) in u.iter_mut().zip(v) {
            *ui += c * vi;
        }
    }
    (u.iter().map(|&x| usize::from(x - t >= 0.0)).collect(), u)
}

/// All `2^m` thresholded candidates `sign(sum_l s_l w_l u_l - T)` with their likelihoods.
pub fn classify_candidates(
    graph: &CensoredGraph,
    vectors: &[Vec<f64>],
    weights: &[f64],
    t: f64,
    params: &ModelParams,
) -> Result<CandidateSet> {
    check_vectors(graph.n(), vectors, weights)?;
    if params.k() != 2 {
        return Err(CsbmError::InvalidArgument(format!("threshold classification needs k = 2, got {}", params.k())));
    }
    let table = LogTable::new(params);
    let m = vectors.len();
    let mut candidates = Vec::with_capacity(1 << m);
    let mut scores = Vec::with_capacity(1 << m);
    for b in 0..(1usize << m) {
        let signs = sign_pattern(b, m);
        let (labels, _) = threshold_labels(vectors, weights, &signs, t, graph.n());
        scores.push(table.score(graph, &labels));
        candidates.push((signs, CommunityAssignment::from_labels(labels, 2)?));
    }
    Ok(CandidateSet { candidates, scores })
}

/// Outcome of a classification: the chosen assignment, its sign pattern and
/// the per-vertex scores that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Classified {
    pub assignment: CommunityAssignment,
    pub signs: Vec<i8>,
    pub log_likelihood: f64,
    /// Binary methods: the combined score per vertex. Multi-class methods: empty.
    pub scores: Vec<f64>,
}

/// Threshold classification: values at or above `T` go to the second
/// community; the candidate with the highest likelihood wins, ties going to
/// the first in enumeration order.
pub fn classify(
    graph: &CensoredGraph,
    vectors: &[Vec<f64>],
    weights: &[f64],
    t: f64,
    params: &ModelParams,
) -> Result<CommunityAssignment> {
    Ok(classify_detailed(graph, vectors, weights, t, params)?.assignment)
}

/// [`classify`] returning the chosen sign pattern and scores as well.
pub fn classify_detailed(
    graph: &CensoredGraph,
    vectors: &[Vec<f64>],
    weights: &[f64],
    t: f64,
    params: &ModelParams,
) -> Result<Classified> {
    check_vectors(graph.n(), vectors, weights)?;
    if params.k() != 2 {
        return Err(CsbmError::InvalidArgument(format!("threshold classification needs k = 2, got {}", params.k())));
    }
    let table = LogTable::new(params);
    let m = vectors.len();
    let mut best: Option<(f64, Vec<i8>, Vec<usize>, Vec<f64>)> = None;
    for b in 0..(1usize << m) {
        let signs = sign_pattern(b, m);
        let (labels, u) = threshold_labels(vectors, weights, &signs, t, graph.n());
        let ll = table.score(graph, &labels);
        if best.as_ref().is_none_or(|(s, ..)| ll > *s) {
            best = Some((ll, signs, labels, u));
        }
    }
    let (log_likelihood, signs, labels, scores) = best.expect("at least one candidate");
    Ok(Classified { assignment: CommunityAssignment::from_labels(labels, 2)?, signs, log_likelihood, scores })
}

/// Eigenvectors of one encoding with their per-class combination weights
/// (`coeffs` is `m x k`).
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreBasis {
    pub vectors: Vec<Vec<f64>>,
    pub coeffs: DMatrix<f64>,
}

/// Multi-class classification: for every joint sign pattern over the bases,
/// each vertex takes the class with the largest combined score (ties to the
/// smallest index); the candidate with the highest likelihood wins.
pub fn classify_multiple(graph: &CensoredGraph, bases: &[ScoreBasis], params: &ModelParams) -> Result<CommunityAssignment> {
    Ok(classify_multiple_detailed(graph, bases, params)?.assignment)
}

pub fn classify_multiple_detailed(graph: &CensoredGraph, bases: &[ScoreBasis], params: &ModelParams) -> Result<Classified> {
    let k = params.k();
    if k > MAX_COMMUNITIES {
        return Err(CsbmError::TooManyCommunities(k, MAX_COMMUNITIES));
    }
    let n = graph.n();
    let bits: usize = bases.iter().map(|b| b.vectors.len()).sum();
    if bits > MAX_SIGN_BITS {
        return Err(CsbmError::TooManyVectors(bits, MAX_SIGN_BITS));
    }
    for b in bases {
        if b.coeffs.nrows() != b.vectors.len() || b.coeffs.ncols() != k {
            return Err(CsbmError::DimensionMismatch(format!(
                "coefficients {}x{} for {} vectors and k = {k}",
                b.coeffs.nrows(),
                b.coeffs.ncols(),
                b.vectors.len()
            )));
        }
        if let Some(v) = b.vectors.iter().find(|v| v.len() != n) {
            return Err(CsbmError::LengthMismatch(v.len(), n));
        }
    }
    // Flattened (vector, coefficient row) pairs across bases; sign bit l flips term l.
    let terms: Vec<(&Vec<f64>, Vec<f64>)> = bases
        .iter()
        .flat_map(|b| b.vectors.iter().enumerate().map(move |(l, v)| (v, b.coeffs.row(l).iter().copied().collect())))
        .collect();
    let table = LogTable::new(params);
    let mut best: Option<(f64, Vec<i8>, Vec<usize>)> = None;
    let mut scores = vec![0.0; k];
    for b in 0..(1usize << bits) {
        let signs = sign_pattern(b, bits);
        let labels: Vec<usize> = (0..n)
            .map(|v| {
                scores.iter_mut().for_each(|s| *s = 0.0);
                for ((vec, row), &s) in terms.iter().zip(&signs) {
                    let x = s as f64 * vec[v];
                    for (sc, c) in scores.iter_mut().zip(row) {
                        *sc += x * c;
                    }
                }
                argmax_first(&scores)
            })
            .collect();
        let ll = table.score(graph, &labels);
        if best.as_ref().is_none_or(|(s, ..)| ll > *s) {
            best = Some((ll, signs, labels));
        }
    }
    let (log_likelihood, signs, labels) = best.expect("at least one candidate");
    Ok(Classified { assignment: CommunityAssignment::from_labels(labels, k)?, signs, log_likelihood, scores: vec![] })
}

fn argmax_first(v: &[f64]) -> usize {
    let mut best = 0;
    for i in 1..v.len() {
        if v[i] > v[best] {
            best = i;
        }
    }
    best
}

/// Everything produced by a spectral recovery run.
#[derive(Debug, Clone)]
pub struct SpectralRun {
    pub classified: Classified,
    pub plan: WeightPlan,
    pub spectra: Vec<ExpectedSpectrum>,
    pub bundles: Vec<SpectralBundle>,
    pub matrices: Vec<SignedMatrix>,
}

impl SpectralRun {
    pub fn assignment(&self) -> &CommunityAssignment {
        &self.classified.assignment
    }
}

fn check_graph_size(graph: &CensoredGraph, min: usize) -> Result<()> {
    if graph.n() < min {
        return Err(CsbmError::InvalidArgument(format!("need at least {min} vertices, got {}", graph.n())));
    }
    Ok(())
}

fn single_encoding(
    graph: &CensoredGraph,
    params: &ModelParams,
    spec: ExpectedSpectrum,
    plan: WeightPlan,
) -> Result<SpectralRun> {
    let a = encode(graph, spec.y)?;
    let bundle = top_spectrum(&a, &spec)?;
    let weights: Vec<f64> = plan.coeffs[0].column(0).iter().copied().collect();
    let classified = classify_detailed(graph, &bundle.vectors, &weights, 0.0, params)?;
    Ok(SpectralRun { classified, plan, spectra: vec![spec], bundles: vec![bundle], matrices: vec![a] })
}

/// One-matrix recovery at `y = y(p1, q)`.
pub fn spec1(graph: &CensoredGraph, params: &ModelParams) -> Result<CommunityAssignment> {
    Ok(spec1_run(graph, params)?.classified.assignment)
}

pub fn spec1_run(graph: &CensoredGraph, params: &ModelParams) -> Result<SpectralRun> {
    check_graph_size(graph, 16)?;
    let y = one_matrix_y(params)?;
    let spec = expected_signal_spectrum(params, graph.n(), y)?;
    let plan = weights_one(params, &spec)?;
    single_encoding(graph, params, spec, plan)
}

/// One-matrix recovery at a caller-chosen encoding `y`.
pub fn spec1_with_y(graph: &CensoredGraph, params: &ModelParams, y: f64) -> Result<CommunityAssignment> {
    Ok(spec1_with_y_run(graph, params, y)?.classified.assignment)
}

pub fn spec1_with_y_run(graph: &CensoredGraph, params: &ModelParams, y: f64) -> Result<SpectralRun> {
    check_graph_size(graph, 16)?;
    two_community(params)?;
    let spec = expected_spectrum(params, graph.n(), y)?;
    let plan = weights_one_at(params, &spec)?;
    single_encoding(graph, params, spec, plan)
}

fn two_encodings(
    graph: &CensoredGraph,
    params: &ModelParams,
    (y1, y2): (f64, f64),
) -> Result<(Vec<ExpectedSpectrum>, Vec<SignedMatrix>, Vec<SpectralBundle>)> {
    if y1 == y2 {
        return Err(CsbmError::EqualEncodings(y1));
    }
    let mut spectra = Vec::with_capacity(2);
    let mut matrices = Vec::with_capacity(2);
    let mut bundles = Vec::with_capacity(2);
    for y in [y1, y2] {
        let spec = expected_spectrum(params, graph.n(), y)?;
        let a = encode(graph, y)?;
        bundles.push(top_spectrum(&a, &spec)?);
        spectra.push(spec);
        matrices.push(a);
    }
    Ok((spectra, matrices, bundles))
}

/// Two-matrix recovery for two communities.
pub fn spec2(graph: &CensoredGraph, params: &ModelParams, y_pair: (f64, f64)) -> Result<CommunityAssignment> {
    Ok(spec2_run(graph, params, y_pair)?.classified.assignment)
}

pub fn spec2_run(graph: &CensoredGraph, params: &ModelParams, y_pair: (f64, f64)) -> Result<SpectralRun> {
    two_community(params)?;
    check_graph_size(graph, 4)?;
    let (spectra, matrices, bundles) = two_encodings(graph, params, y_pair)?;
    let plan = weights_two(params, &spectra[0], &spectra[1])?;
    let vectors: Vec<Vec<f64>> = bundles.iter().flat_map(|b| b.vectors.iter().cloned()).collect();
    let weights: Vec<f64> = plan.coeffs.iter().flat_map(|c| c.column(0).iter().copied().collect::<Vec<_>>()).collect();
    let classified = classify_detailed(graph, &vectors, &weights, 0.0, params)?;
    Ok(SpectralRun { classified, plan, spectra, bundles, matrices })
}

/// Two-matrix recovery for `k` communities.
pub fn spec2k(graph: &CensoredGraph, params: &ModelParams, y_pair: (f64, f64)) -> Result<CommunityAssignment> {
    Ok(spec2k_run(graph, params, y_pair)?.classified.assignment)
}

pub fn spec2k_run(graph: &CensoredGraph, params: &ModelParams, y_pair: (f64, f64)) -> Result<SpectralRun> {
    check_graph_size(graph, 2 * params.k())?;
    for y in [y_pair.0, y_pair.1] {
        if !(y > 0.0 && y.is_finite()) {
            return Err(CsbmError::NonPositiveY(y));
        }
        if !exception_check(params, y, DEFAULT_MARGIN) {
            return Err(CsbmError::SpectralConditionViolation(y));
        }
    }
    let (spectra, matrices, bundles) = two_encodings(graph, params, y_pair)?;
    let plan = weights_k(params, &spectra[0], &spectra[1])?;
    let bases: Vec<ScoreBasis> = bundles
        .iter()
        .zip(&plan.coeffs)
        .map(|(b, c)| ScoreBasis { vectors: b.vectors.clone(), coeffs: c.clone() })
        .collect();
    let classified = classify_multiple_detailed(graph, &bases, params)?;
    Ok(SpectralRun { classified, plan, spectra, bundles, matrices })
}

/// Genie classifier: each vertex takes the community maximising
/// `<(log P_ri, log(1 - P_ri))_r, d(v)>`, with `d(v)` computed from the true
/// labels of all other vertices. Ties go to the smallest index.
///
/// Candidates are compared pairwise through the genie weights, so for two
/// communities the decision is exactly `<w*_12, d(v)> >= 0`.
pub fn genie(graph: &CensoredGraph, params: &ModelParams, sigma0: &CommunityAssignment) -> Result<CommunityAssignment> {
    let k = params.k();
    if sigma0.k() != k {
        return Err(CsbmError::DimensionMismatch(format!("assignment k = {}, params k = {k}", sigma0.k())));
    }
    let profiles = degree_profiles(graph, sigma0)?;
    let mut w = vec![vec![Vec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                w[i][j] = genie_weight(params, i, j)?;
            }
        }
    }
    let labels = profiles
        .iter()
        .map(|d| {
            let mut best = 0;
            for i in 1..k {
                if d.dot(&w[i][best]) > 0.0 {
                    best = i;
                }
            }
            best
        })
        .collect();
    CommunityAssignment::from_labels(labels, k)
}

/// Per-vertex genie statistic `<w*_ij, d(v)>`.
pub fn genie_statistic(
    graph: &CensoredGraph,
    params: &ModelParams,
    sigma0: &CommunityAssignment,
    i: usize,
    j: usize,
) -> Result<Vec<f64>> {
    let w = genie_weight(params, i, j)?;
    Ok(degree_profiles(graph, sigma0)?.iter().map(|d| d.dot(&w)).collect())
}

/// The `k x m` block-reduced system matrix of an expected spectrum:
/// entry `(r, l)` is `zeta[l, r] / (t mu_l)`.
pub fn block_system(spec: &ExpectedSpectrum, t: f64) -> DMatrix<f64> {
    block_operator(spec, t)
}
