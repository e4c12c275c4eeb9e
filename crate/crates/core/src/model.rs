//! Censored stochastic block model: parameters, sampling, degree profiles,
//! the pair-count log-likelihood and label-permutation-aware recovery metrics.

use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CsbmError, Result};

/// Tolerance on `sum(rho) == 1`.
pub const PRIOR_SUM_TOL: f64 = 1e-12;

/// Maximum number of assignment draws when conditioning on concentration.
pub const MAX_RESAMPLES: usize = 1000;

/// Unvalidated model parameters, as they appear in JSON configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawParams {
    #[serde(default)]
    pub k: Option<usize>,
    pub rho: Vec<f64>,
    pub p: Vec<Vec<f64>>,
    #[serde(default = "default_t")]
    pub t: f64,
}

fn default_t() -> f64 {
    1.0
}

/// Validated CSBM parameters: community prior, symmetric connectivity matrix
/// and reveal intensity (pairs are revealed with probability `t log n / n`).
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    k: usize,
    rho: Vec<f64>,
    p: Vec<f64>,
    t: f64,
}

impl ModelParams {
    /// Validates and builds parameters from a prior, a row-major list of rows
    /// of `P`, and `t`.
    pub fn new(rho: Vec<f64>, p: Vec<Vec<f64>>, t: f64) -> Result<Self> {
        validate_params(&RawParams { k: None, rho, p, t })
    }

    /// Two-community planted partition `[[p1, q], [q, p2]]` with prior `(rho, 1 - rho)`.
    pub fn two_community(rho: f64, p1: f64, p2: f64, q: f64, t: f64) -> Result<Self> {
        Self::new(vec![rho, 1.0 - rho], vec![vec![p1, q], vec![q, p2]], t)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    #[inline]
    pub fn p(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.k + j]
    }

    /// Rows of `P`.
    pub fn p_rows(&self) -> Vec<Vec<f64>> {
        self.p.chunks(self.k).map(|r| r.to_vec()).collect()
    }

    /// Same model with a different reveal intensity.
    pub fn with_t(&self, t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CsbmError::NonPositiveT(t));
        }
        Ok(Self { t, ..self.clone() })
    }

    /// Same model with communities renamed: new community `perm[i]` is old community `i`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let k = self.k;
        if perm.len() != k || !perm.iter().copied().sorted().eq(0..k) {
            return Err(CsbmError::InvalidArgument(format!("{perm:?} is not a permutation of 0..{k}")));
        }
        let mut rho = vec![0.0; k];
        let mut p = vec![0.0; k * k];
        for i in 0..k {
            rho[perm[i]] = self.rho[i];
            for j in 0..k {
                p[perm[i] * k + perm[j]] = self.p(i, j);
            }
        }
        Ok(Self { k, rho, p, t: self.t })
    }

    pub fn to_raw(&self) -> RawParams {
        RawParams { k: Some(self.k), rho: self.rho.clone(), p: self.p_rows(), t: self.t }
    }

    /// Probability that a given pair is revealed, `t log n / n`.
    pub fn reveal_probability(&self, n: usize) -> f64 {
        self.t * (n as f64).ln() / n as f64
    }
}

/// Checks every parameter constraint and returns validated parameters.
pub fn validate_params(raw: &RawParams) -> Result<ModelParams> {
    let k = raw.k.unwrap_or(raw.rho.len());
    if k < 2 {
        return Err(CsbmError::InvalidArgument(format!("need at least 2 communities, got {k}")));
    }
    if raw.rho.len() != k {
        return Err(CsbmError::DimensionMismatch(format!("rho has {} entries, k = {k}", raw.rho.len())));
    }
    if raw.p.len() != k || raw.p.iter().any(|row| row.len() != k) {
        return Err(CsbmError::DimensionMismatch(format!("P must be {k}x{k}")));
    }
    if let Some((i, r)) = raw.rho.iter().enumerate().find(|(_, r)| !(**r > 0.0 && **r < 1.0)) {
        return Err(CsbmError::NonStochasticPrior(format!("rho[{i}] = {r}")));
    }
    let sum: f64 = raw.rho.iter().sum();
    if (sum - 1.0).abs() > PRIOR_SUM_TOL {
        return Err(CsbmError::NonStochasticPrior(format!("sum = {sum}")));
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if raw.p[i][j] != raw.p[j][i] {
                return Err(CsbmError::AsymmetricP(i, j));
            }
        }
    }
    for (i, row) in raw.p.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if !(v > 0.0 && v < 1.0) {
                return Err(CsbmError::ProbabilityOutOfRange(i, j, v));
            }
        }
    }
    if !(raw.t > 0.0 && raw.t.is_finite()) {
        return Err(CsbmError::NonPositiveT(raw.t));
    }
    Ok(ModelParams { k, rho: raw.rho.clone(), p: raw.p.iter().flatten().copied().collect(), t: raw.t })
}

/// Community labels (0-based internally) with cached community sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityAssignment {
    k: usize,
    labels: Vec<usize>,
    counts: Vec<usize>,
}

impl CommunityAssignment {
    pub fn from_labels(labels: Vec<usize>, k: usize) -> Result<Self> {
        let mut counts = vec![0; k];
        for &l in &labels {
            if l >= k {
                return Err(CsbmError::CommunityOutOfRange(l, k));
            }
            counts[l] += 1;
        }
        Ok(Self { k, labels, counts })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    #[inline]
    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    /// Applies `perm` to every label.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        Self::from_labels(self.labels.iter().map(|&l| perm[l]).collect(), self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeStatus {
    Present,
    Absent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RevealedPair {
    pub u: usize,
    pub v: usize,
    pub status: EdgeStatus,
}

/// Censored graph: only revealed pairs are stored, sorted by `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensoredGraph {
    n: usize,
    revealed: Vec<RevealedPair>,
}

impl CensoredGraph {
    /// Builds a graph from revealed pairs in any order. Pairs with `u > v` are
    /// flipped; self-pairs, out-of-range vertices and duplicates are rejected.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = RevealedPair>) -> Result<Self> {
        let mut revealed: Vec<RevealedPair> = pairs
            .into_iter()
            .map(|p| if p.u > p.v { RevealedPair { u: p.v, v: p.u, status: p.status } } else { p })
            .collect();
        for p in &revealed {
            if p.v >= n {
                return Err(CsbmError::VertexOutOfRange(p.v, n));
            }
            if p.u == p.v {
                return Err(CsbmError::InvalidArgument(format!("self pair ({}, {})", p.u, p.v)));
            }
        }
        revealed.sort_by_key(|p| (p.u, p.v));
        if let Some(w) = revealed.windows(2).find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(CsbmError::InvalidArgument(format!("duplicate pair ({}, {})", w[0].u, w[0].v)));
        }
        Ok(Self { n, revealed })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn revealed(&self) -> &[RevealedPair] {
        &self.revealed
    }

    pub fn num_revealed(&self) -> usize {
        self.revealed.len()
    }
}

/// Counts of present and absent revealed edges from one vertex into each
/// community, laid out `(d+_1, d-_1, d+_2, d-_2, ...)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeProfile(pub Vec<u32>);

impl DegreeProfile {
    pub fn zeros(k: usize) -> Self {
        Self(vec![0; 2 * k])
    }

    pub fn present(&self, r: usize) -> u32 {
        self.0[2 * r]
    }

    pub fn absent(&self, r: usize) -> u32 {
        self.0[2 * r + 1]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }

    pub fn dot(&self, w: &[f64]) -> f64 {
        self.0.iter().zip(w).map(|(&d, &w)| d as f64 * w).sum()
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&d| d as f64).collect()
    }
}

/// Draws i.i.d. labels from `rho`. With `enforce_concentration`, redraws until
/// every community size is within `n^(2/3)` of `n rho_j`.
pub fn sample_assignment<R: Rng + ?Sized>(
    params: &ModelParams,
    n: usize,
    rng: &mut R,
    enforce_concentration: bool,
) -> Result<CommunityAssignment> {
    let k = params.k();
    if n < k {
        return Err(CsbmError::InvalidArgument(format!("n = {n} must be at least k = {k}")));
    }
    let cumulative: Vec<f64> = params
        .rho()
        .iter()
        .scan(0.0, |acc, &r| {
            *acc += r;
            Some(*acc)
        })
        .collect();
    let slack = (n as f64).powf(2.0 / 3.0);
    for _ in 0..MAX_RESAMPLES {
        let labels: Vec<usize> = (0..n)
            .map(|_| {
                let u: f64 = rng.random();
                cumulative.iter().position(|&c| u < c).unwrap_or(k - 1)
            })
            .collect();
        let a = CommunityAssignment::from_labels(labels, k)?;
        if !enforce_concentration
            || a.counts().iter().zip(params.rho()).all(|(&c, &r)| (c as f64 - n as f64 * r).abs() <= slack)
        {
            return Ok(a);
        }
    }
    Err(CsbmError::ResampleLimitExceeded(MAX_RESAMPLES))
}

/// Reveals each unordered pair independently with probability `t log n / n`
/// and marks it present with probability `P[σ(u)][σ(v)]`.
///
/// Revealed pairs are located by geometric skipping over the linear pair
/// index, so the cost is proportional to the number of revealed pairs.
pub fn sample_graph<R: Rng + ?Sized>(
    params: &ModelParams,
    assignment: &CommunityAssignment,
    rng: &mut R,
) -> Result<CensoredGraph> {
    let n = assignment.n();
    if n < 2 {
        return Err(CsbmError::InvalidArgument(format!("need at least 2 vertices, got {n}")));
    }
    if assignment.k() != params.k() {
        return Err(CsbmError::DimensionMismatch(format!(
            "assignment has k = {}, params k = {}",
            assignment.k(),
            params.k()
        )));
    }
    let r = params.reveal_probability(n);
    if r > 1.0 {
        return Err(CsbmError::RevealProbabilityExceedsOne(r));
    }
    let mut revealed = Vec::with_capacity((r * (n * (n - 1) / 2) as f64 * 1.1) as usize + 16);
    let log_q = (1.0 - r).ln();
    // (u, v) is the next candidate pair; v == n means row u is exhausted.
    let (mut u, mut v) = (0usize, 1usize);
    loop {
        let mut skip = if r >= 1.0 {
            0u64
        } else {
            let x: f64 = 1.0 - rng.random::<f64>();
            let s = (x.ln() / log_q).floor();
            if s >= u64::MAX as f64 {
                break;
            }
            s as u64
        };
        while skip > 0 && u < n - 1 {
            let room = (n - v) as u64;
            if skip < room {
                v += skip as usize;
                skip = 0;
            } else {
                skip -= room;
                u += 1;
                v = u + 1;
            }
        }
        if u >= n - 1 {
            break;
        }
        let prob = params.p(assignment.label(u), assignment.label(v));
        let status = if rng.random::<f64>() < prob { EdgeStatus::Present } else { EdgeStatus::Absent };
        revealed.push(RevealedPair { u, v, status });
        v += 1;
        if v == n {
            u += 1;
            v = u + 1;
            if u >= n - 1 {
                break;
            }
        }
    }
    Ok(CensoredGraph { n, revealed })
}

/// Degree profile of a single vertex.
pub fn degree_profile(graph: &CensoredGraph, assignment: &CommunityAssignment, v: usize) -> Result<DegreeProfile> {
    if v >= graph.n() {
        return Err(CsbmError::VertexOutOfRange(v, graph.n()));
    }
    check_cover(graph, assignment)?;
    let mut d = DegreeProfile::zeros(assignment.k());
    for p in graph.revealed() {
        let other = if p.u == v {
            p.v
        } else if p.v == v {
            p.u
        } else {
            continue;
        };
        bump(&mut d, assignment.label(other), p.status);
    }
    Ok(d)
}

/// Degree profiles of all vertices in one pass over the revealed pairs.
pub fn degree_profiles(graph: &CensoredGraph, assignment: &CommunityAssignment) -> Result<Vec<DegreeProfile>> {
    check_cover(graph, assignment)?;
    let mut out = vec![DegreeProfile::zeros(assignment.k()); graph.n()];
    for p in graph.revealed() {
        bump(&mut out[p.u], assignment.label(p.v), p.status);
        bump(&mut out[p.v], assignment.label(p.u), p.status);
    }
    Ok(out)
}

#[inline]
fn bump(d: &mut DegreeProfile, community: usize, status: EdgeStatus) {
    match status {
        EdgeStatus::Present => d.0[2 * community] += 1,
        EdgeStatus::Absent => d.0[2 * community + 1] += 1,
    }
}

fn check_cover(graph: &CensoredGraph, assignment: &CommunityAssignment) -> Result<()> {
    if assignment.n() != graph.n() {
        return Err(CsbmError::LengthMismatch(assignment.n(), graph.n()));
    }
    Ok(())
}

/// Log-likelihood of the revealed pairs under `sigma`, dropping the censored
/// pairs' contribution (identical for every assignment).
pub fn log_likelihood(graph: &CensoredGraph, sigma: &CommunityAssignment, params: &ModelParams) -> Result<f64> {
    check_cover(graph, sigma)?;
    if sigma.k() != params.k() {
        return Err(CsbmError::DimensionMismatch(format!("assignment k = {}, params k = {}", sigma.k(), params.k())));
    }
    let table = LogTable::new(params);
    Ok(table.score(graph, sigma.labels()))
}

/// Cached `log P` and `log(1 - P)` for repeated likelihood evaluations.
#[derive(Debug, Clone)]
pub(crate) struct LogTable {
    k: usize,
    log_p: Vec<f64>,
    log_q: Vec<f64>,
}

impl LogTable {
    pub(crate) fn new(params: &ModelParams) -> Self {
        let k = params.k();
        let mut log_p = Vec::with_capacity(k * k);
        let mut log_q = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                log_p.push(params.p(i, j).ln());
                log_q.push((1.0 - params.p(i, j)).ln());
            }
        }
        Self { k, log_p, log_q }
    }

    pub(crate) fn score(&self, graph: &CensoredGraph, labels: &[usize]) -> f64 {
        graph
            .revealed()
            .iter()
            .map(|p| {
                let idx = labels[p.u] * self.k + labels[p.v];
                match p.status {
                    EdgeStatus::Present => self.log_p[idx],
                    EdgeStatus::Absent => self.log_q[idx],
                }
            })
            .sum()
    }
}

/// Community permutations that leave both `rho` and `P` unchanged (exact
/// equality of stored values). Each permutation maps `i -> perm[i]`.
pub fn permissible_relabelings(params: &ModelParams) -> Vec<Vec<usize>> {
    let k = params.k();
    (0..k)
        .permutations(k)
        .filter(|pi| {
            (0..k).all(|i| params.rho()[i] == params.rho()[pi[i]])
                && (0..k).all(|i| (0..k).all(|j| params.p(i, j) == params.p(pi[i], pi[j])))
        })
        .collect()
}

/// `confusion[a][b]` = number of vertices labelled `a` by the first and `b` by the second assignment.
fn confusion(a: &[usize], b: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut c = vec![vec![0usize; k]; k];
    for (&x, &y) in a.iter().zip(b) {
        c[x][y] += 1;
    }
    c
}

fn min_hamming<'a>(a: &[usize], b: &[usize], k: usize, perms: impl Iterator<Item = &'a [usize]>) -> usize {
    let c = confusion(a, b, k);
    perms
        .map(|pi| a.len() - (0..k).map(|x| c[x][pi[x]]).sum::<usize>())
        .min()
        .unwrap_or(a.len())
}

fn check_pair(a: &CommunityAssignment, b: &CommunityAssignment) -> Result<usize> {
    if a.n() != b.n() {
        return Err(CsbmError::LengthMismatch(a.n(), b.n()));
    }
    if a.k() != b.k() {
        return Err(CsbmError::DimensionMismatch(format!("k = {} vs {}", a.k(), b.k())));
    }
    Ok(a.k())
}

/// Hamming distance minimised over permissible relabelings.
pub fn discrepancy(sigma: &CommunityAssignment, sigma0: &CommunityAssignment, params: &ModelParams) -> Result<usize> {
    let k = check_pair(sigma, sigma0)?;
    let perms = permissible_relabelings(params);
    Ok(min_hamming(sigma.labels(), sigma0.labels(), k, perms.iter().map(|p| p.as_slice())))
}

/// Outcome of comparing an estimate to the truth up to any label permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecoveryOutcome {
    pub exact: bool,
    pub misclassified: usize,
}

/// Exact recovery up to an arbitrary permutation of community names.
pub fn exact_recovery(sigma_hat: &CommunityAssignment, sigma0: &CommunityAssignment) -> Result<RecoveryOutcome> {
    let k = check_pair(sigma_hat, sigma0)?;
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let misclassified = min_hamming(sigma_hat.labels(), sigma0.labels(), k, perms.iter().map(|p| p.as_slice()));
    Ok(RecoveryOutcome { exact: misclassified == 0, misclassified })
}

/// Fraction of vertices on which two assignments agree, maximised over label permutations.
pub fn agreement(a: &CommunityAssignment, b: &CommunityAssignment) -> Result<f64> {
    let out = exact_recovery(a, b)?;
    if a.n() == 0 {
        return Ok(1.0);
    }
    Ok(1.0 - out.misclassified as f64 / a.n() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sym() -> ModelParams {
        ModelParams::two_community(0.5, 0.7, 0.7, 0.3, 1.0).unwrap()
    }

    #[test]
    fn validate_accepts_and_rejects() {
        assert!(ModelParams::new(vec![0.5, 0.5], vec![vec![0.7, 0.3], vec![0.3, 0.7]], 1.0).is_ok());
        let e = ModelParams::new(vec![0.6, 0.6], vec![vec![0.7, 0.3], vec![0.3, 0.7]], 1.0).unwrap_err();
        assert!(matches!(e, CsbmError::NonStochasticPrior(_)));
        let e = ModelParams::new(vec![0.5, 0.5], vec![vec![0.7, 0.3], vec![0.4, 0.7]], 1.0).unwrap_err();
        assert!(matches!(e, CsbmError::AsymmetricP(0, 1)));
        let e = ModelParams::new(vec![0.5, 0.5], vec![vec![1.0, 0.3], vec![0.3, 0.7]], 1.0).unwrap_err();
        assert!(matches!(e, CsbmError::ProbabilityOutOfRange(0, 0, _)));
        let e = ModelParams::new(vec![0.5, 0.5], vec![vec![0.7, 0.3], vec![0.3, 0.7]], 0.0).unwrap_err();
        assert!(matches!(e, CsbmError::NonPositiveT(_)));
        let e = ModelParams::new(vec![1.0, 0.0], vec![vec![0.7, 0.3], vec![0.3, 0.7]], 1.0).unwrap_err();
        assert!(matches!(e, CsbmError::NonStochasticPrior(_)));
        let e = ModelParams::new(vec![0.5, 0.5], vec![vec![0.7, 0.3]], 1.0).unwrap_err();
        assert!(matches!(e, CsbmError::DimensionMismatch(_)));
    }

    #[test]
    fn assignment_is_deterministic_and_concentrated() {
        let p = sym();
        let a = sample_assignment(&p, 1000, &mut ChaCha8Rng::seed_from_u64(7), false).unwrap();
        let b = sample_assignment(&p, 1000, &mut ChaCha8Rng::seed_from_u64(7), false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.counts().iter().sum::<usize>(), 1000);
        for seed in 0..20 {
            let a = sample_assignment(&p, 1000, &mut ChaCha8Rng::seed_from_u64(seed), true).unwrap();
            assert!((a.counts()[0] as f64 - 500.0).abs() <= 100.0 + 1e-9);
        }
    }

    #[test]
    fn degenerate_prior_puts_almost_everything_in_one_community() {
        let p = ModelParams::new(vec![1.0 - 1e-9, 1e-9], vec![vec![0.5, 0.4], vec![0.4, 0.5]], 1.0).unwrap();
        let a = sample_assignment(&p, 5000, &mut ChaCha8Rng::seed_from_u64(1), false).unwrap();
        assert!(a.counts()[0] >= 4999);
    }

    #[test]
    fn sample_graph_rejects_large_reveal_probability() {
        let p = sym().with_t(100.0).unwrap();
        let a = CommunityAssignment::from_labels(vec![0, 1, 0, 1], 2).unwrap();
        let e = sample_graph(&p, &a, &mut ChaCha8Rng::seed_from_u64(0)).unwrap_err();
        assert!(matches!(e, CsbmError::RevealProbabilityExceedsOne(_)));
    }

    #[test]
    fn tiny_t_reveals_nothing() {
        let p = sym().with_t(1e-12).unwrap();
        let a = sample_assignment(&p, 200, &mut ChaCha8Rng::seed_from_u64(3), false).unwrap();
        let g = sample_graph(&p, &a, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(g.num_revealed(), 0);
    }

    #[test]
    fn full_reveal_covers_every_pair() {
        // t log n / n == 1 exactly reveals every pair.
        let n = 30usize;
        let t = n as f64 / (n as f64).ln();
        let p = sym().with_t(t).unwrap();
        assert!(p.reveal_probability(n) <= 1.0);
        let a = sample_assignment(&p, n, &mut ChaCha8Rng::seed_from_u64(3), false).unwrap();
        let g = sample_graph(&p, &a, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(g.num_revealed(), n * (n - 1) / 2);
        assert!(g.revealed().windows(2).all(|w| (w[0].u, w[0].v) < (w[1].u, w[1].v)));
    }

    #[test]
    fn graph_constructor_validates() {
        let pr = |u, v| RevealedPair { u, v, status: EdgeStatus::Present };
        assert!(matches!(CensoredGraph::new(3, [pr(0, 3)]).unwrap_err(), CsbmError::VertexOutOfRange(3, 3)));
        assert!(CensoredGraph::new(3, [pr(0, 1), pr(1, 0)]).is_err());
        assert!(CensoredGraph::new(3, [pr(1, 1)]).is_err());
        let g = CensoredGraph::new(3, [pr(2, 0), pr(0, 1)]).unwrap();
        assert_eq!((g.revealed()[0].u, g.revealed()[0].v), (0, 1));
        assert_eq!((g.revealed()[1].u, g.revealed()[1].v), (0, 2));
    }

    #[test]
    fn degree_profile_examples() {
        let a = CommunityAssignment::from_labels(vec![0, 1, 0], 2).unwrap();
        let empty = CensoredGraph::new(3, []).unwrap();
        assert_eq!(degree_profile(&empty, &a, 0).unwrap(), DegreeProfile(vec![0, 0, 0, 0]));
        let g = CensoredGraph::new(3, [RevealedPair { u: 0, v: 1, status: EdgeStatus::Present }]).unwrap();
        assert_eq!(degree_profile(&g, &a, 0).unwrap(), DegreeProfile(vec![0, 0, 1, 0]));
        assert!(matches!(degree_profile(&g, &a, 5).unwrap_err(), CsbmError::VertexOutOfRange(5, 3)));
    }

    #[test]
    fn likelihood_examples() {
        let p = sym();
        let a = CommunityAssignment::from_labels(vec![0, 0, 1], 2).unwrap();
        let empty = CensoredGraph::new(3, []).unwrap();
        assert_eq!(log_likelihood(&empty, &a, &p).unwrap(), 0.0);
        let g = CensoredGraph::new(3, [RevealedPair { u: 0, v: 1, status: EdgeStatus::Present }]).unwrap();
        assert_eq!(log_likelihood(&g, &a, &p).unwrap(), 0.7f64.ln());
    }

    #[test]
    fn relabelings() {
        assert_eq!(permissible_relabelings(&sym()), vec![vec![0, 1], vec![1, 0]]);
        let asym = ModelParams::two_community(0.5, 0.8, 0.6, 0.3, 1.0).unwrap();
        assert_eq!(permissible_relabelings(&asym), vec![vec![0, 1]]);
    }

    #[test]
    fn discrepancy_and_exact_recovery() {
        let s0 = CommunityAssignment::from_labels(vec![0, 0, 1, 1, 0], 2).unwrap();
        let swapped = s0.relabeled(&[1, 0]).unwrap();
        assert_eq!(discrepancy(&s0, &s0, &sym()).unwrap(), 0);
        assert_eq!(discrepancy(&swapped, &s0, &sym()).unwrap(), 0);
        let asym = ModelParams::two_community(0.5, 0.8, 0.6, 0.3, 1.0).unwrap();
        assert_eq!(discrepancy(&swapped, &s0, &asym).unwrap(), 5);
        assert_eq!(exact_recovery(&swapped, &s0).unwrap(), RecoveryOutcome { exact: true, misclassified: 0 });
        let one_off = CommunityAssignment::from_labels(vec![0, 0, 1, 1, 1], 2).unwrap();
        assert_eq!(exact_recovery(&one_off, &s0).unwrap(), RecoveryOutcome { exact: false, misclassified: 1 });
        let short = CommunityAssignment::from_labels(vec![0, 1], 2).unwrap();
        assert!(matches!(exact_recovery(&short, &s0).unwrap_err(), CsbmError::LengthMismatch(2, 5)));
    }

    #[test]
    fn relabeled_params_roundtrip() {
        let p = ModelParams::new(
            vec![0.2, 0.3, 0.5],
            vec![vec![0.9, 0.2, 0.1], vec![0.2, 0.8, 0.3], vec![0.1, 0.3, 0.7]],
            2.0,
        )
        .unwrap();
        let q = p.relabeled(&[2, 0, 1]).unwrap();
        assert_eq!(q.rho(), &[0.3, 0.5, 0.2]);
        assert_eq!(q.p(2, 0), p.p(0, 1));
        assert_eq!(q.relabeled(&[1, 2, 0]).unwrap(), p);
    }
}
