//! Chernoff–Hellinger divergence, the critical reveal intensity, genie
//! hyperplanes, dissonance and its sublevel sets, and hyperplane predicates
//! over degree profiles.

use serde::{Serialize, Serializer};

use crate::error::{CsbmError, Result};
use crate::model::{DegreeProfile, ModelParams};

/// Golden-section search stops once the bracket is narrower than this.
pub const XI_TOL: f64 = 1e-12;

/// Divergences at or below this are treated as zero.
pub const INDISTINGUISHABLE_TOL: f64 = 1e-14;

/// Bisection width for boundary radii.
const RADIUS_TOL: f64 = 1e-13;

/// Maximum and maximiser of `xi -> CH_xi(mu, nu)` over `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivergenceResult {
    pub delta_plus: f64,
    pub xi_star: f64,
}

/// Per-pair entry of a [`ThresholdReport`]. Community indices are 0-based
/// in memory and serialised 1-based.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    #[serde(serialize_with = "one_based")]
    pub i: usize,
    #[serde(serialize_with = "one_based")]
    pub j: usize,
    pub delta_plus: f64,
    pub xi_star: f64,
    pub w_star: Vec<f64>,
    pub x_star: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub t_c: f64,
    #[serde(serialize_with = "one_based_pair")]
    pub argmin_pair: (usize, usize),
    pub per_pair: Vec<PairReport>,
}

impl ThresholdReport {
    /// Entry for the unordered pair `{i, j}`.
    pub fn pair(&self, i: usize, j: usize) -> Option<&PairReport> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.per_pair.iter().find(|p| p.i == a && p.j == b)
    }

    pub fn min_delta_plus(&self) -> f64 {
        1.0 / self.t_c
    }
}

fn one_based<S: Serializer>(v: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(*v as u64 + 1)
}

fn one_based_pair<S: Serializer>(v: &(usize, usize), s: S) -> std::result::Result<S::Ok, S::Error> {
    (v.0 + 1, v.1 + 1).serialize(s)
}

fn check_positive_pair(mu: &[f64], nu: &[f64]) -> Result<()> {
    if mu.len() != nu.len() {
        return Err(CsbmError::DimensionMismatch(format!("{} vs {} entries", mu.len(), nu.len())));
    }
    for (idx, &v) in mu.iter().chain(nu).enumerate() {
        if !(v > 0.0) {
            return Err(CsbmError::NonPositiveEntry(idx % mu.len().max(1), v));
        }
    }
    Ok(())
}

#[inline]
fn ch_unchecked(mu: &[f64], nu: &[f64], xi: f64) -> f64 {
    mu.iter()
        .zip(nu)
        .map(|(&m, &n)| xi * m + (1.0 - xi) * n - m.powf(xi) * n.powf(1.0 - xi))
        .sum()
}

/// `CH_xi(mu, nu) = sum_i [xi mu_i + (1 - xi) nu_i - mu_i^xi nu_i^(1 - xi)]`.
pub fn ch_value(mu: &[f64], nu: &[f64], xi: f64) -> Result<f64> {
    check_positive_pair(mu, nu)?;
    if !(0.0..=1.0).contains(&xi) {
        return Err(CsbmError::InvalidArgument(format!("xi = {xi} outside [0, 1]")));
    }
    Ok(ch_unchecked(mu, nu, xi))
}

/// Maximises the concave map `xi -> CH_xi(mu, nu)` by golden-section search.
/// Identical arguments give `(0, 0.5)`.
pub fn ch_divergence(mu: &[f64], nu: &[f64]) -> Result<DivergenceResult> {
    check_positive_pair(mu, nu)?;
    if mu == nu {
        return Ok(DivergenceResult { delta_plus: 0.0, xi_star: 0.5 });
    }
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0f64, 1.0f64);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = ch_unchecked(mu, nu, c);
    let mut fd = ch_unchecked(mu, nu, d);
    while b - a > XI_TOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = ch_unchecked(mu, nu, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = ch_unchecked(mu, nu, d);
        }
    }
    let xi_star = polish_xi(mu, nu, 0.5 * (a + b));
    let delta_plus = ch_unchecked(mu, nu, xi_star).max(0.0);
    Ok(DivergenceResult { delta_plus, xi_star })
}

/// `d/dxi CH_xi(mu, nu)`, strictly decreasing in `xi` when `mu != nu`.
#[inline]
fn ch_slope(mu: &[f64], nu: &[f64], xi: f64) -> f64 {
    mu.iter()
        .zip(nu)
        .map(|(&m, &n)| m - n - m.powf(xi) * n.powf(1.0 - xi) * (m.ln() - n.ln()))
        .sum()
}

/// Value comparisons stall once `CH` is flat to rounding; the slope keeps
/// full precision there, so the maximiser is refined by bisecting it.
fn polish_xi(mu: &[f64], nu: &[f64], xi: f64) -> f64 {
    let (mut lo, mut hi) = ((xi - 1e-5).max(0.0), (xi + 1e-5).min(1.0));
    if !(ch_slope(mu, nu, lo) > 0.0 && ch_slope(mu, nu, hi) < 0.0) {
        return xi;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if ch_slope(mu, nu, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn check_community(params: &ModelParams, i: usize) -> Result<()> {
    if i >= params.k() {
        return Err(CsbmError::CommunityOutOfRange(i, params.k()));
    }
    Ok(())
}

fn check_distinct(params: &ModelParams, i: usize, j: usize) -> Result<()> {
    check_community(params, i)?;
    check_community(params, j)?;
    if i == j {
        return Err(CsbmError::InvalidArgument(format!("communities must differ, both are {i}")));
    }
    Ok(())
}

/// `theta_i = (rho_r P_ri, rho_r (1 - P_ri))_r`.
pub fn theta(params: &ModelParams, i: usize) -> Result<Vec<f64>> {
    check_community(params, i)?;
    Ok((0..params.k())
        .flat_map(|r| {
            let rho = params.rho()[r];
            let p = params.p(r, i);
            [rho * p, rho * (1.0 - p)]
        })
        .collect())
}

/// Genie hyperplane normal `(log(P_ri / P_rj), log((1 - P_ri) / (1 - P_rj)))_r`.
pub fn genie_weight(params: &ModelParams, i: usize, j: usize) -> Result<Vec<f64>> {
    check_distinct(params, i, j)?;
    Ok((0..params.k())
        .flat_map(|r| {
            let (a, b) = (params.p(r, i), params.p(r, j));
            [a.ln() - b.ln(), (1.0 - a).ln() - (1.0 - b).ln()]
        })
        .collect())
}

fn tangency_from_xi(params: &ModelParams, i: usize, j: usize, xi: f64) -> Vec<f64> {
    (0..params.k())
        .flat_map(|r| {
            let rho = params.rho()[r];
            let (a, b) = (params.p(r, i), params.p(r, j));
            [rho * a.powf(xi) * b.powf(1.0 - xi), rho * (1.0 - a).powf(xi) * (1.0 - b).powf(1.0 - xi)]
        })
        .collect()
}

/// Point where the dissonance ranges of `i` and `j` at level `Delta_+` touch.
pub fn tangency_point(params: &ModelParams, i: usize, j: usize) -> Result<Vec<f64>> {
    check_distinct(params, i, j)?;
    let div = ch_divergence(&theta(params, i)?, &theta(params, j)?)?;
    Ok(tangency_from_xi(params, i, j, div.xi_star))
}

/// Pairwise divergences, `t_c`, and the genie weight and tangency point of every pair.
pub fn critical_threshold(params: &ModelParams) -> Result<ThresholdReport> {
    let k = params.k();
    let thetas: Vec<Vec<f64>> = (0..k).map(|i| theta(params, i)).collect::<Result<_>>()?;
    let mut per_pair = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in (i + 1)..k {
            let div = ch_divergence(&thetas[i], &thetas[j])?;
            if div.delta_plus <= INDISTINGUISHABLE_TOL {
                return Err(CsbmError::IndistinguishableCommunities(i, j, div.delta_plus));
            }
            per_pair.push(PairReport {
                i,
                j,
                delta_plus: div.delta_plus,
                xi_star: div.xi_star,
                w_star: genie_weight(params, i, j)?,
                x_star: tangency_from_xi(params, i, j, div.xi_star),
            });
        }
    }
    let best = per_pair
        .iter()
        .min_by(|a, b| a.delta_plus.total_cmp(&b.delta_plus))
        .expect("k >= 2 gives at least one pair");
    Ok(ThresholdReport { t_c: 1.0 / best.delta_plus, argmin_pair: (best.i, best.j), per_pair })
}

/// `eta_i(x) = sum_r [x_1r ln(x_1r / (e rho_r P_ri)) + x_2r ln(x_2r / (e rho_r (1 - P_ri)))] + 1`,
/// with `0 ln 0 = 0`.
pub fn dissonance(params: &ModelParams, i: usize, x: &[f64]) -> Result<f64> {
    let th = theta(params, i)?;
    if x.len() != th.len() {
        return Err(CsbmError::DimensionMismatch(format!("x has {} entries, expected {}", x.len(), th.len())));
    }
    if let Some((idx, &v)) = x.iter().enumerate().find(|(_, v)| !(**v >= 0.0)) {
        return Err(CsbmError::NegativeEntry(idx, v));
    }
    Ok(eta_unchecked(&th, x))
}

#[inline]
fn eta_unchecked(theta: &[f64], x: &[f64]) -> f64 {
    1.0 + x
        .iter()
        .zip(theta)
        .map(|(&v, &th)| if v == 0.0 { 0.0 } else { v * ((v / th).ln() - 1.0) })
        .sum::<f64>()
}

/// Whether `x` lies in the `delta`-dissonance range of community `i`.
pub fn in_dissonance_range(params: &ModelParams, i: usize, x: &[f64], delta: f64) -> Result<bool> {
    Ok(dissonance(params, i, x)? <= delta)
}

fn check_profiles(w: &[f64], sets: [&[DegreeProfile]; 2]) -> Result<()> {
    for set in sets {
        if set.is_empty() {
            return Err(CsbmError::EmptyProfileSet);
        }
        if let Some(d) = set.iter().find(|d| d.0.len() != w.len()) {
            return Err(CsbmError::DimensionMismatch(format!("profile of length {} vs weight {}", d.0.len(), w.len())));
        }
    }
    Ok(())
}

/// `w` separates `(i, j)` with margin `beta`: every profile of `i` scores at
/// least `beta / 2` and every profile of `j` at most `-beta / 2`.
pub fn separates(w: &[f64], beta: f64, profiles_i: &[DegreeProfile], profiles_j: &[DegreeProfile]) -> Result<bool> {
    check_profiles(w, [profiles_i, profiles_j])?;
    let lo = profiles_i.iter().map(|d| d.dot(w)).fold(f64::INFINITY, f64::min);
    let hi = profiles_j.iter().map(|d| d.dot(w)).fold(f64::NEG_INFINITY, f64::max);
    Ok(lo >= beta / 2.0 && hi <= -beta / 2.0)
}

/// Profiles `d` of `i` and `d_prime` of `j` lying strictly more than `beta`
/// on the same side `signs[r]` of every hyperplane `<w_r, .> = gamma_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionWitness {
    pub d: DegreeProfile,
    pub d_prime: DegreeProfile,
    pub signs: Vec<i8>,
}

/// Searches for a [`ConfusionWitness`]; `None` means the hyperplanes do not confuse `(i, j)`.
pub fn confuses(
    ws: &[Vec<f64>],
    gammas: &[f64],
    beta: f64,
    profiles_i: &[DegreeProfile],
    profiles_j: &[DegreeProfile],
) -> Result<Option<ConfusionWitness>> {
    if ws.len() != gammas.len() {
        return Err(CsbmError::LengthMismatch(ws.len(), gammas.len()));
    }
    if ws.is_empty() {
        return Err(CsbmError::InvalidArgument("need at least one hyperplane".into()));
    }
    for w in ws {
        check_profiles(w, [profiles_i, profiles_j])?;
    }
    let offsets = |d: &DegreeProfile| -> Vec<f64> { ws.iter().zip(gammas).map(|(w, g)| d.dot(w) - g).collect() };
    let off_j: Vec<Vec<f64>> = profiles_j.iter().map(offsets).collect();
    for d in profiles_i {
        let a = offsets(d);
        'next: for (dp, b) in profiles_j.iter().zip(&off_j) {
            let mut signs = Vec::with_capacity(a.len());
            for (&x, &y) in a.iter().zip(b) {
                if x > beta && y > beta {
                    signs.push(1);
                } else if x < -beta && y < -beta {
                    signs.push(-1);
                } else {
                    continue 'next;
                }
            }
            return Ok(Some(ConfusionWitness { d: d.clone(), d_prime: dp.clone(), signs }));
        }
    }
    Ok(None)
}

/// A 2-plane in profile space: `origin + a e1 + b e2` with orthonormal `e1`, `e2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    pub origin: Vec<f64>,
    pub e1: Vec<f64>,
    pub e2: Vec<f64>,
}

impl Plane {
    /// Orthonormalises the given directions (Gram–Schmidt).
    pub fn new(origin: Vec<f64>, u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        let dim = origin.len();
        if u.len() != dim || v.len() != dim {
            return Err(CsbmError::DimensionMismatch("plane directions must match the origin".into()));
        }
        let e1 = normalized(&u).ok_or_else(|| CsbmError::InvalidArgument("zero plane direction".into()))?;
        let proj = dot(&v, &e1);
        let rest: Vec<f64> = v.iter().zip(&e1).map(|(a, b)| a - proj * b).collect();
        let e2 = normalized(&rest).ok_or_else(|| CsbmError::InvalidArgument("plane directions are parallel".into()))?;
        Ok(Self { origin, e1, e2 })
    }

    /// Plane through the tangency point of `(i, j)` containing `theta_i` and `theta_j`.
    pub fn through_tangency(params: &ModelParams, i: usize, j: usize) -> Result<Self> {
        let x = tangency_point(params, i, j)?;
        let ti = theta(params, i)?;
        let tj = theta(params, j)?;
        let u: Vec<f64> = ti.iter().zip(&x).map(|(a, b)| a - b).collect();
        let v: Vec<f64> = tj.iter().zip(&x).map(|(a, b)| a - b).collect();
        Self::new(x, u, v)
    }

    pub fn point(&self, a: f64, b: f64) -> Vec<f64> {
        self.origin.iter().zip(&self.e1).zip(&self.e2).map(|((o, u), v)| o + a * u + b * v).collect()
    }

    /// In-plane coordinates of the orthogonal projection of `x`.
    pub fn coords(&self, x: &[f64]) -> (f64, f64) {
        let rel: Vec<f64> = x.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        (dot(&rel, &self.e1), dot(&rel, &self.e2))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalized(v: &[f64]) -> Option<Vec<f64>> {
    let norm = dot(v, v).sqrt();
    (norm > 1e-300).then(|| v.iter().map(|x| x / norm).collect())
}

/// Boundary sample along one ray. `clipped` is set when the ray leaves the
/// nonnegative orthant before reaching level `delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub ray_index: usize,
    pub coord1: f64,
    pub coord2: f64,
    pub radius: f64,
    pub clipped: bool,
}

/// Traces the boundary of the `delta`-dissonance range of `i` within `plane`
/// along `resolution` equally spaced rays from the plane origin.
pub fn dr_boundary_sample(
    params: &ModelParams,
    i: usize,
    delta: f64,
    plane: &Plane,
    resolution: usize,
) -> Result<Vec<BoundaryPoint>> {
    dr_boundary_sample_from(params, i, delta, plane, (0.0, 0.0), resolution)
}

/// As [`dr_boundary_sample`], with rays emanating from the in-plane point `anchor`.
/// Output coordinates are relative to the plane origin.
pub fn dr_boundary_sample_from(
    params: &ModelParams,
    i: usize,
    delta: f64,
    plane: &Plane,
    anchor: (f64, f64),
    resolution: usize,
) -> Result<Vec<BoundaryPoint>> {
    if !(delta > 0.0) {
        return Err(CsbmError::InvalidArgument(format!("delta must be positive, got {delta}")));
    }
    if resolution == 0 {
        return Err(CsbmError::InvalidArgument("resolution must be positive".into()));
    }
    let th = theta(params, i)?;
    if plane.origin.len() != th.len() {
        return Err(CsbmError::DimensionMismatch(format!("plane lives in dimension {}", plane.origin.len())));
    }
    let start = plane.point(anchor.0, anchor.1);
    let eta0 = dissonance(params, i, &start)?;
    if eta0 > delta {
        return Err(CsbmError::AnchorOutsideRange(eta0, delta));
    }
    let mut out = Vec::with_capacity(resolution);
    for ray_index in 0..resolution {
        let angle = std::f64::consts::TAU * ray_index as f64 / resolution as f64;
        let (c, s) = (angle.cos(), angle.sin());
        let dir: Vec<f64> = plane.e1.iter().zip(&plane.e2).map(|(a, b)| c * a + s * b).collect();
        let at = |r: f64| -> Vec<f64> { start.iter().zip(&dir).map(|(x, d)| (x + r * d).max(0.0)).collect() };
        let exit = start
            .iter()
            .zip(&dir)
            .filter(|(_, d)| **d < 0.0)
            .map(|(x, d)| -x / d)
            .fold(f64::INFINITY, f64::min);
        let eta_at = |r: f64| eta_unchecked(&th, &at(r));
        let (radius, clipped) = if exit.is_finite() && eta_at(exit) <= delta {
            (exit, true)
        } else {
            let mut hi = if exit.is_finite() { exit } else { 1.0 };
            while !exit.is_finite() && eta_at(hi) <= delta {
                hi *= 2.0;
            }
            let mut lo = 0.0;
            while hi - lo > RADIUS_TOL * hi.max(1.0) {
                let mid = 0.5 * (lo + hi);
                if eta_at(mid) <= delta {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            (0.5 * (lo + hi), false)
        };
        out.push(BoundaryPoint {
            ray_index,
            coord1: anchor.0 + radius * c,
            coord2: anchor.1 + radius * s,
            radius,
            clipped,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sym() -> ModelParams {
        ModelParams::two_community(0.5, 0.7, 0.7, 0.3, 1.0).unwrap()
    }

    #[test]
    fn ch_value_examples() {
        assert_eq!(ch_value(&[4.0], &[1.0], 0.5).unwrap(), 0.5);
        assert_relative_eq!(ch_value(&[0.3, 0.2], &[0.3, 0.2], 0.4).unwrap(), 0.0, epsilon = 1e-15);
        assert_relative_eq!(ch_value(&[0.3, 0.2], &[0.1, 0.6], 0.0).unwrap(), 0.0, epsilon = 1e-15);
        assert_relative_eq!(ch_value(&[0.3, 0.2], &[0.1, 0.6], 1.0).unwrap(), 0.0, epsilon = 1e-15);
        assert!(matches!(ch_value(&[1.0], &[1.0, 2.0], 0.5), Err(CsbmError::DimensionMismatch(_))));
        assert!(matches!(ch_value(&[0.0], &[1.0], 0.5), Err(CsbmError::NonPositiveEntry(0, _))));
    }

    #[test]
    fn identical_arguments_have_zero_divergence() {
        let d = ch_divergence(&[0.2, 0.8], &[0.2, 0.8]).unwrap();
        assert_eq!(d, DivergenceResult { delta_plus: 0.0, xi_star: 0.5 });
    }

    #[test]
    fn symmetric_closed_form() {
        let p = sym();
        let t1 = theta(&p, 0).unwrap();
        assert_eq!(t1.len(), 4);
        for (a, b) in t1.iter().zip([0.35, 0.15, 0.15, 0.35]) {
            assert_relative_eq!(*a, b, epsilon = 1e-15);
        }
        let d = ch_divergence(&t1, &theta(&p, 1).unwrap()).unwrap();
        assert_relative_eq!(d.delta_plus, 1.0 - 2.0 * 0.21f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(d.xi_star, 0.5, epsilon = 1e-12);
        let x = tangency_point(&p, 0, 1).unwrap();
        for v in x {
            assert_relative_eq!(v, 0.5 * 0.21f64.sqrt(), epsilon = 1e-10);
        }
    }

    #[test]
    fn genie_weight_example_and_antisymmetry() {
        let w = genie_weight(&sym(), 0, 1).unwrap();
        let l = (7.0f64 / 3.0).ln();
        for (a, b) in w.iter().zip([l, -l, -l, l]) {
            assert_relative_eq!(*a, b, epsilon = 1e-14);
        }
        let w2 = genie_weight(&sym(), 1, 0).unwrap();
        assert!(w.iter().zip(&w2).all(|(a, b)| *a == -*b));
        assert!(genie_weight(&sym(), 0, 0).is_err());
        assert!(matches!(genie_weight(&sym(), 0, 2), Err(CsbmError::CommunityOutOfRange(2, 2))));
    }

    #[test]
    fn indistinguishable_rows() {
        let p = ModelParams::new(
            vec![0.25, 0.25, 0.5],
            vec![vec![0.5, 0.5, 0.2], vec![0.5, 0.5, 0.2], vec![0.2, 0.2, 0.6]],
            1.0,
        )
        .unwrap();
        assert!(matches!(critical_threshold(&p), Err(CsbmError::IndistinguishableCommunities(0, 1, _))));
    }

    #[test]
    fn report_serialises_one_based() {
        let r = critical_threshold(&sym()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["argmin_pair"], serde_json::json!([1, 2]));
        assert_eq!(v["per_pair"][0]["i"], 1);
        assert_relative_eq!(r.t_c, 1.0 / (1.0 - 2.0 * 0.21f64.sqrt()), epsilon = 1e-8);
    }

    #[test]
    fn dissonance_examples() {
        let p = sym();
        assert_eq!(dissonance(&p, 0, &[0.0; 4]).unwrap(), 1.0);
        assert_relative_eq!(dissonance(&p, 0, &theta(&p, 0).unwrap()).unwrap(), 0.0, epsilon = 1e-15);
        assert!(matches!(dissonance(&p, 0, &[0.1, -0.1, 0.0, 0.0]), Err(CsbmError::NegativeEntry(1, _))));
        assert!(in_dissonance_range(&p, 0, &theta(&p, 0).unwrap(), 1e-6).unwrap());
        assert!(!in_dissonance_range(&p, 0, &[0.0; 4], 0.5).unwrap());
    }

    #[test]
    fn separation_examples() {
        let di = [DegreeProfile(vec![1, 0, 0, 0])];
        let dj = [DegreeProfile(vec![0, 0, 1, 0])];
        assert!(separates(&[1.0, 0.0, -1.0, 0.0], 2.0, &di, &dj).unwrap());
        assert!(!separates(&[-1.0, 0.0, 1.0, 0.0], 2.0, &di, &dj).unwrap());
        assert!(!separates(&[1.0, 0.0, -1.0, 0.0], 3.0, &di, &dj).unwrap());
        assert!(matches!(separates(&[1.0; 4], 1.0, &[], &dj), Err(CsbmError::EmptyProfileSet)));
    }

    #[test]
    fn confusion_examples() {
        let d = [DegreeProfile(vec![2, 1, 0, 3])];
        let w = vec![vec![1.0, 0.0, 0.0, 0.0]];
        let got = confuses(&w, &[0.0], 0.5, &d, &d).unwrap().unwrap();
        assert_eq!(got.signs, vec![1]);
        let di = [DegreeProfile(vec![1, 0, 0, 0])];
        let dj = [DegreeProfile(vec![0, 0, 1, 0])];
        assert!(confuses(&[vec![1.0, 0.0, -1.0, 0.0]], &[0.0], 0.5, &di, &dj).unwrap().is_none());
        assert!(matches!(confuses(&w, &[0.0, 1.0], 0.5, &d, &d), Err(CsbmError::LengthMismatch(1, 2))));
    }

    #[test]
    fn boundary_from_theta_has_positive_radii() {
        let p = sym();
        let plane = Plane::through_tangency(&p, 0, 1).unwrap();
        let anchor = plane.coords(&theta(&p, 0).unwrap());
        let pts = dr_boundary_sample_from(&p, 0, 0.05, &plane, anchor, 16).unwrap();
        assert_eq!(pts.len(), 16);
        for b in &pts {
            assert!(b.radius > 0.0);
            let eta = dissonance(&p, 0, &plane.point(b.coord1, b.coord2)).unwrap();
            if !b.clipped {
                assert!((eta - 0.05).abs() <= 1e-8, "eta {eta}");
            }
        }
        let small = dr_boundary_sample_from(&p, 0, 1e-8, &plane, anchor, 8).unwrap();
        assert!(small.iter().all(|b| b.radius < 1e-3));
    }

    #[test]
    fn boundary_rejects_outside_anchor() {
        let p = sym();
        let plane = Plane::through_tangency(&p, 0, 1).unwrap();
        let delta_plus = critical_threshold(&p).unwrap().min_delta_plus();
        let e = dr_boundary_sample(&p, 0, 0.5 * delta_plus, &plane, 8).unwrap_err();
        assert!(matches!(e, CsbmError::AnchorOutsideRange(..)));
    }
}
