use csbm_core::harness::sample_trial;
use csbm_core::info_geometry::{critical_threshold, genie_weight};
use csbm_core::model::EdgeStatus;
use csbm_core::recovery::{
    classify, classify_candidates, genie, spec1, spec2, spec2k, weights_k, weights_two,
};
use csbm_core::spectral::{draw_valid_y_pair, expected_spectrum};
use csbm_core::{CensoredGraph, CommunityAssignment, CsbmError, ModelParams};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Degree profiles counted straight from the pair list.
fn profiles(graph: &CensoredGraph, sigma: &CommunityAssignment) -> Vec<Vec<f64>> {
    let mut d = vec![vec![0.0; 2 * sigma.k()]; graph.n()];
    for p in graph.revealed() {
        let off = usize::from(p.status == EdgeStatus::Absent);
        d[p.u][2 * sigma.label(p.v) + off] += 1.0;
        d[p.v][2 * sigma.label(p.u) + off] += 1.0;
    }
    d
}

fn two_params() -> impl Strategy<Value = ModelParams> {
    (0.25f64..0.75, 0.1f64..0.9, 0.1f64..0.9, 0.1f64..0.9)
        .prop_filter("separated", |(_, a, b, q)| (a - q).abs() > 0.1 && (b - q).abs() > 0.1)
        .prop_map(|(rho, a, b, q)| ModelParams::two_community(rho, a, b, q, 1.0).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn genie_two_is_hyperplane_test(params in two_params(), seed in any::<u64>()) {
        let params = params.with_t(8.0).unwrap();
        let tr = sample_trial(&params, 200, seed, true).unwrap();
        let w: Vec<f64> = (0..2)
            .flat_map(|r| {
                let (a, b) = (params.p(r, 0), params.p(r, 1));
                [(a / b).ln(), ((1.0 - a) / (1.0 - b)).ln()]
            })
            .collect();
        let g = genie(&tr.graph, &params, &tr.sigma0).unwrap();
        for (v, d) in profiles(&tr.graph, &tr.sigma0).iter().enumerate() {
            let s: f64 = d.iter().zip(&w).map(|(a, b)| a * b).sum();
            if s.abs() > 1e-9 {
                prop_assert_eq!(g.label(v), usize::from(s < 0.0));
            }
        }
    }

    #[test]
    fn classify_returns_best_candidate(params in two_params(), seed in any::<u64>(), m in 1usize..4, t in -0.1f64..0.1) {
        let tr = sample_trial(&params, 80, seed, false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vectors: Vec<Vec<f64>> = (0..m).map(|_| (0..80).map(|_| rand::Rng::random_range(&mut rng, -1.0..1.0)).collect()).collect();
        let weights: Vec<f64> = (0..m).map(|_| rand::Rng::random_range(&mut rng, -2.0..2.0)).collect();
        let set = classify_candidates(&tr.graph, &vectors, &weights, t, &params).unwrap();
        prop_assert_eq!(set.candidates.len(), 1 << m);
        let best = (0..set.scores.len()).fold(0, |b, i| if set.scores[i] > set.scores[b] { i } else { b });
        let chosen = classify(&tr.graph, &vectors, &weights, t, &params).unwrap();
        prop_assert_eq!(&chosen, &set.candidates[best].1);
        let mut patterns: Vec<Vec<i8>> = set.candidates.iter().map(|c| c.0.clone()).collect();
        patterns.sort();
        patterns.dedup();
        prop_assert_eq!(patterns.len(), 1 << m);
    }

    #[test]
    fn k_plan_matches_two_plan_for_two_communities(params in two_params(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Ok(pair) = draw_valid_y_pair(&params, &mut rng) else { return Ok(()) };
        let e1 = expected_spectrum(&params, 500, pair.0).unwrap();
        let e2 = expected_spectrum(&params, 500, pair.1).unwrap();
        let two = weights_two(&params, &e1, &e2).unwrap();
        let kp = weights_k(&params, &e1, &e2).unwrap();
        let w = genie_weight(&params, 0, 1).unwrap();
        let diff: Vec<f64> = kp.combined(0).iter().zip(kp.combined(1)).map(|(a, b)| a - b).collect();
        for ((a, b), c) in diff.iter().zip(two.combined(0)).zip(&w) {
            prop_assert!((a - b).abs() <= 1e-11 && (b - c).abs() <= 1e-12);
        }
        for r in 0..2 {
            for i in 0..2 {
                let c = kp.combined(i);
                prop_assert!((c[2 * r] - params.p(r, i).ln()).abs() <= 1e-12);
                prop_assert!((c[2 * r + 1] - (1.0 - params.p(r, i)).ln()).abs() <= 1e-12);
            }
        }
        let swapped = weights_two(&params, &e2, &e1).unwrap();
        prop_assert!((swapped.alphas[0].clone() - &two.alphas[1]).amax() <= 1e-12);
        for (a, b) in swapped.combined(0).iter().zip(two.combined(0)) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }
}

#[test]
fn genie_three_is_argmax_of_scores() {
    let base = ModelParams::new(
        vec![0.3, 0.3, 0.4],
        vec![vec![0.8, 0.2, 0.1], vec![0.2, 0.7, 0.3], vec![0.1, 0.3, 0.6]],
        1.0,
    )
    .unwrap();
    let params = base.with_t(0.8 * critical_threshold(&base).unwrap().t_c).unwrap();
    let tr = sample_trial(&params, 600, 8, true).unwrap();
    let g = genie(&tr.graph, &params, &tr.sigma0).unwrap();
    let mut wrong = 0;
    for (v, d) in profiles(&tr.graph, &tr.sigma0).iter().enumerate() {
        let scores: Vec<f64> = (0..3)
            .map(|i| (0..3).map(|r| d[2 * r] * params.p(r, i).ln() + d[2 * r + 1] * (1.0 - params.p(r, i)).ln()).sum())
            .collect();
        let mut sorted = scores.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        if sorted[0] - sorted[1] > 1e-9 {
            let best = (0..3).max_by(|&a, &b| scores[a].total_cmp(&scores[b])).unwrap();
            assert_eq!(g.label(v), best, "vertex {v}");
        }
        wrong += usize::from(g.label(v) != tr.sigma0.label(v));
    }
    assert!(wrong < 600 / 10);
}

#[test]
fn pipelines_recover_easy_instances() {
    let base = ModelParams::two_community(0.5, 0.8, 0.8, 0.2, 1.0).unwrap();
    let params = base.with_t(3.0 * critical_threshold(&base).unwrap().t_c).unwrap();
    let tr = sample_trial(&params, 600, 1, true).unwrap();
    let truth = &tr.sigma0;
    let ok = |a: &CommunityAssignment| csbm_core::model::exact_recovery(a, truth).unwrap().exact;
    assert!(ok(&spec1(&tr.graph, &params).unwrap()));
    assert!(ok(&spec2(&tr.graph, &params, (0.2, 0.9)).unwrap()));
    assert!(ok(&spec2k(&tr.graph, &params, (0.2, 0.9)).unwrap()));
    assert!(ok(&genie(&tr.graph, &params, truth).unwrap()));
}

#[test]
fn pipelines_report_domain_errors() {
    let general = ModelParams::two_community(0.5, 0.8, 0.6, 0.2, 5.0).unwrap();
    let tr = sample_trial(&general, 100, 2, true).unwrap();
    assert!(matches!(spec1(&tr.graph, &general), Err(CsbmError::RegimeViolation(_))));
    assert!(matches!(spec2(&tr.graph, &general, (0.4, 0.4)), Err(CsbmError::EqualEncodings(_))));
    let sym = ModelParams::two_community(0.5, 0.7, 0.7, 0.3, 5.0).unwrap();
    let tr = sample_trial(&sym, 100, 2, true).unwrap();
    assert!(matches!(spec2k(&tr.graph, &sym, (1.0, 0.2)), Err(CsbmError::SpectralConditionViolation(_))));
    assert!(matches!(spec2(&tr.graph, &sym, (1.0, 0.2)), Err(CsbmError::ExceptionSetViolation(_))));
}
