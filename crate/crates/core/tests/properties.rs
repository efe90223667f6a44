mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use zrisk::fmea::{rpn_score, Factor, SodctRating};
use zrisk::fuzzy::{ImportanceTerm, RatingTerm, ReliabilityTerm, Tfn, ZNumber};
use zrisk::ranking::mid_ranks;
use zrisk::sensitivity::{apply_weight_case, spearman_rank_correlation, WeightCase};
use zrisk::stats::{cronbach_alpha, kruskal_wallis, mean_ranks, moderated_regression, ItemMatrix, RegressionSpec};
use zrisk::swara::{derive_weights, Recurrence, SwaraOptions};
use zrisk::waspas::{MatrixMode, DEFAULT_TIE_TOLERANCE};

fn tfn(lo: f64, hi: f64) -> impl Strategy<Value = Tfn> {
    (lo..hi, lo..hi, lo..hi).prop_map(|(x, y, z)| {
        let mut v = [x, y, z];
        v.sort_by(f64::total_cmp);
        Tfn::new(v[0], v[1], v[2]).unwrap()
    })
}

fn ordered(t: &Tfn) -> bool {
    t.a() <= t.b() && t.b() <= t.c()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tfn_operations_stay_ordered(x in tfn(0.0, 20.0), y in tfn(0.001, 20.0), k in 0.0..10.0f64, w in 0.0..=1.0f64) {
        prop_assert!(ordered(&(x + y)));
        prop_assert!(ordered(&x.mul(y).unwrap()));
        prop_assert!(ordered(&x.div(y).unwrap()));
        prop_assert!(ordered(&x.scale(k).unwrap()));
        prop_assert!(ordered(&x.pow(w).unwrap()));
    }

    #[test]
    fn centroid_lies_in_support(x in tfn(-50.0, 50.0)) {
        let c = x.centroid();
        prop_assert!(x.a() <= c && c <= x.c());
    }

    #[test]
    fn z_conversion_never_inflates(r in tfn(0.0, 10.0), l in tfn(0.0, 1.0)) {
        let z = ZNumber::new(r, l).unwrap().to_tfn();
        prop_assert!(ordered(&z));
        prop_assert!(z.c() <= r.c() + 1e-12);
        prop_assert!(z.a() <= r.a() + 1e-12);
    }

    #[test]
    fn spearman_symmetric_and_bounded(a in permutation(8), b in permutation(8)) {
        let x = spearman_rank_correlation(&a, &b).unwrap();
        let y = spearman_rank_correlation(&b, &a).unwrap();
        prop_assert_eq!(x, y);
        prop_assert!((-1.0..=1.0).contains(&x));
        prop_assert_eq!(spearman_rank_correlation(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn rpn_is_monotone(values in prop::array::uniform5(1u8..=10), bump in 0usize..5) {
        let ratings = |v: [u8; 5]| -> Vec<SodctRating> {
            Factor::ALL.iter().zip(v).map(|(f, x)| SodctRating::new("E1", "F1", *f, x)).collect()
        };
        let base = rpn_score(&ratings(values)).unwrap().value;
        prop_assert!((1.0..=100_000.0).contains(&base));
        let mut up = values;
        up[bump] = (up[bump] + 1).min(10);
        prop_assert!(rpn_score(&ratings(up)).unwrap().value >= base);
    }

    #[test]
    fn alpha_invariant_under_shift_and_scale(
        rows in prop::collection::vec(prop::collection::vec(1.0..5.0f64, 4), 6..20),
        shift in -3.0..3.0f64,
        col in 0usize..4,
        scale in 0.1..10.0f64,
    ) {
        let base = ItemMatrix::from_rows(rows.clone()).unwrap();
        let Ok(a) = cronbach_alpha(&base) else { return Ok(()) };
        let shifted: Vec<Vec<f64>> = rows.iter().map(|r| {
            r.iter().enumerate().map(|(j, v)| if j == col { v + shift } else { *v }).collect()
        }).collect();
        let scaled: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|v| v * scale).collect()).collect();
        let b = cronbach_alpha(&ItemMatrix::from_rows(shifted).unwrap()).unwrap().alpha;
        let c = cronbach_alpha(&ItemMatrix::from_rows(scaled).unwrap()).unwrap().alpha;
        prop_assert!((a.alpha - b).abs() < 1e-9 * (1.0 + a.alpha.abs()));
        prop_assert!((a.alpha - c).abs() < 1e-9 * (1.0 + a.alpha.abs()));
    }

    #[test]
    fn kruskal_matches_direct_formula(
        groups in prop::collection::vec(prop::collection::vec((1u8..=5).prop_map(f64::from), 1..6), 2..5)
    ) {
        let kw = kruskal_wallis(&groups).unwrap();
        prop_assert!(kw.h >= 0.0);
        // brute force: rank by counting, tie correction by counting
        let pooled: Vec<f64> = groups.iter().flatten().copied().collect();
        let n = pooled.len() as f64;
        let rank = |v: f64| {
            let below = pooled.iter().filter(|&&x| x < v).count() as f64;
            let equal = pooled.iter().filter(|&&x| x == v).count() as f64;
            below + (equal + 1.0) / 2.0
        };
        let s: f64 = groups.iter().map(|g| {
            let r: f64 = g.iter().map(|&v| rank(v)).sum();
            r * r / g.len() as f64
        }).sum();
        let h = 12.0 / (n * (n + 1.0)) * s - 3.0 * (n + 1.0);
        let mut distinct = pooled.clone();
        distinct.sort_by(f64::total_cmp);
        distinct.dedup();
        let ties: f64 = distinct.iter().map(|&v| {
            let t = pooled.iter().filter(|&&x| x == v).count() as f64;
            t * t * t - t
        }).sum();
        let corr = 1.0 - ties / (n * n * n - n);
        let expected = if corr <= 0.0 { 0.0 } else { (h / corr).max(0.0) };
        prop_assert!((kw.h - expected).abs() < 1e-9, "{} vs {}", kw.h, expected);
    }

    #[test]
    fn mean_ranks_sum(rows in prop::collection::vec(prop::collection::vec(1u8..=5, 5), 1..15)) {
        let m = ItemMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect()).unwrap();
        let total: f64 = mean_ranks(&m).unwrap().iter().sum();
        prop_assert!((total - 15.0).abs() < 1e-9);
        for r in &m.rows {
            let ranks = mid_ranks(r);
            prop_assert!((ranks.iter().sum::<f64>() - 15.0).abs() < 1e-12);
        }
    }

    #[test]
    fn interaction_never_lowers_r_squared(
        data in prop::collection::vec((1.0..5.0f64, 1.0..5.0f64, 1.0..5.0f64), 8..40)
    ) {
        let m = ItemMatrix::new(
            (0..data.len()).map(|i| i.to_string()).collect(),
            vec!["y".into(), "x".into(), "m".into()],
            data.iter().map(|(y, x, m)| vec![*y, *x, *m]).collect(),
        ).unwrap();
        if let Ok(fit) = moderated_regression(&RegressionSpec::new("y", "x", "m"), &m) {
            prop_assert!((0.0..=1.0).contains(&fit.r_squared));
            prop_assert!(fit.r_squared + 1e-9 >= fit.r_squared_main_effects);
        }
    }

    #[test]
    fn swara_standard_weights(seed in any::<u64>(), n in 2usize..8, experts in 1usize..5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let j = common::random_weighting(&mut rng, n, experts);
        let w = derive_weights(&j, SwaraOptions::default()).unwrap().weights;
        prop_assert!((w.crisp_w.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(w.crisp_w.windows(2).all(|p| p[1] <= p[0]));
        prop_assert!(w.fuzzy_w.iter().all(ordered));
    }

    #[test]
    fn weight_case_scale_does_not_matter(seed in any::<u64>(), k in 0.01..100.0f64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let panel = common::random_panel(&mut rng, 6, 2, None);
        let raw = [0.3, 0.1, 0.25, 0.2, 0.15];
        let case = |s: f64| WeightCase::new("c", &common::FACTORS.iter().zip(raw).map(|(f, w)| (*f, w * s)).collect::<Vec<_>>());
        let a = apply_weight_case(&panel.input, &case(1.0), MatrixMode::Z, DEFAULT_TIE_TOLERANCE).unwrap();
        let b = apply_weight_case(&panel.input, &case(k), MatrixMode::Z, DEFAULT_TIE_TOLERANCE).unwrap();
        prop_assert_eq!(a.ranks(), b.ranks());
    }

    #[test]
    fn dominating_row_ranks_first(seed in any::<u64>(), m in 2usize..10) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = (seed % m as u64) as usize;
        let panel = common::random_panel(&mut rng, m, 3, Some(d));
        for mode in [MatrixMode::Z, MatrixMode::Fuzzy] {
            let uniform = WeightCase::new("u", &common::FACTORS.map(|f| (f, 1.0)));
            let r = apply_weight_case(&panel.input, &uniform, mode, DEFAULT_TIE_TOLERANCE).unwrap();
            prop_assert_eq!(r.ranks()[d], 1);
        }
    }
}

#[test]
fn literal_recurrence_inverts_the_ordering() {
    use zrisk::swara::CriterionJudgment;
    let j = vec![
        CriterionJudgment::top("E1", "A"),
        CriterionJudgment::ranked("E1", "B", 2, ImportanceTerm::Less, ReliabilityTerm::High),
        CriterionJudgment::ranked("E1", "C", 3, ImportanceTerm::Less, ReliabilityTerm::High),
    ];
    let opts = SwaraOptions { recurrence: Recurrence::Literal, ..Default::default() };
    let w = derive_weights(&j, opts).unwrap().weights.crisp_w;
    assert!(w[0] < w[1] && w[1] < w[2], "{w:?}");
}

#[test]
fn rating_terms_are_monotone() {
    for pair in RatingTerm::ALL.windows(2) {
        assert!(pair[1].tfn().dominates(&pair[0].tfn()));
    }
}
