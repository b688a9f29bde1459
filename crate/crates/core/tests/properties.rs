use catshrink_core::bootstrap::{
    bootstrap_homogeneity, type1_quantile, BootstrapConfig, QUANTILE_LEVELS,
};
use catshrink_core::mutual_info::{mi_mle, mi_regularized, MITargetSpec};
use catshrink_core::tests::{
    homogeneity_regularized, homogeneity_z, mcnemar_regularized, mcnemar_t,
};
use catshrink_core::ContingencyTable;
use proptest::prelude::*;

fn table_strategy(max_dim: usize, max_count: u64) -> impl Strategy<Value = ContingencyTable> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(0..=max_count, r * c)
            .prop_filter("nonempty", |v| v.iter().any(|&x| x > 0))
            .prop_map(move |cells| ContingencyTable::from_cells(r, c, cells).unwrap())
    })
}

fn two_by_two(max_count: u64) -> impl Strategy<Value = ContingencyTable> {
    prop::array::uniform4(0..=max_count).prop_filter_map("positive margins", |[a, b, c, d]| {
        let t = ContingencyTable::from_cells(2, 2, vec![a, b, c, d]).ok()?;
        homogeneity_z(&t).ok().map(|_| t)
    })
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

// Straightforward double loop in probability form.
fn mi_oracle(t: &ContingencyTable) -> f64 {
    let n = t.total() as f64;
    let mut total = 0.0;
    for i in 0..t.rows() {
        for j in 0..t.cols() {
            let p = t.get(i, j) as f64 / n;
            if p > 0.0 {
                let pi = t.row_total(i) as f64 / n;
                let pj = t.col_total(j) as f64 / n;
                total += p * (p / (pi * pj)).ln();
            }
        }
    }
    total
}

proptest! {
    #[test]
    fn mle_probs_sum_to_one_and_match_margins(t in table_strategy(5, 40)) {
        let p = t.mle_probs();
        prop_assert!((p.total() - 1.0).abs() <= 1e-12);
        let n = t.total() as f64;
        for i in 0..t.rows() {
            prop_assert!((p.row_margin(i) - t.row_total(i) as f64 / n).abs() <= 1e-12);
        }
        for j in 0..t.cols() {
            prop_assert!((p.col_margin(j) - t.col_total(j) as f64 / n).abs() <= 1e-12);
        }
    }

    #[test]
    fn drop_empty_margins_is_idempotent(t in table_strategy(5, 3)) {
        let once = t.drop_empty_margins().unwrap();
        prop_assert_eq!(once.total(), t.total());
        prop_assert!(!once.row_totals().contains(&0));
        prop_assert!(!once.col_totals().contains(&0));
        prop_assert_eq!(once.drop_empty_margins().unwrap(), once);
    }

    #[test]
    fn scaled_statistics_are_linear_in_lambda(t in two_by_two(60), lambda in 0.01f64..=1.0) {
        let z = homogeneity_z(&t).unwrap();
        let r = homogeneity_regularized(&t, lambda).unwrap();
        prop_assert!((r.statistic - lambda * z).abs() <= 1e-12 * z.abs().max(1.0));
        prop_assert!((r.scaled_statistic - z).abs() <= 1e-10 * z.abs().max(1.0));
        if let Ok(tt) = mcnemar_t(&t) {
            let m = mcnemar_regularized(&t, lambda, 0.25).unwrap();
            prop_assert!((m.statistic - lambda * tt).abs() <= 1e-12 * tt.abs().max(1.0));
        }
    }

    #[test]
    fn column_swap_flips_sign(t in two_by_two(60), lambda in 0.01f64..=1.0) {
        let c = t.cells();
        let swapped = ContingencyTable::from_cells(2, 2, vec![c[1], c[0], c[3], c[2]]).unwrap();
        let a = homogeneity_regularized(&t, lambda).unwrap().statistic;
        let b = homogeneity_regularized(&swapped, lambda).unwrap().statistic;
        prop_assert_eq!(a, -b);
    }

    #[test]
    fn row_swap_flips_sign(t in two_by_two(60), lambda in 0.01f64..=1.0) {
        let c = t.cells();
        let swapped = ContingencyTable::from_cells(2, 2, vec![c[2], c[3], c[0], c[1]]).unwrap();
        let a = homogeneity_regularized(&t, lambda).unwrap().statistic;
        let b = homogeneity_regularized(&swapped, lambda).unwrap().statistic;
        prop_assert!((a + b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn z_star_falls_as_n11_rises_with_margins_fixed(
        t in two_by_two(40).prop_filter("room to move", |t| t.get(0, 1) > 0 && t.get(1, 0) > 0),
        lambda in 0.01f64..=1.0,
    ) {
        let c = t.cells();
        // n11+1, n12−1, n21−1, n22+1 keeps every margin.
        let moved = ContingencyTable::from_cells(2, 2, vec![c[0] + 1, c[1] - 1, c[2] - 1, c[3] + 1]).unwrap();
        let before = homogeneity_regularized(&t, lambda).unwrap().statistic;
        let after = homogeneity_regularized(&moved, lambda).unwrap().statistic;
        prop_assert!(after < before);
    }

    #[test]
    fn mi_is_symmetric_under_transpose(t in table_strategy(4, 20), lambda in 0.0f64..=1.0) {
        let (r, c) = t.shape();
        let targets = MITargetSpec::uniform(r, c).unwrap();
        match mi_regularized(&t, lambda, &targets) {
            Ok(a) => {
                let b = mi_regularized(&t.transpose(), lambda, &targets.transpose()).unwrap();
                prop_assert!((a.value - b.value).abs() <= 1e-12);
            }
            Err(_) => prop_assert!(mi_regularized(&t.transpose(), lambda, &targets.transpose()).is_err()),
        }
    }

    #[test]
    fn mi_approaches_mle_as_lambda_tends_to_one(t in table_strategy(4, 30)) {
        let t = t.drop_empty_margins().unwrap();
        let (r, c) = t.shape();
        let targets = MITargetSpec::uniform(r, c).unwrap();
        let mle = mi_mle(&t);
        let mut last = f64::INFINITY;
        for lambda in [0.9, 0.99, 0.999] {
            let gap = (mi_regularized(&t, lambda, &targets).unwrap().value - mle).abs();
            prop_assert!(gap <= last + 1e-12);
            last = gap;
        }
        prop_assert!(last <= 0.05);
        let at_one = mi_regularized(&t, 1.0, &targets).unwrap().value;
        prop_assert!((at_one - mle).abs() <= 1e-12);
    }

    #[test]
    fn type1_quantiles_are_monotone(mut xs in prop::collection::vec(-10.0f64..10.0, 1..300)) {
        xs.sort_by(f64::total_cmp);
        let qs: Vec<f64> = QUANTILE_LEVELS.iter().map(|&p| type1_quantile(&xs, p)).collect();
        prop_assert!(qs.windows(2).all(|w| w[0] <= w[1]));
        for (&p, &q) in QUANTILE_LEVELS.iter().zip(&qs) {
            let at_or_below = xs.iter().filter(|&&x| x <= q).count() as f64;
            prop_assert!(at_or_below >= p * xs.len() as f64 - 1e-9);
        }
    }
}

#[test]
fn mi_mle_matches_double_loop_on_random_tables() {
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let r = 1 + (rng.next_u32() % 5) as usize;
        let c = 1 + (rng.next_u32() % 5) as usize;
        let mut cells: Vec<u64> = (0..r * c).map(|_| (rng.next_u32() % 50) as u64).collect();
        cells[0] += 1;
        let t = ContingencyTable::from_cells(r, c, cells).unwrap();
        let a = mi_mle(&t);
        let b = mi_oracle(&t).max(0.0);
        assert!((a - b).abs() <= 1e-12, "{:?}: {a} vs {b}", t.to_rows());
        assert!(rel_close(a, b, 1e-9) || a.abs() < 1e-12);
    }
}

#[test]
fn bootstrap_quantiles_are_monotone() {
    let t = ContingencyTable::new(&[[12, 30], [25, 18]]).unwrap();
    for seed in 0..5 {
        let cfg = BootstrapConfig::new(500, seed, 0.05).unwrap();
        let r = bootstrap_homogeneity(&t, 0.6, &cfg).unwrap();
        let values: Vec<f64> = r.empirical_quantiles.iter().map(|q| q.value).collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "{values:?}");
    }
}
