use ebgwo::stats::{exact_p_value, mid_ranks, overall_effectiveness, wilcoxon_signed_rank, wtl_rank, ComparisonTable, PMethod};
use ebgwo::RngStream;
use proptest::prelude::*;

const DIM30_MEANS: &str = include_str!("fixtures/cec14_dim30_means.csv");

fn published_table() -> ComparisonTable {
    let mut lines = DIM30_MEANS.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').skip(1).collect();
    let mut table = ComparisonTable::new();
    for line in lines {
        let mut fields = line.split(',');
        let function = fields.next().unwrap();
        for (alg, v) in header.iter().zip(fields) {
            table.insert(alg, function, 30, vec![v.parse().unwrap()]);
        }
    }
    table
}

#[test]
fn published_dim30_means_rank_like_the_summary_row() {
    let wtl = wtl_rank(&published_table()).unwrap();
    let row: Vec<String> = ["EBGWO", "GWO", "mGWO", "SOGWO", "AGWO", "SCA", "WOA"]
        .iter()
        .map(|a| wtl[*a].to_string())
        .collect();
    assert_eq!(row, ["(26/0/4)", "(0/0/30)", "(0/0/30)", "(0/0/30)", "(1/0/29)", "(1/0/29)", "(2/0/28)"]);
}

#[test]
fn overall_effectiveness_spot_values() {
    assert_eq!(format!("{:.2}%", overall_effectiveness(120, 25).unwrap()), "79.17%");
    assert_eq!(format!("{:.2}%", overall_effectiveness(120, 119).unwrap()), "0.83%");
    assert_eq!(overall_effectiveness(7, 0).unwrap(), 100.0);
    assert!(overall_effectiveness(0, 0).is_err());
    assert!(overall_effectiveness(3, 4).is_err());
}

/// Two-sided p by listing all sign assignments.
fn brute_force_p(ranks: &[f64], w_plus: f64) -> f64 {
    let n = ranks.len();
    let (mut lower, mut upper) = (0u64, 0u64);
    for mask in 0u64..(1 << n) {
        let w: f64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ranks[i]).sum();
        if w <= w_plus + 1e-9 {
            lower += 1;
        }
        if w >= w_plus - 1e-9 {
            upper += 1;
        }
    }
    (2.0 * lower.min(upper) as f64 / (1u64 << n) as f64).min(1.0)
}

#[test]
fn exact_p_matches_enumeration() {
    let mut rng = RngStream::new(8);
    for n in 1..=12 {
        for trial in 0..40 {
            // coarse values on half the trials so ties occur
            let d: Vec<f64> = (0..n)
                .map(|_| {
                    let v = if trial % 2 == 0 { rng.next_in(0.1, 5.0) } else { (1 + rng.next_index(4)) as f64 };
                    if rng.next_uniform() < 0.5 { -v } else { v }
                })
                .collect();
            let zeros = vec![0.0; n];
            let t = wilcoxon_signed_rank(&d, &zeros).unwrap();
            let ranks = mid_ranks(&d.iter().map(|v| v.abs()).collect::<Vec<_>>());
            assert_eq!(t.method, PMethod::Exact);
            assert!((t.p - brute_force_p(&ranks, t.w_plus)).abs() <= 1e-12, "n={n} {d:?}");
        }
    }
}

#[test]
fn worked_examples() {
    let t = wilcoxon_signed_rank(&[2.0, 3.0, 4.0, 5.0, 6.0], &[1.0; 5]).unwrap();
    assert_eq!((t.w_plus, t.w_minus, t.n), (15.0, 0.0, 5));
    assert!((t.p - 0.0625).abs() < 1e-15);

    let t = wilcoxon_signed_rank(&[1.0, -1.0, 2.0, -2.0], &[0.0; 4]).unwrap();
    assert_eq!(t.w_plus, t.w_minus);
    assert_eq!(t.p, 1.0);

    assert!(wilcoxon_signed_rank(&[1.0, 2.0], &[1.0, 2.0]).is_err());

    // a stochastically smaller sample of 30
    let mut rng = RngStream::new(4);
    let a: Vec<f64> = (0..30).map(|_| rng.next_normal()).collect();
    let b: Vec<f64> = a.iter().map(|v| v + 0.8 + 0.3 * rng.next_normal()).collect();
    let t = wilcoxon_signed_rank(&a, &b).unwrap();
    assert_eq!(t.method, PMethod::Normal);
    assert!(t.p < 0.05 && t.w_minus > t.w_plus);
    // agrees with the exact distribution on a subsample
    let t20 = wilcoxon_signed_rank(&a[..20], &b[..20]).unwrap();
    assert!(t20.p < 0.05);
    let ranks = mid_ranks(&a[..20].iter().zip(&b[..20]).map(|(x, y)| (x - y).abs()).collect::<Vec<_>>());
    assert_eq!(t20.p, exact_p_value(&ranks, t20.w_plus));
}

proptest! {
    #[test]
    fn rank_sums_partition_the_total(pairs in prop::collection::vec((-50i32..50, -50i32..50), 1..40)) {
        let (a, b): (Vec<f64>, Vec<f64>) = pairs.iter().map(|&(x, y)| (x as f64, y as f64)).unzip();
        if let Ok(t) = wilcoxon_signed_rank(&a, &b) {
            let n = t.n as f64;
            prop_assert!((t.w_plus + t.w_minus - n * (n + 1.0) / 2.0).abs() < 1e-9);
            prop_assert!(t.p > 0.0 && t.p <= 1.0);
            let s = wilcoxon_signed_rank(&b, &a).unwrap();
            prop_assert_eq!(s.w_plus, t.w_minus);
            prop_assert_eq!(s.w_minus, t.w_plus);
            prop_assert!((s.p - t.p).abs() < 1e-12);
        }
    }
}
