mod common;

use common::c;
use lerch_zeta::seqspace::{
    connect_path, dist_to_cross, hyperplanes_meeting_ball, max_abs_arg, weighted_norm, CoordSeg, PathSpec, Segment,
    TruncatedSeq, WeightFamily,
};
use lerch_zeta::Complex64;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn seq(entries: Vec<Complex64>) -> TruncatedSeq {
    TruncatedSeq::new(WeightFamily::InverseN, entries)
}

/// Entries `m_n e^{iθ_n} / n` with `m_n ∈ [0.2, 2]`.
fn arb_seq(n: usize) -> impl Strategy<Value = TruncatedSeq> {
    prop::collection::vec((0.2f64..2.0, 0.0f64..TAU), n).prop_map(|v| {
        seq(v
            .into_iter()
            .enumerate()
            .map(|(i, (m, t))| Complex64::from_polar(m / (i + 1) as f64, t))
            .collect())
    })
}

#[test]
fn distance_examples() {
    let harmonic = seq((1..=10).map(|n| c(1.0 / n as f64, 0.0)).collect());
    assert!((dist_to_cross(&harmonic).unwrap() - 1.0).abs() < 1e-15);
    let mut z: Vec<_> = (1..=5).map(|n| c(1.0 / n as f64, 0.0)).collect();
    z[2] = c(0.0, 0.0);
    assert_eq!(dist_to_cross(&seq(z)).unwrap(), 0.0);
    let alt = seq((1..=10).map(|n| c((2.0 + (-1f64).powi(n)) / n as f64, 0.0)).collect());
    assert!((dist_to_cross(&alt).unwrap() - 1.0).abs() < 1e-15);
    let ones = TruncatedSeq::new(WeightFamily::Ones, vec![c(3.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)]);
    assert_eq!(weighted_norm(&ones).unwrap(), 3.0);
}

#[test]
fn connect_path_examples() {
    let w = seq((1..=8).map(|n| c(1.0 / n as f64, 0.0)).collect());
    let z = seq((1..=8).map(|n| c(0.0, 1.0 / n as f64)).collect());
    let path = connect_path(&w, &z, 64).unwrap();
    for pt in path.samples() {
        assert!(dist_to_cross(&seq(pt)).unwrap() >= 1.0 - 1e-12);
    }
    let neg = seq((1..=8).map(|n| c(-1.0 / n as f64, 0.0)).collect());
    let path = connect_path(&w, &neg, 64).unwrap();
    let tracked = path.track(None).unwrap();
    for a in tracked.final_args() {
        assert!((a - PI).abs() < 1e-12, "{a}");
    }
    let same = connect_path(&z, &z, 16).unwrap();
    for pt in same.samples() {
        for (x, y) in pt.iter().zip(&z.entries) {
            assert!((x - y).norm() <= 1e-12);
        }
    }
    let mut on_cross = z.entries.clone();
    on_cross[4] = c(0.0, 0.0);
    assert!(connect_path(&w, &seq(on_cross), 16).is_err());
}

#[test]
fn unbounded_argument_phenomenon() {
    // γ_n(t) = n^{-2-it}: Arg = -t ln n
    let coords = (1..=50)
        .map(|n| {
            let l = -(n as f64).ln();
            CoordSeg::LogLine {
                from: c(2.0 * l, 0.0),
                to: c(2.0 * l, l),
            }
        })
        .collect();
    let path = PathSpec::new(WeightFamily::InverseNPow(2.0), vec![Segment { coords }], 64).unwrap();
    assert!((max_abs_arg(&path).unwrap() - 50f64.ln()).abs() < 1e-12);
}

#[test]
fn hyperplane_examples() {
    let z = seq((1..=20).map(|n| c(1.0 / n as f64, 0.0)).collect());
    assert_eq!(
        hyperplanes_meeting_ball(&z, WeightFamily::ExpNegN, 10.0).unwrap(),
        vec![1, 2, 3]
    );
    assert!(hyperplanes_meeting_ball(&z, WeightFamily::ExpNegN, 0.1)
        .unwrap()
        .is_empty());
    let z10 = seq((1..=10).map(|n| c(1.0 / n as f64, 0.0)).collect());
    assert_eq!(
        hyperplanes_meeting_ball(&z10, WeightFamily::InverseNPow(2.0), 5.0).unwrap(),
        vec![1, 2, 3, 4, 5]
    );
    // ρ_n / r_n must decrease
    assert!(hyperplanes_meeting_ball(&z10, WeightFamily::Ones, 5.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn distance_below_norm(z in arb_seq(30)) {
        prop_assert!(dist_to_cross(&z).unwrap() <= weighted_norm(&z).unwrap());
    }

    #[test]
    fn path_stays_off_cross_with_bounded_argument(w in arb_seq(20), z in arb_seq(20)) {
        let floor = dist_to_cross(&w).unwrap().min(dist_to_cross(&z).unwrap());
        let samples = 64;
        let path = connect_path(&w, &z, samples).unwrap();
        let pts = path.samples();
        for pt in &pts {
            prop_assert!(dist_to_cross(&seq(pt.clone())).unwrap() >= floor - 1e-9);
        }
        prop_assert!(max_abs_arg(&path).unwrap() <= 3.0 * PI);
        // consecutive samples move by at most the Lipschitz constants over the step
        let (nw, nz) = (weighted_norm(&w).unwrap(), weighted_norm(&z).unwrap());
        let modulus = 2.0 * (3.0 * PI * nw + nz + nw) / samples as f64;
        for pair in pts.windows(2) {
            let step: Vec<_> = pair[0].iter().zip(&pair[1]).map(|(x, y)| x - y).collect();
            prop_assert!(weighted_norm(&seq(step)).unwrap() <= modulus);
        }
    }

    #[test]
    fn hyperplanes_monotone_and_stable(z in arb_seq(40), extra in arb_seq(80), cap in 0.5f64..200.0) {
        let small = hyperplanes_meeting_ball(&z, WeightFamily::ExpNegN, cap).unwrap();
        let large = hyperplanes_meeting_ball(&z, WeightFamily::ExpNegN, 3.0 * cap).unwrap();
        prop_assert!(small.iter().all(|i| large.contains(i)));
        let longer = seq(z.entries.iter().copied().chain(extra.entries[40..].iter().copied()).collect());
        prop_assert_eq!(hyperplanes_meeting_ball(&longer, WeightFamily::ExpNegN, cap).unwrap(), small);
    }
}
