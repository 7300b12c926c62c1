mod common;

use common::{c, gamma_stirling, hurwitz, li_neg, riemann};
use lerch_zeta::contour::{
    choose_rho, eval_zeta_k, eval_zeta_k_contour, hankel_i, hankel_i_deformed, straight_ray_integral, Bump, ContourSpec,
};
use lerch_zeta::gamma::gamma;
use lerch_zeta::num::exp_two_pi_i_minus_one;
use lerch_zeta::series::eval_zeta_k_series;
use lerch_zeta::{BranchRecord, Complex64, Param, PeriodicParams};
use proptest::prelude::*;
use std::f64::consts::PI;

fn params(a: Vec<Param>, z: Vec<Complex64>) -> PeriodicParams {
    PeriodicParams::new(a, z).unwrap()
}

fn rel(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / y.norm().max(1.0)
}

#[test]
fn gamma_examples() {
    assert!((gamma(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
    assert!((gamma(c(0.5, 0.0)).unwrap() - PI.sqrt()).norm() < 1e-13);
    let s = c(2.5, 1.0);
    assert!(rel(gamma(s + 1.0).unwrap(), s * gamma(s).unwrap()) < 1e-12);
    for s in [c(7.3, 2.0), c(-2.5, 0.4), c(0.2, -9.0)] {
        assert!(rel(gamma(s).unwrap(), gamma_stirling(s)) < 1e-11, "{s}");
    }
    assert!(gamma(c(-3.0, 0.0)).is_err());
}

#[test]
fn hankel_examples() {
    let a = Param::complex(c(0.3, 0.2));
    let spec = ContourSpec::default();
    let i0 = hankel_i(1, 1, &a, c(0.0, 0.0), c(0.0, 0.0), &spec, 1e-13).unwrap();
    let expect = 2.0 * PI * Complex64::i() / (1.0 - a.phase(1));
    assert!(rel(i0, expect) < 1e-12);
    // at s = -n only the circle survives: q·I(-n) = 2πi (-1)^n Li_{-n}(q) / n!
    let q = a.phase(1);
    for (n, fact) in [(1u32, 1.0), (2, 2.0), (3, 6.0)] {
        let i_neg = hankel_i(1, 1, &a, c(0.0, 0.0), c(-(n as f64), 0.0), &spec, 1e-13).unwrap();
        let want = 2.0 * PI * Complex64::i() * (-1f64).powi(n as i32) * li_neg(n, q) / (fact * q);
        assert!(rel(i_neg, want) < 1e-11, "{n}: {i_neg} vs {want}");
    }
    for k in 1..=3u64 {
        for l in -2..=2 {
            let i1 = hankel_i(
                1,
                k as usize,
                &Param::rational(l, k),
                c(0.4, 0.0),
                c(1.0, 0.0),
                &spec,
                1e-13,
            )
            .unwrap();
            assert!(rel(i1, 2.0 * PI * Complex64::i() / k as f64) < 1e-12);
        }
    }
}

#[test]
fn bump_is_invisible_above_the_axis() {
    let a = Param::complex(c(0.2, 0.1));
    let s = c(1.7, 0.4);
    let straight = straight_ray_integral(1, 1, &a, c(0.0, 0.0), s, 1e-12).unwrap();
    let spec = ContourSpec {
        bump: Some(Bump { u: 1.0, eps: 0.3 }),
        ..ContourSpec::default()
    };
    let bumped = hankel_i_deformed(1, 1, &a, c(0.0, 0.0), s, &spec, 1e-12).unwrap();
    assert!(rel(straight, bumped) < 1e-10);
}

#[test]
fn choose_rho_examples() {
    assert_eq!(choose_rho(&params(vec![Param::real(0.0)], vec![c(0.0, 0.0)])), 0.5);
    assert_eq!(choose_rho(&params(vec![Param::real(0.5)], vec![c(0.0, 0.0)])), 0.5);
    let p = params(
        vec![Param::real(0.26), Param::complex(c(0.9, 0.3))],
        vec![c(0.0, 0.0); 2],
    );
    let rho = choose_rho(&p);
    assert!(rho > 0.0 && rho <= 0.5);
}

#[test]
fn classical_values() {
    let p = params(vec![Param::rational(0, 1)], vec![c(0.0, 0.0)]);
    let v = eval_zeta_k(&p, c(-1.0, 0.0), 1e-12).unwrap();
    assert!((v.value + 1.0 / 12.0).norm() < 1e-11, "{v:?}");
    let pole = eval_zeta_k(&p, c(1.0, 0.0), 1e-12).unwrap();
    assert!(pole.is_pole());
    assert!((pole.pole_residue.unwrap() - 1.0).norm() < 1e-14);
    let p = params(vec![Param::rational(0, 1)], vec![c(0.5, 0.0)]);
    let v = eval_zeta_k(&p, c(2.0, 0.0), 1e-12).unwrap();
    assert!((v.value - (PI * PI / 2.0 - 4.0)).norm() < 1e-11);
}

#[test]
fn large_shift_keeps_full_accuracy() {
    // Σ_{n > 40} n^{-s} from the shifted class
    let tail = params(vec![Param::rational(0, 1)], vec![c(40.0, 0.0)]);
    for s in [c(-0.5, 0.0), c(0.25, 3.0), c(2.0, 0.0)] {
        let v = eval_zeta_k_contour(&tail, s, 1e-12, &ContourSpec::default(), &BranchRecord::principal()).unwrap();
        let oracle = hurwitz(s, 41.0);
        assert!(rel(v.value, oracle) < 1e-10, "{s}: {v:?} vs {oracle}");
        assert!(v.err < 1e-10);
    }
}

fn arb_generic_a() -> impl Strategy<Value = Param> {
    (0.0f64..1.0, 0.0f64..0.3).prop_map(|(x, y)| Param::complex(c(x, y)))
}

fn arb_entire() -> impl Strategy<Value = PeriodicParams> {
    (1usize..=3).prop_flat_map(|k| {
        (
            prop::collection::vec(arb_generic_a(), k),
            prop::collection::vec((0.0f64..1.0, -0.5f64..0.5), k),
        )
            .prop_filter_map("lattice point", |(a, z)| {
                if a.iter().any(|x| x.in_lattice(a.len())) {
                    return None;
                }
                Some(params(a, z.into_iter().map(|(x, y)| c(x, y)).collect()))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn rho_independence(p in arb_entire(), sr in -2.0f64..3.0, si in -6.0f64..6.0) {
        let tol = 1e-11;
        let s = c(sr, si);
        let rho = choose_rho(&p);
        for j in 1..=p.k {
            let x = hankel_i(j, p.k, &p.a[j - 1], p.z[j - 1], s, &ContourSpec::with_rho(rho), tol).unwrap();
            let y = hankel_i(j, p.k, &p.a[j - 1], p.z[j - 1], s, &ContourSpec::with_rho(0.4 * rho), tol).unwrap();
            prop_assert!((x - y).norm() < 10.0 * tol * x.norm().max(1.0), "{} vs {}", x, y);
        }
    }

    #[test]
    fn bridge_to_straight_ray(p in arb_entire(), sr in 1.2f64..3.0, si in -3.0f64..3.0) {
        let tol = 1e-11;
        let s = c(sr, si);
        let h = hankel_i(1, p.k, &p.a[0], p.z[0], s, &ContourSpec::default(), tol).unwrap();
        let r = straight_ray_integral(1, p.k, &p.a[0], p.z[0], s, tol).unwrap();
        prop_assert!(rel(h, exp_two_pi_i_minus_one(s) * r) < 1e-9);
    }

    #[test]
    fn functional_identity(p in arb_entire(), sr in -2.0f64..3.0, si in -5.0f64..5.0) {
        let tol = 1e-12;
        let s = c(sr, si);
        prop_assume!((s - s.re.round()).norm() > 1e-3);
        let z = eval_zeta_k_contour(&p, s, tol, &ContourSpec::default(), &BranchRecord::principal()).unwrap();
        let mut sum = c(0.0, 0.0);
        for j in 1..=p.k {
            sum += p.a[j - 1].phase(j as i64) * hankel_i(j, p.k, &p.a[j - 1], p.z[j - 1], s, &ContourSpec::default(), tol).unwrap();
        }
        let lhs = exp_two_pi_i_minus_one(s) * gamma(s).unwrap() * z.value;
        prop_assert!(rel(lhs, sum) < 1e-9, "{} vs {}", lhs, sum);
    }

    #[test]
    fn series_and_contour_agree(p in arb_entire(), sr in 2.0f64..4.0, si in -10.0f64..10.0) {
        let tol = 1e-9;
        let s = c(sr, si);
        let a = eval_zeta_k_series(&p, s, tol).unwrap();
        let b = eval_zeta_k_contour(&p, s, tol, &ContourSpec::default(), &BranchRecord::principal()).unwrap();
        prop_assert!((a.value - b.value).norm() < 2.0 * tol, "{:?} {:?}", a, b);
    }

    #[test]
    fn entire_case_is_finite_at_integers(p in arb_entire()) {
        for n in [1.0, 0.0, -1.0, -2.0] {
            let v = eval_zeta_k(&p, c(n, 0.0), 1e-10).unwrap();
            prop_assert!(!v.is_pole() && v.value.norm().is_finite());
        }
    }

    #[test]
    fn hurwitz_continuation(x in 0.1f64..2.0, sr in -3.0f64..1.0, si in -8.0f64..8.0) {
        let s = c(sr, si);
        prop_assume!((s - 1.0).norm() > 0.05);
        let p = params(vec![Param::rational(0, 1)], vec![c(x, 0.0)]);
        let v = eval_zeta_k(&p, s, 1e-12).unwrap();
        let oracle = hurwitz(s, 1.0 + x);
        prop_assert!(rel(v.value, oracle) < 1e-9, "{:?} vs {}", v, oracle);
    }

    #[test]
    fn riemann_critical_strip(t in -30.0f64..30.0) {
        let p = params(vec![Param::rational(0, 1)], vec![c(0.0, 0.0)]);
        let s = c(0.5, t);
        let v = eval_zeta_k(&p, s, 1e-12).unwrap();
        prop_assert!((v.value - riemann(s)).norm() < 1e-9);
    }
}
