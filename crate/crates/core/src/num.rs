//! Small complex-arithmetic helpers shared by the evaluators.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `e^w - 1` without cancellation for small `|w|`.
pub fn expm1(w: Complex64) -> Complex64 {
    if w.norm() > 0.5 {
        return w.exp() - 1.0;
    }
    let ex = w.re.exp();
    let half = (0.5 * w.im).sin();
    // e^x (cos y - 1) + (e^x - 1) + i e^x sin y
    Complex64::new(-2.0 * ex * half * half + w.re.exp_m1(), ex * w.im.sin())
}

/// `e^{2 pi i x}` for real `x`, with the argument reduced modulo one first.
pub fn cis_turns(x: f64) -> Complex64 {
    let r = x - x.round();
    let (s, c) = (TAU * r).sin_cos();
    Complex64::new(c, s)
}

/// `e^{2 pi i (s - round(Re s))} - 1`; exactly zero at integer `s`.
pub fn exp_two_pi_i_minus_one(s: Complex64) -> Complex64 {
    let shifted = Complex64::new(s.re - s.re.round(), s.im);
    expm1(2.0 * PI * I * shifted)
}

/// `w^s` evaluated with a prescribed argument of `w`.
pub fn pow_with_arg(w: Complex64, s: Complex64, arg: f64) -> Complex64 {
    let log = Complex64::new(w.norm().ln(), arg);
    (s * log).exp()
}

/// Principal-branch power `w^s` (argument in `(-pi, pi]`).
pub fn pow_principal(w: Complex64, s: Complex64) -> Complex64 {
    pow_with_arg(w, s, w.arg())
}

/// Argument normalised to `[0, 2 pi)`.
pub fn arg_0_2pi(w: Complex64) -> f64 {
    let a = w.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

/// Shift `candidate` by a multiple of `2 pi` so that it is within `pi` of `reference`.
pub fn unwrap_near(reference: f64, candidate: f64) -> f64 {
    let k = ((reference - candidate) / TAU).round();
    candidate + k * TAU
}

/// Ascending factorial `s (s+1) ... (s+r-1)`.
pub fn rising(s: Complex64, r: usize) -> Complex64 {
    (0..r).fold(Complex64::new(1.0, 0.0), |acc, i| acc * (s + i as f64))
}

/// `B_{2q} / (2q)!` for `q = 1..=15`.
pub const BERNOULLI_OVER_FACTORIAL: [f64; 15] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
    854_513.0 / 138.0 / 1.124_000_727_777_607_7e21,
    -236_364_091.0 / 2730.0 / 6.204_484_017_332_394e23,
    8_553_103.0 / 6.0 / 4.032_914_611_266_056_4e26,
    -23_749_461_029.0 / 870.0 / 3.048_883_446_117_138_4e29,
    8_615_841_276_005.0 / 14_322.0 / 2.652_528_598_121_910_6e32,
];

/// Membership of a complex number in `Z[1/k]` up to an absolute tolerance.
pub fn near_multiple_of_inverse(a: Complex64, k: usize, tol: f64) -> bool {
    let scaled = a * k as f64;
    scaled.im.abs() < tol * k as f64 && (scaled.re - scaled.re.round()).abs() < tol * k as f64
}

/// Nearest integer to a complex `s`, if within `tol`.
pub fn nearest_integer(s: Complex64, tol: f64) -> Option<i64> {
    let n = s.re.round();
    if (s - Complex64::new(n, 0.0)).norm() <= tol {
        Some(n as i64)
    } else {
        None
    }
}

/// Neumaier-compensated running sum of complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
    abs: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: Complex64) {
        self.abs += x.norm();
        let (re, cre) = two_sum(self.sum.re, x.re);
        let (im, cim) = two_sum(self.sum.im, x.im);
        self.sum = Complex64::new(re, im);
        self.comp += Complex64::new(cre, cim);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }

    /// Sum of the moduli of all added terms.
    pub fn abs(&self) -> f64 {
        self.abs
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let c = if a.abs() >= b.abs() { (a - s) + b } else { (b - s) + a };
    (s, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm1_matches_naive_for_large_and_small() {
        for w in [
            Complex64::new(1e-9, 2e-9),
            Complex64::new(-0.3, 0.4),
            Complex64::new(2.0, -1.0),
        ] {
            let naive = w.exp() - 1.0;
            assert!((expm1(w) - naive).norm() < 1e-15 * (1.0 + naive.norm()) + 1e-17);
        }
        let tiny = Complex64::new(1e-12, -1e-12);
        assert!((expm1(tiny) - tiny - tiny * tiny * 0.5).norm() < 1e-26);
    }

    #[test]
    fn two_pi_factor_vanishes_at_integers() {
        for n in -5..6 {
            assert_eq!(
                exp_two_pi_i_minus_one(Complex64::new(n as f64, 0.0)),
                Complex64::new(0.0, 0.0)
            );
        }
    }

    #[test]
    fn bernoulli_table_matches_zeta_even_values() {
        // B_{2q}/(2q)! = (-1)^{q+1} 2 zeta(2q) / (2 pi)^{2q}
        for (i, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate().skip(1) {
            let q = (i + 1) as i32;
            let zeta: f64 = (1..20_000).map(|n| (n as f64).powi(-2 * q)).sum();
            let sign = if q % 2 == 1 { 1.0 } else { -1.0 };
            let expected = sign * 2.0 * zeta / TAU.powi(2 * q);
            assert!(((b - expected) / expected).abs() < 1e-12, "q = {q}");
        }
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut acc = CompensatedSum::default();
        acc.add(Complex64::new(1e16, 0.0));
        for _ in 0..10 {
            acc.add(Complex64::new(1.0, 0.0));
        }
        acc.add(Complex64::new(-1e16, 0.0));
        assert_eq!(acc.value().re, 10.0);
    }

    #[test]
    fn unwrap_picks_nearest_sheet() {
        assert!((unwrap_near(3.0, -3.0) - (TAU - 3.0)).abs() < 1e-15);
        assert_eq!(unwrap_near(0.1, 0.2), 0.2);
    }
}
