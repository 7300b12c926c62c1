//! Independent reference values for integration tests.
#![allow(dead_code)]

use lerch_zeta::Complex64;
use std::f64::consts::PI;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Bernoulli numbers B_0..=B_n from Σ_{j<=m} C(m+1, j) B_j = 0.
fn bernoulli(n: usize) -> Vec<f64> {
    let mut b = vec![0.0; n + 1];
    b[0] = 1.0;
    for m in 1..=n {
        let mut acc = 0.0;
        let mut binom = 1.0; // C(m+1, 0)
        for (j, bj) in b.iter().enumerate().take(m) {
            acc += binom * bj;
            binom = binom * (m + 1 - j) as f64 / (j + 1) as f64;
        }
        b[m] = -acc / (m + 1) as f64;
    }
    b
}

/// Hurwitz ζ(s, q) for complex `s ≠ 1`, `q > 0`, by Euler-Maclaurin with a shifted head.
///
/// A head of `|s| + 10` terms keeps the correction ratio `|s + 2k|² / (2πx)²` below 0.1
/// while limiting cancellation among head terms of size `x^{-Re s}` when `Re s < 0`.
pub fn hurwitz(s: Complex64, q: f64) -> Complex64 {
    let n = 10 + s.norm().ceil() as usize;
    let b = bernoulli(24);
    let mut head = c(0.0, 0.0);
    for m in 0..n {
        head += (-s * (m as f64 + q).ln()).exp();
    }
    let x = n as f64 + q;
    let xs = (-s * x.ln()).exp();
    let mut tail = x * xs / (s - 1.0) + 0.5 * xs;
    // Σ B_{2k}/(2k)! · s(s+1)...(s+2k-2) · x^{-s-2k+1}
    let mut rising = s; // s(s+1)...(s+2k-2), k = 1
    let mut fact = 2.0; // (2k)!
    let mut pow = xs / x;
    for k in 1..=12 {
        tail += b[2 * k] / fact * rising * pow;
        rising = rising * (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
        pow /= x * x;
    }
    head + tail
}

pub fn riemann(s: Complex64) -> Complex64 {
    hurwitz(s, 1.0)
}

/// Li_{-n}(q) for n = 0..=3 as rational functions.
pub fn li_neg(n: u32, q: Complex64) -> Complex64 {
    let one = c(1.0, 0.0);
    match n {
        0 => q / (one - q),
        1 => q / (one - q).powi(2),
        2 => q * (one + q) / (one - q).powi(3),
        3 => q * (one + 4.0 * q + q * q) / (one - q).powi(4),
        _ => panic!("li_neg only tabulated for n <= 3"),
    }
}

pub const CATALAN: f64 = 0.915_965_594_177_219;

/// Li₂(i) = -π²/48 + iG.
pub fn li2_i() -> Complex64 {
    c(-PI * PI / 48.0, CATALAN)
}

/// Stirling series for ln Γ(s), Re s large; shifted by recurrence.
pub fn gamma_stirling(s: Complex64) -> Complex64 {
    let mut shift = c(1.0, 0.0);
    let mut z = s;
    while z.norm() < 20.0 || z.re < 10.0 {
        shift *= z;
        z += 1.0;
    }
    let ln = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * z) - 1.0 / (360.0 * z.powi(3))
        + 1.0 / (1260.0 * z.powi(5))
        - 1.0 / (1680.0 * z.powi(7));
    ln.exp() / shift
}

/// ζ(-n) = -B_{n+1}/(n+1) for n >= 1; ζ(0) = -1/2.
pub fn riemann_negative_integer(n: usize) -> f64 {
    if n == 0 {
        return -0.5;
    }
    -bernoulli(n + 1)[n + 1] / (n + 1) as f64
}
