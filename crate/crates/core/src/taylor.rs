//! Taylor continuation of `Σ b_n z_n^s` in the sequence variable, and perturbed
//! general Dirichlet series.
//!
//! At a window of length `N` the increment `ζ(b, z + w, s) - ζ(b, z, s)` is
//! `Σ_{m >= 1} P_m(w)` with `P_m(w) = binom(s, m) Σ_n b_n z_n^{s-m} w_n^m`. The branch of
//! `z_n^s` is fixed once per coordinate and reused for every order `m`.

use crate::error::{Result, ZetaError};
use crate::num::{pow_with_arg, CompensatedSum};
use crate::params::{BranchRecord, EvalResult, Method};
use crate::seqspace::{dist_to_cross, Tail, TailFn, TruncatedSeq, WeightFamily};
use crate::series::eval_er_series;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// `binom(s, m) = s (s-1) ... (s-m+1) / m!`, built by the ratio `(s-m+1)/m`.
pub fn binomial(s: Complex64, m: usize) -> Complex64 {
    let mut c = Complex64::new(1.0, 0.0);
    for i in 1..=m {
        c *= (s - (i - 1) as f64) / i as f64;
    }
    c
}

/// The `m`-homogeneous Taylor polynomial `P_m` at `z`.
#[derive(Debug, Clone)]
pub struct TaylorCoefficient {
    pub m: usize,
    pub binom: Complex64,
    /// `b_n z_n^s` per window coordinate.
    head: Vec<Complex64>,
    /// `1 / z_n` per window coordinate.
    inv: Vec<Complex64>,
}

impl TaylorCoefficient {
    /// `P_m(w)`; zero for `m = 0` (the constant term is not an increment).
    pub fn eval(&self, w: &[Complex64]) -> Complex64 {
        if self.m == 0 || self.binom == Complex64::new(0.0, 0.0) {
            return Complex64::new(0.0, 0.0);
        }
        let mut acc = CompensatedSum::default();
        for ((h, inv), wn) in self.head.iter().zip(&self.inv).zip(w) {
            acc.add(h * (wn * inv).powu(self.m as u32));
        }
        self.binom * acc.value()
    }
}

/// `b_n z_n^s` and `1/z_n` on the window, with arguments of `z_n` from `branch`.
fn window_data(
    b: &TruncatedSeq,
    z: &TruncatedSeq,
    s: Complex64,
    branch: &BranchRecord,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let n = z.len();
    let mut head = Vec::with_capacity(n);
    let mut inv = Vec::with_capacity(n);
    for i in 1..=n {
        let zn = z.entries[i - 1];
        if zn.norm() == 0.0 {
            return Err(ZetaError::Domain(format!("z_{i} = 0 lies on the coordinate cross")));
        }
        let bn = b.get(i).unwrap_or(Complex64::new(0.0, 0.0));
        head.push(bn * pow_with_arg(zn, s, branch.arg_for(i, zn)));
        inv.push(1.0 / zn);
    }
    Ok((head, inv))
}

/// `P_m` at `z` for the coefficients `b` and exponent `s`, principal branch.
pub fn taylor_coefficient(b: &TruncatedSeq, z: &TruncatedSeq, s: Complex64, m: usize) -> Result<TaylorCoefficient> {
    taylor_coefficient_with_branch(b, z, s, m, &BranchRecord::principal())
}

pub fn taylor_coefficient_with_branch(
    b: &TruncatedSeq,
    z: &TruncatedSeq,
    s: Complex64,
    m: usize,
    branch: &BranchRecord,
) -> Result<TaylorCoefficient> {
    let (head, inv) = window_data(b, z, s, branch)?;
    Ok(TaylorCoefficient {
        m,
        binom: binomial(s, m),
        head,
        inv,
    })
}

/// Admissible perturbation domains with their witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TaylorDomain {
    /// `|w_n| <= beta / n` with `beta < d`.
    BallH1 {
        beta: f64,
    },
    /// `|w_n| <= beta / n^{1+eta}` with `beta < d`; holomorphic in `Re s > half_plane`.
    Polydisk {
        beta: f64,
        eta: f64,
        half_plane: f64,
    },
    /// `|w_n| <= beta e^{-eta n} / n` with `beta < d`; entire in `s`.
    Entire {
        beta: f64,
        eta: f64,
    },
    None,
}

impl TaylorDomain {
    /// The envelope `g_n` with `|w_n| <= g_n`.
    pub fn envelope(&self, n: usize) -> f64 {
        let nf = n as f64;
        match *self {
            TaylorDomain::BallH1 { beta } => beta / nf,
            TaylorDomain::Polydisk { beta, eta, .. } => beta * nf.powf(-1.0 - eta),
            TaylorDomain::Entire { beta, eta } => beta * (-eta * nf).exp() / nf,
            TaylorDomain::None => f64::INFINITY,
        }
    }
}

/// `n^alpha e^{gamma n}`: the shape of weights and envelopes in log form.
#[derive(Debug, Clone, Copy)]
struct Shape {
    alpha: f64,
    gamma: f64,
}

impl Shape {
    fn of_weight(w: WeightFamily) -> Self {
        match w {
            WeightFamily::Ones => Shape { alpha: 0.0, gamma: 0.0 },
            WeightFamily::InverseN => Shape {
                alpha: -1.0,
                gamma: 0.0,
            },
            WeightFamily::InverseNPow(eta) => Shape {
                alpha: -eta,
                gamma: 0.0,
            },
            WeightFamily::ExpNegN => Shape {
                alpha: 0.0,
                gamma: -1.0,
            },
        }
    }

    fn ln_at(&self, n: f64) -> f64 {
        self.alpha * n.ln() + self.gamma * n
    }

    /// `sup_{n >= first} ln(n^alpha e^{gamma n})`, `+inf` if unbounded.
    fn ln_sup_from(&self, first: f64) -> f64 {
        if self.gamma > 0.0 || (self.gamma == 0.0 && self.alpha > 0.0) {
            return f64::INFINITY;
        }
        if self.gamma < 0.0 && self.alpha > 0.0 {
            let peak = -self.alpha / self.gamma;
            if peak > first {
                return self.ln_at(peak);
            }
        }
        self.ln_at(first)
    }
}

/// `(ln A, shape)` with `|w_n| <= A · shape(n)` beyond the window.
fn tail_envelope(w: &TruncatedSeq) -> Option<(f64, Shape)> {
    match w.tail.as_ref()? {
        Tail::ScaledWeight(c) => Some((c.norm().ln(), Shape::of_weight(w.weight))),
        Tail::Generator { ratio_sup, .. } => Some((ratio_sup.ln(), Shape::of_weight(w.weight))),
        Tail::Geometric { c, q } => Some((
            c.norm().ln(),
            Shape {
                alpha: 0.0,
                gamma: q.ln(),
            },
        )),
    }
}

/// `sup_n |w_n| / env_n` over window and tail, with `env_n = n^{ea} e^{eg n}`.
fn witness_beta(w: &TruncatedSeq, env: Shape) -> f64 {
    let mut beta: f64 = 0.0;
    for (i, wn) in w.entries.iter().enumerate() {
        if wn.norm() > 0.0 {
            beta = beta.max((wn.norm().ln() - env.ln_at((i + 1) as f64)).exp());
        }
    }
    if let Some((ln_a, shape)) = tail_envelope(w) {
        if ln_a.is_finite() {
            let ratio = Shape {
                alpha: shape.alpha - env.alpha,
                gamma: shape.gamma - env.gamma,
            };
            beta = beta.max((ln_a + ratio.ln_sup_from((w.len() + 1) as f64)).exp());
        }
    }
    beta
}

/// Largest decay rate supported by consecutive window entries for the envelope
/// `n^{-1-eta}` (`poly`) or `e^{-eta n}/n` (exponential), and the tail's limit.
fn decay_rate(w: &TruncatedSeq, poly: bool) -> f64 {
    let mut rate = f64::INFINITY;
    for i in 1..w.len() {
        let (x, y) = (w.entries[i - 1].norm(), w.entries[i].norm());
        if x == 0.0 || y == 0.0 {
            continue;
        }
        let (n0, n1) = (i as f64, (i + 1) as f64);
        let r = if poly {
            ((n0 * x).ln() - (n1 * y).ln()) / (n1 / n0).ln()
        } else {
            (n0 * x).ln() - (n1 * y).ln()
        };
        rate = rate.min(r);
    }
    if let Some((_, shape)) = tail_envelope(w) {
        let limit = if poly {
            if shape.gamma < 0.0 {
                f64::INFINITY
            } else {
                -shape.alpha - 1.0
            }
        } else {
            // strictly below the tail rate keeps the envelope ratio bounded
            0.5 * -shape.gamma
        };
        rate = rate.min(limit);
    }
    if rate.is_infinite() {
        1.0
    } else {
        rate
    }
}

/// `inf_n n |z_n|`, the distance of `z` to the cross in the `1/n` weight.
pub fn cross_distance_h1(z: &TruncatedSeq) -> Result<f64> {
    dist_to_cross(&z.reweighted(WeightFamily::InverseN))
}

/// Smallest envelope parameter `beta` for `|w_n| <= beta / n^{1+eta}`.
pub fn polydisk_beta(w: &TruncatedSeq, eta: f64) -> f64 {
    witness_beta(
        w,
        Shape {
            alpha: -1.0 - eta,
            gamma: 0.0,
        },
    )
}

/// Smallest `beta` for `|w_n| <= beta e^{-eta n} / n`.
pub fn entire_beta(w: &TruncatedSeq, eta: f64) -> f64 {
    witness_beta(
        w,
        Shape {
            alpha: -1.0,
            gamma: -eta,
        },
    )
}

/// Smallest `beta` for `|w_n| <= beta / n`.
pub fn ball_beta(w: &TruncatedSeq) -> f64 {
    witness_beta(
        w,
        Shape {
            alpha: -1.0,
            gamma: 0.0,
        },
    )
}

const RATE_SCALES: [f64; 6] = [1.0, 0.9, 0.75, 0.5, 0.25, 0.1];

/// Strongest of the three domains containing `w`, relative to `d = inf_n n|z_n|`.
pub fn domain_classify(z: &TruncatedSeq, w: &TruncatedSeq) -> Result<TaylorDomain> {
    let d = cross_distance_h1(z)?;
    if d <= 0.0 {
        return Err(ZetaError::Domain("z lies on the closed coordinate cross".into()));
    }
    let rate = decay_rate(w, false);
    if rate > 0.0 {
        for scale in RATE_SCALES {
            let eta = rate * scale;
            let beta = entire_beta(w, eta);
            if beta < d {
                return Ok(TaylorDomain::Entire { beta, eta });
            }
        }
    }
    let rate = decay_rate(w, true);
    if rate > 0.0 {
        for scale in RATE_SCALES {
            let eta = rate * scale;
            let beta = polydisk_beta(w, eta);
            if beta < d {
                return Ok(TaylorDomain::Polydisk {
                    beta,
                    eta,
                    half_plane: 1.0 - eta,
                });
            }
        }
    }
    let beta = ball_beta(w);
    if beta < d {
        return Ok(TaylorDomain::BallH1 { beta });
    }
    Ok(TaylorDomain::None)
}

/// `Σ_{m > M} |binom(s, m)| Σ_n |b_n z_n^s| (g_n/|z_n|)^m` for `M = 0..=m_max`, where
/// `g_n` is the envelope of the domain. Entry `M` bounds the remainder after order `M`.
pub fn taylor_majorants(
    b: &TruncatedSeq,
    z: &TruncatedSeq,
    s: Complex64,
    domain: &TaylorDomain,
    m_max: usize,
    branch: &BranchRecord,
) -> Result<Vec<f64>> {
    if matches!(domain, TaylorDomain::None) {
        return Err(ZetaError::Domain("no admissible perturbation domain".into()));
    }
    let (head, _) = window_data(b, z, s, branch)?;
    let amp: Vec<f64> = head.iter().map(|h| h.norm()).collect();
    let q: Vec<f64> = z
        .entries
        .iter()
        .enumerate()
        .map(|(i, zn)| domain.envelope(i + 1) / zn.norm())
        .collect();
    let q_max = q.iter().copied().fold(0.0, f64::max);
    if q_max >= 1.0 {
        return Err(ZetaError::Domain(format!(
            "envelope reaches |z_n| (ratio {q_max}); the expansion does not converge"
        )));
    }
    let horizon = 2 * m_max + 64;
    let mut terms = vec![0.0; horizon + 1];
    let mut pw = vec![1.0; q.len()];
    let mut c = 1.0;
    for (m, slot) in terms.iter_mut().enumerate().skip(1) {
        c *= (s - (m - 1) as f64).norm() / m as f64;
        let mut inner = 0.0;
        for (p, (qn, an)) in pw.iter_mut().zip(q.iter().zip(&amp)) {
            *p *= qn;
            inner += an * *p;
        }
        *slot = c * inner;
    }
    // remainder beyond the horizon: term ratios are at most r q_max
    let r = (s.norm() + horizon as f64) / (horizon + 1) as f64;
    let rho = r * q_max;
    let rest = if rho < 1.0 {
        terms[horizon] * rho / (1.0 - rho)
    } else {
        f64::INFINITY
    };
    let mut out = vec![0.0; m_max + 1];
    let mut acc = rest;
    for m in (1..=horizon).rev() {
        if m - 1 <= m_max {
            out[m - 1] = acc + terms[m];
        }
        acc += terms[m];
    }
    Ok(out)
}

/// `ζ(b, z + w, s) - ζ(b, z, s)` on the window by the Taylor series in `w`, principal branch.
pub fn taylor_continue(
    b: &TruncatedSeq,
    z: &TruncatedSeq,
    w: &TruncatedSeq,
    s: Complex64,
    m_max: usize,
    tol: f64,
) -> Result<EvalResult> {
    taylor_continue_with_branch(b, z, w, s, m_max, tol, &BranchRecord::principal())
}

/// As [`taylor_continue`] with the arguments of `z_n` taken from `branch`.
///
/// The order `M' <= m_max` is the first one whose domain majorant is below `tol/2`.
#[allow(clippy::too_many_arguments)]
pub fn taylor_continue_with_branch(
    b: &TruncatedSeq,
    z: &TruncatedSeq,
    w: &TruncatedSeq,
    s: Complex64,
    m_max: usize,
    tol: f64,
    branch: &BranchRecord,
) -> Result<EvalResult> {
    if !(tol > 0.0) {
        return Err(ZetaError::Precondition("tol must be positive".into()));
    }
    if w.len() != z.len() {
        return Err(ZetaError::Precondition(format!(
            "perturbation window {} differs from the base window {}",
            w.len(),
            z.len()
        )));
    }
    if w.tail.is_some() {
        return Err(ZetaError::UnsupportedTail(
            "the perturbation must vanish beyond the window".into(),
        ));
    }
    if w.entries.iter().all(|x| x.norm() == 0.0) {
        return Ok(EvalResult::new(Complex64::new(0.0, 0.0), 0.0, Method::Taylor, 0));
    }
    let domain = domain_classify(z, w)?;
    if let TaylorDomain::None = domain {
        let d = cross_distance_h1(z)?;
        return Err(ZetaError::Domain(format!(
            "w lies in no domain: sup n|w_n| = {} is not below inf n|z_n| = {d}",
            ball_beta(w)
        )));
    }
    let bounds = taylor_majorants(b, z, s, &domain, m_max, branch)?;
    let m_used = match bounds.iter().position(|&x| x <= 0.5 * tol) {
        Some(m) => m,
        None => {
            return Err(ZetaError::Truncation {
                achieved: bounds[m_max],
                tol,
                terms: m_max,
            })
        }
    };
    let (head, inv) = window_data(b, z, s, branch)?;
    let ratio: Vec<Complex64> = w.entries.iter().zip(&inv).map(|(wn, i)| wn * i).collect();
    let mut pw = vec![Complex64::new(1.0, 0.0); ratio.len()];
    let mut c = Complex64::new(1.0, 0.0);
    let mut total = CompensatedSum::default();
    for m in 1..=m_used {
        c *= (s - (m - 1) as f64) / m as f64;
        let mut inner = CompensatedSum::default();
        for (p, (r, h)) in pw.iter_mut().zip(ratio.iter().zip(&head)) {
            *p *= r;
            inner.add(h * *p);
        }
        total.add(c * inner.value());
    }
    let err = bounds[m_used] + 8.0 * f64::EPSILON * total.abs();
    Ok(EvalResult::new(total.value(), err, Method::Taylor, m_used))
}

/// Relative rounding allowance when both sides of the perturbation test agree.
const ROUNDING_SLACK: f64 = 8.0 * f64::EPSILON;

/// `|e^{-λ_n} - e^{-λ_n - δ_n}| < beta e^{-eta n} / n` for all `n <= n_max`, with the
/// perturbed exponents `μ_n = λ_n + δ_n` given through the shift `δ_n`.
///
/// Passing the shift keeps perturbations below the rounding of `λ_n` exact. Sides that
/// agree to rounding count as satisfying the inequality.
pub fn dirichlet_perturb_ok(
    lambda: impl Fn(usize) -> f64,
    shift: impl Fn(usize) -> f64,
    beta: f64,
    eta: f64,
    n_max: usize,
) -> bool {
    (1..=n_max).all(|n| {
        let d = shift(n);
        if d == 0.0 {
            return true;
        }
        let nf = n as f64;
        // both sides in logs, λ_n - ln n grouped first so ln n cancels exactly
        let ln_lhs = (-d).exp_m1().abs().ln();
        let ln_rhs = (lambda(n) - nf.ln()) + beta.ln() - eta * nf;
        ln_lhs < ln_rhs + ROUNDING_SLACK * (1.0 + ln_rhs.abs())
    })
}

/// [`dirichlet_perturb_ok`] with explicit exponents `μ_n`; the shift is `μ_n - λ_n`.
pub fn dirichlet_perturb_ok_pair(
    lambda: impl Fn(usize) -> f64,
    mu: impl Fn(usize) -> f64,
    beta: f64,
    eta: f64,
    n_max: usize,
) -> bool {
    dirichlet_perturb_ok(&lambda, |n| mu(n) - lambda(n), beta, eta, n_max)
}

/// Exponent sequences `λ_n` of a general Dirichlet series with known envelopes.
#[derive(Clone)]
pub enum Exponents {
    /// `λ_n = ln n`, so `z_n = 1/n`.
    LogN,
    /// `λ_n = c n`, so `z_n = e^{-cn}`.
    Linear(f64),
    /// Arbitrary strictly increasing `λ_n` with `e^{-λ_n} = O(r_n)` in `weight`.
    Custom {
        lambda: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
        weight: WeightFamily,
        ratio_sup: f64,
    },
}

impl Exponents {
    pub fn at(&self, n: usize) -> f64 {
        match self {
            Exponents::LogN => (n as f64).ln(),
            Exponents::Linear(c) => c * n as f64,
            Exponents::Custom { lambda, .. } => lambda(n),
        }
    }

    /// `z_n = e^{-λ_n}` on `n <= window`, with a tail descriptor.
    pub fn er_variable(&self, window: usize) -> TruncatedSeq {
        let (weight, tail) = match self {
            Exponents::LogN => (WeightFamily::InverseN, Tail::ScaledWeight(Complex64::new(1.0, 0.0))),
            Exponents::Linear(c) => (
                WeightFamily::ExpNegN,
                Tail::Geometric {
                    c: Complex64::new(1.0, 0.0),
                    q: (-c).exp(),
                },
            ),
            Exponents::Custom {
                lambda,
                weight,
                ratio_sup,
            } => {
                let lam = lambda.clone();
                let f: TailFn = Arc::new(move |n| Complex64::new((-lam(n)).exp(), 0.0));
                (
                    *weight,
                    Tail::Generator {
                        f,
                        ratio_sup: *ratio_sup,
                        ratio_inf: 0.0,
                        arg_bound: 0.0,
                    },
                )
            }
        };
        let entries = (1..=window).map(|n| Complex64::new((-self.at(n)).exp(), 0.0)).collect();
        TruncatedSeq::new(weight, entries).with_tail(tail)
    }
}

/// `Σ a_n e^{-λ_n s}` through the ER form with `z_n = e^{-λ_n}`.
///
/// `a` carries its own tail descriptor; convergence is decided by the ER majorant.
pub fn dirichlet_eval(a: &TruncatedSeq, lambda: &Exponents, s: Complex64, tol: f64) -> Result<EvalResult> {
    if let Exponents::Linear(c) = lambda {
        if !(*c > 0.0) {
            return Err(ZetaError::Precondition("linear exponents need a positive slope".into()));
        }
    }
    let z = lambda.er_variable(a.len().max(1));
    eval_er_series(a, &z, s, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn harmonic(n: usize) -> TruncatedSeq {
        TruncatedSeq::from_fn(WeightFamily::InverseN, n, |i| c(1.0 / i as f64, 0.0))
    }

    fn ones(n: usize) -> TruncatedSeq {
        TruncatedSeq::from_fn(WeightFamily::Ones, n, |_| c(1.0, 0.0))
    }

    #[test]
    fn first_order_on_a_basis_vector() {
        let beta = 0.3;
        let mut w = vec![c(0.0, 0.0); 5];
        w[0] = c(beta, 0.0);
        let p1 = taylor_coefficient(&ones(5), &harmonic(5), c(2.0, 0.0), 1).unwrap();
        assert!((p1.eval(&w) - c(2.0 * beta, 0.0)).norm() < 1e-15);
        assert_eq!(p1.eval(&[c(0.0, 0.0); 5]), c(0.0, 0.0));
        let p3 = taylor_coefficient(&ones(5), &harmonic(5), c(2.0, 0.0), 3).unwrap();
        assert_eq!(p3.eval(&w), c(0.0, 0.0));
    }

    #[test]
    fn single_coordinate_closed_form() {
        let beta = 0.4;
        let mut w = vec![c(0.0, 0.0); 6];
        w[0] = c(beta, 0.0);
        let w = TruncatedSeq::new(WeightFamily::InverseN, w);
        let r = taylor_continue(&ones(6), &harmonic(6), &w, c(2.0, 0.0), 50, 1e-12).unwrap();
        assert!((r.value - c((1.0 + beta).powi(2) - 1.0, 0.0)).norm() < 1e-12, "{r:?}");
    }

    #[test]
    fn classification_examples() {
        let z = harmonic(40);
        let w = TruncatedSeq::from_fn(WeightFamily::InverseN, 40, |n| {
            c(0.5 * (-(n as f64)).exp() / n as f64, 0.0)
        });
        match domain_classify(&z, &w).unwrap() {
            TaylorDomain::Entire { beta, eta } => {
                assert!((beta - 0.5).abs() < 1e-12 && (eta - 1.0).abs() < 1e-12, "{beta} {eta}");
            }
            other => panic!("{other:?}"),
        }
        let w = TruncatedSeq::from_fn(WeightFamily::InverseNPow(2.0), 40, |n| c(0.5 / (n * n) as f64, 0.0))
            .with_tail(Tail::ScaledWeight(c(0.5, 0.0)));
        match domain_classify(&z, &w).unwrap() {
            TaylorDomain::Polydisk { beta, eta, half_plane } => {
                assert!((eta - 1.0).abs() < 1e-9 && (beta - 0.5).abs() < 1e-9 && half_plane.abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
        let w = TruncatedSeq::new(WeightFamily::InverseN, z.entries.iter().map(|x| 2.0 * x).collect());
        assert_eq!(domain_classify(&z, &w).unwrap(), TaylorDomain::None);
    }

    #[test]
    fn perturbation_contracts() {
        let ln = |n: usize| (n as f64).ln();
        assert!(dirichlet_perturb_ok(ln, |_| 0.0, 1.0, 1.0, 1000));
        // e^{-2n} stays a normal float up to n = 354
        assert!(dirichlet_perturb_ok(ln, |n| (-2.0 * n as f64).exp(), 1.0, 2.0, 300));
        assert!(!dirichlet_perturb_ok(ln, |n| -0.5 * (n as f64).ln(), 1.0, 1.0, 1000));
        assert!(dirichlet_perturb_ok_pair(ln, ln, 1.0, 1.0, 100));
    }

    #[test]
    fn dirichlet_geometric() {
        let a = ones(10).with_tail(Tail::ScaledWeight(c(1.0, 0.0)));
        let r = dirichlet_eval(&a, &Exponents::Linear(1.0), c(1.0, 0.0), 1e-13).unwrap();
        assert!((r.value.re - 1.0 / (std::f64::consts::E - 1.0)).abs() < 1e-13, "{r:?}");
    }
}
