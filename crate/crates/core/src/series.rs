//! Direct series in the half-plane of convergence.
//!
//! Euler-Riemann sums `Σ b_n z_n^s` are truncated with rigorous tail majorants.
//! Periodic Lerch-Lipschitz sums are organised per residue class `j`; the tail of
//! each class is accelerated (Euler-Maclaurin when `e^{2 pi i k a_j} = 1`, Boole
//! summation otherwise) or bounded geometrically when `Im a_j > 0`.

use crate::error::{Result, ZetaError};
use crate::num::{pow_principal, pow_with_arg, CompensatedSum, BERNOULLI_OVER_FACTORIAL};
use crate::params::{BranchRecord, EvalResult, Method, Param, PeriodicParams};
use crate::seqspace::{Tail, TruncatedSeq, WeightFamily};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::sync::Arc;

/// Hard cap on directly summed terms.
pub const MAX_TERMS: usize = 1 << 25;

/// Upper bound on `Σ_{n > m} |z_n|^sigma` for the tail of `z`, or `None` if it diverges.
fn tail_power_sum(z: &TruncatedSeq, sigma: f64, m: usize) -> Result<Option<f64>> {
    let tail = match &z.tail {
        Some(t) => t,
        None => return Err(ZetaError::UnsupportedTail("z has no tail beyond its window".into())),
    };
    let mf = m.max(1) as f64;
    let weight_sum = |w: WeightFamily| -> Option<f64> {
        match w {
            WeightFamily::Ones => None,
            WeightFamily::InverseN => (sigma > 1.0).then(|| mf.powf(1.0 - sigma) / (sigma - 1.0)),
            WeightFamily::InverseNPow(eta) => {
                (eta * sigma > 1.0).then(|| mf.powf(1.0 - eta * sigma) / (eta * sigma - 1.0))
            }
            WeightFamily::ExpNegN => (sigma > 0.0).then(|| (-sigma * (mf + 1.0)).exp() / -(-sigma).exp_m1()),
        }
    };
    Ok(match tail {
        Tail::ScaledWeight(c) => weight_sum(z.weight).map(|s| c.norm().powf(sigma) * s),
        Tail::Generator { ratio_sup, .. } => weight_sum(z.weight).map(|s| ratio_sup.powf(sigma) * s),
        Tail::Geometric { c, q } => {
            if *q < 1.0 && sigma > 0.0 {
                let qs = q.powf(sigma);
                Some(c.norm().powf(sigma) * q.powf(sigma * (mf + 1.0)) / (1.0 - qs))
            } else {
                None
            }
        }
    })
}

fn tail_arg_bound(z: &TruncatedSeq) -> f64 {
    match &z.tail {
        Some(Tail::ScaledWeight(c)) | Some(Tail::Geometric { c, .. }) => c.arg().abs(),
        Some(Tail::Generator { arg_bound, .. }) => *arg_bound,
        None => 0.0,
    }
}

/// `sup_{n > m} |b_n|` from the tail descriptor of `b` (zero if `b` has no tail).
fn tail_sup_modulus(b: &TruncatedSeq, m: usize) -> Result<f64> {
    Ok(match &b.tail {
        None => 0.0,
        Some(Tail::ScaledWeight(c)) => c.norm() * b.weight.r(m + 1),
        Some(Tail::Generator { ratio_sup, .. }) => ratio_sup * b.weight.r(m + 1),
        Some(Tail::Geometric { c, q }) => {
            if *q > 1.0 {
                return Err(ZetaError::UnsupportedTail(
                    "coefficient tail grows geometrically".into(),
                ));
            }
            c.norm() * q.powi((m + 1) as i32)
        }
    })
}

/// `Σ b_n z_n^s` with the principal branch for every coordinate.
pub fn eval_er_series(b: &TruncatedSeq, z: &TruncatedSeq, s: Complex64, tol: f64) -> Result<EvalResult> {
    eval_er_series_with_branch(b, z, s, tol, &BranchRecord::principal())
}

/// `Σ b_n z_n^s` with arguments of `z_n` taken from `branch` where recorded.
///
/// Beyond the windows the coefficients come from the tail of `b` (zero without a
/// tail). The truncation point `N'` is the smallest one where
/// `sup|b_n| · Σ|z_n|^{Re s} · e^{|Im s| Π}` over `n > N'` is below `tol`, with `Π`
/// the argument bound of the tail of `z`.
pub fn eval_er_series_with_branch(
    b: &TruncatedSeq,
    z: &TruncatedSeq,
    s: Complex64,
    tol: f64,
    branch: &BranchRecord,
) -> Result<EvalResult> {
    if !(tol > 0.0) {
        return Err(ZetaError::Precondition("tol must be positive".into()));
    }
    let sigma = s.re;
    let window = b.len().max(z.len());
    let infinite = b.tail.is_some();
    let n_prime = if !infinite {
        b.len()
    } else {
        let damping = (s.im.abs() * tail_arg_bound(z)).exp();
        let bound = |m: usize| -> Result<f64> {
            let bsup = tail_sup_modulus(b, m)?;
            if bsup == 0.0 {
                return Ok(0.0);
            }
            match tail_power_sum(z, sigma, m)? {
                Some(sum) => Ok(bsup * sum * damping),
                None => Err(ZetaError::ConvergenceDomain(format!(
                    "Σ |z_n|^{sigma} diverges for the {:?} tail (Re s = {sigma})",
                    z.weight
                ))),
            }
        };
        let mut hi = window.max(1);
        let mut b_hi = bound(hi)?;
        if b_hi >= tol {
            let mut lo = hi;
            while b_hi >= tol {
                if hi >= MAX_TERMS {
                    return Err(ZetaError::Truncation {
                        achieved: b_hi,
                        tol,
                        terms: hi,
                    });
                }
                lo = hi;
                hi = (hi * 2).min(MAX_TERMS);
                b_hi = bound(hi)?;
            }
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if bound(mid)? < tol {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
        }
        hi
    };
    let mut acc = CompensatedSum::default();
    let mut tail_bound = 0.0;
    for n in 1..=n_prime {
        let bn = match b.get(n) {
            Some(v) => v,
            None => continue,
        };
        if bn == Complex64::new(0.0, 0.0) {
            continue;
        }
        let zn = z
            .get(n)
            .ok_or_else(|| ZetaError::UnsupportedTail(format!("z_{n} is not available")))?;
        if zn.norm() == 0.0 {
            return Err(ZetaError::Domain(format!("z_{n} = 0 lies on the coordinate cross")));
        }
        acc.add(bn * pow_with_arg(zn, s, branch.arg_for(n, zn)));
    }
    if infinite {
        let bsup = tail_sup_modulus(b, n_prime)?;
        if bsup > 0.0 {
            let sum = tail_power_sum(z, sigma, n_prime)?.unwrap_or(f64::INFINITY);
            tail_bound = bsup * sum * (s.im.abs() * tail_arg_bound(z)).exp();
        }
    }
    let rounding = 4.0 * f64::EPSILON * acc.abs();
    Ok(EvalResult::new(
        acc.value(),
        tail_bound + rounding,
        Method::Series,
        n_prime,
    ))
}

/// Partial result of a single residue class `n ≡ j (mod k)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BlockSum {
    pub value: Complex64,
    pub err: f64,
    pub terms: usize,
}

const EM_TERMS: usize = 15;
const BOOLE_TERMS: usize = 30;
const BOOLE_MAX_SHIFT: f64 = 4.0e6;

/// `Σ_{p >= m} e^{2 pi i (pk+j) a} (pk + c)^{-s}` with `c = j + z_j`, principal powers.
///
/// Requires `Re(mk + c) >= 1`. With `e^{2 pi i k a} = 1` Euler-Maclaurin needs
/// `Re s > 1`; otherwise Boole summation is valid for every `s`.
pub(crate) fn class_tail(
    a: &Param,
    j: usize,
    k: usize,
    c: Complex64,
    s: Complex64,
    m: usize,
    tol: f64,
) -> Result<BlockSum> {
    let kf = k as f64;
    let ka = a.value * kf;
    let lattice = a.in_lattice(k);
    // distance from 0 to the singularities 2 pi i (ka - l) of 1/(1 - ω e^x)
    let l = ka.re.round();
    let r_sing = TAU * (ka - l).norm();
    let omega_mod = (-TAU * ka.im).exp();
    let head_phase = |p: usize| a.phase((p * k + j) as i64);

    let base_shift = |need: f64| -> usize {
        // smallest p >= m with |pk + c| >= need and Re(pk + c) >= 1
        let mut p = m;
        let re_need = ((1.0 - c.re) / kf).ceil().max(0.0) as usize;
        p = p.max(re_need);
        let target = ((need - c.norm()) / kf).ceil().max(0.0) as usize;
        p.max(target)
    };

    if lattice {
        if s.re <= 1.0 {
            return Err(ZetaError::ConvergenceDomain(format!(
                "class sum with e^(2πika) = 1 needs Re s > 1 (got {})",
                s.re
            )));
        }
        let start = base_shift(s.norm() + 20.0);
        let head = direct(&head_phase, k, c, s, m, start);
        let w = Complex64::new(start as f64 * kf, 0.0) + c;
        let f = pow_principal(w, -s);
        let integral = w * f / (kf * (s - 1.0));
        let mut sum = integral + 0.5 * f;
        // derivative chain: f^{(r)} = (-s)(-s-1)...(-s-r+1) k^r w^{-s-r}
        let mut deriv = f * (-s) * kf / w; // r = 1
        let mut last = Complex64::new(0.0, 0.0);
        for (q, bf) in BERNOULLI_OVER_FACTORIAL.iter().enumerate().take(EM_TERMS) {
            let r = 2 * q + 1;
            last = *bf * deriv;
            sum -= last;
            if last.norm() < f64::EPSILON * sum.norm() * 1e-2 {
                break;
            }
            // advance two orders
            deriv = deriv * (-s - r as f64) * kf / w * (-s - (r + 1) as f64) * kf / w;
        }
        let phase = head_phase(start);
        let value = head.value + phase * sum;
        let err = head.err + 2.0 * last.norm() + 8.0 * f64::EPSILON * sum.norm();
        return Ok(BlockSum {
            value,
            err,
            terms: head.terms + EM_TERMS,
        });
    }

    // geometric damping, rigorous bound: |ω|^p |pk+c|^{-σ} e^{|t| atan(|Im c| / Re(pk+c))}
    if omega_mod < 1.0 && s.re > 0.0 {
        let geo_bound = |p: usize| -> f64 {
            let w = Complex64::new(p as f64 * kf, 0.0) + c;
            let pi_arg = (c.im.abs() / w.re).atan();
            (p as f64 * (-TAU * ka.im)).exp() * w.norm().powf(-s.re) * (s.im.abs() * pi_arg).exp() / (1.0 - omega_mod)
        };
        let p0 = base_shift(0.0);
        let mut p = p0.max(1);
        while geo_bound(p) >= tol && p < MAX_TERMS {
            p *= 2;
        }
        let boole_shift = if r_sing > 0.0 {
            4.0 * kf * (s.norm() + 2.0 * BOOLE_TERMS as f64) / r_sing
        } else {
            f64::INFINITY
        };
        let boole_start = base_shift(boole_shift);
        if geo_bound(p) < tol && (p <= boole_start || boole_shift > BOOLE_MAX_SHIFT) {
            let mut lo = p0.max(1) - 1;
            while p - lo > 1 {
                let mid = lo + (p - lo) / 2;
                if geo_bound(mid) < tol {
                    p = mid;
                } else {
                    lo = mid;
                }
            }
            let p = p.max(m);
            let head = direct(&head_phase, k, c, s, m, p);
            return Ok(BlockSum {
                value: head.value,
                err: head.err + geo_bound(p),
                terms: head.terms,
            });
        }
    }

    if r_sing == 0.0 {
        return Err(ZetaError::Truncation {
            achieved: f64::INFINITY,
            tol,
            terms: 0,
        });
    }
    let need = 4.0 * kf * (s.norm() + 2.0 * BOOLE_TERMS as f64) / r_sing;
    if need > BOOLE_MAX_SHIFT {
        return Err(ZetaError::Truncation {
            achieved: f64::INFINITY,
            tol,
            terms: need as usize,
        });
    }
    let start = base_shift(need);
    let head = direct(&head_phase, k, c, s, m, start);
    let omega = a.phase(k as i64);
    // Taylor coefficients of 1/(1 - ω e^x)
    let mut g = Vec::with_capacity(BOOLE_TERMS + 1);
    g.push(1.0 / (1.0 - omega));
    let ratio = omega / (1.0 - omega);
    let w = Complex64::new(start as f64 * kf, 0.0) + c;
    let mut deriv = pow_principal(w, -s);
    let mut sum = g[0] * deriv;
    let mut last = sum;
    // g_r vanishes for every even r >= 2 when ω = -1, so stop on two small terms
    let mut prev = sum;
    for r in 1..=BOOLE_TERMS {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut fact = 1.0;
        for i in 1..=r {
            fact *= i as f64;
            acc += g[r - i] / fact;
        }
        g.push(ratio * acc);
        deriv = deriv * (-s - (r - 1) as f64) * kf / w;
        prev = last;
        last = g[r] * deriv;
        sum += last;
        if last.norm().max(prev.norm()) < f64::EPSILON * sum.norm() * 1e-2 {
            break;
        }
    }
    let phase = head_phase(start);
    Ok(BlockSum {
        value: head.value + phase * sum,
        err: head.err + 2.0 * last.norm().max(prev.norm()) + 8.0 * f64::EPSILON * sum.norm() * g[0].norm().max(1.0),
        terms: head.terms + BOOLE_TERMS,
    })
}

fn direct(
    phase: &dyn Fn(usize) -> Complex64,
    k: usize,
    c: Complex64,
    s: Complex64,
    from: usize,
    to: usize,
) -> BlockSum {
    let mut acc = CompensatedSum::default();
    for p in from..to {
        let w = Complex64::new((p * k) as f64, 0.0) + c;
        acc.add(phase(p) * pow_principal(w, -s));
    }
    BlockSum {
        value: acc.value(),
        err: 4.0 * f64::EPSILON * acc.abs(),
        terms: to.saturating_sub(from),
    }
}

/// Whole class sum `Σ_{p >= 0} e^{2 pi i (pk+j) a_j} (pk + j + z_j)^{-s}`.
///
/// Terms with `Re(pk + j + z_j) < 1` and terms carrying a recorded argument are
/// summed explicitly with their argument from `branch`; the rest is `class_tail`.
pub(crate) fn class_sum(
    p: &PeriodicParams,
    j: usize,
    s: Complex64,
    branch: &BranchRecord,
    tol: f64,
) -> Result<BlockSum> {
    let k = p.k;
    let c = p.z[j - 1] + j as f64;
    let a = &p.a[j - 1];
    let mut m = 0usize;
    while (Complex64::new((m * k) as f64, 0.0) + c).re < 1.0 {
        m += 1;
    }
    if let Some(last) = branch.args.keys().filter(|n| (**n - 1) % k == j - 1).max() {
        m = m.max((last - j) / k + 1);
    }
    let mut acc = CompensatedSum::default();
    for q in 0..m {
        let n = q * k + j;
        let w = Complex64::new(n as f64, 0.0) + p.z[j - 1];
        if w.norm() == 0.0 {
            return Err(ZetaError::Domain(format!("term {n} has a vanishing denominator")));
        }
        acc.add(a.phase(n as i64) * pow_with_arg(w, -s, branch.arg_for(n, w)));
    }
    let tail = class_tail(a, j, k, c, s, m, tol)?;
    Ok(BlockSum {
        value: acc.value() + tail.value,
        err: tail.err + 4.0 * f64::EPSILON * acc.abs(),
        terms: m + tail.terms,
    })
}

/// `ζ_k(a, z, s) = Σ_{n>=1} e^{2 pi i n a_j} (n + z_j)^{-s}` for `Re s > 1`, principal branch.
pub fn eval_zeta_k_series(p: &PeriodicParams, s: Complex64, tol: f64) -> Result<EvalResult> {
    eval_zeta_k_series_with_branch(p, s, tol, &BranchRecord::principal())
}

/// As [`eval_zeta_k_series`], with arguments of `n + z_j` from `branch` where recorded.
pub fn eval_zeta_k_series_with_branch(
    p: &PeriodicParams,
    s: Complex64,
    tol: f64,
    branch: &BranchRecord,
) -> Result<EvalResult> {
    if s.re <= 1.0 {
        return Err(ZetaError::ConvergenceDomain(format!(
            "series needs Re s > 1 (got {})",
            s.re
        )));
    }
    if p.min_im_a() < 0.0 {
        return Err(ZetaError::Domain("series needs Im a_j >= 0 for all j".into()));
    }
    if !(tol > 0.0) {
        return Err(ZetaError::Precondition("tol must be positive".into()));
    }
    p.check_z()?;
    let share = tol / p.k as f64;
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut terms = 0;
    for j in 1..=p.k {
        let part = class_sum(p, j, s, branch, share)?;
        value += part.value;
        err += part.err;
        terms += part.terms;
    }
    if err > tol {
        return Err(ZetaError::Truncation {
            achieved: err,
            tol,
            terms,
        });
    }
    Ok(EvalResult::new(value, err, Method::Series, terms))
}

/// ER image of a periodic parameter set, with the sandwich constants of `z`.
#[derive(Debug, Clone)]
pub struct ErImage {
    pub b: TruncatedSeq,
    pub z: TruncatedSeq,
    /// `eps` with `eps / n <= |z_n|` for all `n`.
    pub lower: f64,
    /// `E` with `|z_n| <= E / n` for all `n`.
    pub upper: f64,
}

/// `b_n = e^{2 pi i n a_j}`, `z_n = 1/(n + xi_j)` with `j = [n-1]_k + 1`.
///
/// Windows have length `n_max`; both sequences carry generator tails so the image
/// is the full infinite sequence.
pub fn ll_to_er(a: &[Param], xi: &[Complex64], n_max: usize) -> Result<ErImage> {
    let p = PeriodicParams::new(a.to_vec(), xi.to_vec())?;
    if n_max == 0 {
        return Err(ZetaError::Precondition("n_max must be positive".into()));
    }
    let b_entries: Vec<Complex64> = (1..=n_max).map(|n| p.coeff(n)).collect();
    let z_entries: Vec<Complex64> = (1..=n_max).map(|n| 1.0 / p.base(n)).collect();
    let n1 = (n_max + 1) as f64;
    let xi_max = xi.iter().map(|x| x.norm()).fold(0.0, f64::max);
    // for n > |xi|: n/(n+|xi|) <= n|z_n| <= n/(n-|xi|), monotone in n
    let far = n1 > 2.0 * xi_max;
    let mut lower = z_entries
        .iter()
        .enumerate()
        .map(|(i, z)| (i + 1) as f64 * z.norm())
        .fold(f64::INFINITY, f64::min);
    let mut upper = z_entries
        .iter()
        .enumerate()
        .map(|(i, z)| (i + 1) as f64 * z.norm())
        .fold(0.0, f64::max);
    let (tail_inf, tail_sup, tail_arg) = if far {
        (n1 / (n1 + xi_max), n1 / (n1 - xi_max), (xi_max / (n1 - xi_max)).atan())
    } else {
        // scan until the monotone regime is reached
        let mut inf = f64::INFINITY;
        let mut sup: f64 = 0.0;
        let mut arg: f64 = 0.0;
        let mut n = n_max + 1;
        while (n as f64) <= 2.0 * xi_max + 1.0 {
            let w = p.base(n);
            inf = inf.min(n as f64 / w.norm());
            sup = sup.max(n as f64 / w.norm());
            arg = arg.max(w.arg().abs());
            n += 1;
        }
        let nf = n as f64;
        (
            inf.min(nf / (nf + xi_max)),
            sup.max(nf / (nf - xi_max)),
            arg.max((xi_max / (nf - xi_max)).atan()),
        )
    };
    lower = lower.min(tail_inf);
    upper = upper.max(tail_sup);
    let pb = p.clone();
    let b_tail = Tail::Generator {
        f: Arc::new(move |n| pb.coeff(n)),
        ratio_sup: p
            .a
            .iter()
            .map(|a| if a.value.im >= 0.0 { 1.0 } else { f64::INFINITY })
            .fold(0.0, f64::max),
        ratio_inf: 0.0,
        arg_bound: PI,
    };
    let pz = p.clone();
    let z_tail = Tail::Generator {
        f: Arc::new(move |n| 1.0 / pz.base(n)),
        ratio_sup: tail_sup,
        ratio_inf: tail_inf,
        arg_bound: tail_arg,
    };
    Ok(ErImage {
        b: TruncatedSeq::new(WeightFamily::Ones, b_entries).with_tail(b_tail),
        z: TruncatedSeq::new(WeightFamily::InverseN, z_entries).with_tail(z_tail),
        lower,
        upper,
    })
}

/// Which formula produced an abscissa estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbscissaBranch {
    /// `limsup ln|a_1 + ... + a_n| / λ_n` (partial sums do not settle).
    DivergentSum,
    /// `limsup ln|Σ_{m>n} a_m| / λ_n` (partial sums settle).
    ConvergentTail,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbscissaEstimate {
    /// `-∞` when all tails vanish on the window.
    pub sigma: f64,
    pub branch: AbscissaBranch,
}

/// Tolerance of the Cauchy test over the last decade of the window.
pub const CAUCHY_TOL: f64 = 1e-6;

/// Finite-window estimate of the abscissa of convergence of `Σ a_n e^{-λ_n s}`.
pub fn abscissa_estimate(
    a: impl Fn(usize) -> Complex64,
    lambda: impl Fn(usize) -> f64,
    n_max: usize,
) -> Result<AbscissaEstimate> {
    if n_max < 20 {
        return Err(ZetaError::Precondition("window must contain at least 20 terms".into()));
    }
    let lam: Vec<f64> = (1..=n_max).map(&lambda).collect();
    if let Some(i) = lam.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(ZetaError::Precondition(format!(
            "λ is not strictly increasing at n = {}",
            i + 1
        )));
    }
    let mut partial = Vec::with_capacity(n_max);
    let mut acc = CompensatedSum::default();
    for n in 1..=n_max {
        acc.add(a(n));
        partial.push(acc.value());
    }
    let last = partial[n_max - 1];
    let decade = n_max / 10;
    let settled = partial[decade - 1..].iter().all(|s| (s - last).norm() < CAUCHY_TOL);
    // λ_n <= 0 carries no growth information
    let ratio = |num: f64, n: usize| {
        if lam[n - 1] > 0.0 {
            num / lam[n - 1]
        } else {
            f64::NEG_INFINITY
        }
    };
    if settled {
        let sigma = (n_max / 20..=n_max / 2)
            .filter(|&n| n >= 1)
            .map(|n| {
                let t = (last - partial[n - 1]).norm();
                if t == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    ratio(t.ln(), n)
                }
            })
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(AbscissaEstimate {
            sigma,
            branch: AbscissaBranch::ConvergentTail,
        })
    } else {
        let sigma = (decade..=n_max)
            .map(|n| {
                let v = partial[n - 1].norm();
                if v == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    ratio(v.ln(), n)
                }
            })
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(AbscissaEstimate {
            sigma,
            branch: AbscissaBranch::DivergentSum,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn alternating_class_sum() {
        // ω = -1: every even Boole coefficient vanishes
        for a in [Param::real(0.5), Param::rational(1, 2)] {
            let p = PeriodicParams::new(vec![a], vec![c(0.0, 0.0)]).unwrap();
            let r = eval_zeta_k_series(&p, c(2.0, 0.0), 1e-13).unwrap();
            assert!((r.value + PI * PI / 12.0).norm() < 1e-13, "{r:?}");
        }
    }

    fn ones_tail(n: usize) -> TruncatedSeq {
        TruncatedSeq::new(WeightFamily::Ones, vec![c(1.0, 0.0); n]).with_tail(Tail::ScaledWeight(c(1.0, 0.0)))
    }

    fn harmonic(n: usize) -> TruncatedSeq {
        TruncatedSeq::from_fn(WeightFamily::InverseN, n, |m| c(1.0 / m as f64, 0.0))
            .with_tail(Tail::ScaledWeight(c(1.0, 0.0)))
    }

    #[test]
    fn er_series_examples() {
        let r = eval_er_series(&ones_tail(10), &harmonic(10), c(2.0, 0.0), 1e-6).unwrap();
        assert!((r.value.re - PI * PI / 6.0).abs() < 1e-6);
        assert!(r.err <= 1e-6);
        assert!(r.terms_used > 10);

        let zero = TruncatedSeq::new(WeightFamily::Ones, vec![c(0.0, 0.0); 10]);
        let r = eval_er_series(&zero, &harmonic(10), c(3.0, 0.0), 1e-10).unwrap();
        assert_eq!(r.value, c(0.0, 0.0));

        let geo = TruncatedSeq::from_fn(WeightFamily::Ones, 5, |m| c(0.5f64.powi(m as i32), 0.0))
            .with_tail(Tail::Geometric { c: c(1.0, 0.0), q: 0.5 });
        let r = eval_er_series(&ones_tail(5), &geo, c(2.0, 0.0), 1e-14).unwrap();
        assert!((r.value.re - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn er_series_rejects_divergent_half_plane() {
        let e = eval_er_series(&ones_tail(10), &harmonic(10), c(1.0, 3.0), 1e-6).unwrap_err();
        assert!(matches!(e, ZetaError::ConvergenceDomain(_)));
        let e = eval_er_series(&ones_tail(10), &harmonic(10), c(1.0 + 1e-9, 0.0), 1e-6).unwrap_err();
        assert!(matches!(e, ZetaError::Truncation { .. }));
    }

    #[test]
    fn zeta_k_series_examples() {
        let p = PeriodicParams::new(vec![Param::real(0.0)], vec![c(0.0, 0.0)]).unwrap();
        let r = eval_zeta_k_series(&p, c(2.0, 0.0), 1e-12).unwrap();
        assert!((r.value - PI * PI / 6.0).norm() < 1e-13);

        let li2 = PeriodicParams::new(vec![Param::rational(1, 4)], vec![c(0.0, 0.0)]).unwrap();
        let r = eval_zeta_k_series(&li2, c(2.0, 0.0), 1e-12).unwrap();
        // Li_2(i) = -π²/48 + i G
        let catalan = 0.915_965_594_177_219;
        assert!((r.value - c(-PI * PI / 48.0, catalan)).norm() < 1e-13);
    }

    #[test]
    fn damped_classes_use_geometric_bound() {
        let p = PeriodicParams::new(vec![Param::complex(c(0.1, 0.5))], vec![c(0.0, 0.0)]).unwrap();
        let r = eval_zeta_k_series(&p, c(1.5, 20.0), 1e-12).unwrap();
        let mut direct = c(0.0, 0.0);
        for n in 1..40 {
            direct += p.coeff(n) * pow_principal(c(n as f64, 0.0), -c(1.5, 20.0));
        }
        assert!((r.value - direct).norm() < 1e-12);
    }

    #[test]
    fn ll_to_er_examples() {
        let img = ll_to_er(&[Param::real(0.0)], &[c(0.0, 0.0)], 5).unwrap();
        assert_eq!(img.b.entries, vec![c(1.0, 0.0); 5]);
        assert!((img.z.entries[2] - 1.0 / 3.0).norm() < 1e-16);
        let img = ll_to_er(&[Param::complex(c(0.0, 1.0))], &[c(0.0, 0.0)], 3).unwrap();
        assert!((img.b.entries[1].re - (-4.0 * PI).exp()).abs() < 1e-20);
        let img = ll_to_er(&[Param::real(0.0)], &[c(-1.5, 0.0)], 1).unwrap();
        assert_eq!(img.z.entries[0], c(-2.0, 0.0));
        assert!(img.lower <= 1.0 && img.upper >= 4.0);
        assert!(matches!(
            ll_to_er(&[Param::real(0.0)], &[c(-2.0, 0.0)], 4),
            Err(ZetaError::Domain(_))
        ));
    }

    #[test]
    fn abscissa_examples() {
        let one = abscissa_estimate(|_| c(1.0, 0.0), |n| (n as f64).ln(), 100_000).unwrap();
        assert_eq!(one.branch, AbscissaBranch::DivergentSum);
        assert!((one.sigma - 1.0).abs() < 0.05);
        let alt = abscissa_estimate(
            |n| c(if n % 2 == 1 { 1.0 } else { -1.0 }, 0.0),
            |n| (n as f64).ln(),
            100_000,
        )
        .unwrap();
        assert!(alt.sigma.abs() < 0.05);
        let finite = abscissa_estimate(
            |n| {
                c(
                    if n <= 5 {
                        1.0
                    } else if n <= 10 {
                        -1.0
                    } else {
                        0.0
                    },
                    0.0,
                )
            },
            |n| (n as f64).ln(),
            1000,
        )
        .unwrap();
        assert_eq!(finite.branch, AbscissaBranch::ConvergentTail);
        assert_eq!(finite.sigma, f64::NEG_INFINITY);
        assert!(abscissa_estimate(|_| c(1.0, 0.0), |n| -(n as f64), 100).is_err());
    }
}
