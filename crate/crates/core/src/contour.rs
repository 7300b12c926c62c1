//! Hankel-contour continuation of the k-periodic cut to all `s ∈ C`.
//!
//! For a residue class `j` with shift `c = j + z_j` the class sum equals
//! `I(s) / ((e^{2 pi i s} - 1) Γ(s))` where
//! `I(s) = ∫_{C_ρ} λ^{s-1} e^{-cλ} / (1 - e^{2 pi i k a_j - kλ}) dλ`.
//! The two rays combine into `(e^{2 pi i s} - 1) ∫_ρ^∞ r^{s-1} g(r) dr`, the circle
//! contributes `i ρ^s ∫_0^{2π} e^{isφ} g(ρ e^{iφ}) dφ`. For large `|Im s|` the rays
//! are rotated by an angle `θ` inside the pole-free right half-plane, which avoids
//! cancellation of order `e^{π|Im s|/2}`.

use crate::error::{Result, ZetaError};
use crate::num::{exp_two_pi_i_minus_one, expm1, nearest_integer, pow_with_arg, CompensatedSum, I};
use crate::params::{BranchRecord, EvalResult, Method, Param, PeriodicParams};
use crate::quad::integrate;
use crate::series::eval_zeta_k_series;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

pub use crate::gamma::gamma;

/// Semicircular detour `S⁺_ε(u)` of radius `eps` above the real point `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bump {
    pub u: f64,
    pub eps: f64,
}

/// Parameters of the Hankel contour and its quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    /// Circle radius; chosen by [`choose_rho`] when absent.
    pub rho: Option<f64>,
    /// Ray truncation `T`; chosen from the integrand decay when absent.
    pub ray_len: Option<f64>,
    /// Trapezoid nodes on the circle at integer `s`; also sets the initial panel count.
    pub circle_nodes: usize,
    /// Initial panel count on the far part of the rays.
    pub ray_nodes: usize,
    pub bump: Option<Bump>,
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self {
            rho: None,
            ray_len: None,
            circle_nodes: 256,
            ray_nodes: 16,
            bump: None,
        }
    }
}

impl ContourSpec {
    pub fn with_rho(rho: f64) -> Self {
        Self {
            rho: Some(rho),
            ..Self::default()
        }
    }

    pub fn validate(&self, k: usize) -> Result<()> {
        if let Some(rho) = self.rho {
            if !(rho > 0.0 && rho < TAU / k as f64) {
                return Err(ZetaError::Precondition(format!("rho = {rho} must lie in (0, 2π/k)")));
            }
        }
        if let Some(t) = self.ray_len {
            if !(t > 0.0 && t.is_finite()) {
                return Err(ZetaError::Precondition(format!("ray length {t} must be positive")));
            }
        }
        if self.circle_nodes < 8 || self.ray_nodes == 0 {
            return Err(ZetaError::Precondition(
                "need at least 8 circle nodes and one ray panel".into(),
            ));
        }
        if let Some(b) = self.bump {
            if !(b.eps > 0.0 && b.eps < b.u / 2.0) {
                return Err(ZetaError::Precondition(format!(
                    "bump needs 0 < eps < u/2 (u = {}, eps = {})",
                    b.u, b.eps
                )));
            }
        }
        Ok(())
    }
}

/// Poles `2 pi i (a - l/k)` of the integrand with `|λ| <= radius`, excluding `λ = 0`.
fn poles_near(k: usize, a: &Param, radius: f64) -> Vec<Complex64> {
    let kf = k as f64;
    let centre = (kf * a.value.re).round() as i64;
    let span = (radius * kf / TAU).ceil() as i64 + 1;
    let mut out = Vec::new();
    for l in centre - span..=centre + span {
        let diff = match a.exact {
            Some((p, q)) => {
                // exact numerator of a - l/k over q k
                let num = p as i128 * k as i128 - l as i128 * q as i128;
                Complex64::new(num as f64 / (q as f64 * kf), 0.0)
            }
            None => a.value - l as f64 / kf,
        };
        let lam = 2.0 * PI * I * diff;
        let r = lam.norm();
        if r > 0.0 && !(a.exact.is_none() && r < 2.0 * PI * crate::params::MEMBERSHIP_TOL) && r <= radius {
            out.push(lam);
        }
    }
    out
}

/// `min(0.5, d/2, π/k)`, `d` the smallest nonzero pole modulus within `|λ| <= 1`.
pub fn choose_rho(p: &PeriodicParams) -> f64 {
    let mut rho = 0.5f64.min(PI / p.k as f64);
    for a in &p.a {
        rho = rho.min(rho_for(p.k, a));
    }
    rho
}

fn rho_for(k: usize, a: &Param) -> f64 {
    let d = poles_near(k, a, 1.0)
        .iter()
        .map(|l| l.norm())
        .fold(f64::INFINITY, f64::min);
    0.5f64.min(PI / k as f64).min(d / 2.0)
}

/// `g(λ) = e^{-cλ} / (1 - e^{2 pi i k a - kλ})` with `ka` reduced modulo 1.
#[derive(Debug, Clone, Copy)]
struct Kernel {
    c: Complex64,
    k: f64,
    /// `2 pi i (k a mod 1)`
    shift: Complex64,
}

impl Kernel {
    fn new(k: usize, a: &Param, c: Complex64) -> Self {
        let ka = match a.exact {
            Some((p, q)) => {
                let q = q as i128;
                let r = ((k as i128 * p as i128) % q + q) % q;
                Complex64::new(r as f64 / q as f64, 0.0)
            }
            None => {
                let x = a.value * k as f64;
                if crate::num::near_multiple_of_inverse(a.value, k, crate::params::MEMBERSHIP_TOL) {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(x.re - x.re.round(), x.im)
                }
            }
        };
        Self {
            c,
            k: k as f64,
            shift: 2.0 * PI * I * ka,
        }
    }

    fn g(&self, lam: Complex64) -> Complex64 {
        (-self.c * lam).exp() / -expm1(self.shift - self.k * lam)
    }
}

/// Ray rotation for `Im s = t`, zero unless the sector is free of poles.
fn tilt_angle(t: f64, c: Complex64, tilt_allowed: bool) -> f64 {
    if !tilt_allowed || t.abs() < 1.0 {
        return 0.0;
    }
    let max = FRAC_PI_2 - 0.25;
    let mut theta = t.signum() * max * (t.abs() / 5.0).min(1.0);
    // keep Re(c e^{iθ}) clearly positive
    while (c * Complex64::from_polar(1.0, theta)).re < 0.2 * c.norm() && theta.abs() > 1e-3 {
        theta *= 0.8;
    }
    theta
}

#[derive(Debug, Clone, Copy)]
struct Hankel {
    value: Complex64,
    err: f64,
}

/// The Hankel integral for one class with shift `c` (requires `Re c > 0`).
#[allow(clippy::too_many_arguments)]
fn hankel_core(
    k: usize,
    a: &Param,
    c: Complex64,
    s: Complex64,
    rho: f64,
    spec: &ContourSpec,
    tol: f64,
    tilt_allowed: bool,
) -> Result<Hankel> {
    if c.re <= 0.0 {
        return Err(ZetaError::Domain(format!(
            "Re(j + z_j) = {} must be positive on the rays",
            c.re
        )));
    }
    let kernel = Kernel::new(k, a, c);
    let theta = tilt_angle(s.im, c, tilt_allowed && a.value.im >= 0.0);
    check_collision(k, a, rho, theta)?;

    // circle: i ρ^s ∫_θ^{θ+2π} e^{isφ} g(ρ e^{iφ}) dφ
    let rho_s = pow_with_arg(Complex64::new(rho, 0.0), s, 0.0);
    let circ_f = |phi: f64| (I * s * phi).exp() * kernel.g(Complex64::from_polar(rho, phi));
    let integer_s = nearest_integer(s, 1e-12).is_some();
    let (circle, circle_err) = if integer_s {
        trapezoid_periodic(&circ_f, theta, spec.circle_nodes)
    } else {
        let panels = (spec.circle_nodes / 32).max(4);
        let breaks: Vec<f64> = (0..=panels).map(|i| theta + TAU * i as f64 / panels as f64).collect();
        let scale = rho_s.norm().max(f64::MIN_POSITIVE);
        let q = integrate(&circ_f, &breaks, 0.5 * tol / scale);
        (q.value, q.err + 64.0 * f64::EPSILON * q.abs)
    };
    let circle = I * rho_s * circle;
    let circle_err = rho_s.norm() * circle_err;

    // rays: (e^{2πis} - 1) e^{isθ} ∫_ρ^T r^{s-1} g(r e^{iθ}) dr
    let pref = exp_two_pi_i_minus_one(s) * (I * s * theta).exp();
    if pref == Complex64::new(0.0, 0.0) {
        return Ok(Hankel {
            value: circle,
            err: circle_err,
        });
    }
    let dir = Complex64::from_polar(1.0, theta);
    let ray_f = |r: f64| (Complex64::new(r.ln(), 0.0) * (s - 1.0)).exp() * kernel.g(r * dir);
    let kappa = (c * dir).re;
    let t_len = match spec.ray_len {
        Some(t) => t,
        None => ray_length(&ray_f, s, kappa, k, a, theta, pref.norm(), tol),
    };
    if t_len <= rho {
        return Err(ZetaError::Precondition(format!(
            "ray length {t_len} does not exceed rho = {rho}"
        )));
    }
    let breaks = ray_breaks(rho, t_len, spec.ray_nodes);
    let q = integrate(&ray_f, &breaks, 0.5 * tol / pref.norm());
    let rays = pref * q.value;
    let rays_err = pref.norm() * (q.err + 64.0 * f64::EPSILON * q.abs);
    Ok(Hankel {
        value: circle + rays,
        err: circle_err + rays_err,
    })
}

/// Smallest doubling of a base length where the ray remainder is below `tol / 10`.
#[allow(clippy::too_many_arguments)]
fn ray_length<F: Fn(f64) -> Complex64>(
    ray_f: &F,
    s: Complex64,
    kappa: f64,
    k: usize,
    a: &Param,
    theta: f64,
    pref: f64,
    tol: f64,
) -> f64 {
    let kf = k as f64;
    // |e^{2πika - kλ}| <= e^{-1} beyond this point
    let denom_ok = (TAU * kf * (-a.value.im).max(0.0) + 1.0) / (kf * theta.cos());
    let mono = 2.0 * (s.re - 1.0).max(0.0) / kappa;
    let mut t = 8.0f64.max(denom_ok).max(mono);
    for _ in 0..60 {
        // ∫_T^∞ |f| <= |f(T)| · 2/κ · 1/(1 - e^{-1}) for T past the monotone regime
        let tail = pref * ray_f(t).norm() * 2.0 / kappa * 1.6;
        if tail < 0.1 * tol {
            return t;
        }
        t *= 1.5;
    }
    t
}

fn ray_breaks(rho: f64, t: f64, far_panels: usize) -> Vec<f64> {
    let mut b = vec![rho];
    let mut x = rho;
    while 2.0 * x < 1.0 {
        x *= 2.0;
        b.push(x);
    }
    if 1.0 > rho {
        b.push(1.0);
    }
    let start = *b.last().expect("nonempty");
    let n = ((t - start) / 2.0).ceil().max(far_panels as f64) as usize;
    for i in 1..=n {
        b.push(start + (t - start) * i as f64 / n as f64);
    }
    b
}

fn trapezoid_periodic<F: Fn(f64) -> Complex64>(f: &F, start: f64, nodes: usize) -> (Complex64, f64) {
    let rule = |n: usize| {
        let mut acc = CompensatedSum::default();
        for i in 0..n {
            acc.add(f(start + TAU * i as f64 / n as f64));
        }
        (acc.value() * (TAU / n as f64), acc.abs() * (TAU / n as f64))
    };
    let (full, abs) = rule(nodes);
    let (half, _) = rule(nodes / 2);
    (full, (full - half).norm().min(abs) + 64.0 * f64::EPSILON * abs)
}

const COLLISION_GUARD: f64 = 1e-6;

fn check_collision(k: usize, a: &Param, rho: f64, theta: f64) -> Result<()> {
    // poles within |λ| <= 2ρ are checked against the circle; poles in the right
    // half-plane against the ray
    let reach = 2.0 * rho + TAU * a.value.im.abs() + 1.0;
    for lam in poles_near(k, a, reach) {
        let d_circle = (lam.norm() - rho).abs();
        if d_circle < COLLISION_GUARD || lam.norm() < rho {
            return Err(ZetaError::ContourCollision {
                distance: d_circle.min(lam.norm()),
            });
        }
        let rotated = lam * Complex64::from_polar(1.0, -theta);
        if rotated.re > rho && rotated.im.abs() < COLLISION_GUARD {
            return Err(ZetaError::ContourCollision {
                distance: rotated.im.abs(),
            });
        }
    }
    Ok(())
}

/// `I^j(s)` over the Hankel contour `C_ρ` (arg 0 on the incoming ray, 2π on the outgoing one).
pub fn hankel_i(
    j: usize,
    k: usize,
    a_j: &Param,
    z_j: Complex64,
    s: Complex64,
    spec: &ContourSpec,
    tol: f64,
) -> Result<Complex64> {
    check_index(j, k)?;
    spec.validate(k)?;
    let c = z_j + j as f64;
    let rho = class_rho(spec.rho.unwrap_or_else(|| rho_for(k, a_j)), spec, c);
    hankel_core(k, a_j, c, s, rho, spec, tol, true).map(|h| h.value)
}

fn check_index(j: usize, k: usize) -> Result<()> {
    if j == 0 || j > k {
        return Err(ZetaError::Precondition(format!("class index j = {j} outside 1..={k}")));
    }
    Ok(())
}

/// `J^j(s) = ∫_0^∞ λ^{s-1} g(λ) dλ` along the positive real axis.
pub fn straight_ray_integral(
    j: usize,
    k: usize,
    a_j: &Param,
    z_j: Complex64,
    s: Complex64,
    tol: f64,
) -> Result<Complex64> {
    ray_from_zero(j, k, a_j, z_j, s, None, tol)
}

/// `J^j(s)` along `L_{u,ε} = [0, u-ε] ∪ S⁺_ε(u) ∪ [u+ε, ∞)`.
pub fn hankel_i_deformed(
    j: usize,
    k: usize,
    a_j: &Param,
    z_j: Complex64,
    s: Complex64,
    spec: &ContourSpec,
    tol: f64,
) -> Result<Complex64> {
    spec.validate(k)?;
    let bump = spec
        .bump
        .ok_or_else(|| ZetaError::Precondition("deformed contour needs a bump (u, eps)".into()))?;
    ray_from_zero(j, k, a_j, z_j, s, Some(bump), tol)
}

fn ray_from_zero(
    j: usize,
    k: usize,
    a: &Param,
    z: Complex64,
    s: Complex64,
    bump: Option<Bump>,
    tol: f64,
) -> Result<Complex64> {
    check_index(j, k)?;
    let c = z + j as f64;
    if c.re <= 0.0 {
        return Err(ZetaError::Domain(format!("Re(j + z_j) = {} must be positive", c.re)));
    }
    let lattice = a.in_lattice(k);
    if s.re <= 0.0 || (lattice && s.re <= 1.0) {
        return Err(ZetaError::ConvergenceDomain(format!(
            "the ray integral from 0 needs Re s > {} (got {})",
            if lattice { 1 } else { 0 },
            s.re
        )));
    }
    let kernel = Kernel::new(k, a, c);
    let poles = poles_near(k, a, 1e6);
    let on_axis = |x: f64| {
        poles
            .iter()
            .any(|p| p.re > 0.0 && p.im.abs() < COLLISION_GUARD && (p.re - x).abs() < 1.0)
    };
    let power = |lam: Complex64| pow_with_arg(lam, s - 1.0, lam.arg());
    let f_real = |r: f64| power(Complex64::new(r, 0.0)) * kernel.g(Complex64::new(r, 0.0));

    let t_len = ray_length(&f_real, s, c.re, k, a, 0.0, 1.0, tol);
    let mut value = Complex64::new(0.0, 0.0);
    match bump {
        None => {
            if poles.iter().any(|p| p.re > 0.0 && p.im.abs() < COLLISION_GUARD) {
                return Err(ZetaError::ContourCollision { distance: 0.0 });
            }
            value += real_segment(&f_real, s, 0.0, t_len, tol, &kernel)?;
        }
        Some(b) => {
            for p in &poles {
                let d = ((p - b.u).norm() - b.eps).abs();
                if d < COLLISION_GUARD {
                    return Err(ZetaError::ContourCollision { distance: d });
                }
            }
            if on_axis(b.u - b.eps) || on_axis(b.u + b.eps) {
                let bad = poles
                    .iter()
                    .filter(|p| p.re > 0.0 && p.im.abs() < COLLISION_GUARD)
                    .any(|p| p.re < b.u - b.eps || p.re > b.u + b.eps);
                if bad {
                    return Err(ZetaError::ContourCollision { distance: 0.0 });
                }
            }
            value += real_segment(&f_real, s, 0.0, b.u - b.eps, tol / 3.0, &kernel)?;
            // S⁺_ε(u): u + ε e^{iφ}, φ from π down to 0
            let arc_f = |phi: f64| {
                let e = Complex64::from_polar(b.eps, phi);
                let lam = e + b.u;
                power(lam) * kernel.g(lam) * I * e
            };
            let q = integrate(&arc_f, &[PI, FRAC_PI_2, 0.0], tol / 3.0);
            value += q.value;
            let end = t_len.max(b.u + b.eps + 1.0);
            let n = ((end - b.u - b.eps) / 2.0).ceil().max(4.0) as usize;
            let breaks: Vec<f64> = (0..=n)
                .map(|i| b.u + b.eps + (end - b.u - b.eps) * i as f64 / n as f64)
                .collect();
            value += integrate(&f_real, &breaks, tol / 3.0).value;
        }
    }
    Ok(value)
}

/// `∫_lo^hi r^{s-1} g(r) dr` with geometric panels toward a zero lower limit.
fn real_segment<F: Fn(f64) -> Complex64>(
    f: &F,
    s: Complex64,
    lo: f64,
    hi: f64,
    tol: f64,
    kernel: &Kernel,
) -> Result<Complex64> {
    let mut breaks = vec![];
    let mut extra = Complex64::new(0.0, 0.0);
    if lo == 0.0 {
        // below δ use g(r) ≈ g(0): ∫_0^δ r^{s-1} dr = δ^s / s
        let g0 = kernel.g(Complex64::new(0.0, 0.0));
        let sigma = s.re;
        let delta = ((tol * 1e-3 * sigma / (g0.norm() + 1.0)).ln() / sigma)
            .exp()
            .min(hi * 0.5);
        let delta = delta.max(1e-300);
        extra = g0 * pow_with_arg(Complex64::new(delta, 0.0), s, 0.0) / s;
        let mut x = delta;
        while x < hi.min(1.0) {
            breaks.push(x);
            x *= 2.0;
        }
    } else {
        breaks.push(lo);
    }
    let last = *breaks.last().expect("nonempty");
    let n = ((hi - last) / 2.0).ceil().max(1.0) as usize;
    for i in 1..=n {
        breaks.push(last + (hi - last) * i as f64 / n as f64);
    }
    Ok(integrate(f, &breaks, tol).value + extra)
}

/// Number of explicit head blocks for class `j`: `Re(Pk + j + z_j) >= 1`, and past
/// every recorded argument.
fn head_blocks(p: &PeriodicParams, j: usize, branch: &BranchRecord) -> usize {
    let k = p.k;
    let c = p.z[j - 1] + j as f64;
    let mut m = 0usize;
    while c.re + ((m * k) as f64) < 1.0 {
        m += 1;
    }
    if let Some(last) = branch.args.keys().filter(|n| (**n - 1) % k == j - 1).max() {
        m = m.max((last - j) / k + 1);
    }
    m
}

/// `ζ_k(a, z, s)`: series for `Re s > 1.5` (when admissible), contour otherwise.
pub fn eval_zeta_k(p: &PeriodicParams, s: Complex64, tol: f64) -> Result<EvalResult> {
    if s.re > 1.5 && p.min_im_a() >= 0.0 {
        if let Ok(r) = eval_zeta_k_series(p, s, tol) {
            return Ok(r);
        }
    }
    eval_zeta_k_contour(p, s, tol, &ContourSpec::default(), &BranchRecord::principal())
}

/// Contour route with explicit contour parameters and recorded head-term arguments.
pub fn eval_zeta_k_with(
    p: &PeriodicParams,
    s: Complex64,
    tol: f64,
    spec: &ContourSpec,
    branch: &BranchRecord,
) -> Result<EvalResult> {
    if s.re > 1.5 && p.min_im_a() >= 0.0 && branch.args.is_empty() && spec.rho.is_none() {
        if let Ok(r) = eval_zeta_k_series(p, s, tol) {
            return Ok(r);
        }
    }
    eval_zeta_k_contour(p, s, tol, spec, branch)
}

/// Richardson offsets used at positive integers.
pub const RICHARDSON_DELTAS: [f64; 2] = [1e-3, 5e-4];

/// The contour route only (no delegation to the series).
pub fn eval_zeta_k_contour(
    p: &PeriodicParams,
    s: Complex64,
    tol: f64,
    spec: &ContourSpec,
    branch: &BranchRecord,
) -> Result<EvalResult> {
    p.check_z()?;
    spec.validate(p.k)?;
    if !(tol > 0.0) {
        return Err(ZetaError::Precondition("tol must be positive".into()));
    }
    match nearest_integer(s, 1e-12) {
        Some(n) if n <= 0 => contour_at_nonpositive_integer(p, n, tol, spec, branch),
        Some(n) => {
            if n == 1 {
                let res = crate::analytic::residue_formula(p);
                if res.norm() > 1e-14 {
                    return Ok(EvalResult::pole(res, Method::Contour));
                }
            }
            let centre = Complex64::new(n as f64, 0.0);
            let sym = |d: f64| -> Result<(Complex64, f64, usize)> {
                let hi = contour_generic(p, centre + d, tol * 0.1, spec, branch)?;
                let lo = contour_generic(p, centre - d, tol * 0.1, spec, branch)?;
                Ok((
                    0.5 * (hi.value + lo.value),
                    0.5 * (hi.err + lo.err),
                    hi.terms_used + lo.terms_used,
                ))
            };
            let (v1, e1, t1) = sym(RICHARDSON_DELTAS[0])?;
            let (v2, e2, t2) = sym(RICHARDSON_DELTAS[1])?;
            let value = (4.0 * v2 - v1) / 3.0;
            // the δ⁴ remainder is about δ² times the observed δ² difference
            let d1 = RICHARDSON_DELTAS[0];
            let err = 10.0 * d1 * d1 * (v2 - v1).norm() + (4.0 * e2 + e1) / 3.0;
            Ok(EvalResult::new(value, err, Method::Contour, t1 + t2))
        }
        None => contour_generic(p, s, tol, spec, branch),
    }
}

/// Unless overridden, the circle shrinks to `1/|c|` so that `|e^{-cλ}| <= e` on it;
/// a larger circle loses `|c|ρ / ln 10` digits to cancellation.
fn class_rho(rho: f64, spec: &ContourSpec, c: Complex64) -> f64 {
    match spec.rho {
        Some(r) => r,
        None => rho.min(1.0 / c.norm()),
    }
}

fn heads(p: &PeriodicParams, j: usize, m: usize, s: Complex64, branch: &BranchRecord) -> Result<CompensatedSum> {
    let mut acc = CompensatedSum::default();
    for q in 0..m {
        let n = q * p.k + j;
        let w = Complex64::new(n as f64, 0.0) + p.z[j - 1];
        if w.norm() == 0.0 {
            return Err(ZetaError::Domain(format!("term {n} has a vanishing denominator")));
        }
        acc.add(p.a[j - 1].phase(n as i64) * pow_with_arg(w, -s, branch.arg_for(n, w)));
    }
    Ok(acc)
}

fn contour_generic(
    p: &PeriodicParams,
    s: Complex64,
    tol: f64,
    spec: &ContourSpec,
    branch: &BranchRecord,
) -> Result<EvalResult> {
    let rho = spec.rho.unwrap_or_else(|| choose_rho(p));
    let denom = exp_two_pi_i_minus_one(s) * gamma(s)?;
    let dn = denom.norm();
    let share = 0.5 * tol * dn / p.k as f64;
    let mut value = CompensatedSum::default();
    let mut err = 0.0;
    let mut terms = 0;
    for j in 1..=p.k {
        let m = head_blocks(p, j, branch);
        let h = heads(p, j, m, s, branch)?;
        value.add(h.value());
        err += 4.0 * f64::EPSILON * h.abs();
        let c = p.z[j - 1] + (m * p.k + j) as f64;
        let coeff = p.a[j - 1].phase((m * p.k + j) as i64);
        let hk = hankel_core(
            p.k,
            &p.a[j - 1],
            c,
            s,
            class_rho(rho, spec, c),
            spec,
            share / coeff.norm().max(1e-300),
            true,
        )?;
        value.add(coeff * hk.value / denom);
        err += coeff.norm() * hk.err / dn;
        terms += m;
    }
    Ok(EvalResult::new(value.value(), err, Method::Contour, terms))
}

/// At `s = -n` the rays cancel exactly and `(e^{2πis} - 1)Γ(s) → 2πi (-1)^n / n!`.
fn contour_at_nonpositive_integer(
    p: &PeriodicParams,
    n: i64,
    tol: f64,
    spec: &ContourSpec,
    branch: &BranchRecord,
) -> Result<EvalResult> {
    let rho = spec.rho.unwrap_or_else(|| choose_rho(p));
    let s = Complex64::new(n as f64, 0.0);
    let m_abs = (-n) as u32;
    let fact: f64 = (1..=m_abs).map(|i| i as f64).product();
    let sign = if m_abs.is_multiple_of(2) { 1.0 } else { -1.0 };
    let denom = 2.0 * PI * I * sign / fact;
    let mut value = CompensatedSum::default();
    let mut err = 0.0;
    let mut terms = 0;
    for j in 1..=p.k {
        let m = head_blocks(p, j, branch);
        let h = heads(p, j, m, s, branch)?;
        value.add(h.value());
        err += 4.0 * f64::EPSILON * h.abs();
        let c = p.z[j - 1] + (m * p.k + j) as f64;
        let coeff = p.a[j - 1].phase((m * p.k + j) as i64);
        let hk = hankel_core(
            p.k,
            &p.a[j - 1],
            c,
            s,
            class_rho(rho, spec, c),
            spec,
            tol * denom.norm(),
            true,
        )?;
        value.add(coeff * hk.value / denom);
        err += coeff.norm() * hk.err / denom.norm();
        terms += m;
    }
    Ok(EvalResult::new(value.value(), err, Method::Contour, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(a: &[Param], z: &[Complex64]) -> PeriodicParams {
        PeriodicParams::new(a.to_vec(), z.to_vec()).unwrap()
    }

    #[test]
    fn choose_rho_examples() {
        assert_eq!(choose_rho(&params(&[Param::real(0.0)], &[c(0.0, 0.0)])), 0.5);
        // k = 2: poles 2πi(a_j - l/2) all have modulus > 1, so the cap 0.5 applies
        let p = params(
            &[Param::real(0.26), Param::complex(c(0.9, 0.3))],
            &[c(0.0, 0.0), c(0.0, 0.0)],
        );
        assert_eq!(choose_rho(&p), 0.5);
        // k = 4: the pole 2πi(0.26 - 1/4) has modulus 0.02π
        let p = params(
            &[
                Param::real(0.26),
                Param::complex(c(0.9, 0.3)),
                Param::real(0.1),
                Param::real(0.6),
            ],
            &[c(0.0, 0.0); 4],
        );
        assert!((choose_rho(&p) - 0.01 * PI).abs() < 1e-12);
        assert_eq!(choose_rho(&params(&[Param::real(0.5)], &[c(0.0, 0.0)])), 0.5);
    }

    #[test]
    fn hankel_at_zero_and_one() {
        let spec = ContourSpec::default();
        let a = Param::complex(c(0.3, 0.2));
        let i0 = hankel_i(1, 1, &a, c(0.0, 0.0), c(0.0, 0.0), &spec, 1e-12).unwrap();
        let expected = 2.0 * PI * I / (1.0 - (2.0 * PI * I * a.value).exp());
        assert!((i0 - expected).norm() < 1e-11);
        let i1 = hankel_i(2, 3, &Param::rational(2, 3), c(0.4, 0.0), c(1.0, 0.0), &spec, 1e-12).unwrap();
        assert!((i1 - 2.0 * PI * I / 3.0).norm() < 1e-11);
    }

    #[test]
    fn hankel_at_negative_integer_is_a_polylog_residue() {
        // for k = 1, z = 0: I(-2) = 2πi g''(0)/2 = πi (1 + q) / (1 - q)^3, q = e^{2πia}
        let a = Param::complex(c(0.3, 0.2));
        let q = (2.0 * PI * I * a.value).exp();
        let got = hankel_i(1, 1, &a, c(0.0, 0.0), c(-2.0, 0.0), &ContourSpec::default(), 1e-12).unwrap();
        let want = PI * I * (1.0 + q) / (1.0 - q).powi(3);
        assert!((got - want).norm() < 1e-10);
    }

    #[test]
    fn classical_values() {
        let p = params(&[Param::real(0.0)], &[c(0.0, 0.0)]);
        let r = eval_zeta_k(&p, c(-1.0, 0.0), 1e-12).unwrap();
        assert!((r.value - c(-1.0 / 12.0, 0.0)).norm() < 1e-11);
        let r = eval_zeta_k(&p, c(0.0, 0.0), 1e-12).unwrap();
        assert!((r.value - c(-0.5, 0.0)).norm() < 1e-11);
        let r = eval_zeta_k(&p, c(1.0, 0.0), 1e-12).unwrap();
        assert!(r.is_pole());
        assert!((r.pole_residue.unwrap() - 1.0).norm() < 1e-14);
        let h = params(&[Param::real(0.0)], &[c(0.5, 0.0)]);
        let r = eval_zeta_k_contour(
            &h,
            c(2.0, 0.0),
            1e-12,
            &ContourSpec::default(),
            &BranchRecord::principal(),
        )
        .unwrap();
        assert!((r.value.re - (PI * PI / 2.0 - 4.0)).abs() < 1e-10);
    }

    #[test]
    fn negative_integer_value_is_the_polylog() {
        let a = Param::complex(c(0.3, 0.1));
        let q = (2.0 * PI * I * a.value).exp();
        let p = params(&[a], &[c(0.0, 0.0)]);
        let r = eval_zeta_k(&p, c(-2.0, 0.0), 1e-12).unwrap();
        let li_m2 = q * (1.0 + q) / (1.0 - q).powi(3);
        assert!((r.value - li_m2).norm() < 1e-10);
    }

    #[test]
    fn shifted_heads_reach_negative_real_z() {
        // z = -1.5 for k = 1: Σ (n - 1.5)^{-2} = (-0.5)^{-2} + ζ_H(2, 0.5) = 4 + π²/2
        let p = params(&[Param::real(0.0)], &[c(-1.5, 0.0)]);
        let r = eval_zeta_k_contour(
            &p,
            c(2.0, 0.0),
            1e-12,
            &ContourSpec::default(),
            &BranchRecord::principal(),
        )
        .unwrap();
        assert!((r.value.re - (4.0 + PI * PI / 2.0)).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn deformed_equals_straight_in_upper_half_plane() {
        let a = Param::complex(c(0.2, 0.1));
        let spec = ContourSpec {
            bump: Some(Bump { u: 1.0, eps: 0.3 }),
            ..ContourSpec::default()
        };
        let s = c(1.7, 0.4);
        let straight = straight_ray_integral(1, 1, &a, c(0.3, 0.0), s, 1e-12).unwrap();
        let bumped = hankel_i_deformed(1, 1, &a, c(0.3, 0.0), s, &spec, 1e-12).unwrap();
        assert!((straight - bumped).norm() < 1e-10);
    }
}
