//! Residues, monodromies and path continuation.
//!
//! Multivaluedness in `z` lives entirely in the explicitly summed head terms
//! `(n + z_j)^{-s}`; continuation along a loop therefore reduces to tracking the
//! arguments of those terms and evaluating with the resulting [`BranchRecord`].

use crate::contour::{eval_zeta_k, eval_zeta_k_with, hankel_i_deformed, straight_ray_integral, Bump, ContourSpec};
use crate::error::{Result, ZetaError};
use crate::exec::Execution;
use crate::num::{exp_two_pi_i_minus_one, pow_principal, pow_with_arg, CompensatedSum, I};
use crate::params::{BranchRecord, EvalResult, Method, Param, PeriodicParams};
use crate::quad::integrate;
use crate::seqspace::{CoordSeg, PathSpec, Segment, Tail, TruncatedSeq, WeightFamily};
use crate::series::{class_sum, eval_er_series_with_branch};
use num_complex::Complex64;
use std::cell::RefCell;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Minimum number of trapezoid nodes on a residue circle.
pub const MIN_CIRCLE_NODES: usize = 64;
const MAX_CIRCLE_NODES: usize = 4096;

/// `(1/k) Σ_{j : a_j ∈ Z[1/k]} e^{2 pi i j a_j}`; zero in the entire case.
pub fn residue_formula(p: &PeriodicParams) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, a) in p.a.iter().enumerate() {
        if a.in_lattice(p.k) {
            acc += a.phase((i + 1) as i64);
        }
    }
    acc / p.k as f64
}

/// `(1/2 pi i) ∮_{|s - center| = radius} f(s) ds` by the trapezoid rule.
///
/// Nodes start at [`MIN_CIRCLE_NODES`] and double until two levels agree to `tol`.
/// The reported error is that difference plus `radius` times the largest node error.
pub fn circle_residue<F>(f: F, center: Complex64, radius: f64, tol: f64, exec: Execution) -> Result<EvalResult>
where
    F: Fn(Complex64) -> Result<EvalResult> + Sync + Send,
{
    if !(radius > 0.0 && tol > 0.0) {
        return Err(ZetaError::Precondition("radius and tol must be positive".into()));
    }
    let sweep = |idx: &[usize], n: usize| -> Result<(Complex64, f64)> {
        let rows = exec.map(idx, |&m| {
            let e = Complex64::from_polar(radius, TAU * m as f64 / n as f64);
            f(center + e).map(|r| (r, e))
        });
        let mut acc = CompensatedSum::default();
        let mut err: f64 = 0.0;
        for row in rows {
            let (r, e) = row?;
            if r.is_pole() {
                return Err(ZetaError::Domain("residue circle passes through a pole".into()));
            }
            acc.add(r.value * e);
            err = err.max(r.err);
        }
        Ok((acc.value(), err))
    };
    let mut n = MIN_CIRCLE_NODES;
    let all: Vec<usize> = (0..n).collect();
    let (mut sum, mut node_err) = sweep(&all, n)?;
    let mut prev = sum / n as f64;
    loop {
        let odd: Vec<usize> = (0..n).map(|m| 2 * m + 1).collect();
        let (extra, e) = sweep(&odd, 2 * n)?;
        sum += extra;
        node_err = node_err.max(e);
        n *= 2;
        let cur = sum / n as f64;
        let diff = (cur - prev).norm();
        if diff < tol || n >= MAX_CIRCLE_NODES {
            return Ok(EvalResult::new(cur, diff + radius * node_err, Method::Contour, n));
        }
        prev = cur;
    }
}

/// Residue of `ζ_k(a, z, ·)` at `s = 1` from a circle integral of radius `< 1/2`.
pub fn residue_numeric(p: &PeriodicParams, radius: f64, tol: f64) -> Result<EvalResult> {
    residue_numeric_with(p, radius, tol, Execution::default())
}

pub fn residue_numeric_with(p: &PeriodicParams, radius: f64, tol: f64, exec: Execution) -> Result<EvalResult> {
    if !(radius > 0.0 && radius < 0.5) {
        return Err(ZetaError::Precondition(format!(
            "residue radius {radius} must lie in (0, 1/2)"
        )));
    }
    let node_tol = 0.1 * tol / radius.max(1e-3);
    circle_residue(
        |s| eval_zeta_k(p, s, node_tol),
        Complex64::new(1.0, 0.0),
        radius,
        tol,
        exec,
    )
}

fn check_class(p: &PeriodicParams, j: usize) -> Result<()> {
    if j == 0 || j > p.k {
        return Err(ZetaError::Precondition(format!(
            "class index j = {j} outside 1..={}",
            p.k
        )));
    }
    Ok(())
}

/// Base `pk + j + z_j` of the term encircled by a z-loop; domain error on the hyperplane.
fn looped_base(p: &PeriodicParams, j: usize, pblock: usize) -> Result<(usize, Complex64)> {
    check_class(p, j)?;
    let n = pblock * p.k + j;
    let w = p.z[j - 1] + n as f64;
    if w.norm() <= 1e-14 * n as f64 {
        return Err(ZetaError::Domain(format!("z_{j} lies on the hyperplane z_{j} = -{n}")));
    }
    Ok((n, w))
}

/// `e^{2 pi i n a_j} (n + z_j)^{-s} (e^{-2 pi i s} - 1)` with `n = pk + j`, principal branch.
pub fn monodromy_z_formula(p: &PeriodicParams, s: Complex64, j: usize, pblock: usize) -> Result<Complex64> {
    let (n, w) = looped_base(p, j, pblock)?;
    Ok(p.a[j - 1].phase(n as i64) * pow_principal(w, -s) * exp_two_pi_i_minus_one(-s))
}

/// A closed loop of the single coordinate `z_j`, as a chain of segments in its plane.
#[derive(Debug, Clone, PartialEq)]
pub struct ZLoop {
    pub j: usize,
    pub segs: Vec<CoordSeg>,
}

impl ZLoop {
    /// Counterclockwise loop based at the current `z_j` that encircles `-(pk + j)` once
    /// and no other excluded point.
    ///
    /// A circle about the excluded point when that encloses nothing else, otherwise a
    /// lasso: up to height `h`, across, down to a circle of radius `1/2`, and back.
    pub fn around(p: &PeriodicParams, j: usize, pblock: usize) -> Result<Self> {
        let (n, w) = looped_base(p, j, pblock)?;
        let z0 = p.z[j - 1];
        let centre = Complex64::new(-(n as f64), 0.0);
        let r = w.norm();
        if r < p.k as f64 {
            let theta0 = w.arg();
            return Ok(Self {
                j,
                segs: vec![CoordSeg::Arc {
                    center: centre,
                    radius: r,
                    theta0,
                    theta1: theta0 + TAU,
                }],
            });
        }
        let small = 0.5;
        let h = z0.im.max(0.0) + 1.0;
        let up = Complex64::new(z0.re, h);
        let over = Complex64::new(centre.re, h);
        let down = centre + Complex64::new(0.0, small);
        let stem = vec![
            CoordSeg::Line { from: z0, to: up },
            CoordSeg::Line { from: up, to: over },
            CoordSeg::Line { from: over, to: down },
        ];
        let mut segs = stem.clone();
        segs.push(CoordSeg::Arc {
            center: centre,
            radius: small,
            theta0: FRAC_PI_2,
            theta1: FRAC_PI_2 + TAU,
        });
        segs.extend(stem.iter().rev().map(CoordSeg::reversed));
        Ok(Self { j, segs })
    }

    /// Circle `center + radius e^{iφ}`, `φ` from `theta0` through one positive turn.
    pub fn circle(j: usize, center: Complex64, radius: f64, theta0: f64) -> Self {
        Self {
            j,
            segs: vec![CoordSeg::Arc {
                center,
                radius,
                theta0,
                theta1: theta0 + TAU,
            }],
        }
    }

    pub fn reversed(&self) -> Self {
        Self {
            j: self.j,
            segs: self.segs.iter().rev().map(CoordSeg::reversed).collect(),
        }
    }

    fn start(&self) -> Complex64 {
        self.segs[0].at(0.0)
    }

    fn end(&self) -> Complex64 {
        self.segs.last().map_or(Complex64::new(f64::NAN, 0.0), |s| s.at(1.0))
    }

    fn min_re(&self) -> f64 {
        let mut m = f64::INFINITY;
        for seg in &self.segs {
            for i in 0..=256 {
                m = m.min(seg.at(i as f64 / 256.0).re);
            }
        }
        m
    }
}

/// Outcome of continuing `ζ_k` around a closed loop in `z`.
#[derive(Debug, Clone)]
pub struct LoopContinuation {
    /// End value minus start value.
    pub value: Complex64,
    pub err: f64,
    pub start: EvalResult,
    pub end: EvalResult,
    /// Branch of the head terms after the loop.
    pub branch: BranchRecord,
    /// Samples after refinement.
    pub samples: usize,
}

/// Continue `ζ_k(a, ·, s)` along the product of loops (left to right) and return
/// the change of value.
///
/// Every term `(n + z_j)^{-s}` of a moving coordinate whose base can leave the half
/// plane `Re > 1/2` along the loop has its argument tracked; a point of the loop on
/// an excluded hyperplane is a domain error.
pub fn monodromy_z_loop(
    p: &PeriodicParams,
    s: Complex64,
    word: &[ZLoop],
    loop_samples: usize,
    tol: f64,
) -> Result<LoopContinuation> {
    let k = p.k;
    let mut tracked: Vec<(usize, usize)> = Vec::new(); // (j, n)
    for lp in word {
        check_class(p, lp.j)?;
        if lp.segs.is_empty() {
            return Err(ZetaError::Precondition("a loop needs at least one segment".into()));
        }
        let z0 = p.z[lp.j - 1];
        let gap = (lp.start() - z0).norm().max((lp.end() - z0).norm());
        if gap > 1e-12 * (1.0 + z0.norm()) {
            return Err(ZetaError::Precondition(format!(
                "loop in z_{} is not closed at the basepoint (gap {gap:e})",
                lp.j
            )));
        }
        let min_re = lp.min_re();
        let mut q = 0;
        while (q * k + lp.j) as f64 + min_re < 1.5 {
            if !tracked.contains(&(lp.j, q * k + lp.j)) {
                tracked.push((lp.j, q * k + lp.j));
            }
            q += 1;
        }
    }
    let start_branch = BranchRecord::principal();
    let start = eval_zeta_k_with(p, s, tol, &ContourSpec::default(), &start_branch)?;
    if tracked.is_empty() {
        return Ok(LoopContinuation {
            value: Complex64::new(0.0, 0.0),
            err: 2.0 * start.err,
            end: start,
            start,
            branch: start_branch,
            samples: 0,
        });
    }
    let base = |j: usize, n: usize| p.z[j - 1] + n as f64;
    let mut segments = Vec::new();
    for lp in word {
        for seg in &lp.segs {
            let coords = tracked
                .iter()
                .map(|&(j, n)| {
                    if j == lp.j {
                        shift(seg, n as f64)
                    } else {
                        CoordSeg::Const(base(j, n))
                    }
                })
                .collect();
            segments.push(Segment { coords });
        }
    }
    let path = PathSpec::new(WeightFamily::Ones, segments, loop_samples.max(MIN_CIRCLE_NODES))?;
    let initial: Vec<f64> = tracked.iter().map(|&(j, n)| base(j, n).arg()).collect();
    let trace = path.track(Some(&initial)).map_err(|e| match e {
        ZetaError::BranchUndefined { index, sample } => ZetaError::Domain(format!(
            "loop meets the excluded hyperplane of term {} at sample {sample}",
            tracked[index - 1].1
        )),
        other => other,
    })?;
    let mut branch = BranchRecord::principal();
    for (&(_, n), &arg) in tracked.iter().zip(trace.final_args()) {
        branch.set(n, arg);
    }
    let end = eval_zeta_k_with(p, s, tol, &ContourSpec::default(), &branch)?;
    Ok(LoopContinuation {
        value: end.value - start.value,
        err: end.err + start.err,
        start,
        end,
        branch,
        samples: trace.points.len(),
    })
}

fn shift(seg: &CoordSeg, by: f64) -> CoordSeg {
    match *seg {
        CoordSeg::Const(c) => CoordSeg::Const(c + by),
        CoordSeg::Line { from, to } => CoordSeg::Line {
            from: from + by,
            to: to + by,
        },
        CoordSeg::Arc {
            center,
            radius,
            theta0,
            theta1,
        } => CoordSeg::Arc {
            center: center + by,
            radius,
            theta0,
            theta1,
        },
        CoordSeg::LogLine { from, to } => {
            // no closed form for a shifted exponential; fall back to its chord
            CoordSeg::Line {
                from: from.exp() + by,
                to: to.exp() + by,
            }
        }
    }
}

/// Monodromy of `ζ_k` around the hyperplane `z_j = -(pk + j)`, by loop continuation.
pub fn monodromy_z_numeric(
    p: &PeriodicParams,
    s: Complex64,
    j: usize,
    pblock: usize,
    loop_samples: usize,
    tol: f64,
) -> Result<LoopContinuation> {
    let lp = ZLoop::around(p, j, pblock)?;
    monodromy_z_loop(p, s, &[lp], loop_samples, tol)
}

/// Change of `ζ_k` along the commutator `γ₁⁻¹ γ₂⁻¹ γ₁ γ₂` of the loops around two
/// hyperplanes `(j₁, p₁)` and `(j₂, p₂)`.
pub fn monodromy_z_commutator(
    p: &PeriodicParams,
    s: Complex64,
    first: (usize, usize),
    second: (usize, usize),
    loop_samples: usize,
    tol: f64,
) -> Result<LoopContinuation> {
    let g1 = ZLoop::around(p, first.0, first.1)?;
    let g2 = ZLoop::around(p, second.0, second.1)?;
    let word = [g1.reversed(), g2.reversed(), g1, g2];
    monodromy_z_loop(p, s, &word, loop_samples, tol)
}

/// `a_j - l/k`, exact for declared rationals.
fn a_offset(p: &PeriodicParams, j: usize, l: i64) -> Result<Complex64> {
    check_class(p, j)?;
    let a = &p.a[j - 1];
    let k = p.k as f64;
    let d = match a.exact {
        Some((num, q)) => {
            let top = num as i128 * p.k as i128 - l as i128 * q as i128;
            Complex64::new(top as f64 / (q as f64 * k), 0.0)
        }
        None => a.value - l as f64 / k,
    };
    if d.norm() == 0.0 {
        return Err(ZetaError::Domain(format!("a_{j} = {l}/{} lies on the hyperplane", p.k)));
    }
    Ok(d)
}

/// `Arg(a_j - l/k) ∈ [-pi/2, 0)`, the sector where the closed form is derived.
fn sector_offset(p: &PeriodicParams, j: usize, l: i64) -> Result<Complex64> {
    let d = a_offset(p, j, l)?;
    let arg = d.arg();
    if !(-FRAC_PI_2..0.0).contains(&arg) {
        return Err(ZetaError::Convention(format!(
            "Arg(a_{j} - {l}/{}) = {arg} is outside [-pi/2, 0)",
            p.k
        )));
    }
    Ok(d)
}

/// `[2 pi (a_j - l/k)]^{s-1} e^{i pi (s-1)/2} e^{-2 pi i (a_j - l/k)(j + z_j)} / k`:
/// the residue of the integrand at `λ* = 2 pi i (a_j - l/k)`.
pub fn monodromy_a_residue(p: &PeriodicParams, s: Complex64, j: usize, l: i64) -> Result<Complex64> {
    let d = sector_offset(p, j, l)?;
    let c = p.z[j - 1] + j as f64;
    let power = pow_with_arg(2.0 * PI * d, s - 1.0, d.arg());
    let turn = (I * PI * (s - 1.0) / 2.0).exp();
    let decay = (-2.0 * PI * I * d * c).exp();
    Ok(power * turn * decay / p.k as f64)
}

/// Change of the class integral `∫_0^∞ λ^{s-1} g(λ) dλ` when `a_j` loops around
/// `l/k`: `2 pi i` times [`monodromy_a_residue`].
pub fn monodromy_a_formula(p: &PeriodicParams, s: Complex64, j: usize, l: i64) -> Result<Complex64> {
    Ok(2.0 * PI * I * monodromy_a_residue(p, s, j, l)?)
}

/// Straight-ray integral minus the integral over the bumped contour `L_{u,ε}` that
/// passes above the pole `2 pi i (a_j - l/k)`.
///
/// The bump is centred below the pole and its radius is the midpoint of the range
/// that encloses this pole and no other one.
pub fn monodromy_a_numeric(p: &PeriodicParams, s: Complex64, j: usize, l: i64, tol: f64) -> Result<EvalResult> {
    let d = sector_offset(p, j, l)?;
    let pole = 2.0 * PI * I * d;
    let (u, v) = (pole.re, pole.im);
    let hi = (0.5 * u).min(TAU / p.k as f64 - v);
    if !(hi > v) {
        return Err(ZetaError::Precondition(format!(
            "no bump radius separates the pole at {pole} from its neighbours"
        )));
    }
    let spec = ContourSpec {
        bump: Some(Bump { u, eps: 0.5 * (v + hi) }),
        ..ContourSpec::default()
    };
    let a = &p.a[j - 1];
    let z = p.z[j - 1];
    let straight = straight_ray_integral(j, p.k, a, z, s, 0.25 * tol)?;
    let bumped = hankel_i_deformed(j, p.k, a, z, s, &spec, 0.25 * tol)?;
    Ok(EvalResult::new(straight - bumped, 0.5 * tol, Method::Integral, 0))
}

/// Continue `Σ b_n z_n^s` along `path` (the window coordinates; beyond the window
/// `z` follows `tail`), starting from the principal branch.
///
/// Returns the value at the end of the path and the accumulated arguments.
pub fn continue_along_path(
    b: &TruncatedSeq,
    path: &PathSpec,
    tail: Option<Tail>,
    s: Complex64,
    tol: f64,
) -> Result<(EvalResult, BranchRecord)> {
    let start = path.start();
    let initial: Vec<f64> = start.iter().map(|z| z.arg()).collect();
    let trace = path.track(Some(&initial)).map_err(|e| match e {
        ZetaError::BranchUndefined { index, sample } => {
            ZetaError::Domain(format!("coordinate {index} vanishes at sample {sample}"))
        }
        other => other,
    })?;
    let mut branch = BranchRecord::principal();
    for (i, &arg) in trace.final_args().iter().enumerate() {
        branch.set(i + 1, arg);
    }
    let mut z = TruncatedSeq::new(path.weight, path.end());
    z.tail = tail;
    let value = eval_er_series_with_branch(b, &z, s, tol, &branch)?;
    Ok((value, branch))
}

/// `ζ_k(a, z1, s) - ζ_k(a, z0, s)` for `Re s > 0` from the derivative along the segment:
/// `-s ∫_0^1 Σ_j (z1_j - z0_j) Σ_p e^{2 pi i (pk+j) a_j} (pk + j + z_j(t))^{-s-1} dt`.
///
/// Arguments of the head terms are continued along the segment from their principal
/// values at `z0`, so the result refers to that continuation at `z1`.
pub fn continue_h0_integral(
    a: &[Param],
    z0: &[Complex64],
    z1: &[Complex64],
    s: Complex64,
    tol: f64,
) -> Result<EvalResult> {
    let p0 = PeriodicParams::new(a.to_vec(), z0.to_vec())?;
    PeriodicParams::new(a.to_vec(), z1.to_vec())?;
    let k = p0.k;
    if s.re <= 0.0 {
        return Err(ZetaError::ConvergenceDomain(format!(
            "the difference integral needs Re s > 0 (got {})",
            s.re
        )));
    }
    if p0.min_im_a() < 0.0 {
        return Err(ZetaError::Domain("the inner series needs Im a_j >= 0".into()));
    }
    if !(tol > 0.0) {
        return Err(ZetaError::Precondition("tol must be positive".into()));
    }
    let delta: Vec<Complex64> = z0.iter().zip(z1).map(|(x, y)| y - x).collect();
    let spread: f64 = delta.iter().map(|d| d.norm()).sum();
    if spread == 0.0 {
        return Ok(EvalResult::new(Complex64::new(0.0, 0.0), 0.0, Method::Integral, 0));
    }
    // heads: every term whose base can reach Re < 1 on the segment
    let mut heads: Vec<(usize, usize)> = Vec::new();
    for j in 1..=k {
        let lo = z0[j - 1].re.min(z1[j - 1].re);
        for e in excluded_near(j, k, z0[j - 1], z1[j - 1]) {
            if segment_distance(z0[j - 1], z1[j - 1], e) < 1e-10 * (1.0 + e.abs()) {
                return Err(ZetaError::Domain(format!(
                    "the segment in z_{j} meets the excluded point {e}"
                )));
            }
        }
        let mut q = 0;
        while (q * k + j) as f64 + lo < 1.5 {
            heads.push((j, q * k + j));
            q += 1;
        }
    }
    let scale = s.norm() * spread;
    let inner_tol = (0.05 * tol / (scale * k as f64)).max(1e-16);
    let failure: RefCell<Option<ZetaError>> = RefCell::new(None);
    let inner_err = RefCell::new(0.0f64);
    let f = |t: f64| -> Complex64 {
        if failure.borrow().is_some() {
            return Complex64::new(0.0, 0.0);
        }
        let zt: Vec<Complex64> = z0.iter().zip(&delta).map(|(x, d)| x + d * t).collect();
        let pt = PeriodicParams {
            k,
            a: a.to_vec(),
            z: zt,
        };
        let mut branch = BranchRecord::principal();
        for &(j, n) in &heads {
            let b0 = z0[j - 1] + n as f64;
            let bt = pt.z[j - 1] + n as f64;
            branch.set(n, b0.arg() + (bt / b0).arg());
        }
        let mut acc = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        for j in 1..=k {
            if delta[j - 1].norm() == 0.0 {
                continue;
            }
            match class_sum(&pt, j, s + 1.0, &branch, inner_tol) {
                Ok(part) => {
                    acc += delta[j - 1] * part.value;
                    err += delta[j - 1].norm() * part.err;
                }
                Err(e) => {
                    *failure.borrow_mut() = Some(e);
                    return Complex64::new(0.0, 0.0);
                }
            }
        }
        let mut worst = inner_err.borrow_mut();
        *worst = worst.max(err);
        -s * acc
    };
    let breaks: Vec<f64> = (0..=8).map(|i| i as f64 / 8.0).collect();
    let q = integrate(&f, &breaks, 0.5 * tol);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let err = q.err + s.norm() * inner_err.into_inner();
    Ok(EvalResult::new(q.value, err, Method::Integral, q.evals))
}

/// Excluded points `-(qk + j)` within reach of the segment `[z0, z1]`.
fn excluded_near(j: usize, k: usize, z0: Complex64, z1: Complex64) -> Vec<f64> {
    let reach = z0.norm().max(z1.norm()) + 1.0;
    let mut out = Vec::new();
    let mut q = 0;
    while ((q * k + j) as f64) <= reach {
        out.push(-((q * k + j) as f64));
        q += 1;
    }
    out
}

fn segment_distance(a: Complex64, b: Complex64, x: f64) -> f64 {
    let x = Complex64::new(x, 0.0);
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (x - a).norm();
    }
    let t = (((x - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (a + d * t - x).norm()
}

/// Pole and residue of `Σ (n^{-η})^s = ζ(ηs)`: both `1/η`.
pub fn pole_of_power_weight(eta: f64) -> Result<(f64, f64)> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(ZetaError::Precondition(format!("eta = {eta} must be positive")));
    }
    Ok((1.0 / eta, 1.0 / eta))
}

/// Residue of `s ↦ ζ(ηs)` at `s = 1/η` from a circle of radius `0.2/η`.
pub fn pole_of_power_weight_numeric(eta: f64, tol: f64) -> Result<EvalResult> {
    let (centre, _) = pole_of_power_weight(eta)?;
    let p = PeriodicParams::new(vec![Param::rational(0, 1)], vec![Complex64::new(0.0, 0.0)])?;
    let radius = 0.2 / eta;
    circle_residue(
        |s| eval_zeta_k(&p, eta * s, 0.1 * tol / radius.max(1e-3)),
        Complex64::new(centre, 0.0),
        radius,
        tol,
        Execution::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn residue_formula_examples() {
        let p = PeriodicParams::new(vec![Param::rational(0, 1)], vec![c(0.0, 0.0)]).unwrap();
        assert!((residue_formula(&p) - 1.0).norm() < 1e-15);
        let p = PeriodicParams::new(vec![Param::rational(1, 2), Param::real(0.37)], vec![c(0.0, 0.0); 2]).unwrap();
        assert!((residue_formula(&p) + 0.5).norm() < 1e-15);
        let p =
            PeriodicParams::from_values(&[c(0.3, 0.1), c(2f64.sqrt(), 0.0), c(0.0, 0.77)], &[c(0.0, 0.0); 3]).unwrap();
        assert_eq!(residue_formula(&p), c(0.0, 0.0));
    }

    #[test]
    fn residue_of_riemann_zeta() {
        let p = PeriodicParams::new(vec![Param::rational(0, 1)], vec![c(0.0, 0.0)]).unwrap();
        let r = residue_numeric(&p, 0.25, 1e-10).unwrap();
        assert!((r.value - 1.0).norm() < 1e-8, "{r:?}");
    }

    #[test]
    fn z_formula_examples() {
        let p = PeriodicParams::new(vec![Param::real(0.0)], vec![c(-0.5, 0.0)]).unwrap();
        let m = monodromy_z_formula(&p, c(0.5, 0.0), 1, 0).unwrap();
        assert!((m - c(-2.0 * 2f64.sqrt(), 0.0)).norm() < 1e-12, "{m}");
        assert!(monodromy_z_formula(&p, c(3.0, 0.0), 1, 0).unwrap().norm() < 1e-14);
    }

    #[test]
    fn z_loop_matches_formula() {
        let p = PeriodicParams::from_values(&[c(0.2, 0.0), c(0.0, 0.1)], &[c(0.0, 0.0), c(0.3, 0.0)]).unwrap();
        let s = c(0.7, 0.4);
        let f = monodromy_z_formula(&p, s, 2, 1).unwrap();
        let n = monodromy_z_numeric(&p, s, 2, 1, 64, 1e-10).unwrap();
        assert!((n.value - f).norm() < 1e-8, "{} vs {f}", n.value);
        assert_eq!(n.branch.winding(4, p.base(4)), 1);
    }

    #[test]
    fn a_formula_collapses_at_one() {
        let p = PeriodicParams::from_values(&[c(0.02, -0.05)], &[c(0.0, 0.0)]).unwrap();
        let d = c(0.02, -0.05);
        let r = monodromy_a_residue(&p, c(1.0, 0.0), 1, 0).unwrap();
        assert!((r - (-2.0 * PI * I * d).exp()).norm() < 1e-14);
        let r2 = monodromy_a_residue(&p, c(2.0, 0.0), 1, 0).unwrap();
        let expect = 2.0 * PI * d * I * (-2.0 * PI * I * d).exp();
        assert!((r2 - expect).norm() < 1e-13);
        let q = PeriodicParams::from_values(&[c(0.02, 0.05)], &[c(0.0, 0.0)]).unwrap();
        assert!(matches!(
            monodromy_a_residue(&q, c(2.0, 0.0), 1, 0),
            Err(ZetaError::Convention(_))
        ));
    }

    #[test]
    fn power_weight_poles() {
        assert_eq!(pole_of_power_weight(2.0).unwrap(), (0.5, 0.5));
        let r = pole_of_power_weight_numeric(1.25, 1e-9).unwrap();
        assert!((r.value - 0.8).norm() < 1e-7, "{r:?}");
    }

    #[test]
    fn segment_distance_clamps() {
        assert!((segment_distance(c(0.0, 1.0), c(2.0, 1.0), 1.0) - 1.0).abs() < 1e-15);
        assert!((segment_distance(c(0.0, 0.0), c(1.0, 0.0), -2.0) - 2.0).abs() < 1e-15);
    }
}
