//! Weighted sequence spaces at a finite truncation window.
//!
//! A sequence is stored as its first `N` entries plus an optional closed-form
//! tail. Paths are coordinate-wise maps on the window; arguments along a path are
//! unwound continuously from an initial value in `[0, 2 pi)`.

use crate::error::{Result, ZetaError};
use crate::num::{arg_0_2pi, unwrap_near};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

/// Weight sequence `r = {r_n}` of the space `l_r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WeightFamily {
    Ones,
    InverseN,
    ExpNegN,
    InverseNPow(f64),
}

impl WeightFamily {
    /// `r_n` for `n >= 1`.
    pub fn r(&self, n: usize) -> f64 {
        self.ln_r(n).exp()
    }

    /// `ln r_n`; finite even where `r_n` underflows.
    pub fn ln_r(&self, n: usize) -> f64 {
        let n = n as f64;
        match *self {
            WeightFamily::Ones => 0.0,
            WeightFamily::InverseN => -n.ln(),
            WeightFamily::ExpNegN => -n,
            WeightFamily::InverseNPow(eta) => -eta * n.ln(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            WeightFamily::InverseNPow(eta) if !(eta > 0.0 && eta.is_finite()) => Err(ZetaError::Precondition(format!(
                "power weight needs a positive exponent, got {eta}"
            ))),
            _ => Ok(()),
        }
    }
}

/// Coordinate generator for `n > N`.
pub type TailFn = Arc<dyn Fn(usize) -> Complex64 + Send + Sync>;

/// Closed-form description of the coordinates beyond the window.
#[derive(Clone)]
pub enum Tail {
    /// `z_n = c r_n`.
    ScaledWeight(Complex64),
    /// `z_n = c q^n` with `q > 0`.
    Geometric { c: Complex64, q: f64 },
    /// Arbitrary generator with declared bounds on `|z_n|/r_n` and `|Arg z_n|` for `n > N`.
    Generator {
        f: TailFn,
        ratio_sup: f64,
        ratio_inf: f64,
        arg_bound: f64,
    },
}

impl fmt::Debug for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tail::ScaledWeight(c) => f.debug_tuple("ScaledWeight").field(c).finish(),
            Tail::Geometric { c, q } => f.debug_struct("Geometric").field("c", c).field("q", q).finish(),
            Tail::Generator {
                ratio_sup,
                ratio_inf,
                arg_bound,
                ..
            } => f
                .debug_struct("Generator")
                .field("ratio_sup", ratio_sup)
                .field("ratio_inf", ratio_inf)
                .field("arg_bound", arg_bound)
                .finish_non_exhaustive(),
        }
    }
}

impl Tail {
    pub fn eval(&self, weight: WeightFamily, n: usize) -> Complex64 {
        match self {
            Tail::ScaledWeight(c) => c * weight.r(n),
            Tail::Geometric { c, q } => c * q.powi(n as i32),
            Tail::Generator { f, .. } => f(n),
        }
    }

    /// `(inf, sup)` of `|z_n|/r_n` over `n > first - 1`, measured in `weight`.
    pub fn ratio_bounds(&self, weight: WeightFamily, first: usize) -> Result<(f64, f64)> {
        match self {
            Tail::ScaledWeight(c) => Ok((c.norm(), c.norm())),
            Tail::Generator {
                ratio_sup, ratio_inf, ..
            } => Ok((*ratio_inf, *ratio_sup)),
            Tail::Geometric { c, q } => {
                if !(*q > 0.0) {
                    return Err(ZetaError::UnsupportedTail(format!(
                        "geometric ratio {q} must be positive"
                    )));
                }
                if c.norm() == 0.0 {
                    return Ok((0.0, 0.0));
                }
                geometric_ratio_bounds(c.norm().ln(), q.ln(), weight, first)
            }
        }
    }
}

/// Bounds of `h(n) = ln|c| + n ln q - ln r_n`, which is concave in `n` for every family.
fn geometric_ratio_bounds(ln_c: f64, ln_q: f64, weight: WeightFamily, first: usize) -> Result<(f64, f64)> {
    let h = |n: usize| ln_c + n as f64 * ln_q - weight.ln_r(n);
    let (slope, log_growth) = match weight {
        WeightFamily::Ones => (ln_q, 0.0),
        WeightFamily::InverseN => (ln_q, 1.0),
        WeightFamily::InverseNPow(eta) => (ln_q, eta),
        WeightFamily::ExpNegN => (ln_q + 1.0, 0.0),
    };
    let limit = if slope > 0.0 || (slope == 0.0 && log_growth > 0.0) {
        f64::INFINITY
    } else if slope < 0.0 {
        f64::NEG_INFINITY
    } else {
        h(first)
    };
    let inf = h(first).min(limit).exp();
    if limit == f64::INFINITY {
        return Ok((inf, f64::INFINITY));
    }
    let mut n = first;
    let mut best = h(n);
    loop {
        let next = h(n + 1);
        if next <= best {
            break;
        }
        best = next;
        n += 1;
    }
    Ok((inf, best.max(limit).exp()))
}

/// First `N` coordinates of a sequence in `l_r`, with an optional closed-form tail.
#[derive(Debug, Clone)]
pub struct TruncatedSeq {
    pub weight: WeightFamily,
    pub entries: Vec<Complex64>,
    pub tail: Option<Tail>,
}

impl TruncatedSeq {
    pub fn new(weight: WeightFamily, entries: Vec<Complex64>) -> Self {
        Self {
            weight,
            entries,
            tail: None,
        }
    }

    /// `z_n = f(n)` for `n = 1..=n_max`.
    pub fn from_fn(weight: WeightFamily, n_max: usize, f: impl Fn(usize) -> Complex64) -> Self {
        Self::new(weight, (1..=n_max).map(f).collect())
    }

    pub fn with_tail(mut self, tail: Tail) -> Self {
        self.tail = Some(tail);
        self
    }

    /// Truncation length `N`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coordinate `n` (1-based); beyond the window only if a tail is present.
    pub fn get(&self, n: usize) -> Option<Complex64> {
        if n == 0 {
            return None;
        }
        match self.entries.get(n - 1) {
            Some(z) => Some(*z),
            None => self.tail.as_ref().map(|t| t.eval(self.weight, n)),
        }
    }

    /// The same coordinates viewed in another weighted space.
    pub fn reweighted(&self, weight: WeightFamily) -> Self {
        let mut out = self.clone();
        out.weight = weight;
        // a scaled-weight tail is tied to the original weight
        if let Some(Tail::ScaledWeight(c)) = &self.tail {
            let old = self.weight;
            let c = *c;
            let n = self.len();
            let f: TailFn = Arc::new(move |m| c * old.r(m));
            let (inf, sup) = pointwise_ratio_scan(&f, weight, n + 1);
            out.tail = Some(Tail::Generator {
                f,
                ratio_sup: sup,
                ratio_inf: inf,
                arg_bound: c.arg().abs(),
            });
        }
        out
    }

    fn window_ratios(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, z)| weight_ratio(*z, self.weight, i + 1))
    }

    fn tail_bounds(&self) -> Result<Option<(f64, f64)>> {
        match &self.tail {
            None => Ok(None),
            Some(t) => t.ratio_bounds(self.weight, self.len() + 1).map(Some),
        }
    }

    /// Pointwise sum with another sequence on the common window (tails dropped).
    pub fn add_window(&self, other: &TruncatedSeq) -> Result<TruncatedSeq> {
        if self.len() != other.len() {
            return Err(ZetaError::Precondition(format!(
                "truncation lengths differ ({} vs {})",
                self.len(),
                other.len()
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeq::new(self.weight, entries))
    }
}

/// `|z| / r_n`, computed in log space only where `r_n` would underflow.
pub fn weight_ratio(z: Complex64, weight: WeightFamily, n: usize) -> f64 {
    let ln_r = weight.ln_r(n);
    if z.norm() == 0.0 {
        0.0
    } else if ln_r > -700.0 {
        z.norm() / ln_r.exp()
    } else {
        (z.norm().ln() - ln_r).exp()
    }
}

/// Empirical ratio bounds of a generator over a long stretch (used for reweighted tails).
fn pointwise_ratio_scan(f: &TailFn, weight: WeightFamily, first: usize) -> (f64, f64) {
    let mut inf = f64::INFINITY;
    let mut sup: f64 = 0.0;
    for n in first..first + 4096 {
        let r = weight_ratio(f(n), weight, n);
        inf = inf.min(r);
        sup = sup.max(r);
    }
    (inf, sup)
}

/// `sup_n |z_n| / r_n`.
pub fn weighted_norm(z: &TruncatedSeq) -> Result<f64> {
    let window = z.window_ratios().fold(0.0, f64::max);
    match z.tail_bounds()? {
        None => Ok(window),
        Some((_, sup)) if sup.is_finite() => Ok(window.max(sup)),
        Some(_) => Err(ZetaError::UnsupportedTail("tail ratio |z_n|/r_n is unbounded".into())),
    }
}

/// `inf_n |z_n| / r_n`; zero exactly on the closed coordinate cross.
pub fn dist_to_cross(z: &TruncatedSeq) -> Result<f64> {
    let window = z.window_ratios().fold(f64::INFINITY, f64::min);
    let d = match z.tail_bounds()? {
        None => window,
        Some((inf, _)) => window.min(inf),
    };
    Ok(if d.is_finite() { d } else { 0.0 })
}

/// One coordinate of a path segment, parametrised by `t ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CoordSeg {
    Const(Complex64),
    Line {
        from: Complex64,
        to: Complex64,
    },
    /// `center + radius e^{i((1-t) theta0 + t theta1)}`.
    Arc {
        center: Complex64,
        radius: f64,
        theta0: f64,
        theta1: f64,
    },
    /// `exp((1-t) from + t to)`.
    LogLine {
        from: Complex64,
        to: Complex64,
    },
}

impl CoordSeg {
    pub fn at(&self, t: f64) -> Complex64 {
        match *self {
            CoordSeg::Const(c) => c,
            CoordSeg::Line { from, to } => from + (to - from) * t,
            CoordSeg::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => center + Complex64::from_polar(radius, theta0 + (theta1 - theta0) * t),
            CoordSeg::LogLine { from, to } => (from + (to - from) * t).exp(),
        }
    }

    pub fn reversed(&self) -> CoordSeg {
        match *self {
            CoordSeg::Const(c) => CoordSeg::Const(c),
            CoordSeg::Line { from, to } => CoordSeg::Line { from: to, to: from },
            CoordSeg::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => CoordSeg::Arc {
                center,
                radius,
                theta0: theta1,
                theta1: theta0,
            },
            CoordSeg::LogLine { from, to } => CoordSeg::LogLine { from: to, to: from },
        }
    }
}

/// One leg of a path: a map `[0, 1] → C^N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub coords: Vec<CoordSeg>,
}

impl Segment {
    pub fn at(&self, t: f64) -> Vec<Complex64> {
        self.coords.iter().map(|c| c.at(t)).collect()
    }
}

/// A chain of segments in `C^N`; immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSpec {
    pub weight: WeightFamily,
    pub segments: Vec<Segment>,
    pub samples_per_segment: usize,
}

/// Refined samples of a path together with continuously unwound arguments.
#[derive(Debug, Clone)]
pub struct TrackedPath {
    pub points: Vec<Vec<Complex64>>,
    pub args: Vec<Vec<f64>>,
}

impl TrackedPath {
    pub fn final_args(&self) -> &[f64] {
        self.args.last().expect("tracked path has at least one sample")
    }
}

const MAX_REFINE_DOUBLINGS: u32 = 14;

impl PathSpec {
    pub fn new(weight: WeightFamily, segments: Vec<Segment>, samples_per_segment: usize) -> Result<Self> {
        if segments.is_empty() || samples_per_segment == 0 {
            return Err(ZetaError::Precondition(
                "a path needs a segment and at least one sample".into(),
            ));
        }
        let dim = segments[0].coords.len();
        for (i, pair) in segments.windows(2).enumerate() {
            if pair[1].coords.len() != dim {
                return Err(ZetaError::Precondition(format!(
                    "segment {} has the wrong dimension",
                    i + 1
                )));
            }
            let gap = pair[0]
                .at(1.0)
                .iter()
                .zip(pair[1].at(0.0))
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if gap > 1e-12 * (1.0 + pair[0].at(1.0).iter().map(|c| c.norm()).fold(0.0, f64::max)) {
                return Err(ZetaError::Precondition(format!(
                    "segments {i} and {} do not chain (gap {gap:e})",
                    i + 1
                )));
            }
        }
        Ok(Self {
            weight,
            segments,
            samples_per_segment,
        })
    }

    pub fn dim(&self) -> usize {
        self.segments[0].coords.len()
    }

    pub fn start(&self) -> Vec<Complex64> {
        self.segments[0].at(0.0)
    }

    pub fn end(&self) -> Vec<Complex64> {
        self.segments.last().expect("nonempty").at(1.0)
    }

    /// Uniform samples (no refinement); shared segment endpoints appear once.
    pub fn samples(&self) -> Vec<Vec<Complex64>> {
        let m = self.samples_per_segment;
        let mut out = vec![self.start()];
        for seg in &self.segments {
            for i in 1..=m {
                out.push(seg.at(i as f64 / m as f64));
            }
        }
        out
    }

    pub fn reverse(&self) -> PathSpec {
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|s| Segment {
                coords: s.coords.iter().map(CoordSeg::reversed).collect(),
            })
            .collect();
        PathSpec {
            weight: self.weight,
            segments,
            samples_per_segment: self.samples_per_segment,
        }
    }

    pub fn concat(&self, other: &PathSpec) -> Result<PathSpec> {
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        PathSpec::new(
            self.weight,
            segments,
            self.samples_per_segment.max(other.samples_per_segment),
        )
    }

    /// Sample the path, unwinding every coordinate's argument continuously.
    ///
    /// `initial` gives the arguments at `t = 0`; by default `Arg ∈ [0, 2 pi)`.
    /// A segment is resampled with doubled density while some coordinate's argument
    /// jumps by more than `pi/2` between neighbouring samples.
    #[allow(clippy::mut_range_bound)]
    pub fn track(&self, initial: Option<&[f64]>) -> Result<TrackedPath> {
        let start = self.start();
        let mut args: Vec<f64> = match initial {
            Some(a) => {
                if a.len() != start.len() {
                    return Err(ZetaError::Precondition(
                        "initial argument vector has the wrong length".into(),
                    ));
                }
                for (i, z) in start.iter().enumerate() {
                    if z.norm() == 0.0 {
                        return Err(ZetaError::BranchUndefined {
                            index: i + 1,
                            sample: 0,
                        });
                    }
                }
                a.to_vec()
            }
            None => start
                .iter()
                .enumerate()
                .map(|(i, z)| {
                    if z.norm() == 0.0 {
                        Err(ZetaError::BranchUndefined {
                            index: i + 1,
                            sample: 0,
                        })
                    } else {
                        Ok(arg_0_2pi(*z))
                    }
                })
                .collect::<Result<_>>()?,
        };
        let mut out = TrackedPath {
            points: vec![start],
            args: vec![args.clone()],
        };
        for (si, seg) in self.segments.iter().enumerate() {
            let mut m = self.samples_per_segment;
            let mut doublings = 0;
            'refine: loop {
                let mut pts = Vec::with_capacity(m);
                let mut trail = Vec::with_capacity(m);
                let mut cur = args.clone();
                for i in 1..=m {
                    let p = seg.at(i as f64 / m as f64);
                    let mut next = Vec::with_capacity(p.len());
                    for (n, (z, prev)) in p.iter().zip(&cur).enumerate() {
                        if z.norm() == 0.0 {
                            return Err(ZetaError::BranchUndefined {
                                index: n + 1,
                                sample: out.points.len() + i - 1,
                            });
                        }
                        let a = unwrap_near(*prev, z.arg());
                        if (a - prev).abs() > FRAC_PI_2 {
                            if doublings >= MAX_REFINE_DOUBLINGS {
                                return Err(ZetaError::StepRefinement { segment: si });
                            }
                            // restarts the segment with the doubled count
                            m *= 2;
                            doublings += 1;
                            continue 'refine;
                        }
                        next.push(a);
                    }
                    pts.push(p);
                    trail.push(next.clone());
                    cur = next;
                }
                out.points.extend(pts);
                out.args.extend(trail);
                args = cur;
                break;
            }
        }
        Ok(out)
    }
}

fn check_same_shape(w: &TruncatedSeq, z: &TruncatedSeq) -> Result<()> {
    if w.weight != z.weight || w.len() != z.len() || w.is_empty() {
        return Err(ZetaError::Precondition(
            "endpoints must share weight and a nonzero truncation length".into(),
        ));
    }
    Ok(())
}

/// Three-leg path from `w` to `z` avoiding the coordinate cross.
///
/// Leg 0 turns each `w_n` to `|w_n|` along its circle, leg 1 moves radially to
/// `|z_n|`, leg 2 turns counterclockwise to `z_n`; arguments start in `[0, 2 pi)`.
/// For `w = z` the path is constant.
pub fn connect_path(w: &TruncatedSeq, z: &TruncatedSeq, samples: usize) -> Result<PathSpec> {
    check_same_shape(w, z)?;
    for (name, v) in [("w", w), ("z", z)] {
        if dist_to_cross(v)? <= 0.0 {
            return Err(ZetaError::Domain(format!(
                "endpoint {name} lies on the closed coordinate cross"
            )));
        }
    }
    if w.entries == z.entries {
        let seg = Segment {
            coords: z.entries.iter().map(|&c| CoordSeg::Const(c)).collect(),
        };
        return PathSpec::new(z.weight, vec![seg], samples);
    }
    let zero = Complex64::new(0.0, 0.0);
    let arc = |c: &Complex64, forward: bool| {
        let theta = arg_0_2pi(*c);
        let (theta0, theta1) = if forward { (0.0, theta) } else { (theta, 0.0) };
        CoordSeg::Arc {
            center: zero,
            radius: c.norm(),
            theta0,
            theta1,
        }
    };
    let g0 = Segment {
        coords: w.entries.iter().map(|c| arc(c, false)).collect(),
    };
    let g1 = Segment {
        coords: w
            .entries
            .iter()
            .zip(&z.entries)
            .map(|(a, b)| CoordSeg::Line {
                from: Complex64::new(a.norm(), 0.0),
                to: Complex64::new(b.norm(), 0.0),
            })
            .collect(),
    };
    let g2 = Segment {
        coords: z.entries.iter().map(|c| arc(c, true)).collect(),
    };
    PathSpec::new(z.weight, vec![g0, g1, g2], samples)
}

/// `max |Arg γ_n(t)|` over samples and coordinates, with continuous unwinding.
pub fn max_abs_arg(path: &PathSpec) -> Result<f64> {
    let tracked = path.track(None)?;
    Ok(tracked
        .args
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0, |m, a| m.max(a.abs())))
}

/// Indices `n <= N` with `|z0_n| / rho_n <= bound`: the hyperplanes `{z_n + z0_n = 0}`
/// meeting the `rho`-ball of radius `bound` around the origin.
pub fn hyperplanes_meeting_ball(z0: &TruncatedSeq, perturb_weight: WeightFamily, bound: f64) -> Result<Vec<usize>> {
    perturb_weight.validate()?;
    if dist_to_cross(z0)? <= 0.0 {
        return Err(ZetaError::Precondition(
            "z0 must stay off the closed coordinate cross".into(),
        ));
    }
    let n = z0.len();
    if n < 2 {
        return Err(ZetaError::Precondition(
            "the weight-ratio test needs a window of length >= 2".into(),
        ));
    }
    let ln_ratio = |m: usize| perturb_weight.ln_r(m) - z0.weight.ln_r(m);
    let decreasing = (1..n).all(|m| ln_ratio(m + 1) <= ln_ratio(m) + 1e-15);
    if !decreasing || ln_ratio(n) >= ln_ratio(1) {
        return Err(ZetaError::Precondition(
            "perturbation weight must decay strictly faster than the ambient weight".into(),
        ));
    }
    if !(bound > 0.0) {
        return Ok(Vec::new());
    }
    let ln_bound = bound.ln();
    Ok(z0
        .entries
        .iter()
        .enumerate()
        .filter(|(i, z)| z.norm().ln() - perturb_weight.ln_r(i + 1) <= ln_bound + 1e-12)
        .map(|(i, _)| i + 1)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn inv(n_max: usize, scale: Complex64) -> TruncatedSeq {
        TruncatedSeq::from_fn(WeightFamily::InverseN, n_max, |n| scale / n as f64)
    }

    #[test]
    fn norm_and_distance_examples() {
        assert!((weighted_norm(&inv(100, c(1.0, 0.0))).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(
            weighted_norm(&TruncatedSeq::new(WeightFamily::Ones, vec![c(0.0, 0.0); 5])).unwrap(),
            0.0
        );
        let v = TruncatedSeq::new(WeightFamily::Ones, vec![c(3.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)]);
        assert_eq!(weighted_norm(&v).unwrap(), 3.0);
        assert_eq!(dist_to_cross(&v).unwrap(), 0.0);
        let alt = TruncatedSeq::from_fn(WeightFamily::InverseN, 10, |n| {
            c((2.0 + if n % 2 == 0 { 1.0 } else { -1.0 }) / n as f64, 0.0)
        });
        assert!((dist_to_cross(&alt).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn tails_enter_norm_and_distance() {
        let s = inv(10, c(1.0, 0.0)).with_tail(Tail::ScaledWeight(c(0.0, 2.0)));
        assert!((weighted_norm(&s).unwrap() - 2.0).abs() < 1e-14);
        assert!((dist_to_cross(&s).unwrap() - 1.0).abs() < 1e-14);
        // 8 n 2^{-n} over n >= 4 peaks at n = 4 with value 2, then decays
        let g = inv(3, c(1.0, 0.0)).with_tail(Tail::Geometric { c: c(8.0, 0.0), q: 0.5 });
        assert!((weighted_norm(&g).unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(dist_to_cross(&g).unwrap(), 0.0);
        let grow = inv(3, c(1.0, 0.0)).with_tail(Tail::Geometric { c: c(1.0, 0.0), q: 1.5 });
        assert!(matches!(weighted_norm(&grow), Err(ZetaError::UnsupportedTail(_))));
        assert_eq!(g.get(5), Some(c(0.25, 0.0)));
    }

    #[test]
    fn connect_path_examples() {
        let w = inv(20, c(1.0, 0.0));
        let z = inv(20, c(0.0, 1.0));
        let p = connect_path(&w, &z, 64).unwrap();
        let min_d = p
            .samples()
            .into_iter()
            .map(|pt| dist_to_cross(&TruncatedSeq::new(WeightFamily::InverseN, pt)).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!(min_d >= 1.0 - 1e-12);

        let zneg = inv(20, c(-1.0, 0.0));
        let q = connect_path(&w, &zneg, 64).unwrap();
        for a in q.track(None).unwrap().final_args() {
            assert!((a - PI).abs() < 1e-12);
        }

        let same = connect_path(&z, &z, 8).unwrap();
        for pt in same.samples() {
            for (a, b) in pt.iter().zip(&z.entries) {
                assert!((a - b).norm() < 1e-12);
            }
        }
        let on_cross = TruncatedSeq::new(WeightFamily::InverseN, vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let other = inv(2, c(1.0, 0.0));
        assert!(matches!(connect_path(&on_cross, &other, 8), Err(ZetaError::Domain(_))));
    }

    #[test]
    fn max_abs_arg_examples() {
        let constant = PathSpec::new(
            WeightFamily::Ones,
            vec![Segment {
                coords: vec![CoordSeg::Const(c(2.0, 0.0)); 3],
            }],
            4,
        )
        .unwrap();
        assert_eq!(max_abs_arg(&constant).unwrap(), 0.0);

        // γ_n(t) = n^{-2-it} = exp(-(2 + it) ln n)
        let n_max = 50;
        let seg = Segment {
            coords: (1..=n_max)
                .map(|n| {
                    let l = (n as f64).ln();
                    CoordSeg::LogLine {
                        from: c(-2.0 * l, 0.0),
                        to: c(-2.0 * l, -l),
                    }
                })
                .collect(),
        };
        let p = PathSpec::new(WeightFamily::InverseNPow(2.0), vec![seg], 16).unwrap();
        assert!((max_abs_arg(&p).unwrap() - 50f64.ln()).abs() < 1e-12);

        let w = TruncatedSeq::from_fn(WeightFamily::InverseN, 8, |n| c(-1.0, -0.3 * n as f64) / n as f64);
        let z = TruncatedSeq::from_fn(WeightFamily::InverseN, 8, |n| c(0.2, -1.0) / n as f64);
        let path = connect_path(&w, &z, 32).unwrap();
        assert!(max_abs_arg(&path).unwrap() <= 3.0 * PI);
    }

    #[test]
    fn zero_coordinate_has_no_branch() {
        let p = PathSpec::new(
            WeightFamily::Ones,
            vec![Segment {
                coords: vec![CoordSeg::Line {
                    from: c(-1.0, 0.0),
                    to: c(1.0, 0.0),
                }],
            }],
            4,
        )
        .unwrap();
        assert!(matches!(
            max_abs_arg(&p),
            Err(ZetaError::BranchUndefined { index: 1, .. })
        ));
    }

    #[test]
    fn hyperplane_examples() {
        let z0 = inv(30, c(1.0, 0.0));
        assert_eq!(
            hyperplanes_meeting_ball(&z0, WeightFamily::ExpNegN, 10.0).unwrap(),
            vec![1, 2, 3]
        );
        assert!(hyperplanes_meeting_ball(&z0, WeightFamily::ExpNegN, 0.1)
            .unwrap()
            .is_empty());
        let z10 = inv(10, c(1.0, 0.0));
        assert_eq!(
            hyperplanes_meeting_ball(&z10, WeightFamily::InverseNPow(2.0), 5.0).unwrap(),
            vec![1, 2, 3, 4, 5]
        );
        assert!(matches!(
            hyperplanes_meeting_ball(&z10, WeightFamily::InverseN, 5.0),
            Err(ZetaError::Precondition(_))
        ));
    }
}
