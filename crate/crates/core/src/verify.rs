//! Seeded property suites over the identities the evaluators must satisfy.
//!
//! Each check records its measured defect and the threshold it is held to; a suite
//! passes when every check does.

use crate::analytic::{
    monodromy_a_formula, monodromy_a_numeric, monodromy_z_commutator, monodromy_z_formula, monodromy_z_numeric,
    residue_formula, residue_numeric,
};
use crate::contour::{choose_rho, eval_zeta_k, eval_zeta_k_contour, hankel_i, straight_ray_integral, ContourSpec};
use crate::error::{Result, ZetaError};
use crate::gamma::gamma;
use crate::num::{exp_two_pi_i_minus_one, I};
use crate::params::{BranchRecord, Param, PeriodicParams};
use crate::seqspace::{
    connect_path, dist_to_cross, hyperplanes_meeting_ball, max_abs_arg, weighted_norm, Tail, TruncatedSeq, WeightFamily,
};
use crate::series::{abscissa_estimate, eval_er_series, eval_zeta_k_series};
use crate::taylor::{
    dirichlet_eval, dirichlet_perturb_ok, domain_classify, taylor_coefficient, taylor_continue, taylor_majorants,
    Exponents,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 6] = [
    "contour-identities",
    "monodromy",
    "residues",
    "taylor",
    "seqspace",
    "dirichlet",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ContourIdentities,
    Monodromy,
    Residues,
    Taylor,
    Seqspace,
    Dirichlet,
}

impl FromStr for Suite {
    type Err = ZetaError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "contour-identities" => Suite::ContourIdentities,
            "monodromy" => Suite::Monodromy,
            "residues" => Suite::Residues,
            "taylor" => Suite::Taylor,
            "seqspace" => Suite::Seqspace,
            "dirichlet" => Suite::Dirichlet,
            other => {
                return Err(ZetaError::Precondition(format!(
                    "unknown suite `{other}` (expected one of {})",
                    SUITES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        f.write_str(SUITES[i])
    }
}

/// One checked identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub defect: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub tol: f64,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub max_defect: f64,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn defect(&mut self, name: String, defect: f64, threshold: f64) {
        // NaN defects fail
        let pass = defect <= threshold;
        self.0.push(Check {
            name,
            defect,
            threshold,
            pass,
        });
    }

    fn outcome(&mut self, name: String, r: Result<f64>, threshold: f64) {
        match r {
            Ok(d) => self.defect(name, d, threshold),
            Err(e) => self.defect(format!("{name} [{e}]"), f64::INFINITY, threshold),
        }
    }

    fn flag(&mut self, name: String, ok: bool) {
        self.defect(name, if ok { 0.0 } else { 1.0 }, 0.0);
    }
}

/// Run a suite with the given seed; defects are held to `tol` unless a check has
/// an intrinsic threshold.
pub fn run_suite(suite: Suite, seed: u64, tol: f64) -> Result<Report> {
    if !(tol > 0.0) {
        return Err(ZetaError::Precondition("tol must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Checks::default();
    match suite {
        Suite::ContourIdentities => contour_identities(&mut rng, tol, &mut checks),
        Suite::Monodromy => monodromy(&mut rng, tol, &mut checks),
        Suite::Residues => residues(&mut rng, tol, &mut checks),
        Suite::Taylor => taylor(&mut rng, tol, &mut checks),
        Suite::Seqspace => seqspace(&mut rng, tol, &mut checks),
        Suite::Dirichlet => dirichlet(tol, &mut checks),
    }
    let checks = checks.0;
    let passed = checks.iter().all(|c| c.pass);
    let max_defect = checks.iter().map(|c| c.defect).fold(0.0, f64::max);
    Ok(Report {
        suite,
        seed,
        tol,
        checks,
        passed,
        max_defect,
    })
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Generic parameters off the lattice: `Re a ∈ [0, 1)`, `Im a ∈ [0, 0.3]`.
fn generic_a(rng: &mut ChaCha8Rng) -> Param {
    Param::complex(c(rng.gen::<f64>(), 0.3 * rng.gen::<f64>()))
}

/// `z_j` with `Re z ∈ [0, 1]`, `|Im z| <= 1/2`.
fn right_z(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.gen::<f64>(), rng.gen::<f64>() - 0.5)
}

fn relative(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / y.norm().max(1.0)
}

fn contour_identities(rng: &mut ChaCha8Rng, tol: f64, out: &mut Checks) {
    let inner = 1e-2 * tol;
    for draw in 0..6 {
        let k = rng.gen_range(1..=3usize);
        let a: Vec<Param> = (0..k).map(|_| generic_a(rng)).collect();
        let z: Vec<Complex64> = (0..k).map(|_| right_z(rng)).collect();
        let p = match PeriodicParams::new(a.clone(), z.clone()) {
            Ok(p) => p,
            Err(e) => {
                out.outcome(format!("draw {draw}: parameters"), Err(e), tol);
                continue;
            }
        };
        let s = c(rng.gen_range(-2.0..3.0), rng.gen_range(-5.0..5.0));
        let j = rng.gen_range(1..=k);
        let rho = choose_rho(&p);
        out.outcome(
            format!("draw {draw}: rho independence k={k} j={j} s={s:.3}"),
            (|| {
                let i1 = hankel_i(j, k, &a[j - 1], z[j - 1], s, &ContourSpec::with_rho(rho), inner)?;
                let i2 = hankel_i(j, k, &a[j - 1], z[j - 1], s, &ContourSpec::with_rho(0.5 * rho), inner)?;
                Ok(relative(i1, i2))
            })(),
            tol,
        );
        let s_right = c(rng.gen_range(1.5..3.0), rng.gen_range(-3.0..3.0));
        out.outcome(
            format!("draw {draw}: Re s > 1 bridge s={s_right:.3}"),
            (|| {
                let h = hankel_i(j, k, &a[j - 1], z[j - 1], s_right, &ContourSpec::default(), inner)?;
                let r = straight_ray_integral(j, k, &a[j - 1], z[j - 1], s_right, inner)?;
                Ok(relative(h, exp_two_pi_i_minus_one(s_right) * r))
            })(),
            tol,
        );
        out.outcome(
            format!("draw {draw}: functional identity s={s:.3}"),
            (|| {
                let zeta = eval_zeta_k_contour(&p, s, inner, &ContourSpec::default(), &BranchRecord::principal())?;
                let mut sum = c(0.0, 0.0);
                for jj in 1..=k {
                    sum += a[jj - 1].phase(jj as i64)
                        * hankel_i(jj, k, &a[jj - 1], z[jj - 1], s, &ContourSpec::default(), inner)?;
                }
                let lhs = exp_two_pi_i_minus_one(s) * gamma(s)? * zeta.value;
                Ok(relative(lhs, sum))
            })(),
            tol,
        );
        let s_series = c(rng.gen_range(2.0..4.0), rng.gen_range(-10.0..10.0));
        out.outcome(
            format!("draw {draw}: series vs contour s={s_series:.3}"),
            (|| {
                let a = eval_zeta_k_series(&p, s_series, inner)?;
                let b = eval_zeta_k_contour(&p, s_series, inner, &ContourSpec::default(), &BranchRecord::principal())?;
                Ok((a.value - b.value).norm())
            })(),
            2.0 * tol,
        );
        for s_int in [1.0, 0.0, -1.0, -2.0] {
            let r = eval_zeta_k(&p, c(s_int, 0.0), inner);
            let finite = matches!(&r, Ok(v) if !v.is_pole() && v.value.norm().is_finite());
            out.flag(format!("draw {draw}: finite at s={s_int} (entire case)"), finite);
        }
        out.outcome(
            format!("draw {draw}: I(0) closed form"),
            (|| {
                let i0 = hankel_i(j, k, &a[j - 1], z[j - 1], c(0.0, 0.0), &ContourSpec::default(), inner)?;
                let expect = 2.0 * PI * I / (1.0 - a[j - 1].phase(k as i64));
                Ok(relative(i0, expect))
            })(),
            tol,
        );
        let l = rng.gen_range(-2..=2i64);
        out.outcome(
            format!("draw {draw}: I(1) at a = {l}/{k}"),
            (|| {
                let lat = Param::rational(l, k as u64);
                let i1 = hankel_i(j, k, &lat, z[j - 1], c(1.0, 0.0), &ContourSpec::default(), inner)?;
                Ok(relative(i1, 2.0 * PI * I / k as f64))
            })(),
            tol,
        );
    }
}

fn monodromy(rng: &mut ChaCha8Rng, tol: f64, out: &mut Checks) {
    let inner = 1e-2 * tol;
    for draw in 0..6 {
        let k = rng.gen_range(1..=2usize);
        let a: Vec<Param> = (0..k).map(|_| generic_a(rng)).collect();
        let z: Vec<Complex64> = (0..k)
            .map(|_| c(rng.gen_range(-0.9..0.9), rng.gen_range(-0.4..0.4)))
            .collect();
        let p = match PeriodicParams::new(a.clone(), z) {
            Ok(p) => p,
            Err(e) => {
                out.outcome(format!("draw {draw}: parameters"), Err(e), tol);
                continue;
            }
        };
        let j = rng.gen_range(1..=k);
        let pb = rng.gen_range(0..=1usize);
        let s = c(rng.gen_range(-1.5..2.5), rng.gen_range(-3.0..3.0));
        out.outcome(
            format!("draw {draw}: z-loop vs closed form k={k} j={j} p={pb} s={s:.3}"),
            (|| {
                let f = monodromy_z_formula(&p, s, j, pb)?;
                let n = monodromy_z_numeric(&p, s, j, pb, 64, inner)?;
                Ok(relative(n.value, f))
            })(),
            tol,
        );
        let second = if k == 2 { (3 - j, 0) } else { (1, 1 - pb) };
        out.outcome(
            format!("draw {draw}: commutator ({j},{pb}) ({},{})", second.0, second.1),
            monodromy_z_commutator(&p, s, (j, pb), second, 64, inner).map(|r| r.value.norm()),
            tol,
        );
        let s_int = c(rng.gen_range(-2..=3i64) as f64, 0.0);
        if s_int.re != 1.0 {
            out.outcome(
                format!("draw {draw}: z-loop at integer s={}", s_int.re),
                monodromy_z_numeric(&p, s_int, j, pb, 64, inner).map(|r| r.value.norm()),
                tol,
            );
        }
        let l = rng.gen_range(0..k as i64);
        let u = rng.gen_range(0.05..0.3);
        let v = rng.gen_range(0.0..0.02);
        let mut aa = a.clone();
        aa[j - 1] = Param::complex(c(l as f64 / k as f64 + v, -u));
        let pa = PeriodicParams::new(aa, p.z.clone());
        let s_a = c(rng.gen_range(0.5..3.0), rng.gen_range(-1.0..1.0));
        out.outcome(
            format!("draw {draw}: a-loop vs closed form l={l} u={u:.3} v={v:.3}"),
            pa.and_then(|pa| {
                let f = monodromy_a_formula(&pa, s_a, j, l)?;
                let n = monodromy_a_numeric(&pa, s_a, j, l, inner)?;
                Ok(relative(n.value, f))
            }),
            tol,
        );
    }
}

/// Parameters mixing declared lattice points with generic values.
pub fn mixed_params(rng: &mut impl Rng) -> (Vec<Param>, Vec<Complex64>, Vec<Complex64>) {
    let k = rng.gen_range(1..=3usize);
    let a = (0..k)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Param::rational(rng.gen_range(-3..=3i64), k as u64)
            } else {
                Param::complex(c(rng.gen::<f64>(), 0.2 * rng.gen::<f64>()))
            }
        })
        .collect();
    let draw_z = |rng: &mut dyn rand::RngCore| -> Vec<Complex64> {
        (0..k)
            .map(|_| c(rng.gen_range(-0.8..1.5), rng.gen_range(-0.5..0.5)))
            .collect()
    };
    let z1 = draw_z(rng);
    let z2 = draw_z(rng);
    (a, z1, z2)
}

fn residues(rng: &mut ChaCha8Rng, tol: f64, out: &mut Checks) {
    for draw in 0..5 {
        let (a, z1, z2) = mixed_params(rng);
        for (tag, z) in [("z", z1), ("z'", z2)] {
            out.outcome(
                format!("draw {draw} ({tag}): residue k={}", a.len()),
                PeriodicParams::new(a.clone(), z).and_then(|p| {
                    let r = residue_numeric(&p, 0.25, 0.1 * tol)?;
                    Ok((r.value - residue_formula(&p)).norm())
                }),
                tol,
            );
        }
    }
}

fn taylor(rng: &mut ChaCha8Rng, tol: f64, out: &mut Checks) {
    let n = 30;
    for draw in 0..4 {
        let z = TruncatedSeq::from_fn(WeightFamily::InverseN, n, |i| {
            c(1.0 + 0.3 * (i as f64 * 0.7).sin(), 0.1 * (i as f64).cos()) / i as f64
        });
        let b = TruncatedSeq::new(
            WeightFamily::Ones,
            (0..n)
                .map(|_| Complex64::from_polar(1.0, TAU * rng.gen::<f64>()))
                .collect(),
        );
        let d = match crate::taylor::cross_distance_h1(&z) {
            Ok(d) => d,
            Err(e) => {
                out.outcome(format!("draw {draw}: distance"), Err(e), tol);
                continue;
            }
        };
        let beta = 0.5 * d;
        let w = TruncatedSeq::new(
            WeightFamily::InverseN,
            (1..=n)
                .map(|i| {
                    Complex64::from_polar(
                        beta * rng.gen::<f64>() * (-(i as f64)).exp() / i as f64,
                        TAU * rng.gen::<f64>(),
                    )
                })
                .collect(),
        );
        let s = c(rng.gen_range(1.2..3.0), rng.gen_range(-2.0..2.0));
        out.outcome(
            format!("draw {draw}: Taylor vs series difference s={s:.3}"),
            (|| {
                let t = taylor_continue(&b, &z, &w, s, 200, 0.1 * tol)?;
                let zw = z.add_window(&w)?;
                let hi = eval_er_series(&b, &zw, s, 0.1 * tol)?;
                let lo = eval_er_series(&b, &z, s, 0.1 * tol)?;
                Ok((t.value - (hi.value - lo.value)).norm())
            })(),
            3.0 * tol,
        );
        let s_any = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        out.outcome(
            format!("draw {draw}: majorant soundness s={s_any:.3}"),
            (|| {
                let dom = domain_classify(&z, &w)?;
                let t = taylor_continue(&b, &z, &w, s_any, 200, 0.1 * tol)?;
                let m = t.terms_used;
                let bound = taylor_majorants(&b, &z, s_any, &dom, m, &BranchRecord::principal())?[m];
                let mut rest = c(0.0, 0.0);
                for order in m + 1..m + 200 {
                    rest += taylor_coefficient(&b, &z, s_any, order)?.eval(&w.entries);
                }
                Ok((rest.norm() - bound).max(0.0))
            })(),
            0.0,
        );
        out.outcome(
            format!("draw {draw}: first-order limit"),
            (|| {
                let eps = 1e-6;
                let small = TruncatedSeq::new(WeightFamily::InverseN, w.entries.iter().map(|x| x * eps).collect());
                let t = taylor_continue(&b, &z, &small, s, 200, 1e-18)?;
                let p1 = taylor_coefficient(&b, &z, s, 1)?.eval(&w.entries);
                // second-order remainder: O(eps |w|^2)
                Ok((t.value / eps - p1).norm() / (eps * p1.norm().max(1.0) * 1e3))
            })(),
            1.0,
        );
    }
}

fn random_seq(rng: &mut ChaCha8Rng, n: usize, weight: WeightFamily) -> TruncatedSeq {
    let entries = (1..=n)
        .map(|i| Complex64::from_polar(weight.r(i) * rng.gen_range(0.2..2.0), TAU * rng.gen::<f64>()))
        .collect();
    TruncatedSeq::new(weight, entries)
}

fn seqspace(rng: &mut ChaCha8Rng, tol: f64, out: &mut Checks) {
    let n = 30;
    for draw in 0..10 {
        let w = random_seq(rng, n, WeightFamily::InverseN);
        let z = random_seq(rng, n, WeightFamily::InverseN);
        let res = (|| -> Result<()> {
            let (dw, dz) = (dist_to_cross(&w)?, dist_to_cross(&z)?);
            out.flag(format!("draw {draw}: dist <= norm"), dz <= weighted_norm(&z)?);
            let path = connect_path(&w, &z, 64)?;
            let mut lowest = f64::INFINITY;
            for pt in path.samples() {
                lowest = lowest.min(dist_to_cross(&TruncatedSeq::new(w.weight, pt))?);
            }
            out.defect(
                format!("draw {draw}: path stays off the cross"),
                (dw.min(dz) - lowest).max(0.0),
                1e-9,
            );
            out.defect(
                format!("draw {draw}: bounded argument"),
                (max_abs_arg(&path)? - 3.0 * PI).max(0.0),
                0.0,
            );
            let cap = rng.gen_range(1.0..50.0);
            let small = hyperplanes_meeting_ball(&z, WeightFamily::ExpNegN, cap)?;
            let large = hyperplanes_meeting_ball(&z, WeightFamily::ExpNegN, 2.0 * cap)?;
            out.flag(
                format!("draw {draw}: hyperplane count monotone in C"),
                small.iter().all(|i| large.contains(i)),
            );
            let longer = TruncatedSeq::new(
                z.weight,
                z.entries
                    .iter()
                    .copied()
                    .chain((n + 1..=2 * n).map(|i| c(1.0 / i as f64, 0.0)))
                    .collect(),
            );
            out.flag(
                format!("draw {draw}: hyperplane list stable under longer window"),
                hyperplanes_meeting_ball(&longer, WeightFamily::ExpNegN, cap)? == small,
            );
            Ok(())
        })();
        if let Err(e) = res {
            out.outcome(format!("draw {draw}"), Err(e), tol);
        }
    }
}

fn dirichlet(tol: f64, out: &mut Checks) {
    let ln = |n: usize| (n as f64).ln();
    out.outcome(
        "abscissa of Σ n^{-s} is 1".into(),
        abscissa_estimate(|_| c(1.0, 0.0), ln, 100_000).map(|e| (e.sigma - 1.0).abs()),
        0.05,
    );
    out.outcome(
        "abscissa of the alternating series is 0".into(),
        abscissa_estimate(|n| c(if n % 2 == 1 { 1.0 } else { -1.0 }, 0.0), ln, 100_000).map(|e| e.sigma.abs()),
        0.05,
    );
    out.flag(
        "perturbation: μ = λ".into(),
        dirichlet_perturb_ok(ln, |_| 0.0, 1.0, 1.0, 300),
    );
    out.flag(
        "perturbation: μ = λ + e^{-2n}, η = 2".into(),
        dirichlet_perturb_ok(ln, |n| (-2.0 * n as f64).exp(), 1.0, 2.0, 300),
    );
    out.flag(
        "perturbation: μ = λ/2 fails".into(),
        !dirichlet_perturb_ok(ln, |n| -0.5 * ln(n), 1.0, 1.0, 300),
    );
    let ones = TruncatedSeq::new(WeightFamily::Ones, vec![c(1.0, 0.0); 10]).with_tail(Tail::ScaledWeight(c(1.0, 0.0)));
    out.outcome(
        "Σ e^{-n} = 1/(e-1)".into(),
        dirichlet_eval(&ones, &Exponents::Linear(1.0), c(1.0, 0.0), 0.1 * tol)
            .map(|r| (r.value - 1.0 / (std::f64::consts::E - 1.0)).norm()),
        tol,
    );
    let loose = tol.max(1e-6);
    out.outcome(
        "Σ n^{-2} = π²/6".into(),
        dirichlet_eval(&ones, &Exponents::LogN, c(2.0, 0.0), 0.5 * loose).map(|r| (r.value - PI * PI / 6.0).norm()),
        loose,
    );
}
