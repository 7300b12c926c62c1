//! Command logic behind `lzeta`: configuration merging, evaluation and record output.
//!
//! Every command returns its records already rendered, so identical configurations
//! produce identical bytes.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lerch_zeta::analytic::{
    monodromy_a_formula, monodromy_a_numeric, monodromy_z_formula, monodromy_z_numeric, residue_formula,
    residue_numeric_with,
};
use lerch_zeta::contour::ContourSpec;
use lerch_zeta::grid::{eval_grid, eval_point, GridRecord, GridSpec};
use lerch_zeta::series::abscissa_estimate;
use lerch_zeta::verify::{run_suite, Suite};
use lerch_zeta::{Complex64, Execution, Param, PeriodicParams};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug, Parser)]
#[command(
    name = "lzeta",
    version,
    about = "Periodic Lerch zeta evaluation, sweeps and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: RunConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Evaluate ζ_k at one point `--s`.
    Eval,
    /// Evaluate ζ_k over `--s-grid`.
    Grid,
    /// Residue at s = 1: closed form against a circle integral.
    Residue,
    /// Monodromy around z_j = -(pk + j) (`--j`, `--block`) or around a_j = l/k (`--l`).
    Monodromy,
    /// Abscissa of convergence of Σ e^{2πin a_n} (n + z_n)^{-s} on `--trunc-N` terms.
    Abscissa,
    /// Run a seeded identity suite; exits nonzero on failure.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Command parameters; every field is optional so that a JSON file and flags can be merged.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct RunConfig {
    /// Period k (defaults to the number of `--a` entries).
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Comma-separated a_j; `p/q` marks an exact rational, otherwise `x`, `x+yi`, `yi`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Comma-separated z_j (default 0).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// `remin:remax:n,immin:immax:n`.
    #[arg(long = "s-grid", global = true, allow_hyphen_values = true)]
    pub s_grid: Option<String>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Hankel circle radius.
    #[arg(long, global = true)]
    pub rho: Option<f64>,
    /// Hankel ray truncation.
    #[arg(long = "ray-len", global = true)]
    pub ray_len: Option<f64>,
    /// Circle quadrature nodes.
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    /// Number of terms in the abscissa window.
    #[arg(long = "trunc-N", global = true)]
    #[serde(rename = "trunc-N")]
    pub trunc_n: Option<usize>,
    /// Samples per loop segment of the z-monodromy.
    #[arg(long = "order-M", global = true)]
    #[serde(rename = "order-M")]
    pub order_m: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Suite name for `verify`.
    #[arg(long, global = true)]
    pub suite: Option<String>,
    /// Coordinate index j of the monodromy.
    #[arg(long, global = true)]
    pub j: Option<usize>,
    /// Block p of the excluded point -(pk + j).
    #[arg(long, global = true)]
    pub block: Option<usize>,
    /// Lattice numerator l of the a-monodromy.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub l: Option<i64>,
    /// Circle radius of the residue integral.
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// Evaluate grid points one after another.
    #[arg(long, global = true)]
    pub sequential: Option<bool>,
    /// JSON file with any of these fields; flags win.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Write a run manifest to this path.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub manifest: Option<PathBuf>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($f:ident),*) => {
        $(if $top.$f.is_some() { $base.$f = $top.$f.clone(); })*
    };
}

impl RunConfig {
    /// Fields set in `top` replace those in `self`.
    pub fn overlay(mut self, top: &RunConfig) -> RunConfig {
        overlay!(self, top; k, a, z, s, s_grid, tol, rho, ray_len, nodes, trunc_n, order_m, format, out, seed,
            suite, j, block, l, radius, sequential, config, manifest);
        self
    }

    /// Flags over the JSON file named by `--config`, if any.
    pub fn resolve(flags: &RunConfig) -> Result<RunConfig> {
        match &flags.config {
            None => Ok(flags.clone()),
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let file: RunConfig =
                    serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
                Ok(file.overlay(flags))
            }
        }
    }

    pub fn tol(&self) -> Result<f64> {
        let tol = self.tol.unwrap_or(1e-10);
        if !(tol > 0.0 && tol.is_finite()) {
            bail!("invalid `tol`: {tol} must be positive");
        }
        Ok(tol)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn execution(&self) -> Execution {
        if self.sequential.unwrap_or(false) {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    pub fn params(&self) -> Result<PeriodicParams> {
        let a_text = self.a.as_deref().unwrap_or("0");
        let a_items = split_list(a_text);
        let k = self.k.unwrap_or(a_items.len());
        if k == 0 {
            bail!("invalid `k`: must be at least 1");
        }
        let a = broadcast(a_items, k, "a")?
            .iter()
            .map(|t| parse_param(t).with_context(|| format!("invalid `a` entry `{t}`")))
            .collect::<Result<Vec<_>>>()?;
        let z = broadcast(split_list(self.z.as_deref().unwrap_or("0")), k, "z")?
            .iter()
            .map(|t| parse_complex(t).with_context(|| format!("invalid `z` entry `{t}`")))
            .collect::<Result<Vec<_>>>()?;
        PeriodicParams::new(a, z).map_err(|e| anyhow!("invalid `z`: {e}"))
    }

    pub fn point(&self) -> Result<Complex64> {
        let s = self.s.as_deref().ok_or_else(|| anyhow!("missing `s`"))?;
        parse_complex(s).with_context(|| format!("invalid `s` `{s}`"))
    }

    pub fn contour(&self, k: usize) -> Result<ContourSpec> {
        let mut spec = ContourSpec {
            rho: self.rho,
            ray_len: self.ray_len,
            ..ContourSpec::default()
        };
        if let Some(n) = self.nodes {
            spec.circle_nodes = n;
        }
        spec.validate(k).map_err(|e| anyhow!("invalid contour override: {e}"))?;
        Ok(spec)
    }
}

fn split_list(text: &str) -> Vec<String> {
    text.split(',').map(|t| t.trim().to_string()).collect()
}

fn broadcast(items: Vec<String>, k: usize, field: &str) -> Result<Vec<String>> {
    match items.len() {
        n if n == k => Ok(items),
        1 => Ok(vec![items[0].clone(); k]),
        n => bail!("invalid `{field}`: {n} entries for k = {k}"),
    }
}

/// `x`, `x+yi`, `yi`, with `j` accepted for `i`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t = text.trim().replace(' ', "").replace('j', "i");
    t.parse::<Complex64>()
        .map_err(|_| anyhow!("`{text}` is not a complex number"))
        .and_then(|c| {
            if c.re.is_finite() && c.im.is_finite() {
                Ok(c)
            } else {
                Err(anyhow!("`{text}` is not finite"))
            }
        })
}

/// `p/q` gives an exact rational; anything else a complex value.
pub fn parse_param(text: &str) -> Result<Param> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| anyhow!("numerator of `{t}` is not an integer"))?;
        let q: u64 = q
            .trim()
            .parse()
            .map_err(|_| anyhow!("denominator of `{t}` is not a positive integer"))?;
        if q == 0 {
            bail!("denominator of `{t}` is zero");
        }
        return Ok(Param::rational(p, q));
    }
    let c = parse_complex(t)?;
    Ok(if c.im == 0.0 {
        Param::real(c.re)
    } else {
        Param::complex(c)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidueRecord {
    pub formula_re: f64,
    pub formula_im: f64,
    pub value_re: f64,
    pub value_im: f64,
    pub err: f64,
    pub method: String,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonodromyRecord {
    /// `z` for a loop of z_j, `a` for a loop of a_j.
    pub kind: String,
    pub j: usize,
    /// Block p for `z`, lattice numerator l for `a`.
    pub index: i64,
    pub re_s: f64,
    pub im_s: f64,
    pub formula_re: f64,
    pub formula_im: f64,
    pub value_re: f64,
    pub value_im: f64,
    pub err: f64,
    pub method: String,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbscissaRecord {
    pub n_max: usize,
    pub sigma: f64,
    /// Change of the estimate from half the window to the full window.
    pub err: f64,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub seed: u64,
    pub name: String,
    pub defect: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Echo of a run: configuration, library version, per-method counts and timing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Command,
    pub config: RunConfig,
    pub version: String,
    pub records: usize,
    pub methods: BTreeMap<String, usize>,
    pub max_err: f64,
    pub passed: bool,
    pub wall_time_s: f64,
}

/// Rendered records plus the manifest describing them.
#[derive(Debug, Clone)]
pub struct Run {
    pub output: String,
    pub passed: bool,
    pub manifest: RunManifest,
}

/// JSON objects one per line, or CSV with a header taken from the record fields.
pub fn render<T: Serialize>(records: &[T], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut out = String::new();
            for r in records {
                out.push_str(&serde_json::to_string(r)?);
                out.push('\n');
            }
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in records {
                w.serialize(r)?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)?)
        }
    }
}

struct Tally {
    methods: BTreeMap<String, usize>,
    max_err: f64,
}

impl Tally {
    fn of<'a>(items: impl Iterator<Item = (&'a str, f64)>) -> Self {
        let mut methods = BTreeMap::new();
        let mut max_err = 0.0f64;
        for (m, e) in items {
            *methods.entry(m.to_string()).or_insert(0) += 1;
            if e.is_finite() {
                max_err = max_err.max(e);
            }
        }
        Self { methods, max_err }
    }
}

fn finish<T: Serialize>(
    command: Command,
    cfg: &RunConfig,
    records: &[T],
    tally: Tally,
    passed: bool,
    start: Instant,
) -> Result<Run> {
    let output = render(records, cfg.format())?;
    Ok(Run {
        output,
        passed,
        manifest: RunManifest {
            command,
            config: cfg.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            records: records.len(),
            methods: tally.methods,
            max_err: tally.max_err,
            passed,
            wall_time_s: start.elapsed().as_secs_f64(),
        },
    })
}

fn grid_tally(records: &[GridRecord]) -> Tally {
    Tally::of(records.iter().map(|r| (r.method.as_str(), r.err)))
}

pub fn cmd_eval(cfg: &RunConfig) -> Result<Run> {
    let start = Instant::now();
    let p = cfg.params()?;
    let rec = eval_point(&p, cfg.point()?, cfg.tol()?, &cfg.contour(p.k)?);
    let records = [rec];
    finish(Command::Eval, cfg, &records, grid_tally(&records), true, start)
}

pub fn cmd_grid(cfg: &RunConfig) -> Result<Run> {
    let start = Instant::now();
    let p = cfg.params()?;
    let text = cfg.s_grid.as_deref().ok_or_else(|| anyhow!("missing `s-grid`"))?;
    let grid: GridSpec = text.parse().map_err(|e| anyhow!("invalid `s-grid`: {e}"))?;
    let records = eval_grid(&p, &grid, cfg.tol()?, &cfg.contour(p.k)?, cfg.execution());
    finish(Command::Grid, cfg, &records, grid_tally(&records), true, start)
}

pub fn cmd_residue(cfg: &RunConfig) -> Result<Run> {
    let start = Instant::now();
    let p = cfg.params()?;
    let radius = cfg.radius.unwrap_or(0.25);
    let formula = residue_formula(&p);
    let r = residue_numeric_with(&p, radius, cfg.tol()?, cfg.execution()).map_err(|e| anyhow!("{e}"))?;
    let rec = ResidueRecord {
        formula_re: formula.re,
        formula_im: formula.im,
        value_re: r.value.re,
        value_im: r.value.im,
        err: r.err,
        method: r.method.to_string(),
        defect: (r.value - formula).norm(),
    };
    let tally = Tally::of(std::iter::once((rec.method.as_str(), rec.err)));
    finish(Command::Residue, cfg, std::slice::from_ref(&rec), tally, true, start)
}

pub fn cmd_monodromy(cfg: &RunConfig) -> Result<Run> {
    let start = Instant::now();
    let p = cfg.params()?;
    let s = cfg.point()?;
    let tol = cfg.tol()?;
    let j = cfg.j.unwrap_or(1);
    let lib = |e: lerch_zeta::ZetaError| anyhow!("{e}");
    let (kind, index, formula, r) = match cfg.l {
        Some(l) => {
            let f = monodromy_a_formula(&p, s, j, l).map_err(lib)?;
            let r = monodromy_a_numeric(&p, s, j, l, tol).map_err(lib)?;
            ("a", l, f, (r.value, r.err, r.method.to_string()))
        }
        None => {
            let block = cfg.block.unwrap_or(0);
            let f = monodromy_z_formula(&p, s, j, block).map_err(lib)?;
            let samples = cfg.order_m.unwrap_or(64);
            let n = monodromy_z_numeric(&p, s, j, block, samples, tol).map_err(lib)?;
            // loop endpoints are evaluated on the contour route
            ("z", block as i64, f, (n.value, n.err, "contour-loop".to_string()))
        }
    };
    let rec = MonodromyRecord {
        kind: kind.into(),
        j,
        index,
        re_s: s.re,
        im_s: s.im,
        formula_re: formula.re,
        formula_im: formula.im,
        value_re: r.0.re,
        value_im: r.0.im,
        err: r.1,
        method: r.2,
        defect: (r.0 - formula).norm(),
    };
    let tally = Tally::of(std::iter::once((rec.method.as_str(), rec.err)));
    finish(Command::Monodromy, cfg, std::slice::from_ref(&rec), tally, true, start)
}

pub fn cmd_abscissa(cfg: &RunConfig) -> Result<Run> {
    let start = Instant::now();
    let p = cfg.params()?;
    let n_max = cfg.trunc_n.unwrap_or(100_000);
    let estimate = |n: usize| {
        abscissa_estimate(|n| p.coeff(n), |n| p.base(n).re.ln(), n).map_err(|e| anyhow!("invalid `trunc-N`: {e}"))
    };
    if p.z.iter().any(|z| z.im != 0.0) {
        bail!("invalid `z`: the abscissa command needs real z_j");
    }
    let full = estimate(n_max)?;
    let half = estimate(n_max / 2)?;
    let rec = AbscissaRecord {
        n_max,
        sigma: full.sigma,
        err: (full.sigma - half.sigma).abs(),
        method: match full.branch {
            lerch_zeta::series::AbscissaBranch::DivergentSum => "partial-sums",
            lerch_zeta::series::AbscissaBranch::ConvergentTail => "tails",
        }
        .into(),
    };
    let tally = Tally::of(std::iter::once((rec.method.as_str(), rec.err)));
    finish(Command::Abscissa, cfg, std::slice::from_ref(&rec), tally, true, start)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Run> {
    let start = Instant::now();
    let name = cfg.suite.as_deref().ok_or_else(|| anyhow!("missing `suite`"))?;
    let suite: Suite = name.parse().map_err(|e| anyhow!("invalid `suite`: {e}"))?;
    let seed = cfg.seed.unwrap_or(0);
    let tol = cfg.tol.unwrap_or(1e-6);
    if tol.is_nan() || tol <= 0.0 {
        bail!("invalid `tol`: {tol} must be positive");
    }
    let report = run_suite(suite, seed, tol).map_err(|e| anyhow!("{e}"))?;
    let records: Vec<CheckRecord> = report
        .checks
        .iter()
        .map(|c| CheckRecord {
            suite: suite.to_string(),
            seed,
            name: c.name.clone(),
            defect: c.defect,
            threshold: c.threshold,
            pass: c.pass,
        })
        .collect();
    let tally = Tally {
        methods: BTreeMap::from([("verify".to_string(), records.len())]),
        max_err: report.max_defect,
    };
    finish(Command::Verify, cfg, &records, tally, report.passed, start)
}

pub fn execute(command: Command, cfg: &RunConfig) -> Result<Run> {
    match command {
        Command::Eval => cmd_eval(cfg),
        Command::Grid => cmd_grid(cfg),
        Command::Residue => cmd_residue(cfg),
        Command::Monodromy => cmd_monodromy(cfg),
        Command::Abscissa => cmd_abscissa(cfg),
        Command::Verify => cmd_verify(cfg),
    }
}

/// Write the records to `--out` (or return them for stdout) and the manifest to `--manifest`.
pub fn emit(run: &Run, cfg: &RunConfig) -> Result<Option<String>> {
    if let Some(path) = &cfg.manifest {
        write_file(path, &serde_json::to_string_pretty(&run.manifest)?)?;
    }
    match &cfg.out {
        Some(path) => {
            write_file(path, &run.output)?;
            Ok(None)
        }
        None => Ok(Some(run.output.clone())),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
