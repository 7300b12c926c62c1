//! Rectangular sweeps of `ζ_k` over `s`, evaluated independently per point.

use crate::contour::{eval_zeta_k_with, ContourSpec};
use crate::error::{Result, ZetaError};
use crate::exec::Execution;
use crate::params::{BranchRecord, PeriodicParams};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// Closed range `[lo, hi]` sampled at `n` equispaced points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Axis {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let span = self.hi - self.lo;
        (0..self.n)
            .map(|i| self.lo + span * i as f64 / (self.n - 1) as f64)
            .collect()
    }
}

/// `Re s` axis times `Im s` axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub re: Axis,
    pub im: Axis,
}

impl GridSpec {
    /// Points in row-major order: `Re s` outer, `Im s` inner.
    pub fn points(&self) -> Vec<Complex64> {
        let ims = self.im.points();
        self.re
            .points()
            .into_iter()
            .flat_map(|x| ims.iter().map(move |&y| Complex64::new(x, y)))
            .collect()
    }
}

fn parse_axis(text: &str) -> Result<Axis> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(ZetaError::Precondition(format!("axis `{text}` must read lo:hi:n")));
    }
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| ZetaError::Precondition(format!("`{s}` is not a number")))
    };
    let lo = num(parts[0])?;
    let hi = num(parts[1])?;
    let n = parts[2]
        .trim()
        .parse::<usize>()
        .map_err(|_| ZetaError::Precondition(format!("`{}` is not a point count", parts[2])))?;
    if !(lo.is_finite() && hi.is_finite()) || n == 0 || (n > 1 && !(hi > lo)) {
        return Err(ZetaError::Precondition(format!(
            "axis `{text}` needs finite lo < hi and n >= 1"
        )));
    }
    Ok(Axis { lo, hi, n })
}

impl FromStr for GridSpec {
    type Err = ZetaError;

    /// `remin:remax:n,immin:immax:n`.
    fn from_str(text: &str) -> Result<Self> {
        let (re, im) = text
            .split_once(',')
            .ok_or_else(|| ZetaError::Precondition("grid must read remin:remax:n,immin:immax:n".into()))?;
        Ok(Self {
            re: parse_axis(re)?,
            im: parse_axis(im)?,
        })
    }
}

/// Outcome class of one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Pole,
    Error,
}

/// One evaluated point; complex numbers split into real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRecord {
    pub re_s: f64,
    pub im_s: f64,
    pub value_re: f64,
    pub value_im: f64,
    pub err: f64,
    pub method: String,
    pub status: Status,
    pub residue_re: Option<f64>,
    pub residue_im: Option<f64>,
    pub message: Option<String>,
}

/// Evaluate `ζ_k` at a point, folding poles and failures into the record.
pub fn eval_point(p: &PeriodicParams, s: Complex64, tol: f64, spec: &ContourSpec) -> GridRecord {
    let mut rec = GridRecord {
        re_s: s.re,
        im_s: s.im,
        value_re: f64::NAN,
        value_im: f64::NAN,
        err: f64::NAN,
        method: "none".into(),
        status: Status::Error,
        residue_re: None,
        residue_im: None,
        message: None,
    };
    match eval_zeta_k_with(p, s, tol, spec, &BranchRecord::principal()) {
        Ok(r) => {
            rec.method = r.method.to_string();
            rec.err = r.err;
            if let Some(res) = r.pole_residue {
                rec.status = Status::Pole;
                rec.value_re = f64::INFINITY;
                rec.value_im = 0.0;
                rec.residue_re = Some(res.re);
                rec.residue_im = Some(res.im);
            } else {
                rec.status = Status::Ok;
                rec.value_re = r.value.re;
                rec.value_im = r.value.im;
            }
        }
        Err(e) => rec.message = Some(e.to_string()),
    }
    rec
}

/// All grid points, in row-major order whatever the execution mode.
pub fn eval_grid(
    p: &PeriodicParams,
    grid: &GridSpec,
    tol: f64,
    spec: &ContourSpec,
    exec: Execution,
) -> Vec<GridRecord> {
    let pts = grid.points();
    exec.map(&pts, |&s| eval_point(p, s, tol, spec))
}
