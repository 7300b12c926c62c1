//! Parameter tuples, evaluation results and branch bookkeeping.

use crate::error::{Result, ZetaError};
use crate::num::{cis_turns, near_multiple_of_inverse};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Tolerance for deciding `k a ∈ Z` when no exact rational was declared.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// A parameter value, optionally declared as an exact rational `p/q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Param {
    pub value: Complex64,
    pub exact: Option<(i64, u64)>,
}

impl Param {
    pub fn complex(value: Complex64) -> Self {
        Self { value, exact: None }
    }

    pub fn real(x: f64) -> Self {
        Self::complex(Complex64::new(x, 0.0))
    }

    /// Exact rational `p/q`, `q > 0`.
    pub fn rational(p: i64, q: u64) -> Self {
        assert!(q > 0, "rational parameter needs a positive denominator");
        Self {
            value: Complex64::new(p as f64 / q as f64, 0.0),
            exact: Some((p, q)),
        }
    }

    /// `e^{2 pi i n a}`; exact reduction mod 1 for declared rationals.
    pub fn phase(&self, n: i64) -> Complex64 {
        match self.exact {
            Some((p, q)) => {
                let q = q as i128;
                let r = ((n as i128 * p as i128) % q + q) % q;
                cis_turns(r as f64 / q as f64)
            }
            None => {
                let a = self.value;
                let x = n as f64 * a.re;
                cis_turns(x - x.round()) * (-2.0 * std::f64::consts::PI * n as f64 * a.im).exp()
            }
        }
    }

    /// Whether `a ∈ Z[1/k]`, i.e. `k a` is an integer.
    pub fn in_lattice(&self, k: usize) -> bool {
        match self.exact {
            Some((p, q)) => (p as i128 * k as i128) % q as i128 == 0,
            None => near_multiple_of_inverse(self.value, k, MEMBERSHIP_TOL),
        }
    }

    pub fn conj_neg(&self) -> Self {
        Self {
            value: -self.value.conj(),
            exact: self.exact.map(|(p, q)| (-p, q)),
        }
    }
}

impl From<f64> for Param {
    fn from(x: f64) -> Self {
        Param::real(x)
    }
}

impl From<Complex64> for Param {
    fn from(z: Complex64) -> Self {
        Param::complex(z)
    }
}

/// The triple `(k, a, z)` of the k-periodic cut.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicParams {
    pub k: usize,
    pub a: Vec<Param>,
    pub z: Vec<Complex64>,
}

impl PeriodicParams {
    pub fn new(a: Vec<Param>, z: Vec<Complex64>) -> Result<Self> {
        if a.is_empty() || a.len() != z.len() {
            return Err(ZetaError::Precondition(format!(
                "a and z must have the same positive length (got {} and {})",
                a.len(),
                z.len()
            )));
        }
        let p = Self { k: a.len(), a, z };
        p.check_z()?;
        Ok(p)
    }

    /// Convenience constructor from plain values (no exact rationals).
    pub fn from_values(a: &[Complex64], z: &[Complex64]) -> Result<Self> {
        Self::new(a.iter().copied().map(Param::complex).collect(), z.to_vec())
    }

    /// `z_j` must avoid `{-j, -j-k, -j-2k, ...}`.
    pub fn check_z(&self) -> Result<()> {
        for j in 1..=self.k {
            if let Some(p) = self.excluded_block(j) {
                return Err(ZetaError::Domain(format!(
                    "z_{j} = {} makes the denominator of term {} vanish",
                    self.z[j - 1],
                    p * self.k + j
                )));
            }
        }
        Ok(())
    }

    /// Block index `p` with `pk + j + z_j = 0`, if any.
    pub fn excluded_block(&self, j: usize) -> Option<usize> {
        let w = self.z[j - 1] + j as f64;
        if w.im.abs() > 1e-14 || w.re > 1e-14 {
            return None;
        }
        let p = (-w.re / self.k as f64).round();
        let hit = (w.re + p * self.k as f64).abs() < 1e-12 * (1.0 + w.re.abs());
        (hit && p >= 0.0).then_some(p as usize)
    }

    pub fn min_im_a(&self) -> f64 {
        self.a.iter().map(|a| a.value.im).fold(f64::INFINITY, f64::min)
    }

    /// Coefficient `e^{2 pi i n a_j}` of the term with index `n ≡ j (mod k)`.
    pub fn coeff(&self, n: usize) -> Complex64 {
        let j = (n - 1) % self.k;
        self.a[j].phase(n as i64)
    }

    /// Shift of term `n`: `n + z_j`.
    pub fn base(&self, n: usize) -> Complex64 {
        let j = (n - 1) % self.k;
        n as f64 + self.z[j]
    }
}

/// Which route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Contour,
    Taylor,
    Integral,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Series => "series",
            Method::Contour => "contour",
            Method::Taylor => "taylor",
            Method::Integral => "integral",
        };
        f.write_str(s)
    }
}

/// A value with an absolute error estimate and its provenance.
///
/// At a pole `value` is `∞ + 0i` and `pole_residue` carries the residue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: Complex64,
    pub err: f64,
    pub method: Method,
    pub terms_used: usize,
    pub pole_residue: Option<Complex64>,
}

impl EvalResult {
    pub fn new(value: Complex64, err: f64, method: Method, terms_used: usize) -> Self {
        Self {
            value,
            err,
            method,
            terms_used,
            pole_residue: None,
        }
    }

    pub fn pole(residue: Complex64, method: Method) -> Self {
        Self {
            value: Complex64::new(f64::INFINITY, 0.0),
            err: 0.0,
            method,
            terms_used: 0,
            pole_residue: Some(residue),
        }
    }

    pub fn is_pole(&self) -> bool {
        self.pole_residue.is_some()
    }
}

/// Continuous arguments attached to individual terms.
///
/// Keys are flattened term indices: `n` for coordinate `z_n` of an ER series,
/// `n = pk + j` for the term `(n + z_j)^{-s}` of a periodic cut. Absent keys use
/// the principal branch.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BranchRecord {
    pub args: BTreeMap<usize, f64>,
}

impl BranchRecord {
    pub fn principal() -> Self {
        Self::default()
    }

    pub fn set(&mut self, n: usize, arg: f64) {
        self.args.insert(n, arg);
    }

    /// Argument to use for `w` at index `n`: the recorded one, else `Arg w`.
    pub fn arg_for(&self, n: usize, w: Complex64) -> f64 {
        self.args.get(&n).copied().unwrap_or_else(|| w.arg())
    }

    /// Number of sheets the recorded argument sits away from the principal one.
    pub fn winding(&self, n: usize, w: Complex64) -> i64 {
        ((self.arg_for(n, w) - w.arg()) / std::f64::consts::TAU).round() as i64
    }

    /// Largest recorded `|arg|`; zero for the principal record.
    pub fn max_abs_arg(&self) -> f64 {
        self.args.values().fold(0.0, |m, a| m.max(a.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_phase_reduces_modulo_one() {
        let a = Param::rational(1, 4);
        assert!((a.phase(1) - Complex64::new(0.0, 1.0)).norm() < 1e-16);
        assert!((a.phase(1_000_000_001) - Complex64::new(0.0, 1.0)).norm() < 1e-16);
        assert!((a.phase(-1) - Complex64::new(0.0, -1.0)).norm() < 1e-16);
    }

    #[test]
    fn lattice_membership() {
        assert!(Param::rational(1, 2).in_lattice(2));
        assert!(!Param::rational(1, 3).in_lattice(2));
        assert!(Param::real(0.5).in_lattice(2));
        assert!(!Param::real(0.37).in_lattice(2));
        assert!(!Param::complex(Complex64::new(0.5, 0.1)).in_lattice(2));
    }

    #[test]
    fn excluded_points_are_detected() {
        let z = vec![Complex64::new(0.0, 0.0), Complex64::new(-4.0, 0.0)];
        let a = vec![Param::real(0.1), Param::real(0.2)];
        let err = PeriodicParams::new(a.clone(), z).unwrap_err();
        assert!(matches!(err, ZetaError::Domain(_)));
        // -3 is excluded for j = 1 (n = 3 ≡ 1 mod 2) but not for j = 2
        let ok = PeriodicParams::new(a.clone(), vec![Complex64::new(0.0, 0.0), Complex64::new(-3.0, 0.0)]);
        assert!(ok.is_ok());
        assert!(PeriodicParams::new(a, vec![Complex64::new(-3.0, 0.0), Complex64::new(0.0, 0.0)]).is_err());
    }
}
