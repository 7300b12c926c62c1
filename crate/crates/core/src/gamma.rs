//! Euler gamma function for complex arguments (Lanczos, g = 607/128, with reflection).

use crate::error::{Result, ZetaError};
use num_complex::Complex64;
use std::f64::consts::PI;

const G: f64 = 607.0 / 128.0;

const COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

fn ln_gamma_right(s: Complex64) -> Complex64 {
    // valid for Re s >= 1/2
    let z = s - 1.0;
    let mut acc = Complex64::new(COEFFS[0], 0.0);
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// `Γ(s)`; an error at the poles `s = 0, -1, -2, ...`.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        return Err(ZetaError::GammaPole(s.re));
    }
    if s.re < 0.5 {
        // Γ(s) Γ(1-s) = π / sin(π s)
        let sin = (PI * reduce_half_period(s)).sin();
        let refl = ln_gamma_right(1.0 - s).exp();
        return Ok(PI / (sin * refl));
    }
    Ok(ln_gamma_right(s).exp())
}

/// `1/Γ(s)`, entire; zero at the nonpositive integers.
pub fn recip_gamma(s: Complex64) -> Complex64 {
    if s.re < 0.5 {
        let sin = (PI * reduce_half_period(s)).sin();
        return sin * ln_gamma_right(1.0 - s).exp() / PI;
    }
    (-ln_gamma_right(s)).exp()
}

/// `s - 2m` with `m` chosen so the real part lies in `[-1, 1)`; `sin(π s)` is unchanged.
fn reduce_half_period(s: Complex64) -> Complex64 {
    let m = (0.5 * (s.re + 1.0)).floor();
    Complex64::new(s.re - 2.0 * m, s.im)
}
