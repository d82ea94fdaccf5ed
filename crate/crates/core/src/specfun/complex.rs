//! Complex gamma, used only by the Mellin transforms.
//!
//! Everything here returns logarithms; callers exponentiate sums of them so
//! the branch of the imaginary part never matters.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{LANCZOS_COEF, LANCZOS_G};
use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn at_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor()
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut a = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + a.ln()
}

/// ln sin(pi z), stable for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
    let i = Complex64::i();
    let e = (2.0 * PI * i * z).exp();
    (i / 2.0).ln() - i * PI * z + (Complex64::new(1.0, 0.0) - e).ln()
}

/// ln Gamma(z) for complex z (any branch of the imaginary part).
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    if at_pole(z) {
        return Err(Error::Pole(z.re));
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z))
    } else {
        Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma_right(1.0 - z))
    }
}

/// Gamma(z) for complex z.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    let l = ln_gamma_complex(z)?;
    let v = l.exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(z.re))
    }
}

/// ln(1/Gamma(z)); `None` at the poles, where 1/Gamma vanishes.
pub fn ln_reciprocal_gamma_complex(z: Complex64) -> Option<Complex64> {
    ln_gamma_complex(z).ok().map(|l| -l)
}
