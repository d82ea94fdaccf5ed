//! Real-argument gamma family.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};

pub(crate) const LANCZOS_G: f64 = 607.0 / 128.0;

pub(crate) const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_189e-5,
    4.652_362_892_704_858e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_125e-4,
    -2.102_644_417_241_049e-4,
    2.174_396_181_152_126_4e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_275e-5,
    -2.619_083_840_158_141e-5,
    3.689_918_265_953_162_4e-6,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Largest argument with a finite gamma value.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// sin(pi x) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    if x < 0.0 {
        return -sin_pi(-x);
    }
    // reduce to [0, 2)
    let r = x % 2.0;
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    let (r, sign) = if r > 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    // r in (0, 1): use symmetry about 1/2
    let r = if r > 0.5 { 1.0 - r } else { r };
    sign * (PI * r).sin()
}

/// cos(pi x) with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x.abs() + 0.5)
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn lanczos_sum(z: f64) -> f64 {
    let mut a = LANCZOS_COEF[0];
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (z + k as f64);
    }
    a
}

/// Gamma(x) for x >= 0.5 via Lanczos, computed without intermediate overflow.
fn gamma_positive(x: f64) -> f64 {
    if x == x.floor() && x <= 171.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return f;
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let half = t.powf((z + 0.5) / 2.0);
    let s = (2.0 * PI).sqrt() * lanczos_sum(z);
    half * (half * (-t).exp()) * s
}

/// The gamma function.
///
/// Fails with [`Error::Pole`] at non-positive integers and [`Error::Overflow`]
/// when |Gamma(x)| exceeds the f64 range.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow(x));
    }
    if x >= 0.5 {
        return Ok(gamma_positive(x));
    }
    // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
    let s = sin_pi(x);
    if 1.0 - x > GAMMA_MAX_ARG {
        // Gamma(1-x) overflows, the quotient underflows toward zero
        let (l, sign) = ln_gamma_sign(x);
        return Ok(sign * l.exp());
    }
    let g = PI / (s * gamma_positive(1.0 - x));
    if g.is_finite() {
        Ok(g)
    } else {
        Err(Error::Overflow(x))
    }
}

fn ln_gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        // only reached for tiny positive x through callers below
        return ln_gamma_positive(x + 1.0) - x.ln();
    }
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x < 10.0 {
        return gamma_positive(x).ln();
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// ln|Gamma(x)| together with the sign of Gamma(x).
///
/// At the poles the log is `+inf` and the sign is `0.0`.
pub fn ln_gamma_sign(x: f64) -> (f64, f64) {
    if is_nonpositive_integer(x) {
        return (f64::INFINITY, 0.0);
    }
    if x > 0.0 {
        return (ln_gamma_positive(x), 1.0);
    }
    // x < 0, non-integer
    let s = sin_pi(x);
    let l = PI.ln() - s.abs().ln() - ln_gamma_positive(1.0 - x);
    let sign = if (x.floor() as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    (l, sign)
}

/// ln Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma_positive(x))
}

/// 1/Gamma(x); a total function that is exactly zero at the poles of Gamma.
pub fn reciprocal_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x >= 0.5 {
        if x > GAMMA_MAX_ARG {
            return (-ln_gamma_positive(x)).exp();
        }
        return 1.0 / gamma_positive(x);
    }
    // 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi
    if 1.0 - x <= 171.0 {
        return gamma_positive(1.0 - x) * sin_pi(x) / PI;
    }
    let (l, sign) = ln_gamma_sign(x);
    sign * (-l).exp()
}

/// ln|1/Gamma(x)| and its sign; sign 0 at the poles (log is `-inf`).
pub fn ln_reciprocal_gamma_sign(x: f64) -> (f64, f64) {
    let (l, s) = ln_gamma_sign(x);
    (-l, s)
}

/// d/dx [1/Gamma(x)], finite everywhere; equals (-1)^n n! at x = -n.
pub fn reciprocal_gamma_deriv(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        let n = -x;
        let mut f = 1.0;
        let mut k = 2.0;
        while k <= n {
            f *= k;
            k += 1.0;
        }
        return if (n as i64) % 2 == 0 { f } else { -f };
    }
    -digamma_unchecked(x) * reciprocal_gamma(x)
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn digamma_unchecked(mut x: f64) -> f64 {
    let mut acc = 0.0;
    if x <= 0.0 {
        // psi(x) = psi(1 - x) - pi cot(pi x)
        acc -= PI * cos_pi(x) / sin_pi(x);
        x = 1.0 - x;
    }
    if x == 1.0 {
        return acc - EULER_GAMMA;
    }
    if x == 0.5 {
        return acc - EULER_GAMMA - 2.0 * LN_2;
    }
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // Bernoulli tail: sum B_2k / (2k x^2k)
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2
                                        * (1.0 / 132.0
                                            - inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    acc + x.ln() - 0.5 * inv - tail
}

/// The digamma function psi(x) = Gamma'(x)/Gamma(x).
pub fn digamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("digamma of NaN".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    Ok(digamma_unchecked(x))
}
