//! Density families addressable from the command line.

use std::f64::consts::PI;

use clap::{Args, ValueEnum};
use num_complex::Complex64;

use super::CliError;
use crate::composite::{
    product_inv_limit0, product_inv_mellin, product_inv_pdf, product_stable_limit0,
    product_stable_mellin, product_stable_pdf, quotient_inv_mellin, quotient_inv_pdf,
    quotient_limit0, LogLimit, PairParams,
};
use crate::error::Result;
use crate::invgauss::{
    ig_first_exit_closed_form, ig_first_exit_pdf, ig_laplace, ig_pdf, ig_pdf_series, IGParams,
};
use crate::oracle::Process;
use crate::series::DensityValue;
use crate::stable::{
    inv_stable_limit0, inv_stable_mellin, inv_stable_pdf, inv_stable_power_limit0,
    inv_stable_power_pdf, stable_mellin, stable_pdf, stable_power_pdf, StableParams,
};
use crate::tempered::{
    inv_tempered_laplace_t, inv_tempered_limit0, inv_tempered_pdf, tempered_laplace, tempered_pdf,
    TemperedParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Stable,
    InvStable,
    StablePow,
    InvStablePow,
    Tempered,
    InvTempered,
    ProductInv,
    ProductStable,
    QuotientInv,
    Ig,
    IgFirstExit,
}

impl Family {
    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

/// Model parameters. Which ones are required depends on the family.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    /// Exponent n for the power families.
    #[arg(long)]
    pub power: Option<u32>,
    #[arg(long)]
    pub alpha1: Option<f64>,
    #[arg(long)]
    pub alpha2: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
}

fn need<T>(v: Option<T>, flag: &str, family: Family) -> std::result::Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {}", family.name())))
}

/// A family with validated parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Stable(StableParams),
    InvStable(StableParams),
    StablePow(StableParams, u32),
    InvStablePow(StableParams, u32),
    Tempered(TemperedParams),
    InvTempered(TemperedParams),
    ProductInv(PairParams),
    ProductStable(PairParams),
    QuotientInv(PairParams),
    Ig(IGParams),
    IgFirstExit(IGParams),
}

/// Leading behaviour of a density at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Limit {
    /// f(x) -> value (possibly 0)
    Finite(f64),
    /// f(x) ~ coefficient x^exponent + constant
    Power {
        exponent: f64,
        coefficient: f64,
        constant: f64,
    },
    Log(LogLimit),
}

impl Limit {
    pub fn approx(&self, x: f64) -> f64 {
        match *self {
            Limit::Finite(v) => v,
            Limit::Power {
                exponent,
                coefficient,
                constant,
            } => coefficient * x.powf(exponent) + constant,
            Limit::Log(l) => l.eval(x),
        }
    }
}

impl Model {
    pub fn build(family: Family, a: &ParamArgs) -> std::result::Result<Self, CliError> {
        let t = need(a.t, "t", family)?;
        let stable = || -> std::result::Result<StableParams, CliError> {
            Ok(StableParams::new(need(a.alpha, "alpha", family)?, t)?)
        };
        let tempered = || -> std::result::Result<TemperedParams, CliError> {
            Ok(TemperedParams::new(
                need(a.alpha, "alpha", family)?,
                need(a.lambda, "lambda", family)?,
                t,
            )?)
        };
        let pair = || -> std::result::Result<PairParams, CliError> {
            Ok(PairParams::new(
                need(a.alpha1, "alpha1", family)?,
                need(a.alpha2, "alpha2", family)?,
                t,
            )?)
        };
        let ig = || -> std::result::Result<IGParams, CliError> {
            Ok(IGParams::new(
                need(a.delta, "delta", family)?,
                need(a.gamma, "gamma", family)?,
                t,
            )?)
        };
        let power = || -> std::result::Result<u32, CliError> {
            let n = need(a.power, "power", family)?;
            if n == 0 {
                return Err(CliError::Usage("--power must be at least 1".into()));
            }
            Ok(n)
        };
        Ok(match family {
            Family::Stable => Model::Stable(stable()?),
            Family::InvStable => Model::InvStable(stable()?),
            Family::StablePow => Model::StablePow(stable()?, power()?),
            Family::InvStablePow => Model::InvStablePow(stable()?, power()?),
            Family::Tempered => Model::Tempered(tempered()?),
            Family::InvTempered => Model::InvTempered(tempered()?),
            Family::ProductInv => Model::ProductInv(pair()?),
            Family::ProductStable => Model::ProductStable(pair()?),
            Family::QuotientInv => Model::QuotientInv(pair()?),
            Family::Ig => Model::Ig(ig()?),
            Family::IgFirstExit => Model::IgFirstExit(ig()?),
        })
    }

    pub fn density(&self, x: f64) -> Result<DensityValue> {
        match *self {
            Model::Stable(p) => stable_pdf(p, x),
            Model::InvStable(p) => inv_stable_pdf(p, x),
            Model::StablePow(p, n) => stable_power_pdf(p, n, x),
            Model::InvStablePow(p, n) => inv_stable_power_pdf(p, n, x),
            Model::Tempered(p) => tempered_pdf(p, x),
            Model::InvTempered(p) => inv_tempered_pdf(p, x),
            Model::ProductInv(p) => product_inv_pdf(p, x),
            Model::ProductStable(p) => product_stable_pdf(p, x),
            Model::QuotientInv(p) => quotient_inv_pdf(p, x),
            Model::Ig(p) => ig_pdf(p, x),
            Model::IgFirstExit(p) => ig_first_exit_pdf(p, x),
        }
    }

    /// Sampler for the family, with the power applied to each draw.
    pub fn process(&self) -> (Process, u32) {
        match *self {
            Model::Stable(p) => (Process::Stable(p), 1),
            Model::InvStable(p) => (Process::InvStable(p), 1),
            Model::StablePow(p, n) => (Process::Stable(p), n),
            Model::InvStablePow(p, n) => (Process::InvStable(p), n),
            Model::Tempered(p) => (Process::Tempered(p), 1),
            Model::InvTempered(p) => (Process::InvTempered(p), 1),
            Model::ProductInv(p) => (Process::ProductInv(p), 1),
            Model::ProductStable(p) => (Process::ProductStable(p), 1),
            Model::QuotientInv(p) => (Process::QuotientInv(p), 1),
            Model::Ig(p) => (Process::Ig(p), 1),
            Model::IgFirstExit(p) => (Process::IgFirstExit(p), 1),
        }
    }

    /// Mellin transform in x and its strip of analyticity.
    pub fn mellin(
        &self,
    ) -> Option<(
        Box<dyn Fn(Complex64) -> Result<Complex64> + Sync + '_>,
        (f64, f64),
    )> {
        let inf = f64::INFINITY;
        Some(match *self {
            Model::Stable(p) => (
                Box::new(move |s| stable_mellin(p, s)),
                (-inf, 1.0 + p.alpha),
            ),
            Model::InvStable(p) => (Box::new(move |s| inv_stable_mellin(p, s)), (0.0, inf)),
            // E[X^{n(s-1)}] = M_X(n(s-1)+1)
            Model::StablePow(p, n) => {
                let nf = n as f64;
                (
                    Box::new(move |s: Complex64| stable_mellin(p, (s - 1.0) * nf + 1.0)),
                    (-inf, 1.0 + p.alpha / nf),
                )
            }
            Model::InvStablePow(p, n) => {
                let nf = n as f64;
                (
                    Box::new(move |s: Complex64| inv_stable_mellin(p, (s - 1.0) * nf + 1.0)),
                    (1.0 - 1.0 / nf, inf),
                )
            }
            Model::ProductInv(p) => (Box::new(move |s| product_inv_mellin(p, s)), (0.0, inf)),
            Model::ProductStable(p) => (
                Box::new(move |s| product_stable_mellin(p, s)),
                (-inf, 1.0 + p.alpha1.min(p.alpha2)),
            ),
            Model::QuotientInv(p) => (Box::new(move |s| quotient_inv_mellin(p, s)), (0.0, 2.0)),
            _ => return None,
        })
    }

    /// A Laplace pair: (transform, point at which to invert) for density at x.
    /// Transforms are in x for the subordinators and in t for the inverses.
    pub fn laplace(
        &self,
        x: f64,
    ) -> Option<(Box<dyn Fn(Complex64) -> Result<Complex64> + '_>, f64)> {
        Some(match *self {
            Model::Stable(p) => {
                let q = TemperedParams {
                    alpha: p.alpha,
                    lambda: 0.0,
                    t: p.t,
                };
                (Box::new(move |s| Ok(tempered_laplace(q, s))), x)
            }
            Model::Tempered(p) => (Box::new(move |s| Ok(tempered_laplace(p, s))), x),
            Model::InvStable(p) => {
                let q = TemperedParams {
                    alpha: p.alpha,
                    lambda: 0.0,
                    t: p.t,
                };
                (Box::new(move |u| Ok(inv_tempered_laplace_t(q, x, u))), p.t)
            }
            Model::InvTempered(p) => (Box::new(move |u| Ok(inv_tempered_laplace_t(p, x, u))), p.t),
            Model::Ig(p) => (Box::new(move |s| Ok(ig_laplace(p, s))), x),
            Model::IgFirstExit(p) => {
                let k = std::f64::consts::SQRT_2 * p.delta;
                let q = TemperedParams {
                    alpha: 0.5,
                    lambda: 0.5 * p.gamma * p.gamma,
                    t: p.t,
                };
                (
                    Box::new(move |u| Ok(k * inv_tempered_laplace_t(q, k * x, u))),
                    p.t,
                )
            }
            _ => return None,
        })
    }

    /// Independent closed form, where one exists.
    pub fn closed_form(&self, x: f64) -> Option<Result<f64>> {
        let sq = PI.sqrt();
        match *self {
            Model::Stable(p) if p.alpha == 0.5 => Some(Ok(p.t
                * x.powf(-1.5)
                * (-p.t * p.t / (4.0 * x)).exp()
                / (2.0 * sq))),
            Model::Tempered(p) if p.alpha == 0.5 => Some(Ok(p.t
                * x.powf(-1.5)
                * (-p.t * p.t / (4.0 * x) - p.lambda * x + p.lambda.sqrt() * p.t).exp()
                / (2.0 * sq))),
            Model::InvStable(p) if p.alpha == 0.5 => {
                Some(Ok((-x * x / (4.0 * p.t)).exp() / (PI * p.t).sqrt()))
            }
            Model::QuotientInv(p) if p.alpha1 == p.alpha2 => {
                let a = p.alpha1;
                Some(Ok(
                    (PI * a).sin() / (PI * a * (x * x + 2.0 * x * (PI * a).cos() + 1.0))
                ))
            }
            Model::Ig(p) => Some(ig_pdf(p, x).map(|d| d.value)),
            Model::IgFirstExit(p) => Some(ig_first_exit_closed_form(p, x)),
            _ => None,
        }
    }

    /// The density the closed form is compared against. For the IG law the
    /// production density is already closed, so its series is checked instead.
    pub fn series(&self, x: f64) -> Result<DensityValue> {
        match *self {
            Model::Ig(p) => ig_pdf_series(p, x),
            _ => self.density(x),
        }
    }

    pub fn limit0(&self) -> Result<Limit> {
        Ok(match *self {
            Model::InvStable(p) => Limit::Finite(inv_stable_limit0(p)),
            Model::InvStablePow(p, n) => {
                let l = inv_stable_power_limit0(p, n)?;
                Limit::Power {
                    exponent: l.exponent,
                    coefficient: l.coefficient,
                    constant: l.constant_term,
                }
            }
            Model::InvTempered(p) => Limit::Finite(inv_tempered_limit0(p)?),
            Model::QuotientInv(p) => Limit::Finite(quotient_limit0(p)),
            Model::ProductInv(p) => Limit::Log(product_inv_limit0(p)?),
            Model::ProductStable(p) => Limit::Log(product_stable_limit0(p)),
            Model::IgFirstExit(p) => {
                // density of the running maximum at 0 is 2 phi(g sqrt t) / sqrt t - 2 g Phi(-g sqrt t)
                let r = p.gamma * p.t.sqrt();
                let phi = (-0.5 * r * r).exp() / (2.0 * PI).sqrt();
                let tail = 0.5 * statrs::function::erf::erfc(r / std::f64::consts::SQRT_2);
                Limit::Finite(p.delta * (2.0 * phi / p.t.sqrt() - 2.0 * p.gamma * tail))
            }
            Model::Stable(_) | Model::StablePow(..) | Model::Tempered(_) | Model::Ig(_) => {
                Limit::Finite(0.0)
            }
        })
    }
}
