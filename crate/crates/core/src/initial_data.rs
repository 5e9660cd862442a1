//! Normalized spectral coefficients G_n for the built-in initial data
//! families: projected radial functions, the bi-Gaussian, the measure datum
//! mu + delta, and its Gaussian approximations.
//!
//! Rescaling F(v) = alpha Ftilde(beta v) enforces unit mass and second moment
//! three, which puts the perturbation in the orthogonal complement of the
//! collision invariants; G_0 = G_1 = 0 always.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

use crate::basis::{maxwellian, sqrt_maxwellian, BasisFunctionTable};
use crate::error::{Error, Result};
use crate::precision::{self, Precision, RM};
use crate::quadrature;

/// Offset of the two Gaussian bumps in the built-in bi-Gaussian datum.
pub const BIGAUSS_OFFSET: f64 = 2.0;

const PROJECTION_NODES: usize = 400;

/// Scaling pair of the moment-normalizing change of variables.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RescaleParams {
    pub alpha: f64,
    pub beta: f64,
}

/// alpha = ((1/3) m2)^(3/2) / m0^(5/2), beta = ((1/3) m2)^(1/2) / m0^(1/2)
/// from the raw mass m0 and raw second moment m2.
pub fn rescale_params(mass: f64, second_moment: f64) -> Result<RescaleParams> {
    if !(mass > 0.0) || !(second_moment > 0.0) {
        return Err(Error::DegenerateData(format!(
            "mass {mass} and second moment {second_moment} must be positive"
        )));
    }
    let e = second_moment / 3.0;
    Ok(RescaleParams {
        alpha: e.powf(1.5) / mass.powf(2.5),
        beta: (e / mass).sqrt(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum CoeffSource {
    Projected,
    MeasureClosedForm,
    EpsApprox(f64),
    UserSupplied,
}

/// Spectral coordinates G_0..G_N of the rescaled perturbation, with
/// provenance. The first two entries are exactly zero.
#[derive(Clone, Debug)]
pub struct SpectralCoeffs {
    values: Vec<BigFloat>,
    digits: u32,
    source: CoeffSource,
}

impl SpectralCoeffs {
    pub fn from_big_values(values: Vec<BigFloat>, digits: u32, source: CoeffSource) -> Result<Self> {
        let c = SpectralCoeffs { values, digits, source };
        c.check_orthogonal()?;
        Ok(c)
    }

    pub fn user_supplied(values: &[f64], digits: u32) -> Result<Self> {
        let p = Precision::new(digits);
        let vals = values.iter().map(|v| BigFloat::from_f64(*v, p.bits())).collect();
        Self::from_big_values(vals, digits, CoeffSource::UserSupplied)
    }

    fn check_orthogonal(&self) -> Result<()> {
        for n in 0..2.min(self.values.len()) {
            if !self.values[n].is_zero() {
                return Err(Error::DegenerateData(format!(
                    "G_{n} = {} but the data must be orthogonal to the collision invariants",
                    precision::to_f64(&self.values[n])
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn n_max(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn source(&self) -> &CoeffSource {
        &self.source
    }

    pub fn value(&self, n: usize) -> &BigFloat {
        &self.values[n]
    }

    pub fn value_f64(&self, n: usize) -> f64 {
        precision::to_f64(&self.values[n])
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.values.iter().map(precision::to_f64).collect()
    }

    /// Same coefficients re-rounded to a different working precision.
    pub fn at_digits(&self, digits: u32) -> SpectralCoeffs {
        let p = Precision::new(digits);
        let values = self
            .values
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.set_precision(p.bits(), RM).expect("precision change");
                w
            })
            .collect();
        SpectralCoeffs { values, digits, source: self.source.clone() }
    }

    /// CSV with header `n,G_n`, exact decimal strings.
    pub fn write_csv(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "n,G_n")?;
        for (n, v) in self.values.iter().enumerate() {
            writeln!(w, "{n},{}", precision::exact_decimal(v))?;
        }
        Ok(())
    }

    pub fn read_csv(r: impl BufRead, digits: u32) -> Result<Self> {
        let p = Precision::new(digits);
        let mut values: Vec<(usize, BigFloat)> = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with("n,")) {
                continue;
            }
            let (ns, vs) = line
                .split_once(',')
                .ok_or_else(|| Error::Format(format!("bad csv line {:?}", line)))?;
            let n: usize = ns
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("bad index {ns:?}")))?;
            let v = precision::parse_decimal(vs.trim(), p.bits())?;
            values.push((n, v));
        }
        values.sort_by_key(|(n, _)| *n);
        for (want, (n, _)) in values.iter().enumerate() {
            if *n != want {
                return Err(Error::Format(format!("coefficient index gap at {want}")));
            }
        }
        let vals = values.into_iter().map(|(_, v)| v).collect();
        Self::from_big_values(vals, digits, CoeffSource::UserSupplied)
    }

    pub fn to_serial(&self) -> SerialCoeffs {
        SerialCoeffs {
            source: self.source.clone(),
            digits: self.digits,
            values: self.values.iter().map(precision::exact_decimal).collect(),
        }
    }

    pub fn from_serial(s: &SerialCoeffs) -> Result<Self> {
        let p = Precision::new(s.digits);
        let values = s
            .values
            .iter()
            .map(|v| precision::parse_decimal(v, p.bits()))
            .collect::<Result<Vec<_>>>()?;
        Ok(SpectralCoeffs { values, digits: s.digits, source: s.source.clone() })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SerialCoeffs {
    pub source: CoeffSource,
    pub digits: u32,
    pub values: Vec<String>,
}

/// The built-in bi-Gaussian radial profile (bumps at |v| = BIGAUSS_OFFSET).
pub fn bi_gaussian(r: f64) -> f64 {
    let c = (2.0 * std::f64::consts::PI).powf(-1.5);
    c * ((-0.5 * (r + BIGAUSS_OFFSET) * (r + BIGAUSS_OFFSET)).exp()
        + (-0.5 * (r - BIGAUSS_OFFSET) * (r - BIGAUSS_OFFSET)).exp())
}

/// Project arbitrary radial data: compute raw moments, rescale to unit
/// mass/normalized energy, form G = (F - mu)/sqrt(mu) and integrate against
/// the basis. The first two coefficients must come out at quadrature-noise
/// level (below 10^(-digits/2)); they are then snapped to exact zero.
pub fn project_function_data(
    f_tilde: impl Fn(f64) -> f64 + Sync,
    n_max: usize,
    digits: u32,
) -> Result<(SpectralCoeffs, RescaleParams)> {
    let r_max = projection_radius(digits);
    let mass = quadrature::radial_integral(&f_tilde, r_max, PROJECTION_NODES);
    let second = quadrature::radial_integral(|r| r * r * f_tilde(r), r_max, PROJECTION_NODES);
    let params = rescale_params(mass, second)?;
    let g = |r: f64| {
        let f = params.alpha * f_tilde(params.beta * r);
        (f - maxwellian(r)) / sqrt_maxwellian(r)
    };
    let table = BasisFunctionTable::new(n_max);
    let mut values: Vec<f64> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            quadrature::radial_integral(|r| g(r) * table.phi_eval(n, r), r_max, PROJECTION_NODES)
        })
        .collect();
    let tolerance = 10f64.powf(-(digits as f64) / 2.0);
    for n in 0..2.min(values.len()) {
        if values[n].abs() > tolerance {
            return Err(Error::QuadratureFailure(format!(
                "G_{n} = {:.3e} after rescaling exceeds the {tolerance:.1e} orthogonality budget",
                values[n]
            )));
        }
        values[n] = 0.0;
    }
    let p = Precision::new(digits);
    let vals = values.iter().map(|v| BigFloat::from_f64(*v, p.bits())).collect();
    Ok((
        SpectralCoeffs { values: vals, digits, source: CoeffSource::Projected },
        params,
    ))
}

fn projection_radius(digits: u32) -> f64 {
    2.0 * ((digits.min(18) as f64) * std::f64::consts::LN_10).sqrt() + 6.0
}

/// Exact coefficient square of the measure datum: (2n+1)!/(2^2n (n!)^2).
fn measure_coeff_sq(n: usize) -> BigRational {
    let mut num = BigInt::one();
    for k in 1..=(2 * n + 1) {
        num *= k;
    }
    let mut den = BigInt::one() << (2 * n);
    let mut fact = BigInt::one();
    for k in 1..=n {
        fact *= k;
    }
    den *= &fact * &fact;
    BigRational::new(num, den)
}

/// Spectral coefficients of the rescaled measure datum: zero for odd n,
/// sqrt((2n+1)!/(2^2n (n!)^2)) for even n >= 2.
pub fn measure_coeffs(n_max: usize, digits: u32) -> Result<SpectralCoeffs> {
    if n_max < 2 {
        return Err(Error::Usage(format!("n_max = {n_max} must be at least 2")));
    }
    let p = Precision::new(digits);
    let values = (0..=n_max)
        .map(|n| {
            if n < 2 || n % 2 == 1 {
                BigFloat::from_f64(0.0, p.bits())
            } else {
                precision::sqrt_rational(&measure_coeff_sq(n), p)
            }
        })
        .collect();
    Ok(SpectralCoeffs { values, digits, source: CoeffSource::MeasureClosedForm })
}

/// Coefficients of the eps-Gaussian approximation of the measure datum:
/// the measure coefficients damped by ((1-eps^2)/(1+eps^2))^n.
pub fn eps_coeffs(n_max: usize, eps: f64, digits: u32) -> Result<SpectralCoeffs> {
    if n_max < 2 {
        return Err(Error::Usage(format!("n_max = {n_max} must be at least 2")));
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::Usage(format!("eps = {eps} must lie in (0, 1]")));
    }
    let p = Precision::new(digits);
    // exact rational damping base from the exact binary value of eps
    let eps_rat = BigRational::from_float(eps).expect("finite eps");
    let num = BigRational::one() - &eps_rat * &eps_rat;
    let den = BigRational::one() + &eps_rat * &eps_rat;
    let values = (0..=n_max)
        .map(|n| {
            if n < 2 || n % 2 == 1 {
                return BigFloat::from_f64(0.0, p.bits());
            }
            if num.numer().is_zero() {
                return BigFloat::from_f64(0.0, p.bits());
            }
            let damp_rat = (&num / &den).pow(n as i32);
            let damp = precision::rational_to_big(&damp_rat, p.bits());
            precision::sqrt_rational(&measure_coeff_sq(n), p).mul(&damp, p.bits(), RM)
        })
        .collect();
    Ok(SpectralCoeffs { values, digits, source: CoeffSource::EpsApprox(eps) })
}

use num_traits::Zero;

/// The explicit eps-Gaussian perturbation G_eps(v), used as an independent
/// cross-check of `eps_coeffs`.
pub fn eps_g_function(eps: f64) -> impl Fn(f64) -> f64 {
    move |v: f64| {
        let scale = 2f64.sqrt() / 8.0 * (1.0 + eps * eps).powf(1.5);
        -sqrt_maxwellian(v)
            + scale * (sqrt_maxwellian(eps * v) + sqrt_maxwellian(v / eps) / eps.powi(3))
    }
}

/// Regular part of the rescaled measure datum, 2^(-5/2) mu(v / sqrt(2)).
pub fn measure_regular_part(v: f64) -> f64 {
    2f64.powf(-2.5) * maxwellian(v * std::f64::consts::FRAC_1_SQRT_2)
}
