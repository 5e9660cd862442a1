//! Closed-form solution of the truncated spectral hierarchy.
//!
//! Level n is assembled from all ordered pairs (p, q) with p + q = n and
//! 2 <= p, q <= n - 2: the product mu_pq (G_p + h_p)(G_q + h_q) is an
//! exponential sum, and integrating it against e^(-(lambda_p + lambda_q -
//! lambda_n) s) is closed-form term surgery. Subadditivity of the eigenvalues
//! keeps every produced rate strictly positive.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

use crate::eigenvalues::EigenTable;
use crate::error::{Error, Result};
use crate::expsum::{ExpSum, RawExpSum};
use crate::exact_arith::PiRational;
use crate::initial_data::{SerialCoeffs, SpectralCoeffs};
use crate::kernel::KernelSpec;
use crate::precision::Precision;

pub const SERIES_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    pub digits: u32,
    /// Coefficients below this magnitude are dropped after each level;
    /// zero keeps everything.
    pub prune_threshold: f64,
}

impl SolverOptions {
    pub fn with_digits(digits: u32) -> Self {
        SolverOptions { digits, prune_threshold: 0.0 }
    }
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { digits: 30, prune_threshold: 0.0 }
    }
}

/// The family {h_n} with everything needed to evaluate g_n and f_N.
#[derive(Clone, Debug)]
pub struct SolutionSeries {
    n_max: usize,
    digits: u32,
    kernel: KernelSpec,
    lambda: Vec<PiRational>,
    lambda_f64: Vec<f64>,
    coeffs: SpectralCoeffs,
    h: Vec<ExpSum>,
}

impl SolutionSeries {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn precision(&self) -> Precision {
        Precision::new(self.digits)
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn coeffs(&self) -> &SpectralCoeffs {
        &self.coeffs
    }

    pub fn h(&self, n: usize) -> &ExpSum {
        &self.h[n]
    }

    pub fn lambda(&self, n: usize) -> &PiRational {
        &self.lambda[n]
    }

    pub fn lambda_f64(&self, n: usize) -> f64 {
        self.lambda_f64[n]
    }

    /// g_n(t) = e^(-lambda_n t)(G_n + h_n(t)) as an exponential sum: every
    /// rate of G_n + h_n shifted by lambda_n on the exact key.
    pub fn g_coefficient(&self, n: usize) -> ExpSum {
        let p = self.precision();
        let with_g = self.h[n].add_constant(self.coeffs.value(n), p);
        let mut out = ExpSum::zero();
        for (r, c) in with_g.iter() {
            out = out.add(&ExpSum::term(c.clone(), r + &self.lambda[n]), p);
        }
        out
    }

    /// Spectral coefficients of g at time t, in the working precision,
    /// lowered to f64.
    pub fn g_values(&self, t: f64) -> Vec<f64> {
        let p = self.precision();
        (0..=self.n_max)
            .map(|n| {
                let decay = (-self.lambda_f64[n] * t).exp();
                let inner = crate::precision::to_f64(&self.h[n].eval(t, p))
                    + self.coeffs.value_f64(n);
                decay * inner
            })
            .collect()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = SeriesFile {
            version: SERIES_FORMAT_VERSION,
            n_max: self.n_max as u32,
            digits: self.digits,
            kernel: self.kernel.clone(),
            lambda: self.lambda.clone(),
            coeffs: self.coeffs.to_serial(),
            h: self.h.iter().map(ExpSum::to_raw).collect(),
        };
        let json = serde_json::to_string_pretty(&file)?;
        fs::write(path, json)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let data = fs::read_to_string(path)?;
        let value: serde_json::Value = serde_json::from_str(&data)?;
        let version = value
            .get("version")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Format("series file missing version field".into()))?;
        if version != SERIES_FORMAT_VERSION as u64 {
            return Err(Error::Format(format!(
                "series format version {version} unsupported (expected {SERIES_FORMAT_VERSION})"
            )));
        }
        let file: SeriesFile = serde_json::from_value(value)?;
        let p = Precision::new(file.digits);
        let n_max = file.n_max as usize;
        if file.lambda.len() != n_max + 1 || file.h.len() != n_max + 1 {
            return Err(Error::Format(format!(
                "series tables have {} eigenvalues and {} corrections for n_max {n_max}",
                file.lambda.len(),
                file.h.len()
            )));
        }
        let coeffs = SpectralCoeffs::from_serial(&file.coeffs)?;
        if coeffs.len() < n_max + 1 {
            return Err(Error::Format("coefficient list shorter than n_max".into()));
        }
        let h = file
            .h
            .iter()
            .map(|raw| ExpSum::from_raw(raw, p))
            .collect::<Result<Vec<_>>>()?;
        let lambda_f64 = file.lambda.iter().map(|l| crate::precision::to_f64(&l.to_float(p))).collect();
        Ok(SolutionSeries {
            n_max,
            digits: file.digits,
            kernel: file.kernel,
            lambda: file.lambda,
            lambda_f64,
            coeffs,
            h,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesFile {
    version: u32,
    #[serde(rename = "N")]
    n_max: u32,
    digits: u32,
    kernel: KernelSpec,
    lambda: Vec<PiRational>,
    coeffs: SerialCoeffs,
    h: Vec<RawExpSum>,
}

/// Build h_4..h_N by the triangular recursion. Levels are sequential (h_n
/// needs all h_p below it); the pair products within a level run in parallel
/// and merge in ascending p order so output is bit-reproducible.
pub fn solve(
    coeffs: &SpectralCoeffs,
    eigen: &EigenTable,
    n_max: usize,
    opts: SolverOptions,
) -> Result<SolutionSeries> {
    if n_max < 4 {
        return Err(Error::Usage(format!("n_max = {n_max} must be at least 4 to solve")));
    }
    if n_max > eigen.n_max() as usize {
        return Err(Error::Usage(format!(
            "n_max = {n_max} exceeds the eigenvalue table ({})",
            eigen.n_max()
        )));
    }
    if coeffs.len() < n_max + 1 {
        return Err(Error::Usage(format!(
            "need {} coefficients for n_max = {n_max}, got {}",
            n_max + 1,
            coeffs.len()
        )));
    }
    if !coeffs.value(0).is_zero() || !coeffs.value(1).is_zero() {
        return Err(Error::DegenerateData(
            "initial coefficients must be orthogonal to the collision invariants".into(),
        ));
    }
    let p = Precision::new(opts.digits);
    let coeffs = if coeffs.digits() == opts.digits {
        coeffs.clone()
    } else {
        coeffs.at_digits(opts.digits)
    };
    // Exact rates when the kernel admits them; otherwise the numeric
    // eigenvalues are embedded exactly as dyadic rationals so the rate
    // algebra stays collision-free.
    let lambda: Vec<PiRational> = (0..=n_max as u32)
        .map(|n| match eigen.lambda(n) {
            Some(l) => l.clone(),
            None => PiRational::new(
                num_rational::BigRational::from_float(eigen.lambda_f64(n))
                    .unwrap_or_else(num_traits::Zero::zero),
                num_traits::Zero::zero(),
            ),
        })
        .collect();
    let mut h: Vec<ExpSum> = vec![ExpSum::zero(); n_max + 1];
    for n in 4..=n_max {
        let pairs: Vec<usize> = (2..=n - 2).collect();
        let contributions: Vec<Result<ExpSum>> = pairs
            .par_iter()
            .map(|&pp| {
                let qq = n - pp;
                let mu = eigen
                    .mu_lowered(pp as u32, qq as u32, p)
                    .ok_or_else(|| Error::ShapeMismatch(format!("mu_{pp},{qq} missing")))?;
                let gp = h[pp].add_constant(coeffs.value(pp), p);
                let gq = h[qq].add_constant(coeffs.value(qq), p);
                let prod = gp.multiply(&gq, p).scale(&mu, p);
                let shift = &(&lambda[pp] + &lambda[qq]) - &lambda[n];
                prod.integrate_shifted(&shift, p)
            })
            .collect();
        let mut level = ExpSum::zero();
        for c in contributions {
            level = level.add(&c?, p);
        }
        if opts.prune_threshold > 0.0 {
            level.prune(opts.prune_threshold);
        }
        if level.has_non_finite() {
            return Err(Error::PrecisionExhausted(format!(
                "coefficients of h_{n} left the representable range"
            )));
        }
        debug_assert!(
            level
                .iter()
                .all(|(r, _)| r.is_zero() || r.is_numerically_positive()),
            "negative rate produced at level {n}"
        );
        h[n] = level;
    }
    let lambda_f64 = lambda
        .iter()
        .map(|l| crate::precision::to_f64(&l.to_float(p)))
        .collect();
    Ok(SolutionSeries {
        n_max,
        digits: opts.digits,
        kernel: eigen.kernel().clone(),
        lambda,
        lambda_f64,
        coeffs,
        h,
    })
}
