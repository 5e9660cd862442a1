//! Linear eigenvalues lambda_n and nonlinear eigenvalues mu_pq of the
//! linearized and bilinear collision operators.
//!
//! For the sin^-2 kernel everything is exact: the singular quotient
//! (1 - sin^2n - cos^2n)/sin^2 collapses to
//! sum_{k<n} cos^2k - sin^(2n-2), so each eigenvalue is a finite combination
//! of trigonometric power integrals. Other kernels go through tanh-sinh
//! quadrature of a cancellation-free integrand.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::io::Write;

use crate::error::{Error, Result};
use crate::exact_arith::{trig_power_integral, PiRational, SqrtRationalFactor};
use crate::kernel::{singular_quadrature, KernelSpec};
use crate::precision::{to_f64, Precision};

/// lambda_n for the sin^-2 kernel, exactly.
///
/// lambda_n = 2 sum_{k=0}^{n-1} W(0,k) - 2 W(n-1,0) with
/// W(a,b) = integral of sin^2a cos^2b over [0, pi/4]; lambda_0 = lambda_1 = 0.
pub fn lambda_exact(n: u32) -> PiRational {
    if n == 0 {
        return PiRational::zero();
    }
    let mut acc = PiRational::zero();
    for k in 0..n {
        acc = acc + trig_power_integral(0, k);
    }
    acc = acc - trig_power_integral(n - 1, 0);
    acc.mul_rational(&BigRational::from(BigInt::from(2)))
}

/// (1 - sin^2n - cos^2n) evaluated without cancellation:
/// 1 - cos^2n = -expm1(n ln1p(-sin^2)).
fn one_minus_powers(theta: f64, n: u32) -> f64 {
    let s2 = theta.sin().powi(2);
    -(n as f64 * (-s2).ln_1p()).exp_m1() - s2.powi(n as i32)
}

/// lambda_n by quadrature, valid for any kernel.
pub fn lambda_numeric(n: u32, kernel: &KernelSpec, tol: f64) -> Result<f64> {
    if n <= 1 {
        return Ok(0.0);
    }
    let v = match kernel {
        // the sin^-2 factor cancels against the O(theta^2) vanishing
        KernelSpec::ExactInverseSinSq => singular_quadrature(
            |theta| {
                let s2 = theta.sin().powi(2);
                (-(n as f64 * (-s2).ln_1p()).exp_m1() - s2.powi(n as i32)) / s2
            },
            0,
            tol,
        )?,
        k => singular_quadrature(|theta| one_minus_powers(theta, n) * k.beta(theta), 0, tol)?,
    };
    Ok(2.0 * v)
}

/// Exact mu_pq for the sin^-2 kernel, p >= 1, q >= 0, as the pair
/// (sqrt((2p+2q+1)/((2p+1)(2q+1)) C(2p+2q, 2p)), 2 W(p-1, q)).
/// One sin^2 power cancels the kernel; the factor two is the symmetric
/// half-interval convention shared with lambda_n.
pub fn mu_exact(p: u32, q: u32) -> (SqrtRationalFactor, PiRational) {
    assert!(p >= 1, "mu_pq requires p >= 1");
    let n2 = BigInt::from(2 * p + 2 * q);
    let k2 = BigInt::from(2 * p);
    let c = binomial(n2, k2);
    let radicand = BigRational::new(
        BigInt::from(2 * p + 2 * q + 1) * c,
        BigInt::from((2 * p + 1) as i64 * (2 * q + 1) as i64),
    );
    let integral = trig_power_integral(p - 1, q).mul_rational(&BigRational::from(BigInt::from(2)));
    (SqrtRationalFactor::new(radicand), integral)
}

/// Exact mu_0q = -2 sum_{k<q} W(0,k): the integrand (1-cos^2q)/sin^2 is the
/// geometric sum of cos^2k.
pub fn mu_zero_exact(q: u32) -> PiRational {
    assert!(q >= 1, "mu_0q requires q >= 1");
    let mut acc = PiRational::zero();
    for k in 0..q {
        acc = acc + trig_power_integral(0, k);
    }
    acc.mul_rational(&BigRational::new(BigInt::from(-2), BigInt::one()))
}

use num_traits::One;

/// mu_pq by quadrature for any kernel.
pub fn mu_numeric(p: u32, q: u32, kernel: &KernelSpec, tol: f64) -> Result<f64> {
    assert!(p >= 1);
    let n2 = BigInt::from(2 * p + 2 * q);
    let k2 = BigInt::from(2 * p);
    let c = binomial(n2, k2);
    let radicand = BigRational::new(
        BigInt::from(2 * p + 2 * q + 1) * c,
        BigInt::from((2 * p + 1) as i64 * (2 * q + 1) as i64),
    );
    let pref = to_f64(&crate::precision::sqrt_rational(&radicand, Precision::new(20)));
    let v = match kernel {
        KernelSpec::ExactInverseSinSq => singular_quadrature(
            |theta| theta.sin().powi(2 * p as i32 - 2) * theta.cos().powi(2 * q as i32),
            (2 * p - 2) as u32,
            tol,
        )?,
        k => singular_quadrature(
            |theta| {
                theta.sin().powi(2 * p as i32) * theta.cos().powi(2 * q as i32) * k.beta(theta)
            },
            2 * p,
            tol,
        )?,
    };
    Ok(pref * 2.0 * v)
}

pub fn mu_zero_numeric(q: u32, kernel: &KernelSpec, tol: f64) -> Result<f64> {
    assert!(q >= 1);
    let v = match kernel {
        KernelSpec::ExactInverseSinSq => singular_quadrature(
            |theta| {
                let s2 = theta.sin().powi(2);
                -(q as f64 * (-s2).ln_1p()).exp_m1() / s2
            },
            0,
            tol,
        )?,
        k => singular_quadrature(
            |theta| {
                let s2 = theta.sin().powi(2);
                -(q as f64 * (-s2).ln_1p()).exp_m1() * k.beta(theta)
            },
            0,
            tol,
        )?,
    };
    Ok(-2.0 * v)
}

/// Complete eigenvalue table up to n_max, exact entries when the kernel
/// admits them and numeric entries always.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenTable {
    n_max: u32,
    digits: u32,
    kernel: KernelSpec,
    lambda_exact: Option<Vec<PiRational>>,
    lambda_num: Vec<f64>,
    mu_exact: Option<Vec<MuEntryExact>>,
    mu0_exact: Option<Vec<PiRational>>,
    mu_num: Vec<MuEntryNum>,
    mu0_num: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MuEntryExact {
    pub p: u32,
    pub q: u32,
    pub prefactor: SqrtRationalFactor,
    pub integral: PiRational,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MuEntryNum {
    pub p: u32,
    pub q: u32,
    pub value: f64,
}

pub const DEFAULT_QUAD_TOL: f64 = 1e-12;

impl EigenTable {
    /// Build and verify the table. `digits` sets the precision at which exact
    /// entries are lowered for the numeric columns of exact kernels.
    pub fn build(n_max: u32, kernel: KernelSpec, digits: u32) -> Result<Self> {
        Self::build_with_tol(n_max, kernel, digits, DEFAULT_QUAD_TOL)
    }

    pub fn build_with_tol(n_max: u32, kernel: KernelSpec, digits: u32, tol: f64) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::Usage(format!("n_max = {n_max} must be at least 2")));
        }
        let p = Precision::new(digits);
        let exact = kernel.has_exact_path();
        let lambda_exact_v: Option<Vec<PiRational>> =
            exact.then(|| (0..=n_max).map(lambda_exact).collect());
        let lambda_num: Vec<f64> = match &lambda_exact_v {
            Some(v) => v.iter().map(|l| to_f64(&l.to_float(p))).collect(),
            None => (0..=n_max)
                .into_par_iter()
                .map(|n| lambda_numeric(n, &kernel, tol))
                .collect::<Result<Vec<_>>>()?,
        };
        let pairs: Vec<(u32, u32)> = (1..=n_max)
            .flat_map(|pp| (0..=(n_max - pp)).map(move |qq| (pp, qq)))
            .collect();
        let mu_exact_v: Option<Vec<MuEntryExact>> = exact.then(|| {
            pairs
                .par_iter()
                .map(|&(pp, qq)| {
                    let (prefactor, integral) = mu_exact(pp, qq);
                    MuEntryExact { p: pp, q: qq, prefactor, integral }
                })
                .collect()
        });
        let mu_num: Vec<MuEntryNum> = match &mu_exact_v {
            Some(v) => v
                .iter()
                .map(|e| MuEntryNum {
                    p: e.p,
                    q: e.q,
                    value: to_f64(&e.prefactor.to_float(p)) * to_f64(&e.integral.to_float(p)),
                })
                .collect(),
            None => pairs
                .par_iter()
                .map(|&(pp, qq)| {
                    Ok(MuEntryNum { p: pp, q: qq, value: mu_numeric(pp, qq, &kernel, tol)? })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        let mu0_exact_v: Option<Vec<PiRational>> =
            exact.then(|| (1..=n_max).map(mu_zero_exact).collect());
        let mu0_num: Vec<f64> = match &mu0_exact_v {
            Some(v) => v.iter().map(|m| to_f64(&m.to_float(p))).collect(),
            None => (1..=n_max)
                .into_par_iter()
                .map(|q| mu_zero_numeric(q, &kernel, tol))
                .collect::<Result<Vec<_>>>()?,
        };
        let table = EigenTable {
            n_max,
            digits,
            kernel,
            lambda_exact: lambda_exact_v,
            lambda_num,
            mu_exact: mu_exact_v,
            mu0_exact: mu0_exact_v,
            mu_num,
            mu0_num,
        };
        table.verify()?;
        Ok(table)
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn lambda(&self, n: u32) -> Option<&PiRational> {
        self.lambda_exact.as_ref().and_then(|v| v.get(n as usize))
    }

    pub fn lambda_f64(&self, n: u32) -> f64 {
        self.lambda_num[n as usize]
    }

    pub fn lambdas_f64(&self) -> &[f64] {
        &self.lambda_num
    }

    pub fn mu(&self, p: u32, q: u32) -> Option<&MuEntryExact> {
        self.mu_exact
            .as_ref()
            .and_then(|v| v.iter().find(|e| e.p == p && e.q == q))
    }

    pub fn mu_f64(&self, p: u32, q: u32) -> Option<f64> {
        self.mu_num
            .iter()
            .find(|e| e.p == p && e.q == q)
            .map(|e| e.value)
    }

    /// mu_pq lowered at the given precision (exact pair when available).
    pub fn mu_lowered(&self, p: u32, q: u32, prec: Precision) -> Option<astro_float::BigFloat> {
        use crate::precision::RM;
        if let Some(e) = self.mu(p, q) {
            let a = e.prefactor.to_float(prec);
            let b = e.integral.to_float(prec);
            return Some(a.mul(&b, prec.bits(), RM));
        }
        self.mu_f64(p, q)
            .map(|v| astro_float::BigFloat::from_f64(v, prec.bits()))
    }

    /// Check every structural invariant; an error here means a bug, not bad input.
    pub fn verify(&self) -> Result<()> {
        let fail = |entry: String, invariant: &str| -> Result<()> {
            Err(Error::InvariantViolation { entry, invariant: invariant.into() })
        };
        if self.lambda_num[0] != 0.0 || self.lambda_num[1] != 0.0 {
            return fail("lambda_0/lambda_1".into(), "kernel modes must have zero eigenvalue");
        }
        for n in 1..self.n_max {
            if self.lambda_num[(n + 1) as usize] <= self.lambda_num[n as usize] {
                return fail(format!("lambda_{}", n + 1), "strictly increasing for n >= 1");
            }
        }
        // the sqrt(n) envelope is tied to s = 1/2; other exponents grow as n^s
        if self.kernel.s() == 0.5 {
            for n in 4..=self.n_max {
                let ratio = self.lambda_num[n as usize] / (n as f64).sqrt();
                if !(1.5..=4.5).contains(&ratio) {
                    return fail(format!("lambda_{n}"), "sqrt-growth envelope [1.5, 4.5]");
                }
            }
        }
        if let Some(lams) = &self.lambda_exact {
            for p in 2..=self.n_max {
                for q in p..=self.n_max {
                    if p + q > self.n_max {
                        break;
                    }
                    let sum = &lams[p as usize] + &lams[q as usize];
                    let diff = sum - lams[(p + q) as usize].clone();
                    if diff.numeric_sign() != Ordering::Greater {
                        return fail(
                            format!("lambda_{p}+lambda_{q} vs lambda_{}", p + q),
                            "subadditivity",
                        );
                    }
                }
            }
        } else {
            for p in 2..=self.n_max {
                for q in p..=self.n_max {
                    if p + q > self.n_max {
                        break;
                    }
                    let margin = 1e-9 * self.lambda_num[(p + q) as usize];
                    if self.lambda_num[(p + q) as usize]
                        >= self.lambda_num[p as usize] + self.lambda_num[q as usize] - margin
                    {
                        return fail(
                            format!("lambda_{p}+lambda_{q} vs lambda_{}", p + q),
                            "subadditivity",
                        );
                    }
                }
            }
        }
        for e in &self.mu_num {
            if e.value <= 0.0 {
                return fail(format!("mu_{},{}", e.p, e.q), "positivity for p >= 1");
            }
        }
        for (i, v) in self.mu0_num.iter().enumerate() {
            if *v >= 0.0 {
                return fail(format!("mu_0,{}", i + 1), "negativity for q >= 1");
            }
        }
        Ok(())
    }

    /// CSV with one row per n: n, rat_part, pi_part, numeric.
    pub fn write_lambda_csv(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "n,rat_part,pi_part,numeric")?;
        let digits = self.digits as usize;
        for n in 0..=self.n_max {
            let (rat, pi) = match self.lambda(n) {
                Some(l) => (l.rat_part().to_string(), l.pi_part().to_string()),
                None => (String::new(), String::new()),
            };
            writeln!(w, "{n},{rat},{pi},{:.*e}", digits, self.lambda_num[n as usize])?;
        }
        Ok(())
    }

    /// CSV with one row per (p,q): p, q, radicand, rat_part, pi_part, numeric.
    pub fn write_mu_csv(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "p,q,radicand,rat_part,pi_part,numeric")?;
        let digits = self.digits as usize;
        for e in &self.mu_num {
            let (rad, rat, pi) = match self.mu(e.p, e.q) {
                Some(me) => (
                    me.prefactor.radicand().to_string(),
                    me.integral.rat_part().to_string(),
                    me.integral.pi_part().to_string(),
                ),
                None => (String::new(), String::new(), String::new()),
            };
            writeln!(w, "{},{},{rad},{rat},{pi},{:.*e}", e.p, e.q, digits, e.value)?;
        }
        for (i, v) in self.mu0_num.iter().enumerate() {
            let q = i as u32 + 1;
            let (rat, pi) = match self.mu0_exact.as_ref().map(|m| &m[i]) {
                Some(m) => (m.rat_part().to_string(), m.pi_part().to_string()),
                None => (String::new(), String::new()),
            };
            writeln!(w, "0,{q},,{rat},{pi},{:.*e}", digits, v)?;
        }
        Ok(())
    }
}
