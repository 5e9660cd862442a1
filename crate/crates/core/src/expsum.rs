//! Finite sums of decaying exponentials with exact rates: the closed form of
//! every nonlinear spectral correction h_n(t).
//!
//! Rates are exact `PiRational` keys, so like terms combine without tolerance
//! clustering; coefficients are floats at the configured working precision.
//! Term counts therefore differ from a fully symbolic pipeline while values
//! do not.

use astro_float::BigFloat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact_arith::PiRational;
use crate::precision::{self, Precision, RM};

/// Sum of coeff * exp(-rate * t) terms keyed by exact rate; the zero rate is
/// the constant term. Rates stay nonnegative for every solver-produced sum.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpSum {
    terms: BTreeMap<PiRational, BigFloat>,
}

impl ExpSum {
    pub fn zero() -> Self {
        ExpSum { terms: BTreeMap::new() }
    }

    pub fn constant(c: BigFloat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(PiRational::zero(), c);
        }
        ExpSum { terms }
    }

    pub fn term(coeff: BigFloat, rate: PiRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(rate, coeff);
        }
        ExpSum { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PiRational, &BigFloat)> {
        self.terms.iter()
    }

    fn insert_combined(&mut self, rate: PiRational, coeff: BigFloat, bits: usize) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(rate) {
            Entry::Vacant(e) => {
                if !coeff.is_zero() {
                    e.insert(coeff);
                }
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&coeff, bits, RM);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &ExpSum, p: Precision) -> ExpSum {
        let bits = p.bits();
        let mut out = self.clone();
        for (r, c) in &other.terms {
            out.insert_combined(r.clone(), c.clone(), bits);
        }
        out
    }

    pub fn add_constant(&self, c: &BigFloat, p: Precision) -> ExpSum {
        let mut out = self.clone();
        out.insert_combined(PiRational::zero(), c.clone(), p.bits());
        out
    }

    pub fn scale(&self, c: &BigFloat, p: Precision) -> ExpSum {
        if c.is_zero() {
            return ExpSum::zero();
        }
        let bits = p.bits();
        let terms = self
            .terms
            .iter()
            .map(|(r, v)| (r.clone(), v.mul(c, bits, RM)))
            .collect();
        ExpSum { terms }
    }

    /// All pairwise products; rates add exactly and like terms combine on the
    /// exact key.
    pub fn multiply(&self, other: &ExpSum, p: Precision) -> ExpSum {
        let bits = p.bits();
        let mut out = ExpSum::zero();
        for (rx, cx) in &self.terms {
            for (ry, cy) in &other.terms {
                out.insert_combined(rx + ry, cx.mul(cy, bits, RM), bits);
            }
        }
        out
    }

    /// Integral over [0, t] of this sum with every rate shifted by `shift`:
    /// each c e^(-(r+shift)s) contributes c/(r+shift) (1 - e^(-(r+shift)t)).
    ///
    /// The divisor is the exact rate lowered with ten guard digits. A rate
    /// that cancels `shift` exactly would need a t-polynomial term and is
    /// rejected; subadditivity of the eigenvalues guarantees the solver never
    /// produces one.
    pub fn integrate_shifted(&self, shift: &PiRational, p: Precision) -> Result<ExpSum> {
        let bits = p.bits();
        let mut out = ExpSum::zero();
        for (r, c) in &self.terms {
            let rs = r + shift;
            if rs.is_zero() {
                return Err(Error::ResonantRate { rate: format!("{r:?}") });
            }
            let divisor = rs.to_float(p.with_guard(10));
            let d = c.div(&divisor, bits, RM);
            out.insert_combined(PiRational::zero(), d.clone(), bits);
            out.insert_combined(rs, d.neg(), bits);
        }
        Ok(out)
    }

    /// Value at t >= 0 in the working precision.
    pub fn eval(&self, t: f64, p: Precision) -> BigFloat {
        let bits = p.bits();
        let mut acc = BigFloat::from_f64(0.0, bits);
        let tb = BigFloat::from_f64(t, bits);
        for (r, c) in &self.terms {
            if r.is_zero() {
                acc = acc.add(c, bits, RM);
            } else {
                let rate = r.to_float(p);
                let e = precision::exp(&rate.mul(&tb, bits, RM).neg(), p);
                acc = acc.add(&c.mul(&e, bits, RM), bits, RM);
            }
        }
        acc
    }

    pub fn eval_f64(&self, t: f64, p: Precision) -> f64 {
        precision::to_f64(&self.eval(t, p))
    }

    /// Sum of all coefficients (the value at t = 0).
    pub fn value_at_zero(&self, p: Precision) -> BigFloat {
        let bits = p.bits();
        let mut acc = BigFloat::from_f64(0.0, bits);
        for c in self.terms.values() {
            acc = acc.add(c, bits, RM);
        }
        acc
    }

    /// Drop terms with |coeff| below the threshold.
    pub fn prune(&mut self, threshold: f64) {
        if threshold <= 0.0 {
            return;
        }
        self.terms
            .retain(|_, c| precision::to_f64(&c.abs()) >= threshold);
    }

    /// Largest f64-lowered rate overflowed or NaN anywhere?
    pub fn has_non_finite(&self) -> bool {
        self.terms.values().any(|c| c.is_nan() || c.is_inf())
    }

    /// Term count and a sup bound of |value| over a dense grid on [0, 50].
    pub fn stats(&self, p: Precision) -> ExpSumStats {
        let lowered: Vec<(f64, f64)> = self
            .terms
            .iter()
            .map(|(r, c)| (precision::to_f64(&r.to_float(p)), precision::to_f64(c)))
            .collect();
        let mut sup: f64 = 0.0;
        let mut t = 0.0f64;
        while t <= 50.0 {
            let v: f64 = lowered.iter().map(|(r, c)| c * (-r * t).exp()).sum();
            sup = sup.max(v.abs());
            t += 0.05;
        }
        ExpSumStats { term_count: self.terms.len(), sup_bound: sup }
    }

    pub fn to_raw(&self) -> RawExpSum {
        RawExpSum {
            terms: self
                .terms
                .iter()
                .map(|(r, c)| RawTerm { rate: r.clone(), coeff: precision::exact_decimal(c) })
                .collect(),
        }
    }

    pub fn from_raw(raw: &RawExpSum, p: Precision) -> Result<ExpSum> {
        let mut out = ExpSum::zero();
        for t in &raw.terms {
            let c = precision::parse_decimal(&t.coeff, p.bits())?;
            out.insert_combined(t.rate.clone(), c, p.bits());
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExpSumStats {
    pub term_count: usize,
    pub sup_bound: f64,
}

/// Serialization image: exact rates plus exact decimal coefficient strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawExpSum {
    pub terms: Vec<RawTerm>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawTerm {
    pub rate: PiRational,
    pub coeff: String,
}
