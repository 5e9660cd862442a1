//! Working-precision context and conversions for arbitrary-precision floats.
//!
//! Rates and eigenvalues are exact; only coefficient arithmetic rounds, and it
//! always rounds to nearest-even so equal-precision runs are bit-identical
//! across platforms.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as IntSign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cell::RefCell;

use crate::error::{Error, Result};

pub const RM: RoundingMode = RoundingMode::ToEven;

const LOG2_10: f64 = 3.321928094887362;

/// Decimal working precision. Internally mapped to a binary mantissa length
/// with a few guard bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub fn new(digits: u32) -> Self {
        Precision {
            digits: digits.max(1),
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> usize {
        (self.digits as f64 * LOG2_10).ceil() as usize + 4
    }

    /// Same precision plus `extra` guard digits.
    pub fn with_guard(&self, extra: u32) -> Precision {
        Precision::new(self.digits + extra)
    }
}

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

pub fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

pub fn pi(p: Precision) -> BigFloat {
    with_consts(|cc| cc.pi(p.bits(), RM))
}

/// Pi rounded downward/upward at `bits` of mantissa; used for interval sign
/// resolution of exact a + b*pi values.
pub fn pi_bounds(bits: usize) -> (BigFloat, BigFloat) {
    with_consts(|cc| {
        (
            cc.pi(bits, RoundingMode::Down),
            cc.pi(bits, RoundingMode::Up),
        )
    })
}

/// Exact conversion of a big integer to a float (no rounding as long as the
/// requested precision covers the integer's bit length).
pub fn bigint_to_big(i: &BigInt, bits: usize) -> BigFloat {
    let (sign, digits) = i.to_u64_digits();
    if digits.is_empty() {
        return BigFloat::from_f64(0.0, bits);
    }
    let work = bits.max(64 * digits.len());
    let scale = BigFloat::from_f64(18446744073709551616.0, 64); // 2^64
    let mut acc = BigFloat::from_f64(0.0, work);
    for d in digits.iter().rev() {
        acc = acc.mul(&scale, work, RM);
        acc = acc.add(&BigFloat::from_u64(*d, 64), work, RM);
    }
    if sign == IntSign::Minus {
        acc = acc.neg();
    }
    acc
}

/// Rational lowered to a float at `bits`, rounding once in the division.
pub fn rational_to_big(r: &BigRational, bits: usize) -> BigFloat {
    let n = bigint_to_big(r.numer(), bits + 64);
    let d = bigint_to_big(r.denom(), bits + 64);
    n.div(&d, bits, RM)
}

pub fn sqrt_rational(r: &BigRational, p: Precision) -> BigFloat {
    let bits = p.bits();
    rational_to_big(r, bits + 32).sqrt(bits, RM)
}

pub fn exp(x: &BigFloat, p: Precision) -> BigFloat {
    with_consts(|cc| x.exp(p.bits(), RM, cc))
}

/// Lossy conversion to f64 (subnormal-safe two-step scaling).
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let (words, _n, sign, exp, _) = match x.as_raw_parts() {
        Some(parts) => parts,
        None => return f64::NAN,
    };
    let nw = words.len();
    let mut m = words[nw - 1] as u128;
    let mut used = 64i32;
    if nw >= 2 {
        m = (m << 64) | words[nw - 2] as u128;
        used = 128;
    }
    let e = exp - used;
    let v = if e.abs() > 900 {
        let e1 = if e > 0 { 900 } else { -900 };
        (m as f64) * (2f64).powi(e1) * (2f64).powi(e - e1)
    } else {
        (m as f64) * (2f64).powi(e)
    };
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Exact conversion to a rational: every finite float is mantissa * 2^k.
pub fn big_to_rational(x: &BigFloat) -> Option<BigRational> {
    if x.is_zero() {
        return Some(BigRational::zero());
    }
    let (words, _n, sign, exp, _) = x.as_raw_parts()?;
    let mut m = BigInt::zero();
    for d in words.iter().rev() {
        m = (m << 64) + d;
    }
    if sign == Sign::Neg {
        m = -m;
    }
    let k = exp as i64 - 64 * words.len() as i64;
    let r = if k >= 0 {
        BigRational::from(m << (k as usize))
    } else {
        BigRational::new(m, BigInt::from(1) << ((-k) as usize))
    };
    Some(r)
}

/// Exact decimal rendering: m * 2^k is written as m * 5^|k| with the decimal
/// point placed |k| digits in, so re-parsing at the original precision is
/// lossless.
pub fn exact_decimal(x: &BigFloat) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if x.is_nan() || x.is_inf() {
        return "nan".to_string();
    }
    let r = big_to_rational(x).expect("finite value");
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();
    // denominator is a power of two by construction
    let k = den.bits() - 1;
    let scaled = num * BigInt::from(5).pow(k as u32);
    let mut digits = scaled.to_string();
    let point = k as usize;
    let s = if point == 0 {
        digits
    } else {
        if digits.len() <= point {
            let pad = point - digits.len() + 1;
            digits = "0".repeat(pad) + &digits;
        }
        let split = digits.len() - point;
        let (int_part, frac_part) = digits.split_at(split);
        let frac = frac_part.trim_end_matches('0');
        if frac.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac}")
        }
    };
    if neg {
        format!("-{s}")
    } else {
        s
    }
}

pub fn parse_decimal(s: &str, bits: usize) -> Result<BigFloat> {
    if s.trim().is_empty() {
        return Err(Error::Format("empty decimal string".into()));
    }
    let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, bits, RM, cc));
    if v.is_nan() && !s.trim().eq_ignore_ascii_case("nan") {
        return Err(Error::Format(format!("invalid decimal string: {s:?}")));
    }
    Ok(v)
}
