//! Exact arithmetic over numbers a + b*pi and closed-form trigonometric power
//! integrals on [0, pi/4].
//!
//! Every linear eigenvalue and every angular integral of the sin^-2 kernel is
//! exactly of this form, so downstream rate arithmetic never rounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::precision::{self, Precision, RM};
use astro_float::BigFloat;

/// Exact number `rat + pi_coeff * pi` with arbitrary-precision rational parts.
///
/// Equality and ordering are componentwise/structural (pi is transcendental,
/// so the representation is unique); use [`PiRational::numeric_cmp`] for
/// comparisons by value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiRational {
    rat: BigRational,
    pi_coeff: BigRational,
}

impl PiRational {
    pub fn new(rat: BigRational, pi_coeff: BigRational) -> Self {
        PiRational { rat, pi_coeff }
    }

    pub fn zero() -> Self {
        PiRational {
            rat: BigRational::zero(),
            pi_coeff: BigRational::zero(),
        }
    }

    pub fn from_integers(num: i64, den: i64, pi_num: i64, pi_den: i64) -> Self {
        PiRational {
            rat: BigRational::new(BigInt::from(num), BigInt::from(den)),
            pi_coeff: BigRational::new(BigInt::from(pi_num), BigInt::from(pi_den)),
        }
    }

    pub fn rat_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn pi_part(&self) -> &BigRational {
        &self.pi_coeff
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.pi_coeff.is_zero()
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        PiRational {
            rat: &self.rat * q,
            pi_coeff: &self.pi_coeff * q,
        }
    }

    /// Lower to a float with relative error below 10^(1-digits),
    /// rounding to nearest-even.
    pub fn to_float(&self, p: Precision) -> BigFloat {
        let work = p.bits() + 32;
        let r = precision::rational_to_big(&self.rat, work);
        let c = precision::rational_to_big(&self.pi_coeff, work);
        let pi = precision::with_consts(|cc| cc.pi(work, RM));
        let mut v = r.add(&c.mul(&pi, work, RM), work, RM);
        v.set_precision(p.bits(), RM).expect("precision reduce");
        v
    }

    pub fn to_f64(&self) -> f64 {
        precision::to_f64(&self.to_float(Precision::new(20)))
    }

    /// Exact sign of the value, by interval bounds on pi at escalating
    /// precision. Terminates because a + b*pi = 0 only when a = b = 0.
    pub fn numeric_sign(&self) -> Ordering {
        if self.pi_coeff.is_zero() {
            return rational_sign(&self.rat);
        }
        if self.rat.is_zero() {
            return rational_sign(&self.pi_coeff);
        }
        if self.rat.is_positive() == self.pi_coeff.is_positive() {
            return rational_sign(&self.rat);
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = precision::pi_bounds(bits);
            let pi_lo = precision::big_to_rational(&lo).expect("finite");
            let pi_hi = precision::big_to_rational(&hi).expect("finite");
            let (a, b) = if self.pi_coeff.is_positive() {
                (&self.rat + &self.pi_coeff * &pi_lo, &self.rat + &self.pi_coeff * &pi_hi)
            } else {
                (&self.rat + &self.pi_coeff * &pi_hi, &self.rat + &self.pi_coeff * &pi_lo)
            };
            if a.is_positive() {
                return Ordering::Greater;
            }
            if b.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
            assert!(bits <= 1 << 22, "sign resolution runaway for {self:?}");
        }
    }

    pub fn numeric_cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).numeric_sign()
    }

    pub fn is_numerically_positive(&self) -> bool {
        self.numeric_sign() == Ordering::Greater
    }
}

fn rational_sign(r: &BigRational) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl Add for PiRational {
    type Output = PiRational;
    fn add(self, rhs: PiRational) -> PiRational {
        PiRational {
            rat: self.rat + rhs.rat,
            pi_coeff: self.pi_coeff + rhs.pi_coeff,
        }
    }
}

impl<'a> Add<&'a PiRational> for &'a PiRational {
    type Output = PiRational;
    fn add(self, rhs: &PiRational) -> PiRational {
        PiRational {
            rat: &self.rat + &rhs.rat,
            pi_coeff: &self.pi_coeff + &rhs.pi_coeff,
        }
    }
}

impl Sub for PiRational {
    type Output = PiRational;
    fn sub(self, rhs: PiRational) -> PiRational {
        PiRational {
            rat: self.rat - rhs.rat,
            pi_coeff: self.pi_coeff - rhs.pi_coeff,
        }
    }
}

impl<'a> Sub<&'a PiRational> for &'a PiRational {
    type Output = PiRational;
    fn sub(self, rhs: &PiRational) -> PiRational {
        PiRational {
            rat: &self.rat - &rhs.rat,
            pi_coeff: &self.pi_coeff - &rhs.pi_coeff,
        }
    }
}

impl Neg for PiRational {
    type Output = PiRational;
    fn neg(self) -> PiRational {
        PiRational {
            rat: -self.rat,
            pi_coeff: -self.pi_coeff,
        }
    }
}

impl fmt::Debug for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*pi)", self.rat, self.pi_coeff)
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for PiRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PiRational", 2)?;
        st.serialize_field("rat", &self.rat.to_string())?;
        st.serialize_field("pi", &self.pi_coeff.to_string())?;
        st.end()
    }
}

/// Parse "p/q" or a plain integer into an exact rational.
pub fn parse_rational_str(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let num: BigInt = n.trim().parse().ok()?;
            let den: BigInt = d.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(BigRational::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().ok()?;
            Some(BigRational::from(num))
        }
    }
}

impl<'de> Deserialize<'de> for PiRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rat: String,
            pi: String,
        }
        let raw = Raw::deserialize(d)?;
        let rat = parse_rational_str(&raw.rat)
            .ok_or_else(|| D::Error::custom(format!("bad rational {:?}", raw.rat)))?;
        let pi_coeff = parse_rational_str(&raw.pi)
            .ok_or_else(|| D::Error::custom(format!("bad rational {:?}", raw.pi)))?;
        Ok(PiRational::new(rat, pi_coeff))
    }
}

/// Exact square root of a nonnegative rational, kept un-lowered so callers
/// choose their own precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtRationalFactor {
    radicand: String,
}

impl SqrtRationalFactor {
    pub fn new(radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "radicand must be nonnegative");
        SqrtRationalFactor {
            radicand: radicand.to_string(),
        }
    }

    pub fn radicand(&self) -> BigRational {
        parse_rational_str(&self.radicand).expect("stored radicand is valid")
    }

    pub fn to_float(&self, p: Precision) -> BigFloat {
        precision::sqrt_rational(&self.radicand(), p)
    }

    pub fn to_f64(&self) -> f64 {
        precision::to_f64(&self.to_float(Precision::new(20)))
    }
}

/// Exact value of the integral of sin^(2a) * cos^(2b) over [0, pi/4].
///
/// Computed by exponent-reduction recurrences, first in `a` then in `b`; the
/// base case contributes pi/4 and every boundary term is rational because
/// sin^2 = cos^2 = 1/2 at pi/4.
pub fn trig_power_integral(a: u32, b: u32) -> PiRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    // W(0,0) = pi/4
    let mut w = PiRational::new(
        BigRational::zero(),
        BigRational::new(BigInt::one(), BigInt::from(4)),
    );
    // raise b: W(0,k) = (1/2)^k/(2k) + (2k-1)/(2k) * W(0,k-1)
    for k in 1..=b {
        let coeff = BigRational::new(BigInt::from(2 * k as i64 - 1), BigInt::from(2 * k as i64));
        let boundary = half.pow(k as i32) / BigRational::from(BigInt::from(2 * k as i64));
        w = w.mul_rational(&coeff);
        w = PiRational::new(w.rat + boundary, w.pi_coeff);
    }
    // raise a: W(j,b) = -(1/2)^(j+b)/(2j+2b) + (2j-1)/(2j+2b) * W(j-1,b)
    for j in 1..=a {
        let m = 2 * (j + b) as i64;
        let coeff = BigRational::new(BigInt::from(2 * j as i64 - 1), BigInt::from(m));
        let boundary = half.pow((j + b) as i32) / BigRational::from(BigInt::from(m));
        w = w.mul_rational(&coeff);
        w = PiRational::new(w.rat - boundary, w.pi_coeff);
    }
    w
}
