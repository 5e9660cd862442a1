//! Angular collision kernels and double-exponential quadrature for singular
//! angular integrands on (0, pi/4].

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Angular kernel description. `ExactInverseSinSq` is beta(theta) = sin^-2,
/// the s = 1/2 case with closed-form eigenvalues; `PowerLaw` is
/// beta(theta) = theta^(-1-2s). Custom kernels must be thread-safe and the
/// caller asserts beta(theta) * theta^(1+2s) stays bounded near zero.
#[derive(Clone)]
pub enum KernelSpec {
    ExactInverseSinSq,
    PowerLaw { s: f64 },
    Custom { s: f64, beta: Arc<dyn Fn(f64) -> f64 + Send + Sync> },
}

impl KernelSpec {
    pub fn power_law(s: f64) -> Result<Self> {
        if !(0.0 < s && s < 1.0) {
            return Err(Error::Usage(format!("singularity exponent s={s} not in (0,1)")));
        }
        Ok(KernelSpec::PowerLaw { s })
    }

    pub fn s(&self) -> f64 {
        match self {
            KernelSpec::ExactInverseSinSq => 0.5,
            KernelSpec::PowerLaw { s } | KernelSpec::Custom { s, .. } => *s,
        }
    }

    pub fn has_exact_path(&self) -> bool {
        matches!(self, KernelSpec::ExactInverseSinSq)
    }

    pub fn beta(&self, theta: f64) -> f64 {
        match self {
            KernelSpec::ExactInverseSinSq => {
                let s = theta.sin();
                1.0 / (s * s)
            }
            KernelSpec::PowerLaw { s } => theta.powf(-1.0 - 2.0 * s),
            KernelSpec::Custom { beta, .. } => beta(theta),
        }
    }
}

impl fmt::Debug for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelSpec::ExactInverseSinSq => write!(f, "ExactInverseSinSq"),
            KernelSpec::PowerLaw { s } => write!(f, "PowerLaw(s={s})"),
            KernelSpec::Custom { s, .. } => write!(f, "Custom(s={s})"),
        }
    }
}

impl PartialEq for KernelSpec {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (KernelSpec::ExactInverseSinSq, KernelSpec::ExactInverseSinSq) => true,
            (KernelSpec::PowerLaw { s: a }, KernelSpec::PowerLaw { s: b }) => a == b,
            _ => false,
        }
    }
}

impl Serialize for KernelSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("KernelSpec", 2)?;
        match self {
            KernelSpec::ExactInverseSinSq => {
                st.serialize_field("form", "exact_inv_sin_sq")?;
                st.serialize_field("s", &0.5)?;
            }
            KernelSpec::PowerLaw { s: v } => {
                st.serialize_field("form", "power_law")?;
                st.serialize_field("s", v)?;
            }
            KernelSpec::Custom { s: v, .. } => {
                st.serialize_field("form", "custom")?;
                st.serialize_field("s", v)?;
            }
        }
        st.end()
    }
}

impl<'de> Deserialize<'de> for KernelSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            form: String,
            s: f64,
        }
        let raw = Raw::deserialize(d)?;
        match raw.form.as_str() {
            "exact_inv_sin_sq" => Ok(KernelSpec::ExactInverseSinSq),
            "power_law" => KernelSpec::power_law(raw.s).map_err(D::Error::custom),
            "custom" => Err(D::Error::custom(
                "custom kernels carry a callable and cannot be deserialized",
            )),
            other => Err(D::Error::custom(format!("unknown kernel form {other:?}"))),
        }
    }
}

/// Node-doubling limit for tanh-sinh quadrature.
pub const MAX_LEVELS: u32 = 12;

/// Integral of `f` over (0, pi/4] by tanh-sinh quadrature with nodes clustered
/// double-exponentially at theta = 0.
///
/// `decay_order` declares how fast f vanishes at 0 (f * theta^-decay_order
/// bounded); it controls how tolerant the rule is of non-finite evaluations at
/// extreme nodes. Returns the value once the level-to-level error estimate
/// drops below `tol` relative, and `NonConvergence` if the estimate stagnates
/// above `tol` after 12 doublings.
pub fn singular_quadrature(
    f: impl Fn(f64) -> f64,
    decay_order: u32,
    tol: f64,
) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Usage(format!("tolerance {tol} must be positive")));
    }
    // theta(u) = (pi/4) / (1 + exp(-pi sinh u)), accurate near both endpoints
    let node = |u: f64| -> (f64, f64) {
        let v = PI * u.sinh();
        let ev = (-v).exp();
        if !ev.is_finite() {
            return (0.0, 0.0);
        }
        let theta = (PI / 4.0) / (1.0 + ev);
        let w = (PI * PI / 4.0) * u.cosh() * ev / ((1.0 + ev) * (1.0 + ev));
        (theta, w)
    };
    let quarter = PI / 4.0;
    let eval = |theta: f64| -> Option<f64> {
        if theta <= 0.0 || theta >= quarter {
            return None;
        }
        let y = f(theta);
        y.is_finite().then_some(y)
    };
    let u_max = 4.5f64;
    let mut h = 1.0f64;
    // level 0: u = 0, +-1, ..., +-4
    let mut sum = {
        let (t0, w0) = node(0.0);
        let mut s = eval(t0).map_or(0.0, |y| y * w0);
        let mut k = 1.0;
        while k <= u_max {
            for u in [k, -k] {
                let (t, w) = node(u);
                if w > 0.0 {
                    if let Some(y) = eval(t) {
                        s += y * w;
                    }
                }
            }
            k += 1.0;
        }
        s
    };
    let mut estimate = sum * h;
    let mut bad_nodes = 0u32;
    let allowed_bad = if decay_order > 0 { u32::MAX } else { 64 };
    let mut last_err = f64::INFINITY;
    for level in 1..=MAX_LEVELS {
        h *= 0.5;
        // new nodes at odd multiples of h
        let mut add = 0.0f64;
        let mut u = h;
        while u <= u_max {
            for uu in [u, -u] {
                let (t, w) = node(uu);
                if w > 0.0 {
                    match eval(t) {
                        Some(y) => add += y * w,
                        None if t > 0.0 => bad_nodes += 1,
                        None => {}
                    }
                }
            }
            u += 2.0 * h;
        }
        sum += add;
        let next = sum * h;
        let err = (next - estimate).abs();
        estimate = next;
        last_err = err;
        if bad_nodes > allowed_bad {
            return Err(Error::NonConvergence { achieved: err, tol });
        }
        if level >= 2 && err <= tol * estimate.abs().max(f64::MIN_POSITIVE) {
            return Ok(estimate);
        }
    }
    Err(Error::NonConvergence { achieved: last_err, tol })
}
