//! Radial Gauss-Legendre quadrature used by projections and cross-checks.

use gauss_quad::GaussLegendre;
use std::num::NonZeroUsize;

/// Integral of f(r) * 4 pi r^2 over [0, r_max] with an n-node Gauss-Legendre rule.
pub fn radial_integral(f: impl Fn(f64) -> f64, r_max: f64, nodes: usize) -> f64 {
    let rule = GaussLegendre::new(NonZeroUsize::new(nodes).expect("node count"));
    rule.integrate(0.0, r_max, |r| 4.0 * std::f64::consts::PI * r * r * f(r))
}

/// Plain integral of f over [a, b].
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, nodes: usize) -> f64 {
    let rule = GaussLegendre::new(NonZeroUsize::new(nodes).expect("node count"));
    rule.integrate(a, b, f)
}
