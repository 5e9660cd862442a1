//! Independent numerical integration of the truncated coefficient ODE system,
//! used to validate the closed-form solver without sharing its code path.
//!
//! g_n' + lambda_n g_n = sum_{p+q=n, 2<=p,q<=n-2} mu_pq g_p g_q for n >= 2,
//! with g_0 = g_1 = 0. The reference stepper is fixed-step classical RK4;
//! an adaptive embedded pair is available when speed matters more than
//! byte-for-byte determinism across step choices.

use std::io::Write;

use crate::eigenvalues::EigenTable;
use crate::error::{Error, Result};
use crate::initial_data::SpectralCoeffs;
use crate::solver::SolutionSeries;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Stepper {
    /// Classical fourth-order Runge-Kutta with the given fixed step.
    Rk4 { step: f64 },
    /// Embedded Runge-Kutta-Fehlberg 4(5) with a relative tolerance.
    Rk45 { tol: f64 },
}

/// A numerical trajectory of the truncated system on a time grid.
#[derive(Clone, Debug)]
pub struct OdeRun {
    pub n_max: usize,
    pub times: Vec<f64>,
    /// values[i] holds g_0..g_N at times[i].
    pub values: Vec<Vec<f64>>,
    pub stepper: Stepper,
}

struct Rhs {
    lambda: Vec<f64>,
    mu: Vec<(usize, usize, f64)>,
}

impl Rhs {
    fn new(eigen: &EigenTable, n_max: usize) -> Result<Self> {
        if n_max > eigen.n_max() as usize {
            return Err(Error::ShapeMismatch(format!(
                "n_max {n_max} beyond eigenvalue table {}",
                eigen.n_max()
            )));
        }
        let lambda = (0..=n_max).map(|n| eigen.lambda_f64(n as u32)).collect();
        let mut mu = Vec::new();
        for n in 4..=n_max {
            for p in 2..=(n - 2) {
                let q = n - p;
                let v = eigen
                    .mu_f64(p as u32, q as u32)
                    .ok_or_else(|| Error::ShapeMismatch(format!("mu_{p},{q} missing")))?;
                mu.push((p, q, v));
            }
        }
        Ok(Rhs { lambda, mu })
    }

    fn eval(&self, g: &[f64], out: &mut [f64]) {
        for (n, o) in out.iter_mut().enumerate() {
            *o = -self.lambda[n] * g[n];
        }
        out[0] = 0.0;
        out[1] = 0.0;
        for &(p, q, m) in &self.mu {
            out[p + q] += m * g[p] * g[q];
        }
    }
}

/// Integrate the truncated system from t = 0, recording at multiples of
/// `record_dt` up to `t_end`.
pub fn integrate(
    coeffs: &SpectralCoeffs,
    eigen: &EigenTable,
    n_max: usize,
    t_end: f64,
    record_dt: f64,
    stepper: Stepper,
) -> Result<OdeRun> {
    if !(t_end > 0.0) || !(record_dt > 0.0) || record_dt > t_end {
        return Err(Error::Usage(format!(
            "bad time window: t_end {t_end}, record_dt {record_dt}"
        )));
    }
    if coeffs.len() < n_max + 1 {
        return Err(Error::ShapeMismatch(format!(
            "need {} coefficients, got {}",
            n_max + 1,
            coeffs.len()
        )));
    }
    let rhs = Rhs::new(eigen, n_max)?;
    let g0: Vec<f64> = (0..=n_max).map(|n| coeffs.value_f64(n)).collect();
    match stepper {
        Stepper::Rk4 { step } => rk4_run(&rhs, g0, t_end, record_dt, step, stepper),
        Stepper::Rk45 { tol } => rk45_run(&rhs, g0, t_end, record_dt, tol, stepper),
    }
}

fn rk4_run(
    rhs: &Rhs,
    g0: Vec<f64>,
    t_end: f64,
    record_dt: f64,
    step: f64,
    stepper: Stepper,
) -> Result<OdeRun> {
    if !(step > 0.0) {
        return Err(Error::Usage(format!("step {step} must be positive")));
    }
    // snap the step so every record time is an integer number of steps
    let per = (record_dt / step).round().max(1.0) as usize;
    let h = record_dt / per as f64;
    let records = (t_end / record_dt).round() as usize;
    let dim = g0.len();
    let mut g = g0.clone();
    let mut times = vec![0.0];
    let mut values = vec![g0];
    let (mut k1, mut k2, mut k3, mut k4) = (
        vec![0.0; dim],
        vec![0.0; dim],
        vec![0.0; dim],
        vec![0.0; dim],
    );
    let mut tmp = vec![0.0; dim];
    for rec in 1..=records {
        for _ in 0..per {
            rhs.eval(&g, &mut k1);
            for i in 0..dim {
                tmp[i] = g[i] + 0.5 * h * k1[i];
            }
            rhs.eval(&tmp, &mut k2);
            for i in 0..dim {
                tmp[i] = g[i] + 0.5 * h * k2[i];
            }
            rhs.eval(&tmp, &mut k3);
            for i in 0..dim {
                tmp[i] = g[i] + h * k3[i];
            }
            rhs.eval(&tmp, &mut k4);
            for i in 0..dim {
                g[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
        }
        times.push(rec as f64 * record_dt);
        values.push(g.clone());
    }
    Ok(OdeRun { n_max: dim - 1, times, values, stepper })
}

// Cash-Karp 4(5) tableau
const CK_A: [[f64; 5]; 5] = [
    [0.2, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0],
    [0.3, -0.9, 1.2, 0.0, 0.0],
    [-11.0 / 54.0, 2.5, -70.0 / 27.0, 35.0 / 27.0, 0.0],
    [
        1631.0 / 55296.0,
        175.0 / 512.0,
        575.0 / 13824.0,
        44275.0 / 110592.0,
        253.0 / 4096.0,
    ],
];
const CK_B5: [f64; 6] = [
    37.0 / 378.0,
    0.0,
    250.0 / 621.0,
    125.0 / 594.0,
    0.0,
    512.0 / 1771.0,
];
const CK_B4: [f64; 6] = [
    2825.0 / 27648.0,
    0.0,
    18575.0 / 48384.0,
    13525.0 / 55296.0,
    277.0 / 14336.0,
    0.25,
];

fn rk45_run(
    rhs: &Rhs,
    g0: Vec<f64>,
    t_end: f64,
    record_dt: f64,
    tol: f64,
    stepper: Stepper,
) -> Result<OdeRun> {
    if !(tol > 0.0) {
        return Err(Error::Usage(format!("tolerance {tol} must be positive")));
    }
    let dim = g0.len();
    let records = (t_end / record_dt).round() as usize;
    let mut g = g0.clone();
    let mut t = 0.0f64;
    let mut h = record_dt.min(1e-2);
    let mut times = vec![0.0];
    let mut values = vec![g0];
    let mut k = vec![vec![0.0; dim]; 6];
    let mut tmp = vec![0.0; dim];
    for rec in 1..=records {
        let target = rec as f64 * record_dt;
        while t < target - 1e-14 {
            if t + h > target {
                h = target - t;
            }
            rhs.eval(&g, &mut k[0]);
            for s in 1..6 {
                for i in 0..dim {
                    let mut acc = 0.0;
                    for (j, kj) in k.iter().enumerate().take(s) {
                        acc += CK_A[s - 1][j] * kj[i];
                    }
                    tmp[i] = g[i] + h * acc;
                }
                let (head, tail) = k.split_at_mut(s);
                let _ = head;
                rhs.eval(&tmp, &mut tail[0]);
            }
            let mut err: f64 = 0.0;
            let mut scale: f64 = 1e-30;
            for i in 0..dim {
                let mut e5 = 0.0;
                let mut e4 = 0.0;
                for (j, kj) in k.iter().enumerate() {
                    e5 += CK_B5[j] * kj[i];
                    e4 += CK_B4[j] * kj[i];
                }
                err = err.max((h * (e5 - e4)).abs());
                scale = scale.max(g[i].abs());
            }
            let rel = err / scale;
            if rel <= tol {
                for i in 0..dim {
                    let mut acc = 0.0;
                    for (j, kj) in k.iter().enumerate() {
                        acc += CK_B5[j] * kj[i];
                    }
                    g[i] += h * acc;
                }
                t += h;
            }
            let factor = if rel > 0.0 {
                0.9 * (tol / rel).powf(0.2)
            } else {
                2.0
            };
            h *= factor.clamp(0.2, 5.0);
            if h < 1e-13 {
                return Err(Error::StepSizeUnderflow { t });
            }
        }
        t = target;
        times.push(target);
        values.push(g.clone());
    }
    Ok(OdeRun { n_max: dim - 1, times, values, stepper })
}

/// Per-mode sup deviation between a numerical run and the closed-form series
/// on the run's grid, optionally ignoring times before `t_start`.
#[derive(Clone, Debug)]
pub struct CompareReport {
    pub per_mode: Vec<f64>,
    pub max: f64,
}

pub fn compare(run: &OdeRun, series: &SolutionSeries, t_start: f64) -> Result<CompareReport> {
    if run.n_max != series.n_max() {
        return Err(Error::ShapeMismatch(format!(
            "run has n_max {}, series {}",
            run.n_max,
            series.n_max()
        )));
    }
    let mut per_mode = vec![0.0f64; run.n_max + 1];
    for (i, &t) in run.times.iter().enumerate() {
        if t < t_start {
            continue;
        }
        let g = series.g_values(t);
        for n in 0..=run.n_max {
            let d = (run.values[i][n] - g[n]).abs();
            if d > per_mode[n] {
                per_mode[n] = d;
            }
        }
    }
    let max = per_mode.iter().cloned().fold(0.0, f64::max);
    Ok(CompareReport { per_mode, max })
}

/// CSV dump: t, g_0, ..., g_N.
pub fn write_run_csv(w: &mut impl Write, run: &OdeRun, digits: usize) -> Result<()> {
    write!(w, "t")?;
    for n in 0..=run.n_max {
        write!(w, ",g_{n}")?;
    }
    writeln!(w)?;
    for (i, t) in run.times.iter().enumerate() {
        write!(w, "{:.6e}", t)?;
        for v in &run.values[i] {
            write!(w, ",{:.*e}", digits, v)?;
        }
        writeln!(w)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenvalues::EigenTable;
    use crate::initial_data;
    use crate::kernel::KernelSpec;
    use crate::solver::{solve, SolverOptions};

    fn eigen(n: u32) -> EigenTable {
        EigenTable::build(n, KernelSpec::ExactInverseSinSq, 30).unwrap()
    }

    #[test]
    fn zero_data_stays_at_equilibrium() {
        let e = eigen(6);
        let c = initial_data::SpectralCoeffs::user_supplied(&[0.0; 7], 20).unwrap();
        let run = integrate(&c, &e, 6, 1.0, 0.25, Stepper::Rk4 { step: 1e-3 }).unwrap();
        for row in &run.values {
            assert!(row.iter().all(|v| *v == 0.0));
        }
    }

    #[test]
    fn single_mode_decays_linearly() {
        // only G_2 nonzero at N=3: g_2(t) = G_2 e^(-lambda_2 t), decoupled
        let e = eigen(3);
        let c = initial_data::SpectralCoeffs::user_supplied(&[0.0, 0.0, 0.8, 0.0], 20).unwrap();
        let run = integrate(&c, &e, 3, 2.0, 0.5, Stepper::Rk4 { step: 1e-4 }).unwrap();
        for (i, &t) in run.times.iter().enumerate() {
            let want = 0.8 * (-e.lambda_f64(2) * t).exp();
            assert!((run.values[i][2] - want).abs() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn rk4_matches_closed_form_measure() {
        let e = eigen(8);
        let c = initial_data::measure_coeffs(8, 30).unwrap();
        let s = solve(&c, &e, 8, SolverOptions::default()).unwrap();
        let run = integrate(&c, &e, 8, 2.0, 0.1, Stepper::Rk4 { step: 5e-4 }).unwrap();
        let report = compare(&run, &s, 0.0).unwrap();
        assert!(report.max < 1e-9, "max dev {}", report.max);
    }

    #[test]
    fn rk45_matches_closed_form() {
        let e = eigen(8);
        let c = initial_data::measure_coeffs(8, 30).unwrap();
        let s = solve(&c, &e, 8, SolverOptions::default()).unwrap();
        let run = integrate(&c, &e, 8, 2.0, 0.1, Stepper::Rk45 { tol: 1e-10 }).unwrap();
        let report = compare(&run, &s, 0.0).unwrap();
        assert!(report.max < 1e-7, "max dev {}", report.max);
    }

    #[test]
    fn rk4_error_scales_fourth_order() {
        let e = eigen(8);
        let c = initial_data::measure_coeffs(8, 30).unwrap();
        let s = solve(&c, &e, 8, SolverOptions::default()).unwrap();
        let coarse = integrate(&c, &e, 8, 1.0, 0.5, Stepper::Rk4 { step: 0.02 }).unwrap();
        let fine = integrate(&c, &e, 8, 1.0, 0.5, Stepper::Rk4 { step: 0.01 }).unwrap();
        let dc = compare(&coarse, &s, 0.0).unwrap().max;
        let df = compare(&fine, &s, 0.0).unwrap().max;
        let ratio = dc / df;
        assert!((8.0..=32.0).contains(&ratio), "order ratio {ratio}");
    }

    #[test]
    fn shape_mismatch_is_detected() {
        let e = eigen(8);
        let c = initial_data::measure_coeffs(8, 30).unwrap();
        let s = solve(&c, &e, 6, SolverOptions::default()).unwrap();
        let run = integrate(&c, &e, 8, 1.0, 0.5, Stepper::Rk4 { step: 1e-3 }).unwrap();
        assert!(matches!(compare(&run, &s, 0.0), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn csv_dump_shape() {
        let e = eigen(4);
        let c = initial_data::measure_coeffs(4, 20).unwrap();
        let run = integrate(&c, &e, 4, 0.5, 0.25, Stepper::Rk4 { step: 1e-3 }).unwrap();
        let mut buf = Vec::new();
        write_run_csv(&mut buf, &run, 10).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,g_0,g_1,g_2,g_3,g_4\n"));
        assert_eq!(text.lines().count(), 4);
    }
}
