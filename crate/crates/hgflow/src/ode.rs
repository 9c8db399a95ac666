//! Embedded Dormand-Prince 5(4) integrator for complex state vectors.
//!
//! Deliberately small: fixed tableau, PI-free step control with the usual
//! 0.9 safety factor and [0.2, 5] step-ratio clamp, FSAL reuse.  State is a
//! dense complex vector; the independent variable is real (a path parameter).

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::Error;
use crate::Result;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
// Fifth-order weights; the seventh stage evaluated at these is FSAL.
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Difference between the fifth- and embedded fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

pub struct Options {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12, max_steps: 100_000 }
    }
}

/// Integrates y' = f(s, y) from s0 to s1 (s0 < s1 or s0 > s1 both fine after
/// orienting; here we require s0 <= s1 and callers parameterize accordingly).
pub fn integrate<F>(f: F, s0: f64, s1: f64, y0: DVector<Complex64>, opts: &Options) -> Result<DVector<Complex64>>
where
    F: Fn(f64, &DVector<Complex64>) -> DVector<Complex64>,
{
    let span = s1 - s0;
    if span == 0.0 {
        return Ok(y0);
    }
    let dim = y0.len();
    let mut s = s0;
    let mut y = y0;
    let mut k1 = f(s, &y);
    let mut h = 0.01 * span;

    let err_norm = |err: &DVector<Complex64>, y_old: &DVector<Complex64>, y_new: &DVector<Complex64>| -> f64 {
        let mut acc = 0.0;
        for i in 0..dim {
            let scale = opts.atol + opts.rtol * y_old[i].norm().max(y_new[i].norm());
            let r = err[i].norm() / scale;
            acc += r * r;
        }
        (acc / dim as f64).sqrt()
    };

    for _ in 0..opts.max_steps {
        let remaining = s1 - s;
        if remaining.abs() <= 1e-14 * span.abs() {
            return Ok(y);
        }
        if h.abs() > remaining.abs() {
            h = remaining;
        }
        if h.abs() < 1e-14 * span.abs() {
            return Err(Error::StepUnderflow(format!("at s = {s}, step {h:+.3e}")));
        }

        let hc = Complex64::new(h, 0.0);
        let k2 = f(s + A21 * h, &(&y + &k1 * (hc * A21)));
        let k3 = f(s + 0.3 * h, &(&y + &k1 * (hc * A31) + &k2 * (hc * A32)));
        let k4 = f(s + 0.8 * h, &(&y + &k1 * (hc * A41) + &k2 * (hc * A42) + &k3 * (hc * A43)));
        let k5 = f(
            s + (8.0 / 9.0) * h,
            &(&y + &k1 * (hc * A51) + &k2 * (hc * A52) + &k3 * (hc * A53) + &k4 * (hc * A54)),
        );
        let k6 = f(
            s + h,
            &(&y + &k1 * (hc * A61) + &k2 * (hc * A62) + &k3 * (hc * A63) + &k4 * (hc * A64) + &k5 * (hc * A65)),
        );
        let y_new = &y + &k1 * (hc * B1) + &k3 * (hc * B3) + &k4 * (hc * B4) + &k5 * (hc * B5) + &k6 * (hc * B6);
        let k7 = f(s + h, &y_new);

        let err = &k1 * (hc * E1) + &k3 * (hc * E3) + &k4 * (hc * E4) + &k5 * (hc * E5) + &k6 * (hc * E6) + &k7 * (hc * E7);
        let e = err_norm(&err, &y, &y_new);

        if e <= 1.0 {
            s += h;
            y = y_new;
            k1 = k7;
            let factor = if e == 0.0 { 5.0 } else { (0.9 * e.powf(-0.2)).clamp(0.2, 5.0) };
            h *= factor;
        } else {
            h *= (0.9 * e.powf(-0.2)).clamp(0.2, 1.0);
        }
    }

    Err(Error::StepUnderflow(format!(
        "step budget of {} exhausted at s = {s}",
        opts.max_steps
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_exponential() {
        // y' = i y, y(0) = 1 has y(1) = exp(i).
        let f = |_s: f64, y: &DVector<Complex64>| y * Complex64::new(0.0, 1.0);
        let y0 = DVector::from_element(1, Complex64::new(1.0, 0.0));
        let y = integrate(f, 0.0, 1.0, y0, &Options::default()).unwrap();
        let expect = Complex64::new(0.0, 1.0).exp();
        assert!((y[0] - expect).norm() < 1e-10);
    }

    #[test]
    fn linear_system_with_varying_coefficient() {
        // y' = (2 s + i) y  =>  y(1) = exp(1 + i).
        let f = |s: f64, y: &DVector<Complex64>| y * Complex64::new(2.0 * s, 1.0);
        let y0 = DVector::from_element(1, Complex64::new(1.0, 0.0));
        let y = integrate(f, 0.0, 1.0, y0, &Options::default()).unwrap();
        let expect = Complex64::new(1.0, 1.0).exp();
        assert!((y[0] - expect).norm() < 1e-9);
    }

    #[test]
    fn two_dimensional_rotation() {
        // (u, v)' = (-v, u): rotation by angle 1 after unit time.
        let f = |_s: f64, y: &DVector<Complex64>| {
            DVector::from_vec(vec![-y[1], y[0]])
        };
        let y0 = DVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let y = integrate(f, 0.0, 1.0, y0, &Options::default()).unwrap();
        assert!((y[0].re - 1f64.cos()).abs() < 1e-10);
        assert!((y[1].re - 1f64.sin()).abs() < 1e-10);
    }

    #[test]
    fn zero_span_is_identity() {
        let f = |_s: f64, y: &DVector<Complex64>| y.clone();
        let y0 = DVector::from_element(3, Complex64::new(2.0, -1.0));
        let y = integrate(f, 0.5, 0.5, y0.clone(), &Options::default()).unwrap();
        assert_eq!(y, y0);
    }

    #[test]
    fn blowup_reports_step_underflow() {
        // y' = y^2 with y(0) = 1 blows up at s = 1; asking for the solution
        // at s = 2 must fail rather than silently return garbage.
        let f = |_s: f64, y: &DVector<Complex64>| DVector::from_vec(vec![y[0] * y[0]]);
        let y0 = DVector::from_element(1, Complex64::new(1.0, 0.0));
        let out = integrate(f, 0.0, 2.0, y0, &Options { max_steps: 10_000, ..Options::default() });
        assert!(matches!(out, Err(Error::StepUnderflow(_))));
    }
}
