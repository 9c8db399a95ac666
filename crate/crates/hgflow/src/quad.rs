//! Gauss-Jacobi quadrature on [-1, 1] with weight (1 - t)^a (1 + t)^b.
//!
//! Nodes and weights come from the Golub-Welsch algorithm: eigenvalues of the
//! symmetric tridiagonal Jacobi matrix of the orthogonal-polynomial recurrence,
//! weights from the squared first components of the normalized eigenvectors
//! scaled by the zeroth moment.  The endpoint exponents may be singular
//! (a, b > -1), which is the whole point: integrands with algebraic endpoint
//! singularities are handled by the weight, not by the integrand.
//!
//! [`ComplexGaussJacobiRule`] extends this to complex exponents with
//! Re a, Re b > -1, where the Jacobi matrix turns complex symmetric, the
//! nodes leave the real axis, and the weights lose positivity but keep the
//! degree 2n - 1 exactness.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::eigen::eigenvalues;
use crate::error::Error;
use crate::gamma::{gamma, gamma_real};
use crate::Result;

const ZERO_C: Complex64 = Complex64::new(0.0, 0.0);

/// A fixed Gauss-Jacobi rule: degree, exponents, nodes, and weights.
#[derive(Debug, Clone)]
pub struct GaussJacobiRule {
    pub a: f64,
    pub b: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussJacobiRule {
    /// Builds the n-point rule for weight (1 - t)^a (1 + t)^b, a, b > -1.
    pub fn new(n: usize, a: f64, b: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::DomainError("quadrature rule needs at least one node".into()));
        }
        if !(a > -1.0 && b > -1.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::DomainError(format!(
                "Jacobi exponents must satisfy a, b > -1, got a = {a}, b = {b}"
            )));
        }

        // Recurrence coefficients of the monic Jacobi polynomials.
        let diag = |k: usize| -> f64 {
            if k == 0 {
                (b - a) / (a + b + 2.0)
            } else {
                let k = k as f64;
                (b * b - a * a) / ((2.0 * k + a + b) * (2.0 * k + a + b + 2.0))
            }
        };
        let off = |k: usize| -> f64 {
            // beta_k for k >= 1; the subdiagonal entry is sqrt(beta_k).
            let kf = k as f64;
            let s = 2.0 * kf + a + b;
            if k == 1 {
                // The factor (1 + a + b) cancels against (s - 1); the reduced
                // form stays finite when a + b = -1.
                4.0 * (1.0 + a) * (1.0 + b) / (s * s * (s + 1.0))
            } else {
                (4.0 * kf * (kf + a) * (kf + b) * (kf + a + b)) / (s * s * (s + 1.0) * (s - 1.0))
            }
        };

        let jacobi = DMatrix::<f64>::from_fn(n, n, |r, c| {
            if r == c {
                diag(r)
            } else if r + 1 == c || c + 1 == r {
                off(r.max(c)).sqrt()
            } else {
                0.0
            }
        });

        let eig = jacobi.symmetric_eigen();

        // mu_0 = integral of the bare weight = 2^(a+b+1) B(a+1, b+1).
        let mu0 = 2f64.powf(a + b + 1.0) * gamma_real(a + 1.0) * gamma_real(b + 1.0)
            / gamma_real(a + b + 2.0);

        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|j| {
                let first = eig.eigenvectors[(0, j)];
                (eig.eigenvalues[j], mu0 * first * first)
            })
            .collect();
        pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());

        Ok(Self {
            a,
            b,
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        })
    }

    /// Approximates the weighted integral of `f` over [-1, 1].
    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(Complex64::new(0.0, 0.0), |acc, (&t, &w)| acc + w * f(t))
    }
}

/// Gauss-Jacobi rule for genuinely complex endpoint exponents.
///
/// The three-term recurrence coefficients continue verbatim to complex a, b;
/// the Jacobi matrix becomes complex symmetric instead of real symmetric.
/// Nodes are its eigenvalues, weights come from the Christoffel sums with
/// transpose squares (no conjugation):
///
/// ```text
/// w_j = mu_0 / sum_{k < n} p_k(lambda_j)^2
/// ```
///
/// for the orthonormal-normalized polynomials p_k.  Exactness through degree
/// 2n - 1 carries over as an algebraic identity; positivity of the weights
/// and realness of the nodes do not.  Splitting a complex exponent into a
/// real weight plus a unimodular factor would put an essential oscillation
/// (1 -+ t)^(i Im c) at the endpoints and reduce convergence to algebraic
/// order, so the whole exponent has to live in the measure.
#[derive(Debug, Clone)]
pub struct ComplexGaussJacobiRule {
    pub a: Complex64,
    pub b: Complex64,
    pub nodes: Vec<Complex64>,
    pub weights: Vec<Complex64>,
}

impl ComplexGaussJacobiRule {
    /// Builds the n-point rule for weight (1 - t)^a (1 + t)^b, Re a, Re b > -1.
    pub fn new(n: usize, a: Complex64, b: Complex64) -> Result<Self> {
        if n == 0 {
            return Err(Error::DomainError("quadrature rule needs at least one node".into()));
        }
        if !(a.re > -1.0 && b.re > -1.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::DomainError(format!(
                "Jacobi exponents must satisfy Re a, Re b > -1, got a = {a}, b = {b}"
            )));
        }

        let diag = |k: usize| -> Complex64 {
            if k == 0 {
                (b - a) / (a + b + 2.0)
            } else {
                let kf = k as f64;
                let s = 2.0 * kf + a + b;
                (b * b - a * a) / (s * (s + 2.0))
            }
        };
        let off = |k: usize| -> Complex64 {
            let kf = k as f64;
            let s = 2.0 * kf + a + b;
            if k == 1 {
                4.0 * (1.0 + a) * (1.0 + b) / (s * s * (s + 1.0))
            } else {
                4.0 * kf * (kf + a) * (kf + b) * (kf + a + b) / (s * s * (s + 1.0) * (s - 1.0))
            }
        };

        // One consistent square root per beta_k; the branch choice drops out
        // of both the spectrum and the squared Christoffel terms.
        let d: Vec<Complex64> = (0..n).map(diag).collect();
        let s: Vec<Complex64> = (0..=n).map(|k| if k == 0 { ZERO_C } else { off(k).sqrt() }).collect();

        let jacobi = DMatrix::<Complex64>::from_fn(n, n, |r, c| {
            if r == c {
                d[r]
            } else if r + 1 == c || c + 1 == r {
                s[r.max(c)]
            } else {
                ZERO_C
            }
        });
        let raw = eigenvalues(&jacobi)?;

        // Orthonormal ladder at z: values p_0..p_{n-1}, the end polynomial
        // p_n whose zeros are the nodes, and its derivative for polishing.
        let ladder = |z: Complex64| -> (Complex64, Complex64, Complex64) {
            let mut p_prev = ZERO_C;
            let mut p_cur = Complex64::new(1.0, 0.0);
            let mut dp_prev = ZERO_C;
            let mut dp_cur = ZERO_C;
            let mut christoffel = ZERO_C;
            for k in 0..n {
                christoffel += p_cur * p_cur;
                let p_next = ((z - d[k]) * p_cur - s[k] * p_prev) / s[k + 1];
                let dp_next = (p_cur + (z - d[k]) * dp_cur - s[k] * dp_prev) / s[k + 1];
                p_prev = p_cur;
                p_cur = p_next;
                dp_prev = dp_cur;
                dp_cur = dp_next;
            }
            (p_cur, dp_cur, christoffel)
        };

        let mu0 = ((a + b + 1.0) * std::f64::consts::LN_2).exp() * gamma(a + 1.0)
            * gamma(b + 1.0)
            / gamma(a + b + 2.0);

        let mut pairs: Vec<(Complex64, Complex64)> = Vec::with_capacity(n);
        for &lambda0 in &raw {
            // Two Newton steps sharpen the QR eigenvalue to a zero of p_n.
            let mut lambda = lambda0;
            for _ in 0..2 {
                let (p, dp, _) = ladder(lambda);
                if dp.norm() == 0.0 {
                    break;
                }
                lambda -= p / dp;
            }
            let (_, _, christoffel) = ladder(lambda);
            if christoffel.norm() == 0.0 {
                return Err(Error::DomainError(format!(
                    "degenerate Jacobi measure for a = {a}, b = {b}"
                )));
            }
            pairs.push((lambda, mu0 / christoffel));
        }
        pairs.sort_by(|p, q| p.0.re.partial_cmp(&q.0.re).unwrap());

        Ok(Self {
            a,
            b,
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        })
    }

    /// Approximates the weighted integral of `f` over [-1, 1].
    pub fn integrate<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(ZERO_C, |acc, (&t, &w)| acc + w * f(t))
    }
}
