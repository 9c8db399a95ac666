//! Truncated multivariate power series and the hypergeometric series itself.
//!
//! Coefficients are stored on total-degree shells: `shells[s]` holds every
//! coefficient with |m| = s, ordered lexicographically in m.  The shell layout
//! makes the operators that appear in the defining PDE system cheap: Euler
//! operators are diagonal, multiplication by x_i shifts shells up by one, a
//! partial derivative shifts them down.
//!
//! The hypergeometric coefficients are produced by ratio recurrences, one
//! along the total degree for the (alpha)/(gamma) part and one per axis for
//! the (beta) part, never by independent Pochhammer products; this avoids
//! overflow and keeps neighbouring coefficients consistent to rounding.

use num_complex::Complex64;

use crate::error::Error;
use crate::gamma::gamma;
use crate::params::HGParams;
use crate::quad::{ComplexGaussJacobiRule, GaussJacobiRule};
use crate::Result;

/// Exponent vector of a monomial; entry i is the power of x_i.
pub type MultiIndex = Vec<usize>;

/// Exact binomial coefficient, sized for shell bookkeeping.
fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 1..=k {
        r = r * ((n - k + i) as u64) / (i as u64);
    }
    r
}

/// Number of multi-indices with `parts` entries summing to `total`.
pub fn shell_size(total: usize, parts: usize) -> usize {
    binom(total + parts - 1, parts - 1) as usize
}

/// Position of `m` within its shell under ascending lexicographic order.
pub fn rank_in_shell(m: &[usize]) -> usize {
    let parts = m.len();
    let mut s_rem: usize = m.iter().sum();
    let mut acc: u64 = 0;
    for j in 0..parts.saturating_sub(1) {
        let k = parts - 1 - j;
        acc += binom(s_rem + k, k) - binom(s_rem - m[j] + k, k);
        s_rem -= m[j];
    }
    acc as usize
}

/// Iterates the multi-indices of one shell in ascending lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Compositions {
    assert!(parts >= 1, "need at least one part");
    let mut first = vec![0usize; parts];
    first[parts - 1] = total;
    Compositions { next: Some(first) }
}

pub struct Compositions {
    next: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let cur = self.next.take()?;
        let parts = cur.len();
        let mut tail = 0usize;
        for j in (0..parts.saturating_sub(1)).rev() {
            tail += cur[j + 1];
            if tail > 0 {
                let mut succ = cur.clone();
                succ[j] += 1;
                for entry in succ.iter_mut().skip(j + 1) {
                    *entry = 0;
                }
                succ[parts - 1] = tail - 1;
                self.next = Some(succ);
                break;
            }
        }
        Some(cur)
    }
}

/// A power series truncated at a total degree, on dense shell storage.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    n_vars: usize,
    degree: usize,
    shells: Vec<Vec<Complex64>>,
}

impl TruncatedSeries {
    pub fn zero(n_vars: usize, degree: usize) -> Self {
        assert!(n_vars >= 1);
        let shells = (0..=degree)
            .map(|s| vec![Complex64::new(0.0, 0.0); shell_size(s, n_vars)])
            .collect();
        Self { n_vars, degree, shells }
    }

    pub fn constant(c: Complex64, n_vars: usize, degree: usize) -> Self {
        let mut ts = Self::zero(n_vars, degree);
        ts.shells[0][0] = c;
        ts
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of x^m; m must lie within the truncation order.
    pub fn coeff(&self, m: &[usize]) -> Complex64 {
        assert_eq!(m.len(), self.n_vars, "multi-index length mismatch");
        let s: usize = m.iter().sum();
        assert!(s <= self.degree, "coefficient beyond truncation order");
        self.shells[s][rank_in_shell(m)]
    }

    pub fn set_coeff(&mut self, m: &[usize], v: Complex64) {
        assert_eq!(m.len(), self.n_vars);
        let s: usize = m.iter().sum();
        assert!(s <= self.degree);
        self.shells[s][rank_in_shell(m)] = v;
    }

    /// Applies a diagonal operator: each coefficient is replaced by
    /// f(m, coefficient).
    pub fn map_indexed<F: Fn(&[usize], Complex64) -> Complex64>(&self, f: F) -> Self {
        let mut out = self.clone();
        for (s, shell) in out.shells.iter_mut().enumerate() {
            for (r, m) in compositions(s, self.n_vars).enumerate() {
                shell[r] = f(&m, self.shells[s][r]);
            }
        }
        out
    }

    /// Sum, truncated to the smaller of the two orders.
    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a + b)
    }

    /// Difference, truncated to the smaller of the two orders.
    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        let degree = self.degree.min(rhs.degree);
        let mut out = Self::zero(self.n_vars, degree);
        for s in 0..=degree {
            for r in 0..out.shells[s].len() {
                out.shells[s][r] = f(self.shells[s][r], rhs.shells[s][r]);
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for shell in &mut out.shells {
            for v in shell.iter_mut() {
                *v *= c;
            }
        }
        out
    }

    /// Multiplication by x_i, truncated back to the same order (the shifted
    /// top shell falls off the end).
    pub fn mul_var(&self, i: usize) -> Self {
        assert!(i >= 1 && i <= self.n_vars, "axis index is 1-based");
        let mut out = Self::zero(self.n_vars, self.degree);
        for s in 1..=self.degree {
            for (r, mut m) in compositions(s, self.n_vars).enumerate() {
                if m[i - 1] >= 1 {
                    m[i - 1] -= 1;
                    out.shells[s][r] = self.shells[s - 1][rank_in_shell(&m)];
                }
            }
        }
        out
    }

    /// Partial derivative along x_i; the order drops by one.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i >= 1 && i <= self.n_vars, "axis index is 1-based");
        let degree = self.degree.saturating_sub(1);
        let mut out = Self::zero(self.n_vars, degree);
        if self.degree == 0 {
            return out;
        }
        for s in 0..=degree {
            for (r, mut m) in compositions(s, self.n_vars).enumerate() {
                m[i - 1] += 1;
                out.shells[s][r] =
                    (m[i - 1] as f64) * self.shells[s + 1][rank_in_shell(&m)];
            }
        }
        out
    }

    /// Euler operator x_i d/dx_i: multiplies the coefficient of x^m by m_i.
    pub fn euler(&self, i: usize) -> Self {
        assert!(i >= 1 && i <= self.n_vars);
        self.map_indexed(|m, c| c * m[i - 1] as f64)
    }

    /// Sum of all Euler operators: multiplies the coefficient of x^m by |m|.
    pub fn euler_sum(&self) -> Self {
        let mut out = self.clone();
        for (s, shell) in out.shells.iter_mut().enumerate() {
            for v in shell.iter_mut() {
                *v *= s as f64;
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.shells
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_through(&self, degree: usize) -> f64 {
        self.shells[..=degree.min(self.degree)]
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Plain evaluation of the truncated polynomial (no tail estimate).
    pub fn eval(&self, x: &[Complex64]) -> Result<Complex64> {
        Ok(self.eval_with_tail(x)?.value)
    }

    /// Evaluates the polynomial and estimates the discarded tail.
    ///
    /// Shells are summed from the highest total degree down so the small
    /// terms accumulate first.  The tail estimate is the absolute mass of the
    /// top shell times r/(1-r) with r = max |x_i|, the geometric-decay
    /// heuristic appropriate inside the unit polydisc; outside it the bound
    /// is reported as infinite.
    pub fn eval_with_tail(&self, x: &[Complex64]) -> Result<SeriesValue> {
        if x.len() != self.n_vars {
            return Err(Error::DomainError(format!(
                "series in {} variables evaluated at a point of length {}",
                self.n_vars,
                x.len()
            )));
        }
        let mut pow: Vec<Vec<Complex64>> = Vec::with_capacity(self.n_vars);
        for &xi in x {
            let mut col = Vec::with_capacity(self.degree + 1);
            let mut p = Complex64::new(1.0, 0.0);
            for _ in 0..=self.degree {
                col.push(p);
                p *= xi;
            }
            pow.push(col);
        }

        let monomial = |m: &[usize]| -> Complex64 {
            m.iter()
                .enumerate()
                .fold(Complex64::new(1.0, 0.0), |acc, (i, &mi)| acc * pow[i][mi])
        };

        let mut value = Complex64::new(0.0, 0.0);
        let mut top_mass = 0.0f64;
        for s in (0..=self.degree).rev() {
            let mut shell_sum = Complex64::new(0.0, 0.0);
            for (r, m) in compositions(s, self.n_vars).enumerate() {
                let term = self.shells[s][r] * monomial(&m);
                shell_sum += term;
                if s == self.degree {
                    top_mass += term.norm();
                }
            }
            value += shell_sum;
        }

        let r = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let tail_bound = if top_mass == 0.0 {
            0.0
        } else if r < 1.0 {
            top_mass * r / (1.0 - r)
        } else {
            f64::INFINITY
        };
        Ok(SeriesValue { value, tail_bound })
    }
}

/// Value of a truncated series together with a heuristic tail estimate.
#[derive(Debug, Clone, Copy)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// Coefficients of the hypergeometric series through total degree `degree`.
///
/// The shell factor S(s) = prod_k (alpha_k)_s / (gamma_k)_s advances by the
/// ratio prod_k (alpha_k + s) / (gamma_k + s); the axis tables advance by
/// (beta_i + m) / (m + 1).  Non-resonance of gamma (checked when the
/// parameters were built) keeps every divisor away from zero.
pub fn series_coefficients(hp: &HGParams, degree: usize) -> TruncatedSeries {
    let n = hp.n_vars();
    let mut shell_factor = Vec::with_capacity(degree + 1);
    let mut s_val = Complex64::new(1.0, 0.0);
    for s in 0..=degree {
        shell_factor.push(s_val);
        let mut ratio = Complex64::new(1.0, 0.0);
        for k in 0..hp.alpha().len() {
            ratio *= (hp.alpha()[k] + s as f64) / (hp.gamma()[k] + s as f64);
        }
        s_val *= ratio;
    }

    let mut axis: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut col = Vec::with_capacity(degree + 1);
        let mut t = Complex64::new(1.0, 0.0);
        for m in 0..=degree {
            col.push(t);
            t *= (hp.beta()[i] + m as f64) / (m as f64 + 1.0);
        }
        axis.push(col);
    }

    let mut ts = TruncatedSeries::zero(n, degree);
    for s in 0..=degree {
        for (r, m) in compositions(s, n).enumerate() {
            let mut c = shell_factor[s];
            for (i, &mi) in m.iter().enumerate() {
                c *= axis[i][mi];
            }
            ts.shells[s][r] = c;
        }
    }
    ts
}

/// Evaluates the hypergeometric series at x, with the tail estimate.
pub fn eval_series(hp: &HGParams, x: &[Complex64], degree: usize) -> Result<SeriesValue> {
    series_coefficients(hp, degree).eval_with_tail(x)
}

/// Residual series of the i-th defining equation,
///
/// ```text
/// { x_i (beta_i + d_i) prod_k (alpha_k + D)  -  d_i prod_k (gamma_k - 1 + D) } F,
/// ```
///
/// where d_i is the i-th Euler operator and D their sum.  Applied to the
/// truncated coefficients the residual vanishes identically through the full
/// truncation order: the top shell of the first term only consumes
/// coefficients of degree one lower.
pub fn hg_pde_residual(hp: &HGParams, degree: usize, i: usize) -> TruncatedSeries {
    assert!(i >= 1 && i <= hp.n_vars(), "equation index is 1-based");
    let ts = series_coefficients(hp, degree);

    let after_alpha = ts.map_indexed(|m, c| {
        let s: usize = m.iter().sum();
        let factor = hp
            .alpha()
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, &a| acc * (a + s as f64));
        c * factor
    });
    let after_beta = after_alpha.map_indexed(|m, c| c * (hp.beta()[i - 1] + m[i - 1] as f64));
    let term1 = after_beta.mul_var(i);

    let term2 = ts.map_indexed(|m, c| {
        let s: usize = m.iter().sum();
        let factor = hp
            .gamma()
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, &g| acc * (g - 1.0 + s as f64));
        c * factor * m[i - 1] as f64
    });

    term1.sub(&term2)
}

/// Node count per tensor axis for the integral representation.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub nodes_per_axis: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { nodes_per_axis: 48 }
    }
}

/// Evaluates the Euler-type integral representation
///
/// ```text
/// prod_k Gamma(gamma_k) / (Gamma(alpha_k) Gamma(gamma_k - alpha_k))
///   * int over [0,1]^(L-1) of
///       prod_k z_k^(alpha_k - 1) (1 - z_k)^(gamma_k - alpha_k - 1)
///       prod_i (1 - x_i z_1 ... z_(L-1))^(-beta_i)  dz
/// ```
///
/// by a tensor-product Gauss-Jacobi rule.  Axes with real exponents use the
/// classical rule; a complex alpha_k or gamma_k puts the whole endpoint
/// exponent into a complex-symmetric Jacobi measure, because leaving the
/// unimodular factors (1 -+ t)^(i Im c) in the integrand makes them oscillate
/// without limit at the endpoints and caps the rule at algebraic accuracy.
/// Requires Re gamma_k > Re alpha_k > 0 and x in the open unit polydisc.
pub fn eval_integral(hp: &HGParams, x: &[Complex64], spec: &QuadratureSpec) -> Result<Complex64> {
    let axes = hp.l() - 1;
    if x.len() != hp.n_vars() {
        return Err(Error::DomainError(format!(
            "expected {} coordinates, got {}",
            hp.n_vars(),
            x.len()
        )));
    }
    for (k, (&a, &g)) in hp.alpha().iter().zip(hp.gamma()).enumerate() {
        if !(g.re > a.re && a.re > 0.0) {
            return Err(Error::DomainError(format!(
                "integral representation needs Re gamma > Re alpha > 0, violated at slot {} (alpha = {a}, gamma = {g})",
                k + 1
            )));
        }
    }
    if let Some(bad) = x.iter().find(|z| z.norm() >= 1.0) {
        return Err(Error::DomainError(format!(
            "integral representation evaluated outside the unit polydisc at x = {bad}"
        )));
    }

    // Per-axis rule with the affine map [0,1] -> [-1,1] folded in.
    struct Axis {
        z: Vec<Complex64>,
        w: Vec<Complex64>,
    }
    let ln2 = std::f64::consts::LN_2;
    let mut prefactor = Complex64::new(1.0, 0.0);
    let mut axes_data = Vec::with_capacity(axes);
    for k in 0..axes {
        let a = hp.alpha()[k];
        let g = hp.gamma()[k];
        prefactor *= gamma(g) / (gamma(a) * gamma(g - a));
        prefactor *= ((Complex64::new(1.0, 0.0) - g) * ln2).exp();
        let (z, w) = if a.im == 0.0 && g.im == 0.0 {
            let rule = GaussJacobiRule::new(spec.nodes_per_axis, (g - a).re - 1.0, a.re - 1.0)?;
            (
                rule.nodes.iter().map(|&t| Complex64::new((1.0 + t) / 2.0, 0.0)).collect(),
                rule.weights.iter().map(|&wt| Complex64::new(wt, 0.0)).collect(),
            )
        } else {
            let rule =
                ComplexGaussJacobiRule::new(spec.nodes_per_axis, g - a - 1.0, a - 1.0)?;
            (rule.nodes.iter().map(|&t| (1.0 + t) / 2.0).collect(), rule.weights)
        };
        axes_data.push(Axis { z, w });
    }

    // Tensor sum via an odometer over node tuples.
    let nn = spec.nodes_per_axis;
    let mut idx = vec![0usize; axes];
    let mut total = Complex64::new(0.0, 0.0);
    loop {
        let mut weight = Complex64::new(1.0, 0.0);
        let mut zprod = Complex64::new(1.0, 0.0);
        for (k, ax) in axes_data.iter().enumerate() {
            weight *= ax.w[idx[k]];
            zprod *= ax.z[idx[k]];
        }
        let mut integrand = Complex64::new(1.0, 0.0);
        for (i, &beta) in hp.beta().iter().enumerate() {
            let base = Complex64::new(1.0, 0.0) - x[i] * zprod;
            integrand *= (-beta * base.ln()).exp();
        }
        total += weight * integrand;

        // Advance the odometer.
        let mut k = 0;
        loop {
            if k == axes {
                return Ok(prefactor * total);
            }
            idx[k] += 1;
            if idx[k] < nn {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::pochhammer;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn shell_enumeration_is_lexicographic() {
        let got: Vec<Vec<usize>> = compositions(2, 3).collect();
        let expect = vec![
            vec![0, 0, 2],
            vec![0, 1, 1],
            vec![0, 2, 0],
            vec![1, 0, 1],
            vec![1, 1, 0],
            vec![2, 0, 0],
        ];
        assert_eq!(got, expect);
        assert_eq!(shell_size(2, 3), 6);
    }

    #[test]
    fn rank_agrees_with_enumeration_order() {
        for parts in 1..=4 {
            for total in 0..=6 {
                for (r, m) in compositions(total, parts).enumerate() {
                    assert_eq!(rank_in_shell(&m), r, "m = {m:?}");
                }
            }
        }
    }

    #[test]
    fn geometric_series_coefficients() {
        // alpha = gamma makes the shell factor 1; beta = 1 makes every axis
        // table 1, so all coefficients are 1 and F = 1/(1 - x).
        let hp = HGParams::new(vec![c(0.7, 0.0)], vec![c(1.0, 0.0)], vec![c(0.7, 0.0)]).unwrap();
        let ts = series_coefficients(&hp, 30);
        for m in 0..=30usize {
            assert!((ts.coeff(&[m]) - c(1.0, 0.0)).norm() < 1e-13);
        }
        let v = ts.eval_with_tail(&[c(0.4, 0.0)]).unwrap();
        let exact = 1.0 / 0.6;
        assert!((v.value.re - exact).abs() < 1e-10);
        // The discarded tail is a genuine geometric tail here, so the
        // estimate must cover the actual truncation error.
        assert!((v.value.re - exact).abs() <= v.tail_bound + 1e-15);
    }

    #[test]
    fn binomial_product_in_two_variables() {
        // alpha = gamma cancels the shell factor, so the series factors into
        // (1-x)^(-b1) (1-y)^(-b2).
        let b1 = c(0.8, 0.3);
        let b2 = c(-1.4, 0.1);
        let hp = HGParams::new(vec![c(0.5, 0.0)], vec![b1, b2], vec![c(0.5, 0.0)]).unwrap();
        let x = [c(0.3, -0.1), c(-0.2, 0.25)];
        let got = eval_series(&hp, &x, 60).unwrap().value;
        let expect = (-b1 * (c(1.0, 0.0) - x[0]).ln()).exp() * (-b2 * (c(1.0, 0.0) - x[1]).ln()).exp();
        assert!((got - expect).norm() < 1e-12, "got {got}, expect {expect}");
    }

    #[test]
    fn coefficients_match_pochhammer_products() {
        // Independent route: c(m) as a quotient of explicit rising factorials.
        let hp = HGParams::new(
            vec![c(0.31, 0.12), c(-0.77, 0.4)],
            vec![c(1.2, -0.3), c(0.45, 0.0)],
            vec![c(0.9, 0.05), c(1.6, -0.2)],
        )
        .unwrap();
        let ts = series_coefficients(&hp, 8);
        for s in 0..=8usize {
            for m in compositions(s, 2) {
                let mut expect = Complex64::new(1.0, 0.0);
                for &a in hp.alpha() {
                    expect *= pochhammer(a, s);
                }
                for (i, &b) in hp.beta().iter().enumerate() {
                    expect *= pochhammer(b, m[i]);
                }
                for &g in hp.gamma() {
                    expect /= pochhammer(g, s);
                }
                for &mi in &m {
                    expect /= pochhammer(c(1.0, 0.0), mi);
                }
                let got = ts.coeff(&m);
                assert!(
                    (got - expect).norm() <= 1e-14 * expect.norm().max(1.0),
                    "m = {m:?}: got {got}, expect {expect}"
                );
            }
        }
    }

    #[test]
    fn euler_operator_identities() {
        let hp = HGParams::new(vec![c(0.4, 0.2)], vec![c(0.9, 0.0), c(-0.6, 0.1)], vec![c(1.1, 0.0)]).unwrap();
        let ts = series_coefficients(&hp, 10);
        for i in 1..=2usize {
            // x_i d/dx_i as a composite equals the diagonal Euler operator.
            let composite = ts.partial(i).mul_var(i);
            let diagonal = ts.euler(i);
            let diff = composite.sub(&diagonal);
            assert_eq!(diff.degree(), 9);
            assert_eq!(diff.max_abs(), 0.0);
        }
        // Sum of the Euler operators equals the total-degree scaling, up to
        // the reassociation of |m| c into m_1 c + m_2 c.
        let sum = ts.euler(1).add(&ts.euler(2));
        let diff = sum.sub(&ts.euler_sum());
        assert!(diff.max_abs() <= 1e-15 * ts.max_abs());

        // Partial derivative of a constant is the zero series.
        let k = TruncatedSeries::constant(c(3.0, -1.0), 2, 0);
        assert_eq!(k.partial(1).max_abs(), 0.0);
    }

    #[test]
    fn pde_residual_vanishes_to_rounding() {
        let hp = HGParams::new(
            vec![c(0.31, 0.12), c(-0.77, 0.4)],
            vec![c(1.2, -0.3), c(0.45, 0.0)],
            vec![c(0.9, 0.05), c(1.6, -0.2)],
        )
        .unwrap();
        for i in 1..=2usize {
            let res = hg_pde_residual(&hp, 14, i);
            let scale = series_coefficients(&hp, 14).max_abs().max(1.0);
            assert!(res.max_abs() <= 1e-13 * scale, "residual {}", res.max_abs());
        }
    }

    #[test]
    fn integral_with_no_beta_weight_is_one() {
        // All beta = 0 makes the integrand the bare Beta density, so the
        // normalized integral is exactly 1 for any admissible alpha, gamma.
        let hp = HGParams::new(
            vec![c(0.8, 0.0), c(1.3, 0.0)],
            vec![c(0.0, 0.0)],
            vec![c(2.1, 0.0), c(2.9, 0.0)],
        )
        .unwrap();
        let v = eval_integral(&hp, &[c(0.4, 0.0)], &QuadratureSpec::default()).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-12, "got {v}");
    }

    #[test]
    fn integral_matches_series_for_gauss_case() {
        let hp = HGParams::new(vec![c(0.7, 0.0)], vec![c(0.55, 0.2)], vec![c(1.9, 0.0)]).unwrap();
        let x = [c(0.35, 0.1)];
        let by_series = eval_series(&hp, &x, 120).unwrap().value;
        let by_integral = eval_integral(&hp, &x, &QuadratureSpec::default()).unwrap();
        assert!(
            (by_series - by_integral).norm() < 1e-10,
            "series {by_series}, integral {by_integral}"
        );
    }

    #[test]
    fn integral_rejects_inadmissible_exponents_and_points() {
        let hp = HGParams::new(vec![c(2.5, 0.0)], vec![c(1.0, 0.0)], vec![c(1.0, 0.0)]).unwrap();
        assert!(eval_integral(&hp, &[c(0.2, 0.0)], &QuadratureSpec::default()).is_err());

        let hp = HGParams::new(vec![c(0.5, 0.0)], vec![c(1.0, 0.0)], vec![c(1.5, 0.0)]).unwrap();
        assert!(eval_integral(&hp, &[c(1.2, 0.0)], &QuadratureSpec::default()).is_err());
    }

    #[test]
    fn eval_dimension_mismatch_is_an_error() {
        let hp = HGParams::new(vec![c(0.5, 0.0)], vec![c(1.0, 0.0)], vec![c(1.5, 0.0)]).unwrap();
        assert!(eval_series(&hp, &[c(0.1, 0.0), c(0.2, 0.0)], 10).is_err());
    }
}
