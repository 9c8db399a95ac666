//! The integrable Pfaffian system satisfied by the vector of contiguous
//! hypergeometric functions, and analytic continuation of its solutions.
//!
//! The solution vector has rank N(L-1) + 1 and is ordered
//!
//! ```text
//! (y_0, y_1^(1), ..., y_{L-1}^(1), y_1^(2), ..., y_{L-1}^(N))
//! ```
//!
//! The system is logarithmic: d y = sum_i (E_i dlog x_i + F_i dlog(x_i - 1))
//! + sum_{i<j} G_ij dlog(x_i - x_j), with constant coefficient matrices built
//! from a_n = alpha_n - gamma_n and b_{i,n} = sum_{j != i} beta_j - gamma_n.
//!
//! Two independent routes to the derivative are kept deliberately separate:
//! `scalar_derivative` implements the componentwise equations and never
//! touches the matrices, while `omega_at` assembles the matrix-valued
//! connection; tests and downstream consumers cross-check one against the
//! other.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::Error;
use crate::ode;
use crate::params::HGParams;
use crate::series::{series_coefficients, TruncatedSeries};
use crate::Result;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Clearance below which a single evaluation point counts as singular.
const POINT_CLEARANCE: f64 = 1e-10;

/// Default clearance required of continuation paths.
pub const DEFAULT_PATH_CLEARANCE: f64 = 1e-6;

pub(crate) fn mat_max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// A value of the rank N(L-1) + 1 solution vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionVector {
    l: usize,
    n_vars: usize,
    data: DVector<Complex64>,
}

impl SolutionVector {
    pub fn rank_for(l: usize, n_vars: usize) -> usize {
        n_vars * (l - 1) + 1
    }

    pub fn new(l: usize, n_vars: usize, data: DVector<Complex64>) -> Self {
        assert_eq!(data.len(), Self::rank_for(l, n_vars), "rank mismatch");
        Self { l, n_vars, data }
    }

    pub fn zeros(l: usize, n_vars: usize) -> Self {
        Self { l, n_vars, data: DVector::from_element(Self::rank_for(l, n_vars), ZERO) }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn rank(&self) -> usize {
        self.data.len()
    }

    /// Flat position of y_n^(i); n and i are 1-based, position 0 is y_0.
    pub fn index(&self, n: usize, i: usize) -> usize {
        assert!(n >= 1 && n <= self.l - 1 && i >= 1 && i <= self.n_vars);
        1 + (i - 1) * (self.l - 1) + (n - 1)
    }

    pub fn y0(&self) -> Complex64 {
        self.data[0]
    }

    pub fn comp(&self, n: usize, i: usize) -> Complex64 {
        self.data[self.index(n, i)]
    }

    pub fn set_y0(&mut self, v: Complex64) {
        self.data[0] = v;
    }

    pub fn set_comp(&mut self, n: usize, i: usize, v: Complex64) {
        let k = self.index(n, i);
        self.data[k] = v;
    }

    pub fn data(&self) -> &DVector<Complex64> {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// The constant matrices of the logarithmic connection.
#[derive(Debug, Clone)]
pub struct PfaffianConnection {
    hp: HGParams,
    e_mats: Vec<DMatrix<Complex64>>,
    f_mats: Vec<DMatrix<Complex64>>,
    /// One matrix per unordered pair, keyed by (i, j) with i < j.
    g_mats: Vec<((usize, usize), DMatrix<Complex64>)>,
}

impl PfaffianConnection {
    pub fn new(hp: HGParams) -> Self {
        let l = hp.l();
        let n = hp.n_vars();
        let rank = SolutionVector::rank_for(l, n);
        let idx = |nn: usize, ii: usize| 1 + (ii - 1) * (l - 1) + (nn - 1);
        let a = |nn: usize| hp.alpha_n(nn) - hp.gamma_n(nn);
        let b = |ii: usize, nn: usize| {
            let sum: Complex64 = (1..=n).filter(|&j| j != ii).map(|j| hp.beta_i(j)).sum();
            sum - hp.gamma_n(nn)
        };

        let mut e_mats = Vec::with_capacity(n);
        let mut f_mats = Vec::with_capacity(n);
        for i in 1..=n {
            // E_i: nonzero only in row block i.
            let mut e = DMatrix::from_element(rank, rank, ZERO);
            for nn in 1..=l - 1 {
                let row = idx(nn, i);
                e[(row, 0)] = -a(nn);
                for j in 1..=n {
                    if j == i {
                        e[(row, idx(nn, i))] = b(i, nn);
                        for m in 1..nn {
                            e[(row, idx(m, i))] = a(nn);
                        }
                    } else {
                        e[(row, idx(nn, j))] = -hp.beta_i(j);
                    }
                }
            }
            e_mats.push(e);

            // F_i: row 0 and row block i.
            let mut f = DMatrix::from_element(rank, rank, ZERO);
            f[(0, 0)] = -hp.beta_i(i);
            for m in 1..=l - 1 {
                f[(0, idx(m, i))] = hp.beta_i(i);
            }
            for nn in 1..=l - 1 {
                let row = idx(nn, i);
                f[(row, 0)] = a(nn);
                for m in 1..=l - 1 {
                    f[(row, idx(m, i))] = -a(nn);
                }
            }
            f_mats.push(f);
        }

        let mut g_mats = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let mut g = DMatrix::from_element(rank, rank, ZERO);
                for nn in 1..=l - 1 {
                    g[(idx(nn, i), idx(nn, i))] = -hp.beta_i(j);
                    g[(idx(nn, i), idx(nn, j))] = hp.beta_i(j);
                    g[(idx(nn, j), idx(nn, i))] = hp.beta_i(i);
                    g[(idx(nn, j), idx(nn, j))] = -hp.beta_i(i);
                }
                g_mats.push(((i, j), g));
            }
        }

        Self { hp, e_mats, f_mats, g_mats }
    }

    pub fn hp(&self) -> &HGParams {
        &self.hp
    }

    pub fn rank(&self) -> usize {
        SolutionVector::rank_for(self.hp.l(), self.hp.n_vars())
    }

    /// a_n = alpha_n - gamma_n.
    pub fn a_n(&self, n: usize) -> Complex64 {
        self.hp.alpha_n(n) - self.hp.gamma_n(n)
    }

    /// b_{i,n} = sum over j != i of beta_j, minus gamma_n.
    pub fn b_in(&self, i: usize, n: usize) -> Complex64 {
        let sum: Complex64 = (1..=self.hp.n_vars())
            .filter(|&j| j != i)
            .map(|j| self.hp.beta_i(j))
            .sum();
        sum - self.hp.gamma_n(n)
    }

    pub fn e_mat(&self, i: usize) -> &DMatrix<Complex64> {
        &self.e_mats[i - 1]
    }

    pub fn f_mat(&self, i: usize) -> &DMatrix<Complex64> {
        &self.f_mats[i - 1]
    }

    /// The matrix attached to dlog(x_i - x_j); symmetric in the pair.
    pub fn g_mat(&self, i: usize, j: usize) -> &DMatrix<Complex64> {
        let key = (i.min(j), i.max(j));
        &self
            .g_mats
            .iter()
            .find(|(k, _)| *k == key)
            .expect("valid pair")
            .1
    }

    fn check_point(&self, x: &[Complex64], clearance: f64) -> Result<()> {
        if x.len() != self.hp.n_vars() {
            return Err(Error::DomainError(format!(
                "expected {} coordinates, got {}",
                self.hp.n_vars(),
                x.len()
            )));
        }
        for (i, &xi) in x.iter().enumerate() {
            if xi.norm() < clearance {
                return Err(Error::SingularPoint(format!("|x_{}| = {:.3e}", i + 1, xi.norm())));
            }
            if (xi - 1.0).norm() < clearance {
                return Err(Error::SingularPoint(format!(
                    "|x_{} - 1| = {:.3e}",
                    i + 1,
                    (xi - 1.0).norm()
                )));
            }
            for (j, &xj) in x.iter().enumerate().skip(i + 1) {
                if (xi - xj).norm() < clearance {
                    return Err(Error::SingularPoint(format!(
                        "|x_{} - x_{}| = {:.3e}",
                        i + 1,
                        j + 1,
                        (xi - xj).norm()
                    )));
                }
            }
        }
        Ok(())
    }

    fn omega_unchecked(&self, x: &[Complex64]) -> Vec<DMatrix<Complex64>> {
        let n = self.hp.n_vars();
        let mut out = Vec::with_capacity(n);
        for i in 1..=n {
            let xi = x[i - 1];
            let mut omega = &self.e_mats[i - 1] / xi + &self.f_mats[i - 1] / (xi - 1.0);
            for j in 1..=n {
                if j != i {
                    omega += self.g_mat(i, j) / (xi - x[j - 1]);
                }
            }
            out.push(omega);
        }
        out
    }

    /// The matrices Omega_i(x) with d y = sum_i Omega_i y dx_i.
    pub fn omega_at(&self, x: &[Complex64]) -> Result<Vec<DMatrix<Complex64>>> {
        self.check_point(x, POINT_CLEARANCE)?;
        Ok(self.omega_unchecked(x))
    }

    /// Max-norm of the curvature d Omega - Omega ^ Omega over all pairs,
    /// together with the scale max_i |Omega_i| squared for relative checks.
    ///
    /// The derivative terms are formed explicitly even though the pair
    /// (i, j) contributes the same matrix G_ij / (x_i - x_j)^2 to both
    /// partials; the cancellation is part of what is being verified.
    pub fn integrability_residual(&self, x: &[Complex64]) -> Result<IntegrabilityReport> {
        self.check_point(x, POINT_CLEARANCE)?;
        let omegas = self.omega_unchecked(x);
        let n = self.hp.n_vars();
        let norm_max = omegas.iter().map(mat_max_abs).fold(0.0, f64::max);
        let mut worst = 0.0f64;
        for i in 1..=n {
            for j in i + 1..=n {
                let xi = x[i - 1];
                let xj = x[j - 1];
                // d/dx_i of Omega_j: only the dlog(x_j - x_i) term moves.
                let d_i_omega_j = self.g_mat(i, j) / (xj - xi).powu(2);
                let d_j_omega_i = self.g_mat(i, j) / (xi - xj).powu(2);
                let commutator = &omegas[j - 1] * &omegas[i - 1] - &omegas[i - 1] * &omegas[j - 1];
                let residual = d_i_omega_j - d_j_omega_i + commutator;
                worst = worst.max(mat_max_abs(&residual));
            }
        }
        Ok(IntegrabilityReport { max_residual: worst, scale: (norm_max * norm_max).max(1.0) })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IntegrabilityReport {
    pub max_residual: f64,
    pub scale: f64,
}

/// Derivatives (d/dx_1 y, ..., d/dx_N y) straight from the componentwise
/// equations, bypassing the connection matrices entirely.
pub fn scalar_derivative(
    hp: &HGParams,
    x: &[Complex64],
    y: &SolutionVector,
) -> Result<Vec<SolutionVector>> {
    let l = hp.l();
    let n = hp.n_vars();
    assert_eq!(y.l(), l);
    assert_eq!(y.n_vars(), n);
    // Reuse the locus check of the connection without building matrices.
    if x.len() != n {
        return Err(Error::DomainError(format!("expected {n} coordinates, got {}", x.len())));
    }
    for (i, &xi) in x.iter().enumerate() {
        if xi.norm() < POINT_CLEARANCE || (xi - 1.0).norm() < POINT_CLEARANCE {
            return Err(Error::SingularPoint(format!("x_{} = {xi}", i + 1)));
        }
        for &xj in &x[i + 1..] {
            if (xi - xj).norm() < POINT_CLEARANCE {
                return Err(Error::SingularPoint(format!("x_{} = x_j = {xi}", i + 1)));
            }
        }
    }

    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let xi = x[i - 1];
        let beta_i = hp.beta_i(i);
        let mut d = SolutionVector::zeros(l, n);

        // (x_i - 1) dy_0/dx_i = beta_i (-y_0 + sum_m y_m^(i)).
        let bracket_i: Complex64 = -y.y0() + (1..=l - 1).map(|m| y.comp(m, i)).sum::<Complex64>();
        d.set_y0(beta_i * bracket_i / (xi - 1.0));

        // (x_i - x_j) dy_n^(j)/dx_i = beta_i (y_n^(i) - y_n^(j)).
        for j in 1..=n {
            if j == i {
                continue;
            }
            let xj = x[j - 1];
            for nn in 1..=l - 1 {
                d.set_comp(nn, j, beta_i * (y.comp(nn, i) - y.comp(nn, j)) / (xi - xj));
            }
        }

        // x_i dy_n^(i)/dx_i = -alpha_n y_n^(i)
        //   + (gamma_n - alpha_n) [ sum_{m>n} y_m^(i) + bracket_i / (x_i - 1) ]
        //   + sum_{j != i} beta_j x_j / (x_i - x_j) (y_n^(j) - y_n^(i)).
        for nn in 1..=l - 1 {
            let alpha_n = hp.alpha_n(nn);
            let coeff = hp.gamma_n(nn) - alpha_n;
            let mut rhs = -alpha_n * y.comp(nn, i);
            let upper: Complex64 = (nn + 1..=l - 1).map(|m| y.comp(m, i)).sum();
            rhs += coeff * upper;
            rhs += coeff * bracket_i / (xi - 1.0);
            for j in 1..=n {
                if j == i {
                    continue;
                }
                let xj = x[j - 1];
                rhs += hp.beta_i(j) * xj / (xi - xj) * (y.comp(nn, j) - y.comp(nn, i));
            }
            d.set_comp(nn, i, rhs / xi);
        }

        out.push(d);
    }
    Ok(out)
}

/// The holomorphic solution at the origin, componentwise as truncated series:
/// y_0 is the hypergeometric series itself and
///
/// ```text
/// y_n^(i) = alpha_1 ... alpha_{n-1} (gamma_n - alpha_n) / (gamma_1 ... gamma_n)
///           * F(alpha_1 + 1, ..., alpha_{n-1} + 1, beta_i + 1, gamma_1 + 1, ..., gamma_n + 1)
/// ```
///
/// (only the listed parameters are shifted).  Fails with `ResonantGamma` when
/// a shifted lower parameter is resonant.
#[derive(Debug, Clone)]
pub struct HolomorphicSolution {
    l: usize,
    n_vars: usize,
    components: Vec<TruncatedSeries>,
}

pub fn holomorphic_solution(hp: &HGParams, degree: usize) -> Result<HolomorphicSolution> {
    let l = hp.l();
    let n = hp.n_vars();
    let mut components = Vec::with_capacity(SolutionVector::rank_for(l, n));
    components.push(series_coefficients(hp, degree));
    for i in 1..=n {
        for nn in 1..=l - 1 {
            let mut alpha = hp.alpha().to_vec();
            let mut beta = hp.beta().to_vec();
            let mut gamma = hp.gamma().to_vec();
            for item in alpha.iter_mut().take(nn - 1) {
                *item += 1.0;
            }
            beta[i - 1] += 1.0;
            for item in gamma.iter_mut().take(nn) {
                *item += 1.0;
            }
            let shifted = HGParams::new(alpha, beta, gamma)?;

            let mut prefactor = hp.gamma_n(nn) - hp.alpha_n(nn);
            for k in 1..nn {
                prefactor *= hp.alpha_n(k);
            }
            for k in 1..=nn {
                prefactor /= hp.gamma_n(k);
            }
            components.push(series_coefficients(&shifted, degree).scale(prefactor));
        }
    }
    // Components were pushed i-major to match the solution-vector ordering:
    // index 1 + (i-1)(L-1) + (n-1).
    Ok(HolomorphicSolution { l, n_vars: n, components })
}

impl HolomorphicSolution {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Component k in solution-vector order (0 is y_0).
    pub fn component(&self, k: usize) -> &TruncatedSeries {
        &self.components[k]
    }

    pub fn eval(&self, x: &[Complex64]) -> Result<SolutionVector> {
        let mut data = DVector::from_element(self.components.len(), ZERO);
        for (k, c) in self.components.iter().enumerate() {
            data[k] = c.eval(x)?;
        }
        Ok(SolutionVector::new(self.l, self.n_vars, data))
    }

    /// Term-by-term partial derivative along x_j, then evaluation.
    pub fn eval_partial(&self, j: usize, x: &[Complex64]) -> Result<SolutionVector> {
        let mut data = DVector::from_element(self.components.len(), ZERO);
        for (k, c) in self.components.iter().enumerate() {
            data[k] = c.partial(j).eval(x)?;
        }
        Ok(SolutionVector::new(self.l, self.n_vars, data))
    }
}

/// Shortest distance from the complex segment {u + s v : s in [0, 1]} to 0.
fn segment_to_zero(u: Complex64, v: Complex64) -> f64 {
    let vv = v.norm_sqr();
    if vv == 0.0 {
        return u.norm();
    }
    let s = (-(u.conj() * v).re / vv).clamp(0.0, 1.0);
    (u + s * v).norm()
}

/// Distance from a straight path segment to the singular locus, measured as
/// the smallest of the pole factors |x_i|, |x_i - 1|, |x_i - x_j| along it.
pub fn segment_locus_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let n = a.len();
    let mut dist = f64::INFINITY;
    for i in 0..n {
        let v = b[i] - a[i];
        dist = dist.min(segment_to_zero(a[i], v));
        dist = dist.min(segment_to_zero(a[i] - 1.0, v));
        for j in i + 1..n {
            let u = a[i] - a[j];
            let w = (b[i] - b[j]) - u;
            dist = dist.min(segment_to_zero(u, w));
        }
    }
    dist
}

/// A piecewise-linear continuation path with a guaranteed clearance from the
/// singular locus; validated on construction.
#[derive(Debug, Clone)]
pub struct PathSpec {
    waypoints: Vec<Vec<Complex64>>,
    min_clearance: f64,
}

impl PathSpec {
    pub fn new(waypoints: Vec<Vec<Complex64>>, min_clearance: f64) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::DomainError("a path needs at least two waypoints".into()));
        }
        if !(min_clearance > 0.0) {
            return Err(Error::DomainError("clearance must be positive".into()));
        }
        let n = waypoints[0].len();
        if n == 0 || waypoints.iter().any(|w| w.len() != n) {
            return Err(Error::DomainError("waypoints must share a nonzero dimension".into()));
        }
        for (k, pair) in waypoints.windows(2).enumerate() {
            let d = segment_locus_distance(&pair[0], &pair[1]);
            if d < min_clearance {
                return Err(Error::PathTooClose { segment: k, distance: d, clearance: min_clearance });
            }
        }
        Ok(Self { waypoints, min_clearance })
    }

    /// Parses `{"waypoints": [[[re, im], ...], ...]}`, with an optional
    /// `"clearance"` key (default 1e-6).
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct File {
            waypoints: Vec<Vec<[f64; 2]>>,
            clearance: Option<f64>,
        }
        let f: File = serde_json::from_str(text)
            .map_err(|e| Error::DomainError(format!("unrecognized path file: {e}")))?;
        let waypoints = f
            .waypoints
            .into_iter()
            .map(|w| w.into_iter().map(|p| Complex64::new(p[0], p[1])).collect())
            .collect();
        Self::new(waypoints, f.clearance.unwrap_or(DEFAULT_PATH_CLEARANCE))
    }

    pub fn waypoints(&self) -> &[Vec<Complex64>] {
        &self.waypoints
    }

    pub fn min_clearance(&self) -> f64 {
        self.min_clearance
    }

    pub fn n_vars(&self) -> usize {
        self.waypoints[0].len()
    }

    pub fn segments(&self) -> usize {
        self.waypoints.len() - 1
    }

    /// Reverses the waypoint order; clearance is unchanged.
    pub fn reversed(&self) -> Self {
        let mut waypoints = self.waypoints.clone();
        waypoints.reverse();
        Self { waypoints, min_clearance: self.min_clearance }
    }
}

/// Continues a solution value along the path by integrating
/// dy/ds = sum_i Omega_i(x(s)) dx_i/ds y with the embedded adaptive pair.
pub fn continue_solution(
    pc: &PfaffianConnection,
    path: &PathSpec,
    y_start: &SolutionVector,
    tol: f64,
) -> Result<SolutionVector> {
    Ok(continue_with_samples(pc, path, y_start, tol, 1)?.final_value)
}

/// A continuation together with evenly spaced samples along each segment;
/// `s` runs from 0 to the number of segments, one unit per segment.
pub struct Continuation {
    pub final_value: SolutionVector,
    pub samples: Vec<(f64, Vec<Complex64>, SolutionVector)>,
}

pub fn continue_with_samples(
    pc: &PfaffianConnection,
    path: &PathSpec,
    y_start: &SolutionVector,
    tol: f64,
    samples_per_segment: usize,
) -> Result<Continuation> {
    if path.n_vars() != pc.hp().n_vars() {
        return Err(Error::DomainError(format!(
            "path in {} variables, connection in {}",
            path.n_vars(),
            pc.hp().n_vars()
        )));
    }
    let parts = samples_per_segment.max(1);
    let opts = ode::Options { rtol: tol, atol: tol * 1e-2, max_steps: 200_000 };
    let l = pc.hp().l();
    let n = pc.hp().n_vars();

    let mut y = y_start.data().clone();
    let mut samples = Vec::new();
    samples.push((0.0, path.waypoints()[0].clone(), SolutionVector::new(l, n, y.clone())));

    for (seg, pair) in path.waypoints().windows(2).enumerate() {
        let a = &pair[0];
        let b = &pair[1];
        let dx: Vec<Complex64> = a.iter().zip(b).map(|(&u, &v)| v - u).collect();
        let rhs = |s: f64, v: &DVector<Complex64>| -> DVector<Complex64> {
            let x: Vec<Complex64> = a.iter().zip(&dx).map(|(&u, &d)| u + s * d).collect();
            let omegas = pc.omega_unchecked(&x);
            let mut out = DVector::from_element(v.len(), ZERO);
            for (i, om) in omegas.iter().enumerate() {
                out += om * v * dx[i];
            }
            out
        };
        for part in 0..parts {
            let s0 = part as f64 / parts as f64;
            let s1 = (part + 1) as f64 / parts as f64;
            y = ode::integrate(&rhs, s0, s1, y, &opts)?;
            let x: Vec<Complex64> = a.iter().zip(&dx).map(|(&u, &d)| u + s1 * d).collect();
            samples.push((seg as f64 + s1, x, SolutionVector::new(l, n, y.clone())));
        }
    }

    Ok(Continuation {
        final_value: SolutionVector::new(l, n, y),
        samples,
    })
}
