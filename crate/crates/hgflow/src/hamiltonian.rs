//! The polynomial Hamiltonians of the isomonodromic system and their
//! canonical vector fields.
//!
//! Canonical variables are q_n^(i), p_n^(i) with n = 1..L-1, i = 1..N.  The
//! i-th Hamiltonian is defined through x_i H_i =
//!
//! ```text
//!   sum_{n=0}^{L-1} e_n q_n^(i) p_n^(i)
//! + sum_{j=0}^{N} sum_{0 <= m < n <= L-1} q_m^(i) p_m^(j) q_n^(j) p_n^(i)
//! + sum_{j != i} x_j / (x_i - x_j) sum_{m,n=0}^{L-1} q_m^(i) p_m^(j) q_n^(j) p_n^(i)
//! ```
//!
//! where x_0 = q_n^(0) = q_0^(i) = 1 and the index-0 momenta are the
//! polynomial substitutions
//!
//! ```text
//! p_n^(0) = kappa_n - sum_i q_n^(i) p_n^(i)      (n >= 1)
//! p_0^(i) = theta_i - sum_n q_n^(i) p_n^(i)      (i >= 1)
//! p_0^(0) = kappa_0 - sum_i p_0^(i)
//! ```
//!
//! so every H_i is a polynomial in (q, p): the substituted momenta are
//! quadratic, which caps the total degree of x_i H_i at five.  Evaluation
//! is generic over the scalar ring, and the vector fields are exact
//! forward-mode derivatives propagated through the very same code path,
//! auxiliary substitutions included.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::dual::{CDual, Scalar};
use crate::error::Error;
use crate::ode;
use crate::params::SystemParams;
use crate::pfaffian::segment_locus_distance;
use crate::Result;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Clearance required of evaluation points and flow segments.
const LOCUS_CLEARANCE: f64 = 1e-8;

/// A point in the canonical phase space: (L-1) x N values of q and of p,
/// stored row-major in n.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePoint {
    l: usize,
    n_vars: usize,
    q: Vec<Complex64>,
    p: Vec<Complex64>,
}

impl PhasePoint {
    pub fn new(l: usize, n_vars: usize, q: Vec<Complex64>, p: Vec<Complex64>) -> Result<Self> {
        let len = (l - 1) * n_vars;
        if q.len() != len || p.len() != len {
            return Err(Error::DomainError(format!(
                "phase point for L = {l}, N = {n_vars} needs {len} entries per side, got {} and {}",
                q.len(),
                p.len()
            )));
        }
        Ok(Self { l, n_vars, q, p })
    }

    pub fn zeros(l: usize, n_vars: usize) -> Self {
        let len = (l - 1) * n_vars;
        Self { l, n_vars, q: vec![ZERO; len], p: vec![ZERO; len] }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    fn slot(&self, n: usize, i: usize) -> usize {
        assert!(n >= 1 && n <= self.l - 1 && i >= 1 && i <= self.n_vars);
        (n - 1) * self.n_vars + (i - 1)
    }

    pub fn q(&self, n: usize, i: usize) -> Complex64 {
        self.q[self.slot(n, i)]
    }

    pub fn p(&self, n: usize, i: usize) -> Complex64 {
        self.p[self.slot(n, i)]
    }

    pub fn set_q(&mut self, n: usize, i: usize, v: Complex64) {
        let s = self.slot(n, i);
        self.q[s] = v;
    }

    pub fn set_p(&mut self, n: usize, i: usize, v: Complex64) {
        let s = self.slot(n, i);
        self.p[s] = v;
    }

    /// Parses `{"q": [[..rows of [re,im]..]], "p": [[..]]}` with L-1 rows of
    /// N entries each.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct File {
            q: Vec<Vec<[f64; 2]>>,
            p: Vec<Vec<[f64; 2]>>,
        }
        let f: File = serde_json::from_str(text)
            .map_err(|e| Error::DomainError(format!("unrecognized phase point file: {e}")))?;
        let rows = f.q.len();
        if rows == 0 || f.p.len() != rows {
            return Err(Error::DomainError("q and p need the same positive row count".into()));
        }
        let cols = f.q[0].len();
        if cols == 0
            || f.q.iter().any(|r| r.len() != cols)
            || f.p.iter().any(|r| r.len() != cols)
        {
            return Err(Error::DomainError("ragged phase point rows".into()));
        }
        let flat = |rows: Vec<Vec<[f64; 2]>>| -> Vec<Complex64> {
            rows.into_iter()
                .flatten()
                .map(|v| Complex64::new(v[0], v[1]))
                .collect()
        };
        PhasePoint::new(rows + 1, cols, flat(f.q), flat(f.p))
    }

    pub fn to_json(&self) -> String {
        let rows = |v: &[Complex64]| -> Vec<Vec<[f64; 2]>> {
            (0..self.l - 1)
                .map(|r| {
                    (0..self.n_vars)
                        .map(|c| {
                            let z = v[r * self.n_vars + c];
                            [z.re, z.im]
                        })
                        .collect()
                })
                .collect()
        };
        serde_json::json!({ "q": rows(&self.q), "p": rows(&self.p) }).to_string()
    }

    fn flatten(&self) -> DVector<Complex64> {
        let mut data = Vec::with_capacity(2 * self.q.len());
        data.extend_from_slice(&self.q);
        data.extend_from_slice(&self.p);
        DVector::from_vec(data)
    }

    fn unflatten(l: usize, n_vars: usize, v: &DVector<Complex64>) -> Self {
        let len = (l - 1) * n_vars;
        Self {
            l,
            n_vars,
            q: v.as_slice()[..len].to_vec(),
            p: v.as_slice()[len..].to_vec(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.q
            .iter()
            .chain(&self.p)
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// The derived index-0 momenta at a phase point.
#[derive(Debug, Clone)]
pub struct AuxiliaryBlock {
    /// p_n^(0) for n = 1..L-1.
    pub p0_row: Vec<Complex64>,
    /// p_0^(i) for i = 1..N.
    pub p0_col: Vec<Complex64>,
    /// p_0^(0).
    pub p00: Complex64,
}

pub fn auxiliary(pt: &PhasePoint, sp: &SystemParams) -> AuxiliaryBlock {
    let (_q, p) = build_tables::<Complex64>(
        sp,
        &|n, i| pt.q(n, i),
        &|n, i| pt.p(n, i),
    );
    AuxiliaryBlock {
        p0_row: (1..sp.l()).map(|n| p[n][0]).collect(),
        p0_col: (1..=sp.n_vars()).map(|i| p[0][i]).collect(),
        p00: p[0][0],
    }
}

/// Full L x (N+1) tables of q_n^(j) and p_n^(j) over any scalar ring,
/// with the constants and auxiliary substitutions filled in.
fn build_tables<T: Scalar>(
    sp: &SystemParams,
    qv: &dyn Fn(usize, usize) -> T,
    pv: &dyn Fn(usize, usize) -> T,
) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
    let l = sp.l();
    let nv = sp.n_vars();
    let one = T::from_c(ONE);
    let mut q = vec![vec![T::zero(); nv + 1]; l];
    let mut p = vec![vec![T::zero(); nv + 1]; l];
    for j in 0..=nv {
        q[0][j] = one;
    }
    for n in 0..l {
        q[n][0] = one;
    }
    for n in 1..l {
        for j in 1..=nv {
            q[n][j] = qv(n, j);
            p[n][j] = pv(n, j);
        }
    }
    for n in 1..l {
        let mut acc = T::from_c(sp.kappa_n(n));
        for i in 1..=nv {
            acc = acc - q[n][i] * p[n][i];
        }
        p[n][0] = acc;
    }
    for i in 1..=nv {
        let mut acc = T::from_c(sp.theta_i(i));
        for n in 1..l {
            acc = acc - q[n][i] * p[n][i];
        }
        p[0][i] = acc;
    }
    let mut acc = T::from_c(sp.kappa_n(0));
    for i in 1..=nv {
        acc = acc - p[0][i];
    }
    p[0][0] = acc;
    (q, p)
}

/// x_i H_i from the tables.  The double sum of the deformation term
/// factorizes into a product of two bilinear forms, which is what is
/// computed here; the displayed double sum is kept as the test oracle.
fn x_h_from_tables<T: Scalar>(
    i: usize,
    x: &[Complex64],
    q: &[Vec<T>],
    p: &[Vec<T>],
    sp: &SystemParams,
) -> T {
    let l = sp.l();
    let nv = sp.n_vars();
    let xi = x[i - 1];

    let mut h = T::zero();
    for n in 0..l {
        h = h + (q[n][i] * p[n][i]).scale(sp.e_n(n));
    }
    for j in 0..=nv {
        for m in 0..l {
            for n in m + 1..l {
                h = h + q[m][i] * p[m][j] * q[n][j] * p[n][i];
            }
        }
    }
    for j in 0..=nv {
        if j == i {
            continue;
        }
        let xj = if j == 0 { ONE } else { x[j - 1] };
        let mut w_ij = T::zero();
        let mut w_ji = T::zero();
        for m in 0..l {
            w_ij = w_ij + q[m][i] * p[m][j];
            w_ji = w_ji + q[m][j] * p[m][i];
        }
        h = h + (w_ij * w_ji).scale(xj / (xi - xj));
    }
    h
}

fn check_point(i: usize, x: &[Complex64]) -> Result<()> {
    let xi = x[i - 1];
    if xi.norm() < LOCUS_CLEARANCE {
        return Err(Error::SingularPoint(format!("|x_{i}| = {:.3e}", xi.norm())));
    }
    if (xi - ONE).norm() < LOCUS_CLEARANCE {
        return Err(Error::SingularPoint(format!("|x_{i} - 1| = {:.3e}", (xi - ONE).norm())));
    }
    for (j, &xj) in x.iter().enumerate() {
        if j + 1 != i && (xi - xj).norm() < LOCUS_CLEARANCE {
            return Err(Error::SingularPoint(format!(
                "|x_{i} - x_{}| = {:.3e}",
                j + 1,
                (xi - xj).norm()
            )));
        }
    }
    Ok(())
}

fn check_dims(x: &[Complex64], pt: &PhasePoint, sp: &SystemParams) -> Result<()> {
    if x.len() != sp.n_vars() || pt.l() != sp.l() || pt.n_vars() != sp.n_vars() {
        return Err(Error::DomainError(format!(
            "dimension mismatch: x has {} entries, phase point is ({}, {}), parameters are ({}, {})",
            x.len(),
            pt.l(),
            pt.n_vars(),
            sp.l(),
            sp.n_vars()
        )));
    }
    Ok(())
}

/// H_i at the given point of the extended phase space.
pub fn hamiltonian_value(
    i: usize,
    x: &[Complex64],
    pt: &PhasePoint,
    sp: &SystemParams,
) -> Result<Complex64> {
    check_dims(x, pt, sp)?;
    check_point(i, x)?;
    let (q, p) = build_tables::<Complex64>(sp, &|n, j| pt.q(n, j), &|n, j| pt.p(n, j));
    Ok(x_h_from_tables(i, x, &q, &p, sp) / x[i - 1])
}

/// One canonical direction field: dq and dp in phase-point layout.
#[derive(Debug, Clone)]
pub struct FieldComponent {
    n_vars: usize,
    dq: Vec<Complex64>,
    dp: Vec<Complex64>,
}

impl FieldComponent {
    fn slot(&self, n: usize, i: usize) -> usize {
        (n - 1) * self.n_vars + (i - 1)
    }

    /// dq_n^(i)/dx_j = dH_j/dp_n^(i).
    pub fn dq(&self, n: usize, i: usize) -> Complex64 {
        self.dq[self.slot(n, i)]
    }

    /// dp_n^(i)/dx_j = -dH_j/dq_n^(i).
    pub fn dp(&self, n: usize, i: usize) -> Complex64 {
        self.dp[self.slot(n, i)]
    }

    pub fn max_abs(&self) -> f64 {
        self.dq
            .iter()
            .chain(&self.dp)
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

fn vector_field_impl(x: &[Complex64], pt: &PhasePoint, sp: &SystemParams) -> Vec<FieldComponent> {
    let l = sp.l();
    let nv = sp.n_vars();
    let len = (l - 1) * nv;
    let mut out = Vec::with_capacity(nv);
    for j in 1..=nv {
        let mut dq = vec![ZERO; len];
        let mut dp = vec![ZERO; len];
        for n in 1..l {
            for i in 1..=nv {
                // dH_j/dp_n^(i): seed the momentum and propagate.
                let (tq, tp) = build_tables::<CDual>(
                    sp,
                    &|nn, ii| CDual::constant(pt.q(nn, ii)),
                    &|nn, ii| {
                        if nn == n && ii == i {
                            CDual::variable(pt.p(nn, ii))
                        } else {
                            CDual::constant(pt.p(nn, ii))
                        }
                    },
                );
                let d = x_h_from_tables(j, x, &tq, &tp, sp);
                dq[(n - 1) * nv + (i - 1)] = d.eps / x[j - 1];

                // dH_j/dq_n^(i): seed the coordinate.
                let (tq, tp) = build_tables::<CDual>(
                    sp,
                    &|nn, ii| {
                        if nn == n && ii == i {
                            CDual::variable(pt.q(nn, ii))
                        } else {
                            CDual::constant(pt.q(nn, ii))
                        }
                    },
                    &|nn, ii| CDual::constant(pt.p(nn, ii)),
                );
                let d = x_h_from_tables(j, x, &tq, &tp, sp);
                dp[(n - 1) * nv + (i - 1)] = -d.eps / x[j - 1];
            }
        }
        out.push(FieldComponent { n_vars: nv, dq, dp });
    }
    out
}

/// The canonical vector fields (dH_j/dp, -dH_j/dq) for j = 1..N, computed by
/// forward-mode differentiation through the full polynomial evaluation.
pub fn canonical_vector_field(
    x: &[Complex64],
    pt: &PhasePoint,
    sp: &SystemParams,
) -> Result<Vec<FieldComponent>> {
    check_dims(x, pt, sp)?;
    for i in 1..=sp.n_vars() {
        check_point(i, x)?;
    }
    Ok(vector_field_impl(x, pt, sp))
}

/// Transports a phase point along the straight segment from x_start to
/// x_end by integrating the canonical equations.
pub fn flow(
    x_start: &[Complex64],
    x_end: &[Complex64],
    pt: &PhasePoint,
    sp: &SystemParams,
    tol: f64,
) -> Result<PhasePoint> {
    check_dims(x_start, pt, sp)?;
    if x_end.len() != x_start.len() {
        return Err(Error::DomainError("endpoint dimension mismatch".into()));
    }
    let d = segment_locus_distance(x_start, x_end);
    if d < LOCUS_CLEARANCE {
        return Err(Error::PathTooClose { segment: 0, distance: d, clearance: LOCUS_CLEARANCE });
    }
    if x_start == x_end {
        return Ok(pt.clone());
    }

    let l = sp.l();
    let nv = sp.n_vars();
    let len = (l - 1) * nv;
    let dx: Vec<Complex64> = x_start.iter().zip(x_end).map(|(&a, &b)| b - a).collect();
    let rhs = |s: f64, v: &DVector<Complex64>| -> DVector<Complex64> {
        let x: Vec<Complex64> = x_start.iter().zip(&dx).map(|(&a, &d)| a + s * d).collect();
        let point = PhasePoint::unflatten(l, nv, v);
        let fields = vector_field_impl(&x, &point, sp);
        let mut out = DVector::from_element(2 * len, ZERO);
        for (jm1, f) in fields.iter().enumerate() {
            for k in 0..len {
                out[k] += f.dq[k] * dx[jm1];
                out[len + k] += f.dp[k] * dx[jm1];
            }
        }
        out
    };
    let opts = ode::Options { rtol: tol, atol: tol * 1e-2, max_steps: 200_000 };
    let v = ode::integrate(rhs, 0.0, 1.0, pt.flatten(), &opts)?;
    Ok(PhasePoint::unflatten(l, nv, &v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::random_params;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_point(l: usize, nv: usize, rng: &mut ChaCha8Rng) -> PhasePoint {
        let len = (l - 1) * nv;
        let mut draw = |_: usize| c(rng.random_range(-0.8..0.8), rng.random_range(-0.8..0.8));
        let q: Vec<Complex64> = (0..len).map(&mut draw).collect();
        let p: Vec<Complex64> = (0..len).map(&mut draw).collect();
        PhasePoint::new(l, nv, q, p).unwrap()
    }

    #[test]
    fn rest_point_value_in_the_smallest_case() {
        // At q = p = 0 with L = 2, N = 1 the only surviving contributions
        // are e_0 q_0 p_0 and the j = 0 deformation term, giving
        // x_1 H_1 = e_0 theta_1 + (kappa_0 - theta_1) theta_1 / (x_1 - 1).
        let sp = random_params(12, 2, 1, false).unwrap();
        let pt = PhasePoint::zeros(2, 1);
        let x = [c(0.37, 0.21)];
        let h = hamiltonian_value(1, &x, &pt, &sp).unwrap();
        let expect = (sp.e_n(0) * sp.theta_i(1)
            + (sp.kappa_n(0) - sp.theta_i(1)) * sp.theta_i(1) / (x[0] - 1.0))
            / x[0];
        assert!((h - expect).norm() <= 1e-14 * expect.norm(), "h = {h}, expect = {expect}");
    }

    #[test]
    fn all_zero_exponents_make_the_rest_point_stationary() {
        let l = 3;
        let nv = 2;
        let e = vec![c(1.0, 0.0), c(0.5, 0.0), c(-0.5, 0.0)];
        let kappa = vec![ZERO; l];
        let theta = vec![ZERO; nv + 1];
        let sp = SystemParams::new(e, kappa, theta).unwrap();
        let pt = PhasePoint::zeros(l, nv);
        let x = [c(0.3, 0.0), c(0.6, 0.1)];
        for i in 1..=nv {
            let h = hamiltonian_value(i, &x, &pt, &sp).unwrap();
            assert_eq!(h, ZERO);
        }
        let fields = canonical_vector_field(&x, &pt, &sp).unwrap();
        for f in fields {
            assert_eq!(f.max_abs(), 0.0);
        }
    }

    #[test]
    fn auxiliary_momenta_satisfy_both_defining_sums() {
        // p_0^(0) defined through kappa_0 agrees with theta_0 - sum_n p_n^(0)
        // exactly when the Fuchs relation holds.
        let sp = random_params(3, 4, 3, false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let pt = random_point(4, 3, &mut rng);
        let aux = auxiliary(&pt, &sp);
        let alt = sp.theta_i(0) - aux.p0_row.iter().sum::<Complex64>();
        assert!((aux.p00 - alt).norm() < 1e-13, "{} vs {alt}", aux.p00);
    }

    #[test]
    fn dual_derivatives_match_central_differences() {
        let sp = random_params(21, 3, 2, false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pt = random_point(3, 2, &mut rng);
        let x = [c(0.41, 0.13), c(-0.52, 0.34)];
        let fields = canonical_vector_field(&x, &pt, &sp).unwrap();
        let h = 1e-6;
        for j in 1..=2usize {
            for n in 1..=2usize {
                for i in 1..=2usize {
                    let mut plus = pt.clone();
                    plus.set_p(n, i, pt.p(n, i) + h);
                    let mut minus = pt.clone();
                    minus.set_p(n, i, pt.p(n, i) - h);
                    let fd = (hamiltonian_value(j, &x, &plus, &sp).unwrap()
                        - hamiltonian_value(j, &x, &minus, &sp).unwrap())
                        / (2.0 * h);
                    let ad = fields[j - 1].dq(n, i);
                    assert!((fd - ad).norm() <= 1e-8 * ad.norm().max(1.0), "dH/dp at ({n},{i})");

                    let mut plus = pt.clone();
                    plus.set_q(n, i, pt.q(n, i) + h);
                    let mut minus = pt.clone();
                    minus.set_q(n, i, pt.q(n, i) - h);
                    let fd = (hamiltonian_value(j, &x, &plus, &sp).unwrap()
                        - hamiltonian_value(j, &x, &minus, &sp).unwrap())
                        / (2.0 * h);
                    let ad = -fields[j - 1].dp(n, i);
                    assert!((fd - ad).norm() <= 1e-8 * ad.norm().max(1.0), "dH/dq at ({n},{i})");
                }
            }
        }
    }

    #[test]
    fn restriction_to_a_line_has_degree_at_most_five() {
        // Sample x_i H_i along a random line in phase space, fit the Newton
        // form on six nodes, and check it predicts two more samples; any
        // degree-6-or-higher term or non-polynomial dependence would break
        // the prediction.  Degree five is attained: terms pairing a direct
        // coordinate with two substituted momenta, such as
        // q_m^(i) p_m^(0) p_0^(i), contribute 1 + 2 + 2.
        let sp = random_params(31, 3, 2, false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let base = random_point(3, 2, &mut rng);
        let dir = random_point(3, 2, &mut rng);
        let x = [c(0.41, 0.13), c(-0.52, 0.34)];

        let sample = |t: f64| -> Complex64 {
            let mut pt = base.clone();
            for n in 1..=2usize {
                for i in 1..=2usize {
                    pt.set_q(n, i, base.q(n, i) + t * dir.q(n, i));
                    pt.set_p(n, i, base.p(n, i) + t * dir.p(n, i));
                }
            }
            hamiltonian_value(1, &x, &pt, &sp).unwrap() * x[0]
        };

        let fit_through = |count: usize| -> Vec<(f64, Complex64)> {
            let nodes: Vec<f64> = (0..count).map(|k| k as f64 * 0.2 - 0.5).collect();
            let mut coef: Vec<Complex64> = nodes.iter().map(|&t| sample(t)).collect();
            for lvl in 1..count {
                for k in (lvl..count).rev() {
                    coef[k] = (coef[k] - coef[k - 1]) / (nodes[k] - nodes[k - lvl]);
                }
            }
            let predict = |t: f64| -> Complex64 {
                let mut acc = coef[count - 1];
                for k in (0..count - 1).rev() {
                    acc = acc * (t - nodes[k]) + coef[k];
                }
                acc
            };
            [0.8, -1.1].iter().map(|&t| (t, sample(t) - predict(t))).collect()
        };

        for (t, miss) in fit_through(6) {
            assert!(miss.norm() <= 1e-10, "t = {t}: degree-5 fit misses by {miss}");
        }
        // A degree-4 fit must fail, or the degree-5 claim would be vacuous.
        let worst = fit_through(5)
            .into_iter()
            .map(|(_, miss)| miss.norm())
            .fold(0.0f64, f64::max);
        assert!(worst > 1e-6, "line restriction already fits at degree 4");
    }

    #[test]
    fn flow_of_zero_length_is_identity() {
        let sp = random_params(5, 2, 2, false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pt = random_point(2, 2, &mut rng);
        let x = [c(0.3, 0.0), c(0.55, 0.2)];
        let out = flow(&x, &x, &pt, &sp, 1e-10).unwrap();
        assert_eq!(out, pt);
    }

    #[test]
    fn flow_rejects_segments_through_the_locus() {
        let sp = random_params(5, 2, 2, false).unwrap();
        let pt = PhasePoint::zeros(2, 2);
        // The segment from (0.2, 0.6) to (0.8, 0.4) crosses x_1 = x_2.
        let out = flow(
            &[c(0.2, 0.0), c(0.6, 0.0)],
            &[c(0.8, 0.0), c(0.4, 0.0)],
            &pt,
            &sp,
            1e-10,
        );
        assert!(matches!(out, Err(Error::PathTooClose { .. })));
    }

    #[test]
    fn phase_point_json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let pt = random_point(3, 2, &mut rng);
        let text = pt.to_json();
        let back = PhasePoint::from_json(&text).unwrap();
        assert_eq!(back, pt);
    }
}
