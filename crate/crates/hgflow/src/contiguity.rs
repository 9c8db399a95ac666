//! Contiguity relations: differential operators in x that shift the
//! parameters of the hypergeometric function by integers.
//!
//! With D the total Euler operator and delta_i = x_i d/dx_i, the function
//! F = F(alpha, beta, gamma; x) satisfies
//!
//! ```text
//! F(alpha_n + 1) = (D + alpha_n) F / alpha_n
//! F(beta_i + 1)  = (delta_i + beta_i) F / beta_i
//! F(gamma_n + 1) = (gamma_n / eps_L) { sum_i d/dx_i prod_{k != n} (D + gamma_k - 1)
//!                    - sum_{j=0}^{L-1} eps_j (D + gamma_n)^{L-1-j} } F
//! F(alpha_n - 1) = ((alpha_n - 1) / eps'_L) { sum_i x_i (delta_i + beta_i) prod_{k != n} (D + alpha_k)
//!                    - sum_{j=0}^{L-1} eps'_j (D + alpha_n - 1)^{L-1-j} } F
//! F(gamma_n - 1) = (D + gamma_n - 1) F / (gamma_n - 1)
//! F(beta_i + 1, beta_j - 1) = ((x_i - x_j) d/dx_i + beta_i) F / beta_i
//! F(all alpha + 1, beta_i + 1, all gamma + 1)
//!                = (gamma_1 .. gamma_{L-1}) / (alpha_1 .. alpha_{L-1} beta_i) dF/dx_i
//! ```
//!
//! where eps_j is the j-th elementary symmetric polynomial of the L values
//! {alpha_k - gamma_n (k = 1..L-1), beta_1 + .. + beta_N - gamma_n} and
//! eps'_j that of {gamma_k - alpha_n (k = 1..L-1), 1 - alpha_n}.
//!
//! Each relation is verified coefficient-by-coefficient on truncated
//! series: the left side is summed afresh at the shifted parameters, the
//! right side is produced by applying the operator, and the two are
//! compared through every total degree both sides represent exactly.

use std::fmt;

use num_complex::Complex64;

use crate::error::Error;
use crate::params::HGParams;
use crate::series::{compositions, series_coefficients, TruncatedSeries};
use crate::Result;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Scalar prefactors smaller than this make a relation numerically
/// uninvertible.
const DENOM_TOL: f64 = 1e-10;

/// A parameter shift realized by one of the contiguity operators.
/// Indices are 1-based: n addresses alpha_n or gamma_n (1..L-1),
/// i and j address beta (1..N).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    ShiftAlphaUp(usize),
    ShiftBetaUp(usize),
    ShiftGammaUp(usize),
    ShiftAlphaDown(usize),
    ShiftGammaDown(usize),
    /// beta_i goes up, beta_j goes down.
    ExchangeBeta(usize, usize),
    /// Every alpha and gamma goes up along with beta_i.
    RaiseAll(usize),
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Relation::ShiftAlphaUp(n) => write!(f, "alpha[{n}] + 1"),
            Relation::ShiftBetaUp(i) => write!(f, "beta[{i}] + 1"),
            Relation::ShiftGammaUp(n) => write!(f, "gamma[{n}] + 1"),
            Relation::ShiftAlphaDown(n) => write!(f, "alpha[{n}] - 1"),
            Relation::ShiftGammaDown(n) => write!(f, "gamma[{n}] - 1"),
            Relation::ExchangeBeta(i, j) => write!(f, "beta[{i}] + 1, beta[{j}] - 1"),
            Relation::RaiseAll(i) => write!(f, "all alpha + 1, beta[{i}] + 1, all gamma + 1"),
        }
    }
}

impl Relation {
    fn check_indices(&self, hp: &HGParams) -> Result<()> {
        let l = hp.l();
        let nv = hp.n_vars();
        let ok = match *self {
            Relation::ShiftAlphaUp(n)
            | Relation::ShiftGammaUp(n)
            | Relation::ShiftAlphaDown(n)
            | Relation::ShiftGammaDown(n) => (1..l).contains(&n),
            Relation::ShiftBetaUp(i) | Relation::RaiseAll(i) => (1..=nv).contains(&i),
            Relation::ExchangeBeta(i, j) => {
                (1..=nv).contains(&i) && (1..=nv).contains(&j) && i != j
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::DomainError(format!(
                "relation {self} is out of range for L = {l}, N = {nv}"
            )))
        }
    }

    /// The parameter set on the left side of the relation.
    pub fn shifted(&self, hp: &HGParams) -> Result<HGParams> {
        self.check_indices(hp)?;
        let mut alpha = hp.alpha().to_vec();
        let mut beta = hp.beta().to_vec();
        let mut gamma = hp.gamma().to_vec();
        match *self {
            Relation::ShiftAlphaUp(n) => alpha[n - 1] += ONE,
            Relation::ShiftBetaUp(i) => beta[i - 1] += ONE,
            Relation::ShiftGammaUp(n) => gamma[n - 1] += ONE,
            Relation::ShiftAlphaDown(n) => alpha[n - 1] -= ONE,
            Relation::ShiftGammaDown(n) => gamma[n - 1] -= ONE,
            Relation::ExchangeBeta(i, j) => {
                beta[i - 1] += ONE;
                beta[j - 1] -= ONE;
            }
            Relation::RaiseAll(i) => {
                for a in alpha.iter_mut() {
                    *a += ONE;
                }
                for g in gamma.iter_mut() {
                    *g += ONE;
                }
                beta[i - 1] += ONE;
            }
        }
        HGParams::new(alpha, beta, gamma).map_err(|e| Error::ResonantShift(e.to_string()))
    }
}

/// Every relation instance available at the given dimensions.
pub fn all_relations(l: usize, n_vars: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    for n in 1..l {
        out.push(Relation::ShiftAlphaUp(n));
        out.push(Relation::ShiftGammaUp(n));
        out.push(Relation::ShiftAlphaDown(n));
        out.push(Relation::ShiftGammaDown(n));
    }
    for i in 1..=n_vars {
        out.push(Relation::ShiftBetaUp(i));
        out.push(Relation::RaiseAll(i));
        for j in 1..=n_vars {
            if j != i {
                out.push(Relation::ExchangeBeta(i, j));
            }
        }
    }
    out
}

/// Elementary symmetric polynomials e_0..e_k of the given values.
pub fn elementary_symmetric(vals: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![ZERO; vals.len() + 1];
    e[0] = ONE;
    for (k, &v) in vals.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            e[j] = e[j] + v * e[j - 1];
        }
    }
    e
}

/// The two symmetric-function families attached to the pivot index n:
/// eps_j of {alpha_k - gamma_n, sum beta - gamma_n} and eps'_j of
/// {gamma_k - alpha_n, 1 - alpha_n}, each returned as e_0..e_L.
pub fn symmetric_data(hp: &HGParams, n: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let beta_sum: Complex64 = hp.beta().iter().sum();
    let mut vals: Vec<Complex64> = (1..hp.l()).map(|k| hp.alpha_n(k) - hp.gamma_n(n)).collect();
    vals.push(beta_sum - hp.gamma_n(n));
    let eps = elementary_symmetric(&vals);

    let mut vals: Vec<Complex64> = (1..hp.l()).map(|k| hp.gamma_n(k) - hp.alpha_n(n)).collect();
    vals.push(ONE - hp.alpha_n(n));
    let eps_prime = elementary_symmetric(&vals);
    (eps, eps_prime)
}

/// Invertibility data for the gamma_n-shift pair: raising by the big
/// operator and lowering by D + gamma_n are isomorphisms of solution
/// spaces exactly when gamma_n eps_L != 0.
#[derive(Debug, Clone, Copy)]
pub struct IsomorphismData {
    pub gamma_n: Complex64,
    pub eps_l: Complex64,
    pub invertible: bool,
}

pub fn isomorphism_criterion(hp: &HGParams, n: usize) -> Result<IsomorphismData> {
    if n == 0 || n >= hp.l() {
        return Err(Error::DomainError(format!("pivot index {n} out of range")));
    }
    let (eps, _) = symmetric_data(hp, n);
    let gamma_n = hp.gamma_n(n);
    let eps_l = eps[hp.l()];
    Ok(IsomorphismData {
        gamma_n,
        eps_l,
        invertible: gamma_n.norm() > DENOM_TOL && eps_l.norm() > DENOM_TOL,
    })
}

fn nonzero(v: Complex64, what: &str) -> Result<()> {
    if v.norm() < DENOM_TOL {
        Err(Error::VanishingDenominator(format!("{what} = {v}")))
    } else {
        Ok(())
    }
}

/// (D + c) s.
fn affine(s: &TruncatedSeries, c: Complex64) -> TruncatedSeries {
    s.euler_sum().add(&s.scale(c))
}

/// Applies the right-side operator of the relation to a truncated series
/// of F at the unshifted parameters.
pub fn apply_operator(
    rel: &Relation,
    hp: &HGParams,
    f: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    rel.check_indices(hp)?;
    let l = hp.l();
    let nv = hp.n_vars();
    match *rel {
        Relation::ShiftAlphaUp(n) => {
            let a = hp.alpha_n(n);
            nonzero(a, "alpha_n")?;
            Ok(affine(f, a).scale(ONE / a))
        }
        Relation::ShiftBetaUp(i) => {
            let b = hp.beta_i(i);
            nonzero(b, "beta_i")?;
            Ok(f.euler(i).add(&f.scale(b)).scale(ONE / b))
        }
        Relation::ShiftGammaUp(n) => {
            let (eps, _) = symmetric_data(hp, n);
            nonzero(eps[l], "eps_L")?;
            let mut inner = f.clone();
            for k in 1..l {
                if k != n {
                    inner = affine(&inner, hp.gamma_n(k) - ONE);
                }
            }
            let mut term1 = TruncatedSeries::zero(nv, f.degree().saturating_sub(1));
            for i in 1..=nv {
                term1 = term1.add(&inner.partial(i));
            }
            let mut powers = vec![f.clone()];
            for m in 1..l {
                powers.push(affine(&powers[m - 1], hp.gamma_n(n)));
            }
            let mut term2 = TruncatedSeries::zero(nv, f.degree());
            for (j, e) in eps.iter().enumerate().take(l) {
                term2 = term2.add(&powers[l - 1 - j].scale(*e));
            }
            Ok(term1.sub(&term2).scale(hp.gamma_n(n) / eps[l]))
        }
        Relation::ShiftAlphaDown(n) => {
            let (_, eps) = symmetric_data(hp, n);
            nonzero(eps[l], "eps'_L")?;
            let mut inner = f.clone();
            for k in 1..l {
                if k != n {
                    inner = affine(&inner, hp.alpha_n(k));
                }
            }
            let mut term1 = TruncatedSeries::zero(nv, f.degree());
            for i in 1..=nv {
                let t = inner.euler(i).add(&inner.scale(hp.beta_i(i)));
                term1 = term1.add(&t.mul_var(i));
            }
            let mut powers = vec![f.clone()];
            for m in 1..l {
                powers.push(affine(&powers[m - 1], hp.alpha_n(n) - ONE));
            }
            let mut term2 = TruncatedSeries::zero(nv, f.degree());
            for (j, e) in eps.iter().enumerate().take(l) {
                term2 = term2.add(&powers[l - 1 - j].scale(*e));
            }
            Ok(term1.sub(&term2).scale((hp.alpha_n(n) - ONE) / eps[l]))
        }
        Relation::ShiftGammaDown(n) => {
            let g = hp.gamma_n(n) - ONE;
            nonzero(g, "gamma_n - 1")?;
            Ok(affine(f, g).scale(ONE / g))
        }
        Relation::ExchangeBeta(i, j) => {
            let b = hp.beta_i(i);
            nonzero(b, "beta_i")?;
            let df = f.partial(i);
            let t = df.mul_var(i).sub(&df.mul_var(j));
            Ok(t.add(&f.scale(b)).scale(ONE / b))
        }
        Relation::RaiseAll(i) => {
            let mut denom = hp.beta_i(i);
            let mut numer = ONE;
            for k in 1..l {
                denom *= hp.alpha_n(k);
                numer *= hp.gamma_n(k);
            }
            nonzero(denom, "alpha_1 .. alpha_{L-1} beta_i")?;
            Ok(f.partial(i).scale(numer / denom))
        }
    }
}

/// Total degree through which the operator output is exact when applied to
/// a series of the given degree: one less wherever a plain d/dx_i appears.
pub fn trust_degree(rel: &Relation, degree: usize) -> usize {
    match rel {
        Relation::ShiftGammaUp(_) | Relation::ExchangeBeta(..) | Relation::RaiseAll(_) => {
            degree.saturating_sub(1)
        }
        _ => degree,
    }
}

/// Verifies one relation on truncated series: sums the shifted function
/// directly, applies the operator to the unshifted one, and returns the
/// largest coefficient deviation through the trusted degree, relative to
/// the largest shifted coefficient there.
pub fn check_contiguity(rel: &Relation, hp: &HGParams, degree: usize) -> Result<f64> {
    let shifted = rel.shifted(hp)?;
    let lhs = series_coefficients(&shifted, degree);
    let f = series_coefficients(hp, degree);
    let rhs = apply_operator(rel, hp, &f)?;
    let trust = trust_degree(rel, degree).min(rhs.degree());

    let mut worst: f64 = 0.0;
    for s in 0..=trust {
        for m in compositions(s, hp.n_vars()) {
            worst = worst.max((lhs.coeff(&m) - rhs.coeff(&m)).norm());
        }
    }
    let scale = lhs.max_abs_through(trust).max(1e-30);
    Ok(worst / scale)
}
