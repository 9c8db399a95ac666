//! Parameter sets and the dictionary between them.
//!
//! Two coordinate systems describe the same data.  `HGParams` carries the
//! series parameters (alpha, beta, gamma); `SystemParams` carries the spectral
//! data of the associated Fuchsian system: local exponents `e_n` at infinity-
//! like points, exponent differences `kappa_n`, and residue traces `-theta_i`.
//! The dictionary is linear:
//!
//! ```text
//! alpha_n = e_n - e_0,   beta_i = -theta_i,   gamma_n = e_n - e_0 - kappa_n
//! ```
//!
//! `SystemParams` is normalized by sum(e) = (L-1)/2 and the Fuchs relation
//! sum(kappa) = sum(theta).  The reducible stratum kappa_0 = theta_1 + ... +
//! theta_N is where hypergeometric solutions exist.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

const TOL: f64 = 1e-12;

/// Series parameters: L-1 values alpha, N values beta, L-1 values gamma.
#[derive(Debug, Clone, PartialEq)]
pub struct HGParams {
    alpha: Vec<Complex64>,
    beta: Vec<Complex64>,
    gamma: Vec<Complex64>,
}

/// Distance from z to the nearest Gaussian point of the integer lattice
/// restricted to the real axis.
pub(crate) fn int_distance(z: Complex64) -> f64 {
    (z.re - z.re.round()).hypot(z.im)
}

/// Distance from z to the nearest nonpositive integer.
fn nonpositive_int_distance(z: Complex64) -> f64 {
    let nearest = z.re.round().min(0.0);
    (z.re - nearest).hypot(z.im)
}

impl HGParams {
    /// Validates lengths and non-resonance of every gamma_n.
    pub fn new(alpha: Vec<Complex64>, beta: Vec<Complex64>, gamma: Vec<Complex64>) -> Result<Self> {
        if alpha.len() != gamma.len() {
            return Err(Error::DomainError(format!(
                "alpha and gamma must have equal length, got {} and {}",
                alpha.len(),
                gamma.len()
            )));
        }
        if alpha.is_empty() {
            return Err(Error::DomainError("need at least one upper parameter (L >= 2)".into()));
        }
        if beta.is_empty() {
            return Err(Error::DomainError("need at least one variable (N >= 1)".into()));
        }
        for (n, &g) in gamma.iter().enumerate() {
            if nonpositive_int_distance(g) <= TOL {
                return Err(Error::ResonantGamma { index: n + 1, value: g.to_string(), tol: TOL });
            }
        }
        Ok(Self { alpha, beta, gamma })
    }

    pub fn l(&self) -> usize {
        self.alpha.len() + 1
    }

    pub fn n_vars(&self) -> usize {
        self.beta.len()
    }

    /// Rank of the associated linear system: N (L - 1) + 1.
    pub fn rank(&self) -> usize {
        self.n_vars() * (self.l() - 1) + 1
    }

    pub fn alpha(&self) -> &[Complex64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Complex64] {
        &self.beta
    }

    pub fn gamma(&self) -> &[Complex64] {
        &self.gamma
    }

    /// alpha_n with the 1-based index used in formulas (n = 1..=L-1).
    pub fn alpha_n(&self, n: usize) -> Complex64 {
        self.alpha[n - 1]
    }

    pub fn beta_i(&self, i: usize) -> Complex64 {
        self.beta[i - 1]
    }

    pub fn gamma_n(&self, n: usize) -> Complex64 {
        self.gamma[n - 1]
    }
}

/// Spectral parameters: e (length L), kappa (length L), theta (length N+1,
/// index 0 attached to the pole at z = 1).
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    e: Vec<Complex64>,
    kappa: Vec<Complex64>,
    theta: Vec<Complex64>,
}

impl SystemParams {
    /// Validates the normalization sum(e) = (L-1)/2 and the Fuchs relation
    /// sum(kappa) = sum(theta), both to 1e-12.
    pub fn new(e: Vec<Complex64>, kappa: Vec<Complex64>, theta: Vec<Complex64>) -> Result<Self> {
        if e.len() != kappa.len() {
            return Err(Error::DomainError(format!(
                "e and kappa must have equal length, got {} and {}",
                e.len(),
                kappa.len()
            )));
        }
        if e.len() < 2 {
            return Err(Error::DomainError("need L >= 2 exponents".into()));
        }
        if theta.len() < 2 {
            return Err(Error::DomainError("need theta_0 plus at least one theta_i (N >= 1)".into()));
        }
        let l = e.len();
        let sum_e: Complex64 = e.iter().sum();
        let target = Complex64::new((l as f64 - 1.0) / 2.0, 0.0);
        if (sum_e - target).norm() > TOL {
            return Err(Error::ConstraintViolation(format!(
                "sum of e must be (L-1)/2 = {}, got {}",
                target.re, sum_e
            )));
        }
        let sum_kappa: Complex64 = kappa.iter().sum();
        let sum_theta: Complex64 = theta.iter().sum();
        if (sum_kappa - sum_theta).norm() > TOL {
            return Err(Error::ConstraintViolation(format!(
                "Fuchs relation violated: sum kappa = {sum_kappa}, sum theta = {sum_theta}"
            )));
        }
        Ok(Self { e, kappa, theta })
    }

    /// Same, but with theta_0 derived from the Fuchs relation.
    pub fn with_derived_theta0(
        e: Vec<Complex64>,
        kappa: Vec<Complex64>,
        theta_rest: Vec<Complex64>,
    ) -> Result<Self> {
        let sum_kappa: Complex64 = kappa.iter().sum();
        let sum_rest: Complex64 = theta_rest.iter().sum();
        let mut theta = Vec::with_capacity(theta_rest.len() + 1);
        theta.push(sum_kappa - sum_rest);
        theta.extend(theta_rest);
        Self::new(e, kappa, theta)
    }

    pub fn l(&self) -> usize {
        self.e.len()
    }

    pub fn n_vars(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn e(&self) -> &[Complex64] {
        &self.e
    }

    pub fn kappa(&self) -> &[Complex64] {
        &self.kappa
    }

    /// theta_0, theta_1, ..., theta_N.
    pub fn theta(&self) -> &[Complex64] {
        &self.theta
    }

    pub fn e_n(&self, n: usize) -> Complex64 {
        self.e[n]
    }

    pub fn kappa_n(&self, n: usize) -> Complex64 {
        self.kappa[n]
    }

    pub fn theta_i(&self, i: usize) -> Complex64 {
        self.theta[i]
    }
}

/// Translates spectral parameters to series parameters.  Fails with
/// `ResonantGamma` when some implied gamma_n lands on a nonpositive integer.
pub fn map_system_to_hg(sp: &SystemParams) -> Result<HGParams> {
    let l = sp.l();
    let n = sp.n_vars();
    let alpha: Vec<Complex64> = (1..l).map(|k| sp.e[k] - sp.e[0]).collect();
    let beta: Vec<Complex64> = (1..=n).map(|i| -sp.theta[i]).collect();
    let gamma: Vec<Complex64> = (1..l).map(|k| sp.e[k] - sp.e[0] - sp.kappa[k]).collect();
    HGParams::new(alpha, beta, gamma)
}

/// Inverts the parameter dictionary on the reducible stratum.
///
/// The series parameters pin e_n - e_0, kappa_n for n >= 1, and theta_i for
/// i >= 1.  The trace normalization sum e = (L - 1) / 2 fixes e_0, and the
/// remaining freedom in (kappa_0, theta_0) is closed by the reducibility
/// condition kappa_0 = theta_1 + ... + theta_N together with the Fuchs
/// relation, which then gives theta_0 = kappa_1 + ... + kappa_{L-1}.
/// `map_system_to_hg` recovers the input exactly.
pub fn reducible_system_from_hg(hp: &HGParams) -> Result<SystemParams> {
    let l = hp.l();
    let n = hp.n_vars();
    let alpha_sum: Complex64 = hp.alpha().iter().sum();
    let e0 = (Complex64::new((l as f64 - 1.0) / 2.0, 0.0) - alpha_sum) / l as f64;
    let mut e = Vec::with_capacity(l);
    e.push(e0);
    for k in 1..l {
        e.push(e0 + hp.alpha_n(k));
    }
    let mut kappa = Vec::with_capacity(l);
    let beta_sum: Complex64 = hp.beta().iter().sum();
    kappa.push(-beta_sum);
    for k in 1..l {
        kappa.push(hp.alpha_n(k) - hp.gamma_n(k));
    }
    let mut theta = Vec::with_capacity(n + 1);
    theta.push(kappa[1..].iter().sum());
    for i in 1..=n {
        theta.push(-hp.beta_i(i));
    }
    SystemParams::new(e, kappa, theta)
}

/// Outcome of the reducibility test kappa_0 = theta_1 + ... + theta_N.
#[derive(Debug, Clone, Copy)]
pub struct Reducibility {
    pub reducible: bool,
    pub residual: f64,
}

pub fn check_reducibility(sp: &SystemParams) -> Reducibility {
    let sum_rest: Complex64 = sp.theta[1..].iter().sum();
    let residual = (sp.kappa[0] - sum_rest).norm();
    Reducibility { reducible: residual <= TOL, residual }
}

/// Draws a valid random parameter set, deterministically from the seed.
///
/// Rejection sampling keeps every pairwise difference e_m - e_n and every
/// implied gamma_n at distance >= 0.05 from the integers, so downstream
/// series and eigenvalue computations stay away from degenerate strata.
pub fn random_params(seed: u64, l: usize, n: usize, reducible: bool) -> Result<SystemParams> {
    if l < 2 || n < 1 {
        return Err(Error::DomainError(format!("need L >= 2 and N >= 1, got L = {l}, N = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-0.25..0.25))
    };

    for _ in 0..1000 {
        let e_rest: Vec<Complex64> = (1..l).map(|_| draw(&mut rng)).collect();
        let sum_rest: Complex64 = e_rest.iter().sum();
        let mut e = vec![Complex64::new((l as f64 - 1.0) / 2.0, 0.0) - sum_rest];
        e.extend(e_rest);

        let mut kappa = vec![Complex64::new(0.0, 0.0)];
        kappa.extend((1..l).map(|_| draw(&mut rng)));
        let theta_rest: Vec<Complex64> = (0..n).map(|_| draw(&mut rng)).collect();
        kappa[0] = if reducible {
            theta_rest.iter().sum()
        } else {
            draw(&mut rng)
        };

        let generic = {
            let pairs_ok = (0..l).all(|m| {
                (m + 1..l).all(|k| int_distance(e[m] - e[k]) >= 0.05)
            });
            let gammas_ok = (1..l).all(|k| int_distance(e[k] - e[0] - kappa[k]) >= 0.05);
            pairs_ok && gammas_ok
        };
        if !generic {
            continue;
        }

        return SystemParams::with_derived_theta0(e, kappa, theta_rest);
    }
    Err(Error::DomainError(
        "could not draw generic parameters in 1000 attempts".into(),
    ))
}

// JSON parameter files.  Complex values are two-element arrays [re, im];
// the system form has keys L, N, e, kappa, theta (theta of length N,
// meaning theta_0 is derived, or N+1 for the full vector); the series form
// has keys L, N, alpha, beta, gamma.

fn c_of(a: [f64; 2]) -> Complex64 {
    Complex64::new(a[0], a[1])
}

fn a_of(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize, Deserialize)]
struct SystemParamsFile {
    #[serde(rename = "L")]
    l: usize,
    #[serde(rename = "N")]
    n: usize,
    e: Vec<[f64; 2]>,
    kappa: Vec<[f64; 2]>,
    theta: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct HGParamsFile {
    #[serde(rename = "L")]
    l: usize,
    #[serde(rename = "N")]
    n: usize,
    alpha: Vec<[f64; 2]>,
    beta: Vec<[f64; 2]>,
    gamma: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyParamsFile {
    System(SystemParamsFile),
    Hypergeometric(HGParamsFile),
}

/// A parsed parameter file, in whichever coordinate system it was written.
#[derive(Debug, Clone)]
pub enum ParamsFile {
    System(SystemParams),
    Hypergeometric(HGParams),
}

impl ParamsFile {
    /// The series-parameter view, translating if necessary.
    pub fn to_hg(&self) -> Result<HGParams> {
        match self {
            ParamsFile::System(sp) => map_system_to_hg(sp),
            ParamsFile::Hypergeometric(hp) => Ok(hp.clone()),
        }
    }
}

/// Parses either parameter file form, validating dimensions and constraints.
pub fn parse_params_json(text: &str) -> Result<ParamsFile> {
    let any: AnyParamsFile = serde_json::from_str(text)
        .map_err(|e| Error::DomainError(format!("unrecognized parameter file: {e}")))?;
    match any {
        AnyParamsFile::System(f) => {
            if f.e.len() != f.l || f.kappa.len() != f.l {
                return Err(Error::DomainError(format!(
                    "L = {} but e has {} entries and kappa has {}",
                    f.l,
                    f.e.len(),
                    f.kappa.len()
                )));
            }
            let e: Vec<_> = f.e.into_iter().map(c_of).collect();
            let kappa: Vec<_> = f.kappa.into_iter().map(c_of).collect();
            let theta: Vec<_> = f.theta.into_iter().map(c_of).collect();
            let sp = if theta.len() == f.n {
                SystemParams::with_derived_theta0(e, kappa, theta)?
            } else if theta.len() == f.n + 1 {
                SystemParams::new(e, kappa, theta)?
            } else {
                return Err(Error::DomainError(format!(
                    "N = {} but theta has {} entries (want N or N+1)",
                    f.n,
                    theta.len()
                )));
            };
            Ok(ParamsFile::System(sp))
        }
        AnyParamsFile::Hypergeometric(f) => {
            if f.alpha.len() != f.l - 1 || f.gamma.len() != f.l - 1 || f.beta.len() != f.n {
                return Err(Error::DomainError(format!(
                    "L = {}, N = {} inconsistent with alpha/beta/gamma lengths {}/{}/{}",
                    f.l,
                    f.n,
                    f.alpha.len(),
                    f.beta.len(),
                    f.gamma.len()
                )));
            }
            let hp = HGParams::new(
                f.alpha.into_iter().map(c_of).collect(),
                f.beta.into_iter().map(c_of).collect(),
                f.gamma.into_iter().map(c_of).collect(),
            )?;
            Ok(ParamsFile::Hypergeometric(hp))
        }
    }
}

pub fn system_params_to_json(sp: &SystemParams) -> String {
    let f = SystemParamsFile {
        l: sp.l(),
        n: sp.n_vars(),
        e: sp.e.iter().copied().map(a_of).collect(),
        kappa: sp.kappa.iter().copied().map(a_of).collect(),
        theta: sp.theta.iter().copied().map(a_of).collect(),
    };
    serde_json::to_string_pretty(&f).expect("plain struct serializes")
}

pub fn hg_params_to_json(hp: &HGParams) -> String {
    let f = HGParamsFile {
        l: hp.l(),
        n: hp.n_vars(),
        alpha: hp.alpha.iter().copied().map(a_of).collect(),
        beta: hp.beta.iter().copied().map(a_of).collect(),
        gamma: hp.gamma.iter().copied().map(a_of).collect(),
    };
    serde_json::to_string_pretty(&f).expect("plain struct serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn accepts_balanced_parameters() {
        let sp = SystemParams::new(
            vec![c(0.1, 0.0), c(0.4, 0.0)],
            vec![c(0.3, 0.0), c(0.2, 0.0)],
            vec![c(0.1, 0.0), c(0.4, 0.0)],
        )
        .unwrap();
        assert_eq!(sp.l(), 2);
        assert_eq!(sp.n_vars(), 1);
    }

    #[test]
    fn series_to_spectral_round_trips_on_the_reducible_stratum() {
        let hp = HGParams::new(
            vec![c(0.41, 0.12), c(-0.73, 0.31)],
            vec![c(0.57, -0.22), c(-0.38, 0.09)],
            vec![c(1.31, 0.08), c(1.67, -0.15)],
        )
        .unwrap();
        let sp = reducible_system_from_hg(&hp).unwrap();
        let red = check_reducibility(&sp);
        assert!(red.reducible, "residual {}", red.residual);
        let back = map_system_to_hg(&sp).unwrap();
        for k in 1..hp.l() {
            assert!((back.alpha_n(k) - hp.alpha_n(k)).norm() < 1e-14);
            assert!((back.gamma_n(k) - hp.gamma_n(k)).norm() < 1e-14);
        }
        for i in 1..=hp.n_vars() {
            assert!((back.beta_i(i) - hp.beta_i(i)).norm() < 1e-14);
        }
    }

    #[test]
    fn rejects_fuchs_violation() {
        let out = SystemParams::new(
            vec![c(0.1, 0.0), c(0.4, 0.0)],
            vec![c(0.3, 0.0), c(0.2, 0.0)],
            vec![c(0.1, 0.0), c(0.3, 0.0)],
        );
        assert!(matches!(out, Err(Error::ConstraintViolation(_))));
    }

    #[test]
    fn rejects_unnormalized_exponents() {
        let out = SystemParams::new(
            vec![c(0.3, 0.0), c(0.4, 0.0)],
            vec![c(0.3, 0.0), c(0.2, 0.0)],
            vec![c(0.1, 0.0), c(0.4, 0.0)],
        );
        assert!(matches!(out, Err(Error::ConstraintViolation(_))));
    }

    #[test]
    fn resonant_gamma_is_rejected() {
        for bad in [c(0.0, 0.0), c(-3.0, 0.0), c(-3.0 + 5e-13, 0.0)] {
            let out = HGParams::new(vec![c(0.5, 0.0)], vec![c(1.0, 0.0)], vec![bad]);
            assert!(matches!(out, Err(Error::ResonantGamma { .. })), "gamma = {bad}");
        }
        // Positive integers and nonintegers are fine.
        assert!(HGParams::new(vec![c(0.5, 0.0)], vec![c(1.0, 0.0)], vec![c(2.0, 0.0)]).is_ok());
        assert!(HGParams::new(vec![c(0.5, 0.0)], vec![c(1.0, 0.0)], vec![c(-0.5, 0.0)]).is_ok());
        assert!(HGParams::new(vec![c(0.5, 0.0)], vec![c(1.0, 0.0)], vec![c(-2.0, 0.3)]).is_ok());
    }

    #[test]
    fn dictionary_is_exact_in_floating_arithmetic() {
        let sp = random_params(42, 3, 2, false).unwrap();
        let hp = map_system_to_hg(&sp).unwrap();
        for k in 1..sp.l() {
            assert_eq!(hp.alpha_n(k), sp.e_n(k) - sp.e_n(0));
            assert_eq!(hp.gamma_n(k), sp.e_n(k) - sp.e_n(0) - sp.kappa_n(k));
        }
        for i in 1..=sp.n_vars() {
            assert_eq!(hp.beta_i(i), -sp.theta_i(i));
        }
    }

    #[test]
    fn reducible_draws_have_zero_residual() {
        let sp = random_params(7, 3, 2, true).unwrap();
        let r = check_reducibility(&sp);
        assert!(r.reducible);
        assert_eq!(r.residual, 0.0);

        let sp = random_params(7, 3, 2, false).unwrap();
        let r = check_reducibility(&sp);
        assert!(!r.reducible);
    }

    #[test]
    fn random_params_are_deterministic_and_generic() {
        let a = random_params(3, 4, 3, false).unwrap();
        let b = random_params(3, 4, 3, false).unwrap();
        assert_eq!(a, b);
        let c2 = random_params(4, 4, 3, false).unwrap();
        assert_ne!(a, c2);

        for m in 0..a.l() {
            for k in m + 1..a.l() {
                assert!(int_distance(a.e_n(m) - a.e_n(k)) >= 0.05);
            }
        }
        for k in 1..a.l() {
            assert!(int_distance(a.e_n(k) - a.e_n(0) - a.kappa_n(k)) >= 0.05);
        }
    }

    #[test]
    fn json_round_trip_system_form() {
        let sp = random_params(9, 3, 2, true).unwrap();
        let text = system_params_to_json(&sp);
        match parse_params_json(&text).unwrap() {
            ParamsFile::System(back) => assert_eq!(back, sp),
            _ => panic!("system form parsed as series form"),
        }
    }

    #[test]
    fn json_round_trip_series_form() {
        let hp = HGParams::new(
            vec![c(0.3, 0.1), c(-0.2, 0.0)],
            vec![c(1.0, 0.0), c(0.4, -0.2)],
            vec![c(0.9, 0.0), c(1.3, 0.2)],
        )
        .unwrap();
        let text = hg_params_to_json(&hp);
        match parse_params_json(&text).unwrap() {
            ParamsFile::Hypergeometric(back) => assert_eq!(back, hp),
            _ => panic!("series form parsed as system form"),
        }
    }

    #[test]
    fn json_theta_without_theta0_is_derived() {
        let text = r#"{
            "L": 2, "N": 1,
            "e": [[0.1, 0.0], [0.4, 0.0]],
            "kappa": [[0.3, 0.0], [0.2, 0.0]],
            "theta": [[0.4, 0.0]]
        }"#;
        match parse_params_json(text).unwrap() {
            ParamsFile::System(sp) => {
                // theta_0 = sum kappa - theta_1, up to the rounding of the sums.
                assert!((sp.theta_i(0) - c(0.1, 0.0)).norm() < 1e-15);
                assert_eq!(sp.theta_i(1), c(0.4, 0.0));
            }
            _ => panic!("wrong form"),
        }
    }

    #[test]
    fn json_dimension_mismatch_is_rejected() {
        let text = r#"{
            "L": 3, "N": 1,
            "e": [[0.1, 0.0], [0.4, 0.0]],
            "kappa": [[0.3, 0.0], [0.2, 0.0]],
            "theta": [[0.4, 0.0]]
        }"#;
        assert!(parse_params_json(text).is_err());
    }
}
