//! Shared oracles for the integration suites.  Everything here is computed
//! by a route independent of the code under test: coefficients straight
//! from Pochhammer products, classical one- and two-variable series by
//! direct summation, and the Hamiltonian by its literal displayed sums.

// Each integration target compiles its own copy; not all of them use
// every oracle.
#![allow(dead_code)]

use hgflow::gamma::pochhammer;
use hgflow::hamiltonian::PhasePoint;
use hgflow::params::{HGParams, SystemParams};
use hgflow::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The series coefficient at multi-index m from raw rising factorials.
pub fn coeff_by_pochhammer(hp: &HGParams, m: &[usize]) -> Complex64 {
    let s: usize = m.iter().sum();
    let mut num = c(1.0, 0.0);
    for &a in hp.alpha() {
        num *= pochhammer(a, s);
    }
    for (i, &b) in hp.beta().iter().enumerate() {
        num *= pochhammer(b, m[i]);
    }
    let mut den = c(1.0, 0.0);
    for &g in hp.gamma() {
        den *= pochhammer(g, s);
    }
    for &mi in m {
        den *= pochhammer(c(1.0, 0.0), mi);
    }
    num / den
}

/// Terms of the classical one-variable 3F2 sum: the L = 3, N = 1 series
/// collapses to sum_s (a1)_s (a2)_s (b)_s / ((g1)_s (g2)_s s!) x^s.
pub fn hyper3f2_term(
    a1: Complex64,
    a2: Complex64,
    b: Complex64,
    g1: Complex64,
    g2: Complex64,
    s: usize,
) -> Complex64 {
    pochhammer(a1, s) * pochhammer(a2, s) * pochhammer(b, s)
        / (pochhammer(g1, s) * pochhammer(g2, s) * pochhammer(c(1.0, 0.0), s))
}

/// Terms of the two-variable Lauricella F_D series: the L = 2, N = 2 case
/// is sum (a)_{m+n} (b1)_m (b2)_n / ((g)_{m+n} m! n!) x^m y^n.
pub fn lauricella_fd_term(
    a: Complex64,
    b1: Complex64,
    b2: Complex64,
    g: Complex64,
    m: usize,
    n: usize,
) -> Complex64 {
    pochhammer(a, m + n) * pochhammer(b1, m) * pochhammer(b2, n)
        / (pochhammer(g, m + n) * pochhammer(c(1.0, 0.0), m) * pochhammer(c(1.0, 0.0), n))
}

/// x_i H_i transcribed term by term from its displayed triple of sums,
/// with full q/p tables built here and the doubly-substituted momentum
/// resolved through the other available route, p_0^(0) = theta_0 - sum_n
/// p_n^(0).  No factorization, no sharing with the library.
pub fn literal_x_h(
    i: usize,
    x: &[Complex64],
    pt: &PhasePoint,
    sp: &SystemParams,
) -> Complex64 {
    let l = sp.l();
    let nv = sp.n_vars();
    let one = c(1.0, 0.0);

    let mut q = vec![vec![one; nv + 1]; l];
    let mut p = vec![vec![c(0.0, 0.0); nv + 1]; l];
    for n in 1..l {
        for j in 1..=nv {
            q[n][j] = pt.q(n, j);
            p[n][j] = pt.p(n, j);
        }
    }
    for n in 1..l {
        let mut acc = sp.kappa_n(n);
        for j in 1..=nv {
            acc -= q[n][j] * p[n][j];
        }
        p[n][0] = acc;
    }
    for j in 1..=nv {
        let mut acc = sp.theta_i(j);
        for n in 1..l {
            acc -= q[n][j] * p[n][j];
        }
        p[0][j] = acc;
    }
    let mut acc = sp.theta_i(0);
    for n in 1..l {
        acc -= p[n][0];
    }
    p[0][0] = acc;

    let mut h = c(0.0, 0.0);
    for n in 0..l {
        h += sp.e_n(n) * q[n][i] * p[n][i];
    }
    for j in 0..=nv {
        for m in 0..l {
            for n in m + 1..l {
                h += q[m][i] * p[m][j] * q[n][j] * p[n][i];
            }
        }
    }
    for j in 0..=nv {
        if j == i {
            continue;
        }
        let xj = if j == 0 { one } else { x[j - 1] };
        let xi = x[i - 1];
        let mut s = c(0.0, 0.0);
        for m in 0..l {
            for n in 0..l {
                s += q[m][i] * p[m][j] * q[n][j] * p[n][i];
            }
        }
        h += xj / (xi - xj) * s;
    }
    h
}

/// Generic parameters with gamma kept well clear of the nonpositive
/// integers and all contiguity denominators bounded away from zero.
pub fn random_hg(seed: u64, l: usize, n_vars: usize) -> HGParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |lo: f64, hi: f64| {
        c(rng.random_range(lo..hi), rng.random_range(-0.2..0.2))
    };
    let alpha: Vec<Complex64> = (1..l).map(|_| draw(0.2, 0.9)).collect();
    let beta: Vec<Complex64> = (0..n_vars).map(|_| draw(0.2, 0.8)).collect();
    let gamma: Vec<Complex64> = (1..l).map(|_| draw(1.1, 1.9)).collect();
    HGParams::new(alpha, beta, gamma).unwrap()
}

/// Parameters admissible for the integral representation:
/// Re gamma_k > Re alpha_k > 0.
pub fn random_integral_hg(seed: u64, l: usize, n_vars: usize) -> HGParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alpha = Vec::new();
    let mut gamma = Vec::new();
    for _ in 1..l {
        let a = c(rng.random_range(0.3..0.9), rng.random_range(-0.15..0.15));
        let g = a + c(rng.random_range(0.4..1.0), rng.random_range(-0.15..0.15));
        alpha.push(a);
        gamma.push(g);
    }
    let beta: Vec<Complex64> = (0..n_vars)
        .map(|_| c(rng.random_range(-0.8..0.8), rng.random_range(-0.3..0.3)))
        .collect();
    HGParams::new(alpha, beta, gamma).unwrap()
}

/// A random phase point with entries in the unit box.
pub fn random_point(l: usize, n_vars: usize, rng: &mut ChaCha8Rng) -> PhasePoint {
    let mut pt = PhasePoint::zeros(l, n_vars);
    for n in 1..l {
        for i in 1..=n_vars {
            pt.set_q(n, i, c(rng.random_range(-0.8..0.8), rng.random_range(-0.8..0.8)));
            pt.set_p(n, i, c(rng.random_range(-0.8..0.8), rng.random_range(-0.8..0.8)));
        }
    }
    pt
}
