//! Eigenvalues of small dense complex matrices.
//!
//! Householder reduction to upper Hessenberg form followed by explicit
//! single-shift QR with Wilkinson shifts.  The matrices this crate feeds in
//! are residue matrices of Fuchsian systems: rank one plus triangular parts,
//! dimension rarely above ten.  Their eigenvalues are semisimple in the cases
//! checked, so the iteration resolves them to near machine precision, which a
//! characteristic-polynomial route cannot do for repeated roots.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::Error;
use crate::Result;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Reduces `a` to upper Hessenberg form by unitary similarity, in place.
fn hessenberg(a: &mut DMatrix<Complex64>) {
    let n = a.nrows();
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k below the subdiagonal.
        let m = n - k - 1;
        let mut u: Vec<Complex64> = (0..m).map(|r| a[(k + 1 + r, k)]).collect();
        let norm_x = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let phase = if u[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            u[0] / u[0].norm()
        };
        let alpha = -phase * norm_x;
        u[0] -= alpha;
        let norm_u = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm_u < f64::EPSILON * norm_x {
            continue;
        }
        for z in &mut u {
            *z /= norm_u;
        }

        // Rows k+1.. : A <- A - 2 v (v^H A).
        for c in 0..n {
            let dot: Complex64 = (0..m).map(|r| u[r].conj() * a[(k + 1 + r, c)]).sum();
            for r in 0..m {
                let val = a[(k + 1 + r, c)] - 2.0 * u[r] * dot;
                a[(k + 1 + r, c)] = val;
            }
        }
        // Columns k+1.. : A <- A - 2 (A v) v^H.
        for r in 0..n {
            let dot: Complex64 = (0..m).map(|c| a[(r, k + 1 + c)] * u[c]).sum();
            for c in 0..m {
                let val = a[(r, k + 1 + c)] - 2.0 * dot * u[c].conj();
                a[(r, k + 1 + c)] = val;
            }
        }
        for r in k + 2..n {
            a[(r, k)] = ZERO;
        }
        a[(k + 1, k)] = alpha;
    }
}

/// Complex Givens rotation mapping (f, g) to (r, 0): returns (c, s) with
/// c real, |c|^2 + |s|^2 = 1, applied as rows' = [c f + s g, -conj(s) f + c g].
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let fn_ = f.norm();
    let rho = (f.norm_sqr() + g.norm_sqr()).sqrt();
    if rho == 0.0 {
        return (1.0, ZERO);
    }
    if fn_ == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    (fn_ / rho, f * g.conj() / (fn_ * rho))
}

fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let tr_half = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powu(2) + b * c;
    let root = disc.sqrt();
    (tr_half + root, tr_half - root)
}

/// Eigenvalues of a square complex matrix, in no particular order.
pub fn eigenvalues(a: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    if a.nrows() != a.ncols() {
        return Err(Error::DomainError(format!(
            "eigenvalues need a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let n = a.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = a.clone();
    hessenberg(&mut h);

    let hnorm: f64 = h.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let negligible = |h: &DMatrix<Complex64>, i: usize| -> bool {
        let t = f64::EPSILON * (h[(i - 1, i - 1)].norm() + h[(i, i)].norm());
        let t = if t == 0.0 { f64::EPSILON * hnorm } else { t };
        h[(i, i - 1)].norm() <= t
    };

    let mut eig = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut stall = 0usize;
    let mut budget = 200 * n;

    loop {
        // Deflate converged trailing eigenvalues.
        while hi > 0 && negligible(&h, hi) {
            h[(hi, hi - 1)] = ZERO;
            eig.push(h[(hi, hi)]);
            hi -= 1;
            stall = 0;
        }
        if hi == 0 {
            eig.push(h[(0, 0)]);
            return Ok(eig);
        }

        let mut lo = hi;
        while lo > 0 && !negligible(&h, lo) {
            lo -= 1;
        }
        if lo > 0 {
            h[(lo, lo - 1)] = ZERO;
        }

        if hi - lo == 1 {
            let (l1, l2) = eig2(h[(lo, lo)], h[(lo, hi)], h[(hi, lo)], h[(hi, hi)]);
            eig.push(l1);
            eig.push(l2);
            if lo == 0 {
                return Ok(eig);
            }
            hi = lo - 1;
            stall = 0;
            continue;
        }

        if budget == 0 {
            return Err(Error::DomainError(
                "QR iteration failed to converge".into(),
            ));
        }
        budget -= 1;
        stall += 1;

        // Wilkinson shift from the trailing 2x2 block, with an occasional
        // exceptional shift to break symmetry-induced stalls.
        let mu = if stall % 12 == 0 {
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].norm()
        } else {
            let (l1, l2) = eig2(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)]);
            if (l1 - h[(hi, hi)]).norm() <= (l2 - h[(hi, hi)]).norm() {
                l1
            } else {
                l2
            }
        };

        // Explicit shifted QR sweep on the active block [lo, hi].
        for d in lo..=hi {
            h[(d, d)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for col in k..=hi {
                let x = h[(k, col)];
                let y = h[(k + 1, col)];
                h[(k, col)] = c * x + s * y;
                h[(k + 1, col)] = -s.conj() * x + c * y;
            }
            h[(k + 1, k)] = ZERO;
            rots.push((c, s));
        }
        for (k, (c, s)) in rots.into_iter().enumerate() {
            let k = lo + k;
            let rmax = (k + 1).min(hi);
            for row in lo..=rmax {
                let x = h[(row, k)];
                let y = h[(row, k + 1)];
                h[(row, k)] = c * x + s.conj() * y;
                h[(row, k + 1)] = -s * x + c * y;
            }
        }
        for d in lo..=hi {
            h[(d, d)] += mu;
        }
    }
}

/// Greedy matching of computed eigenvalues against an expected multiset;
/// returns the largest pairing distance.
pub fn matching_distance(computed: &[Complex64], expected: &[Complex64]) -> f64 {
    assert_eq!(computed.len(), expected.len(), "eigenvalue count mismatch");
    let mut pool: Vec<Complex64> = computed.to_vec();
    let mut worst = 0.0f64;
    for &e in expected {
        let (idx, dist) = pool
            .iter()
            .enumerate()
            .map(|(i, &c)| (i, (c - e).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .expect("non-empty pool");
        worst = worst.max(dist);
        pool.swap_remove(idx);
    }
    worst
}
