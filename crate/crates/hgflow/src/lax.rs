//! Fuchsian linear systems attached to the Hamiltonian system, their
//! deformation equations, and the reducible subfamily that the linear
//! Pfaffian system solves.
//!
//! The spectral problem is an L x L system dPhi/dz = A(z) Phi with
//! A(z) = sum_{i=0}^{N+1} A_i / (z - u_i), poles at u_0 = 1, the movable
//! points u_1..u_N, u_{N+1} = 0 and infinity.  The residues are
//! parameterized by accessory variables b_n^(i), c_n^(i) (with c_0^(i) = 1):
//! A_i is the rank-one outer product b^(i) c^(i)T for 0 <= i <= N, and
//! A_{N+1} is upper triangular with diagonal e_n and entries
//! w_{m,n} = -sum_i b_m^(i) c_n^(i) above it.  The canonical variables of
//! the Hamiltonian flow sit inside via
//!
//! ```text
//! x_i = 1/u_i,   q_n^(i) = c_n^(i) / c_n^(0),   p_n^(i) = -b_n^(i) c_n^(0).
//! ```
//!
//! When kappa_0 = theta_1 + .. + theta_N the family admits an invariant
//! subvariety on which the system is reducible and is parameterized by
//! N(L-1)+1 functions (f, b_n^(i)); their first-order equations in u_i map
//! to the rank-N(L-1)+1 Pfaffian system under
//! y_0 = f / prod u_j^theta_j, y_n^(i) = b_n^(i) / (theta_i prod u_j^theta_j).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::eigen::{eigenvalues, matching_distance};
use crate::error::Error;
use crate::hamiltonian::{auxiliary, PhasePoint};
use crate::params::{check_reducibility, SystemParams};
use crate::pfaffian::SolutionVector;
use crate::Result;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Minimal allowed distance from evaluation points to poles and between
/// the poles themselves.
const POLE_CLEARANCE: f64 = 1e-10;

/// Tolerance for the trace constraints enforced on accessory variables.
const TRACE_TOL: f64 = 1e-10;

/// Accessory variables of the Fuchsian system: b[i][n] and c[i][n] for
/// i = 0..N, n = 0..L-1, together with the interior pole positions.
#[derive(Debug, Clone)]
pub struct BCVariables {
    l: usize,
    n_vars: usize,
    b: Vec<Vec<Complex64>>,
    c: Vec<Vec<Complex64>>,
    u: Vec<Complex64>,
}

impl BCVariables {
    pub fn new(
        b: Vec<Vec<Complex64>>,
        c: Vec<Vec<Complex64>>,
        u: Vec<Complex64>,
    ) -> Result<Self> {
        let rows = b.len();
        if rows < 2 || c.len() != rows || u.len() != rows - 1 {
            return Err(Error::DomainError(
                "need N+1 rows of b and c and N pole positions".into(),
            ));
        }
        let l = b[0].len();
        if l < 2 || b.iter().any(|r| r.len() != l) || c.iter().any(|r| r.len() != l) {
            return Err(Error::DomainError("ragged accessory variable rows".into()));
        }
        for (i, row) in c.iter().enumerate() {
            if (row[0] - ONE).norm() > TRACE_TOL {
                return Err(Error::DomainError(format!(
                    "c_0^({i}) must equal 1, got {}",
                    row[0]
                )));
            }
        }
        check_poles(&u)?;
        Ok(Self { l, n_vars: rows - 1, b, c, u })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// b_n^(i), 0 <= i <= N.
    pub fn b(&self, i: usize, n: usize) -> Complex64 {
        self.b[i][n]
    }

    /// c_n^(i), 0 <= i <= N.
    pub fn c(&self, i: usize, n: usize) -> Complex64 {
        self.c[i][n]
    }

    /// u_i for 1 <= i <= N.
    pub fn u_i(&self, i: usize) -> Complex64 {
        self.u[i - 1]
    }

    /// All finite poles in order: 1, u_1, .., u_N, 0.
    pub fn poles(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.n_vars + 2);
        out.push(ONE);
        out.extend_from_slice(&self.u);
        out.push(ZERO);
        out
    }
}

fn check_poles(u: &[Complex64]) -> Result<()> {
    for (k, &uk) in u.iter().enumerate() {
        if uk.norm() < POLE_CLEARANCE || (uk - ONE).norm() < POLE_CLEARANCE {
            return Err(Error::SingularPoint(format!(
                "pole u_{} collides with 0 or 1",
                k + 1
            )));
        }
        for &um in &u[..k] {
            if (uk - um).norm() < POLE_CLEARANCE {
                return Err(Error::SingularPoint(format!("pole u_{} is repeated", k + 1)));
            }
        }
    }
    Ok(())
}

/// Realizes a phase-space point as accessory variables.  The diagonal gauge
/// freedom is fixed by prescribing c_n^(0) for n = 1..L-1; the index-0
/// entries follow from the auxiliary momenta, which makes both trace
/// constraints hold identically.
pub fn qp_to_bc(
    x: &[Complex64],
    pt: &PhasePoint,
    sp: &SystemParams,
    gauge: &[Complex64],
) -> Result<BCVariables> {
    let l = sp.l();
    let nv = sp.n_vars();
    if x.len() != nv || pt.l() != l || pt.n_vars() != nv {
        return Err(Error::DomainError("dimension mismatch".into()));
    }
    if gauge.len() != l - 1 {
        return Err(Error::DomainError(format!(
            "gauge needs {} entries, got {}",
            l - 1,
            gauge.len()
        )));
    }
    for (n, g) in gauge.iter().enumerate() {
        if g.norm() < 1e-14 {
            return Err(Error::ZeroGauge(n + 1));
        }
    }
    for (i, &xi) in x.iter().enumerate() {
        if xi.norm() < POLE_CLEARANCE {
            return Err(Error::SingularPoint(format!("x_{} too close to 0", i + 1)));
        }
    }

    let aux = auxiliary(pt, sp);
    let mut b = vec![vec![ZERO; l]; nv + 1];
    let mut c = vec![vec![ZERO; l]; nv + 1];

    // Row i = 0: c^(0) = (1, gauge), b_n^(0) = -p_n^(0) / c_n^(0).
    c[0][0] = ONE;
    b[0][0] = -aux.p00;
    for n in 1..l {
        c[0][n] = gauge[n - 1];
        b[0][n] = -aux.p0_row[n - 1] / gauge[n - 1];
    }
    for i in 1..=nv {
        c[i][0] = ONE;
        b[i][0] = -aux.p0_col[i - 1];
        for n in 1..l {
            c[i][n] = pt.q(n, i) * gauge[n - 1];
            b[i][n] = -pt.p(n, i) / gauge[n - 1];
        }
    }

    let u: Vec<Complex64> = x.iter().map(|&xi| ONE / xi).collect();
    BCVariables::new(b, c, u)
}

/// Recovers (x, q, p) from accessory variables.
pub fn bc_to_qp(bc: &BCVariables) -> Result<(Vec<Complex64>, PhasePoint)> {
    let l = bc.l();
    let nv = bc.n_vars();
    let x: Vec<Complex64> = (1..=nv).map(|i| ONE / bc.u_i(i)).collect();
    let mut pt = PhasePoint::zeros(l, nv);
    for n in 1..l {
        let g = bc.c(0, n);
        if g.norm() < 1e-14 {
            return Err(Error::ZeroGauge(n));
        }
        for i in 1..=nv {
            pt.set_q(n, i, bc.c(i, n) / g);
            pt.set_p(n, i, -bc.b(i, n) * g);
        }
    }
    Ok((x, pt))
}

/// The residue matrices of a Fuchsian system together with its finite poles.
#[derive(Debug, Clone)]
pub struct FuchsianData {
    l: usize,
    poles: Vec<Complex64>,
    residues: Vec<DMatrix<Complex64>>,
}

impl FuchsianData {
    pub fn l(&self) -> usize {
        self.l
    }

    /// Finite poles: 1, u_1, .., u_N, 0.
    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    /// Residue matrix at poles()[k].
    pub fn residue(&self, k: usize) -> &DMatrix<Complex64> {
        &self.residues[k]
    }

    /// The residue at infinity, minus the sum of all finite residues.
    pub fn a_infinity(&self) -> DMatrix<Complex64> {
        let mut s = DMatrix::from_element(self.l, self.l, ZERO);
        for m in &self.residues {
            s += m;
        }
        -s
    }

    /// A(z), rejecting z within clearance of a pole.
    pub fn a_at(&self, z: Complex64) -> Result<DMatrix<Complex64>> {
        let mut out = DMatrix::from_element(self.l, self.l, ZERO);
        for (m, &pole) in self.residues.iter().zip(&self.poles) {
            let d = z - pole;
            if d.norm() < POLE_CLEARANCE {
                return Err(Error::PoleHit(z.to_string()));
            }
            out += m.map(|e| e / d);
        }
        Ok(out)
    }
}

/// Assembles residues A_0..A_{N+1} from accessory variables, enforcing both
/// trace constraints: sum_n b_n^(i) c_n^(i) = -theta_i and
/// sum_i b_n^(i) c_n^(i) = -kappa_n.
pub fn build_a_from_bc(bc: &BCVariables, sp: &SystemParams) -> Result<FuchsianData> {
    let l = bc.l();
    let nv = bc.n_vars();
    if sp.l() != l || sp.n_vars() != nv {
        return Err(Error::DomainError("parameter dimensions disagree with variables".into()));
    }

    for i in 0..=nv {
        let tr: Complex64 = (0..l).map(|n| bc.b(i, n) * bc.c(i, n)).sum();
        let miss = (tr + sp.theta_i(i)).norm();
        if miss > TRACE_TOL {
            return Err(Error::ConstraintViolation(format!(
                "trace of A_{i} is {tr}, expected {}",
                -sp.theta_i(i)
            )));
        }
    }
    for n in 0..l {
        let s: Complex64 = (0..=nv).map(|i| bc.b(i, n) * bc.c(i, n)).sum();
        let miss = (s + sp.kappa_n(n)).norm();
        if miss > TRACE_TOL {
            return Err(Error::ConstraintViolation(format!(
                "column sum {n} of accessory products is {s}, expected {}",
                -sp.kappa_n(n)
            )));
        }
    }

    let mut residues = Vec::with_capacity(nv + 2);
    for i in 0..=nv {
        residues.push(DMatrix::from_fn(l, l, |r, c| bc.b(i, r) * bc.c(i, c)));
    }
    residues.push(DMatrix::from_fn(l, l, |r, c| {
        use std::cmp::Ordering::*;
        match r.cmp(&c) {
            Equal => sp.e_n(r),
            Less => -(0..=nv).map(|i| bc.b(i, r) * bc.c(i, c)).sum::<Complex64>(),
            Greater => ZERO,
        }
    }));

    Ok(FuchsianData { l, poles: bc.poles(), residues })
}

/// The deformation matrix B_i(z) = A_i/(u_i - z) - (1/u_i) T_i, where T_i
/// carries -theta_i/L on the diagonal and the strictly lower triangle of A_i.
pub fn general_b(i: usize, bc: &BCVariables, sp: &SystemParams, z: Complex64) -> Result<DMatrix<Complex64>> {
    let l = bc.l();
    if i == 0 || i > bc.n_vars() {
        return Err(Error::DomainError(format!("deformation index {i} out of range")));
    }
    let ui = bc.u_i(i);
    let d = ui - z;
    if d.norm() < POLE_CLEARANCE {
        return Err(Error::PoleHit(z.to_string()));
    }
    let a_i = DMatrix::from_fn(l, l, |r, c| bc.b(i, r) * bc.c(i, c));
    let t = DMatrix::from_fn(l, l, |r, c| {
        if r == c {
            -sp.theta_i(i) / l as f64
        } else if r > c {
            a_i[(r, c)]
        } else {
            ZERO
        }
    });
    Ok(a_i.map(|e| e / d) - t.map(|e| e / ui))
}

/// Largest deviation between the computed eigenvalues of each residue and
/// the exponents the Riemann scheme prescribes: (-theta_i, 0, .., 0) at u_i,
/// (e_n) at zero, (kappa_n - e_n) at infinity.
pub fn riemann_scheme_residual(fd: &FuchsianData, sp: &SystemParams) -> Result<f64> {
    let l = fd.l();
    let nv = sp.n_vars();
    let mut worst: f64 = 0.0;

    for i in 0..=nv {
        let eig = eigenvalues(fd.residue(i))?;
        let mut expect = vec![ZERO; l];
        expect[0] = -sp.theta_i(i);
        worst = worst.max(matching_distance(&eig, &expect));
    }
    let eig = eigenvalues(fd.residue(nv + 1))?;
    let expect: Vec<Complex64> = (0..l).map(|n| sp.e_n(n)).collect();
    worst = worst.max(matching_distance(&eig, &expect));

    let eig = eigenvalues(&fd.a_infinity())?;
    let expect: Vec<Complex64> = (0..l).map(|n| sp.kappa_n(n) - sp.e_n(n)).collect();
    worst = worst.max(matching_distance(&eig, &expect));
    Ok(worst)
}

/// Coordinates on the reducible subvariety: the scalar f and the b_n^(i)
/// for i = 1..N, n = 1..L-1, at pole positions u.
#[derive(Debug, Clone)]
pub struct ReducedState {
    l: usize,
    n_vars: usize,
    u: Vec<Complex64>,
    f: Complex64,
    b: Vec<Vec<Complex64>>,
}

impl ReducedState {
    pub fn new(u: Vec<Complex64>, f: Complex64, b: Vec<Vec<Complex64>>) -> Result<Self> {
        let nv = u.len();
        if nv == 0 || b.len() != nv {
            return Err(Error::DomainError("need one row of b per pole".into()));
        }
        let lm1 = b[0].len();
        if lm1 == 0 || b.iter().any(|r| r.len() != lm1) {
            return Err(Error::DomainError("ragged reduced-state rows".into()));
        }
        check_poles(&u)?;
        if f.norm() < 1e-14 {
            return Err(Error::DomainError("the scalar f must be nonzero".into()));
        }
        Ok(Self { l: lm1 + 1, n_vars: nv, u, f, b })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn u_i(&self, i: usize) -> Complex64 {
        self.u[i - 1]
    }

    pub fn f(&self) -> Complex64 {
        self.f
    }

    /// b_n^(i) for 1 <= i <= N, 1 <= n <= L-1.
    pub fn b_n(&self, i: usize, n: usize) -> Complex64 {
        self.b[i - 1][n - 1]
    }
}

/// Embeds a reduced state into the full accessory variables:
/// b^(0) = (0, -kappa_n f), c^(0) = (1, 1/f, .., 1/f),
/// b^(i) = (-theta_i, b_n^(i)), c^(i) = (1, 0, .., 0).
pub fn reduced_to_bc(rs: &ReducedState, sp: &SystemParams) -> Result<BCVariables> {
    let l = rs.l();
    let nv = rs.n_vars();
    if sp.l() != l || sp.n_vars() != nv {
        return Err(Error::DomainError("parameter dimensions disagree with state".into()));
    }
    let mut b = vec![vec![ZERO; l]; nv + 1];
    let mut c = vec![vec![ZERO; l]; nv + 1];
    c[0][0] = ONE;
    for n in 1..l {
        c[0][n] = ONE / rs.f;
        b[0][n] = -sp.kappa_n(n) * rs.f;
    }
    for i in 1..=nv {
        c[i][0] = ONE;
        b[i][0] = -sp.theta_i(i);
        for n in 1..l {
            b[i][n] = rs.b_n(i, n);
        }
    }
    BCVariables::new(b, c, rs.u.clone())
}

/// Residue matrices on the subvariety, straight from their closed forms:
/// A_0 has first column (0, -kappa_n f) and constant rows (0, -kappa_n, ..);
/// A_i is the first-column matrix (-theta_i, b_1^(i), .., b_{L-1}^(i));
/// A_{N+1} is upper triangular with diagonal e and kappa_m filling row m
/// strictly right of the first superdiagonal entry.
pub fn reduced_residues(rs: &ReducedState, sp: &SystemParams) -> Result<FuchsianData> {
    let l = rs.l();
    let nv = rs.n_vars();
    if sp.l() != l || sp.n_vars() != nv {
        return Err(Error::DomainError("parameter dimensions disagree with state".into()));
    }
    let red = check_reducibility(sp);
    if !red.reducible {
        return Err(Error::NotReducible(red.residual));
    }

    let mut residues = Vec::with_capacity(nv + 2);
    residues.push(DMatrix::from_fn(l, l, |r, c| {
        if r == 0 {
            ZERO
        } else if c == 0 {
            -sp.kappa_n(r) * rs.f
        } else {
            -sp.kappa_n(r)
        }
    }));
    for i in 1..=nv {
        residues.push(DMatrix::from_fn(l, l, |r, c| {
            if c != 0 {
                ZERO
            } else if r == 0 {
                -sp.theta_i(i)
            } else {
                rs.b_n(i, r)
            }
        }));
    }
    residues.push(DMatrix::from_fn(l, l, |r, c| {
        use std::cmp::Ordering::*;
        match r.cmp(&c) {
            Equal => sp.e_n(r),
            Less => {
                if r == 0 {
                    ZERO
                } else {
                    sp.kappa_n(r)
                }
            }
            Greater => ZERO,
        }
    }));

    let mut poles = Vec::with_capacity(nv + 2);
    poles.push(ONE);
    poles.extend_from_slice(&rs.u);
    poles.push(ZERO);
    Ok(FuchsianData { l, poles, residues })
}

/// B_i(z) on the subvariety in its closed form:
/// (theta_i / (L u_i)) diag(1-L, 1, .., 1) + z/(u_i(u_i - z)) A_i.
pub fn reduced_b(i: usize, rs: &ReducedState, sp: &SystemParams, z: Complex64) -> Result<DMatrix<Complex64>> {
    let l = rs.l();
    if i == 0 || i > rs.n_vars() {
        return Err(Error::DomainError(format!("deformation index {i} out of range")));
    }
    let ui = rs.u_i(i);
    if (ui - z).norm() < POLE_CLEARANCE {
        return Err(Error::PoleHit(z.to_string()));
    }
    let lead = sp.theta_i(i) / (l as f64 * ui);
    let s = z / (ui * (ui - z));
    Ok(DMatrix::from_fn(l, l, |r, c| {
        let a = if c != 0 {
            ZERO
        } else if r == 0 {
            -sp.theta_i(i)
        } else {
            rs.b_n(i, r)
        };
        let diag = if r != c {
            ZERO
        } else if r == 0 {
            lead * (1.0 - l as f64)
        } else {
            lead
        };
        diag + s * a
    }))
}

/// du_i-derivatives of the reduced coordinates.
#[derive(Debug, Clone)]
pub struct ReducedDerivatives {
    /// df/du_i.
    pub df_du: Complex64,
    /// db[j-1][n-1] = d b_n^(j) / du_i.
    pub db_du: Vec<Vec<Complex64>>,
}

impl ReducedDerivatives {
    pub fn db(&self, j: usize, n: usize) -> Complex64 {
        self.db_du[j - 1][n - 1]
    }
}

/// The right side of the deformation equations in the direction u_i:
///
/// ```text
/// u_i (1 - u_i) df/du_i = -u_i theta_i f + sum_m b_m^(i)
/// (u_i - u_j) db_n^(j)/du_i = theta_i b_n^(j) - (u_j/u_i) theta_j b_n^(i)
/// db_n^(i)/du_i = [ (e_n - e_0 + theta_i) b_n^(i) + kappa_n sum_{m>n} b_m^(i) ] / u_i
///               + kappa_n [ theta_i f - sum_m b_m^(i) ] / (u_i - 1)
///               - sum_{j != i} [ theta_i b_n^(j) - theta_j b_n^(i) ] / (u_i - u_j)
/// ```
pub fn reduced_rhs(rs: &ReducedState, sp: &SystemParams, i: usize) -> Result<ReducedDerivatives> {
    let l = rs.l();
    let nv = rs.n_vars();
    if sp.l() != l || sp.n_vars() != nv {
        return Err(Error::DomainError("parameter dimensions disagree with state".into()));
    }
    if i == 0 || i > nv {
        return Err(Error::DomainError(format!("deformation index {i} out of range")));
    }
    let ui = rs.u_i(i);
    let ti = sp.theta_i(i);
    let b_sum_i: Complex64 = (1..l).map(|m| rs.b_n(i, m)).sum();

    let df_du = (-ui * ti * rs.f + b_sum_i) / (ui * (ONE - ui));

    let mut db_du = vec![vec![ZERO; l - 1]; nv];
    for j in 1..=nv {
        if j == i {
            continue;
        }
        let uj = rs.u_i(j);
        let tj = sp.theta_i(j);
        for n in 1..l {
            db_du[j - 1][n - 1] =
                (ti * rs.b_n(j, n) - (uj / ui) * tj * rs.b_n(i, n)) / (ui - uj);
        }
    }
    for n in 1..l {
        let tail: Complex64 = (n + 1..l).map(|m| rs.b_n(i, m)).sum();
        let mut d = ((sp.e_n(n) - sp.e_n(0) + ti) * rs.b_n(i, n) + sp.kappa_n(n) * tail) / ui
            + sp.kappa_n(n) * (ti * rs.f - b_sum_i) / (ui - ONE);
        for j in 1..=nv {
            if j == i {
                continue;
            }
            d -= (ti * rs.b_n(j, n) - sp.theta_i(j) * rs.b_n(i, n)) / (ui - rs.u_i(j));
        }
        db_du[i - 1][n - 1] = d;
    }
    Ok(ReducedDerivatives { df_du, db_du })
}

/// Zero-curvature residual dA/du_i - dB_i/dz + [A, B_i] at a spectral point,
/// with the u_i-derivatives of (f, b) supplied explicitly.  The explicit
/// pole-motion terms A_i/(z-u_i)^2 of dA/du_i and -dB_i/dz cancel exactly,
/// so what remains is the parameter variation plus the commutator.
pub fn zero_curvature_residual_with(
    i: usize,
    rs: &ReducedState,
    sp: &SystemParams,
    z: Complex64,
    d: &ReducedDerivatives,
) -> Result<f64> {
    let l = rs.l();
    let nv = rs.n_vars();
    let fd = reduced_residues(rs, sp)?;
    let poles = fd.poles().to_vec();
    for &pole in &poles {
        if (z - pole).norm() < POLE_CLEARANCE {
            return Err(Error::PoleHit(z.to_string()));
        }
    }

    // Parameter variation of the residues: A_0 through f, A_j through b^(j).
    let da0 = DMatrix::from_fn(l, l, |r, c| {
        if r == 0 || c != 0 {
            ZERO
        } else {
            -sp.kappa_n(r) * d.df_du
        }
    });
    let mut residual = da0.map(|e| e / (z - ONE));
    for j in 1..=nv {
        let daj = DMatrix::from_fn(l, l, |r, c| {
            if c != 0 || r == 0 {
                ZERO
            } else {
                d.db(j, r)
            }
        });
        residual += daj.map(|e| e / (z - rs.u_i(j)));
    }

    let a = fd.a_at(z)?;
    let bi = reduced_b(i, rs, sp, z)?;
    residual += &a * &bi - &bi * &a;

    Ok(crate::pfaffian::mat_max_abs(&residual))
}

/// Zero-curvature residual with the derivatives taken from the deformation
/// equations themselves; vanishes identically in exact arithmetic.
pub fn zero_curvature_residual(
    i: usize,
    rs: &ReducedState,
    sp: &SystemParams,
    z: Complex64,
) -> Result<f64> {
    let d = reduced_rhs(rs, sp, i)?;
    zero_curvature_residual_with(i, rs, sp, z, &d)
}

/// prod_j u_j^{theta_j} on principal branches.
fn theta_power(u: &[Complex64], sp: &SystemParams) -> Complex64 {
    let mut log = ZERO;
    for (j, &uj) in u.iter().enumerate() {
        log += sp.theta_i(j + 1) * uj.ln();
    }
    log.exp()
}

/// Converts a reduced state to Pfaffian coordinates:
/// x_i = 1/u_i, y_0 = f / prod u^theta, y_n^(i) = b_n^(i) / (theta_i prod u^theta).
pub fn reduced_to_pfaffian(
    rs: &ReducedState,
    sp: &SystemParams,
) -> Result<(Vec<Complex64>, SolutionVector)> {
    let l = rs.l();
    let nv = rs.n_vars();
    if sp.l() != l || sp.n_vars() != nv {
        return Err(Error::DomainError("parameter dimensions disagree with state".into()));
    }
    for i in 1..=nv {
        if sp.theta_i(i).norm() < 1e-14 {
            return Err(Error::ZeroTheta(i));
        }
    }
    let pw = theta_power(&rs.u, sp);
    let x: Vec<Complex64> = rs.u.iter().map(|&ui| ONE / ui).collect();
    let mut y = SolutionVector::zeros(l, nv);
    y.set_y0(rs.f / pw);
    for i in 1..=nv {
        for n in 1..l {
            y.set_comp(n, i, rs.b_n(i, n) / (sp.theta_i(i) * pw));
        }
    }
    Ok((x, y))
}

/// Inverse of reduced_to_pfaffian: u_i = 1/x_i, f = y_0 prod u^theta,
/// b_n^(i) = theta_i y_n^(i) prod u^theta.
pub fn pfaffian_to_reduced(
    x: &[Complex64],
    y: &SolutionVector,
    sp: &SystemParams,
) -> Result<ReducedState> {
    let l = sp.l();
    let nv = sp.n_vars();
    if x.len() != nv || y.l() != l || y.n_vars() != nv {
        return Err(Error::DomainError("dimension mismatch".into()));
    }
    for (i, &xi) in x.iter().enumerate() {
        if xi.norm() < POLE_CLEARANCE {
            return Err(Error::SingularPoint(format!("x_{} too close to 0", i + 1)));
        }
    }
    let u: Vec<Complex64> = x.iter().map(|&xi| ONE / xi).collect();
    let pw = theta_power(&u, sp);
    let f = y.y0() * pw;
    let b: Vec<Vec<Complex64>> = (1..=nv)
        .map(|i| (1..l).map(|n| sp.theta_i(i) * y.comp(n, i) * pw).collect())
        .collect();
    ReducedState::new(u, f, b)
}
