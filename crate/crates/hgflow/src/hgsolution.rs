//! Hypergeometric particular solutions of the Hamiltonian system.
//!
//! When the parameters satisfy kappa_0 = theta_1 + .. + theta_N, the system
//! admits solutions with q_n^(i) = 0 identically and
//!
//! ```text
//! p_n^(i) = -theta_i y_n^(i) / y_0,
//! ```
//!
//! where (y_0, y_n^(i)) is any solution of the linear Pfaffian system with
//!
//! ```text
//! alpha_n = e_n - e_0,   beta_i = -theta_i,   gamma_n = e_n - e_0 - kappa_n.
//! ```
//!
//! The check offered here is exact in structure: both sides of the
//! canonical equations are evaluated in closed form (forward-mode duals on
//! the Hamiltonian side, the Pfaffian connection plus quotient rule on the
//! claimed solution), so the residual involves no numerical differencing.

use num_complex::Complex64;

use crate::error::Error;
use crate::hamiltonian::{canonical_vector_field, PhasePoint};
use crate::params::{check_reducibility, map_system_to_hg, HGParams, SystemParams};
use crate::pfaffian::{holomorphic_solution, scalar_derivative, SolutionVector};
use crate::Result;

/// A candidate solution point: parameters, position, the linear-solution
/// vector, and the phase point it induces.
#[derive(Debug, Clone)]
pub struct HGSolutionState {
    sp: SystemParams,
    hp: HGParams,
    x: Vec<Complex64>,
    y: SolutionVector,
    pt: PhasePoint,
}

impl HGSolutionState {
    pub fn system(&self) -> &SystemParams {
        &self.sp
    }

    pub fn hg(&self) -> &HGParams {
        &self.hp
    }

    pub fn x(&self) -> &[Complex64] {
        &self.x
    }

    pub fn y(&self) -> &SolutionVector {
        &self.y
    }

    pub fn point(&self) -> &PhasePoint {
        &self.pt
    }
}

/// Builds the phase point induced by an arbitrary solution vector of the
/// linear system.  Any y with y_0 != 0 is admissible, which realizes the
/// full multi-parameter family of particular solutions at once.
pub fn build_hg_solution_from_vector(
    sp: &SystemParams,
    x: &[Complex64],
    y: SolutionVector,
) -> Result<HGSolutionState> {
    let l = sp.l();
    let nv = sp.n_vars();
    if x.len() != nv || y.l() != l || y.n_vars() != nv {
        return Err(Error::DomainError("dimension mismatch".into()));
    }
    let red = check_reducibility(sp);
    if !red.reducible {
        return Err(Error::NotReducible(red.residual));
    }
    let hp = map_system_to_hg(sp)?;
    let y0 = y.y0();
    if y0.norm() < 1e-12 * y.max_abs().max(1e-100) {
        return Err(Error::ZeroDenominator(format!("y_0 = {y0}")));
    }
    let mut pt = PhasePoint::zeros(l, nv);
    for n in 1..l {
        for i in 1..=nv {
            pt.set_p(n, i, -sp.theta_i(i) * y.comp(n, i) / y0);
        }
    }
    Ok(HGSolutionState { sp: sp.clone(), hp, x: x.to_vec(), y, pt })
}

/// Builds the distinguished member of the family: the solution vector that
/// is holomorphic at the origin, summed to the given series order.
pub fn build_hg_solution(
    sp: &SystemParams,
    x: &[Complex64],
    degree: usize,
) -> Result<HGSolutionState> {
    let red = check_reducibility(sp);
    if !red.reducible {
        return Err(Error::NotReducible(red.residual));
    }
    let hp = map_system_to_hg(sp)?;
    let hs = holomorphic_solution(&hp, degree)?;
    let y = hs.eval(x)?;
    build_hg_solution_from_vector(sp, x, y)
}

/// Deviation of a candidate from the canonical equations.
#[derive(Debug, Clone, Copy)]
pub struct ResidualReport {
    /// Largest |dq_n^(i)/dx_j| demanded by the flow; the claimed solution
    /// keeps q = 0, so this must vanish.
    pub max_dq: f64,
    /// Largest mismatch between d/dx_j of -theta_i y_n^(i)/y_0 and the
    /// canonical momentum derivative.
    pub max_dp: f64,
    /// Largest canonical derivative encountered, for scale.
    pub scale: f64,
}

/// Checks the candidate against every canonical equation at its point.
/// The x_j-derivatives of the claimed momenta come from the Pfaffian
/// connection via the quotient rule; the canonical side comes from the
/// Hamiltonian vector fields.
pub fn hamiltonian_residual(st: &HGSolutionState) -> Result<ResidualReport> {
    let sp = &st.sp;
    let l = sp.l();
    let nv = sp.n_vars();
    let fields = canonical_vector_field(&st.x, &st.pt, sp)?;
    let dy = scalar_derivative(&st.hp, &st.x, &st.y)?;
    let y0 = st.y.y0();

    let mut max_dq: f64 = 0.0;
    let mut max_dp: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for j in 1..=nv {
        let field = &fields[j - 1];
        let dyj = &dy[j - 1];
        for n in 1..l {
            for i in 1..=nv {
                scale = scale.max(field.dq(n, i).norm()).max(field.dp(n, i).norm());
                max_dq = max_dq.max(field.dq(n, i).norm());
                let claimed = -sp.theta_i(i)
                    * (dyj.comp(n, i) * y0 - st.y.comp(n, i) * dyj.y0())
                    / (y0 * y0);
                max_dp = max_dp.max((claimed - field.dp(n, i)).norm());
            }
        }
    }
    Ok(ResidualReport { max_dq, max_dp, scale })
}
