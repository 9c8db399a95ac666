//! The eight subcommands.  Each one resolves parameters, pre-draws any
//! randomness in a fixed order from the seed, runs the (possibly threaded)
//! computation, and returns a payload for rendering.

use std::path::PathBuf;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hgflow::contiguity::{all_relations, check_contiguity, Relation};
use hgflow::hamiltonian::{canonical_vector_field, flow, hamiltonian_value, PhasePoint};
use hgflow::hgsolution::{build_hg_solution, hamiltonian_residual};
use hgflow::lax::{
    reduced_residues, reduced_to_bc, riemann_scheme_residual, zero_curvature_residual,
    ReducedState,
};
use hgflow::pfaffian::{
    continue_with_samples, holomorphic_solution, scalar_derivative, PathSpec,
    PfaffianConnection, SolutionVector,
};
use hgflow::series::{
    compositions, eval_integral, eval_series, hg_pde_residual, series_coefficients,
    QuadratureSpec,
};
use hgflow::{Complex64, Error};

use crate::input::{
    draw_banded_pair, draw_point, parse_complex, parse_relation, relation_id, resolve_params,
    ParamArgs, Want,
};
use crate::output::{pairs, Check, CoeffRow, ContinueOut, EvalOut, Payload, Report, SampleRow};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check_degree(degree: usize) -> Result<(), Error> {
    if degree == 0 {
        return Err(Error::DomainError("--degree must be at least 1".into()));
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<(), Error> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::DomainError(format!("--tol must be positive, got {tol}")));
    }
    Ok(())
}

fn max_norm(v: &DVector<Complex64>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Collects per-item results, propagating the first error in input order.
fn gather<T>(items: Vec<Result<T, Error>>) -> Result<Vec<T>, Error> {
    items.into_iter().collect()
}

// ---------------------------------------------------------------- eval ----

#[derive(clap::Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Evaluation point x_1 .. x_N.
    #[arg(long, value_name = "C", num_args = 1.., value_delimiter = ',',
          allow_negative_numbers = true, value_parser = parse_complex, required = true)]
    pub x: Vec<Complex64>,
    /// Series truncation degree.
    #[arg(long, default_value_t = 40)]
    pub degree: usize,
    /// Evaluate the Euler integral representation instead of the series
    /// (needs Re gamma_k > Re alpha_k > 0).
    #[arg(long)]
    pub integral: bool,
    /// Quadrature nodes per axis for --integral.
    #[arg(long, default_value_t = 48)]
    pub nodes: usize,
    /// Also emit every series coefficient up to the truncation degree.
    #[arg(long)]
    pub dump_coefficients: bool,
}

pub fn eval_cmd(a: &EvalArgs, seed: u64) -> Result<Payload, Error> {
    check_degree(a.degree)?;
    let rp = resolve_params(&a.params, seed, Want::Series)?;
    let hp = rp.hp;
    if a.x.len() != hp.n_vars() {
        return Err(Error::DomainError(format!(
            "--x needs {} coordinates, got {}",
            hp.n_vars(),
            a.x.len()
        )));
    }
    let (value, tail_bound, method, degree, nodes) = if a.integral {
        let spec = QuadratureSpec { nodes_per_axis: a.nodes };
        let v = eval_integral(&hp, &a.x, &spec)?;
        (v, None, "integral", None, Some(a.nodes))
    } else {
        let sv = eval_series(&hp, &a.x, a.degree)?;
        (sv.value, Some(sv.tail_bound), "series", Some(a.degree), None)
    };
    let coefficients = if a.dump_coefficients {
        let ts = series_coefficients(&hp, a.degree);
        let mut rows = Vec::new();
        for s in 0..=a.degree {
            for m in compositions(s, hp.n_vars()) {
                let v = ts.coeff(&m);
                rows.push(CoeffRow { m, value: [v.re, v.im] });
            }
        }
        Some(rows)
    } else {
        None
    };
    Ok(Payload::Eval(EvalOut {
        command: "eval".into(),
        method: method.into(),
        x: pairs(&a.x),
        degree,
        nodes,
        value: [value.re, value.im],
        tail_bound,
        coefficients,
    }))
}

// ----------------------------------------------------------- pde-check ----

#[derive(clap::Args)]
pub struct PdeArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Series truncation degree.
    #[arg(long, default_value_t = 20)]
    pub degree: usize,
    /// Largest allowed scaled residual.
    #[arg(long = "tol", default_value_t = 1e-12)]
    pub tol: f64,
}

pub fn pde_cmd(a: &PdeArgs, seed: u64) -> Result<Payload, Error> {
    check_degree(a.degree)?;
    check_tol(a.tol)?;
    let rp = resolve_params(&a.params, seed, Want::Series)?;
    let hp = rp.hp;
    let scale = series_coefficients(&hp, a.degree).max_abs().max(1.0);
    let idx: Vec<usize> = (1..=hp.n_vars()).collect();
    let residuals = crate::output::parallel_map(&idx, |&i| {
        hg_pde_residual(&hp, a.degree, i).max_abs_through(a.degree - 1) / scale
    });
    let mut rep =
        Report::new("pde-check", rp.seeded.then_some(seed), Some(a.degree), a.tol);
    for (i, r) in idx.iter().zip(residuals) {
        rep.push(Check::new(format!("equation {i}"), r, a.tol));
    }
    Ok(Payload::Report(rep))
}

// ------------------------------------------------------ pfaffian-check ----

#[derive(clap::Args)]
pub struct PfaffianArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Number of random evaluation points.
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    /// Truncation degree of the holomorphic solution.
    #[arg(long, default_value_t = 60)]
    pub degree: usize,
    /// Largest allowed scaled residual.
    #[arg(long = "tol", default_value_t = 1e-9)]
    pub tol: f64,
}

pub fn pfaffian_cmd(a: &PfaffianArgs, seed: u64) -> Result<Payload, Error> {
    check_degree(a.degree)?;
    check_tol(a.tol)?;
    let rp = resolve_params(&a.params, seed, Want::Series)?;
    let hp = rp.hp.clone();
    let pc = PfaffianConnection::new(rp.hp);
    let l = hp.l();
    let nv = hp.n_vars();
    let rank = SolutionVector::rank_for(l, nv);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jobs: Vec<(Vec<Complex64>, DVector<Complex64>)> = (0..a.points.max(1))
        .map(|_| {
            let x = draw_point(nv, &mut rng);
            let y = DVector::from_fn(rank, |_, _| {
                c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            });
            (x, y)
        })
        .collect();

    let per_point = gather(crate::output::parallel_map(&jobs, |(x, y)| {
        let flat = pc.integrability_residual(x)?;
        let omega = pc.omega_at(x)?;
        let sv = SolutionVector::new(l, nv, y.clone());
        let ds = scalar_derivative(&hp, x, &sv)?;
        let mut worst = 0.0f64;
        for j in 1..=nv {
            let my = &omega[j - 1] * y;
            let scale = max_norm(&my).max(1.0);
            let diff = max_norm(&(&my - ds[j - 1].data()));
            worst = worst.max(diff / scale);
        }
        Ok((flat.max_residual / flat.scale, worst))
    }))?;
    let flatness = per_point.iter().map(|r| r.0).fold(0.0, f64::max);
    let agreement = per_point.iter().map(|r| r.1).fold(0.0, f64::max);

    // The holomorphic vector must satisfy dy = Omega y where its series
    // converges; probe it at a staggered interior point.
    let hs = holomorphic_solution(&hp, a.degree)?;
    let x0: Vec<Complex64> = (1..=nv).map(|i| c(0.05 * i as f64 / nv as f64, 0.0)).collect();
    let y0 = hs.eval(&x0)?;
    let omega0 = pc.omega_at(&x0)?;
    let yscale = y0.max_abs().max(1.0);
    let mut hol = 0.0f64;
    for j in 1..=nv {
        let lhs = hs.eval_partial(j, &x0)?;
        let rhs = &omega0[j - 1] * y0.data();
        hol = hol.max(max_norm(&(lhs.data() - rhs)) / yscale);
    }

    let mut rep = Report::new("pfaffian-check", Some(seed), Some(a.degree), a.tol);
    rep.push(Check::new(
        format!("flatness of the connection ({} points)", jobs.len()),
        flatness,
        a.tol,
    ));
    rep.push(Check::new("matrix against scalar derivatives", agreement, a.tol));
    rep.push(Check::new("holomorphic vector satisfies the system", hol, a.tol));
    Ok(Payload::Report(rep))
}

// ------------------------------------------------------------ continue ----

#[derive(clap::Args)]
pub struct ContinueArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// JSON path file: {"waypoints": [[[re,im], ...], ...]} with one inner
    /// list of N coordinates per waypoint; optional "clearance".
    #[arg(long, value_name = "FILE")]
    pub path: PathBuf,
    /// Truncation degree of the holomorphic seed at the first waypoint.
    #[arg(long, default_value_t = 60)]
    pub degree: usize,
    /// Relative tolerance of the transport integrator.
    #[arg(long = "tol", default_value_t = 1e-10)]
    pub tol: f64,
    /// Emitted samples per path segment.
    #[arg(long, default_value_t = 8)]
    pub samples: usize,
}

pub fn continue_cmd(a: &ContinueArgs, seed: u64) -> Result<Payload, Error> {
    check_degree(a.degree)?;
    check_tol(a.tol)?;
    let rp = resolve_params(&a.params, seed, Want::Series)?;
    let hp = rp.hp.clone();
    let text = std::fs::read_to_string(&a.path)
        .map_err(|e| Error::DomainError(format!("cannot read {}: {e}", a.path.display())))?;
    let path = PathSpec::from_json(&text)?;
    let pc = PfaffianConnection::new(rp.hp);
    let hs = holomorphic_solution(&hp, a.degree)?;
    let y0 = hs.eval(&path.waypoints()[0])?;
    let cont = continue_with_samples(&pc, &path, &y0, a.tol, a.samples.max(1))?;
    let samples = cont
        .samples
        .iter()
        .map(|(s, x, y)| SampleRow {
            s: *s,
            x: pairs(x),
            y: y.data().iter().map(|&z| [z.re, z.im]).collect(),
        })
        .collect();
    Ok(Payload::Continue(ContinueOut {
        command: "continue".into(),
        tolerance: a.tol,
        samples,
        final_value: cont.final_value.data().iter().map(|&z| [z.re, z.im]).collect(),
    }))
}

// ---------------------------------------------------- hamiltonian-check ----

#[derive(clap::Args)]
pub struct HamiltonianArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Number of random phase-space probes.
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    /// Largest allowed relative gap between analytic and central-difference
    /// derivatives.
    #[arg(long = "tol", default_value_t = 1e-6)]
    pub tol: f64,
    /// Largest allowed endpoint gap between the two staircase flows.
    #[arg(long, default_value_t = 1e-7)]
    pub flow_tol: f64,
}

pub fn hamiltonian_cmd(a: &HamiltonianArgs, seed: u64) -> Result<Payload, Error> {
    check_tol(a.tol)?;
    check_tol(a.flow_tol)?;
    let rp = resolve_params(&a.params, seed, Want::Spectral)?;
    let sp = rp.system()?.clone();
    let l = sp.l();
    let nv = sp.n_vars();
    let len = (l - 1) * nv;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_point = |rng: &mut ChaCha8Rng| -> Result<PhasePoint, Error> {
        let q: Vec<Complex64> =
            (0..len).map(|_| c(rng.random_range(-0.8..0.8), rng.random_range(-0.8..0.8))).collect();
        let p: Vec<Complex64> =
            (0..len).map(|_| c(rng.random_range(-0.8..0.8), rng.random_range(-0.8..0.8))).collect();
        PhasePoint::new(l, nv, q, p)
    };
    let jobs: Vec<(Vec<Complex64>, PhasePoint)> = (0..a.points.max(1))
        .map(|_| -> Result<_, Error> { Ok((draw_point(nv, &mut rng), random_point(&mut rng)?)) })
        .collect::<Result<_, _>>()?;
    let (stair_a, stair_b) = draw_banded_pair(nv, &mut rng);
    let pt0 = random_point(&mut rng)?;

    let h = 1e-6;
    let fd_residuals = gather(crate::output::parallel_map(&jobs, |(x, pt)| {
        let fields = canonical_vector_field(x, pt, &sp)?;
        let mut worst = 0.0f64;
        for j in 1..=nv {
            for n in 1..l {
                for i in 1..=nv {
                    // dq_n^(i)/dx_j = dH_j/dp_n^(i).
                    let mut plus = pt.clone();
                    plus.set_p(n, i, pt.p(n, i) + h);
                    let mut minus = pt.clone();
                    minus.set_p(n, i, pt.p(n, i) - h);
                    let fd = (hamiltonian_value(j, x, &plus, &sp)?
                        - hamiltonian_value(j, x, &minus, &sp)?)
                        / (2.0 * h);
                    let ad = fields[j - 1].dq(n, i);
                    worst = worst.max((ad - fd).norm() / ad.norm().max(1.0));

                    // dp_n^(i)/dx_j = -dH_j/dq_n^(i).
                    let mut plus = pt.clone();
                    plus.set_q(n, i, pt.q(n, i) + h);
                    let mut minus = pt.clone();
                    minus.set_q(n, i, pt.q(n, i) - h);
                    let fd = -(hamiltonian_value(j, x, &plus, &sp)?
                        - hamiltonian_value(j, x, &minus, &sp)?)
                        / (2.0 * h);
                    let ad = fields[j - 1].dp(n, i);
                    worst = worst.max((ad - fd).norm() / ad.norm().max(1.0));
                }
            }
        }
        Ok(worst)
    }))?;
    let fd_worst = fd_residuals.into_iter().fold(0.0, f64::max);

    // Staircase flows: changing one coordinate at a time, in either order,
    // must land on the same endpoint.  The transport runs well below the
    // comparison threshold because global error accumulates past the local
    // tolerance.
    let ode_tol = (a.flow_tol * 1e-4).clamp(1e-13, 1e-10);
    let run_route = |order: &[usize]| -> Result<PhasePoint, Error> {
        let mut here = stair_a.clone();
        let mut pt = pt0.clone();
        for &i in order {
            let mut next = here.clone();
            next[i - 1] = stair_b[i - 1];
            pt = flow(&here, &next, &pt, &sp, ode_tol)?;
            here = next;
        }
        Ok(pt)
    };
    let forward: Vec<usize> = (1..=nv).collect();
    let backward: Vec<usize> = (1..=nv).rev().collect();
    let end1 = run_route(&forward)?;
    let end2 = run_route(&backward)?;
    let mut stair_gap = 0.0f64;
    for n in 1..l {
        for i in 1..=nv {
            stair_gap = stair_gap.max((end1.q(n, i) - end2.q(n, i)).norm());
            stair_gap = stair_gap.max((end1.p(n, i) - end2.p(n, i)).norm());
        }
    }

    let mut rep = Report::new("hamiltonian-check", Some(seed), None, a.tol);
    rep.push(Check::new(
        format!("canonical field against central differences ({} points)", jobs.len()),
        fd_worst,
        a.tol,
    ));
    rep.push(Check::new("staircase flow endpoint agreement", stair_gap, a.flow_tol));
    Ok(Payload::Report(rep))
}

// ----------------------------------------------------------- lax-check ----

#[derive(clap::Args)]
pub struct LaxArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Number of spectral points for the zero-curvature probe.
    #[arg(long, default_value_t = 20)]
    pub z_samples: usize,
    /// Largest allowed residual.
    #[arg(long = "tol", default_value_t = 1e-10)]
    pub tol: f64,
}

pub fn lax_cmd(a: &LaxArgs, seed: u64) -> Result<Payload, Error> {
    check_tol(a.tol)?;
    let rp = resolve_params(&a.params, seed, Want::ReducibleSpectral)?;
    let sp = rp.system()?.clone();
    let l = sp.l();
    let nv = sp.n_vars();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u: Vec<Complex64> = (0..nv)
        .map(|i| {
            let lo = 1.4 + 0.9 * i as f64;
            c(rng.random_range(lo..lo + 0.6), rng.random_range(-0.35..0.35))
        })
        .collect();
    let f = c(rng.random_range(0.5..1.2), rng.random_range(-0.4..0.4));
    let b: Vec<Vec<Complex64>> = (0..nv)
        .map(|_| {
            (0..l - 1)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect()
        })
        .collect();
    let rs = ReducedState::new(u.clone(), f, b)?;

    let fd = reduced_residues(&rs, &sp)?;
    let spectrum = riemann_scheme_residual(&fd, &sp)?;

    let bc = reduced_to_bc(&rs, &sp)?;
    let mut rows = Vec::new();
    for i in 0..=nv {
        let s: Complex64 = (0..l).map(|n| bc.b(i, n) * bc.c(i, n)).sum();
        rows.push((format!("trace sum, row {i}"), (s + sp.theta_i(i)).norm()));
    }
    for n in 0..l {
        let s: Complex64 = (0..=nv).map(|i| bc.b(i, n) * bc.c(i, n)).sum();
        rows.push((format!("trace sum, column {n}"), (s + sp.kappa_n(n)).norm()));
    }

    let mut poles = vec![c(0.0, 0.0), c(1.0, 0.0)];
    poles.extend(u.iter().copied());
    let zs: Vec<Complex64> = (0..a.z_samples.max(1))
        .map(|_| loop {
            let z = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            if poles.iter().all(|&p| (z - p).norm() >= 0.2) {
                break z;
            }
        })
        .collect();
    let jobs: Vec<(usize, Complex64)> =
        (1..=nv).flat_map(|i| zs.iter().map(move |&z| (i, z))).collect();
    let curls = gather(crate::output::parallel_map(&jobs, |&(i, z)| {
        zero_curvature_residual(i, &rs, &sp, z)
    }))?;
    let mut curvature = vec![0.0f64; nv];
    for (&(i, _), r) in jobs.iter().zip(curls) {
        curvature[i - 1] = curvature[i - 1].max(r);
    }

    let mut rep = Report::new("lax-check", Some(seed), None, a.tol);
    rep.push(Check::new("residue spectrum matches the exponents", spectrum, a.tol));
    for (name, r) in rows {
        rep.push(Check::new(name, r, a.tol));
    }
    for (i, r) in curvature.iter().enumerate() {
        rep.push(Check::new(
            format!("zero curvature, direction {} ({} samples)", i + 1, zs.len()),
            *r,
            a.tol,
        ));
    }
    Ok(Payload::Report(rep))
}

// ------------------------------------------------------ verify-theorem ----

#[derive(clap::Args)]
pub struct TheoremArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Evaluation point x_1 .. x_N (defaults to x_i = 0.3 / 2^i).
    #[arg(long, value_name = "C", num_args = 1.., value_delimiter = ',',
          allow_negative_numbers = true, value_parser = parse_complex)]
    pub x: Vec<Complex64>,
    /// Truncation degree of the holomorphic solution.
    #[arg(long, default_value_t = 80)]
    pub degree: usize,
    /// Largest allowed canonical-equation residual.
    #[arg(long = "tol", default_value_t = 1e-8)]
    pub tol: f64,
}

pub fn theorem_cmd(a: &TheoremArgs, seed: u64) -> Result<Payload, Error> {
    check_degree(a.degree)?;
    check_tol(a.tol)?;
    let rp = resolve_params(&a.params, seed, Want::ReducibleSpectral)?;
    let sp = rp.system()?;
    let nv = sp.n_vars();
    let x: Vec<Complex64> = if a.x.is_empty() {
        (1..=nv as i32).map(|i| c(0.3 * 0.5f64.powi(i), 0.0)).collect()
    } else {
        a.x.clone()
    };
    if x.len() != nv {
        return Err(Error::DomainError(format!(
            "--x needs {nv} coordinates, got {}",
            x.len()
        )));
    }
    let st = build_hg_solution(sp, &x, a.degree)?;
    let res = hamiltonian_residual(&st)?;
    let mut rep =
        Report::new("verify-theorem", rp.seeded.then_some(seed), Some(a.degree), a.tol);
    rep.push(Check::new("coordinate equations (q stays zero)", res.max_dq, a.tol));
    rep.push(Check::new("momentum equations", res.max_dp, a.tol));
    Ok(Payload::Report(rep))
}

// ----------------------------------------------------- contiguity-check ----

#[derive(clap::Args)]
pub struct ContiguityArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Check every relation for this shape (the default).
    #[arg(long, conflicts_with = "relation")]
    pub all: bool,
    /// Check a single relation: shift-alpha-up, shift-beta-up,
    /// shift-gamma-up, shift-alpha-down, shift-gamma-down, exchange-beta,
    /// raise-all.
    #[arg(long, value_name = "NAME")]
    pub relation: Option<String>,
    /// 1-based parameter slot for --relation.
    #[arg(long, value_name = "K")]
    pub slot: Option<usize>,
    /// Second slot for exchange-beta.
    #[arg(long, value_name = "K")]
    pub slot2: Option<usize>,
    /// Series truncation degree.
    #[arg(long, default_value_t = 20)]
    pub degree: usize,
    /// Largest allowed relative coefficient discrepancy.
    #[arg(long = "tol", default_value_t = 1e-12)]
    pub tol: f64,
}

pub fn contiguity_cmd(a: &ContiguityArgs, seed: u64) -> Result<Payload, Error> {
    check_degree(a.degree)?;
    check_tol(a.tol)?;
    let rp = resolve_params(&a.params, seed, Want::Series)?;
    let hp = rp.hp;
    let rels: Vec<Relation> = match &a.relation {
        Some(name) => vec![parse_relation(name, a.slot, a.slot2)?],
        None => all_relations(hp.l(), hp.n_vars()),
    };
    let results = gather(crate::output::parallel_map(&rels, |rel| {
        check_contiguity(rel, &hp, a.degree)
    }))?;
    let mut rep = Report::new(
        "contiguity-check",
        rp.seeded.then_some(seed),
        Some(a.degree),
        a.tol,
    );
    for (rel, r) in rels.iter().zip(results) {
        let (id, slot) = relation_id(rel);
        rep.push(Check::new(format!("{rel}"), r, a.tol).with_relation(id, slot));
    }
    Ok(Payload::Report(rep))
}
