//! Argument parsing helpers: complex tokens, parameter resolution, and the
//! deterministic draws used when no explicit parameters are given.

use hgflow::contiguity::Relation;
use hgflow::params::{
    check_reducibility, map_system_to_hg, parse_params_json, random_params,
    reducible_system_from_hg, HGParams, ParamsFile, SystemParams,
};
use hgflow::{Complex64, Error};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Parses a complex token: `re`, `re+imj` or `re-imj`, e.g. `0.3`, `-0.25`,
/// `0.1-0.7j`.  Used as a clap value parser, so the error type is `String`.
pub fn parse_complex(token: &str) -> Result<Complex64, String> {
    let s = token.trim();
    if s.is_empty() {
        return Err("empty complex token".into());
    }
    let bad = |_| format!("invalid complex token `{token}` (expected re or re+imj)");
    if let Some(body) = s.strip_suffix(['j', 'J']) {
        // Split before the sign of the imaginary part, skipping exponent signs.
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k];
            if (c == b'+' || c == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re: f64 = body[..k].parse().map_err(bad)?;
                let im: f64 = body[k..].parse().map_err(bad)?;
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = body.parse().map_err(bad)?;
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = s.parse().map_err(bad)?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// Renders a complex number in the same token syntax `parse_complex` accepts.
pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}j", z.re, -z.im)
    } else {
        format!("{}+{}j", z.re, z.im)
    }
}

/// Shared parameter flags.  Exactly one source may be used: a JSON file,
/// inline series parameters, inline spectral parameters, or (absent all of
/// those) a draw from the seed.
#[derive(clap::Args, Debug)]
pub struct ParamArgs {
    /// JSON parameter file, series form {"L","N","alpha","beta","gamma"}
    /// or spectral form {"L","N","e","kappa","theta"}.
    #[arg(long, value_name = "FILE",
          conflicts_with_all = ["alpha", "beta", "gamma", "e", "kappa", "theta"])]
    pub params: Option<std::path::PathBuf>,

    /// Matrix size L >= 2 (there are L - 1 upper and lower series parameters).
    #[arg(long = "L", value_name = "L")]
    pub l: Option<usize>,

    /// Number of variables N >= 1.
    #[arg(long = "N", value_name = "N")]
    pub n: Option<usize>,

    /// Upper series parameters alpha_1 .. alpha_{L-1}.
    #[arg(long, value_name = "C", num_args = 1.., value_delimiter = ',',
          allow_negative_numbers = true, value_parser = parse_complex)]
    pub alpha: Vec<Complex64>,

    /// Variable-attached series parameters beta_1 .. beta_N.
    #[arg(long, value_name = "C", num_args = 1.., value_delimiter = ',',
          allow_negative_numbers = true, value_parser = parse_complex)]
    pub beta: Vec<Complex64>,

    /// Lower series parameters gamma_1 .. gamma_{L-1}.
    #[arg(long, value_name = "C", num_args = 1.., value_delimiter = ',',
          allow_negative_numbers = true, value_parser = parse_complex)]
    pub gamma: Vec<Complex64>,

    /// Spectral exponents e_0 .. e_{L-1} (must sum to (L-1)/2).
    #[arg(long, value_name = "C", num_args = 1.., value_delimiter = ',',
          allow_negative_numbers = true, value_parser = parse_complex,
          conflicts_with_all = ["alpha", "beta", "gamma"])]
    pub e: Vec<Complex64>,

    /// Spectral shifts kappa_0 .. kappa_{L-1}.
    #[arg(long, value_name = "C", num_args = 1.., value_delimiter = ',',
          allow_negative_numbers = true, value_parser = parse_complex,
          conflicts_with_all = ["alpha", "beta", "gamma"])]
    pub kappa: Vec<Complex64>,

    /// Local exponents theta_0 .. theta_N, or theta_1 .. theta_N with --N set
    /// (theta_0 is then derived from the Fuchs relation).
    #[arg(long, value_name = "C", num_args = 1.., value_delimiter = ',',
          allow_negative_numbers = true, value_parser = parse_complex,
          conflicts_with_all = ["alpha", "beta", "gamma"])]
    pub theta: Vec<Complex64>,
}

/// What a command needs from the parameters.
#[derive(Clone, Copy, PartialEq)]
pub enum Want {
    /// Series parameters; spectral input is translated through the dictionary.
    Series,
    /// Spectral parameters; series input is lifted to the reducible stratum.
    Spectral,
    /// Spectral parameters satisfying kappa_0 = theta_1 + ... + theta_N.
    ReducibleSpectral,
}

/// A resolved parameter set plus whether a random draw was involved.
pub struct ResolvedParams {
    pub sp: Option<SystemParams>,
    pub hp: HGParams,
    pub seeded: bool,
}

impl ResolvedParams {
    pub fn system(&self) -> Result<&SystemParams, Error> {
        self.sp.as_ref().ok_or_else(|| {
            Error::DomainError("this command needs spectral parameters".into())
        })
    }
}

fn check_ln(
    pa: &ParamArgs,
    l: usize,
    n: usize,
) -> Result<(), Error> {
    if let Some(want) = pa.l {
        if want != l {
            return Err(Error::DomainError(format!(
                "--L {want} contradicts the parameter lists (L = {l})"
            )));
        }
    }
    if let Some(want) = pa.n {
        if want != n {
            return Err(Error::DomainError(format!(
                "--N {want} contradicts the parameter lists (N = {n})"
            )));
        }
    }
    Ok(())
}

/// Resolves the parameter flags to a concrete parameter set.
pub fn resolve_params(pa: &ParamArgs, seed: u64, want: Want) -> Result<ResolvedParams, Error> {
    let lift = |hp: HGParams| -> Result<ResolvedParams, Error> {
        let sp = match want {
            Want::Series => None,
            Want::Spectral | Want::ReducibleSpectral => {
                Some(reducible_system_from_hg(&hp)?)
            }
        };
        Ok(ResolvedParams { sp, hp, seeded: false })
    };
    let accept = |sp: SystemParams| -> Result<ResolvedParams, Error> {
        if want == Want::ReducibleSpectral {
            let red = check_reducibility(&sp);
            if !red.reducible {
                return Err(Error::NotReducible(red.residual));
            }
        }
        let hp = map_system_to_hg(&sp)?;
        Ok(ResolvedParams { sp: Some(sp), hp, seeded: false })
    };

    if let Some(path) = &pa.params {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::DomainError(format!("cannot read {}: {e}", path.display()))
        })?;
        return match parse_params_json(&text)? {
            ParamsFile::Hypergeometric(hp) => {
                check_ln(pa, hp.l(), hp.n_vars())?;
                lift(hp)
            }
            ParamsFile::System(sp) => {
                check_ln(pa, sp.l(), sp.n_vars())?;
                accept(sp)
            }
        };
    }

    let series_given = !pa.alpha.is_empty() || !pa.beta.is_empty() || !pa.gamma.is_empty();
    let spectral_given = !pa.e.is_empty() || !pa.kappa.is_empty() || !pa.theta.is_empty();

    if series_given {
        if pa.alpha.is_empty() || pa.beta.is_empty() || pa.gamma.is_empty() {
            return Err(Error::DomainError(
                "series parameters need --alpha, --beta and --gamma together".into(),
            ));
        }
        let hp = HGParams::new(pa.alpha.clone(), pa.beta.clone(), pa.gamma.clone())?;
        check_ln(pa, hp.l(), hp.n_vars())?;
        return lift(hp);
    }

    if spectral_given {
        if pa.e.is_empty() || pa.kappa.is_empty() || pa.theta.is_empty() {
            return Err(Error::DomainError(
                "spectral parameters need --e, --kappa and --theta together".into(),
            ));
        }
        let l = pa.e.len();
        let sp = match pa.n {
            Some(n) if pa.theta.len() == n => SystemParams::with_derived_theta0(
                pa.e.clone(),
                pa.kappa.clone(),
                pa.theta.clone(),
            )?,
            _ => SystemParams::new(pa.e.clone(), pa.kappa.clone(), pa.theta.clone())?,
        };
        check_ln(pa, l, sp.n_vars())?;
        return accept(sp);
    }

    // No explicit source: draw deterministically from the seed.
    let l = pa.l.unwrap_or(2);
    let n = pa.n.unwrap_or(1);
    let sp = random_params(seed, l, n, want == Want::ReducibleSpectral)?;
    let hp = map_system_to_hg(&sp)?;
    Ok(ResolvedParams { sp: Some(sp), hp, seeded: true })
}

/// Draws an evaluation point with Im x_i in (0.15, 0.7), Re x_i in
/// (-0.8, 0.8) and pairwise coordinate separation at least 0.05, safely off
/// the singular locus.
pub fn draw_point(n_vars: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    'outer: loop {
        let pt: Vec<Complex64> = (0..n_vars)
            .map(|_| Complex64::new(rng.random_range(-0.8..0.8), rng.random_range(0.15..0.7)))
            .collect();
        for i in 0..n_vars {
            for j in 0..i {
                if (pt[i] - pt[j]).norm() < 0.05 {
                    continue 'outer;
                }
            }
        }
        return pt;
    }
}

/// Draws a pair of points whose i-th coordinates stay in disjoint horizontal
/// bands, so every mixture of coordinates from the two points (as visited by
/// staircase paths) keeps its distance from the singular locus.
pub fn draw_banded_pair(
    n_vars: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let step = 0.5 / n_vars as f64;
    let width = step.min(0.12) / 2.0;
    let mut a = Vec::with_capacity(n_vars);
    let mut b = Vec::with_capacity(n_vars);
    for i in 0..n_vars {
        let lo = 0.15 + step * i as f64;
        a.push(Complex64::new(rng.random_range(-0.8..0.8), rng.random_range(lo..lo + width)));
        b.push(Complex64::new(rng.random_range(-0.8..0.8), rng.random_range(lo..lo + width)));
    }
    (a, b)
}

/// Parses a relation name plus slot(s) into a contiguity relation.
pub fn parse_relation(
    name: &str,
    slot: Option<usize>,
    slot2: Option<usize>,
) -> Result<Relation, Error> {
    let s1 = slot.ok_or_else(|| {
        Error::DomainError("--relation needs --slot (1-based parameter index)".into())
    })?;
    let rel = match name {
        "shift-alpha-up" => Relation::ShiftAlphaUp(s1),
        "shift-beta-up" => Relation::ShiftBetaUp(s1),
        "shift-gamma-up" => Relation::ShiftGammaUp(s1),
        "shift-alpha-down" => Relation::ShiftAlphaDown(s1),
        "shift-gamma-down" => Relation::ShiftGammaDown(s1),
        "exchange-beta" => {
            let s2 = slot2.ok_or_else(|| {
                Error::DomainError("exchange-beta needs --slot and --slot2".into())
            })?;
            Relation::ExchangeBeta(s1, s2)
        }
        "raise-all" => Relation::RaiseAll(s1),
        other => {
            return Err(Error::DomainError(format!(
                "unknown relation `{other}` (see contiguity-check --help for the list)"
            )))
        }
    };
    Ok(rel)
}

/// Kebab-case id and slot column for a relation, for table output.
pub fn relation_id(rel: &Relation) -> (String, String) {
    match *rel {
        Relation::ShiftAlphaUp(n) => ("shift-alpha-up".into(), n.to_string()),
        Relation::ShiftBetaUp(i) => ("shift-beta-up".into(), i.to_string()),
        Relation::ShiftGammaUp(n) => ("shift-gamma-up".into(), n.to_string()),
        Relation::ShiftAlphaDown(n) => ("shift-alpha-down".into(), n.to_string()),
        Relation::ShiftGammaDown(n) => ("shift-gamma-down".into(), n.to_string()),
        Relation::ExchangeBeta(i, j) => ("exchange-beta".into(), format!("{i},{j}")),
        Relation::RaiseAll(i) => ("raise-all".into(), i.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_tokens_round_trip() {
        for s in ["0.3", "-0.25", "0.1-0.7j", "1e-3+2.5e-2j", "0.4j", "-3j", "2"] {
            let z = parse_complex(s).unwrap();
            let back = parse_complex(&fmt_complex(z)).unwrap();
            assert_eq!(z, back, "token {s}");
        }
        assert_eq!(parse_complex("0.5+0.25j").unwrap(), Complex64::new(0.5, 0.25));
        assert_eq!(parse_complex("-1.5e-2-2e-3j").unwrap(), Complex64::new(-0.015, -0.002));
        assert!(parse_complex("j").is_err());
        assert!(parse_complex("1+2").is_err());
        assert!(parse_complex("").is_err());
        assert!(parse_complex("0.3+0.4i").is_err());
    }

    #[test]
    fn banded_pairs_keep_coordinates_apart() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=4usize {
            let (a, b) = draw_banded_pair(n, &mut rng);
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        assert!((a[i] - b[j]).norm() > 0.05);
                        assert!((a[i] - a[j]).norm() > 0.05);
                    }
                }
            }
        }
    }
}
