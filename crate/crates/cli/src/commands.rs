use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use thiserror::Error;
use weyr_core::io::{PencilFile, RelationFile};
use weyr_core::perturb::{
    apply_perturbation, check_rank_one_distance, side_distance, weyr_delta_check, PerturbationKind,
    Side, Suite, SuiteConfig,
};
use weyr_core::random::{random_unimodular, trial_rng};
use weyr_core::{
    CanonicalSpec, ExtendedScalar, GaussianRational, LinearRelation, OperatorPencil,
    PerturbationSpec, VerificationReport, WeyrTable,
};

use crate::render;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] weyr_core::Error),
    #[error("cannot read `{path}`: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write `{path}`: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

/// A command result. `violated` maps to exit code 1.
pub struct Output {
    pub json: Value,
    pub markdown: String,
    pub violated: bool,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

fn load_pencil(path: &Path) -> Result<OperatorPencil, CliError> {
    Ok(weyr_core::io::parse_pencil(&read(path)?)?)
}

fn load_regular(path: &Path) -> Result<OperatorPencil, CliError> {
    let p = load_pencil(path)?;
    if !p.is_regular() {
        return Err(weyr_core::Error::NotRegular.into());
    }
    Ok(p)
}

/// Comma-separated scalars.
pub fn parse_vector(s: &str) -> Result<Vec<GaussianRational>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(CliError::Core))
        .collect()
}

/// Comma-separated scalars or `inf`.
pub fn parse_points(s: Option<&str>) -> Result<Vec<ExtendedScalar>, CliError> {
    match s {
        None => Ok(Vec::new()),
        Some(s) => s
            .split(',')
            .map(|x| x.trim().parse().map_err(CliError::Core))
            .collect(),
    }
}

/// Appends `extra` to `points`, skipping duplicates.
fn merge_points(mut points: Vec<ExtendedScalar>, extra: Vec<ExtendedScalar>) -> Vec<ExtendedScalar> {
    for p in extra {
        if !points.contains(&p) {
            points.push(p);
        }
    }
    points
}

pub fn analyze(path: &Path, points: Option<&str>) -> Result<Output, CliError> {
    let extra = parse_points(points)?;
    let p = load_regular(path)?;
    let spectrum = p.spectrum()?;
    let points = merge_points(spectrum.points(), extra);
    let mut tables = Vec::new();
    let mut fredholm = Vec::new();
    for at in &points {
        tables.push(p.weyr_table(at)?);
        let (dim_ker, codim_ran) = p.fredholm_data(at)?;
        fredholm.push(json!({ "at": at, "dim_ker": dim_ker, "codim_ran": codim_ran }));
    }
    let violated = tables.iter().any(|t| !t.is_monotone());
    let json = json!({
        "n": p.n(),
        "det_poly": p.det_poly(),
        "spectrum": spectrum,
        "weyr": tables,
        "fredholm": fredholm,
        "monotone": !violated,
    });
    let markdown = render::analysis(&p, &spectrum, &tables, &json["fredholm"]);
    Ok(Output {
        json,
        markdown,
        violated,
    })
}

fn verdict(same: bool) -> &'static str {
    if same {
        "equal"
    } else {
        "different"
    }
}

pub fn repr_check(path: &Path, mu: &str, lambda: &str) -> Result<Output, CliError> {
    let mu: GaussianRational = mu.parse()?;
    let lam: GaussianRational = lambda.parse()?;
    let p = load_regular(path)?;
    if !p.resolvent_point(&ExtendedScalar::Finite(mu.clone())) {
        return Err(weyr_core::Error::NotResolventPoint(mu.to_string()).into());
    }
    let range_rep = p.range_representation();
    let kernel_rep = p.kernel_representation();
    let range_shift = range_rep.shift(&lam)?;
    let kernel_shift = kernel_rep.shift(&lam)?;
    let (rr_range, rr_kernel) = range_rep.resolvent_representations(&mu, &lam)?;
    let (kr_range, kr_kernel) = kernel_rep.resolvent_representations(&mu, &lam)?;
    let checks = [
        ("pencil_range_form", p.resolvent_form_range(&mu, &lam)? == range_shift),
        ("pencil_kernel_form", p.resolvent_form_kernel(&mu, &lam)? == kernel_shift),
        ("range_rep_via_range", rr_range == range_shift),
        ("range_rep_via_kernel", rr_kernel == range_shift),
        ("kernel_rep_via_range", kr_range == kernel_shift),
        ("kernel_rep_via_kernel", kr_kernel == kernel_shift),
    ];
    let all_equal = checks.iter().all(|(_, same)| *same);
    let verdicts: serde_json::Map<String, Value> = checks
        .iter()
        .map(|(name, same)| (name.to_string(), json!(verdict(*same))))
        .collect();
    let json = json!({
        "mu": mu,
        "lambda": lam,
        "checks": verdicts,
        "all_equal": all_equal,
    });
    let rows: Vec<(&str, &str)> = checks.iter().map(|(n, s)| (*n, verdict(*s))).collect();
    let markdown = render::repr_check(&mu, &lam, &rows);
    Ok(Output {
        json,
        markdown,
        violated: !all_equal,
    })
}

pub fn perturbation_from_flags(
    kind: &str,
    u: &str,
    w: Option<&str>,
    vfunc: &str,
    wfunc: Option<&str>,
) -> Result<PerturbationSpec, CliError> {
    let kind: PerturbationKind = kind.parse()?;
    let u = parse_vector(u)?;
    let v_func = parse_vector(vfunc)?;
    match (kind, w, wfunc) {
        (PerturbationKind::TypeV, Some(w), None) => Ok(PerturbationSpec::TypeV {
            u,
            w: parse_vector(w)?,
            v_func,
        }),
        (PerturbationKind::TypeU, None, Some(wf)) => Ok(PerturbationSpec::TypeU {
            u,
            v_func,
            w_func: parse_vector(wf)?,
        }),
        (PerturbationKind::TypeV, _, _) => Err(CliError::Usage(
            "type v takes --u, --w and --vfunc (no --wfunc)".into(),
        )),
        (PerturbationKind::TypeU, _, _) => Err(CliError::Usage(
            "type u takes --u, --vfunc and --wfunc (no --w)".into(),
        )),
    }
}

pub fn perturb(path: &Path, spec: PerturbationSpec, points: Option<&str>) -> Result<Output, CliError> {
    let extra = parse_points(points)?;
    let base = load_pencil(path)?;
    let pert = apply_perturbation(&base, &spec)?;
    let check = check_rank_one_distance(&base, &spec)?;
    let kernel = side_distance(&base, &pert, Side::Kernel)?;
    let range = side_distance(&base, &pert, Side::Range)?;
    let mut violated = !check.pass;
    let (weyr, skipped) = if base.is_regular() && pert.is_regular() {
        let points = if extra.is_empty() {
            None
        } else {
            Some(merge_points(
                weyr_core::perturb::default_points(&base, &pert)?,
                extra,
            ))
        };
        let trial = weyr_delta_check(&base, &pert, points.as_deref())?;
        violated |= !trial.violations.is_empty();
        (Some(trial), None)
    } else {
        (None, Some("a pencil is not regular"))
    };
    let json = json!({
        "type": spec.kind().to_string(),
        "perturbation": spec,
        "base": PencilFile::from(&base),
        "perturbed": PencilFile::from(&pert),
        "distance": {
            "kernel": kernel,
            "range": range,
            "matching_side": check.side,
            "matching_distance": check.distance,
            "pass": check.pass,
        },
        "weyr": trial_json(weyr.as_ref()),
        "weyr_skipped": skipped,
    });
    let markdown = render::perturbation(
        &spec,
        &check,
        kernel,
        range,
        weyr.as_ref().map(|t| t.comparisons.as_slice()),
        weyr.as_ref().map(|t| t.violations.as_slice()),
        skipped,
    );
    Ok(Output {
        json,
        markdown,
        violated,
    })
}

fn trial_json(trial: Option<&weyr_core::TrialResult>) -> Value {
    match trial {
        None => Value::Null,
        Some(t) => json!({
            "comparisons": t.comparisons,
            "violations": t.violations,
            "unchecked_irrational_degree": t.unchecked_irrational_degree,
        }),
    }
}

pub fn suite_config(
    trials: usize,
    seed: u64,
    max_dim: Option<usize>,
    entry_bound: Option<i64>,
    kind: Option<&str>,
) -> Result<SuiteConfig, CliError> {
    let mut config = SuiteConfig::new(trials, seed);
    if let Some(d) = max_dim {
        if d == 0 {
            return Err(CliError::Usage("--max-dim must be positive".into()));
        }
        config.max_dim = d;
    }
    if let Some(b) = entry_bound {
        if b <= 0 {
            return Err(CliError::Usage("--entry-bound must be positive".into()));
        }
        config.entry_bound = b;
    }
    config.kind = kind.map(str::parse).transpose()?;
    Ok(config)
}

pub fn verify(suite: &str, config: &SuiteConfig, out: Option<&Path>) -> Result<Output, CliError> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let reports: Vec<VerificationReport> = suites.iter().map(|s| s.run(config)).collect();
    let json = if reports.len() == 1 {
        json!(reports[0])
    } else {
        json!(reports)
    };
    if let Some(path) = out {
        write(path, &(serde_json::to_string_pretty(&json).expect("json value") + "\n"))?;
    }
    Ok(Output {
        violated: reports.iter().any(|r| !r.is_pass()),
        markdown: render::reports(&reports),
        json,
    })
}

pub fn gen(blocks: &str, seed: Option<u64>, entry_bound: i64, out: &Path) -> Result<Output, CliError> {
    let spec: CanonicalSpec = blocks.parse()?;
    if spec.dim() == 0 {
        return Err(CliError::Usage("--blocks describes an empty pencil".into()));
    }
    let mut pencil = OperatorPencil::from_canonical(&spec);
    if let Some(seed) = seed {
        let mut rng = trial_rng(seed, 0);
        let s = random_unimodular(&mut rng, spec.dim(), entry_bound);
        let t = random_unimodular(&mut rng, spec.dim(), entry_bound);
        pencil = pencil.apply_equivalence(&s, &t)?;
    }
    let file = PencilFile::from(&pencil);
    write(out, &(serde_json::to_string_pretty(&file).expect("pencil file") + "\n"))?;
    let json = json!({
        "out": out.display().to_string(),
        "n": spec.dim(),
        "blocks": spec.to_string(),
        "scrambled": seed.is_some(),
    });
    Ok(Output {
        markdown: format!("wrote {} ({}x{0} pencil, blocks {})\n", out.display(), spec.dim(), spec),
        json,
        violated: false,
    })
}

pub fn relation(path: &Path, points: Option<&str>) -> Result<Output, CliError> {
    let extra = parse_points(points)?;
    let file: RelationFile = serde_json::from_str(&read(path)?)
        .map_err(|e| weyr_core::Error::Parse(e.to_string()))?;
    let l: LinearRelation = file.into_relation()?;
    let mut json = json!({
        "dim_x": l.dim_x(),
        "dim_y": l.dim_y(),
        "dim": l.dim(),
        "kernel": l.kernel().dim(),
        "domain": l.domain().dim(),
        "range": l.range().dim(),
        "multivalued_part": l.mul_part().dim(),
        "relation": RelationFile::from(&l),
    });
    let mut tables: Vec<WeyrTable> = Vec::new();
    if l.dim_x() == l.dim_y() {
        let mut points = Vec::new();
        match l.point_spectrum() {
            Ok(s) => {
                points.extend(s.finite.iter().cloned().map(ExtendedScalar::Finite));
                if s.infinity {
                    points.push(ExtendedScalar::Infinity);
                }
                json["point_spectrum"] = json!({
                    "finite": s.finite,
                    "infinity": s.infinity,
                    "residual": s.residual,
                });
            }
            Err(weyr_core::Error::NoResolventPoint) => {
                json["point_spectrum"] = Value::Null;
            }
            Err(e) => return Err(e.into()),
        }
        json["singular_chain_space"] = json!(l.singular_chain_space()?.dim());
        for at in merge_points(points, extra) {
            tables.push(l.weyr_table(&at)?);
        }
        json["weyr"] = json!(tables);
    } else if !extra.is_empty() {
        return Err(CliError::Usage("--points needs a square relation".into()));
    }
    Ok(Output {
        markdown: render::relation(&json, &tables),
        json,
        violated: false,
    })
}
