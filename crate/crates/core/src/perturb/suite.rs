//! Randomized verification suites with deterministic per-trial seeds.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::io::PencilFile;
use crate::linalg::{column_space, map_image, map_preimage, null_space, GaussianRational};
use crate::pencil::OperatorPencil;
use crate::random::{
    random_canonical_spec, random_integer_pencil, random_matrix, random_perturbation,
    random_point, random_regular_pencil, random_relation, random_singular_pencil,
    random_unimodular, random_vector, trial_rng, TrialRng,
};
use crate::relation::{ExtendedScalar, LinearRelation, WeyrTable};
use crate::{Error, Result};

use super::{
    apply_perturbation, check_rank_one_distance, one_dimensional_perturbation,
    relation_distance, relation_weyr_check, shrink_case, side_distance, weyr_delta_check, Bound,
    PerturbationCase, PerturbationKind, PerturbationSpec, Side, TrialResult, Violation,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_dim: usize,
    pub entry_bound: i64,
    pub retry_cap: usize,
    /// Perturbation type for the pencil suites; alternates by trial id when unset.
    pub kind: Option<PerturbationKind>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            trials: 100,
            seed: 0,
            max_dim: 6,
            entry_bound: 3,
            retry_cap: 50,
            kind: None,
        }
    }
}

impl SuiteConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self {
            trials,
            seed,
            ..Self::default()
        }
    }

    fn dim_bound(&self) -> usize {
        self.max_dim.max(1)
    }

    fn bound(&self) -> i64 {
        self.entry_bound.max(1)
    }

    fn kind_for(&self, trial_id: u64) -> PerturbationKind {
        self.kind.unwrap_or(if trial_id.is_multiple_of(2) {
            PerturbationKind::TypeU
        } else {
            PerturbationKind::TypeV
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Range and kernel forms of `L - lam` for graph relations.
    ResolventForms,
    /// Kernels, ranges, domains and multivalued parts of both pencil
    /// representations, resolvent forms and Fredholm dimensions.
    PencilIdentities,
    /// Point spectra of both representations against the pencil spectrum.
    SpectrumEquality,
    /// Weyr tables of pencil and both representations against planted data.
    WeyrEquality,
    /// Intersections of stable root subspaces of random square relations.
    SingularChains,
    /// Weyr bounds under rank-one pencil perturbations.
    PerturbationBounds,
    /// Matching-side distance of rank-one perturbations.
    RankOneDistance,
    /// Weyr bounds for one-dimensional relation perturbations.
    RelationBounds,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::ResolventForms,
        Suite::PencilIdentities,
        Suite::SpectrumEquality,
        Suite::WeyrEquality,
        Suite::SingularChains,
        Suite::PerturbationBounds,
        Suite::RankOneDistance,
        Suite::RelationBounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ResolventForms => "resolvent_forms",
            Suite::PencilIdentities => "pencil_identities",
            Suite::SpectrumEquality => "spectrum_equality",
            Suite::WeyrEquality => "weyr_equality",
            Suite::SingularChains => "singular_chains",
            Suite::PerturbationBounds => "perturbation_bounds",
            Suite::RankOneDistance => "rank_one_distance",
            Suite::RelationBounds => "relation_bounds",
        }
    }

    fn trial_fn(self) -> TrialFn {
        match self {
            Suite::ResolventForms => resolvent_forms,
            Suite::PencilIdentities => pencil_identities,
            Suite::SpectrumEquality => spectrum_equality,
            Suite::WeyrEquality => weyr_equality,
            Suite::SingularChains => singular_chains,
            Suite::PerturbationBounds => perturbation_bounds,
            Suite::RankOneDistance => rank_one_distance,
            Suite::RelationBounds => relation_bounds,
        }
    }

    pub fn run(self, config: &SuiteConfig) -> VerificationReport {
        let start = Instant::now();
        let f = self.trial_fn();
        let outcomes: Vec<Trial> = (0..config.trials as u64)
            .into_par_iter()
            .map(|id| {
                let mut trial = Trial::new(id);
                let mut rng = trial_rng(config.seed, id);
                match f(config, &mut trial, &mut rng) {
                    Ok(()) => {}
                    Err(Error::RetryExhausted(_)) => {
                        trial.skipped = true;
                        trial.bump("retry_exhausted");
                    }
                    Err(e) => trial.fail(Failure::new(id, "error", e.to_string())),
                }
                trial
            })
            .collect();

        let mut counters: BTreeMap<String, u64> = ["weyr_tables", "non_monotone_weyr"]
            .iter()
            .map(|k| (k.to_string(), 0))
            .collect();
        let mut failures = Vec::new();
        let (mut passed, mut skipped) = (0, 0);
        for t in outcomes {
            for (k, v) in t.counters {
                *counters.entry(k.to_string()).or_default() += v;
            }
            match (t.failure, t.skipped) {
                (Some(f), _) => failures.push(f),
                (None, true) => skipped += 1,
                (None, false) => passed += 1,
            }
        }
        VerificationReport {
            suite: self.name().to_string(),
            seed: config.seed,
            config: config.clone(),
            trials: config.trials,
            passed,
            failed: failures.len(),
            skipped,
            failures,
            counters,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<VerificationReport> {
    Ok(name.parse::<Suite>()?.run(config))
}

/// A failing trial after shrinking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub trial_id: u64,
    pub check: String,
    pub base: Option<PencilFile>,
    pub perturbed: Option<PencilFile>,
    pub perturbation: Option<PerturbationSpec>,
    pub point: Option<String>,
    pub k: Option<usize>,
    pub w_base: Option<usize>,
    pub w_pert: Option<usize>,
    pub detail: String,
}

impl Failure {
    fn new(trial_id: u64, check: &str, detail: String) -> Self {
        Self {
            trial_id,
            check: check.to_string(),
            base: None,
            perturbed: None,
            perturbation: None,
            point: None,
            k: None,
            w_base: None,
            w_pert: None,
            detail,
        }
    }

    fn from_trial(r: &TrialResult, perturbation: &PerturbationSpec) -> Self {
        let first = r.violations.first();
        Self {
            trial_id: r.trial_id,
            check: first.map_or("bound".to_string(), |v| v.bound.to_string()),
            base: Some(r.base.clone()),
            perturbed: Some(r.perturbed.clone()),
            perturbation: Some(perturbation.clone()),
            point: first.map(|v| v.point.clone()),
            k: first.map(|v| v.k),
            w_base: first.map(|v| v.base),
            w_pert: first.map(|v| v.perturbed),
            detail: r
                .violations
                .iter()
                .map(Violation::to_string)
                .collect::<Vec<_>>()
                .join("; "),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub config: SuiteConfig,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    /// Trials abandoned after the redraw cap.
    pub skipped: usize,
    pub failures: Vec<Failure>,
    /// Health statistics (Weyr tables seen, nonzero deltas, redraws, ...).
    pub counters: BTreeMap<String, u64>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn counter(&self, key: &str) -> u64 {
        self.counters.get(key).copied().unwrap_or(0)
    }

    pub fn is_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    /// JSON with the wall-time zeroed, for reproducibility comparisons.
    pub fn to_json_without_time(&self) -> String {
        Self {
            elapsed_ms: 0,
            ..self.clone()
        }
        .to_json()
    }
}

type TrialFn = fn(&SuiteConfig, &mut Trial, &mut TrialRng) -> Result<()>;

struct Trial {
    id: u64,
    failure: Option<Failure>,
    skipped: bool,
    counters: BTreeMap<&'static str, u64>,
}

impl Trial {
    fn new(id: u64) -> Self {
        Self {
            id,
            failure: None,
            skipped: false,
            counters: BTreeMap::new(),
        }
    }

    fn add(&mut self, key: &'static str, n: u64) {
        *self.counters.entry(key).or_default() += n;
    }

    fn bump(&mut self, key: &'static str) {
        self.add(key, 1);
    }

    fn fail(&mut self, f: Failure) {
        if self.failure.is_none() {
            self.failure = Some(f);
        }
    }

    fn expect(&mut self, ok: bool, check: &str, detail: impl FnOnce() -> String) {
        if !ok {
            let f = Failure::new(self.id, check, detail());
            self.fail(f);
        }
    }

    fn count_table(&mut self, t: &WeyrTable) {
        self.bump("weyr_tables");
        if !t.is_monotone() {
            self.bump("non_monotone_weyr");
        }
    }

    fn monotone(&mut self, t: &WeyrTable) {
        self.count_table(t);
        self.expect(t.is_monotone(), "monotonicity", || {
            format!("Weyr indices {:?} at {} increase", t.indices, t.at)
        });
    }

    /// Draws until `f` yields a value, counting redraws.
    fn redraw<T>(
        &mut self,
        cfg: &SuiteConfig,
        mut f: impl FnMut() -> Result<Option<T>>,
    ) -> Result<T> {
        for _ in 0..cfg.retry_cap.max(1) {
            if let Some(v) = f()? {
                return Ok(v);
            }
            self.bump("redraws");
        }
        Err(Error::RetryExhausted(cfg.retry_cap))
    }
}

fn pick_point(rng: &mut TrialRng, bound: i64, eigen: &[GaussianRational], mu: &GaussianRational) -> GaussianRational {
    match rng.gen_range(0..10) {
        0..=4 if !eigen.is_empty() => eigen.choose(rng).expect("nonempty").clone(),
        5 => mu.clone(),
        _ => random_point(rng, bound),
    }
}

fn resolvent_forms(cfg: &SuiteConfig, t: &mut Trial, rng: &mut TrialRng) -> Result<()> {
    let b = cfg.bound();
    let (m, eigen) = if rng.gen_bool(0.5) {
        let n = rng.gen_range(1..=cfg.dim_bound());
        (random_matrix(rng, n, n, b), Vec::new())
    } else {
        let mut spec = random_canonical_spec(rng, cfg.dim_bound());
        let zero_blocks: Vec<_> = spec
            .infinite_blocks
            .drain(..)
            .map(|s| (GaussianRational::zero(), s))
            .collect();
        spec.finite_blocks.extend(zero_blocks);
        let j = OperatorPencil::from_canonical(&spec).a().clone();
        let q = random_unimodular(rng, spec.dim(), b);
        let eigen = spec.finite_blocks.iter().map(|(l, _)| l.clone()).collect();
        (q.mul(&j).mul(&q.inverse()?), eigen)
    };
    let l = LinearRelation::from_graph(&m);
    let mu = t.redraw(cfg, || {
        let mu = random_point(rng, b);
        Ok(l.is_resolvent_point(&ExtendedScalar::Finite(mu.clone()))?.then_some(mu))
    })?;
    let lam = pick_point(rng, b, &eigen, &mu);
    let (via_range, via_kernel) = l.resolvent_representations(&mu, &lam)?;
    let expected = l.shift(&lam)?;
    let ctx = || format!("M = {m}, mu = {mu}, lambda = {lam}");
    t.expect(via_range == expected, "range_form", ctx);
    t.expect(via_kernel == expected, "kernel_form", ctx);
    Ok(())
}

fn pencil_identities(cfg: &SuiteConfig, t: &mut Trial, rng: &mut TrialRng) -> Result<()> {
    let b = cfg.bound();
    let (spec, _, _, p) = random_regular_pencil(rng, cfg.dim_bound(), b);
    let n = p.n();
    let mu = t.redraw(cfg, || {
        let mu = random_point(rng, b);
        Ok(p.resolvent_point(&ExtendedScalar::Finite(mu.clone())).then_some(mu))
    })?;
    let eigen: Vec<_> = spec.finite_blocks.iter().map(|(l, _)| l.clone()).collect();
    let lam = pick_point(rng, b, &eigen, &mu);
    let ctx = || format!("pencil {p}, mu = {mu}, lambda = {lam}");

    let kr = p.kernel_representation();
    let rr = p.range_representation();
    let pencil_at = p.evaluate(&lam);
    let a_mu = p.a().sub(&p.e().scale(&mu));
    let ker_p = null_space(&pencil_at);
    let ran_p = column_space(&pencil_at);
    let ker_e = null_space(p.e());
    let kr_l = kr.shift(&lam)?;
    let rr_l = rr.shift(&lam)?;

    t.expect(kr_l.kernel() == ker_p, "kernel_rep_kernel", ctx);
    t.expect(rr_l.kernel() == map_image(&a_mu, &ker_p)?, "range_rep_kernel", ctx);
    t.expect(rr_l.range() == ran_p, "range_rep_range", ctx);
    t.expect(kr_l.range() == map_preimage(&a_mu, &ran_p)?, "kernel_rep_range", ctx);
    t.expect(kr.mul_part() == ker_e, "kernel_rep_mul", ctx);
    t.expect(
        kr.domain() == map_preimage(&a_mu, &column_space(p.e()))?,
        "kernel_rep_domain",
        ctx,
    );
    t.expect(rr.mul_part() == map_image(p.a(), &ker_e)?, "range_rep_mul", ctx);
    t.expect(rr.domain() == column_space(p.e()), "range_rep_domain", ctx);

    t.expect(p.resolvent_form_range(&mu, &lam)? == rr_l, "resolvent_form_range", ctx);
    t.expect(p.resolvent_form_kernel(&mu, &lam)? == kr_l, "resolvent_form_kernel", ctx);

    let (dk, cr) = p.fredholm_data(&ExtendedScalar::Finite(lam.clone()))?;
    let finite_ok = [&kr_l, &rr_l]
        .iter()
        .all(|r| r.kernel().dim() == dk && n - r.range().dim() == cr);
    t.expect(finite_ok, "fredholm_finite", ctx);
    let (dk, cr) = p.fredholm_data(&ExtendedScalar::Infinity)?;
    let infinite_ok = [&kr, &rr]
        .iter()
        .all(|r| r.mul_part().dim() == dk && n - r.domain().dim() == cr);
    t.expect(infinite_ok, "fredholm_infinity", ctx);
    Ok(())
}

fn spectrum_equality(cfg: &SuiteConfig, t: &mut Trial, rng: &mut TrialRng) -> Result<()> {
    let b = cfg.bound();
    let p = if rng.gen_bool(0.6) {
        random_regular_pencil(rng, cfg.dim_bound(), b).3
    } else {
        let n = rng.gen_range(1..=cfg.dim_bound());
        t.redraw(cfg, || {
            let q = random_integer_pencil(rng, n, b);
            Ok(q.is_regular().then_some(q))
        })?
    };
    let spectrum = p.spectrum()?;
    if spectrum.residual.degree().unwrap_or(0) > 0 {
        t.bump("irrational_spectra");
    }
    let mut expected: Vec<_> = spectrum.eigenvalues().cloned().collect();
    expected.sort();
    for (side, rep) in [
        (Side::Kernel, p.kernel_representation()),
        (Side::Range, p.range_representation()),
    ] {
        let ps = rep.point_spectrum()?;
        let mut finite = ps.finite.clone();
        finite.sort();
        let ctx = || format!("{side} representation of {p}");
        t.expect(finite == expected, "finite_spectrum", ctx);
        t.expect(ps.infinity == spectrum.has_infinity, "infinity_flag", ctx);
        t.expect(
            ps.residual.monic() == spectrum.residual.monic(),
            "residual",
            ctx,
        );
        for _ in 0..3 {
            let mu = random_point(rng, b);
            if rep.is_resolvent_point(&ExtendedScalar::Finite(mu.clone()))? {
                t.expect(
                    !finite.contains(&mu) && p.resolvent_point(&ExtendedScalar::Finite(mu.clone())),
                    "resolvent_consistency",
                    || format!("{mu} for {side} representation of {p}"),
                );
            }
        }
    }
    Ok(())
}

fn weyr_equality(cfg: &SuiteConfig, t: &mut Trial, rng: &mut TrialRng) -> Result<()> {
    let b = cfg.bound();
    let (spec, _, tmat, p) = random_regular_pencil(rng, cfg.dim_bound(), b);
    let p0 = OperatorPencil::from_canonical(&spec);
    let kr = p.kernel_representation();
    let rr = p.range_representation();
    let ctx = || format!("blocks {spec}, pencil {p}");

    let (s, s0) = (p.spectrum()?, p0.spectrum()?);
    t.expect(
        s.finite_eigenvalues == s0.finite_eigenvalues
            && s.infinity_multiplicity == s0.infinity_multiplicity,
        "equivalence_spectrum",
        ctx,
    );

    let mut points = spec.points();
    points.push(ExtendedScalar::Finite(random_point(rng, b)));
    points.push(ExtendedScalar::Infinity);
    points.sort();
    points.dedup();
    for at in &points {
        let chain = p.root_subspaces(at);
        let dims: Vec<usize> = chain.iter().map(|s| s.dim()).collect();
        let planted = spec.planted_weyr(at);
        let tables = [
            WeyrTable::from_root_dims(at.clone(), &dims),
            kr.weyr_table(at)?,
            rr.weyr_table(at)?,
            p0.weyr_table(at)?,
        ];
        for (name, table) in ["pencil", "kernel_rep", "range_rep", "canonical"]
            .iter()
            .zip(&tables)
        {
            t.monotone(table);
            t.expect(table.indices == planted, "weyr_vs_planted", || {
                format!("{name} table {:?} at {at}, planted {planted:?}; {}", table.indices, ctx())
            });
        }

        let step = match at {
            ExtendedScalar::Finite(lam) => kr.shift(lam)?,
            ExtendedScalar::Infinity => kr.inverse(),
        };
        let feed = match at {
            ExtendedScalar::Finite(_) => p.e(),
            ExtendedScalar::Infinity => p.a(),
        };
        let depth = planted.len() + 1;
        for k in 1..=depth {
            let via_chain = p.root_subspace(at, k);
            let via_power = step.power(k)?.kernel();
            t.expect(via_chain == via_power, "chain_vs_power", || {
                format!("k = {k} at {at}; {}", ctx())
            });
            t.expect(
                rr.root_subspace(at, k)? == map_image(feed, &via_chain)?,
                "range_root_is_image",
                || format!("k = {k} at {at}; {}", ctx()),
            );
            t.expect(
                p0.root_subspace(at, k) == map_image(&tmat, &via_chain)?,
                "equivalence_root",
                || format!("k = {k} at {at}; {}", ctx()),
            );
        }
    }
    Ok(())
}

fn singular_chains(cfg: &SuiteConfig, t: &mut Trial, rng: &mut TrialRng) -> Result<()> {
    let b = cfg.bound();
    let n = rng.gen_range(1..=cfg.dim_bound());
    let rep = |p: &OperatorPencil, rng: &mut TrialRng| {
        if rng.gen_bool(0.5) {
            p.kernel_representation()
        } else {
            p.range_representation()
        }
    };
    let l = match rng.gen_range(0..3) {
        0 => {
            let p = random_regular_pencil(rng, cfg.dim_bound(), b).3;
            rep(&p, rng)
        }
        1 => {
            let d = rng.gen_range(0..=2 * n);
            random_relation(rng, n, d, b)
        }
        _ => {
            let p = random_singular_pencil(rng, n, b);
            rep(&p, rng)
        }
    };
    let finite = |s: &str| ExtendedScalar::Finite(s.parse().expect("literal"));
    let points = [
        finite("0"),
        finite("1"),
        finite("-1"),
        finite("2"),
        finite("0+1*i"),
        ExtendedScalar::Infinity,
    ];
    let mut stable = Vec::new();
    let mut relation_tables = Vec::new();
    for at in &points {
        let spaces = l.root_subspaces(at)?;
        let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
        relation_tables.push(WeyrTable::from_root_dims(at.clone(), &dims));
        stable.push(spaces.last().expect("nonempty").clone());
    }
    let rc = l.singular_chain_space()?;
    if rc.is_zero() {
        for table in &relation_tables {
            t.monotone(table);
        }
    } else {
        t.bump("nontrivial_singular");
        for table in &relation_tables {
            t.count_table(table);
        }
    }
    for (i, j) in [(0, 5), (1, 5), (0, 1), (2, 3), (4, 5), (3, 4)] {
        t.expect(
            stable[i].intersect(&stable[j])? == rc,
            "singular_intersection",
            || format!("pair ({}, {}) for {l}", points[i], points[j]),
        );
    }
    let mut resolvent = false;
    for at in points.iter().cloned().chain((0..3).map(|_| ExtendedScalar::Finite(random_point(rng, b)))) {
        if l.is_resolvent_point(&at)? {
            resolvent = true;
            break;
        }
    }
    if resolvent {
        t.bump("resolvent_found");
        t.expect(rc.is_zero(), "resolvent_trivial_singular", || l.to_string());
    }
    Ok(())
}

fn draw_case(
    cfg: &SuiteConfig,
    kind: PerturbationKind,
    t: &mut Trial,
    rng: &mut TrialRng,
) -> Result<PerturbationCase> {
    let b = cfg.bound();
    let (spec, s, tmat, _) = random_regular_pencil(rng, cfg.dim_bound(), b);
    t.redraw(cfg, || {
        let pert = random_perturbation(rng, kind, spec.dim(), b);
        let case = PerturbationCase::from_canonical(&spec, s.clone(), tmat.clone(), pert);
        Ok(case.perturbed()?.is_regular().then_some(case))
    })
}

/// Weyr comparison at all eigenvalues and `∞` plus the matching-side distance.
pub fn evaluate_case(case: &PerturbationCase, trial_id: u64) -> Result<TrialResult> {
    let base = case.base()?;
    let pert = case.perturbed()?;
    let mut r = weyr_delta_check(&base, &pert, None)?;
    r.trial_id = trial_id;
    let dc = check_rank_one_distance(&base, &case.perturbation)?;
    r.distance = Some(dc.distance);
    if !dc.pass {
        r.violations.push(Violation {
            bound: Bound::Distance,
            point: dc.side.to_string(),
            k: 0,
            base: 0,
            perturbed: dc.distance,
        });
    }
    Ok(r)
}

/// One draw of the perturbation-bounds suite.
pub fn random_trial(config: &SuiteConfig, trial_id: u64) -> Result<TrialResult> {
    let mut rng = trial_rng(config.seed, trial_id);
    let mut t = Trial::new(trial_id);
    let case = draw_case(config, config.kind_for(trial_id), &mut t, &mut rng)?;
    evaluate_case(&case, trial_id)
}

fn perturbation_bounds(cfg: &SuiteConfig, t: &mut Trial, rng: &mut TrialRng) -> Result<()> {
    let kind = cfg.kind_for(t.id);
    let case = draw_case(cfg, kind, t, rng)?;
    let r = evaluate_case(&case, t.id)?;
    t.bump(match kind {
        PerturbationKind::TypeU => "type_u_trials",
        PerturbationKind::TypeV => "type_v_trials",
    });
    for c in &r.comparisons {
        t.count_table(&c.base);
        t.count_table(&c.perturbed);
    }
    if r.has_nonzero_delta() {
        t.bump("nonzero_delta");
    }
    if r.distance == Some(1) {
        t.bump("distance_one");
    }
    t.add("unchecked_irrational_degree", r.unchecked_irrational_degree as u64);
    if !r.passed() {
        let fails = |c: &PerturbationCase| evaluate_case(c, 0).is_ok_and(|r| !r.passed());
        let shrunk = shrink_case(&case, fails);
        let rs = evaluate_case(&shrunk, t.id)?;
        t.fail(Failure::from_trial(&rs, &shrunk.perturbation));
    }
    Ok(())
}

fn rank_one_distance(cfg: &SuiteConfig, t: &mut Trial, rng: &mut TrialRng) -> Result<()> {
    let b = cfg.bound();
    let kind = cfg.kind_for(t.id);
    let n = rng.gen_range(1..=cfg.dim_bound());
    let p = match rng.gen_range(0..4) {
        0 | 1 => random_regular_pencil(rng, cfg.dim_bound(), b).3,
        2 => random_integer_pencil(rng, n, b),
        _ => random_singular_pencil(rng, n, b),
    };
    if !p.is_regular() {
        t.bump("singular_base");
    }
    let pert = random_perturbation(rng, kind, p.n(), b);
    let dc = check_rank_one_distance(&p, &pert)?;
    let off = match dc.side {
        Side::Kernel => Side::Range,
        Side::Range => Side::Kernel,
    };
    if side_distance(&p, &apply_perturbation(&p, &pert)?, off)? == 2 {
        t.bump("off_side_distance_two");
    }
    if !dc.pass {
        let case = PerturbationCase::from_pencil(&p, pert);
        let fails = |c: &PerturbationCase| {
            c.base()
                .and_then(|q| check_rank_one_distance(&q, &c.perturbation))
                .is_ok_and(|d| !d.pass)
        };
        let shrunk = shrink_case(&case, fails);
        let base = shrunk.base()?;
        let pert = shrunk.perturbed()?;
        let d = check_rank_one_distance(&base, &shrunk.perturbation)?;
        let mut f = Failure::new(t.id, "distance", format!("{} distance {}", d.side, d.distance));
        f.base = Some((&base).into());
        f.perturbed = Some((&pert).into());
        f.perturbation = Some(shrunk.perturbation.clone());
        t.fail(f);
    }
    Ok(())
}

fn relation_bounds(cfg: &SuiteConfig, t: &mut Trial, rng: &mut TrialRng) -> Result<()> {
    let b = cfg.bound();
    let p = random_regular_pencil(rng, cfg.dim_bound(), b).3;
    let l = if rng.gen_bool(0.5) {
        p.kernel_representation()
    } else {
        p.range_representation()
    };
    let ambient = l.dim_x() + l.dim_y();
    let (m, m_spectrum) = t.redraw(cfg, || {
        let f = random_vector(rng, ambient, b);
        let v = random_vector(rng, ambient, b);
        let m = one_dimensional_perturbation(&l, &f, &v)?;
        if !m.singular_chain_space()?.is_zero() {
            return Ok(None);
        }
        Ok(m.point_spectrum().ok().map(|s| (m, s)))
    })?;
    let distance = relation_distance(&l, &m)?;
    t.expect(distance <= 1, "relation_distance", || {
        format!("distance {distance} between {l} and {m}")
    });
    let mut points: Vec<ExtendedScalar> = l
        .point_spectrum()?
        .finite
        .into_iter()
        .chain(m_spectrum.finite)
        .map(ExtendedScalar::Finite)
        .collect();
    points.push(ExtendedScalar::Infinity);
    points.sort();
    points.dedup();
    let mut nonzero = false;
    for (cmp, violations) in relation_weyr_check(&l, &m, &points)? {
        t.monotone(&cmp.base);
        t.monotone(&cmp.perturbed);
        nonzero |= !cmp.delta_is_zero();
        t.expect(violations.is_empty(), "relation_weyr_bound", || {
            format!("{:?} vs {:?} at {} for {l} and {m}", cmp.base.indices, cmp.perturbed.indices, cmp.point)
        });
    }
    if nonzero {
        t.bump("nonzero_delta");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn empty_suite() {
        let r = run_suite("perturbation_bounds", &SuiteConfig::new(0, 1)).unwrap();
        assert_eq!((r.trials, r.passed, r.failed), (0, 0, 0));
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert_eq!(
            run_suite("nope", &SuiteConfig::default()),
            Err(Error::UnknownSuite("nope".into()))
        );
        assert_eq!("rank_one_distance".parse::<Suite>().unwrap(), Suite::RankOneDistance);
    }

    #[test]
    fn small_runs_pass() {
        for suite in Suite::ALL {
            let cfg = SuiteConfig {
                max_dim: 4,
                ..SuiteConfig::new(12, 5)
            };
            let r = suite.run(&cfg);
            assert_eq!(r.failed, 0, "{suite}: {:?}", r.failures);
            assert_eq!(r.passed + r.skipped, 12);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = SuiteConfig::new(16, 99);
        let a = Suite::PerturbationBounds.run(&cfg);
        let b = Suite::PerturbationBounds.run(&cfg);
        assert_eq!(a.to_json_without_time(), b.to_json_without_time());
    }

    #[test]
    fn random_trial_matches_suite_stream() {
        let cfg = SuiteConfig::new(3, 11);
        let r = random_trial(&cfg, 2).unwrap();
        assert_eq!(r.trial_id, 2);
        assert!(r.passed());
        assert!(r.distance.unwrap() <= 1);
    }

    #[test]
    fn failing_case_is_shrunk_and_reported() {
        // Treat any nonzero Weyr delta as a failure to exercise the plumbing.
        let case = PerturbationCase::from_canonical(
            &"2@0,1@1".parse().unwrap(),
            Matrix::identity(3),
            Matrix::identity(3),
            PerturbationSpec::TypeU {
                u: vec![1.into(), 2.into(), 0.into()],
                v_func: vec![0.into(), 1.into(), 3.into()],
                w_func: vec![2.into(), 0.into(), 1.into()],
            },
        );
        let fails = |c: &PerturbationCase| {
            evaluate_case(c, 0).is_ok_and(|r| r.has_nonzero_delta())
        };
        assert!(fails(&case));
        let small = shrink_case(&case, fails);
        assert!(fails(&small));
        assert!(small.n() <= case.n());
        let nonzero = |c: &PerturbationCase| {
            c.perturbation
                .vectors()
                .iter()
                .flat_map(|v| v.iter())
                .filter(|x| !x.is_zero())
                .count()
        };
        assert!(nonzero(&small) <= 2);
    }
}
