//! Markdown renderings. JSON is the machine contract; these are for reading.

use std::fmt::Write;

use serde_json::Value;
use weyr_core::perturb::{DistanceCheck, Violation, WeyrComparison};
use weyr_core::{
    GaussianRational, OperatorPencil, PerturbationSpec, SpectrumReport, VerificationReport,
    WeyrTable,
};

/// One row per `k`: `| k | w_k | dim R^k |`.
pub fn weyr_rows(out: &mut String, t: &WeyrTable) {
    let _ = writeln!(out, "### at {}\n", t.at);
    if t.is_empty() {
        out.push_str("not an eigenvalue (all root subspaces are zero)\n\n");
        return;
    }
    out.push_str("| k | w_k | dim R^k |\n|---|---|---|\n");
    for (k, (w, d)) in t.indices.iter().zip(&t.root_dims).enumerate() {
        let _ = writeln!(out, "| {} | {w} | {d} |", k + 1);
    }
    out.push('\n');
}

pub fn analysis(p: &OperatorPencil, s: &SpectrumReport, tables: &[WeyrTable], fredholm: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Pencil analysis\n\nn = {}, det(xE - A) = {}\n", p.n(), p.det_poly());
    out.push_str("## Spectrum\n\n| eigenvalue | algebraic multiplicity |\n|---|---|\n");
    for (z, m) in &s.finite_eigenvalues {
        let _ = writeln!(out, "| {z} | {m} |");
    }
    if s.has_infinity {
        let _ = writeln!(out, "| inf | {} |", s.infinity_multiplicity);
    }
    if s.residual.degree().is_some_and(|d| d > 0) {
        let _ = writeln!(out, "\nremaining factor without roots in Q(i): {}", s.residual);
    }
    out.push_str("\n## Weyr tables\n\n");
    for t in tables {
        weyr_rows(&mut out, t);
    }
    out.push_str("## Fredholm data\n\n| point | dim ker | codim ran |\n|---|---|---|\n");
    for row in fredholm.as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "| {} | {} | {} |",
            row["at"].as_str().unwrap_or_default(),
            row["dim_ker"],
            row["codim_ran"]
        );
    }
    out
}

pub fn repr_check(mu: &GaussianRational, lam: &GaussianRational, rows: &[(&str, &str)]) -> String {
    let mut out = format!("# Representation check (mu = {mu}, lambda = {lam})\n\n| identity | verdict |\n|---|---|\n");
    for (name, verdict) in rows {
        let _ = writeln!(out, "| {name} | {verdict} |");
    }
    out
}

pub fn perturbation(
    spec: &PerturbationSpec,
    check: &DistanceCheck,
    kernel: usize,
    range: usize,
    comparisons: Option<&[WeyrComparison]>,
    violations: Option<&[Violation]>,
    skipped: Option<&str>,
) -> String {
    let mut out = format!("# Rank-one perturbation ({})\n\n", spec.kind());
    let _ = writeln!(
        out,
        "| side | distance |\n|---|---|\n| kernel | {kernel} |\n| range | {range} |\n"
    );
    let _ = writeln!(
        out,
        "matching side: {}, distance {} ({})\n",
        check.side,
        check.distance,
        if check.pass { "pass" } else { "FAIL" }
    );
    if let Some(reason) = skipped {
        let _ = writeln!(out, "Weyr comparison skipped: {reason}");
        return out;
    }
    for cmp in comparisons.unwrap_or_default() {
        let _ = writeln!(out, "### at {}\n\n| k | w_k base | w_k perturbed |\n|---|---|---|", cmp.point);
        let len = cmp.base.indices.len().max(cmp.perturbed.indices.len());
        for k in 1..=len {
            let _ = writeln!(out, "| {k} | {} | {} |", cmp.base.w(k), cmp.perturbed.w(k));
        }
        out.push('\n');
    }
    let violations = violations.unwrap_or_default();
    if violations.is_empty() {
        out.push_str("all Weyr bounds hold\n");
    } else {
        for v in violations {
            let _ = writeln!(
                out,
                "- violation {:?} at {} (k = {}): {} vs {}",
                v.bound, v.point, v.k, v.base, v.perturbed
            );
        }
    }
    out
}

pub fn reports(reports: &[VerificationReport]) -> String {
    let mut out = String::from(
        "| suite | trials | passed | failed | skipped | ms |\n|---|---|---|---|---|---|\n",
    );
    for r in reports {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            r.suite, r.trials, r.passed, r.failed, r.skipped, r.elapsed_ms
        );
    }
    for r in reports {
        for f in &r.failures {
            let _ = writeln!(out, "- {} trial {}: {} {}", r.suite, f.trial_id, f.check, f.detail);
        }
    }
    out
}

pub fn relation(json: &Value, tables: &[WeyrTable]) -> String {
    let mut out = format!(
        "# Linear relation in F^{} x F^{}\n\n| subspace | dim |\n|---|---|\n",
        json["dim_x"], json["dim_y"]
    );
    for key in ["dim", "kernel", "domain", "range", "multivalued_part", "singular_chain_space"] {
        if !json[key].is_null() {
            let _ = writeln!(out, "| {key} | {} |", json[key]);
        }
    }
    out.push('\n');
    match &json["point_spectrum"] {
        Value::Null if json["dim_x"] == json["dim_y"] => {
            out.push_str("no resolvent point\n\n");
        }
        Value::Object(s) => {
            let _ = writeln!(out, "point spectrum: {} (infinity: {})\n", s["finite"], s["infinity"]);
        }
        _ => {}
    }
    for t in tables {
        weyr_rows(&mut out, t);
    }
    out
}
