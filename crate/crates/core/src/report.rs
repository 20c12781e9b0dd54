//! Rendering of analyses and application results as canonical JSON or as a
//! plain-text table. Both formats carry the same exact strings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::apps::{CobordismReport, EigenRankReport, HirzebruchReport, ToledoReport};
use crate::indexcore::q_label;
use crate::linalg::CycloMatrix;
use crate::pipeline::Analysis;
use crate::registry::StrategyNames;
use crate::sweep::VerifySummary;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn matrix_strings(a: &CycloMatrix) -> Vec<Vec<String>> {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(|x| x.to_string()).collect())
        .collect()
}

/// `c1(E_1)`, `c1(E_-1)`, `c1(E_zeta^2)`.
pub fn class_label(s: u32, m: u32) -> String {
    format!("c1(E_{})", q_label(s, m))
}

pub fn analysis_json(an: &Analysis, strategies: &StrategyNames, ranks: &EigenRankReport) -> Value {
    let a = &an.action;
    let m = a.m();
    let mut action = to_value(a);
    if let Value::Object(o) = &mut action {
        o.insert("genus".into(), json!(a.g()));
        o.insert("total_fixed".into(), json!(a.total_fixed()));
        o.insert("monodromy_warnings".into(), json!(an.warnings));
    }
    let expressions: Map<String, Value> = an
        .solved
        .classes
        .iter()
        .map(|c| (class_label(c.s, m), json!(c.expr.to_string())))
        .collect();
    json!({
        "action": action,
        "character": an.character.values,
        "isotypic": {
            "n": an.isotypic.n,
            "rational_isotypic": an.isotypic.rational_isotypic,
        },
        "signatures": an.signature.entries,
        "factors": {
            "list": an.factors.to_string(),
            "sp_factors": an.factors.sp_factors,
            "su_factors": an.factors.su_factors,
            "field_labels": an.factors.field_labels,
        },
        "stable_range": an.stable_range,
        "system": {
            "convention": an.system.convention,
            "row0": an.system.row0,
            "eta_index": an.system.eta_index,
            "J": matrix_strings(&an.system.j),
            "K": matrix_strings(&an.system.k),
        },
        "solved": {
            "classes": to_value(&an.solved.classes.iter().collect::<Vec<_>>()),
            "expressions": expressions,
            "irrational": an.solved.has_irrational(),
        },
        "image": {
            "h2_basis": an.h2_basis,
            "basis": an.image.basis,
            "matrix": an.image.matrix,
            "identification": an.image.identification,
        },
        "certificates": an.certificate,
        "eigenranks": ranks.ranks,
        "strategies": strategies,
        "numeric_checks": {
            "rhs0_max_abs_error": an.rhs0_float_error,
        },
    })
}

fn section(out: &mut String, title: &str) {
    let _ = writeln!(out, "== {title} ==");
}

pub fn analysis_table(
    an: &Analysis,
    strategies: &StrategyNames,
    ranks: &EigenRankReport,
) -> String {
    let a = &an.action;
    let m = a.m();
    let mut out = String::new();
    section(&mut out, "action");
    let fixed: Vec<String> = a
        .fixed_counts()
        .iter()
        .map(|(j, c)| format!("{j}:{c}"))
        .collect();
    let _ = writeln!(
        out,
        "m = {m}, quotient genus h = {}, genus g = {}, fixed points {{{}}}",
        a.h(),
        a.g(),
        fixed.join(", ")
    );
    for w in &an.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    section(&mut out, "character and multiplicities");
    let _ = writeln!(out, "character {:?}", an.character.values);
    let _ = writeln!(out, "n {:?}", an.isotypic.n);
    let ri: Vec<String> = an
        .isotypic
        .rational_isotypic
        .iter()
        .map(|(k, d)| format!("{k}: {d}"))
        .collect();
    let _ = writeln!(out, "rational isotypic {{{}}}", ri.join(", "));
    section(&mut out, "eigen-signatures");
    for e in &an.signature.entries {
        let _ = writeln!(out, "s = {}: (a, b) = ({}, {})", e.s, e.a, e.b);
    }
    section(&mut out, "factors");
    let _ = writeln!(out, "{}", an.factors);
    section(&mut out, "stable range");
    let r = &an.stable_range;
    let _ = writeln!(
        out,
        "F-rank >= {}, Borel bound {}, degree two valid: {}",
        r.f_rank_lower, r.borel_bound, r.degree2_valid
    );
    if let Some(c) = &r.caveat {
        let _ = writeln!(out, "caveat: {c}");
    }
    section(&mut out, &format!("system ({})", an.system.convention));
    let _ = writeln!(out, "row0 {:?}", an.system.row0);
    let eta: Vec<String> = an
        .system
        .eta_index
        .iter()
        .map(|j| format!("eta_{j}"))
        .collect();
    let _ = writeln!(out, "columns sigma {}", eta.join(" "));
    for (name, mat) in [("J", &an.system.j), ("K", &an.system.k)] {
        for (i, row) in matrix_strings(mat).iter().enumerate() {
            let _ = writeln!(out, "{name}[{i}] = [{}]", row.join(", "));
        }
    }
    section(&mut out, "solved classes");
    for c in &an.solved.classes {
        let _ = writeln!(out, "{} = {}", class_label(c.s, m), c.expr);
    }
    section(&mut out, "image");
    let _ = writeln!(out, "basis {}", an.image.basis.join(" "));
    for (id, row) in an.image.identification.iter().zip(&an.image.matrix) {
        let row: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "{id}: [{}]", row.join(", "));
    }
    section(&mut out, "certificates");
    let c = &an.certificate;
    let _ = writeln!(
        out,
        "det J nonzero: {}, rank K = {} of {}",
        c.det_nonzero,
        c.rank_k,
        an.system.k.cols()
    );
    section(&mut out, "eigenbundle ranks");
    for r in &ranks.ranks {
        let _ = writeln!(out, "E_{}: {}", r.q, r.rank);
    }
    section(&mut out, "strategies");
    let _ = writeln!(
        out,
        "sigma-row {}, deg0 {}, multiplicity {}, certifier {}, solver {}",
        strategies.sigma_row,
        strategies.deg0,
        strategies.multiplicity,
        strategies.certifier,
        strategies.solver
    );
    section(&mut out, "numeric checks");
    let _ = writeln!(out, "rhs0 max abs error {:e}", an.rhs0_float_error);
    out
}

pub fn toledo_json(r: &ToledoReport) -> Value {
    to_value(r)
}

pub fn toledo_table(r: &ToledoReport) -> String {
    let mut out = String::new();
    section(&mut out, &format!("Toledo invariants, h = {}", r.h));
    let _ = writeln!(
        out,
        "rotation class j0 = {}, lambda = {} (fitted on {}), tried {:?}",
        r.j0, r.fitted_lambda, r.fitted_on, r.tried
    );
    for e in &r.entries {
        let _ = writeln!(
            out,
            "{} (s = {}): {} expected {} {}",
            e.factor,
            e.s,
            e.sigma_coeff,
            e.expected,
            if e.matches { "ok" } else { "MISMATCH" }
        );
    }
    let _ = writeln!(out, "trace row sum {}", r.trace_sum);
    out
}

pub fn cobordism_json(r: &CobordismReport) -> Value {
    to_value(r)
}

pub fn cobordism_table(r: &CobordismReport) -> String {
    let mut out = String::new();
    section(&mut out, &format!("characteristic numbers, m = {}", r.m));
    for e in &r.entries {
        let _ = writeln!(
            out,
            "<c1(E_{}), [B]>: {} vs {} {}",
            e.q,
            e.first,
            e.second,
            if e.equal { "equal" } else { "DIFFERENT" }
        );
    }
    let _ = writeln!(out, "all equal: {}", r.all_equal);
    out
}

pub fn hirzebruch_table(r: &HirzebruchReport) -> String {
    let mut out = String::new();
    section(&mut out, "branched double covers");
    for c in &r.cases {
        let _ = writeln!(out, "h = {}: 4 c1(E_1) = {}", c.h, c.four_c1_e1);
    }
    let _ = writeln!(out, "free: 4 c1(E_1) = {}", r.free_case.four_c1_e1);
    let _ = writeln!(out, "holds: {}", r.holds);
    out
}

pub fn verify_json(v: &VerifySummary) -> Value {
    to_value(v)
}

pub fn verify_table(v: &VerifySummary) -> String {
    let mut out = String::new();
    for c in &v.checks {
        let _ = writeln!(out, "{}", c.line());
    }
    let _ = writeln!(
        out,
        "{} passed, {} failed, {} ms",
        v.passed, v.failed, v.elapsed_ms
    );
    out
}

/// Canonical text of a JSON report: pretty-printed, keys in emission order.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
