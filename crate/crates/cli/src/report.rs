//! Report documents. Keys are sorted (serde_json's default map is a
//! `BTreeMap`), scalars print in canonical `p/q` or `p/q+r/s√d` form, so
//! equal inputs give byte-identical output.

use msforms::classify::{Delta2Description, Delta2Kind};
use msforms::normal_form::NormalFormCertificate;
use msforms::orbit_tangent::{ComplexTable, FiltrationReport, InvolutionTable, Quadruple, TypeLabel};
use msforms::{KForm, LinMap, Matrix, Scalar, StructureResult, Subspace};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Plain,
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

pub fn scalar(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

/// A scalar together with the radicand of its field, `null` over `ℚ`.
pub fn field_scalar(x: &Scalar) -> Value {
    json!({
        "value": x.to_string(),
        "extension": x.radicand().map(|d| d.to_string()),
    })
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(m.row_vectors().iter().map(|r| vector(r)).collect())
}

pub fn linmap(g: &LinMap) -> Value {
    matrix(g.matrix())
}

pub fn subspace(s: &Subspace) -> Value {
    Value::Array(s.basis().iter().map(|v| vector(v)).collect())
}

/// `{"123": "1", "456": "-1/2"}`, keyed by index digits.
pub fn form(f: &KForm) -> Value {
    let map: Map<String, Value> = f
        .terms()
        .map(|(m, c)| (m.indices().iter().map(|i| i.to_string()).collect(), scalar(c)))
        .collect();
    Value::Object(map)
}

fn quadruple(q: &Quadruple) -> Value {
    Value::Array(q.coefficients().iter().map(|c| scalar(c)).collect())
}

fn labels(ls: &[TypeLabel]) -> Value {
    Value::Array(ls.iter().map(|l| Value::String(l.to_string())).collect())
}

pub fn structure(r: &StructureResult) -> Value {
    json!({
        "mu": scalar(&r.mu),
        "lambda": field_scalar(&r.lambda),
        "matrix": linmap(&r.structure),
        "sign_convention": r.sign_convention,
        "theta": form(&r.theta_used),
    })
}

pub fn delta2(d: &Delta2Description) -> Value {
    let kind = match d.kind {
        Delta2Kind::TransversalPair => "transversal_pair",
        Delta2Kind::ZeroOnly => "zero_only",
        Delta2Kind::SingleSubspace => "single_subspace",
    };
    json!({
        "kind": kind,
        "spaces": d.spaces.iter().map(subspace).collect::<Vec<_>>(),
    })
}

pub fn certificate(c: &NormalFormCertificate) -> Value {
    json!({
        "orbit": c.orbit.tag(),
        "g": linmap(&c.g),
        "canonical": form(&c.canonical),
        "residual_zero": c.residual_zero,
    })
}

pub fn involution_table(t: &InvolutionTable) -> Value {
    let regenerated: Vec<Value> = t
        .regenerated
        .iter()
        .map(|(q, sigma)| json!({ "quadruple": quadruple(q), "signs": sigma.to_vec() }))
        .collect();
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            json!({
                "quadruple": quadruple(&r.quadruple),
                "squares_to_identity": r.squares_to_identity,
                "plus_dim": r.plus_dim,
                "plus_eigenspace": r.composition.as_deref().map(labels),
                "expected": labels(&r.expected),
                "matches": r.matches(),
            })
        })
        .collect();
    json!({
        "block_map": matrix(&t.block_map),
        "regenerated": regenerated,
        "rows": rows,
        "regenerated_matches_listed": t.regenerated_matches_listed,
        "discrepancies": t.discrepancies,
    })
}

pub fn complex_table(t: &ComplexTable) -> Value {
    let candidates: Vec<Value> = t
        .candidates
        .iter()
        .map(|(q, ok)| json!({ "quadruple": quadruple(q), "squares_to_minus_identity": ok }))
        .collect();
    json!({
        "candidates": candidates,
        "passing": t.passing.iter().map(quadruple).collect::<Vec<_>>(),
        "passing_count": t.passing.len(),
        "linked_signs_pass": t.linked_signs_pass,
        "opposite_signs_pass": t.opposite_signs_pass,
    })
}

pub fn filtration(r: &FiltrationReport) -> Value {
    json!({
        "dims": {
            "d1": r.dim_d1,
            "d2": r.dim_d2,
            "d3": r.dim_d3,
            "im_n": r.dim_im_n,
            "im_n2": r.dim_im_n2,
            "ker_n": r.dim_ker_n,
            "ker_n2": r.dim_ker_n2,
        },
        "profile": r.profile().to_vec(),
        "checks": {
            "d_chain": r.d_chain,
            "n_chain": r.n_chain,
            "im_n_is_d2": r.im_n_is_d2,
            "im_n2_is_d1": r.im_n2_is_d1,
            "n_cubed_zero": r.n_cubed_zero,
            "omega_in_d2": r.omega_in_d2,
            "ker_n2_is_wedge_annihilator": r.ker_n2_is_wedge_annihilator,
            "trace_criterion": r.trace_criterion,
            "k_omega_identity": r.k_omega_identity,
            "k_vanishes_on_d1": r.k_vanishes_on_d1,
        },
        "violations": r.violations(),
    })
}

pub fn render(doc: &Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("documents are plain JSON values");
            s.push('\n');
            s
        }
        OutputFormat::Plain => plain(doc),
    }
}

fn is_leaf_array(items: &[Value]) -> bool {
    items.iter().all(|v| !v.is_array() && !v.is_object())
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                flatten(&join(k), child, out);
            }
        }
        Value::Array(items) if !items.is_empty() && !is_leaf_array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), child, out);
            }
        }
        Value::Object(_) => out.push((prefix.to_string(), "{}".into())),
        other => out.push((prefix.to_string(), inline(other))),
    }
}

/// One `key: value` line per leaf, values aligned in one column.
pub fn plain(doc: &Value) -> String {
    let mut lines = Vec::new();
    flatten("", doc, &mut lines);
    let width = lines.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in lines {
        let pad = width - k.chars().count();
        out.push_str(&format!("{k}:{} {v}\n", " ".repeat(pad)));
    }
    out
}
