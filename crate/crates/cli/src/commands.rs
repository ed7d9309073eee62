//! Subcommand implementations: each returns text, a JSON twin and an exit code.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value as Json};

use rulealg::algebra::{commutator, format_coeff, nontrivial_compose, Coeff};
use rulealg::catalog::{self, describe, falling_factorial_expand};
use rulealg::dot::{diagram_to_dot, graph_to_dot};
use rulealg::hopf::{antipode, coproduct, pbw_normal_form, TensorElement};
use rulealg::reduction::{commutator_r, nontrivial_compose_r};
use rulealg::verify::{self, Report};
use rulealg::{compose_d, compose_r, dagger, reduce, DiagramKey, Element, RewritingType};

use crate::dsl::{code, parse_expr, Diagnostic, Pos};
use crate::eval::{Env, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

pub struct Output {
    pub text: String,
    pub json: Json,
    pub code: i32,
}

impl Output {
    fn ok(text: String, json: Json) -> Output {
        Output { text, json, code: EXIT_OK }
    }
}

pub type CmdResult = Result<Output, Diagnostic>;

fn input_error(msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(code::TYPE, Pos { line: 1, col: 1 }, msg)
}

/// Terms sorted by descending degree, coefficient 1 left implicit.
pub fn element_text(env: &Env, x: &Element) -> String {
    let names = env.names();
    let mut terms: Vec<(&DiagramKey, &Coeff, String)> = x.terms().map(|(k, c, d)| (k, c, describe(k, d, &names))).collect();
    terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)));
    signed_sum(terms.into_iter().map(|(_, c, s)| (c.clone(), s)))
}

fn signed_sum(terms: impl IntoIterator<Item = (Coeff, String)>) -> String {
    let mut out = String::new();
    for (i, (c, name)) in terms.into_iter().enumerate() {
        let neg = c < Coeff::zero();
        let mag = if neg { -c } else { c };
        out.push_str(match (i, neg) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        });
        if !mag.is_one() {
            out.push_str(&format_coeff(&mag));
            out.push('·');
        }
        out.push_str(&name);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

pub fn element_json(env: &Env, x: &Element) -> Json {
    json!({ "type": "element", "text": element_text(env, x), "terms": x.to_json() })
}

pub fn tensor_text(env: &Env, t: &TensorElement) -> String {
    let names = env.names();
    let name = |k: &DiagramKey| describe(k, t.representative(k).expect("tensor keys carry representatives"), &names);
    signed_sum(
        t.terms()
            .map(|(keys, c)| (c.clone(), format!("({})", keys.iter().map(name).collect::<Vec<_>>().join(" ⊗ ")))),
    )
}

pub fn tensor_json(env: &Env, t: &TensorElement) -> Json {
    let mut reps = Map::new();
    for (keys, _) in t.terms() {
        for k in keys {
            let rep = t.representative(k).expect("tensor keys carry representatives");
            reps.insert(k.to_hex(), serde_json::to_value(rep).expect("diagrams serialize"));
        }
    }
    let mut j = t.to_json();
    j["type"] = json!("tensor");
    j["text"] = json!(tensor_text(env, t));
    j["representatives"] = Json::Object(reps);
    j
}

fn value_out(env: &Env, v: &Value) -> (String, Json) {
    match v {
        Value::Element(x) => (element_text(env, x), element_json(env, x)),
        Value::Tensor(t) => (tensor_text(env, t), tensor_json(env, t)),
    }
}

pub fn operand(env: &Env, src: &str) -> Result<Element, Diagnostic> {
    env.element(&parse_expr(src)?)
}

fn element_output(env: &Env, x: &Element) -> Output {
    Output::ok(element_text(env, x), element_json(env, x))
}

pub fn compose(env: &Env, x: &str, y: &str, ty: Option<RewritingType>, nontrivial: bool) -> CmdResult {
    let (x, y) = (operand(env, x)?, operand(env, y)?);
    let r = match (ty, nontrivial) {
        (None, false) => compose_d(&x, &y),
        (None, true) => nontrivial_compose(&x, &y),
        (Some(t), false) => compose_r(&x, &y, t).map_err(|e| input_error(e.to_string()))?,
        (Some(t), true) => nontrivial_compose_r(&x, &y, t).map_err(|e| input_error(e.to_string()))?,
    };
    Ok(element_output(env, &r))
}

pub fn reduce_cmd(env: &Env, x: &str, t: RewritingType) -> CmdResult {
    Ok(element_output(env, &reduce(&operand(env, x)?, t)))
}

pub fn commutator_cmd(env: &Env, x: &str, y: &str, ty: Option<RewritingType>) -> CmdResult {
    let (x, y) = (operand(env, x)?, operand(env, y)?);
    let r = match ty {
        None => commutator(&x, &y),
        Some(t) => commutator_r(&x, &y, t).map_err(|e| input_error(e.to_string()))?,
    };
    Ok(element_output(env, &r))
}

pub fn coproduct_cmd(env: &Env, x: &str) -> CmdResult {
    let t = coproduct(&operand(env, x)?);
    Ok(Output::ok(tensor_text(env, &t), tensor_json(env, &t)))
}

pub fn antipode_cmd(env: &Env, x: &str) -> CmdResult {
    Ok(element_output(env, &antipode(&operand(env, x)?)))
}

pub fn dagger_cmd(env: &Env, x: &str) -> CmdResult {
    Ok(element_output(env, &dagger(&operand(env, x)?)))
}

/// Multiplicities of the named single-component classes in `key`, or `None`
/// when some component is not among them.
fn count_components(key: &DiagramKey, basis: &[DiagramKey]) -> Option<Vec<usize>> {
    let mut counts = vec![0; basis.len()];
    for c in key.components() {
        counts[basis.iter().position(|b| *b == c)?] += 1;
    }
    Some(counts)
}

fn single_key(x: &Element) -> DiagramKey {
    x.keys().next().expect("generator is a basis element").clone()
}

fn power(name: &str, n: usize) -> Option<String> {
    match n {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{n}")),
    }
}

pub fn normal_order(env: &Env, form: &str, x: &str) -> CmdResult {
    let x = operand(env, x)?;
    match form {
        "hw" => {
            let basis = [
                single_key(&catalog::d_adag()),
                single_key(&catalog::d_a()),
                single_key(&catalog::d_e()),
            ];
            let mut terms = Vec::new();
            for (k, c, _) in x.terms() {
                let n = count_components(k, &basis).ok_or_else(|| input_error("element is not in the span of d(r,s,t)"))?;
                terms.push((n, c.clone()));
            }
            terms.sort_by(|a, b| b.0.cmp(&a.0));
            let text = signed_sum(terms.iter().map(|(n, c)| (c.clone(), format!("d({},{},{})", n[0], n[1], n[2]))));
            let json = json!({
                "type": "hw-normal-order",
                "text": text,
                "terms": terms.iter().map(|(n, c)| json!({"r": n[0], "s": n[1], "t": n[2], "coefficient": format_coeff(c)})).collect::<Vec<_>>(),
            });
            Ok(Output::ok(text, json))
        }
        "vertex" => {
            let basis = [
                single_key(&catalog::adag()),
                single_key(&catalog::vertex_identity()),
                single_key(&catalog::a()),
            ];
            let mut acc: BTreeMap<(usize, usize, usize), Coeff> = BTreeMap::new();
            for (k, c, _) in x.terms() {
                let n = count_components(k, &basis).ok_or_else(|| input_error("element is not in the vertex rule algebra"))?;
                for (j, s) in falling_factorial_expand(n[1]).into_iter().enumerate() {
                    if s != BigInt::zero() {
                        *acc.entry((n[0], j, n[2])).or_insert_with(Coeff::zero) += c * Coeff::from_integer(s);
                    }
                }
            }
            acc.retain(|_, c| !c.is_zero());
            let terms: Vec<_> = acc.into_iter().rev().collect();
            let name = |&(m, n, p): &(usize, usize, usize)| {
                let parts: Vec<String> = [power("a†", m), power("I", n), power("a", p)].into_iter().flatten().collect();
                if parts.is_empty() {
                    "r_∅".to_string()
                } else {
                    parts.join("*")
                }
            };
            let text = signed_sum(terms.iter().map(|(k, c)| (c.clone(), name(k))));
            let json = json!({
                "type": "vertex-normal-order",
                "text": text,
                "terms": terms.iter().map(|((m, n, p), c)| json!({"m": m, "n": n, "p": p, "coefficient": format_coeff(c)})).collect::<Vec<_>>(),
            });
            Ok(Output::ok(text, json))
        }
        "pbw" => {
            let nf = pbw_normal_form(&x);
            let names = env.names();
            let name = |k: &DiagramKey| describe(k, nf.representative(k).expect("PBW keys carry representatives"), &names);
            let text = signed_sum(nf.terms().map(|(keys, c)| {
                let s = if keys.is_empty() {
                    "r_∅".to_string()
                } else {
                    keys.iter().map(name).collect::<Vec<_>>().join(" * ")
                };
                (c.clone(), s)
            }));
            let mut reps = Map::new();
            for (keys, _) in nf.terms() {
                for k in keys {
                    let rep = nf.representative(k).expect("PBW keys carry representatives");
                    reps.insert(k.to_hex(), serde_json::to_value(rep).expect("diagrams serialize"));
                }
            }
            let json = json!({ "type": "pbw-normal-order", "text": text, "terms": nf.to_json(), "representatives": reps });
            Ok(Output::ok(text, json))
        }
        other => Err(input_error(format!("unknown normal form `{other}` (expected hw, vertex or pbw)"))),
    }
}

pub fn verify_cmd(suite: &str, types: &[RewritingType]) -> CmdResult {
    let reports: Vec<Report> = verify::suite(suite, types)
        .ok_or_else(|| input_error(format!("unknown suite `{suite}` (expected one of {})", verify::SUITES.join(", "))))?;
    let passed = reports.iter().all(Report::passed);
    let cells: usize = reports.iter().map(|r| r.checks.len()).sum();
    let bad: usize = reports.iter().map(|r| r.failures().count()).sum();
    let mut text: String = reports.iter().map(ToString::to_string).collect();
    text.push_str(&format!(
        "{}: {} cells, {} mismatches",
        if passed { "ok" } else { "MISMATCH" },
        cells,
        bad
    ));
    let json = json!({
        "type": "verify",
        "suite": suite,
        "passed": passed,
        "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
    });
    Ok(Output {
        text,
        json,
        code: if passed { EXIT_OK } else { EXIT_MISMATCH },
    })
}

pub fn export_dot(env: &Env, target: &str) -> CmdResult {
    let mut dots: Vec<(String, String)> = Vec::new();
    if let Some(g) = env.graphs.get(target) {
        dots.push((target.to_string(), graph_to_dot(target, &g.graph)));
    } else if let Some(d) = env.diagrams.get(target) {
        dots.push((target.to_string(), diagram_to_dot(target, &d.diagram)));
    } else {
        let x = operand(env, target)?;
        for (i, (_, _, d)) in x.terms().enumerate() {
            let name = format!("term{}", i + 1);
            dots.push((name.clone(), diagram_to_dot(&name, d)));
        }
    }
    let text = dots.iter().map(|(_, d)| d.as_str()).collect::<Vec<_>>().join("\n");
    let json = json!({
        "type": "dot",
        "graphs": dots.iter().map(|(n, d)| json!({"name": n, "dot": d})).collect::<Vec<_>>(),
    });
    Ok(Output::ok(text.trim_end().to_string(), json))
}

/// Evaluate every `print` line of a loaded document.
pub fn run(env: &Env) -> CmdResult {
    let mut lines = Vec::new();
    let mut results = Vec::new();
    for (src, v) in &env.printed {
        let (text, json) = value_out(env, v);
        lines.push(format!("{src} = {text}"));
        results.push(json!({ "expression": src, "value": json }));
    }
    Ok(Output::ok(lines.join("\n"), json!({ "type": "run", "results": results })))
}
