//! JSON schemas for scenarios, functionals, and behaviors, plus report
//! writers with fixed field order and 12-significant-digit floats so that
//! identical inputs always produce identical bytes.
//!
//! Parsing goes through serde; emission goes through a small ordered
//! value type rendered with `fmt::sig12`.

use serde::{Deserialize, Serialize};

use crate::behavior::{Behavior, JointBehavior};
use crate::bounds::{BoundReport, Witness};
use crate::error::{Error, Result};
use crate::fmt::sig12;
use crate::functional::{BellFunctional, Kind};
use crate::oracle::{MdlOracleReport, SmdOracleReport, StrongMdlVertex, VerificationReport};
use crate::scenario::Scenario;

// ---------------------------------------------------------------------------
// Ordered JSON values
// ---------------------------------------------------------------------------

/// JSON value with insertion-ordered object fields.
#[derive(Debug, Clone, PartialEq)]
pub enum JsonValue {
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Arr(Vec<JsonValue>),
    Obj(Vec<(&'static str, JsonValue)>),
}

impl JsonValue {
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            JsonValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            JsonValue::Int(i) => out.push_str(&i.to_string()),
            JsonValue::Num(x) => {
                debug_assert!(x.is_finite(), "non-finite float in JSON output");
                out.push_str(&sig12(*x));
            }
            JsonValue::Str(s) => {
                out.push('"');
                for ch in s.chars() {
                    match ch {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            JsonValue::Arr(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            JsonValue::Obj(fields) => {
                out.push('{');
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('"');
                    out.push_str(key);
                    out.push_str("\":");
                    value.write(out);
                }
                out.push('}');
            }
        }
    }
}

fn usize_arr(values: &[usize]) -> JsonValue {
    JsonValue::Arr(values.iter().map(|&v| JsonValue::Int(v as i64)).collect())
}

fn f64_arr(values: &[f64]) -> JsonValue {
    JsonValue::Arr(values.iter().map(|&v| JsonValue::Num(v)).collect())
}

// ---------------------------------------------------------------------------
// Wire schemas
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ScenarioJson {
    parties: usize,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TermJson {
    a: Vec<usize>,
    x: Vec<usize>,
    w: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FunctionalJson {
    scenario: ScenarioJson,
    kind: String,
    terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CellJson {
    a: Vec<usize>,
    x: Vec<usize>,
    p: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BehaviorJson {
    scenario: ScenarioJson,
    kind: String,
    cells: Vec<CellJson>,
}

fn scenario_from_json(json: &ScenarioJson) -> Result<Scenario> {
    if json.parties != json.inputs.len() {
        return Err(Error::Malformed(format!(
            "scenario declares {} parties but {} input alphabets",
            json.parties,
            json.inputs.len()
        )));
    }
    Scenario::new(json.inputs.clone(), json.outputs.clone())
}

fn kind_from_str(kind: &str) -> Result<Kind> {
    match kind {
        "conditional" => Ok(Kind::Conditional),
        "joint" => Ok(Kind::Joint),
        other => Err(Error::Malformed(format!(
            "kind must be `conditional` or `joint`, got `{other}`"
        ))),
    }
}

/// Parse a functional; omitted cells carry coefficient 0, repeated cells
/// accumulate.
pub fn functional_from_json(text: &str) -> Result<BellFunctional> {
    let json: FunctionalJson =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let scenario = scenario_from_json(&json.scenario)?;
    let kind = kind_from_str(&json.kind)?;
    let mut coeffs = vec![0.0; scenario.cell_count()];
    for term in &json.terms {
        let input = scenario.input_index(&term.x)?;
        let output = scenario.output_index(&term.a)?;
        coeffs[scenario.cell_index(input, output)] += term.w;
    }
    BellFunctional::new(scenario, kind, coeffs)
}

/// Parsed behavior table of either kind.
#[derive(Debug, Clone)]
pub enum ParsedBehavior {
    Conditional(Behavior),
    Joint(JointBehavior),
}

/// Parse a behavior; omitted cells carry probability 0.
pub fn behavior_from_json(text: &str) -> Result<ParsedBehavior> {
    let json: BehaviorJson =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let scenario = scenario_from_json(&json.scenario)?;
    let kind = kind_from_str(&json.kind)?;
    let mut probs = vec![0.0; scenario.cell_count()];
    for cell in &json.cells {
        let input = scenario.input_index(&cell.x)?;
        let output = scenario.output_index(&cell.a)?;
        probs[scenario.cell_index(input, output)] = cell.p;
    }
    Ok(match kind {
        Kind::Conditional => ParsedBehavior::Conditional(Behavior::new(scenario, probs)?),
        Kind::Joint => ParsedBehavior::Joint(JointBehavior::new(scenario, probs)?),
    })
}

pub fn scenario_to_json(scenario: &Scenario) -> JsonValue {
    JsonValue::Obj(vec![
        ("parties", JsonValue::Int(scenario.parties() as i64)),
        ("inputs", usize_arr(scenario.inputs())),
        ("outputs", usize_arr(scenario.outputs())),
    ])
}

/// Emit a functional with nonzero terms in (input, output) index order.
pub fn functional_to_json(f: &BellFunctional) -> JsonValue {
    let scenario = f.scenario();
    let mut terms = Vec::new();
    for input in 0..scenario.input_tuple_count() {
        for output in 0..scenario.output_tuple_count() {
            let w = f.coeff(input, output);
            if w != 0.0 {
                terms.push(JsonValue::Obj(vec![
                    ("a", usize_arr(&scenario.output_tuple(output))),
                    ("x", usize_arr(&scenario.input_tuple(input))),
                    ("w", JsonValue::Num(w)),
                ]));
            }
        }
    }
    JsonValue::Obj(vec![
        ("scenario", scenario_to_json(scenario)),
        ("kind", JsonValue::Str(f.kind().as_str().to_string())),
        ("terms", JsonValue::Arr(terms)),
    ])
}

fn table_to_json(scenario: &Scenario, kind: Kind, probs: &[f64]) -> JsonValue {
    let mut cells = Vec::with_capacity(probs.len());
    for input in 0..scenario.input_tuple_count() {
        for output in 0..scenario.output_tuple_count() {
            cells.push(JsonValue::Obj(vec![
                ("a", usize_arr(&scenario.output_tuple(output))),
                ("x", usize_arr(&scenario.input_tuple(input))),
                ("p", JsonValue::Num(probs[scenario.cell_index(input, output)])),
            ]));
        }
    }
    JsonValue::Obj(vec![
        ("scenario", scenario_to_json(scenario)),
        ("kind", JsonValue::Str(kind.as_str().to_string())),
        ("cells", JsonValue::Arr(cells)),
    ])
}

/// Emit a conditional behavior with every cell listed.
pub fn behavior_to_json(b: &Behavior) -> JsonValue {
    table_to_json(b.scenario(), Kind::Conditional, b.probs())
}

/// Emit a joint behavior with every cell listed.
pub fn joint_behavior_to_json(b: &JointBehavior) -> JsonValue {
    table_to_json(b.scenario(), Kind::Joint, b.probs())
}

/// Emit a dense complex matrix as `{"dim":d,"entries":[[re,im],...]}`,
/// row-major.
pub fn matrix_to_json(m: &crate::quantum::ComplexMatrix) -> JsonValue {
    let entries = m
        .entries()
        .iter()
        .map(|z| JsonValue::Arr(vec![JsonValue::Num(z.re), JsonValue::Num(z.im)]))
        .collect();
    JsonValue::Obj(vec![
        ("dim", JsonValue::Int(m.dim() as i64)),
        ("entries", JsonValue::Arr(entries)),
    ])
}

/// Export a quantum strategy for external inspection: the density matrix
/// plus, per party and per input, the commuting observables. Not consumed
/// by any other tool.
pub fn strategy_to_json(strategy: &crate::quantum::QuantumStrategy) -> JsonValue {
    let parties = strategy
        .measurements()
        .iter()
        .map(|inputs| {
            JsonValue::Arr(
                inputs
                    .iter()
                    .map(|m| {
                        JsonValue::Obj(vec![(
                            "observables",
                            JsonValue::Arr(m.observables().iter().map(matrix_to_json).collect()),
                        )])
                    })
                    .collect(),
            )
        })
        .collect();
    JsonValue::Obj(vec![
        ("state", matrix_to_json(strategy.state())),
        ("measurements", JsonValue::Arr(parties)),
    ])
}

// ---------------------------------------------------------------------------
// Report writers
// ---------------------------------------------------------------------------

pub fn witness_to_json(witness: &Witness) -> JsonValue {
    match witness {
        Witness::Strategy(s) => JsonValue::Obj(vec![(
            "strategy",
            JsonValue::Arr(s.outputs.iter().map(|per| usize_arr(per)).collect()),
        )]),
        Witness::Cell { inputs, outputs } => JsonValue::Obj(vec![(
            "cell",
            JsonValue::Obj(vec![("a", usize_arr(outputs)), ("x", usize_arr(inputs))]),
        )]),
        Witness::CellPerInput(cells) => JsonValue::Obj(vec![(
            "cells",
            JsonValue::Arr(cells.iter().map(|a| usize_arr(a)).collect()),
        )]),
    }
}

pub fn bound_report_to_json(report: &BoundReport) -> JsonValue {
    JsonValue::Obj(vec![
        ("value", JsonValue::Num(report.value)),
        ("witness", witness_to_json(&report.witness)),
    ])
}

fn responses_to_json(responses: &crate::bounds::DeterministicStrategy) -> JsonValue {
    JsonValue::Arr(responses.outputs.iter().map(|per| usize_arr(per)).collect())
}

pub fn strong_mdl_vertex_to_json(witness: &StrongMdlVertex) -> JsonValue {
    match witness {
        StrongMdlVertex::Determined { input, responses } => JsonValue::Obj(vec![
            ("input", usize_arr(input)),
            ("responses", responses_to_json(responses)),
        ]),
        StrongMdlVertex::Constrained {
            input_dist,
            responses,
        } => JsonValue::Obj(vec![
            ("input_dist", f64_arr(input_dist)),
            ("responses", responses_to_json(responses)),
        ]),
    }
}

pub fn mdl_oracle_to_json(report: &MdlOracleReport) -> JsonValue {
    JsonValue::Obj(vec![
        ("value", JsonValue::Num(report.value)),
        ("witness", strong_mdl_vertex_to_json(&report.witness)),
    ])
}

pub fn smd_oracle_to_json(report: &SmdOracleReport) -> JsonValue {
    JsonValue::Obj(vec![
        ("value", JsonValue::Num(report.value)),
        ("determined", mdl_oracle_to_json(&report.determined)),
        ("constrained", mdl_oracle_to_json(&report.constrained)),
    ])
}

pub fn verification_to_json(report: &VerificationReport) -> JsonValue {
    JsonValue::Obj(vec![
        ("formula", JsonValue::Num(report.formula_smd)),
        ("oracle", JsonValue::Num(report.oracle_smd.value)),
        ("gap", JsonValue::Num(report.gap_smd)),
        ("flag", JsonValue::Str(report.flag().to_string())),
        ("witness", smd_oracle_to_json(&report.oracle_smd)),
        ("putz", JsonValue::Num(report.putz)),
        ("oracle_mdl", mdl_oracle_to_json(&report.oracle_mdl)),
        ("gap_mdl", JsonValue::Num(report.gap_mdl)),
        ("beta_loc", JsonValue::Num(report.beta_loc.value)),
        ("beta_alg_tilde", JsonValue::Num(report.beta_alg_tilde)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::{pm_functional, pm_md_functional};

    #[test]
    fn functional_round_trip() {
        let f = pm_functional();
        let text = functional_to_json(&f).render();
        let back = functional_from_json(&text).unwrap();
        assert_eq!(back.kind(), Kind::Conditional);
        assert_eq!(back.scenario(), f.scenario());
        for (a, b) in back.coeffs().iter().zip(f.coeffs()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn joint_functional_round_trip() {
        let f = pm_md_functional(0.05, 1.0 / 9.0 + 0.05);
        let back = functional_from_json(&functional_to_json(&f).render()).unwrap();
        assert_eq!(back.kind(), Kind::Joint);
        for (a, b) in back.coeffs().iter().zip(f.coeffs()) {
            assert!((a - b).abs() < 1e-11);
        }
    }

    #[test]
    fn behavior_round_trip() {
        let b = Behavior::uniform(Scenario::peres_mermin());
        let text = behavior_to_json(&b).render();
        match behavior_from_json(&text).unwrap() {
            ParsedBehavior::Conditional(back) => {
                for (x, y) in back.probs().iter().zip(b.probs()) {
                    assert!((x - y).abs() < 1e-11);
                }
            }
            ParsedBehavior::Joint(_) => panic!("kind flipped in round trip"),
        }
    }

    #[test]
    fn omitted_cells_are_zero() {
        let text = r#"{
            "scenario": {"parties": 2, "inputs": [2, 2], "outputs": [2, 2]},
            "kind": "conditional",
            "terms": [{"a": [0, 0], "x": [0, 0], "w": 1.5}]
        }"#;
        let f = functional_from_json(text).unwrap();
        assert_eq!(f.nonzero_count(), 1);
        assert_eq!(f.coeff(0, 0), 1.5);
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(matches!(
            functional_from_json("not json"),
            Err(Error::Malformed(_))
        ));
        let bad_kind = r#"{
            "scenario": {"parties": 1, "inputs": [1], "outputs": [1]},
            "kind": "sideways",
            "terms": []
        }"#;
        assert!(matches!(
            functional_from_json(bad_kind),
            Err(Error::Malformed(_))
        ));
        let bad_tuple = r#"{
            "scenario": {"parties": 1, "inputs": [1], "outputs": [1]},
            "kind": "joint",
            "terms": [{"a": [3], "x": [0], "w": 1.0}]
        }"#;
        assert!(functional_from_json(bad_tuple).is_err());
    }

    #[test]
    fn strategy_export_is_valid_json() {
        let strategy = crate::quantum::ghz_strategy();
        let text = strategy_to_json(&strategy).render();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["state"]["dim"], 8);
        // <000|rho|000> = 1/2, stored as a [re, im] pair.
        assert_eq!(value["state"]["entries"][0][0], 0.5);
        assert_eq!(value["state"]["entries"][0][1], 0.0);
        // Three parties, two inputs each, one observable per input; input 1
        // is Pauli Y with entry (0, -1) at position (0, 1).
        assert_eq!(value["measurements"].as_array().unwrap().len(), 3);
        let y = &value["measurements"][0][1]["observables"][0];
        assert_eq!(y["entries"][1][1], -1.0);
    }

    #[test]
    fn rendering_is_stable() {
        let f = pm_functional();
        let a = functional_to_json(&f).render();
        let b = functional_to_json(&f).render();
        assert_eq!(a, b);
        assert!(a.starts_with(
            "{\"scenario\":{\"parties\":2,\"inputs\":[3,3],\"outputs\":[4,4]},\"kind\":\"conditional\""
        ));
    }

    #[test]
    fn string_escaping() {
        let v = JsonValue::Str("a\"b\\c\nd".into());
        assert_eq!(v.render(), "\"a\\\"b\\\\c\\nd\"");
    }
}
