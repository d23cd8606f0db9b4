//! Batch files of named checks: each names an operation, its JSON inputs and the expected
//! fields of its JSON output.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::chevalley::{
    adjoint_invariants_sc, coadjoint_invariants_sc, nilradical_dual_invariants, LeviGenerators,
};
use crate::components::{component_count, dim_formulas, GaloisExtDesc, GaloisExtJson};
use crate::error::{Error, Result};
use crate::galois::{cohomology, LocalFieldDesc, TameRep, TameRepJson};
use crate::lattice::{LatticeJson, LatticeWithAction};
use crate::levi::enumerate_standard_levis;
use crate::root_datum::{parse_type, GenReductiveDatum};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub op: String,
    #[serde(default)]
    pub inputs: Map<String, Value>,
    /// Fields that must appear in the output with exactly these values.
    #[serde(default)]
    pub expected: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ScenarioFile {
    #[serde(default)]
    pub scenarios: Vec<Scenario>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub scenario: String,
    pub field: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub checks: Vec<CheckResult>,
    /// Scenarios whose operation failed outright, with the error message.
    pub errors: Vec<(String, String)>,
    pub passed: usize,
    pub failed: usize,
}

impl ScenarioReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0 && self.errors.is_empty()
    }
}

/// Parses a scenario file; errors carry the line and column.
pub fn parse_scenarios(text: &str) -> Result<ScenarioFile> {
    serde_json::from_str(text)
        .map_err(|e| Error::Invalid(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn input<T: serde::de::DeserializeOwned>(inputs: &Map<String, Value>, key: &str) -> Result<T> {
    let v = inputs
        .get(key)
        .ok_or_else(|| Error::Invalid(format!("missing input `{key}`")))?;
    serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(format!("input `{key}`: {e}")))
}

fn datum(inputs: &Map<String, Value>) -> Result<GenReductiveDatum> {
    let name: String = input(inputs, "type")?;
    Ok(GenReductiveDatum::connected(parse_type(&name)?))
}

/// Runs one operation and returns its JSON output.
pub fn evaluate(op: &str, inputs: &Map<String, Value>) -> Result<Value> {
    match op {
        "coadjoint_invariants" => {
            let p: u32 = input(inputs, "p")?;
            Ok(json!({ "dim": coadjoint_invariants_sc(datum(inputs)?.base(), p)?.dim }))
        }
        "adjoint_invariants" => {
            let p: u32 = input(inputs, "p")?;
            Ok(json!({ "dim": adjoint_invariants_sc(datum(inputs)?.base(), p)?.dim }))
        }
        "nilradical_invariants" => {
            let p: u32 = input(inputs, "p")?;
            let d = datum(inputs)?;
            let mut dims = Vec::new();
            for levi in enumerate_standard_levis(&d)
                .iter()
                .filter(|l| !l.is_whole_group())
            {
                dims.push(nilradical_dual_invariants(&d, levi, p, &LeviGenerators::Full)?.dim);
            }
            Ok(json!({ "levis": dims.len(), "max_dim": dims.iter().copied().max().unwrap_or(0) }))
        }
        "pi1" => Ok(json!({ "pi1": datum(inputs)?.base().pi1_derived() })),
        "cohomology" => {
            let field: LocalFieldDesc = input(inputs, "field")?;
            let rep: TameRepJson = input(inputs, "rep")?;
            Ok(
                serde_json::to_value(cohomology(&field, &TameRep::from_json(&rep)?)?)
                    .expect("serialisable"),
            )
        }
        "dim_formulas" => {
            let d_f: usize = input(inputs, "dF")?;
            Ok(serde_json::to_value(dim_formulas(&datum(inputs)?, d_f)).expect("serialisable"))
        }
        "component_count" => {
            let ext = GaloisExtDesc::from_json(input::<GaloisExtJson>(inputs, "ext")?)?;
            let lat = LatticeWithAction::from_json(input::<LatticeJson>(inputs, "lattice")?)?;
            let etale = inputs
                .get("pi1_etale")
                .and_then(Value::as_bool)
                .unwrap_or(true);
            Ok(
                serde_json::to_value(component_count(&ext, &lat.m2(), etale, false)?)
                    .expect("serialisable"),
            )
        }
        other => Err(Error::Invalid(format!("unknown operation `{other}`"))),
    }
}

pub fn run_scenarios(file: &ScenarioFile) -> ScenarioReport {
    let outcomes: Vec<(usize, std::result::Result<Value, String>)> = std::thread::scope(|s| {
        let handles: Vec<_> = file
            .scenarios
            .iter()
            .enumerate()
            .map(|(i, sc)| {
                s.spawn(move || (i, evaluate(&sc.op, &sc.inputs).map_err(|e| e.to_string())))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scenario thread panicked"))
            .collect()
    });
    let mut checks = Vec::new();
    let mut errors = Vec::new();
    for (i, outcome) in outcomes {
        let sc = &file.scenarios[i];
        match outcome {
            Ok(out) => {
                for (field, expected) in &sc.expected {
                    let computed = out.get(field).cloned().unwrap_or(Value::Null);
                    checks.push(CheckResult {
                        scenario: sc.name.clone(),
                        field: field.clone(),
                        pass: &computed == expected,
                        expected: expected.clone(),
                        computed,
                    });
                }
            }
            Err(e) => errors.push((sc.name.clone(), e)),
        }
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    let failed = checks.len() - passed;
    ScenarioReport {
        checks,
        errors,
        passed,
        failed,
    }
}
