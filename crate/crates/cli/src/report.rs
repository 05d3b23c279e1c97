//! JSON reports. Keys keep insertion order and every scalar is written as a
//! string (`"3"`, `"-1/2"`), so equal inputs give byte-identical output.

use serde_json::{json, Map, Value};

use serrecat::functors::{FunctorExpr, Grade, NatIso, SesWitness};
use serrecat::linalg::Matrix;
use serrecat::recollement::{AxiomReport, BatteryReport, SplitReport};
use serrecat::typeclass::AMBIENT;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub algebra: Value,
    pub result: Value,
    pub chains: Value,
    pub certificates: Vec<Value>,
    pub witnesses: Vec<Value>,
    /// `None` writes `null`, for reproducible output.
    pub timing_ms: Option<u64>,
    /// False when the command ran but something it checks failed.
    pub verified: bool,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            algebra: Value::Null,
            result: Value::Null,
            chains: json!([]),
            certificates: Vec::new(),
            witnesses: Vec::new(),
            timing_ms: None,
            verified: true,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("ambient".into(), json!(AMBIENT));
        m.insert("algebra".into(), self.algebra.clone());
        m.insert("result".into(), self.result.clone());
        m.insert("chains".into(), self.chains.clone());
        m.insert("certificates".into(), Value::Array(self.certificates.clone()));
        m.insert("witnesses".into(), Value::Array(self.witnesses.clone()));
        m.insert("verified".into(), json!(self.verified));
        m.insert("timing_ms".into(), json!(self.timing_ms));
        Value::Object(m)
    }
}

pub fn emit_report(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(&report.to_json()).expect("reports are plain JSON");
    s.push('\n');
    s
}

pub fn emit_error(command: &str, err: &CliError) -> String {
    let mut e = Map::new();
    e.insert("kind".into(), json!(err.kind()));
    e.insert("message".into(), json!(err.to_string()));
    if let CliError::Parse(p) = err {
        e.insert("line".into(), json!(p.line));
        e.insert("col".into(), json!(p.col));
        e.insert("expected".into(), json!(p.expected));
    }
    e.insert("exit_code".into(), json!(err.exit_code()));
    let v = json!({ "command": command, "ambient": AMBIENT, "error": Value::Object(e) });
    let mut s = serde_json::to_string_pretty(&v).expect("reports are plain JSON");
    s.push('\n');
    s
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(
        m.row_iter()
            .map(|r| Value::Array(r.iter().map(|x| json!(x.to_string())).collect()))
            .collect(),
    )
}

pub fn witness(w: &SesWitness) -> Value {
    json!({
        "sequence": w.label,
        "dims": w.dims,
        "image_dims": w.image_dims,
        "image_exact": w.image_exact,
    })
}

pub fn grade(g: &Grade) -> Value {
    match g {
        Grade::Failed(why) => json!({ "grade": g.label(), "detail": why }),
        _ => json!({ "grade": g.label() }),
    }
}

pub fn functor(name: &str, f: &FunctorExpr) -> Value {
    json!({ "name": name, "signature": f.signature() })
}

pub fn nat_iso(name: &str, iso: &NatIso) -> Value {
    json!({
        "name": name,
        "from": iso.from.signature(),
        "to": iso.to.signature(),
        "grade": iso.grade.label(),
        "bimodule_iso": iso.bimodule_iso.as_ref().map(matrix),
    })
}

pub fn axioms(r: &AxiomReport) -> Vec<Value> {
    r.axioms
        .iter()
        .map(|a| {
            let mut v = json!({ "axiom": a.name });
            if let (Value::Object(o), Value::Object(g)) = (&mut v, grade(&a.grade)) {
                o.extend(g);
            }
            v
        })
        .collect()
}

pub fn battery(name: &str, b: &BatteryReport) -> Value {
    json!({
        "battery": name,
        "consistent": b.consistent(),
        "holds": b.holds(),
        "conditions": b.conditions,
        "sequences": b.sequences,
        "orthogonality_checks": b.orthogonality_checks,
        "failures": b.failures,
    })
}

/// Certificates and witnesses of a split check.
pub fn split(s: &SplitReport) -> (Vec<Value>, Vec<Value>) {
    let mut certs = Vec::new();
    for (name, iso) in [("i^* = i^!", &s.i_iso), ("j_! = j_*", &s.j_iso)] {
        if let Some(iso) = iso {
            certs.push(nat_iso(name, iso));
        }
    }
    let mut wits: Vec<Value> = s
        .decompositions
        .iter()
        .map(|d| {
            json!({
                "decomposition": d.probe,
                "dims": d.dims,
                "iso": matrix(d.iso.matrix()),
            })
        })
        .collect();
    if let Some((f, w)) = &s.witness {
        wits.push(json!({ "not_exact": f, "witness": witness(w) }));
    }
    (certs, wits)
}
