use std::time::Instant;

use serde_json::{json, Value};

use serrecat::algebra::{Algebra, IdemSet};
use serrecat::functors::FunctorExpr;
use serrecat::recollement::{
    canonical_recollement, extend_left_recollement, prop31_battery, prop32_battery, split_check,
    verify_recollement, Recollement,
};
use serrecat::serre::SerreSubcat;
use serrecat::torsion::TorsionPair;
use serrecat::typeclass::{classify, classify_all, in_type_list, remark54_check, Count, Side, TypeResult};
use serrecat::Settings;

use crate::error::CliError;
use crate::report::{self, Report};
use crate::spec::{check_indices, idempotent_element, SpecFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecollementMode {
    Construct,
    Verify,
    Battery,
    Split,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionKind {
    /// `(Full(e), Killed(e))`: modules generated by `AeA` and modules killed by it.
    Full,
    /// `(Killed(e), perp)`: the image of `i_*` and its right perpendicular.
    Killed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Classify { simples: Vec<usize> },
    ClassifyAll,
    Recollement { idempotent: Vec<usize>, mode: RecollementMode },
    Torsion { kind: TorsionKind, idempotent: Vec<usize>, module: String },
    Extend { idempotent: Vec<usize> },
    Remark54,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::ClassifyAll => "classify-all",
            Command::Recollement { .. } => "recollement",
            Command::Torsion { .. } => "torsion",
            Command::Extend { .. } => "extend",
            Command::Remark54 => "remark54",
        }
    }
}

fn idx_json(set: &IdemSet) -> Value {
    json!(set.iter().collect::<Vec<_>>())
}

fn algebra_json(a: &Algebra) -> Value {
    json!({
        "field": a.field().name(),
        "dim": a.dim(),
        "simples": a.num_idempotents(),
        "labels": a.labels(),
    })
}

fn type_json(t: &TypeResult) -> Value {
    match t.finite() {
        Some((m, n)) => json!({ "m": m, "n": n }),
        None => json!("infinite"),
    }
}

fn chain_json(prefix: &str, chain: &[FunctorExpr], zero: usize) -> Value {
    Value::Array(
        chain
            .iter()
            .enumerate()
            .map(|(p, f)| report::functor(&format!("{prefix}_{}", zero as i64 - p as i64), f))
            .collect(),
    )
}

fn stops_json(t: &TypeResult) -> Vec<Value> {
    let mut out = Vec::new();
    for stop in &t.stops {
        let side = match stop.side {
            Side::Left => "left",
            Side::Right => "right",
        };
        for (who, w) in &stop.missing {
            out.push(json!({
                "stop": side,
                "functor": who,
                "witness": w.as_ref().map(report::witness),
            }));
        }
    }
    out
}

fn classify_report(t: &TypeResult, r: &mut Report) {
    r.result = json!({
        "simples": idx_json(&t.simples),
        "type": type_json(t),
        "label": t.label(),
        "in_list": in_type_list(t.m, t.n),
    });
    r.chains = json!({
        "F": chain_json("F", &t.f_chain, t.zero_index),
        "G": chain_json("G", &t.g_chain, t.zero_index),
    });
    r.certificates = t
        .certificates
        .iter()
        .enumerate()
        .map(|(k, c)| {
            json!({
                "step": k,
                "grade": "certified",
                "triangle_checks": c.triangle_checks,
                "bijection_pairs": c.bijection_pairs,
                "rewrite_checks": c.rewrite_checks,
            })
        })
        .collect();
    r.witnesses = stops_json(t);
    if let Some(s) = &t.split {
        let (certs, wits) = report::split(s);
        r.certificates.extend(certs);
        r.witnesses.extend(wits);
        if let Value::Object(o) = &mut r.result {
            o.insert("split".into(), json!(s.split));
        }
    }
}

fn recollement_chains(rec: &Recollement) -> Value {
    let mut v: Vec<Value> = rec.functors().iter().map(|(n, f)| report::functor(n, f)).collect();
    let l = &rec.ladder;
    for (name, f) in [
        ("i_+2", &l.i_plus2),
        ("i_-2", &l.i_minus2),
        ("j_+2", &l.j_plus2),
        ("j_-2", &l.j_minus2),
    ] {
        v.push(match f {
            Some(f) => report::functor(name, f),
            None => json!({ "name": name, "signature": null }),
        });
    }
    Value::Array(v)
}

pub fn run(command: &Command, spec: &SpecFile, settings: &Settings) -> Result<Report, CliError> {
    let start = Instant::now();
    let a = spec.build_algebra(settings.path_cap)?;
    let mut r = Report::new(command.name());
    r.algebra = algebra_json(&a);
    match command {
        Command::Classify { simples } => {
            check_indices(&a, simples)?;
            let s = SerreSubcat::from_simples(&a, &simples.iter().copied().collect())?;
            let t = classify(&s, settings)?;
            classify_report(&t, &mut r);
            r.verified = in_type_list(t.m, t.n);
        }
        Command::ClassifyAll => {
            let rows = classify_all(&a, settings)?;
            let all = rows.iter().all(|t| in_type_list(t.m, t.n));
            let proper_ok = rows
                .iter()
                .filter(|t| !t.simples.is_empty() && t.simples.len() < a.num_idempotents())
                .all(|t| t.m == Count::Infinite || t.finite().is_some_and(|(m, n)| m >= 1 && n >= 1));
            r.result = json!({
                "rows": rows
                    .iter()
                    .map(|t| json!({
                        "simples": idx_json(&t.simples),
                        "type": type_json(t),
                        "label": t.label(),
                        "in_list": in_type_list(t.m, t.n),
                    }))
                    .collect::<Vec<_>>(),
                "all_in_list": all,
                "proper_rows_have_m_n_at_least_1": proper_ok,
            });
            r.witnesses = rows
                .iter()
                .flat_map(|t| {
                    let simples = idx_json(&t.simples);
                    stops_json(t).into_iter().map(move |mut w| {
                        if let Value::Object(o) = &mut w {
                            o.insert("simples".into(), simples.clone());
                        }
                        w
                    })
                })
                .collect();
            r.verified = all;
        }
        Command::Recollement { idempotent, mode } => {
            let e = idempotent_element(&a, idempotent)?;
            let rec = canonical_recollement(&a, &e, settings)?;
            r.chains = recollement_chains(&rec);
            let mut result = serde_json::Map::new();
            result.insert("idempotent".into(), json!(idempotent));
            result.insert("sub_dim".into(), json!(rec.bimodules.bar_algebra.dim()));
            result.insert("quotient_dim".into(), json!(rec.bimodules.corner_algebra.dim()));
            match mode {
                RecollementMode::Construct => {
                    result.insert("recollement".into(), json!(true));
                }
                RecollementMode::Verify => {
                    let ax = verify_recollement(&rec, settings)?;
                    result.insert("verified".into(), json!(ax.holds()));
                    r.certificates = report::axioms(&ax);
                    r.verified = ax.holds();
                }
                RecollementMode::Battery => {
                    let p31 = prop31_battery(&rec.right())?;
                    let p32 = prop32_battery(&rec.left())?;
                    result.insert("prop31".into(), json!(p31.conditions[0]));
                    result.insert("prop32".into(), json!(p32.conditions[0]));
                    result.insert("consistent".into(), json!(p31.consistent() && p32.consistent()));
                    r.certificates = vec![report::battery("prop31", &p31), report::battery("prop32", &p32)];
                    r.verified = p31.holds() && p32.holds();
                }
                RecollementMode::Split => {
                    let s = split_check(&rec, settings)?;
                    result.insert("split".into(), json!(s.split));
                    let (certs, wits) = report::split(&s);
                    r.certificates = certs;
                    r.witnesses = wits;
                }
            }
            r.result = Value::Object(result);
        }
        Command::Torsion { kind, idempotent, module } => {
            let e = idempotent_element(&a, idempotent)?;
            let m = spec.module(module, &a)?;
            let tp = match kind {
                TorsionKind::Full => TorsionPair::from_idempotent(&a, &e)?,
                TorsionKind::Killed => TorsionPair::killed_by(&a, &e)?,
            };
            let d = tp.t_decompose(&m)?;
            let (her, coher) = (tp.is_hereditary()?, tp.is_cohereditary()?);
            r.result = json!({
                "kind": match kind { TorsionKind::Full => "full", TorsionKind::Killed => "killed" },
                "idempotent": idempotent,
                "module": module,
                "t_decomposition": d.dims(),
                "exact": d.is_exact(),
                "torsion_simples": idx_json(&tp.torsion_simples()?),
            });
            r.certificates = vec![
                json!({ "property": "hereditary", "grade": her.label() }),
                json!({ "property": "cohereditary", "grade": coher.label() }),
            ];
            r.witnesses = vec![
                json!({ "map": "tM -> M", "matrix": report::matrix(d.mono.matrix()) }),
                json!({ "map": "M -> M/tM", "matrix": report::matrix(d.epi.matrix()) }),
            ];
            r.verified = d.is_exact();
        }
        Command::Extend { idempotent } => {
            let e = idempotent_element(&a, idempotent)?;
            let left = canonical_recollement(&a, &e, settings)?.left();
            let ext = extend_left_recollement(&left, settings)?;
            r.chains = recollement_chains(&ext.recollement);
            r.certificates = report::axioms(&ext.report);
            r.result = json!({
                "idempotent": idempotent,
                "extended": ext.report.holds(),
                "t_decompositions": ext.t_decompositions,
            });
            r.verified = ext.report.holds();
        }
        Command::Remark54 => {
            let ml = remark54_check(&a, settings)?;
            r.chains = Value::Array(ml.chain.iter().map(|(n, f)| report::functor(n, f)).collect());
            r.result = json!({
                "merged_length": ml.chain.len(),
                "iso": "i_-2 = j_1",
                "iso_grade": ml.iso.grade.label(),
                "i_index": ml.i_index,
                "q_index": ml.q_index,
            });
            r.certificates = ml
                .adjacent_pairs
                .iter()
                .enumerate()
                .map(|(k, n)| {
                    json!({
                        "pair": format!("{} -| {}", ml.chain[k].0, ml.chain[k + 1].0),
                        "grade": "certified",
                        "bijection_pairs": n,
                    })
                })
                .collect();
            r.certificates.push(report::nat_iso("i_-2 = j_1", &ml.iso));
            r.witnesses = [("no left adjoint of i_1", &ml.left_end), ("no right adjoint of j_-2", &ml.right_end)]
                .into_iter()
                .map(|(what, w)| json!({ "stop": what, "witness": w.as_ref().map(report::witness) }))
                .collect();
            r.verified = ml.iso.grade.holds();
        }
    }
    r.timing_ms = Some(start.elapsed().as_millis() as u64);
    Ok(r)
}

/// Parses and runs; the algebra is rebuilt per call, so this is the whole
/// pipeline from text to report.
pub fn run_text(command: &Command, text: &str, settings: &Settings) -> Result<Report, CliError> {
    let spec = crate::spec::parse_spec(text)?;
    run(command, &spec, settings)
}
