use std::sync::Arc;

use super::{
    injective, injective_envelope, is_projective, projective, projective_cover, radical_rows,
    simples, cokernel, kernel, Module, Morphism, ShortExactSeq,
};
use crate::algebra::Algebra;
use crate::error::Result;

/// A named test module.
#[derive(Clone, Debug)]
pub struct Probe {
    pub name: String,
    pub module: Module,
}

/// The probe family: indecomposable projectives, simples, the radical
/// powers `P J^k` and truncations `P / P J^k` of each projective, the regular
/// module and the indecomposable injectives. Exact duplicates are dropped.
pub fn probes(a: &Arc<Algebra>) -> Result<Vec<Probe>> {
    let mut out: Vec<Probe> = Vec::new();
    let mut push = |name: String, module: Module| {
        if module.dim() > 0 && !out.iter().any(|p| p.module == module) {
            out.push(Probe { name, module });
        }
    };
    let r = a.num_idempotents();
    let projs: Vec<Module> = (0..r).map(|i| projective(a, i)).collect::<Result<_>>()?;
    for (i, p) in projs.iter().enumerate() {
        push(format!("P{i}"), p.clone());
    }
    for (i, s) in simples(a)?.into_iter().enumerate() {
        push(format!("S{i}"), s);
    }
    for (i, p) in projs.iter().enumerate() {
        let mut k = 1;
        let mut power = p.clone();
        let mut power_rows_in_p = crate::linalg::Matrix::identity(p.field(), p.dim());
        loop {
            let rad = radical_rows(&power)?;
            if rad.rows() == 0 {
                break;
            }
            let (sub, _) = power.submodule(&rad)?;
            // rows of P J^k in P-coordinates
            power_rows_in_p = rad.mul(&power_rows_in_p);
            push(format!("P{i}J{k}"), sub.clone());
            if k >= 1 {
                let (q, _) = p.quotient(&power_rows_in_p)?;
                push(format!("P{i}/J{k}"), q);
            }
            power = sub;
            k += 1;
        }
    }
    push("A".into(), Module::regular(a));
    for i in 0..r {
        push(format!("I{i}"), injective(a, i)?);
    }
    Ok(out)
}

/// Short exact sequences built from the probes: radical sequences
/// `0 -> MJ -> M -> M/MJ -> 0`, syzygy sequences `0 -> Omega M -> P M -> M -> 0`
/// and the injective envelopes of simples `0 -> S -> I -> I/S -> 0`.
/// Together these detect non-exactness of tensor and Hom functors.
pub fn probe_sequences(a: &Arc<Algebra>) -> Result<Vec<(String, ShortExactSeq)>> {
    let mut out = Vec::new();
    for p in probes(a)? {
        let m = &p.module;
        let rad = radical_rows(m)?;
        if rad.rows() > 0 {
            let (_, incl) = m.submodule(&rad)?;
            let (_, proj) = cokernel(&incl)?;
            out.push((format!("rad {}", p.name), ShortExactSeq::new(incl, proj)?));
        }
        if !is_projective(m)? {
            let (_, cover) = projective_cover(m)?;
            let (_, incl) = kernel(&cover)?;
            out.push((format!("syzygy {}", p.name), ShortExactSeq::new(incl, cover)?));
        }
    }
    for i in 0..a.num_idempotents() {
        let env: Morphism = injective_envelope(a, i)?;
        if !env.is_epi() {
            let (_, proj) = cokernel(&env)?;
            out.push((format!("envelope S{i}"), ShortExactSeq::new(env, proj)?));
        }
    }
    Ok(out)
}
