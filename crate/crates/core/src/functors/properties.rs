use super::adjoint::{counit, is_left_projective, is_right_projective, probe_modules, unit};
use super::FunctorExpr;
use crate::error::{Error, Result};
use crate::modcat::{is_short_exact, probe_sequences, Morphism, ShortExactSeq};

/// Verdict grades: proved for all objects, checked on the probe family
/// only, or refuted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grade {
    Certified,
    Probed,
    Failed(String),
}

impl Grade {
    pub fn holds(&self) -> bool {
        !matches!(self, Grade::Failed(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Grade::Certified => "certified",
            Grade::Probed => "probed",
            Grade::Failed(_) => "failed",
        }
    }

    /// The weaker of two grades.
    pub fn meet(self, other: Grade) -> Grade {
        match (self, other) {
            (Grade::Failed(w), _) | (_, Grade::Failed(w)) => Grade::Failed(w),
            (Grade::Probed, _) | (_, Grade::Probed) => Grade::Probed,
            _ => Grade::Certified,
        }
    }
}

/// A probe short exact sequence and the shape of its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesWitness {
    pub label: String,
    pub dims: [usize; 3],
    pub image_dims: [usize; 3],
    pub image_exact: bool,
}

/// `F(mono)` and `F(epi)`.
pub fn image_sequence(f: &FunctorExpr, ses: &ShortExactSeq) -> Result<(Morphism, Morphism)> {
    Ok((f.eval_mor(&ses.mono)?, f.eval_mor(&ses.epi)?))
}

pub(crate) fn witness(f: &FunctorExpr, label: &str, ses: &ShortExactSeq) -> Result<SesWitness> {
    let (m, e) = image_sequence(f, ses)?;
    Ok(SesWitness {
        label: label.to_string(),
        dims: ses.dims(),
        image_dims: [m.source().dim(), m.target().dim(), e.target().dim()],
        image_exact: is_short_exact(m.matrix(), e.matrix()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessVerdict {
    pub exact: bool,
    /// For a non-exact functor, a probe sequence whose image is not exact.
    pub witness: Option<SesWitness>,
}

/// `Tensor(b)` is exact iff `b` is left projective, `Hom(b)` iff `b` is
/// right projective. A negative verdict comes with a probe sequence that
/// the functor fails to preserve.
pub fn is_exact(f: &FunctorExpr) -> Result<ExactnessVerdict> {
    let exact = match f {
        FunctorExpr::Tensor(b) => is_left_projective(b)?,
        FunctorExpr::Hom(b) => is_right_projective(b)?,
    };
    if exact {
        return Ok(ExactnessVerdict { exact, witness: None });
    }
    for (label, ses) in probe_sequences(f.source())? {
        let w = witness(f, &label, &ses)?;
        if !w.image_exact {
            return Ok(ExactnessVerdict {
                exact,
                witness: Some(w),
            });
        }
    }
    Err(Error::InternalInconsistency(format!(
        "{} is not exact by the projectivity test but preserves every probe sequence",
        f.signature()
    )))
}

/// Full faithfulness through the adjunction: the unit of `Tensor(b)` or the
/// counit of `Hom(b)` must be invertible. When one side of the adjunction is
/// exact the composite is half exact and the probes (projectives, resp.
/// injectives) suffice, giving a certified verdict.
pub fn is_fully_faithful(f: &FunctorExpr) -> Result<Grade> {
    let src = f.source();
    if src.is_zero_ring() {
        return Ok(Grade::Certified);
    }
    let b = f.bimodule();
    for m in probe_modules(src)? {
        let c = match f {
            FunctorExpr::Tensor(b) => unit(b, &m)?,
            FunctorExpr::Hom(b) => counit(b, &m)?,
        };
        if !c.is_iso() {
            let which = if f.is_tensor() { "unit" } else { "counit" };
            return Ok(Grade::Failed(format!(
                "{which} is not invertible on a probe of dim {} (image dim {})",
                m.dim(),
                if f.is_tensor() { c.target().dim() } else { c.source().dim() }
            )));
        }
    }
    if is_right_projective(b)? || is_left_projective(b)? {
        Ok(Grade::Certified)
    } else {
        Ok(Grade::Probed)
    }
}
