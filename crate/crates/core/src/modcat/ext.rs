use super::{hom_space, kernel, projective_cover, HomBasis, Module, Morphism, ShortExactSeq};
use crate::algebra::same_algebra;
use crate::error::{Error, Result};
use crate::linalg::{rows_in_span, Matrix};

/// `Ext^1(M, N)` computed from a projective presentation
/// `0 -> Omega -> P -> M -> 0`: the cokernel of `Hom(P, N) -> Hom(Omega, N)`.
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub dim: usize,
    /// Maps `Omega -> N` whose classes form a basis of `Ext^1`.
    pub cocycles: Vec<Matrix>,
    pub omega_incl: Morphism,
    pub cover: Morphism,
    pub target: Module,
}

impl Ext1 {
    /// The extension `0 -> N -> E -> M -> 0` obtained by pushing the
    /// presentation out along cocycle `k`.
    pub fn extension(&self, k: usize) -> Result<ShortExactSeq> {
        self.extension_of(&self.cocycles[k])
    }

    /// Pushout of the presentation along `g : Omega -> N`.
    pub fn extension_of(&self, g: &Matrix) -> Result<ShortExactSeq> {
        let n = &self.target;
        let p = self.cover.source();
        let m = self.cover.target();
        let field = n.field();
        let sum = super::direct_sum(n, p)?;
        // E = (N (+) P) / {(g(w), -i(w))}
        let rel = g.hstack(&self.omega_incl.matrix().scale(&field.int(-1)))?;
        let (e, proj) = sum.module.quotient(&rel)?;
        let into = sum.inj[0].then(&proj)?;
        let onto_rows = Matrix::zeros(field, n.dim(), m.dim()).vstack(self.cover.matrix())?;
        // E -> M: lift to N (+) P, then project to P and apply the cover.
        let lift = super::QuotientSpace::new(field, sum.module.dim(), &rel).lift();
        let out = Morphism::from_parts(e.clone(), m.clone(), lift.mul(&onto_rows));
        ShortExactSeq::new(into, out)
    }
}

pub fn ext1(m: &Module, n: &Module) -> Result<Ext1> {
    let (_, cover) = projective_cover(m)?;
    ext1_with_cover(n, &cover)
}

/// `Ext^1(M, N)` from any epimorphism `P -> M` with `P` projective.
pub fn ext1_with_cover(n: &Module, cover: &Morphism) -> Result<Ext1> {
    if !same_algebra(n.algebra(), cover.target().algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let field = n.field();
    let (omega, incl) = kernel(cover)?;
    let hom_omega: HomBasis = hom_space(&omega, n)?;
    let hom_p = hom_space(cover.source(), n)?;
    // Restrictions of maps P -> N to Omega, in Hom(Omega, N)-coordinates.
    let k = hom_omega.dim();
    let mut restricted = Vec::new();
    for f in &hom_p.mats {
        let r = incl.matrix().mul(f);
        let t = hom_omega
            .coords(&r)
            .ok_or_else(|| Error::InternalInconsistency("restriction is not a map".into()))?;
        restricted.push(t);
    }
    let image = crate::linalg::row_space(&Matrix::from_row_vecs(field, k, restricted)?);
    let mut span = image.clone();
    let mut cocycles = Vec::new();
    for j in 0..k {
        let mut unit = vec![field.zero(); k];
        unit[j] = field.one();
        let row = Matrix::row_vector(field, &unit);
        if !rows_in_span(&row, &span) {
            span = span.vstack(&row)?;
            cocycles.push(hom_omega.mats[j].clone());
        }
    }
    Ok(Ext1 {
        dim: cocycles.len(),
        cocycles,
        omega_incl: incl,
        cover: cover.clone(),
        target: n.clone(),
    })
}
