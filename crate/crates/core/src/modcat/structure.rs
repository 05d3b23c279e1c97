use std::sync::Arc;

use super::{direct_sum_all, hom_space, Module, Morphism};
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{row_space, rows_in_span, Matrix};

fn require_split_basic(a: &Algebra) -> Result<()> {
    a.require_radical()?;
    if !a.is_split_basic() {
        return Err(Error::NotSplitBasic(format!(
            "A/J has dimension {} but there are {} idempotents",
            a.dim() - a.radical().map_or(0, Matrix::rows),
            a.num_idempotents()
        )));
    }
    Ok(())
}

/// Rows spanning `M J`.
pub fn radical_rows(m: &Module) -> Result<Matrix> {
    let rad = m.algebra().require_radical()?;
    let blocks: Vec<Matrix> = rad.row_iter().map(|r| m.action_of(r)).collect();
    Ok(row_space(&Matrix::vstack_all(m.field(), m.dim(), &blocks)))
}

/// Greedy basis of the span of `candidates`.
fn greedy(field: crate::linalg::Field, dim: usize, candidates: impl IntoIterator<Item = Element>) -> Matrix {
    let mut span = Matrix::zeros(field, 0, dim);
    for c in candidates {
        let row = Matrix::row_vector(field, &c);
        if !row.is_zero() && !rows_in_span(&row, &span) {
            span = span.vstack(&row).expect("widths");
        }
    }
    span
}

/// The indecomposable projective `e_i A`.
pub fn projective(a: &Arc<Algebra>, i: usize) -> Result<Module> {
    let e = a
        .idempotents()
        .get(i)
        .ok_or_else(|| Error::IndexOutOfRange(format!("idempotent {i}")))?;
    let rows = greedy(a.field(), a.dim(), (0..a.dim()).map(|j| a.mul(e, &a.basis_element(j))));
    Ok(Module::regular(a).submodule(&rows)?.0)
}

pub fn projectives(a: &Arc<Algebra>) -> Result<Vec<Module>> {
    (0..a.num_idempotents()).map(|i| projective(a, i)).collect()
}

/// The simple tops `S_i = e_i A / e_i J`; requires a split basic algebra.
pub fn simples(a: &Arc<Algebra>) -> Result<Vec<Module>> {
    require_split_basic(a)?;
    (0..a.num_idempotents())
        .map(|i| {
            let p = projective(a, i)?;
            let rad = radical_rows(&p)?;
            Ok(p.quotient(&rad)?.0)
        })
        .collect()
}

/// Multiplicity of each simple in `top M = M / M J`.
pub fn top_multiplicities(m: &Module) -> Result<Vec<usize>> {
    let a = m.algebra();
    require_split_basic(a)?;
    let rad = radical_rows(m)?;
    let top = m.quotient(&rad)?.0;
    Ok(a.idempotents().iter().map(|e| top.dim_times(e)).collect())
}

/// Composition multiplicities `[M : S_i]`, read off the radical filtration
/// `M > MJ > MJ^2 > ...` layer by layer.
pub fn composition_factors(m: &Module) -> Result<Vec<usize>> {
    let a = m.algebra();
    require_split_basic(a)?;
    let mut counts = vec![0; a.num_idempotents()];
    let mut layer = m.clone();
    let mut total = 0;
    while layer.dim() > 0 {
        let rad = radical_rows(&layer)?;
        if rad.rows() == layer.dim() {
            return Err(Error::InternalInconsistency("radical is not nilpotent on module".into()));
        }
        let top = layer.quotient(&rad)?.0;
        for (i, e) in a.idempotents().iter().enumerate() {
            let d = top.dim_times(e);
            counts[i] += d;
            total += d;
        }
        layer = layer.submodule(&rad)?.0;
    }
    if total != m.dim() {
        return Err(Error::InternalInconsistency("composition factor bookkeeping".into()));
    }
    Ok(counts)
}

/// Projective cover `P -> M` built from a basis of the top.
pub fn projective_cover(m: &Module) -> Result<(Module, Morphism)> {
    let a = m.algebra();
    require_split_basic(a)?;
    let field = m.field();
    let rad = radical_rows(m)?;
    let mut span = rad.clone();
    let mut pieces: Vec<Module> = Vec::new();
    let mut images: Vec<Matrix> = Vec::new();
    for (i, e) in a.idempotents().iter().enumerate() {
        let me = m.action_of(e);
        let p = projective(a, i)?;
        // Basis rows of e_i A in A-coordinates.
        let prow = greedy(field, a.dim(), (0..a.dim()).map(|j| a.mul(e, &a.basis_element(j))));
        for x in me.row_iter() {
            let row = Matrix::row_vector(field, x);
            if row.is_zero() || rows_in_span(&row, &span) {
                continue;
            }
            span = span.vstack(&row)?;
            // e_i a -> x * (e_i a)
            let img: Vec<Element> = prow.row_iter().map(|pa| m.action_of(pa).apply_row(x)).collect();
            images.push(Matrix::from_row_vecs(field, m.dim(), img)?);
            pieces.push(p.clone());
        }
    }
    let cover = direct_sum_all(a, &pieces)?;
    let epi = Matrix::vstack_all(field, m.dim(), &images);
    let epi = Morphism::from_parts(cover.clone(), m.clone(), epi);
    if !epi.is_epi() {
        return Err(Error::InternalInconsistency("projective cover is not onto".into()));
    }
    Ok((cover, epi))
}

/// A module is projective iff its projective cover is an isomorphism.
pub fn is_projective(m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    let (p, _) = projective_cover(m)?;
    Ok(p.dim() == m.dim())
}

/// The indecomposable injective `D(A e_i)`.
pub fn injective(a: &Arc<Algebra>, i: usize) -> Result<Module> {
    let field = a.field();
    let e = a
        .idempotents()
        .get(i)
        .ok_or_else(|| Error::IndexOutOfRange(format!("idempotent {i}")))?;
    let rows = greedy(field, a.dim(), (0..a.dim()).map(|j| a.mul(&a.basis_element(j), e)));
    let basis = crate::linalg::RowBasis::new(rows.clone())?;
    // Left action on A e_i in row convention, then transpose for the dual.
    let mut action = Vec::with_capacity(a.dim());
    for k in 0..a.dim() {
        let moved = rows.mul(a.left_mult(k));
        let left = basis
            .coords_matrix(&moved)
            .ok_or_else(|| Error::InternalInconsistency("A e is not a left ideal".into()))?;
        action.push(left.transpose());
    }
    Module::from_parts(a.clone(), rows.rows(), action)
}

pub fn injectives(a: &Arc<Algebra>) -> Result<Vec<Module>> {
    (0..a.num_idempotents()).map(|i| injective(a, i)).collect()
}

/// `S_i -> D(A e_i)`, the socle inclusion.
pub fn injective_envelope(a: &Arc<Algebra>, i: usize) -> Result<Morphism> {
    let s = simples(a)?.swap_remove(i);
    let inj = injective(a, i)?;
    let h = hom_space(&s, &inj)?;
    if h.dim() != 1 {
        return Err(Error::InternalInconsistency("socle of D(Ae) is not simple".into()));
    }
    Ok(h.morphism(0))
}
