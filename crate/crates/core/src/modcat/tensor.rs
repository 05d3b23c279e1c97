use super::{hom_space, HomBasis, Module, QuotientSpace};
use crate::algebra::{same_algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{tensor_mat, Matrix};

/// `M (x)_C B` with the canonical surjection from `M (x)_k B`.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub module: Module,
    /// `(dim M * dim B) x dim(M (x)_C B)`; row `i * dim B + j` is the class of
    /// `m_i (x) x_j`.
    pub projection: Matrix,
    /// Pure tensors lifting the quotient basis, as indices `i * dim B + j`.
    pub lift_index: Vec<usize>,
}

impl TensorProduct {
    /// Class of `m_i (x) x_j`.
    pub fn class(&self, i: usize, j: usize, bdim: usize) -> Vec<crate::linalg::Scalar> {
        self.projection.row_vec(i * bdim + j)
    }
}

/// `M (x)_C B` for a right `C`-module `M` and a `C`-`A` bimodule `B`.
pub fn tensor_over(m: &Module, b: &Bimodule) -> Result<TensorProduct> {
    if !same_algebra(m.algebra(), b.left_algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let c = b.left_algebra();
    let a = b.right_algebra();
    let field = m.field();
    let (dm, db) = (m.dim(), b.dim());
    let width = dm * db;
    let id_m = Matrix::identity(field, dm);
    let id_b = Matrix::identity(field, db);
    let mut blocks = Vec::new();
    if width > 0 {
        for g in c.generating_elements() {
            let lhs = tensor_mat(&m.action_of(&g), &id_b)?;
            let rhs = tensor_mat(&id_m, &b.left_action(&g))?;
            blocks.push(lhs.sub(&rhs)?);
        }
    }
    let rel = Matrix::vstack_all(field, width, &blocks);
    let q = QuotientSpace::new(field, width, &rel);
    let action: Vec<Matrix> = b
        .right_actions()
        .iter()
        .map(|r| q.induced(&tensor_mat(&id_m, r).expect("kronecker")))
        .collect();
    let module = Module::from_parts(a.clone(), q.dim(), action)?;
    Ok(TensorProduct {
        module,
        projection: q.projection,
        lift_index: q.lift_index,
    })
}

/// `Hom_A(B, N)` as a right `C`-module, `(f . c)(x) = f(c . x)`.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: Module,
    /// Basis of `Hom_A(B_A, N)` matching the module's basis.
    pub basis: HomBasis,
}

pub fn hom_module(b: &Bimodule, n: &Module) -> Result<HomModule> {
    if !same_algebra(n.algebra(), b.right_algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let c = b.left_algebra();
    let field = n.field();
    let basis = hom_space(&Module::right_of(b), n)?;
    let k = basis.dim();
    let mut action = Vec::with_capacity(c.dim());
    for l in b.left_actions() {
        let mut mat = Matrix::zeros(field, k, k);
        for (row, x) in basis.mats.iter().enumerate() {
            let moved = l.mul(x);
            let t = basis
                .coords(&moved)
                .ok_or_else(|| Error::InternalInconsistency("hom module action".into()))?;
            for (col, v) in t.into_iter().enumerate() {
                mat.set(row, col, v);
            }
        }
        action.push(mat);
    }
    let module = Module::from_parts(c.clone(), k, action)?;
    Ok(HomModule { module, basis })
}
