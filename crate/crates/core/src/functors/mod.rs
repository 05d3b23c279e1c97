//! Functors between module categories carried in bimodule normal form.
//!
//! For a `C`-`A` bimodule `b`, `Tensor(b)` is `- (x)_C b : mod C -> mod A`
//! and `Hom(b)` is `Hom_A(b, -) : mod A -> mod C`. The zero category is
//! `mod` of the zero ring, so zero functors are tensors with a zero bimodule.

mod adjoint;
mod natural;
mod properties;

pub use adjoint::{
    certify_pair, check_triangles, counit, dual_left, dual_right, is_left_projective,
    is_right_projective, left_adjoint, right_adjoint, unit, AdjointStep, Certificate, Dual,
    DualSide, NormalFormIso,
};
pub(crate) use adjoint::probe_modules;
pub use natural::{bimodule_hom_space, bimodule_iso, natural_iso, NatIso};
pub use properties::{
    image_sequence, is_exact, is_fully_faithful, ExactnessVerdict, Grade, SesWitness,
};

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{tensor_mat, Matrix};
use crate::modcat::{hom_module, tensor_over, Module, Morphism};

#[derive(Clone, PartialEq)]
pub enum FunctorExpr {
    /// `- (x)_C b`.
    Tensor(Bimodule),
    /// `Hom_A(b, -)`.
    Hom(Bimodule),
}

impl fmt::Debug for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signature())
    }
}

impl FunctorExpr {
    pub fn zero(source: &Arc<Algebra>, target: &Arc<Algebra>) -> FunctorExpr {
        FunctorExpr::Tensor(Bimodule::zero(source, target))
    }

    pub fn identity(a: &Arc<Algebra>) -> FunctorExpr {
        FunctorExpr::Tensor(Bimodule::regular(a))
    }

    pub fn bimodule(&self) -> &Bimodule {
        match self {
            FunctorExpr::Tensor(b) | FunctorExpr::Hom(b) => b,
        }
    }

    pub fn is_tensor(&self) -> bool {
        matches!(self, FunctorExpr::Tensor(_))
    }

    pub fn source(&self) -> &Arc<Algebra> {
        match self {
            FunctorExpr::Tensor(b) => b.left_algebra(),
            FunctorExpr::Hom(b) => b.right_algebra(),
        }
    }

    pub fn target(&self) -> &Arc<Algebra> {
        match self {
            FunctorExpr::Tensor(b) => b.right_algebra(),
            FunctorExpr::Hom(b) => b.left_algebra(),
        }
    }

    /// A functor with zero bimodule sends everything to zero.
    pub fn is_zero(&self) -> bool {
        self.bimodule().dim() == 0
    }

    /// Short description: kind, bimodule dimension, source and target
    /// algebra dimensions.
    pub fn signature(&self) -> String {
        let kind = if self.is_tensor() { "Tensor" } else { "Hom" };
        format!(
            "{kind}[dim {}: mod {} -> mod {}]",
            self.bimodule().dim(),
            self.source().dim(),
            self.target().dim()
        )
    }

    pub fn eval_obj(&self, m: &Module) -> Result<Module> {
        match self {
            FunctorExpr::Tensor(b) => Ok(tensor_over(m, b)?.module),
            FunctorExpr::Hom(b) => Ok(hom_module(b, m)?.module),
        }
    }

    pub fn eval_mor(&self, f: &Morphism) -> Result<Morphism> {
        match self {
            FunctorExpr::Tensor(b) => {
                let s = tensor_over(f.source(), b)?;
                let t = tensor_over(f.target(), b)?;
                let id = Matrix::identity(f.matrix().field(), b.dim());
                let mat = tensor_mat(f.matrix(), &id)?
                    .submatrix_rows(&s.lift_index)
                    .mul(&t.projection);
                Ok(Morphism::from_parts(s.module, t.module, mat))
            }
            FunctorExpr::Hom(b) => {
                let s = hom_module(b, f.source())?;
                let t = hom_module(b, f.target())?;
                let field = f.matrix().field();
                let mut mat = Matrix::zeros(field, s.module.dim(), t.module.dim());
                for (row, x) in s.basis.mats.iter().enumerate() {
                    let coords = t
                        .basis
                        .coords(&x.mul(f.matrix()))
                        .ok_or_else(|| Error::InternalInconsistency("Hom(b, f) is not a map".into()))?;
                    for (col, v) in coords.into_iter().enumerate() {
                        mat.set(row, col, v);
                    }
                }
                Ok(Morphism::from_parts(s.module, t.module, mat))
            }
        }
    }
}

/// `b1 (x)_A b2` for a `C`-`A` bimodule `b1` and an `A`-`D` bimodule `b2`.
pub fn tensor_bimodules(b1: &Bimodule, b2: &Bimodule) -> Result<Bimodule> {
    let t = tensor_over(&Module::right_of(b1), b2)?;
    let id = Matrix::identity(b1.left_algebra().field(), b2.dim());
    let left = b1
        .left_actions()
        .iter()
        .map(|l| Ok(tensor_mat(l, &id)?.submatrix_rows(&t.lift_index).mul(&t.projection)))
        .collect::<Result<Vec<_>>>()?;
    Bimodule::from_parts(
        b1.left_algebra().clone(),
        b2.right_algebra().clone(),
        t.module.dim(),
        left,
        t.module.actions().to_vec(),
    )
}

/// A composite of normal forms, applied first to last. Adjacent tensors are
/// merged into one tensor with the balanced product of their bimodules.
#[derive(Clone, Debug)]
pub struct Composite {
    parts: Vec<FunctorExpr>,
}

impl Composite {
    pub fn of(f: FunctorExpr) -> Composite {
        Composite { parts: vec![f] }
    }

    pub fn parts(&self) -> &[FunctorExpr] {
        &self.parts
    }

    /// The single normal form, when the composite collapsed to one.
    pub fn normal_form(&self) -> Option<&FunctorExpr> {
        match self.parts.as_slice() {
            [f] => Some(f),
            _ => None,
        }
    }

    pub fn source(&self) -> &Arc<Algebra> {
        self.parts[0].source()
    }

    pub fn target(&self) -> &Arc<Algebra> {
        self.parts[self.parts.len() - 1].target()
    }

    /// `g` after `self`.
    pub fn then(mut self, g: FunctorExpr) -> Result<Composite> {
        if !crate::algebra::same_algebra(self.target(), g.source()) {
            return Err(Error::AlgebraMismatch);
        }
        let last = self.parts.pop().expect("composite is non-empty");
        match (&last, &g) {
            (FunctorExpr::Tensor(b1), FunctorExpr::Tensor(b2)) => {
                self.parts.push(FunctorExpr::Tensor(tensor_bimodules(b1, b2)?));
            }
            _ => {
                self.parts.push(last);
                self.parts.push(g);
            }
        }
        Ok(self)
    }

    pub fn eval_obj(&self, m: &Module) -> Result<Module> {
        self.parts.iter().try_fold(m.clone(), |acc, f| f.eval_obj(&acc))
    }

    pub fn eval_mor(&self, f: &Morphism) -> Result<Morphism> {
        self.parts.iter().try_fold(f.clone(), |acc, g| g.eval_mor(&acc))
    }
}

/// `g . f`.
pub fn compose(g: &FunctorExpr, f: &FunctorExpr) -> Result<Composite> {
    Composite::of(f.clone()).then(g.clone())
}
