use super::adjoint::{
    dual_left, dual_right, is_left_projective, is_right_projective, probe_modules, NormalFormIso,
};
use super::{FunctorExpr, Grade};
use crate::algebra::{same_algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{inverse, is_invertible, kernel_basis, random_scalar, tensor_mat, Matrix, Scalar};
use crate::modcat::{hom_module, hom_space, is_isomorphic, tensor_over, Module, Morphism};
use crate::settings::Settings;

/// Basis of the bimodule maps `b1 -> b2`, as `dim b1 x dim b2` matrices.
pub fn bimodule_hom_space(b1: &Bimodule, b2: &Bimodule) -> Result<Vec<Matrix>> {
    if !same_algebra(b1.left_algebra(), b2.left_algebra())
        || !same_algebra(b1.right_algebra(), b2.right_algebra())
    {
        return Err(Error::AlgebraMismatch);
    }
    let field = b1.left_algebra().field();
    let (d1, d2) = (b1.dim(), b2.dim());
    if d1 == 0 || d2 == 0 {
        return Ok(Vec::new());
    }
    let id1 = Matrix::identity(field, d1);
    let id2 = Matrix::identity(field, d2);
    let mut blocks = Vec::new();
    // p X = X q, row-major: (p (x) 1 - 1 (x) q^T) vec X = 0
    let mut constrain = |p: Matrix, q: Matrix| -> Result<()> {
        blocks.push(tensor_mat(&p, &id2)?.sub(&tensor_mat(&id1, &q.transpose())?)?);
        Ok(())
    };
    for g in b1.left_algebra().generating_elements() {
        constrain(b1.left_action(&g), b2.left_action(&g))?;
    }
    for g in b1.right_algebra().generating_elements() {
        constrain(b1.right_action(&g), b2.right_action(&g))?;
    }
    let sys = Matrix::vstack_all(field, d1 * d2, &blocks);
    let ker = kernel_basis(&sys);
    Ok((0..ker.cols())
        .map(|c| Matrix::from_flat(field, d1, d2, ker.col_vec(c)))
        .collect())
}

/// An invertible bimodule map `b1 -> b2`. `Ok(None)` proves there is none.
pub fn bimodule_iso(b1: &Bimodule, b2: &Bimodule, settings: &Settings) -> Result<Option<Matrix>> {
    let field = b1.left_algebra().field();
    let d = b1.dim();
    if d != b2.dim() {
        return Ok(None);
    }
    if d == 0 {
        return Ok(Some(Matrix::zeros(field, 0, 0)));
    }
    let h = bimodule_hom_space(b1, b2)?;
    if h.is_empty() || Matrix::vstack_all(field, d, &h).rank() < d {
        return Ok(None);
    }
    if let Some(x) = h.iter().find(|x| is_invertible(x)) {
        return Ok(Some(x.clone()));
    }
    if h.len() == 1 {
        return Ok(None);
    }
    let mut rng = settings.rng(0xB1);
    for _ in 0..settings.iso_attempts {
        let t: Vec<Scalar> = (0..h.len()).map(|_| random_scalar(field, &mut rng)).collect();
        let x = crate::linalg::combination(field, d, d, &t, &h);
        if is_invertible(&x) {
            return Ok(Some(x));
        }
    }
    Err(Error::InconclusiveSearch)
}

#[derive(Clone, Debug)]
enum Step {
    /// `Tensor(t) -> Hom(h)`.
    ToHom(NormalFormIso),
    /// `Hom(h) -> Tensor(t)`.
    FromHom(NormalFormIso),
    /// `Tensor(b) -> Tensor(b')` along a bimodule iso `b -> b'`.
    Tensor { phi: Matrix, from: Bimodule, to: Bimodule },
    /// `Hom(b) -> Hom(b')` along a bimodule iso `b -> b'`.
    Hom { phi_inv: Matrix, from: Bimodule, to: Bimodule },
}

impl Step {
    fn component(&self, m: &Module) -> Result<Morphism> {
        match self {
            Step::ToHom(iso) => iso.component(m),
            Step::FromHom(iso) => iso
                .component(m)?
                .inverse()
                .ok_or_else(|| Error::CertificationFailed("normal form rewrite is not invertible".into())),
            Step::Tensor { phi, from, to } => {
                let s = tensor_over(m, from)?;
                let t = tensor_over(m, to)?;
                let id = Matrix::identity(m.field(), m.dim());
                let mat = tensor_mat(&id, phi)?
                    .submatrix_rows(&s.lift_index)
                    .mul(&t.projection);
                Ok(Morphism::from_parts(s.module, t.module, mat))
            }
            Step::Hom { phi_inv, from, to } => {
                let s = hom_module(from, m)?;
                let t = hom_module(to, m)?;
                let mut mat = Matrix::zeros(m.field(), s.module.dim(), t.module.dim());
                for (row, x) in s.basis.mats.iter().enumerate() {
                    let coords = t
                        .basis
                        .coords(&phi_inv.mul(x))
                        .ok_or_else(|| Error::InternalInconsistency("transported map is not A-linear".into()))?;
                    for (col, v) in coords.into_iter().enumerate() {
                        mat.set(row, col, v);
                    }
                }
                Ok(Morphism::from_parts(s.module, t.module, mat))
            }
        }
    }
}

/// A natural isomorphism between two normal forms.
#[derive(Clone, Debug)]
pub struct NatIso {
    pub from: FunctorExpr,
    pub to: FunctorExpr,
    /// Certified when assembled from a bimodule isomorphism, probed when
    /// only objectwise isomorphisms on probes were found.
    pub grade: Grade,
    /// The underlying bimodule isomorphism, when there is one.
    pub bimodule_iso: Option<Matrix>,
    steps: Vec<Step>,
}

impl NatIso {
    /// The component at `m`; `None` for probe-only verdicts.
    pub fn component(&self, m: &Module) -> Result<Option<Morphism>> {
        if self.grade != Grade::Certified {
            return Ok(None);
        }
        let mut acc: Option<Morphism> = None;
        for step in &self.steps {
            let c = step.component(m)?;
            acc = Some(match acc {
                None => c,
                Some(prev) => {
                    Morphism::from_parts(prev.source().clone(), c.target().clone(), prev.matrix().mul(c.matrix()))
                }
            });
        }
        Ok(Some(match acc {
            Some(c) => c,
            None => {
                let x = self.from.eval_obj(m)?;
                Morphism::identity(&x)
            }
        }))
    }

    /// Naturality squares for every Hom basis morphism between probes.
    /// Returns the number of squares checked.
    pub fn check_naturality(&self) -> Result<usize> {
        if self.grade != Grade::Certified {
            return Ok(0);
        }
        let ps = probe_modules(self.from.source())?;
        let comps = ps
            .iter()
            .map(|m| Ok(self.component(m)?.expect("certified")))
            .collect::<Result<Vec<_>>>()?;
        let mut squares = 0;
        for (m, cm) in ps.iter().zip(&comps) {
            if !cm.is_iso() {
                return Err(Error::CertificationFailed("component is not invertible".into()));
            }
            for (n, cn) in ps.iter().zip(&comps) {
                for h in hom_space(m, n)?.morphisms() {
                    let lhs = self.from.eval_mor(&h)?.matrix().mul(cn.matrix());
                    let rhs = cm.matrix().mul(self.to.eval_mor(&h)?.matrix());
                    if lhs != rhs {
                        return Err(Error::CertificationFailed("naturality square fails".into()));
                    }
                    squares += 1;
                }
            }
        }
        Ok(squares)
    }
}

/// Tensor form of `f`, with the step from `f` to it.
fn to_tensor(f: &FunctorExpr) -> Result<Option<(Bimodule, Option<NormalFormIso>)>> {
    match f {
        FunctorExpr::Tensor(b) => Ok(Some((b.clone(), None))),
        FunctorExpr::Hom(b) => {
            if !is_right_projective(b)? {
                return Ok(None);
            }
            let dual = dual_right(b)?;
            let iso = NormalFormIso {
                tensor: dual.bimodule.clone(),
                hom: b.clone(),
                dual,
            };
            Ok(Some((iso.tensor.clone(), Some(iso))))
        }
    }
}

/// Hom form of `f`, with the step from `f` to it.
fn to_hom(f: &FunctorExpr) -> Result<Option<(Bimodule, Option<NormalFormIso>)>> {
    match f {
        FunctorExpr::Hom(b) => Ok(Some((b.clone(), None))),
        FunctorExpr::Tensor(b) => {
            if !is_left_projective(b)? {
                return Ok(None);
            }
            let dual = dual_left(b)?;
            let iso = NormalFormIso {
                tensor: b.clone(),
                hom: dual.bimodule.clone(),
                dual,
            };
            Ok(Some((iso.hom.clone(), Some(iso))))
        }
    }
}

/// Searches for a natural isomorphism `f -> g`. Tensor forms are compared
/// through their bimodules, converting Hom forms by duality when possible;
/// otherwise the functors are compared on probes only.
pub fn natural_iso(f: &FunctorExpr, g: &FunctorExpr, settings: &Settings) -> Result<Option<NatIso>> {
    if !same_algebra(f.source(), g.source()) || !same_algebra(f.target(), g.target()) {
        return Err(Error::AlgebraMismatch);
    }
    let build = |steps: Vec<Step>, phi: Matrix| -> Result<Option<NatIso>> {
        let iso = NatIso {
            from: f.clone(),
            to: g.clone(),
            grade: Grade::Certified,
            bimodule_iso: Some(phi),
            steps,
        };
        iso.check_naturality()?;
        Ok(Some(iso))
    };
    if let (Some((bf, rf)), Some((bg, rg))) = (to_tensor(f)?, to_tensor(g)?) {
        let Some(phi) = bimodule_iso(&bf, &bg, settings)? else {
            return Ok(None);
        };
        let mut steps = Vec::new();
        steps.extend(rf.map(Step::FromHom));
        steps.push(Step::Tensor {
            phi: phi.clone(),
            from: bf,
            to: bg,
        });
        steps.extend(rg.map(Step::ToHom));
        return build(steps, phi);
    }
    if let (Some((bf, rf)), Some((bg, rg))) = (to_hom(f)?, to_hom(g)?) {
        let Some(phi) = bimodule_iso(&bf, &bg, settings)? else {
            return Ok(None);
        };
        let phi_inv = inverse(&phi).expect("bimodule iso is invertible");
        let mut steps = Vec::new();
        steps.extend(rf.map(Step::ToHom));
        steps.push(Step::Hom {
            phi_inv,
            from: bf,
            to: bg,
        });
        steps.extend(rg.map(Step::FromHom));
        return build(steps, phi);
    }
    for m in probe_modules(f.source())? {
        if is_isomorphic(&f.eval_obj(&m)?, &g.eval_obj(&m)?, settings)?.is_none() {
            return Ok(None);
        }
    }
    Ok(Some(NatIso {
        from: f.clone(),
        to: g.clone(),
        grade: Grade::Probed,
        bimodule_iso: None,
        steps: Vec::new(),
    }))
}
