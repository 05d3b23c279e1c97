use std::sync::Arc;

use super::FunctorExpr;
use crate::algebra::{Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modcat::{hom_module, hom_space, is_projective, probes, tensor_over, HomBasis, Module, Morphism};

/// The probe modules of an algebra (none for the zero ring).
pub(crate) fn probe_modules(a: &Arc<Algebra>) -> Result<Vec<Module>> {
    if a.is_zero_ring() {
        return Ok(Vec::new());
    }
    Ok(probes(a)?.into_iter().map(|p| p.module).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualSide {
    /// `Hom_C(_C b, C)` for a `C`-`A` bimodule `b`.
    Left,
    /// `Hom_A(b_A, A)` for a `C`-`A` bimodule `b`.
    Right,
}

/// A dual of a `C`-`A` bimodule: an `A`-`C` bimodule whose basis vectors are
/// the listed maps out of `b`.
#[derive(Clone, Debug)]
pub struct Dual {
    pub side: DualSide,
    pub bimodule: Bimodule,
    /// `dim b x dim C` (left) or `dim b x dim A` (right); row `j` is the image
    /// of the `j`-th basis vector of `b`.
    pub maps: Vec<Matrix>,
}

/// Matrix of the linear map `x -> g(x)` on the span of a Hom basis.
fn represent(h: &HomBasis, g: impl Fn(&Matrix) -> Matrix) -> Result<Matrix> {
    let k = h.dim();
    let field = h.source.field();
    let mut out = Matrix::zeros(field, k, k);
    for (row, x) in h.mats.iter().enumerate() {
        let coords = h
            .coords(&g(x))
            .ok_or_else(|| Error::InternalInconsistency("dual action leaves the Hom space".into()))?;
        for (col, v) in coords.into_iter().enumerate() {
            out.set(row, col, v);
        }
    }
    Ok(out)
}

/// `b^v = Hom_A(b_A, A_A)` with `(a . f)(x) = a f(x)` and `(f . c)(x) = f(c x)`.
pub fn dual_right(b: &Bimodule) -> Result<Dual> {
    let a = b.right_algebra();
    let c = b.left_algebra();
    let h = hom_space(&Module::right_of(b), &Module::regular(a))?;
    let left = (0..a.dim())
        .map(|i| represent(&h, |x| x.mul(a.left_mult(i))))
        .collect::<Result<Vec<_>>>()?;
    let right = b
        .left_actions()
        .iter()
        .map(|l| represent(&h, |x| l.mul(x)))
        .collect::<Result<Vec<_>>>()?;
    let bimodule = Bimodule::from_parts(a.clone(), c.clone(), h.dim(), left, right)?;
    Ok(Dual {
        side: DualSide::Right,
        bimodule,
        maps: h.mats,
    })
}

/// `^v b = Hom_C(_C b, _C C)` with `(a . f)(x) = f(x a)` and `(f . c)(x) = f(x) c`.
pub fn dual_left(b: &Bimodule) -> Result<Dual> {
    let a = b.right_algebra();
    let c = b.left_algebra();
    let cop = Arc::new(c.opposite());
    let h = hom_space(&Module::left_of(b, &cop), &Module::regular(&cop))?;
    let left = b
        .right_actions()
        .iter()
        .map(|r| represent(&h, |x| r.mul(x)))
        .collect::<Result<Vec<_>>>()?;
    let right = (0..c.dim())
        .map(|j| represent(&h, |x| x.mul(c.right_mult(j))))
        .collect::<Result<Vec<_>>>()?;
    let bimodule = Bimodule::from_parts(a.clone(), c.clone(), h.dim(), left, right)?;
    Ok(Dual {
        side: DualSide::Left,
        bimodule,
        maps: h.mats,
    })
}

/// Is `b` projective as a left module over its left algebra?
pub fn is_left_projective(b: &Bimodule) -> Result<bool> {
    if b.dim() == 0 {
        return Ok(true);
    }
    let cop = Arc::new(b.left_algebra().opposite());
    is_projective(&Module::left_of(b, &cop))
}

/// Is `b` projective as a right module over its right algebra?
pub fn is_right_projective(b: &Bimodule) -> Result<bool> {
    if b.dim() == 0 {
        return Ok(true);
    }
    is_projective(&Module::right_of(b))
}

/// `eta_M : M -> Hom_A(b, M (x)_C b)`, `m -> (x -> m (x) x)`.
pub fn unit(b: &Bimodule, m: &Module) -> Result<Morphism> {
    let t = tensor_over(m, b)?;
    let h = hom_module(b, &t.module)?;
    let db = b.dim();
    let mut mat = Matrix::zeros(m.field(), m.dim(), h.module.dim());
    for i in 0..m.dim() {
        let x = t.projection.row_range(i * db, (i + 1) * db);
        let coords = h
            .basis
            .coords(&x)
            .ok_or_else(|| Error::InternalInconsistency("unit component is not A-linear".into()))?;
        for (col, v) in coords.into_iter().enumerate() {
            mat.set(i, col, v);
        }
    }
    Ok(Morphism::from_parts(m.clone(), h.module, mat))
}

/// `eps_N : Hom_A(b, N) (x)_C b -> N`, `f (x) x -> f(x)`.
pub fn counit(b: &Bimodule, n: &Module) -> Result<Morphism> {
    let h = hom_module(b, n)?;
    let t = tensor_over(&h.module, b)?;
    let db = b.dim();
    let mut mat = Matrix::zeros(n.field(), t.module.dim(), n.dim());
    for (r, &idx) in t.lift_index.iter().enumerate() {
        let (k, j) = (idx / db, idx % db);
        for (col, v) in h.basis.mats[k].row(j).iter().enumerate() {
            mat.set(r, col, v.clone());
        }
    }
    Ok(Morphism::from_parts(t.module, n.clone(), mat))
}

/// Both triangle identities of `Tensor(b) -| Hom(b)` on every probe.
/// Returns the number of objects checked.
pub fn check_triangles(b: &Bimodule) -> Result<usize> {
    let f = FunctorExpr::Tensor(b.clone());
    let g = FunctorExpr::Hom(b.clone());
    let mut checked = 0;
    for m in probe_modules(b.left_algebra())? {
        let fm = f.eval_mor(&unit(b, &m)?)?;
        let eps = counit(b, fm.source())?;
        if !fm.matrix().mul(eps.matrix()).is_identity() {
            return Err(Error::CertificationFailed(format!(
                "triangle (eps F)(F eta) fails on a module of dim {}",
                m.dim()
            )));
        }
        checked += 1;
    }
    for n in probe_modules(b.right_algebra())? {
        let gn = hom_module(b, &n)?.module;
        let eta = unit(b, &gn)?;
        let ge = g.eval_mor(&counit(b, &n)?)?;
        if !eta.matrix().mul(ge.matrix()).is_identity() {
            return Err(Error::CertificationFailed(format!(
                "triangle (G eps)(eta G) fails on a module of dim {}",
                n.dim()
            )));
        }
        checked += 1;
    }
    Ok(checked)
}

/// `dim Hom(L X, Y) = dim Hom(X, R Y)` on all probe pairs. Returns the
/// number of pairs checked.
pub fn certify_pair(left: &FunctorExpr, right: &FunctorExpr) -> Result<usize> {
    let xs = probe_modules(left.source())?;
    let ys = probe_modules(right.source())?;
    let lx = xs.iter().map(|x| left.eval_obj(x)).collect::<Result<Vec<_>>>()?;
    let ry = ys.iter().map(|y| right.eval_obj(y)).collect::<Result<Vec<_>>>()?;
    let mut pairs = 0;
    for (x, lx) in xs.iter().zip(&lx) {
        for (y, ry) in ys.iter().zip(&ry) {
            let l = hom_space(lx, y)?.dim();
            let r = hom_space(x, ry)?.dim();
            if l != r {
                return Err(Error::CertificationFailed(format!(
                    "Hom bijection fails: {l} != {r} for probes of dims {} and {}",
                    x.dim(),
                    y.dim()
                )));
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}

/// The natural isomorphism `Tensor(tensor) -> Hom(hom)` between the two
/// normal forms of one functor, given by pairing with a dual.
#[derive(Clone, Debug)]
pub struct NormalFormIso {
    pub tensor: Bimodule,
    pub hom: Bimodule,
    pub dual: Dual,
}

impl NormalFormIso {
    pub fn tensor_form(&self) -> FunctorExpr {
        FunctorExpr::Tensor(self.tensor.clone())
    }

    pub fn hom_form(&self) -> FunctorExpr {
        FunctorExpr::Hom(self.hom.clone())
    }

    /// Left dual: `n (x) x -> (f -> n f(x))`. Right dual:
    /// `n (x) f -> (x -> n f(x))`.
    pub fn component(&self, n: &Module) -> Result<Morphism> {
        let field = n.field();
        let t = tensor_over(n, &self.tensor)?;
        let h = hom_module(&self.hom, n)?;
        let dt = self.tensor.dim();
        let dh = self.hom.dim();
        let mut mat = Matrix::zeros(field, t.module.dim(), h.module.dim());
        for (r, &idx) in t.lift_index.iter().enumerate() {
            let (i, ti) = (idx / dt, idx % dt);
            let mut y = Matrix::zeros(field, dh, n.dim());
            for hi in 0..dh {
                let value = match self.dual.side {
                    DualSide::Left => self.dual.maps[hi].row(ti),
                    DualSide::Right => self.dual.maps[ti].row(hi),
                };
                for (col, v) in n.action_of(value).row(i).iter().enumerate() {
                    y.set(hi, col, v.clone());
                }
            }
            let coords = h
                .basis
                .coords(&y)
                .ok_or_else(|| Error::CertificationFailed("pairing is not a module map".into()))?;
            for (col, v) in coords.into_iter().enumerate() {
                mat.set(r, col, v);
            }
        }
        Ok(Morphism::from_parts(t.module, h.module, mat))
    }

    /// Checks that every probe component is an isomorphism of modules.
    pub fn certify(&self) -> Result<usize> {
        let source = self.tensor.left_algebra();
        let mut checked = 0;
        for n in probe_modules(source)? {
            let c = self.component(&n)?;
            if Morphism::new(c.source().clone(), c.target().clone(), c.matrix().clone()).is_err() {
                return Err(Error::CertificationFailed("normal form rewrite is not natural in A".into()));
            }
            if !c.is_iso() {
                return Err(Error::CertificationFailed(format!(
                    "normal form rewrite is not invertible on a probe of dim {}",
                    n.dim()
                )));
            }
            checked += 1;
        }
        Ok(checked)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub triangle_checks: usize,
    pub bijection_pairs: usize,
    pub rewrite_checks: usize,
}

/// One step along an adjoint sequence.
#[derive(Clone, Debug)]
pub struct AdjointStep {
    pub functor: FunctorExpr,
    /// Set when the input had to be rewritten into its other normal form.
    pub rewrite: Option<NormalFormIso>,
    pub certificate: Certificate,
}

/// The left adjoint, if one exists. `Hom(b)` always has `Tensor(b)`;
/// `Tensor(b)` has one exactly when `b` is left projective, namely
/// `Tensor(^v b)`.
pub fn left_adjoint(f: &FunctorExpr) -> Result<Option<AdjointStep>> {
    match f {
        FunctorExpr::Hom(b) => {
            let l = FunctorExpr::Tensor(b.clone());
            let certificate = Certificate {
                triangle_checks: check_triangles(b)?,
                bijection_pairs: certify_pair(&l, f)?,
                rewrite_checks: 0,
            };
            Ok(Some(AdjointStep {
                functor: l,
                rewrite: None,
                certificate,
            }))
        }
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
            let rewrite_checks = iso.certify()?;
            let l = FunctorExpr::Tensor(iso.hom.clone());
            let certificate = Certificate {
                triangle_checks: check_triangles(&iso.hom)?,
                bijection_pairs: certify_pair(&l, f)?,
                rewrite_checks,
            };
            Ok(Some(AdjointStep {
                functor: l,
                rewrite: Some(iso),
                certificate,
            }))
        }
    }
}

/// The right adjoint, if one exists. `Tensor(b)` always has `Hom(b)`;
/// `Hom(b)` has one exactly when `b` is right projective, namely
/// `Hom(b^v)`.
pub fn right_adjoint(f: &FunctorExpr) -> Result<Option<AdjointStep>> {
    match f {
        FunctorExpr::Tensor(b) => {
            let r = FunctorExpr::Hom(b.clone());
            let certificate = Certificate {
                triangle_checks: check_triangles(b)?,
                bijection_pairs: certify_pair(f, &r)?,
                rewrite_checks: 0,
            };
            Ok(Some(AdjointStep {
                functor: r,
                rewrite: None,
                certificate,
            }))
        }
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
            let rewrite_checks = iso.certify()?;
            let r = FunctorExpr::Hom(iso.tensor.clone());
            let certificate = Certificate {
                triangle_checks: check_triangles(&iso.tensor)?,
                bijection_pairs: certify_pair(f, &r)?,
                rewrite_checks,
            };
            Ok(Some(AdjointStep {
                functor: r,
                rewrite: Some(iso),
                certificate,
            }))
        }
    }
}
