use super::{Module, Morphism};
use crate::algebra::same_algebra;
use crate::error::{Error, Result};
use crate::linalg::{image_basis, kernel_basis, row_space, Matrix, RowBasis, Scalar};

/// A basis of `Hom_A(M, N)` with coordinate extraction.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub source: Module,
    pub target: Module,
    pub mats: Vec<Matrix>,
    coords: Option<RowBasis>,
}

impl HomBasis {
    fn new(source: Module, target: Module, mats: Vec<Matrix>) -> HomBasis {
        let field = source.field();
        let width = source.dim() * target.dim();
        let coords = if mats.is_empty() {
            None
        } else {
            let flat = Matrix::from_row_vecs(field, width, mats.iter().map(Matrix::flatten).collect())
                .expect("flattened hom basis");
            Some(RowBasis::new(flat).expect("hom basis is independent"))
        };
        HomBasis {
            source,
            target,
            mats,
            coords,
        }
    }

    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn morphism(&self, k: usize) -> Morphism {
        Morphism::from_parts(self.source.clone(), self.target.clone(), self.mats[k].clone())
    }

    pub fn morphisms(&self) -> Vec<Morphism> {
        (0..self.dim()).map(|k| self.morphism(k)).collect()
    }

    /// Coordinates of an intertwiner in this basis; `None` if it is not one.
    pub fn coords(&self, x: &Matrix) -> Option<Vec<Scalar>> {
        match &self.coords {
            None => x.is_zero().then(Vec::new),
            Some(rb) => rb.coords(&x.flatten()),
        }
    }

    pub fn combine(&self, t: &[Scalar]) -> Matrix {
        crate::linalg::combination(
            self.source.field(),
            self.source.dim(),
            self.target.dim(),
            t,
            &self.mats,
        )
    }
}

/// Basis of `Hom_A(M, N)`.
///
/// The idempotent constraints are solved in closed form (a map sends
/// `M e_i` into `N e_i`), then each remaining generator cuts the space down.
pub fn hom_space(m: &Module, n: &Module) -> Result<HomBasis> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let a = m.algebra();
    let field = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(HomBasis::new(m.clone(), n.clone(), Vec::new()));
    }
    let mut basis: Vec<Matrix> = Vec::new();
    for e in a.idempotents() {
        let p = m.action_of(e);
        let q = n.action_of(e);
        let cols = image_basis(&p);
        let rows = row_space(&q);
        for c in 0..cols.cols() {
            let u = cols.col_vec(c);
            for v in rows.row_iter() {
                let mut x = Matrix::zeros(field, dm, dn);
                for (i, ui) in u.iter().enumerate() {
                    if ui.is_zero() {
                        continue;
                    }
                    for (j, vj) in v.iter().enumerate() {
                        if !vj.is_zero() {
                            x.set(i, j, ui.mul(vj));
                        }
                    }
                }
                basis.push(x);
            }
        }
    }
    for &g in a.generators() {
        if basis.is_empty() {
            break;
        }
        let (ag, bg) = (m.action(g), n.action(g));
        let cols: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|x| ag.mul(x).sub(&x.mul(bg)).expect("shapes").flatten())
            .collect();
        let sys = Matrix::from_row_vecs(field, dm * dn, cols)?.transpose();
        let k = kernel_basis(&sys);
        basis = (0..k.cols())
            .map(|c| {
                let t = k.col_vec(c);
                crate::linalg::combination(field, dm, dn, &t, &basis)
            })
            .collect();
    }
    Ok(HomBasis::new(m.clone(), n.clone(), basis))
}
