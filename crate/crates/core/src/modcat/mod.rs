//! The abelian category `mod A` of finite-dimensional right modules.

mod ext;
mod hom;
mod iso;
mod probes;
mod structure;
mod tensor;

pub use ext::{ext1, ext1_with_cover, Ext1};
pub use hom::{hom_space, HomBasis};
pub use iso::is_isomorphic;
pub use probes::{probe_sequences, probes, Probe};
pub use structure::{
    composition_factors, injective, injective_envelope, injectives, is_projective, projective,
    projective_cover, projectives, radical_rows, simples, top_multiplicities,
};
pub use tensor::{hom_module, tensor_over, HomModule, TensorProduct};

use std::fmt;
use std::sync::Arc;

use crate::algebra::{same_algebra, Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::{
    combination, direct_sum_mat, left_kernel, rref, row_space, Field, Matrix, RowBasis, Scalar,
};

/// Finite-dimensional right `A`-module: one `d x d` matrix per basis element
/// of `A`, acting on row vectors.
#[derive(Clone)]
pub struct Module {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Arc<[Matrix]>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {} over algebra of dim {})", self.dim, self.algebra.dim())
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && same_algebra(&self.algebra, &other.algebra)
            && self.action == other.action
    }
}

impl Module {
    /// Builds a module and verifies the unit and multiplicativity.
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Module> {
        let m = Module::from_parts(algebra, dim, action)?;
        m.verify()?;
        Ok(m)
    }

    pub(crate) fn from_parts(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Module> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule("one matrix per basis element required".into()));
        }
        for m in &action {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidModule("action matrix of wrong size".into()));
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Module {
            algebra,
            dim,
            action: action.into(),
        })
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        let f = algebra.field();
        Module {
            algebra: algebra.clone(),
            dim: 0,
            action: vec![Matrix::zeros(f, 0, 0); algebra.dim()].into(),
        }
    }

    /// `A` as a right module over itself.
    pub fn regular(algebra: &Arc<Algebra>) -> Module {
        let action: Vec<Matrix> = (0..algebra.dim()).map(|j| algebra.right_mult(j).clone()).collect();
        Module::from_parts(algebra.clone(), algebra.dim(), action).expect("regular module")
    }

    /// The right-module structure of a bimodule over its right algebra.
    pub fn right_of(b: &Bimodule) -> Module {
        Module::from_parts(b.right_algebra().clone(), b.dim(), b.right_actions().to_vec())
            .expect("bimodule right action")
    }

    /// The left-module structure of a bimodule, as a right module over the
    /// opposite of its left algebra.
    pub fn left_of(b: &Bimodule, left_op: &Arc<Algebra>) -> Module {
        Module::from_parts(left_op.clone(), b.dim(), b.left_actions().to_vec())
            .expect("bimodule left action")
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, j: usize) -> &Matrix {
        &self.action[j]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of `m -> m * a` for an arbitrary element.
    pub fn action_of(&self, a: &[Scalar]) -> Matrix {
        combination(self.field(), self.dim, self.dim, a, &self.action)
    }

    /// Actions of the algebra's generating elements.
    pub fn generator_actions(&self) -> Vec<Matrix> {
        self.algebra
            .generating_elements()
            .iter()
            .map(|g| self.action_of(g))
            .collect()
    }

    pub fn verify(&self) -> Result<()> {
        let a = &self.algebra;
        if self.action_of(a.unit()) != Matrix::identity(self.field(), self.dim) {
            return Err(Error::InvalidModule("unit acts non-trivially".into()));
        }
        let gens = a.generating_elements();
        let gacts: Vec<Matrix> = gens.iter().map(|g| self.action_of(g)).collect();
        for k in 0..a.dim() {
            let bk = a.basis_element(k);
            for (g, ga) in gens.iter().zip(&gacts) {
                if self.action_of(&a.mul(&bk, g)) != self.action[k].mul(ga) {
                    return Err(Error::InvalidModule(format!(
                        "action not multiplicative at {}",
                        a.labels()[k]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Same module in a new basis (rows of `basis`, old coordinates).
    pub fn change_basis(&self, basis: &Matrix) -> Result<(Module, Morphism)> {
        let inv = Algebra::invert(basis)?;
        let action: Vec<Matrix> = self.action.iter().map(|m| basis.mul(m).mul(&inv)).collect();
        let m = Module::from_parts(self.algebra.clone(), self.dim, action)?;
        let iso = Morphism::from_parts(m.clone(), self.clone(), basis.clone());
        Ok((m, iso))
    }

    /// `dim (M e)` for an element `e`.
    pub fn dim_times(&self, e: &[Scalar]) -> usize {
        self.action_of(e).rank()
    }

    /// Submodule spanned by independent `rows`, with its inclusion.
    pub fn submodule(&self, rows: &Matrix) -> Result<(Module, Morphism)> {
        let basis = RowBasis::new(rows.clone())?;
        let mut action = Vec::with_capacity(self.action.len());
        for a in self.action.iter() {
            let moved = rows.mul(a);
            let c = basis
                .coords_matrix(&moved)
                .ok_or_else(|| Error::InvalidModule("rows do not span a submodule".into()))?;
            action.push(c);
        }
        let sub = Module::from_parts(self.algebra.clone(), rows.rows(), action)?;
        let incl = Morphism::from_parts(sub.clone(), self.clone(), rows.clone());
        Ok((sub, incl))
    }

    /// Smallest submodule containing the given rows.
    pub fn generated_submodule_rows(&self, rows: &Matrix) -> Matrix {
        let mut span = row_space(rows);
        loop {
            let mut blocks = vec![span.clone()];
            for g in self.generator_actions() {
                blocks.push(span.mul(&g));
            }
            let grown = row_space(&Matrix::vstack_all(self.field(), self.dim, &blocks));
            if grown.rows() == span.rows() {
                return span;
            }
            span = grown;
        }
    }

    /// Quotient by the submodule spanned by `rows` (any spanning set), with
    /// the projection.
    pub fn quotient(&self, rows: &Matrix) -> Result<(Module, Morphism)> {
        let q = QuotientSpace::new(self.field(), self.dim, rows);
        let action: Vec<Matrix> = self.action.iter().map(|a| q.induced(a)).collect();
        let quot = Module::from_parts(self.algebra.clone(), q.dim(), action)?;
        let proj = Morphism::from_parts(self.clone(), quot.clone(), q.projection.clone());
        Ok((quot, proj))
    }
}

/// `V / R` for a subspace `R`: the complement is spanned by the standard
/// vectors at the non-pivot columns of `rref(R)`.
#[derive(Clone, Debug)]
pub(crate) struct QuotientSpace {
    /// `dim V x dim (V/R)`.
    pub projection: Matrix,
    /// Standard basis indices lifting the quotient basis.
    pub lift_index: Vec<usize>,
}

impl QuotientSpace {
    pub fn new(field: Field, dim: usize, rows: &Matrix) -> QuotientSpace {
        let r = rref(rows);
        let mut is_pivot = vec![false; dim];
        for &p in &r.pivot_columns {
            is_pivot[p] = true;
        }
        let lift_index: Vec<usize> = (0..dim).filter(|&c| !is_pivot[c]).collect();
        let mut pos = vec![usize::MAX; dim];
        for (k, &c) in lift_index.iter().enumerate() {
            pos[c] = k;
        }
        let q = lift_index.len();
        let mut projection = Matrix::zeros(field, dim, q);
        for &c in &lift_index {
            projection.set(c, pos[c], field.one());
        }
        for (row, &p) in r.pivot_columns.iter().enumerate() {
            for &c in &lift_index {
                let v = r.reduced.get(row, c);
                if !v.is_zero() {
                    projection.set(p, pos[c], v.neg());
                }
            }
        }
        QuotientSpace {
            projection,
            lift_index,
        }
    }

    pub fn dim(&self) -> usize {
        self.lift_index.len()
    }

    /// `lift * m * projection`, the map induced on the quotient.
    pub fn induced(&self, m: &Matrix) -> Matrix {
        m.submatrix_rows(&self.lift_index).mul(&self.projection)
    }

    pub fn lift(&self) -> Matrix {
        let dim = self.projection.rows();
        let field = self.projection.field();
        Matrix::identity(field, dim).submatrix_rows(&self.lift_index)
    }
}

/// A module homomorphism `source -> target`, as a `dim source x dim target`
/// matrix acting on row vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    source: Module,
    target: Module,
    mat: Matrix,
}

impl Morphism {
    /// Builds a morphism and checks that it intertwines the actions.
    pub fn new(source: Module, target: Module, mat: Matrix) -> Result<Morphism> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if mat.rows() != source.dim() || mat.cols() != target.dim() {
            return Err(Error::DimensionMismatch("morphism matrix".into()));
        }
        for (a, b) in source.actions().iter().zip(target.actions()) {
            if a.mul(&mat) != mat.mul(b) {
                return Err(Error::InvalidModule("matrix does not intertwine".into()));
            }
        }
        Ok(Morphism { source, target, mat })
    }

    pub(crate) fn from_parts(source: Module, target: Module, mat: Matrix) -> Morphism {
        Morphism { source, target, mat }
    }

    pub fn identity(m: &Module) -> Morphism {
        Morphism::from_parts(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim()))
    }

    pub fn zero(source: &Module, target: &Module) -> Morphism {
        Morphism::from_parts(
            source.clone(),
            target.clone(),
            Matrix::zeros(source.field(), source.dim(), target.dim()),
        )
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    /// `next . self`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        if self.target.dim() != next.source.dim()
            || !same_algebra(self.target.algebra(), next.source.algebra())
        {
            return Err(Error::DimensionMismatch("morphisms not composable".into()));
        }
        Ok(Morphism::from_parts(
            self.source.clone(),
            next.target.clone(),
            self.mat.mul(&next.mat),
        ))
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        Ok(Morphism::from_parts(
            self.source.clone(),
            self.target.clone(),
            self.mat.add(&other.mat)?,
        ))
    }

    pub fn inverse(&self) -> Option<Morphism> {
        crate::linalg::inverse(&self.mat)
            .map(|inv| Morphism::from_parts(self.target.clone(), self.source.clone(), inv))
    }
}

/// Kernel of `f` with its inclusion.
pub fn kernel(f: &Morphism) -> Result<(Module, Morphism)> {
    let k = row_space(&left_kernel(f.matrix()));
    f.source().submodule(&k)
}

/// Cokernel of `f` with its projection.
pub fn cokernel(f: &Morphism) -> Result<(Module, Morphism)> {
    f.target().quotient(f.matrix())
}

/// Image of `f`, with the inclusion into the target and the corestriction.
pub fn image(f: &Morphism) -> Result<(Module, Morphism, Morphism)> {
    let rows = row_space(f.matrix());
    let (im, incl) = f.target().submodule(&rows)?;
    let basis = RowBasis::new(rows)?;
    let coords = basis
        .coords_matrix(f.matrix())
        .ok_or_else(|| Error::InternalInconsistency("image coordinates".into()))?;
    let onto = Morphism::from_parts(f.source().clone(), im.clone(), coords);
    Ok((im, incl, onto))
}

/// `M (+) N` with injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub inj: [Morphism; 2],
    pub proj: [Morphism; 2],
}

pub fn direct_sum(m: &Module, n: &Module) -> Result<DirectSum> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let field = m.field();
    let action = m
        .actions()
        .iter()
        .zip(n.actions())
        .map(|(a, b)| direct_sum_mat(a, b))
        .collect::<Result<Vec<_>>>()?;
    let s = Module::from_parts(m.algebra().clone(), m.dim() + n.dim(), action)?;
    let (dm, dn) = (m.dim(), n.dim());
    let id = Matrix::identity(field, dm + dn);
    let inj0 = id.row_range(0, dm);
    let inj1 = id.row_range(dm, dm + dn);
    Ok(DirectSum {
        inj: [
            Morphism::from_parts(m.clone(), s.clone(), inj0.clone()),
            Morphism::from_parts(n.clone(), s.clone(), inj1.clone()),
        ],
        proj: [
            Morphism::from_parts(s.clone(), m.clone(), inj0.transpose()),
            Morphism::from_parts(s.clone(), n.clone(), inj1.transpose()),
        ],
        module: s,
    })
}

/// Direct sum of a list of modules (zero module for an empty list).
pub fn direct_sum_all(algebra: &Arc<Algebra>, ms: &[Module]) -> Result<Module> {
    let mut acc = Module::zero(algebra);
    for m in ms {
        acc = direct_sum(&acc, m)?.module;
    }
    Ok(acc)
}

/// `0 -> X -> Y -> Z -> 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortExactSeq {
    pub mono: Morphism,
    pub epi: Morphism,
}

impl ShortExactSeq {
    /// Checks injectivity, surjectivity and exactness in the middle.
    pub fn new(mono: Morphism, epi: Morphism) -> Result<ShortExactSeq> {
        let s = ShortExactSeq { mono, epi };
        if !s.is_exact() {
            return Err(Error::InvalidModule("sequence is not short exact".into()));
        }
        Ok(s)
    }

    pub fn sub(&self) -> &Module {
        self.mono.source()
    }

    pub fn mid(&self) -> &Module {
        self.mono.target()
    }

    pub fn quot(&self) -> &Module {
        self.epi.target()
    }

    pub fn is_exact(&self) -> bool {
        self.mono.target().dim() == self.epi.source().dim()
            && self.mono.is_mono()
            && self.epi.is_epi()
            && self.mono.matrix().mul(self.epi.matrix()).is_zero()
            && self.sub().dim() + self.quot().dim() == self.mid().dim()
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.sub().dim(), self.mid().dim(), self.quot().dim()]
    }
}

/// Exactness of `X -f-> Y -g-> Z` at `Y` together with injectivity of `f`
/// and surjectivity of `g`, by rank bookkeeping.
pub fn is_short_exact(f: &Matrix, g: &Matrix) -> bool {
    let (x, y, z) = (f.rows(), f.cols(), g.cols());
    g.rows() == y
        && f.rank() == x
        && g.rank() == z
        && f.mul(g).is_zero()
        && x + z == y
}
