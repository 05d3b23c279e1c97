use std::fmt;
use std::sync::Arc;

use super::{same_algebra, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{combination, direct_sum_mat, Matrix, Scalar};

/// A `C`-`A` bimodule. Both actions are stored as matrices acting on row
/// vectors: `x * a = x * right[a]` and `c . x = x * left[c]`, so
/// `left[c c'] = left[c'] * left[c]`.
#[derive(Clone)]
pub struct Bimodule {
    left_algebra: Arc<Algebra>,
    right_algebra: Arc<Algebra>,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bimodule(dim {}, left dim {}, right dim {})",
            self.dim,
            self.left_algebra.dim(),
            self.right_algebra.dim()
        )
    }
}

impl PartialEq for Bimodule {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.left_algebra, &other.left_algebra)
            && same_algebra(&self.right_algebra, &other.right_algebra)
            && self.left == other.left
            && self.right == other.right
    }
}

impl Bimodule {
    /// Builds a bimodule and checks both actions and their commutation.
    pub fn new(
        left_algebra: Arc<Algebra>,
        right_algebra: Arc<Algebra>,
        dim: usize,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
    ) -> Result<Bimodule> {
        let b = Bimodule::from_parts(left_algebra, right_algebra, dim, left, right)?;
        b.verify()?;
        Ok(b)
    }

    /// Shape-checked but otherwise trusted construction, for bimodules built
    /// by the crate's own constructions (which are verified by their callers'
    /// tests).
    pub(crate) fn from_parts(
        left_algebra: Arc<Algebra>,
        right_algebra: Arc<Algebra>,
        dim: usize,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
    ) -> Result<Bimodule> {
        if left_algebra.field() != right_algebra.field() {
            return Err(Error::FieldMismatch);
        }
        let field = left_algebra.field();
        if left.len() != left_algebra.dim() || right.len() != right_algebra.dim() {
            return Err(Error::InvalidBimodule("one matrix per basis element required".into()));
        }
        for m in left.iter().chain(&right) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidBimodule("action matrix of wrong size".into()));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Bimodule {
            left_algebra,
            right_algebra,
            dim,
            left,
            right,
        })
    }

    /// The regular `A`-`A` bimodule.
    pub fn regular(a: &Arc<Algebra>) -> Bimodule {
        let left = (0..a.dim()).map(|i| a.left_mult(i).clone()).collect();
        let right = (0..a.dim()).map(|j| a.right_mult(j).clone()).collect();
        Bimodule::from_parts(a.clone(), a.clone(), a.dim(), left, right).expect("regular shape")
    }

    pub fn zero(left_algebra: &Arc<Algebra>, right_algebra: &Arc<Algebra>) -> Bimodule {
        let f = left_algebra.field();
        Bimodule {
            left_algebra: left_algebra.clone(),
            right_algebra: right_algebra.clone(),
            dim: 0,
            left: vec![Matrix::zeros(f, 0, 0); left_algebra.dim()],
            right: vec![Matrix::zeros(f, 0, 0); right_algebra.dim()],
        }
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left_algebra
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right_algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_actions(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right_actions(&self) -> &[Matrix] {
        &self.right
    }

    /// Matrix of `x -> c . x`.
    pub fn left_action(&self, c: &[Scalar]) -> Matrix {
        combination(self.left_algebra.field(), self.dim, self.dim, c, &self.left)
    }

    /// Matrix of `x -> x * a`.
    pub fn right_action(&self, a: &[Scalar]) -> Matrix {
        combination(self.right_algebra.field(), self.dim, self.dim, a, &self.right)
    }

    /// The same space as an `A^op`-`C^op` bimodule.
    pub fn flip(&self) -> Bimodule {
        Bimodule {
            left_algebra: Arc::new(self.right_algebra.opposite()),
            right_algebra: Arc::new(self.left_algebra.opposite()),
            dim: self.dim,
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    /// Flip against already-built opposite algebras, keeping `Arc` identity.
    pub fn flip_onto(&self, right_op: &Arc<Algebra>, left_op: &Arc<Algebra>) -> Bimodule {
        Bimodule {
            left_algebra: right_op.clone(),
            right_algebra: left_op.clone(),
            dim: self.dim,
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule> {
        if !same_algebra(&self.left_algebra, &other.left_algebra)
            || !same_algebra(&self.right_algebra, &other.right_algebra)
        {
            return Err(Error::AlgebraMismatch);
        }
        let left = self
            .left
            .iter()
            .zip(&other.left)
            .map(|(a, b)| direct_sum_mat(a, b))
            .collect::<Result<Vec<_>>>()?;
        let right = self
            .right
            .iter()
            .zip(&other.right)
            .map(|(a, b)| direct_sum_mat(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Bimodule {
            left_algebra: self.left_algebra.clone(),
            right_algebra: self.right_algebra.clone(),
            dim: self.dim + other.dim,
            left,
            right,
        })
    }

    /// Re-expresses the bimodule in a new basis: `basis` rows are the new
    /// basis vectors in old coordinates.
    pub fn change_basis(&self, basis: &Matrix) -> Result<Bimodule> {
        let inv = Algebra::invert(basis)?;
        let conj = |m: &Matrix| basis.mul(m).mul(&inv);
        Bimodule::from_parts(
            self.left_algebra.clone(),
            self.right_algebra.clone(),
            self.dim,
            self.left.iter().map(conj).collect(),
            self.right.iter().map(conj).collect(),
        )
    }

    /// Checks unit, multiplicativity on generators and commutation.
    pub fn verify(&self) -> Result<()> {
        let field = self.left_algebra.field();
        let id = Matrix::identity(field, self.dim);
        if self.left_action(self.left_algebra.unit()) != id {
            return Err(Error::InvalidBimodule("left unit acts non-trivially".into()));
        }
        if self.right_action(self.right_algebra.unit()) != id {
            return Err(Error::InvalidBimodule("right unit acts non-trivially".into()));
        }
        let c = &self.left_algebra;
        let cgens = c.generating_elements();
        for k in 0..c.dim() {
            let bk = c.basis_element(k);
            for g in &cgens {
                let lhs = self.left_action(&c.mul(&bk, g));
                if lhs != self.left_action(g).mul(&self.left[k]) {
                    return Err(Error::InvalidBimodule("left action not multiplicative".into()));
                }
            }
        }
        let a = &self.right_algebra;
        let agens = a.generating_elements();
        for k in 0..a.dim() {
            let bk = a.basis_element(k);
            for g in &agens {
                let lhs = self.right_action(&a.mul(&bk, g));
                if lhs != self.right[k].mul(&self.right_action(g)) {
                    return Err(Error::InvalidBimodule("right action not multiplicative".into()));
                }
            }
        }
        for g in &cgens {
            let l = self.left_action(g);
            for h in &agens {
                let r = self.right_action(h);
                if l.mul(&r) != r.mul(&l) {
                    return Err(Error::InvalidBimodule("actions do not commute".into()));
                }
            }
        }
        Ok(())
    }
}
