//! Finite-dimensional associative unital algebras given by structure
//! constants, together with the derived algebras `eAe` and `A/AeA` and the
//! bimodules that connect them.

mod bimodule;
pub mod examples;
mod derived;
mod iso;
mod path;

pub use bimodule::Bimodule;
pub use derived::{
    corner, idempotent_ideal, product_algebra, quotient_algebra, regular_bimodules,
    triangular_algebra, Corner, Quotient, RegularBimodules,
};
pub use iso::{algebra_iso, AlgebraIso};
pub use path::{path_algebra, Arrow, Quiver, Relation};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{
    inverse, left_kernel, row_space, rows_in_span, solve_left, Field, Matrix, Scalar,
};

/// Coefficient vector of an algebra element with respect to the basis.
pub type Element = Vec<Scalar>;

/// A set of indices into an algebra's distinguished idempotent list,
/// standing for the idempotent `sum_{i in set} e_i`.
pub type IdemSet = BTreeSet<usize>;

/// Finite-dimensional associative unital algebra.
///
/// `b_i * b_j = sum_k c[i][j][k] b_k`. The structure constants are stored as
/// the right and left regular representations: `right_mult[j]` maps the row
/// vector of `x` to that of `x * b_j`, `left_mult[i]` maps `y` to `b_i * y`.
#[derive(Clone)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    right_mult: Vec<Matrix>,
    left_mult: Vec<Matrix>,
    unit: Element,
    idempotents: Vec<Element>,
    radical: Option<Matrix>,
    generators: Vec<usize>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.right_mult == other.right_mult
            && self.unit == other.unit
            && self.idempotents == other.idempotents
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.field)
            .field("dim", &self.dim())
            .field("labels", &self.labels)
            .field("idempotents", &self.idempotents.len())
            .finish()
    }
}

/// `Arc` identity first, structural equality as fallback.
pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Algebra {
    /// Builds and verifies an algebra from its multiplication table
    /// (`table[i][j]` is the coefficient vector of `b_i * b_j`).
    ///
    /// Verification covers associativity, the unit, orthogonality and
    /// completeness of the idempotents, and, when a radical basis is given,
    /// that it spans a nilpotent two-sided ideal with semisimple quotient.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        table: Vec<Vec<Element>>,
        unit: Element,
        idempotents: Vec<Element>,
        radical: Option<Vec<Element>>,
    ) -> Result<Algebra> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("the zero ring is not an algebra".into()));
        }
        if table.len() != dim || table.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch("multiplication table shape".into()));
        }
        for row in &table {
            for v in row {
                check_vec(field, dim, v)?;
            }
        }
        check_vec(field, dim, &unit)?;
        for e in &idempotents {
            check_vec(field, dim, e)?;
        }
        let mut right_mult = vec![Matrix::zeros(field, dim, dim); dim];
        let mut left_mult = vec![Matrix::zeros(field, dim, dim); dim];
        for (i, row) in table.iter().enumerate() {
            for (j, prod) in row.iter().enumerate() {
                for (k, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        right_mult[j].set(i, k, c.clone());
                        left_mult[i].set(j, k, c.clone());
                    }
                }
            }
        }
        let radical = match radical {
            Some(rows) => {
                for r in &rows {
                    check_vec(field, dim, r)?;
                }
                Some(row_space(&Matrix::from_row_vecs(field, dim, rows)?))
            }
            None => None,
        };
        let mut alg = Algebra {
            field,
            labels,
            right_mult,
            left_mult,
            unit,
            idempotents,
            radical,
            generators: Vec::new(),
        };
        alg.verify()?;
        if alg.radical.is_none() && field == Field::Rational {
            alg.radical = Some(alg.trace_radical());
            alg.verify_radical()?;
        }
        alg.generators = alg.compute_generators();
        Ok(alg)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground_field(field: Field) -> Algebra {
        Algebra::new(
            field,
            vec!["1".into()],
            vec![vec![vec![field.one()]]],
            vec![field.one()],
            vec![vec![field.one()]],
            Some(Vec::new()),
        )
        .expect("ground field is an algebra")
    }

    /// The zero ring. Its only module is `0`, so `mod` of it is the zero
    /// category.
    pub fn zero_ring(field: Field) -> Algebra {
        Algebra {
            field,
            labels: Vec::new(),
            right_mult: Vec::new(),
            left_mult: Vec::new(),
            unit: Vec::new(),
            idempotents: Vec::new(),
            radical: Some(Matrix::zeros(field, 0, 0)),
            generators: Vec::new(),
        }
    }

    pub fn is_zero_ring(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Element] {
        &self.idempotents
    }

    pub fn num_idempotents(&self) -> usize {
        self.idempotents.len()
    }

    /// Rows spanning the Jacobson radical, if known.
    pub fn radical(&self) -> Option<&Matrix> {
        self.radical.as_ref()
    }

    pub fn require_radical(&self) -> Result<&Matrix> {
        self.radical.as_ref().ok_or(Error::RadicalUnavailable)
    }

    /// Basis indices generating the algebra together with the unit.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Idempotents followed by the generator basis elements: a set whose
    /// multiplicative closure spans the algebra.
    pub fn generating_elements(&self) -> Vec<Element> {
        let mut out = self.idempotents.clone();
        out.extend(self.generators.iter().map(|&g| self.basis_element(g)));
        out
    }

    /// `A/J` is a product of copies of the field, one per idempotent.
    pub fn is_split_basic(&self) -> bool {
        match &self.radical {
            Some(rad) => self.dim() - rad.rows() == self.idempotents.len(),
            None => false,
        }
    }

    pub fn right_mult(&self, j: usize) -> &Matrix {
        &self.right_mult[j]
    }

    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.left_mult[i]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn zero_element(&self) -> Element {
        vec![self.field.zero(); self.dim()]
    }

    /// Matrix of `x -> x * a`.
    pub fn right_mult_by(&self, a: &[Scalar]) -> Matrix {
        crate::linalg::combination(self.field, self.dim(), self.dim(), a, &self.right_mult)
    }

    /// Matrix of `y -> a * y`.
    pub fn left_mult_by(&self, a: &[Scalar]) -> Matrix {
        crate::linalg::combination(self.field, self.dim(), self.dim(), a, &self.left_mult)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        let mut out = self.zero_element();
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let xr = self.right_mult[j].apply_row(x);
            for (o, v) in out.iter_mut().zip(xr) {
                if !v.is_zero() {
                    *o = o.add(&v.mul(yj));
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
    }

    pub fn sub(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
    }

    pub fn is_zero_element(x: &[Scalar]) -> bool {
        x.iter().all(Scalar::is_zero)
    }

    /// The idempotent `sum_{i in set} e_i`.
    pub fn idempotent_sum(&self, set: &IdemSet) -> Result<Element> {
        let mut e = self.zero_element();
        for &i in set {
            let eps = self
                .idempotents
                .get(i)
                .ok_or_else(|| Error::IndexOutOfRange(format!("idempotent {i}")))?;
            e = self.add(&e, eps);
        }
        Ok(e)
    }

    /// Writes `e` as a sum of distinguished idempotents.
    pub fn idempotent_support(&self, e: &[Scalar]) -> Result<IdemSet> {
        check_vec(self.field, self.dim(), e)?;
        if self.mul(e, e) != e {
            return Err(Error::NotIdempotent);
        }
        let eps = Matrix::from_row_vecs(self.field, self.dim(), self.idempotents.clone())?;
        let target = Matrix::row_vector(self.field, e);
        let coeffs = solve_left(&eps, &target)?.ok_or(Error::NotDistinguishedSum)?;
        let mut set = IdemSet::new();
        for i in 0..self.idempotents.len() {
            let c = coeffs.get(0, i);
            if c.is_one() {
                set.insert(i);
            } else if !c.is_zero() {
                return Err(Error::NotDistinguishedSum);
            }
        }
        Ok(set)
    }

    pub fn all_idempotents(&self) -> IdemSet {
        (0..self.idempotents.len()).collect()
    }

    /// The opposite algebra (same basis, reversed multiplication).
    pub fn opposite(&self) -> Algebra {
        Algebra {
            field: self.field,
            labels: self.labels.clone(),
            right_mult: self.left_mult.clone(),
            left_mult: self.right_mult.clone(),
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            radical: self.radical.clone(),
            generators: self.generators.clone(),
        }
    }

    /// Multiplication table `b_i * b_j`.
    pub fn table(&self) -> Vec<Vec<Element>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.right_mult[j].row_vec(i)).collect())
            .collect()
    }

    /// Rows spanning `e A f` for elements `e`, `f`.
    pub fn sandwich(&self, e: &[Scalar], f: &[Scalar]) -> Matrix {
        let rows: Vec<Element> = (0..self.dim())
            .map(|i| self.mul(&self.mul(e, &self.basis_element(i)), f))
            .collect();
        row_space(&Matrix::from_row_vecs(self.field, self.dim(), rows).expect("rows"))
    }

    /// Rows spanning `X * Y` for subspaces given by rows.
    pub fn product_space(&self, x: &Matrix, y: &Matrix) -> Matrix {
        let mut rows = Vec::new();
        for a in x.row_iter() {
            for b in y.row_iter() {
                rows.push(self.mul(a, b));
            }
        }
        row_space(&Matrix::from_row_vecs(self.field, self.dim(), rows).expect("rows"))
    }

    fn verify(&self) -> Result<()> {
        let dim = self.dim();
        let field = self.field;
        let id = Matrix::identity(field, dim);
        if self.right_mult_by(&self.unit) != id || self.left_mult_by(&self.unit) != id {
            return Err(Error::InvalidAlgebra("unit law fails".into()));
        }
        // Associativity: the right regular representation is multiplicative.
        for j in 0..dim {
            for k in 0..dim {
                let bjbk = self.right_mult[k].row_vec(j);
                if self.right_mult[j].mul(&self.right_mult[k]) != self.right_mult_by(&bjbk) {
                    return Err(Error::InvalidAlgebra(format!(
                        "associativity fails at ({}, {})",
                        self.labels[j], self.labels[k]
                    )));
                }
            }
        }
        if self.idempotents.is_empty() {
            return Err(Error::InvalidAlgebra("no idempotents supplied".into()));
        }
        let mut sum = self.zero_element();
        for (i, e) in self.idempotents.iter().enumerate() {
            if Self::is_zero_element(e) {
                return Err(Error::InvalidAlgebra(format!("idempotent {i} is zero")));
            }
            for (j, f) in self.idempotents.iter().enumerate() {
                let p = self.mul(e, f);
                let expected = if i == j { e.clone() } else { self.zero_element() };
                if p != expected {
                    return Err(Error::InvalidAlgebra(format!(
                        "idempotents {i}, {j} not orthogonal idempotents"
                    )));
                }
            }
            sum = self.add(&sum, e);
        }
        if sum != self.unit {
            return Err(Error::InvalidAlgebra("idempotents do not sum to the unit".into()));
        }
        if self.radical.is_some() {
            self.verify_radical()?;
        }
        Ok(())
    }

    fn verify_radical(&self) -> Result<()> {
        let dim = self.dim();
        let rad = self.radical.as_ref().expect("radical present");
        let all = Matrix::identity(self.field, dim);
        if !rows_in_span(&self.product_space(&all, rad), rad)
            || !rows_in_span(&self.product_space(rad, &all), rad)
        {
            return Err(Error::InvalidAlgebra("radical is not a two-sided ideal".into()));
        }
        let mut power = rad.clone();
        for _ in 0..=dim {
            if power.rows() == 0 {
                break;
            }
            power = self.product_space(&power, rad);
        }
        if power.rows() != 0 {
            return Err(Error::InvalidAlgebra("radical is not nilpotent".into()));
        }
        // Quotient semisimplicity: either A/J is spanned by the images of the
        // r idempotents (then A/J = k^r), or the trace form certifies it.
        let r = self.idempotents.len();
        let idem_in_rad = self.idempotents.iter().any(|e| {
            rows_in_span(&Matrix::row_vector(self.field, e), rad)
        });
        if idem_in_rad {
            return Err(Error::InvalidAlgebra("an idempotent lies in the radical".into()));
        }
        if dim - rad.rows() == r {
            return Ok(());
        }
        if self.field == Field::Rational {
            let tr = self.trace_radical();
            if tr.rows() == rad.rows() && rows_in_span(&tr, rad) {
                return Ok(());
            }
            return Err(Error::InvalidAlgebra(
                "supplied radical differs from the trace radical".into(),
            ));
        }
        Err(Error::InvalidAlgebra(
            "cannot certify semisimplicity of A/J in positive characteristic".into(),
        ))
    }

    /// `{x : tr(x y) = 0 for all y}` in the regular representation; equals the
    /// Jacobson radical in characteristic zero.
    fn trace_radical(&self) -> Matrix {
        let dim = self.dim();
        let mut t = Matrix::zeros(self.field, dim, dim);
        for l in 0..dim {
            for j in 0..dim {
                let p = self.right_mult[l].mul(&self.right_mult[j]);
                let mut tr = self.field.zero();
                for d in 0..dim {
                    tr = tr.add(p.get(d, d));
                }
                t.set(l, j, tr);
            }
        }
        row_space(&left_kernel(&t))
    }

    /// Greedy generating set: a basis element is kept if it is not in the
    /// subalgebra generated by the idempotents and the earlier picks.
    fn compute_generators(&self) -> Vec<usize> {
        let dim = self.dim();
        let mut gens: Vec<usize> = Vec::new();
        let mut span = self.subalgebra_span(&[]);
        for i in 0..dim {
            if span.rows() == dim {
                break;
            }
            let b = Matrix::row_vector(self.field, &self.basis_element(i));
            if rows_in_span(&b, &span) {
                continue;
            }
            gens.push(i);
            span = self.subalgebra_span(&gens);
        }
        gens
    }

    fn subalgebra_span(&self, gens: &[usize]) -> Matrix {
        let mut rows = vec![self.unit.clone()];
        rows.extend(self.idempotents.iter().cloned());
        rows.extend(gens.iter().map(|&g| self.basis_element(g)));
        let mut span = row_space(&Matrix::from_row_vecs(self.field, self.dim(), rows).unwrap());
        loop {
            let mut next: Vec<Element> = span.row_iter().map(|r| r.to_vec()).collect();
            for r in span.row_iter() {
                for &g in gens {
                    next.push(self.right_mult[g].apply_row(r));
                }
            }
            let grown = row_space(&Matrix::from_row_vecs(self.field, self.dim(), next).unwrap());
            if grown.rows() == span.rows() {
                return span;
            }
            span = grown;
        }
    }

    /// Coordinates of the rows of `x` with respect to the basis rows `basis`.
    pub(crate) fn coordinates(basis: &Matrix, x: &Matrix) -> Result<Matrix> {
        solve_left(basis, x)?.ok_or_else(|| {
            Error::InternalInconsistency("vector outside the expected span".into())
        })
    }

    /// Inverse of a basis change, exposed for derived constructions.
    pub(crate) fn invert(m: &Matrix) -> Result<Matrix> {
        inverse(m).ok_or_else(|| Error::InternalInconsistency("singular basis change".into()))
    }
}

fn check_vec(field: Field, dim: usize, v: &[Scalar]) -> Result<()> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "element of length {} in algebra of dimension {dim}",
            v.len()
        )));
    }
    if v.iter().any(|s| s.field() != field) {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    /// k[x]/(x^2) with basis {1, x}.
    pub(crate) fn dual_numbers(field: Field) -> Algebra {
        let z = field.zero();
        let o = field.one();
        Algebra::new(
            field,
            vec!["1".into(), "x".into()],
            vec![
                vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
                vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
            ],
            vec![o.clone(), z.clone()],
            vec![vec![o.clone(), z.clone()]],
            Some(vec![vec![z, o]]),
        )
        .unwrap()
    }

    #[test]
    fn rejects_non_associative_table() {
        let z = q().zero();
        let o = q().one();
        // basis {1, x} with x*x = 1 + x is associative (commutative, 2-dim);
        // break associativity by making x*1 != x.
        let table = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![o.clone(), z.clone()], vec![z.clone(), z.clone()]],
        ];
        let r = Algebra::new(
            q(),
            vec!["1".into(), "x".into()],
            table,
            vec![o.clone(), z.clone()],
            vec![vec![o, z]],
            None,
        );
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn trace_radical_of_dual_numbers() {
        let z = q().zero();
        let o = q().one();
        let a = Algebra::new(
            q(),
            vec!["1".into(), "x".into()],
            vec![
                vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
                vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
            ],
            vec![o.clone(), z.clone()],
            vec![vec![o.clone(), z.clone()]],
            None,
        )
        .unwrap();
        let rad = a.radical().unwrap();
        assert_eq!(rad.rows(), 1);
        assert_eq!(rad.row_vec(0), vec![z, o]);
        assert_eq!(a.generators(), &[1]);
    }

    #[test]
    fn wrong_radical_rejected() {
        let z = q().zero();
        let o = q().one();
        let r = Algebra::new(
            q(),
            vec!["1".into(), "x".into()],
            vec![
                vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
                vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
            ],
            vec![o.clone(), z.clone()],
            vec![vec![o.clone(), z.clone()]],
            Some(vec![]),
        );
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn idempotent_support_detects_bad_elements() {
        let a = dual_numbers(q());
        assert_eq!(a.idempotent_support(a.unit()).unwrap(), IdemSet::from([0]));
        let x = a.basis_element(1);
        assert_eq!(a.idempotent_support(&x), Err(Error::NotIdempotent));
        assert_eq!(a.idempotent_support(&a.zero_element()).unwrap(), IdemSet::new());
    }
}
