use std::sync::Arc;

use super::{same_algebra, Algebra, Bimodule, Element, IdemSet};
use crate::error::{Error, Result};
use crate::linalg::{row_space, rows_in_span, Matrix};

/// The corner algebra `eAe` with its embedding into `A`.
#[derive(Clone, Debug)]
pub struct Corner {
    pub algebra: Arc<Algebra>,
    /// Rows: the basis of `eAe` in `A`-coordinates.
    pub embedding: Matrix,
    /// Indices of the distinguished idempotents summing to `e`.
    pub support: IdemSet,
}

/// `A/I` for a two-sided ideal `I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Arc<Algebra>,
    /// `dim A x dim A/I`, the canonical surjection.
    pub projection: Matrix,
    /// `dim A/I x dim A`, a linear section of the projection.
    pub lift: Matrix,
    /// Rows spanning `I`.
    pub ideal: Matrix,
    /// For each idempotent of `A`, its index in the quotient (if non-zero).
    pub idempotent_map: Vec<Option<usize>>,
}

/// The bimodules attached to an idempotent `e` of `A`. When `eAe` or
/// `A/AeA` vanishes it is replaced by the zero ring and the bimodules
/// touching it are zero.
#[derive(Clone, Debug)]
pub struct RegularBimodules {
    pub corner: Option<Corner>,
    pub quotient: Option<Quotient>,
    /// `eAe`, or the zero ring.
    pub corner_algebra: Arc<Algebra>,
    /// `A/AeA`, or the zero ring.
    pub bar_algebra: Arc<Algebra>,
    /// `eA` as an `eAe`-`A` bimodule.
    pub e_a: Bimodule,
    /// `Ae` as an `A`-`eAe` bimodule.
    pub a_e: Bimodule,
    /// `A/AeA` as an `A/AeA`-`A` bimodule.
    pub abar_left: Bimodule,
    /// `A/AeA` as an `A`-`A/AeA` bimodule.
    pub abar_right: Bimodule,
}

/// Greedy basis of the span of `candidates`, preferring earlier rows.
fn greedy_basis(field: crate::linalg::Field, dim: usize, candidates: Vec<Element>) -> Matrix {
    let mut chosen: Vec<Element> = Vec::new();
    let mut span = Matrix::zeros(field, 0, dim);
    for c in candidates {
        if Algebra::is_zero_element(&c) {
            continue;
        }
        let row = Matrix::row_vector(field, &c);
        if rows_in_span(&row, &span) {
            continue;
        }
        chosen.push(c);
        span = Matrix::from_row_vecs(field, dim, chosen.clone()).expect("rows");
    }
    span
}

fn coords(basis: &Matrix, rows: Vec<Element>) -> Result<Matrix> {
    let field = basis.field();
    let m = Matrix::from_row_vecs(field, basis.cols(), rows)?;
    Algebra::coordinates(basis, &m)
}

pub fn corner(a: &Arc<Algebra>, e: &[crate::linalg::Scalar]) -> Result<Corner> {
    let support = a.idempotent_support(e)?;
    if support.is_empty() {
        return Err(Error::DegenerateQuotient);
    }
    if support.len() == a.num_idempotents() {
        return Ok(Corner {
            algebra: a.clone(),
            embedding: Matrix::identity(a.field(), a.dim()),
            support,
        });
    }
    let field = a.field();
    let dim = a.dim();
    // Prefer the images of e and of the basis elements, so that path-like
    // labels survive.
    let mut candidates: Vec<Element> = support.iter().map(|&i| a.idempotents()[i].clone()).collect();
    candidates.extend((0..dim).map(|i| a.mul(&a.mul(e, &a.basis_element(i)), e)));
    let basis = greedy_basis(field, dim, candidates);
    let n = basis.rows();
    let labels: Vec<String> = (0..n)
        .map(|k| {
            let row = basis.row_vec(k);
            match (0..dim).find(|&i| row == a.basis_element(i)) {
                Some(i) => a.labels()[i].clone(),
                None => {
                    match support.iter().find(|&&i| a.idempotents()[i] == row) {
                        Some(i) => format!("eps{i}"),
                        None => format!("c{k}"),
                    }
                }
            }
        })
        .collect();
    let mut table = Vec::with_capacity(n);
    for i in 0..n {
        let prods: Vec<Element> = (0..n).map(|j| a.mul(basis.row(i), basis.row(j))).collect();
        let c = coords(&basis, prods)?;
        table.push((0..n).map(|j| c.row_vec(j)).collect());
    }
    let unit = coords(&basis, vec![e.to_vec()])?.row_vec(0);
    let idempotents: Vec<Element> = {
        let c = coords(&basis, support.iter().map(|&i| a.idempotents()[i].clone()).collect())?;
        (0..c.rows()).map(|k| c.row_vec(k)).collect()
    };
    let radical = match a.radical() {
        Some(rad) => {
            let rows: Vec<Element> = rad.row_iter().map(|r| a.mul(&a.mul(e, r), e)).collect();
            let space = row_space(&Matrix::from_row_vecs(field, dim, rows)?);
            let c = Algebra::coordinates(&basis, &space)?;
            Some((0..c.rows()).map(|k| c.row_vec(k)).collect())
        }
        None => None,
    };
    let algebra = Algebra::new(field, labels, table, unit, idempotents, radical)?;
    Ok(Corner {
        algebra: Arc::new(algebra),
        embedding: basis,
        support,
    })
}

/// Rows spanning the two-sided ideal `AeA`.
pub fn idempotent_ideal(a: &Algebra, e: &[crate::linalg::Scalar]) -> Result<Matrix> {
    if e.len() != a.dim() {
        return Err(Error::DimensionMismatch("idempotent length".into()));
    }
    if a.mul(e, e) != e {
        return Err(Error::NotIdempotent);
    }
    let field = a.field();
    let dim = a.dim();
    let mut rows = Vec::new();
    for i in 0..dim {
        let be = a.mul(&a.basis_element(i), e);
        if Algebra::is_zero_element(&be) {
            continue;
        }
        for j in 0..dim {
            rows.push(a.mul(&be, &a.basis_element(j)));
        }
    }
    let ideal = row_space(&Matrix::from_row_vecs(field, dim, rows)?);
    if ideal.rows() != a.product_space(&ideal, &ideal).rows() {
        return Err(Error::InternalInconsistency("AeA is not idempotent".into()));
    }
    Ok(ideal)
}

pub fn quotient_algebra(a: &Arc<Algebra>, ideal: &Matrix) -> Result<Quotient> {
    let field = a.field();
    let dim = a.dim();
    if ideal.cols() != dim {
        return Err(Error::DimensionMismatch("ideal rows".into()));
    }
    let ideal = row_space(ideal);
    let all = Matrix::identity(field, dim);
    if !rows_in_span(&a.product_space(&all, &ideal), &ideal)
        || !rows_in_span(&a.product_space(&ideal, &all), &ideal)
    {
        return Err(Error::NotTwoSidedIdeal);
    }
    if ideal.rows() == dim {
        return Err(Error::DegenerateQuotient);
    }
    // Complement spanned by standard basis vectors.
    let mut comp: Vec<usize> = Vec::new();
    let mut span = ideal.clone();
    for i in 0..dim {
        let b = Matrix::row_vector(field, &a.basis_element(i));
        if !rows_in_span(&b, &span) {
            comp.push(i);
            span = span.vstack(&b)?;
        }
    }
    let n = comp.len();
    let lift = Matrix::identity(field, dim).submatrix_rows(&comp);
    let stacked = lift.vstack(&ideal)?;
    let inv = Algebra::invert(&stacked)?;
    let projection = inv.col_range(0, n);
    let project = |v: &[crate::linalg::Scalar]| projection.apply_row(v);
    let labels: Vec<String> = comp.iter().map(|&i| a.labels()[i].clone()).collect();
    let table: Vec<Vec<Element>> = comp
        .iter()
        .map(|&i| {
            comp.iter()
                .map(|&j| project(&a.mul(&a.basis_element(i), &a.basis_element(j))))
                .collect()
        })
        .collect();
    let unit = project(a.unit());
    let mut idempotents = Vec::new();
    let mut idempotent_map = Vec::new();
    for eps in a.idempotents() {
        let p = project(eps);
        if Algebra::is_zero_element(&p) {
            idempotent_map.push(None);
        } else {
            idempotent_map.push(Some(idempotents.len()));
            idempotents.push(p);
        }
    }
    let radical = a.radical().map(|rad| {
        let rows: Vec<Element> = rad.row_iter().map(project).collect();
        let space = row_space(&Matrix::from_row_vecs(field, n, rows).expect("rows"));
        (0..space.rows()).map(|k| space.row_vec(k)).collect()
    });
    let algebra = Algebra::new(field, labels, table, unit, idempotents, radical)?;
    Ok(Quotient {
        algebra: Arc::new(algebra),
        projection,
        lift,
        ideal,
        idempotent_map,
    })
}

/// Subspace `V` of `A` (rows of `basis`) acted on by `left` and `right`
/// algebras through embeddings into `A` (rows: images of their basis).
fn sub_bimodule(
    a: &Algebra,
    basis: &Matrix,
    left: (&Arc<Algebra>, &Matrix),
    right: (&Arc<Algebra>, &Matrix),
) -> Result<Bimodule> {
    let n = basis.rows();
    let mut lacts = Vec::new();
    for u in left.1.row_iter() {
        let rows: Vec<Element> = basis.row_iter().map(|x| a.mul(u, x)).collect();
        lacts.push(coords(basis, rows)?);
    }
    let mut racts = Vec::new();
    for u in right.1.row_iter() {
        let rows: Vec<Element> = basis.row_iter().map(|x| a.mul(x, u)).collect();
        racts.push(coords(basis, rows)?);
    }
    Bimodule::new(left.0.clone(), right.0.clone(), n, lacts, racts)
}

pub fn regular_bimodules(a: &Arc<Algebra>, e: &[crate::linalg::Scalar]) -> Result<RegularBimodules> {
    let field = a.field();
    let dim = a.dim();
    let support = a.idempotent_support(e)?;
    let id = Matrix::identity(field, dim);
    let corner = if support.is_empty() {
        None
    } else {
        Some(corner(a, e)?)
    };
    let quotient = if support.len() == a.num_idempotents() {
        None
    } else {
        let ideal = idempotent_ideal(a, e)?;
        Some(quotient_algebra(a, &ideal)?)
    };
    let corner_algebra = match &corner {
        Some(c) => c.algebra.clone(),
        None => Arc::new(Algebra::zero_ring(field)),
    };
    let (e_a, a_e) = match &corner {
        Some(c) => {
            let ea = greedy_basis(field, dim, (0..dim).map(|i| a.mul(e, &a.basis_element(i))).collect());
            let ae = greedy_basis(field, dim, (0..dim).map(|i| a.mul(&a.basis_element(i), e)).collect());
            (
                sub_bimodule(a, &ea, (&c.algebra, &c.embedding), (a, &id))?,
                sub_bimodule(a, &ae, (a, &id), (&c.algebra, &c.embedding))?,
            )
        }
        None => (
            Bimodule::zero(&corner_algebra, a),
            Bimodule::zero(a, &corner_algebra),
        ),
    };
    let bar_algebra = match &quotient {
        Some(q) => q.algebra.clone(),
        None => Arc::new(Algebra::zero_ring(field)),
    };
    let (abar_left, abar_right) = match &quotient {
        Some(q) => {
            let qa = &q.algebra;
            let n = qa.dim();
            let through = |m: &Matrix| q.lift.mul(m).mul(&q.projection);
            let own_left: Vec<Matrix> = (0..n).map(|i| qa.left_mult(i).clone()).collect();
            let own_right: Vec<Matrix> = (0..n).map(|j| qa.right_mult(j).clone()).collect();
            let a_right: Vec<Matrix> = (0..dim).map(|j| through(a.right_mult(j))).collect();
            let a_left: Vec<Matrix> = (0..dim).map(|i| through(a.left_mult(i))).collect();
            (
                Bimodule::new(qa.clone(), a.clone(), n, own_left, a_right)?,
                Bimodule::new(a.clone(), qa.clone(), n, a_left, own_right)?,
            )
        }
        None => (Bimodule::zero(&bar_algebra, a), Bimodule::zero(a, &bar_algebra)),
    };
    Ok(RegularBimodules {
        corner,
        quotient,
        corner_algebra,
        bar_algebra,
        e_a,
        a_e,
        abar_left,
        abar_right,
    })
}

/// The triangular matrix algebra `[[R, 0], [M, S]]` for an `S`-`R`
/// bimodule `M`. Idempotents: those of `R`, then those of `S`.
pub fn triangular_algebra(r: &Arc<Algebra>, s: &Arc<Algebra>, m: &Bimodule) -> Result<Algebra> {
    if r.field() != s.field() || m.left_algebra().field() != r.field() {
        return Err(Error::FieldMismatch);
    }
    if !same_algebra(m.left_algebra(), s) || !same_algebra(m.right_algebra(), r) {
        return Err(Error::BimoduleAlgebraMismatch);
    }
    let field = r.field();
    let (dr, ds, dm) = (r.dim(), s.dim(), m.dim());
    let dim = dr + ds + dm;
    let embed = |v: &[crate::linalg::Scalar], offset: usize| {
        let mut out = vec![field.zero(); dim];
        for (k, x) in v.iter().enumerate() {
            out[offset + k] = x.clone();
        }
        out
    };
    let mut labels: Vec<String> = r.labels().iter().map(|l| format!("R.{l}")).collect();
    labels.extend(s.labels().iter().map(|l| format!("S.{l}")));
    labels.extend((0..dm).map(|k| format!("M.{k}")));
    let mut table = vec![vec![vec![field.zero(); dim]; dim]; dim];
    for i in 0..dr {
        for j in 0..dr {
            table[i][j] = embed(&r.mul(&r.basis_element(i), &r.basis_element(j)), 0);
        }
    }
    for i in 0..ds {
        for j in 0..ds {
            table[dr + i][dr + j] = embed(&s.mul(&s.basis_element(i), &s.basis_element(j)), dr);
        }
        // s_i * m_j = row j of left(s_i)
        for j in 0..dm {
            table[dr + i][dr + ds + j] = embed(m.left_actions()[i].row(j), dr + ds);
        }
    }
    // m_i * r_j = row i of right(r_j)
    for i in 0..dm {
        for j in 0..dr {
            table[dr + ds + i][j] = embed(m.right_actions()[j].row(i), dr + ds);
        }
    }
    let mut unit = embed(r.unit(), 0);
    for (k, x) in s.unit().iter().enumerate() {
        unit[dr + k] = x.clone();
    }
    let mut idempotents: Vec<Element> = r.idempotents().iter().map(|e| embed(e, 0)).collect();
    idempotents.extend(s.idempotents().iter().map(|e| embed(e, dr)));
    let radical = match (r.radical(), s.radical()) {
        (Some(jr), Some(js)) => {
            let mut rows: Vec<Element> = jr.row_iter().map(|v| embed(v, 0)).collect();
            rows.extend(js.row_iter().map(|v| embed(v, dr)));
            rows.extend((0..dm).map(|k| {
                let mut v = vec![field.zero(); dim];
                v[dr + ds + k] = field.one();
                v
            }));
            Some(rows)
        }
        _ => None,
    };
    Algebra::new(field, labels, table, unit, idempotents, radical)
}

/// `A x B` with block-diagonal structure constants.
pub fn product_algebra(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let field = a.field();
    let (da, db) = (a.dim(), b.dim());
    let dim = da + db;
    let embed = |v: &[crate::linalg::Scalar], offset: usize| {
        let mut out = vec![field.zero(); dim];
        for (k, x) in v.iter().enumerate() {
            out[offset + k] = x.clone();
        }
        out
    };
    let mut labels: Vec<String> = a.labels().iter().map(|l| format!("1.{l}")).collect();
    labels.extend(b.labels().iter().map(|l| format!("2.{l}")));
    let mut table = vec![vec![vec![field.zero(); dim]; dim]; dim];
    for i in 0..da {
        for j in 0..da {
            table[i][j] = embed(&a.mul(&a.basis_element(i), &a.basis_element(j)), 0);
        }
    }
    for i in 0..db {
        for j in 0..db {
            table[da + i][da + j] = embed(&b.mul(&b.basis_element(i), &b.basis_element(j)), da);
        }
    }
    let mut unit = embed(a.unit(), 0);
    for (k, x) in b.unit().iter().enumerate() {
        unit[da + k] = x.clone();
    }
    let mut idempotents: Vec<Element> = a.idempotents().iter().map(|e| embed(e, 0)).collect();
    idempotents.extend(b.idempotents().iter().map(|e| embed(e, da)));
    let radical = match (a.radical(), b.radical()) {
        (Some(ja), Some(jb)) => {
            let mut rows: Vec<Element> = ja.row_iter().map(|v| embed(v, 0)).collect();
            rows.extend(jb.row_iter().map(|v| embed(v, da)));
            Some(rows)
        }
        _ => None,
    };
    Algebra::new(field, labels, table, unit, idempotents, radical)
}
