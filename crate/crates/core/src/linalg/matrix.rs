use std::fmt;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single exact field.
///
/// Vectors are rows throughout the crate: a linear map `V -> W` between
/// spaces of dimensions `m` and `n` is an `m x n` matrix acting as `v -> v * M`.
/// Kronecker products use left-index-major order: `(i, j) -> i * cols_b + j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds from rows, rejecting ragged input and mixed fields.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch);
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            field,
            data,
        })
    }

    /// Like `from_rows` but with an explicit column count, so that `0 x n`
    /// matrices can be built.
    pub fn from_row_vecs(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        if rows.is_empty() {
            return Ok(Self::zeros(field, 0, cols));
        }
        let m = Self::from_rows(field, rows)?;
        if m.cols != cols {
            return Err(Error::DimensionMismatch("row length".into()));
        }
        Ok(m)
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.data[i * c + j] = field.int(*v);
            }
        }
        m
    }

    pub fn row_vector(field: Field, v: &[Scalar]) -> Self {
        Matrix {
            rows: 1,
            cols: v.len(),
            field,
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "matmul {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// Panicking product for internally consistent dimensions.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.matmul(other).expect("matrix product")
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("add".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scale(&self.field.int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|a| a.mul(s)).collect(),
        }
    }

    /// Vector times matrix for a row vector given as a slice.
    pub fn apply_row(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows, "apply_row dimension");
        let mut out = vec![self.field.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(k, j);
                if !b.is_zero() {
                    *o = o.add(&a.mul(b));
                }
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Matrix {
            rows: self.rows,
            cols,
            field: self.field,
            data,
        })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            data,
        })
    }

    /// Stacks many blocks with equal column counts; `cols` covers the empty case.
    pub fn vstack_all(field: Field, cols: usize, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack_all column count");
            data.extend_from_slice(&b.data);
        }
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    pub fn submatrix_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: idx.len(),
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    pub fn submatrix_cols(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + jj] = self.get(i, j).clone();
            }
        }
        m
    }

    /// Column-range slice `[start, end)`.
    pub fn col_range(&self, start: usize, end: usize) -> Matrix {
        let idx: Vec<usize> = (start..end).collect();
        self.submatrix_cols(&idx)
    }

    /// Row-range slice `[start, end)`.
    pub fn row_range(&self, start: usize, end: usize) -> Matrix {
        let idx: Vec<usize> = (start..end).collect();
        self.submatrix_rows(&idx)
    }

    /// Flattens row-major into a single row vector.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    pub fn rref(&self) -> Rref {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{}]{{", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "}}")
    }
}

/// Gauss-Jordan elimination. Row operations touch only the non-zero
/// entries of the pivot row, which keeps the sparse systems produced by
/// intertwiner equations cheap.
pub fn rref(m: &Matrix) -> Rref {
    let rows = m.rows;
    let cols = m.cols;
    let field = m.field;
    let mut a: Vec<Vec<Scalar>> = (0..rows).map(|i| m.row_vec(i)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv();
        if !inv.is_one() {
            for v in a[r][c..].iter_mut() {
                if !v.is_zero() {
                    *v = v.mul(&inv);
                }
            }
        }
        let support: Vec<usize> = (c..cols).filter(|&j| !a[r][j].is_zero()).collect();
        let pivot_row: Vec<(usize, Scalar)> =
            support.iter().map(|&j| (j, a[r][j].clone())).collect();
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for (j, pv) in &pivot_row {
                let delta = factor.mul(pv);
                a[i][*j] = a[i][*j].sub(&delta);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let data = a.into_iter().flatten().collect();
    let rank = pivots.len();
    Rref {
        reduced: Matrix {
            rows,
            cols,
            field,
            data,
        },
        pivot_columns: pivots,
        rank,
    }
}

/// Columns spanning `{x : m x = 0}`; one column per free variable, in order.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let field = m.field;
    let Rref {
        reduced,
        pivot_columns,
        ..
    } = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivot_columns.contains(c)).collect();
    let mut k = Matrix::zeros(field, m.cols, free.len());
    for (fi, &f) in free.iter().enumerate() {
        k.set(f, fi, field.one());
        for (pi, &p) in pivot_columns.iter().enumerate() {
            let v = reduced.get(pi, f);
            if !v.is_zero() {
                k.set(p, fi, v.neg());
            }
        }
    }
    k
}

/// Rows spanning `{v : v m = 0}`.
pub fn left_kernel(m: &Matrix) -> Matrix {
    kernel_basis(&m.transpose()).transpose()
}

/// Rows forming the canonical (reduced) basis of the row space.
pub fn row_space(m: &Matrix) -> Matrix {
    let r = rref(m);
    r.reduced.row_range(0, r.rank)
}

/// Columns of `m` at its pivot positions; a basis of the column space.
pub fn image_basis(m: &Matrix) -> Matrix {
    let r = rref(m);
    m.submatrix_cols(&r.pivot_columns)
}

/// Canonical solution of `a x = b`, with zeros at non-pivot coordinates.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    a.check_field(b)?;
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch("solve: row counts differ".into()));
    }
    let aug = a.hstack(b)?;
    let r = rref(&aug);
    if r.pivot_columns.iter().any(|&p| p >= a.cols) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(a.field, a.cols, b.cols);
    for (pi, &p) in r.pivot_columns.iter().enumerate() {
        for j in 0..b.cols {
            x.set(p, j, r.reduced.get(pi, a.cols + j).clone());
        }
    }
    Ok(Some(x))
}

/// Solves `x a = b` for row-vector systems.
pub fn solve_left(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    Ok(solve(&a.transpose(), &b.transpose())?.map(|x| x.transpose()))
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.matmul(b)
}

/// Block-diagonal `diag(a, b)`.
pub fn direct_sum_mat(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.check_field(b)?;
    let mut m = Matrix::zeros(a.field, a.rows + b.rows, a.cols + b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            m.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..b.rows {
        for j in 0..b.cols {
            m.set(a.rows + i, a.cols + j, b.get(i, j).clone());
        }
    }
    Ok(m)
}

/// Kronecker product, left index major.
pub fn tensor_mat(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.check_field(b)?;
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut m = Matrix::zeros(a.field, rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        m.set(i * b.rows + k, j * b.cols + l, x.mul(y));
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows;
    let aug = m.hstack(&Matrix::identity(m.field, n)).ok()?;
    let r = rref(&aug);
    // Pivots are increasing, so invertibility means the first n sit left of the bar.
    if n > 0 && (r.rank < n || r.pivot_columns[n - 1] >= n) {
        return None;
    }
    Some(r.reduced.col_range(n, 2 * n))
}

pub fn is_invertible(m: &Matrix) -> bool {
    m.is_square() && m.rank() == m.rows
}

/// True iff the rows of `sub` lie in the row space of `space`.
pub fn rows_in_span(sub: &Matrix, space: &Matrix) -> bool {
    if sub.rows == 0 {
        return true;
    }
    let r0 = space.rank();
    let both = space.vstack(sub).expect("rows_in_span columns");
    both.rank() == r0
}

/// Intersection of two row spaces, as rows.
pub fn row_space_intersection(a: &Matrix, b: &Matrix) -> Matrix {
    let field = a.field;
    let cols = a.cols;
    if a.rows == 0 || b.rows == 0 {
        return Matrix::zeros(field, 0, cols);
    }
    // x a = y b  <=>  [x, -y] [a; b] = 0
    let stacked = a.vstack(b).expect("intersection columns");
    let k = left_kernel(&stacked);
    let xs = k.col_range(0, a.rows);
    row_space(&xs.mul(a))
}

/// Coordinates with respect to a fixed list of linearly independent rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowBasis {
    basis: Matrix,
    pivots: Vec<usize>,
    inv: Matrix,
}

impl RowBasis {
    /// Fails with `DimensionMismatch` if the rows are dependent.
    pub fn new(basis: Matrix) -> Result<RowBasis> {
        let r = rref(&basis);
        if r.rank != basis.rows {
            return Err(Error::DimensionMismatch("basis rows are dependent".into()));
        }
        let square = basis.submatrix_cols(&r.pivot_columns);
        let inv = inverse(&square).expect("pivot block is invertible");
        Ok(RowBasis {
            basis,
            pivots: r.pivot_columns,
            inv,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.rows
    }

    pub fn is_empty(&self) -> bool {
        self.basis.rows == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Coordinates of a vector assumed to lie in the span.
    pub fn coords_unchecked(&self, v: &[Scalar]) -> Vec<Scalar> {
        let picked: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        if picked.is_empty() {
            return Vec::new();
        }
        self.inv.apply_row(&picked)
    }

    /// Coordinates, or `None` if the vector is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let t = self.coords_unchecked(v);
        let back = if t.is_empty() {
            vec![self.basis.field.zero(); self.basis.cols]
        } else {
            self.basis.apply_row(&t)
        };
        (back == v).then_some(t)
    }

    /// Coordinates of every row of `m`; `None` if some row is outside.
    pub fn coords_matrix(&self, m: &Matrix) -> Option<Matrix> {
        let rows: Option<Vec<Vec<Scalar>>> = m.row_iter().map(|r| self.coords(r)).collect();
        rows.map(|rows| Matrix::from_row_vecs(m.field, self.basis.rows, rows).expect("coords"))
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rref_identity_and_zero() {
        let r = rref(&Matrix::identity(q(), 2));
        assert_eq!(r.reduced, Matrix::identity(q(), 2));
        assert_eq!(r.pivot_columns, vec![0, 1]);
        assert_eq!(r.rank, 2);
        let z = Matrix::zeros(q(), 2, 2);
        let r = rref(&z);
        assert_eq!(r.reduced, z);
        assert!(r.pivot_columns.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_rank_one_by_hand() {
        let m = Matrix::from_ints(q(), &[&[1, 2], &[2, 4]]);
        let r = rref(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_columns, vec![0]);
        assert_eq!(r.reduced, Matrix::from_ints(q(), &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(q(), 3)).cols(), 0);
        let k = kernel_basis(&Matrix::zeros(q(), 2, 3));
        assert_eq!(k.cols(), 3);
        assert_eq!(k.rank(), 3);
        let k = kernel_basis(&Matrix::from_ints(q(), &[&[1, 2], &[2, 4]]));
        assert_eq!(k, Matrix::from_ints(q(), &[&[-2], &[1]]));
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_ints(q(), &[&[3, 1], &[4, 1]]);
        assert_eq!(solve(&Matrix::identity(q(), 2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&Matrix::zeros(q(), 2, 2), &b).unwrap(), None);
        let x = solve(&Matrix::from_ints(q(), &[&[2]]), &Matrix::from_ints(q(), &[&[3]]))
            .unwrap()
            .unwrap();
        assert_eq!(x.get(0, 0), &q().ratio(3, 2).unwrap());
        assert!(matches!(
            solve(&Matrix::identity(q(), 2), &Matrix::zeros(q(), 3, 1)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn products_and_images() {
        let m = Matrix::from_ints(q(), &[&[1, 2], &[3, 4]]);
        assert_eq!(Matrix::identity(q(), 2).mul(&m), m);
        let a = Matrix::from_ints(q(), &[&[5]]);
        assert_eq!(tensor_mat(&a, &m).unwrap(), m.scale(&q().int(5)));
        assert_eq!(image_basis(&Matrix::from_ints(q(), &[&[1, 2], &[2, 4]])).cols(), 1);
        let d = direct_sum_mat(&a, &m).unwrap();
        assert_eq!((d.rows(), d.cols()), (3, 3));
    }

    #[test]
    fn mixed_fields_rejected() {
        let f5 = Field::prime(5).unwrap();
        let rows = vec![vec![q().one(), f5.one()]];
        assert_eq!(Matrix::from_rows(q(), rows), Err(Error::FieldMismatch));
        let a = Matrix::identity(q(), 2);
        let b = Matrix::identity(f5, 2);
        assert_eq!(a.matmul(&b), Err(Error::FieldMismatch));
        assert_eq!(tensor_mat(&a, &b), Err(Error::FieldMismatch));
    }

    #[test]
    fn inverse_and_intersection() {
        let m = Matrix::from_ints(q(), &[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inverse(&Matrix::from_ints(q(), &[&[1, 2], &[2, 4]])).is_none());
        let a = Matrix::from_ints(q(), &[&[1, 0, 0], &[0, 1, 0]]);
        let b = Matrix::from_ints(q(), &[&[0, 1, 0], &[0, 0, 1]]);
        let i = row_space_intersection(&a, &b);
        assert_eq!(i, Matrix::from_ints(q(), &[&[0, 1, 0]]));
    }
}
