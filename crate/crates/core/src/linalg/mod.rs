//! Exact scalar and matrix arithmetic over the rationals and prime fields.

mod matrix;
mod rational;
mod scalar;

pub use matrix::{
    direct_sum_mat, image_basis, inverse, is_invertible, kernel_basis, left_kernel, matmul,
    row_space, row_space_intersection, rows_in_span, rref, solve, solve_left, tensor_mat, Matrix,
    RowBasis, Rref,
};
pub use rational::Rational;
pub use scalar::{Field, Scalar};

use rand::Rng;

/// Random field element used by seeded isomorphism searches. Rational draws
/// are small integers, prime-field draws are uniform.
pub fn random_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rational => field.int(rng.gen_range(-7..=7)),
        Field::Prime(p) => field.int(rng.gen_range(0..p) as i64),
    }
}

/// Linear combination `sum coeffs[k] * mats[k]` of equally shaped matrices.
pub fn combination(field: Field, rows: usize, cols: usize, coeffs: &[Scalar], mats: &[Matrix]) -> Matrix {
    let mut out = Matrix::zeros(field, rows, cols);
    for (c, m) in coeffs.iter().zip(mats) {
        if c.is_zero() {
            continue;
        }
        out = out.add(&m.scale(c)).expect("combination shapes");
    }
    out
}
