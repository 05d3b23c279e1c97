//! Small named algebras used throughout the tests and the command line.

use std::sync::Arc;

use super::{path_algebra, triangular_algebra, Algebra, Bimodule, Quiver};
use crate::error::Result;
use crate::linalg::Field;

/// The ground field `k` as a one-dimensional algebra.
pub fn ground(field: Field) -> Arc<Algebra> {
    Arc::new(Algebra::ground_field(field))
}

/// `k A_n`, the path algebra of `1 -> 2 -> ... -> n`.
pub fn linear_a(n: usize, field: Field) -> Result<Arc<Algebra>> {
    Ok(Arc::new(path_algebra(&Quiver::linear(n), &[], field, 10_000)?))
}

/// `T_2(k)`: the triangular matrix algebra `[[k, 0], [k, k]]` with corners
/// `R = S = k` and `M = k`.
pub fn t2(field: Field) -> Result<Arc<Algebra>> {
    let k = ground(field);
    Ok(Arc::new(triangular_algebra(&k, &k, &Bimodule::regular(&k))?))
}

/// `k x k`.
pub fn k_times_k(field: Field) -> Result<Arc<Algebra>> {
    let k = ground(field);
    Ok(Arc::new(super::product_algebra(&k, &k)?))
}
