//! Exact computations in module categories of finite-dimensional algebras:
//! Serre subcategories and their quotients, torsion pairs, left/right
//! recollements, and the type `(m, -n)` of a Serre subcategory obtained by
//! extending the adjoint sequences around its inclusion and quotient functors.
//!
//! All arithmetic is exact (rationals or prime fields), so every identity the
//! crate checks is an equality test, never a tolerance test.
//!
//! Conventions fixed crate-wide:
//! * vectors are rows; a module map `M -> N` is a `dim M x dim N` matrix;
//! * modules are right modules, `m * a = m * action(a)`;
//! * a `C`-`A` bimodule stores its left action also as row-vector matrices,
//!   so `c . x = x * left(c)` and `left(c c') = left(c') left(c)`;
//! * Kronecker products and tensor bases use left-index-major order.

pub mod algebra;
pub mod error;
pub mod functors;
pub mod linalg;
pub mod modcat;
pub mod recollement;
pub mod serre;
pub mod settings;
pub mod torsion;
pub mod typeclass;

pub use error::{Error, Result};
pub use settings::Settings;
