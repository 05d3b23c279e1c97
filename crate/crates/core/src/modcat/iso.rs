use super::{hom_space, Module, Morphism};
use crate::algebra::same_algebra;
use crate::error::{Error, Result};
use crate::linalg::{is_invertible, random_scalar, Field, Matrix, Scalar};
use crate::settings::Settings;

/// Searches `Hom(M, N)` for an isomorphism.
///
/// `Ok(None)` is a proof of non-isomorphism (dimension counts, a rank bound
/// on the whole Hom space, or an exhaustive search over a prime field).
/// `Err(InconclusiveSearch)` means the seeded random search failed.
pub fn is_isomorphic(m: &Module, n: &Module, settings: &Settings) -> Result<Option<Morphism>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let field = m.field();
    let d = m.dim();
    if d == 0 {
        return Ok(Some(Morphism::zero(m, n)));
    }
    let h = hom_space(m, n)?;
    if h.is_empty() {
        return Ok(None);
    }
    let end_m = hom_space(m, m)?.dim();
    let end_n = hom_space(n, n)?.dim();
    let back = hom_space(n, m)?.dim();
    if end_m != h.dim() || end_n != h.dim() || back != h.dim() {
        return Ok(None);
    }
    // Every combination has rows in the joint row space.
    let stacked = Matrix::vstack_all(field, d, &h.mats);
    if stacked.rank() < d {
        return Ok(None);
    }
    let found = |x: Matrix| Morphism::from_parts(m.clone(), n.clone(), x);
    if h.dim() == 1 {
        return Ok(is_invertible(&h.mats[0]).then(|| found(h.mats[0].clone())));
    }
    // Basis elements first: isomorphisms are often among them.
    for x in &h.mats {
        if is_invertible(x) {
            return Ok(Some(found(x.clone())));
        }
    }
    if let Field::Prime(p) = field {
        let k = h.dim() as u32;
        if h.dim() <= settings.fp_grid_dim && p.checked_pow(k).is_some_and(|n| n <= 200_000) {
            let mut coeffs = vec![0u64; h.dim()];
            loop {
                let t: Vec<Scalar> = coeffs.iter().map(|&c| field.int(c as i64)).collect();
                let x = h.combine(&t);
                if is_invertible(&x) {
                    return Ok(Some(found(x)));
                }
                // odometer increment
                let mut pos = 0;
                loop {
                    if pos == coeffs.len() {
                        return Ok(None);
                    }
                    coeffs[pos] += 1;
                    if coeffs[pos] < p {
                        break;
                    }
                    coeffs[pos] = 0;
                    pos += 1;
                }
            }
        }
    }
    let mut rng = settings.rng(0x1507);
    for _ in 0..settings.iso_attempts {
        let t: Vec<Scalar> = (0..h.dim()).map(|_| random_scalar(field, &mut rng)).collect();
        let x = h.combine(&t);
        if is_invertible(&x) {
            return Ok(Some(found(x)));
        }
    }
    Err(Error::InconclusiveSearch)
}
