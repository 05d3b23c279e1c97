use super::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{random_scalar, row_space, rows_in_span, solve_left, Matrix, Scalar};
use crate::settings::Settings;

/// An algebra isomorphism `A -> B`; row `i` of `map` is the image of the
/// `i`-th basis element of `A` in `B`-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraIso {
    pub map: Matrix,
    /// Distinguished idempotent `i` of `A` goes to idempotent `perm[i]` of `B`.
    pub perm: Vec<usize>,
}

impl AlgebraIso {
    pub fn apply(&self, x: &[Scalar]) -> Element {
        self.map.apply_row(x)
    }
}

/// Peirce-graded data: `e_i J e_j` and `e_i J^2 e_j` dimensions plus
/// generators of `J` modulo `J^2` in each Peirce slot.
struct Peirce {
    jdims: Vec<Vec<usize>>,
    j2dims: Vec<Vec<usize>>,
    /// For each slot `(i, j)`: rows spanning `e_i J e_j`.
    slots: Vec<Vec<Matrix>>,
    /// Generators: `(i, j, element)`.
    arrows: Vec<(usize, usize, Element)>,
}

fn peirce(a: &Algebra, rad: &Matrix) -> Peirce {
    let field = a.field();
    let r = a.num_idempotents();
    let j2 = a.product_space(rad, rad);
    let mut jdims = vec![vec![0; r]; r];
    let mut j2dims = vec![vec![0; r]; r];
    let mut slots = vec![Vec::with_capacity(r); r];
    let mut arrows = Vec::new();
    for i in 0..r {
        for j in 0..r {
            let (ei, ej) = (&a.idempotents()[i], &a.idempotents()[j]);
            let sandwich = |m: &Matrix| {
                let rows: Vec<Element> = m.row_iter().map(|x| a.mul(&a.mul(ei, x), ej)).collect();
                row_space(&Matrix::from_row_vecs(field, a.dim(), rows).expect("rows"))
            };
            let pj = sandwich(rad);
            let pj2 = sandwich(&j2);
            jdims[i][j] = pj.rows();
            j2dims[i][j] = pj2.rows();
            let mut span = pj2.clone();
            for row in pj.row_iter() {
                let m = Matrix::row_vector(field, row);
                if !rows_in_span(&m, &span) {
                    arrows.push((i, j, row.to_vec()));
                    span = span.vstack(&m).expect("widths");
                }
            }
            slots[i].push(pj);
        }
    }
    Peirce {
        jdims,
        j2dims,
        slots,
        arrows,
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Searches for an algebra isomorphism sending distinguished idempotents to
/// distinguished idempotents.
///
/// `Ok(None)` means an invariant (dimension, radical dimension, Peirce
/// dimensions) rules out any such isomorphism. `Err(SearchBudgetExceeded)`
/// means the seeded search found nothing, which proves nothing.
pub fn algebra_iso(a: &Algebra, b: &Algebra, settings: &Settings) -> Result<Option<AlgebraIso>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.dim() != b.dim() {
        return Ok(None);
    }
    let (ra, rb) = match (a.radical(), b.radical()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::RadicalUnavailable),
    };
    if ra.rows() != rb.rows() {
        return Ok(None);
    }
    if a.num_idempotents() != b.num_idempotents() {
        if a.is_split_basic() && b.is_split_basic() {
            return Ok(None);
        }
        return Err(Error::SearchBudgetExceeded);
    }
    let r = a.num_idempotents();
    let pa = peirce(a, ra);
    let pb = peirce(b, rb);
    let mut rng = settings.rng(0x150);
    let mut any_candidate = false;
    for perm in permutations(r) {
        let compatible = (0..r).all(|i| {
            (0..r).all(|j| {
                pa.jdims[i][j] == pb.jdims[perm[i]][perm[j]]
                    && pa.j2dims[i][j] == pb.j2dims[perm[i]][perm[j]]
                    && a.sandwich(&a.idempotents()[i], &a.idempotents()[j]).rows()
                        == b.sandwich(&b.idempotents()[perm[i]], &b.idempotents()[perm[j]]).rows()
            })
        });
        if !compatible {
            continue;
        }
        any_candidate = true;
        for attempt in 0..=settings.iso_attempts {
            let images: Vec<Element> = pa
                .arrows
                .iter()
                .enumerate()
                .map(|(k, (i, j, _))| {
                    let slot = &pb.slots[perm[*i]][perm[*j]];
                    if attempt == 0 {
                        // First try: match generators in order within a slot.
                        let rank = pa.arrows[..k]
                            .iter()
                            .filter(|(i2, j2, _)| i2 == i && j2 == j)
                            .count();
                        if rank < slot.rows() {
                            return slot.row_vec(rank);
                        }
                    }
                    let mut v = b.zero_element();
                    for row in slot.row_iter() {
                        let c = random_scalar(b.field(), &mut rng);
                        v = b.add(&v, &row.iter().map(|x| x.mul(&c)).collect::<Vec<_>>());
                    }
                    v
                })
                .collect();
            if let Some(map) = extend_to_homomorphism(a, b, &perm, &pa, &images)? {
                return Ok(Some(AlgebraIso { map, perm }));
            }
        }
    }
    if !any_candidate && a.is_split_basic() && b.is_split_basic() {
        return Ok(None);
    }
    Err(Error::SearchBudgetExceeded)
}

/// Extends idempotent and generator images multiplicatively; returns the map
/// when it is a well-defined, unital, bijective homomorphism.
fn extend_to_homomorphism(
    a: &Algebra,
    b: &Algebra,
    perm: &[usize],
    pa: &Peirce,
    images: &[Element],
) -> Result<Option<Matrix>> {
    let field = a.field();
    let dim = a.dim();
    let mut gens: Vec<(Element, Element)> = a
        .idempotents()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), b.idempotents()[perm[i]].clone()))
        .collect();
    gens.extend(pa.arrows.iter().map(|(_, _, x)| x.clone()).zip(images.iter().cloned()));
    let mut xs: Vec<Element> = Vec::new();
    let mut ys: Vec<Element> = Vec::new();
    let mut queue: Vec<(Element, Element)> = gens.clone();
    while let Some((x, y)) = queue.pop() {
        if Algebra::is_zero_element(&x) {
            if !Algebra::is_zero_element(&y) {
                return Ok(None);
            }
            continue;
        }
        if !xs.is_empty() {
            let xm = Matrix::from_row_vecs(field, dim, xs.clone())?;
            if let Some(lambda) = solve_left(&xm, &Matrix::row_vector(field, &x))? {
                let ym = Matrix::from_row_vecs(field, dim, ys.clone())?;
                if lambda.mul(&ym).row_vec(0) != y {
                    return Ok(None);
                }
                continue;
            }
        }
        xs.push(x.clone());
        ys.push(y.clone());
        for (gx, gy) in &gens {
            queue.push((a.mul(&x, gx), b.mul(&y, gy)));
        }
    }
    if xs.len() != dim {
        return Ok(None);
    }
    let xm = Matrix::from_row_vecs(field, dim, xs)?;
    let ym = Matrix::from_row_vecs(field, dim, ys)?;
    let xinv = Algebra::invert(&xm)?;
    let map = xinv.mul(&ym);
    if crate::linalg::inverse(&map).is_none() {
        return Ok(None);
    }
    if map.apply_row(a.unit()) != *b.unit() {
        return Ok(None);
    }
    for i in 0..dim {
        for j in 0..dim {
            let lhs = map.apply_row(&a.mul(&a.basis_element(i), &a.basis_element(j)));
            let rhs = b.mul(map.row(i), map.row(j));
            if lhs != rhs {
                return Ok(None);
            }
        }
    }
    Ok(Some(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, product_algebra, triangular_algebra, Bimodule, Quiver};
    use crate::linalg::Field;
    use std::sync::Arc;

    #[test]
    fn identity_iso() {
        let a = path_algebra(&Quiver::linear(3), &[], Field::Rational, 100).unwrap();
        let iso = algebra_iso(&a, &a, &Settings::default()).unwrap().unwrap();
        assert_eq!(iso.perm, vec![0, 1, 2]);
    }

    #[test]
    fn triangular_matches_a2() {
        let k = Arc::new(Algebra::ground_field(Field::Rational));
        let t = triangular_algebra(&k, &k, &Bimodule::regular(&k)).unwrap();
        let a2 = path_algebra(&Quiver::linear(2), &[], Field::Rational, 100).unwrap();
        assert!(algebra_iso(&t, &a2, &Settings::default()).unwrap().is_some());
    }

    #[test]
    fn kxk_is_not_dual_numbers() {
        let f = Field::Rational;
        let k = Algebra::ground_field(f);
        let kk = product_algebra(&k, &k).unwrap();
        let q = Quiver::new(vec!["1".into()]).arrow("x", 0, 0);
        let d = path_algebra(&q, &[vec![(f.one(), vec![0, 0])]], f, 100).unwrap();
        assert_eq!(algebra_iso(&kk, &d, &Settings::default()).unwrap(), None);
    }
}
