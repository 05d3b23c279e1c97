//! Hand-derived values, each also recomputed by the independent oracle in
//! `common`.

mod common;

use std::sync::Arc;

use serrecat::algebra::{
    algebra_iso, corner, examples, idempotent_ideal, path_algebra, product_algebra, regular_bimodules,
    Quiver,
};
use serrecat::functors::{compose, is_exact, FunctorExpr};
use serrecat::linalg::{image_basis, kernel_basis, solve, Field, Matrix};
use serrecat::modcat::{
    composition_factors, ext1, hom_space, is_isomorphic, kernel, projective, simples, Morphism,
};
use serrecat::recollement::{canonical_recollement, split_check};
use serrecat::torsion::TorsionPair;
use serrecat::Settings;

const Q: Field = Field::Rational;

#[test]
fn rank_kernel_image_and_solve() {
    let m = Matrix::from_ints(Q, &[&[1, 2], &[2, 4]]);
    assert_eq!(m.rank(), 1);
    assert_eq!(common::rank(&m), 1);
    assert_eq!(m.rref().pivot_columns, vec![0]);
    let k = kernel_basis(&m);
    assert_eq!(k.cols(), 1);
    assert!(m.mul(&k).is_zero());
    assert_eq!(k.get(0, 0), &Q.int(-2).mul(k.get(1, 0)));
    assert_eq!(image_basis(&m).cols(), 1);
    let x = solve(&Matrix::from_ints(Q, &[&[2]]), &Matrix::from_ints(Q, &[&[3]])).unwrap().unwrap();
    assert_eq!(x.get(0, 0), &Q.ratio(3, 2).unwrap());
}

#[test]
fn path_algebra_dimensions() {
    let a2 = examples::linear_a(2, Q).unwrap();
    assert_eq!(a2.dim(), common::path_count(2, &[(0, 1)]));
    assert_eq!(a2.labels(), &["e1", "e2", "a1"]);
    let a4 = examples::linear_a(4, Q).unwrap();
    assert_eq!(a4.dim(), common::path_count(4, &[(0, 1), (1, 2), (2, 3)]));
    assert_eq!(a4.dim(), 10);
    let lp = common::loop_algebra(Q);
    assert_eq!(lp.dim(), 2);
    let q = Quiver::new(vec!["1".into(), "2".into()]).arrow("a", 0, 1).arrow("b", 0, 1);
    let kron = path_algebra(&q, &[], Q, 100).unwrap();
    assert_eq!(kron.dim(), common::path_count(2, &[(0, 1), (0, 1)]));
}

#[test]
fn triangular_and_products() {
    let t2 = examples::t2(Q).unwrap();
    let a2 = examples::linear_a(2, Q).unwrap();
    assert_eq!(t2.dim(), 3);
    assert!(algebra_iso(&t2, &a2, &Settings::default()).unwrap().is_some());
    let p = product_algebra(&a2, &examples::ground(Q)).unwrap();
    assert_eq!((p.dim(), p.num_idempotents()), (4, 3));
    let kk = examples::k_times_k(Q).unwrap();
    assert!(algebra_iso(&kk, &common::loop_algebra(Q), &Settings::default()).unwrap().is_none());
}

#[test]
fn corners_ideals_and_regular_bimodules_of_a2() {
    let a = examples::linear_a(2, Q).unwrap();
    let [e1, e2] = [a.idempotents()[0].clone(), a.idempotents()[1].clone()];
    assert_eq!(corner(&a, &e2).unwrap().algebra.dim(), 1);
    assert_eq!(corner(&a, &e1).unwrap().algebra.dim(), 1);
    for e in [&e1, &e2] {
        let ideal = idempotent_ideal(&a, e).unwrap();
        assert_eq!(common::rank(&ideal), 2);
        let rb = regular_bimodules(&a, e).unwrap();
        assert_eq!(rb.bar_algebra.dim(), 1);
    }
    let rb = regular_bimodules(&a, &e2).unwrap();
    assert_eq!(rb.e_a.dim(), 1);
    assert_eq!(rb.a_e.dim(), 2);
}

#[test]
fn modules_over_a2() {
    let a = examples::linear_a(2, Q).unwrap();
    let s = simples(&a).unwrap();
    let p1 = projective(&a, 0).unwrap();
    assert_eq!(p1.dim(), 2);
    for (x, y, want) in [(&s[0], &s[1], 0), (&s[1], &s[1], 1), (&p1, &p1, 1)] {
        assert_eq!(hom_space(x, y).unwrap().dim(), want);
        assert_eq!(common::hom_dim(x, y), want);
    }
    // P1 -> S1 has kernel S2
    let to_top = hom_space(&p1, &s[0]).unwrap().morphism(0);
    let (k, _) = kernel(&to_top).unwrap();
    assert!(is_isomorphic(&k, &s[1], &Settings::default()).unwrap().is_some());
    assert_eq!(composition_factors(&p1).unwrap(), vec![1, 1]);
    assert_eq!((0..2).map(|i| common::multiplicity(&p1, i)).collect::<Vec<_>>(), vec![1, 1]);
    let d = [ext1(&s[0], &s[1]).unwrap().dim, ext1(&s[1], &s[0]).unwrap().dim];
    assert_eq!(d.iter().sum::<usize>(), 1);
    let sum = serrecat::modcat::direct_sum(&s[0], &s[1]).unwrap().module;
    assert!(is_isomorphic(&p1, &sum, &Settings::default()).unwrap().is_none());
}

#[test]
fn functors_at_e2_over_a2() {
    let a = examples::linear_a(2, Q).unwrap();
    let e2 = a.idempotents()[1].clone();
    let rb = regular_bimodules(&a, &e2).unwrap();
    let p1 = projective(&a, 0).unwrap();
    let s2_corner = simples(&rb.corner_algebra).unwrap().remove(0);
    let t = FunctorExpr::Tensor(rb.e_a.clone()).eval_obj(&s2_corner).unwrap();
    assert_eq!(t.dim(), 1);
    assert_eq!(common::tensor_dim(&s2_corner, &rb.e_a), 1);
    let h = FunctorExpr::Hom(rb.e_a.clone()).eval_obj(&p1).unwrap();
    assert_eq!(h.dim(), 1);
    assert_eq!(common::hom_from_bimodule_dim(&rb.e_a, &p1), 1);
    let q = FunctorExpr::Tensor(rb.a_e.clone());
    assert_eq!(q.eval_obj(&p1).unwrap().dim(), 1);
    assert_eq!(common::tensor_dim(&p1, &rb.a_e), 1);
    let jj = compose(&q, &FunctorExpr::Tensor(rb.e_a.clone())).unwrap();
    assert_eq!(jj.normal_form().unwrap().bimodule().dim(), 1);
    let ji = compose(&q, &FunctorExpr::Tensor(rb.abar_left.clone())).unwrap();
    assert!(ji.normal_form().unwrap().is_zero());
}

#[test]
fn recollements_and_torsion_over_small_algebras() {
    let st = Settings::default();
    let kk = examples::k_times_k(Q).unwrap();
    let rec = canonical_recollement(&kk, &kk.idempotents()[0].clone(), &st).unwrap();
    for (name, f) in rec.functors() {
        assert!(is_exact(f).unwrap().exact, "{name}");
    }
    assert!(split_check(&rec, &st).unwrap().split);
    let t2 = examples::t2(Q).unwrap();
    let rep = split_check(&canonical_recollement(&t2, &t2.idempotents()[1].clone(), &st).unwrap(), &st).unwrap();
    assert!(!rep.split);
    assert_eq!(rep.witness.as_ref().unwrap().0, "i^*");

    let a = examples::linear_a(2, Q).unwrap();
    let tp = TorsionPair::killed_by(&a, &a.idempotents()[0].clone()).unwrap();
    let p1 = projective(&a, 0).unwrap();
    let d = tp.t_decompose(&p1).unwrap();
    assert_eq!(d.dims(), [1, 2, 1]);
    assert_eq!(common::multiplicity(d.sub(), 1), 1);
    assert_eq!(common::multiplicity(d.sub(), 0), 0);
    let w = tp.strongly_hereditary_witness(&p1).unwrap();
    assert!(w.is_exact());
}

#[test]
fn morphisms_compose_like_matrices() {
    let a: Arc<_> = examples::linear_a(3, Q).unwrap();
    let p = projective(&a, 0).unwrap();
    let id = Morphism::identity(&p);
    assert_eq!(id.then(&id).unwrap(), id);
    assert_eq!(common::rank(id.matrix()), p.dim());
}
