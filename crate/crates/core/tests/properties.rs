//! Invariants over random matrices, random module maps and the whole probe
//! battery.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use serrecat::algebra::{regular_bimodules, Algebra, Bimodule, IdemSet};
use serrecat::functors::FunctorExpr;
use serrecat::linalg::{image_basis, kernel_basis, left_kernel, Field, Matrix};
use serrecat::modcat::{
    cokernel, composition_factors, hom_module, hom_space, image, is_isomorphic, kernel, probe_sequences,
    probes, tensor_over, Module, Morphism,
};
use serrecat::serre::SerreSubcat;
use serrecat::typeclass::classify;
use serrecat::Settings;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(2)), Just(Field::Prime(5)), Just(Field::Prime(7))]
}

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (field_strategy(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(-3i64..4, r * c).prop_map(move |v| {
            let rows: Vec<Vec<_>> = v.chunks(c).map(|ch| ch.iter().map(|&x| f.int(x)).collect()).collect();
            Matrix::from_rows(f, rows).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rref_is_idempotent(m in matrix_strategy()) {
        let r = m.rref();
        let again = r.reduced.rref();
        prop_assert_eq!(&again.reduced, &r.reduced);
        prop_assert_eq!(again.pivot_columns, r.pivot_columns);
    }

    #[test]
    fn rank_bookkeeping(m in matrix_strategy()) {
        let r = m.rank();
        prop_assert_eq!(r, common::rank(&m));
        prop_assert_eq!(r + kernel_basis(&m).cols(), m.cols());
        prop_assert_eq!(r + left_kernel(&m).rows(), m.rows());
        prop_assert_eq!(image_basis(&m).cols(), r);
        prop_assert!(m.mul(&kernel_basis(&m)).is_zero());
    }

    #[test]
    fn kernel_and_cokernel_ranks_of_module_maps(
        alg in 0usize..8,
        src in 0usize..64,
        tgt in 0usize..64,
        coeffs in prop::collection::vec(-2i64..3, 16),
    ) {
        let (_, a) = &common::battery()[alg];
        let ps = probes(a).unwrap();
        let m = &ps[src % ps.len()].module;
        let n = &ps[tgt % ps.len()].module;
        let h = hom_space(m, n).unwrap();
        prop_assume!(!h.is_empty());
        let t: Vec<_> = (0..h.dim()).map(|k| a.field().int(coeffs[k % coeffs.len()])).collect();
        let f = Morphism::new(m.clone(), n.clone(), h.combine(&t)).unwrap();
        let rank = f.rank();
        prop_assert_eq!(rank, common::rank(f.matrix()));
        let (k, incl) = kernel(&f).unwrap();
        let (c, proj) = cokernel(&f).unwrap();
        let (im, _, _) = image(&f).unwrap();
        prop_assert_eq!(k.dim() + rank, m.dim());
        prop_assert_eq!(c.dim() + rank, n.dim());
        prop_assert_eq!(im.dim(), rank);
        prop_assert!(incl.then(&f).unwrap().is_zero());
        prop_assert!(f.then(&proj).unwrap().is_zero());
        prop_assert!(incl.is_mono() && proj.is_epi());
    }
}

#[test]
fn composition_factors_are_additive_on_probe_sequences() {
    let mut checked = 0;
    for (name, a) in common::battery() {
        for (label, ses) in probe_sequences(&a).unwrap() {
            let [x, y, z] = [ses.sub(), ses.mid(), ses.quot()].map(|m| composition_factors(m).unwrap());
            for i in 0..a.num_idempotents() {
                assert_eq!(y[i], x[i] + z[i], "{name}: {label} at simple {i}");
                assert_eq!(y[i], common::multiplicity(ses.mid(), i), "{name}: {label}");
            }
            checked += 1;
        }
    }
    assert!(checked > 50);
}

/// Every bimodule the recollement constructions produce over the battery,
/// plus the regular bimodule.
fn system_bimodules(a: &Arc<Algebra>) -> Vec<Bimodule> {
    let mut out = vec![Bimodule::regular(a)];
    let r = a.num_idempotents();
    for mask in 1..(1usize << r) {
        let set: IdemSet = (0..r).filter(|k| mask & (1 << k) != 0).collect();
        let rb = regular_bimodules(a, &a.idempotent_sum(&set).unwrap()).unwrap();
        out.extend([rb.e_a, rb.a_e, rb.abar_left, rb.abar_right]);
    }
    out.retain(|b| !b.left_algebra().is_zero_ring() && !b.right_algebra().is_zero_ring());
    out
}

fn probe_modules(a: &Arc<Algebra>) -> Vec<Module> {
    probes(a).unwrap().into_iter().map(|p| p.module).collect()
}

#[test]
fn tensor_hom_adjunction_dimensions() {
    let mut pairs = 0;
    for (name, a) in common::battery() {
        for b in system_bimodules(&a) {
            let left = probe_modules(b.left_algebra());
            let right = probe_modules(b.right_algebra());
            let tensored: Vec<Module> = left.iter().map(|m| tensor_over(m, &b).unwrap().module).collect();
            let homs: Vec<Module> = right.iter().map(|n| hom_module(&b, n).unwrap().module).collect();
            for (m, mb) in left.iter().zip(&tensored) {
                assert_eq!(mb.dim(), common::tensor_dim(m, &b), "{name}");
                for (n, hb) in right.iter().zip(&homs) {
                    let lhs = hom_space(mb, n).unwrap().dim();
                    let rhs = hom_space(m, hb).unwrap().dim();
                    assert_eq!(lhs, rhs, "{name}: Hom(M (x) B, N) vs Hom(M, Hom(B, N))");
                    pairs += 1;
                }
            }
            for (n, hb) in right.iter().zip(&homs) {
                assert_eq!(hb.dim(), common::hom_from_bimodule_dim(&b, n), "{name}");
            }
        }
    }
    assert!(pairs > 1000, "{pairs}");
}

#[test]
fn functor_values_match_oracle_on_probes() {
    for (name, a) in common::battery().into_iter().take(3) {
        for b in system_bimodules(&a) {
            for m in probe_modules(b.left_algebra()) {
                let v = FunctorExpr::Tensor(b.clone()).eval_obj(&m).unwrap();
                assert_eq!(v.dim(), common::tensor_dim(&m, &b), "{name}");
            }
        }
    }
}

#[test]
fn hom_dimensions_match_oracle() {
    for (name, a) in common::battery() {
        let ps = probe_modules(&a);
        for m in &ps {
            for n in &ps {
                assert_eq!(hom_space(m, n).unwrap().dim(), common::hom_dim(m, n), "{name}");
            }
        }
    }
}

#[test]
fn seeded_searches_are_deterministic() {
    for (_, a) in common::battery().into_iter().filter(|(_, a)| a.dim() <= 6) {
        let st = Settings::with_seed(17);
        let ps = probe_modules(&a);
        for m in &ps {
            let x = is_isomorphic(m, m, &st).unwrap().map(|f| f.matrix().clone());
            let y = is_isomorphic(m, m, &st).unwrap().map(|f| f.matrix().clone());
            assert_eq!(x, y);
        }
        let r = a.num_idempotents();
        for mask in 0..(1usize << r) {
            let set: IdemSet = (0..r).filter(|k| mask & (1 << k) != 0).collect();
            let s = SerreSubcat::from_simples(&a, &set).unwrap();
            let t1 = classify(&s, &st).unwrap();
            let t2 = classify(&s, &st).unwrap();
            assert_eq!(t1.label(), t2.label());
            assert_eq!(t1.certificates, t2.certificates);
            let sig = |c: &[FunctorExpr]| c.iter().map(|f| f.signature()).collect::<Vec<_>>();
            assert_eq!(sig(&t1.f_chain), sig(&t2.f_chain));
        }
    }
}
