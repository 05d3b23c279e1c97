//! Serre subcategories of `mod A`, presented by a set of simples.
//!
//! The subcategory with simple set `I` is `{M : M e = 0}` for
//! `e = sum of eps_j, j not in I`. It is `mod A/AeA` sitting inside `mod A`
//! by restriction, and the quotient category is `mod eAe`.

use std::sync::Arc;

use crate::algebra::{regular_bimodules, Algebra, Element, IdemSet, RegularBimodules};
use crate::error::{Error, Result};
use crate::functors::{compose, is_exact, is_fully_faithful, FunctorExpr, Grade};
use crate::linalg::Matrix;
use crate::modcat::{composition_factors, is_isomorphic, probe_sequences, probes, Module};
use crate::settings::Settings;

#[derive(Clone, Debug)]
pub struct SerreSubcat {
    algebra: Arc<Algebra>,
    simples: IdemSet,
    e: Element,
    bimodules: RegularBimodules,
}

impl SerreSubcat {
    /// The Serre subcategory whose simples are indexed by `set`. Checks
    /// exactly that the quotient functor is exact and kills the
    /// subcategory (`Abar (x)_A Ae = 0`).
    pub fn from_simples(a: &Arc<Algebra>, set: &IdemSet) -> Result<SerreSubcat> {
        let r = a.num_idempotents();
        if let Some(&bad) = set.iter().find(|&&i| i >= r) {
            return Err(Error::IndexOutOfRange(format!("simple {bad}")));
        }
        let complement: IdemSet = (0..r).filter(|i| !set.contains(i)).collect();
        let e = a.idempotent_sum(&complement)?;
        let bimodules = regular_bimodules(a, &e)?;
        let s = SerreSubcat {
            algebra: a.clone(),
            simples: set.clone(),
            e,
            bimodules,
        };
        if !is_exact(&s.quotient_functor())?.exact {
            return Err(Error::InternalInconsistency("quotient functor is not exact".into()));
        }
        let qi = compose(&s.quotient_functor(), &s.inclusion_functor())?;
        if !qi.normal_form().is_some_and(FunctorExpr::is_zero) {
            return Err(Error::InternalInconsistency("quotient functor does not kill the subcategory".into()));
        }
        Ok(s)
    }

    /// The smallest Serre subcategory containing `modules`.
    pub fn generated_by(a: &Arc<Algebra>, modules: &[Module]) -> Result<SerreSubcat> {
        let mut set = IdemSet::new();
        for m in modules {
            for (i, &c) in composition_factors(m)?.iter().enumerate() {
                if c > 0 {
                    set.insert(i);
                }
            }
        }
        SerreSubcat::from_simples(a, &set)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn simple_set(&self) -> &IdemSet {
        &self.simples
    }

    /// The complementary idempotent `e`.
    pub fn idempotent(&self) -> &Element {
        &self.e
    }

    pub fn bimodules(&self) -> &RegularBimodules {
        &self.bimodules
    }

    /// `A/AeA`, whose module category is the subcategory.
    pub fn sub_algebra(&self) -> &Arc<Algebra> {
        &self.bimodules.bar_algebra
    }

    /// `eAe`, whose module category is the quotient.
    pub fn quotient_algebra(&self) -> &Arc<Algebra> {
        &self.bimodules.corner_algebra
    }

    pub fn is_zero(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.simples.len() == self.algebra.num_idempotents()
    }

    /// `M` lies in the subcategory iff `M eps_j = 0` for every `j` outside it.
    pub fn contains(&self, m: &Module) -> Result<bool> {
        if !crate::algebra::same_algebra(m.algebra(), &self.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(m.action_of(&self.e).is_zero())
    }

    /// `i = - (x)_Abar Abar : mod A/AeA -> mod A`.
    pub fn inclusion_functor(&self) -> FunctorExpr {
        FunctorExpr::Tensor(self.bimodules.abar_left.clone())
    }

    /// `Q = - (x)_A Ae : mod A -> mod eAe`.
    pub fn quotient_functor(&self) -> FunctorExpr {
        FunctorExpr::Tensor(self.bimodules.a_e.clone())
    }

    /// A module of the subcategory as an `A/AeA`-module.
    pub fn restrict(&self, m: &Module) -> Result<Module> {
        if !self.contains(m)? {
            return Err(Error::InvalidModule("module is not in the Serre subcategory".into()));
        }
        restrict_along(&self.bimodules, m)
    }

    /// Probe checks: the two membership tests agree, the subcategory is
    /// closed on probe sequences, `Q` is exact on them, the inclusion is
    /// fully faithful and its image is the kernel of `Q`.
    pub fn verify(&self, settings: &Settings) -> Result<SerreReport> {
        let a = &self.algebra;
        let q = self.quotient_functor();
        let i = self.inclusion_functor();
        let mut report = SerreReport {
            membership_checks: 0,
            closure_checks: 0,
            kernel_checks: 0,
            inclusion_fully_faithful: is_fully_faithful(&i)?,
        };
        for p in probes(a)? {
            let by_factors = composition_factors(&p.module)?
                .iter()
                .enumerate()
                .all(|(j, &c)| c == 0 || self.simples.contains(&j));
            let direct = self.contains(&p.module)?;
            if by_factors != direct {
                return Err(Error::CertificationFailed(format!("membership tests disagree on {}", p.name)));
            }
            report.membership_checks += 1;
            let qm = q.eval_obj(&p.module)?;
            if qm.is_zero() != direct {
                return Err(Error::CertificationFailed(format!("Im i != Ker Q at {}", p.name)));
            }
            if direct {
                let pre = self.restrict(&p.module)?;
                let back = i.eval_obj(&pre)?;
                if is_isomorphic(&back, &p.module, settings)?.is_none() {
                    return Err(Error::CertificationFailed(format!("{} is not i of its restriction", p.name)));
                }
                report.kernel_checks += 1;
            }
        }
        for (label, ses) in probe_sequences(a)? {
            let [x, y, z] = [ses.sub(), ses.mid(), ses.quot()].map(|m| self.contains(m));
            let (x, y, z) = (x?, y?, z?);
            if y != (x && z) {
                return Err(Error::CertificationFailed(format!("closure fails on {label}")));
            }
            let w = crate::functors::image_sequence(&q, &ses)?;
            if !crate::modcat::is_short_exact(w.0.matrix(), w.1.matrix()) {
                return Err(Error::CertificationFailed(format!("Q is not exact on {label}")));
            }
            report.closure_checks += 1;
        }
        Ok(report)
    }
}

/// A module killed by `AeA` as a module over `A/AeA`, acting through the
/// lift of the quotient basis.
pub(crate) fn restrict_along(rb: &RegularBimodules, m: &Module) -> Result<Module> {
    let bar = &rb.bar_algebra;
    if bar.is_zero_ring() {
        return Ok(Module::zero(bar));
    }
    let action: Vec<Matrix> = match &rb.quotient {
        Some(q) => q.lift.row_iter().map(|row| m.action_of(row)).collect(),
        None => m.actions().to_vec(),
    };
    Module::new(bar.clone(), m.dim(), action)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreReport {
    pub membership_checks: usize,
    pub closure_checks: usize,
    pub kernel_checks: usize,
    pub inclusion_fully_faithful: Grade,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::examples::{linear_a, t2};
    use crate::linalg::Field;
    use crate::modcat::{projective, simples};

    fn set(xs: &[usize]) -> IdemSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn extreme_subcategories() {
        let a = linear_a(2, Field::Rational).unwrap();
        let zero = SerreSubcat::from_simples(&a, &set(&[])).unwrap();
        assert!(zero.is_zero());
        assert!(zero.sub_algebra().is_zero_ring());
        assert_eq!(zero.quotient_algebra().dim(), a.dim());
        assert!(zero.contains(&Module::zero(&a)).unwrap());
        assert!(!zero.contains(&projective(&a, 0).unwrap()).unwrap());
        let whole = SerreSubcat::from_simples(&a, &set(&[0, 1])).unwrap();
        assert!(whole.quotient_algebra().is_zero_ring());
        assert!(whole.contains(&Module::regular(&a)).unwrap());
        for s in [zero, whole] {
            s.verify(&Settings::default()).unwrap();
        }
    }

    #[test]
    fn a2_with_second_simple() {
        let a = linear_a(2, Field::Rational).unwrap();
        let s = SerreSubcat::from_simples(&a, &set(&[1])).unwrap();
        assert_eq!(s.idempotent(), &a.idempotents()[0]);
        assert_eq!(s.quotient_algebra().dim(), 1);
        assert_eq!(s.sub_algebra().dim(), 1);
        let simp = simples(&a).unwrap();
        assert!(s.contains(&simp[1]).unwrap());
        assert!(!s.contains(&projective(&a, 0).unwrap()).unwrap());
        let r = s.verify(&Settings::default()).unwrap();
        assert_eq!(r.inclusion_fully_faithful, Grade::Certified);
        assert!(r.kernel_checks > 0);
    }

    #[test]
    fn generated_subcategory() {
        let a = linear_a(3, Field::Rational).unwrap();
        let p = projective(&a, 1).unwrap();
        let s = SerreSubcat::generated_by(&a, &[p]).unwrap();
        assert_eq!(s.simple_set(), &set(&[1, 2]));
    }

    #[test]
    fn every_subcategory_of_small_algebras_verifies() {
        for a in [linear_a(3, Field::Rational).unwrap(), t2(Field::Prime(5)).unwrap()] {
            let r = a.num_idempotents();
            for mask in 0..(1usize << r) {
                let i: IdemSet = (0..r).filter(|k| mask & (1 << k) != 0).collect();
                let s = SerreSubcat::from_simples(&a, &i).unwrap();
                s.verify(&Settings::default()).unwrap();
            }
        }
    }

    #[test]
    fn bad_index() {
        let a = linear_a(2, Field::Rational).unwrap();
        assert!(matches!(
            SerreSubcat::from_simples(&a, &set(&[2])),
            Err(Error::IndexOutOfRange(_))
        ));
    }
}
