//! Torsion pairs in `mod A`: t-decompositions, heredity tests, the
//! four-term sequence of a hereditary pair, TTF triples and the splitting
//! of a module along two adjacent torsion pairs.

use std::sync::Arc;

use crate::algebra::{regular_bimodules, same_algebra, Algebra, Element, IdemSet};
use crate::error::{Error, Result};
use crate::functors::{unit, Grade};
use crate::linalg::{inverse, left_kernel, row_space, Matrix};
use crate::modcat::{
    cokernel, composition_factors, direct_sum, ext1, hom_space, kernel, probes, simples, Module,
    Morphism, QuotientSpace, ShortExactSeq,
};

/// A class of modules.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassSpec {
    /// `{M : M AeA = 0}`.
    Killed(Element),
    /// `{M : M AeA = M}`.
    Full(Element),
    /// The torsion class generated by the listed modules.
    Generated(Vec<Module>),
    /// `{M : Hom(X, M) = 0 for every listed X}`.
    Perp(Vec<Module>),
}

impl ClassSpec {
    pub fn contains(&self, m: &Module) -> Result<bool> {
        match self {
            ClassSpec::Killed(e) => Ok(m.action_of(e).is_zero()),
            ClassSpec::Full(e) => Ok(ideal_part(m, e).rows() == m.dim()),
            ClassSpec::Generated(xs) => Ok(iterated_trace(m, xs)?.rows() == m.dim()),
            ClassSpec::Perp(xs) => {
                for x in xs {
                    if !hom_space(x, m)?.is_empty() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Rows spanning the largest submodule of `m` in the class, for the
    /// kinds that are torsion classes by construction.
    fn radical(&self, m: &Module) -> Result<Matrix> {
        match self {
            ClassSpec::Killed(e) => {
                // x AeA = 0 iff x a e = 0 for every basis element a
                let ae = m.action_of(e);
                let blocks: Vec<Matrix> = m.actions().iter().map(|a| a.mul(&ae)).collect();
                let stacked = blocks
                    .iter()
                    .skip(1)
                    .try_fold(blocks.first().cloned().unwrap_or_else(|| ae.clone()), |acc, b| acc.hstack(b))?;
                Ok(row_space(&left_kernel(&stacked)))
            }
            ClassSpec::Full(e) => Ok(ideal_part(m, e)),
            ClassSpec::Generated(xs) => iterated_trace(m, xs),
            ClassSpec::Perp(_) => Err(Error::NotATorsionPair(
                "a perpendicular class has no torsion radical here".into(),
            )),
        }
    }

    fn modules(&self) -> &[Module] {
        match self {
            ClassSpec::Generated(xs) | ClassSpec::Perp(xs) => xs,
            _ => &[],
        }
    }
}

/// `M (AeA)^k` iterated until it stabilises.
fn ideal_part(m: &Module, e: &[crate::linalg::Scalar]) -> Matrix {
    let ae = m.action_of(e);
    let mut span = Matrix::identity(m.field(), m.dim());
    loop {
        let next = m.generated_submodule_rows(&span.mul(&ae));
        if next.rows() == span.rows() {
            return span;
        }
        span = next;
    }
}

/// Sum of the images of all maps from `xs` into `m`, as spanning rows.
fn trace(m: &Module, xs: &[Module]) -> Result<Matrix> {
    let mut blocks = Vec::new();
    for x in xs {
        blocks.extend(hom_space(x, m)?.mats);
    }
    Ok(row_space(&Matrix::vstack_all(m.field(), m.dim(), &blocks)))
}

/// `t(M)` for the torsion class generated by `xs`: pull the trace back from
/// successive quotients. Each round strictly grows the submodule, so there
/// are at most `dim M` rounds.
fn iterated_trace(m: &Module, xs: &[Module]) -> Result<Matrix> {
    let mut span = Matrix::zeros(m.field(), 0, m.dim());
    loop {
        let q = QuotientSpace::new(m.field(), m.dim(), &span);
        let (quot, _) = m.quotient(&span)?;
        let tr = trace(&quot, xs)?;
        if tr.rows() == 0 {
            return Ok(span);
        }
        span = row_space(&span.vstack(&tr.mul(&q.lift()))?);
    }
}

/// A torsion pair `(T, F)`, verified on probes.
#[derive(Clone, Debug)]
pub struct TorsionPair {
    algebra: Arc<Algebra>,
    pub torsion: ClassSpec,
    pub torsionfree: ClassSpec,
}

impl TorsionPair {
    /// Checks `Hom(T, F) = 0` on probe pairs and that every probe has a
    /// t-decomposition with the right membership.
    pub fn new(a: &Arc<Algebra>, torsion: ClassSpec, torsionfree: ClassSpec) -> Result<TorsionPair> {
        for x in torsion.modules().iter().chain(torsionfree.modules()) {
            if !same_algebra(x.algebra(), a) {
                return Err(Error::AlgebraMismatch);
            }
        }
        let tp = TorsionPair {
            algebra: a.clone(),
            torsion,
            torsionfree,
        };
        let ps = probes(a)?;
        let mut ts = Vec::new();
        let mut fs = Vec::new();
        for p in &ps {
            tp.t_decompose(&p.module)?;
            if tp.torsion.contains(&p.module)? {
                ts.push(p);
            }
            if tp.torsionfree.contains(&p.module)? {
                fs.push(p);
            }
        }
        for t in &ts {
            for f in &fs {
                if !hom_space(&t.module, &f.module)?.is_empty() {
                    return Err(Error::NotATorsionPair(format!("Hom({}, {}) != 0", t.name, f.name)));
                }
            }
        }
        Ok(tp)
    }

    /// `({M : M AeA = M}, {M : M AeA = 0})`.
    pub fn from_idempotent(a: &Arc<Algebra>, e: &Element) -> Result<TorsionPair> {
        TorsionPair::new(a, ClassSpec::Full(e.clone()), ClassSpec::Killed(e.clone()))
    }

    /// `({M : M AeA = 0}, its right perpendicular)`.
    pub fn killed_by(a: &Arc<Algebra>, e: &Element) -> Result<TorsionPair> {
        let ss: Vec<Module> = simples(a)?
            .into_iter()
            .filter(|s| s.action_of(e).is_zero())
            .collect();
        TorsionPair::new(a, ClassSpec::Killed(e.clone()), ClassSpec::Perp(ss))
    }

    /// The torsion pair generated by `xs`.
    pub fn generated_by(a: &Arc<Algebra>, xs: Vec<Module>) -> Result<TorsionPair> {
        TorsionPair::new(a, ClassSpec::Generated(xs.clone()), ClassSpec::Perp(xs))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    /// `0 -> t(M) -> M -> M/t(M) -> 0`, with `t(M) in T` and `M/t(M) in F`
    /// verified.
    pub fn t_decompose(&self, m: &Module) -> Result<ShortExactSeq> {
        if !same_algebra(m.algebra(), &self.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let rows = self.torsion.radical(m)?;
        let (t, incl) = m.submodule(&rows)?;
        let (f, proj) = m.quotient(&rows)?;
        if !self.torsion.contains(&t)? {
            return Err(Error::NotATorsionPair("t(M) is not in the torsion class".into()));
        }
        if !self.torsionfree.contains(&f)? {
            return Err(Error::NotATorsionPair("M/t(M) is not in the torsionfree class".into()));
        }
        ShortExactSeq::new(incl, proj)
    }

    /// Closure of `T` under submodules.
    pub fn is_hereditary(&self) -> Result<Grade> {
        match &self.torsion {
            ClassSpec::Killed(_) => Ok(Grade::Certified),
            ClassSpec::Full(e) => match self.algebra.idempotent_support(e) {
                Ok(supp) => full_subclosure(&self.algebra, &supp),
                Err(_) => self.probe_subclosure(),
            },
            _ => self.probe_subclosure(),
        }
    }

    /// Closure of `F` under quotients.
    pub fn is_cohereditary(&self) -> Result<Grade> {
        match &self.torsionfree {
            ClassSpec::Killed(_) | ClassSpec::Full(_) => Ok(Grade::Certified),
            _ => {
                let ps = probes(&self.algebra)?;
                for m in &ps {
                    if !self.torsionfree.contains(&m.module)? {
                        continue;
                    }
                    for n in &ps {
                        for f in hom_space(&n.module, &m.module)?.morphisms() {
                            let (c, _) = cokernel(&f)?;
                            if !self.torsionfree.contains(&c)? {
                                return Ok(Grade::Failed(format!(
                                    "a quotient of {} by an image of {} leaves F",
                                    m.name, n.name
                                )));
                            }
                        }
                    }
                }
                Ok(Grade::Probed)
            }
        }
    }

    fn probe_subclosure(&self) -> Result<Grade> {
        let ps = probes(&self.algebra)?;
        for m in &ps {
            if !self.torsion.contains(&m.module)? {
                continue;
            }
            for n in &ps {
                for f in hom_space(&m.module, &n.module)?.morphisms() {
                    let (k, _) = kernel(&f)?;
                    if !self.torsion.contains(&k)? {
                        return Ok(Grade::Failed(format!(
                            "the kernel of a map {} -> {} leaves T",
                            m.name, n.name
                        )));
                    }
                }
            }
        }
        Ok(Grade::Probed)
    }

    /// Simples lying in `T`.
    pub fn torsion_simples(&self) -> Result<IdemSet> {
        let mut set = IdemSet::new();
        for (i, s) in simples(&self.algebra)?.iter().enumerate() {
            if self.torsion.contains(s)? {
                set.insert(i);
            }
        }
        Ok(set)
    }

    /// `0 -> B1 -> M -> C -> B2 -> 0` with `B1, B2 in T` and `C` having no
    /// maps or extensions from `T`, built as `M -> j_* j^* M` for the
    /// quotient by the Serre subcategory `T`.
    pub fn strongly_hereditary_witness(&self, m: &Module) -> Result<FourTermSeq> {
        if !self.is_hereditary()?.holds() {
            return Err(Error::HypothesisViolated("torsion class is not hereditary".into()));
        }
        let a = &self.algebra;
        let tset = self.torsion_simples()?;
        let complement: IdemSet = (0..a.num_idempotents()).filter(|i| !tset.contains(i)).collect();
        let e = a.idempotent_sum(&complement)?;
        let rb = regular_bimodules(a, &e)?;
        let zeta = unit(&rb.a_e, m)?;
        let (b1, b1_incl) = kernel(&zeta)?;
        let (b2, coker) = cokernel(&zeta)?;
        let t = self.torsion.radical(m)?;
        if row_space(b1_incl.matrix()) != t {
            return Err(Error::HypothesisViolated("kernel of the unit differs from t(M)".into()));
        }
        for b in [&b1, &b2] {
            if !self.torsion.contains(b)? {
                return Err(Error::CertificationFailed("outer term is not torsion".into()));
            }
        }
        let c = zeta.target().clone();
        let mut checks = 0;
        for p in probes(a)? {
            if !self.torsion.contains(&p.module)? {
                continue;
            }
            if !hom_space(&p.module, &c)?.is_empty() {
                return Err(Error::CertificationFailed(format!("Hom({}, C) != 0", p.name)));
            }
            if ext1(&p.module, &c)?.dim != 0 {
                return Err(Error::CertificationFailed(format!("Ext1({}, C) != 0", p.name)));
            }
            checks += 1;
        }
        Ok(FourTermSeq {
            b1_incl,
            zeta,
            coker,
            probe_checks: checks,
        })
    }
}

/// `Full(e)` with `e` the idempotent over `supp` is closed under submodules
/// iff every composition factor of `e_j A`, `j in supp`, is indexed in
/// `supp`. A failure is witnessed by `e_j A e_k A`, whose top is `S_k`.
fn full_subclosure(a: &Arc<Algebra>, supp: &IdemSet) -> Result<Grade> {
    for &j in supp {
        let p = crate::modcat::projective(a, j)?;
        for (k, &c) in composition_factors(&p)?.iter().enumerate() {
            if c > 0 && !supp.contains(&k) {
                let rows = p.generated_submodule_rows(&p.action_of(&a.idempotents()[k]));
                return Ok(Grade::Failed(format!(
                    "P{j} has a submodule of dim {} with top S{k}",
                    rows.rows()
                )));
            }
        }
    }
    Ok(Grade::Certified)
}

/// An exact sequence `0 -> B1 -> M -> C -> B2 -> 0`.
#[derive(Clone, Debug)]
pub struct FourTermSeq {
    pub b1_incl: Morphism,
    pub zeta: Morphism,
    pub coker: Morphism,
    /// Torsion probes `X` checked for `Hom(X, C) = 0 = Ext1(X, C)`.
    pub probe_checks: usize,
}

impl FourTermSeq {
    pub fn dims(&self) -> [usize; 4] {
        [
            self.b1_incl.source().dim(),
            self.zeta.source().dim(),
            self.zeta.target().dim(),
            self.coker.target().dim(),
        ]
    }

    pub fn is_exact(&self) -> bool {
        let (f, g, h) = (self.b1_incl.matrix(), self.zeta.matrix(), self.coker.matrix());
        f.rank() == f.rows()
            && h.rank() == h.cols()
            && f.mul(g).is_zero()
            && g.mul(h).is_zero()
            && f.rank() + g.rank() == g.rows()
            && g.rank() + h.rank() == h.rows()
    }
}

/// `(T, G, F)` with `(T, G)` and `(G, F)` torsion pairs.
#[derive(Clone, Debug)]
pub struct TtfTriple {
    pub left: TorsionPair,
    pub right: TorsionPair,
}

/// For `I = AeA`: `T = {M : MI = M}`, `G = {M : MI = 0}`, `F = G^perp`.
pub fn ttf_triple(a: &Arc<Algebra>, e: &Element) -> Result<TtfTriple> {
    Ok(TtfTriple {
        left: TorsionPair::from_idempotent(a, e)?,
        right: TorsionPair::killed_by(a, e)?,
    })
}

/// The splitting `M = M_U (+) M^V` along torsion pairs `(U, V)`, `(V, W)`.
#[derive(Clone, Debug)]
pub struct Split {
    pub m_u: Module,
    pub m_v: Module,
    /// `M_U (+) M^V -> M`.
    pub iso: Morphism,
    /// `U = W` checked on this many probes.
    pub u_equals_w_checks: usize,
}

pub fn lemma34_split(up: &TorsionPair, vp: &TorsionPair, m: &Module) -> Result<Split> {
    let a = up.algebra();
    if !same_algebra(a, vp.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let ps = probes(a)?;
    if up.torsionfree != vp.torsion {
        for p in &ps {
            if up.torsionfree.contains(&p.module)? != vp.torsion.contains(&p.module)? {
                return Err(Error::HypothesisViolated(format!("the two V classes differ at {}", p.name)));
            }
        }
    }
    if let Grade::Failed(w) = up.is_hereditary()? {
        return Err(Error::HypothesisViolated(format!("U is not closed under submodules: {w}")));
    }
    if let Grade::Failed(w) = vp.is_cohereditary()? {
        return Err(Error::HypothesisViolated(format!("W is not closed under quotients: {w}")));
    }
    let mut checks = 0;
    for p in &ps {
        if up.torsion.contains(&p.module)? != vp.torsionfree.contains(&p.module)? {
            return Err(Error::HypothesisViolated(format!("U != W at {}", p.name)));
        }
        checks += 1;
    }
    let du = up.t_decompose(m)?;
    let dv = vp.t_decompose(m)?;
    // M_V -> M -> M^V
    let through = dv.mono.matrix().mul(du.epi.matrix());
    let inv = inverse(&through).ok_or_else(|| {
        Error::SplitLiftFailed(format!(
            "M_V (dim {}) -> M -> M^V (dim {}) is not invertible",
            dv.sub().dim(),
            du.quot().dim()
        ))
    })?;
    let section = inv.mul(dv.mono.matrix());
    let sum = direct_sum(du.sub(), du.quot())?;
    let mat = du.mono.matrix().vstack(&section)?;
    let iso = Morphism::new(sum.module, m.clone(), mat)?;
    if !iso.is_iso() {
        return Err(Error::SplitLiftFailed("M_U (+) M^V -> M is not invertible".into()));
    }
    Ok(Split {
        m_u: du.sub().clone(),
        m_v: du.quot().clone(),
        iso,
        u_equals_w_checks: checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::examples::{k_times_k, linear_a, t2};
    use crate::linalg::Field;
    use crate::modcat::{is_isomorphic, probe_sequences, projective};
    use crate::settings::Settings;

    fn eps(a: &Arc<Algebra>, i: usize) -> Element {
        a.idempotents()[i].clone()
    }

    fn iso(m: &Module, n: &Module) -> bool {
        is_isomorphic(m, n, &Settings::default()).unwrap().is_some()
    }

    #[test]
    fn t_decomposition_of_p1() {
        let a = linear_a(2, Field::Rational).unwrap();
        let tp = TorsionPair::killed_by(&a, &eps(&a, 0)).unwrap();
        let p1 = projective(&a, 0).unwrap();
        let d = tp.t_decompose(&p1).unwrap();
        let s = simples(&a).unwrap();
        assert!(iso(d.sub(), &s[1]));
        assert!(iso(d.quot(), &s[0]));
        // brute force: vectors of P1 killed by every a e1
        let brute = {
            let ae: Vec<Matrix> = p1.actions().iter().map(|x| x.mul(&p1.action_of(&eps(&a, 0)))).collect();
            let mut k = Matrix::identity(Field::Rational, p1.dim());
            for m in ae {
                let keep = row_space(&left_kernel(&k.mul(&m)));
                k = if keep.rows() == 0 { Matrix::zeros(Field::Rational, 0, p1.dim()) } else { row_space(&keep.mul(&k)) };
            }
            k
        };
        assert_eq!(row_space(d.mono.matrix()), brute);
    }

    #[test]
    fn trivial_decompositions() {
        let a = linear_a(3, Field::Rational).unwrap();
        let tp = TorsionPair::from_idempotent(&a, &eps(&a, 1)).unwrap();
        for p in probes(&a).unwrap() {
            let d = tp.t_decompose(&p.module).unwrap();
            if tp.torsion.contains(&p.module).unwrap() {
                assert_eq!(d.sub().dim(), p.module.dim());
            }
            if tp.torsionfree.contains(&p.module).unwrap() {
                assert_eq!(d.sub().dim(), 0);
            }
        }
    }

    #[test]
    fn generated_pairs_match_idempotent_pairs() {
        let a = linear_a(3, Field::Rational).unwrap();
        let e = eps(&a, 1);
        let idem = TorsionPair::from_idempotent(&a, &e).unwrap();
        let gen = TorsionPair::generated_by(&a, vec![projective(&a, 1).unwrap()]).unwrap();
        for p in probes(&a).unwrap() {
            assert_eq!(idem.torsion.contains(&p.module).unwrap(), gen.torsion.contains(&p.module).unwrap(), "{}", p.name);
            let x = idem.t_decompose(&p.module).unwrap();
            let y = gen.t_decompose(&p.module).unwrap();
            assert_eq!(row_space(x.mono.matrix()), row_space(y.mono.matrix()));
        }
    }

    #[test]
    fn generated_class_needs_iteration() {
        // T(S3) over A3 contains only S3-filtered modules, while the class
        // generated by S2 and S3 is closed under extensions
        let a = linear_a(3, Field::Rational).unwrap();
        let s = simples(&a).unwrap();
        let tp = TorsionPair::generated_by(&a, vec![s[1].clone(), s[2].clone()]).unwrap();
        let p2 = projective(&a, 1).unwrap();
        assert!(tp.torsion.contains(&p2).unwrap());
        assert_eq!(iterated_trace(&p2, &[s[1].clone()]).unwrap().rows(), 0);
        assert_eq!(trace(&p2, &[s[2].clone()]).unwrap().rows(), 1);
    }

    #[test]
    fn heredity_verdicts() {
        let a = linear_a(2, Field::Rational).unwrap();
        let killed = TorsionPair::killed_by(&a, &eps(&a, 0)).unwrap();
        assert_eq!(killed.is_hereditary().unwrap(), Grade::Certified);
        let full = TorsionPair::from_idempotent(&a, &eps(&a, 0)).unwrap();
        assert_eq!(full.is_cohereditary().unwrap(), Grade::Certified);
        // Gen(P1) contains P1 but not its submodule S2
        assert!(!full.is_hereditary().unwrap().holds());
        let full2 = TorsionPair::from_idempotent(&a, &eps(&a, 1)).unwrap();
        assert_eq!(full2.is_hereditary().unwrap(), Grade::Certified);
        let gen = TorsionPair::generated_by(&a, vec![projective(&a, 0).unwrap()]).unwrap();
        assert!(!gen.is_hereditary().unwrap().holds());
    }

    #[test]
    fn probe_heredity_agrees_with_exact_test() {
        for a in [linear_a(3, Field::Rational).unwrap(), t2(Field::Prime(3)).unwrap()] {
            for i in 0..a.num_idempotents() {
                let tp = TorsionPair::from_idempotent(&a, &eps(&a, i)).unwrap();
                let exact = tp.is_hereditary().unwrap().holds();
                assert_eq!(exact, tp.probe_subclosure().unwrap().holds());
            }
        }
    }

    #[test]
    fn dickson_closure_on_probe_sequences() {
        let a = linear_a(3, Field::Rational).unwrap();
        for i in 0..3 {
            for spec in [ClassSpec::Killed(eps(&a, i)), ClassSpec::Full(eps(&a, i))] {
                for (label, ses) in probe_sequences(&a).unwrap() {
                    let [x, y, z] = [ses.sub(), ses.mid(), ses.quot()].map(|m| spec.contains(m).unwrap());
                    if y {
                        assert!(z, "{label}");
                    }
                    if x && z {
                        assert!(y, "{label}");
                    }
                }
            }
        }
    }

    #[test]
    fn t_is_functorial_on_probes() {
        let a = linear_a(3, Field::Rational).unwrap();
        let tp = TorsionPair::killed_by(&a, &eps(&a, 0)).unwrap();
        let ps = probes(&a).unwrap();
        for m in &ps {
            let dm = tp.t_decompose(&m.module).unwrap();
            for n in &ps {
                let dn = tp.t_decompose(&n.module).unwrap();
                for f in hom_space(&m.module, &n.module).unwrap().morphisms() {
                    let img = dm.mono.matrix().mul(f.matrix());
                    assert!(img.mul(dn.epi.matrix()).is_zero());
                }
            }
        }
    }

    #[test]
    fn hereditary_t_of_submodule_is_intersection() {
        let a = linear_a(3, Field::Rational).unwrap();
        let tp = TorsionPair::killed_by(&a, &eps(&a, 1)).unwrap();
        let ps = probes(&a).unwrap();
        for m in &ps {
            let tm = row_space(tp.t_decompose(&m.module).unwrap().mono.matrix());
            for n in &ps {
                for f in hom_space(&m.module, &n.module).unwrap().morphisms() {
                    let (k, incl) = kernel(&f).unwrap();
                    let tk = tp.t_decompose(&k).unwrap();
                    let inside = row_space(&tk.mono.matrix().mul(incl.matrix()));
                    let meet = crate::linalg::row_space_intersection(&row_space(incl.matrix()), &tm);
                    assert_eq!(inside, row_space(&meet));
                }
            }
        }
    }

    #[test]
    fn four_term_sequences() {
        let a = linear_a(2, Field::Rational).unwrap();
        let tp = TorsionPair::killed_by(&a, &eps(&a, 0)).unwrap();
        let s = simples(&a).unwrap();
        let p1 = projective(&a, 0).unwrap();
        let w = tp.strongly_hereditary_witness(&p1).unwrap();
        assert!(w.is_exact());
        assert_eq!(w.dims()[0], 1);
        assert!(w.probe_checks > 0);
        // j_* j^* P1 = Hom_{e1Ae1}(Ae1, P1 e1), computed by hand: it is the
        // injective hull of S1, which over kA2 is P1 itself
        assert!(iso(w.zeta.target(), &crate::modcat::injective(&a, 0).unwrap()));
        let w = tp.strongly_hereditary_witness(&s[1]).unwrap();
        assert_eq!(w.dims(), [1, 1, 0, 0]);
        let w = tp.strongly_hereditary_witness(&s[0]).unwrap();
        assert_eq!(w.dims()[0], 0);
        assert!(w.is_exact());
    }

    #[test]
    fn ttf_triples() {
        let a = linear_a(2, Field::Rational).unwrap();
        let t = ttf_triple(&a, &a.unit().clone()).unwrap();
        for p in probes(&a).unwrap() {
            assert!(t.left.torsion.contains(&p.module).unwrap());
            assert!(t.right.torsionfree.contains(&p.module).unwrap());
            assert!(!t.left.torsionfree.contains(&p.module).unwrap());
        }
        let t = ttf_triple(&a, &a.zero_element()).unwrap();
        for p in probes(&a).unwrap() {
            assert!(t.left.torsionfree.contains(&p.module).unwrap());
        }
        let t = ttf_triple(&a, &eps(&a, 1)).unwrap();
        let s = simples(&a).unwrap();
        let p1 = projective(&a, 0).unwrap();
        assert!(t.left.torsion.contains(&s[1]).unwrap());
        assert!(!t.left.torsion.contains(&p1).unwrap());
        assert!(t.left.torsionfree.contains(&s[0]).unwrap());
        assert!(t.right.torsionfree.contains(&p1).unwrap());
    }

    #[test]
    fn splitting_over_k_times_k() {
        let a = k_times_k(Field::Rational).unwrap();
        let u = ClassSpec::Killed(eps(&a, 1));
        let v = ClassSpec::Killed(eps(&a, 0));
        let up = TorsionPair::new(&a, u.clone(), v.clone()).unwrap();
        let vp = TorsionPair::new(&a, v, u).unwrap();
        let s = simples(&a).unwrap();
        let m = crate::modcat::direct_sum_all(&a, &[s[0].clone(), s[1].clone(), s[1].clone()]).unwrap();
        let sp = lemma34_split(&up, &vp, &m).unwrap();
        assert_eq!((sp.m_u.dim(), sp.m_v.dim()), (1, 2));
        let du = up.t_decompose(&m).unwrap();
        let sum = direct_sum(&sp.m_u, &sp.m_v).unwrap();
        assert_eq!(sum.inj[0].matrix().mul(sp.iso.matrix()), du.mono.matrix().clone());
        assert!(sum.inj[1].matrix().mul(sp.iso.matrix()).mul(du.epi.matrix()).is_identity());
        let sp = lemma34_split(&up, &vp, &s[0]).unwrap();
        assert_eq!(sp.m_v.dim(), 0);
    }

    #[test]
    fn splitting_requires_the_hypotheses() {
        let a = linear_a(2, Field::Rational).unwrap();
        let up = TorsionPair::killed_by(&a, &eps(&a, 0)).unwrap();
        let vp = TorsionPair::killed_by(&a, &eps(&a, 1)).unwrap();
        let p1 = projective(&a, 0).unwrap();
        assert!(matches!(
            lemma34_split(&up, &vp, &p1),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn bad_pair_is_rejected() {
        let a = linear_a(2, Field::Rational).unwrap();
        let all = ClassSpec::Killed(a.zero_element());
        assert!(matches!(
            TorsionPair::new(&a, all.clone(), all),
            Err(Error::NotATorsionPair(_))
        ));
    }
}
