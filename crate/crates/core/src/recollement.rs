//! Recollements of module categories induced by an idempotent, their axiom
//! checks, the diagnostic batteries for right and left recollements, the
//! adjoints recovered from a unit or counit, the extension of a left
//! recollement, and the split test.
//!
//! Every bundle here is induced by an idempotent `e` of `A`, with
//! `B = mod A/AeA` and `C = mod eAe`. Functor naming: `i_pull = i^*`,
//! `i_push = i_*`, `i_shriek = i^!`, `j_shriek = j_!`, `j_pull = j^*`,
//! `j_push = j_*`.

use std::sync::Arc;

use crate::algebra::{regular_bimodules, Algebra, Element, IdemSet, RegularBimodules};
use crate::error::{Error, Result};
use crate::functors::{
    certify_pair, compose, counit, is_exact, is_fully_faithful, left_adjoint, natural_iso,
    probe_modules, right_adjoint, unit, FunctorExpr, Grade, NatIso, SesWitness,
};
use crate::modcat::{
    cokernel, direct_sum, ext1, hom_space, is_isomorphic, kernel, probes, simples, Module, Morphism,
};
use crate::serre::restrict_along;
use crate::settings::Settings;
use crate::torsion::{ClassSpec, TorsionPair};

#[derive(Clone, Debug)]
pub struct RightRecollement {
    pub e: Element,
    pub bimodules: RegularBimodules,
    pub i_push: FunctorExpr,
    pub i_shriek: FunctorExpr,
    pub j_pull: FunctorExpr,
    pub j_push: FunctorExpr,
}

#[derive(Clone, Debug)]
pub struct LeftRecollement {
    pub e: Element,
    pub bimodules: RegularBimodules,
    pub i_pull: FunctorExpr,
    pub i_push: FunctorExpr,
    pub j_shriek: FunctorExpr,
    pub j_pull: FunctorExpr,
}

/// Adjoints one step beyond the six functors, where they exist.
#[derive(Clone, Debug, Default)]
pub struct Ladder {
    /// Left adjoint of `i^*`.
    pub i_plus2: Option<FunctorExpr>,
    /// Right adjoint of `i^!`.
    pub i_minus2: Option<FunctorExpr>,
    /// Left adjoint of `j_!`.
    pub j_plus2: Option<FunctorExpr>,
    /// Right adjoint of `j_*`.
    pub j_minus2: Option<FunctorExpr>,
}

#[derive(Clone, Debug)]
pub struct Recollement {
    pub e: Element,
    pub bimodules: RegularBimodules,
    pub i_pull: FunctorExpr,
    pub i_push: FunctorExpr,
    pub i_shriek: FunctorExpr,
    pub j_shriek: FunctorExpr,
    pub j_pull: FunctorExpr,
    pub j_push: FunctorExpr,
    pub ladder: Ladder,
}

impl Recollement {
    pub fn left(&self) -> LeftRecollement {
        LeftRecollement {
            e: self.e.clone(),
            bimodules: self.bimodules.clone(),
            i_pull: self.i_pull.clone(),
            i_push: self.i_push.clone(),
            j_shriek: self.j_shriek.clone(),
            j_pull: self.j_pull.clone(),
        }
    }

    pub fn right(&self) -> RightRecollement {
        RightRecollement {
            e: self.e.clone(),
            bimodules: self.bimodules.clone(),
            i_push: self.i_push.clone(),
            i_shriek: self.i_shriek.clone(),
            j_pull: self.j_pull.clone(),
            j_push: self.j_push.clone(),
        }
    }

    pub fn middle(&self) -> &Arc<Algebra> {
        self.i_push.target()
    }

    /// The six functors with their conventional names.
    pub fn functors(&self) -> [(&'static str, &FunctorExpr); 6] {
        [
            ("i^*", &self.i_pull),
            ("i_*", &self.i_push),
            ("i^!", &self.i_shriek),
            ("j_!", &self.j_shriek),
            ("j^*", &self.j_pull),
            ("j_*", &self.j_push),
        ]
    }
}

/// The recollement `(mod A/AeA, mod A, mod eAe)`:
/// `i^* = - (x)_A Abar`, `i_* = - (x)_Abar Abar`, `i^! = Hom_A(Abar, -)`,
/// `j_! = - (x)_eAe eA`, `j^* = - (x)_A Ae`, `j_* = Hom_eAe(Ae, -)`.
/// All axioms are verified before returning.
pub fn canonical_recollement(a: &Arc<Algebra>, e: &Element, settings: &Settings) -> Result<Recollement> {
    let rb = regular_bimodules(a, e)?;
    let i_shriek = FunctorExpr::Hom(rb.abar_left.clone());
    let j_push = FunctorExpr::Hom(rb.a_e.clone());
    let i_pull = FunctorExpr::Tensor(rb.abar_right.clone());
    let j_shriek = FunctorExpr::Tensor(rb.e_a.clone());
    let ladder = Ladder {
        i_plus2: left_adjoint(&i_pull)?.map(|s| s.functor),
        i_minus2: right_adjoint(&i_shriek)?.map(|s| s.functor),
        j_plus2: left_adjoint(&j_shriek)?.map(|s| s.functor),
        j_minus2: right_adjoint(&j_push)?.map(|s| s.functor),
    };
    let rec = Recollement {
        e: e.clone(),
        i_pull,
        i_push: FunctorExpr::Tensor(rb.abar_left.clone()),
        i_shriek,
        j_shriek,
        j_pull: FunctorExpr::Tensor(rb.a_e.clone()),
        j_push,
        ladder,
        bimodules: rb,
    };
    let report = verify_recollement(&rec, settings)?;
    if let Some(bad) = report.failures().first() {
        return Err(Error::CertificationFailed(format!("{}: {}", bad.name, bad.grade_detail())));
    }
    Ok(rec)
}

/// Recollement at the complement of a set of simples, so that `B` is the
/// Serre subcategory with those simples.
pub fn recollement_at_simples(a: &Arc<Algebra>, set: &IdemSet, settings: &Settings) -> Result<Recollement> {
    let complement: IdemSet = (0..a.num_idempotents()).filter(|i| !set.contains(i)).collect();
    canonical_recollement(a, &a.idempotent_sum(&complement)?, settings)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub name: String,
    pub grade: Grade,
}

impl Axiom {
    pub fn grade_detail(&self) -> String {
        match &self.grade {
            Grade::Failed(w) => w.clone(),
            g => g.label().to_string(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub axioms: Vec<Axiom>,
}

impl AxiomReport {
    fn push(&mut self, name: &str, grade: Grade) {
        self.axioms.push(Axiom {
            name: name.to_string(),
            grade,
        });
    }

    pub fn holds(&self) -> bool {
        self.axioms.iter().all(|a| a.grade.holds())
    }

    pub fn failures(&self) -> Vec<&Axiom> {
        self.axioms.iter().filter(|a| !a.grade.holds()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Grade> {
        self.axioms.iter().find(|a| a.name == name).map(|a| &a.grade)
    }
}

fn exact_grade(f: &FunctorExpr) -> Result<Grade> {
    let v = is_exact(f)?;
    Ok(match v.witness {
        None => Grade::Certified,
        Some(w) => Grade::Failed(describe_witness(&w)),
    })
}

pub fn describe_witness(w: &SesWitness) -> String {
    format!(
        "{}: {:?} maps to {:?}, which is not short exact",
        w.label, w.dims, w.image_dims
    )
}

/// `l -| r`: the Hom bijection on probe pairs, and `r` naturally
/// isomorphic to the canonical right adjoint of `l` (or `l` to the
/// canonical left adjoint of `r`).
fn adjunction_grade(l: &FunctorExpr, r: &FunctorExpr, settings: &Settings) -> Result<Grade> {
    if !crate::algebra::same_algebra(l.target(), r.source()) || !crate::algebra::same_algebra(r.target(), l.source()) {
        return Ok(Grade::Failed("the functors do not form a pair of opposite directions".into()));
    }
    match certify_pair(l, r) {
        Ok(_) => {}
        Err(Error::CertificationFailed(w)) => return Ok(Grade::Failed(w)),
        Err(e) => return Err(e),
    }
    let (canonical, given, side) = match right_adjoint(l)? {
        Some(step) => (step.functor, r, "right adjoint of the left functor"),
        None => match left_adjoint(r)? {
            Some(step) => (step.functor, l, "left adjoint of the right functor"),
            None => return Ok(Grade::Probed),
        },
    };
    Ok(match natural_iso(&canonical, given, settings)? {
        Some(n) => n.grade,
        None => Grade::Failed(format!(
            "not isomorphic to the {side}, so no unit and counit satisfy the triangle identities"
        )),
    })
}

fn zero_on_probes(g: &FunctorExpr, f: &FunctorExpr) -> Result<Grade> {
    let c = compose(g, f)?;
    for m in probe_modules(f.source())? {
        let x = c.eval_obj(&m)?;
        if !x.is_zero() {
            return Ok(Grade::Failed(format!("nonzero value of dim {} on a probe of dim {}", x.dim(), m.dim())));
        }
    }
    Ok(if c.normal_form().is_some_and(FunctorExpr::is_zero) {
        Grade::Certified
    } else {
        Grade::Probed
    })
}

/// `Im i_* = Ker j^*`: `j^* i_*` vanishes, and each probe killed by `j^*`
/// is `i_*` of its restriction to `A/AeA`.
fn image_is_kernel(
    i_push: &FunctorExpr,
    j_pull: &FunctorExpr,
    rb: &RegularBimodules,
    settings: &Settings,
) -> Result<Grade> {
    let mut grade = zero_on_probes(j_pull, i_push)?;
    if !grade.holds() {
        return Ok(grade);
    }
    for p in probes(i_push.target())? {
        if !j_pull.eval_obj(&p.module)?.is_zero() {
            continue;
        }
        let pre = match restrict_along(rb, &p.module) {
            Ok(m) => m,
            Err(Error::InvalidModule(w)) => {
                return Ok(Grade::Failed(format!("{} has no preimage: {w}", p.name)));
            }
            Err(e) => return Err(e),
        };
        if is_isomorphic(&i_push.eval_obj(&pre)?, &p.module, settings)?.is_none() {
            grade = Grade::Failed(format!("{} is killed by j^* but is not in the image of i_*", p.name));
            break;
        }
    }
    Ok(grade)
}

pub fn verify_right_recollement(r: &RightRecollement, settings: &Settings) -> Result<AxiomReport> {
    let mut rep = AxiomReport::default();
    rep.push("i_* exact", exact_grade(&r.i_push)?);
    rep.push("j^* exact", exact_grade(&r.j_pull)?);
    rep.push("i_* fully faithful", is_fully_faithful(&r.i_push)?);
    rep.push("j_* fully faithful", is_fully_faithful(&r.j_push)?);
    rep.push("(i_*, i^!) adjoint", adjunction_grade(&r.i_push, &r.i_shriek, settings)?);
    rep.push("(j^*, j_*) adjoint", adjunction_grade(&r.j_pull, &r.j_push, settings)?);
    rep.push("Im i_* = Ker j^*", image_is_kernel(&r.i_push, &r.j_pull, &r.bimodules, settings)?);
    if rep.holds() {
        rep.push("i^! j_* = 0", zero_on_probes(&r.i_shriek, &r.j_push)?);
    }
    Ok(rep)
}

pub fn verify_left_recollement(l: &LeftRecollement, settings: &Settings) -> Result<AxiomReport> {
    let mut rep = AxiomReport::default();
    rep.push("i_* exact", exact_grade(&l.i_push)?);
    rep.push("j^* exact", exact_grade(&l.j_pull)?);
    rep.push("i_* fully faithful", is_fully_faithful(&l.i_push)?);
    rep.push("j_! fully faithful", is_fully_faithful(&l.j_shriek)?);
    rep.push("(i^*, i_*) adjoint", adjunction_grade(&l.i_pull, &l.i_push, settings)?);
    rep.push("(j_!, j^*) adjoint", adjunction_grade(&l.j_shriek, &l.j_pull, settings)?);
    rep.push("Im i_* = Ker j^*", image_is_kernel(&l.i_push, &l.j_pull, &l.bimodules, settings)?);
    if rep.holds() {
        rep.push("i^* j_! = 0", zero_on_probes(&l.i_pull, &l.j_shriek)?);
    }
    Ok(rep)
}

/// Both halves, plus the identification `j^* = Hom_A(eA, -)`.
pub fn verify_recollement(rec: &Recollement, settings: &Settings) -> Result<AxiomReport> {
    let mut rep = verify_left_recollement(&rec.left(), settings)?;
    for ax in verify_right_recollement(&rec.right(), settings)?.axioms {
        if rep.get(&ax.name).is_none() {
            rep.axioms.push(ax);
        }
    }
    let hom_form = FunctorExpr::Hom(rec.bimodules.e_a.clone());
    let g = match natural_iso(&rec.j_pull, &hom_form, settings)? {
        Some(n) => n.grade,
        None => Grade::Failed("j^* is not Hom_A(eA, -)".into()),
    };
    rep.push("j^* = Hom(eA, -)", g);
    Ok(rep)
}

/// A fully faithful functor with an exact left adjoint, in the form
/// `Hom(b)` with left adjoint `Tensor(b)`.
#[derive(Clone, Debug)]
pub struct Giraud {
    pub functor: FunctorExpr,
    bimodule: crate::algebra::Bimodule,
}

impl Giraud {
    pub fn new(f: &FunctorExpr) -> Result<Giraud> {
        let b = match f {
            FunctorExpr::Hom(b) => b.clone(),
            FunctorExpr::Tensor(_) => match left_adjoint(f)? {
                Some(step) => step.functor.bimodule().clone(),
                None => return Err(Error::NotGiraud("no left adjoint".into())),
            },
        };
        let left = FunctorExpr::Tensor(b.clone());
        if let Some(w) = is_exact(&left)?.witness {
            return Err(Error::NotGiraud(format!("left adjoint is not exact: {}", describe_witness(&w))));
        }
        if let Grade::Failed(w) = is_fully_faithful(f)? {
            return Err(Error::NotGiraud(format!("not fully faithful: {w}")));
        }
        Ok(Giraud {
            functor: f.clone(),
            bimodule: b,
        })
    }

    /// `i_* i^! M = Ker (M -> j_* j^* M)`, with its inclusion.
    pub fn adjoint_by_kernel(&self, m: &Module) -> Result<(Module, Morphism)> {
        kernel(&unit(&self.bimodule, m)?)
    }
}

/// A fully faithful functor with an exact right adjoint, in the form
/// `Tensor(b)` with right adjoint `Hom(b)`.
#[derive(Clone, Debug)]
pub struct CoGiraud {
    pub functor: FunctorExpr,
    bimodule: crate::algebra::Bimodule,
}

impl CoGiraud {
    pub fn new(f: &FunctorExpr) -> Result<CoGiraud> {
        let b = match f {
            FunctorExpr::Tensor(b) => b.clone(),
            FunctorExpr::Hom(_) => match right_adjoint(f)? {
                Some(step) => step.functor.bimodule().clone(),
                None => return Err(Error::NotGiraud("no right adjoint".into())),
            },
        };
        let right = FunctorExpr::Hom(b.clone());
        if let Some(w) = is_exact(&right)?.witness {
            return Err(Error::NotGiraud(format!("right adjoint is not exact: {}", describe_witness(&w))));
        }
        if let Grade::Failed(w) = is_fully_faithful(f)? {
            return Err(Error::NotGiraud(format!("not fully faithful: {w}")));
        }
        Ok(CoGiraud {
            functor: f.clone(),
            bimodule: b,
        })
    }

    /// `i_* i^* M = Coker (j_! j^* M -> M)`, with its projection.
    pub fn adjoint_by_cokernel(&self, m: &Module) -> Result<(Module, Morphism)> {
        cokernel(&counit(&self.bimodule, m)?)
    }
}

pub fn adjoint_by_kernel(j_push: &FunctorExpr, m: &Module) -> Result<(Module, Morphism)> {
    Giraud::new(j_push)?.adjoint_by_kernel(m)
}

pub fn adjoint_by_cokernel(j_shriek: &FunctorExpr, m: &Module) -> Result<(Module, Morphism)> {
    CoGiraud::new(j_shriek)?.adjoint_by_cokernel(m)
}

/// Simples of `A` lying in `Ker j^*`.
fn torsion_simples(j_pull: &FunctorExpr) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    for s in simples(j_pull.source())? {
        if j_pull.eval_obj(&s)?.is_zero() {
            out.push(s);
        }
    }
    Ok(out)
}

fn simple_set(a: &Arc<Algebra>, spec: &ClassSpec) -> Result<IdemSet> {
    let mut set = IdemSet::new();
    for (i, s) in simples(a)?.iter().enumerate() {
        if spec.contains(s)? {
            set.insert(i);
        }
    }
    Ok(set)
}

/// The right recollement whose `Im i_*` is the hereditary torsion class of
/// `tp`. Checks `Im j_* in (Im i_*)^{perp <= 1}` against the simples of
/// the torsion class.
pub fn right_recollement_from_torsion(tp: &TorsionPair, settings: &Settings) -> Result<RightRecollement> {
    if matches!(tp.torsion, ClassSpec::Perp(_) | ClassSpec::Generated(_)) {
        return Err(Error::HypothesisViolated("torsion class is not given by an idempotent".into()));
    }
    if let Grade::Failed(w) = tp.is_hereditary()? {
        return Err(Error::HypothesisViolated(format!("torsion class is not hereditary: {w}")));
    }
    let a = tp.algebra();
    let set = simple_set(a, &tp.torsion)?;
    let r = recollement_at_simples(a, &set, settings)?.right();
    for p in probes(a)? {
        if tp.torsion.contains(&p.module)? != r.j_pull.eval_obj(&p.module)?.is_zero() {
            return Err(Error::HypothesisViolated(format!("torsion class is not Serre at {}", p.name)));
        }
        let c = r.j_push.eval_obj(&r.j_pull.eval_obj(&p.module)?)?;
        for s in torsion_simples(&r.j_pull)? {
            if !hom_space(&s, &c)?.is_empty() || ext1(&s, &c)?.dim != 0 {
                return Err(Error::HypothesisViolated(format!("j_* j^* {} is not perpendicular", p.name)));
            }
        }
    }
    Ok(r)
}

/// The left recollement whose `Im i_*` is the cohereditary torsionfree
/// class of `tp`. Checks `Im j_! in ^{perp <= 1}(Im i_*)`.
pub fn left_recollement_from_torsion(tp: &TorsionPair, settings: &Settings) -> Result<LeftRecollement> {
    if matches!(tp.torsionfree, ClassSpec::Perp(_) | ClassSpec::Generated(_)) {
        return Err(Error::HypothesisViolated("torsionfree class is not given by an idempotent".into()));
    }
    if let Grade::Failed(w) = tp.is_cohereditary()? {
        return Err(Error::HypothesisViolated(format!("torsionfree class is not cohereditary: {w}")));
    }
    let a = tp.algebra();
    let set = simple_set(a, &tp.torsionfree)?;
    let l = recollement_at_simples(a, &set, settings)?.left();
    for p in probes(a)? {
        if tp.torsionfree.contains(&p.module)? != l.j_pull.eval_obj(&p.module)?.is_zero() {
            return Err(Error::HypothesisViolated(format!("torsionfree class is not Serre at {}", p.name)));
        }
        let c = l.j_shriek.eval_obj(&l.j_pull.eval_obj(&p.module)?)?;
        for s in torsion_simples(&l.j_pull)? {
            if !hom_space(&c, &s)?.is_empty() || ext1(&c, &s)?.dim != 0 {
                return Err(Error::HypothesisViolated(format!("j_! j^* {} is not perpendicular", p.name)));
            }
        }
    }
    Ok(l)
}

/// Outcome of a recollement condition battery.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BatteryReport {
    /// Probes whose four-term sequence was built and checked.
    pub sequences: usize,
    /// Hom and Ext1 vanishing checks against simples of `Im i_*`.
    pub orthogonality_checks: usize,
    /// The eight equivalent conditions, in order.
    pub conditions: [bool; 8],
    pub failures: Vec<String>,
}

impl BatteryReport {
    /// All eight conditions share one truth value.
    pub fn consistent(&self) -> bool {
        self.conditions.iter().all(|&c| c == self.conditions[0])
    }

    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.consistent()
    }
}

fn tensor_bimodule<'a>(f: &'a FunctorExpr, name: &str) -> Result<&'a crate::algebra::Bimodule> {
    match f {
        FunctorExpr::Tensor(b) => Ok(b),
        FunctorExpr::Hom(_) => Err(Error::HypothesisViolated(format!("{name} must be in tensor form"))),
    }
}

/// Condition battery for a right recollement: the sequence
/// `0 -> i_*i^!A -> A -> j_*j^*A -> i_*B -> 0` per probe with
/// `j_*j^*A in (Im i_*)^{perp <= 1}`, `Ker i^! = (Im i_*)^{perp 0}`, and
/// the equivalent conditions
/// (i) `i^!` exact; (ii) `i^!`, `j_*` exact; (iii) moreover
/// `Im j_* = Ker i^!`; (iv) `zeta_A` epi for every probe; (v) `Im j_* =
/// Ker i^!`, the torsion pair `(Im i_*, Im j_*)` is cohereditary and (iv);
/// (vi) `(Im i_*, Im j_*)` is a torsion pair with `Im j_*` closed under
/// quotients (`Im i_*` is Serre, hence hereditary); (vii) as (vi) with the
/// four-term sequences intact; (viii) as (vi). In `mod A` cohereditary
/// implies strongly cohereditary, so the strong variants reduce to these.
pub fn prop31_battery(r: &RightRecollement) -> Result<BatteryReport> {
    let a = r.i_push.target().clone();
    let ib = tensor_bimodule(&r.i_push, "i_*")?;
    let jb = tensor_bimodule(&r.j_pull, "j^*")?;
    let ts = torsion_simples(&r.j_pull)?;
    let ps = probes(&a)?;
    let in_image = |m: &Module| -> Result<bool> { Ok(unit(jb, m)?.is_iso()) };
    let mut rep = BatteryReport::default();
    let (mut epi_all, mut tp_all, mut im_is_ker) = (true, true, true);
    let mut members = Vec::new();
    for p in &ps {
        let m = &p.module;
        let omega = counit(ib, m)?;
        let zeta = unit(jb, m)?;
        let (b2, _) = cokernel(&zeta)?;
        let four_term = omega.is_mono()
            && omega.matrix().mul(zeta.matrix()).is_zero()
            && omega.rank() + zeta.rank() == m.dim()
            && r.j_pull.eval_obj(&b2)?.is_zero();
        if !four_term {
            rep.failures.push(format!("four-term sequence at {} is not exact", p.name));
        }
        rep.sequences += 1;
        let x = zeta.target();
        for s in &ts {
            if !hom_space(s, x)?.is_empty() || ext1(s, x)?.dim != 0 {
                rep.failures.push(format!("j_*j^*{} is not in (Im i_*)^perp<=1", p.name));
            }
            rep.orthogonality_checks += 1;
        }
        let killed = omega.source().is_zero();
        let mut perp = true;
        for s in &ts {
            perp &= hom_space(s, m)?.is_empty();
        }
        if killed != perp {
            rep.failures.push(format!("Ker i^! and (Im i_*)^perp0 differ at {}", p.name));
        }
        epi_all &= zeta.is_epi();
        let (q, _) = cokernel(&omega)?;
        tp_all &= in_image(&q)?;
        let member = in_image(m)?;
        im_is_ker &= member == killed;
        if member {
            members.push(m.clone());
        }
    }
    let mut coher = true;
    'outer: for m in &members {
        for p in &ps {
            for f in hom_space(&p.module, m)?.morphisms() {
                if !in_image(&cokernel(&f)?.0)? {
                    coher = false;
                    break 'outer;
                }
            }
        }
    }
    let ex_i = is_exact(&r.i_shriek)?.exact;
    let ex_j = is_exact(&r.j_push)?.exact;
    let intact = rep.failures.is_empty();
    rep.conditions = [
        ex_i,
        ex_i && ex_j,
        ex_i && ex_j && im_is_ker,
        epi_all,
        im_is_ker && tp_all && coher && epi_all,
        tp_all && coher,
        tp_all && coher && intact,
        tp_all && coher,
    ];
    Ok(rep)
}

/// The dual battery for a left recollement with `j_!`, `i^*`,
/// `epsilon` and `eta` in place of `j_*`, `i^!`, `zeta` and `omega`.
pub fn prop32_battery(l: &LeftRecollement) -> Result<BatteryReport> {
    let a = l.i_push.target().clone();
    let ib = tensor_bimodule(&l.i_pull, "i^*")?;
    let jb = tensor_bimodule(&l.j_shriek, "j_!")?;
    let ts = torsion_simples(&l.j_pull)?;
    let ps = probes(&a)?;
    let in_image = |m: &Module| -> Result<bool> { Ok(counit(jb, m)?.is_iso()) };
    let mut rep = BatteryReport::default();
    let (mut mono_all, mut tp_all, mut im_is_ker) = (true, true, true);
    let mut members = Vec::new();
    for p in &ps {
        let m = &p.module;
        let eta = unit(ib, m)?;
        let eps = counit(jb, m)?;
        let (k, _) = kernel(&eps)?;
        let four_term = eta.is_epi()
            && eps.matrix().mul(eta.matrix()).is_zero()
            && eps.rank() + eta.rank() == m.dim()
            && l.j_pull.eval_obj(&k)?.is_zero();
        if !four_term {
            rep.failures.push(format!("four-term sequence at {} is not exact", p.name));
        }
        rep.sequences += 1;
        let x = eps.source();
        for s in &ts {
            if !hom_space(x, s)?.is_empty() || ext1(x, s)?.dim != 0 {
                rep.failures.push(format!("j_!j^*{} is not in ^perp<=1(Im i_*)", p.name));
            }
            rep.orthogonality_checks += 1;
        }
        let killed = eta.target().is_zero();
        let mut perp = true;
        for s in &ts {
            perp &= hom_space(m, s)?.is_empty();
        }
        if killed != perp {
            rep.failures.push(format!("Ker i^* and ^perp0(Im i_*) differ at {}", p.name));
        }
        mono_all &= eps.is_mono();
        let (t, _) = kernel(&eta)?;
        tp_all &= in_image(&t)?;
        let member = in_image(m)?;
        im_is_ker &= member == killed;
        if member {
            members.push(m.clone());
        }
    }
    let mut hered = true;
    'outer: for m in &members {
        for p in &ps {
            for f in hom_space(m, &p.module)?.morphisms() {
                if !in_image(&kernel(&f)?.0)? {
                    hered = false;
                    break 'outer;
                }
            }
        }
    }
    let ex_i = is_exact(&l.i_pull)?.exact;
    let ex_j = is_exact(&l.j_shriek)?.exact;
    let intact = rep.failures.is_empty();
    rep.conditions = [
        ex_i,
        ex_i && ex_j,
        ex_i && ex_j && im_is_ker,
        mono_all,
        im_is_ker && tp_all && hered && mono_all,
        tp_all && hered,
        tp_all && hered && intact,
        tp_all && hered,
    ];
    Ok(rep)
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub recollement: Recollement,
    pub report: AxiomReport,
    /// `(i_*B, (i_*B)^{perp 0})`.
    pub torsion_pair: TorsionPair,
    /// Probes whose t-decomposition was computed.
    pub t_decompositions: usize,
}

/// Completes a left recollement with `i^!` and `j_*`, the right adjoints of
/// `i_*` and `j^*`, and verifies the six-functor bundle.
pub fn extend_left_recollement(l: &LeftRecollement, settings: &Settings) -> Result<Extension> {
    let step = |f: &FunctorExpr, name: &str| -> Result<FunctorExpr> {
        right_adjoint(f)?
            .map(|s| s.functor)
            .ok_or_else(|| Error::ExtensionFailed(format!("{name} has no right adjoint")))
    };
    let i_shriek = step(&l.i_push, "i_*")?;
    let j_push = step(&l.j_pull, "j^*")?;
    let ladder = Ladder {
        i_plus2: left_adjoint(&l.i_pull)?.map(|s| s.functor),
        i_minus2: right_adjoint(&i_shriek)?.map(|s| s.functor),
        j_plus2: left_adjoint(&l.j_shriek)?.map(|s| s.functor),
        j_minus2: right_adjoint(&j_push)?.map(|s| s.functor),
    };
    let rec = Recollement {
        e: l.e.clone(),
        bimodules: l.bimodules.clone(),
        i_pull: l.i_pull.clone(),
        i_push: l.i_push.clone(),
        i_shriek,
        j_shriek: l.j_shriek.clone(),
        j_pull: l.j_pull.clone(),
        j_push,
        ladder,
    };
    let report = verify_recollement(&rec, settings)?;
    if let Some(bad) = report.failures().first() {
        return Err(Error::ExtensionFailed(format!("{}: {}", bad.name, bad.grade_detail())));
    }
    let a = rec.middle().clone();
    let torsion_pair = TorsionPair::killed_by(&a, &l.e)?;
    let mut t_decompositions = 0;
    for p in probes(&a)? {
        let d = torsion_pair.t_decompose(&p.module)?;
        if !d.is_exact() {
            return Err(Error::ExtensionFailed(format!("t-decomposition of {} is not exact", p.name)));
        }
        t_decompositions += 1;
    }
    Ok(Extension {
        recollement: rec,
        report,
        torsion_pair,
        t_decompositions,
    })
}

/// `M = i_*i^!M (+) j_!j^*M` for one probe.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub probe: String,
    pub dims: [usize; 2],
    /// `i_*i^!M (+) j_!j^*M -> M`.
    pub iso: Morphism,
}

#[derive(Clone, Debug)]
pub struct SplitReport {
    pub split: bool,
    /// Non-exactness of `i^*` or `i^!` when not split.
    pub witness: Option<(String, SesWitness)>,
    pub i_iso: Option<NatIso>,
    pub j_iso: Option<NatIso>,
    pub decompositions: Vec<Decomposition>,
}

/// If `i^*` and `i^!` are exact, then `i^* = i^!`, `j_! = j_*` and every
/// module splits; otherwise report the failing exactness.
pub fn split_check(rec: &Recollement, settings: &Settings) -> Result<SplitReport> {
    for (name, f) in [("i^*", &rec.i_pull), ("i^!", &rec.i_shriek)] {
        if let Some(w) = is_exact(f)?.witness {
            return Ok(SplitReport {
                split: false,
                witness: Some((name.to_string(), w)),
                i_iso: None,
                j_iso: None,
                decompositions: Vec::new(),
            });
        }
    }
    let missing = |what: &str| Error::InternalInconsistency(format!("exact i^*, i^! but no iso {what}"));
    let i_iso = natural_iso(&rec.i_pull, &rec.i_shriek, settings)?.ok_or_else(|| missing("i^* = i^!"))?;
    let j_iso = natural_iso(&rec.j_shriek, &rec.j_push, settings)?.ok_or_else(|| missing("j_! = j_*"))?;
    let ib = tensor_bimodule(&rec.i_push, "i_*")?;
    let jb = tensor_bimodule(&rec.j_shriek, "j_!")?;
    let mut decompositions = Vec::new();
    for p in probes(rec.middle())? {
        let m = &p.module;
        let omega = counit(ib, m)?;
        let eps = counit(jb, m)?;
        let sum = direct_sum(omega.source(), eps.source())?;
        let iso = Morphism::new(sum.module, m.clone(), omega.matrix().vstack(eps.matrix())?)?;
        if !iso.is_iso() {
            return Err(Error::InternalInconsistency(format!("{} does not split", p.name)));
        }
        decompositions.push(Decomposition {
            probe: p.name,
            dims: [omega.source().dim(), eps.source().dim()],
            iso,
        });
    }
    Ok(SplitReport {
        split: true,
        witness: None,
        i_iso: Some(i_iso),
        j_iso: Some(j_iso),
        decompositions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::examples::{k_times_k, linear_a, t2};
    use crate::linalg::Field;
    use crate::modcat::projective;

    fn eps(a: &Arc<Algebra>, i: usize) -> Element {
        a.idempotents()[i].clone()
    }

    fn s() -> Settings {
        Settings::default()
    }

    #[test]
    fn canonical_recollements_verify() {
        for a in [linear_a(2, Field::Rational).unwrap(), t2(Field::Rational).unwrap(), k_times_k(Field::Rational).unwrap()] {
            for i in 0..2 {
                let rec = canonical_recollement(&a, &eps(&a, i), &s()).unwrap();
                let rep = verify_recollement(&rec, &s()).unwrap();
                assert!(rep.holds(), "{:?}", rep.failures());
                assert_eq!(rep.get("Im i_* = Ker j^*"), Some(&Grade::Certified));
            }
        }
    }

    #[test]
    fn degenerate_recollements() {
        let a = linear_a(2, Field::Rational).unwrap();
        let whole = canonical_recollement(&a, &a.unit().clone(), &s()).unwrap();
        assert!(whole.i_push.source().is_zero_ring());
        let none = canonical_recollement(&a, &a.zero_element(), &s()).unwrap();
        assert!(none.j_pull.target().is_zero_ring());
        for rec in [whole, none] {
            assert!(split_check(&rec, &s()).unwrap().split);
            assert!(prop31_battery(&rec.right()).unwrap().conditions.iter().all(|&c| c));
            assert!(prop32_battery(&rec.left()).unwrap().conditions.iter().all(|&c| c));
        }
    }

    #[test]
    fn two_recollements_of_a2() {
        let a = linear_a(2, Field::Rational).unwrap();
        let r0 = canonical_recollement(&a, &eps(&a, 0), &s()).unwrap();
        let r1 = canonical_recollement(&a, &eps(&a, 1), &s()).unwrap();
        assert!(crate::algebra::same_algebra(r0.middle(), r1.middle()));
        assert_ne!(r0.j_pull.bimodule().dim(), r1.j_pull.bimodule().dim());
    }

    #[test]
    fn swapped_functor_fails_adjunction() {
        let t = t2(Field::Rational).unwrap();
        let mut rec = canonical_recollement(&t, &eps(&t, 1), &s()).unwrap();
        rec.j_push = rec.j_shriek.clone();
        let rep = verify_right_recollement(&rec.right(), &s()).unwrap();
        assert!(!rep.get("(j^*, j_*) adjoint").unwrap().holds());
    }

    #[test]
    fn kernel_and_cokernel_adjoints() {
        let a = linear_a(2, Field::Rational).unwrap();
        let rec = canonical_recollement(&a, &eps(&a, 1), &s()).unwrap();
        let g = Giraud::new(&rec.j_push).unwrap();
        let cg = CoGiraud::new(&rec.j_shriek).unwrap();
        for p in probes(&a).unwrap() {
            let (k, _) = g.adjoint_by_kernel(&p.module).unwrap();
            let direct = rec.i_push.eval_obj(&rec.i_shriek.eval_obj(&p.module).unwrap()).unwrap();
            assert!(is_isomorphic(&k, &direct, &s()).unwrap().is_some(), "{}", p.name);
            assert!(rec.j_pull.eval_obj(&k).unwrap().is_zero());
            let (c, _) = cg.adjoint_by_cokernel(&p.module).unwrap();
            let direct = rec.i_push.eval_obj(&rec.i_pull.eval_obj(&p.module).unwrap()).unwrap();
            assert!(is_isomorphic(&c, &direct, &s()).unwrap().is_some(), "{}", p.name);
        }
        let p1 = projective(&a, 0).unwrap();
        // the socle of P1 is S2, outside B, so i^! P1 = 0 on both sides
        assert_eq!(g.adjoint_by_kernel(&p1).unwrap().0.dim(), 0);
        assert_eq!(rec.i_shriek.eval_obj(&p1).unwrap().dim(), 0);
        // m in Im j_* has i^! m = 0
        let jm = rec.j_push.eval_obj(&rec.j_pull.eval_obj(&p1).unwrap()).unwrap();
        assert_eq!(g.adjoint_by_kernel(&jm).unwrap().0.dim(), 0);
        assert!(matches!(Giraud::new(&rec.j_pull), Err(Error::NotGiraud(_))));
    }

    #[test]
    fn recollements_from_torsion_pairs() {
        let a = linear_a(2, Field::Rational).unwrap();
        let tp = TorsionPair::killed_by(&a, &eps(&a, 0)).unwrap();
        let r = right_recollement_from_torsion(&tp, &s()).unwrap();
        assert_eq!(r.j_pull.target().dim(), 1);
        assert!(verify_right_recollement(&r, &s()).unwrap().holds());
        let zero = TorsionPair::killed_by(&a, &a.unit().clone()).unwrap();
        let r = right_recollement_from_torsion(&zero, &s()).unwrap();
        assert!(r.i_push.source().is_zero_ring());
        let all = TorsionPair::killed_by(&a, &a.zero_element()).unwrap();
        let r = right_recollement_from_torsion(&all, &s()).unwrap();
        assert!(r.j_pull.target().is_zero_ring());
        let tp = TorsionPair::from_idempotent(&a, &eps(&a, 1)).unwrap();
        let l = left_recollement_from_torsion(&tp, &s()).unwrap();
        assert!(verify_left_recollement(&l, &s()).unwrap().holds());
        let gen = TorsionPair::generated_by(&a, vec![projective(&a, 0).unwrap()]).unwrap();
        assert!(matches!(right_recollement_from_torsion(&gen, &s()), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn batteries_are_consistent() {
        for a in [linear_a(2, Field::Rational).unwrap(), linear_a(3, Field::Rational).unwrap(), t2(Field::Rational).unwrap()] {
            for i in 0..a.num_idempotents() {
                let rec = canonical_recollement(&a, &eps(&a, i), &s()).unwrap();
                let r = prop31_battery(&rec.right()).unwrap();
                assert!(r.holds(), "{:?}", r);
                let l = prop32_battery(&rec.left()).unwrap();
                assert!(l.holds(), "{:?}", l);
            }
        }
        let kk = k_times_k(Field::Rational).unwrap();
        let rec = canonical_recollement(&kk, &eps(&kk, 0), &s()).unwrap();
        assert!(prop31_battery(&rec.right()).unwrap().conditions.iter().all(|&c| c));
    }

    #[test]
    fn extension_of_left_recollements() {
        let a = linear_a(2, Field::Rational).unwrap();
        let rec = canonical_recollement(&a, &eps(&a, 1), &s()).unwrap();
        let ext = extend_left_recollement(&rec.left(), &s()).unwrap();
        assert!(natural_iso(&ext.recollement.j_push, &FunctorExpr::Hom(rec.bimodules.a_e.clone()), &s()).unwrap().is_some());
        assert!(verify_left_recollement(&ext.recollement.left(), &s()).unwrap().holds());
        let kk = k_times_k(Field::Rational).unwrap();
        let rec = canonical_recollement(&kk, &eps(&kk, 0), &s()).unwrap();
        let ext = extend_left_recollement(&rec.left(), &s()).unwrap();
        assert!(natural_iso(&ext.recollement.j_push, &ext.recollement.j_shriek, &s()).unwrap().is_some());
        assert!(ext.t_decompositions > 0);
    }

    #[test]
    fn split_and_nonsplit() {
        let kk = k_times_k(Field::Rational).unwrap();
        let rep = split_check(&canonical_recollement(&kk, &eps(&kk, 0), &s()).unwrap(), &s()).unwrap();
        assert!(rep.split);
        assert!(rep.decompositions.iter().all(|d| d.iso.is_iso()));
        let t = t2(Field::Rational).unwrap();
        let rep = split_check(&canonical_recollement(&t, &eps(&t, 1), &s()).unwrap(), &s()).unwrap();
        assert!(!rep.split);
        let (name, w) = rep.witness.unwrap();
        assert_eq!(name, "i^*");
        assert!(!w.image_exact);
    }
}
