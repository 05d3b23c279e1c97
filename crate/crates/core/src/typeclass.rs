//! The type `(m, -n)` of a Serre subcategory of `mod A`: how far the
//! adjoint sequences through the inclusion `i` and the quotient `Q` extend
//! in both directions before one of them runs out of adjoints.
//!
//! Every type here is a type in `mod A`; the same subcategory can have a
//! different type in a larger ambient category.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, IdemSet};
use crate::error::{Error, Result};
use crate::functors::{
    certify_pair, is_exact, left_adjoint, natural_iso, right_adjoint, AdjointStep, Certificate,
    FunctorExpr, NatIso, SesWitness,
};
use crate::recollement::{canonical_recollement, recollement_at_simples, split_check, SplitReport};
use crate::serre::SerreSubcat;
use crate::settings::Settings;

pub const AMBIENT: &str = "type in mod A";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(k) => write!(f, "{k}"),
            Count::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Why a chain stopped: which of the two end functors lacks the adjoint,
/// each with a probe sequence it fails to preserve.
#[derive(Clone, Debug)]
pub struct Stop {
    pub side: Side,
    pub missing: Vec<(&'static str, Option<SesWitness>)>,
}

#[derive(Clone, Debug)]
pub struct TypeResult {
    pub simples: IdemSet,
    pub m: Count,
    pub n: Count,
    /// `F_m, ..., F_0 = i, ..., F_{-n}` as far as computed.
    pub f_chain: Vec<FunctorExpr>,
    /// `G_m, ..., G_0 = Q, ..., G_{-n}`.
    pub g_chain: Vec<FunctorExpr>,
    /// Position of `F_0` and `G_0` in the chains.
    pub zero_index: usize,
    pub stops: Vec<Stop>,
    /// One per adjoint step taken, in the order taken.
    pub certificates: Vec<Certificate>,
    /// Present exactly for `(+inf, -inf)`.
    pub split: Option<SplitReport>,
}

impl TypeResult {
    pub fn is_infinite(&self) -> bool {
        self.m == Count::Infinite
    }

    /// `(m, n)` for finite types.
    pub fn finite(&self) -> Option<(usize, usize)> {
        match (self.m, self.n) {
            (Count::Finite(m), Count::Finite(n)) => Some((m, n)),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self.finite() {
            Some((m, n)) => format!("({m}, -{n})"),
            None => "(+inf, -inf)".to_string(),
        }
    }
}

/// The seven types that occur for Serre subcategories.
pub fn in_type_list(m: Count, n: Count) -> bool {
    matches!(
        (m, n),
        (Count::Finite(0), Count::Finite(0))
            | (Count::Finite(0), Count::Finite(1))
            | (Count::Finite(1), Count::Finite(1))
            | (Count::Finite(0), Count::Finite(2))
            | (Count::Finite(1), Count::Finite(2))
            | (Count::Finite(2), Count::Finite(1))
            | (Count::Infinite, Count::Infinite)
    )
}

fn no_adjoint_witness(f: &FunctorExpr) -> Result<Option<SesWitness>> {
    Ok(is_exact(f)?.witness)
}

/// Extends both chains to the left while both ends have left adjoints,
/// then to the right while both have right adjoints. Once `m + n + 1`
/// reaches 5 the type is `(+inf, -inf)`, which is backed by a split
/// certificate for the recollement at `s`.
pub fn classify(s: &SerreSubcat, settings: &Settings) -> Result<TypeResult> {
    let f0 = s.inclusion_functor();
    let g0 = s.quotient_functor();
    let (mut left_f, mut left_g) = (Vec::new(), Vec::new());
    let (mut right_f, mut right_g) = (Vec::new(), Vec::new());
    let (mut m, mut n) = (0usize, 0usize);
    let mut stops = Vec::new();
    let mut certificates = Vec::new();
    let (mut left_open, mut right_open) = (true, true);
    let mut infinite = false;
    let mut take = |steps: [AdjointStep; 2], fs: &mut Vec<FunctorExpr>, gs: &mut Vec<FunctorExpr>| {
        let [sf, sg] = steps;
        certificates.push(sf.certificate);
        certificates.push(sg.certificate);
        fs.push(sf.functor);
        gs.push(sg.functor);
    };
    loop {
        if m + n + 1 >= 5 {
            infinite = true;
            break;
        }
        if left_open {
            let f = left_f.last().unwrap_or(&f0).clone();
            let g = left_g.last().unwrap_or(&g0).clone();
            match (left_adjoint(&f)?, left_adjoint(&g)?) {
                (Some(a), Some(b)) => {
                    take([a, b], &mut left_f, &mut left_g);
                    m += 1;
                }
                (a, b) => {
                    let mut missing = Vec::new();
                    if a.is_none() {
                        missing.push(("F", no_adjoint_witness(&f)?));
                    }
                    if b.is_none() {
                        missing.push(("G", no_adjoint_witness(&g)?));
                    }
                    stops.push(Stop { side: Side::Left, missing });
                    left_open = false;
                }
            }
        } else if right_open {
            let f = right_f.last().unwrap_or(&f0).clone();
            let g = right_g.last().unwrap_or(&g0).clone();
            match (right_adjoint(&f)?, right_adjoint(&g)?) {
                (Some(a), Some(b)) => {
                    take([a, b], &mut right_f, &mut right_g);
                    n += 1;
                }
                (a, b) => {
                    let mut missing = Vec::new();
                    if a.is_none() {
                        missing.push(("F", no_adjoint_witness(&f)?));
                    }
                    if b.is_none() {
                        missing.push(("G", no_adjoint_witness(&g)?));
                    }
                    stops.push(Stop { side: Side::Right, missing });
                    right_open = false;
                }
            }
        } else {
            break;
        }
    }
    let zero_index = left_f.len();
    let assemble = |mut left: Vec<FunctorExpr>, zero: FunctorExpr, right: Vec<FunctorExpr>| {
        left.reverse();
        left.push(zero);
        left.extend(right);
        left
    };
    let f_chain = assemble(left_f, f0, right_f);
    let g_chain = assemble(left_g, g0, right_g);
    let (m, n, split) = if infinite {
        let rec = recollement_at_simples(s.algebra(), s.simple_set(), settings)
            .map_err(|e| Error::SplitExpectedButFailed(e.to_string()))?;
        let report = split_check(&rec, settings)?;
        if !report.split {
            let why = report
                .witness
                .as_ref()
                .map(|(name, w)| format!("{name} is not exact on {}", w.label))
                .unwrap_or_default();
            return Err(Error::SplitExpectedButFailed(why));
        }
        (Count::Infinite, Count::Infinite, Some(report))
    } else {
        (Count::Finite(m), Count::Finite(n), None)
    };
    Ok(TypeResult {
        simples: s.simple_set().clone(),
        m,
        n,
        f_chain,
        g_chain,
        zero_index,
        stops,
        certificates,
        split,
    })
}

/// Types of all `2^r` Serre subcategories, ordered by the bitmask of the
/// simple set.
pub fn classify_all(a: &Arc<Algebra>, settings: &Settings) -> Result<Vec<TypeResult>> {
    let r = a.num_idempotents();
    if r > settings.classify_all_cap {
        return Err(Error::Shape(format!(
            "{r} simples exceed the enumeration cap of {}",
            settings.classify_all_cap
        )));
    }
    (0..1usize << r)
        .map(|mask| {
            let set: IdemSet = (0..r).filter(|k| mask & (1 << k) != 0).collect();
            classify(&SerreSubcat::from_simples(a, &set)?, settings)
        })
        .collect()
}

/// The merged adjoint sequence `(i_1, i_0, i_{-1}, i_{-2} = j_1, j_0,
/// j_{-1}, j_{-2})` over a triangular algebra `[[R, 0], [R, R]]`.
#[derive(Clone, Debug)]
pub struct MergedLadder {
    pub chain: Vec<(&'static str, FunctorExpr)>,
    /// `i_{-2} -> j_1`.
    pub iso: NatIso,
    /// Hom bijection pairs checked for each adjacent pair.
    pub adjacent_pairs: Vec<usize>,
    /// Position of `i = i_0` and of `Q = j_0` in the chain.
    pub i_index: usize,
    pub q_index: usize,
    /// `i_1` has no left adjoint and `j_{-2}` no right adjoint.
    pub left_end: Option<SesWitness>,
    pub right_end: Option<SesWitness>,
}

/// Picks the idempotent `e` of a two-vertex algebra with `e A e' != 0`,
/// `e' A e = 0` and all three blocks of one dimension.
fn triangular_corner(a: &Arc<Algebra>) -> Result<usize> {
    if a.num_idempotents() != 2 {
        return Err(Error::Shape("need exactly two primitive idempotents".into()));
    }
    let eps = a.idempotents();
    let block = |i: usize, j: usize| a.sandwich(&eps[i], &eps[j]).rows();
    let (r, s) = (block(0, 0), block(1, 1));
    for (k, o) in [(0, 1), (1, 0)] {
        if block(k, o) > 0 && block(o, k) == 0 && block(k, o) == r && r == s {
            return Ok(k);
        }
    }
    Err(Error::Shape("not of the form [[R, 0], [R, R]] with the regular bimodule".into()))
}

pub fn remark54_check(a: &Arc<Algebra>, settings: &Settings) -> Result<MergedLadder> {
    let k = triangular_corner(a)?;
    let rec = canonical_recollement(a, &a.idempotents()[k].clone(), settings)?;
    let need = |f: &Option<FunctorExpr>, name: &str| {
        f.clone()
            .ok_or_else(|| Error::CertificationFailed(format!("{name} does not exist")))
    };
    let i_minus2 = need(&rec.ladder.i_minus2, "i_{-2}")?;
    let j_minus2 = need(&rec.ladder.j_minus2, "j_{-2}")?;
    let iso = natural_iso(&i_minus2, &rec.j_shriek, settings)?
        .ok_or_else(|| Error::CertificationFailed("i_{-2} and j_1 are not isomorphic".into()))?;
    iso.check_naturality()?;
    let chain = vec![
        ("i_1", rec.i_pull.clone()),
        ("i_0", rec.i_push.clone()),
        ("i_-1", rec.i_shriek.clone()),
        ("i_-2 = j_1", rec.j_shriek.clone()),
        ("j_0", rec.j_pull.clone()),
        ("j_-1", rec.j_push.clone()),
        ("j_-2", j_minus2),
    ];
    let adjacent_pairs = chain
        .windows(2)
        .map(|w| certify_pair(&w[0].1, &w[1].1))
        .collect::<Result<Vec<_>>>()?;
    if left_adjoint(&chain[0].1)?.is_some() || right_adjoint(&chain[6].1)?.is_some() {
        return Err(Error::CertificationFailed("the merged sequence extends further".into()));
    }
    Ok(MergedLadder {
        left_end: no_adjoint_witness(&chain[0].1)?,
        right_end: no_adjoint_witness(&chain[6].1)?,
        chain,
        iso,
        adjacent_pairs,
        i_index: 1,
        q_index: 4,
    })
}
