use std::collections::HashMap;

use super::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{rref, Field, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// A linear combination of paths; each path is a list of arrow indices
/// composed left to right (`[a, b]` means `a` then `b`).
pub type Relation = Vec<(Scalar, Vec<usize>)>;

impl Quiver {
    pub fn new(vertices: Vec<String>) -> Quiver {
        Quiver {
            vertices,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(mut self, name: &str, source: usize, target: usize) -> Quiver {
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self
    }

    /// Linear quiver `1 -> 2 -> ... -> n` (type A_n).
    pub fn linear(n: usize) -> Quiver {
        let mut q = Quiver::new((1..=n).map(|i| i.to_string()).collect());
        for i in 0..n.saturating_sub(1) {
            q = q.arrow(&format!("a{}", i + 1), i, i + 1);
        }
        q
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    fn endpoints(&self, path: &[usize]) -> Result<(usize, usize)> {
        let first = self.arrows.get(path[0]).ok_or_else(|| {
            Error::MalformedRelation(format!("unknown arrow index {}", path[0]))
        })?;
        let mut end = first.target;
        for &a in &path[1..] {
            let arrow = self
                .arrows
                .get(a)
                .ok_or_else(|| Error::MalformedRelation(format!("unknown arrow index {a}")))?;
            if arrow.source != end {
                return Err(Error::MalformedRelation(format!(
                    "arrow {} does not start where the path ends",
                    arrow.name
                )));
            }
            end = arrow.target;
        }
        Ok((first.source, end))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    fn len(&self) -> usize {
        self.arrows.len()
    }

    fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }
}

/// Bound quiver algebra `kQ/I`.
///
/// The ideal is taken modulo a power of the arrow ideal that grows until the
/// paths of the top length vanish; this computes `kQ/I` whenever `I` is
/// admissible, and `path_cap` bounds the number of enumerated paths.
/// Basis: residue paths, shortest first; idempotents: trivial paths; radical:
/// residue paths of positive length.
pub fn path_algebra(
    quiver: &Quiver,
    relations: &[Relation],
    field: Field,
    path_cap: usize,
) -> Result<Algebra> {
    let nv = quiver.vertices.len();
    if nv == 0 {
        return Err(Error::InvalidAlgebra("quiver has no vertices".into()));
    }
    for a in &quiver.arrows {
        if a.source >= nv || a.target >= nv {
            return Err(Error::MalformedRelation(format!("arrow {} has a bad endpoint", a.name)));
        }
    }
    // Validate and normalise relations.
    let mut rels: Vec<(usize, usize, Vec<(Scalar, Vec<usize>)>)> = Vec::new();
    for rel in relations {
        let terms: Vec<(Scalar, Vec<usize>)> = rel
            .iter()
            .filter(|(c, _)| !c.is_zero())
            .cloned()
            .collect();
        if terms.is_empty() {
            continue;
        }
        let mut ends = None;
        for (c, p) in &terms {
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            if p.is_empty() {
                return Err(Error::MalformedRelation("relation term is a trivial path".into()));
            }
            let e = quiver.endpoints(p)?;
            match ends {
                None => ends = Some(e),
                Some(prev) if prev != e => {
                    return Err(Error::MalformedRelation(
                        "relation combines non-parallel paths".into(),
                    ))
                }
                _ => {}
            }
        }
        let (s, t) = ends.expect("non-empty relation");
        rels.push((s, t, terms));
    }

    // paths_by_len[l] = all paths of length l.
    let mut paths_by_len: Vec<Vec<Path>> = vec![(0..nv)
        .map(|v| Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        })
        .collect()];
    let mut total = nv;
    let mut n = 2usize;
    loop {
        // Enumerate paths of length < n.
        while paths_by_len.len() < n {
            let last = paths_by_len.last().expect("non-empty");
            let mut next = Vec::new();
            for p in last {
                for (ai, a) in quiver.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            total += next.len();
            if total > path_cap {
                return Err(Error::InfiniteDimensional(path_cap));
            }
            paths_by_len.push(next);
        }
        let truncated = Truncation::new(field, &paths_by_len, &rels, n);
        // Once every path of length n - 1 lies in I + J^n, the quotient is
        // stable under further truncation.
        if paths_by_len[n - 1]
            .iter()
            .all(|p| truncated.is_pivot[truncated.index[p]])
        {
            return truncated.into_algebra(quiver, nv);
        }
        n += 1;
    }
}

/// `kQ / (I + J^n)` with paths ordered longest first, so that in reduced
/// row-echelon form the residue basis consists of the shortest paths.
struct Truncation {
    field: Field,
    /// Column order: longest paths first.
    columns: Vec<Path>,
    index: HashMap<Path, usize>,
    reduced: Matrix,
    pivots: Vec<usize>,
    is_pivot: Vec<bool>,
}

impl Truncation {
    fn new(
        field: Field,
        paths_by_len: &[Vec<Path>],
        rels: &[(usize, usize, Vec<(Scalar, Vec<usize>)>)],
        n: usize,
    ) -> Truncation {
        let mut columns: Vec<Path> = Vec::new();
        for l in (0..n).rev() {
            columns.extend(paths_by_len[l].iter().cloned());
        }
        let index: HashMap<Path, usize> =
            columns.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let width = columns.len();
        let mut gens: Vec<Vec<Scalar>> = Vec::new();
        for (s, t, terms) in rels {
            let min_len = terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
            for lp in 0..n {
                for p in paths_by_len[lp].iter().filter(|p| p.target == *s) {
                    for lq in 0..n {
                        if lp + lq + min_len >= n {
                            break;
                        }
                        for q in paths_by_len[lq].iter().filter(|q| q.source == *t) {
                            let mut row = vec![field.zero(); width];
                            for (c, body) in terms {
                                if lp + body.len() + lq >= n {
                                    continue;
                                }
                                let mut arrows = p.arrows.clone();
                                arrows.extend_from_slice(body);
                                arrows.extend_from_slice(&q.arrows);
                                let w = Path {
                                    source: p.source,
                                    target: q.target,
                                    arrows,
                                };
                                let k = index[&w];
                                row[k] = row[k].add(c);
                            }
                            if row.iter().any(|x| !x.is_zero()) {
                                gens.push(row);
                            }
                        }
                    }
                }
            }
        }
        let m = Matrix::from_row_vecs(field, width, gens).expect("relation rows");
        let r = rref(&m);
        let mut is_pivot = vec![false; width];
        for &p in &r.pivot_columns {
            is_pivot[p] = true;
        }
        Truncation {
            field,
            columns,
            index,
            reduced: r.reduced.row_range(0, r.rank),
            pivots: r.pivot_columns,
            is_pivot,
        }
    }

    /// Coordinates of a path (given by column) over the residue basis
    /// columns `basis_cols`.
    fn reduce(&self, col: usize, basis_pos: &HashMap<usize, usize>, dim: usize) -> Element {
        let mut out = vec![self.field.zero(); dim];
        if let Some(&k) = basis_pos.get(&col) {
            out[k] = self.field.one();
            return out;
        }
        if let Some(row) = self.pivots.iter().position(|&p| p == col) {
            // path = -(rest of the pivot row) modulo the ideal
            for (c, v) in self.reduced.row(row).iter().enumerate() {
                if c != col && !v.is_zero() {
                    if let Some(&k) = basis_pos.get(&c) {
                        out[k] = out[k].sub(v);
                    }
                }
            }
        }
        out
    }

    fn into_algebra(self, quiver: &Quiver, nv: usize) -> Result<Algebra> {
        let field = self.field;
        // Residue basis: non-pivot columns, shortest paths first.
        let mut basis_cols: Vec<usize> = (0..self.columns.len())
            .filter(|&c| !self.is_pivot[c])
            .collect();
        basis_cols.sort_by_key(|&c| (self.columns[c].len(), c));
        for v in 0..nv {
            let triv = Path {
                source: v,
                target: v,
                arrows: Vec::new(),
            };
            if self.is_pivot[self.index[&triv]] {
                return Err(Error::MalformedRelation(format!(
                    "relations kill the vertex {}",
                    quiver.vertices[v]
                )));
            }
        }
        // Trivial paths first, in vertex order.
        let mut ordered: Vec<usize> = (0..nv)
            .map(|v| {
                self.index[&Path {
                    source: v,
                    target: v,
                    arrows: Vec::new(),
                }]
            })
            .collect();
        ordered.extend(basis_cols.iter().copied().filter(|c| self.columns[*c].len() > 0));
        let dim = ordered.len();
        let basis_pos: HashMap<usize, usize> =
            ordered.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let labels: Vec<String> = ordered
            .iter()
            .map(|&c| {
                let p = &self.columns[c];
                if p.arrows.is_empty() {
                    format!("e{}", quiver.vertices[p.source])
                } else {
                    p.arrows
                        .iter()
                        .map(|&a| quiver.arrows[a].name.clone())
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        let mut table = vec![vec![vec![field.zero(); dim]; dim]; dim];
        for (i, &ci) in ordered.iter().enumerate() {
            for (j, &cj) in ordered.iter().enumerate() {
                let prod = self.columns[ci].concat(&self.columns[cj]);
                if let Some(w) = prod {
                    if let Some(&col) = self.index.get(&w) {
                        table[i][j] = self.reduce(col, &basis_pos, dim);
                    }
                }
            }
        }
        let idempotents: Vec<Element> = (0..nv)
            .map(|v| {
                let mut e = vec![field.zero(); dim];
                e[v] = field.one();
                e
            })
            .collect();
        let mut unit = vec![field.zero(); dim];
        for u in unit.iter_mut().take(nv) {
            *u = field.one();
        }
        let radical: Vec<Element> = (nv..dim)
            .map(|k| {
                let mut e = vec![field.zero(); dim];
                e[k] = field.one();
                e
            })
            .collect();
        Algebra::new(field, labels, table, unit, idempotents, Some(radical))
    }
}
