//! Test support: a small battery of algebras and an independent oracle.
//!
//! The oracle shares no code with the crate's linear algebra. It reads
//! scalars through their printed form and row-reduces with `BigRational` or
//! plain modular arithmetic.

#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use serrecat::algebra::{examples, path_algebra, product_algebra, Algebra, Bimodule, Quiver};
use serrecat::linalg::{Field, Matrix, Scalar};
use serrecat::modcat::Module;

pub fn loop_algebra(field: Field) -> Arc<Algebra> {
    let q = Quiver::new(vec!["1".into()]).arrow("x", 0, 0);
    Arc::new(path_algebra(&q, &[vec![(field.one(), vec![0, 0])]], field, 1000).unwrap())
}

pub fn k_cubed(field: Field) -> Arc<Algebra> {
    let k = examples::ground(field);
    let kk = product_algebra(&k, &k).unwrap();
    Arc::new(product_algebra(&kk, &k).unwrap())
}

/// The eight algebras used by the battery criteria.
pub fn battery() -> Vec<(&'static str, Arc<Algebra>)> {
    let q = Field::Rational;
    vec![
        ("kA2", examples::linear_a(2, q).unwrap()),
        ("kA3", examples::linear_a(3, q).unwrap()),
        ("kA4", examples::linear_a(4, q).unwrap()),
        ("k x k", examples::k_times_k(q).unwrap()),
        ("k x k x k", k_cubed(q)),
        ("T2(k)", examples::t2(q).unwrap()),
        ("kA2 over F2", examples::linear_a(2, Field::Prime(2)).unwrap()),
        ("k[x]/x^2", loop_algebra(q)),
    ]
}

#[derive(Clone, Debug)]
enum Entry {
    Q(BigRational),
    P(u64),
}

fn entry(s: &Scalar) -> Entry {
    let text = s.to_string();
    match s.field() {
        Field::Rational => {
            let (n, d) = text.split_once('/').unwrap_or((&text, "1"));
            Entry::Q(BigRational::new(n.parse::<BigInt>().unwrap(), d.parse::<BigInt>().unwrap()))
        }
        Field::Prime(_) => Entry::P(text.parse().unwrap()),
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank of a list of rows of printed scalars.
pub fn rank_rows(field: Field, rows: &[Vec<Scalar>]) -> usize {
    let rows: Vec<Vec<Entry>> = rows.iter().map(|r| r.iter().map(entry).collect()).collect();
    match field {
        Field::Rational => {
            let mut m: Vec<Vec<BigRational>> = rows
                .into_iter()
                .map(|r| r.into_iter().map(|e| if let Entry::Q(x) = e { x } else { unreachable!() }).collect())
                .collect();
            let cols = m.first().map_or(0, |r| r.len());
            let mut rank = 0;
            for c in 0..cols {
                let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
                m.swap(rank, p);
                let piv = m[rank][c].clone();
                for i in 0..m.len() {
                    if i != rank && !m[i][c].is_zero() {
                        let f = &m[i][c] / &piv;
                        for k in 0..cols {
                            let v = &m[rank][k] * &f;
                            m[i][k] -= v;
                        }
                    }
                }
                rank += 1;
            }
            rank
        }
        Field::Prime(p) => {
            let mut m: Vec<Vec<u64>> = rows
                .into_iter()
                .map(|r| r.into_iter().map(|e| if let Entry::P(x) = e { x } else { unreachable!() }).collect())
                .collect();
            let cols = m.first().map_or(0, |r| r.len());
            let mut rank = 0;
            for c in 0..cols {
                let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
                m.swap(rank, piv);
                let inv = pow_mod(m[rank][c], p - 2, p);
                for i in 0..m.len() {
                    if i != rank && m[i][c] != 0 {
                        let f = m[i][c] * inv % p;
                        for k in 0..cols {
                            m[i][k] = (m[i][k] + p - m[rank][k] * f % p) % p;
                        }
                    }
                }
                rank += 1;
            }
            rank
        }
    }
}

pub fn rank(m: &Matrix) -> usize {
    let rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row_vec(i)).collect();
    rank_rows(m.field(), &rows)
}

fn zero(field: Field) -> Scalar {
    field.zero()
}

/// `dim {X : act_M(g) X = X act_N(g) for every basis element g}`, by
/// vectorising `X` and row-reducing the stacked linear conditions.
fn intertwiner_dim(field: Field, m: &[Matrix], n: &[Matrix], dm: usize, dn: usize) -> usize {
    let vars = dm * dn;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (am, an) in m.iter().zip(n) {
        // entry (i, j) of am X - X an
        for i in 0..dm {
            for j in 0..dn {
                let mut row = vec![zero(field); vars];
                for k in 0..dm {
                    let v = am.get(i, k);
                    row[k * dn + j] = row[k * dn + j].add(v);
                }
                for k in 0..dn {
                    let v = an.get(k, j);
                    row[i * dn + k] = row[i * dn + k].sub(v);
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return vars;
    }
    vars - rank_rows(field, &rows)
}

pub fn hom_dim(m: &Module, n: &Module) -> usize {
    intertwiner_dim(m.field(), m.actions(), n.actions(), m.dim(), n.dim())
}

/// `dim M (x)_C B`: `dim M * dim B` minus the rank of the balancing
/// relations `m c (x) x - m (x) c x`.
pub fn tensor_dim(m: &Module, b: &Bimodule) -> usize {
    let field = m.field();
    let (dm, db) = (m.dim(), b.dim());
    let mut rows = Vec::new();
    for (mc, bc) in m.actions().iter().zip(b.left_actions()) {
        for i in 0..dm {
            for j in 0..db {
                let mut row = vec![zero(field); dm * db];
                for k in 0..dm {
                    row[k * db + j] = row[k * db + j].add(mc.get(i, k));
                }
                for k in 0..db {
                    row[i * db + k] = row[i * db + k].sub(bc.get(j, k));
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return dm * db;
    }
    dm * db - rank_rows(field, &rows)
}

/// `dim Hom_A(B, N)` with `B` viewed as a right `A`-module.
pub fn hom_from_bimodule_dim(b: &Bimodule, n: &Module) -> usize {
    intertwiner_dim(n.field(), b.right_actions(), n.actions(), b.dim(), n.dim())
}

/// Multiplicity of the simple at vertex `i` in a module over a split basic
/// algebra: `dim M e_i`.
pub fn multiplicity(m: &Module, i: usize) -> usize {
    rank(&m.action_of(&m.algebra().idempotents()[i]))
}

/// Number of paths of every length in a quiver without relations, counted
/// by powers of the adjacency matrix (finite only for acyclic quivers).
pub fn path_count(vertices: usize, arrows: &[(usize, usize)]) -> usize {
    let mut total = vertices;
    let mut layer: Vec<Vec<usize>> = (0..vertices).map(|i| (0..vertices).map(|j| usize::from(i == j)).collect()).collect();
    for _ in 0..vertices {
        let mut next = vec![vec![0usize; vertices]; vertices];
        for (i, row) in layer.iter().enumerate() {
            for (k, &c) in row.iter().enumerate() {
                for &(s, t) in arrows {
                    if s == k {
                        next[i][t] += c;
                    }
                }
            }
        }
        total += next.iter().flatten().sum::<usize>();
        layer = next;
    }
    total
}
