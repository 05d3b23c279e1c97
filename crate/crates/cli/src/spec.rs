//! The line-oriented input format.
//!
//! ```text
//! # comments run to the end of the line
//! field q                      # or: field fp 5
//! quiver vertices 1 2
//! arrow a 1 2
//! relation a*b - 2*c           # paths compose left to right
//! module M dim 2
//! action e1 1 0 0 0
//! ```
//!
//! Exactly one algebra block is allowed: `quiver`, `triangular`, `product`
//! or `structure`. Every line is `keyword args...`; unknown keywords are
//! errors.

use std::fmt::Write as _;
use std::sync::Arc;

use serrecat::algebra::{
    examples, path_algebra, product_algebra, triangular_algebra, Algebra, Bimodule, Element,
    Quiver, Relation,
};
use serrecat::linalg::{Field, Matrix, Scalar};
use serrecat::modcat::Module;

use crate::error::{CliError, ParseError};

#[derive(Clone, Debug, PartialEq)]
pub struct SpecFile {
    pub field: Field,
    pub algebra: AlgebraBlock,
    pub modules: Vec<ModuleBlock>,
    pub params: Params,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraBlock {
    Quiver {
        quiver: Quiver,
        relations: Vec<Relation>,
    },
    Triangular {
        r: Structure,
        s: Structure,
        m_dim: usize,
        /// Action of each basis element of `S` on `M`, then of `R`.
        m_left: Vec<Option<Matrix>>,
        m_right: Vec<Option<Matrix>>,
    },
    /// Product of named small algebras: `k`, `A<n>`, `T2`, `loop`.
    Product(Vec<String>),
    Structure(Structure),
}

/// An algebra given by structure constants. Basis indices in the file are
/// 1-based; missing products are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Structure {
    pub dim: usize,
    pub labels: Option<Vec<String>>,
    pub products: Vec<(usize, usize, Vec<Scalar>)>,
    pub unit: Option<Vec<Scalar>>,
    pub idempotents: Vec<Vec<Scalar>>,
    pub radical: Option<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleBlock {
    pub name: String,
    pub dim: usize,
    pub actions: Vec<(String, Matrix)>,
}

/// Defaults for the command line; flags override them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub seed: Option<u64>,
    pub simples: Option<Vec<usize>>,
    pub idempotent: Option<Vec<usize>>,
    pub kind: Option<String>,
    pub module: Option<String>,
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

struct Line<'a> {
    no: usize,
    end_col: usize,
    tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    fn err(&self, col: usize, expected: impl Into<String>) -> ParseError {
        ParseError {
            line: self.no,
            col,
            expected: expected.into(),
        }
    }

    /// Column where a missing token `k` would start.
    fn col_of(&self, k: usize) -> usize {
        self.tokens.get(k).map_or(self.end_col + 1, |t| t.col)
    }

    fn tok(&self, k: usize, expected: &str) -> Result<&Token<'a>, ParseError> {
        self.tokens.get(k).ok_or_else(|| self.err(self.col_of(k), expected))
    }

    fn usize_at(&self, k: usize, expected: &str) -> Result<usize, ParseError> {
        let t = self.tok(k, expected)?;
        t.text.parse().map_err(|_| self.err(t.col, expected))
    }

    fn scalar_at(&self, k: usize, field: Field) -> Result<Scalar, ParseError> {
        let t = self.tok(k, "a scalar (integer or p/q)")?;
        parse_scalar(t.text, field).ok_or_else(|| self.err(t.col, "a scalar (integer or p/q)"))
    }

    fn scalars_from(&self, k: usize, n: usize, field: Field) -> Result<Vec<Scalar>, ParseError> {
        let v = (k..k + n).map(|i| self.scalar_at(i, field)).collect::<Result<Vec<_>, _>>()?;
        self.no_more(k + n)?;
        Ok(v)
    }

    fn no_more(&self, k: usize) -> Result<(), ParseError> {
        match self.tokens.get(k) {
            Some(t) => Err(self.err(t.col, "end of line")),
            None => Ok(()),
        }
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &body[s..pos],
                        col: body[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push(Line {
                no: i + 1,
                end_col: body.trim_end().chars().count() + 1,
                tokens,
            });
        }
    }
    out
}

pub fn parse_scalar(s: &str, field: Field) -> Option<Scalar> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<i64>().ok()?, d.parse::<i64>().ok()?),
        None => (s.parse::<i64>().ok()?, 1),
    };
    field.ratio(num, den).ok()
}

fn parse_indices(s: &str) -> Option<Vec<usize>> {
    if s == "none" {
        return Some(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse().ok()).collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    None,
    Quiver,
    Triangular,
    Structure,
    Module,
}

pub fn parse_spec(text: &str) -> Result<SpecFile, ParseError> {
    let lines = tokenize(text);
    let mut field: Option<Field> = None;
    let mut algebra: Option<AlgebraBlock> = None;
    let mut modules: Vec<ModuleBlock> = Vec::new();
    let mut params = Params::default();
    let mut block = Block::None;

    for line in &lines {
        let key = line.tokens[0].text;
        let need_field = || field.ok_or_else(|| line.err(1, "a `field` line before this one"));
        match key {
            "field" => {
                if field.is_some() {
                    return Err(line.err(1, "a single `field` line"));
                }
                let kind = line.tok(1, "`q` or `fp <prime>`")?;
                field = Some(match kind.text {
                    "q" => {
                        line.no_more(2)?;
                        Field::Rational
                    }
                    "fp" => {
                        let p = line.tok(2, "a prime")?;
                        let f = p
                            .text
                            .parse::<u64>()
                            .ok()
                            .and_then(|p| Field::prime(p).ok())
                            .ok_or_else(|| line.err(p.col, "a prime"))?;
                        line.no_more(3)?;
                        f
                    }
                    _ => return Err(line.err(kind.col, "`q` or `fp <prime>`")),
                });
                block = Block::None;
            }
            "quiver" | "triangular" | "product" | "structure" => {
                if algebra.is_some() {
                    return Err(line.err(1, "a single algebra block"));
                }
                let f = need_field()?;
                algebra = Some(match key {
                    "quiver" => {
                        let kw = line.tok(1, "`vertices`")?;
                        if kw.text != "vertices" {
                            return Err(line.err(kw.col, "`vertices`"));
                        }
                        let names: Vec<String> = line.tokens[2..].iter().map(|t| t.text.to_string()).collect();
                        if names.is_empty() {
                            return Err(line.err(line.col_of(2), "at least one vertex name"));
                        }
                        for (k, t) in line.tokens[2..].iter().enumerate() {
                            if names[..k].contains(&t.text.to_string()) {
                                return Err(line.err(t.col, "distinct vertex names"));
                            }
                        }
                        block = Block::Quiver;
                        AlgebraBlock::Quiver {
                            quiver: Quiver::new(names),
                            relations: Vec::new(),
                        }
                    }
                    "triangular" => {
                        let dr = line.usize_at(1, "dim R")?;
                        let ds = line.usize_at(2, "dim S")?;
                        let dm = line.usize_at(3, "dim M")?;
                        line.no_more(4)?;
                        if dr == 0 || ds == 0 {
                            return Err(line.err(line.col_of(if dr == 0 { 1 } else { 2 }), "a positive corner dimension"));
                        }
                        block = Block::Triangular;
                        AlgebraBlock::Triangular {
                            r: Structure::empty(dr),
                            s: Structure::empty(ds),
                            m_dim: dm,
                            m_left: vec![None; ds],
                            m_right: vec![None; dr],
                        }
                    }
                    "product" => {
                        let names: Vec<String> = line.tokens[1..].iter().map(|t| t.text.to_string()).collect();
                        if names.is_empty() {
                            return Err(line.err(line.col_of(1), "at least one factor"));
                        }
                        for t in &line.tokens[1..] {
                            if named_algebra(t.text, f).is_none() {
                                return Err(line.err(t.col, "a factor among k, A<n>, T2, loop"));
                            }
                        }
                        block = Block::None;
                        AlgebraBlock::Product(names)
                    }
                    _ => {
                        let kw = line.tok(1, "`dim`")?;
                        if kw.text != "dim" {
                            return Err(line.err(kw.col, "`dim`"));
                        }
                        let d = line.usize_at(2, "a positive dimension")?;
                        line.no_more(3)?;
                        if d == 0 {
                            return Err(line.err(line.col_of(2), "a positive dimension"));
                        }
                        block = Block::Structure;
                        AlgebraBlock::Structure(Structure::empty(d))
                    }
                });
            }
            "arrow" | "relation" => {
                let f = need_field()?;
                let Some(AlgebraBlock::Quiver { quiver, relations }) = algebra.as_mut().filter(|_| block == Block::Quiver)
                else {
                    return Err(line.err(1, "`arrow` and `relation` inside a quiver block"));
                };
                if key == "arrow" {
                    let name = line.tok(1, "an arrow name")?;
                    if quiver.arrow_index(name.text).is_some() || name.text.contains('*') {
                        return Err(line.err(name.col, "a new arrow name without `*`"));
                    }
                    let vertex = |k: usize, what: &str| -> Result<usize, ParseError> {
                        let t = line.tok(k, what)?;
                        quiver
                            .vertices
                            .iter()
                            .position(|v| v == t.text)
                            .ok_or_else(|| line.err(t.col, what))
                    };
                    let s = vertex(2, "a source vertex")?;
                    let t = vertex(3, "a target vertex")?;
                    line.no_more(4)?;
                    *quiver = std::mem::take(quiver).arrow(name.text, s, t);
                } else {
                    relations.push(parse_relation(line, quiver, f)?);
                }
            }
            "label" | "mul" | "unit" | "idempotent" | "radical" if block == Block::Structure => {
                let f = need_field()?;
                let Some(AlgebraBlock::Structure(st)) = algebra.as_mut() else {
                    unreachable!("structure block without a structure algebra")
                };
                st.stanza(line, 0, f)?;
            }
            "r" | "s" | "m" if block == Block::Triangular => {
                let f = need_field()?;
                let Some(AlgebraBlock::Triangular {
                    r,
                    s,
                    m_dim,
                    m_left,
                    m_right,
                }) = algebra.as_mut()
                else {
                    unreachable!("triangular block without a triangular algebra")
                };
                match key {
                    "r" => r.stanza(line, 1, f)?,
                    "s" => s.stanza(line, 1, f)?,
                    _ => {
                        let side = line.tok(1, "`left` or `right`")?;
                        let slots = match side.text {
                            "left" => m_left,
                            "right" => m_right,
                            _ => return Err(line.err(side.col, "`left` or `right`")),
                        };
                        let i = line.usize_at(2, "a basis index")?;
                        if i == 0 || i > slots.len() {
                            return Err(line.err(line.col_of(2), format!("a basis index in 1..={}", slots.len())));
                        }
                        let entries = line.scalars_from(3, *m_dim * *m_dim, f)?;
                        slots[i - 1] = Some(Matrix::from_flat(f, *m_dim, *m_dim, entries));
                    }
                }
            }
            "module" => {
                need_field()?;
                let name = line.tok(1, "a module name")?;
                if modules.iter().any(|m| m.name == name.text) {
                    return Err(line.err(name.col, "a new module name"));
                }
                let kw = line.tok(2, "`dim`")?;
                if kw.text != "dim" {
                    return Err(line.err(kw.col, "`dim`"));
                }
                let d = line.usize_at(3, "a dimension")?;
                line.no_more(4)?;
                modules.push(ModuleBlock {
                    name: name.text.to_string(),
                    dim: d,
                    actions: Vec::new(),
                });
                block = Block::Module;
            }
            "action" if block == Block::Module => {
                let f = need_field()?;
                let m = modules.last_mut().expect("module block is open");
                let label = line.tok(1, "a basis label")?;
                if m.actions.iter().any(|(l, _)| l == label.text) {
                    return Err(line.err(label.col, "a label not already given"));
                }
                let entries = line.scalars_from(2, m.dim * m.dim, f)?;
                m.actions.push((label.text.to_string(), Matrix::from_flat(f, m.dim, m.dim, entries)));
            }
            "seed" => {
                let t = line.tok(1, "a seed")?;
                params.seed = Some(t.text.parse().map_err(|_| line.err(t.col, "a seed"))?);
                line.no_more(2)?;
            }
            "simples" | "idempotent" => {
                let t = line.tok(1, "comma-separated indices or `none`")?;
                let v = parse_indices(t.text).ok_or_else(|| line.err(t.col, "comma-separated indices or `none`"))?;
                line.no_more(2)?;
                if key == "simples" {
                    params.simples = Some(v);
                } else {
                    params.idempotent = Some(v);
                }
            }
            "kind" => {
                let t = line.tok(1, "`killed` or `full`")?;
                if !matches!(t.text, "killed" | "full") {
                    return Err(line.err(t.col, "`killed` or `full`"));
                }
                line.no_more(2)?;
                params.kind = Some(t.text.to_string());
            }
            "use-module" => {
                let t = line.tok(1, "a module name")?;
                line.no_more(2)?;
                params.module = Some(t.text.to_string());
            }
            _ => return Err(line.err(1, "a known keyword")),
        }
    }

    let end = ParseError {
        line: lines.last().map_or(1, |l| l.no),
        col: 1,
        expected: String::new(),
    };
    let field = field.ok_or_else(|| ParseError {
        expected: "a `field` line".into(),
        ..end.clone()
    })?;
    let algebra = algebra.ok_or_else(|| ParseError {
        expected: "an algebra block".into(),
        ..end
    })?;
    Ok(SpecFile {
        field,
        algebra,
        modules,
        params,
    })
}

fn parse_relation(line: &Line<'_>, quiver: &Quiver, field: Field) -> Result<Relation, ParseError> {
    let mut rel: Relation = Vec::new();
    let mut sign = field.one();
    let mut expect_term = true;
    for t in &line.tokens[1..] {
        match t.text {
            "+" | "-" if !expect_term => {
                sign = if t.text == "-" { field.one().neg() } else { field.one() };
                expect_term = true;
            }
            _ if expect_term => {
                let (neg, body) = match t.text.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, t.text),
                };
                let mut coeff = if neg { sign.neg() } else { sign.clone() };
                let mut path = Vec::new();
                for factor in body.split('*') {
                    if let Some(a) = quiver.arrow_index(factor) {
                        path.push(a);
                    } else if let Some(c) = parse_scalar(factor, field).filter(|_| path.is_empty()) {
                        coeff = coeff.mul(&c);
                    } else {
                        return Err(line.err(t.col, "a term `[coeff*]arrow*arrow...`"));
                    }
                }
                if path.is_empty() {
                    return Err(line.err(t.col, "a term with at least one arrow"));
                }
                rel.push((coeff, path));
                expect_term = false;
            }
            _ => return Err(line.err(t.col, if expect_term { "a term" } else { "`+` or `-`" })),
        }
    }
    if expect_term {
        return Err(line.err(line.end_col + 1, "a term"));
    }
    Ok(rel)
}

impl Structure {
    fn empty(dim: usize) -> Structure {
        Structure {
            dim,
            labels: None,
            products: Vec::new(),
            unit: None,
            idempotents: Vec::new(),
            radical: None,
        }
    }

    fn stanza(&mut self, line: &Line<'_>, at: usize, field: Field) -> Result<(), ParseError> {
        let kw = line.tok(at, "`label`, `mul`, `unit`, `idempotent` or `radical`")?;
        let d = self.dim;
        match kw.text {
            "label" => {
                let names: Vec<String> = line.tokens[at + 1..].iter().map(|t| t.text.to_string()).collect();
                if names.len() != d {
                    return Err(line.err(line.col_of(at + 1 + d.min(names.len())), format!("{d} labels")));
                }
                self.labels = Some(names);
            }
            "mul" => {
                let i = line.usize_at(at + 1, "a basis index")?;
                let j = line.usize_at(at + 2, "a basis index")?;
                for (k, x) in [(at + 1, i), (at + 2, j)] {
                    if x == 0 || x > d {
                        return Err(line.err(line.col_of(k), format!("a basis index in 1..={d}")));
                    }
                }
                let v = line.scalars_from(at + 3, d, field)?;
                self.products.retain(|(a, b, _)| (*a, *b) != (i, j));
                self.products.push((i, j, v));
            }
            "unit" => self.unit = Some(line.scalars_from(at + 1, d, field)?),
            "idempotent" => self.idempotents.push(line.scalars_from(at + 1, d, field)?),
            "radical" => {
                let v = line.scalars_from(at + 1, d, field)?;
                self.radical.get_or_insert_with(Vec::new).push(v);
            }
            _ => return Err(line.err(kw.col, "`label`, `mul`, `unit`, `idempotent` or `radical`")),
        }
        Ok(())
    }

    /// An untouched one-dimensional stanza stands for the ground field.
    fn is_default(&self) -> bool {
        *self == Structure::empty(self.dim)
    }

    fn build(&self, field: Field) -> serrecat::Result<Algebra> {
        if self.dim == 1 && self.is_default() {
            return Ok(Algebra::ground_field(field));
        }
        let d = self.dim;
        let mut table = vec![vec![vec![field.zero(); d]; d]; d];
        for (i, j, v) in &self.products {
            table[i - 1][j - 1] = v.clone();
        }
        let labels = self
            .labels
            .clone()
            .unwrap_or_else(|| (1..=d).map(|k| format!("b{k}")).collect());
        let unit = self.unit.clone().unwrap_or_else(|| vec![field.zero(); d]);
        Algebra::new(field, labels, table, unit, self.idempotents.clone(), self.radical.clone())
    }

    fn write(&self, out: &mut String, prefix: &str) {
        let vec = |v: &[Scalar]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        if let Some(l) = &self.labels {
            let _ = writeln!(out, "{prefix}label {}", l.join(" "));
        }
        for (i, j, v) in &self.products {
            let _ = writeln!(out, "{prefix}mul {i} {j} {}", vec(v));
        }
        if let Some(u) = &self.unit {
            let _ = writeln!(out, "{prefix}unit {}", vec(u));
        }
        for e in &self.idempotents {
            let _ = writeln!(out, "{prefix}idempotent {}", vec(e));
        }
        for r in self.radical.iter().flatten() {
            let _ = writeln!(out, "{prefix}radical {}", vec(r));
        }
    }
}

/// The small algebras a `product` line may name.
pub fn named_algebra(name: &str, field: Field) -> Option<serrecat::Result<Arc<Algebra>>> {
    match name {
        "k" => Some(Ok(examples::ground(field))),
        "T2" => Some(examples::t2(field)),
        "loop" => {
            let q = Quiver::new(vec!["1".into()]).arrow("x", 0, 0);
            Some(path_algebra(&q, &[vec![(field.one(), vec![0, 0])]], field, 10_000).map(Arc::new))
        }
        _ => {
            let n: usize = name.strip_prefix('A')?.parse().ok().filter(|&n| n > 0)?;
            Some(examples::linear_a(n, field))
        }
    }
}

fn matrix_text(m: &Matrix) -> String {
    m.flatten().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl SpecFile {
    pub fn build_algebra(&self, path_cap: usize) -> Result<Arc<Algebra>, CliError> {
        let f = self.field;
        let a = match &self.algebra {
            AlgebraBlock::Quiver { quiver, relations } => path_algebra(quiver, relations, f, path_cap)?,
            AlgebraBlock::Structure(st) => st.build(f)?,
            AlgebraBlock::Product(names) => {
                let mut parts = names
                    .iter()
                    .map(|n| named_algebra(n, f).expect("factor names are checked when parsing"));
                let first = parts.next().expect("at least one factor")?;
                let mut acc = (*first).clone();
                for p in parts {
                    acc = product_algebra(&acc, &*p?)?;
                }
                acc
            }
            AlgebraBlock::Triangular {
                r,
                s,
                m_dim,
                m_left,
                m_right,
            } => {
                let r = Arc::new(r.build(f)?);
                let s = Arc::new(s.build(f)?);
                let fill = |slots: &[Option<Matrix>], alg: &Algebra, side: &str| -> Result<Vec<Matrix>, CliError> {
                    slots
                        .iter()
                        .enumerate()
                        .map(|(k, slot)| match slot {
                            Some(m) => Ok(m.clone()),
                            None if alg.dim() == 1 => Ok(Matrix::identity(f, *m_dim)),
                            None => Err(CliError::Usage(format!("missing `m {side} {}` stanza", k + 1))),
                        })
                        .collect()
                };
                let left = fill(m_left, &s, "left")?;
                let right = fill(m_right, &r, "right")?;
                let m = Bimodule::new(s.clone(), r.clone(), *m_dim, left, right)?;
                triangular_algebra(&r, &s, &m)?
            }
        };
        Ok(Arc::new(a))
    }

    /// The module called `name`. Actions not listed are derived from
    /// products of listed ones; names `P<i>`, `S<i>`, `I<i>` and `regular`
    /// refer to the built-in modules when no block of that name exists.
    pub fn module(&self, name: &str, a: &Arc<Algebra>) -> Result<Module, CliError> {
        let Some(block) = self.modules.iter().find(|m| m.name == name) else {
            return builtin_module(name, a);
        };
        let d = block.dim;
        let mut known: Vec<Option<Matrix>> = vec![None; a.dim()];
        for (label, m) in &block.actions {
            let k = a
                .labels()
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| CliError::Usage(format!("module {name}: no basis label `{label}`")))?;
            known[k] = Some(m.clone());
        }
        loop {
            let mut grew = false;
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let (Some(x), Some(y)) = (&known[i], &known[j]) else { continue };
                    let p = a.mul(&a.basis_element(i), &a.basis_element(j));
                    let nz: Vec<usize> = (0..p.len()).filter(|&k| !p[k].is_zero()).collect();
                    if let [k] = nz[..] {
                        if known[k].is_none() {
                            known[k] = Some(x.mul(y).scale(&p[k].inv()));
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let action = known
            .into_iter()
            .zip(a.labels())
            .map(|(m, l)| m.ok_or_else(|| CliError::Usage(format!("module {name}: action of `{l}` is missing"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Module::new(a.clone(), d, action)?)
    }

    /// Serialises back to the input format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self.field {
            Field::Rational => out.push_str("field q\n"),
            Field::Prime(p) => {
                let _ = writeln!(out, "field fp {p}");
            }
        }
        match &self.algebra {
            AlgebraBlock::Quiver { quiver, relations } => {
                let _ = writeln!(out, "quiver vertices {}", quiver.vertices.join(" "));
                for a in &quiver.arrows {
                    let _ = writeln!(out, "arrow {} {} {}", a.name, quiver.vertices[a.source], quiver.vertices[a.target]);
                }
                for rel in relations {
                    let terms: Vec<String> = rel
                        .iter()
                        .map(|(c, p)| {
                            let path: Vec<&str> = p.iter().map(|&k| quiver.arrows[k].name.as_str()).collect();
                            format!("{c}*{}", path.join("*"))
                        })
                        .collect();
                    let _ = writeln!(out, "relation {}", terms.join(" + "));
                }
            }
            AlgebraBlock::Product(names) => {
                let _ = writeln!(out, "product {}", names.join(" "));
            }
            AlgebraBlock::Structure(st) => {
                let _ = writeln!(out, "structure dim {}", st.dim);
                st.write(&mut out, "");
            }
            AlgebraBlock::Triangular {
                r,
                s,
                m_dim,
                m_left,
                m_right,
            } => {
                let _ = writeln!(out, "triangular {} {} {m_dim}", r.dim, s.dim);
                r.write(&mut out, "r ");
                s.write(&mut out, "s ");
                for (side, slots) in [("left", m_left), ("right", m_right)] {
                    for (k, m) in slots.iter().enumerate() {
                        if let Some(m) = m {
                            let _ = writeln!(out, "m {side} {} {}", k + 1, matrix_text(m));
                        }
                    }
                }
            }
        }
        for m in &self.modules {
            let _ = writeln!(out, "module {} dim {}", m.name, m.dim);
            for (l, x) in &m.actions {
                let _ = writeln!(out, "action {l} {}", matrix_text(x));
            }
        }
        let idx = |v: &[usize]| {
            if v.is_empty() {
                "none".to_string()
            } else {
                v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
            }
        };
        let p = &self.params;
        if let Some(s) = p.seed {
            let _ = writeln!(out, "seed {s}");
        }
        if let Some(v) = &p.simples {
            let _ = writeln!(out, "simples {}", idx(v));
        }
        if let Some(v) = &p.idempotent {
            let _ = writeln!(out, "idempotent {}", idx(v));
        }
        if let Some(k) = &p.kind {
            let _ = writeln!(out, "kind {k}");
        }
        if let Some(m) = &p.module {
            let _ = writeln!(out, "use-module {m}");
        }
        out
    }
}

fn builtin_module(name: &str, a: &Arc<Algebra>) -> Result<Module, CliError> {
    use serrecat::modcat::{injective, projective, simples};
    if name == "regular" {
        return Ok(Module::regular(a));
    }
    let unknown = || CliError::Usage(format!("no module named `{name}`"));
    let (kind, rest) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
    let i: usize = rest.parse().map_err(|_| unknown())?;
    if i >= a.num_idempotents() {
        return Err(CliError::Usage(format!("module {name}: index out of range")));
    }
    Ok(match kind {
        "P" => projective(a, i)?,
        "I" => injective(a, i)?,
        "S" => simples(a)?.swap_remove(i),
        _ => return Err(unknown()),
    })
}

/// Coefficient vector of a sum of distinguished idempotents.
pub fn idempotent_element(a: &Algebra, idx: &[usize]) -> Result<Element, CliError> {
    let set = idx.iter().copied().collect();
    check_indices(a, idx)?;
    Ok(a.idempotent_sum(&set)?)
}

pub fn check_indices(a: &Algebra, idx: &[usize]) -> Result<(), CliError> {
    match idx.iter().find(|&&i| i >= a.num_idempotents()) {
        Some(i) => Err(CliError::Usage(format!(
            "index {i} out of range: the algebra has {} simples",
            a.num_idempotents()
        ))),
        None => Ok(()),
    }
}
