//! Integer partitions, counting sequences, the Young lattice and the two
//! Bratteli graphs of the tower: the abstract one (vertices are partitions
//! of at most the floor of the level) and the one at a fixed `n` (vertices
//! are partitions of `n` or `n - 1`).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::diagrams::Rank;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Parses `"2,1"`; the empty string or `"()"` is the empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("not a partition: {s:?}")))?;
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::BadShape(format!("{s:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((0..cols).map(|j| self.0.iter().filter(|&&r| r > j).count()).collect())
    }

    /// Boxes as 0-based (row, column).
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
    }

    pub fn hook(&self, i: usize, j: usize) -> usize {
        let conj = self.conjugate();
        (self.0[i] - j - 1) + (conj.0[j] - i - 1) + 1
    }

    pub fn hooks(&self) -> Vec<usize> {
        let conj = self.conjugate();
        self.boxes()
            .map(|(i, j)| (self.0[i] - j - 1) + (conj.0[j] - i - 1) + 1)
            .collect()
    }

    /// Contents `column - row` per box.
    pub fn contents(&self) -> Vec<i64> {
        self.boxes().map(|(i, j)| j as i64 - i as i64).collect()
    }

    /// Partitions with one more box, with the content of the added box.
    pub fn add_box(&self) -> Vec<(Partition, i64)> {
        let mut out = Vec::new();
        for i in 0..=self.0.len() {
            let row = self.0.get(i).copied().unwrap_or(0);
            if i == 0 || self.0[i - 1] > row {
                let mut p = self.0.clone();
                if i == p.len() {
                    p.push(1);
                } else {
                    p[i] += 1;
                }
                out.push((Partition(p), row as i64 - i as i64));
            }
        }
        out
    }

    /// Partitions with one box fewer, with the content of the removed box.
    pub fn remove_box(&self) -> Vec<(Partition, i64)> {
        let mut out = Vec::new();
        for i in 0..self.0.len() {
            let next = self.0.get(i + 1).copied().unwrap_or(0);
            if self.0[i] > next {
                let mut p = self.0.clone();
                p[i] -= 1;
                let content = p[i] as i64 - i as i64;
                out.push((Partition::new(p), content));
            }
        }
        out
    }

    /// `lambda` with its first row removed.
    pub fn drop_first_row(&self) -> Partition {
        Partition(self.0.iter().skip(1).copied().collect())
    }

    /// `(n - |mu|, mu)` when that is a partition.
    pub fn prepend_row(&self, n: usize) -> Option<Partition> {
        let first = n.checked_sub(self.size())?;
        if first < self.0.first().copied().unwrap_or(0) {
            return None;
        }
        let mut p = vec![first];
        p.extend(&self.0);
        Some(Partition::new(p))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sequence {
    Bell,
    Catalan,
    /// `(2l)!! = (2l - 1)(2l - 3)...1`
    OddDoubleFactorial,
    Factorial,
}

pub fn counting(kind: Sequence, m: usize) -> BigInt {
    match kind {
        Sequence::Bell => bell(m),
        Sequence::Catalan => binomial(2 * m, m) / BigInt::from(m + 1),
        Sequence::OddDoubleFactorial => (1..=m).map(|j| BigInt::from(2 * j - 1)).product(),
        Sequence::Factorial => factorial(m),
    }
}

pub fn factorial(m: usize) -> BigInt {
    (1..=m).map(BigInt::from).product()
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bell numbers from the Bell triangle.
pub fn bell(m: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..m {
        let mut next = vec![row.last().unwrap().clone()];
        for v in &row {
            let s = next.last().unwrap() + v;
            next.push(s);
        }
        row = next;
    }
    row[0].clone()
}

/// Number of standard tableaux of shape `lambda`, by the hook length formula.
pub fn syt_dimension(lambda: &Partition) -> BigInt {
    let h: BigInt = lambda.hooks().into_iter().map(BigInt::from).product();
    factorial(lambda.size()) / h
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Abstract,
    Concrete(usize),
}

/// A walk from the root, one partition per half level.
pub type Path = Vec<Partition>;

type PathMemo = Mutex<HashMap<(usize, usize), Arc<Vec<Path>>>>;

pub struct BratteliGraph {
    kind: GraphKind,
    levels: Vec<Vec<Partition>>,
    edges: Vec<Vec<(usize, usize)>>,
    counts: Vec<Vec<BigInt>>,
    index: Vec<HashMap<Partition, usize>>,
    path_memo: PathMemo,
}

impl BratteliGraph {
    /// Levels `0, 1/2, .., k`.
    pub fn build(kind: GraphKind, k: Rank) -> Result<Self> {
        let root = match kind {
            GraphKind::Abstract => Partition::empty(),
            GraphKind::Concrete(0) => {
                return Err(Error::BadParams("concrete graph needs n >= 1".into()))
            }
            GraphKind::Concrete(n) => Partition(vec![n]),
        };
        let mut levels = vec![vec![root]];
        let mut edges = Vec::new();
        for d in 0..k.double_rank() {
            let to_half = d % 2 == 0;
            let prev = &levels[d];
            let mut next: BTreeSet<Partition> = BTreeSet::new();
            let mut pairs = Vec::new();
            for (si, p) in prev.iter().enumerate() {
                let moves = if to_half { p.remove_box() } else { p.add_box() };
                let mut targets: Vec<Partition> = moves.into_iter().map(|m| m.0).collect();
                if kind == GraphKind::Abstract {
                    targets.push(p.clone());
                }
                for t in targets {
                    next.insert(t.clone());
                    pairs.push((si, t));
                }
            }
            // order vertices by size, then reverse lexicographic
            let mut vs: Vec<Partition> = next.into_iter().collect();
            vs.sort_by(|a, b| a.size().cmp(&b.size()).then(b.cmp(a)));
            let idx: HashMap<&Partition, usize> = vs.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let mut es: Vec<(usize, usize)> = pairs.iter().map(|(s, t)| (*s, idx[t])).collect();
            es.sort_unstable();
            edges.push(es);
            levels.push(vs);
        }
        let mut counts = vec![vec![BigInt::one()]];
        for (d, es) in edges.iter().enumerate() {
            let mut c = vec![BigInt::zero(); levels[d + 1].len()];
            for &(s, t) in es {
                c[t] += &counts[d][s];
            }
            counts.push(c);
        }
        let index = levels
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect())
            .collect();
        Ok(BratteliGraph {
            kind,
            levels,
            edges,
            counts,
            index,
            path_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn kind(&self) -> &GraphKind {
        &self.kind
    }

    pub fn top(&self) -> Rank {
        Rank::from_double((self.levels.len() - 1) as u8)
    }

    pub fn level(&self, level: Rank) -> &[Partition] {
        &self.levels[level.double_rank()]
    }

    pub fn edges(&self, from: Rank) -> &[(usize, usize)] {
        &self.edges[from.double_rank()]
    }

    fn locate(&self, level: Rank, v: &Partition) -> Result<usize> {
        self.index
            .get(level.double_rank())
            .and_then(|m| m.get(v))
            .copied()
            .ok_or_else(|| Error::VertexNotFound(format!("{v} at level {level}")))
    }

    pub fn path_count(&self, level: Rank, v: &Partition) -> Result<BigInt> {
        let i = self.locate(level, v)?;
        Ok(self.counts[level.double_rank()][i].clone())
    }

    /// `(vertex, path count)` at a level.
    pub fn counts_at(&self, level: Rank) -> Vec<(Partition, BigInt)> {
        let d = level.double_rank();
        self.levels[d]
            .iter()
            .cloned()
            .zip(self.counts[d].iter().cloned())
            .collect()
    }

    /// All walks from the root to `v`, in lexicographic order of vertex
    /// indices along the walk.
    pub fn paths(&self, level: Rank, v: &Partition) -> Result<Arc<Vec<Path>>> {
        let i = self.locate(level, v)?;
        Ok(self.paths_idx(level.double_rank(), i))
    }

    fn paths_idx(&self, d: usize, i: usize) -> Arc<Vec<Path>> {
        if let Some(p) = self.path_memo.lock().unwrap().get(&(d, i)) {
            return p.clone();
        }
        let result = if d == 0 {
            vec![vec![self.levels[0][i].clone()]]
        } else {
            let mut out = Vec::new();
            for &(s, t) in &self.edges[d - 1] {
                if t == i {
                    for p in self.paths_idx(d - 1, s).iter() {
                        let mut q = p.clone();
                        q.push(self.levels[d][i].clone());
                        out.push(q);
                    }
                }
            }
            out
        };
        let result = Arc::new(result);
        self.path_memo.lock().unwrap().insert((d, i), result.clone());
        result
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph bratteli {\n  rankdir=TB;\n");
        let name = |d: usize, i: usize| format!("l{d}_{i}");
        for (d, level) in self.levels.iter().enumerate() {
            s.push_str(&format!(
                "  {{ rank=same; label=\"{}\";",
                Rank::from_double(d as u8)
            ));
            for (i, p) in level.iter().enumerate() {
                let label: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
                s.push_str(&format!(" {} [label=\"{}\"];", name(d, i), label.join(",")));
            }
            s.push_str(" }\n");
        }
        for (d, es) in self.edges.iter().enumerate() {
            for &(a, b) in es {
                s.push_str(&format!("  {} -> {};\n", name(d, a), name(d + 1, b)));
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> Value {
        let levels: Vec<Value> = (0..self.levels.len())
            .map(|d| {
                json!({
                    "level": Rank::from_double(d as u8).to_string(),
                    "vertices": self.levels[d].iter().zip(&self.counts[d]).map(|(p, c)| {
                        json!({"partition": p, "paths": c.to_string()})
                    }).collect::<Vec<_>>(),
                })
            })
            .collect();
        let kind = match self.kind {
            GraphKind::Abstract => json!("abstract"),
            GraphKind::Concrete(n) => json!({"n": n}),
        };
        json!({"kind": kind, "levels": levels, "edges": self.edges})
    }
}

/// Whether removing first rows maps the concrete graph isomorphically onto
/// the abstract one, level by level and edge by edge.
pub fn first_row_isomorphic(concrete: &BratteliGraph, abstract_: &BratteliGraph) -> bool {
    if concrete.levels.len() != abstract_.levels.len() {
        return false;
    }
    for d in 0..concrete.levels.len() {
        let mapped: Vec<Partition> = concrete.levels[d].iter().map(Partition::drop_first_row).collect();
        let a: BTreeSet<&Partition> = abstract_.levels[d].iter().collect();
        let m: BTreeSet<&Partition> = mapped.iter().collect();
        if a != m || m.len() != mapped.len() {
            return false;
        }
        if d + 1 < concrete.levels.len() {
            let ce: BTreeSet<(Partition, Partition)> = concrete.edges[d]
                .iter()
                .map(|&(s, t)| {
                    (
                        concrete.levels[d][s].drop_first_row(),
                        concrete.levels[d + 1][t].drop_first_row(),
                    )
                })
                .collect();
            let ae: BTreeSet<(Partition, Partition)> = abstract_.edges[d]
                .iter()
                .map(|&(s, t)| (abstract_.levels[d][s].clone(), abstract_.levels[d + 1][t].clone()))
                .collect();
            if ce != ae {
                return false;
            }
        }
    }
    true
}
