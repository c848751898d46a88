//! Set-partition diagrams and their monoid.
//!
//! A diagram of rank `k` partitions the vertices `1..K` (top) and `1'..K'`
//! (bottom), `K = ceil(k)`. Vertices are written as signed integers: `+i` is
//! the top vertex `i`, `-i` the bottom vertex `i'`. At a half-integer rank the
//! vertices `K` and `K'` must share a block.
//!
//! Internally a diagram stores a restricted growth string over the vertex
//! order `1, .., K, 1', .., K'`, which makes equality, ordering and hashing
//! structural.

mod factor;
mod generators;
mod planar;

pub use factor::{evaluate_word, factorize};
pub use generators::{generator, generators, Gen};
pub use planar::{planar_to_tl, tl_to_planar};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rank `k` in half-integer steps, stored as `2k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(u8);

impl Rank {
    pub const ZERO: Rank = Rank(0);

    pub const fn from_double(double_rank: u8) -> Rank {
        Rank(double_rank)
    }

    pub fn integer(k: usize) -> Rank {
        Rank((2 * k) as u8)
    }

    /// The rank `k + 1/2`.
    pub fn half(k: usize) -> Rank {
        Rank((2 * k + 1) as u8)
    }

    pub fn double_rank(self) -> usize {
        self.0 as usize
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn is_half(self) -> bool {
        self.0 % 2 == 1
    }

    /// Number of top vertices, `ceil(k)`.
    pub fn ambient(self) -> usize {
        (self.0 as usize).div_ceil(2)
    }

    /// `floor(k)`.
    pub fn floor(self) -> usize {
        self.0 as usize / 2
    }

    /// `k + 1/2`
    pub fn up(self) -> Rank {
        Rank(self.0 + 1)
    }

    /// `k - 1/2`
    pub fn down(self) -> Option<Rank> {
        self.0.checked_sub(1).map(Rank)
    }

    /// Accepts `"k"` or `"m/2"`.
    pub fn parse(s: &str) -> Result<Rank> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rank: {s:?}"));
        let double = match s.split_once('/') {
            Some((m, "2")) => m.trim().parse::<u8>().map_err(|_| bad())?,
            Some(_) => return Err(bad()),
            None => s
                .parse::<u8>()
                .ok()
                .and_then(|k| k.checked_mul(2))
                .ok_or_else(bad)?,
        };
        Ok(Rank(double))
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Largest double rank [`enumerate`] accepts by default.
pub const DEFAULT_ENUM_LIMIT: usize = 8;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    rank: Rank,
    labels: Vec<u8>,
}

fn canonical_labels(raw: impl IntoIterator<Item = usize>) -> Vec<u8> {
    let mut map: Vec<Option<u8>> = Vec::new();
    let mut next = 0u8;
    raw.into_iter()
        .map(|l| {
            if l >= map.len() {
                map.resize(l + 1, None);
            }
            *map[l].get_or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

/// Small union-find used by composition and the ε maps.
pub(crate) struct Dsu(Vec<usize>);

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub in_s: bool,
    pub in_i: bool,
    pub in_p: bool,
    pub in_b: bool,
    pub in_t: bool,
}

impl Diagram {
    /// Builds a diagram from a label per vertex (vertex order `1..K, 1'..K'`);
    /// labels are canonicalized and the half-integer constraint is checked.
    pub fn from_labels(rank: Rank, raw: &[usize]) -> Result<Diagram> {
        let k = rank.ambient();
        if raw.len() != 2 * k {
            return Err(Error::NotAPartition(format!(
                "expected {} vertices, got {}",
                2 * k,
                raw.len()
            )));
        }
        let d = Diagram {
            rank,
            labels: canonical_labels(raw.iter().copied()),
        };
        if !d.satisfies_constraint() {
            return Err(Error::HalfIntegerConstraintViolated);
        }
        Ok(d)
    }

    pub(crate) fn from_labels_unchecked(rank: Rank, raw: impl IntoIterator<Item = usize>) -> Diagram {
        Diagram {
            rank,
            labels: canonical_labels(raw),
        }
    }

    pub fn new(rank: Rank, blocks: &[Vec<i64>]) -> Result<Diagram> {
        let k = rank.ambient();
        let mut raw = vec![usize::MAX; 2 * k];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::NotAPartition("empty block".into()));
            }
            for &v in block {
                let idx = vertex_index(k, v)?;
                if raw[idx] != usize::MAX {
                    return Err(Error::NotAPartition(format!("vertex {v} repeated")));
                }
                raw[idx] = b;
            }
        }
        if let Some(missing) = raw.iter().position(|&l| l == usize::MAX) {
            return Err(Error::NotAPartition(format!(
                "vertex {} missing",
                vertex_of(k, missing)
            )));
        }
        Diagram::from_labels(rank, &raw)
    }

    pub fn identity(rank: Rank) -> Diagram {
        let k = rank.ambient();
        Diagram::from_labels_unchecked(rank, (0..k).chain(0..k))
    }

    /// The unique diagram of rank 0.
    pub fn empty() -> Diagram {
        Diagram::identity(Rank::ZERO)
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    fn k(&self) -> usize {
        self.rank.ambient()
    }

    pub fn top(&self, i: usize) -> u8 {
        self.labels[i]
    }

    pub fn bottom(&self, i: usize) -> u8 {
        self.labels[self.k() + i]
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn satisfies_constraint(&self) -> bool {
        let k = self.k();
        !self.rank.is_half() || self.labels[k - 1] == self.labels[2 * k - 1]
    }

    /// Blocks as signed vertex lists, each sorted by `|v|` then top before
    /// bottom, and the blocks sorted by their first vertex in that order.
    pub fn blocks(&self) -> Vec<Vec<i64>> {
        let k = self.k();
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (idx, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(vertex_of(k, idx));
        }
        let key = |v: &i64| (v.abs(), *v < 0);
        for b in &mut blocks {
            b.sort_by_key(key);
        }
        blocks.sort_by_key(|b| key(&b[0]));
        blocks
    }

    /// Composition with `self` placed above `other`; also returns the number
    /// of blocks lost in the middle row.
    pub fn compose(&self, other: &Diagram) -> Result<(Diagram, usize)> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(
                self.rank.to_string(),
                other.rank.to_string(),
            ));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Diagram) -> (Diagram, usize) {
        let k = self.k();
        // nodes: top 0..k, middle k..2k, bottom 2k..3k
        let mut dsu = Dsu::new(3 * k);
        let mut first = vec![usize::MAX; 2 * k + 1];
        for (idx, &l) in self.labels.iter().enumerate() {
            let f = &mut first[l as usize];
            if *f == usize::MAX {
                *f = idx;
            } else {
                dsu.union(*f, idx);
            }
        }
        first.iter_mut().for_each(|f| *f = usize::MAX);
        for (idx, &l) in other.labels.iter().enumerate() {
            let node = idx + k;
            let f = &mut first[l as usize];
            if *f == usize::MAX {
                *f = node;
            } else {
                dsu.union(*f, node);
            }
        }
        let mut outer = vec![false; 3 * k];
        let raw: Vec<usize> = (0..k)
            .chain(2 * k..3 * k)
            .map(|node| {
                let r = dsu.find(node);
                outer[r] = true;
                r
            })
            .collect();
        let mut removed = 0;
        for node in k..2 * k {
            if dsu.find(node) == node && !outer[node] {
                removed += 1;
            }
        }
        (Diagram::from_labels_unchecked(self.rank, raw), removed)
    }

    /// Number of blocks meeting both rows.
    pub fn propagating_number(&self) -> usize {
        let k = self.k();
        let mut top = vec![false; 2 * k];
        for i in 0..k {
            top[self.labels[i] as usize] = true;
        }
        let mut seen = vec![false; 2 * k];
        let mut count = 0;
        for i in 0..k {
            let l = self.labels[k + i] as usize;
            if top[l] && !seen[l] {
                seen[l] = true;
                count += 1;
            }
        }
        count
    }

    /// Labels read around the boundary cycle `1..K, K'..1'`.
    pub(crate) fn cyclic_labels(&self) -> Vec<u8> {
        let k = self.k();
        (0..k)
            .map(|i| self.labels[i])
            .chain((0..k).rev().map(|i| self.labels[k + i]))
            .collect()
    }

    /// Noncrossing with respect to the boundary cycle `1..K, K'..1'`.
    pub fn is_planar(&self) -> bool {
        let c = self.cyclic_labels();
        let m = c.len();
        for a in 0..m {
            for b in a + 1..m {
                if c[b] == c[a] {
                    continue;
                }
                for x in b + 1..m {
                    if c[x] != c[a] {
                        continue;
                    }
                    if (x + 1..m).any(|y| c[y] == c[b]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn classify(&self) -> Classification {
        let k = self.k();
        let pn = self.propagating_number();
        let mut sizes = vec![0usize; self.num_blocks()];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        let in_p = self.is_planar();
        let in_b = sizes.iter().all(|&s| s == 2);
        Classification {
            in_s: pn == k,
            in_i: pn < k,
            in_p,
            in_b,
            in_t: in_p && in_b,
        }
    }

    /// Top and bottom rows exchanged.
    pub fn flip(&self) -> Diagram {
        let k = self.k();
        Diagram::from_labels_unchecked(
            self.rank,
            self.labels[k..]
                .iter()
                .chain(&self.labels[..k])
                .map(|&l| l as usize),
        )
    }

    /// `self <= other` in the coarsening order: every block of `self` lies in
    /// a block of `other`.
    pub fn coarsens(&self, other: &Diagram) -> Result<bool> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(
                self.rank.to_string(),
                other.rank.to_string(),
            ));
        }
        Ok(self.refines_unchecked(other))
    }

    pub(crate) fn refines_unchecked(&self, other: &Diagram) -> bool {
        let mut image = vec![u8::MAX; self.num_blocks()];
        for (&a, &b) in self.labels.iter().zip(&other.labels) {
            let slot = &mut image[a as usize];
            if *slot == u8::MAX {
                *slot = b;
            } else if *slot != b {
                return false;
            }
        }
        true
    }

    /// Block sizes indexed by label.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.num_blocks()];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// The same set partition one half step up. From a half-integer rank this
    /// only relaxes the constraint; from an integer rank it appends the
    /// strand `{K+1, (K+1)'}`.
    pub fn embed_up(&self) -> Diagram {
        let target = self.rank.up();
        if self.rank.is_half() {
            return Diagram {
                rank: target,
                labels: self.labels.clone(),
            };
        }
        let k = self.k();
        let fresh = self.num_blocks();
        let raw = self.labels[..k]
            .iter()
            .map(|&l| l as usize)
            .chain([fresh])
            .chain(self.labels[k..].iter().map(|&l| l as usize))
            .chain([fresh]);
        Diagram::from_labels_unchecked(target, raw)
    }

    /// Merges the blocks of `K` and `K'`, landing at rank `k - 1/2`.
    pub(crate) fn merge_last(&self) -> Diagram {
        let k = self.k();
        let (a, b) = (self.labels[k - 1], self.labels[2 * k - 1]);
        Diagram::from_labels_unchecked(
            self.rank.down().expect("rank 0 has no vertices to merge"),
            self.labels
                .iter()
                .map(|&l| if l == b { a as usize } else { l as usize }),
        )
    }

    /// Deletes `K` and `K'` (a half-integer rank is assumed), landing at
    /// rank `k - 1/2`; reports whether a whole block disappeared.
    pub(crate) fn delete_last(&self) -> (Diagram, bool) {
        let k = self.k();
        let l = self.labels[k - 1];
        let whole = self.labels.iter().filter(|&&x| x == l).count() == 2;
        let raw = self.labels[..k - 1]
            .iter()
            .chain(&self.labels[k..2 * k - 1])
            .map(|&x| x as usize);
        (
            Diagram::from_labels_unchecked(self.rank.down().unwrap(), raw),
            whole,
        )
    }

    /// Number of connected components after joining each `i` to `i'`.
    pub fn closure_components(&self) -> usize {
        let k = self.k();
        let mut dsu = Dsu::new(self.num_blocks());
        for i in 0..k {
            dsu.union(self.labels[i] as usize, self.labels[k + i] as usize);
        }
        (0..self.num_blocks()).filter(|&b| dsu.find(b) == b).count()
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            double_rank: self.rank.double_rank() as u8,
            blocks: self.blocks(),
        }
    }

    pub fn from_json(j: &DiagramJson) -> Result<Diagram> {
        Diagram::new(Rank::from_double(j.double_rank), &j.blocks)
    }
}

/// Serialized diagram: `{"double_rank": 4, "blocks": [[1,2],[-1,-2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub double_rank: u8,
    pub blocks: Vec<Vec<i64>>,
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DiagramJson::deserialize(d)?;
        Diagram::from_json(&j).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn vertex_index(k: usize, v: i64) -> Result<usize> {
    let a = v.unsigned_abs() as usize;
    if v == 0 || a > k {
        return Err(Error::VertexOutOfRange(v));
    }
    Ok(if v > 0 { a - 1 } else { k + a - 1 })
}

pub(crate) fn vertex_of(k: usize, idx: usize) -> i64 {
    if idx < k {
        idx as i64 + 1
    } else {
        -((idx - k) as i64 + 1)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (bi, b) in self.blocks().iter().enumerate() {
            if bi > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (vi, v) in b.iter().enumerate() {
                if vi > 0 {
                    write!(f, ",")?;
                }
                if *v > 0 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{}'", -v)?;
                }
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]{}", self.rank, self)
    }
}

/// Restricted growth strings of a fixed length in lexicographic order.
pub struct RgsIter {
    current: Option<Vec<u8>>,
    maxes: Vec<u8>,
}

impl RgsIter {
    pub fn new(len: usize) -> Self {
        RgsIter {
            current: Some(vec![0; len]),
            maxes: vec![0; len],
        }
    }
}

impl Iterator for RgsIter {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        let cur = self.current.take()?;
        let out = cur.clone();
        let mut a = cur;
        let n = a.len();
        // maxes[i] = max(a[0..i])
        for i in (1..n).rev() {
            if a[i] <= self.maxes[i] {
                a[i] += 1;
                for j in i + 1..n {
                    a[j] = 0;
                    self.maxes[j] = self.maxes[j - 1].max(a[j - 1]);
                }
                self.current = Some(a);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// Every diagram of the given rank, each once, in label order.
pub fn enumerate(rank: Rank) -> Result<Vec<Diagram>> {
    enumerate_with_limit(rank, DEFAULT_ENUM_LIMIT)
}

pub fn enumerate_with_limit(rank: Rank, limit: usize) -> Result<Vec<Diagram>> {
    if rank.double_rank() > limit {
        return Err(Error::LimitExceeded(format!(
            "enumeration of rank {rank} exceeds double rank {limit}"
        )));
    }
    let k = rank.ambient();
    Ok(RgsIter::new(2 * k)
        .map(|labels| Diagram { rank, labels })
        .filter(Diagram::satisfies_constraint)
        .collect())
}

/// Diagrams of the ideal spanned by those with propagating number below
/// `ceil(k)`.
pub fn ideal_basis(rank: Rank) -> Result<Vec<Diagram>> {
    let k = rank.ambient();
    Ok(enumerate(rank)?
        .into_iter()
        .filter(|d| d.propagating_number() < k)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(double: u8, blocks: &[&[i64]]) -> Diagram {
        Diagram::new(
            Rank::from_double(double),
            &blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn rank_parse_and_display() {
        assert_eq!(Rank::parse("3/2").unwrap(), Rank::half(1));
        assert_eq!(Rank::parse("2").unwrap(), Rank::integer(2));
        assert_eq!(Rank::half(1).to_string(), "3/2");
        assert_eq!(Rank::half(1).ambient(), 2);
        assert!(Rank::parse("3/4").is_err());
    }

    #[test]
    fn construction_errors() {
        let r = Rank::integer(1);
        assert!(matches!(Diagram::new(r, &[vec![1]]), Err(Error::NotAPartition(_))));
        assert!(matches!(
            Diagram::new(r, &[vec![1, -1], vec![1]]),
            Err(Error::NotAPartition(_))
        ));
        assert!(matches!(
            Diagram::new(r, &[vec![1, -1, 2]]),
            Err(Error::VertexOutOfRange(2))
        ));
        assert!(matches!(
            Diagram::new(Rank::half(1), &[vec![1, -1, 2], vec![-2]]),
            Err(Error::HalfIntegerConstraintViolated)
        ));
        assert_eq!(
            Diagram::new(Rank::half(1), &[vec![1, -1], vec![2, -2]]).unwrap(),
            Diagram::identity(Rank::half(1))
        );
    }

    #[test]
    fn eight_vertex_example_has_propagating_number_three() {
        let x = d(
            16,
            &[
                &[1, 2, 4, -2, -5],
                &[3],
                &[5, 6, 7, -3, -4, -6, -7],
                &[8, -8],
                &[-1],
            ],
        );
        assert_eq!(x.propagating_number(), 3);
    }

    #[test]
    fn worked_composition() {
        let d1 = d(
            14,
            &[&[1, 3, -4], &[2], &[4, 5, 6], &[7], &[-1], &[-2, -3], &[-5, -7], &[-6]],
        );
        let d2 = d(
            14,
            &[&[1], &[2, 4], &[5, 7], &[3, -4, -5, -6], &[6, -2, -7], &[-1], &[-3]],
        );
        let expect = d(
            14,
            &[&[1, 3, -4, -5, -6], &[2], &[4, 5, 6], &[7], &[-1], &[-2, -7], &[-3]],
        );
        assert_eq!(d1.compose(&d2).unwrap(), (expect, 2));
    }

    #[test]
    fn small_compositions() {
        let p1 = d(2, &[&[1], &[-1]]);
        assert_eq!(p1.compose(&p1).unwrap(), (p1.clone(), 1));
        for x in enumerate(Rank::integer(3)).unwrap() {
            let id = Diagram::identity(x.rank());
            assert_eq!(id.compose(&x).unwrap(), (x.clone(), 0));
            assert_eq!(x.compose(&id).unwrap(), (x.clone(), 0));
        }
        assert!(matches!(
            p1.compose(&Diagram::identity(Rank::integer(2))),
            Err(Error::RankMismatch(..))
        ));
    }

    #[test]
    fn planarity_examples() {
        assert!(d(4, &[&[1, 2], &[-1, -2]]).is_planar());
        assert!(!d(4, &[&[1, -2], &[2, -1]]).is_planar());
        assert!(d(4, &[&[1, 2, -1, -2]]).is_planar());
    }

    #[test]
    fn classification_counts_at_rank_two() {
        let all = enumerate(Rank::integer(2)).unwrap();
        let cs: Vec<_> = all.iter().map(Diagram::classify).collect();
        let count = |f: fn(&Classification) -> bool| cs.iter().filter(|c| f(c)).count();
        assert_eq!(count(|c| c.in_s), 2);
        assert_eq!(count(|c| c.in_p), 14);
        assert_eq!(count(|c| c.in_b), 3);
        assert_eq!(count(|c| c.in_t), 2);
        assert_eq!(count(|c| c.in_i), 13);
        let s1 = d(4, &[&[1, -2], &[2, -1]]).classify();
        assert_eq!(
            s1,
            Classification { in_s: true, in_i: false, in_p: false, in_b: true, in_t: false }
        );
    }

    #[test]
    fn enumeration_sizes() {
        let sizes: Vec<usize> = (0..=6)
            .map(|dr| enumerate(Rank::from_double(dr)).unwrap().len())
            .collect();
        assert_eq!(sizes, vec![1, 1, 2, 5, 15, 52, 203]);
        assert!(matches!(
            enumerate(Rank::from_double(9)),
            Err(Error::LimitExceeded(_))
        ));
    }

    #[test]
    fn flip_examples() {
        let x = d(4, &[&[1, 2, -1], &[-2]]);
        assert_eq!(x.flip(), d(4, &[&[1, -1, -2], &[2]]));
        let s1 = d(4, &[&[1, -2], &[2, -1]]);
        assert_eq!(s1.flip(), s1);
    }

    #[test]
    fn coarsening_examples() {
        let p1 = d(2, &[&[1], &[-1]]);
        let id = Diagram::identity(Rank::integer(1));
        assert!(p1.coarsens(&id).unwrap());
        assert!(!id.coarsens(&p1).unwrap());
        let a1 = enumerate(Rank::integer(1)).unwrap();
        let pairs = a1
            .iter()
            .flat_map(|x| a1.iter().map(move |y| (x, y)))
            .filter(|(x, y)| x.coarsens(y).unwrap())
            .count();
        assert_eq!(pairs, 3);
    }

    #[test]
    fn monoid_laws_on_rank_two() {
        let all = enumerate(Rank::integer(2)).unwrap();
        for a in &all {
            for b in &all {
                let (ab, lab) = a.compose(b).unwrap();
                assert!(ab.propagating_number() <= a.propagating_number().min(b.propagating_number()));
                let (fba, lfba) = b.flip().compose(&a.flip()).unwrap();
                assert_eq!((fba, lfba), (ab.flip(), lab));
                for c in &all {
                    let (l, _) = ab.compose(c).unwrap();
                    let (r, _) = a.compose(&b.compose(c).unwrap().0).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let x = d(4, &[&[2, 1], &[-2, -1]]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"double_rank":4,"blocks":[[1,2],[-1,-2]]}"#);
        assert_eq!(serde_json::from_str::<Diagram>(&s).unwrap(), x);
    }

    #[test]
    fn closure_components_of_generators() {
        assert_eq!(d(4, &[&[1, 2], &[-1, -2]]).closure_components(), 1);
        assert_eq!(d(4, &[&[1, -2], &[2, -1]]).closure_components(), 1);
        assert_eq!(Diagram::identity(Rank::integer(3)).closure_components(), 3);
    }
}
