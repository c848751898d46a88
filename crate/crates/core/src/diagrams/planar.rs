//! Planar diagrams of rank `k` against Temperley-Lieb diagrams on `2k`
//! strands: every vertex is doubled along the boundary cycle and each block
//! becomes the arcs joining consecutive doubled vertices around it. At a
//! half-integer rank the pinned pair `K, K'` becomes a single vertex carrying
//! one top and one bottom point.

use super::{Diagram, Dsu, Rank};
use crate::error::{Error, Result};

/// Boundary points of the target, in cycle order, with their owning
/// cycle vertex. Returns (owner per cycle point, target vertex index per
/// cycle point, number of cycle vertices).
fn layout(rank: Rank) -> (Vec<usize>, Vec<usize>, usize) {
    let d = rank.double_rank();
    let k = rank.ambient();
    let m = d; // strands of the target
    // cycle vertices: top 0..k-1 (or 0..k when integer), the pinned pair,
    // then bottoms in reverse
    let mut owner = Vec::with_capacity(2 * m);
    let mut point = Vec::with_capacity(2 * m);
    let top_doubled = if rank.is_half() { k - 1 } else { k };
    for v in 0..top_doubled {
        owner.extend([v, v]);
        point.extend([2 * v, 2 * v + 1]);
    }
    let mut next = top_doubled;
    if rank.is_half() {
        owner.extend([next, next]);
        point.extend([m - 1, m + m - 1]);
        next += 1;
    }
    for b in (0..top_doubled).rev() {
        owner.extend([next, next]);
        point.extend([m + 2 * b + 1, m + 2 * b]);
        next += 1;
    }
    (owner, point, next)
}

/// Partition label per cycle vertex.
fn cycle_vertex_labels(d: &Diagram) -> Vec<u8> {
    let k = d.rank().ambient();
    let c = d.cyclic_labels();
    if d.rank().is_half() {
        // drop the bottom copy of the pinned pair (cycle position k)
        c.iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, &l)| l)
            .collect()
    } else {
        c
    }
}

pub fn planar_to_tl(d: &Diagram) -> Result<Diagram> {
    if !d.is_planar() {
        return Err(Error::BadParams(format!("{d} is not planar")));
    }
    let rank = d.rank();
    let target = Rank::integer(rank.double_rank());
    let (_, point, nv) = layout(rank);
    let labels = cycle_vertex_labels(d);
    debug_assert_eq!(labels.len(), nv);
    let mut raw = vec![0usize; 2 * rank.double_rank()];
    for block in 0..d.num_blocks() {
        let members: Vec<usize> = (0..nv).filter(|&v| labels[v] as usize == block).collect();
        for (j, &u) in members.iter().enumerate() {
            let next = members[(j + 1) % members.len()];
            // second point of u joined to the first point of the next vertex
            let a = point[2 * u + 1];
            let b = point[2 * next];
            raw[a] = a;
            raw[b] = a;
        }
    }
    Diagram::from_labels(target, &raw)
}

/// Inverse of [`planar_to_tl`]; `rank` is the rank of the planar diagram.
pub fn tl_to_planar(t: &Diagram, rank: Rank) -> Result<Diagram> {
    if t.rank() != Rank::integer(rank.double_rank()) {
        return Err(Error::RankMismatch(t.rank().to_string(), rank.to_string()));
    }
    let (owner, point, nv) = layout(rank);
    let mut owner_of_point = vec![0; point.len()];
    for (c, &p) in point.iter().enumerate() {
        owner_of_point[p] = owner[c];
    }
    let mut dsu = Dsu::new(nv);
    let mut first = vec![usize::MAX; t.num_blocks()];
    for (p, &l) in t.labels().iter().enumerate() {
        let f = &mut first[l as usize];
        if *f == usize::MAX {
            *f = p;
        } else {
            dsu.union(owner_of_point[*f], owner_of_point[p]);
        }
    }
    let k = rank.ambient();
    // cycle vertex of each partition vertex
    let mut raw = vec![0usize; 2 * k];
    let top_doubled = if rank.is_half() { k - 1 } else { k };
    for i in 0..k {
        raw[i] = dsu.find(i.min(nv - 1));
    }
    for i in 0..k {
        let cyc = if rank.is_half() && i == k - 1 {
            top_doubled
        } else {
            nv - 1 - i
        };
        raw[k + i] = dsu.find(cyc);
    }
    Diagram::from_labels(rank, &raw)
}
