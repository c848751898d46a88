use super::generators::{generator, Gen};
use super::{Diagram, Rank};
use crate::error::{Error, Result};

/// Left-to-right product of a word, with the total count of removed middle
/// blocks. The empty word is the identity.
pub fn evaluate_word(word: &[Gen], rank: Rank) -> Result<(Diagram, usize)> {
    let mut acc = Diagram::identity(rank);
    let mut removed = 0;
    for &g in word {
        let (next, r) = acc.compose_unchecked(&generator(g, rank)?);
        acc = next;
        removed += r;
    }
    Ok((acc, removed))
}

/// Adjacent transpositions whose left-to-right product is the permutation
/// diagram joining `i` to `perm[i]'` (0-based one-line notation).
fn transpositions(perm: &[usize]) -> Vec<Gen> {
    let mut a = perm.to_vec();
    let mut word = Vec::new();
    for pass in 0..a.len() {
        for j in 0..a.len().saturating_sub(pass + 1) {
            if a[j] > a[j + 1] {
                a.swap(j, j + 1);
                word.push(Gen::S(j + 1));
            }
        }
    }
    word
}

/// Writes `d` as a word in `s_i`, `p_j` and `p_{i+1/2}`.
///
/// Top and bottom parts are reordered so that `d = s1 * t * s2` with
/// permutations `s1`, `s2` and a planar `t` whose propagating blocks run
/// left to right in matching order. `t` is then written as merges and cuts on
/// top, a permutation matching the surviving strands, and cuts and merges on
/// the bottom.
pub fn factorize(d: &Diagram) -> Result<Vec<Gen>> {
    let rank = d.rank();
    if !rank.is_integer() {
        return Err(Error::NonIntegerRank(rank.to_string()));
    }
    let k = rank.ambient();
    if d == &Diagram::identity(rank) {
        return Ok(Vec::new());
    }
    let nb = d.num_blocks();
    let mut top_parts = vec![Vec::new(); nb];
    let mut bottom_parts = vec![Vec::new(); nb];
    for i in 0..k {
        top_parts[d.top(i) as usize].push(i);
        bottom_parts[d.bottom(i) as usize].push(i);
    }
    let is_prop = |b: usize| !top_parts[b].is_empty() && !bottom_parts[b].is_empty();
    // propagating blocks ordered by their least top vertex (labels already are)
    let prop: Vec<usize> = (0..nb).filter(|&b| is_prop(b)).collect();
    let top_only: Vec<usize> = (0..nb).filter(|&b| bottom_parts[b].is_empty()).collect();
    let bottom_only: Vec<usize> = (0..nb).filter(|&b| top_parts[b].is_empty()).collect();

    let top_seq: Vec<&Vec<usize>> = prop.iter().chain(&top_only).map(|&b| &top_parts[b]).collect();
    let bottom_seq: Vec<&Vec<usize>> = prop
        .iter()
        .chain(&bottom_only)
        .map(|&b| &bottom_parts[b])
        .collect();

    // sigma1 sends the vertex at sorted position p back to its place in d
    let flat = |seq: &[&Vec<usize>]| -> Vec<usize> { seq.iter().flat_map(|p| p.iter().copied()).collect() };
    let u = flat(&top_seq);
    let w = flat(&bottom_seq);
    let mut sigma1 = vec![0; k];
    for (p, &v) in u.iter().enumerate() {
        sigma1[v] = p;
    }

    let intervals = |seq: &[&Vec<usize>]| -> Vec<(usize, usize)> {
        let mut start = 0;
        seq.iter()
            .map(|p| {
                let iv = (start, start + p.len());
                start += p.len();
                iv
            })
            .collect()
    };
    let top_iv = intervals(&top_seq);
    let bottom_iv = intervals(&bottom_seq);
    let r = prop.len();

    let mut word = transpositions(&sigma1);
    for &(a, b) in &top_iv {
        word.extend((a..b - 1).map(|i| Gen::PHalf(i + 1)));
    }
    let keep_top: Vec<usize> = top_iv[..r].iter().map(|iv| iv.0).collect();
    word.extend((0..k).filter(|j| !keep_top.contains(j)).map(|j| Gen::P(j + 1)));

    let keep_bottom: Vec<usize> = bottom_iv[..r].iter().map(|iv| iv.0).collect();
    let mut tau = vec![usize::MAX; k];
    for (a, b) in keep_top.iter().zip(&keep_bottom) {
        tau[*a] = *b;
    }
    let mut free = (0..k).filter(|j| !keep_bottom.contains(j));
    for t in tau.iter_mut().filter(|t| **t == usize::MAX) {
        *t = free.next().unwrap();
    }
    word.extend(transpositions(&tau));

    word.extend((0..k).filter(|j| !keep_bottom.contains(j)).map(|j| Gen::P(j + 1)));
    for &(a, b) in &bottom_iv {
        word.extend((a..b - 1).map(|i| Gen::PHalf(i + 1)));
    }
    word.extend(transpositions(&w));

    let (value, _) = evaluate_word(&word, rank)?;
    debug_assert_eq!(&value, d, "factorization does not evaluate back");
    if &value != d {
        return Err(Error::BadParams(format!("factorization of {d} failed")));
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::enumerate;

    #[test]
    fn identity_is_the_empty_word() {
        assert!(factorize(&Diagram::identity(Rank::integer(3))).unwrap().is_empty());
    }

    #[test]
    fn e1_round_trips() {
        let r = Rank::integer(2);
        let e1 = generator(Gen::E(1), r).unwrap();
        let w = factorize(&e1).unwrap();
        assert_eq!(evaluate_word(&w, r).unwrap().0, e1);
    }

    #[test]
    fn every_diagram_of_rank_three_round_trips() {
        let r = Rank::integer(3);
        for d in enumerate(r).unwrap() {
            let w = factorize(&d).unwrap();
            assert_eq!(evaluate_word(&w, r).unwrap().0, d, "word {w:?}");
        }
    }

    #[test]
    fn half_rank_is_rejected() {
        assert!(matches!(
            factorize(&Diagram::identity(Rank::half(1))),
            Err(Error::NonIntegerRank(_))
        ));
    }

    #[test]
    fn transposition_words_evaluate_to_permutations() {
        let perm = [2, 0, 3, 1];
        let r = Rank::integer(4);
        let (d, _) = evaluate_word(&transpositions(&perm), r).unwrap();
        for (i, &p) in perm.iter().enumerate() {
            assert_eq!(d.top(i), d.bottom(p));
        }
    }
}
