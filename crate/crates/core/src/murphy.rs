//! Murphy elements: the diagrams `b_S`, `d_I`, the signed sums `p_S` and
//! `p~_S`, the central elements `Z_k` and their successive differences `M_k`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::GenericElement;
use crate::combinatorics::{syt_dimension, BratteliGraph, GraphKind, Partition};
use crate::diagrams::{enumerate, generators, Diagram, Rank};
use crate::error::{Error, Result};
use crate::scalars::{format_rational, rat, ratio, Poly, Rational};
use crate::symgroup::{kappa, Perm};
use crate::tensor::{joint_eigenspaces, perm_action, phi, EndoMatrix};

/// Largest double rank for which `Z` and `M` are built.
pub const MAX_DOUBLE_RANK: u8 = 7;

fn check_subset(k: usize, s: &[usize]) -> Result<()> {
    if s.is_empty() {
        return Err(Error::BadSubset("S is empty".into()));
    }
    let mut seen = vec![false; k + 1];
    for &l in s {
        if l == 0 || l > k || std::mem::replace(&mut seen[l], true) {
            return Err(Error::BadSubset(format!("{s:?} in 1..{k}")));
        }
    }
    Ok(())
}

fn strands(k: usize, s: &[usize]) -> Vec<Vec<i64>> {
    (1..=k)
        .filter(|l| !s.contains(l))
        .map(|l| vec![l as i64, -(l as i64)])
        .collect()
}

/// `b_S`: one block `S u S'`, identity strands elsewhere, in `A_k`.
pub fn b_s(k: usize, s: &[usize]) -> Result<Diagram> {
    check_subset(k, s)?;
    let mut blocks = strands(k, s);
    blocks.push(s.iter().flat_map(|&l| [l as i64, -(l as i64)]).collect());
    Diagram::new(Rank::integer(k), &blocks)
}

/// `d_{I in S}`: blocks `I` and its complement in `S u S'`, identity
/// strands off `S`. Vertices of `I` are signed, `-l` for `l'`.
pub fn d_i(k: usize, s: &[usize], i: &[i64]) -> Result<Diagram> {
    check_subset(k, s)?;
    let full: Vec<i64> = s.iter().flat_map(|&l| [l as i64, -(l as i64)]).collect();
    if i.iter().any(|v| !full.contains(v)) {
        return Err(Error::BadSubset(format!("{i:?} not inside S u S'")));
    }
    let rest: Vec<i64> = full.iter().copied().filter(|v| !i.contains(v)).collect();
    if i.is_empty() || rest.is_empty() {
        return Err(Error::BadSubset("I and its complement must be nonempty".into()));
    }
    let mut blocks = strands(k, s);
    blocks.push(i.to_vec());
    blocks.push(rest);
    Diagram::new(Rank::integer(k), &blocks)
}

/// Signed half-sum over `I in S u S'` with the given admissibility rule.
fn signed_sum(k: usize, s: &[usize], admissible: impl Fn(u32, u32) -> bool) -> Result<GenericElement> {
    check_subset(k, s)?;
    let m = s.len();
    let full: Vec<i64> = s.iter().flat_map(|&l| [l as i64, -(l as i64)]).collect();
    let all = (1u32 << (2 * m)) - 1;
    let half = Poly::constant(ratio(1, 2));
    let mut out = GenericElement::generic(Rank::integer(k));
    for mask in 1..all {
        if !admissible(mask, all) {
            continue;
        }
        let pairs_in = |set: u32| (0..m).filter(|j| set >> (2 * j) & 3 == 3).count();
        let sign = if (pairs_in(mask) + pairs_in(all ^ mask)) % 2 == 0 { 1 } else { -1 };
        let i: Vec<i64> = (0..2 * m).filter(|b| mask >> b & 1 == 1).map(|b| full[b]).collect();
        out.add_term(d_i(k, s, &i)?, half.scale(&rat(sign)));
    }
    Ok(out)
}

/// Views an element of `A_k` whose diagrams all lie in a smaller rank as an
/// element of that rank.
fn retract(a: GenericElement, rank: Rank) -> Result<GenericElement> {
    if rank == a.rank() {
        return Ok(a);
    }
    let terms: Vec<(Diagram, Poly)> = a
        .terms()
        .iter()
        .map(|(d, c)| Ok((Diagram::from_labels(rank, &d.labels().iter().map(|&l| l as usize).collect::<Vec<_>>())?, c.clone())))
        .collect::<Result<_>>()?;
    GenericElement::from_terms(rank, Poly::x(), terms)
}

/// Bitmask of the pair `{l, l'}` for the `j`-th element of `S`.
fn pair(j: usize) -> u32 {
    3 << (2 * j)
}

/// `p_S` in `A_k`.
pub fn p_s(k: usize, s: &[usize]) -> Result<GenericElement> {
    let m = s.len();
    signed_sum(k, s, |mask, all| (0..m).all(|j| mask != pair(j) && mask != all ^ pair(j)))
}

/// `p~_S` for `S` containing `k + 1`, in `A_{k+1/2}`. The splits that
/// isolate a pair `{l, l'}` are skipped for `l != k + 1` only; skipping the
/// one for `k + 1` instead breaks the `kappa` identity from `|S| = 3` on.
pub fn p_tilde_s(k: usize, s: &[usize]) -> Result<GenericElement> {
    let last = s
        .iter()
        .position(|&l| l == k + 1)
        .ok_or_else(|| Error::BadSubset(format!("{s:?} must contain {}", k + 1)))?;
    let m = s.len();
    let p = pair(last);
    let out = signed_sum(k + 1, s, |mask, all| {
        (mask & p == p || mask & p == 0)
            && (0..m).all(|j| j == last || (mask != pair(j) && mask != all ^ pair(j)))
    })?;
    retract(out, Rank::half(k))
}

fn subsets(k: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << k).map(move |mask| (1..=k).filter(|l| mask >> (l - 1) & 1 == 1).collect())
}

fn check_cap(rank: Rank) -> Result<()> {
    if rank.double_rank() > MAX_DOUBLE_RANK as usize {
        return Err(Error::LimitExceeded(format!("Murphy elements at rank {rank}")));
    }
    Ok(())
}

/// `(x - c) (-1)^|S| b_S`, with `c = k - |S|`, viewed at `rank`.
fn b_term(k: usize, s: &[usize], rank: Rank) -> Result<GenericElement> {
    let c = Poly::x() - Poly::constant(rat(k as i64 - s.len() as i64));
    let sign = rat(if s.len() % 2 == 0 { 1 } else { -1 });
    let b = b_s(k, s)?;
    let e = GenericElement::from_term(b, c.scale(&sign), Poly::x());
    retract(e, rank)
}

/// `Z_k` at an integer or half-integer rank.
pub fn z(rank: Rank) -> Result<GenericElement> {
    check_cap(rank)?;
    let k = rank.floor();
    let konst = |c: usize, r: Rank| GenericElement::scalar(r, Poly::constant(rat(c as i64)), Poly::x());
    if rank.is_integer() {
        if k == 0 {
            return Ok(GenericElement::identity(rank, Poly::x()));
        }
        let mut acc = konst(k * (k - 1) / 2, rank);
        for s in subsets(k) {
            acc = acc.add(&p_s(k, &s)?)?;
            if s.len() >= 2 {
                acc = acc.add(&b_term(k, &s, rank)?)?;
            }
        }
        Ok(acc)
    } else {
        let mut acc = konst(k, rank).add(&z(Rank::integer(k))?.embed(rank)?)?;
        for s in subsets(k + 1).filter(|s| s.len() >= 2 && s.contains(&(k + 1))) {
            acc = acc.add(&p_tilde_s(k, &s)?)?;
            acc = acc.add(&b_term(k + 1, &s, rank)?)?;
        }
        Ok(acc)
    }
}

/// `M_k = Z_k - Z_{k-1/2}`, with `M_0 = M_{1/2} = 1`.
pub fn m(rank: Rank) -> Result<GenericElement> {
    check_cap(rank)?;
    match rank.down() {
        None => Ok(GenericElement::identity(rank, Poly::x())),
        Some(r) if r == Rank::ZERO => Ok(GenericElement::identity(rank, Poly::x())),
        Some(r) => z(rank)?.sub(&z(r)?.embed(rank)?),
    }
}

/// The matrix of `kappa_n - C(n,2) + kn` on `V^{(x) k}` at integer ranks, and
/// of `kappa_{n-1} - C(n,2) + (k+1)n - 1` on `V^{(x) k} (x) v_n` at half ranks.
pub fn kappa_matrix(n: usize, rank: Rank) -> EndoMatrix {
    let k = rank.floor();
    let (deg, shift) = if rank.is_integer() {
        (n, (k * n) as i64 - (n * (n - 1) / 2) as i64)
    } else {
        (n - 1, ((k + 1) * n) as i64 - 1 - (n * (n - 1) / 2) as i64)
    };
    let mut out = EndoMatrix::identity(n, k).scale(&rat(shift));
    for p in kappa(deg).terms().keys() {
        let mut img = p.images();
        img.extend(deg..n);
        let sigma = Perm::from_images(img).expect("padded permutation");
        out = out.add(&perm_action(&sigma, k));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct KappaCheck {
    pub n: usize,
    pub rank: String,
    pub equal: bool,
}

pub fn kappa_identity(n: usize, rank: Rank) -> Result<KappaCheck> {
    let zk = z(rank)?.specialize(&rat(n as i64));
    Ok(KappaCheck { n, rank: rank.to_string(), equal: phi(&zk, n)? == kappa_matrix(n, rank) })
}

/// Content of the box where two partitions differing by one box differ.
fn box_content(a: &Partition, b: &Partition) -> i64 {
    let (big, small) = if a.size() > b.size() { (a, b) } else { (b, a) };
    let row = (0..big.len())
        .find(|&i| big.parts()[i] != small.parts().get(i).copied().unwrap_or(0))
        .expect("partitions differ by a box");
    big.parts()[row] as i64 - 1 - row as i64
}

/// Predicted eigenvalue of `M_l` on the basis vector of a path, from its
/// step into level `l`: `c + 1` when a box of content `c` is added, and
/// `n - 1 - c` when one is removed.
pub fn predicted_eigenvalue(n: usize, from: &Partition, to: &Partition) -> i64 {
    let c = box_content(from, to);
    if to.size() > from.size() {
        c + 1
    } else {
        n as i64 - 1 - c
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumCheck {
    pub n: usize,
    pub k: usize,
    /// Measured constant shift of each `M_l` relative to the prediction,
    /// by level.
    pub offsets: Vec<(String, String)>,
    /// Joint eigenvalue tuples with multiplicities, as measured.
    pub measured: Vec<(Vec<String>, usize)>,
    /// The same after removing the offsets, against the path prediction.
    pub matches_after_offsets: bool,
}

/// Joint spectrum of `M_{1/2}, .., M_k` on `V^{(x) k}` compared with the
/// paths of the Bratteli graph for `n`.
pub fn spectrum_check(n: usize, k: usize) -> Result<SpectrumCheck> {
    let top = Rank::integer(k);
    let nn = rat(n as i64);
    let levels: Vec<Rank> = (1..=2 * k).map(|d| Rank::from_double(d as u8)).collect();
    let mats: Vec<EndoMatrix> = levels
        .iter()
        .map(|&l| phi(&m(l)?.embed_to(top)?.specialize(&nn), n))
        .collect::<Result<_>>()?;

    let g = BratteliGraph::build(GraphKind::Concrete(n), top)?;
    let mut predicted: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for lambda in g.level(top) {
        let dim: usize = syt_dimension(lambda).try_into().map_err(|_| Error::LimitExceeded("dimension".into()))?;
        for path in g.paths(top, lambda)?.iter() {
            let tuple: Vec<i64> = path.windows(2).map(|w| predicted_eigenvalue(n, &w[0], &w[1])).collect();
            *predicted.entry(tuple).or_default() += dim;
        }
    }
    let side = rat(n.pow(k as u32) as i64);
    let offsets: Vec<Rational> = mats
        .iter()
        .enumerate()
        .map(|(j, mat)| {
            let pred: Rational = predicted.iter().map(|(t, &mult)| rat(t[j] * mult as i64)).sum();
            (mat.trace() - pred) / &side
        })
        .collect();

    let lo = -(n as i64) - 2 * k as i64 - 2;
    let candidates: Vec<Rational> = (lo..=-lo + n as i64).map(rat).collect();
    let measured = joint_eigenspaces(&mats, &candidates)
        .ok_or_else(|| Error::DegenerateEigenvalues(format!("n = {n}, k = {k}")))?;
    let shifted: BTreeMap<Vec<Rational>, usize> = measured
        .iter()
        .map(|(t, d)| (t.iter().zip(&offsets).map(|(a, o)| a - o).collect(), *d))
        .collect();
    let expected: BTreeMap<Vec<Rational>, usize> = predicted
        .iter()
        .map(|(t, &d)| (t.iter().map(|&v| rat(v)).collect(), d))
        .collect();
    Ok(SpectrumCheck {
        n,
        k,
        offsets: levels
            .iter()
            .zip(&offsets)
            .map(|(l, o)| (l.to_string(), format_rational(o)))
            .collect(),
        measured: measured
            .iter()
            .map(|(t, d)| (t.iter().map(format_rational).collect(), *d))
            .collect(),
        matches_after_offsets: shifted == expected,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MurphyReport {
    pub kmax: String,
    /// `[M_a, M_b]` for all pairs of levels up to `kmax`, in `A_kmax(x)`.
    pub commutators_checked: usize,
    pub commutator_failures: Vec<(String, String)>,
    /// `[Z_r, d]` for `d` every diagram (ranks up to 2) or every generator.
    pub centrality_checked: usize,
    pub centrality_failures: Vec<(String, String)>,
    pub kappa: Vec<KappaCheck>,
    pub spectra: Vec<SpectrumCheck>,
}

impl MurphyReport {
    pub fn ok(&self) -> bool {
        self.commutator_failures.is_empty()
            && self.centrality_failures.is_empty()
            && self.kappa.iter().all(|c| c.equal)
            && self.spectra.iter().all(|s| s.matches_after_offsets)
    }
}

/// Runs every Murphy check up to `kmax`. The `kappa` identity is checked at
/// each witness `n` for ranks from 1 to `kmax` within the tensor cap, and
/// the joint spectra at `spectral_witness` for integer ranks up to 2.
pub fn verify_murphy(kmax: Rank, kappa_witnesses: &[usize], spectral_witness: Option<usize>) -> Result<MurphyReport> {
    check_cap(kmax)?;
    if kmax.double_rank() > 6 {
        return Err(Error::LimitExceeded(format!("verification beyond rank 3 (got {kmax})")));
    }
    let levels: Vec<Rank> = (1..=kmax.double_rank()).map(|d| Rank::from_double(d as u8)).collect();
    let ms: Vec<GenericElement> = levels.iter().map(|&l| m(l)?.embed_to(kmax)).collect::<Result<_>>()?;
    let mut commutators_checked = 0;
    let mut commutator_failures = Vec::new();
    for a in 0..ms.len() {
        for b in a + 1..ms.len() {
            commutators_checked += 1;
            if !ms[a].commutator(&ms[b])?.is_zero() {
                commutator_failures.push((levels[a].to_string(), levels[b].to_string()));
            }
        }
    }

    let mut centrality_checked = 0;
    let mut centrality_failures = Vec::new();
    for &r in &levels {
        let zr = z(r)?;
        let tests: Vec<Diagram> = if r.double_rank() <= 4 {
            enumerate(r)?
        } else {
            generators(r).into_iter().map(|(_, d)| d).collect()
        };
        for d in tests {
            centrality_checked += 1;
            if !zr.commutator(&GenericElement::generic_diagram(&d))?.is_zero() {
                centrality_failures.push((r.to_string(), d.to_string()));
            }
        }
    }

    let mut kappa_checks = Vec::new();
    for &n in kappa_witnesses {
        for &r in levels.iter().filter(|r| r.double_rank() >= 2) {
            if n.checked_pow(r.floor() as u32).is_some_and(|s| s <= crate::tensor::DEFAULT_SIDE_CAP) {
                kappa_checks.push(kappa_identity(n, r)?);
            }
        }
    }

    let mut spectra = Vec::new();
    if let Some(n) = spectral_witness {
        for k in 1..=kmax.floor().min(2) {
            spectra.push(spectrum_check(n, k)?);
        }
    }
    Ok(MurphyReport {
        kmax: kmax.to_string(),
        commutators_checked,
        commutator_failures,
        centrality_checked,
        centrality_failures,
        kappa: kappa_checks,
        spectra,
    })
}
