//! Gram matrices and semisimplicity, character polynomials, matrix units
//! built up the tower, the basic construction of the ideal, radicals at the
//! first degenerate layer, Specht modules and the symmetrizing map.

use std::collections::{BTreeSet, HashMap};
use std::thread;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Scalar, SpecialElement};
use crate::combinatorics::{factorial, partitions_of, BratteliGraph, GraphKind, Partition, Path};
use crate::diagrams::{enumerate, generator, ideal_basis, Diagram, Gen, Rank};
use crate::error::{Error, Result};
use crate::linalg::{self, RowSpace};
use crate::scalars::{Poly, RatFunc, Rational};
use crate::symgroup::{sym_matrix_units, young_elements, GroupElement, MatrixUnitSystem, UnitCheck};

/// Largest double rank with a Gram determinant (203 diagrams).
pub const MAX_GRAM_DOUBLE: usize = 6;
/// Largest double rank with a generic (polynomial) Gram determinant.
pub const MAX_GENERIC_GRAM_DOUBLE: usize = 4;
/// Largest double rank for matrix units.
pub const MAX_UNIT_DOUBLE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceKind {
    /// Trace of the left regular representation.
    Regular,
    /// The Markov trace `tr_k`.
    Diagram,
}

impl TraceKind {
    pub fn parse(s: &str) -> Result<TraceKind> {
        match s {
            "regular" => Ok(TraceKind::Regular),
            "diagram" => Ok(TraceKind::Diagram),
            _ => Err(Error::Parse(format!("trace kind {s:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TraceKind::Regular => "regular",
            TraceKind::Diagram => "diagram",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GramReport<C> {
    pub rank: Rank,
    pub param: C,
    pub trace_kind: TraceKind,
    pub basis: Vec<Diagram>,
    pub matrix: Vec<Vec<C>>,
    pub det: C,
}

/// Trace of a diagram as counts by power of the parameter.
type Profile = Vec<usize>;

fn regular_profile(c: &Diagram, basis: &[Diagram]) -> Profile {
    let mut counts = vec![0; c.rank().ambient() + 1];
    for d in basis {
        let (e, l) = c.compose_unchecked(d);
        if &e == d {
            counts[l] += 1;
        }
    }
    counts
}

fn profile(c: &Diagram, basis: &[Diagram], kind: TraceKind) -> Profile {
    match kind {
        TraceKind::Regular => regular_profile(c, basis),
        TraceKind::Diagram => {
            let mut counts = vec![0; c.closure_components() + 1];
            counts[c.closure_components()] = 1;
            counts
        }
    }
}

fn profiles(basis: &[Diagram], kind: TraceKind) -> HashMap<Diagram, Profile> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let chunk = basis.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = basis
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|c| (c.clone(), profile(c, basis, kind)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("trace worker panicked"))
            .collect()
    })
}

fn powers<C: Scalar>(param: &C, upto: usize) -> Vec<C> {
    let mut pw = vec![C::one()];
    for i in 1..=upto {
        let next = pw[i - 1].clone() * param.clone();
        pw.push(next);
    }
    pw
}

fn eval_profile<C: Scalar>(p: &Profile, pw: &[C]) -> C {
    p.iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .fold(C::zero(), |acc, (l, &c)| {
            acc + C::from_rational(&Rational::from_integer(BigInt::from(c))) * pw[l].clone()
        })
}

fn gram_matrix<C: Scalar>(basis: &[Diagram], param: &C, kind: TraceKind) -> Vec<Vec<C>> {
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let pw = powers(param, 2 * first.rank().ambient() + 1);
    let table = profiles(basis, kind);
    basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    let (c, l) = a.compose_unchecked(b);
                    pw[l].clone() * eval_profile(&table[&c], &pw)
                })
                .collect()
        })
        .collect()
}

fn rational_det(m: &[Vec<Rational>]) -> Rational {
    if m.iter().flatten().all(|c| c.is_integer()) {
        let ints: Vec<Vec<BigInt>> = m
            .iter()
            .map(|r| r.iter().map(|c| c.to_integer()).collect())
            .collect();
        Rational::from_integer(linalg::determinant(&ints))
    } else {
        linalg::determinant(m)
    }
}

/// Gram matrix of the trace form over the diagram basis at a specialized
/// parameter, with its exact determinant.
pub fn gram_special(rank: Rank, n: &Rational, kind: TraceKind) -> Result<GramReport<Rational>> {
    if rank.double_rank() > MAX_GRAM_DOUBLE {
        return Err(Error::LimitExceeded(format!("Gram matrix at rank {rank}")));
    }
    let basis = enumerate(rank)?;
    let matrix = gram_matrix(&basis, n, kind);
    let det = rational_det(&matrix);
    Ok(GramReport { rank, param: n.clone(), trace_kind: kind, basis, matrix, det })
}

/// Gram matrix with polynomial entries in the parameter.
pub fn gram_generic(rank: Rank, kind: TraceKind) -> Result<GramReport<Poly>> {
    if rank.double_rank() > MAX_GENERIC_GRAM_DOUBLE {
        return Err(Error::LimitExceeded(format!("generic Gram determinant at rank {rank}")));
    }
    let basis = enumerate(rank)?;
    let matrix = gram_matrix(&basis, &Poly::x(), kind);
    let det = linalg::determinant(&matrix);
    Ok(GramReport { rank, param: Poly::x(), trace_kind: kind, basis, matrix, det })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemisimpleVerdict {
    pub rank: Rank,
    pub n: usize,
    pub verdict: bool,
    pub by_theorem: bool,
    /// `None` above the Gram cap.
    pub by_gram: Option<bool>,
    pub gram_det: Option<Rational>,
}

impl SemisimpleVerdict {
    pub fn agrees(&self) -> bool {
        self.by_gram.is_none_or(|g| g == self.by_theorem)
    }
}

pub fn semisimple_verdict(rank: Rank, n: usize) -> Result<SemisimpleVerdict> {
    if n < 2 {
        return Err(Error::BadParams(format!("n = {n}, need n >= 2")));
    }
    let by_theorem = rank.double_rank() <= n + 1;
    let gram_det = if rank.double_rank() <= MAX_GRAM_DOUBLE {
        Some(gram_special(rank, &Rational::from_integer(n.into()), TraceKind::Regular)?.det)
    } else {
        None
    };
    Ok(SemisimpleVerdict {
        rank,
        n,
        verdict: by_theorem,
        by_theorem,
        by_gram: gram_det.as_ref().map(|d| !d.is_zero()),
        gram_det,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterPolynomial {
    pub mu: Partition,
    pub half: bool,
    pub poly: Poly,
}

/// Dimension of the irreducible module indexed by `mu`, as a polynomial in
/// the parameter; `half` selects the half-integer rank formula.
pub fn char_poly(mu: &Partition, half: bool) -> CharacterPolynomial {
    let size = mu.size() as i64;
    let hooks: BigInt = mu.hooks().into_iter().map(BigInt::from).product();
    let shift = if half { 1 } else { 0 };
    let mut poly = Poly::constant(Rational::new(BigInt::one(), hooks));
    if half {
        poly = &poly * &Poly::x();
    }
    for j in 1..=size {
        let part = mu.parts().get(j as usize - 1).copied().unwrap_or(0) as i64;
        let root = Rational::from_integer((shift + size + part - j).into());
        poly = &poly * &Poly::linear_root(root);
    }
    CharacterPolynomial { mu: mu.clone(), half, poly }
}

/// `tr^mu` at a level of the tower.
pub fn level_trace(mu: &Partition, level: Rank) -> Poly {
    char_poly(mu, level.is_half()).poly
}

/// Vertices of the abstract Bratteli graph at a level.
pub fn abstract_level(level: Rank) -> Vec<Partition> {
    (0..=level.floor()).flat_map(partitions_of).collect()
}

/// Union of the roots of `tr^mu` over the vertices at a level.
pub fn root_set(level: Rank) -> Vec<Rational> {
    let roots: BTreeSet<Rational> = abstract_level(level)
        .iter()
        .flat_map(|mu| level_trace(mu, level).rational_roots())
        .collect();
    roots.into_iter().collect()
}

fn is_edge(lower: Rank, mu: &Partition, lambda: &Partition) -> bool {
    if mu.size() > lower.floor() || lambda.size() > lower.up().floor() {
        return false;
    }
    if mu == lambda {
        return true;
    }
    let moves = if lower.is_integer() { mu.remove_box() } else { mu.add_box() };
    moves.iter().any(|(p, _)| p == lambda)
}

/// `eps^lambda_mu = tr^lambda(upper) / tr^mu(upper - 1/2)` for an edge
/// `mu -> lambda` ending at `upper`.
pub fn eps_ratio(upper: Rank, mu: &Partition, lambda: &Partition) -> Result<RatFunc> {
    let lower = upper
        .down()
        .ok_or_else(|| Error::BadParams("no edge ends at level 0".into()))?;
    if !is_edge(lower, mu, lambda) {
        return Err(Error::BadShape(format!("{mu} -> {lambda} is not an edge into level {upper}")));
    }
    RatFunc::new(level_trace(lambda, upper), level_trace(mu, lower))
}

pub fn eps_ratio_at(upper: Rank, mu: &Partition, lambda: &Partition, n: &Rational) -> Result<Rational> {
    eps_ratio(upper, mu, lambda)?;
    let lower = upper.down().unwrap();
    let den = level_trace(mu, lower).eval(n);
    if den.is_zero() {
        return Err(Error::DenominatorVanishes(format!("tr^{mu} at level {lower}, n = {n}")));
    }
    Ok(level_trace(lambda, upper).eval(n) / den)
}

pub type AlgebraUnits = MatrixUnitSystem<SpecialElement>;

/// Which walk to the intermediate vertex anchors the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TChoice {
    First,
    Last,
}

fn check_semisimple_below(level: Rank, n: &Rational) -> Result<()> {
    for d in 0..level.double_rank() {
        let m = Rank::from_double(d as u8);
        for mu in abstract_level(m) {
            if level_trace(&mu, m).eval(n).is_zero() {
                return Err(Error::NotSemisimple(format!("tr^{mu} vanishes at level {m}, n = {n}")));
            }
        }
    }
    Ok(())
}

fn projector(level: Rank) -> Gen {
    if level.is_integer() {
        Gen::P(level.floor())
    } else {
        Gen::PHalf(level.floor())
    }
}

fn path_index(sys: &AlgebraUnits, path: &[Partition]) -> Result<(usize, usize)> {
    let end = path.last().expect("walks are nonempty");
    let b = sys
        .block_of(end)
        .ok_or_else(|| Error::VertexNotFound(end.to_string()))?;
    let i = sys.blocks[b]
        .1
        .iter()
        .position(|p| p.as_slice() == path)
        .ok_or_else(|| Error::VertexNotFound(format!("walk to {end}")))?;
    Ok((b, i))
}

fn extend(t: &Path, v: &Partition) -> Path {
    let mut out = t.clone();
    out.push(v.clone());
    out
}

fn units_at(
    graph: &BratteliGraph,
    level: Rank,
    n: &Rational,
    lower: &[AlgebraUnits],
    choice: TChoice,
) -> Result<AlgebraUnits> {
    let d = level.double_rank();
    let k = level.floor();
    let vertices = graph.level(level).to_vec();
    let mut blocks: Vec<(Partition, Vec<Path>)> = Vec::new();
    let mut units = HashMap::new();
    let mut z = SpecialElement::special(level, n.clone());
    let mut top = Vec::new();
    for (b, mu) in vertices.iter().enumerate() {
        let paths: Vec<Path> = graph.paths(level, mu)?.as_ref().clone();
        blocks.push((mu.clone(), paths.clone()));
        if mu.size() == k {
            top.push(b);
            continue;
        }
        let upper = &lower[d - 1];
        let (mid, below) = (Rank::from_double((d - 1) as u8), Rank::from_double((d - 2) as u8));
        let p = SpecialElement::from_diagram(&generator(projector(level), level)?, n.clone());
        let anchors = graph.paths(below, mu)?;
        let t = match choice {
            TChoice::First => anchors.first(),
            TChoice::Last => anchors.last(),
        }
        .expect("vertex has a walk")
        .clone();
        let tr_mu = level_trace(mu, below).eval(n);
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut eps = Vec::new();
        for path in &paths {
            let v = &path[d - 1];
            let (bv, i) = path_index(upper, &path[..d])?;
            let (_, it) = path_index(upper, &extend(&t, v))?;
            left.push(upper.get(bv, i, it).embed(level)?.mul(&p)?);
            right.push(upper.get(bv, it, i).embed(level)?);
            eps.push(level_trace(v, mid).eval(n) / &tr_mu);
        }
        for i in 0..paths.len() {
            for j in 0..paths.len() {
                let u = left[i].mul(&right[j])?.scale(&eps[j].recip());
                if i == j {
                    z = z.add(&u)?;
                }
                units.insert((b, i, j), u);
            }
        }
    }
    if !top.is_empty() {
        let sym = sym_matrix_units(k)?;
        let one_minus_z = SpecialElement::identity(level, n.clone()).sub(&z)?;
        for b in top {
            let (mu, paths) = &blocks[b];
            let sb = sym
                .block_of(mu)
                .ok_or_else(|| Error::VertexNotFound(mu.to_string()))?;
            let tabs = &sym.blocks[sb].1;
            let idx: Vec<usize> = paths
                .iter()
                .map(|p| {
                    let chain: Path = (0..=k).map(|i| p[2 * i].clone()).collect();
                    tabs.iter().position(|t| *t == chain)
                })
                .collect::<Option<_>>()
                .ok_or_else(|| Error::VertexNotFound(format!("tableau for a walk to {mu}")))?;
            for (i, &si) in idx.iter().enumerate() {
                for (j, &sj) in idx.iter().enumerate() {
                    let s = sym.get(sb, si, sj).to_algebra(level, n.clone())?;
                    units.insert((b, i, j), one_minus_z.mul(&s)?);
                }
            }
        }
    }
    Ok(MatrixUnitSystem { blocks, units })
}

/// Matrix units for every level from 0 up to `level`.
pub fn unit_tower(level: Rank, n: &Rational, choice: TChoice) -> Result<Vec<AlgebraUnits>> {
    if level.double_rank() > MAX_UNIT_DOUBLE {
        return Err(Error::LimitExceeded(format!("matrix units at rank {level}")));
    }
    check_semisimple_below(level, n)?;
    let graph = BratteliGraph::build(GraphKind::Abstract, level)?;
    let mut tower: Vec<AlgebraUnits> = Vec::new();
    for d in 0..=level.double_rank() {
        let next = units_at(&graph, Rank::from_double(d as u8), n, &tower, choice)?;
        tower.push(next);
    }
    Ok(tower)
}

/// A complete system of matrix units for the algebra at `level`, indexed by
/// vertices of the abstract Bratteli graph and walks to them.
pub fn matrix_units(level: Rank, n: &Rational) -> Result<AlgebraUnits> {
    Ok(unit_tower(level, n, TChoice::First)?.pop().expect("tower has level 0"))
}

/// Sum of the diagonal units of the blocks below the top size.
pub fn ideal_idempotent(sys: &AlgebraUnits, level: Rank, n: &Rational) -> SpecialElement {
    let mut z = SpecialElement::special(level, n.clone());
    for (b, (mu, paths)) in sys.blocks.iter().enumerate() {
        if mu.size() < level.floor() {
            for p in 0..paths.len() {
                z = z.add(sys.get(b, p, p)).expect("same rank");
            }
        }
    }
    z
}

fn basis_index(basis: &[Diagram]) -> HashMap<Diagram, usize> {
    basis.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect()
}

fn span_rank(elems: impl IntoIterator<Item = SpecialElement>, index: &HashMap<Diagram, usize>) -> usize {
    let mut space = RowSpace::new();
    for e in elems {
        space.insert(e.to_vector(index, index.len()));
    }
    space.dim()
}

#[derive(Clone, Debug)]
pub struct UnitsReport {
    pub level: Rank,
    pub n: Rational,
    pub blocks: Vec<(Partition, usize)>,
    pub units: usize,
    pub check: UnitCheck,
    pub z_idempotent: bool,
    pub z_spans_ideal: bool,
    pub minimal_idempotents: bool,
    /// `None` when every anchor walk is unique.
    pub t_independent: Option<bool>,
}

impl UnitsReport {
    pub fn ok(&self) -> bool {
        self.check.ok() && self.z_idempotent && self.z_spans_ideal && self.minimal_idempotents
    }
}

pub fn units_report(level: Rank, n: &Rational) -> Result<UnitsReport> {
    let sys = matrix_units(level, n)?;
    let check = sys.verify();
    let basis = enumerate(level)?;
    let index = basis_index(&basis);
    let elem = |d: &Diagram| SpecialElement::from_diagram(d, n.clone());

    let z = ideal_idempotent(&sys, level, n);
    let z_idempotent = z.mul(&z)? == z;
    let ideal: BTreeSet<Diagram> = ideal_basis(level)?.into_iter().collect();
    let images: Vec<SpecialElement> = basis.iter().map(|d| z.mul(&elem(d))).collect::<Result<_>>()?;
    let inside = images.iter().all(|e| e.terms().keys().all(|d| ideal.contains(d)));
    let z_spans_ideal = inside && span_rank(images, &index) == ideal.len();

    let mut minimal_idempotents = true;
    for (b, (_, paths)) in sys.blocks.iter().enumerate() {
        for p in 0..paths.len() {
            let e = sys.get(b, p, p);
            let corner: Vec<SpecialElement> = basis
                .iter()
                .map(|d| e.mul(&elem(d))?.mul(e))
                .collect::<Result<_>>()?;
            minimal_idempotents &= span_rank(corner, &index) == 1;
        }
    }

    let graph = BratteliGraph::build(GraphKind::Abstract, level)?;
    let ambiguous = level.double_rank() >= 2
        && sys.blocks.iter().any(|(mu, _)| {
            mu.size() < level.floor()
                && graph
                    .paths(Rank::from_double((level.double_rank() - 2) as u8), mu)
                    .is_ok_and(|ps| ps.len() > 1)
        });
    let t_independent = if ambiguous {
        let other = unit_tower(level, n, TChoice::Last)?.pop().unwrap();
        Some(sys.units.iter().all(|(key, u)| other.units.get(key) == Some(u)))
    } else {
        None
    };

    Ok(UnitsReport {
        level,
        n: n.clone(),
        blocks: sys.blocks.iter().map(|(mu, ps)| (mu.clone(), ps.len())).collect(),
        units: sys.len(),
        check,
        z_idempotent,
        z_spans_ideal,
        minimal_idempotents,
        t_independent,
    })
}

/// `chi^mu(a) = sum_P c_P` where `e_PP a e_PP = c_P e_PP`.
pub fn characters(sys: &AlgebraUnits, a: &SpecialElement) -> Result<Vec<(Partition, Rational)>> {
    let mut out = Vec::new();
    for (b, (mu, paths)) in sys.blocks.iter().enumerate() {
        let mut chi = Rational::zero();
        for p in 0..paths.len() {
            let e = sys.get(b, p, p);
            let sandwich = e.mul(a)?.mul(e)?;
            let (d, c) = e.terms().iter().next().ok_or(Error::DivisionByZero)?;
            let ratio = sandwich.coeff(d) / c;
            if sandwich != e.scale(&ratio) {
                return Err(Error::DegenerateEigenvalues(format!("corner of {mu} is not a line")));
            }
            chi += ratio;
        }
        out.push((mu.clone(), chi));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CharDecomposition {
    pub level: Rank,
    pub n: Rational,
    pub dims: Vec<(Partition, usize)>,
    pub identity_trace: Rational,
    pub checked: usize,
    pub failures: usize,
}

impl CharDecomposition {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

/// Checks `tr(d) = sum_mu tr^mu(n) chi^mu(d)` on every diagram.
pub fn char_decomposition_check(level: Rank, n: &Rational) -> Result<CharDecomposition> {
    if level.double_rank() > 4 {
        return Err(Error::LimitExceeded(format!("character decomposition at rank {level}")));
    }
    let sys = matrix_units(level, n)?;
    let weights: Vec<Rational> = sys.blocks.iter().map(|(mu, _)| level_trace(mu, level).eval(n)).collect();
    let mut report = CharDecomposition {
        level,
        n: n.clone(),
        dims: sys.blocks.iter().map(|(mu, ps)| (mu.clone(), ps.len())).collect(),
        identity_trace: SpecialElement::identity(level, n.clone()).trace(),
        checked: 0,
        failures: 0,
    };
    for d in enumerate(level)? {
        let a = SpecialElement::from_diagram(&d, n.clone());
        let chars = characters(&sys, &a)?;
        let total: Rational = chars.iter().zip(&weights).map(|((_, c), w)| c * w).sum();
        report.checked += 1;
        if total != a.trace() {
            report.failures += 1;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct BasicConstructionReport {
    pub level: Rank,
    pub n: Rational,
    /// Dimension of the tensor product over the algebra two floors down.
    pub tensor_dim: usize,
    pub ideal_dim: usize,
    /// `B(2l) - floor(l)!`
    pub expected_dim: usize,
    pub image_rank: usize,
    pub well_defined: bool,
    pub image_in_ideal: bool,
    /// Ideal diagrams written as `d1 p d2` with no closed loops.
    pub factorized: usize,
    pub products_checked: usize,
    pub product_failures: usize,
}

impl BasicConstructionReport {
    pub fn ok(&self) -> bool {
        self.tensor_dim == self.ideal_dim
            && self.ideal_dim == self.expected_dim
            && self.image_rank == self.ideal_dim
            && self.well_defined
            && self.image_in_ideal
            && self.factorized == self.ideal_dim
            && self.product_failures == 0
    }
}

fn elem_at(d: &Diagram, n: &Rational, level: Rank) -> Result<SpecialElement> {
    SpecialElement::from_diagram(d, n.clone()).embed_to(level)
}

/// `b1 (x) b2 -> b1 p b2` from the tensor square of the algebra one floor
/// down onto the ideal, with the product rule checked on `samples` random
/// quadruples.
pub fn basic_construction_iso(level: Rank, n: &Rational, samples: usize, seed: u64) -> Result<BasicConstructionReport> {
    let dr = level.double_rank();
    if !(2..=MAX_UNIT_DOUBLE).contains(&dr) {
        return Err(Error::LimitExceeded(format!("basic construction at rank {level}")));
    }
    let mid = level.down().unwrap();
    let below = mid.down().unwrap();
    let outer = enumerate(mid)?;
    let inner = enumerate(below)?;
    let outer_index = basis_index(&outer);
    let nb = outer.len();
    let pw = powers(n, 2 * level.ambient() + 2);

    // relations b1 a (x) b2 - b1 (x) a b2
    let mut relations = RowSpace::new();
    for a in &inner {
        let a_up = a.embed_up();
        for (i, b1) in outer.iter().enumerate() {
            let (left, l1) = b1.compose_unchecked(&a_up);
            for (j, b2) in outer.iter().enumerate() {
                let (right, l2) = a_up.compose_unchecked(b2);
                let mut v = vec![Rational::zero(); nb * nb];
                v[outer_index[&left] * nb + j] += &pw[l1];
                v[i * nb + outer_index[&right]] -= &pw[l2];
                relations.insert(v);
            }
        }
    }
    let tensor_dim = nb * nb - relations.dim();

    let p = SpecialElement::from_diagram(&generator(projector(level), level)?, n.clone());
    let mut well_defined = true;
    for a in &inner {
        let a = elem_at(a, n, level)?;
        well_defined &= a.commutator(&p)?.is_zero();
    }

    let full = enumerate(level)?;
    let full_index = basis_index(&full);
    let ideal: BTreeSet<Diagram> = ideal_basis(level)?.into_iter().collect();
    let pd = generator(projector(level), level)?;
    let mut image = RowSpace::new();
    let mut hit = BTreeSet::new();
    let mut image_in_ideal = true;
    let lifted: Vec<Diagram> = outer.iter().map(|d| d.embed_up()).collect();
    for b1 in &lifted {
        let (left, l1) = b1.compose_unchecked(&pd);
        for b2 in &lifted {
            let (d, l2) = left.compose_unchecked(b2);
            image_in_ideal &= ideal.contains(&d);
            if l1 + l2 == 0 {
                hit.insert(d.clone());
            }
            let mut v = vec![Rational::zero(); full.len()];
            v[full_index[&d]] = pw[l1 + l2].clone();
            image.insert(v);
        }
    }

    let eps = |e: &SpecialElement| if mid.is_half() { e.eps_up() } else { e.eps_down() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut product_failures = 0;
    for _ in 0..samples {
        let pick: Vec<SpecialElement> = (0..4)
            .map(|_| SpecialElement::from_diagram(&outer[rng.gen_range(0..nb)], n.clone()))
            .collect();
        let up = |e: &SpecialElement| e.embed_to(level);
        let lhs = up(&pick[0])?
            .mul(&p)?
            .mul(&up(&pick[1])?)?
            .mul(&up(&pick[2])?)?
            .mul(&p)?
            .mul(&up(&pick[3])?)?;
        let middle = eps(&pick[1].mul(&pick[2])?)?.embed(mid)?.mul(&pick[3])?;
        let rhs = up(&pick[0])?.mul(&p)?.mul(&up(&middle)?)?;
        if lhs != rhs {
            product_failures += 1;
        }
    }

    let bell = crate::combinatorics::bell(dr).try_into().unwrap_or(usize::MAX);
    let fact: usize = factorial(level.floor()).try_into().unwrap_or(usize::MAX);
    Ok(BasicConstructionReport {
        level,
        n: n.clone(),
        tensor_dim,
        ideal_dim: ideal.len(),
        expected_dim: bell - fact,
        image_rank: image.dim(),
        well_defined,
        image_in_ideal,
        factorized: ideal.iter().filter(|d| hit.contains(*d)).count(),
        products_checked: samples,
        product_failures,
    })
}

#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub level: Rank,
    pub n: Rational,
    pub basis: Vec<SpecialElement>,
    /// Smallest `m` with `R^m = 0`.
    pub nilpotency_index: Option<usize>,
}

/// Radical of the algebra at `level` when the two floors below are
/// semisimple: the unnormalized ideal units whose `eps` factor vanishes.
pub fn radical_basis(level: Rank, n: &Rational) -> Result<RadicalReport> {
    let dr = level.double_rank();
    if !(2..=4).contains(&dr) {
        return Err(Error::LimitExceeded(format!("radical at rank {level}")));
    }
    let mid = level.down().unwrap();
    let below = mid.down().unwrap();
    let tower = unit_tower(mid, n, TChoice::First).map_err(|e| match e {
        Error::NotSemisimple(s) => Error::OutOfScopeDepth(s),
        other => other,
    })?;
    let upper = &tower[dr - 1];
    let graph = BratteliGraph::build(GraphKind::Abstract, level)?;
    let p = SpecialElement::from_diagram(&generator(projector(level), level)?, n.clone());
    let mut basis = Vec::new();
    for mu in graph.level(level) {
        if mu.size() >= level.floor() {
            continue;
        }
        let paths = graph.paths(level, mu)?;
        let t = graph.paths(below, mu)?[0].clone();
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut degenerate = Vec::new();
        for path in paths.iter() {
            let v = &path[dr - 1];
            let (bv, i) = path_index(upper, &path[..dr])?;
            let (_, it) = path_index(upper, &extend(&t, v))?;
            left.push(upper.get(bv, i, it).embed(level)?.mul(&p)?);
            right.push(upper.get(bv, it, i).embed(level)?);
            degenerate.push(level_trace(v, mid).eval(n).is_zero());
        }
        for i in 0..paths.len() {
            for j in 0..paths.len() {
                if degenerate[i] || degenerate[j] {
                    basis.push(left[i].mul(&right[j])?);
                }
            }
        }
    }
    let nilpotency_index = nilpotency(&basis, level)?;
    Ok(RadicalReport { level, n: n.clone(), basis, nilpotency_index })
}

fn nilpotency(basis: &[SpecialElement], level: Rank) -> Result<Option<usize>> {
    if basis.is_empty() {
        return Ok(Some(1));
    }
    let index = basis_index(&enumerate(level)?);
    let mut power: Vec<SpecialElement> = basis.to_vec();
    for m in 2..=basis.len() + 2 {
        let mut space = RowSpace::new();
        let mut next = Vec::new();
        for r in basis {
            for c in &power {
                let prod = r.mul(c)?;
                if space.insert(prod.to_vector(&index, index.len())) {
                    next.push(prod);
                }
            }
        }
        if next.is_empty() {
            return Ok(Some(m));
        }
        power = next;
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct SpechtReport {
    pub level: Rank,
    pub lambda: Partition,
    pub n: Rational,
    pub rank: usize,
    pub expected: usize,
    pub psi_nonzero: bool,
}

impl SpechtReport {
    pub fn ok(&self) -> bool {
        self.psi_nonzero && self.rank == self.expected
    }
}

/// A group element on the first `m` strands, padded by `p_k` factors (or by
/// one joined block at a half-integer rank).
fn pad(g: &GroupElement, m: usize, level: Rank, n: &Rational) -> Result<SpecialElement> {
    let k = level.ambient() as i64;
    let mut out = SpecialElement::special(level, n.clone());
    for (w, c) in g.terms() {
        let mut blocks = w.to_diagram(Rank::integer(m))?.blocks();
        let extra = (m as i64 + 1)..=k;
        if level.is_half() {
            blocks.push(extra.clone().chain(extra.map(|v| -v)).collect());
        } else {
            for v in extra {
                blocks.push(vec![v]);
                blocks.push(vec![-v]);
            }
        }
        out.add_term(Diagram::new(level, &blocks)?, c.clone());
    }
    Ok(out)
}

/// Rank of the image of `A e_lambda` modulo diagrams of propagating number
/// below `|lambda|`, against the number of walks to `lambda`.
pub fn specht(level: Rank, lambda: &Partition, witness: Option<Rational>) -> Result<SpechtReport> {
    if level.double_rank() > 4 {
        return Err(Error::LimitExceeded(format!("Specht module at rank {level}")));
    }
    let m = lambda.size();
    if m > level.floor() {
        return Err(Error::BadShape(format!("{lambda} has more than {} boxes", level.floor())));
    }
    let n = witness.unwrap_or_else(|| Rational::from_integer(level.double_rank().max(1).into()));
    let ys = young_elements(lambda, m)?;
    let tau = GroupElement::from_perm(ys.tau.clone());
    let tau_inv = GroupElement::from_perm(ys.tau.inverse());
    let t = pad(&ys.row_sum, m, level, &n)?;
    let s = pad(&tau.mul(&ys.column_alternant).mul(&tau_inv), m, level, &n)?;
    let gen = t.mul(&s)?;
    // the padding block at a half-integer rank propagates too
    let threshold = if level.is_half() { m + 1 } else { m };
    let kept: Vec<Diagram> = enumerate(level)?
        .into_iter()
        .filter(|d| d.propagating_number() >= threshold)
        .collect();
    let index = basis_index(&kept);
    let reduce = |e: &SpecialElement| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); kept.len()];
        for (d, c) in e.terms() {
            if let Some(&i) = index.get(d) {
                v[i] = c.clone();
            }
        }
        v
    };
    let psi_nonzero = reduce(&gen).iter().any(|c| !c.is_zero());
    let mut space = RowSpace::new();
    for d in enumerate(level)? {
        space.insert(reduce(&SpecialElement::from_diagram(&d, n.clone()).mul(&gen)?));
    }
    let graph = BratteliGraph::build(GraphKind::Abstract, level)?;
    let expected = graph.path_count(level, lambda)?.try_into().unwrap_or(usize::MAX);
    Ok(SpechtReport { level, lambda: lambda.clone(), n, rank: space.dim(), expected, psi_nonzero })
}

/// Trace of left multiplication by `a` on the algebra.
pub fn regular_trace(a: &SpecialElement) -> Result<Rational> {
    let basis = enumerate(a.rank())?;
    let pw = powers(a.param(), a.rank().ambient() + 1);
    Ok(a.terms()
        .iter()
        .map(|(d, c)| c * eval_profile(&regular_profile(d, &basis), &pw))
        .sum())
}

/// `[a] = sum_b b a b*` over a basis and its dual for the regular trace
/// form.
pub fn symmetrize_with_basis(a: &SpecialElement, basis: &[SpecialElement]) -> Result<SpecialElement> {
    if a.rank().double_rank() > 4 {
        return Err(Error::LimitExceeded(format!("symmetrizing at rank {}", a.rank())));
    }
    let diagrams = enumerate(a.rank())?;
    let pw = powers(a.param(), 2 * a.rank().ambient() + 1);
    let mut cache: HashMap<Diagram, Rational> = HashMap::new();
    let mut tr = |e: &SpecialElement| -> Rational {
        e.terms()
            .iter()
            .map(|(d, c)| {
                let t = cache
                    .entry(d.clone())
                    .or_insert_with(|| eval_profile(&regular_profile(d, &diagrams), &pw));
                c * &*t
            })
            .sum()
    };
    let mut gram = Vec::new();
    for bi in basis {
        let mut row = Vec::new();
        for bj in basis {
            row.push(tr(&bi.mul(bj)?));
        }
        gram.push(row);
    }
    let inv = linalg::inverse(&gram).ok_or(Error::DegenerateForm)?;
    let mut out = SpecialElement::special(a.rank(), a.param().clone());
    for (j, bj) in basis.iter().enumerate() {
        let mut dual = SpecialElement::special(a.rank(), a.param().clone());
        for (l, bl) in basis.iter().enumerate() {
            dual = dual.add(&bl.scale(&inv[l][j]))?;
        }
        out = out.add(&bj.mul(a)?.mul(&dual)?)?;
    }
    Ok(out)
}

pub fn symmetrize(a: &SpecialElement) -> Result<SpecialElement> {
    let basis: Vec<SpecialElement> = enumerate(a.rank())?
        .iter()
        .map(|d| SpecialElement::from_diagram(d, a.param().clone()))
        .collect();
    symmetrize_with_basis(a, &basis)
}
