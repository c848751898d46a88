//! The group algebra of `S_l` as it sits inside the partition algebra:
//! permutations, Young symmetrizers, the class sum of transpositions, and
//! matrix units built from Jucys-Murphy elements.
//!
//! Products follow diagram stacking: `a * b` applies `a` first, so the map
//! to permutation diagrams (top `i` joined to bottom `sigma(i)'`) is an
//! algebra homomorphism.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Element, Scalar};
use crate::combinatorics::{partitions_of, Partition, Path};
use crate::diagrams::{Diagram, Rank};
use crate::error::{Error, Result};
use crate::scalars::{rat, Rational};

/// One-line notation, 0-based: `p[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::BadParams(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images.into_iter().map(|i| i as u8).collect()))
    }

    /// Product of disjoint-or-not cycles on `1..=n`, applied right to left.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut p: Vec<usize> = (0..n).collect();
        for cyc in cycles.iter().rev() {
            let mut step: Vec<usize> = (0..n).collect();
            for (j, &a) in cyc.iter().enumerate() {
                let b = cyc[(j + 1) % cyc.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::BadParams(format!("cycle entry out of range in {cyc:?}")));
                }
                step[a - 1] = b - 1;
            }
            p = p.iter().map(|&x| step[x]).collect();
        }
        Perm::from_images(p)
    }

    /// Transposition of `a` and `b` (1-based).
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p: Vec<u8> = (0..n as u8).collect();
        p.swap(a - 1, b - 1);
        Perm(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.0.len()];
        let mut sign = 1;
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// Nontrivial cycles on `1..=n`, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x + 1);
                x = self.0[x] as usize;
            }
            out.push(c);
        }
        out
    }

    /// The permutation diagram at rank `rank` (extra strands are the
    /// identity).
    pub fn to_diagram(&self, rank: Rank) -> Result<Diagram> {
        let k = rank.ambient();
        let n = self.0.len();
        if n > k || (rank.is_half() && n == k && self.0[n - 1] as usize != n - 1) {
            return Err(Error::SizeMismatch(format!("S_{n} in rank {rank}")));
        }
        let mut raw: Vec<usize> = (0..k).collect();
        raw.extend((0..k).map(|_| 0));
        for i in 0..k {
            let img = if i < n { self.0[i] as usize } else { i };
            raw[k + img] = i;
        }
        Diagram::from_labels(rank, &raw)
    }

    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        heap_permutations(n, &mut cur, &mut out);
        out.sort();
        out
    }
}

fn heap_permutations(k: usize, a: &mut Vec<u8>, out: &mut Vec<Perm>) {
    if k <= 1 {
        out.push(Perm(a.clone()));
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(k - 1, a, out);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permutations(k - 1, a, out);
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

/// Element of the rational group algebra of `S_n`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    n: usize,
    terms: BTreeMap<Perm, Rational>,
}

impl GroupElement {
    pub fn zero(n: usize) -> Self {
        GroupElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::from_perm(Perm::identity(n))
    }

    pub fn from_perm(p: Perm) -> Self {
        let mut g = Self::zero(p.len());
        g.add_term(p, Rational::one());
        g
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Perm, Rational> {
        &self.terms
    }

    pub fn coeff(&self, p: &Perm) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, p: Perm, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &o.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (p, a) in &self.terms {
            for (q, b) in &o.terms {
                out.add_term(p.then(q), a * b);
            }
        }
        out
    }

    /// The element in the partition algebra of the given rank.
    pub fn to_algebra<C: Scalar>(&self, rank: Rank, param: C) -> Result<Element<C>> {
        let mut e = Element::zero(rank, param);
        for (p, c) in &self.terms {
            e.add_term(p.to_diagram(rank)?, C::from_rational(c));
        }
        Ok(e)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("({c}){p:?}")).collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// Sum of all transpositions of `S_n`.
pub fn kappa(n: usize) -> GroupElement {
    let mut g = GroupElement::zero(n);
    for a in 1..=n {
        for b in a + 1..=n {
            g.add_term(Perm::transposition(n, a, b), Rational::one());
        }
    }
    g
}

/// Sum over the Young subgroup permuting consecutive blocks of the given
/// sizes, optionally signed.
fn young_subgroup_sum(block_sizes: &[usize], signed: bool) -> GroupElement {
    let n: usize = block_sizes.iter().sum();
    let mut acc = GroupElement::one(n);
    let mut start = 0;
    for &b in block_sizes {
        let mut part = GroupElement::zero(n);
        for p in Perm::all(b) {
            let mut img: Vec<usize> = (0..n).collect();
            for i in 0..b {
                img[start + i] = start + p.image(i);
            }
            let c = if signed { rat(p.sign()) } else { rat(1) };
            part.add_term(Perm::from_images(img).unwrap(), c);
        }
        acc = acc.mul(&part);
        start += b;
    }
    acc
}

pub struct YoungElements {
    pub row_sum: GroupElement,
    pub column_alternant: GroupElement,
    pub tau: Perm,
    pub symmetrizer: GroupElement,
}

/// `tau` sends each entry of the row reading tableau to the entry in the same
/// box of the column reading tableau.
pub fn row_to_column_reading(lambda: &Partition) -> Perm {
    let n = lambda.size();
    let conj = lambda.conjugate();
    let mut col_start = vec![0usize; conj.len()];
    for j in 1..conj.len() {
        col_start[j] = col_start[j - 1] + conj.parts()[j - 1];
    }
    let mut img = vec![0usize; n];
    let mut r = 0;
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            img[r] = col_start[j] + i;
            r += 1;
        }
    }
    Perm::from_images(img).unwrap()
}

/// `1_lambda`, the signed column sum `eps_{lambda'}`, `tau`, and
/// `p_lambda = 1_lambda tau eps_{lambda'} tau^{-1}`.
pub fn young_elements(lambda: &Partition, k: usize) -> Result<YoungElements> {
    if lambda.size() != k {
        return Err(Error::SizeMismatch(format!("{lambda} is not a partition of {k}")));
    }
    let row_sum = young_subgroup_sum(lambda.parts(), false);
    let column_alternant = young_subgroup_sum(lambda.conjugate().parts(), true);
    let tau = row_to_column_reading(lambda);
    let t = GroupElement::from_perm(tau.clone());
    let ti = GroupElement::from_perm(tau.inverse());
    let symmetrizer = row_sum.mul(&t).mul(&column_alternant).mul(&ti);
    Ok(YoungElements { row_sum, column_alternant, tau, symmetrizer })
}

/// A family of matrix units indexed by `(shape, P, Q)` with `P`, `Q` walks to
/// the shape.
#[derive(Clone)]
pub struct MatrixUnitSystem<E> {
    pub blocks: Vec<(Partition, Vec<Path>)>,
    pub units: HashMap<(usize, usize, usize), E>,
}

impl<E> MatrixUnitSystem<E> {
    pub fn get(&self, block: usize, p: usize, q: usize) -> &E {
        &self.units[&(block, p, q)]
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn block_of(&self, shape: &Partition) -> Option<usize> {
        self.blocks.iter().position(|(s, _)| s == shape)
    }
}

/// Operations needed to check the unit relations.
pub trait UnitAlgebra: Clone + PartialEq {
    fn times(&self, o: &Self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elt(&self) -> bool;
}

impl UnitAlgebra for GroupElement {
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn zero_like(&self) -> Self {
        GroupElement::zero(self.n)
    }
    fn one_like(&self) -> Self {
        GroupElement::one(self.n)
    }
    fn is_zero_elt(&self) -> bool {
        self.is_zero()
    }
}

impl<C: Scalar> UnitAlgebra for Element<C> {
    fn times(&self, o: &Self) -> Self {
        self.mul(o).expect("units share rank and parameter")
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o).expect("units share rank and parameter")
    }
    fn zero_like(&self) -> Self {
        Element::zero(self.rank(), self.param().clone())
    }
    fn one_like(&self) -> Self {
        Element::identity(self.rank(), self.param().clone())
    }
    fn is_zero_elt(&self) -> bool {
        self.is_zero()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnitCheck {
    pub products_checked: usize,
    pub product_failures: usize,
    pub sums_to_one: bool,
}

impl UnitCheck {
    pub fn ok(&self) -> bool {
        self.product_failures == 0 && self.sums_to_one
    }
}

impl<E: UnitAlgebra> MatrixUnitSystem<E> {
    /// Checks `e_PQ e_RS = delta e_PS` on all pairs and `sum e_PP = 1`.
    pub fn verify(&self) -> UnitCheck {
        let mut check = UnitCheck::default();
        let Some(any) = self.units.values().next() else {
            return check;
        };
        let zero = any.zero_like();
        for (&(b1, p, q), u1) in &self.units {
            for (&(b2, r, s), u2) in &self.units {
                let prod = u1.times(u2);
                let expect = if b1 == b2 && q == r { self.get(b1, p, s) } else { &zero };
                check.products_checked += 1;
                if &prod != expect {
                    check.product_failures += 1;
                }
            }
        }
        let mut sum = zero.clone();
        for (b, (_, paths)) in self.blocks.iter().enumerate() {
            for p in 0..paths.len() {
                sum = sum.plus(self.get(b, p, p));
            }
        }
        check.sums_to_one = sum == any.one_like();
        check
    }
}

/// Standard tableaux of `lambda` as chains in the Young lattice from the
/// empty partition.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Path> {
    if lambda.is_empty() {
        return vec![vec![Partition::empty()]];
    }
    let mut out = Vec::new();
    for (q, _) in lambda.remove_box() {
        for mut p in standard_tableaux(&q) {
            p.push(lambda.clone());
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Content of the box added at each step of a chain.
fn chain_contents(path: &Path) -> Vec<i64> {
    path.windows(2)
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            let i = (0..b.len())
                .find(|&i| a.parts().get(i).copied().unwrap_or(0) != b.parts()[i])
                .unwrap();
            (b.parts()[i] - 1) as i64 - i as i64
        })
        .collect()
}

/// Jucys-Murphy element `X_i = sum_{j < i} (j i)`, 1-based `i`.
pub fn jucys_murphy(n: usize, i: usize) -> GroupElement {
    let mut g = GroupElement::zero(n);
    for j in 1..i {
        g.add_term(Perm::transposition(n, j, i), Rational::one());
    }
    g
}

/// Diagonal unit for a standard tableau, by Lagrange interpolation of the
/// Jucys-Murphy elements at the tableau's contents.
fn diagonal_unit(n: usize, path: &Path, xs: &[GroupElement]) -> GroupElement {
    let contents = chain_contents(path);
    let mut e = GroupElement::one(n);
    for i in 1..n {
        let c = contents[i];
        let bound = i as i64;
        for other in -bound..=bound {
            if other == c {
                continue;
            }
            let factor = xs[i]
                .sub(&GroupElement::one(n).scale(&rat(other)))
                .scale(&Rational::new((1).into(), (c - other).into()));
            e = e.mul(&factor);
        }
    }
    e
}

/// Matrix units of `Q S_l` for `l <= 4`.
pub fn sym_matrix_units(l: usize) -> Result<MatrixUnitSystem<GroupElement>> {
    if l > 4 {
        return Err(Error::LimitExceeded(format!("S_{l} matrix units capped at l = 4")));
    }
    let xs: Vec<GroupElement> = (1..=l).map(|i| jucys_murphy(l, i)).collect();
    let mut blocks = Vec::new();
    let mut units = HashMap::new();
    for (b, lambda) in partitions_of(l).into_iter().enumerate() {
        let tabs = standard_tableaux(&lambda);
        let diag: Vec<GroupElement> = tabs.iter().map(|t| diagonal_unit(l, t, &xs)).collect();
        for (i, d) in diag.iter().enumerate() {
            if d.is_zero() || d.mul(d) != *d {
                return Err(Error::DegenerateEigenvalues(format!("tableau {i} of {lambda}")));
            }
        }
        // row 0 against the reference tableau; the reverse units carry the
        // normalization
        let mut from_ref = vec![diag[0].clone()];
        let mut to_ref = vec![diag[0].clone()];
        for t in 1..tabs.len() {
            let w = find_connecting(&diag[t], &diag[0], l)?;
            let up = diag[t].mul(&GroupElement::from_perm(w.clone())).mul(&diag[0]);
            let down = diag[0].mul(&GroupElement::from_perm(w.inverse())).mul(&diag[t]);
            let round = up.mul(&down);
            let c = ratio_of(&round, &diag[t])?;
            from_ref.push(up);
            to_ref.push(down.scale(&c.recip()));
        }
        for p in 0..tabs.len() {
            for q in 0..tabs.len() {
                let u = if p == q { diag[p].clone() } else { from_ref[p].mul(&to_ref[q]) };
                units.insert((b, p, q), u);
            }
        }
        blocks.push((lambda, tabs));
    }
    Ok(MatrixUnitSystem { blocks, units })
}

/// A permutation `w` with `a w b != 0`.
fn find_connecting(a: &GroupElement, b: &GroupElement, n: usize) -> Result<Perm> {
    Perm::all(n)
        .into_iter()
        .find(|w| !a.mul(&GroupElement::from_perm(w.clone())).mul(b).is_zero())
        .ok_or_else(|| Error::DegenerateEigenvalues("orthogonal isotypic idempotents".into()))
}

/// The scalar `c` with `a = c b`.
fn ratio_of(a: &GroupElement, b: &GroupElement) -> Result<Rational> {
    let (p, bc) = b.terms().iter().next().ok_or(Error::DivisionByZero)?;
    let c = a.coeff(p) / bc;
    if a != &b.scale(&c) || c.is_zero() {
        return Err(Error::DegenerateEigenvalues("corner algebra is not a line".into()));
    }
    Ok(c)
}
