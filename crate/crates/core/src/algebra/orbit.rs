//! The orbit basis: `d = sum over d' coarser than or equal to d of x_{d'}`,
//! inverted with the Mobius function of the partition lattice.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Element, Scalar};
use crate::diagrams::{enumerate, Diagram, RgsIter};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalars::Rational;

/// Every diagram coarser than or equal to `d`, paired with the Mobius value
/// `mu(d, d')` from the product formula.
pub fn coarsenings(d: &Diagram) -> Vec<(Diagram, BigInt)> {
    let nb = d.num_blocks();
    RgsIter::new(nb)
        .map(|merge| {
            let raw = d.labels().iter().map(|&l| merge[l as usize] as usize);
            let coarse = Diagram::from_labels_unchecked(d.rank(), raw);
            let mut counts = vec![0usize; nb];
            for &m in &merge {
                counts[m as usize] += 1;
            }
            (coarse, mobius_from_counts(&counts))
        })
        .collect()
}

fn mobius_from_counts(counts: &[usize]) -> BigInt {
    let mut mu = BigInt::one();
    for &m in counts.iter().filter(|&&m| m > 0) {
        for j in 1..m {
            mu *= BigInt::from(j);
        }
        if m % 2 == 0 {
            mu = -mu;
        }
    }
    mu
}

/// `mu(d, d2)` by the product formula, or `None` when `d` is not finer than
/// or equal to `d2`.
pub fn mobius_product(d: &Diagram, d2: &Diagram) -> Result<Option<BigInt>> {
    if !d.coarsens(d2)? {
        return Ok(None);
    }
    let mut counts = vec![0usize; d2.num_blocks()];
    let mut seen = vec![false; d.num_blocks()];
    for (&a, &b) in d.labels().iter().zip(d2.labels()) {
        if !seen[a as usize] {
            seen[a as usize] = true;
            counts[b as usize] += 1;
        }
    }
    Ok(Some(mobius_from_counts(&counts)))
}

/// Mobius function of the coarsening poset of a whole rank, computed by
/// inverting its zeta matrix. Entry `[i][j]` is `mu(d_i, d_j)`.
pub fn mobius_zeta_table(rank: crate::diagrams::Rank) -> Result<(Vec<Diagram>, Vec<Vec<Rational>>)> {
    let all = enumerate(rank)?;
    let zeta: Vec<Vec<Rational>> = all
        .iter()
        .map(|a| {
            all.iter()
                .map(|b| {
                    if a.refines_unchecked(b) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mu = linalg::inverse(&zeta).ok_or_else(|| Error::BadParams("singular zeta matrix".into()))?;
    Ok((all, mu))
}

/// Coefficients in the orbit basis: the coefficient of `x_{d'}` is the sum
/// of the coefficients of all `d` finer than or equal to `d'`.
pub fn to_orbit_basis<C: Scalar>(a: &Element<C>) -> BTreeMap<Diagram, C> {
    let mut out: BTreeMap<Diagram, C> = BTreeMap::new();
    for (d, c) in a.terms() {
        for (coarse, _) in coarsenings(d) {
            let slot = out.entry(coarse).or_insert_with(C::zero);
            *slot = slot.clone() + c.clone();
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `x_d` in the diagram basis.
pub fn orbit_element<C: Scalar>(d: &Diagram, param: C) -> Element<C> {
    let mut e = Element::zero(d.rank(), param);
    for (coarse, mu) in coarsenings(d) {
        e.add_term(coarse, C::from_rational(&Rational::from_integer(mu)));
    }
    e
}

/// Diagram-basis element with the given orbit-basis coefficients.
pub fn from_orbit_basis<C: Scalar>(
    rank: crate::diagrams::Rank,
    param: C,
    coeffs: &BTreeMap<Diagram, C>,
) -> Result<Element<C>> {
    let mut e = Element::zero(rank, param.clone());
    for (d, c) in coeffs {
        if d.rank() != rank {
            return Err(Error::RankMismatch(d.rank().to_string(), rank.to_string()));
        }
        for (coarse, mu) in coarsenings(d) {
            e.add_term(coarse, c.clone() * C::from_rational(&Rational::from_integer(mu)));
        }
    }
    Ok(e)
}
