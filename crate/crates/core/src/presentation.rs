//! Machine check of the Coxeter-style presentation of the partition monoid
//! by `s_i`, `p_j` and `p_{i+1/2}`, plus the relations derived from it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagrams::{evaluate_word, Gen, Rank};
use crate::error::{Error, Result};

/// Largest rank checked.
pub const MAX_RANK: usize = 4;

/// `p_{h/2}` from a doubled index `h >= 2`.
fn p(h: usize) -> Gen {
    if h % 2 == 0 {
        Gen::P(h / 2)
    } else {
        Gen::PHalf(h / 2)
    }
}

struct Relation {
    family: &'static str,
    lhs: Vec<Gen>,
    rhs: Vec<Gen>,
}

fn rel(family: &'static str, lhs: &[Gen], rhs: &[Gen]) -> Relation {
    Relation { family, lhs: lhs.to_vec(), rhs: rhs.to_vec() }
}

fn show(word: &[Gen]) -> String {
    if word.is_empty() {
        "1".into()
    } else {
        word.iter().map(Gen::to_string).collect::<Vec<_>>().join(" ")
    }
}

/// Every instance of every relation at integer rank `k`.
fn relations(k: usize) -> Vec<Relation> {
    use Gen::{E, S};
    let mut out = Vec::new();
    // Temperley-Lieb monoid
    for i in 1..k {
        out.push(rel("e_idempotent", &[E(i), E(i)], &[E(i)]));
        for j in [i.wrapping_sub(1), i + 1] {
            if (1..k).contains(&j) {
                out.push(rel("e_braid", &[E(i), E(j), E(i)], &[E(i)]));
            }
        }
        for j in i + 2..k {
            out.push(rel("e_far", &[E(i), E(j)], &[E(j), E(i)]));
        }
        out.push(rel("e_from_p", &[p(2 * i + 1), p(2 * i), p(2 * i + 2), p(2 * i + 1)], &[E(i)]));
    }
    // planar monoid, doubled indices 2..=2k
    let hs = 2..=2 * k;
    for h in hs.clone() {
        out.push(rel("p_idempotent", &[p(h), p(h)], &[p(h)]));
        for g in [h - 1, h + 1] {
            if hs.contains(&g) {
                out.push(rel("p_braid", &[p(h), p(g), p(h)], &[p(h)]));
            }
        }
        for g in h + 2..=2 * k {
            out.push(rel("p_far", &[p(h), p(g)], &[p(g), p(h)]));
        }
    }
    // symmetric group
    for i in 1..k {
        out.push(rel("s_involution", &[S(i), S(i)], &[]));
        if i + 1 < k {
            out.push(rel("s_braid", &[S(i), S(i + 1), S(i)], &[S(i + 1), S(i), S(i + 1)]));
        }
        for j in i + 2..k {
            out.push(rel("s_far", &[S(i), S(j)], &[S(j), S(i)]));
        }
    }
    // mixed
    for i in 1..k {
        let (pi, pi1, ph) = (p(2 * i), p(2 * i + 2), p(2 * i + 1));
        out.push(rel("s_absorbs_pp_left", &[S(i), pi, pi1], &[pi, pi1]));
        out.push(rel("s_absorbs_pp_right", &[pi, pi1, S(i)], &[pi, pi1]));
        out.push(rel("s_absorbs_phalf_left", &[S(i), ph], &[ph]));
        out.push(rel("s_absorbs_phalf_right", &[ph, S(i)], &[ph]));
        out.push(rel("s_conjugates_p", &[S(i), pi, S(i)], &[pi1]));
        if i + 1 < k {
            out.push(rel(
                "ss_conjugates_phalf",
                &[S(i), S(i + 1), ph, S(i + 1), S(i)],
                &[p(2 * i + 3)],
            ));
        }
        for h in hs.clone().filter(|&h| !(2 * i - 1..=2 * i + 3).contains(&h)) {
            out.push(rel("s_p_far", &[S(i), p(h)], &[p(h), S(i)]));
        }
        // derived
        if i >= 2 {
            out.push(rel("phalf_s_phalf", &[ph, S(i - 1), ph], &[ph, p(2 * i - 1)]));
        }
        out.push(rel("p_s_p", &[pi, S(i), pi], &[pi1, pi]));
        out.push(rel("p_phalf_p_up", &[pi, ph, pi1], &[pi, S(i)]));
        out.push(rel("p_phalf_p_down", &[pi1, ph, pi], &[S(i), pi]));
    }
    out
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PresentationReport {
    pub kmax: usize,
    pub checked: usize,
    /// Instances checked per relation family.
    pub families: BTreeMap<String, usize>,
    /// `k: lhs = rhs` for each failing instance.
    pub failures: Vec<String>,
}

impl PresentationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every relation instance, as equalities in the diagram monoid, at
/// each rank `1..=kmax`.
pub fn verify_presentation(kmax: usize) -> Result<PresentationReport> {
    if kmax > MAX_RANK {
        return Err(Error::LimitExceeded(format!("presentation check at rank {kmax}")));
    }
    let mut report = PresentationReport { kmax, ..Default::default() };
    for k in 1..=kmax {
        let rank = Rank::integer(k);
        for r in relations(k) {
            let (lhs, _) = evaluate_word(&r.lhs, rank)?;
            let (rhs, _) = evaluate_word(&r.rhs, rank)?;
            report.checked += 1;
            *report.families.entry(r.family.to_string()).or_default() += 1;
            if lhs != rhs {
                report.failures.push(format!("{k}: {} = {}", show(&r.lhs), show(&r.rhs)));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_relations_hold() {
        let r = verify_presentation(4).unwrap();
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!(r.families.len(), 21);
        assert_eq!(r.families["ss_conjugates_phalf"], 1 + 2);
        assert_eq!(r.checked, r.families.values().sum::<usize>());
    }

    #[test]
    fn a_false_relation_is_caught() {
        let rank = Rank::integer(2);
        let (a, _) = evaluate_word(&[Gen::S(1), Gen::P(1)], rank).unwrap();
        let (b, _) = evaluate_word(&[Gen::P(1), Gen::S(1)], rank).unwrap();
        assert_ne!(a, b);
        let (c, _) = evaluate_word(&[Gen::S(1), Gen::PHalf(1)], rank).unwrap();
        let (d, _) = evaluate_word(&[Gen::PHalf(1)], rank).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn word_rendering() {
        assert_eq!(show(&[]), "1");
        assert_eq!(show(&[p(3), p(2)]), "p3/2 p1");
    }

    #[test]
    fn cap() {
        assert!(matches!(verify_presentation(5), Err(Error::LimitExceeded(_))));
    }
}
