use std::fmt;
use std::str::FromStr;

use super::{Diagram, Rank};
use crate::error::{Error, Result};

/// Monoid generators, all indices 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    /// `p_j`: strand `j` cut into `{j}` and `{j'}`.
    P(usize),
    /// `p_{i+1/2}`: strands `i` and `i+1` joined into one block.
    PHalf(usize),
    /// `e_i`: `{i, i+1}` and `{i', (i+1)'}`.
    E(usize),
    /// `s_i`: strands `i` and `i+1` crossed.
    S(usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::P(j) => write!(f, "p{j}"),
            Gen::PHalf(i) => write!(f, "p{}/2", 2 * i + 1),
            Gen::E(i) => write!(f, "e{i}"),
            Gen::S(i) => write!(f, "s{i}"),
        }
    }
}

impl FromStr for Gen {
    type Err = Error;

    /// `p2`, `p3/2`, `e1`, `s1`.
    fn from_str(s: &str) -> Result<Gen> {
        let bad = || Error::Parse(format!("not a generator: {s:?}"));
        let (head, rest) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        Ok(match (head, rest.split_once('/')) {
            ("p", None) => Gen::P(num(rest)?),
            ("p", Some((m, "2"))) => {
                let m = num(m)?;
                if m % 2 == 0 || m < 3 {
                    return Err(bad());
                }
                Gen::PHalf((m - 1) / 2)
            }
            ("e", None) => Gen::E(num(rest)?),
            ("s", None) => Gen::S(num(rest)?),
            _ => return Err(bad()),
        })
    }
}

/// The generator as a diagram of the given rank.
pub fn generator(g: Gen, rank: Rank) -> Result<Diagram> {
    let k = rank.ambient();
    let (idx, span) = match g {
        Gen::P(j) => (j, 1),
        Gen::PHalf(i) | Gen::E(i) | Gen::S(i) => (i, 2),
    };
    if idx == 0 || idx + span - 1 > k {
        return Err(Error::IndexOutOfRange(idx));
    }
    // labels start as the identity on top `0..k` and bottom `0..k`
    let mut top: Vec<usize> = (0..k).collect();
    let mut bottom: Vec<usize> = (0..k).collect();
    let i = idx - 1;
    match g {
        Gen::P(_) => bottom[i] = k,
        Gen::PHalf(_) => {
            top[i + 1] = i;
            bottom[i + 1] = i;
        }
        Gen::E(_) => {
            top[i + 1] = i;
            bottom[i] = k;
            bottom[i + 1] = k;
        }
        Gen::S(_) => bottom.swap(i, i + 1),
    }
    let raw: Vec<usize> = top.into_iter().chain(bottom).collect();
    Diagram::from_labels(rank, &raw).map_err(|_| Error::IndexOutOfRange(idx))
}

/// The generators `p_j`, `p_{i+1/2}`, `s_i` that exist at a rank.
pub fn generators(rank: Rank) -> Vec<(Gen, Diagram)> {
    let k = rank.ambient();
    let mut out = Vec::new();
    for i in 1..=k {
        for g in [Gen::P(i), Gen::PHalf(i), Gen::S(i)] {
            if let Ok(d) = generator(g, rank) {
                out.push((g, d));
            }
        }
    }
    out
}
