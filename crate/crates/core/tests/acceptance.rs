//! Acceptance suite: one line per criterion, exact comparisons throughout.
//!
//! Runs without the libtest harness so the report is always printed. Exits
//! nonzero if any criterion fails other than the documented table misprint
//! of criterion 8 (see `criterion_8`).

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use partalg::algebra::{
    from_orbit_basis, mobius_product, mobius_zeta_table, orbit_element, to_orbit_basis, GenericElement, SpecialElement,
};
use partalg::combinatorics::Partition;
use partalg::diagrams::{enumerate, evaluate_word, factorize, generator, Diagram, Gen, Rank};
use partalg::murphy::verify_murphy;
use partalg::presentation::verify_presentation;
use partalg::scalars::{rat, Poly, Rational};
use partalg::structure::{basic_construction_iso, char_poly, matrix_units, root_set, semisimple_verdict, specht, units_report};
use partalg::tensor::{bimodule_dimension_check, commutant_dims, homomorphism_check, phi};
use partalg::Error;

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Outcome);

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn lib<T>(r: partalg::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn rank(double: usize) -> Rank {
    Rank::from_double(double as u8)
}

// ---------------------------------------------------------------- oracles

/// Bell numbers from the Bell triangle.
fn bell(m: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..m {
        let mut next = vec![*row.last().unwrap()];
        for v in &row {
            next.push(next.last().unwrap() + v);
        }
        row = next;
    }
    row[0]
}

fn catalan(m: u64) -> u64 {
    // C(m) = binom(2m, m) / (m + 1)
    let mut c = 1u64;
    for i in 0..m {
        c = c * (2 * m - i) / (i + 1);
    }
    c / (m + 1)
}

/// Every set partition of `{0..len}` as a list of blocks.
fn set_partitions(len: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, len: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == len {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            go(i + 1, len, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        go(i + 1, len, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, len, &mut Vec::new(), &mut out);
    out
}

/// The diagrams at a rank from the set partitions of its `2K` vertices,
/// keeping `K ~ K'` at half-integer ranks.
fn oracle_diagrams(r: Rank) -> BTreeSet<Diagram> {
    let k = r.ambient();
    let vertex = |i: usize| if i < k { i as i64 + 1 } else { -((i - k) as i64 + 1) };
    set_partitions(2 * k)
        .into_iter()
        .filter(|blocks| {
            r.is_integer() || blocks.iter().any(|b| b.contains(&(k - 1)) && b.contains(&(2 * k - 1)))
        })
        .map(|blocks| {
            let bl: Vec<Vec<i64>> = blocks.iter().map(|b| b.iter().map(|&i| vertex(i)).collect()).collect();
            Diagram::new(r, &bl).expect("oracle diagram")
        })
        .collect()
}

/// Standard Young tableaux of a shape by removing corners.
fn syt(shape: &[usize]) -> BigInt {
    fn go(shape: &mut Vec<usize>, memo: &mut BTreeMap<Vec<usize>, BigInt>) -> BigInt {
        if shape.iter().all(|&p| p == 0) {
            return BigInt::one();
        }
        if let Some(v) = memo.get(shape) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for i in 0..shape.len() {
            let below = shape.get(i + 1).copied().unwrap_or(0);
            if shape[i] > below {
                shape[i] -= 1;
                total += go(shape, memo);
                shape[i] += 1;
            }
        }
        memo.insert(shape.clone(), total.clone());
        total
    }
    go(&mut shape.to_vec(), &mut BTreeMap::new())
}

/// Walk counts of the abstract graph at double level `dl`: integer to half
/// levels remove a box or stay, half to integer levels add a box or stay.
fn walks(dl: usize) -> BTreeMap<Vec<usize>, BigInt> {
    let mut cur: BTreeMap<Vec<usize>, BigInt> = BTreeMap::from([(vec![], BigInt::one())]);
    for step in 0..dl {
        let mut next: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
        for (mu, c) in &cur {
            *next.entry(mu.clone()).or_default() += c;
            let mut moves = Vec::new();
            if step % 2 == 0 {
                for i in 0..mu.len() {
                    if mu[i] > mu.get(i + 1).copied().unwrap_or(0) {
                        let mut m = mu.clone();
                        m[i] -= 1;
                        m.retain(|&p| p > 0);
                        moves.push(m);
                    }
                }
            } else {
                for i in 0..=mu.len() {
                    let above = if i == 0 { usize::MAX } else { mu[i - 1] };
                    let here = mu.get(i).copied().unwrap_or(0);
                    if here < above {
                        let mut m = mu.clone();
                        if i == mu.len() {
                            m.push(1);
                        } else {
                            m[i] += 1;
                        }
                        moves.push(m);
                    }
                }
            }
            for m in moves {
                *next.entry(m).or_default() += c;
            }
        }
        cur = next;
    }
    cur
}

fn g(d: &Diagram) -> GenericElement {
    GenericElement::generic_diagram(d)
}

fn up(e: &GenericElement, r: Rank) -> Result<GenericElement, String> {
    lib(e.embed_to(r))
}

fn mul3(a: &GenericElement, b: &GenericElement, c: &GenericElement) -> Result<GenericElement, String> {
    lib(lib(a.mul(b))?.mul(c))
}

// ---------------------------------------------------------------- criteria

fn criterion_1() -> Outcome {
    let mut seen = Vec::new();
    for dr in 1..=6 {
        let r = rank(dr);
        let got: BTreeSet<Diagram> = lib(enumerate(r))?.into_iter().collect();
        let want = oracle_diagrams(r);
        check(got == want, || format!("enumeration differs from the oracle at {r}"))?;
        check(got.len() as u64 == bell(dr), || format!("|A_{r}| = {} != B({dr})", got.len()))?;
        seen.push(got.len().to_string());
    }
    let a2 = lib(enumerate(Rank::integer(2)))?;
    let a3 = lib(enumerate(Rank::integer(3)))?;
    let planar = |ds: &[Diagram]| ds.iter().filter(|d| d.classify().in_p).count() as u64;
    check(planar(&a2) == catalan(4) && planar(&a2) == 14, || format!("|P_2| = {}", planar(&a2)))?;
    check(planar(&a3) == catalan(6) && planar(&a3) == 132, || format!("|P_3| = {}", planar(&a3)))?;
    let brauer = a3.iter().filter(|d| d.classify().in_b).count();
    let oracle_b = a3.iter().filter(|d| d.blocks().iter().all(|b| b.len() == 2)).count();
    check(brauer == 15 && brauer == oracle_b, || format!("|B_3| = {brauer}"))?;
    let sym = a3.iter().filter(|d| d.classify().in_s).count();
    let oracle_s = a3
        .iter()
        .filter(|d| d.blocks().iter().all(|b| b.len() == 2 && b.iter().filter(|&&v| v > 0).count() == 1))
        .count();
    check(sym == 6 && sym == oracle_s, || format!("|S_3| = {sym}"))?;
    Ok(format!("|A_k| = {}, |P_2| = 14, |P_3| = 132, |B_3| = 15, |S_3| = 6", seen.join(", ")))
}

fn criterion_2() -> Outcome {
    let r = lib(verify_presentation(4))?;
    check(r.ok(), || format!("failures: {:?}", r.failures))?;
    Ok(format!("{} instances in {} families, 0 failures", r.checked, r.families.len()))
}

fn criterion_3() -> Outcome {
    let all = lib(enumerate(Rank::integer(3)))?;
    for d in &all {
        let word = lib(factorize(d))?;
        let (back, _) = lib(evaluate_word(&word, d.rank()))?;
        check(&back == d, || format!("factorization of {d} evaluates to {back}"))?;
    }
    Ok(format!("{} diagrams round-trip", all.len()))
}

fn criterion_4() -> Outcome {
    let r = Rank::integer(2);
    let all = lib(enumerate(r))?;
    for d in &all {
        let e = g(d);
        let back = lib(from_orbit_basis(r, Poly::x(), &to_orbit_basis(&e)))?;
        check(back == e, || format!("diagram -> orbit -> diagram fails at {d}"))?;
        let x = orbit_element(d, Poly::x());
        let coeffs = to_orbit_basis(&x);
        let want = BTreeMap::from([(d.clone(), Poly::one())]);
        check(coeffs == want, || format!("orbit -> diagram -> orbit fails at {d}"))?;
    }
    let (basis, mu) = lib(mobius_zeta_table(r))?;
    let mut intervals = 0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let product = lib(mobius_product(a, b))?;
            let table = &mu[i][j];
            match product {
                Some(v) => {
                    intervals += 1;
                    check(&Rational::from_integer(v.clone()) == table, || {
                        format!("mu({a}, {b}): product {v}, zeta {table}")
                    })?;
                }
                None => check(table.is_zero(), || format!("mu({a}, {b}) = {table} off the poset"))?,
            }
        }
    }
    Ok(format!("round trips on {} diagrams; Mobius agrees on {intervals} intervals", all.len()))
}

/// The three bimodule laws and the three sandwich identities at integer
/// rank `k`, over the given triples of indices (or all of them).
fn eps_laws(k: usize, samples: Option<(usize, u64)>) -> Result<usize, String> {
    let top = Rank::integer(k);
    let mid = Rank::half(k - 1);
    let low = Rank::integer(k - 1);
    let a_top = lib(enumerate(top))?;
    let a_mid = lib(enumerate(mid))?;
    let a_low = lib(enumerate(low))?;
    let mut rng = samples.map(|(_, seed)| ChaCha8Rng::seed_from_u64(seed));

    // triples (i, j, l) into (outer, inner, outer)
    let mut triples = |outer: usize, inner: usize| -> Vec<(usize, usize, usize)> {
        match (&mut rng, samples) {
            (Some(rng), Some((count, _))) => (0..count)
                .map(|_| (rng.gen_range(0..outer), rng.gen_range(0..inner), rng.gen_range(0..outer)))
                .collect(),
            _ => (0..outer)
                .flat_map(|i| (0..inner).flat_map(move |j| (0..outer).map(move |l| (i, j, l))))
                .collect(),
        }
    };
    let mut checked = 0;

    // eps_{1/2}(a1 b a2) = a1 eps_{1/2}(b) a2
    for (i, j, l) in triples(a_mid.len(), a_top.len()) {
        let (a1, b, a2) = (g(&a_mid[i]), g(&a_top[j]), g(&a_mid[l]));
        let lhs = lib(mul3(&up(&a1, top)?, &b, &up(&a2, top)?)?.eps_down())?;
        let rhs = mul3(&a1, &lib(b.eps_down())?, &a2)?;
        check(lhs == rhs, || format!("eps_1/2 bimodule at {}, {}, {}", a_mid[i], a_top[j], a_mid[l]))?;
        checked += 1;
    }
    // eps^{1/2}(a1 b a2) = a1 eps^{1/2}(b) a2
    for (i, j, l) in triples(a_low.len(), a_mid.len()) {
        let (a1, b, a2) = (g(&a_low[i]), g(&a_mid[j]), g(&a_low[l]));
        let lhs = lib(mul3(&up(&a1, mid)?, &b, &up(&a2, mid)?)?.eps_up())?;
        let rhs = mul3(&a1, &lib(b.eps_up())?, &a2)?;
        check(lhs == rhs, || format!("eps^1/2 bimodule at {}, {}, {}", a_low[i], a_mid[j], a_low[l]))?;
        checked += 1;
    }
    // eps_1(a1 b a2) = a1 eps_1(b) a2
    for (i, j, l) in triples(a_low.len(), a_top.len()) {
        let (a1, b, a2) = (g(&a_low[i]), g(&a_top[j]), g(&a_low[l]));
        let lhs = lib(mul3(&up(&a1, top)?, &b, &up(&a2, top)?)?.eps_one())?;
        let rhs = mul3(&a1, &lib(b.eps_one())?, &a2)?;
        check(lhs == rhs, || format!("eps_1 bimodule at {}, {}, {}", a_low[i], a_top[j], a_low[l]))?;
        checked += 1;
    }

    let pick = |len: usize, rng: &mut Option<ChaCha8Rng>| -> Vec<usize> {
        match (rng, samples) {
            (Some(rng), Some((count, _))) => (0..count).map(|_| rng.gen_range(0..len)).collect(),
            _ => (0..len).collect(),
        }
    };
    let sandwich = |p: &GenericElement, b: &GenericElement, e: &GenericElement, what: &str| -> Result<(), String> {
        let lhs = mul3(p, b, p)?;
        let left = lib(e.mul(p))?;
        let right = lib(p.mul(e))?;
        check(lhs == left && lhs == right, || format!("{what} sandwich fails"))
    };

    // p_{k+1/2} b p_{k+1/2} = eps_{1/2}(b) p_{k+1/2}, b in A_k
    let above = Rank::half(k);
    let p_half = g(&lib(generator(Gen::PHalf(k), above))?);
    for j in pick(a_top.len(), &mut rng) {
        let b = g(&a_top[j]);
        sandwich(&p_half, &up(&b, above)?, &up(&lib(b.eps_down())?, above)?, "p_{k+1/2}")?;
        checked += 1;
    }
    // p_k b p_k = eps^{1/2}(b) p_k, b in A_{k-1/2}
    let p_k = g(&lib(generator(Gen::P(k), top))?);
    for j in pick(a_mid.len(), &mut rng) {
        let b = g(&a_mid[j]);
        sandwich(&p_k, &up(&b, top)?, &up(&lib(b.eps_up())?, top)?, "p_k")?;
        checked += 1;
    }
    // e_k b e_k = eps_1(b) e_k, b in A_k
    let next = Rank::integer(k + 1);
    let e_k = g(&lib(generator(Gen::E(k), next))?);
    for j in pick(a_top.len(), &mut rng) {
        let b = g(&a_top[j]);
        sandwich(&e_k, &up(&b, next)?, &up(&lib(b.eps_one())?, next)?, "e_k")?;
        checked += 1;
    }
    Ok(checked)
}

/// `tr_k = tr_{k-1/2} eps_{1/2}`, `tr_{k-1/2} = tr_{k-1} eps^{1/2}`, and the
/// trace as the iterated conditional expectation down to rank 0.
fn trace_laws(dr: usize) -> Result<usize, String> {
    let r = rank(dr);
    let mut checked = 0;
    for d in lib(enumerate(r))? {
        let b = g(&d);
        let lower = if r.is_integer() { lib(b.eps_down())? } else { lib(b.eps_up())? };
        check(b.trace() == lower.trace(), || format!("trace compatibility fails at {d}"))?;
        let mut e = b.clone();
        while e.rank() != Rank::ZERO {
            e = if e.rank().is_integer() { lib(e.eps_down())? } else { lib(e.eps_up())? };
        }
        check(e.as_scalar() == Some(b.trace()), || format!("iterated eps differs from tr at {d}"))?;
        checked += 1;
    }
    Ok(checked)
}

fn criterion_5() -> Outcome {
    let exhaustive = eps_laws(2, None)?;
    let spot = eps_laws(3, Some((200, 5)))?;
    let mut traces = 0;
    for dr in 1..=6 {
        traces += trace_laws(dr)?;
    }
    Ok(format!("{exhaustive} exhaustive at k = 2, {spot} sampled at k = 3, {traces} trace identities"))
}

fn criterion_6() -> Outcome {
    let r2 = Rank::integer(2);
    let c = lib(commutant_dims(2, r2))?;
    check(c.image_rank == 8 && c.kernel_dim == 7 && c.kernel_matches(), || format!("(2,2): {c:?}"))?;
    let a2 = lib(enumerate(r2))?;
    let over3 = a2.iter().filter(|d| d.num_blocks() > 3).count();
    let c3 = lib(commutant_dims(3, r2))?;
    check(
        c3.kernel_dim == over3 && c3.image_rank == a2.len() - over3 && c3.kernel_matches(),
        || format!("(3,2): {c3:?}"),
    )?;
    for n in [2, 3] {
        let h = lib(homomorphism_check(n, r2, None))?;
        check(h.failures == 0 && h.pairs_checked == 225, || format!("homomorphism at n = {n}: {h:?}"))?;
    }
    let n = 3;
    let nn = rat(3);
    let mut bridges = 0;
    for dr in 1..=4 {
        for d in lib(enumerate(rank(dr)))? {
            let b = SpecialElement::from_diagram(&d, nn.clone());
            let tr = lib(phi(&b, n))?.trace();
            let want = if dr % 2 == 0 { b.trace() } else { b.trace() / &nn };
            check(tr == want, || format!("trace bridge at {d}: {tr} != {want}"))?;
            bridges += 1;
        }
    }
    Ok(format!(
        "(2,2): rank 8, kernel 7; (3,2): rank {}, kernel {over3}; 450 products; {bridges} trace bridges",
        c3.image_rank
    ))
}

fn criterion_7() -> Outcome {
    use partalg::combinatorics::{BratteliGraph, GraphKind};
    for dr in 0..=6 {
        let r = rank(dr);
        let graph = lib(BratteliGraph::build(GraphKind::Abstract, r))?;
        let lib_counts: BTreeMap<Vec<usize>, BigInt> =
            graph.counts_at(r).into_iter().map(|(mu, c)| (mu.parts().to_vec(), c)).collect();
        let oracle = walks(dr);
        check(lib_counts == oracle, || format!("walk counts differ at {r}"))?;
        let squares: BigInt = oracle.values().map(|c| c * c).sum();
        check(squares == BigInt::from(bell(dr)), || format!("sum of squares {squares} at {r}"))?;
    }
    for (n, k) in [(2usize, 2usize), (3, 2), (5, 1)] {
        let b = lib(bimodule_dimension_check(n, Rank::integer(k)))?;
        check(b.ok() && b.space_dim == n.pow(k as u32).to_string(), || format!("bimodule ({n},{k}): {b:?}"))?;
    }
    Ok("sum of squared walks = B(2k) up to k = 3; bimodule identities at (2,2), (3,2), (5,1)".into())
}

fn lin(a: i64) -> Poly {
    Poly::x() - Poly::constant(rat(a))
}

fn prod(factors: &[Poly], den: i64) -> Poly {
    factors
        .iter()
        .fold(Poly::one(), |acc, f| acc * f.clone())
        .scale(&Rational::new(1.into(), den.into()))
}

/// The polynomials as displayed in the source table.
fn displayed_table() -> Vec<(Vec<usize>, bool, Poly)> {
    let x = Poly::x();
    vec![
        (vec![], false, Poly::one()),
        (vec![1], false, lin(1)),
        (vec![2], false, prod(&[x.clone(), lin(3)], 2)),
        (vec![1, 1], false, prod(&[lin(1), lin(2)], 2)),
        (vec![3], false, prod(&[x.clone(), lin(1), lin(5)], 6)),
        (vec![2, 1], false, prod(&[x.clone(), lin(2), lin(4)], 6)),
        (vec![1, 1, 1], false, prod(&[lin(1), lin(2), lin(3)], 6)),
        (vec![], true, x.clone()),
        (vec![1], true, prod(&[x.clone(), lin(2)], 1)),
        (vec![2], true, prod(&[x.clone(), lin(1), lin(4)], 2)),
        (vec![1, 1], true, prod(&[x.clone(), lin(2), lin(3)], 2)),
        (vec![3], true, prod(&[x.clone(), lin(1), lin(2), lin(6)], 6)),
        (vec![2, 1], true, prod(&[x.clone(), lin(1), lin(3), lin(5)], 6)),
        (vec![1, 1, 1], true, prod(&[x.clone(), lin(2), lin(3), lin(4)], 6)),
    ]
}

/// Whether the computed polynomials pass both independent checks: values
/// are tableau counts, and weighted by walk counts they sum to `tr(1)`.
fn character_oracles() -> Result<(), String> {
    for (mu, half, _) in displayed_table() {
        let c = char_poly(&Partition::new(mu.clone()), half).poly;
        let size: usize = mu.iter().sum();
        let first = mu.first().copied().unwrap_or(0);
        for n in (size + first + usize::from(half)).max(1)..=12 {
            // tr^mu(n) = f^{(n - |mu|, mu)}, and the half case is n tr^mu(n - 1)
            let m = n - usize::from(half);
            let shape: Vec<usize> = std::iter::once(m - size).chain(mu.iter().copied()).collect();
            let mut want = Rational::from_integer(syt(&shape));
            if half {
                want *= rat(n as i64);
            }
            check(c.eval(&rat(n as i64)) == want, || format!("tableau oracle fails for {mu:?} at n = {n}"))?;
        }
    }
    for dl in 0..=7 {
        let level = rank(dl);
        for n in 2..=9i64 {
            let total: Rational = walks(dl)
                .iter()
                .map(|(mu, c)| {
                    let p = char_poly(&Partition::new(mu.clone()), level.is_half()).poly;
                    p.eval(&rat(n)) * Rational::from_integer(c.clone())
                })
                .sum();
            let want = rat(n).pow(level.ambient() as i32);
            check(total == want, || format!("walk-weighted sum at {level}, n = {n}"))?;
        }
    }
    Ok(())
}

/// Criterion 8 compares against the displayed table. The two `(2,1)`
/// entries are printed with `1/6` where the product formula gives `1/3`;
/// that mismatch is reported as FAIL but tolerated when both oracles side
/// with the computed values. Any other outcome is fatal.
fn criterion_8() -> (Outcome, bool) {
    let mut mismatches = Vec::new();
    for (mu, half, want) in displayed_table() {
        let got = char_poly(&Partition::new(mu.clone()), half).poly;
        if got != want {
            mismatches.push((mu, half, got, want));
        }
    }
    let mut roots = Ok(());
    for dr in [4, 5, 6] {
        let got: BTreeSet<Rational> = root_set(rank(dr)).into_iter().collect();
        let want: BTreeSet<Rational> = (0..dr as i64).map(rat).collect();
        if got != want {
            roots = Err(format!("root set at {} is {got:?}", rank(dr)));
        }
    }
    if let Err(e) = roots {
        return (Err(e), false);
    }
    if mismatches.is_empty() {
        return (Ok("14 entries match; root sets {0..2k-1} at k = 2, 5/2, 3".into()), true);
    }
    let listing: Vec<String> = mismatches
        .iter()
        .map(|(mu, half, got, want)| {
            format!("{mu:?}{}: computed {got}, displayed {want}", if *half { " half" } else { "" })
        })
        .collect();
    let documented = mismatches.len() == 2
        && mismatches.iter().all(|(mu, _, _, _)| mu == &vec![2, 1])
        && mismatches.iter().any(|m| m.1)
        && mismatches.iter().any(|m| !m.1);
    let oracles = character_oracles();
    let tolerated = documented && oracles.is_ok();
    let note = match oracles {
        Ok(()) if documented => "; display misprint, both oracles confirm the computed values".to_string(),
        Ok(()) => String::new(),
        Err(e) => format!("; oracle failure: {e}"),
    };
    (Err(format!("{}{note}", listing.join("; "))), tolerated)
}

fn criterion_9() -> Outcome {
    let mut zeros = Vec::new();
    for dr in 2..=6 {
        for n in 2..=5 {
            let v = lib(semisimple_verdict(rank(dr), n))?;
            let by_gram = v.by_gram.ok_or_else(|| format!("no Gram verdict at ({}, {n})", rank(dr)))?;
            let expect_zero = dr > n + 1;
            check(by_gram != expect_zero && v.agrees(), || {
                format!("({}, {n}): gram nonzero = {by_gram}, expected zero = {expect_zero}", rank(dr))
            })?;
            if !by_gram {
                zeros.push(format!("({},{n})", rank(dr)));
            }
        }
    }
    Ok(format!("20 cases; determinant zero exactly at {}", zeros.join(" ")))
}

fn criterion_10() -> Outcome {
    let r = lib(verify_murphy(Rank::integer(3), &[2, 3], Some(7)))?;
    check(r.commutator_failures.is_empty(), || format!("commutators: {:?}", r.commutator_failures))?;
    check(r.centrality_failures.is_empty(), || format!("centrality: {:?}", r.centrality_failures))?;
    for (n, k) in [(2, "2"), (3, "2"), (3, "1")] {
        let c = r.kappa.iter().find(|c| c.n == n && c.rank == k);
        check(c.is_some_and(|c| c.equal), || format!("kappa identity at ({n},{k})"))?;
    }
    check(r.kappa.iter().all(|c| c.equal), || "kappa identity".into())?;
    check(r.spectra.len() == 2 && r.spectra.iter().all(|s| s.matches_after_offsets), || {
        "joint spectra".into()
    })?;
    let offsets: Vec<String> = r.spectra[1].offsets.iter().map(|(l, o)| format!("M_{l}: {o}")).collect();
    Ok(format!(
        "{} commutators, {} centrality checks, {} kappa identities; offsets at n = 7 {}",
        r.commutators_checked,
        r.centrality_checked,
        r.kappa.len(),
        offsets.join(", ")
    ))
}

fn criterion_11() -> Outcome {
    let r = lib(units_report(Rank::integer(2), &rat(7)))?;
    check(r.units == 15, || format!("{} units", r.units))?;
    check(r.check.ok(), || format!("unit relations: {:?}", r.check))?;
    check(r.z_idempotent && r.z_spans_ideal, || "ideal idempotent".into())?;
    check(r.minimal_idempotents, || "corner algebras".into())?;
    match matrix_units(Rank::integer(2), &rat(2)) {
        Err(Error::NotSemisimple(_)) => {}
        other => return Err(format!("(2, 2) gave {:?}", other.map(|s| s.len()))),
    }
    Ok(format!(
        "15 units, {} products exact, sum e_PP = 1; NotSemisimple at n = 2",
        r.check.products_checked
    ))
}

fn criterion_12() -> Outcome {
    let r = lib(basic_construction_iso(Rank::integer(2), &rat(7), 50, 12))?;
    check(r.ok() && r.products_checked == 50, || format!("{r:?}"))?;
    check(r.image_rank == r.ideal_dim && r.ideal_dim == 15 - 2, || format!("{r:?}"))?;
    Ok(format!("image rank {} = dim CI_2; 50 products transported", r.image_rank))
}

fn criterion_13() -> Outcome {
    use partalg::combinatorics::{BratteliGraph, GraphKind};
    let level = Rank::integer(2);
    let graph = lib(BratteliGraph::build(GraphKind::Abstract, level))?;
    let oracle = walks(4);
    let mut shown = Vec::new();
    for (lam, want) in [(vec![1], 3usize), (vec![2], 1), (vec![1, 1], 1)] {
        let p = Partition::new(lam.clone());
        let r = lib(specht(level, &p, None))?;
        let paths = lib(graph.path_count(level, &p))?;
        check(
            r.rank == want && r.expected == want && paths == BigInt::from(want) && oracle[&lam] == paths,
            || format!("{lam:?}: rank {}, walks {paths}", r.rank),
        )?;
        check(r.psi_nonzero, || format!("{lam:?}: Psi vanishes"))?;
        shown.push(format!("{lam:?} -> {}", r.rank));
    }
    Ok(shown.join(", "))
}

fn main() -> ExitCode {
    let simple: [Criterion; 12] = [
        (1, "cardinalities", criterion_1),
        (2, "presentation", criterion_2),
        (3, "factorization", criterion_3),
        (4, "orbit basis", criterion_4),
        (5, "eps and trace laws", criterion_5),
        (6, "Schur-Weyl", criterion_6),
        (7, "dimension identities", criterion_7),
        (9, "semisimplicity", criterion_9),
        (10, "Murphy elements", criterion_10),
        (11, "matrix units", criterion_11),
        (12, "basic construction", criterion_12),
        (13, "Specht ranks", criterion_13),
    ];
    let mut fatal = 0;
    let mut report = |i: usize, name: &str, out: &Outcome, tolerated: bool| {
        match out {
            Ok(msg) => println!("criterion {i:>2} {name}: PASS ({msg})"),
            Err(msg) => {
                println!("criterion {i:>2} {name}: FAIL ({msg})");
                if !tolerated {
                    fatal += 1;
                }
            }
        }
    };
    for (i, name, f) in &simple[..7] {
        report(*i, name, &f(), false);
    }
    let (out, tolerated) = criterion_8();
    report(8, "character polynomials", &out, tolerated);
    for (i, name, f) in &simple[7..] {
        report(*i, name, &f(), false);
    }
    if fatal > 0 {
        println!("{fatal} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
