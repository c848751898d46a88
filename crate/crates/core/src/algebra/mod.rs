//! Sparse linear combinations of diagrams with the product
//! `d1 d2 = x^l (d1 o d2)`, where `l` counts blocks lost in the middle row.
//! The coefficient ring fixes the parameter mode: `Poly` and `RatFunc`
//! elements carry the generic parameter `x`, `Rational` elements a
//! specialized value `n`.

mod orbit;

pub use orbit::{
    coarsenings, from_orbit_basis, mobius_product, mobius_zeta_table, orbit_element,
    to_orbit_basis,
};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::diagrams::{Diagram, Rank};
use crate::error::{Error, Result};
use crate::scalars::{format_rational, parse_rational, Coefficient, Poly, RatFunc, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamMode {
    Generic,
    Specialized(Rational),
}

/// Coefficient types an element can carry, with their JSON form.
pub trait Scalar: Coefficient {
    fn mode(param: &Self) -> ParamMode;
    /// The parameter for a mode, if this coefficient type supports it.
    fn param_for(mode: &ParamMode) -> Result<Self>;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

fn poly_to_json(p: &Poly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(format_rational(c)))
            .collect(),
    )
}

fn poly_from_json(v: &Value) -> Result<Poly> {
    match v {
        Value::Array(items) => Ok(Poly::new(
            items
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>>>()?,
        )),
        _ => Ok(Poly::constant(rational_from_json(v)?)),
    }
}

fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(Error::Parse(format!("not a rational: {v}"))),
    }
}

impl Scalar for Rational {
    fn mode(param: &Self) -> ParamMode {
        ParamMode::Specialized(param.clone())
    }
    fn param_for(mode: &ParamMode) -> Result<Self> {
        match mode {
            ParamMode::Specialized(n) => Ok(n.clone()),
            ParamMode::Generic => Err(Error::ModeMismatch),
        }
    }
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
    fn from_json(v: &Value) -> Result<Self> {
        rational_from_json(v)
    }
}

impl Scalar for Poly {
    fn mode(_: &Self) -> ParamMode {
        ParamMode::Generic
    }
    fn param_for(mode: &ParamMode) -> Result<Self> {
        match mode {
            ParamMode::Generic => Ok(Poly::x()),
            ParamMode::Specialized(_) => Err(Error::ModeMismatch),
        }
    }
    fn to_json(&self) -> Value {
        poly_to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self> {
        poly_from_json(v)
    }
}

impl Scalar for RatFunc {
    fn mode(_: &Self) -> ParamMode {
        ParamMode::Generic
    }
    fn param_for(mode: &ParamMode) -> Result<Self> {
        match mode {
            ParamMode::Generic => Ok(RatFunc::from_poly(Poly::x())),
            ParamMode::Specialized(_) => Err(Error::ModeMismatch),
        }
    }
    fn to_json(&self) -> Value {
        if self.den().is_one() {
            poly_to_json(self.num())
        } else {
            json!({"num": poly_to_json(self.num()), "den": poly_to_json(self.den())})
        }
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(o) => {
                let num = poly_from_json(o.get("num").ok_or_else(|| Error::Parse("num".into()))?)?;
                let den = poly_from_json(o.get("den").ok_or_else(|| Error::Parse("den".into()))?)?;
                RatFunc::new(num, den)
            }
            _ => Ok(RatFunc::from_poly(poly_from_json(v)?)),
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct Element<C> {
    rank: Rank,
    param: C,
    terms: BTreeMap<Diagram, C>,
}

/// Element over `Z[x]`-style polynomial coefficients.
pub type GenericElement = Element<Poly>;
/// Element of the algebra at a specialized parameter value.
pub type SpecialElement = Element<Rational>;

impl<C: Scalar> Element<C> {
    pub fn zero(rank: Rank, param: C) -> Self {
        Element {
            rank,
            param,
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_in(rank: Rank, mode: &ParamMode) -> Result<Self> {
        Ok(Self::zero(rank, C::param_for(mode)?))
    }

    pub fn from_diagram(d: &Diagram, param: C) -> Self {
        Self::from_term(d.clone(), C::one(), param)
    }

    pub fn from_term(d: Diagram, c: C, param: C) -> Self {
        let mut e = Self::zero(d.rank(), param);
        e.add_term(d, c);
        e
    }

    pub fn identity(rank: Rank, param: C) -> Self {
        Self::from_diagram(&Diagram::identity(rank), param)
    }

    pub fn scalar(rank: Rank, c: C, param: C) -> Self {
        Self::from_term(Diagram::identity(rank), c, param)
    }

    pub fn from_terms(rank: Rank, param: C, terms: impl IntoIterator<Item = (Diagram, C)>) -> Result<Self> {
        let mut e = Self::zero(rank, param);
        for (d, c) in terms {
            if d.rank() != rank {
                return Err(Error::RankMismatch(d.rank().to_string(), rank.to_string()));
            }
            e.add_term(d, c);
        }
        Ok(e)
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn param(&self) -> &C {
        &self.param
    }

    pub fn mode(&self) -> ParamMode {
        C::mode(&self.param)
    }

    pub fn terms(&self) -> &BTreeMap<Diagram, C> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &Diagram) -> C {
        self.terms.get(d).cloned().unwrap_or_else(C::zero)
    }

    /// Adds `c * d`; `d` must have this element's rank.
    pub fn add_term(&mut self, d: Diagram, c: C) {
        debug_assert_eq!(d.rank(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(
                self.rank.to_string(),
                other.rank.to_string(),
            ));
        }
        if self.param != other.param {
            return Err(Error::ModeMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.rank, self.param.clone());
        }
        self.map_coeffs(|c| c.clone() * s.clone())
    }

    fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero(self.rank, self.param.clone());
        for (d, c) in &self.terms {
            out.add_term(d.clone(), f(c));
        }
        out
    }

    fn param_powers(&self, upto: usize) -> Vec<C> {
        let mut pw = vec![C::one()];
        for i in 1..=upto {
            let next = pw[i - 1].clone() * self.param.clone();
            pw.push(next);
        }
        pw
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let pw = self.param_powers(self.rank.ambient() + 1);
        let mut out = Self::zero(self.rank, self.param.clone());
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                let (d, l) = d1.compose_unchecked(d2);
                out.add_term(d, c1.clone() * c2.clone() * pw[l].clone());
            }
        }
        Ok(out)
    }

    /// `ab - ba`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// One half step up the tower.
    pub fn embed(&self, target: Rank) -> Result<Self> {
        if target != self.rank.up() {
            return Err(Error::InvalidTarget(target.to_string()));
        }
        let mut out = Self::zero(target, self.param.clone());
        for (d, c) in &self.terms {
            out.add_term(d.embed_up(), c.clone());
        }
        Ok(out)
    }

    /// Any number of half steps up.
    pub fn embed_to(&self, target: Rank) -> Result<Self> {
        if target < self.rank {
            return Err(Error::InvalidTarget(target.to_string()));
        }
        let mut cur = self.clone();
        while cur.rank < target {
            cur = cur.embed(cur.rank.up())?;
        }
        Ok(cur)
    }

    /// `eps_{1/2}`: merges the blocks of `K` and `K'`.
    pub fn eps_down(&self) -> Result<Self> {
        if !self.rank.is_integer() {
            return Err(Error::NonIntegerRank(self.rank.to_string()));
        }
        let target = self.rank.down().ok_or(Error::InvalidTarget("rank -1/2".into()))?;
        let mut out = Self::zero(target, self.param.clone());
        for (d, c) in &self.terms {
            out.add_term(d.merge_last(), c.clone());
        }
        Ok(out)
    }

    /// `eps^{1/2}`: deletes `K` and `K'`, with a factor of the parameter when
    /// that removes a whole block.
    pub fn eps_up(&self) -> Result<Self> {
        if !self.rank.is_half() {
            return Err(Error::NonHalfIntegerRank(self.rank.to_string()));
        }
        let mut out = Self::zero(self.rank.down().unwrap(), self.param.clone());
        for (d, c) in &self.terms {
            let (e, whole) = d.delete_last();
            let c = if whole { c.clone() * self.param.clone() } else { c.clone() };
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// `eps_1 = eps^{1/2} o eps_{1/2}`.
    pub fn eps_one(&self) -> Result<Self> {
        self.eps_down()?.eps_up()
    }

    /// Markov trace: each diagram contributes the parameter to the power of
    /// its closure components.
    pub fn trace(&self) -> C {
        let pw = self.param_powers(self.rank.ambient());
        let mut acc = C::zero();
        for (d, c) in &self.terms {
            acc = acc + c.clone() * pw[d.closure_components()].clone();
        }
        acc
    }

    /// The scalar this element equals, if it is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<C> {
        let id = Diagram::identity(self.rank);
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&id).cloned(),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mode = match self.mode() {
            ParamMode::Generic => json!("generic"),
            ParamMode::Specialized(n) => json!({"n": format_rational(&n)}),
        };
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(d, c)| json!({"diagram": d.to_json(), "coeff": c.to_json()}))
            .collect();
        json!({"double_rank": self.rank.double_rank(), "mode": mode, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("element json: {what}"));
        let dr = v
            .get("double_rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("double_rank"))?;
        let rank = Rank::from_double(dr as u8);
        let mode = match v.get("mode") {
            Some(Value::String(s)) if s == "generic" => ParamMode::Generic,
            Some(Value::Object(o)) => ParamMode::Specialized(rational_from_json(
                o.get("n").ok_or_else(|| bad("mode.n"))?,
            )?),
            _ => return Err(bad("mode")),
        };
        let mut e = Self::zero_in(rank, &mode)?;
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("terms"))? {
            let d: Diagram = serde_json::from_value(t.get("diagram").cloned().ok_or_else(|| bad("diagram"))?)
                .map_err(|err| Error::Parse(err.to_string()))?;
            if d.rank() != rank {
                return Err(Error::RankMismatch(d.rank().to_string(), rank.to_string()));
            }
            let c = C::from_json(t.get("coeff").ok_or_else(|| bad("coeff"))?)?;
            e.add_term(d, c);
        }
        Ok(e)
    }
}

impl Element<Poly> {
    pub fn generic(rank: Rank) -> Self {
        Self::zero(rank, Poly::x())
    }

    pub fn generic_diagram(d: &Diagram) -> Self {
        Self::from_diagram(d, Poly::x())
    }

    /// Evaluates every coefficient at `x = n`.
    pub fn specialize(&self, n: &Rational) -> SpecialElement {
        let mut out = SpecialElement::zero(self.rank, n.clone());
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.eval(n));
        }
        out
    }
}

impl Element<RatFunc> {
    pub fn specialize(&self, n: &Rational) -> Result<SpecialElement> {
        let mut out = SpecialElement::zero(self.rank, n.clone());
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.eval(n)?);
        }
        Ok(out)
    }
}

impl Element<Rational> {
    pub fn special(rank: Rank, n: Rational) -> Self {
        Self::zero(rank, n)
    }

    /// Coefficient vector over the given diagram list.
    pub fn to_vector(&self, basis_index: &std::collections::HashMap<Diagram, usize>, len: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); len];
        for (d, c) in &self.terms {
            v[basis_index[d]] = c.clone();
        }
        v
    }
}

impl<C: Scalar> fmt::Display for Element<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){d}")?;
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for Element<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.rank, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{enumerate, generator, Gen};
    use crate::scalars::{rat, ratio};

    fn x() -> Poly {
        Poly::x()
    }

    fn gd(double: u8, blocks: &[&[i64]]) -> GenericElement {
        let d = Diagram::new(
            Rank::from_double(double),
            &blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>(),
        )
        .unwrap();
        GenericElement::generic_diagram(&d)
    }

    #[test]
    fn multiplication_examples() {
        let p1 = gd(2, &[&[1], &[-1]]);
        assert_eq!(p1.mul(&p1).unwrap(), p1.scale(&x()));
        let e1 = generator(Gen::E(1), Rank::integer(2)).unwrap();
        let e = SpecialElement::from_diagram(&e1, rat(3));
        assert_eq!(e.mul(&e).unwrap(), e.scale(&rat(3)));
        let q = SpecialElement::from_diagram(&e1, rat(4));
        assert!(matches!(e.mul(&q), Err(Error::ModeMismatch)));
        let p = SpecialElement::identity(Rank::integer(1), rat(3));
        assert!(matches!(e.mul(&p), Err(Error::RankMismatch(..))));
    }

    #[test]
    fn worked_product_has_x_squared() {
        let d1 = gd(14, &[&[1, 3, -4], &[2], &[4, 5, 6], &[7], &[-1], &[-2, -3], &[-5, -7], &[-6]]);
        let d2 = gd(14, &[&[1], &[2, 4], &[5, 7], &[3, -4, -5, -6], &[6, -2, -7], &[-1], &[-3]]);
        let prod = d1.mul(&d2).unwrap();
        let expect = gd(14, &[&[1, 3, -4, -5, -6], &[2], &[4, 5, 6], &[7], &[-1], &[-2, -7], &[-3]]);
        assert_eq!(prod, expect.scale(&(&x() * &x())));
    }

    #[test]
    fn embedding_examples() {
        let id1 = GenericElement::identity(Rank::integer(1), x());
        assert_eq!(
            id1.embed(Rank::half(1)).unwrap(),
            GenericElement::identity(Rank::half(1), x())
        );
        let p1 = gd(2, &[&[1], &[-1]]);
        let up = p1.embed_to(Rank::integer(2)).unwrap();
        assert_eq!(up, GenericElement::generic_diagram(&generator(Gen::P(1), Rank::integer(2)).unwrap()));
        assert!(matches!(p1.embed(Rank::integer(2)), Err(Error::InvalidTarget(_))));
        // products commute with the embedding
        let a1 = enumerate(Rank::integer(1)).unwrap();
        for a in &a1 {
            for b in &a1 {
                let (ea, eb) = (GenericElement::generic_diagram(a), GenericElement::generic_diagram(b));
                let lhs = ea.mul(&eb).unwrap().embed_to(Rank::integer(2)).unwrap();
                let rhs = ea
                    .embed_to(Rank::integer(2))
                    .unwrap()
                    .mul(&eb.embed_to(Rank::integer(2)).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn eps_examples() {
        let id1 = GenericElement::identity(Rank::integer(1), x());
        assert_eq!(id1.eps_down().unwrap(), GenericElement::identity(Rank::half(0), x()));
        let s1 = GenericElement::generic_diagram(&generator(Gen::S(1), Rank::integer(2)).unwrap());
        assert_eq!(s1.eps_down().unwrap(), gd(3, &[&[1, 2, -1, -2]]));
        let idh = GenericElement::identity(Rank::half(1), x());
        assert_eq!(idh.eps_up().unwrap(), GenericElement::identity(Rank::integer(1), x()).scale(&x()));
        let attached = gd(3, &[&[1, 2, -2], &[-1]]);
        assert_eq!(attached.eps_up().unwrap(), gd(2, &[&[1], &[-1]]));
        assert!(matches!(id1.eps_up(), Err(Error::NonHalfIntegerRank(_))));
        assert!(matches!(idh.eps_down(), Err(Error::NonIntegerRank(_))));
        // eps_1 agrees with the trace on A_1
        let p1 = gd(2, &[&[1], &[-1]]);
        assert_eq!(id1.eps_one().unwrap().as_scalar(), Some(x()));
        assert_eq!(p1.eps_one().unwrap().as_scalar(), Some(x()));
        assert_eq!(p1.trace(), x());
    }

    #[test]
    fn trace_examples() {
        for k in 1..=3 {
            let id = GenericElement::identity(Rank::integer(k), x());
            assert_eq!(id.trace(), x().pow_u(k as u32));
        }
        let r2 = Rank::integer(2);
        let e1 = GenericElement::generic_diagram(&generator(Gen::E(1), r2).unwrap());
        let s1 = GenericElement::generic_diagram(&generator(Gen::S(1), r2).unwrap());
        assert_eq!(e1.trace(), x());
        assert_eq!(s1.trace(), x());
    }

    #[test]
    fn specialize_examples() {
        let p1 = gd(2, &[&[1], &[-1]]).scale(&x());
        assert_eq!(
            p1.specialize(&rat(4)),
            SpecialElement::from_diagram(p1.terms().keys().next().unwrap(), rat(4)).scale(&rat(4))
        );
        let pole = RatFunc::new(Poly::one(), Poly::from_ints(&[-1, 1])).unwrap();
        let d = Diagram::identity(Rank::integer(1));
        let e = Element::<RatFunc>::from_term(d, pole, RatFunc::from_poly(x()));
        assert!(matches!(e.specialize(&rat(1)), Err(Error::DenominatorVanishes(_))));
        assert_eq!(e.specialize(&rat(3)).unwrap().as_scalar(), Some(ratio(1, 2)));
    }

    #[test]
    fn json_round_trip() {
        let a = gd(4, &[&[1, 2], &[-1, -2]]).scale(&Poly::from_ints(&[1, -2]));
        let v = a.to_json();
        assert_eq!(v["terms"][0]["coeff"], json!(["1", "-2"]));
        assert_eq!(GenericElement::from_json(&v).unwrap(), a);
        let s = SpecialElement::identity(Rank::half(1), ratio(7, 2));
        let v = s.to_json();
        assert_eq!(v["mode"], json!({"n": "7/2"}));
        assert_eq!(SpecialElement::from_json(&v).unwrap(), s);
        assert!(matches!(GenericElement::from_json(&v), Err(Error::ModeMismatch)));
    }
}
