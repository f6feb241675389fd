//! The truncated graded ring `F₂[w₁, w₂, …]` and its sparse polynomials.
//!
//! Coefficients live in GF(2), so a polynomial is just a set of monomials and
//! addition is symmetric difference. Every polynomial carries a truncation
//! bound `N`; products drop monomials above `N`, which is exact on the graded
//! pieces of degree at most `N`.
//!
//! Monomials and polynomials are generic over the generator type so that the
//! same machinery serves the `w`/`p` coordinates of `R` and the free algebra
//! used by the presentation.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{Ambient, BitVec};
use crate::partitions::partitions_with_parts;

/// A graded polynomial variable.
pub trait Generator: Clone + Ord + Hash + fmt::Debug + fmt::Display {
    fn degree(&self) -> u32;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    W,
    P,
}

/// `w_i` or the power sum `p_i`; both have degree `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub index: u32,
    pub kind: GenKind,
}

impl Gen {
    pub fn w(index: u32) -> Self {
        Gen {
            index,
            kind: GenKind::W,
        }
    }

    pub fn p(index: u32) -> Self {
        Gen {
            index,
            kind: GenKind::P,
        }
    }

    pub fn is_w(&self) -> bool {
        self.kind == GenKind::W
    }
}

impl Generator for Gen {
    fn degree(&self) -> u32 {
        self.index
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::W => write!(f, "w{}", self.index),
            GenKind::P => write!(f, "p{}", self.index),
        }
    }
}

/// Which generators a basis or square-freeness test refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenSet {
    /// Every `w_i`.
    AllW,
    /// `w_2, w_4, …`
    EvenW,
    /// `p_1, p_3, …`
    OddP,
    /// `p_1, w_2, p_3, w_4, …`
    Mixed,
}

impl GenSet {
    pub fn contains(&self, g: &Gen) -> bool {
        let even = g.index.is_multiple_of(2);
        match self {
            GenSet::AllW => g.is_w(),
            GenSet::EvenW => g.is_w() && even,
            GenSet::OddP => !g.is_w() && !even,
            GenSet::Mixed => g.is_w() == even,
        }
    }

    fn generator_of_degree(&self, k: u32) -> Option<Gen> {
        let g = match self {
            GenSet::AllW => Gen::w(k),
            GenSet::EvenW => Gen::w(k),
            GenSet::OddP => Gen::p(k),
            GenSet::Mixed if k.is_multiple_of(2) => Gen::w(k),
            GenSet::Mixed => Gen::p(k),
        };
        self.contains(&g).then_some(g)
    }

    pub fn generators_up_to(&self, n: u32) -> Vec<Gen> {
        (1..=n)
            .filter_map(|k| self.generator_of_degree(k))
            .collect()
    }
}

/// A monomial: sorted `(generator, exponent)` pairs with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial<G> {
    factors: Vec<(G, u32)>,
    degree: u32,
}

impl<G: Generator> Monomial<G> {
    pub fn one() -> Self {
        Monomial {
            factors: Vec::new(),
            degree: 0,
        }
    }

    pub fn generator(g: G) -> Self {
        Monomial::power(g, 1)
    }

    pub fn power(g: G, exponent: u32) -> Self {
        if exponent == 0 {
            return Monomial::one();
        }
        let degree = g.degree() * exponent;
        Monomial {
            factors: vec![(g, exponent)],
            degree,
        }
    }

    /// Builds a monomial from factors in any order; repeated generators merge.
    pub fn from_factors(factors: impl IntoIterator<Item = (G, u32)>) -> Self {
        let mut merged: Vec<(G, u32)> = Vec::new();
        let mut all: Vec<(G, u32)> = factors.into_iter().filter(|(_, e)| *e > 0).collect();
        all.sort_by(|a, b| a.0.cmp(&b.0));
        for (g, e) in all {
            match merged.last_mut() {
                Some((last, le)) if *last == g => *le += e,
                _ => merged.push((g, e)),
            }
        }
        let degree = merged.iter().map(|(g, e)| g.degree() * e).sum();
        Monomial {
            factors: merged,
            degree,
        }
    }

    pub fn factors(&self) -> &[(G, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, g: &G) -> u32 {
        self.factors
            .binary_search_by(|(h, _)| h.cmp(g))
            .map_or(0, |i| self.factors[i].1)
    }

    pub fn mul(&self, other: &Monomial<G>) -> Monomial<G> {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, b) = (&self.factors[i], &other.factors[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    factors.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    factors.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        Monomial {
            factors,
            degree: self.degree + other.degree,
        }
    }

    /// True if every generator accepted by `filter` appears at most once.
    pub fn is_square_free_in(&self, filter: impl Fn(&G) -> bool) -> bool {
        self.factors.iter().all(|(g, e)| *e <= 1 || !filter(g))
    }

    pub fn uses_only(&self, filter: impl Fn(&G) -> bool) -> bool {
        self.factors.iter().all(|(g, _)| filter(g))
    }
}

impl Monomial<Gen> {
    pub fn w(index: u32) -> Self {
        Monomial::generator(Gen::w(index))
    }

    pub fn p(index: u32) -> Self {
        Monomial::generator(Gen::p(index))
    }

    /// Product `w_{parts[0]} w_{parts[1]} …`.
    pub fn w_product(parts: &[u32]) -> Self {
        Monomial::from_factors(parts.iter().map(|&i| (Gen::w(i), 1)))
    }
}

/// True iff the exponents of the generators in `set` are all at most one.
pub fn is_square_free(m: &Monomial<Gen>, set: GenSet) -> bool {
    m.is_square_free_in(|g| set.contains(g))
}

/// Canonical order: higher degree first, then the exponent vector read from
/// the smallest generator upward, larger exponents first.
impl<G: Generator> Ord for Monomial<G> {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree.cmp(&self.degree).then_with(|| {
            for (a, b) in self.factors.iter().zip(&other.factors) {
                match a.0.cmp(&b.0) {
                    Ordering::Equal => match b.1.cmp(&a.1) {
                        Ordering::Equal => continue,
                        o => return o,
                    },
                    o => return o,
                }
            }
            other.factors.len().cmp(&self.factors.len())
        })
    }
}

impl<G: Generator> PartialOrd for Monomial<G> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<G: Generator> fmt::Display for Monomial<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl<G: Generator> fmt::Debug for Monomial<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

/// A GF(2) polynomial truncated above `max_degree`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<G> {
    terms: BTreeSet<Monomial<G>>,
    max_degree: u32,
}

/// Elements of `R` in `w` and/or `p` coordinates.
pub type Poly = Polynomial<Gen>;

impl<G: Generator> Polynomial<G> {
    pub fn zero(max_degree: u32) -> Self {
        Polynomial {
            terms: BTreeSet::new(),
            max_degree,
        }
    }

    pub fn one(max_degree: u32) -> Self {
        Polynomial::from_monomial(Monomial::one(), max_degree)
    }

    /// The monomial as a polynomial; zero if it lies above the truncation.
    pub fn from_monomial(m: Monomial<G>, max_degree: u32) -> Self {
        let mut p = Polynomial::zero(max_degree);
        if m.degree() <= max_degree {
            p.terms.insert(m);
        }
        p
    }

    /// Sum of the given monomials with GF(2) cancellation; rejects terms above the bound.
    pub fn from_terms(
        terms: impl IntoIterator<Item = Monomial<G>>,
        max_degree: u32,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(max_degree);
        for m in terms {
            if m.degree() > max_degree {
                return Err(Error::DegreeOverflow {
                    degree: m.degree(),
                    max_degree,
                });
            }
            p.toggle(m);
        }
        Ok(p)
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial<G>> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn contains(&self, m: &Monomial<G>) -> bool {
        self.terms.contains(m)
    }

    /// Highest term degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().next().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter();
        match it.next() {
            None => true,
            Some(first) => it.all(|m| m.degree() == first.degree()),
        }
    }

    /// Adds a single monomial (insert or cancel). Terms above the bound are ignored.
    pub fn toggle(&mut self, m: Monomial<G>) {
        if m.degree() > self.max_degree {
            return;
        }
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    fn check_bounds(&self, other: &Self) -> Result<()> {
        if self.max_degree != other.max_degree {
            return Err(Error::TruncationMismatch {
                left: self.max_degree,
                right: other.max_degree,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_bounds(other)?;
        Ok(Polynomial {
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .cloned()
                .collect(),
            max_degree: self.max_degree,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_bounds(other)?;
        let n = self.max_degree;
        let mut acc: HashSet<Monomial<G>> = HashSet::new();
        for a in &self.terms {
            for b in &other.terms {
                if a.degree() + b.degree() > n {
                    continue;
                }
                let m = a.mul(b);
                if !acc.remove(&m) {
                    acc.insert(m);
                }
            }
        }
        Ok(Polynomial {
            terms: acc.into_iter().collect(),
            max_degree: n,
        })
    }

    pub fn mul_monomial(&self, m: &Monomial<G>) -> Self {
        let n = self.max_degree;
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|t| t.degree() + m.degree() <= n)
                .map(|t| t.mul(m))
                .collect(),
            max_degree: n,
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut result = Polynomial::one(self.max_degree);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Sum of the terms of degree exactly `d`.
    pub fn graded_component(&self, d: u32) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|m| m.degree() == d)
                .cloned()
                .collect(),
            max_degree: self.max_degree,
        }
    }

    /// The same element under a different truncation bound (terms above it dropped).
    pub fn with_max_degree(&self, max_degree: u32) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|m| m.degree() <= max_degree)
                .cloned()
                .collect(),
            max_degree,
        }
    }

    /// Ring map defined on generators: `g ↦ image(g)`.
    pub fn substitute<H: Generator>(
        &self,
        max_degree: u32,
        mut image: impl FnMut(&G) -> Polynomial<H>,
    ) -> Polynomial<H> {
        let mut cache: HashMap<(G, u32), Polynomial<H>> = HashMap::new();
        let mut out = Polynomial::zero(max_degree);
        for m in &self.terms {
            let mut prod = Polynomial::one(max_degree);
            for (g, e) in m.factors() {
                let key = (g.clone(), *e);
                if !cache.contains_key(&key) {
                    let base = image(g).with_max_degree(max_degree);
                    cache.insert(key.clone(), base.pow(*e));
                }
                prod = &prod * &cache[&key];
                if prod.is_zero() {
                    break;
                }
            }
            out = &out + &prod;
        }
        out
    }
}

impl<G: Generator> Add for &Polynomial<G> {
    type Output = Polynomial<G>;

    /// Panics on a truncation mismatch; use `checked_add` for fallible input.
    fn add(self, rhs: Self) -> Polynomial<G> {
        self.checked_add(rhs).expect("truncation bounds must agree")
    }
}

impl<G: Generator> Mul for &Polynomial<G> {
    type Output = Polynomial<G>;

    /// Panics on a truncation mismatch; use `checked_mul` for fallible input.
    fn mul(self, rhs: Self) -> Polynomial<G> {
        self.checked_mul(rhs).expect("truncation bounds must agree")
    }
}

impl<G: Generator> fmt::Display for Polynomial<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl<G: Generator> fmt::Debug for Polynomial<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[N={}]({self})", self.max_degree)
    }
}

impl Poly {
    pub fn w(index: u32, max_degree: u32) -> Self {
        Poly::from_monomial(Monomial::w(index), max_degree)
    }

    pub fn p(index: u32, max_degree: u32) -> Self {
        Poly::from_monomial(Monomial::p(index), max_degree)
    }

    /// Parses the text form, e.g. `w1^2*w3 + w5` or `0`.
    pub fn parse(text: &str, max_degree: u32) -> Result<Poly> {
        Parser::new(text).poly(max_degree)
    }

    /// True if no `p` generators occur.
    pub fn is_in_w_coordinates(&self) -> bool {
        self.terms().all(|m| m.uses_only(Gen::is_w))
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::syntax(self.pos, message))
    }

    fn poly(&mut self, max_degree: u32) -> Result<Poly> {
        self.skip_ws();
        if self.peek() == Some(b'0') {
            self.pos += 1;
            self.skip_ws();
            if self.pos != self.bytes.len() {
                return self.error("the zero polynomial must be written alone as `0`");
            }
            return Ok(Poly::zero(max_degree));
        }
        let mut p = Poly::zero(max_degree);
        loop {
            let start = self.pos;
            let m = self.term()?;
            if m.degree() > max_degree {
                let _ = start;
                return Err(Error::DegreeOverflow {
                    degree: m.degree(),
                    max_degree,
                });
            }
            p.toggle(m);
            self.skip_ws();
            match self.peek() {
                None => return Ok(p),
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                }
                Some(c) => return self.error(format!("expected `+`, found `{}`", c as char)),
            }
        }
    }

    fn term(&mut self) -> Result<Monomial<Gen>> {
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok(Monomial::one());
        }
        let mut factors = vec![self.factor()?];
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                factors.push(self.factor()?);
            } else {
                self.pos = save;
                return Ok(Monomial::from_factors(factors));
            }
        }
    }

    fn factor(&mut self) -> Result<(Gen, u32)> {
        let kind = match self.peek() {
            Some(b'w') => GenKind::W,
            Some(b'p') => GenKind::P,
            Some(c) => {
                return self.error(format!(
                    "expected a generator `w<i>` or `p<i>`, found `{}`",
                    c as char
                ))
            }
            None => return self.error("expected a generator, found end of input"),
        };
        self.pos += 1;
        let index = self.posint("generator index")?;
        let exponent = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.posint("exponent")?
        } else {
            1
        };
        Ok((Gen { index, kind }, exponent))
    }

    fn posint(&mut self, what: &str) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            self.pos = start;
            return self.error(format!("expected {what}"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        match digits.parse::<u32>() {
            Ok(0) => Err(Error::syntax(start, format!("{what} must be positive"))),
            Ok(v) => Ok(v),
            Err(_) => Err(Error::syntax(start, format!("{what} is too large"))),
        }
    }
}

/// All monomials of degree `d` in the generators of `set`, in canonical order.
pub fn monomial_basis(d: u32, set: GenSet) -> Vec<Monomial<Gen>> {
    let allowed: Vec<u32> = set.generators_up_to(d).iter().map(|g| g.index).collect();
    let mut out: Vec<Monomial<Gen>> = partitions_with_parts(d, &allowed)
        .iter()
        .map(|lambda| {
            Monomial::from_factors(
                lambda
                    .parts()
                    .iter()
                    .map(|&k| (set.generator_of_degree(k).expect("allowed degree"), 1)),
            )
        })
        .collect();
    out.sort();
    out
}

/// Monomials of degree `d` over an explicit generator list, canonical order.
pub fn monomials_of_degree<G: Generator>(d: u32, gens: &[G]) -> Vec<Monomial<G>> {
    fn go<G: Generator>(
        gens: &[G],
        start: usize,
        remaining: u32,
        current: &mut Vec<(G, u32)>,
        out: &mut Vec<Monomial<G>>,
    ) {
        if remaining == 0 {
            out.push(Monomial::from_factors(current.iter().cloned()));
            return;
        }
        for i in start..gens.len() {
            let deg = gens[i].degree();
            if deg == 0 || deg > remaining {
                continue;
            }
            for e in 1..=remaining / deg {
                current.push((gens[i].clone(), e));
                go(gens, i + 1, remaining - e * deg, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(gens, 0, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Square-free monomials of degree `d` over an explicit generator list.
pub fn square_free_monomials_of_degree<G: Generator>(d: u32, gens: &[G]) -> Vec<Monomial<G>> {
    monomials_of_degree(d, gens)
        .into_iter()
        .filter(|m| m.is_square_free_in(|_| true))
        .collect()
}

/// The monomial basis of one graded piece with coordinate lookup.
#[derive(Clone)]
pub struct DegreeBasis<G> {
    degree: u32,
    monomials: Vec<Monomial<G>>,
    index: HashMap<Monomial<G>, usize>,
    ambient: Arc<Ambient>,
}

impl<G: Generator> DegreeBasis<G> {
    pub fn new(degree: u32, monomials: Vec<Monomial<G>>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let ambient = Ambient::new(monomials.iter().map(|m| m.to_string()).collect());
        DegreeBasis {
            degree,
            monomials,
            index,
            ambient,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial<G>] {
        &self.monomials
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn index_of(&self, m: &Monomial<G>) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `x`; every term must be a basis monomial.
    pub fn to_vec(&self, x: &Polynomial<G>) -> Result<BitVec> {
        let mut v = BitVec::zeros(self.len());
        for m in x.terms() {
            let i = self.index_of(m).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "monomial {m} is not in the degree-{} basis",
                    self.degree
                ))
            })?;
            v.flip(i);
        }
        Ok(v)
    }

    pub fn to_poly(&self, v: &BitVec, max_degree: u32) -> Polynomial<G> {
        let mut p = Polynomial::zero(max_degree);
        for i in v.ones() {
            p.toggle(self.monomials[i].clone());
        }
        p
    }
}
