//! Power sums, the mixed coordinates `p₁, w₂, p₃, w₄, …`, and the standard form.
//!
//! Every element of `R` is uniquely a sum of products
//! `p · a · d(w_{2i₁})⋯d(w_{2i_n})` with `p` square-free in the odd power sums,
//! `a` square-free in the even `w`'s and `i₁ ≤ … ≤ i_n`. The decomposition is
//! computed degree by degree by solving a GF(2) linear system.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{BitVec, SpanSolver};
use crate::involution::omega_table;
use crate::memo::Memo;
use crate::partitions::partitions_with_parts;
use crate::ring::{monomial_basis, DegreeBasis, Gen, GenSet, Generator, Monomial, Poly};

/// `p_k` in `w` coordinates for `1 ≤ k ≤ N`.
#[derive(Debug, Clone)]
pub struct PowerSumTable {
    max_degree: u32,
    p: Vec<Poly>,
}

impl PowerSumTable {
    pub fn build(max_degree: u32) -> Self {
        let n = max_degree;
        let mut p: Vec<Poly> = vec![Poly::zero(n)];
        for k in 1..=n {
            let pk = if k % 2 == 0 {
                p[(k / 2) as usize].pow(2)
            } else {
                // Newton: p_k = w_k + Σ_{j=1}^{k−1} p_{k−j} w_j
                let mut acc = Poly::w(k, n);
                for j in 1..k {
                    acc = &acc + &p[(k - j) as usize].mul_monomial(&Monomial::w(j));
                }
                acc
            };
            p.push(pk);
        }
        PowerSumTable { max_degree, p }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// `p_k` for `1 ≤ k ≤ N`.
    pub fn p(&self, k: u32) -> &Poly {
        &self.p[k as usize]
    }
}

pub fn power_sums(max_degree: u32) -> Arc<PowerSumTable> {
    static TABLES: Memo<u32, PowerSumTable> = Memo::new();
    TABLES.get_or_build(max_degree, || PowerSumTable::build(max_degree))
}

/// `p_k` written with odd power sums only: `p_{2^e m} = p_m^{2^e}`.
fn odd_power(k: u32) -> Monomial<Gen> {
    Monomial::power(Gen::p(k >> k.trailing_zeros()), 1 << k.trailing_zeros())
}

/// `w_k` in mixed coordinates for `k ≤ N`.
struct MixedTable {
    w: Vec<Poly>,
}

impl MixedTable {
    fn build(n: u32) -> Self {
        let mut w: Vec<Poly> = vec![Poly::one(n)];
        for k in 1..=n {
            let wk = if k % 2 == 0 {
                Poly::w(k, n)
            } else {
                // w_k = p_k + Σ_{j=1}^{k−1} p_{k−j} w_j
                let mut acc = Poly::p(k, n);
                for j in 1..k {
                    acc = &acc + &w[j as usize].mul_monomial(&odd_power(k - j));
                }
                acc
            };
            w.push(wk);
        }
        MixedTable { w }
    }
}

fn mixed_table(max_degree: u32) -> Arc<MixedTable> {
    static TABLES: Memo<u32, MixedTable> = Memo::new();
    TABLES.get_or_build(max_degree, || MixedTable::build(max_degree))
}

/// Rewrites `x` (in any mix of `w`'s and `p`'s) using only `w` generators.
pub fn from_mixed_coordinates(x: &Poly) -> Poly {
    let n = x.max_degree();
    let table = power_sums(n);
    x.substitute(n, |g: &Gen| {
        if g.is_w() {
            Poly::w(g.index, n)
        } else {
            table.p(g.index).clone()
        }
    })
}

/// Rewrites `x` in the generators `p₁, w₂, p₃, w₄, …`.
pub fn to_mixed_coordinates(x: &Poly) -> Poly {
    let n = x.max_degree();
    let table = mixed_table(n);
    x.substitute(n, |g: &Gen| {
        if g.is_w() {
            table.w[g.index as usize].clone()
        } else {
            Poly::from_monomial(odd_power(g.index), n)
        }
    })
}

/// Generators of a standard-form term: odd power sums, even `w`'s, and
/// `D(2i) = d(w_{2i})`. The derived order puts all `P` before all `W` before all `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SfGen {
    P(u32),
    W(u32),
    D(u32),
}

impl Generator for SfGen {
    fn degree(&self) -> u32 {
        match *self {
            SfGen::P(k) | SfGen::W(k) | SfGen::D(k) => k,
        }
    }
}

impl fmt::Display for SfGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SfGen::P(k) => write!(f, "p{k}"),
            SfGen::W(k) => write!(f, "w{k}"),
            SfGen::D(k) => write!(f, "d[w{k}]"),
        }
    }
}

/// One basis element `p · a · d(w_{2i₁})⋯d(w_{2i_n})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardFormTerm(Monomial<SfGen>);

impl StandardFormTerm {
    /// `p_part`: distinct odd indices; `a_part`: distinct even indices;
    /// `d_part`: the `i` of each factor `d(w_{2i})`, repeats allowed.
    pub fn new(p_part: &[u32], a_part: &[u32], d_part: &[u32]) -> Result<Self> {
        let distinct = |xs: &[u32]| xs.iter().collect::<BTreeSet<_>>().len() == xs.len();
        if !p_part.iter().all(|k| k % 2 == 1) || !distinct(p_part) {
            return Err(Error::InvalidArgument(
                "p part must be a square-free product of odd power sums".into(),
            ));
        }
        if !a_part.iter().all(|k| *k > 0 && k % 2 == 0) || !distinct(a_part) {
            return Err(Error::InvalidArgument(
                "a part must be a square-free product of even w's".into(),
            ));
        }
        if d_part.contains(&0) {
            return Err(Error::InvalidArgument(
                "d part indices must be positive".into(),
            ));
        }
        let factors = p_part
            .iter()
            .map(|&k| (SfGen::P(k), 1))
            .chain(a_part.iter().map(|&k| (SfGen::W(k), 1)))
            .chain(d_part.iter().map(|&i| (SfGen::D(2 * i), 1)));
        Ok(StandardFormTerm(Monomial::from_factors(factors)))
    }

    fn part(&self, select: impl Fn(&SfGen) -> Option<u32>) -> Vec<u32> {
        self.0
            .factors()
            .iter()
            .filter_map(|(g, e)| select(g).map(|k| std::iter::repeat_n(k, *e as usize)))
            .flatten()
            .collect()
    }

    pub fn p_part(&self) -> Vec<u32> {
        self.part(|g| match g {
            SfGen::P(k) => Some(*k),
            _ => None,
        })
    }

    pub fn a_part(&self) -> Vec<u32> {
        self.part(|g| match g {
            SfGen::W(k) => Some(*k),
            _ => None,
        })
    }

    /// Weakly increasing `i`'s of the `d(w_{2i})` factors.
    pub fn d_part(&self) -> Vec<u32> {
        self.part(|g| match g {
            SfGen::D(k) => Some(*k / 2),
            _ => None,
        })
    }

    pub fn degree(&self) -> u32 {
        self.0.degree()
    }

    /// The term as an element of `R` in `w` coordinates.
    pub fn evaluate(&self, max_degree: u32) -> Poly {
        let n = max_degree;
        let p = power_sums(n);
        let t = omega_table(n);
        let mut acc = Poly::one(n);
        for (g, e) in self.0.factors() {
            let base = match *g {
                SfGen::P(k) if k <= n => p.p(k).clone(),
                SfGen::W(k) => Poly::w(k, n),
                SfGen::D(k) if k <= n => t.dd(&Poly::w(k, n)).expect("bounds agree"),
                _ => Poly::zero(n),
            };
            acc = &acc * &base.pow(*e);
        }
        acc
    }
}

impl fmt::Display for StandardFormTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (g, e) in self.0.factors() {
            for _ in 0..*e {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "{g}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for StandardFormTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StandardFormTerm({self})")
    }
}

/// A GF(2) sum of standard-form terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StandardForm {
    terms: BTreeSet<StandardFormTerm>,
    max_degree: u32,
}

impl StandardForm {
    pub fn zero(max_degree: u32) -> Self {
        StandardForm {
            terms: BTreeSet::new(),
            max_degree,
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = StandardFormTerm>, max_degree: u32) -> Self {
        let mut s = StandardForm::zero(max_degree);
        for t in terms {
            if !s.terms.remove(&t) {
                s.terms.insert(t);
            }
        }
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = &StandardFormTerm> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn evaluate(&self) -> Poly {
        self.terms
            .iter()
            .fold(Poly::zero(self.max_degree), |acc, t| {
                &acc + &t.evaluate(self.max_degree)
            })
    }
}

impl fmt::Display for StandardForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// All standard-form terms of degree `d`, in canonical order.
pub fn standard_form_terms(d: u32) -> Vec<StandardFormTerm> {
    let mut out = Vec::new();
    for d_deg in (0..=d).step_by(2) {
        let halves: Vec<u32> = (1..=d_deg / 2).collect();
        for ds in partitions_with_parts(d_deg / 2, &halves) {
            let rest = d - d_deg;
            for p_deg in 0..=rest {
                let odd: Vec<u32> = (1..=p_deg).step_by(2).collect();
                let even: Vec<u32> = (2..=rest - p_deg).step_by(2).collect();
                for ps in distinct_parts(p_deg, &odd) {
                    for a in distinct_parts(rest - p_deg, &even) {
                        let mut d_part = ds.parts().to_vec();
                        d_part.reverse();
                        out.push(StandardFormTerm::new(&ps, &a, &d_part).expect("valid term"));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn distinct_parts(d: u32, allowed: &[u32]) -> Vec<Vec<u32>> {
    partitions_with_parts(d, allowed)
        .into_iter()
        .filter(|l| l.parts().windows(2).all(|w| w[0] != w[1]))
        .map(|l| {
            let mut v = l.parts().to_vec();
            v.reverse();
            v
        })
        .collect()
}

/// Degree-`d` standard-form terms with a solver against the `w`-monomial basis.
pub struct StandardBasis {
    terms: Vec<StandardFormTerm>,
    ambient: DegreeBasis<Gen>,
    solver: SpanSolver,
}

impl StandardBasis {
    fn build(d: u32) -> Self {
        let terms = standard_form_terms(d);
        let ambient = DegreeBasis::new(d, monomial_basis(d, GenSet::AllW));
        let columns: Vec<BitVec> = terms
            .iter()
            .map(|t| {
                ambient
                    .to_vec(&t.evaluate(d))
                    .expect("homogeneous of degree d")
            })
            .collect();
        let solver = SpanSolver::new(ambient.len(), &columns).expect("consistent lengths");
        StandardBasis {
            terms,
            ambient,
            solver,
        }
    }

    pub fn terms(&self) -> &[StandardFormTerm] {
        &self.terms
    }

    /// Rank of the evaluated terms; equals `p(d)` exactly when they form a basis.
    pub fn rank(&self) -> usize {
        self.solver.rank()
    }
}

pub fn standard_basis(d: u32) -> Arc<StandardBasis> {
    static BASES: Memo<u32, StandardBasis> = Memo::new();
    BASES.get_or_build(d, || StandardBasis::build(d))
}

/// The unique standard form of `x` (given in any mix of `w`'s and `p`'s).
pub fn standard_form(x: &Poly) -> Result<StandardForm> {
    let n = x.max_degree();
    let w = from_mixed_coordinates(x);
    let mut terms = Vec::new();
    for d in 0..=n {
        let component = w.graded_component(d);
        if component.is_zero() {
            continue;
        }
        let basis = standard_basis(d);
        let coords = basis.ambient.to_vec(&component.with_max_degree(d))?;
        let solution = basis
            .solver
            .solve(&coords)?
            .ok_or(Error::DimensionMismatch {
                expected: basis.ambient.len(),
                actual: basis.rank(),
            })?;
        terms.extend(solution.ones().map(|i| basis.terms[i].clone()));
    }
    Ok(StandardForm::from_terms(terms, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::{dd, omega};
    use crate::partitions::partition_count;

    const N: u32 = 12;

    fn poly(s: &str) -> Poly {
        Poly::parse(s, N).unwrap()
    }

    #[test]
    fn power_sum_examples() {
        let p = power_sums(N);
        assert_eq!(p.p(1), &poly("w1"));
        assert_eq!(p.p(2), &poly("w1^2"));
        assert_eq!(p.p(3), &poly("w3 + w1*w2 + w1^3"));
    }

    #[test]
    fn power_sum_invariants() {
        let p = power_sums(N);
        for k in 1..=N {
            assert!(p.p(k).is_homogeneous());
            assert_eq!(p.p(k).degree(), Some(k));
            assert_eq!(&omega(p.p(k)), p.p(k));
            if 2 * k <= N {
                assert_eq!(&p.p(k).pow(2), p.p(2 * k));
            }
        }
    }

    #[test]
    fn newton_identity_for_even_k() {
        // Σ_{j=0}^{k−1} p_{k−j} w_j = 0 for even k.
        let p = power_sums(N);
        for k in (2..=N).step_by(2) {
            let mut s = p.p(k).clone();
            for j in 1..k {
                s = &s + &(p.p(k - j) * &Poly::w(j, N));
            }
            assert!(s.is_zero(), "k = {k}");
        }
    }

    #[test]
    fn odd_and_even_splittings() {
        let p = power_sums(N);
        let t = omega_table(N);
        for k in 1..=N {
            let mut odd = Poly::zero(N);
            let mut even = Poly::zero(N);
            for i in 0..=k {
                let wi = if i == 0 { Poly::one(N) } else { Poly::w(i, N) };
                let term = &wi * t.omega_w(k - i);
                if i % 2 == 1 {
                    odd = &odd + &term;
                } else {
                    even = &even + &term;
                }
            }
            assert_eq!(&odd, p.p(k), "odd, k = {k}");
            assert_eq!(&even, p.p(k), "even, k = {k}");
        }
    }

    fn w_or_one(i: u32) -> Poly {
        if i == 0 {
            Poly::one(N)
        } else {
            Poly::w(i, N)
        }
    }

    #[test]
    fn square_of_odd_power_sum() {
        let p = power_sums(N);
        for k in (1..=N / 2).step_by(2) {
            let mut rhs = Poly::zero(N);
            for i in 0..=(k - 1) / 2 {
                let (a, b) = (w_or_one(2 * i), w_or_one(2 * (k - i)));
                rhs = &rhs + &dd(&(&a * &b));
                rhs = &rhs + &(&dd(&a) * &dd(&b));
            }
            assert_eq!(p.p(k).pow(2), rhs, "k = {k}");
        }
    }

    #[test]
    fn square_of_even_generator() {
        let p = power_sums(N);
        for k in 1..=N / 4 {
            let w2k = Poly::w(2 * k, N);
            let mut rhs = &(&w2k * &dd(&w2k)) + &p.p(k).pow(4);
            for i in 0..k {
                let (a, b) = (w_or_one(2 * i), w_or_one(4 * k - 2 * i));
                rhs = &rhs + &dd(&(&a * &b));
                rhs = &rhs + &(&dd(&a) * &dd(&b));
            }
            assert_eq!(w2k.pow(2), rhs, "k = {k}");
        }
    }

    #[test]
    fn mixed_examples() {
        assert_eq!(to_mixed_coordinates(&poly("w2")), poly("w2"));
        assert_eq!(to_mixed_coordinates(&poly("w1")), poly("p1"));
        assert_eq!(to_mixed_coordinates(&poly("w3")), poly("p3 + p1*w2 + p1^3"));
        assert_eq!(from_mixed_coordinates(&poly("p1")), poly("w1"));
        assert_eq!(from_mixed_coordinates(&poly("p1*w2")), poly("w1*w2"));
        assert_eq!(
            from_mixed_coordinates(&poly("p3^2")),
            poly("w3 + w1*w2 + w1^3").pow(2)
        );
        assert_eq!(to_mixed_coordinates(&poly("p2")), poly("p1^2"));
    }

    #[test]
    fn mixed_roundtrip_on_monomials() {
        for d in 0..=N {
            for m in monomial_basis(d, GenSet::AllW) {
                let x = Poly::from_monomial(m, N);
                let y = to_mixed_coordinates(&x);
                assert!(y
                    .terms()
                    .all(|t| t.uses_only(|g| GenSet::Mixed.contains(g))));
                assert_eq!(from_mixed_coordinates(&y), x);
            }
            for m in monomial_basis(d, GenSet::Mixed) {
                let y = Poly::from_monomial(m, N);
                assert_eq!(to_mixed_coordinates(&from_mixed_coordinates(&y)), y);
            }
        }
    }

    #[test]
    fn standard_terms_form_a_basis() {
        for d in 0..=N {
            let b = standard_basis(d);
            assert_eq!(b.terms().len(), partition_count(d), "d = {d}");
            assert_eq!(b.rank(), partition_count(d), "d = {d}");
            for t in b.terms() {
                assert_eq!(t.degree(), d);
            }
        }
    }

    #[test]
    fn standard_form_examples() {
        assert_eq!(standard_form(&poly("w1^2")).unwrap().to_string(), "d[w2]");
        assert_eq!(standard_form(&poly("p1")).unwrap().to_string(), "p1");
        assert_eq!(
            standard_form(&poly("w2^2")).unwrap().to_string(),
            "w2*d[w2] + d[w2]*d[w2] + d[w4]"
        );
        assert_eq!(standard_form(&Poly::zero(N)).unwrap().to_string(), "0");
        assert_eq!(standard_form(&Poly::one(N)).unwrap().to_string(), "1");
    }

    #[test]
    fn evaluate_examples() {
        assert!(StandardForm::zero(N).evaluate().is_zero());
        let a = StandardFormTerm::new(&[], &[2], &[]).unwrap();
        assert_eq!(a.evaluate(N), poly("w2"));
        let dd2 = StandardFormTerm::new(&[], &[], &[1, 1]).unwrap();
        assert_eq!(dd2.evaluate(N), poly("w1^4"));
        assert_eq!(dd2.d_part(), vec![1, 1]);
        assert!(StandardFormTerm::new(&[2], &[], &[]).is_err());
        assert!(StandardFormTerm::new(&[], &[2, 2], &[]).is_err());
        assert!(StandardFormTerm::new(&[1, 1], &[], &[]).is_err());
    }

    #[test]
    fn standard_form_roundtrip_on_monomials() {
        for d in 0..=N {
            for m in monomial_basis(d, GenSet::AllW) {
                let x = Poly::from_monomial(m, N);
                assert_eq!(standard_form(&x).unwrap().evaluate(), x);
            }
        }
    }
}
