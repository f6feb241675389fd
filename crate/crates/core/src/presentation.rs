//! Generators and relations for the invariant subring `S`.
//!
//! `F` is the free commutative algebra on the odd power sums `p_{2i−1}` and
//! symbols `δa`, one for each square-free monomial `a ≠ 1` in the even `w`'s.
//! `δ` extends to all of `R` through the standard form: a term
//! `p · a · d(w_{2i₁})⋯d(w_{2i_n})` goes to `p · δa · δw_{2i₁}⋯δw_{2i_n}`, and
//! terms with `a = 1` go to zero. Evaluation sends `p_k ↦ p_k`, `δa ↦ d(a)`.
//! The claim checked here is that evaluation induces `F / (relations) ≅ S`
//! in every degree up to the chosen bound.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::coordinates::{power_sums, standard_form};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, EchelonBasis, GradedSubspace};
use crate::involution::omega_table;
use crate::ring::{
    is_square_free, monomial_basis, monomials_of_degree, DegreeBasis, Gen, GenSet, Generator,
    Monomial, Poly, Polynomial,
};
use crate::verifier::{DegreeResult, GradedIdealFamily};

/// A generator of `F`: `p_k` (odd `k`) or `δa`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FGen {
    P(u32),
    Delta(Monomial<Gen>),
}

/// Power sums first by index, then `δ`'s by degree descending, then by the
/// canonical order of their monomials.
impl Ord for FGen {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FGen::P(a), FGen::P(b)) => a.cmp(b),
            (FGen::P(_), FGen::Delta(_)) => Ordering::Less,
            (FGen::Delta(_), FGen::P(_)) => Ordering::Greater,
            (FGen::Delta(a), FGen::Delta(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for FGen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Generator for FGen {
    fn degree(&self) -> u32 {
        match self {
            FGen::P(k) => *k,
            FGen::Delta(a) => a.degree(),
        }
    }
}

impl fmt::Display for FGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FGen::P(k) => write!(f, "p{k}"),
            FGen::Delta(a) => write!(f, "D[{a}]"),
        }
    }
}

pub type FPoly = Polynomial<FGen>;

impl FGen {
    /// `δa`; `a` must be a square-free monomial in even `w`'s of positive degree.
    pub fn delta(a: Monomial<Gen>) -> Result<FGen> {
        let even = a.uses_only(|g| GenSet::EvenW.contains(g));
        if a.is_one() || !even || !is_square_free(&a, GenSet::EvenW) {
            return Err(Error::InvalidArgument(format!(
                "{a} is not a square-free monomial in even w's"
            )));
        }
        Ok(FGen::Delta(a))
    }

    /// `δw_k` for even `k`.
    pub fn delta_w(k: u32) -> FGen {
        FGen::delta(Monomial::w(k)).expect("even index")
    }
}

/// All `δa` with `2 ≤ deg a ≤ max_degree`, in generator order.
pub fn enumerate_delta_generators(max_degree: u32) -> Vec<FGen> {
    let mut out: Vec<FGen> = (1..=max_degree)
        .flat_map(|d| monomial_basis(d, GenSet::EvenW))
        .filter(|a| is_square_free(a, GenSet::EvenW))
        .map(FGen::Delta)
        .collect();
    out.sort();
    out
}

/// All generators of `F` up to degree `max_degree`.
pub fn enumerate_generators(max_degree: u32) -> Vec<FGen> {
    let mut out: Vec<FGen> = (1..=max_degree).step_by(2).map(FGen::P).collect();
    out.extend(enumerate_delta_generators(max_degree));
    out
}

/// `δx` through the standard form of `x`.
pub fn delta_extended(x: &Poly) -> Result<FPoly> {
    let n = x.max_degree();
    let sf = standard_form(x)?;
    let mut out = FPoly::zero(n);
    for term in sf.terms() {
        let a = term.a_part();
        if a.is_empty() {
            continue;
        }
        let mut factors: Vec<(FGen, u32)> =
            term.p_part().into_iter().map(|k| (FGen::P(k), 1)).collect();
        factors.push((FGen::Delta(Monomial::w_product(&a)), 1));
        factors.extend(term.d_part().into_iter().map(|i| (FGen::delta_w(2 * i), 1)));
        out.toggle(Monomial::from_factors(factors));
    }
    Ok(out)
}

fn fgen_poly(g: FGen, n: u32) -> FPoly {
    FPoly::from_monomial(Monomial::generator(g), n)
}

fn w_or_one(i: u32, n: u32) -> Poly {
    if i == 0 {
        Poly::one(n)
    } else {
        Poly::w(i, n)
    }
}

/// `p_k² + Σ_{i=0}^{(k−1)/2} [δ(w_{2i} w_{2(k−i)}) + δw_{2i} · δw_{2(k−i)}]` for odd `k`.
pub fn relation_p_squared(k: u32, max_degree: u32) -> Result<FPoly> {
    let n = max_degree;
    if k.is_multiple_of(2) || 2 * k > n {
        return Err(Error::InvalidArgument(format!(
            "p-squared relation needs odd k with 2k ≤ {n}, got {k}"
        )));
    }
    let mut r = fgen_poly(FGen::P(k), n).pow(2);
    for i in 0..=(k - 1) / 2 {
        let (a, b) = (w_or_one(2 * i, n), w_or_one(2 * (k - i), n));
        r = &r + &delta_extended(&(&a * &b))?;
        r = &r + &(&delta_extended(&a)? * &delta_extended(&b)?);
    }
    Ok(r)
}

/// `δ(yz)δx + δ(xz)δy + δ(xy)δz + δx δy δz`.
pub fn relation_delta2(x: &Poly, y: &Poly, z: &Poly) -> Result<FPoly> {
    let (dx, dy, dz) = (delta_extended(x)?, delta_extended(y)?, delta_extended(z)?);
    let mut r = &delta_extended(&(y * z))? * &dx;
    r = &r + &(&delta_extended(&(x * z))? * &dy);
    r = &r + &(&delta_extended(&(x * y))? * &dz);
    Ok(&r + &(&(&dx * &dy) * &dz))
}

/// A relation with a human-readable origin.
#[derive(Clone, Debug)]
pub struct Relation {
    pub label: String,
    pub poly: FPoly,
}

/// All relations of degree ≤ `max_degree`: `p²` for odd `k` with `2k ≤ N`
/// and `δ²` for every multiset of three `δ`-arguments of total degree ≤ `N`.
pub fn enumerate_relations(max_degree: u32) -> Result<Vec<Relation>> {
    let n = max_degree;
    let mut out = Vec::new();
    for k in (1..=n / 2).step_by(2) {
        out.push(Relation {
            label: format!("p-squared k={k}"),
            poly: relation_p_squared(k, n)?,
        });
    }
    let args: Vec<Monomial<Gen>> = enumerate_delta_generators(n)
        .into_iter()
        .map(|g| match g {
            FGen::Delta(a) => a,
            FGen::P(_) => unreachable!("delta generators only"),
        })
        .collect();
    for i in 0..args.len() {
        for j in i..args.len() {
            for k in j..args.len() {
                let (x, y, z) = (&args[i], &args[j], &args[k]);
                if x.degree() + y.degree() + z.degree() > n {
                    continue;
                }
                let poly = relation_delta2(
                    &Poly::from_monomial(x.clone(), n),
                    &Poly::from_monomial(y.clone(), n),
                    &Poly::from_monomial(z.clone(), n),
                )?;
                out.push(Relation {
                    label: format!("delta-squared ({x}, {y}, {z})"),
                    poly,
                });
            }
        }
    }
    Ok(out)
}

/// The image in `R` (in `w` coordinates): `p_k ↦ p_k`, `δa ↦ d(a)`.
pub fn evaluate(f: &FPoly) -> Poly {
    let n = f.max_degree();
    let p = power_sums(n);
    let t = omega_table(n);
    f.substitute(n, |g: &FGen| match g {
        FGen::P(k) => p.p(*k).clone(),
        FGen::Delta(a) => t
            .dd(&Poly::from_monomial(a.clone(), n))
            .expect("bounds agree"),
    })
}

/// `F_d` with the degree-`d` slice of the relation ideal.
pub struct PresentationSlice {
    pub basis: DegreeBasis<FGen>,
    pub ideal: GradedSubspace,
}

impl PresentationSlice {
    /// `dim F_d − dim (ideal)_d`.
    pub fn stilde_dim(&self) -> usize {
        self.ideal.codim()
    }
}

/// `F` and its relation ideal in degrees `0..=max_degree`.
pub struct Presentation {
    max_degree: u32,
    generators: Vec<FGen>,
    relations: Vec<Relation>,
    slices: Vec<PresentationSlice>,
}

impl Presentation {
    pub fn build(max_degree: u32) -> Result<Self> {
        let relations = enumerate_relations(max_degree)?;
        Presentation::with_relations(max_degree, relations)
    }

    pub fn with_relations(max_degree: u32, relations: Vec<Relation>) -> Result<Self> {
        let generators = enumerate_generators(max_degree);
        for r in &relations {
            if r.poly.max_degree() != max_degree || !r.poly.is_homogeneous() {
                return Err(Error::InvalidArgument(format!(
                    "relation {} must be homogeneous with bound {max_degree}",
                    r.label
                )));
            }
        }
        let slices = (0..=max_degree)
            .into_par_iter()
            .map(|d| ideal_slice(d, &generators, &relations))
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation {
            max_degree,
            generators,
            relations,
            slices,
        })
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn generators(&self) -> &[FGen] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn slice(&self, d: u32) -> &PresentationSlice {
        &self.slices[d as usize]
    }

    pub fn stilde_graded_dim(&self, d: u32) -> usize {
        self.slice(d).stilde_dim()
    }

    /// Membership of a homogeneous element in the relation ideal.
    pub fn in_ideal(&self, f: &FPoly) -> Result<bool> {
        if !f.is_homogeneous() {
            return Err(Error::InvalidArgument("element must be homogeneous".into()));
        }
        let Some(d) = f.degree() else {
            return Ok(true);
        };
        let slice = self.slice(d);
        slice.ideal.contains(&slice.basis.to_vec(f)?)
    }
}

fn ideal_slice(d: u32, generators: &[FGen], relations: &[Relation]) -> Result<PresentationSlice> {
    let basis = DegreeBasis::new(d, monomials_of_degree(d, generators));
    let mut acc = EchelonBasis::new(basis.len());
    for r in relations {
        let Some(e) = r.poly.degree() else { continue };
        if e > d {
            continue;
        }
        for m in monomials_of_degree(d - e, generators) {
            acc.insert(basis.to_vec(&r.poly.mul_monomial(&m))?);
        }
    }
    let ideal = GradedSubspace::from_echelon(d, basis.ambient().clone(), &acc);
    Ok(PresentationSlice { basis, ideal })
}

/// `dim F_d − rank (ideal)_d` for an explicit relation list.
pub fn stilde_graded_dim(d: u32, relations: &[FPoly], max_degree: u32) -> Result<usize> {
    let generators = enumerate_generators(max_degree);
    let rels: Vec<Relation> = relations
        .iter()
        .map(|p| Relation {
            label: String::new(),
            poly: p.clone(),
        })
        .collect();
    Ok(ideal_slice(d, &generators, &rels)?.stilde_dim())
}

/// Per degree: `dim S̃_d = dim S_d`, evaluation maps `F_d` onto `S_d`, and
/// every relation evaluates to zero.
pub fn verify_presentation(
    pres: &Presentation,
    fam: &GradedIdealFamily,
) -> Result<Vec<DegreeResult>> {
    let n = pres.max_degree();
    if fam.max_degree() < n {
        return Err(Error::InvalidArgument(format!(
            "presentation degree {n} exceeds the family bound {}",
            fam.max_degree()
        )));
    }
    (0..=n)
        .into_par_iter()
        .map(|d| {
            let slice = pres.slice(d);
            let rslice = fam.slice(d);
            let images = slice
                .basis
                .monomials()
                .iter()
                .map(|m| rslice.to_vec(&evaluate(&FPoly::from_monomial(m.clone(), n))))
                .collect::<Result<Vec<BitVec>>>()?;
            let image = GradedSubspace::span(d, rslice.basis.ambient().clone(), images)?;
            let stilde = slice.stilde_dim();
            let relations: Vec<&Relation> = pres
                .relations()
                .iter()
                .filter(|r| r.poly.degree() == Some(d))
                .collect();
            let mut r = DegreeResult::new("presentation", d)
                .dim("f", slice.basis.len())
                .dim("ideal", slice.ideal.dim())
                .dim("stilde", stilde)
                .dim("s", rslice.s.dim())
                .dim("image", image.dim())
                .dim("relations", relations.len());
            r.require(stilde == rslice.s.dim(), || {
                format!(
                    "dim of the quotient is {stilde} but dim S_{d} = {}",
                    rslice.s.dim()
                )
            });
            if let Some(v) = image.witness_outside(&rslice.s)? {
                r.require(false, || {
                    format!("image not invariant: {}", rslice.render(&v))
                });
            }
            if let Some(v) = rslice.s.witness_outside(&image)? {
                r.require(false, || format!("not in the image: {}", rslice.render(&v)));
            }
            for rel in relations {
                let value = evaluate(&rel.poly);
                r.require(value.is_zero(), || {
                    format!("{} evaluates to {value}", rel.label)
                });
            }
            Ok(r)
        })
        .collect()
}
