//! Per-degree subspaces of `R_d`: `S`, `I`, `I^n`, `RI^n` and the ideal of squares.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::Result;
use crate::gf2::{BitMatrix, BitVec, EchelonBasis, GradedSubspace};
use crate::involution::omega_table;
use crate::ring::{monomial_basis, DegreeBasis, Gen, GenSet, Monomial, Poly};

/// Everything the ideal checks need in one degree.
pub struct DegreeSlice {
    pub basis: DegreeBasis<Gen>,
    /// `d(m)` for each basis monomial `m`, in basis coordinates.
    pub dd_images: Vec<BitVec>,
    pub s: GradedSubspace,
    pub i: GradedSubspace,
    /// `i_pow[n]` is `(I^n)_d`; index 0 is all of `R_d`.
    pub i_pow: Vec<GradedSubspace>,
    /// `ri_pow[n]` is `(RI^n)_d`; index 0 is all of `R_d`.
    pub ri_pow: Vec<GradedSubspace>,
    /// Span of monomials with a repeated factor.
    pub q: GradedSubspace,
}

impl DegreeSlice {
    pub fn degree(&self) -> u32 {
        self.basis.degree()
    }

    pub fn to_vec(&self, x: &Poly) -> Result<BitVec> {
        self.basis.to_vec(x)
    }

    pub fn render(&self, v: &BitVec) -> String {
        self.basis.to_poly(v, self.degree()).to_string()
    }

    pub fn polys(&self, space: &GradedSubspace, max_degree: u32) -> Vec<Poly> {
        space
            .basis_vectors()
            .map(|v| self.basis.to_poly(&v, max_degree))
            .collect()
    }
}

/// The graded pieces `0 ≤ d ≤ N` with powers of `I` and `RI` up to `max_power`.
pub struct GradedIdealFamily {
    max_degree: u32,
    max_power: usize,
    slices: Vec<DegreeSlice>,
}

impl GradedIdealFamily {
    pub fn build(max_degree: u32, max_power: usize) -> Self {
        let n = max_degree;
        let table = omega_table(n);
        let dd_w: Vec<Poly> = (0..=n)
            .map(|k| {
                if k == 0 {
                    Poly::zero(n)
                } else {
                    table.dd(&Poly::w(k, n)).expect("bounds agree")
                }
            })
            .collect();
        // Products d(w_{k1})⋯d(w_{kr}) keyed by power r, then by total degree.
        let mut products: Vec<BTreeMap<u32, Vec<Poly>>> = vec![BTreeMap::new(); max_power + 1];
        products[0].insert(0, vec![Poly::one(n)]);
        let mut frontier: Vec<(u32, u32, Poly)> = vec![(0, 1, Poly::one(n))];
        for by_degree in products.iter_mut().skip(1) {
            let mut next = Vec::new();
            for (deg, min_k, prod) in &frontier {
                for k in *min_k.max(&2)..=n.saturating_sub(*deg) {
                    let p = prod * &dd_w[k as usize];
                    if p.is_zero() {
                        continue;
                    }
                    by_degree.entry(deg + k).or_default().push(p.clone());
                    next.push((deg + k, k, p));
                }
            }
            frontier = next;
        }

        let mut slices: Vec<DegreeSlice> = (0..=n)
            .into_par_iter()
            .map(|d| build_slice(d, n, &products))
            .collect();

        // (I^p)_d = Σ_e I_e · (I^{p−1})_{d−e}
        for power in 2..=max_power {
            let i_polys: Vec<Vec<Poly>> = slices.iter().map(|s| s.polys(&s.i, n)).collect();
            let prev: Vec<Vec<Poly>> = slices
                .iter()
                .map(|s| s.polys(&s.i_pow[power - 1], n))
                .collect();
            let new: Vec<GradedSubspace> = slices
                .par_iter()
                .map(|slice| {
                    let d = slice.degree();
                    let mut acc = EchelonBasis::new(slice.basis.len());
                    for e in 1..d {
                        for a in &i_polys[e as usize] {
                            for b in &prev[(d - e) as usize] {
                                acc.insert(slice.to_vec(&(a * b)).expect("degree d"));
                            }
                        }
                    }
                    GradedSubspace::from_echelon(d, slice.basis.ambient().clone(), &acc)
                })
                .collect();
            for (slice, space) in slices.iter_mut().zip(new) {
                slice.i_pow.push(space);
            }
        }

        GradedIdealFamily {
            max_degree,
            max_power,
            slices,
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn max_power(&self) -> usize {
        self.max_power
    }

    pub fn slice(&self, d: u32) -> &DegreeSlice {
        &self.slices[d as usize]
    }

    pub fn slices(&self) -> &[DegreeSlice] {
        &self.slices
    }
}

fn build_slice(d: u32, n: u32, products: &[BTreeMap<u32, Vec<Poly>>]) -> DegreeSlice {
    let monomials = monomial_basis(d, GenSet::AllW);
    let basis = DegreeBasis::new(d, monomials);
    let ambient = basis.ambient().clone();
    let dim = basis.len();
    let table = omega_table(n);

    let dd_images: Vec<BitVec> = basis
        .monomials()
        .iter()
        .map(|m| {
            let x = Poly::from_monomial(m.clone(), n);
            basis
                .to_vec(&table.dd(&x).expect("bounds agree"))
                .expect("degree d")
        })
        .collect();
    let dd_matrix = BitMatrix::from_rows(dim, &dd_images).expect("row lengths");
    let kernel: Vec<BitVec> = dd_matrix.transpose().kernel().row_vectors().collect();
    let s = GradedSubspace::span(d, ambient.clone(), kernel).expect("same ambient");
    let i =
        GradedSubspace::span(d, ambient.clone(), dd_images.iter().cloned()).expect("same ambient");

    let mut ri_pow = vec![GradedSubspace::full(d, ambient.clone())];
    for power_products in products.iter().skip(1) {
        let mut acc = EchelonBasis::new(dim);
        for (&deg, prods) in power_products.range(..=d) {
            let cofactors = monomial_basis(d - deg, GenSet::AllW);
            for prod in prods {
                for m in &cofactors {
                    acc.insert(basis.to_vec(&prod.mul_monomial(m)).expect("degree d"));
                }
            }
        }
        ri_pow.push(GradedSubspace::from_echelon(d, ambient.clone(), &acc));
    }

    let squares: Vec<BitVec> = basis
        .monomials()
        .iter()
        .filter(|m: &&Monomial<Gen>| m.factors().iter().any(|(_, e)| *e >= 2))
        .map(|m| {
            basis
                .to_vec(&Poly::from_monomial(m.clone(), n))
                .expect("degree d")
        })
        .collect();
    let q = GradedSubspace::span(d, ambient.clone(), squares).expect("same ambient");

    let i_pow = vec![GradedSubspace::full(d, ambient), i.clone()];
    DegreeSlice {
        basis,
        dd_images,
        s,
        i,
        i_pow,
        ri_pow,
        q,
    }
}
