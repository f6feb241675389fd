//! The Schur basis over GF(2).
//!
//! Schur polynomials are realized through Jacobi–Trudi with `w_i = h_i`, so
//! `s_(n) = w_n` and `s_(1^n) = ω(w_n)`. Over GF(2) the determinant is a
//! permanent and every Murnaghan–Nakayama sign is 1.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::coordinates::from_mixed_coordinates;
use crate::error::{Error, Result};
use crate::gf2::{BitVec, SpanSolver};
use crate::involution::omega_table;
use crate::memo::Memo;
use crate::partitions::{enumerate_partitions, Partition};
use crate::ring::{monomial_basis, DegreeBasis, Gen, GenSet, Poly};

/// `s_λ` in `w` coordinates under the truncation `max_degree`.
pub fn schur_in_w(lambda: &Partition, max_degree: u32) -> Result<Poly> {
    if lambda.size() > max_degree {
        return Err(Error::DegreeOverflow {
            degree: lambda.size(),
            max_degree,
        });
    }
    Ok(schur_exact(lambda).with_max_degree(max_degree))
}

/// Jacobi–Trudi on whichever of `λ`, `λ^∨` has fewer rows; the conjugate
/// side uses `e_k = ω(w_k)`.
fn schur_exact(lambda: &Partition) -> Poly {
    let n = lambda.size();
    let conj = lambda.conjugate();
    let table = omega_table(n);
    let (shape, entry): (&Partition, Box<dyn Fn(u32) -> Poly>) = if conj.len() < lambda.len() {
        (&conj, Box::new(|k| table.omega_w(k).clone()))
    } else {
        (
            lambda,
            Box::new(|k| if k == 0 { Poly::one(n) } else { Poly::w(k, n) }),
        )
    };
    let rows = shape.len();
    let entry_at = |i: usize, j: usize| -> Poly {
        let idx = shape.part(i) as i64 - i as i64 + j as i64;
        if idx < 0 {
            Poly::zero(n)
        } else {
            entry(idx as u32)
        }
    };
    // Permanent by dynamic programming over the set of used columns.
    let mut dp: Vec<Poly> = vec![Poly::zero(n); 1 << rows];
    dp[0] = Poly::one(n);
    for mask in 0usize..(1 << rows) {
        if dp[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == rows {
            continue;
        }
        for col in 0..rows {
            if mask >> col & 1 == 0 {
                let e = entry_at(row, col);
                if !e.is_zero() {
                    let add = &dp[mask] * &e;
                    dp[mask | 1 << col] = &dp[mask | 1 << col] + &add;
                }
            }
        }
    }
    dp.pop().expect("nonempty table")
}

/// A GF(2) combination of Schur polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SchurExpr {
    terms: BTreeSet<Partition>,
    max_degree: u32,
}

impl SchurExpr {
    pub fn zero(max_degree: u32) -> Self {
        SchurExpr {
            terms: BTreeSet::new(),
            max_degree,
        }
    }

    pub fn from_partitions(
        parts: impl IntoIterator<Item = Partition>,
        max_degree: u32,
    ) -> Result<Self> {
        let mut e = SchurExpr::zero(max_degree);
        for lambda in parts {
            e.toggle(lambda)?;
        }
        Ok(e)
    }

    pub fn singleton(lambda: Partition, max_degree: u32) -> Result<Self> {
        SchurExpr::from_partitions([lambda], max_degree)
    }

    pub fn toggle(&mut self, lambda: Partition) -> Result<()> {
        if lambda.size() > self.max_degree {
            return Err(Error::DegreeOverflow {
                degree: lambda.size(),
                max_degree: self.max_degree,
            });
        }
        if !self.terms.remove(&lambda) {
            self.terms.insert(lambda);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = &Partition> {
        self.terms.iter()
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        self.terms.contains(lambda)
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

    /// Largest term size, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().next().map(Partition::size)
    }

    /// Parses `0` or `s[3,1] + s[2,2]`.
    pub fn parse(text: &str, max_degree: u32) -> Result<Self> {
        let lead = text.len() - text.trim_start().len();
        if text.trim() == "0" {
            return Ok(SchurExpr::zero(max_degree));
        }
        let mut e = SchurExpr::zero(max_degree);
        let mut offset = 0;
        for piece in text.split('+') {
            let start = offset + (piece.len() - piece.trim_start().len());
            let t = piece.trim();
            let body = t
                .strip_prefix('s')
                .ok_or_else(|| Error::syntax(start.max(lead), "expected a Schur term `s[...]`"))?;
            let lambda: Partition = body.parse().map_err(|err| match err {
                Error::Syntax { position, message } => Error::syntax(start + 1 + position, message),
                other => other,
            })?;
            e.toggle(lambda)?;
            offset += piece.len() + 1;
        }
        Ok(e)
    }
}

impl fmt::Display for SchurExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, lambda) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "s{lambda}")?;
        }
        Ok(())
    }
}

/// Schur polynomials of one degree, with a solver for the change of basis.
pub struct SchurBasis {
    partitions: Vec<Partition>,
    ambient: DegreeBasis<Gen>,
    solver: SpanSolver,
}

impl SchurBasis {
    fn build(d: u32) -> Self {
        let partitions = enumerate_partitions(d);
        let ambient = DegreeBasis::new(d, monomial_basis(d, GenSet::AllW));
        let columns: Vec<BitVec> = partitions
            .iter()
            .map(|l| {
                ambient
                    .to_vec(&schur_exact(l))
                    .expect("homogeneous of degree d")
            })
            .collect();
        let solver = SpanSolver::new(ambient.len(), &columns).expect("consistent lengths");
        SchurBasis {
            partitions,
            ambient,
            solver,
        }
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn rank(&self) -> usize {
        self.solver.rank()
    }
}

pub fn schur_basis(d: u32) -> Arc<SchurBasis> {
    static BASES: Memo<u32, SchurBasis> = Memo::new();
    BASES.get_or_build(d, || SchurBasis::build(d))
}

/// Expresses `x` (any mix of `w`'s and `p`'s) in the Schur basis.
pub fn to_schur_basis(x: &Poly) -> Result<SchurExpr> {
    let n = x.max_degree();
    let w = from_mixed_coordinates(x);
    let mut out = SchurExpr::zero(n);
    for d in 0..=n {
        let component = w.graded_component(d);
        if component.is_zero() {
            continue;
        }
        let basis = schur_basis(d);
        let coords = basis.ambient.to_vec(&component.with_max_degree(d))?;
        let solution = basis
            .solver
            .solve(&coords)?
            .ok_or(Error::DimensionMismatch {
                expected: basis.ambient.len(),
                actual: basis.rank(),
            })?;
        for i in solution.ones() {
            out.toggle(basis.partitions[i].clone())?;
        }
    }
    Ok(out)
}

/// The polynomial `Σ s_λ` in `w` coordinates.
pub fn from_schur_basis(e: &SchurExpr) -> Poly {
    e.terms().fold(Poly::zero(e.max_degree), |acc, l| {
        &acc + &schur_exact(l).with_max_degree(e.max_degree)
    })
}

/// `ω` in the Schur basis: `s_λ ↦ s_{λ^∨}`.
pub fn omega_on_schur(e: &SchurExpr) -> SchurExpr {
    SchurExpr {
        terms: e.terms().map(Partition::conjugate).collect(),
        max_degree: e.max_degree,
    }
}

/// `p_k · e` by the Murnaghan–Nakayama rule.
pub fn mn_multiply(k: u32, e: &SchurExpr) -> Result<SchurExpr> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "power sum index must be positive".into(),
        ));
    }
    let top = e.degree().unwrap_or(0) + k;
    if top > e.max_degree {
        return Err(Error::DegreeOverflow {
            degree: top,
            max_degree: e.max_degree,
        });
    }
    let mut out = SchurExpr::zero(e.max_degree);
    for lambda in e.terms() {
        for mu in lambda.border_strip_additions(k) {
            out.toggle(mu)?;
        }
    }
    Ok(out)
}

/// Basis of `S_d` in Schur coordinates (over `enumerate_partitions(d)`):
/// `{λ}` for self-conjugate `λ` and `{λ, λ^∨}` for each conjugate pair.
pub fn s_basis_of_s(d: u32) -> Vec<BitVec> {
    let parts = enumerate_partitions(d);
    let index = |l: &Partition| parts.iter().position(|m| m == l).expect("same size");
    let mut out = Vec::new();
    for (i, l) in parts.iter().enumerate() {
        let j = index(&l.conjugate());
        if j >= i {
            out.push(BitVec::from_indices(
                parts.len(),
                [i, j].into_iter().collect::<BTreeSet<_>>(),
            ));
        }
    }
    out
}

/// Canonical representative modulo `I = span{s_λ + s_{λ^∨}}`: each
/// non-self-conjugate term is moved to the later member of its pair.
pub fn reduce_mod_i(e: &SchurExpr) -> SchurExpr {
    let mut out = SchurExpr::zero(e.max_degree);
    for lambda in e.terms() {
        let conj = lambda.conjugate();
        let rep = if conj > *lambda { conj } else { lambda.clone() };
        out.toggle(rep).expect("same size");
    }
    out
}
