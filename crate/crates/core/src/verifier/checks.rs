//! Degreewise checks on the ideal family.

use crate::coordinates::from_mixed_coordinates;
use crate::error::Result;
use crate::gf2::{BitMatrix, BitVec, EchelonBasis, GradedSubspace};
use crate::involution::omega_table;
use crate::partitions::{count_self_conjugate, partition_count, partitions_with_parts};
use crate::ring::{is_square_free, monomial_basis, GenSet, Poly};
use crate::schur::s_basis_of_s;

use super::family::{DegreeSlice, GradedIdealFamily};
use super::report::DegreeResult;

/// Fails `r` unless `a = b`, with a vector from the symmetric difference as witness.
fn require_equal(
    r: &mut DegreeResult,
    slice: &DegreeSlice,
    a: &GradedSubspace,
    b: &GradedSubspace,
) -> Result<()> {
    let witness = match a.witness_outside(b)? {
        Some(v) => Some(v),
        None => b.witness_outside(a)?,
    };
    r.require(witness.is_none(), || {
        slice.render(witness.as_ref().expect("checked above"))
    });
    Ok(())
}

/// Span of the given elements in the slice's coordinates.
fn span_of(slice: &DegreeSlice, xs: &[Poly]) -> Result<GradedSubspace> {
    let rows = xs
        .iter()
        .map(|x| slice.to_vec(x))
        .collect::<Result<Vec<BitVec>>>()?;
    GradedSubspace::span(slice.degree(), slice.basis.ambient().clone(), rows)
}

/// `(RI^n ∩ S)_d = (I^n)_d`.
pub fn transversality(
    fam: &GradedIdealFamily,
    n: usize,
    d: u32,
    name: &str,
) -> Result<DegreeResult> {
    let slice = fam.slice(d);
    let lhs = slice.ri_pow[n].intersect(&slice.s)?;
    let rhs = &slice.i_pow[n];
    let mut r = DegreeResult::new(name, d)
        .dim("s", slice.s.dim())
        .dim("ri_n", slice.ri_pow[n].dim())
        .dim("ri_n_cap_s", lhs.dim())
        .dim("i_n", rhs.dim());
    require_equal(&mut r, slice, &lhs, rhs)?;
    Ok(r)
}

/// The ideal of squares equals `RI`.
pub fn q_equals_ri(fam: &GradedIdealFamily, d: u32) -> Result<DegreeResult> {
    let slice = fam.slice(d);
    let mut r = DegreeResult::new("q-equals-ri", d)
        .dim("q", slice.q.dim())
        .dim("ri", slice.ri_pow[1].dim());
    require_equal(&mut r, slice, &slice.q, &slice.ri_pow[1])?;
    Ok(r)
}

/// `dim (R/RI)_d = dim (S/I)_d + dim (I/I²)_d`.
pub fn ses(fam: &GradedIdealFamily, d: u32) -> Result<DegreeResult> {
    let slice = fam.slice(d);
    let r_mod_ri = slice.ri_pow[1].codim();
    let s_mod_i = slice.s.dim() - slice.i.dim();
    let i_mod_i2 = slice.i.dim() - slice.i_pow[2].dim();
    let mut r = DegreeResult::new("ses", d)
        .dim("r_mod_ri", r_mod_ri)
        .dim("s_mod_i", s_mod_i)
        .dim("i_mod_i2", i_mod_i2);
    if r_mod_ri != s_mod_i + i_mod_i2 {
        let cap = slice.ri_pow[1].intersect(&slice.s)?;
        let witness = cap.witness_outside(&slice.i)?;
        r.require(false, || match witness {
            Some(v) => slice.render(&v),
            None => format!("dimension defect {} vs {}", r_mod_ri, s_mod_i + i_mod_i2),
        });
    }
    Ok(r)
}

/// `{x ∈ R_d : d x ∈ I^{n+1}} = (S + RI^n)_d`.
pub fn preimage(fam: &GradedIdealFamily, n: usize, d: u32, name: &str) -> Result<DegreeResult> {
    let slice = fam.slice(d);
    let target = &slice.i_pow[n + 1];
    let reduced = slice
        .dd_images
        .iter()
        .map(|v| target.reduce(v))
        .collect::<Result<Vec<BitVec>>>()?;
    let matrix = BitMatrix::from_rows(slice.basis.len(), &reduced)?;
    let kernel: Vec<BitVec> = matrix.transpose().kernel().row_vectors().collect();
    let pre = GradedSubspace::span(d, slice.basis.ambient().clone(), kernel)?;
    let expected = slice.s.sum(&slice.ri_pow[n])?;
    let mut r = DegreeResult::new(name, d)
        .dim("preimage", pre.dim())
        .dim("s_plus_ri_n", expected.dim());
    require_equal(&mut r, slice, &pre, &expected)?;
    Ok(r)
}

/// Square-free products of odd power sums of degree `d`, in `w` coordinates.
pub fn odd_power_sum_products(d: u32, max_degree: u32) -> Vec<Poly> {
    monomial_basis(d, GenSet::OddP)
        .into_iter()
        .filter(|m| is_square_free(m, GenSet::OddP))
        .map(|m| from_mixed_coordinates(&Poly::from_monomial(m, max_degree)))
        .collect()
}

/// `dim (S/I)_d = sc(d)`, and square-free odd power-sum products give a basis of `S_d / I_d`.
pub fn exterior(fam: &GradedIdealFamily, d: u32) -> Result<DegreeResult> {
    let slice = fam.slice(d);
    let n = fam.max_degree();
    let sc = count_self_conjugate(d);
    let s_mod_i = slice.s.dim() - slice.i.dim();
    let products = odd_power_sum_products(d, n);
    let reps = span_of(slice, &products)?;
    let spanned = reps.sum(&slice.i)?;
    let mut r = DegreeResult::new("exterior", d)
        .dim("s_mod_i", s_mod_i)
        .dim("self_conjugate", sc)
        .dim("odd_products", products.len())
        .dim("odd_products_plus_i", spanned.dim());
    r.require(s_mod_i == sc, || {
        format!("dim (S/I)_{d} = {s_mod_i} but sc({d}) = {sc}")
    });
    require_equal(&mut r, slice, &spanned, &slice.s)?;
    r.require(spanned.dim() == slice.i.dim() + products.len(), || {
        products
            .iter()
            .find(|x| {
                let v = slice.to_vec(x).expect("degree d");
                slice.i.contains(&v).expect("same length")
            })
            .map_or_else(|| "odd products dependent modulo I".into(), Poly::to_string)
    });
    Ok(r)
}

/// The `n`-fold products `m · d(w_{2i₁})⋯d(w_{2i_n})` with `m` a square-free
/// monomial in `p_odd, w_even` are a basis of `(RI^n / RI^{n+1})_d`.
pub fn omega_basis(fam: &GradedIdealFamily, n: usize, d: u32) -> Result<DegreeResult> {
    let slice = fam.slice(d);
    let max = fam.max_degree();
    let table = omega_table(max);
    let mut set: Vec<Poly> = Vec::new();
    for half in 0..=d / 2 {
        let indices: Vec<u32> = (1..=half.max(1)).collect();
        let tuples = if n == 0 {
            if half == 0 {
                vec![Vec::new()]
            } else {
                Vec::new()
            }
        } else {
            partitions_with_parts(half, &indices)
                .into_iter()
                .filter(|l| l.len() == n)
                .map(|l| l.parts().to_vec())
                .collect()
        };
        for tuple in tuples {
            let mut prod = Poly::one(max);
            for i in &tuple {
                prod = &prod * &table.dd(&Poly::w(2 * i, max))?;
            }
            for m in monomial_basis(d - 2 * half, GenSet::Mixed) {
                if is_square_free(&m, GenSet::Mixed) {
                    let cofactor = from_mixed_coordinates(&Poly::from_monomial(m, max));
                    set.push(&cofactor * &prod);
                }
            }
        }
    }
    let next = &slice.ri_pow[n + 1];
    let mut acc = EchelonBasis::new(slice.basis.len());
    for v in next.basis_vectors() {
        acc.insert(v);
    }
    let mut dependent = None;
    for x in &set {
        let v = slice.to_vec(x)?;
        if !acc.insert(v) && dependent.is_none() {
            dependent = Some(x.to_string());
        }
    }
    let current = &slice.ri_pow[n];
    let mut r = DegreeResult::new("omega-basis", d)
        .dim("n", n)
        .dim("products", set.len())
        .dim("ri_n", current.dim())
        .dim("ri_n_plus_1", next.dim());
    r.require(dependent.is_none(), || dependent.clone().expect("checked"));
    r.require(next.dim() + set.len() == current.dim(), || {
        format!(
            "{} products plus dim RI^{} = {} do not fill dim RI^{} = {}",
            set.len(),
            n + 1,
            next.dim(),
            n,
            current.dim()
        )
    });
    // The products must lie in RI^n for the quotient statement to make sense.
    for x in &set {
        let v = slice.to_vec(x)?;
        if !current.contains(&v)? {
            r.require(false, || x.to_string());
            break;
        }
    }
    Ok(r)
}

/// `x·ω(x) ∈ I_{2j}` for every monomial `x` of degree `j` (in particular `w_j`).
pub fn normality(fam: &GradedIdealFamily, j: u32) -> Result<DegreeResult> {
    let d = 2 * j;
    let slice = fam.slice(d);
    let table = omega_table(fam.max_degree());
    let monomials = monomial_basis(j, GenSet::AllW);
    let mut r = DegreeResult::new("normality", d).dim("monomials", monomials.len());
    for m in monomials {
        let x = Poly::from_monomial(m, fam.max_degree());
        let nx = table.norm(&x)?;
        let v = slice.to_vec(&nx)?;
        if !slice.i.contains(&v)? {
            r.require(false, || format!("norm({x}) = {nx}"));
        }
    }
    Ok(r)
}

/// `dim S_d` by kernel rank against the partition count `(p(d) + sc(d))/2`
/// and the size of the conjugation-pair basis.
pub fn dimension_oracle(fam: &GradedIdealFamily, d: u32) -> Result<DegreeResult> {
    let slice = fam.slice(d);
    let combinatorial = (partition_count(d) + count_self_conjugate(d)) / 2;
    let pairs = s_basis_of_s(d).len();
    let mut r = DegreeResult::new("dimension-oracle", d)
        .dim("kernel_rank", slice.s.dim())
        .dim("partition_formula", combinatorial)
        .dim("conjugation_pairs", pairs);
    let s = slice.s.dim();
    r.require(s == combinatorial && s == pairs, || {
        format!("kernel rank {s}, partition formula {combinatorial}, pairs {pairs}")
    });
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_checks_pass() {
        let fam = GradedIdealFamily::build(8, 3);
        for d in 0..=8 {
            assert!(transversality(&fam, 1, d, "t1").unwrap().pass);
            assert!(transversality(&fam, 2, d, "t2").unwrap().pass);
            assert!(q_equals_ri(&fam, d).unwrap().pass);
            assert!(ses(&fam, d).unwrap().pass);
            assert!(preimage(&fam, 1, d, "p1").unwrap().pass);
            assert!(exterior(&fam, d).unwrap().pass);
            assert!(dimension_oracle(&fam, d).unwrap().pass);
            for n in 0..=2 {
                assert!(omega_basis(&fam, n, d).unwrap().pass, "n = {n}, d = {d}");
            }
        }
        for j in 1..=4 {
            assert!(normality(&fam, j).unwrap().pass);
        }
    }

    #[test]
    fn ses_in_degree_two() {
        let fam = GradedIdealFamily::build(4, 2);
        let r = ses(&fam, 2).unwrap();
        assert_eq!(r.dims["r_mod_ri"], 1);
        assert_eq!(r.dims["s_mod_i"], 0);
        assert_eq!(r.dims["i_mod_i2"], 1);
    }

    #[test]
    fn exterior_dimensions() {
        let fam = GradedIdealFamily::build(8, 1);
        assert_eq!(exterior(&fam, 4).unwrap().dims["s_mod_i"], 1);
        assert_eq!(exterior(&fam, 2).unwrap().dims["s_mod_i"], 0);
        assert_eq!(exterior(&fam, 8).unwrap().dims["s_mod_i"], 2);
    }

    #[test]
    fn omega_basis_degree_two() {
        let fam = GradedIdealFamily::build(4, 2);
        let r = omega_basis(&fam, 1, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.dims["products"], 1);
    }

    #[test]
    fn failures_carry_witnesses() {
        // Comparing RI with S must fail in degree 2 and name a polynomial.
        let fam = GradedIdealFamily::build(4, 1);
        let slice = fam.slice(2);
        let mut r = DegreeResult::new("demo", 2);
        require_equal(&mut r, slice, &slice.ri_pow[0], &slice.s).unwrap();
        assert!(!r.pass);
        assert_eq!(r.witness.as_deref(), Some("w2"));
    }
}
