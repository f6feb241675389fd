//! Checks of explicit polynomial identities, one result per degree.

use std::collections::BTreeMap;

use crate::coordinates::{power_sums, standard_basis, standard_form};
use crate::error::Result;
use crate::involution::omega_table;
use crate::partitions::{enumerate_partitions, partition_count, Partition};
use crate::ring::{monomial_basis, GenSet, Monomial, Poly};
use crate::schur::{
    mn_multiply, omega_on_schur, reduce_mod_i, schur_in_w, to_schur_basis, SchurExpr,
};

use super::report::DegreeResult;

fn w_or_one(i: u32, n: u32) -> Poly {
    if i == 0 {
        Poly::one(n)
    } else {
        Poly::w(i, n)
    }
}

/// Requires `lhs = rhs`, reporting the difference as witness.
fn require_identity(r: &mut DegreeResult, label: &str, lhs: &Poly, rhs: &Poly) {
    if lhs != rhs {
        r.require(false, || format!("{label}: difference {}", lhs + rhs));
    }
}

/// `ω∘ω = id` and `d∘d = 0` on degree-`d` monomials; the defining recursion at `k = d`.
pub fn involution(n: u32) -> Result<Vec<DegreeResult>> {
    let t = omega_table(n);
    (0..=n)
        .map(|d| {
            let monomials = monomial_basis(d, GenSet::AllW);
            let mut r = DegreeResult::new("involution", d).dim("monomials", monomials.len());
            for m in monomials {
                let x = Poly::from_monomial(m, n);
                let wx = t.omega(&x)?;
                require_identity(&mut r, &format!("omega(omega({x}))"), &t.omega(&wx)?, &x);
                let ddx = t.dd(&x)?;
                require_identity(&mut r, &format!("d(d({x}))"), &t.dd(&ddx)?, &Poly::zero(n));
                r.require(
                    wx.is_homogeneous() && (wx.is_zero() || wx.degree() == Some(d)),
                    || format!("omega({x}) is not homogeneous of degree {d}"),
                );
            }
            if d >= 1 {
                let sum = (0..=d).fold(Poly::zero(n), |acc, i| {
                    &acc + &(&w_or_one(i, n) * t.omega_w(d - i))
                });
                require_identity(&mut r, "defining recursion", &sum, &Poly::zero(n));
            }
            Ok(r)
        })
        .collect()
}

/// With `W = Σ_{i≤N} w_i`: `ω(W) = W(1+ω(W))`, `W + ω(W) = W·ω(W) = W²(1+ω(W))`,
/// `(1+W)·ω(1+W) = 1`, compared degree by degree.
pub fn formal_series(n: u32) -> Result<Vec<DegreeResult>> {
    let t = omega_table(n);
    let one = Poly::one(n);
    let w = (1..=n).fold(Poly::zero(n), |acc, i| &acc + &Poly::w(i, n));
    let wbar = t.omega(&w)?;
    let w_plus = &one + &w;
    let identities: Vec<(&str, Poly, Poly)> = vec![
        (
            "omega(W) = W(1+omega(W))",
            wbar.clone(),
            &w * &(&one + &wbar),
        ),
        ("W + omega(W) = W omega(W)", &w + &wbar, &w * &wbar),
        (
            "W omega(W) = W^2(1+omega(W))",
            &w * &wbar,
            &(&w * &w) * &(&one + &wbar),
        ),
        (
            "W+ omega(W+) = 1",
            &w_plus * &t.omega(&w_plus)?,
            one.clone(),
        ),
    ];
    Ok((0..=n)
        .map(|d| {
            let mut r = DegreeResult::new("formal-series", d).dim("identities", identities.len());
            for (label, lhs, rhs) in &identities {
                require_identity(
                    &mut r,
                    label,
                    &lhs.graded_component(d),
                    &rhs.graded_component(d),
                );
            }
            r
        })
        .collect())
}

/// Thick Leibniz defect on all pairs of monomials of degree ≤ 8 and all
/// triples of generators, grouped by the degree of the product.
pub fn thick_leibniz(n: u32) -> Result<Vec<DegreeResult>> {
    let t = omega_table(n);
    let mut results: BTreeMap<u32, DegreeResult> = (0..=n)
        .map(|d| (d, DegreeResult::new("thick-leibniz", d)))
        .collect();
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    let monomials: Vec<Monomial<_>> = (0..=n.min(8))
        .flat_map(|d| monomial_basis(d, GenSet::AllW))
        .collect();
    let mut tuples: Vec<Vec<Poly>> = Vec::new();
    for (i, a) in monomials.iter().enumerate() {
        for b in &monomials[i..] {
            if a.degree() + b.degree() <= n {
                tuples.push(vec![
                    Poly::from_monomial(a.clone(), n),
                    Poly::from_monomial(b.clone(), n),
                ]);
            }
        }
    }
    for i in 1..=n {
        for j in i..=n {
            for k in j..=n.saturating_sub(i + j) {
                tuples.push(vec![Poly::w(i, n), Poly::w(j, n), Poly::w(k, n)]);
            }
        }
    }
    for xs in tuples {
        let degree: u32 = xs.iter().filter_map(Poly::degree).sum();
        *counts.entry(degree).or_default() += 1;
        let defect = t.thick_leibniz_defect(&xs)?;
        let r = results.get_mut(&degree).expect("degree within bound");
        r.require(defect.is_zero(), || {
            let names: Vec<String> = xs.iter().map(Poly::to_string).collect();
            format!("[{}]: defect {defect}", names.join(", "))
        });
    }
    Ok(results
        .into_iter()
        .map(|(d, r)| r.dim("tuples", counts.get(&d).copied().unwrap_or(0)))
        .collect())
}

/// Power-sum identities with `k` reported as the degree.
pub fn power_sum_identities(n: u32) -> Result<Vec<DegreeResult>> {
    let p = power_sums(n);
    let t = omega_table(n);
    (1..=n)
        .map(|k| {
            let mut r = DegreeResult::new("power-sums", k);
            let mut odd = Poly::zero(n);
            let mut even = Poly::zero(n);
            for i in 0..=k {
                let term = &w_or_one(i, n) * t.omega_w(k - i);
                if i % 2 == 1 {
                    odd = &odd + &term;
                } else {
                    even = &even + &term;
                }
            }
            require_identity(&mut r, "odd-index sum", &odd, p.p(k));
            require_identity(&mut r, "even-index sum", &even, p.p(k));
            require_identity(&mut r, "omega-invariance", &t.omega(p.p(k))?, p.p(k));
            if 2 * k <= n {
                require_identity(&mut r, "p_k^2 = p_2k", &p.p(k).pow(2), p.p(2 * k));
            }
            if k % 2 == 1 && 2 * k <= n {
                let mut rhs = Poly::zero(n);
                for i in 0..=(k - 1) / 2 {
                    let (a, b) = (w_or_one(2 * i, n), w_or_one(2 * (k - i), n));
                    rhs = &rhs + &t.dd(&(&a * &b))?;
                    rhs = &rhs + &(&t.dd(&a)? * &t.dd(&b)?);
                }
                require_identity(&mut r, "square of odd power sum", &p.p(k).pow(2), &rhs);
            }
            if 4 * k <= n {
                let w2k = Poly::w(2 * k, n);
                let mut rhs = &(&w2k * &t.dd(&w2k)?) + &p.p(k).pow(4);
                for i in 0..k {
                    let (a, b) = (w_or_one(2 * i, n), w_or_one(4 * k - 2 * i, n));
                    rhs = &rhs + &t.dd(&(&a * &b))?;
                    rhs = &rhs + &(&t.dd(&a)? * &t.dd(&b)?);
                }
                require_identity(&mut r, "square of even generator", &w2k.pow(2), &rhs);
            }
            Ok(r)
        })
        .collect()
}

/// Standard-form terms of degree `d` number `p(d)`, are independent, and
/// decomposition followed by evaluation is the identity on monomials.
pub fn standard_forms(n: u32) -> Result<Vec<DegreeResult>> {
    (0..=n)
        .map(|d| {
            let basis = standard_basis(d);
            let pd = partition_count(d);
            let mut r = DegreeResult::new("standard-form", d)
                .dim("terms", basis.terms().len())
                .dim("rank", basis.rank())
                .dim("partitions", pd);
            r.require(basis.terms().len() == pd && basis.rank() == pd, || {
                format!(
                    "{} terms of rank {} for p({d}) = {pd}",
                    basis.terms().len(),
                    basis.rank()
                )
            });
            for m in monomial_basis(d, GenSet::AllW) {
                let x = Poly::from_monomial(m, n);
                let back = standard_form(&x)?.evaluate();
                require_identity(&mut r, &format!("evaluate(standard_form({x}))"), &back, &x);
            }
            Ok(r)
        })
        .collect()
}

fn hook_sum(k: u32, n: u32) -> Result<SchurExpr> {
    let hooks = (1..=k).map(|a| {
        let mut parts = vec![a];
        parts.extend(std::iter::repeat_n(1, (k - a) as usize));
        Partition::new(parts).expect("hook")
    });
    SchurExpr::from_partitions(hooks, n)
}

/// Schur-basis facts in degree `d ≤ min(N, 10)`: conjugation, change of basis,
/// Murnaghan–Nakayama against multiplication, hook sums and power sums mod `I`.
pub fn schur_facts(n: u32) -> Result<Vec<DegreeResult>> {
    let bound = n.min(10);
    let p = power_sums(n);
    let t = omega_table(n);
    let mut results = Vec::new();
    for d in 0..=bound {
        let parts = enumerate_partitions(d);
        let mut r = DegreeResult::new("schur", d).dim("partitions", parts.len());
        for l in &parts {
            let s = schur_in_w(l, n)?;
            let single = SchurExpr::singleton(l.clone(), n)?;
            require_identity(
                &mut r,
                &format!("omega(s{l})"),
                &t.omega(&s)?,
                &schur_in_w(&l.conjugate(), n)?,
            );
            if to_schur_basis(&s)? != single {
                r.require(false, || {
                    format!("to_schur(s{l}) = {}", to_schur_basis(&s).expect("ok"))
                });
            }
            if omega_on_schur(&single) != SchurExpr::singleton(l.conjugate(), n)? {
                r.require(false, || format!("omega_on_schur(s{l})"));
            }
        }
        for k in 1..=d {
            for l in enumerate_partitions(d - k) {
                let single = SchurExpr::singleton(l.clone(), n)?;
                let via_mn = mn_multiply(k, &single)?;
                let direct = to_schur_basis(&(p.p(k) * &schur_in_w(&l, n)?))?;
                if via_mn != direct {
                    r.require(false, || {
                        format!("p{k}*s{l}: rule gives {via_mn}, product gives {direct}")
                    });
                }
            }
        }
        if d >= 1 {
            let pd = to_schur_basis(p.p(d))?;
            let hooks = hook_sum(d, n)?;
            if pd != hooks {
                r.require(false, || format!("p{d} = {pd}, hooks {hooks}"));
            }
            let reduced = reduce_mod_i(&pd);
            let expected = if d % 2 == 1 {
                SchurExpr::singleton(Partition::gamma_hook(d.div_ceil(2))?, n)?
            } else {
                SchurExpr::zero(n)
            };
            if reduced != expected {
                r.require(false, || {
                    format!("p{d} mod I = {reduced}, expected {expected}")
                });
            }
        }
        results.push(r);
    }
    Ok(results)
}

/// `p_{2j+1} · s_{Sq(j)} ≡ s_{Sq(j+1)} mod I` for `2j+1 ≤ bound`; degree is `(j+1)²`.
pub fn square_growth(bound: u32) -> Result<Vec<DegreeResult>> {
    let mut results = Vec::new();
    for j in 0.. {
        if 2 * j + 1 > bound {
            break;
        }
        let size = (j + 1) * (j + 1);
        let sq = SchurExpr::singleton(Partition::square(j), size)?;
        let next = SchurExpr::singleton(Partition::square(j + 1), size)?;
        let product = mn_multiply(2 * j + 1, &sq)?;
        let reduced = reduce_mod_i(&product);
        let mut r = DegreeResult::new("square-growth", size)
            .dim("j", j as usize)
            .dim("product_terms", product.len());
        if reduced != next {
            r.require(false, || {
                format!("p{}*s{} mod I = {reduced}", 2 * j + 1, Partition::square(j))
            });
        }
        results.push(r);
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_at_small_bounds() {
        for rs in [
            involution(8).unwrap(),
            formal_series(8).unwrap(),
            thick_leibniz(6).unwrap(),
            power_sum_identities(8).unwrap(),
            standard_forms(8).unwrap(),
            schur_facts(6).unwrap(),
            square_growth(7).unwrap(),
        ] {
            for r in rs {
                assert!(r.pass, "{r:?}");
            }
        }
    }

    #[test]
    fn broken_identity_reports_difference() {
        let mut r = DegreeResult::new("demo", 1);
        require_identity(&mut r, "x", &Poly::w(1, 4), &Poly::zero(4));
        assert!(!r.pass);
        assert_eq!(r.witness.as_deref(), Some("x: difference w1"));
    }
}
