//! The involution `ω`, the operator `d = 1 + ω` and the norm `x·ω(x)`.
//!
//! `ω` is the ring map determined by `Σ_{i=0}^{k} w_i ω(w_{k−i}) = 0`, with
//! `w₀ = 1`. It fixes every power sum, so it acts on mixed `p`/`w` input too.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::ring::{Gen, Monomial, Poly};

/// `ω(w_k)` for `1 ≤ k ≤ N`, built once per truncation bound.
#[derive(Debug, Clone)]
pub struct OmegaTable {
    max_degree: u32,
    wbar: Vec<Poly>,
}

impl OmegaTable {
    pub fn build(max_degree: u32) -> Self {
        let n = max_degree;
        let mut wbar: Vec<Poly> = vec![Poly::one(n)];
        for k in 1..=n {
            // ω(w_k) = Σ_{i=1}^{k} w_i ω(w_{k−i})
            let mut acc = Poly::zero(n);
            for i in 1..=k {
                acc = &acc + &wbar[(k - i) as usize].mul_monomial(&Monomial::w(i));
            }
            wbar.push(acc);
        }
        OmegaTable { max_degree, wbar }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// `ω(w_k)`; `ω(w₀) = 1`.
    pub fn omega_w(&self, k: u32) -> &Poly {
        &self.wbar[k as usize]
    }

    fn check(&self, x: &Poly) -> Result<()> {
        if x.max_degree() != self.max_degree {
            return Err(Error::TruncationMismatch {
                left: x.max_degree(),
                right: self.max_degree,
            });
        }
        Ok(())
    }

    pub fn omega(&self, x: &Poly) -> Result<Poly> {
        self.check(x)?;
        Ok(x.substitute(self.max_degree, |g: &Gen| {
            if g.is_w() {
                self.wbar[g.index as usize].clone()
            } else {
                Poly::from_monomial(Monomial::generator(*g), self.max_degree)
            }
        }))
    }

    /// `d x = x + ω(x)`.
    pub fn dd(&self, x: &Poly) -> Result<Poly> {
        Ok(x + &self.omega(x)?)
    }

    /// `x·ω(x)`.
    pub fn norm(&self, x: &Poly) -> Result<Poly> {
        Ok(x * &self.omega(x)?)
    }

    /// `d(∏ x) + Σ_{∅≠T} x_{T^c} (d x)_T`; always zero.
    pub fn thick_leibniz_defect(&self, xs: &[Poly]) -> Result<Poly> {
        if xs.is_empty() {
            return Err(Error::InvalidArgument("empty factor list".into()));
        }
        if xs.len() > 16 {
            return Err(Error::InvalidArgument(
                "at most 16 factors supported".into(),
            ));
        }
        let n = self.max_degree;
        let dxs = xs.iter().map(|x| self.dd(x)).collect::<Result<Vec<_>>>()?;
        let mut product = Poly::one(n);
        for x in xs {
            product = product.checked_mul(x)?;
        }
        let mut defect = self.dd(&product)?;
        for subset in 1u32..(1 << xs.len()) {
            let mut term = Poly::one(n);
            for (i, (x, dx)) in xs.iter().zip(&dxs).enumerate() {
                let factor = if subset >> i & 1 == 1 { dx } else { x };
                term = &term * factor;
            }
            defect = &defect + &term;
        }
        Ok(defect)
    }
}

/// Shared table for a truncation bound; built on first use.
pub fn omega_table(max_degree: u32) -> Arc<OmegaTable> {
    static TABLES: Memo<u32, OmegaTable> = Memo::new();
    TABLES.get_or_build(max_degree, || OmegaTable::build(max_degree))
}

pub fn omega(x: &Poly) -> Poly {
    omega_table(x.max_degree())
        .omega(x)
        .expect("table matches bound")
}

pub fn dd(x: &Poly) -> Poly {
    omega_table(x.max_degree())
        .dd(x)
        .expect("table matches bound")
}

pub fn norm(x: &Poly) -> Poly {
    omega_table(x.max_degree())
        .norm(x)
        .expect("table matches bound")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{monomial_basis, GenSet};
    use proptest::prelude::*;

    const N: u32 = 12;

    fn poly(s: &str) -> Poly {
        Poly::parse(s, N).unwrap()
    }

    /// Sum over compositions of `k` of `w_{i1}⋯w_{ip}`.
    fn composition_sum(k: u32, n: u32) -> Poly {
        fn go(remaining: u32, parts: &mut Vec<u32>, acc: &mut Poly) {
            if remaining == 0 {
                acc.toggle(Monomial::w_product(parts));
                return;
            }
            for first in 1..=remaining {
                parts.push(first);
                go(remaining - first, parts, acc);
                parts.pop();
            }
        }
        let mut acc = Poly::zero(n);
        go(k, &mut Vec::new(), &mut acc);
        acc
    }

    #[test]
    fn table_examples() {
        let t = omega_table(N);
        assert_eq!(t.omega_w(0), &Poly::one(N));
        assert_eq!(t.omega_w(1), &poly("w1"));
        assert_eq!(t.omega_w(2), &poly("w2 + w1^2"));
        assert_eq!(t.omega_w(3), &poly("w3 + w1^3"));
    }

    #[test]
    fn defining_sum_vanishes() {
        let t = omega_table(N);
        for k in 1..=N {
            let mut s = Poly::zero(N);
            for i in 0..=k {
                let wi = if i == 0 { Poly::one(N) } else { Poly::w(i, N) };
                s = &s + &(&wi * t.omega_w(k - i));
            }
            assert!(s.is_zero(), "k = {k}");
            assert!(t.omega_w(k).is_homogeneous());
            assert_eq!(t.omega_w(k).degree(), Some(k));
        }
    }

    #[test]
    fn composition_oracle() {
        let t = omega_table(10);
        for k in 1..=10 {
            assert_eq!(t.omega_w(k), &composition_sum(k, 10), "k = {k}");
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(&Poly::one(N)), Poly::one(N));
        assert_eq!(omega(&poly("w1^2")), poly("w1^2"));
        assert_eq!(omega(&omega(&poly("w4"))), poly("w4"));
        assert_eq!(omega(&poly("w2")).to_string(), "w1^2 + w2");
        assert_eq!(omega(&poly("p3 + p1*w2")), poly("p3 + p1*w2 + p1*w1^2"));
    }

    #[test]
    fn dd_examples() {
        assert!(dd(&poly("w1")).is_zero());
        assert_eq!(dd(&poly("w2")), poly("w1^2"));
        assert_eq!(dd(&poly("w4")), poly("w1^4 + w2^2 + w1^2*w2"));
    }

    #[test]
    fn dd_even_generator_formula() {
        // d(w_{2i}) = w_i² + Σ_{k=1}^{i−1} ω(w_{2(i−k)}) w_k²
        let t = omega_table(N);
        for i in 1..=N / 2 {
            let mut expected = Poly::w(i, N).pow(2);
            for k in 1..i {
                expected = &expected + &(t.omega_w(2 * (i - k)) * &Poly::w(k, N).pow(2));
            }
            assert_eq!(dd(&Poly::w(2 * i, N)), expected, "i = {i}");
        }
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&Poly::one(N)), Poly::one(N));
        assert_eq!(norm(&poly("w1")), poly("w1^2"));
        assert_eq!(norm(&poly("w2")), poly("w2^2 + w1^2*w2"));
    }

    #[test]
    fn involution_and_square_zero_on_monomials() {
        for d in 0..=N {
            for m in monomial_basis(d, GenSet::AllW) {
                let x = Poly::from_monomial(m, N);
                assert_eq!(omega(&omega(&x)), x);
                assert!(dd(&dd(&x)).is_zero());
                let nx = norm(&x);
                assert_eq!(omega(&nx), nx);
            }
        }
    }

    #[test]
    fn formal_series() {
        let w = (1..=N).fold(Poly::zero(N), |acc, i| &acc + &Poly::w(i, N));
        let one = Poly::one(N);
        let wbar = omega(&w);
        assert_eq!(wbar, &w * &(&one + &wbar));
        assert_eq!(&w + &wbar, &w * &wbar);
        assert_eq!(&w * &wbar, &(&w * &w) * &(&one + &wbar));
        let w_plus = &one + &w;
        assert_eq!(&w_plus * &omega(&w_plus), one);
    }

    #[test]
    fn thick_leibniz_examples() {
        let t = omega_table(N);
        for xs in [vec!["w1"], vec!["w2", "w2"], vec!["w2", "w3", "w4"]] {
            let xs: Vec<Poly> = xs.into_iter().map(poly).collect();
            assert!(t.thick_leibniz_defect(&xs).unwrap().is_zero());
        }
        assert!(t.thick_leibniz_defect(&[]).is_err());
    }

    #[test]
    fn truncation_mismatch() {
        let t = omega_table(N);
        assert!(t.omega(&Poly::w(1, 8)).is_err());
    }

    fn arb_poly(max_deg: u32) -> impl Strategy<Value = Poly> {
        let all: Vec<Monomial<Gen>> = (0..=max_deg)
            .flat_map(|d| monomial_basis(d, GenSet::AllW))
            .collect();
        prop::collection::vec(prop::sample::select(all), 0..5)
            .prop_map(|ms| Poly::from_terms(ms, N).unwrap())
    }

    proptest! {
        #[test]
        fn omega_is_ring_map(a in arb_poly(6), b in arb_poly(6)) {
            prop_assert_eq!(omega(&(&a * &b)), &omega(&a) * &omega(&b));
            prop_assert_eq!(omega(&(&a + &b)), &omega(&a) + &omega(&b));
        }

        #[test]
        fn thick_leibniz_random(xs in prop::collection::vec(arb_poly(8), 1..=4)) {
            let t = omega_table(N);
            prop_assert!(t.thick_leibniz_defect(&xs).unwrap().is_zero());
        }
    }
}
