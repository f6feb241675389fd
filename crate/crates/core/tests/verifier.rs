use std::sync::OnceLock;

use f2sym::gf2::GradedSubspace;
use f2sym::involution::omega_table;
use f2sym::ring::{monomial_basis, GenSet};
use f2sym::verifier::{Check, DegreeSlice, GradedIdealFamily, Status, Verifier, VerifyConfig};
use f2sym::{Error, Poly};
use proptest::prelude::*;

const N: u32 = 10;

fn family() -> &'static GradedIdealFamily {
    static FAMILY: OnceLock<GradedIdealFamily> = OnceLock::new();
    FAMILY.get_or_init(|| GradedIdealFamily::build(N, 2))
}

/// A homogeneous element of degree `d` picked by a bit mask over the monomial basis.
fn homogeneous(d: u32, mask: u64) -> Poly {
    let terms = monomial_basis(d, GenSet::AllW)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
        .map(|(_, m)| m);
    Poly::from_terms(terms, N).unwrap()
}

fn in_space(x: &Poly, pick: impl Fn(&DegreeSlice) -> &GradedSubspace) -> bool {
    let Some(d) = x.degree() else { return true };
    let slice = family().slice(d);
    pick(slice).contains(&slice.to_vec(x).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn norm_is_additive_modulo_i(d in 1u32..=5, a in any::<u64>(), b in any::<u64>()) {
        let t = omega_table(N);
        let (x, y) = (homogeneous(d, a), homogeneous(d, b));
        let defect = &(&t.norm(&(&x + &y)).unwrap() + &t.norm(&x).unwrap()) + &t.norm(&y).unwrap();
        prop_assert!(in_space(&defect, |s| &s.i));
    }

    #[test]
    fn squares_lie_in_ri(d in 1u32..=5, a in any::<u64>()) {
        let x = homogeneous(d, a);
        prop_assert!(in_space(&(&x * &x), |s| &s.ri_pow[1]));
    }

    #[test]
    fn norms_and_images_are_invariant(d in 1u32..=5, a in any::<u64>()) {
        let t = omega_table(N);
        let x = homogeneous(d, a);
        prop_assert!(in_space(&t.norm(&x).unwrap(), |s| &s.s));
        prop_assert!(in_space(&t.dd(&x).unwrap(), |s| &s.i));
    }
}

#[test]
fn every_named_check_passes_at_small_truncation() {
    let v = Verifier::new(VerifyConfig::new(8)).unwrap();
    for report in v.run_all().unwrap() {
        let expected = if report.check == "conjecture-n3" {
            Status::Evidence
        } else {
            Status::Pass
        };
        assert_eq!(report.status, expected, "{}", report.check);
        assert!(!report.degrees.is_empty(), "{}", report.check);
    }
}

#[test]
fn check_names_round_trip() {
    for c in Check::ALL {
        assert_eq!(c.name().parse::<Check>().unwrap(), c);
    }
    assert!(matches!(
        "bogus".parse::<Check>(),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn config_limits() {
    assert!(matches!(
        Verifier::new(VerifyConfig::new(21)),
        Err(Error::ResourceLimit(_))
    ));
    let mut config = VerifyConfig::new(6);
    config.presentation_degree = 7;
    assert!(matches!(
        Verifier::new(config),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn reports_serialize_with_lowercase_status() {
    let v = Verifier::new(VerifyConfig::new(4)).unwrap();
    let json = serde_json::to_value(v.run(Check::Ses).unwrap()).unwrap();
    assert_eq!(json["status"], "pass");
    assert_eq!(json["check"], "ses");
    assert_eq!(json["degrees"][0]["degree"], 0);
    assert!(json["degrees"][0].get("witness").is_none());
    let conj = serde_json::to_value(v.run(Check::ConjectureN3).unwrap()).unwrap();
    assert_eq!(conj["status"], "evidence");
}
