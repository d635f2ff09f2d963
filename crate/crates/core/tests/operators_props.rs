mod common;

use barmon::exactalg::parse_mpoly;
use barmon::games::{barmon_recursion, sym_barmon, BarMonomialCache};
use barmon::operators::{
    apply_si, barmon_path_tags, dehomogenize_xi, div_diff, omega_tilde, phi, phi_minus, phi_plus, predecessor, psi,
    recursion_path, replay, sigma_minus, sigma_plus, sign_flip, OperatorTag, PathStep,
};
use barmon::shapes::{compositions_up_to, partitions_up_to, rearrangements};
use barmon::{Error, MPoly, RLaurent};
use common::{comp, q};
use proptest::prelude::*;

const N: usize = 3;

fn p(s: &str, n: usize) -> MPoly {
    parse_mpoly(s, n).unwrap()
}

fn laurent_strategy() -> impl Strategy<Value = RLaurent> {
    prop::collection::vec((-1i32..=2, -3i64..=3, 1i64..=2), 1..3)
        .prop_map(|ts| RLaurent::from_terms(ts.into_iter().map(|(k, a, b)| (k, q(a, b)))))
}

fn poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, N), laurent_strategy()), 0..4)
        .prop_map(|ts| MPoly::from_terms(N, ts))
}

fn monomial_strategy() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=4, N)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sigma_squares_to_identity(f in poly(), i in 1usize..N) {
        prop_assert_eq!(sigma_plus(&sigma_plus(&f, i).unwrap(), i).unwrap(), f.clone());
        prop_assert_eq!(sigma_minus(&sigma_minus(&f, i).unwrap(), i).unwrap(), f);
    }

    #[test]
    fn sigma_plus_is_a_twisted_derivation(f in poly(), g in poly(), i in 1usize..N) {
        let lhs = sigma_plus(&(&f * &g), i).unwrap();
        let rhs = &(&apply_si(&f, i).unwrap() * &sigma_plus(&g, i).unwrap())
            + &(&div_diff(&f, i).unwrap() * &g).scale(&RLaurent::r());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_plus_is_twisted_by_omega(f in poly(), g in poly()) {
        prop_assert_eq!(phi_plus(&(&f * &g)), &omega_tilde(&f) * &phi_plus(&g));
    }

    #[test]
    fn sigma_fixes_exactly_the_symmetric_part(f in poly(), i in 1usize..N) {
        let fixed_by_sigma = sigma_plus(&f, i).unwrap() == f;
        let fixed_by_s = apply_si(&f, i).unwrap() == f;
        prop_assert_eq!(fixed_by_sigma, fixed_by_s);
        let sym = &f + &apply_si(&f, i).unwrap();
        prop_assert_eq!(sigma_plus(&sym, i).unwrap(), sym);
    }

    #[test]
    fn divided_difference_matches_the_closed_form(e in monomial_strategy(), i in 1usize..N) {
        let got = div_diff(&MPoly::monomial(N, &e, RLaurent::one()), i).unwrap();
        let expect = MPoly::from_terms(
            N,
            common::div_diff_monomial(&e, i - 1).into_iter().map(|(f, s)| (f, RLaurent::from_int(s))),
        );
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn sign_flip_is_an_involution(f in poly()) {
        prop_assert_eq!(sign_flip(&sign_flip(&f)), f);
    }

    #[test]
    fn phi_minus_undoes_the_shift(f in poly()) {
        // Phi^- substitutes x_n - 1 where Phi substitutes x_n.
        let shifted = f.substitute(&[
            &MPoly::var(N, 1) + &MPoly::one(N),
            MPoly::var(N, 2),
            MPoly::var(N, 3),
        ]).unwrap();
        prop_assert_eq!(phi_minus(&shifted), phi(&f));
    }
}

#[test]
fn swap_examples() {
    assert_eq!(apply_si(&p("x1", 2), 1).unwrap(), p("x2", 2));
    assert_eq!(apply_si(&p("x1*x2", 2), 1).unwrap(), p("x1*x2", 2));
    assert!(matches!(apply_si(&p("x1", 2), 2), Err(Error::IndexOutOfRange { .. })));
    assert!(matches!(apply_si(&p("x1", 2), 0), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn divided_difference_examples() {
    assert_eq!(div_diff(&p("x1", 2), 1).unwrap(), p("-1", 2));
    assert_eq!(div_diff(&p("3*r + 1", 2), 1).unwrap(), MPoly::zero(2));
    assert_eq!(div_diff(&p("x1^2", 2), 1).unwrap(), p("-x1 - x2", 2));
    assert_eq!(div_diff(&p("x2^2*x3", 3), 2).unwrap(), p("-x2*x3", 3));
}

#[test]
fn cyclic_operator_examples() {
    assert_eq!(phi_plus(&MPoly::one(3)), MPoly::var(3, 3));
    for eta in compositions_up_to(4, 3) {
        let mono = MPoly::monomial(3, &eta, RLaurent::one());
        assert_eq!(phi(&mono), MPoly::monomial(3, &eta.phi(), RLaurent::one()));
    }
    assert_eq!(omega_tilde(&p("x1", 2)), p("x2 + 1", 2));
    assert_eq!(phi_minus(&p("x1", 2)), p("x2^2 - x2", 2));
}

#[test]
fn sign_flip_examples() {
    assert_eq!(sign_flip(&p("x1*x2", 2)), p("x1*x2", 2));
    assert_eq!(sign_flip(&p("x1 + r", 2)), p("-x1 + r", 2));
}

#[test]
fn recursions_generate_bar_monomials() {
    let cache = BarMonomialCache::new(N);
    for eta in compositions_up_to(4, N) {
        let bar = cache.get(&eta);
        assert_eq!(*cache.get(&eta.phi()), phi_plus(&bar), "{eta:?}");
        for i in 1..N {
            assert_eq!(*cache.get(&eta.s(i)), sigma_plus(&bar, i).unwrap(), "{eta:?} i={i}");
        }
    }
    let four = BarMonomialCache::new(4);
    assert_eq!(
        sigma_plus(&four.get(&comp("1,4,1,2")), 2).unwrap(),
        *four.get(&comp("1,1,4,2"))
    );
}

#[test]
fn dehomogenization_intertwines() {
    let cache = BarMonomialCache::new(N);
    for eta in compositions_up_to(5, N) {
        let mono = MPoly::monomial(N, &eta, RLaurent::one());
        let xi = dehomogenize_xi(&mono, &cache).unwrap();
        assert_eq!(dehomogenize_xi(&phi(&mono), &cache).unwrap(), phi_plus(&xi), "{eta:?}");
        for i in 1..N {
            let lhs = dehomogenize_xi(&apply_si(&mono, i).unwrap(), &cache).unwrap();
            assert_eq!(lhs, sigma_plus(&xi, i).unwrap(), "{eta:?} i={i}");
        }
    }
}

#[test]
fn dehomogenization_examples() {
    let cache = BarMonomialCache::new(2);
    assert_eq!(dehomogenize_xi(&MPoly::one(2), &cache).unwrap(), MPoly::one(2));
    assert_eq!(
        dehomogenize_xi(&p("x1^2 + x2^2", 2), &cache).unwrap(),
        p("x1^2 + x2^2 + (1+2*r)*(x1+x2) + r*(1+r)", 2)
    );
    assert!(matches!(dehomogenize_xi(&MPoly::one(3), &cache), Err(Error::DimensionMismatch(..))));
    let f = p("x1^2 - 2*x2", 2);
    assert_eq!(psi(&f, &cache).unwrap(), sign_flip(&dehomogenize_xi(&sign_flip(&f), &cache).unwrap()));
}

#[test]
fn dehomogenization_preserves_symmetry() {
    let cache = BarMonomialCache::new(N);
    for lam in partitions_up_to(5, N) {
        let m = rearrangements(&lam)
            .iter()
            .fold(MPoly::zero(N), |acc, e| &acc + &MPoly::monomial(N, e, RLaurent::one()));
        let xi = dehomogenize_xi(&m, &cache).unwrap();
        assert_eq!(xi, sym_barmon(&lam, &cache));
        for i in 1..N {
            assert_eq!(apply_si(&xi, i).unwrap(), xi, "{lam:?}");
        }
    }
}

#[test]
fn recursion_paths_replay_to_bar_monomials() {
    assert!(predecessor(&comp("0,0")).is_none());
    assert_eq!(predecessor(&comp("1,0")), Some((PathStep::Swap(1), comp("0,1"))));
    assert_eq!(predecessor(&comp("0,1")), Some((PathStep::Cyclic, comp("0,0"))));
    let tags: Vec<String> = barmon_path_tags(&comp("2,0")).iter().map(ToString::to_string).collect();
    assert_eq!(tags, ["Phi+", "sigma1+", "Phi+", "sigma1+"]);
    for eta in compositions_up_to(4, N) {
        let path = recursion_path(&eta);
        assert_eq!(path.iter().filter(|(s, _)| *s == PathStep::Cyclic).count(), eta.size() as usize);
        let tags = barmon_path_tags(&eta);
        assert_eq!(replay(&tags, &MPoly::one(N), None).unwrap(), barmon_recursion(&eta));
    }
}

#[test]
fn operator_tags() {
    let names: Vec<String> = [
        OperatorTag::Si(1),
        OperatorTag::DivDiff(2),
        OperatorTag::SigmaPlus(1),
        OperatorTag::SigmaMinus(1),
        OperatorTag::Phi,
        OperatorTag::PhiPlus,
        OperatorTag::PhiMinus,
        OperatorTag::OmegaTilde,
        OperatorTag::SignFlip,
        OperatorTag::Xi,
    ]
    .iter()
    .map(ToString::to_string)
    .collect();
    assert_eq!(names, ["s1", "d2", "sigma1+", "sigma1-", "Phi", "Phi+", "Phi-", "omega~", "S", "Xi"]);
    assert!(OperatorTag::Xi.apply(&MPoly::one(2), None).is_err());
    let cache = BarMonomialCache::new(2);
    assert_eq!(
        OperatorTag::Xi.apply(&p("x1*x2", 2), Some(&cache)).unwrap(),
        p("x1*x2", 2)
    );
}
