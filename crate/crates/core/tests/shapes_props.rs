mod common;

use std::collections::HashSet;

use barmon::exactalg::parse_laurent;
use barmon::shapes::{
    arm, c_lambda, compositions_of_size, compositions_up_to, critical_box, d_eta, eta_star, leg, partitions_up_to,
    rearrangements, rho_point, CriticalBox,
};
use barmon::{Composition, Error, Partition, RLaurent};
use common::comp;
use proptest::prelude::*;

fn swap_index(k: usize, i: usize) -> usize {
    if k == i {
        i + 1
    } else if k == i + 1 {
        i
    } else {
        k
    }
}

fn all_nonzero(max_norm: u32, n: usize) -> Vec<Composition> {
    compositions_up_to(max_norm, n).into_iter().filter(|c| !c.is_zero()).collect()
}

#[test]
fn critical_box_examples() {
    assert_eq!(critical_box(&comp("1,0,4")).unwrap(), CriticalBox { k: 3, m: 4, l: 0 });
    assert_eq!(critical_box(&comp("3,0,3")).unwrap(), CriticalBox { k: 1, m: 3, l: 1 });
    assert_eq!(critical_box(&comp("1,2,4,1")).unwrap(), CriticalBox { k: 3, m: 4, l: 0 });
    assert_eq!(critical_box(&comp("0,0")), Err(Error::ZeroComposition));
}

#[test]
fn critical_leg_is_the_leg_of_the_critical_box() {
    for n in 1..=4 {
        for eta in all_nonzero(6, n) {
            let cb = critical_box(&eta).unwrap();
            assert_eq!(cb.m, *eta.iter().max().unwrap());
            assert_eq!(eta.iter().position(|&p| p == cb.m), Some(cb.k - 1));
            assert_eq!(cb.l, leg(&eta, cb.k, cb.m as usize).unwrap(), "{eta:?}");
        }
    }
}

#[test]
fn eta_star_examples() {
    assert_eq!(eta_star(&comp("1,0,4")).unwrap(), comp("1,0,3"));
    assert_eq!(eta_star(&comp("2,0")).unwrap(), comp("1,0"));
    assert_eq!(eta_star(&comp("3,0,3")).unwrap(), comp("2,0,3"));
    assert!(eta_star(&comp("0,0,0")).is_err());
}

#[test]
fn leg_and_arm_examples() {
    assert_eq!(leg(&comp("1,0,4"), 3, 4).unwrap(), 0);
    assert_eq!(leg(&comp("2,0"), 1, 1).unwrap(), 0);
    assert_eq!(leg(&comp("1,2,4,1"), 3, 1).unwrap(), 3);
    assert_eq!(arm(&comp("1,2,4,1"), 3, 1).unwrap(), 3);
    assert!(matches!(leg(&comp("1,0,4"), 2, 1), Err(Error::BoxOutsideDiagram { .. })));
    assert!(matches!(leg(&comp("1,0,4"), 4, 1), Err(Error::BoxOutsideDiagram { .. })));
    assert!(matches!(arm(&comp("1,0,4"), 1, 2), Err(Error::BoxOutsideDiagram { .. })));
}

#[test]
#[allow(clippy::int_plus_one)]
fn leg_matches_a_direct_count() {
    for eta in compositions_up_to(6, 4) {
        for i in 1..=4 {
            for j in 1..=eta.part(i) {
                let ei = eta.part(i);
                let mut count = 0;
                for (t, &p) in eta.iter().enumerate() {
                    let row = t + 1;
                    if (row > i && j <= p && p <= ei) || (row < i && j <= p + 1 && p + 1 <= ei) {
                        count += 1;
                    }
                }
                assert_eq!(leg(&eta, i, j as usize).unwrap(), count, "{eta:?} ({i},{j})");
            }
        }
    }
}

#[test]
fn rho_point_examples() {
    let lin = RLaurent::linear;
    assert_eq!(rho_point(&comp("1,0")), vec![lin(1, 1), lin(0, 0)]);
    assert_eq!(rho_point(&comp("0,1")), vec![lin(0, 0), lin(1, 1)]);
    assert_eq!(rho_point(&comp("1,1")), vec![lin(1, 1), lin(1, 0)]);
    assert_eq!(rho_point(&comp("3,4")), vec![lin(3, 0), lin(4, 1)]);
}

#[test]
fn rho_point_agrees_with_a_stable_sort() {
    let r = common::q(3, 7);
    for eta in compositions_up_to(5, 3) {
        let sym: Vec<_> = rho_point(&eta).iter().map(|c| c.eval(&r).unwrap()).collect();
        assert_eq!(sym, common::rho_point_numeric(&eta, &r), "{eta:?}");
    }
}

#[test]
fn rho_point_is_injective() {
    for n in 1..=4 {
        let all = compositions_up_to(6, n);
        let points: HashSet<Vec<RLaurent>> = all.iter().map(rho_point).collect();
        assert_eq!(points.len(), all.len());
    }
}

#[test]
fn normalization_constants() {
    let p = |s: &str| Partition::new(comp(s)).unwrap();
    let l = |s: &str| parse_laurent(s).unwrap();
    assert_eq!(c_lambda(&p("0,0,0")), RLaurent::one());
    assert_eq!(c_lambda(&p("1")), RLaurent::one());
    assert_eq!(c_lambda(&p("2,0")), l("r^-1 + 1"));
    assert_eq!(c_lambda(&p("1,1")), l("2"));
    assert_eq!(d_eta(&comp("0,0")), RLaurent::one());
    assert_eq!(d_eta(&comp("0,2")), l("(2/r+2)*(1/r+1)"));
    assert_eq!(d_eta(&comp("2,0,1")), l("(2/r+2)*(1/r+1)*(1/r+2)"));
}

#[test]
fn c_lambda_is_the_hook_product() {
    for lam in partitions_up_to(6, 3) {
        let mut expect = RLaurent::one();
        for i in 1..=3 {
            for j in 1..=lam.part(i) {
                let a = (lam.part(i) - j) as i64;
                let legs = (i + 1..=3).filter(|&t| lam.part(t) >= j).count() as i64;
                expect = expect * RLaurent::from_terms([(-1, common::q(a, 1)), (0, common::q(legs + 1, 1))]);
            }
        }
        assert_eq!(c_lambda(&lam), expect, "{lam:?}");
    }
}

#[test]
fn partitions_are_validated() {
    assert!(matches!("1,2".parse::<Partition>(), Err(Error::NotAPartition(_))));
    assert!("2,1,1".parse::<Partition>().is_ok());
    assert!(Partition::try_from(comp("0,3")).is_err());
}

#[test]
fn composition_text_forms() {
    let c = comp("(1, 0, 4)");
    assert_eq!(c.to_string(), "1,0,4");
    assert_eq!(format!("{c:?}"), "(1,0,4)");
    assert_eq!(c.size(), 5);
    assert!("1,-2".parse::<Composition>().is_err());
    assert!("a".parse::<Composition>().is_err());
    assert_eq!(serde_json::to_string(&c).unwrap(), "[1,0,4]");
}

#[test]
fn rearrangement_examples() {
    let p = |s: &str| Partition::new(comp(s)).unwrap();
    assert_eq!(rearrangements(&p("1,1")), vec![comp("1,1")]);
    assert_eq!(rearrangements(&p("2,0")), vec![comp("2,0"), comp("0,2")]);
    let six = rearrangements(&p("2,1,0"));
    assert_eq!(six.len(), 6);
    assert_eq!(six.iter().collect::<HashSet<_>>().len(), 6);
    assert!(six.iter().all(|c| c.sorted_decreasing() == comp("2,1,0")));
}

#[test]
fn enumerations_are_complete() {
    // Number of compositions of d into n parts is C(d+n-1, n-1).
    assert_eq!(compositions_of_size(4, 3).len(), 15);
    assert_eq!(compositions_up_to(3, 2).len(), 10);
    assert_eq!(compositions_up_to(0, 3), vec![Composition::zeros(3)]);
    assert_eq!(partitions_up_to(4, 3).len(), 1 + 1 + 2 + 3 + 4);
}

#[test]
fn critical_box_is_equivariant() {
    for n in 2..=4 {
        for eta in all_nonzero(6, n) {
            let cb = critical_box(&eta).unwrap();
            let cphi = critical_box(&eta.phi()).unwrap();
            if cb.k > 1 {
                assert_eq!((cphi.k, cphi.m), (cb.k - 1, cb.m), "{eta:?}");
            } else {
                assert_eq!((cphi.k, cphi.m), (n, cb.m + 1), "{eta:?}");
            }
            for i in 1..n {
                let s = eta.s(i);
                if s != eta {
                    assert_eq!(critical_box(&s).unwrap().k, swap_index(cb.k, i), "{eta:?} i={i}");
                }
            }
        }
    }
}

#[test]
fn critical_leg_changes_only_in_two_cases() {
    for n in 2..=4 {
        for eta in all_nonzero(6, n) {
            let cb = critical_box(&eta).unwrap();
            assert_eq!(critical_box(&eta.phi()).unwrap().l, cb.l);
            for i in 1..n {
                let (a, b) = (eta.part(i), eta.part(i + 1));
                let expect = if cb.k == i && b + 1 == a {
                    cb.l + 1
                } else if cb.k == i + 1 && a + 1 == b {
                    cb.l - 1
                } else {
                    cb.l
                };
                assert_eq!(critical_box(&eta.s(i)).unwrap().l, expect, "{eta:?} i={i}");
            }
        }
    }
}

#[test]
fn star_commutes_with_the_generators() {
    for n in 2..=4 {
        for eta in all_nonzero(6, n) {
            let star = eta.star().unwrap();
            assert_eq!(eta.phi().star().unwrap(), star.phi());
            for i in 1..n {
                if eta.s(i) != eta {
                    assert_eq!(eta.s(i).star().unwrap(), star.s(i), "{eta:?} i={i}");
                }
            }
        }
    }
}

fn composition_strategy() -> impl Strategy<Value = Composition> {
    prop::collection::vec(0u32..6, 1..6).prop_map(Composition::new)
}

proptest! {
    #[test]
    fn phi_has_an_inverse(eta in composition_strategy()) {
        prop_assert_eq!(eta.phi().phi_inverse(), Some(eta.clone()));
        prop_assert_eq!(eta.phi().size(), eta.size() + 1);
    }

    #[test]
    fn swaps_are_involutions(eta in composition_strategy()) {
        for i in 1..eta.n() {
            prop_assert_eq!(eta.s(i).s(i), eta.clone());
        }
    }

    #[test]
    fn text_round_trip(eta in composition_strategy()) {
        prop_assert_eq!(eta.to_string().parse::<Composition>().unwrap(), eta.clone());
    }
}
