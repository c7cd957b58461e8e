use fanodist::les::{
    omega_table, vanishing_threshold, AxiomSet, BoundaryStatus, ChainSolver, CohDim, Direction, EngineError,
};
use fanodist::variety::{catalog, CATALOG_KEYS};
use num_bigint::BigUint;

fn solver(key: &str, chain: Option<&str>) -> ChainSolver {
    ChainSolver::for_entry(&catalog(key).unwrap(), chain, AxiomSet::all()).unwrap()
}

#[test]
fn omega_table_examples() {
    let x3 = catalog("X3").unwrap();
    let tab = omega_table(&x3, None, 1, 2, AxiomSet::all()).unwrap();
    assert!(tab.dim(2, &fanodist::les::SheafExpr::omega(&x3.variety, 1, 2)).is_zero());
    assert!(solver("X6", None).h(1, 2, 11).is_zero());
    for key in CATALOG_KEYS {
        let e = catalog(key).unwrap();
        for chain in &e.chains {
            let s = solver(key, Some(&chain.name));
            assert_eq!(s.h(1, 1, 0).exact_value(), Some(&BigUint::from(1u32)), "{key} {}", chain.name);
        }
    }
}

#[test]
fn out_of_box_twists_are_rejected() {
    let q3 = catalog("Q3").unwrap();
    assert!(matches!(
        omega_table(&q3, None, 1, 65, AxiomSet::all()),
        Err(EngineError::OutOfRange(_))
    ));
}

#[test]
fn thresholds_on_small_index() {
    let r = vanishing_threshold(&solver("X22", None), 1, 2, Direction::Above, 20).unwrap();
    assert_eq!(r.threshold, 2);
    assert_eq!(r.certified_range, (3, 22));
    assert_eq!(r.boundary_status, BoundaryStatus::CertifiedNonzero);
    let v = serde_json::to_value(&r).unwrap();
    for k in ["variety", "chain", "p", "q", "direction", "T", "boundary_status", "certified_range"] {
        assert!(v.get(k).is_some(), "{k} missing from {v}");
    }
}

#[test]
fn thresholds_on_index_one_are_the_sharp_computed_values() {
    // printed as t > 3; vanishing already holds for t > 1
    let r = vanishing_threshold(&solver("X222", None), 2, 1, Direction::Above, 20).unwrap();
    assert_eq!(r.threshold, 1);
    assert_eq!(r.boundary_status, BoundaryStatus::CertifiedNonzero);
    // printed as t > 3; h^1(Omega^2_Y(t)) is certified nonzero up to t = 7
    let s = solver("Y", Some("quartic"));
    let r = vanishing_threshold(&s, 1, 2, Direction::Above, 20).unwrap();
    assert_eq!(r.threshold, 7);
    assert_eq!(r.boundary_value, CohDim::exact(1u32));
    assert!((4..=7).all(|t| s.h(1, 2, t).is_nonzero()));
}

#[test]
fn both_chains_of_the_two_three_complete_intersection() {
    for (chain, t21, t12) in [("quadric", 2, 5), ("cubic", 2, 5)] {
        let s = solver("X23", Some(chain));
        assert_eq!(vanishing_threshold(&s, 2, 1, Direction::Above, 20).unwrap().threshold, t21, "{chain}");
        assert_eq!(vanishing_threshold(&s, 1, 2, Direction::Above, 20).unwrap().threshold, t12, "{chain}");
    }
}

#[test]
fn chains_agree_where_both_certify() {
    for key in ["X23", "Y"] {
        let e = catalog(key).unwrap();
        let a = solver(key, Some(&e.chains[0].name));
        let b = solver(key, Some(&e.chains[1].name));
        for q in 0..=3 {
            for p in 0..=3 {
                for t in -20..=20 {
                    assert!(
                        a.h(p, q, t).meet(&b.h(p, q, t)).is_some(),
                        "{key}: h^{p}(Omega^{q}({t})) {} vs {}",
                        a.h(p, q, t),
                        b.h(p, q, t)
                    );
                }
            }
        }
    }
}
