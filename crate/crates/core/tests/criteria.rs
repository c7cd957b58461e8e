use fanodist::chow::DistributionSpec;
use fanodist::criteria::*;
use fanodist::les::CohDim;
use fanodist::variety::{catalog, CATALOG_KEYS};
use num_rational::BigRational;
use proptest::prelude::*;
use serde_json::json;

fn all_cited_resolve(v: &Verdict) {
    assert!(!v.cited.is_empty(), "{v}");
    for id in &v.cited {
        assert!(anchor(id).is_some(), "{id} not in the registry");
    }
    if matches!(v.conclusion, Conclusion::Holds | Conclusion::Fails) {
        assert!(v.unresolved.is_empty(), "{v}");
    }
}

/// `h^1(I_Z(s)) = 1` at `s0` and zero elsewhere on `s0-8..=s0+8`.
fn single_profile(s0: i64) -> TwistTable {
    let mut t = TwistTable::from_fn(
        s0 - 8,
        s0 + 8,
        |p, _| if p == 1 { CohDim::zero() } else { CohDim::unknown() },
    );
    t.set(1, s0, CohDim::exact(1u32));
    t
}

fn q3_split(r: i64) -> CohEvidence {
    let q3 = catalog("Q3").unwrap().variety;
    let c1 = 3 - r;
    CohEvidence::split_tangent(&q3, &[0, c1], -12, 12).unwrap()
}

#[test]
fn q3_forward_on_split_tangent() {
    for r in [-1, 1, 3, 5] {
        let v = check_split_or_spinor_q3(&q3_split(r), r, CheckDirection::Forward).unwrap();
        all_cited_resolve(&v);
        assert_eq!(v.conclusion, Conclusion::Holds, "{v}");
        assert_eq!(v.findings["nonzero_h1_twist"], json!(r - 2));
    }
}

#[test]
fn q3_profile_with_h1_two_is_rejected() {
    let r = 3;
    let mut ideal = single_profile(r - 2);
    ideal.set(1, r - 2, CohDim::exact(2u32));
    let mut ev = q3_split(r);
    ev.ideal = Some(ideal);
    for dir in [CheckDirection::Forward, CheckDirection::Converse] {
        let v = check_split_or_spinor_q3(&ev, r, dir).unwrap();
        all_cited_resolve(&v);
        assert_eq!(v.conclusion, Conclusion::HypothesisNotMet, "{v}");
    }
}

#[test]
fn q3_converse_with_profile_and_h2_vanishings() {
    let r = 3;
    let mut tangent = TwistTable::from_fn(-4, 4, |_, _| CohDim::unknown());
    tangent.set(2, -2, CohDim::zero());
    tangent.set(2, -1, CohDim::zero());
    let ev = CohEvidence {
        tangent: Some(tangent),
        ideal: Some(single_profile(r - 2)),
        flags: EvidenceFlags {
            ab: Some(true),
            ..Default::default()
        },
        ..Default::default()
    };
    let v = check_split_or_spinor_q3(&ev, r, CheckDirection::Converse).unwrap();
    all_cited_resolve(&v);
    assert_eq!(v.conclusion, Conclusion::Holds, "{v}");
    assert!(v.cited.contains(&"axiom.acm-rank2-q3".to_string()));

    // drop one vanishing: undetermined, not refuted
    let mut weaker = ev.clone();
    weaker.tangent.as_mut().unwrap().set(2, -1, CohDim::unknown());
    let v = check_split_or_spinor_q3(&weaker, r, CheckDirection::Converse).unwrap();
    assert_eq!(v.conclusion, Conclusion::Inconclusive);
    assert!(!v.unresolved.is_empty());
}

#[test]
fn q3_converse_at_r_two_is_inconclusive() {
    let v = check_split_or_spinor_q3(&q3_split(2), 2, CheckDirection::Converse).unwrap();
    assert_eq!(v.conclusion, Conclusion::Inconclusive);
    all_cited_resolve(&v);
}

#[test]
fn acm_tangent_windows() {
    let cases = [("X4", (-6, 8)), ("X222", (-4, 4)), ("X3", (-6, 8)), ("X23", (-4, 4))];
    for (key, window) in cases {
        let e = catalog(key).unwrap();
        let ev = CohEvidence::split_tangent(&e.variety, &[0, 1], -10, 10).unwrap();
        let v = check_acm_tangent(&e, &ev, 1, CheckDirection::Forward).unwrap();
        all_cited_resolve(&v);
        assert_eq!(v.conclusion, Conclusion::Holds, "{v}");
        assert_eq!(v.findings["window"], json!([window.0, window.1]));
    }
    let q3 = catalog("Q3").unwrap();
    assert!(matches!(
        check_acm_tangent(&q3, &CohEvidence::default(), 1, CheckDirection::Forward),
        Err(CriteriaError::WrongIndex { .. })
    ));
}

#[test]
fn acm_tangent_window_is_too_small_for_the_double_quadric() {
    // h^1(TY(t)) = h^1(Omega^2_Y(t+1)) is certified to be 5 and 1 at t = 5, 6
    let y = catalog("Y").unwrap();
    let ev = CohEvidence::split_tangent(&y.variety, &[0, 0], -10, 10).unwrap();
    let v = check_acm_tangent(&y, &ev, 1, CheckDirection::Forward).unwrap();
    all_cited_resolve(&v);
    assert_eq!(v.conclusion, Conclusion::Fails, "{v}");
    assert_eq!(
        v.findings["nonvanishing_outside_window"],
        json!([{"t": 5, "h": "5"}, {"t": 6, "h": "1"}])
    );
}

/// Evidence meeting the converse's hypotheses: `h^1(I_Z(r+t))` zero outside
/// the window, `h^2(T_F(t)) = 0` on the declared range.
fn converse_evidence(r: i64, (lo, hi): (i64, i64)) -> CohEvidence {
    let ideal = TwistTable::from_fn(r + lo - 3, r + hi + 3, |p, s| {
        if p == 1 && (s - r < lo || s - r > hi) {
            CohDim::zero()
        } else {
            CohDim::unknown()
        }
    });
    let tangent = TwistTable::from_fn(
        lo - 3,
        hi + 3,
        |p, _| if p == 2 { CohDim::zero() } else { CohDim::unknown() },
    );
    CohEvidence {
        tangent: Some(tangent),
        ideal: Some(ideal),
        ..Default::default()
    }
}

#[test]
fn acm_tangent_converse_then_forward() {
    for key in ["X3", "X22", "X4", "X6", "X23", "X222", "Y"] {
        let e = catalog(key).unwrap();
        let window = if e.index == 2 { (-6, 8) } else { (-4, 4) };
        let r = 1;
        let mut ev = converse_evidence(r, window);
        let v = check_acm_tangent(&e, &ev, r, CheckDirection::Converse).unwrap();
        all_cited_resolve(&v);
        assert_eq!(v.conclusion, Conclusion::Holds, "{key}: {v}");
        ev.flags.acm = Some(true);
        let fwd = check_acm_tangent(&e, &ev, r, CheckDirection::Forward).unwrap();
        if key == "Y" {
            // the supplied h^1(I_Z(r+6)) = 0 clashes with an aCM T_F on Y
            assert_eq!(fwd.conclusion, Conclusion::HypothesisNotMet, "{fwd}");
        } else {
            assert_eq!(fwd.conclusion, Conclusion::Holds, "{key}: {fwd}");
            assert_eq!(fwd.findings["window"], v.findings["window"]);
        }
    }
}

#[test]
fn acm_tangent_converse_rejects_nonzero_outside() {
    let e = catalog("X4").unwrap();
    let r = 0;
    let mut ev = converse_evidence(r, (-6, 8));
    ev.ideal.as_mut().unwrap().set(1, 9, CohDim::nonzero());
    let v = check_acm_tangent(&e, &ev, r, CheckDirection::Converse).unwrap();
    assert_eq!(v.conclusion, Conclusion::HypothesisNotMet);
}

#[test]
fn conormal_examples() {
    let x22 = catalog("X22").unwrap();
    let ev = CohEvidence {
        flags: EvidenceFlags {
            acm: Some(true),
            ..Default::default()
        },
        ..Default::default()
    };
    let v = check_conormal_acm(&x22, &ev, 2, CheckDirection::Forward).unwrap();
    all_cited_resolve(&v);
    assert_eq!(v.conclusion, Conclusion::Holds, "{v}");
    assert_eq!(v.findings["nonzero_h1_twist"], json!(2));

    let q3 = catalog("Q3").unwrap();
    let r = 1;
    let conormal = TwistTable::from_fn(-3, 3, |p, _| if p == 2 { CohDim::zero() } else { CohDim::unknown() });
    let ev = CohEvidence {
        conormal: Some(conormal),
        ideal: Some(single_profile(r)),
        ..Default::default()
    };
    let v = check_conormal_acm(&q3, &ev, r, CheckDirection::Converse).unwrap();
    all_cited_resolve(&v);
    assert_eq!(v.conclusion, Conclusion::Holds, "{v}");

    let p3 = catalog("P3").unwrap();
    let v = check_conormal_acm(&p3, &ev, r, CheckDirection::Converse).unwrap();
    all_cited_resolve(&v);
    assert_eq!(v.conclusion, Conclusion::HypothesisNotMet);
    assert!(v.cited.contains(&"prior.pn-conormal".to_string()));
}

#[test]
fn tx_twist_vanishing_per_variety() {
    let expect: [(&str, Vec<i64>, Vec<i64>); 4] = [
        ("P3", vec![], vec![4]),
        ("Q3", vec![2], vec![3]),
        ("X4", vec![], vec![2]),
        ("X222", vec![], vec![1]),
    ];
    for (key, _, h2) in &expect {
        let rep = tx_twist_vanishing(&catalog(key).unwrap()).unwrap();
        assert_eq!(&rep.h2_nonvanishing, h2, "{key}");
    }
    let p3 = tx_twist_vanishing(&catalog("P3").unwrap()).unwrap();
    assert!(p3.h1_nonvanishing.is_empty());
    assert_eq!(p3.h1_zero_for_r_above, None);
    let q3 = tx_twist_vanishing(&catalog("Q3").unwrap()).unwrap();
    assert_eq!(q3.h1_nonvanishing, vec![2]);
    for key in CATALOG_KEYS {
        let e = catalog(key).unwrap();
        let rep = tx_twist_vanishing(&e).unwrap();
        assert!(rep.uniform_contained, "{key}: {rep:?}");
        let bound = match e.index {
            2 => 6,
            1 => 4,
            _ => 6,
        };
        assert!(rep.h1_nonvanishing.iter().all(|&r| r <= bound), "{key}: {rep:?}");
        assert_eq!(rep.h2_zero_except_r, Some(e.index), "{key}");
    }
}

#[test]
fn connectedness_examples() {
    let x3 = catalog("X3").unwrap();
    let zero = ConnectednessInput {
        h2_tf_minus_r: H2Evidence::Dim(CohDim::zero()),
        c_nonempty: true,
        z_connected_curve: false,
    };
    let v = check_connectedness(&x3, &zero, 7, CheckDirection::Forward).unwrap();
    all_cited_resolve(&v);
    assert_eq!(v.conclusion, Conclusion::Holds, "{v}");
    assert_eq!(v.findings["z_connected"], json!(true));

    let split = ConnectednessInput {
        h2_tf_minus_r: H2Evidence::SplitTangent(vec![-1, -2]),
        ..zero.clone()
    };
    let v = check_connectedness(&x3, &split, 7, CheckDirection::Forward).unwrap();
    assert_eq!(v.conclusion, Conclusion::Holds);
    assert!(v.cited.contains(&"cor.split-connected".to_string()));

    let ample = ConnectednessInput {
        h2_tf_minus_r: H2Evidence::AmpleDual,
        ..zero.clone()
    };
    let v = check_connectedness(&x3, &ample, 8, CheckDirection::Forward).unwrap();
    assert_eq!(v.conclusion, Conclusion::Holds);
    assert!(v.cited.contains(&"axiom.griffiths-vanishing".to_string()));

    let empty = ConnectednessInput {
        c_nonempty: false,
        ..zero.clone()
    };
    assert_eq!(
        check_connectedness(&x3, &empty, 7, CheckDirection::Forward)
            .unwrap()
            .conclusion,
        Conclusion::HypothesisNotMet
    );

    let conn = ConnectednessInput {
        z_connected_curve: true,
        ..zero
    };
    let v = check_connectedness(&x3, &conn, 2, CheckDirection::Converse).unwrap();
    assert_eq!(v.conclusion, Conclusion::HypothesisNotMet);
    let v = check_connectedness(&x3, &conn, 5, CheckDirection::Converse).unwrap();
    all_cited_resolve(&v);
    assert_eq!(v.conclusion, Conclusion::Holds, "{v}");
}

#[test]
fn stability_examples() {
    let q3 = catalog("Q3").unwrap();
    let spec = DistributionSpec::new(&q3.variety, 0, BigRational::from_integer(4.into()), 0, None).unwrap();
    let v = stability_dichotomy(&q3, &spec).unwrap();
    all_cited_resolve(&v);
    assert_eq!(v.conclusion, Conclusion::Holds, "{v}");
    assert_eq!(v.findings["genus_pairs"], json!([["-5", "-4"], ["-2", "-7"]]));

    let x4 = catalog("X4").unwrap();
    let spec = DistributionSpec::new(&x4.variety, 0, BigRational::from_integer(1.into()), 0, None).unwrap();
    let v = stability_dichotomy(&x4, &spec).unwrap();
    assert_eq!(v.conclusion, Conclusion::Holds);
    assert!(v.cited.contains(&"axiom.isolated-sections".to_string()));

    let spec = DistributionSpec::new(&q3.variety, 1, BigRational::from_integer(0.into()), 0, None).unwrap();
    assert_eq!(
        stability_dichotomy(&q3, &spec).unwrap().conclusion,
        Conclusion::HypothesisNotMet
    );
}

#[test]
fn evidence_and_verdicts_roundtrip_json() {
    let mut ev = q3_split(3);
    ev.ideal = Some(single_profile(1));
    ev.flags.only_nonzero_h1_at = Some(1);
    let s = serde_json::to_string(&ev).unwrap();
    assert_eq!(serde_json::from_str::<CohEvidence>(&s).unwrap(), ev);
    let v = check_split_or_spinor_q3(&ev, 3, CheckDirection::Forward).unwrap();
    let s = serde_json::to_string(&v).unwrap();
    assert_eq!(
        serde_json::to_string(&serde_json::from_str::<Verdict>(&s).unwrap()).unwrap(),
        s
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn split_tangent_on_q3_always_holds(a in -4i64..4, r in -6i64..8) {
        let q3 = catalog("Q3").unwrap().variety;
        let b = 3 - r - a;
        let ev = CohEvidence::split_tangent(&q3, &[a, b], -8, 8).unwrap();
        let v = check_split_or_spinor_q3(&ev, r, CheckDirection::Forward).unwrap();
        prop_assert_eq!(v.conclusion, Conclusion::Holds);
        prop_assert_eq!(&v.findings["nonzero_h1_twist"], &json!(r - 2));
    }
}
