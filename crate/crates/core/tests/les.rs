use fanodist::bott::bott_pn;
use fanodist::les::{propagate_les, propagate_ses, shared_engine, AxiomSet, ChainSolver, CohDim};
use fanodist::reproduce::random_les;
use fanodist::variety::{catalog, WeightedCI, CATALOG_KEYS};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p3() -> WeightedCI {
    catalog("P3").unwrap().variety
}

/// `h^p(O(t))^{⊕m}` from the structure sheaf alone.
fn line_sum(x: &WeightedCI, m: u32, t: i64) -> Vec<CohDim> {
    (0..=3)
        .map(|p| CohDim::exact(x.h_structure(p, t).unwrap() * m))
        .collect()
}

fn settle(a: &mut [CohDim], b: &mut [CohDim], c: &mut [CohDim]) {
    while propagate_ses(a, b, c, 3).unwrap() {}
}

/// `Ω^1(t)` on `P^3` from the Koszul pieces of the Euler sequence for
/// `t >= 1`, and from the dual Euler sequence and duality for `t <= 0`.
fn omega1_p3(t: i64) -> Vec<CohDim> {
    let x = p3();
    let unknown = || vec![CohDim::unknown(); 4];
    if t >= 1 {
        // 0 -> O(t-4) -> O(t-3)^4 -> Ω²(t) -> 0
        let mut omega2 = unknown();
        settle(&mut line_sum(&x, 1, t - 4), &mut line_sum(&x, 4, t - 3), &mut omega2);
        // 0 -> Ω²(t) -> O(t-2)^6 -> Ω¹(t) -> 0
        let mut omega1 = unknown();
        settle(&mut omega2, &mut line_sum(&x, 6, t - 2), &mut omega1);
        omega1
    } else {
        // 0 -> O(s) -> O(s+1)^4 -> T(s) -> 0 with s = -t-4, and h^p(Ω¹(t)) = h^{3-p}(T(s))
        let s = -t - 4;
        let mut tangent = unknown();
        settle(&mut line_sum(&x, 1, s), &mut line_sum(&x, 4, s + 1), &mut tangent);
        tangent.into_iter().rev().collect()
    }
}

#[test]
fn euler_sequence_reconstructs_bott_on_p3() {
    for t in -10..=10 {
        let got = omega1_p3(t);
        for p in 0..=3u32 {
            let want = bott_pn(3, p, 1, t);
            assert_eq!(got[p as usize].exact_value(), Some(&want), "h^{p}(Omega^1({t}))");
        }
    }
}

#[test]
fn les_fuzz_keeps_the_truth() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..1000 {
        let (truth, mut dims) = random_les(&mut rng);
        propagate_les(&mut dims).unwrap_or_else(|e| panic!("case {case}: {e}"));
        for (j, (&t, d)) in truth.iter().zip(&dims).enumerate() {
            assert!(d.contains(&BigUint::from(t)), "case {case}, slot {j}: {d} excludes {t}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn propagation_is_monotone_and_idempotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, start) = random_les(&mut rng);
        let mut once = start.clone();
        propagate_les(&mut once).unwrap();
        for (a, b) in once.iter().zip(&start) {
            prop_assert!(a.is_at_least_as_precise_as(b));
        }
        let mut twice = once.clone();
        while propagate_les(&mut twice).unwrap() {}
        let mut again = twice.clone();
        prop_assert!(!propagate_les(&mut again).unwrap());
        prop_assert_eq!(again, twice);
    }
}

#[test]
fn p3_solver_agrees_with_bott() {
    let solver = ChainSolver::for_entry(&catalog("P3").unwrap(), None, AxiomSet::formulas_only()).unwrap();
    for q in 0..=3u32 {
        for p in 0..=3u32 {
            for t in -20..=20 {
                let d = solver.h(p, q, t);
                assert!(d.contains(&bott_pn(3, p, q, t)), "h^{p}(Omega^{q}({t})) = {d}");
            }
        }
    }
}

#[test]
fn rerun_is_a_fixpoint() {
    for key in ["Q3", "X22", "Y"] {
        let mut solver = ChainSolver::for_entry(&catalog(key).unwrap(), None, AxiomSet::all()).unwrap();
        let before = solver.snapshot();
        assert!(!solver.rerun().unwrap(), "{key}");
        assert_eq!(solver.snapshot(), before, "{key}");
    }
}

#[test]
fn catalog_has_no_contradictions() {
    for key in CATALOG_KEYS {
        let engine = shared_engine(&catalog(key).unwrap()).unwrap();
        for q in 1..=2u32 {
            for p in 0..=3u32 {
                for t in -25..=25 {
                    engine.h(p, q, t).unwrap_or_else(|e| panic!("{key}: {e}"));
                }
            }
        }
    }
}
