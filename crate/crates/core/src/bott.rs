//! Cohomology of twisted differentials on `P^n`, on smooth quadrics, and of
//! the reflexive differentials `Ω̄^q(t)` on weighted projective spaces.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact_arith::{binomial, to_natural, SeriesSpec};
use crate::les::CohDim;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BottRule {
    ProjectiveSpace,
    Quadric,
    QuadricSpecial,
    Weighted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BottResult {
    pub value: CohDim,
    pub rule: BottRule,
}

/// `h^p(P^n, Ω^q(t))`.
pub fn bott_pn(n: u32, p: u32, q: u32, t: i64) -> BigUint {
    assert!(p <= n && q <= n, "bott_pn: p, q must lie in 0..=n");
    let (n, p, q) = (n as i64, p as i64, q as i64);
    if p == 0 && t > q {
        binomial((t + n - q) as u64, t) * binomial((t - 1) as u64, q)
    } else if t == 0 && p == q {
        BigUint::one()
    } else if p == n && t < q - n {
        binomial((q - t) as u64, -t) * binomial((-t - 1) as u64, n - q)
    } else {
        BigUint::zero()
    }
}

/// Vanishing pattern of `h^p(Q^n, Ω^q(k))` on a smooth quadric. Only zero or
/// nonzero is known; no dimension is ever claimed.
pub fn quadric_pattern(n: u32, p: u32, q: u32, k: i64) -> CohDim {
    assert!(n >= 2 && p <= n && q <= n, "quadric_pattern: n >= 2 and p, q in 0..=n");
    let (n, p, q) = (n as i64, p as i64, q as i64);
    let nonzero_iff = |cond: bool| if cond { CohDim::nonzero() } else { CohDim::zero() };
    if k == 0 {
        nonzero_iff(p == q)
    } else if k == 2 * q - n {
        nonzero_iff(p == n - q)
    } else if k > q {
        nonzero_iff(p == 0)
    } else if k < q - n {
        nonzero_iff(p == n)
    } else {
        CohDim::zero()
    }
}

/// Known values on `Q^3` beyond the vanishing pattern:
/// `h^1(Ω^2(1)) = h^1(TQ^3(-2)) = 1` and its Serre dual `h^2(Ω^1(-1)) = 1`.
pub fn quadric_special(n: u32, p: u32, q: u32, k: i64) -> Option<BigUint> {
    match (n, p, q, k) {
        (3, 1, 2, 1) | (3, 2, 1, -1) => Some(BigUint::one()),
        _ => None,
    }
}

fn subset_sums(weights: &[u64]) -> Vec<Vec<u64>> {
    // by_size[i] lists a_J over all J with #J = i (with repetition)
    let mut by_size = vec![Vec::new(); weights.len() + 1];
    for mask in 0u64..(1 << weights.len()) {
        let sum = weights
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &a)| a)
            .sum();
        by_size[mask.count_ones() as usize].push(sum);
    }
    by_size
}

/// `h^0(P(a), Ω̄^q(t))` by the alternating sum over subsets of the weights.
pub fn dolgachev_h0(weights: &[u64], q: u32, t: i64) -> BigUint {
    if q as usize > weights.len() {
        return BigUint::zero();
    }
    let ring = SeriesSpec::new(Vec::new(), weights.to_vec());
    if q == 0 {
        return to_natural(&ring.coeff(t)).expect("polynomial ring counts are nonnegative");
    }
    if t <= q as i64 {
        return BigUint::zero();
    }
    let coeffs = ring.coeffs_upto(t);
    let s = |u: i64| -> BigInt {
        if u < 0 {
            BigInt::zero()
        } else {
            coeffs[u as usize].clone()
        }
    };
    let sums = subset_sums(weights);
    let mut acc = BigInt::zero();
    for (i, row) in sums.iter().enumerate().take(q as usize + 1) {
        let part: BigInt = row.iter().map(|&a| s(t - a as i64)).sum();
        if (i + q as usize).is_multiple_of(2) {
            acc += part;
        } else {
            acc -= part;
        }
    }
    to_natural(&acc).expect("Koszul complex is exact in positive degree")
}

/// `h^p(P(a), Ω̄^q(t))` for `p = 0..=N`; the top row comes from Serre duality
/// `h^N(Ω̄^q(t)) = h^0(Ω̄^{N-q}(-t))`.
pub fn dolgachev_table(weights: &[u64], q: u32, t: i64) -> Vec<CohDim> {
    assert!(!weights.is_empty());
    let big_n = (weights.len() - 1) as u32;
    (0..=big_n)
        .map(|p| {
            if q > big_n {
                CohDim::zero()
            } else if p == 0 {
                CohDim::exact(dolgachev_h0(weights, q, t))
            } else if p == big_n {
                CohDim::exact(dolgachev_h0(weights, big_n - q, -t))
            } else if p == q {
                CohDim::exact(u32::from(t == 0))
            } else {
                CohDim::zero()
            }
        })
        .collect()
}

/// Euler characteristic oracle for `Ω^1_{P^3}(t)` from the Euler sequence
/// `0 → Ω^1(t) → O(t-1)^4 → O(t) → 0`.
pub fn euler_chi_omega1_p3(t: i64) -> BigInt {
    let chi_o = |s: i64| -> BigInt {
        // χ(O_{P^3}(s)) = C(s+3, 3) as a polynomial in s
        BigInt::from((s + 3) * (s + 2) * (s + 1)) / 6
    };
    chi_o(t - 1) * 4 - chi_o(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bott_pn_examples() {
        assert_eq!(bott_pn(3, 0, 1, 2), BigUint::from(6u32));
        assert_eq!(bott_pn(3, 2, 2, 0), BigUint::one());
        assert_eq!(bott_pn(3, 3, 1, -5), BigUint::from(36u32));
        assert_eq!(bott_pn(3, 1, 1, 1), BigUint::zero());
    }

    #[test]
    fn bott_pn_serre_duality() {
        for n in 1..=5 {
            for p in 0..=n {
                for q in 0..=n {
                    for t in -10..=10 {
                        assert_eq!(bott_pn(n, p, q, t), bott_pn(n, n - p, n - q, -t));
                    }
                }
            }
        }
    }

    #[test]
    fn euler_characteristic_on_p3() {
        for t in -10..=10 {
            let chi: BigInt = (0..=3)
                .map(|p| {
                    let v = BigInt::from(bott_pn(3, p, 1, t));
                    if p % 2 == 0 {
                        v
                    } else {
                        -v
                    }
                })
                .sum();
            assert_eq!(chi, euler_chi_omega1_p3(t), "t={t}");
        }
    }

    #[test]
    fn quadric_pattern_examples() {
        assert_eq!(quadric_pattern(3, 2, 2, 1), CohDim::zero());
        assert_eq!(quadric_pattern(3, 1, 1, 0), CohDim::nonzero());
        assert_eq!(quadric_pattern(3, 1, 2, 1), CohDim::nonzero());
        assert_eq!(quadric_pattern(3, 0, 2, 1), CohDim::zero());
    }

    #[test]
    fn quadric_pattern_duality() {
        for n in 2..=4u32 {
            for p in 0..=n {
                for q in 0..=n {
                    for t in -8..=8 {
                        assert_eq!(
                            quadric_pattern(n, p, q, t),
                            quadric_pattern(n, n - p, n - q, -t),
                            "n={n} p={p} q={q} t={t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn quadric_specials_agree_with_pattern() {
        for (p, q, k) in [(1, 2, 1), (2, 1, -1)] {
            assert!(quadric_pattern(3, p, q, k).is_nonzero());
            assert_eq!(quadric_special(3, p, q, k), Some(BigUint::one()));
        }
    }

    #[test]
    fn dolgachev_examples() {
        assert_eq!(dolgachev_h0(&[1, 1, 1, 1, 2], 1, 1), BigUint::zero());
        assert_eq!(dolgachev_h0(&[1, 1, 1, 1], 1, 2), BigUint::from(6u32));
        assert_eq!(dolgachev_h0(&[1, 1, 1, 2, 3], 2, 2), BigUint::zero());
        let row = dolgachev_table(&[1, 1, 1, 1, 2], 1, 3);
        assert_eq!(row[2], CohDim::zero());
        assert_eq!(dolgachev_table(&[1, 1, 1, 1, 2], 1, 0)[1], CohDim::exact(1u32));
        assert_eq!(dolgachev_table(&[1, 1, 1, 1], 1, -5)[3], CohDim::exact(36u32));
    }

    #[test]
    fn dolgachev_matches_bott_on_unweighted_spaces() {
        for n in 1..=5u32 {
            let w = vec![1u64; n as usize + 1];
            for q in 0..=n {
                for t in -10..=10 {
                    let row = dolgachev_table(&w, q, t);
                    for p in 0..=n {
                        assert_eq!(
                            row[p as usize],
                            CohDim::exact(bott_pn(n, p, q, t)),
                            "n={n} p={p} q={q} t={t}"
                        );
                    }
                }
            }
        }
    }
}
