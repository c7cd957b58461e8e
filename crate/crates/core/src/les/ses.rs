//! Bounds propagation along one long exact sequence.
//!
//! Writing `D_j` for the dimension at position `j` and `k_j` for the rank of
//! the map leaving it, exactness says `D_j = k_{j-1} + k_j` with
//! `k_{-1} = k_{L-1} = 0`. Tightening the intervals of all `D_j` and `k_j`
//! against these equations covers isomorphisms between zero flanks,
//! subadditivity `h^p(B) <= h^p(A) + h^p(C)`, and the alternating-sum
//! identity on stretches bounded by zeros.

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use super::cohdim::CohDim;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("exactness violated around positions {start}..={end} of a {len}-term sequence")]
pub struct LesContradiction {
    pub start: usize,
    pub end: usize,
    pub len: usize,
}

#[derive(Clone, Debug)]
struct Bound {
    lo: BigUint,
    hi: Option<BigUint>,
}

impl Bound {
    fn zero() -> Self {
        Bound {
            lo: BigUint::zero(),
            hi: Some(BigUint::zero()),
        }
    }

    fn free() -> Self {
        Bound {
            lo: BigUint::zero(),
            hi: None,
        }
    }

    fn raise_lo(&mut self, v: BigUint) -> bool {
        if v > self.lo {
            self.lo = v;
            true
        } else {
            false
        }
    }

    fn lower_hi(&mut self, v: BigUint) -> bool {
        match &self.hi {
            Some(h) if *h <= v => false,
            _ => {
                self.hi = Some(v);
                true
            }
        }
    }

    fn ok(&self) -> bool {
        self.hi.as_ref().is_none_or(|h| *h >= self.lo)
    }
}

fn sub_hi(a: &Option<BigUint>, b: &BigUint) -> Result<Option<BigUint>, ()> {
    match a {
        None => Ok(None),
        Some(a) if a >= b => Ok(Some(a - b)),
        Some(_) => Err(()),
    }
}

/// `lo_a - hi_b`, saturating at zero; no information when `hi_b` is infinite.
fn sub_lo(a: &BigUint, b: &Option<BigUint>) -> BigUint {
    match b {
        Some(b) if a > b => a - b,
        _ => BigUint::zero(),
    }
}

/// Tightens `dims` in place. Returns whether anything changed.
pub fn propagate_les(dims: &mut [CohDim]) -> Result<bool, LesContradiction> {
    let len = dims.len();
    if len == 0 {
        return Ok(false);
    }
    let err = |j: usize| LesContradiction {
        start: j.saturating_sub(1),
        end: (j + 1).min(len - 1),
        len,
    };
    let mut d: Vec<Bound> = dims
        .iter()
        .map(|c| Bound {
            lo: c.lo().clone(),
            hi: c.hi().cloned(),
        })
        .collect();
    let mut k: Vec<Bound> = vec![Bound::free(); len];
    k[len - 1] = Bound::zero();
    let zero = Bound::zero();
    let mut dims_moved = false;
    for _ in 0..(4 * len + 8) {
        let mut changed = false;
        for j in 0..len {
            let prev = if j == 0 { &zero } else { &k[j - 1] };
            let (prev_lo, prev_hi) = (prev.lo.clone(), prev.hi.clone());
            // k_j from D_j = k_{j-1} + k_j
            let hi = sub_hi(&d[j].hi, &prev_lo).map_err(|_| err(j))?;
            let lo = sub_lo(&d[j].lo, &prev_hi);
            let mut kj = k[j].clone();
            if let Some(h) = hi {
                kj.lower_hi(h);
            }
            kj.raise_lo(lo);
            // k_j from D_{j+1} = k_j + k_{j+1}
            if j + 1 < len {
                let next = &k[j + 1];
                let hi = sub_hi(&d[j + 1].hi, &next.lo).map_err(|_| err(j + 1))?;
                if let Some(h) = hi {
                    kj.lower_hi(h);
                }
                kj.raise_lo(sub_lo(&d[j + 1].lo, &next.hi));
            }
            if !kj.ok() {
                return Err(err(j));
            }
            if kj.lo != k[j].lo || kj.hi != k[j].hi {
                k[j] = kj;
                changed = true;
            }
            // D_j from the two ranks
            let prev = if j == 0 { &zero } else { &k[j - 1] };
            let lo = &prev.lo + &k[j].lo;
            let hi = match (&prev.hi, &k[j].hi) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
            let mut dj = d[j].clone();
            let mut c = dj.raise_lo(lo);
            if let Some(h) = hi {
                c |= dj.lower_hi(h);
            }
            if !dj.ok() {
                return Err(err(j));
            }
            if c {
                d[j] = dj;
                changed = true;
                dims_moved = true;
            }
        }
        if !changed {
            break;
        }
    }
    if dims_moved {
        for (slot, b) in dims.iter_mut().zip(d) {
            *slot = CohDim::bounded(b.lo, b.hi).expect("checked");
        }
    }
    Ok(dims_moved)
}

/// Interleaves `h^p(A), h^p(B), h^p(C)` for `p = 0..=n`, propagates, and
/// writes the results back.
pub fn propagate_ses(a: &mut [CohDim], b: &mut [CohDim], c: &mut [CohDim], n: usize) -> Result<bool, LesContradiction> {
    assert!(a.len() > n && b.len() > n && c.len() > n, "slices must cover H^0..H^n");
    let mut seq = Vec::with_capacity(3 * (n + 1));
    for p in 0..=n {
        seq.push(a[p].clone());
        seq.push(b[p].clone());
        seq.push(c[p].clone());
    }
    let changed = propagate_les(&mut seq)?;
    if changed {
        for p in 0..=n {
            a[p] = seq[3 * p].clone();
            b[p] = seq[3 * p + 1].clone();
            c[p] = seq[3 * p + 2].clone();
        }
    }
    Ok(changed)
}
