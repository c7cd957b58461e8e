//! Sheaf expressions on a smooth weighted complete intersection, their Serre
//! duals, and tables of cohomology knowledge indexed by them.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::cohdim::CohDim;
use crate::variety::WeightedCI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafBase {
    StructureSheaf,
    CotangentPower(u32),
    Tangent,
    /// `Ω^q` of the next space in the chain, restricted to `X`.
    AmbientCotangentRestricted(u32),
}

/// `base ⊗ O(twist)` on `space`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SheafExpr {
    pub base: SheafBase,
    pub twist: i64,
    pub space: WeightedCI,
}

impl SheafExpr {
    pub fn new(space: &WeightedCI, base: SheafBase, twist: i64) -> Self {
        SheafExpr {
            base,
            twist,
            space: space.clone(),
        }
    }

    pub fn omega(space: &WeightedCI, q: u32, twist: i64) -> Self {
        Self::new(space, SheafBase::CotangentPower(q), twist)
    }

    pub fn structure(space: &WeightedCI, twist: i64) -> Self {
        Self::new(space, SheafBase::StructureSheaf, twist)
    }

    pub fn tangent(space: &WeightedCI, twist: i64) -> Self {
        Self::new(space, SheafBase::Tangent, twist)
    }

    /// Rewrites `O` as `Ω^0` and `TX(t)` as `Ω^{n-1}(t + ι)` (from
    /// `∧^{n-1}Ω ≅ T ⊗ K`). Idempotent.
    pub fn canonical(&self) -> SheafExpr {
        let n = self.space.dim();
        let (base, twist) = match self.base {
            SheafBase::StructureSheaf => (SheafBase::CotangentPower(0), self.twist),
            SheafBase::Tangent => (SheafBase::CotangentPower(n - 1), self.twist + self.space.index()),
            other => (other, self.twist),
        };
        SheafExpr {
            base,
            twist,
            space: self.space.clone(),
        }
    }

    /// `(q, twist)` when the expression is a twisted `Ω^q` of the space.
    pub fn as_omega(&self) -> Option<(u32, i64)> {
        match self.canonical().base {
            SheafBase::CotangentPower(q) => Some((q, self.canonical().twist)),
            _ => None,
        }
    }

    pub fn is_well_formed(&self) -> bool {
        let n = self.space.dim();
        match self.base {
            SheafBase::CotangentPower(q) => q <= n,
            SheafBase::AmbientCotangentRestricted(q) => q <= n + 1,
            _ => true,
        }
    }
}

impl fmt::Display for SheafExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tw = |f: &mut fmt::Formatter<'_>| write!(f, "({})", self.twist);
        match self.base {
            SheafBase::StructureSheaf => write!(f, "O")?,
            SheafBase::CotangentPower(q) => write!(f, "Omega^{q}")?,
            SheafBase::Tangent => write!(f, "T")?,
            SheafBase::AmbientCotangentRestricted(q) => write!(f, "Omega^{q}_amb|X")?,
        }
        tw(f)
    }
}

/// `h^p(E(t)) = h^{n-p}(E^∨(-t) ⊗ K)` for the locally free expressions that
/// have a closed-form dual. `None` for the restricted ambient forms.
pub fn serre_dual(p: u32, expr: &SheafExpr) -> Option<(u32, SheafExpr)> {
    let x = &expr.space;
    let n = x.dim();
    if p > n || !expr.is_well_formed() {
        return None;
    }
    let (base, twist) = match expr.base {
        SheafBase::StructureSheaf => (SheafBase::StructureSheaf, -expr.twist + x.canonical_twist()),
        SheafBase::CotangentPower(q) => (SheafBase::CotangentPower(n - q), -expr.twist),
        // T^∨ ⊗ K = Ω^1(-ι)
        SheafBase::Tangent => (SheafBase::CotangentPower(1), -expr.twist - x.index()),
        SheafBase::AmbientCotangentRestricted(_) => return None,
    };
    Some((n - p, SheafExpr::new(x, base, twist)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohEntry {
    pub p: u32,
    pub sheaf: SheafExpr,
    pub dim: CohDim,
    pub note: String,
}

/// Cohomology knowledge keyed by `(p, sheaf)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohTable {
    pub entries: Vec<CohEntry>,
}

impl CohTable {
    pub fn get(&self, p: u32, sheaf: &SheafExpr) -> Option<&CohEntry> {
        let c = sheaf.canonical();
        self.entries.iter().find(|e| e.p == p && e.sheaf.canonical() == c)
    }

    pub fn dim(&self, p: u32, sheaf: &SheafExpr) -> CohDim {
        self.get(p, sheaf).map(|e| e.dim.clone()).unwrap_or_default()
    }

    /// Inserts or refines. Refinement never widens: on overlap the meet is
    /// stored, and an empty meet is reported.
    pub fn insert(&mut self, entry: CohEntry) -> Result<(), super::cohdim::Contradiction> {
        let c = entry.sheaf.canonical();
        if let Some(old) = self
            .entries
            .iter_mut()
            .find(|e| e.p == entry.p && e.sheaf.canonical() == c)
        {
            let dim = super::cohdim::refine_noted(&old.dim, &old.note, &entry.dim, &entry.note)?;
            if dim != old.dim {
                old.dim = dim;
                old.note = entry.note;
            }
            Ok(())
        } else {
            self.entries.push(entry);
            Ok(())
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::catalog;

    #[test]
    fn dual_examples() {
        let q3 = catalog("Q3").unwrap().variety;
        let r = 5;
        let (p, e) = serre_dual(3, &SheafExpr::structure(&q3, -1 - r)).unwrap();
        assert_eq!((p, e.base, e.twist), (0, SheafBase::StructureSheaf, r - 2));

        let x4 = catalog("X4").unwrap().variety;
        let t = 3;
        let (p, e) = serre_dual(1, &SheafExpr::tangent(&x4, t)).unwrap();
        assert_eq!((p, e.base, e.twist), (2, SheafBase::CotangentPower(1), -t - 2));
    }

    #[test]
    fn dual_is_an_involution_up_to_rewriting() {
        for key in crate::variety::CATALOG_KEYS {
            let x = catalog(key).unwrap().variety;
            for p in 0..=3 {
                for t in -5..=5 {
                    let mut exprs = vec![SheafExpr::structure(&x, t), SheafExpr::tangent(&x, t)];
                    exprs.extend((0..=3).map(|q| SheafExpr::omega(&x, q, t)));
                    for e in exprs {
                        let (p1, e1) = serre_dual(p, &e).unwrap();
                        let (p2, e2) = serre_dual(p1, &e1).unwrap();
                        assert_eq!(p2, p);
                        assert_eq!(e2.canonical(), e.canonical(), "{key} {e}");
                    }
                }
            }
        }
    }

    #[test]
    fn tangent_rewrite() {
        let x = catalog("X3").unwrap().variety;
        let e = SheafExpr::tangent(&x, -1).canonical();
        assert_eq!((e.base, e.twist), (SheafBase::CotangentPower(2), 1));
        assert!(serre_dual(0, &SheafExpr::new(&x, SheafBase::AmbientCotangentRestricted(1), 0)).is_none());
    }

    #[test]
    fn table_refines_and_detects_conflict() {
        let x = catalog("X3").unwrap().variety;
        let e = SheafExpr::omega(&x, 1, 2);
        let mut tab = CohTable::default();
        tab.insert(CohEntry {
            p: 2,
            sheaf: e.clone(),
            dim: CohDim::unknown(),
            note: "a".into(),
        })
        .unwrap();
        tab.insert(CohEntry {
            p: 2,
            sheaf: e.clone(),
            dim: CohDim::zero(),
            note: "b".into(),
        })
        .unwrap();
        assert_eq!(tab.dim(2, &e), CohDim::zero());
        assert!(tab
            .insert(CohEntry {
                p: 2,
                sheaf: e,
                dim: CohDim::nonzero(),
                note: "c".into()
            })
            .is_err());
    }
}
