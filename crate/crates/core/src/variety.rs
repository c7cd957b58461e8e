//! Weighted complete intersections `X ⊂ P(a_0, …, a_N)` and the catalog of
//! smooth Fano threefolds of Picard rank one that arise this way.
//!
//! Smoothness is a property the caller asserts; nothing here looks at
//! equations.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::{to_natural, Rational, SeriesSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("weight list is empty")]
    EmptyWeights,
    #[error("weights and degrees must be positive")]
    NonPositiveEntry,
    #[error("dimension N - c = {0} is not positive")]
    DimensionNonpositive(i64),
    #[error("unknown catalog variety {0:?} (expected one of P3, Q3, X3, X22, X4, X6, X23, X222, Y)")]
    UnknownName(String),
    #[error("cohomological degree {i} outside 0..={n}")]
    DegreeOutOfRange { i: u32, n: u32 },
    #[error("Hilbert function is negative at t = {0}; degrees are not those of a regular sequence")]
    NotRegular(i64),
    #[error("unknown chain {chain:?} for {variety}; available: {available}")]
    UnknownChain {
        variety: String,
        chain: String,
        available: String,
    },
    #[error("degree order {0:?} is not a permutation of the defining degrees")]
    BadDegreeOrder(Vec<u64>),
}

/// Zero locus of `c` weighted homogeneous polynomials of degrees `d_1..d_c`
/// in `P(a_0, …, a_N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WciDoc", into = "WciDoc")]
pub struct WeightedCI {
    weights: Vec<u64>,
    degrees: Vec<u64>,
    name: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct WciDoc {
    weights: Vec<u64>,
    #[serde(default)]
    degrees: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl TryFrom<WciDoc> for WeightedCI {
    type Error = VarietyError;
    fn try_from(doc: WciDoc) -> Result<Self, Self::Error> {
        let mut x = make_wci(doc.weights, doc.degrees)?;
        x.name = doc.name;
        Ok(x)
    }
}

impl From<WeightedCI> for WciDoc {
    fn from(x: WeightedCI) -> Self {
        WciDoc {
            weights: x.weights,
            degrees: x.degrees,
            name: x.name,
        }
    }
}

/// Validates weights and degrees. Smoothness is not checked.
pub fn make_wci(weights: Vec<u64>, degrees: Vec<u64>) -> Result<WeightedCI, VarietyError> {
    if weights.is_empty() {
        return Err(VarietyError::EmptyWeights);
    }
    if weights.iter().chain(&degrees).any(|&x| x == 0) {
        return Err(VarietyError::NonPositiveEntry);
    }
    let dim = weights.len() as i64 - 1 - degrees.len() as i64;
    if dim < 1 {
        return Err(VarietyError::DimensionNonpositive(dim));
    }
    Ok(WeightedCI {
        weights,
        degrees,
        name: None,
    })
}

impl WeightedCI {
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// `n = N − c`.
    pub fn dim(&self) -> u32 {
        (self.weights.len() - 1 - self.degrees.len()) as u32
    }

    /// `∑a_i − ∑d_j`; the Fano index when positive.
    pub fn index(&self) -> i64 {
        self.weights.iter().sum::<u64>() as i64 - self.degrees.iter().sum::<u64>() as i64
    }

    /// `K_X = O_X(∑d_j − ∑a_i)`.
    pub fn canonical_twist(&self) -> i64 {
        -self.index()
    }

    pub fn is_fano(&self) -> bool {
        self.index() >= 1
    }

    /// `∏d_j / ∏a_i`, the degree of `H^n`.
    pub fn degree(&self) -> Rational {
        let num: BigInt = self.degrees.iter().map(|&d| BigInt::from(d)).product();
        let den: BigInt = self.weights.iter().map(|&a| BigInt::from(a)).product();
        Rational::new(num, den)
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.iter().any(|&a| a != 1)
    }

    /// Smooth quadric hypersurface in an ordinary projective space.
    pub fn is_quadric(&self) -> bool {
        !self.is_weighted() && self.degrees == [2]
    }

    /// No equations: the ambient weighted projective space itself.
    pub fn is_ambient_space(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn ambient(&self) -> WeightedCI {
        WeightedCI {
            weights: self.weights.clone(),
            degrees: Vec::new(),
            name: None,
        }
    }

    pub fn series(&self) -> SeriesSpec {
        SeriesSpec::new(self.degrees.clone(), self.weights.clone())
    }

    /// `dim S_t` of the graded coordinate ring `S/(f_1..f_c)`.
    pub fn hilbert(&self, t: i64) -> Result<BigUint, VarietyError> {
        let c = self.series().coeff(t);
        to_natural(&c).ok_or(VarietyError::NotRegular(t))
    }

    /// `h^i(X, O_X(t))`: `S_t` for `i = 0`, zero strictly between, and
    /// `S_{−t+K}` with `K = canonical_twist` in the top degree (Serre duality).
    pub fn h_structure(&self, i: u32, t: i64) -> Result<BigUint, VarietyError> {
        let n = self.dim();
        if i > n {
            return Err(VarietyError::DegreeOutOfRange { i, n });
        }
        if i == 0 {
            self.hilbert(t)
        } else if i < n {
            Ok(BigUint::zero())
        } else {
            self.hilbert(-t + self.canonical_twist())
        }
    }

    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => self.to_string(),
        }
    }
}

impl fmt::Display for WeightedCI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        if self.degrees.is_empty() {
            write!(f, "P({})", join(&self.weights))
        } else {
            write!(f, "X_{{{}}} in P({})", join(&self.degrees), join(&self.weights))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmbientKind {
    ProjectiveSpace,
    WeightedProjectiveSpace,
    IntermediateHypersurfaceChain,
}

/// One way of cutting `X` down from its ambient space, one hypersurface at a
/// time. `degree_order` lists the defining degrees; the last one is cut
/// first from the intermediate variety defined by the others.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub name: String,
    pub degree_order: Vec<u64>,
    /// Smoothness flag for each intermediate variety, innermost first.
    pub smooth_intermediates: Vec<bool>,
    pub description: String,
}

impl ChainSpec {
    /// Intermediate varieties cut by the degrees in their listed order, all
    /// asserted smooth.
    pub fn natural(x: &WeightedCI) -> ChainSpec {
        let c = x.degrees().len();
        ChainSpec {
            name: "default".into(),
            degree_order: x.degrees().to_vec(),
            smooth_intermediates: vec![true; c.saturating_sub(1)],
            description: "hypersurfaces cut in the listed degree order".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLevel {
    pub space: WeightedCI,
    pub smooth: bool,
    /// `X_k ∈ |O_{X_{k+1}}(d)|`; `None` for the top ambient space.
    pub degree_in_next: Option<u64>,
}

impl ChainLevel {
    pub fn dim(&self) -> u32 {
        self.space.dim()
    }

    pub fn is_quadric(&self) -> bool {
        self.space.is_quadric()
    }
}

/// `X = X_0 ⊂ X_1 ⊂ … ⊂ X_c = P(a)`, each a hypersurface in the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientChain {
    pub name: String,
    pub levels: Vec<ChainLevel>,
}

impl AmbientChain {
    pub fn build(x: &WeightedCI, spec: &ChainSpec) -> Result<AmbientChain, VarietyError> {
        let mut sorted = spec.degree_order.clone();
        sorted.sort_unstable();
        let mut own = x.degrees().to_vec();
        own.sort_unstable();
        if sorted != own {
            return Err(VarietyError::BadDegreeOrder(spec.degree_order.clone()));
        }
        let c = spec.degree_order.len();
        let mut levels = Vec::with_capacity(c + 1);
        for k in 0..=c {
            let degs = spec.degree_order[..c - k].to_vec();
            let space = if k == 0 {
                x.clone()
            } else {
                make_wci(x.weights().to_vec(), degs)?
            };
            let smooth = if k == 0 {
                true
            } else if k == c {
                !space.is_weighted()
            } else {
                spec.smooth_intermediates.get(k - 1).copied().unwrap_or(true)
            };
            let degree_in_next = (k < c).then(|| spec.degree_order[c - k - 1]);
            levels.push(ChainLevel {
                space,
                smooth,
                degree_in_next,
            });
        }
        Ok(AmbientChain {
            name: spec.name.clone(),
            levels,
        })
    }

    pub fn target(&self) -> &WeightedCI {
        &self.levels[0].space
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &ChainLevel {
        &self.levels[k]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub key: String,
    pub label: String,
    pub variety: WeightedCI,
    pub index: i64,
    pub degree_h3: u64,
    pub ambient_kind: AmbientKind,
    pub chains: Vec<ChainSpec>,
}

impl CatalogEntry {
    pub fn chain_spec(&self, name: Option<&str>) -> Result<&ChainSpec, VarietyError> {
        match name {
            None => Ok(&self.chains[0]),
            Some(n) => self
                .chains
                .iter()
                .find(|c| c.name == n)
                .ok_or_else(|| VarietyError::UnknownChain {
                    variety: self.key.clone(),
                    chain: n.to_string(),
                    available: self
                        .chains
                        .iter()
                        .map(|c| c.name.as_str())
                        .collect::<Vec<_>>()
                        .join(", "),
                }),
        }
    }

    pub fn chain(&self, name: Option<&str>) -> Result<AmbientChain, VarietyError> {
        AmbientChain::build(&self.variety, self.chain_spec(name)?)
    }

    pub fn all_chains(&self) -> Result<Vec<AmbientChain>, VarietyError> {
        self.chains
            .iter()
            .map(|c| AmbientChain::build(&self.variety, c))
            .collect()
    }
}

pub const CATALOG_KEYS: [&str; 9] = ["P3", "Q3", "X3", "X22", "X4", "X6", "X23", "X222", "Y"];

fn chain(name: &str, order: &[u64], smooth: &[bool], description: &str) -> ChainSpec {
    ChainSpec {
        name: name.into(),
        degree_order: order.to_vec(),
        smooth_intermediates: smooth.to_vec(),
        description: description.into(),
    }
}

/// Catalog entry by key.
pub fn catalog(name: &str) -> Result<CatalogEntry, VarietyError> {
    use AmbientKind::*;
    let (label, weights, degrees, kind, chains): (&str, Vec<u64>, Vec<u64>, AmbientKind, Vec<ChainSpec>) = match name {
        "P3" => (
            "P^3",
            vec![1; 4],
            vec![],
            ProjectiveSpace,
            vec![chain("ambient", &[], &[], "the projective space itself")],
        ),
        "Q3" => (
            "Q^3 = X_2 in P^4",
            vec![1; 5],
            vec![2],
            ProjectiveSpace,
            vec![chain("ambient", &[2], &[], "quadric in P^4")],
        ),
        "X3" => (
            "X_3 in P^4",
            vec![1; 5],
            vec![3],
            ProjectiveSpace,
            vec![chain("ambient", &[3], &[], "cubic in P^4")],
        ),
        "X22" => (
            "X_{2,2} in P^5",
            vec![1; 6],
            vec![2, 2],
            IntermediateHypersurfaceChain,
            vec![chain("quadric", &[2, 2], &[true], "X_{2,2} in Q^4 in P^5")],
        ),
        "X4" => (
            "X_4 in P(1,1,1,1,2)",
            vec![1, 1, 1, 1, 2],
            vec![4],
            WeightedProjectiveSpace,
            vec![chain("ambient", &[4], &[], "quartic in P(1,1,1,1,2)")],
        ),
        "X6" => (
            "X_6 in P(1,1,1,2,3)",
            vec![1, 1, 1, 2, 3],
            vec![6],
            WeightedProjectiveSpace,
            vec![chain("ambient", &[6], &[], "sextic in P(1,1,1,2,3)")],
        ),
        "X23" => (
            "X_{2,3} in P^5",
            vec![1; 6],
            vec![2, 3],
            IntermediateHypersurfaceChain,
            vec![
                chain("quadric", &[2, 3], &[true], "X_{2,3} in Q^4 in P^5"),
                chain("cubic", &[3, 2], &[true], "X_{2,3} in X_3^4 in P^5"),
            ],
        ),
        "X222" => (
            "X_{2,2,2} in P^6",
            vec![1; 7],
            vec![2, 2, 2],
            IntermediateHypersurfaceChain,
            vec![chain(
                "quadrics",
                &[2, 2, 2],
                &[true, true],
                "X_{2,2,2} in X_{2,2}^4 in Q^5 in P^6",
            )],
        ),
        "Y" => (
            "Y = X_{2,4} in P(1,1,1,1,1,2)",
            vec![1, 1, 1, 1, 1, 2],
            vec![2, 4],
            IntermediateHypersurfaceChain,
            vec![
                // the quadric cone contains the singular point of the ambient
                chain("cone", &[2, 4], &[false], "Y in the quadric cone C_2 in P(1,1,1,1,1,2)"),
                chain("quartic", &[4, 2], &[true], "Y in X_4^4 in P(1,1,1,1,1,2)"),
            ],
        ),
        other => return Err(VarietyError::UnknownName(other.to_string())),
    };
    let variety = make_wci(weights, degrees)?.with_name(name);
    let degree = variety.degree();
    debug_assert!(degree.is_integer());
    let degree_h3 = degree
        .to_integer()
        .to_biguint()
        .and_then(|d| u64::try_from(d).ok())
        .unwrap_or_default();
    Ok(CatalogEntry {
        key: name.to_string(),
        label: label.to_string(),
        index: variety.index(),
        degree_h3,
        ambient_kind: kind,
        variety,
        chains,
    })
}

pub fn full_catalog() -> Vec<CatalogEntry> {
    CATALOG_KEYS
        .iter()
        .map(|k| catalog(k).expect("catalog keys are valid"))
        .collect()
}
