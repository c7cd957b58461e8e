//! Hypothesis checklists for the characterizations of distributions on the
//! catalog threefolds.
//!
//! Nothing here constructs a sheaf. Each check reads cohomology evidence
//! supplied by the caller, fills in what the exact-sequence engine can certify
//! about `TX` and `Ω^1_X`, and reports which hypotheses resolved and what
//! follows. Facts imported from the literature are entries of [`REGISTRY`]
//! of kind [`AnchorKind::Axiom`] or [`AnchorKind::PriorWork`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::chow::{q3_stability_contradiction, ChowError, DistributionSpec};
use crate::les::{shared_engine, CohDim, EngineError, SheafExpr, VarietyEngine};
use crate::variety::{CatalogEntry, VarietyError, WeightedCI};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("{variety} has index {index}; this check needs index in {expected}")]
    WrongIndex {
        variety: String,
        index: i64,
        expected: String,
    },
    #[error("inconsistent evidence: {0}")]
    InconsistentEvidence(String),
    #[error("malformed evidence: {0}")]
    MalformedEvidence(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Holds,
    Fails,
    HypothesisNotMet,
    Inconclusive,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::Holds => "Holds",
            Conclusion::Fails => "Fails",
            Conclusion::HypothesisNotMet => "HypothesisNotMet",
            Conclusion::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckDirection {
    Forward,
    Converse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnchorKind {
    Theorem,
    Lemma,
    Corollary,
    Formula,
    Axiom,
    PriorWork,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Anchor {
    pub id: &'static str,
    pub kind: AnchorKind,
    pub statement: &'static str,
}

const fn a(id: &'static str, kind: AnchorKind, statement: &'static str) -> Anchor {
    Anchor { id, kind, statement }
}

pub const REGISTRY: &[Anchor] = &[
    a(
        "thm.q3-split-spinor",
        AnchorKind::Theorem,
        "Q^3, T_F locally free: T_F split or spinor <=> Z aB with h^1(I_Z(r-2)) = 1 the only nonzero h^1; \
         <= also uses h^2(T_F(-2)) = h^2(T_F(-1-c1(T_F))) = 0",
    ),
    a(
        "thm.acm-tangent-index2",
        AnchorKind::Theorem,
        "index 2, T_F aCM => h^1(I_Z(r+t)) = 0 for t < -6, t > 8; converse also uses h^2(T_F(t)) = 0 for t <= 8",
    ),
    a(
        "thm.acm-tangent-index1",
        AnchorKind::Theorem,
        "index 1, T_F aCM => h^1(I_Z(r+t)) = 0 for t < -4, t > 4; converse also uses h^2(T_F(t)) = 0 for t <= 4",
    ),
    a(
        "thm.conormal-acm",
        AnchorKind::Theorem,
        "N*_F aCM => Z aB with h^1(I_Z(r)) = 1 the only nonzero h^1",
    ),
    a(
        "thm.conormal-acm-converse",
        AnchorKind::Theorem,
        "index in {1,2,3}, Z aB with h^1(I_Z(r)) = 1 only, h^2(N*_F) = h^2(N*_F(-c1(N*_F)-index)) = 0 => N*_F aCM",
    ),
    a(
        "lem.tx-twist-vanishing",
        AnchorKind::Lemma,
        "h^1(TX(-r)) = 0 for r > 6 and h^2(TX(-r)) = 0 for r != index",
    ),
    a(
        "thm.connectedness",
        AnchorKind::Theorem,
        "h^2(T_F(-r)) = 0 and C nonempty => Z = C connected, pure of dimension 1, T_F locally free; \
         for r != index, Z = C connected => T_F locally free and h^2(T_F(-r)) = 0",
    ),
    a(
        "cor.split-connected",
        AnchorKind::Corollary,
        "T_F a sum of line bundles => Z connected",
    ),
    a(
        "cor.ample-dual-connected",
        AnchorKind::Corollary,
        "T_F locally free with T_F^* ample => Z connected",
    ),
    a(
        "thm.stability-q3",
        AnchorKind::Theorem,
        "Q^3, c1(T_F) = 0 => T_F split or stable",
    ),
    a(
        "thm.stability",
        AnchorKind::Theorem,
        "T_F locally free, c1(T_F) = 0 => T_F split or stable",
    ),
    a(
        "formula.distribution-sequence",
        AnchorKind::Formula,
        "0 -> T_F(t) -> TX(t) -> I_Z(r+t) -> 0",
    ),
    a(
        "formula.conormal-sequence",
        AnchorKind::Formula,
        "0 -> N*_F(t) -> Omega^1_X(t) -> I_Z(r+t) -> 0",
    ),
    a(
        "formula.tangent-as-forms",
        AnchorKind::Formula,
        "TX(t) = Omega^2_X(t + index) on a threefold",
    ),
    a(
        "formula.serre-duality",
        AnchorKind::Formula,
        "h^p(E(t)) = h^{3-p}(E^*(-t) (x) K_X) for E locally free",
    ),
    a(
        "formula.rank2-dual",
        AnchorKind::Formula,
        "E^* = E(-c1(E)) for E of rank 2",
    ),
    a(
        "formula.flenner",
        AnchorKind::Formula,
        "Flenner vanishing for h^p(Omega^q_X(t)) on weighted complete intersections",
    ),
    a(
        "formula.bott-quadric",
        AnchorKind::Formula,
        "Bott formula on smooth quadrics",
    ),
    a(
        "formula.ideal-sequence",
        AnchorKind::Formula,
        "0 -> I_Z -> O_X -> O_Z -> 0 with h^1(I_Z) = 0 gives h^0(O_Z) = 1",
    ),
    a(
        "formula.riemann-roch-curve",
        AnchorKind::Formula,
        "c3(I_Z) = (2g-2) H^3 + c1(Q^3) c2(I_Z) for a curve on Q^3",
    ),
    a(
        "derived.engine",
        AnchorKind::Formula,
        "values certified by exact-sequence propagation along an ambient chain",
    ),
    a(
        "axiom.acm-rank2-q3",
        AnchorKind::Axiom,
        "an aCM rank-2 bundle on Q^3 is a sum of line bundles or a twist of the spinor bundle",
    ),
    a(
        "axiom.spinor-stable",
        AnchorKind::Axiom,
        "the spinor bundle on Q^3 is stable",
    ),
    a(
        "axiom.line-bundles-acm",
        AnchorKind::Axiom,
        "O_X(t) has no intermediate cohomology on a weighted complete intersection threefold",
    ),
    a(
        "axiom.locally-free-iff-pure",
        AnchorKind::Axiom,
        "the tangent sheaf of a codimension-one distribution is locally free iff Sing has pure codimension 2",
    ),
    a(
        "axiom.griffiths-vanishing",
        AnchorKind::Axiom,
        "Griffiths vanishing: h^i(E (x) det E (x) L (x) K_X) = 0 for i > 0, E and L ample",
    ),
    a(
        "axiom.kodaira",
        AnchorKind::Axiom,
        "Kodaira vanishing on a Fano threefold: h^3(O_X(s)) = 0 for s > -index",
    ),
    a(
        "axiom.isolated-sections",
        AnchorKind::Axiom,
        "index 1 or 2: a destabilizing section of T_F with c1 = 0 would vanish in isolated points; \
         among index-two Fano threefolds only the quintic del Pezzo X_5 has vector fields",
    ),
    a(
        "prior.p3-split-acm",
        AnchorKind::PriorWork,
        "on P^3, T_F splits iff Z is aCM",
    ),
    a(
        "prior.pn-conormal",
        AnchorKind::PriorWork,
        "on P^n, N*_F splits iff Z aB with h^1(I_Z(d-1)) = 1 the only intermediate cohomology",
    ),
    a(
        "prior.p3-stability",
        AnchorKind::PriorWork,
        "on P^3, T_F with c1(T_F) = 0 is split or stable",
    ),
];

pub fn anchor(id: &str) -> Option<&'static Anchor> {
    REGISTRY.iter().find(|a| a.id == id)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub criterion: String,
    pub variety: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<CheckDirection>,
    pub conclusion: Conclusion,
    pub cited: Vec<String>,
    pub trace: Vec<String>,
    #[serde(default)]
    pub unresolved: Vec<String>,
    #[serde(default)]
    pub findings: BTreeMap<String, Value>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.criterion, self.variety)?;
        if let Some(d) = self.direction {
            write!(
                f,
                " ({})",
                if d == CheckDirection::Forward {
                    "forward"
                } else {
                    "converse"
                }
            )?;
        }
        writeln!(f, ": {}", self.conclusion)?;
        for s in &self.trace {
            writeln!(f, "  - {s}")?;
        }
        for s in &self.unresolved {
            writeln!(f, "  ? {s}")?;
        }
        for (k, v) in &self.findings {
            writeln!(f, "  {k} = {v}")?;
        }
        write!(f, "  cited: {}", self.cited.join(", "))
    }
}

/// Accumulates a verdict. A failed hypothesis outranks an unresolved one,
/// and either one overrides the conclusion passed to `finish`.
struct Builder {
    v: Verdict,
    failed: bool,
}

impl Builder {
    fn new(criterion: &str, variety: &str, direction: Option<CheckDirection>) -> Self {
        Builder {
            v: Verdict {
                criterion: criterion.into(),
                variety: variety.into(),
                direction,
                conclusion: Conclusion::Inconclusive,
                cited: Vec::new(),
                trace: Vec::new(),
                unresolved: Vec::new(),
                findings: BTreeMap::new(),
            },
            failed: false,
        }
    }

    fn cite(&mut self, id: &str) -> &mut Self {
        assert!(anchor(id).is_some(), "unregistered anchor {id}");
        if !self.v.cited.iter().any(|c| c == id) {
            self.v.cited.push(id.into());
        }
        self
    }

    fn step(&mut self, s: impl Into<String>) -> &mut Self {
        self.v.trace.push(s.into());
        self
    }

    fn unresolved(&mut self, s: impl Into<String>) -> &mut Self {
        self.v.unresolved.push(s.into());
        self
    }

    fn not_met(&mut self, s: impl Into<String>) -> &mut Self {
        self.failed = true;
        self.v.trace.push(format!("hypothesis not met: {}", s.into()));
        self
    }

    fn finding(&mut self, k: &str, v: Value) -> &mut Self {
        self.v.findings.insert(k.into(), v);
        self
    }

    fn blocked(&self) -> bool {
        self.failed || !self.v.unresolved.is_empty()
    }

    fn finish(mut self, conclusion: Conclusion) -> Verdict {
        self.v.conclusion = if self.failed {
            Conclusion::HypothesisNotMet
        } else if !self.v.unresolved.is_empty() {
            Conclusion::Inconclusive
        } else {
            conclusion
        };
        self.v
    }
}

/// `h^p(E(t))` for `p = 0..=3` over consecutive twists starting at `t_min`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistTable {
    pub t_min: i64,
    pub rows: Vec<Vec<CohDim>>,
}

impl TwistTable {
    pub fn from_fn(t_min: i64, t_max: i64, mut f: impl FnMut(u32, i64) -> CohDim) -> Self {
        TwistTable {
            t_min,
            rows: (t_min..=t_max).map(|t| (0..=3).map(|p| f(p, t)).collect()).collect(),
        }
    }

    pub fn t_max(&self) -> i64 {
        self.t_min + self.rows.len() as i64 - 1
    }

    pub fn covers(&self, t: i64) -> bool {
        t >= self.t_min && t <= self.t_max()
    }

    pub fn get(&self, p: u32, t: i64) -> Option<&CohDim> {
        if !self.covers(t) {
            return None;
        }
        self.rows[(t - self.t_min) as usize].get(p as usize)
    }

    pub fn set(&mut self, p: u32, t: i64, d: CohDim) {
        assert!(self.covers(t) && p <= 3);
        self.rows[(t - self.t_min) as usize][p as usize] = d;
    }

    pub fn twists(&self) -> impl Iterator<Item = i64> {
        self.t_min..=self.t_max()
    }

    /// Cohomology of `⊕ O_X(a_i + t)`.
    pub fn line_bundle_sum(x: &WeightedCI, summands: &[i64], t_min: i64, t_max: i64) -> Result<Self, VarietyError> {
        let mut rows = Vec::new();
        for t in t_min..=t_max {
            let mut row = Vec::new();
            for p in 0..=3 {
                let mut total = num_bigint::BigUint::default();
                for &s in summands {
                    total += x.h_structure(p, s + t)?;
                }
                row.push(CohDim::exact(total));
            }
            rows.push(row);
        }
        Ok(TwistTable { t_min, rows })
    }

    fn intermediate_status(&self) -> Tri {
        let mut all_zero = true;
        for row in &self.rows {
            for d in &row[1..=2] {
                if d.is_nonzero() {
                    return Tri::No;
                }
                all_zero &= d.is_zero();
            }
        }
        if all_zero {
            Tri::Yes
        } else {
            Tri::Unknown
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceFlags {
    /// `Z` arithmetically Buchsbaum.
    #[serde(rename = "aB", default, skip_serializing_if = "Option::is_none")]
    pub ab: Option<bool>,
    /// The distribution's bundle (`T_F`, or `N*_F` for dimension one) is aCM.
    #[serde(rename = "aCM", default, skip_serializing_if = "Option::is_none")]
    pub acm: Option<bool>,
    /// The only twist with `h^1(I_Z(s)) ≠ 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub only_nonzero_h1_at: Option<i64>,
}

/// Cohomology of `T_F(t)`, `N*_F(t)` and `I_Z(s)` over declared ranges, plus
/// directly asserted flags. Declared ranges are taken as complete when a
/// property is derived from a table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohEvidence {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tangent: Option<TwistTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conormal: Option<TwistTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<TwistTable>,
    #[serde(default)]
    pub flags: EvidenceFlags,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tri {
    Yes,
    No,
    Unknown,
}

impl CohEvidence {
    /// Evidence for a tangent sheaf `⊕ O(a_i)`: all intermediate cohomology
    /// zero by construction.
    pub fn split_tangent(x: &WeightedCI, summands: &[i64], t_min: i64, t_max: i64) -> Result<Self, VarietyError> {
        Ok(CohEvidence {
            tangent: Some(TwistTable::line_bundle_sum(x, summands, t_min, t_max)?),
            ..Default::default()
        })
    }

    pub fn validate(&self) -> Result<(), CriteriaError> {
        for (name, tab) in [
            ("tangent", &self.tangent),
            ("conormal", &self.conormal),
            ("ideal", &self.ideal),
        ] {
            if let Some(t) = tab {
                if t.rows.is_empty() || t.rows.iter().any(|r| r.len() != 4) {
                    return Err(CriteriaError::MalformedEvidence(format!(
                        "{name} table needs at least one row of four entries h^0..h^3"
                    )));
                }
            }
        }
        if self.flags.acm == Some(true) {
            for (name, tab) in [("tangent", &self.tangent), ("conormal", &self.conormal)] {
                if let Some(t) = tab {
                    if t.intermediate_status() == Tri::No {
                        return Err(CriteriaError::InconsistentEvidence(format!(
                            "aCM asserted but the {name} table has nonzero intermediate cohomology"
                        )));
                    }
                }
            }
        }
        if let Some(s) = self.flags.only_nonzero_h1_at {
            if self.flags.ab == Some(false) {
                return Err(CriteriaError::InconsistentEvidence(
                    "a single nonzero h^1(I_Z) makes Z aB, but aB = false was asserted".into(),
                ));
            }
            if let Some(t) = &self.ideal {
                for u in t.twists() {
                    let d = t.get(1, u).expect("covered");
                    if u != s && d.is_nonzero() {
                        return Err(CriteriaError::InconsistentEvidence(format!(
                            "only_nonzero_h1_at = {s} but h^1(I_Z({u})) = {d}"
                        )));
                    }
                    if u == s && d.is_zero() {
                        return Err(CriteriaError::InconsistentEvidence(format!(
                            "only_nonzero_h1_at = {s} but h^1(I_Z({s})) = 0"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn bundle_acm(&self, table: &Option<TwistTable>) -> (Tri, String) {
        if let Some(b) = self.flags.acm {
            return (if b { Tri::Yes } else { Tri::No }, "asserted by flag".into());
        }
        match table {
            Some(t) => {
                let s = t.intermediate_status();
                let how = match s {
                    Tri::Yes => format!("h^1 = h^2 = 0 on the declared twists {}..={}", t.t_min, t.t_max()),
                    Tri::No => "table has a nonzero h^1 or h^2".into(),
                    Tri::Unknown => "table leaves some h^1 or h^2 undetermined".into(),
                };
                (s, how)
            }
            None => (Tri::Unknown, "no table and no flag".into()),
        }
    }

    /// Whether `h^1(I_Z(s0)) = 1` is the only nonzero `h^1(I_Z)`.
    fn single_h1_profile(&self, s0: i64) -> Result<(), (Tri, String)> {
        if self.flags.ab == Some(false) {
            return Err((Tri::No, "Z asserted not aB".into()));
        }
        match &self.ideal {
            Some(t) => match t.get(1, s0) {
                Some(d) if d.exact_value().is_some_and(|v| *v == 1u32.into()) => {}
                Some(d) if !d.contains(&1u32.into()) => return Err((Tri::No, format!("h^1(I_Z({s0})) = {d}, not 1"))),
                Some(d) => return Err((Tri::Unknown, format!("h^1(I_Z({s0})) = {d} is not pinned"))),
                None => return Err((Tri::Unknown, format!("ideal table does not cover twist {s0}"))),
            },
            None => return Err((Tri::Unknown, "no ideal table".into())),
        }
        match self.flags.only_nonzero_h1_at {
            Some(s) if s == s0 => return Ok(()),
            Some(s) => return Err((Tri::No, format!("the nonzero h^1(I_Z) sits at {s}, not {s0}"))),
            None => {}
        }
        let t = self.ideal.as_ref().expect("checked above");
        let mut unknown = None;
        for u in t.twists().filter(|&u| u != s0) {
            let d = t.get(1, u).expect("covered");
            if d.is_nonzero() {
                return Err((Tri::No, format!("h^1(I_Z({u})) = {d} is nonzero")));
            }
            if !d.is_zero() && unknown.is_none() {
                unknown = Some(u);
            }
        }
        match unknown {
            Some(u) => Err((Tri::Unknown, format!("h^1(I_Z({u})) undetermined"))),
            None => Ok(()),
        }
    }
}

fn tangent_h(engine: &VarietyEngine, x: &WeightedCI, p: u32, t: i64) -> Result<CohDim, CriteriaError> {
    Ok(engine.expr(p, &SheafExpr::tangent(x, t))?)
}

/// Twists in `lo..=hi` where the engine does not certify `h^p(TX(t)) = 0`,
/// with the best value it has.
fn tangent_support(
    engine: &VarietyEngine,
    x: &WeightedCI,
    p: u32,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, CohDim)>, CriteriaError> {
    let mut out = Vec::new();
    for t in lo..=hi {
        let d = tangent_h(engine, x, p, t)?;
        if !d.is_zero() {
            out.push((t, d));
        }
    }
    Ok(out)
}

fn support_json(s: &[(i64, CohDim)]) -> Value {
    Value::Array(s.iter().map(|(t, d)| json!({"t": t, "h": d.to_string()})).collect())
}

fn require_h(b: &mut Builder, tab: Option<&TwistTable>, name: &str, p: u32, t: i64) {
    let what = format!("h^{p}({name}({t})) = 0");
    match tab.and_then(|tab| tab.get(p, t)) {
        Some(d) if d.is_zero() => {
            b.step(format!("{what} (evidence)"));
        }
        Some(d) if d.is_nonzero() => {
            b.not_met(format!("{what}, evidence gives {d}"));
        }
        Some(_) => {
            b.unresolved(format!("{what} not certified by the evidence"));
        }
        None => {
            b.unresolved(format!("{what} not covered by the evidence"));
        }
    }
}

/// Twist range scanned on `TX` and `Ω^1_X`.
const TX_SCAN: (i64, i64) = (-30, 30);

/// Split-or-spinor characterization on `Q^3`.
pub fn check_split_or_spinor_q3(
    evidence: &CohEvidence,
    r: i64,
    direction: CheckDirection,
) -> Result<Verdict, CriteriaError> {
    evidence.validate()?;
    let entry = crate::variety::catalog("Q3")?;
    let x = &entry.variety;
    let engine = shared_engine(&entry)?;
    let mut b = Builder::new("split_or_spinor_q3", &entry.key, Some(direction));
    b.cite("thm.q3-split-spinor")
        .cite("formula.distribution-sequence")
        .finding("r", json!(r));
    let c1 = x.index() - r;
    match direction {
        CheckDirection::Forward => {
            let (acm, how) = evidence.bundle_acm(&evidence.tangent);
            match acm {
                Tri::Yes => b.step(format!("T_F has no intermediate cohomology ({how})")),
                Tri::No => b.not_met(format!("T_F has intermediate cohomology ({how})")),
                Tri::Unknown => b.unresolved(format!("no intermediate cohomology of T_F: {how}")),
            };
            b.cite("formula.bott-quadric")
                .cite("formula.tangent-as-forms")
                .cite("derived.engine");
            let support = tangent_support(&engine, x, 1, TX_SCAN.0, TX_SCAN.1)?;
            b.step("h^1(I_Z(r+t)) = h^1(TQ^3(t)) since h^1(T_F(t)) = h^2(T_F(t)) = 0");
            let pinned = matches!(support.as_slice(), [(-2, d)] if d.exact_value().is_some_and(|v| *v == 1u32.into()));
            if pinned {
                b.step(format!(
                    "h^1(TQ^3(t)) = 0 for t in {}..={} except h^1(TQ^3(-2)) = 1",
                    TX_SCAN.0, TX_SCAN.1
                ));
            } else {
                b.unresolved(format!("engine support of h^1(TQ^3) is {}", support_json(&support)));
            }
            cross_check_ideal(&mut b, evidence, r, &support, TX_SCAN);
            b.finding("nonzero_h1_twist", json!(r - 2))
                .finding("h1_value", json!(1))
                .finding("z_arithmetically_buchsbaum", json!(true));
            Ok(b.finish(Conclusion::Holds))
        }
        CheckDirection::Converse => {
            if r == 2 {
                b.unresolved("r = 2: the vanishing h^0(I_Z(r+t)) = h^3(O(-t-r-3)) used twice is not available");
                return Ok(b.finish(Conclusion::Inconclusive));
            }
            match evidence.single_h1_profile(r - 2) {
                Ok(()) => b.step(format!("Z aB with h^1(I_Z({})) = 1 its only nonzero h^1", r - 2)),
                Err((Tri::No, why)) => b.not_met(format!("aB profile at twist {}: {why}", r - 2)),
                Err((_, why)) => b.unresolved(format!("aB profile at twist {}: {why}", r - 2)),
            };
            let tab = evidence.tangent.as_ref();
            require_h(&mut b, tab, "T_F", 2, -2);
            require_h(&mut b, tab, "T_F", 2, -1 - c1);
            if !b.blocked() {
                b.cite("formula.bott-quadric")
                    .cite("formula.serre-duality")
                    .cite("formula.rank2-dual");
                b.step("t != -2: h^1(TQ^3(t)) = 0 and h^0(I_Z(r+t)) = 0 give h^1(T_F(t)) = 0");
                b.step(format!(
                    "duality: h^2(T_F(s)) = h^1(T_F(-s-3-c1)) = 0 for s != {}",
                    -1 - c1
                ));
                b.step("t = -2: H^1(TQ^3(-2)) = C maps isomorphically onto H^1(I_Z(r-2)), so h^1(T_F(-2)) = 0");
                b.cite("axiom.acm-rank2-q3");
                b.step("T_F is aCM of rank 2 on Q^3, hence split or a spinor twist");
                b.finding("split_or_spinor", json!(true));
            }
            Ok(b.finish(Conclusion::Holds))
        }
    }
}

/// Flags `HypothesisNotMet` when supplied `h^1(I_Z(r+t))` cannot equal the
/// engine's `h^1(E(t))` for the bundle `E` in the sequence.
fn cross_check_ideal(b: &mut Builder, ev: &CohEvidence, r: i64, support: &[(i64, CohDim)], scan: (i64, i64)) {
    let Some(tab) = &ev.ideal else { return };
    for s in tab.twists() {
        let t = s - r;
        if t < scan.0 || t > scan.1 {
            continue;
        }
        let given = tab.get(1, s).expect("covered");
        let engine = support
            .iter()
            .find(|(u, _)| *u == t)
            .map(|(_, d)| d.clone())
            .unwrap_or_else(CohDim::zero);
        if given.meet(&engine).is_none() {
            b.not_met(format!(
                "supplied h^1(I_Z({s})) = {given} but an aCM bundle forces {engine}"
            ));
        }
    }
}

fn acm_window(entry: &CatalogEntry) -> Result<((i64, i64), &'static str), CriteriaError> {
    match entry.index {
        2 => Ok(((-6, 8), "thm.acm-tangent-index2")),
        1 => Ok(((-4, 4), "thm.acm-tangent-index1")),
        i => Err(CriteriaError::WrongIndex {
            variety: entry.key.clone(),
            index: i,
            expected: "{1, 2}".into(),
        }),
    }
}

/// aCM tangent sheaf versus a bounded `h^1(I_Z)` window, index 1 and 2.
pub fn check_acm_tangent(
    entry: &CatalogEntry,
    evidence: &CohEvidence,
    r: i64,
    direction: CheckDirection,
) -> Result<Verdict, CriteriaError> {
    let ((lo, hi), id) = acm_window(entry)?;
    evidence.validate()?;
    let x = &entry.variety;
    let engine = shared_engine(entry)?;
    let mut b = Builder::new("acm_tangent", &entry.key, Some(direction));
    b.cite(id).cite("formula.distribution-sequence").cite("derived.engine");
    b.finding("r", json!(r)).finding("window", json!([lo, hi]));
    match direction {
        CheckDirection::Forward => {
            let (acm, how) = evidence.bundle_acm(&evidence.tangent);
            match acm {
                Tri::Yes => b.step(format!("T_F has no intermediate cohomology ({how})")),
                Tri::No => b.not_met(format!("T_F has intermediate cohomology ({how})")),
                Tri::Unknown => b.unresolved(format!("no intermediate cohomology of T_F: {how}")),
            };
            b.cite("formula.tangent-as-forms").cite("formula.serre-duality");
            b.step("h^1(I_Z(r+t)) = h^1(TX(t)) = h^1(Omega^2_X(t + index))");
            let support = tangent_support(&engine, x, 1, TX_SCAN.0, TX_SCAN.1)?;
            cross_check_ideal(&mut b, evidence, r, &support, TX_SCAN);
            if let (Some(first), Some(last)) = (support.first(), support.last()) {
                b.finding("engine_window", json!([first.0, last.0]));
            }
            b.finding("engine_support", support_json(&support));
            let outside: Vec<_> = support.iter().filter(|(t, _)| *t < lo || *t > hi).cloned().collect();
            if outside.is_empty() {
                b.step(format!(
                    "engine certifies h^1(TX(t)) = 0 for t in {}..={} outside [{lo}, {hi}]",
                    TX_SCAN.0, TX_SCAN.1
                ));
                Ok(b.finish(Conclusion::Holds))
            } else if outside.iter().any(|(_, d)| d.is_nonzero()) {
                b.finding("nonvanishing_outside_window", support_json(&outside));
                for (t, d) in outside.iter().filter(|(_, d)| d.is_nonzero()) {
                    b.step(format!("engine certifies h^1(TX({t})) = {d}, so h^1(I_Z(r+{t})) != 0"));
                }
                Ok(b.finish(Conclusion::Fails))
            } else {
                b.unresolved(format!("engine leaves h^1(TX(t)) open at {}", support_json(&outside)));
                Ok(b.finish(Conclusion::Holds))
            }
        }
        CheckDirection::Converse => {
            ideal_vanishes_outside(&mut b, evidence, r, lo, hi);
            match &evidence.tangent {
                Some(tab) if tab.covers(hi) => {
                    let mut open = None;
                    for t in tab.twists().filter(|&t| t <= hi) {
                        let d = tab.get(2, t).expect("covered");
                        if d.is_nonzero() {
                            b.not_met(format!("h^2(T_F({t})) = {d}, needs 0 for t <= {hi}"));
                        } else if !d.is_zero() && open.is_none() {
                            open = Some(t);
                        }
                    }
                    match open {
                        Some(t) => b.unresolved(format!("h^2(T_F({t})) undetermined")),
                        None => b.step(format!("h^2(T_F(t)) = 0 for declared t <= {hi} (evidence)")),
                    };
                    if let Some(t) = tab.twists().find(|&t| tab.get(1, t).expect("covered").is_nonzero()) {
                        b.not_met(format!(
                            "h^1(T_F({t})) is nonzero, which the side condition on h^1(T_F(s)) excludes"
                        ));
                    }
                }
                _ => {
                    b.unresolved(format!("need h^2(T_F(t)) for t <= {hi}"));
                }
            }
            let h2: Vec<_> = tangent_support(&engine, x, 2, 0, TX_SCAN.1)?;
            if h2.is_empty() {
                b.cite("formula.flenner");
                b.step(format!("engine certifies h^2(TX(t)) = 0 for t in 0..={}", TX_SCAN.1));
            } else {
                b.unresolved(format!("h^2(TX(t)) not certified zero at {}", support_json(&h2)));
            }
            if !b.blocked() {
                b.cite("formula.serre-duality").cite("formula.rank2-dual");
                b.step(format!(
                    "t > {hi}: h^1(I_Z(r+t)) = 0 and h^2(TX(t)) = 0 give h^2(T_F(t)) = 0"
                ));
                b.step("so h^2(T_F(t)) = 0 for all t, and duality gives h^1(T_F(s)) = 0 for all s");
                b.finding("t_f_acm", json!(true));
            }
            Ok(b.finish(Conclusion::Holds))
        }
    }
}

fn ideal_vanishes_outside(b: &mut Builder, ev: &CohEvidence, r: i64, lo: i64, hi: i64) {
    let what = format!("h^1(I_Z(r+t)) = 0 for t < {lo} and t > {hi}");
    if let Some(s) = ev.flags.only_nonzero_h1_at {
        if (lo..=hi).contains(&(s - r)) {
            b.step(format!("{what} (only nonzero h^1 at s = {s})"));
        } else {
            b.not_met(format!("{what}: the nonzero h^1 sits at s = {s}"));
        }
        return;
    }
    let Some(tab) = &ev.ideal else {
        b.unresolved(format!("{what}: no ideal table"));
        return;
    };
    if !(tab.t_min < r + lo && tab.t_max() > r + hi) {
        b.unresolved(format!(
            "{what}: ideal table must extend past twists {} and {}",
            r + lo,
            r + hi
        ));
        return;
    }
    let mut open = None;
    for s in tab.twists().filter(|&s| s - r < lo || s - r > hi) {
        let d = tab.get(1, s).expect("covered");
        if d.is_nonzero() {
            b.not_met(format!("{what}: h^1(I_Z({s})) = {d}"));
            return;
        }
        if !d.is_zero() && open.is_none() {
            open = Some(s);
        }
    }
    match open {
        Some(s) => b.unresolved(format!("{what}: h^1(I_Z({s})) undetermined")),
        None => b.step(format!("{what} (evidence)")),
    };
}

/// aCM conormal sheaf of a one-dimensional distribution versus an aB
/// singular scheme with a single `h^1` at twist `r`.
pub fn check_conormal_acm(
    entry: &CatalogEntry,
    evidence: &CohEvidence,
    r: i64,
    direction: CheckDirection,
) -> Result<Verdict, CriteriaError> {
    evidence.validate()?;
    let iota = entry.index;
    let mut b = Builder::new("conormal_acm", &entry.key, Some(direction));
    b.cite("formula.conormal-sequence").finding("r", json!(r));
    match direction {
        CheckDirection::Forward => {
            b.cite("thm.conormal-acm");
            if iota == 4 {
                b.cite("prior.pn-conormal");
            }
            let (acm, how) = evidence.bundle_acm(&evidence.conormal);
            match acm {
                Tri::Yes => b.step(format!("N*_F has no intermediate cohomology ({how})")),
                Tri::No => b.not_met(format!("N*_F has intermediate cohomology ({how})")),
                Tri::Unknown => b.unresolved(format!("no intermediate cohomology of N*_F: {how}")),
            };
            let engine = shared_engine(entry)?;
            b.cite("formula.flenner").cite("derived.engine");
            b.step("h^1(I_Z(r+t)) = h^1(Omega^1_X(t)) since h^1(N*_F(t)) = h^2(N*_F(t)) = 0");
            let mut support = Vec::new();
            for t in TX_SCAN.0..=TX_SCAN.1 {
                let d = engine.h(1, 1, t)?;
                if !d.is_zero() {
                    support.push((t, d));
                }
            }
            match support.as_slice() {
                [(0, d)] if d.exact_value().is_some_and(|v| *v == 1u32.into()) => {
                    b.step(format!(
                        "h^1(Omega^1_X(t)) = 0 for t in {}..={} except h^1(Omega^1_X) = 1",
                        TX_SCAN.0, TX_SCAN.1
                    ));
                }
                _ => {
                    b.unresolved(format!(
                        "engine support of h^1(Omega^1_X) is {}",
                        support_json(&support)
                    ));
                }
            }
            cross_check_ideal(&mut b, evidence, r, &support, TX_SCAN);
            b.finding("nonzero_h1_twist", json!(r))
                .finding("h1_value", json!(1))
                .finding("z_arithmetically_buchsbaum", json!(true));
            Ok(b.finish(Conclusion::Holds))
        }
        CheckDirection::Converse => {
            b.cite("thm.conormal-acm-converse");
            if !(1..=3).contains(&iota) {
                b.cite("prior.pn-conormal");
                b.not_met(format!(
                    "index {iota} is outside {{1, 2, 3}}; on P^3 the statement is prior work"
                ));
                return Ok(b.finish(Conclusion::Holds));
            }
            match evidence.single_h1_profile(r) {
                Ok(()) => b.step(format!("Z aB with h^1(I_Z({r})) = 1 its only nonzero h^1")),
                Err((Tri::No, why)) => b.not_met(format!("aB profile at twist {r}: {why}")),
                Err((_, why)) => b.unresolved(format!("aB profile at twist {r}: {why}")),
            };
            // c1(N*_F) = -index - r, so -c1(N*_F) - index = r
            let tab = evidence.conormal.as_ref();
            require_h(&mut b, tab, "N*_F", 2, 0);
            require_h(&mut b, tab, "N*_F", 2, r);
            if r == -iota {
                b.unresolved("r = -index: h^0(I_Z(r+t)) = h^3(O_X(-r-t-index)) need not vanish");
            }
            if !b.blocked() {
                b.cite("axiom.kodaira")
                    .cite("formula.flenner")
                    .cite("formula.serre-duality")
                    .cite("formula.rank2-dual");
                b.step("t != 0: h^1(Omega^1_X(t)) = 0 and h^0(I_Z(r+t)) = 0 give h^1(N*_F(t)) = 0");
                b.step(format!(
                    "duality: h^2(N*_F(s)) = 0 for s != {r}, and h^2(N*_F({r})) = 0 by hypothesis"
                ));
                b.step("t = 0: H^1(Omega^1_X) = C maps isomorphically onto H^1(I_Z(r)), so h^1(N*_F) = 0");
                b.finding("n_f_acm", json!(true));
            }
            Ok(b.finish(Conclusion::Holds))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TxTwistReport {
    pub variety: String,
    pub index: i64,
    pub r_range: (i64, i64),
    /// `r` where `h^1(TX(-r)) = 0` is not certified
    pub h1_nonvanishing: Vec<i64>,
    /// largest entry of `h1_nonvanishing`; `None` when it is empty
    pub h1_zero_for_r_above: Option<i64>,
    pub h2_nonvanishing: Vec<i64>,
    /// the single entry of `h2_nonvanishing`, if there is exactly one
    pub h2_zero_except_r: Option<i64>,
    pub uniform_h1_above: i64,
    pub uniform_h2_except: i64,
    /// `{r > 6}` and `{r != index}` lie in this variety's vanishing regions
    pub uniform_contained: bool,
}

/// `r` range over which the `TX(-r)` vanishing is certified.
pub const TX_R_RANGE: (i64, i64) = (-10, 30);

/// Vanishing of `h^1(TX(-r))` and `h^2(TX(-r))` from the engine.
pub fn tx_twist_vanishing(entry: &CatalogEntry) -> Result<TxTwistReport, CriteriaError> {
    let engine = shared_engine(entry)?;
    let x = &entry.variety;
    let (lo, hi) = TX_R_RANGE;
    let mut h1 = Vec::new();
    let mut h2 = Vec::new();
    for r in lo..=hi {
        if !tangent_h(&engine, x, 1, -r)?.is_zero() {
            h1.push(r);
        }
        if !tangent_h(&engine, x, 2, -r)?.is_zero() {
            h2.push(r);
        }
    }
    let uniform_h1_above = 6;
    let uniform_contained = h1.iter().all(|&r| r <= uniform_h1_above) && h2.iter().all(|&r| r == entry.index);
    Ok(TxTwistReport {
        variety: entry.key.clone(),
        index: entry.index,
        r_range: TX_R_RANGE,
        h1_zero_for_r_above: h1.last().copied(),
        h2_zero_except_r: if h2.len() == 1 { Some(h2[0]) } else { None },
        h1_nonvanishing: h1,
        h2_nonvanishing: h2,
        uniform_h1_above,
        uniform_h2_except: entry.index,
        uniform_contained,
    })
}

/// How `h^2(T_F(-r)) = 0` is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum H2Evidence {
    Dim(CohDim),
    /// `T_F = ⊕ O(a_i)`
    SplitTangent(Vec<i64>),
    /// `T_F^*` ample
    AmpleDual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectednessInput {
    pub h2_tf_minus_r: H2Evidence,
    /// the pure one-dimensional part `C` of `Z` is nonempty
    pub c_nonempty: bool,
    /// `Z = C` and it is connected (converse input)
    #[serde(default)]
    pub z_connected_curve: bool,
}

/// Connectedness of the singular scheme of a codimension-one distribution.
pub fn check_connectedness(
    entry: &CatalogEntry,
    input: &ConnectednessInput,
    r: i64,
    direction: CheckDirection,
) -> Result<Verdict, CriteriaError> {
    let engine = shared_engine(entry)?;
    let x = &entry.variety;
    let mut b = Builder::new("connectedness", &entry.key, Some(direction));
    b.cite("thm.connectedness")
        .cite("formula.distribution-sequence")
        .cite("derived.engine");
    b.finding("r", json!(r));
    match direction {
        CheckDirection::Forward => {
            match &input.h2_tf_minus_r {
                H2Evidence::Dim(d) if d.is_zero() => {
                    b.step(format!("h^2(T_F(-{r})) = 0 (evidence)"));
                }
                H2Evidence::Dim(d) if d.is_nonzero() => {
                    b.not_met(format!("h^2(T_F(-{r})) = {d}"));
                }
                H2Evidence::Dim(d) => {
                    b.unresolved(format!("h^2(T_F(-{r})) = {d} not certified zero"));
                }
                H2Evidence::SplitTangent(a) => {
                    b.cite("cor.split-connected").cite("axiom.line-bundles-acm");
                    b.step(format!("T_F = sum of O({a:?}) has h^2(T_F(-{r})) = 0"));
                }
                H2Evidence::AmpleDual => {
                    b.cite("cor.ample-dual-connected")
                        .cite("axiom.griffiths-vanishing")
                        .cite("formula.serre-duality");
                    b.step(format!(
                        "h^2(T_F(-{r})) = h^1(T_F^* (x) det T_F^* (x) O(index) (x) K_X) = 0 by Griffiths vanishing"
                    ));
                }
            }
            if input.c_nonempty {
                b.step("C is nonempty (evidence)");
            } else {
                b.not_met("C is empty");
            }
            let h1 = tangent_h(&engine, x, 1, -r)?;
            if h1.is_zero() {
                b.cite("lem.tx-twist-vanishing");
                b.step(format!("engine certifies h^1(TX(-{r})) = 0"));
            } else {
                b.unresolved(format!("h^1(TX(-{r})) = {h1} is not certified zero"));
            }
            b.finding("in_uniform_domain", json!(r > 6));
            if !b.blocked() {
                b.cite("formula.ideal-sequence").cite("axiom.locally-free-iff-pure");
                b.step("h^1(I_Z) = 0, hence h^0(O_Z) = 1");
                b.step("C nonempty rules out a length-one zero-dimensional part, so Z = C is connected");
                b.finding("z_connected", json!(true))
                    .finding("pure_dimension_one", json!(true))
                    .finding("t_f_locally_free", json!(true));
            }
            Ok(b.finish(Conclusion::Holds))
        }
        CheckDirection::Converse => {
            if r == entry.index {
                b.not_met(format!("r = {r} equals the index"));
                return Ok(b.finish(Conclusion::Holds));
            }
            if input.z_connected_curve {
                b.step("Z = C is connected (evidence)");
            } else {
                b.not_met("Z = C connected is not asserted");
            }
            let h2 = tangent_h(&engine, x, 2, -r)?;
            if h2.is_zero() {
                b.cite("lem.tx-twist-vanishing");
                b.step(format!("engine certifies h^2(TX(-{r})) = 0"));
            } else {
                b.unresolved(format!("h^2(TX(-{r})) = {h2} is not certified zero"));
            }
            if !b.blocked() {
                b.cite("axiom.locally-free-iff-pure").cite("formula.serre-duality");
                b.step("Z pure of dimension one, so T_F is locally free");
                b.step("h^1(I_Z) = 0 for a connected curve, so h^2(T_F(-r)) injects into h^2(TX(-r)) = 0");
                b.finding("t_f_locally_free", json!(true))
                    .finding("h2_tf_minus_r_zero", json!(true));
            }
            Ok(b.finish(Conclusion::Holds))
        }
    }
}

/// Split-or-stable dichotomy for `c1(T_F) = 0`.
pub fn stability_dichotomy(entry: &CatalogEntry, spec: &DistributionSpec) -> Result<Verdict, CriteriaError> {
    if spec.variety != entry.variety {
        return Err(CriteriaError::InconsistentEvidence(format!(
            "distribution lives on {}, not on {}",
            spec.variety, entry.key
        )));
    }
    let mut b = Builder::new("stability", &entry.key, None);
    b.cite("thm.stability").finding("c1_tf", json!(spec.c1_tf));
    if spec.c1_tf != 0 {
        b.not_met(format!("c1(T_F) = {}, needs 0", spec.c1_tf));
        return Ok(b.finish(Conclusion::Holds));
    }
    b.step("c1(T_F) = 0 and T_F locally free (contract)");
    match entry.index {
        4 => {
            b.cite("prior.p3-stability");
            b.step("P^3: recorded prior result");
        }
        3 => {
            b.cite("thm.stability-q3").cite("formula.riemann-roch-curve");
            b.step("Q^3: a section of T_F would cut a curve Gamma whose genus is computed two ways");
            let mut reports = Vec::new();
            for hz in [0, 2] {
                let rep = q3_stability_contradiction(hz)?;
                b.step(format!(
                    "H.[Z] = {hz}: g = {} from the dualizing sheaf, g = {} from c3(I_Z){}",
                    crate::exact_arith::format_rational(&rep.g_dualizing),
                    crate::exact_arith::format_rational(&rep.g_c3),
                    if rep.consistent { "" } else { ", inconsistent" }
                ));
                if rep.consistent {
                    b.unresolved(format!("H.[Z] = {hz} does not give a contradiction"));
                }
                reports.push(rep);
            }
            b.finding(
                "genus_pairs",
                Value::Array(
                    reports
                        .iter()
                        .map(|r| {
                            json!([
                                crate::exact_arith::format_rational(&r.g_dualizing),
                                crate::exact_arith::format_rational(&r.g_c3)
                            ])
                        })
                        .collect(),
                ),
            );
            b.finding("reports", serde_json::to_value(&reports).expect("serializable"));
            b.step("every non-split, non-stable case is contradictory");
        }
        1 | 2 => {
            b.cite("axiom.isolated-sections");
            b.step("index 1 or 2: recorded axiom on sections of T_F");
        }
        i => {
            return Err(CriteriaError::WrongIndex {
                variety: entry.key.clone(),
                index: i,
                expected: "{1, 2, 3, 4}".into(),
            })
        }
    }
    b.finding("split_or_stable", json!(true));
    Ok(b.finish(Conclusion::Holds))
}

/// `h^1(I_Z(s))` for a distribution whose `T_F` is aCM, read off the engine:
/// `h^1(I_Z(r+t)) = h^1(TX(t))`. Only the `h^1` row is filled.
pub fn ideal_from_acm_tangent(
    entry: &CatalogEntry,
    r: i64,
    s_min: i64,
    s_max: i64,
) -> Result<TwistTable, CriteriaError> {
    let engine = shared_engine(entry)?;
    let mut tab = TwistTable::from_fn(s_min, s_max, |_, _| CohDim::unknown());
    for s in s_min..=s_max {
        tab.set(1, s, tangent_h(&engine, &entry.variety, 1, s - r)?);
    }
    Ok(tab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::catalog;

    #[test]
    fn registry_ids_are_unique() {
        for (i, a) in REGISTRY.iter().enumerate() {
            assert!(REGISTRY[i + 1..].iter().all(|b| b.id != a.id), "{}", a.id);
        }
    }

    #[test]
    fn flag_table_conflicts_are_reported() {
        let x = catalog("Q3").unwrap().variety;
        let mut ev = CohEvidence::split_tangent(&x, &[1, 1], -3, 3).unwrap();
        ev.tangent.as_mut().unwrap().set(1, 0, CohDim::nonzero());
        ev.flags.acm = Some(true);
        assert!(matches!(ev.validate(), Err(CriteriaError::InconsistentEvidence(_))));

        let mut ev = CohEvidence::default();
        ev.flags.only_nonzero_h1_at = Some(1);
        ev.flags.ab = Some(false);
        assert!(ev.validate().is_err());
    }

    #[test]
    fn profile_needs_the_value_one() {
        let mut tab = TwistTable::from_fn(-5, 5, |p, _| if p == 1 { CohDim::zero() } else { CohDim::unknown() });
        tab.set(1, 1, CohDim::exact(2u32));
        let ev = CohEvidence {
            ideal: Some(tab),
            ..Default::default()
        };
        assert!(matches!(ev.single_h1_profile(1), Err((Tri::No, _))));
        assert!(matches!(ev.single_h1_profile(2), Err((Tri::No, _))));
    }
}
