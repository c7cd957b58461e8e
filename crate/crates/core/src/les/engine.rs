//! Fixpoint propagation over the restriction sequences of an ambient chain
//! `X = X_0 ⊂ X_1 ⊂ … ⊂ X_c = P(a)`.
//!
//! For every level `k < c` with `X_k ∈ |O_{X_{k+1}}(d)|` two families of
//! short exact sequences are used:
//!
//! * on `X_k`: `0 → Ω^{q-1}_{X_k}(t-d) → Ω^q_{X_{k+1}}|_{X_k}(t) → Ω^q_{X_k}(t) → 0`
//! * on `X_{k+1}`: `0 → Ω^q_{X_{k+1}}(t-d) → Ω^q_{X_{k+1}}(t) → Ω^q_{X_{k+1}}|_{X_k}(t) → 0`
//!
//! The top level is seeded from the weighted Bott formulas; the lower levels
//! from vanishing theorems, the structure sheaf, and Serre duality.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::cohdim::CohDim;
use super::ses::propagate_les;
use super::sheaf::{CohEntry, CohTable, SheafBase, SheafExpr};
use crate::bott::{bott_pn, dolgachev_table, quadric_pattern, quadric_special};
use crate::variety::{catalog, AmbientChain, CatalogEntry, ChainSpec, VarietyError, WeightedCI};

/// Default half-width of the twist box the solver materializes.
pub const DEFAULT_BOUND: i64 = 64;

const STEP_CAP: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxiomSet {
    pub flenner: bool,
    pub dolgachev: bool,
    pub bott_pn: bool,
    pub quadric_pattern: bool,
    pub h_structure: bool,
    pub quadric_specials: bool,
    pub serre_duality: bool,
}

impl Default for AxiomSet {
    fn default() -> Self {
        AxiomSet::all()
    }
}

impl AxiomSet {
    pub fn all() -> Self {
        AxiomSet {
            flenner: true,
            dolgachev: true,
            bott_pn: true,
            quadric_pattern: true,
            h_structure: true,
            quadric_specials: true,
            serre_duality: true,
        }
    }

    /// Only closed formulas: Bott, Dolgachev, Flenner and `h^i(O(t))`.
    pub fn formulas_only() -> Self {
        AxiomSet {
            quadric_pattern: false,
            quadric_specials: false,
            serre_duality: false,
            ..Self::all()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafKind {
    /// `Ω^q_{X_k}`
    Omega(u32),
    /// `Ω^q_{X_{k+1}}|_{X_k}`
    Restricted(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SheafKey {
    pub level: usize,
    pub kind: SheafKind,
    pub twist: i64,
}

impl fmt::Display for SheafKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SheafKind::Omega(q) => write!(f, "Omega^{q}_X{}({})", self.level, self.twist),
            SheafKind::Restricted(q) => {
                write!(f, "Omega^{q}_X{}|X{}({})", self.level + 1, self.level, self.twist)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    BottPn,
    Dolgachev,
    QuadricPattern,
    QuadricSpecial,
    Flenner,
    HStructure,
    CanonicalSheaf,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::BottPn => "bott_pn",
            Axiom::Dolgachev => "dolgachev",
            Axiom::QuadricPattern => "quadric_pattern",
            Axiom::QuadricSpecial => "quadric_special",
            Axiom::Flenner => "flenner",
            Axiom::HStructure => "h_structure",
            Axiom::CanonicalSheaf => "canonical_sheaf",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Note {
    Unset,
    Axiom(Axiom),
    Constraint(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error("contradiction in {site}: {detail}")]
    Contradiction { site: String, detail: String },
    #[error("unsupported chain: {0}")]
    UnsupportedChain(String),
    #[error("propagation did not settle within {0} steps")]
    IterationCap(usize),
    #[error("no certified vanishing window of width {window} inside [{t_min}, {t_max}] for h^{p}(Omega^{q})")]
    NoCertification {
        p: u32,
        q: u32,
        window: i64,
        t_min: i64,
        t_max: i64,
    },
    #[error("{0}")]
    OutOfRange(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SesFamily {
    /// conormal sequence on `X_k`
    Conormal,
    /// restriction to the divisor `X_k ⊂ X_{k+1}`
    Restriction,
}

#[derive(Clone, Debug)]
enum Constraint {
    Ses {
        family: SesFamily,
        level: usize,
        q: u32,
        t: i64,
        /// `None` is the zero sheaf
        nodes: [Option<usize>; 3],
        /// number of cohomological degrees
        len: usize,
    },
    Dual {
        a: usize,
        b: usize,
        n: usize,
    },
}

#[derive(Clone, Debug)]
struct Node {
    key: SheafKey,
    dims: Vec<CohDim>,
    notes: Vec<Note>,
}

/// All knowledge about one ambient chain over the twist box `[-bound, bound]`.
#[derive(Clone, Debug)]
pub struct ChainSolver {
    chain: AmbientChain,
    axioms: AxiomSet,
    bound: i64,
    nodes: Vec<Node>,
    index: HashMap<SheafKey, usize>,
    constraints: Vec<Constraint>,
    by_node: Vec<Vec<usize>>,
    steps: usize,
}

impl ChainSolver {
    pub fn new(chain: AmbientChain, axioms: AxiomSet) -> Result<Self, EngineError> {
        Self::with_bound(chain, axioms, DEFAULT_BOUND)
    }

    pub fn with_bound(chain: AmbientChain, axioms: AxiomSet, bound: i64) -> Result<Self, EngineError> {
        let mut s = ChainSolver {
            chain,
            axioms,
            bound,
            nodes: Vec::new(),
            index: HashMap::new(),
            constraints: Vec::new(),
            by_node: Vec::new(),
            steps: 0,
        };
        s.build_nodes();
        s.build_constraints();
        s.seed()?;
        s.run(true)?;
        Ok(s)
    }

    pub fn for_entry(entry: &CatalogEntry, chain: Option<&str>, axioms: AxiomSet) -> Result<Self, EngineError> {
        Self::new(entry.chain(chain)?, axioms)
    }

    pub fn for_wci(x: &WeightedCI, spec: &ChainSpec, axioms: AxiomSet) -> Result<Self, EngineError> {
        Self::new(AmbientChain::build(x, spec)?, axioms)
    }

    pub fn chain(&self) -> &AmbientChain {
        &self.chain
    }

    pub fn axioms(&self) -> AxiomSet {
        self.axioms
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn target(&self) -> &WeightedCI {
        self.chain.target()
    }

    fn level_dim(&self, k: usize) -> u32 {
        self.chain.level(k).dim()
    }

    fn build_nodes(&mut self) {
        let top = self.chain.top();
        for k in 0..=top {
            let n = self.level_dim(k);
            let mut kinds: Vec<SheafKind> = (0..=n).map(SheafKind::Omega).collect();
            if k < top {
                kinds.extend((0..=n + 1).map(SheafKind::Restricted));
            }
            for kind in kinds {
                for t in -self.bound..=self.bound {
                    let key = SheafKey {
                        level: k,
                        kind,
                        twist: t,
                    };
                    self.index.insert(key, self.nodes.len());
                    self.nodes.push(Node {
                        key,
                        dims: vec![CohDim::unknown(); n as usize + 1],
                        notes: vec![Note::Unset; n as usize + 1],
                    });
                }
            }
        }
        self.by_node = vec![Vec::new(); self.nodes.len()];
    }

    fn node(&self, level: usize, kind: SheafKind, twist: i64) -> Option<usize> {
        self.index.get(&SheafKey { level, kind, twist }).copied()
    }

    /// `Some(None)` for a zero sheaf, `Some(Some(i))` for a node, `None`
    /// when it falls outside the box.
    fn slot(&self, level: usize, kind: SheafKind, twist: i64) -> Option<Option<usize>> {
        let n = self.level_dim(level);
        match kind {
            SheafKind::Omega(q) if q > n => return Some(None),
            SheafKind::Restricted(q) if q > n + 1 => return Some(None),
            _ => {}
        }
        self.node(level, kind, twist).map(Some)
    }

    fn push_constraint(&mut self, c: Constraint) {
        let id = self.constraints.len();
        let touched: Vec<usize> = match &c {
            Constraint::Ses { nodes, .. } => nodes.iter().flatten().copied().collect(),
            Constraint::Dual { a, b, .. } => vec![*a, *b],
        };
        for i in touched {
            if !self.by_node[i].contains(&id) {
                self.by_node[i].push(id);
            }
        }
        self.constraints.push(c);
    }

    fn build_constraints(&mut self) {
        let top = self.chain.top();
        let b = self.bound;
        for k in 0..top {
            let d = self.chain.level(k).degree_in_next.expect("non-top level") as i64;
            let n = self.level_dim(k);
            for q in 0..=n + 1 {
                for t in -b..=b {
                    // conormal sequence on X_k
                    let a = if q == 0 {
                        Some(None)
                    } else {
                        self.slot(k, SheafKind::Omega(q - 1), t - d)
                    };
                    let mid = self.slot(k, SheafKind::Restricted(q), t);
                    let c = self.slot(k, SheafKind::Omega(q), t);
                    if let (Some(a), Some(mid), Some(c)) = (a, mid, c) {
                        self.push_constraint(Constraint::Ses {
                            family: SesFamily::Conormal,
                            level: k,
                            q,
                            t,
                            nodes: [a, mid, c],
                            len: n as usize + 1,
                        });
                    }
                    // restriction from X_{k+1}
                    let a = self.slot(k + 1, SheafKind::Omega(q), t - d);
                    let mid = self.slot(k + 1, SheafKind::Omega(q), t);
                    let c = self.slot(k, SheafKind::Restricted(q), t);
                    if let (Some(a), Some(mid), Some(c)) = (a, mid, c) {
                        self.push_constraint(Constraint::Ses {
                            family: SesFamily::Restriction,
                            level: k + 1,
                            q,
                            t,
                            nodes: [a, mid, c],
                            len: n as usize + 2,
                        });
                    }
                }
            }
        }
        if self.axioms.serre_duality {
            for k in 0..top {
                if !self.chain.level(k).smooth {
                    continue;
                }
                let n = self.level_dim(k);
                for q in 0..=n {
                    for t in -b..=b {
                        let (q2, t2) = (n - q, -t);
                        if (q2, t2) < (q, t) {
                            continue;
                        }
                        let a = self.node(k, SheafKind::Omega(q), t).expect("in box");
                        let bb = self.node(k, SheafKind::Omega(q2), t2).expect("in box");
                        self.push_constraint(Constraint::Dual {
                            a,
                            b: bb,
                            n: n as usize,
                        });
                    }
                }
            }
        }
    }

    fn seed_one(&mut self, idx: usize, p: usize, value: CohDim, axiom: Axiom) -> Result<(), EngineError> {
        let node = &self.nodes[idx];
        match node.dims[p].meet(&value) {
            Some(m) => {
                if m != node.dims[p] {
                    let node = &mut self.nodes[idx];
                    node.dims[p] = m;
                    node.notes[p] = Note::Axiom(axiom);
                }
                Ok(())
            }
            None => Err(EngineError::Contradiction {
                site: format!("h^{p}({})", node.key),
                detail: format!(
                    "{} from {} against {} from {}",
                    value,
                    axiom.name(),
                    node.dims[p],
                    self.describe_note(node.notes[p])
                ),
            }),
        }
    }

    fn seed(&mut self) -> Result<(), EngineError> {
        let top = self.chain.top();
        let b = self.bound;
        let ax = self.axioms;

        // ambient weighted projective space
        let top_space = self.chain.level(top).space.clone();
        let weights = top_space.weights().to_vec();
        let big_n = self.level_dim(top);
        let rule = if !top_space.is_weighted() && ax.bott_pn {
            Axiom::BottPn
        } else if ax.dolgachev {
            Axiom::Dolgachev
        } else {
            return Err(EngineError::UnsupportedChain(format!(
                "no cohomology source for the ambient space {top_space}: enable bott_pn or dolgachev"
            )));
        };
        for q in 0..=big_n {
            for t in -b..=b {
                let idx = self.node(top, SheafKind::Omega(q), t).expect("in box");
                let row: Vec<CohDim> = match rule {
                    Axiom::BottPn => (0..=big_n).map(|p| CohDim::exact(bott_pn(big_n, p, q, t))).collect(),
                    _ => dolgachev_table(&weights, q, t),
                };
                for (p, v) in row.into_iter().enumerate() {
                    self.seed_one(idx, p, v, rule)?;
                }
            }
        }

        for k in 0..top {
            let level = self.chain.level(k).clone();
            let x = &level.space;
            let n = x.dim();
            if ax.h_structure {
                for t in -b..=b {
                    let idx = self.node(k, SheafKind::Omega(0), t).expect("in box");
                    for p in 0..=n {
                        let v = x.h_structure(p, t)?;
                        self.seed_one(idx, p as usize, CohDim::exact(v), Axiom::HStructure)?;
                    }
                }
                if level.smooth {
                    // Ω^n = K = O(κ)
                    let kappa = x.canonical_twist();
                    for t in -b..=b {
                        let idx = self.node(k, SheafKind::Omega(n), t).expect("in box");
                        for p in 0..=n {
                            let v = x.h_structure(p, t + kappa)?;
                            self.seed_one(idx, p as usize, CohDim::exact(v), Axiom::CanonicalSheaf)?;
                        }
                    }
                }
            }
            if ax.flenner && level.smooth {
                for q in 0..=n {
                    for t in -b..=b {
                        let idx = self.node(k, SheafKind::Omega(q), t).expect("in box");
                        for p in 0..=n {
                            if let Some(v) = flenner(n, p, q, t) {
                                self.seed_one(idx, p as usize, v, Axiom::Flenner)?;
                            }
                        }
                    }
                }
            }
            if level.is_quadric() && level.smooth && n >= 2 {
                for q in 0..=n {
                    for t in -b..=b {
                        let idx = self.node(k, SheafKind::Omega(q), t).expect("in box");
                        for p in 0..=n {
                            if ax.quadric_pattern {
                                self.seed_one(idx, p as usize, quadric_pattern(n, p, q, t), Axiom::QuadricPattern)?;
                            }
                            if ax.quadric_specials {
                                if let Some(v) = quadric_special(n, p, q, t) {
                                    self.seed_one(idx, p as usize, CohDim::exact(v), Axiom::QuadricSpecial)?;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn describe_note(&self, note: Note) -> String {
        match note {
            Note::Unset => "no information".into(),
            Note::Axiom(a) => a.name().into(),
            Note::Constraint(i) => self.describe_constraint(i),
        }
    }

    fn describe_constraint(&self, i: usize) -> String {
        match &self.constraints[i] {
            Constraint::Ses {
                family, level, q, t, ..
            } => {
                let name = match family {
                    SesFamily::Conormal => "conormal",
                    SesFamily::Restriction => "restriction",
                };
                format!("{name} sequence #{i} (level {level}, q={q}, t={t})")
            }
            Constraint::Dual { a, .. } => {
                format!("serre duality #{i} ({})", self.nodes[*a].key)
            }
        }
    }

    fn dim_at(&self, slot: Option<usize>, p: usize) -> CohDim {
        match slot {
            Some(i) => self.nodes[i].dims.get(p).cloned().unwrap_or_else(CohDim::zero),
            None => CohDim::zero(),
        }
    }

    /// Applies one constraint; returns the nodes that changed.
    fn apply(&mut self, ci: usize) -> Result<Vec<usize>, EngineError> {
        let mut changed = Vec::new();
        match self.constraints[ci].clone() {
            Constraint::Ses { nodes, len, .. } => {
                let mut seq = Vec::with_capacity(3 * len);
                for p in 0..len {
                    for s in nodes {
                        seq.push(self.dim_at(s, p));
                    }
                }
                let before = seq.clone();
                let moved = propagate_les(&mut seq).map_err(|e| {
                    let window: Vec<String> = (e.start..=e.end)
                        .map(|j| {
                            let (p, slot) = (j / 3, nodes[j % 3]);
                            let what = match slot {
                                Some(i) => format!("h^{p}({})", self.nodes[i].key),
                                None => format!("h^{p}(0)"),
                            };
                            let note = match slot {
                                Some(i) if p < self.nodes[i].notes.len() => self.describe_note(self.nodes[i].notes[p]),
                                _ => "zero sheaf".into(),
                            };
                            format!("{what} = {} [{note}]", before[j])
                        })
                        .collect();
                    EngineError::Contradiction {
                        site: self.describe_constraint(ci),
                        detail: window.join("; "),
                    }
                })?;
                if moved {
                    for p in 0..len {
                        for (col, s) in nodes.iter().enumerate() {
                            let j = 3 * p + col;
                            if seq[j] == before[j] {
                                continue;
                            }
                            match s {
                                Some(i) if p < self.nodes[*i].dims.len() => {
                                    let node = &mut self.nodes[*i];
                                    node.dims[p] = seq[j].clone();
                                    node.notes[p] = Note::Constraint(ci);
                                    if !changed.contains(i) {
                                        changed.push(*i);
                                    }
                                }
                                _ => unreachable!("zero entries stay zero in a consistent sequence"),
                            }
                        }
                    }
                }
            }
            Constraint::Dual { a, b, n } => {
                for p in 0..=n {
                    let (x, y) = (&self.nodes[a].dims[p], &self.nodes[b].dims[n - p]);
                    let m = x.meet(y).ok_or_else(|| EngineError::Contradiction {
                        site: self.describe_constraint(ci),
                        detail: format!(
                            "h^{p}({}) = {x} [{}] vs h^{}({}) = {y} [{}]",
                            self.nodes[a].key,
                            self.describe_note(self.nodes[a].notes[p]),
                            n - p,
                            self.nodes[b].key,
                            self.describe_note(self.nodes[b].notes[n - p]),
                        ),
                    })?;
                    if m != *x {
                        self.nodes[a].dims[p] = m.clone();
                        self.nodes[a].notes[p] = Note::Constraint(ci);
                        if !changed.contains(&a) {
                            changed.push(a);
                        }
                    }
                    if m != self.nodes[b].dims[n - p] {
                        self.nodes[b].dims[n - p] = m;
                        self.nodes[b].notes[n - p] = Note::Constraint(ci);
                        if !changed.contains(&b) {
                            changed.push(b);
                        }
                    }
                }
            }
        }
        Ok(changed)
    }

    /// Worklist fixpoint; constraints are first visited in construction order.
    fn run(&mut self, all: bool) -> Result<bool, EngineError> {
        let mut queue: VecDeque<usize> = VecDeque::new();
        let mut queued = vec![false; self.constraints.len()];
        if all {
            queue.extend(0..self.constraints.len());
            queued.iter_mut().for_each(|q| *q = true);
        }
        let mut any = false;
        while let Some(ci) = queue.pop_front() {
            queued[ci] = false;
            self.steps += 1;
            if self.steps > STEP_CAP {
                return Err(EngineError::IterationCap(STEP_CAP));
            }
            let changed = self.apply(ci)?;
            any |= !changed.is_empty();
            for i in changed {
                for &cj in &self.by_node[i] {
                    if !queued[cj] {
                        queued[cj] = true;
                        queue.push_back(cj);
                    }
                }
            }
        }
        Ok(any)
    }

    /// Runs every constraint again; returns whether anything moved. At a
    /// fixpoint this is `false`.
    pub fn rerun(&mut self) -> Result<bool, EngineError> {
        self.run(true)
    }

    /// All dimensions, node by node, for comparing states.
    pub fn snapshot(&self) -> Vec<Vec<CohDim>> {
        self.nodes.iter().map(|n| n.dims.clone()).collect()
    }

    pub fn entry(&self, key: SheafKey, p: u32) -> CohDim {
        let n = self.level_dim(key.level);
        match key.kind {
            SheafKind::Omega(q) if q > n => return CohDim::zero(),
            SheafKind::Restricted(q) if q > n + 1 => return CohDim::zero(),
            _ => {}
        }
        if p > n {
            return CohDim::zero();
        }
        match self.index.get(&key) {
            Some(&i) => self.nodes[i].dims[p as usize].clone(),
            None => CohDim::unknown(),
        }
    }

    pub fn note(&self, key: SheafKey, p: u32) -> String {
        match self.index.get(&key) {
            Some(&i) if (p as usize) < self.nodes[i].notes.len() => self.describe_note(self.nodes[i].notes[p as usize]),
            _ => "outside the computed box".into(),
        }
    }

    /// `h^p(X_k, Ω^q(t))` for `p = 0..=dim X_k`.
    pub fn omega(&self, level: usize, q: u32, t: i64) -> Vec<CohDim> {
        let n = self.level_dim(level);
        (0..=n)
            .map(|p| {
                self.entry(
                    SheafKey {
                        level,
                        kind: SheafKind::Omega(q),
                        twist: t,
                    },
                    p,
                )
            })
            .collect()
    }

    /// `h^p(X, Ω^q(t))` on the target `X`.
    pub fn h(&self, p: u32, q: u32, t: i64) -> CohDim {
        self.entry(
            SheafKey {
                level: 0,
                kind: SheafKind::Omega(q),
                twist: t,
            },
            p,
        )
    }

    /// Key on the target for an expression over it.
    pub fn key_for(&self, expr: &SheafExpr) -> Option<SheafKey> {
        let c = expr.canonical();
        let kind = match c.base {
            SheafBase::CotangentPower(q) => SheafKind::Omega(q),
            SheafBase::AmbientCotangentRestricted(q) if self.chain.top() > 0 => SheafKind::Restricted(q),
            _ => return None,
        };
        Some(SheafKey {
            level: 0,
            kind,
            twist: c.twist,
        })
    }

    pub fn expr(&self, p: u32, expr: &SheafExpr) -> CohDim {
        match self.key_for(expr) {
            Some(k) => self.entry(k, p),
            None => CohDim::unknown(),
        }
    }

    /// `h^p(X, Ω^q(t))` over all `p`, with provenance.
    pub fn omega_table(&self, q: u32, t: i64) -> CohTable {
        let x = self.target().clone();
        let key = SheafKey {
            level: 0,
            kind: SheafKind::Omega(q),
            twist: t,
        };
        let mut tab = CohTable::default();
        for p in 0..=x.dim() {
            tab.entries.push(CohEntry {
                p,
                sheaf: SheafExpr::omega(&x, q, t),
                dim: self.entry(key, p),
                note: self.note(key, p),
            });
        }
        tab
    }
}

/// Values forced by Flenner's theorem on a smooth `n`-dimensional WCI.
pub fn flenner(n: u32, p: u32, q: u32, t: i64) -> Option<CohDim> {
    let (ni, pi, qi) = (n as i64, p as i64, q as i64);
    if t == 0 && p == q && 2 * q != n {
        return Some(CohDim::exact(1u32));
    }
    let middle = 0 < p && p < n && p + q != n && (p != q || t != 0);
    let above = pi + qi > ni && t > qi - pi;
    let below = pi + qi < ni && t < qi - pi;
    (middle || above || below).then(CohDim::zero)
}

/// Solvers for every chain of an entry whose intermediate varieties are all
/// asserted smooth; queries return the meet over them.
#[derive(Clone, Debug)]
pub struct VarietyEngine {
    pub key: String,
    pub solvers: Vec<ChainSolver>,
}

impl VarietyEngine {
    pub fn new(entry: &CatalogEntry, axioms: AxiomSet) -> Result<Self, EngineError> {
        let mut solvers = Vec::new();
        for spec in &entry.chains {
            if spec.smooth_intermediates.iter().all(|&s| s) {
                solvers.push(ChainSolver::new(AmbientChain::build(&entry.variety, spec)?, axioms)?);
            }
        }
        if solvers.is_empty() {
            return Err(EngineError::UnsupportedChain(format!(
                "{} has no smooth chain",
                entry.key
            )));
        }
        Ok(VarietyEngine {
            key: entry.key.clone(),
            solvers,
        })
    }

    pub fn h(&self, p: u32, q: u32, t: i64) -> Result<CohDim, EngineError> {
        self.meet(|s| s.h(p, q, t), || format!("h^{p}(Omega^{q}({t}))"))
    }

    pub fn expr(&self, p: u32, expr: &SheafExpr) -> Result<CohDim, EngineError> {
        self.meet(|s| s.expr(p, expr), || format!("h^{p}({expr})"))
    }

    fn meet(&self, f: impl Fn(&ChainSolver) -> CohDim, what: impl Fn() -> String) -> Result<CohDim, EngineError> {
        let mut acc = CohDim::unknown();
        for s in &self.solvers {
            let v = f(s);
            acc = acc.meet(&v).ok_or_else(|| EngineError::Contradiction {
                site: what(),
                detail: format!("chains disagree: {acc} vs {v} on chain {}", s.chain().name),
            })?;
        }
        Ok(acc)
    }

    pub fn omega_table(&self, q: u32, t: i64) -> Result<CohTable, EngineError> {
        let first = &self.solvers[0];
        let mut tab = first.omega_table(q, t);
        for s in &self.solvers[1..] {
            for e in s.omega_table(q, t).entries {
                tab.insert(e).map_err(|c| EngineError::Contradiction {
                    site: format!("Omega^{q}({t})"),
                    detail: c.to_string(),
                })?;
            }
        }
        Ok(tab)
    }
}

type EngineCell = Arc<OnceLock<Result<Arc<VarietyEngine>, EngineError>>>;

static SHARED: OnceLock<Mutex<HashMap<String, EngineCell>>> = OnceLock::new();

/// Process-wide [`VarietyEngine`] with all axioms, built once per catalog
/// family. Entries that differ from the catalog get a fresh engine.
pub fn shared_engine(entry: &CatalogEntry) -> Result<Arc<VarietyEngine>, EngineError> {
    if catalog(&entry.key).ok().as_ref() != Some(entry) {
        return VarietyEngine::new(entry, AxiomSet::all()).map(Arc::new);
    }
    let cell = {
        let mut map = SHARED
            .get_or_init(Default::default)
            .lock()
            .expect("engine cache poisoned");
        map.entry(entry.key.clone()).or_default().clone()
    };
    cell.get_or_init(|| VarietyEngine::new(entry, AxiomSet::all()).map(Arc::new))
        .clone()
}

/// Best derivable `h^p(X, Ω^q(t))` for all `p`: along the named chain, or the
/// meet over all smooth chains when `chain` is `None`.
pub fn omega_table(
    entry: &CatalogEntry,
    chain: Option<&str>,
    q: u32,
    t: i64,
    axioms: AxiomSet,
) -> Result<CohTable, EngineError> {
    check_range(t)?;
    match chain {
        Some(_) => Ok(ChainSolver::for_entry(entry, chain, axioms)?.omega_table(q, t)),
        None => VarietyEngine::new(entry, axioms)?.omega_table(q, t),
    }
}

fn check_range(t: i64) -> Result<(), EngineError> {
    if t.abs() > DEFAULT_BOUND {
        return Err(EngineError::OutOfRange(format!(
            "twist {t} outside the supported box [-{DEFAULT_BOUND}, {DEFAULT_BOUND}]"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Above,
    Below,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryStatus {
    CertifiedNonzero,
    Unknown,
    /// Nothing uncertified in the scanned range.
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub variety: String,
    pub chain: String,
    pub p: u32,
    pub q: u32,
    pub direction: Direction,
    #[serde(rename = "T")]
    pub threshold: i64,
    pub boundary_status: BoundaryStatus,
    pub boundary_value: CohDim,
    pub certified_range: (i64, i64),
}

/// Twists scanned when locating a threshold.
pub const SCAN: (i64, i64) = (-40, 40);

/// `T` is the last twist (first, for `Below`) in the scan range where the
/// solver cannot certify vanishing; the `window` twists past it must then
/// be certified zero.
pub fn vanishing_threshold(
    solver: &ChainSolver,
    p: u32,
    q: u32,
    direction: Direction,
    window: i64,
) -> Result<ThresholdReport, EngineError> {
    vanishing_threshold_in(solver, p, q, direction, window, SCAN)
}

pub fn vanishing_threshold_in(
    solver: &ChainSolver,
    p: u32,
    q: u32,
    direction: Direction,
    window: i64,
    (t_min, t_max): (i64, i64),
) -> Result<ThresholdReport, EngineError> {
    if window < 1 {
        return Err(EngineError::OutOfRange("window must be at least 1".into()));
    }
    if t_min.abs() > solver.bound() || t_max.abs() > solver.bound() {
        return Err(EngineError::OutOfRange("scan range exceeds the solver box".into()));
    }
    let uncertified = |t: &i64| !solver.h(p, q, *t).is_zero();
    let none = || EngineError::NoCertification {
        p,
        q,
        window,
        t_min,
        t_max,
    };
    let (threshold, range) = match direction {
        Direction::Above => {
            let t = (t_min..=t_max).rev().find(uncertified).unwrap_or(t_min - 1);
            if t + window > t_max {
                return Err(none());
            }
            (t, (t + 1, t + window))
        }
        Direction::Below => {
            let t = (t_min..=t_max).find(uncertified).unwrap_or(t_max + 1);
            if t - window < t_min {
                return Err(none());
            }
            (t, (t - window, t - 1))
        }
    };
    let boundary_value = if (t_min..=t_max).contains(&threshold) {
        solver.h(p, q, threshold)
    } else {
        CohDim::zero()
    };
    let boundary_status = if boundary_value.is_zero() {
        BoundaryStatus::Zero
    } else if boundary_value.is_nonzero() {
        BoundaryStatus::CertifiedNonzero
    } else {
        BoundaryStatus::Unknown
    };
    Ok(ThresholdReport {
        variety: solver.target().label(),
        chain: solver.chain().name.clone(),
        p,
        q,
        direction,
        threshold,
        boundary_status,
        boundary_value,
        certified_range: range,
    })
}

/// Whether `h^p(X, Ω^q(t)) = 0` is certified for every `t` in `lo..=hi`.
pub fn certifies_zero(solver: &ChainSolver, p: u32, q: u32, lo: i64, hi: i64) -> bool {
    (lo..=hi).all(|t| solver.h(p, q, t).is_zero())
}

/// Engine value as an exact number if pinned.
pub fn exact(d: &CohDim) -> Option<BigUint> {
    d.exact_value().cloned()
}
