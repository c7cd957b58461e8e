//! Recomputes the published threshold tables, the `TX(-r)` vanishing
//! summary, the genus replay and the Chern identities against the checked-in
//! manifest `data/expected.json`, and runs the seeded fuzz suites.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chow::{
    chern_ideal_twisted, chern_tx, distribution_invariants, q3_stability_contradiction, DistributionSpec, TwistRule,
};
use crate::criteria::{tx_twist_vanishing, CriteriaError, TxTwistReport};
use crate::exact_arith::{format_rational, rational_from_ints};
use crate::les::{
    certifies_zero, propagate_les, shared_engine, vanishing_threshold, AxiomSet, BoundaryStatus, ChainSolver, CohDim,
    Direction, EngineError,
};
use crate::variety::{catalog, VarietyError, CATALOG_KEYS};

const MANIFEST: &str = include_str!("../data/expected.json");

/// Width of the certified window past a threshold.
pub const WINDOW: i64 = 20;

#[derive(Debug, Error)]
pub enum ReproduceError {
    #[error("manifest: {0}")]
    Manifest(#[from] serde_json::Error),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Chow(#[from] crate::chow::ChowError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TxClaim {
    All,
    Except(i64),
    Above(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CellSpec {
    Index {
        table: String,
        row: String,
        expected: i64,
    },
    Threshold {
        table: String,
        row: String,
        #[serde(default)]
        chain: Option<String>,
        p: u32,
        q: u32,
        expected: i64,
    },
    TxH1 {
        table: String,
        row: String,
        claim: TxClaim,
    },
    TxH2 {
        table: String,
        row: String,
        except: i64,
        #[serde(default)]
        note: Option<String>,
    },
    TxUniform {
        table: String,
        row: String,
        h1_above: i64,
    },
    Genus {
        table: String,
        row: String,
        h_dot_z: i64,
        g_dualizing: String,
        g_c3: String,
        consistent: bool,
    },
    ChernTx {
        table: String,
        row: String,
        expected: Vec<i64>,
    },
    C2Tf {
        table: String,
        row: String,
        r: i64,
        c2_tx_part: i64,
    },
}

#[derive(Clone, Debug, Deserialize)]
struct Manifest {
    cells: Vec<CellSpec>,
}

pub fn manifest() -> Result<Vec<CellSpec>, ReproduceError> {
    Ok(serde_json::from_str::<Manifest>(MANIFEST)?.cells)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellResult {
    pub id: String,
    pub table: String,
    pub row: String,
    pub column: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesReport {
    pub window: i64,
    pub cells: Vec<CellResult>,
    pub passed: usize,
    pub failed: usize,
}

impl TablesReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn cell(&self, id: &str) -> Option<&CellResult> {
        self.cells.iter().find(|c| c.id == id)
    }

    /// Fixed-width text, one line per cell, grouped by table.
    pub fn to_text(&self) -> String {
        let w_id = self.cells.iter().map(|c| c.id.len()).max().unwrap_or(2).max(4);
        let w_exp = self.cells.iter().map(|c| c.expected.len()).max().unwrap_or(8).max(8);
        let w_cmp = self.cells.iter().map(|c| c.computed.len()).max().unwrap_or(8).max(8);
        let mut out = String::new();
        let mut table = "";
        for c in &self.cells {
            if c.table != table {
                table = &c.table;
                if !out.is_empty() {
                    out.push('\n');
                }
                let _ = writeln!(out, "[{table}]");
                let _ = writeln!(
                    out,
                    "{:<w_id$}  {:<w_exp$}  {:<w_cmp$}  status",
                    "cell", "expected", "computed"
                );
            }
            let _ = write!(
                out,
                "{:<w_id$}  {:<w_exp$}  {:<w_cmp$}  {}",
                c.id,
                c.expected,
                c.computed,
                c.status.label()
            );
            if !c.note.is_empty() {
                let _ = write!(out, "  ({})", c.note);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "\n{} PASS, {} FAIL", self.passed, self.failed);
        out
    }
}

fn threshold_column(p: u32, q: u32) -> String {
    format!("h{p}_omega{q}")
}

/// Solvers for every `(row, chain)` the manifest mentions, built in
/// parallel. Smooth chains are shared with the per-variety engines.
type SolverMap = BTreeMap<(String, Option<String>), Arc<ChainSolver>>;

fn solvers(cells: &[CellSpec]) -> Result<SolverMap, ReproduceError> {
    let mut wanted: Vec<(String, Option<String>)> = Vec::new();
    for c in cells {
        if let CellSpec::Threshold { row, chain, .. } = c {
            let k = (row.clone(), chain.clone());
            if !wanted.contains(&k) {
                wanted.push(k);
            }
        }
    }
    let built: Vec<Result<Arc<ChainSolver>, ReproduceError>> = std::thread::scope(|s| {
        let handles: Vec<_> = wanted
            .iter()
            .map(|(row, chain)| {
                s.spawn(move || -> Result<Arc<ChainSolver>, ReproduceError> {
                    let entry = catalog(row)?;
                    let name = entry.chain_spec(chain.as_deref())?.name.clone();
                    if let Ok(engine) = shared_engine(&entry) {
                        if let Some(sv) = engine.solvers.iter().find(|sv| sv.chain().name == name) {
                            return Ok(Arc::new(sv.clone()));
                        }
                    }
                    Ok(Arc::new(ChainSolver::for_entry(
                        &entry,
                        chain.as_deref(),
                        AxiomSet::all(),
                    )?))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread panicked"))
            .collect()
    });
    let mut map = BTreeMap::new();
    for (k, s) in wanted.into_iter().zip(built) {
        map.insert(k, s?);
    }
    Ok(map)
}

fn tx_reports() -> Result<BTreeMap<String, TxTwistReport>, ReproduceError> {
    let reports: Vec<Result<TxTwistReport, ReproduceError>> = std::thread::scope(|s| {
        let handles: Vec<_> = CATALOG_KEYS
            .iter()
            .map(|key| s.spawn(move || Ok(tx_twist_vanishing(&catalog(key)?)?)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("lemma thread panicked"))
            .collect()
    });
    let mut map = BTreeMap::new();
    for (key, r) in CATALOG_KEYS.iter().zip(reports) {
        map.insert(key.to_string(), r?);
    }
    Ok(map)
}

fn list(v: &[i64]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Evaluates every manifest cell. A threshold cell passes when the engine
/// certifies vanishing on `(T, T + WINDOW]` for the printed `T`.
pub fn reproduce_tables() -> Result<TablesReport, ReproduceError> {
    let cells = manifest()?;
    let (solvers, tx) = std::thread::scope(|s| {
        let a = s.spawn(|| solvers(&cells));
        let b = s.spawn(tx_reports);
        (
            a.join().expect("solver build panicked"),
            b.join().expect("lemma build panicked"),
        )
    });
    let (solvers, tx) = (solvers?, tx?);
    let mut out = Vec::new();
    for c in &cells {
        out.push(match c {
            CellSpec::Index { table, row, expected } => {
                let got = catalog(row)?.index;
                CellResult {
                    id: format!("{table}/{row}/index"),
                    table: table.clone(),
                    row: row.clone(),
                    column: "index".into(),
                    expected: expected.to_string(),
                    computed: got.to_string(),
                    status: Status::of(got == *expected),
                    note: String::new(),
                }
            }
            CellSpec::Threshold {
                table,
                row,
                chain,
                p,
                q,
                expected,
            } => {
                let solver = &solvers[&(row.clone(), chain.clone())];
                let ok = certifies_zero(solver, *p, *q, expected + 1, expected + WINDOW);
                let sharp = vanishing_threshold(solver, *p, *q, Direction::Above, WINDOW)?;
                let mut note = String::new();
                if !ok {
                    if let Some(t) = (expected + 1..=expected + WINDOW).find(|&t| !solver.h(*p, *q, t).is_zero()) {
                        let d = solver.h(*p, *q, t);
                        note = if d.is_nonzero() {
                            format!("h^{p}(Omega^{q}({t})) = {d} is certified nonzero")
                        } else {
                            format!("h^{p}(Omega^{q}({t})) = {d} is not certified zero")
                        };
                    }
                } else if sharp.threshold < *expected && sharp.boundary_status == BoundaryStatus::CertifiedNonzero {
                    note = format!("vanishing already holds for t > {}", sharp.threshold);
                }
                let chain_name = solver.chain().name.clone();
                CellResult {
                    id: match chain {
                        Some(ch) => format!("{table}/{row}[{ch}]/{}", threshold_column(*p, *q)),
                        None => format!("{table}/{row}/{}", threshold_column(*p, *q)),
                    },
                    table: table.clone(),
                    row: row.clone(),
                    column: threshold_column(*p, *q),
                    expected: format!("t>{expected}"),
                    computed: format!("t>{} ({chain_name})", sharp.threshold),
                    status: Status::of(ok),
                    note,
                }
            }
            CellSpec::TxH1 { table, row, claim } => {
                let rep = &tx[row];
                let bad = &rep.h1_nonvanishing;
                let (expected, ok) = match claim {
                    TxClaim::All => ("zero for all r".to_string(), bad.is_empty()),
                    TxClaim::Except(e) => (format!("zero for r != {e}"), bad.iter().all(|r| r == e)),
                    TxClaim::Above(a) => (format!("zero for r > {a}"), bad.iter().all(|r| r <= a)),
                };
                CellResult {
                    id: format!("{table}/{row}/h1_tx"),
                    table: table.clone(),
                    row: row.clone(),
                    column: "h1_tx".into(),
                    expected,
                    computed: format!("uncertified at r in {{{}}}", list(bad)),
                    status: Status::of(ok),
                    note: String::new(),
                }
            }
            CellSpec::TxH2 {
                table,
                row,
                except,
                note,
            } => {
                let rep = &tx[row];
                let bad = &rep.h2_nonvanishing;
                CellResult {
                    id: format!("{table}/{row}/h2_tx"),
                    table: table.clone(),
                    row: row.clone(),
                    column: "h2_tx".into(),
                    expected: format!("zero for r != {except}"),
                    computed: format!("uncertified at r in {{{}}}", list(bad)),
                    status: Status::of(bad.iter().all(|r| r == except)),
                    note: note.clone().unwrap_or_default(),
                }
            }
            CellSpec::TxUniform { table, row, h1_above } => {
                let ok = tx
                    .values()
                    .all(|r| r.uniform_contained && r.h1_nonvanishing.iter().all(|x| x <= h1_above));
                let worst = tx.values().filter_map(|r| r.h1_zero_for_r_above).max();
                CellResult {
                    id: format!("{table}/{row}/uniform"),
                    table: table.clone(),
                    row: row.clone(),
                    column: "uniform".into(),
                    expected: format!("h1 zero for r > {h1_above}, h2 zero for r != index"),
                    computed: format!(
                        "h1 zero for r > {}, h2 exceptions at the index: {}",
                        worst.map_or("any".into(), |w| w.to_string()),
                        tx.values().all(|r| r.h2_nonvanishing == vec![r.index])
                    ),
                    status: Status::of(ok),
                    note: format!(
                        "r in [{}, {}]",
                        crate::criteria::TX_R_RANGE.0,
                        crate::criteria::TX_R_RANGE.1
                    ),
                }
            }
            CellSpec::Genus {
                table,
                row,
                h_dot_z,
                g_dualizing,
                g_c3,
                consistent,
            } => {
                let rep = q3_stability_contradiction(*h_dot_z)?;
                let got = (
                    format_rational(&rep.g_dualizing),
                    format_rational(&rep.g_c3),
                    rep.consistent,
                );
                let ok = got == (g_dualizing.clone(), g_c3.clone(), *consistent);
                CellResult {
                    id: format!("{table}/{row}/HZ={h_dot_z}"),
                    table: table.clone(),
                    row: row.clone(),
                    column: format!("HZ={h_dot_z}"),
                    expected: format!(
                        "({g_dualizing}, {g_c3}, {})",
                        if *consistent { "consistent" } else { "inconsistent" }
                    ),
                    computed: format!(
                        "({}, {}, {})",
                        got.0,
                        got.1,
                        if got.2 { "consistent" } else { "inconsistent" }
                    ),
                    status: Status::of(ok),
                    note: String::new(),
                }
            }
            CellSpec::ChernTx { table, row, expected } => {
                let x = catalog(row)?.variety;
                let c = chern_tx(&x);
                let want: Vec<BigRational> = expected.iter().map(|&n| BigRational::from_integer(n.into())).collect();
                CellResult {
                    id: format!("{table}/{row}/c_tx"),
                    table: table.clone(),
                    row: row.clone(),
                    column: "c_tx".into(),
                    expected: crate::chow::ChowClass::new(&x, want.clone()).to_string(),
                    computed: c.to_string(),
                    status: Status::of(c.coefficients() == want.as_slice()),
                    note: String::new(),
                }
            }
            CellSpec::C2Tf {
                table,
                row,
                r,
                c2_tx_part,
            } => {
                let x = catalog(row)?.variety;
                let c1 = x.index() - r;
                let mut ok = true;
                for deg in 0..=8 {
                    let spec = DistributionSpec::new(&x, c1, BigRational::from_integer(deg.into()), 0, None)?;
                    let inv = distribution_invariants(&spec)?;
                    ok &= inv.c2 == BigRational::from_integer((*c2_tx_part).into()) - spec.curve_class();
                }
                CellResult {
                    id: format!("{table}/{row}/c2_tf_r{r}"),
                    table: table.clone(),
                    row: row.clone(),
                    column: format!("c2_tf_r{r}"),
                    expected: format!("{c2_tx_part}H^2 - [C]"),
                    computed: if ok {
                        format!("{c2_tx_part}H^2 - [C]")
                    } else {
                        "differs".into()
                    },
                    status: Status::of(ok),
                    note: "checked for H.[C] = 0..8".into(),
                }
            }
        });
    }
    let passed = out.iter().filter(|c| c.status == Status::Pass).count();
    Ok(TablesReport {
        window: WINDOW,
        failed: out.len() - passed,
        passed,
        cells: out,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzSuite {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub first_failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub suites: Vec<FuzzSuite>,
}

impl FuzzReport {
    pub fn all_pass(&self) -> bool {
        self.suites.iter().all(|s| s.failures == 0)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("seed {}\n", self.seed);
        for s in &self.suites {
            let _ = writeln!(
                out,
                "{:<8} {:>6} cases  {:>4} failures  {}",
                s.name,
                s.cases,
                s.failures,
                if s.failures == 0 { "PASS" } else { "FAIL" }
            );
            for f in &s.first_failures {
                let _ = writeln!(out, "  {f}");
            }
        }
        out
    }
}

/// A random exact sequence, given by its ranks, and a partial observation of
/// its dimensions that always contains the truth.
pub fn random_les(rng: &mut impl Rng) -> (Vec<u32>, Vec<CohDim>) {
    let len = rng.gen_range(2..=12);
    let mut ranks: Vec<u32> = (0..len).map(|_| rng.gen_range(0..=5)).collect();
    ranks[len - 1] = 0;
    let truth: Vec<u32> = (0..len)
        .map(|j| if j == 0 { ranks[0] } else { ranks[j - 1] + ranks[j] })
        .collect();
    let observed = truth
        .iter()
        .map(|&d| match rng.gen_range(0..5) {
            0 => CohDim::exact(d),
            1 => {
                if d == 0 {
                    CohDim::zero()
                } else {
                    CohDim::nonzero()
                }
            }
            2 => {
                let lo = d.saturating_sub(rng.gen_range(0..=3));
                let hi = if rng.gen_bool(0.5) {
                    Some(BigUint::from(d + rng.gen_range(0..=3)))
                } else {
                    None
                };
                CohDim::bounded(lo, hi).expect("lo <= d <= hi")
            }
            _ => CohDim::unknown(),
        })
        .collect();
    (truth, observed)
}

fn les_suite(rng: &mut ChaCha8Rng, cases: usize) -> FuzzSuite {
    let mut failures = Vec::new();
    for i in 0..cases {
        let (truth, mut dims) = random_les(rng);
        let before = dims.clone();
        let ok = match propagate_les(&mut dims) {
            Ok(_) => truth.iter().zip(&dims).all(|(&t, d)| d.contains(&BigUint::from(t))),
            Err(_) => false,
        };
        if !ok {
            failures.push(format!(
                "case {i}: truth {truth:?}, observed [{}]",
                before.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
            ));
        }
    }
    FuzzSuite {
        name: "les".into(),
        cases,
        failures: failures.len(),
        first_failures: failures.into_iter().take(5).collect(),
    }
}

/// A random distribution on a random catalog threefold, with rational data.
pub fn random_spec(rng: &mut impl Rng) -> DistributionSpec {
    let key = CATALOG_KEYS[rng.gen_range(0..CATALOG_KEYS.len())];
    let x = catalog(key).expect("catalog key").variety;
    let c1 = rng.gen_range(-6..=6);
    let deg_c = rational_from_ints(rng.gen_range(0..=60), rng.gen_range(1..=6));
    let c3 = rational_from_ints(rng.gen_range(-80..=80), rng.gen_range(1..=6));
    DistributionSpec::new(&x, c1, deg_c, rng.gen_range(0..=10), Some(c3)).expect("threefold with nonnegative deg_C")
}

/// `c(TX) = c(T_F) · c(I_Z(r))` for the closed-form invariants.
pub fn chern_relation_holds(spec: &DistributionSpec) -> Result<bool, ReproduceError> {
    let x = &spec.variety;
    let tf = distribution_invariants(spec)?.total(x)?;
    let ideal = chern_ideal_twisted(spec, TwistRule::Standard);
    Ok(tf.mul(&ideal)? == chern_tx(x))
}

fn chern_suite(rng: &mut ChaCha8Rng, cases: usize) -> Result<FuzzSuite, ReproduceError> {
    let mut failures = Vec::new();
    for i in 0..cases {
        let spec = random_spec(rng);
        if !chern_relation_holds(&spec)? {
            failures.push(format!("case {i}: {}", serde_json::to_string(&spec)?));
        }
    }
    Ok(FuzzSuite {
        name: "chern".into(),
        cases,
        failures: failures.len(),
        first_failures: failures.into_iter().take(5).collect(),
    })
}

pub const LES_CASES: usize = 1000;
pub const CHERN_CASES: usize = 500;

/// Both fuzz suites from one seed. The suites draw from independent streams.
pub fn reproduce_fuzz(seed: u64, les_cases: usize, chern_cases: usize) -> Result<FuzzReport, ReproduceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let les = les_suite(&mut rng, les_cases);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let chern = chern_suite(&mut rng, chern_cases)?;
    Ok(FuzzReport {
        seed,
        suites: vec![les, chern],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parses_with_the_expected_cell_counts() {
        let cells = manifest().unwrap();
        let count = |t: &str| {
            cells
                .iter()
                .filter(|c| match c {
                    CellSpec::Index { table, .. } | CellSpec::Threshold { table, .. } => table == t,
                    _ => false,
                })
                .count()
        };
        assert_eq!(count("table1"), 12);
        assert_eq!(count("table2"), 10);
    }

    #[test]
    fn fuzz_is_deterministic() {
        let a = reproduce_fuzz(7, 50, 20).unwrap();
        let b = reproduce_fuzz(7, 50, 20).unwrap();
        assert_eq!(a, b);
        assert!(a.all_pass(), "{}", a.to_text());
    }
}
