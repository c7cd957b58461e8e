use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use fanodist::chow::{chern_ideal_twisted, chern_tx, distribution_invariants, C3Value, DistributionSpec, TwistRule};
use fanodist::criteria::{self, CheckDirection, CohEvidence, ConnectednessInput, CriteriaError, Verdict};
use fanodist::exact_arith::{format_rational, parse_rational};
use fanodist::les::{shared_engine, vanishing_threshold, AxiomSet, ChainSolver, Direction, EngineError};
use fanodist::reproduce::{self, ReproduceError};
use fanodist::variety::{catalog, AmbientKind, CatalogEntry, ChainSpec, VarietyError, WeightedCI, CATALOG_KEYS};

const EXIT_USAGE: u8 = 1;
const EXIT_FAIL: u8 = 2;
const MAX_TWIST: i64 = 100;

#[derive(Parser, Debug)]
#[command(
    name = "fanodist",
    version,
    about = "Cohomology and Chern class bookkeeping for distributions on WCI Fano threefolds"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Index, canonical twist, degree, chains and the first Hilbert values.
    Info {
        /// catalog name or JSON file
        name: Option<String>,
        #[command(flatten)]
        sel: Selector,
        #[command(flatten)]
        range: Range,
    },
    /// Hilbert function `S_t` of the coordinate ring.
    Hilbert {
        #[command(flatten)]
        sel: Selector,
        #[command(flatten)]
        range: Range,
    },
    /// `h^p(X, Omega^q(t))` for every `p`.
    Omega {
        #[command(flatten)]
        sel: Selector,
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        range: Range,
    },
    /// Vanishing thresholds of `h^p(Omega^q(t))` for large `t`.
    Thresholds {
        #[command(flatten)]
        sel: Selector,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long, default_value_t = reproduce::WINDOW)]
        window: i64,
    },
    /// Chern classes of `T_F` for a distribution with the given data.
    Invariants {
        #[command(flatten)]
        sel: Selector,
        /// JSON file holding a distribution spec; overrides the flags below
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c1: Option<i64>,
        #[arg(long = "deg-c", default_value = "0")]
        deg_c: String,
        #[arg(long = "len-q", default_value_t = 0)]
        len_q: u64,
        #[arg(long, allow_hyphen_values = true)]
        c3: Option<String>,
    },
    /// Evaluate one of the criteria against supplied evidence.
    Criteria {
        #[arg(value_enum)]
        kind: CriterionKind,
        #[command(flatten)]
        sel: Selector,
        /// JSON evidence file
        #[arg(long)]
        evidence: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<i64>,
        #[arg(long, value_enum, default_value_t = Dir::Forward)]
        direction: Dir,
        #[arg(long, allow_hyphen_values = true)]
        c1: Option<i64>,
        #[arg(long = "deg-c", default_value = "0")]
        deg_c: String,
    },
    /// Recompute the published tables or run the seeded fuzz suites.
    Reproduce {
        #[arg(value_enum)]
        what: ReproduceKind,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct Selector {
    /// catalog name (P3, Q3, X3, X22, X4, X6, X23, X222, Y) or JSON file
    #[arg(long)]
    variety: Option<String>,
    #[arg(long)]
    chain: Option<String>,
}

#[derive(Args, Debug)]
struct Range {
    #[arg(long = "t-min", allow_hyphen_values = true)]
    t_min: Option<i64>,
    #[arg(long = "t-max", allow_hyphen_values = true)]
    t_max: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CriterionKind {
    SplitSpinor,
    AcmTangent,
    ConormalAcm,
    TxLemma,
    Connectedness,
    Stability,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Dir {
    Forward,
    Converse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReproduceKind {
    Tables,
    Fuzz,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    /// contradiction or a failing reproduction cell
    Fail(String),
}

impl From<VarietyError> for Failure {
    fn from(e: VarietyError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Contradiction { .. } | EngineError::IterationCap(_) | EngineError::NoCertification { .. } => {
                Failure::Fail(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<CriteriaError> for Failure {
    fn from(e: CriteriaError) -> Self {
        match e {
            CriteriaError::Engine(e) => e.into(),
            CriteriaError::InconsistentEvidence(_) => Failure::Fail(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ReproduceError> for Failure {
    fn from(e: ReproduceError) -> Self {
        match e {
            ReproduceError::Engine(e) => e.into(),
            ReproduceError::Criteria(e) => e.into(),
            _ => Failure::Fail(e.to_string()),
        }
    }
}

impl From<fanodist::chow::ChowError> for Failure {
    fn from(e: fanodist::chow::ChowError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// What a command prints, and whether it counts as a failure.
struct Report {
    text: String,
    json: serde_json::Value,
    failed: bool,
}

impl Report {
    fn ok(text: String, json: impl Serialize) -> Result<Self, Failure> {
        Ok(Report {
            text,
            json: serde_json::to_value(json).map_err(|e| Failure::Usage(e.to_string()))?,
            failed: false,
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli.command) {
        Ok(rep) => {
            match cli.format {
                Format::Text => print!("{}", rep.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&rep.json).expect("serializable")),
            }
            if rep.failed {
                ExitCode::from(EXIT_FAIL)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Fail(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

/// A catalog entry for an arbitrary WCI: a known family if the weights and
/// degrees match one, else a single entry with the natural chain.
fn entry_for_wci(x: WeightedCI) -> CatalogEntry {
    for key in CATALOG_KEYS {
        let e = catalog(key).expect("catalog key");
        if e.variety.weights() == x.weights() && e.variety.degrees() == x.degrees() {
            return e;
        }
    }
    let kind = if x.degrees().len() > 1 {
        AmbientKind::IntermediateHypersurfaceChain
    } else if x.is_weighted() {
        AmbientKind::WeightedProjectiveSpace
    } else {
        AmbientKind::ProjectiveSpace
    };
    let key = x.name().map_or_else(|| x.to_string(), str::to_string);
    let degree = x.degree();
    let degree_h3 = if degree.is_integer() {
        u64::try_from(degree.to_integer()).unwrap_or_default()
    } else {
        0
    };
    CatalogEntry {
        label: x.to_string(),
        index: x.index(),
        degree_h3,
        ambient_kind: kind,
        chains: vec![ChainSpec::natural(&x)],
        variety: x,
        key,
    }
}

fn load_entry(name: Option<&str>) -> Result<CatalogEntry, Failure> {
    let name = name.ok_or_else(|| Failure::Usage("--variety is required".into()))?;
    if CATALOG_KEYS.contains(&name) || !Path::new(name).exists() {
        return Ok(catalog(name)?);
    }
    let raw = std::fs::read_to_string(name).map_err(|e| Failure::Usage(format!("{name}: {e}")))?;
    if let Ok(e) = serde_json::from_str::<CatalogEntry>(&raw) {
        return Ok(e);
    }
    let x: WeightedCI = serde_json::from_str(&raw).map_err(|e| Failure::Usage(format!("{name}: {e}")))?;
    Ok(entry_for_wci(x))
}

fn twist_range(r: &Range, default: (i64, i64)) -> Result<(i64, i64), Failure> {
    let (lo, hi) = (r.t_min.unwrap_or(default.0), r.t_max.unwrap_or(default.1));
    if lo > hi {
        return Err(Failure::Usage(format!("--t-min {lo} exceeds --t-max {hi}")));
    }
    if lo.abs() > MAX_TWIST || hi.abs() > MAX_TWIST {
        return Err(Failure::Usage(format!("twists are limited to |t| <= {MAX_TWIST}")));
    }
    Ok((lo, hi))
}

fn read_json<T: serde::de::DeserializeOwned>(path: Option<&str>, what: &str) -> Result<T, Failure> {
    let path = path.ok_or_else(|| Failure::Usage(format!("--evidence is required ({what})")))?;
    let raw = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    serde_json::from_str(&raw).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn rational_arg(s: &str, flag: &str) -> Result<fanodist::exact_arith::Rational, Failure> {
    parse_rational(s).ok_or_else(|| Failure::Usage(format!("{flag}: {s:?} is not a rational number")))
}

fn run(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Info { name, sel, range } => {
            let e = load_entry(name.as_deref().or(sel.variety.as_deref()))?;
            info(&e, twist_range(range, (0, 5))?)
        }
        Command::Hilbert { sel, range } => {
            let e = load_entry(sel.variety.as_deref())?;
            let (lo, hi) = twist_range(range, (0, 10))?;
            let mut text = format!("{}\n{:>5}  {}\n", e.label, "t", "S_t");
            let mut rows = Vec::new();
            for t in lo..=hi {
                let s = e.variety.hilbert(t)?;
                let _ = writeln!(text, "{t:>5}  {s}");
                rows.push(json!({"t": t, "S_t": s.to_string()}));
            }
            Report::ok(text, json!({"variety": e.key, "hilbert": rows}))
        }
        Command::Omega { sel, q, range } => omega(sel, *q, twist_range(range, (-5, 5))?),
        Command::Thresholds { sel, p, q, window } => thresholds(sel, *p, *q, *window),
        Command::Invariants {
            sel,
            spec,
            c1,
            deg_c,
            len_q,
            c3,
        } => {
            let spec = match spec {
                Some(path) => {
                    let raw = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
                    serde_json::from_str::<DistributionSpec>(&raw)
                        .map_err(|e| Failure::Usage(format!("{path}: {e}")))?
                }
                None => {
                    let e = load_entry(sel.variety.as_deref())?;
                    let c1 = c1.ok_or_else(|| Failure::Usage("--c1 is required without --spec".into()))?;
                    let c3 = c3.as_deref().map(|s| rational_arg(s, "--c3")).transpose()?;
                    DistributionSpec::new(&e.variety, c1, rational_arg(deg_c, "--deg-c")?, *len_q, c3)?
                }
            };
            invariants(&spec)
        }
        Command::Criteria {
            kind,
            sel,
            evidence,
            r,
            direction,
            c1,
            deg_c,
        } => {
            let dir = match direction {
                Dir::Forward => CheckDirection::Forward,
                Dir::Converse => CheckDirection::Converse,
            };
            let need_r = || r.ok_or_else(|| Failure::Usage("--r is required".into()));
            let verdict: Verdict = match kind {
                CriterionKind::SplitSpinor => {
                    let ev: CohEvidence = read_json(evidence.as_deref(), "cohomology evidence")?;
                    criteria::check_split_or_spinor_q3(&ev, need_r()?, dir)?
                }
                CriterionKind::AcmTangent => {
                    let e = load_entry(sel.variety.as_deref())?;
                    let ev: CohEvidence = read_json(evidence.as_deref(), "cohomology evidence")?;
                    criteria::check_acm_tangent(&e, &ev, need_r()?, dir)?
                }
                CriterionKind::ConormalAcm => {
                    let e = load_entry(sel.variety.as_deref())?;
                    let ev: CohEvidence = read_json(evidence.as_deref(), "cohomology evidence")?;
                    criteria::check_conormal_acm(&e, &ev, need_r()?, dir)?
                }
                CriterionKind::Connectedness => {
                    let e = load_entry(sel.variety.as_deref())?;
                    let input: ConnectednessInput = read_json(evidence.as_deref(), "connectedness input")?;
                    criteria::check_connectedness(&e, &input, need_r()?, dir)?
                }
                CriterionKind::Stability => {
                    let e = load_entry(sel.variety.as_deref())?;
                    let c1 = c1.ok_or_else(|| Failure::Usage("--c1 is required".into()))?;
                    let spec = DistributionSpec::new(&e.variety, c1, rational_arg(deg_c, "--deg-c")?, 0, None)?;
                    criteria::stability_dichotomy(&e, &spec)?
                }
                CriterionKind::TxLemma => {
                    let e = load_entry(sel.variety.as_deref())?;
                    let rep = criteria::tx_twist_vanishing(&e)?;
                    let list = |v: &[i64]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
                    let text = format!(
                        "TX(-r) vanishing on {} (index {}), r in [{}, {}]\n  h^1 not certified zero at r in {{{}}}\n  h^2 not certified zero at r in {{{}}}\n  uniform region r > {} with r != index contained: {}\n",
                        rep.variety,
                        rep.index,
                        rep.r_range.0,
                        rep.r_range.1,
                        list(&rep.h1_nonvanishing),
                        list(&rep.h2_nonvanishing),
                        rep.uniform_h1_above,
                        rep.uniform_contained
                    );
                    return Report::ok(text, rep);
                }
            };
            Report::ok(format!("{verdict}\n"), verdict)
        }
        Command::Reproduce { what, seed } => match what {
            ReproduceKind::Tables => {
                let rep = reproduce::reproduce_tables()?;
                let failed = !rep.all_pass();
                let mut out = Report::ok(rep.to_text(), &rep)?;
                out.failed = failed;
                Ok(out)
            }
            ReproduceKind::Fuzz => {
                let rep = reproduce::reproduce_fuzz(*seed, reproduce::LES_CASES, reproduce::CHERN_CASES)?;
                let failed = !rep.all_pass();
                let mut out = Report::ok(rep.to_text(), &rep)?;
                out.failed = failed;
                Ok(out)
            }
        },
    }
}

fn info(e: &CatalogEntry, (lo, hi): (i64, i64)) -> Result<Report, Failure> {
    let x = &e.variety;
    let mut hilbert = Vec::new();
    for t in lo..=hi {
        hilbert.push((t, x.hilbert(t)?.to_string()));
    }
    let mut text = String::new();
    let _ = writeln!(text, "{} ({})", e.key, e.label);
    let _ = writeln!(text, "  weights    {:?}", x.weights());
    let _ = writeln!(text, "  degrees    {:?}", x.degrees());
    let _ = writeln!(text, "  dimension  {}", x.dim());
    let _ = writeln!(text, "  index      {}", x.index());
    let _ = writeln!(text, "  K_X        O({})", x.canonical_twist());
    let _ = writeln!(text, "  H^3        {}", format_rational(&x.degree()));
    let _ = writeln!(text, "  Fano       {}", x.is_fano());
    for c in &e.chains {
        let _ = writeln!(text, "  chain      {}: {}", c.name, c.description);
    }
    let _ = writeln!(
        text,
        "  S_t        {}",
        hilbert
            .iter()
            .map(|(t, s)| format!("t={t}:{s}"))
            .collect::<Vec<_>>()
            .join("  ")
    );
    let json = json!({
        "key": e.key,
        "label": e.label,
        "weights": x.weights(),
        "degrees": x.degrees(),
        "dim": x.dim(),
        "index": x.index(),
        "canonical_twist": x.canonical_twist(),
        "degree": format_rational(&x.degree()),
        "fano": x.is_fano(),
        "chains": e.chains.iter().map(|c| c.name.clone()).collect::<Vec<_>>(),
        "hilbert": hilbert.iter().map(|(t, s)| json!({"t": t, "S_t": s})).collect::<Vec<_>>(),
    });
    Report::ok(text, json)
}

fn omega(sel: &Selector, q: u32, (lo, hi): (i64, i64)) -> Result<Report, Failure> {
    let e = load_entry(sel.variety.as_deref())?;
    let n = e.variety.dim();
    if q > n {
        return Err(Failure::Usage(format!("q = {q} exceeds the dimension {n}")));
    }
    let engine;
    let solver;
    let lookup: Box<dyn Fn(u32, i64) -> Result<fanodist::les::CohDim, Failure>> = match &sel.chain {
        Some(c) => {
            solver = ChainSolver::for_entry(&e, Some(c), AxiomSet::all())?;
            Box::new(|p, t| Ok(solver.h(p, q, t)))
        }
        None => {
            engine = shared_engine(&e)?;
            Box::new(|p, t| Ok(engine.h(p, q, t)?))
        }
    };
    let mut rows = Vec::new();
    for t in lo..=hi {
        let mut row = Vec::new();
        for p in 0..=n {
            row.push(lookup(p, t)?);
        }
        rows.push((t, row));
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(_, r)| r.iter().map(|d| d.to_string()).collect())
        .collect();
    let w = cells.iter().flatten().map(String::len).max().unwrap_or(1).max(6);
    let mut text = format!("h^p({}, Omega^{q}(t))\n{:>5}", e.key, "t");
    for p in 0..=n {
        let _ = write!(text, "  {:>w$}", format!("h^{p}"));
    }
    text.push('\n');
    for ((t, _), row) in rows.iter().zip(&cells) {
        let _ = write!(text, "{t:>5}");
        for c in row {
            let _ = write!(text, "  {c:>w$}");
        }
        text.push('\n');
    }
    let json = json!({
        "variety": e.key,
        "chain": sel.chain,
        "q": q,
        "rows": rows.iter().map(|(t, r)| json!({"t": t, "h": r})).collect::<Vec<_>>(),
    });
    Report::ok(text, json)
}

fn thresholds(sel: &Selector, p: Option<u32>, q: Option<u32>, window: i64) -> Result<Report, Failure> {
    let e = load_entry(sel.variety.as_deref())?;
    if window < 1 {
        return Err(Failure::Usage("--window must be positive".into()));
    }
    let pairs: Vec<(u32, u32)> = match (p, q) {
        (Some(p), Some(q)) => vec![(p, q)],
        (None, None) => vec![(2, 1), (1, 2)],
        _ => return Err(Failure::Usage("--p and --q go together".into())),
    };
    let chains: Vec<Option<&str>> = match &sel.chain {
        Some(c) => vec![Some(c.as_str())],
        None => e.chains.iter().map(|c| Some(c.name.as_str())).collect(),
    };
    let mut reports = Vec::new();
    for chain in chains {
        let solver = ChainSolver::for_entry(&e, chain, AxiomSet::all())?;
        for &(p, q) in &pairs {
            reports.push(vanishing_threshold(&solver, p, q, Direction::Above, window)?);
        }
    }
    let mut text = format!(
        "{:<9} {:<8} {:<12} {:>4}  {:<18} certified\n",
        "variety", "chain", "group", "T", "boundary"
    );
    for r in &reports {
        let _ = writeln!(
            text,
            "{:<9} {:<8} {:<12} {:>4}  {:<18} ({}, {}]",
            r.variety,
            r.chain,
            format!("h^{}(Omega^{})", r.p, r.q),
            r.threshold,
            r.boundary_value.to_string(),
            r.threshold,
            r.certified_range.1
        );
    }
    Report::ok(text, reports)
}

fn invariants(spec: &DistributionSpec) -> Result<Report, Failure> {
    let x = &spec.variety;
    let inv = distribution_invariants(spec)?;
    let ctx = chern_tx(x);
    let ideal = chern_ideal_twisted(spec, TwistRule::Standard);
    let relation = match inv.total(x) {
        Ok(tf) => Some(tf.mul(&ideal)? == ctx),
        Err(_) => None,
    };
    let c3 = match &inv.c3 {
        C3Value::Value(v) => format_rational(v),
        C3Value::Unresolved => "unresolved (c3_IZ not given)".into(),
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "distribution on {} with c1(T_F) = {}, r = {}",
        x, spec.c1_tf, spec.r
    );
    let _ = writeln!(text, "  c(TX)       {ctx}");
    let _ = writeln!(text, "  c(I_Z(r))   {ideal}");
    let _ = writeln!(text, "  c1(T_F)     {}H", format_rational(&inv.c1));
    let _ = writeln!(text, "  c2(T_F)     {}H^2", format_rational(&inv.c2));
    let _ = writeln!(text, "  c2(T_F).H   {}", format_rational(&inv.c2_degree));
    let _ = writeln!(text, "  c3(T_F)     {c3}");
    if let Some(ok) = relation {
        let _ = writeln!(text, "  c(TX) = c(T_F) c(I_Z(r)): {ok}");
    }
    let json = json!({
        "spec": spec,
        "invariants": inv,
        "c_tx": ctx.to_string(),
        "c_ideal_twisted": ideal.to_string(),
        "relation_holds": relation,
    });
    let mut rep = Report::ok(text, json)?;
    rep.failed = relation == Some(false);
    Ok(rep)
}
