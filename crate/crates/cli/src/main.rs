use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use stablepoly::census::{run_census, CensusOptions, CensusSummary, DEFAULT_CENSUS_MAX_Q};
use stablepoly::classify::{cubic_trinomial_pattern, parity_check, quartic_binomial_irreducible, quartic_char3_classify};
use stablepoly::stability::{base_field, certify_stability, direct_iterate_oracle, iterate_degree, parse_element, parse_poly};
use stablepoly::{Budget, Error, Field, LevelField, Method, PolyRing, StabilityReport, Verdict};

const EXIT_STABLE: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_REDUCIBLE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Stability of iterated polynomials over finite fields.
///
/// Exit status: 0 stable to the requested depth, 2 reducibility found,
/// 1 error, 3 budget exceeded.
#[derive(Parser, Debug)]
#[command(name = "stablepoly", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Command {
    /// Certify a polynomial level by level up to a depth
    Certify(CertifyArgs),
    /// Certify every polynomial of a degree (or every family member) over F_q
    Census(CensusArgs),
    /// Closed-form factorization pattern with optional oracle check
    Classify(ClassifyArgs),
    /// Theorem-driven, generic and direct-iterate verdicts for x^3 + x^2 + 1 over F_2
    Conjecture(ConjectureArgs),
    /// Re-run the command recorded in a manifest or report
    Replay(ReplayArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum MethodArg {
    Generic,
    TheoremDriven,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Generic => Method::Generic,
            MethodArg::TheoremDriven => Method::TheoremDriven,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Format {
    Json,
    Line,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
struct CertifyArgs {
    /// Field size, a prime power
    #[arg(long)]
    q: u64,
    /// Ascending coefficients `c0,c1,...`; extension elements as nested lists
    #[arg(long)]
    poly: String,
    /// Expected degree, checked against the polynomial
    #[arg(long)]
    degree: Option<usize>,
    /// Last Capelli level to test (default 8, 6, 4 for degree 2, 3, 4)
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long, value_enum, default_value = "theorem-driven")]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
struct CensusArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    degree: usize,
    #[arg(long)]
    depth: usize,
    /// Only the members of the family for this degree
    #[arg(long)]
    family: bool,
    #[arg(long, value_enum, default_value = "theorem-driven")]
    method: MethodArg,
    /// Largest q allowed for this degree
    #[arg(long, env = "STABLEPOLY_CENSUS_MAX_Q")]
    max_q: Option<u64>,
    /// CSV destination; the summary then goes to standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Kind {
    /// x^3 + ax + b over F_{2^m}; coefficients `a b`
    Cubic2,
    /// x^4 + cx + d over F_{3^m}; coefficients `c d`
    Quartic3,
    /// x^4 - a with q = 1 mod 4; coefficient `a`
    Binomial4,
    /// factor-count parity against the discriminant; a polynomial `c0,c1,...`
    Parity,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
struct ClassifyArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum)]
    kind: Kind,
    /// Also factor by the generic algorithm and compare
    #[arg(long)]
    check: bool,
    #[arg(required = true)]
    coefficients: Vec<String>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
struct ConjectureArgs {
    #[arg(long, default_value_t = 6)]
    depth: usize,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
struct ReplayArgs {
    /// A manifest, or any report carrying one under `manifest`
    manifest: PathBuf,
}

#[derive(Debug, Serialize, Deserialize)]
struct Manifest {
    #[serde(flatten)]
    command: Command,
    engine_version: String,
    budget: Budget,
    property_seed: u64,
    timestamp: String,
}

impl Manifest {
    fn new(command: &Command, budget: &Budget) -> Self {
        Self {
            command: command.clone(),
            engine_version: stablepoly::VERSION.to_string(),
            budget: budget.clone(),
            property_seed: stablepoly::PROPERTY_SEED,
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }
}

#[derive(Debug)]
enum Failure {
    Engine(Error),
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Engine(Error::DepthBudgetExceeded(_) | Error::SizeCapExceeded(_) | Error::DegreeOverflow { .. }) => EXIT_BUDGET,
            _ => EXIT_ERROR,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Engine(Error::DegreeUnsupported(d)) => write!(f, "degree {d} is outside {{2,3,4}}"),
            Failure::Engine(e) => write!(f, "{e}"),
            Failure::Usage(s) => f.write_str(s),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match Budget::from_env().map_err(Failure::from).and_then(|b| run(&cli.command, &b)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: &Command, budget: &Budget) -> Outcome {
    match command {
        Command::Certify(a) => certify(command, a, budget),
        Command::Census(a) => census(command, a, budget),
        Command::Classify(a) => classify(command, a, budget),
        Command::Conjecture(a) => conjecture(command, a, budget),
        Command::Replay(a) => replay(a, budget),
    }
}

fn default_depth(d: usize) -> usize {
    match d {
        2 => 8,
        3 => 6,
        _ => 4,
    }
}

fn print_json(value: &serde_json::Value) -> io::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)
}

fn certify(command: &Command, a: &CertifyArgs, budget: &Budget) -> Outcome {
    let k = base_field(a.q)?;
    let f = parse_poly(&k, &a.poly)?;
    let d = f.degree().unwrap_or(0);
    if let Some(expected) = a.degree {
        if expected != d {
            return Err(Failure::Usage(format!("--degree {expected} but the polynomial has degree {d}")));
        }
    }
    let depth = a.depth.unwrap_or(default_depth(d));
    let report = certify_stability(&k, &f, depth, a.method.into(), budget)?;
    match a.format {
        Format::Line => println!("{}", report.to_line()),
        Format::Json => print_json(&json!({
            "manifest": Manifest::new(command, budget),
            "report": report,
            "conclusion": report.conclusion(),
        }))?,
    }
    Ok(if report.stable_to_depth() { EXIT_STABLE } else { EXIT_REDUCIBLE })
}

fn census(command: &Command, a: &CensusArgs, budget: &Budget) -> Outcome {
    let k = base_field(a.q)?;
    let mut max_q = DEFAULT_CENSUS_MAX_Q;
    if let (Some(m), 2..=4) = (a.max_q, a.degree) {
        max_q[a.degree - 2] = m;
    }
    let opts = CensusOptions {
        q: a.q,
        degree: a.degree,
        depth: a.depth,
        family_only: a.family,
        method: a.method.into(),
        max_q,
    };
    let (rows, summary) = run_census(&k, &opts, budget)?;
    let manifest = serde_json::to_string(&Manifest::new(command, budget))?;
    let sink: Box<dyn Write> = match &a.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = sink;
    writeln!(sink, "# manifest {manifest}")?;
    {
        let mut w = csv::Writer::from_writer(&mut sink);
        for row in &rows {
            w.serialize(row)?;
        }
        w.flush()?;
    }
    sink.flush()?;
    drop(sink);
    let summary_doc = summary_json(&summary);
    if a.out.is_some() {
        print_json(&summary_doc)?;
    } else {
        eprintln!("{}", serde_json::to_string(&summary_doc)?);
    }
    Ok(EXIT_STABLE)
}

fn summary_json(s: &CensusSummary) -> serde_json::Value {
    json!({
        "summary": s,
        "meets_stated_bound": s.stable_to_depth as u64 >= s.stated_bound,
        "meets_prior_bound": s.stable_to_depth as u64 >= s.prior_bound,
    })
}

fn coefficients(k: &LevelField, args: &[String], n: usize) -> Result<Vec<stablepoly::FieldElement>, Failure> {
    if args.len() != n {
        return Err(Failure::Usage(format!("expected {n} coefficient(s), got {}", args.len())));
    }
    args.iter().map(|s| parse_element(k, s).map_err(Failure::from)).collect()
}

fn classify(command: &Command, a: &ClassifyArgs, budget: &Budget) -> Outcome {
    let k = base_field(a.q)?;
    let ring = PolyRing::new(k.clone());
    let zero = k.zero();
    let one = k.one();
    let (input, verdict, pattern) = match a.kind {
        Kind::Cubic2 => {
            let c = coefficients(&k, &a.coefficients, 2)?;
            let v = cubic_trinomial_pattern(&k, &c[0], &c[1])?;
            let f = ring.from_coeffs(vec![c[1].clone(), c[0].clone(), zero, one]);
            (f, serde_json::to_value(&v)?, Some(v.pattern))
        }
        Kind::Quartic3 => {
            let c = coefficients(&k, &a.coefficients, 2)?;
            let v = quartic_char3_classify(&k, &c[0], &c[1])?;
            let f = ring.from_coeffs(vec![c[1].clone(), c[0].clone(), zero.clone(), zero, one]);
            let doc = json!({
                "case": v.case,
                "pattern": v.pattern.to_string(),
                "resolvent_roots": v.resolvent_roots.iter().map(|r| k.format(r)).collect::<Vec<_>>(),
                "root_squares": v.root_squares,
                "split_root": v.split_root.as_ref().map(|r| k.format(r)),
                "split_discriminants_square": v.split_discriminants,
                "conditions": v.conditions,
            });
            (f, doc, Some(v.pattern))
        }
        Kind::Binomial4 => {
            let c = coefficients(&k, &a.coefficients, 1)?;
            let irreducible = quartic_binomial_irreducible(&k, &c[0])?;
            let f = ring.from_coeffs(vec![k.neg(&c[0]), zero.clone(), zero.clone(), zero, one]);
            let doc = json!({ "verdict": if irreducible { "irreducible" } else { "reducible" } });
            (f, doc, None)
        }
        Kind::Parity => {
            let [s] = a.coefficients.as_slice() else {
                return Err(Failure::Usage("parity expects one polynomial `c0,c1,...`".into()));
            };
            let f = parse_poly(&k, s)?;
            let out = parity_check(&k, &f)?;
            (f, serde_json::to_value(&out)?, None)
        }
    };
    let mut doc = json!({
        "manifest": Manifest::new(command, budget),
        "input": ring.format(&input),
        "verdict": verdict,
    });
    let mut agree = true;
    if a.check {
        let oracle = ring.factor_pattern(&input);
        agree = match (a.kind, &pattern) {
            (Kind::Binomial4, _) => (oracle.factor_count() == 1 && oracle.parts()[0].1 == 1) == (doc["verdict"]["verdict"] == "irreducible"),
            (Kind::Parity, _) => doc["verdict"]["consistent"] == true,
            (_, Some(p)) => *p == oracle,
            (_, None) => true,
        };
        doc["oracle_pattern"] = json!(oracle.to_string());
        doc["agrees"] = json!(agree);
    }
    print_json(&doc)?;
    Ok(if agree { EXIT_STABLE } else { EXIT_ERROR })
}

fn conjecture(command: &Command, a: &ConjectureArgs, budget: &Budget) -> Outcome {
    let k = base_field(2)?;
    let f = parse_poly(&k, "1,0,1,1")?;
    let theorem = certify_stability(&k, &f, a.depth, Method::TheoremDriven, budget)?;
    let generic_depth = a.depth.min(budget.depth_cap(3, Method::Generic));
    let generic = certify_stability(&k, &f, generic_depth, Method::Generic, budget)?;
    let mut rows = Vec::new();
    let mut agree = true;
    let cell = |v: Option<bool>| match v {
        Some(true) => "irreducible",
        Some(false) => "reducible",
        None => "untested",
    };
    let verdict = |r: &StabilityReport, n: usize| match r.levels.get(n).map(|l| l.verdict) {
        Some(Verdict::Irreducible) => Some(true),
        Some(Verdict::Reducible) => Some(false),
        _ => None,
    };
    println!("{:>5}  {:>9}  {:<12} {:<12} {:<12}", "depth", "degree", "theorem", "generic", "oracle");
    for n in 0..=a.depth {
        let degree = iterate_degree(3, n as u32 + 1);
        let oracle = if degree <= budget.degree_cap {
            Some(direct_iterate_oracle(&k, &f, n as u32 + 1, budget.degree_cap)?)
        } else {
            None
        };
        let cols = [verdict(&theorem, n), verdict(&generic, n), oracle];
        let known: Vec<bool> = cols.iter().flatten().copied().collect();
        agree &= known.windows(2).all(|w| w[0] == w[1]);
        println!("{n:>5}  {degree:>9}  {:<12} {:<12} {:<12}", cell(cols[0]), cell(cols[1]), cell(cols[2]));
        rows.push(json!({ "depth": n, "iterate_degree": degree.to_string(), "theorem": cell(cols[0]), "generic": cell(cols[1]), "oracle": cell(cols[2]) }));
    }
    let doc = json!({
        "manifest": Manifest::new(command, budget),
        "rows": rows,
        "agree": agree,
        "certificate": theorem.certificate,
    });
    println!("{}", serde_json::to_string(&doc)?);
    if !agree {
        return Err(Failure::Usage("the three methods disagree".into()));
    }
    Ok(if theorem.stable_to_depth() { EXIT_STABLE } else { EXIT_REDUCIBLE })
}

fn replay(a: &ReplayArgs, budget: &Budget) -> Outcome {
    let text = std::fs::read_to_string(&a.manifest)?;
    let manifest_line = text.lines().find_map(|l| l.strip_prefix("# manifest "));
    let value: serde_json::Value = serde_json::from_str(manifest_line.unwrap_or(&text))?;
    let value = value.get("manifest").cloned().unwrap_or(value);
    let manifest: Manifest = serde_json::from_value(value)?;
    if let Command::Replay(_) = manifest.command {
        return Err(Failure::Usage("a replay manifest cannot be replayed".into()));
    }
    // the recorded budget wins so the replay reproduces the original limits
    let _ = budget;
    run(&manifest.command, &manifest.budget)
}
