//! Command dispatch and reporting for the `cluster-ufd` binary.
//!
//! Exit codes: 0 verified or holds, 1 refuted or witness found,
//! 2 inconclusive, 3 input error, 4 internal consistency failure.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use cluster_ufd::cluster::seed_file::{parse_seed_file, parse_seed_rows};
use cluster_ufd::cluster::{
    builtin_matrix, enumerate_cluster_variables, hypersurface_relation_check, laurent_check, structure_report,
    Builtin, ExchangeMatrix, Exploration, Seed, SkewSymmetrizer, StructureReport,
};
use cluster_ufd::factoriality::{
    algebra_membership, check_assumptions, conjecture_check, conjecture_check_up_to, gls_necessary_conditions,
    inductive_prover, normal_form_element, product_membership_sufficient, ufd_verdict, CertifiedSeed,
    ConjectureOutcome, ExchangeSystem, FactorialityError, GlsOutcome, GlsWitness, Irreducibility, Justification,
    ProverOutcome, SupportCertificate, UfdVerdict, VerdictOptions,
};
use cluster_ufd::fields::{Field, FieldTag, GaussianRational, Rational};
use cluster_ufd::groebner::Budget;
use cluster_ufd::poly::{parse_expression, Polynomial};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "cluster-ufd", version, about = "Factoriality of acyclic cluster algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a single JSON object.
    #[arg(long, global = true)]
    json: bool,
    /// Coefficient field.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<FieldTag>,
    /// Maximum number of reductions per Gröbner basis computation.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

fn parse_field(s: &str) -> Result<FieldTag, String> {
    s.parse::<FieldTag>().map_err(|_| format!("expected Q or Qi, got {s:?}"))
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct SeedArgs {
    /// JSON seed file.
    #[arg(long)]
    seed: Option<PathBuf>,
    /// Named seed: A:n, D:n, E:n, rank2:b,c, kronecker, cyclicA3.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply mu_{k1} ∘ … ∘ mu_{kr}, read right to left.
    Mutate {
        #[command(flatten)]
        seed: SeedArgs,
        /// Comma-separated 1-based indices.
        #[arg(long)]
        sequence: String,
    },
    /// Print the exchange polynomials f_1, …, f_n.
    ExchangePolys {
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// Skew-symmetrizer, connectivity, acyclicity, sinks, sources, neighbours.
    Structure {
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// Explore the mutation class.
    Enumerate {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value_t = 1000)]
        max_seeds: usize,
    },
    /// Check the Laurent property of every variable found by exploration.
    VerifyLaurent {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, default_value_t = 1000)]
        max_seeds: usize,
    },
    /// Compare the product and intersection of powers of exchange ideals.
    #[command(group(clap::ArgGroup::new("target").required(true).args(["max_total_degree", "index"])))]
    CheckConjecture {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        max_total_degree: Option<u32>,
        /// Comma-separated multi-index a_1,…,a_n.
        #[arg(long)]
        index: Option<String>,
        /// Run even when the seed violates the standing assumptions.
        #[arg(long)]
        override_assumptions: bool,
    },
    /// Search a support certificate.
    ProveUfd {
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// Decide factoriality.
    Verdict {
        #[command(flatten)]
        seed: SeedArgs,
        /// Total degree of the cross-check.
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Membership of a Laurent polynomial in the cluster algebra.
    Member {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        expr: String,
    },
    /// Normal form P / M(P) of a polynomial.
    NormalForm {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        expr: String,
    },
    /// Substitute the one-step mutations of A_n into the relation P_n.
    Hypersurface {
        #[arg(long)]
        n: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Mutate { .. } => "mutate",
            Command::ExchangePolys { .. } => "exchange-polys",
            Command::Structure { .. } => "structure",
            Command::Enumerate { .. } => "enumerate",
            Command::VerifyLaurent { .. } => "verify-laurent",
            Command::CheckConjecture { .. } => "check-conjecture",
            Command::ProveUfd { .. } => "prove-ufd",
            Command::Verdict { .. } => "verdict",
            Command::Member { .. } => "member",
            Command::NormalForm { .. } => "normal-form",
            Command::Hypersurface { .. } => "hypersurface",
        }
    }

    fn seed_args(&self) -> Option<&SeedArgs> {
        match self {
            Command::Mutate { seed, .. }
            | Command::ExchangePolys { seed }
            | Command::Structure { seed }
            | Command::Enumerate { seed, .. }
            | Command::VerifyLaurent { seed, .. }
            | Command::CheckConjecture { seed, .. }
            | Command::ProveUfd { seed }
            | Command::Verdict { seed, .. }
            | Command::Member { seed, .. }
            | Command::NormalForm { seed, .. } => Some(seed),
            Command::Hypersurface { .. } => None,
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum CliError {
    Input(String),
    Internal(String),
}

impl From<FactorialityError> for CliError {
    fn from(e: FactorialityError) -> Self {
        match e {
            FactorialityError::Internal(msg) => CliError::Internal(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// What a command produced.
struct Report {
    code: i32,
    verdict: String,
    text: String,
    details: Map<String, Value>,
}

impl Report {
    fn new(code: i32, verdict: &str) -> Self {
        Report { code, verdict: verdict.to_string(), text: String::new(), details: Map::new() }
    }

    fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
        self
    }

    fn set(&mut self, key: &str, v: Value) -> &mut Self {
        self.details.insert(key.to_string(), v);
        self
    }
}

struct Context {
    seed_name: Option<String>,
    matrix: Option<ExchangeMatrix>,
    field: FieldTag,
    budget: Budget,
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn fmt_list(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_list<T: std::str::FromStr>(flag: &str, s: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| CliError::Input(format!("--{flag}: cannot parse {x:?}"))))
        .collect()
}

fn load_builtin(name: &str) -> Result<ExchangeMatrix, CliError> {
    let b: Builtin = name.parse().map_err(|e: cluster_ufd::cluster::ClusterError| CliError::Input(e.to_string()))?;
    builtin_matrix(&b).map_err(|e| CliError::Input(e.to_string()))
}

fn read_file(path: &PathBuf) -> Result<(String, String), CliError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{name}: {e}")))?;
    Ok((name, text))
}

/// The seed matrix and the field the seed file asks for, if any.
fn load_seed(args: &SeedArgs) -> Result<(String, ExchangeMatrix, Option<FieldTag>), CliError> {
    if let Some(name) = &args.builtin {
        return Ok((name.clone(), load_builtin(name)?, None));
    }
    let path = args.seed.as_ref().expect("clap enforces one seed source");
    let (name, text) = read_file(path)?;
    let file = parse_seed_file(&name, &text).map_err(|e| CliError::Input(e.to_string()))?;
    Ok((name, file.matrix, file.field))
}

fn resolve_field(flag: Option<FieldTag>, file: Option<FieldTag>, seed: &str) -> Result<FieldTag, CliError> {
    match (flag, file) {
        (Some(a), Some(b)) if a != b => Err(CliError::Input(format!(
            "{seed}: field `field`: seed file declares {b} but --field {a} was given"
        ))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Ok(FieldTag::Q),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: rendered, stderr: String::new() }
                }
                _ => Outcome { code: 3, stdout: String::new(), stderr: rendered },
            };
        }
    };
    let json = cli.json;
    let command = cli.command.name();
    match execute(&cli) {
        Ok((ctx, report)) => render(json, command, &ctx, report),
        Err(e) => {
            let (code, kind, msg) = match e {
                CliError::Input(m) => (3, "input_error", m),
                CliError::Internal(m) => (4, "internal_error", m),
            };
            let stdout = if json {
                let v = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command,
                    "verdict": "error",
                    "error": {"kind": kind, "message": msg},
                });
                format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
            } else {
                String::new()
            };
            Outcome { code, stdout, stderr: format!("error: {msg}\n") }
        }
    }
}

fn render(json: bool, command: &str, ctx: &Context, report: Report) -> Outcome {
    let stdout = if json {
        let mut obj = Map::new();
        obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
        obj.insert("command".into(), json!(command));
        obj.insert("verdict".into(), json!(report.verdict));
        obj.insert("field".into(), json!(ctx.field.to_string()));
        if let Some(name) = &ctx.seed_name {
            obj.insert("seed".into(), json!(name));
        }
        if let Some(b) = &ctx.matrix {
            obj.insert("n".into(), json!(b.n()));
            obj.insert("m".into(), json!(b.m()));
        }
        obj.extend(report.details);
        format!("{}\n", serde_json::to_string_pretty(&Value::Object(obj)).unwrap())
    } else {
        let mut out = String::new();
        if let Some(name) = &ctx.seed_name {
            out.push_str(&format!("seed: {name} (field {})\n", ctx.field));
        }
        out.push_str(&report.text);
        out.push_str(&format!("verdict: {}\n", report.verdict));
        out
    };
    Outcome { code: report.code, stdout, stderr: String::new() }
}

fn execute(cli: &Cli) -> Result<(Context, Report), CliError> {
    let budget = match cli.budget {
        Some(0) => return Err(CliError::Input("--budget must be positive".into())),
        Some(r) => Budget { max_reductions: r, ..Budget::default() },
        None => Budget::default(),
    };
    // `structure` accepts files whose principal part is not skew-symmetrizable
    if let Command::Structure { seed } = &cli.command {
        let (name, report) = match (&seed.builtin, &seed.seed) {
            (Some(b), _) => {
                let m = load_builtin(b)?;
                (b.clone(), m.structure_report())
            }
            (None, Some(path)) => {
                let (name, text) = read_file(path)?;
                let (rows, n) = parse_seed_rows(&name, &text).map_err(|e| CliError::Input(e.to_string()))?;
                let r = structure_report(&rows, n).map_err(|e| CliError::Input(e.to_string()))?;
                (name, r)
            }
            (None, None) => unreachable!("clap enforces one seed source"),
        };
        let field = cli.field.unwrap_or(FieldTag::Q);
        let ctx = Context { seed_name: Some(name), matrix: None, field, budget };
        return Ok((ctx, structure(&report)));
    }
    let (seed_name, matrix, file_field) = match cli.command.seed_args() {
        Some(args) => {
            let (name, m, f) = load_seed(args)?;
            (Some(name), Some(m), f)
        }
        None => (None, None, None),
    };
    let field = resolve_field(cli.field, file_field, seed_name.as_deref().unwrap_or(""))?;
    let ctx = Context { seed_name, matrix, field, budget };
    let report = match field {
        FieldTag::Q => dispatch::<Rational>(&cli.command, &ctx)?,
        FieldTag::Qi => dispatch::<GaussianRational>(&cli.command, &ctx)?,
    };
    Ok((ctx, report))
}

fn dispatch<F: Field>(command: &Command, ctx: &Context) -> Result<Report, CliError> {
    let matrix = || ctx.matrix.clone().expect("seeded command");
    let system = || ExchangeSystem::<F>::new(matrix()).with_budget(ctx.budget);
    match command {
        Command::Mutate { sequence, .. } => mutate::<F>(matrix(), sequence),
        Command::ExchangePolys { .. } => Ok(exchange_polys(&system())),
        Command::Structure { .. } => unreachable!("handled before dispatch"),
        Command::Enumerate { max_seeds, .. } => enumerate::<F>(matrix(), *max_seeds, false),
        Command::VerifyLaurent { max_seeds, .. } => enumerate::<F>(matrix(), *max_seeds, true),
        Command::CheckConjecture { max_total_degree, index, override_assumptions, .. } => {
            check_conjecture(&system(), *max_total_degree, index.as_deref(), *override_assumptions)
        }
        Command::ProveUfd { .. } => prove_ufd(&system()),
        Command::Verdict { bound, .. } => verdict(&system(), *bound, ctx.budget),
        Command::Member { expr, .. } => member(system(), expr),
        Command::NormalForm { expr, .. } => normal_form(system(), expr),
        Command::Hypersurface { n } => hypersurface::<F>(*n),
    }
}

fn mutate<F: Field>(b: ExchangeMatrix, sequence: &str) -> Result<Report, CliError> {
    let given: Vec<usize> = parse_list("sequence", sequence)?;
    let n = b.n();
    if let Some(&bad) = given.iter().find(|&&k| k == 0 || k > n) {
        return Err(CliError::Input(format!("--sequence: index {bad} is not in 1..={n}")));
    }
    let applied: Vec<usize> = given.iter().rev().copied().collect();
    let zero_based: Vec<usize> = applied.iter().map(|k| k - 1).collect();
    let seed = Seed::<F>::initial(b).mutate_along(&zero_based).map_err(|e| CliError::Internal(e.to_string()))?;
    let mut r = Report::new(0, "ok");
    r.line(format!("sequence: {} (applied right to left: {})", fmt_list(&given), fmt_list(&applied)));
    r.line("matrix:");
    for row in seed.matrix().rows() {
        r.line(format!("  {}", row.iter().map(|x| format!("{x:>3}")).collect::<Vec<_>>().join(" ")));
    }
    let cluster: Vec<String> = seed.cluster().iter().map(|v| v.to_string()).collect();
    for (i, v) in cluster.iter().enumerate() {
        r.line(format!("x{} <- {v}", i + 1));
    }
    r.set("sequence", json!(given))
        .set("applied_order", json!(applied))
        .set("matrix", json!(seed.matrix().rows()))
        .set("cluster", json!(cluster));
    Ok(r)
}

fn exchange_polys<F: Field>(sys: &ExchangeSystem<F>) -> Report {
    let mut r = Report::new(0, "ok");
    let polys: Vec<String> = sys.exchange_polynomials().iter().map(|f| f.to_string()).collect();
    for (i, f) in polys.iter().enumerate() {
        r.line(format!("f{} = {f}", i + 1));
    }
    r.set("exchange_polynomials", json!(polys));
    r
}

fn structure(s: &StructureReport) -> Report {
    let mut r = Report::new(0, "ok");
    let sym = match &s.skew_symmetrizer {
        SkewSymmetrizer::Found(d) => {
            r.line(format!("skew-symmetrizer: {}", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
            json!({"found": d})
        }
        SkewSymmetrizer::Refuted { i, j } => {
            r.line(format!("skew-symmetrizer: none (entries ({}, {}) and ({}, {}))", i + 1, j + 1, j + 1, i + 1));
            json!({"refuted": [i + 1, j + 1]})
        }
    };
    r.line(format!("m = {}, n = {}", s.m, s.n));
    r.line(format!("connected: {}", s.connected));
    r.line(format!("acyclic: {}", s.acyclic));
    r.line(format!("sources: {}", fmt_list(&one_based(&s.sources))));
    r.line(format!("sinks: {}", fmt_list(&one_based(&s.sinks))));
    for (i, nb) in s.neighbors.iter().enumerate() {
        r.line(format!("N({}) = {{{}}}", i + 1, fmt_list(&one_based(nb))));
    }
    r.set("m", json!(s.m))
        .set("n", json!(s.n))
        .set("skew_symmetrizer", sym)
        .set("connected", json!(s.connected))
        .set("acyclic", json!(s.acyclic))
        .set("sources", json!(one_based(&s.sources)))
        .set("sinks", json!(one_based(&s.sinks)))
        .set("neighbors", json!(s.neighbors.iter().map(|nb| one_based(nb)).collect::<Vec<_>>()));
    r
}

fn enumerate<F: Field>(b: ExchangeMatrix, max_seeds: usize, laurent: bool) -> Result<Report, CliError> {
    if max_seeds == 0 {
        return Err(CliError::Input("--max-seeds must be positive".into()));
    }
    let n = b.n();
    let seed = Seed::<F>::initial(b);
    let e = enumerate_cluster_variables(&seed, max_seeds, Exploration::BreadthFirst)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let vars: Vec<String> = e.variables.iter().map(|v| v.to_string()).collect();
    let violations: Vec<String> =
        e.variables.iter().filter(|v| !laurent_check(v, n).holds()).map(|v| v.to_string()).collect();
    let (code, verdict) = match (laurent, e.complete, violations.is_empty()) {
        (true, _, false) => (1, "violated"),
        (true, true, true) => (0, "holds"),
        (true, false, true) => (2, "holds_within_bound"),
        (false, true, _) => (0, "complete"),
        (false, false, _) => (2, "incomplete"),
    };
    let mut r = Report::new(code, verdict);
    r.line(format!("clusters visited: {}", e.clusters));
    r.line(format!("cluster variables: {}", vars.len()));
    r.line(format!("exploration complete: {}", e.complete));
    if laurent {
        r.line(format!("Laurent violations: {}", violations.len()));
        for v in &violations {
            r.line(format!("  {v}"));
        }
        r.set("violations", json!(violations));
    } else {
        for v in &vars {
            r.line(format!("  {v}"));
        }
    }
    r.set("clusters", json!(e.clusters))
        .set("variable_count", json!(vars.len()))
        .set("variables", json!(vars))
        .set("complete", json!(e.complete));
    Ok(r)
}

fn check_conjecture<F: Field>(
    sys: &ExchangeSystem<F>,
    max_total_degree: Option<u32>,
    index: Option<&str>,
    override_assumptions: bool,
) -> Result<Report, CliError> {
    let guard = |e: FactorialityError| match e {
        FactorialityError::AssumptionViolated(why) => {
            CliError::Input(format!("{why}; pass --override-assumptions to compare anyway"))
        }
        other => other.into(),
    };
    if let Some(index) = index {
        let a: Vec<u32> = parse_list("index", index)?;
        let out = conjecture_check(sys, &a, override_assumptions).map_err(guard)?;
        let mut r = match out {
            ConjectureOutcome::Holds => {
                let mut r = Report::new(0, "holds");
                r.line(format!("a = ({}): product equals intersection", join_u32(&a)));
                r
            }
            ConjectureOutcome::Fails { witness } => {
                let mut r = Report::new(1, "fails");
                r.line(format!("a = ({}): intersection is larger than the product", join_u32(&a)));
                r.line(format!("witness: {witness}"));
                r.set("witness", json!(witness.to_string()));
                r
            }
            ConjectureOutcome::Inconclusive { reason } => {
                let mut r = Report::new(2, "inconclusive");
                r.line(reason.clone());
                r.set("reason", json!(reason));
                r
            }
        };
        r.set("index", json!(a));
        return Ok(r);
    }
    let d = max_total_degree.expect("clap enforces one target");
    let out = conjecture_check_up_to(sys, d, override_assumptions).map_err(guard)?;
    let (code, verdict) = match (&out.failure, out.budget_exhausted) {
        (Some(_), _) => (1, "fails"),
        (None, true) => (2, "inconclusive"),
        (None, false) => (0, "holds"),
    };
    let mut r = Report::new(code, verdict);
    r.line(format!("multi-indices compared: {}", out.checked));
    r.line(format!("verified for all 1 <= |a| <= {}", out.verified_bound));
    if let Some((a, w)) = &out.failure {
        r.line(format!("fails at a = ({}), witness: {w}", join_u32(a)));
        r.set("failure", json!({"index": a, "witness": w.to_string()}));
    }
    if out.budget_exhausted {
        r.line("Gröbner budget exhausted");
    }
    r.set("max_total_degree", json!(d))
        .set("checked", json!(out.checked))
        .set("verified_bound", json!(out.verified_bound));
    Ok(r)
}

fn join_u32(a: &[u32]) -> String {
    a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn witness_json<F: Field>(sys: &ExchangeSystem<F>, w: &GlsWitness<F>) -> (String, Value) {
    let f = sys.exchange_polynomials();
    match w {
        GlsWitness::Reducible { i, factors } => {
            let fs: Option<Vec<String>> = factors.as_ref().map(|(a, b)| vec![a.to_string(), b.to_string()]);
            let text = match &fs {
                Some(fs) => format!("f{} = {} = ({}) * ({})", i + 1, f[*i], fs[0], fs[1]),
                None => format!("f{} = {} is reducible", i + 1, f[*i]),
            };
            (text, json!({"reducible": {"index": i + 1, "polynomial": f[*i].to_string(), "factors": fs}}))
        }
        GlsWitness::Coincident { i, j } => (
            format!("f{} = f{} = {}", i + 1, j + 1, f[*i]),
            json!({"coincident": [i + 1, j + 1], "polynomial": f[*i].to_string()}),
        ),
        GlsWitness::NonCoprime { i, j } => (
            format!("f{} = {} and f{} = {} are scalar multiples", i + 1, f[*i], j + 1, f[*j]),
            json!({"non_coprime": [i + 1, j + 1]}),
        ),
    }
}

fn certificate_json(c: &SupportCertificate) -> Value {
    Value::Array(
        c.entries()
            .map(|(support, j)| {
                let mut obj = json!({"support": one_based(&support)});
                let extra = match j {
                    Justification::SinkSource { i, j } => json!({"rule": "sink_source", "i": i + 1, "j": j + 1}),
                    Justification::FreeA { i } => json!({"rule": "free_a", "i": i + 1}),
                    Justification::FreeB { i, k } => json!({"rule": "free_b", "i": i + 1, "k": k + 1}),
                };
                obj.as_object_mut().unwrap().extend(extra.as_object().unwrap().clone());
                obj
            })
            .collect(),
    )
}

fn justification_text(j: Justification) -> String {
    match j {
        Justification::SinkSource { i, j } => format!("sink/source {} adjacent to {}", i + 1, j + 1),
        Justification::FreeA { i } => format!("free (a) at {}", i + 1),
        Justification::FreeB { i, k } => format!("free (b) at {} through x{}", i + 1, k + 1),
    }
}

fn prove_ufd<F: Field>(sys: &ExchangeSystem<F>) -> Result<Report, CliError> {
    if let GlsOutcome::Witness(w) = gls_necessary_conditions(sys)? {
        let (text, v) = witness_json(sys, &w);
        let mut r = Report::new(1, "refuted");
        r.line(format!("necessary condition fails: {text}"));
        r.set("witness", v);
        return Ok(r);
    }
    if let Some(why) = check_assumptions(sys).first_failure() {
        let mut r = Report::new(2, "not_applicable");
        r.line(format!("prover not run: {why}"));
        r.set("reason", json!(why));
        return Ok(r);
    }
    match inductive_prover(sys)? {
        ProverOutcome::Certificate(c) => {
            let mut r = Report::new(0, "certified");
            r.line(format!("certificate covers {} supports", c.len()));
            for (s, j) in c.entries() {
                r.line(format!("  {{{}}}: {}", fmt_list(&one_based(&s)), justification_text(j)));
            }
            r.set("certificate_size", json!(c.len())).set("certificate", certificate_json(&c));
            Ok(r)
        }
        ProverOutcome::Stuck(stuck) => {
            let mut r = Report::new(2, "stuck");
            stuck_lines(&mut r, &stuck);
            Ok(r)
        }
    }
}

fn stuck_lines(r: &mut Report, stuck: &[Vec<usize>]) {
    r.line(format!("supports without a justification: {}", stuck.len()));
    for s in stuck {
        r.line(format!("  {{{}}}", fmt_list(&one_based(s))));
    }
    r.set("stuck_supports", json!(stuck.iter().map(|s| one_based(s)).collect::<Vec<_>>()));
}

fn verdict<F: Field>(sys: &ExchangeSystem<F>, bound: u32, budget: Budget) -> Result<Report, CliError> {
    let opts = VerdictOptions { degree_bound: bound, budget, ..VerdictOptions::default() };
    let v = ufd_verdict(sys, &opts)?;
    let label = v.label();
    Ok(match v {
        UfdVerdict::NotUfd { witness } => {
            let (text, w) = witness_json(sys, &witness);
            let mut r = Report::new(1, label);
            r.line(format!("witness: {text}"));
            r.set("witness", w);
            r
        }
        UfdVerdict::Ufd { certificate, assumptions, cross_checked_bound } => {
            let mut r = Report::new(0, label);
            r.line(format!("support certificate: {} supports", certificate.len()));
            match cross_checked_bound {
                Some(d) => r.line(format!("cross-check: product = intersection for all 1 <= |a| <= {d}")),
                None => r.line(format!("cross-check skipped (n = {} > {})", sys.n(), opts.cross_check_max_n)),
            };
            r.set("certificate_size", json!(certificate.len()))
                .set("certificate", certificate_json(&certificate))
                .set("assumptions", serde_json::to_value(&assumptions).unwrap())
                .set("cross_checked_bound", json!(cross_checked_bound));
            r
        }
        UfdVerdict::Inconclusive { reason, stuck_supports, verified_bound, failure } => {
            let mut r = Report::new(2, label);
            r.line(format!("reason: {reason}"));
            stuck_lines(&mut r, &stuck_supports);
            r.line(format!("product = intersection verified for all 1 <= |a| <= {verified_bound}"));
            if let Some((a, w)) = &failure {
                r.line(format!("comparison fails at a = ({}), witness: {w}", join_u32(a)));
                r.set("failure", json!({"index": a, "witness": w.to_string()}));
            }
            r.set("reason", json!(reason)).set("verified_bound", json!(verified_bound));
            r
        }
    })
}

fn parse_expr<F: Field>(sys: &ExchangeSystem<F>, expr: &str) -> Result<cluster_ufd::poly::LaurentPolynomial<F>, CliError> {
    parse_expression::<F>(expr, sys.m()).map_err(|e| CliError::Input(format!("--expr: {e}")))
}

fn member<F: Field>(sys: ExchangeSystem<F>, expr: &str) -> Result<Report, CliError> {
    let v = parse_expr(&sys, expr)?;
    let mut r = match CertifiedSeed::new(sys.clone()) {
        Ok(cs) => {
            let inside = algebra_membership(&cs, &v)?;
            let mut r = if inside { Report::new(0, "member") } else { Report::new(1, "not_member") };
            r.line("method: valuations (certified seed)");
            r.set("method", json!("valuation"));
            r
        }
        Err(FactorialityError::NotCertified(why)) => {
            let inside = product_membership_sufficient(&sys, &v)?;
            let mut r = if inside { Report::new(0, "member") } else { Report::new(2, "undecided") };
            r.line(format!("method: product ideal (seed not certified: {why})"));
            r.set("method", json!("product")).set("reason", json!(why));
            r
        }
        Err(e) => return Err(e.into()),
    };
    r.line(format!("element: {v}"));
    r.set("element", json!(v.to_string()));
    Ok(r)
}

fn normal_form<F: Field>(sys: ExchangeSystem<F>, expr: &str) -> Result<Report, CliError> {
    let v = parse_expr(&sys, expr)?;
    let p: Polynomial<F> =
        v.to_polynomial().ok_or_else(|| CliError::Input("--expr: expected a polynomial".into()))?;
    let cs = CertifiedSeed::new(sys)?;
    let nf = normal_form_element(&cs, &p)?;
    let (irr, factors) = match &nf.irreducibility {
        Irreducibility::Confirmed => ("confirmed", None),
        Irreducibility::NoFactorFound => ("no_factor_found", None),
        Irreducibility::Reducible { factors: (a, b) } => ("reducible", Some(vec![a.to_string(), b.to_string()])),
        Irreducibility::Unverified => ("unverified", None),
    };
    let mut r = Report::new(0, "ok");
    r.line(format!("P = {}", nf.numerator));
    r.line(format!("M(P) exponents: {}", join_u32(nf.monomial.as_slice())));
    r.line(format!("normal form: {}", nf.value));
    r.line(format!("irreducibility: {irr}"));
    if let Some(fs) = &factors {
        r.line(format!("factors: ({}) * ({})", fs[0], fs[1]));
    }
    r.set("numerator", json!(nf.numerator.to_string()))
        .set("monomial", json!(nf.monomial.as_slice()))
        .set("normal_form", json!(nf.value.to_string()))
        .set("irreducibility", json!(irr))
        .set("factors", json!(factors));
    Ok(r)
}

fn hypersurface<F: Field>(n: usize) -> Result<Report, CliError> {
    if n < 2 {
        return Err(CliError::Input("--n must be at least 2".into()));
    }
    let holds = hypersurface_relation_check::<F>(n);
    let mut r = if holds { Report::new(0, "holds") } else { Report::new(1, "fails") };
    r.line(format!("P_{n} vanishes on the one-step mutations of A_{n}: {holds}"));
    r.set("n_relation", json!(n)).set("holds", json!(holds));
    Ok(r)
}
