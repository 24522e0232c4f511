//! The `elimcalc` command line. [`run`] parses arguments, dispatches to a
//! subcommand and returns the exit code with the captured output, so the
//! binary is a thin wrapper and tests can drive it in-process.
//!
//! Exit codes: `0` success, `1` some mathematical check failed, `2` usage,
//! parse or input error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use elimcalc::analysis::{self, ElimReport, Verdict};
use elimcalc::conjecture::{self, ConjectureReport, Counterexample, Inconclusive};
use elimcalc::expansion::{self, ExpansionInstance};
use elimcalc::groebner::{self, BuchbergerOptions, BuchbergerStats, GroebnerBasis, PairStrategy};
use elimcalc::resultant;
use elimcalc::suites::{self, Suite, SuiteConfig, SuiteOutcome};
use elimcalc::text::{format_poly, format_uni, parse_polynomial, Variables};
use elimcalc::{AlgebraError, Polynomial, TermOrder, UniPoly};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "elimcalc", version, about = "Resultants, lex Groebner bases and elimination ideals over Q")]
struct Cli {
    /// Comma-separated variable names, most significant first. The first
    /// variable is the one eliminated.
    #[arg(long, global = true, default_value = "x,y")]
    vars: String,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PairInput {
    /// First polynomial.
    #[arg(short = 'f', long = "f1", allow_hyphen_values = true)]
    f1: Option<String>,

    /// Second polynomial.
    #[arg(short = 'g', long = "f2", allow_hyphen_values = true)]
    f2: Option<String>,

    /// File with one polynomial per line; the first two are used.
    #[arg(long, conflicts_with_all = ["f1", "f2"])]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ListInput {
    /// A polynomial; repeat for several.
    #[arg(short = 'p', long = "poly", allow_hyphen_values = true)]
    polys: Vec<String>,

    /// File with one polynomial per line.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Strategy {
    Normal,
    Degree,
    Fifo,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Bareiss,
    Laplace,
    Interpolation,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Resultant of two polynomials with respect to one variable.
    Resultant {
        /// Variable to eliminate; defaults to the first one.
        #[arg(long)]
        var: Option<String>,
        #[arg(long, value_enum, default_value = "bareiss")]
        method: Method,
        #[command(flatten)]
        pair: PairInput,
    },
    /// Reduced lexicographic Groebner basis.
    Groebner {
        #[command(flatten)]
        list: ListInput,
        #[arg(long, value_enum, default_value = "normal")]
        strategy: Strategy,
        /// Disable the chain criterion.
        #[arg(long)]
        no_chain: bool,
    },
    /// Reduced basis of the elimination ideal.
    Eliminate {
        #[command(flatten)]
        list: ListInput,
        /// Number of leading variables to eliminate.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Full elimination report for a bivariate pair.
    Analyze {
        #[command(flatten)]
        pair: PairInput,
    },
    /// Tangency verdicts at the rational intersection points of a pair, or a
    /// seeded corpus run with `--corpus`.
    Conjecture {
        #[command(flatten)]
        pair: PairInput,
        #[arg(long)]
        corpus: bool,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, env = "ELIMCALC_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, default_value_t = 9)]
        coeff: i64,
    },
    /// Lift the reduced basis of the elimination ideal to the full ideal.
    Expand {
        #[command(flatten)]
        list: ListInput,
        /// Generator of the elimination ideal; repeat for several. Computed
        /// from the input when absent.
        #[arg(short = 'e', long = "gnext", allow_hyphen_values = true)]
        gnext: Vec<String>,
    },
    /// Seeded batch checks.
    Selftest {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, env = "ELIMCALC_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, default_value_t = 9)]
        coeff: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String, failed: bool) -> Self {
        Output { code: if failed { EXIT_CHECK_FAILED } else { EXIT_OK }, stdout, stderr: String::new() }
    }

    fn usage(msg: String) -> Self {
        Output { code: EXIT_USAGE, stdout: String::new(), stderr: msg }
    }
}

enum CliError {
    Usage(String),
    Algebra(AlgebraError),
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Algebra(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Output::usage(text) } else { Output::ok(text, false) };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        Err(CliError::Usage(msg)) => Output::usage(format!("error: {msg}\n")),
        Err(CliError::Algebra(e)) => Output::usage(format!("error: {e}\n")),
    }
}

struct Ctx {
    vars: Variables,
    json: bool,
}

impl Ctx {
    fn poly(&self, p: &Polynomial) -> String {
        format_poly(p, &self.vars)
    }

    /// Univariate polynomials live in the second variable.
    fn uni(&self, p: &UniPoly) -> String {
        format_uni(p, &self.vars.names()[1])
    }

    fn parse(&self, label: &str, src: &str) -> CliResult<Polynomial> {
        parse_polynomial(src, &self.vars).map_err(|e| CliError::Usage(format!("{label}: {e}")))
    }

    fn parse_file(&self, path: &Path) -> CliResult<Vec<Polynomial>> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let mut out = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            out.push(self.parse(&format!("{}:{}", path.display(), n + 1), line)?);
        }
        Ok(out)
    }

    fn pair(&self, input: &PairInput) -> CliResult<(Polynomial, Polynomial)> {
        if let Some(path) = &input.input {
            let polys = self.parse_file(path)?;
            if polys.len() < 2 {
                return Err(CliError::Usage(format!("{} must hold two polynomials", path.display())));
            }
            return Ok((polys[0].clone(), polys[1].clone()));
        }
        match (&input.f1, &input.f2) {
            (Some(a), Some(b)) => Ok((self.parse("f1", a)?, self.parse("f2", b)?)),
            _ => Err(CliError::Usage("two polynomials are required (-f and -g, or --input)".into())),
        }
    }

    fn list(&self, input: &ListInput) -> CliResult<Vec<Polynomial>> {
        let mut out = Vec::new();
        for (k, s) in input.polys.iter().enumerate() {
            out.push(self.parse(&format!("polynomial {}", k + 1), s)?);
        }
        if let Some(path) = &input.input {
            out.extend(self.parse_file(path)?);
        }
        if out.is_empty() {
            return Err(CliError::Usage("no polynomials given (use -p or --input)".into()));
        }
        Ok(out)
    }

    fn bivariate(&self) -> CliResult<()> {
        if self.vars.len() != 2 {
            return Err(CliError::Usage(format!("this command needs exactly two variables, got {}", self.vars.len())));
        }
        Ok(())
    }

    /// Object carrying every schema key, filled in by the caller.
    fn base(&self, command: &str, inputs: &[Polynomial]) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("command".into(), json!(command));
        m.insert("inputs".into(), json!(inputs.iter().map(|p| self.poly(p)).collect::<Vec<_>>()));
        for key in ["g", "resultant", "h1", "h2", "t1", "t2"] {
            m.insert(key.into(), Value::Null);
        }
        m.insert("multiplicity_table".into(), json!([]));
        m.insert("checks".into(), json!({}));
        m.insert("counterexamples".into(), json!([]));
        m
    }

    fn fill_report(&self, m: &mut Map<String, Value>, r: &ElimReport) {
        m.insert("g".into(), json!(self.uni(&r.g)));
        m.insert("resultant".into(), json!(self.uni(&r.resultant)));
        m.insert("h1".into(), json!(self.uni(&r.h1)));
        m.insert("h2".into(), json!(self.uni(&r.h2)));
        m.insert("t1".into(), json!(self.uni(&r.t1)));
        m.insert("t2".into(), json!(self.uni(&r.t2)));
        let rows: Vec<Value> = r
            .table
            .iter()
            .map(|row| json!({"factor": self.uni(&row.factor), "mu": row.mu, "nu": row.nu}))
            .collect();
        m.insert("multiplicity_table".into(), Value::Array(rows));
        m.insert("checks".into(), checks_json(r.checks.iter().map(|(k, v)| (k.as_str(), *v))));
    }
}

fn checks_json<'a>(checks: impl Iterator<Item = (&'a str, Verdict)>) -> Value {
    Value::Object(checks.map(|(k, v)| (k.to_string(), json!(v.as_str()))).collect())
}

fn counterexample_json(c: &Counterexample) -> Value {
    json!({"f1": c.f1, "f2": c.f2, "x": c.x, "y": c.y, "mu": c.mu, "nu": c.nu})
}

fn stats_json(s: &BuchbergerStats) -> Value {
    json!({
        "pairs_created": s.pairs_created,
        "pairs_reduced": s.pairs_reduced,
        "zero_reductions": s.zero_reductions,
        "coprime_skips": s.coprime_skips,
        "chain_skips": s.chain_skips,
        "handled_skips": s.handled_skips,
    })
}

fn render(m: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
    s.push('\n');
    s
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().map(|l| l + "\n").collect()
}

fn dispatch(cli: &Cli) -> CliResult<Output> {
    let vars = Variables::from_list(&cli.vars).map_err(CliError::Usage)?;
    let ctx = Ctx { vars, json: cli.json };
    match &cli.command {
        Command::Resultant { var, method, pair } => cmd_resultant(&ctx, var.as_deref(), *method, pair),
        Command::Groebner { list, strategy, no_chain } => cmd_groebner(&ctx, list, *strategy, *no_chain),
        Command::Eliminate { list, count } => cmd_eliminate(&ctx, list, *count),
        Command::Analyze { pair } => cmd_analyze(&ctx, pair),
        Command::Conjecture { pair, corpus, count, seed, degree, coeff } => {
            if *corpus {
                cmd_corpus(&ctx, *seed, *count, *degree, *coeff)
            } else {
                cmd_conjecture(&ctx, pair)
            }
        }
        Command::Expand { list, gnext } => cmd_expand(&ctx, list, gnext),
        Command::Selftest { suite, count, seed, degree, coeff } => {
            let cfg = SuiteConfig { seed: *seed, count: *count, degree_bound: *degree, coeff_bound: *coeff };
            cmd_selftest(&ctx, suite, &cfg)
        }
    }
}

fn cmd_resultant(ctx: &Ctx, var: Option<&str>, method: Method, pair: &PairInput) -> CliResult<Output> {
    let (f1, f2) = ctx.pair(pair)?;
    let v = match var {
        None => 0,
        Some(name) => ctx.vars.index_of(name).ok_or_else(|| CliError::Usage(format!("unknown variable {name:?}")))?,
    };
    let res = match method {
        Method::Bareiss => resultant::resultant(&f1, &f2, v)?,
        Method::Interpolation => resultant::resultant_eval_oracle(&f1, &f2, v)?,
        Method::Laplace => {
            if f1.is_zero() || f2.is_zero() {
                resultant::resultant(&f1, &f2, v)?
            } else {
                let m = resultant::sylvester_matrix(&f1, &f2, v)?;
                resultant::det_laplace(&m.rows, f1.arity())
            }
        }
    };
    if ctx.json {
        let mut m = ctx.base("resultant", &[f1, f2]);
        m.insert("var".into(), json!(ctx.vars.names()[v]));
        m.insert("resultant".into(), json!(ctx.poly(&res)));
        return Ok(Output::ok(render(m), false));
    }
    Ok(Output::ok(lines([ctx.poly(&res)]), false))
}

fn cmd_groebner(ctx: &Ctx, list: &ListInput, strategy: Strategy, no_chain: bool) -> CliResult<Output> {
    let polys = ctx.list(list)?;
    let strategy = match strategy {
        Strategy::Normal => PairStrategy::Normal,
        Strategy::Degree => PairStrategy::Degree,
        Strategy::Fifo => PairStrategy::Fifo,
    };
    let opts = BuchbergerOptions { strategy, chain_criterion: !no_chain };
    let order = TermOrder::lex(ctx.vars.len());
    let (gb, stats) = groebner::buchberger_with(&polys, &order, opts)?;
    let basis: Vec<String> = gb.elements.iter().map(|p| ctx.poly(p)).collect();
    if ctx.json {
        let mut m = ctx.base("groebner", &polys);
        m.insert("basis".into(), json!(basis));
        m.insert("stats".into(), stats_json(&stats));
        return Ok(Output::ok(render(m), false));
    }
    Ok(Output::ok(lines(basis), false))
}

fn cmd_eliminate(ctx: &Ctx, list: &ListInput, count: usize) -> CliResult<Output> {
    let polys = ctx.list(list)?;
    let order = TermOrder::lex(ctx.vars.len());
    let basis = groebner::eliminate(&polys, &order, count)?;
    let text: Vec<String> = basis.iter().map(|p| ctx.poly(p)).collect();
    if ctx.json {
        let mut m = ctx.base("eliminate", &polys);
        if basis.len() <= 1 {
            m.insert("g".into(), json!(text.first().cloned().unwrap_or_else(|| "0".into())));
        }
        m.insert("basis".into(), json!(text));
        return Ok(Output::ok(render(m), false));
    }
    if text.is_empty() {
        return Ok(Output::ok(lines(["0".to_string()]), false));
    }
    Ok(Output::ok(lines(text), false))
}

fn report_text(ctx: &Ctx, r: &ElimReport) -> String {
    let mut out = vec![
        format!("f1 = {}", ctx.poly(&r.f1)),
        format!("f2 = {}", ctx.poly(&r.f2)),
        format!("g = {}", ctx.uni(&r.g)),
        format!("resultant = {}", ctx.uni(&r.resultant)),
        format!("h1 = {}", ctx.uni(&r.h1)),
        format!("h2 = {}", ctx.uni(&r.h2)),
        format!("t1 = {}", ctx.uni(&r.t1)),
        format!("t2 = {}", ctx.uni(&r.t2)),
    ];
    if !r.table.is_empty() {
        out.push("multiplicities (factor: mu nu)".into());
        for row in &r.table {
            out.push(format!("  {}: {} {}", ctx.uni(&row.factor), row.mu, row.nu));
        }
    }
    out.push("checks".into());
    for (k, v) in &r.checks {
        out.push(format!("  {k}: {v}"));
    }
    lines(out)
}

fn candidates(ctx: &Ctx, r: &ElimReport, c: &ConjectureReport) -> Vec<Counterexample> {
    c.verdicts
        .iter()
        .filter(|v| v.applicable && v.common_horizontal_tangent && v.consistent == Some(false))
        .map(|v| Counterexample {
            f1: ctx.poly(&r.f1),
            f2: ctx.poly(&r.f2),
            x: v.point.x.to_string(),
            y: v.point.y.to_string(),
            mu: v.mu,
            nu: v.nu,
        })
        .collect()
}

fn cmd_analyze(ctx: &Ctx, pair: &PairInput) -> CliResult<Output> {
    ctx.bivariate()?;
    let (f1, f2) = ctx.pair(pair)?;
    let r = analysis::elim_report(&f1, &f2)?;
    let failed = r.has_failure();
    if ctx.json {
        let mut m = ctx.base("analyze", &[f1, f2]);
        ctx.fill_report(&mut m, &r);
        if !r.resultant.is_zero() {
            let c = conjecture::conjecture_from_report(&r)?;
            let found: Vec<Value> = candidates(ctx, &r, &c).iter().map(counterexample_json).collect();
            m.insert("counterexamples".into(), Value::Array(found));
        }
        return Ok(Output::ok(render(m), failed));
    }
    Ok(Output::ok(report_text(ctx, &r), failed))
}

fn inconclusive_text(ctx: &Ctx, i: &Inconclusive) -> String {
    match i {
        Inconclusive::IrrationalFactor(p) => format!("factor {} of g has irrational roots", ctx.uni(p)),
        Inconclusive::IrrationalFiber(c) => format!("fiber over {} has irrational points", c),
        Inconclusive::InfiniteFiber(c) => format!("fiber over {} is infinite", c),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_conjecture(ctx: &Ctx, pair: &PairInput) -> CliResult<Output> {
    ctx.bivariate()?;
    let (f1, f2) = ctx.pair(pair)?;
    let r = analysis::elim_report(&f1, &f2)?;
    if r.resultant.is_zero() {
        let msg = "resultant is zero: the curves share a component, no point verdicts";
        if ctx.json {
            let mut m = ctx.base("conjecture", &[f1, f2]);
            ctx.fill_report(&mut m, &r);
            m.insert("points".into(), json!([]));
            m.insert("inconclusive".into(), json!([msg]));
            return Ok(Output::ok(render(m), false));
        }
        return Ok(Output::ok(lines([msg.to_string()]), false));
    }
    let c = conjecture::conjecture_from_report(&r)?;
    let found = candidates(ctx, &r, &c);
    if ctx.json {
        let mut m = ctx.base("conjecture", &[f1, f2]);
        ctx.fill_report(&mut m, &r);
        let points: Vec<Value> = c
            .verdicts
            .iter()
            .map(|v| {
                json!({
                    "x": v.point.x.to_string(),
                    "y": v.point.y.to_string(),
                    "fiber_multiplicity": v.point.fiber_multiplicity,
                    "common_horizontal_tangent": v.common_horizontal_tangent,
                    "tangent_is_component": v.tangent_is_component,
                    "mu": v.mu,
                    "nu": v.nu,
                    "applicable": v.applicable,
                    "consistent": v.consistent,
                })
            })
            .collect();
        m.insert("points".into(), Value::Array(points));
        m.insert(
            "inconclusive".into(),
            json!(c.inconclusive.iter().map(|i| inconclusive_text(ctx, i)).collect::<Vec<_>>()),
        );
        m.insert("counterexamples".into(), Value::Array(found.iter().map(counterexample_json).collect()));
        return Ok(Output::ok(render(m), false));
    }
    let mut out = Vec::new();
    for v in &c.verdicts {
        let consistent = match v.consistent {
            Some(b) => yes_no(b),
            None => "n/a",
        };
        out.push(format!(
            "point ({}, {}): common tangent {}, component {}, mu {}, nu {}, applicable {}, consistent {}",
            v.point.x,
            v.point.y,
            yes_no(v.common_horizontal_tangent),
            yes_no(v.tangent_is_component),
            v.mu,
            v.nu,
            yes_no(v.applicable),
            consistent
        ));
    }
    for i in &c.inconclusive {
        out.push(format!("inconclusive: {}", inconclusive_text(ctx, i)));
    }
    for ce in &found {
        out.push(format!("candidate counterexample at ({}, {}): mu {} = nu {}", ce.x, ce.y, ce.mu, ce.nu));
    }
    if out.is_empty() {
        out.push("no rational intersection points".into());
    }
    Ok(Output::ok(lines(out), false))
}

fn cmd_corpus(ctx: &Ctx, seed: u64, count: usize, degree: u32, coeff: i64) -> CliResult<Output> {
    let s = conjecture::corpus_run(seed, count, degree, coeff)?;
    if ctx.json {
        let mut m = ctx.base("conjecture", &[]);
        m.insert(
            "summary".into(),
            json!({
                "seed": seed,
                "instances": s.instances,
                "zero_resultant": s.zero_resultant,
                "points": s.points,
                "applicable": s.applicable,
                "common_tangent": s.common_tangent,
                "tangent_consistent": s.tangent_consistent,
                "tangent_component": s.tangent_component,
                "inconclusive": s.inconclusive,
            }),
        );
        m.insert("counterexamples".into(), Value::Array(s.counterexamples.iter().map(counterexample_json).collect()));
        return Ok(Output::ok(render(m), false));
    }
    let mut out = vec![
        format!("instances {} (seed {seed})", s.instances),
        format!("zero resultant {}", s.zero_resultant),
        format!("points {}", s.points),
        format!("applicable {}", s.applicable),
        format!("common tangent {}", s.common_tangent),
        format!("consistent {}", s.tangent_consistent),
        format!("tangent components {}", s.tangent_component),
        format!("inconclusive {}", s.inconclusive),
        format!("candidate counterexamples {}", s.counterexamples.len()),
    ];
    for c in &s.counterexamples {
        out.push(format!("  f1 = {}; f2 = {}; point ({}, {}); mu {} nu {}", c.f1, c.f2, c.x, c.y, c.mu, c.nu));
    }
    Ok(Output::ok(lines(out), false))
}

fn cmd_expand(ctx: &Ctx, list: &ListInput, gnext: &[String]) -> CliResult<Output> {
    let polys = ctx.list(list)?;
    let order = TermOrder::lex(ctx.vars.len());
    let inst = if gnext.is_empty() {
        ExpansionInstance::from_generators(polys.clone(), order)?
    } else {
        let mut gs = Vec::new();
        for (k, s) in gnext.iter().enumerate() {
            gs.push(ctx.parse(&format!("elimination generator {}", k + 1), s)?);
        }
        let g_next = groebner::buchberger(&gs, &order)?;
        ExpansionInstance { f_prev: polys.clone(), g_next, order }
    };
    let run = expansion::expand_basis_with_stats(&inst)?;
    let check = expansion::verify_expansion(&inst, &run.basis);
    let failed = !check.pass;
    let show = |gb: &GroebnerBasis| gb.elements.iter().map(|p| ctx.poly(p)).collect::<Vec<_>>();
    if ctx.json {
        let mut m = ctx.base("expand", &polys);
        m.insert("g_next".into(), json!(show(&inst.g_next)));
        m.insert("basis".into(), json!(show(&run.basis)));
        m.insert("checks".into(), json!({"expansion_matches_direct": Verdict::from_bool(check.pass).as_str()}));
        m.insert("discrepancies".into(), json!(check.discrepancies));
        let s = &run.stats;
        m.insert(
            "stats".into(),
            json!({
                "coefficient_reductions": s.coefficient_reductions,
                "vanished_generators": s.vanished_generators,
                "s_internal": s.s_internal,
                "s_against_g": s.s_against_g,
                "s_zero": s.s_zero,
                "short_circuited": s.short_circuited,
                "engine": stats_json(&s.engine),
            }),
        );
        return Ok(Output::ok(render(m), failed));
    }
    let mut out = show(&run.basis);
    out.push(format!("verification: {}", if check.pass { "pass" } else { "fail" }));
    for d in &check.discrepancies {
        out.push(format!("  {d}"));
    }
    out.push(format!(
        "coefficient reductions {}, short-circuited pairs {}, pairs reduced {}",
        run.stats.coefficient_reductions, run.stats.short_circuited, run.stats.engine.pairs_reduced
    ));
    Ok(Output::ok(lines(out), failed))
}

fn outcome_json(o: &SuiteOutcome) -> Value {
    json!({
        "suite": o.suite.name(),
        "seed": o.config.seed,
        "count": o.config.count,
        "cases": o.cases,
        "passed": o.passed,
        "failed": o.failures.len(),
        "skipped": o.skipped,
        "notes": o.notes,
        "failures": o.failures.iter().map(|f| json!({"index": f.index, "detail": f.detail})).collect::<Vec<_>>(),
    })
}

fn cmd_selftest(ctx: &Ctx, suite: &str, cfg: &SuiteConfig) -> CliResult<Output> {
    let outcomes = if suite == "all" {
        suites::run_all(cfg)?
    } else {
        let s: Suite = suite.parse().map_err(CliError::Usage)?;
        vec![suites::run_suite(s, cfg)?]
    };
    let failed = outcomes.iter().any(|o| !o.ok());
    if ctx.json {
        let mut m = ctx.base("selftest", &[]);
        m.insert(
            "checks".into(),
            checks_json(outcomes.iter().map(|o| (o.suite.name(), Verdict::from_bool(o.ok())))),
        );
        let found: Vec<Value> = outcomes.iter().flat_map(|o| o.counterexamples.iter().map(counterexample_json)).collect();
        m.insert("counterexamples".into(), Value::Array(found));
        m.insert("suites".into(), Value::Array(outcomes.iter().map(outcome_json).collect()));
        return Ok(Output::ok(render(m), failed));
    }
    Ok(Output::ok(outcomes.iter().map(SuiteOutcome::transcript).collect(), failed))
}
