//! Seeded batch checks over generated instances. Every suite is a pure
//! function of its configuration, so transcripts are byte-identical across
//! runs with the same seed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::analysis::{self, Verdict, DIVISIBILITY_CHECKS, X};
use crate::conjecture;
use crate::error::Result;
use crate::expansion::{self, ExpansionInstance};
use crate::factor;
use crate::generate::{Family, InstanceGenerator};
use crate::groebner::{self, BuchbergerOptions, PairStrategy};
use crate::poly::{int, Polynomial, TermOrder};
use crate::resultant;
use crate::text::{format_poly, Variables};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Divisibility,
    ResZero,
    Radical,
    NuOne,
    Oracle,
    Groebner,
    Expansion,
    Identities,
    ManyPoly,
    Conjecture,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Divisibility,
        Suite::ResZero,
        Suite::Radical,
        Suite::NuOne,
        Suite::Oracle,
        Suite::Groebner,
        Suite::Expansion,
        Suite::Identities,
        Suite::ManyPoly,
        Suite::Conjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Divisibility => "divisibility",
            Suite::ResZero => "res-zero",
            Suite::Radical => "radical",
            Suite::NuOne => "nu-one",
            Suite::Oracle => "oracle",
            Suite::Groebner => "groebner",
            Suite::Expansion => "expansion",
            Suite::Identities => "identities",
            Suite::ManyPoly => "many-poly",
            Suite::Conjecture => "conjecture",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub count: usize,
    pub degree_bound: u32,
    pub coeff_bound: i64,
}

impl SuiteConfig {
    pub fn new(seed: u64, count: usize) -> Self {
        SuiteConfig { seed, count, degree_bound: 4, coeff_bound: 9 }
    }

    /// Degree bound for the Buchberger-heavy suites.
    pub fn groebner_degree(&self) -> u32 {
        self.degree_bound.min(3)
    }

    fn generator(&self, family: Family) -> InstanceGenerator {
        InstanceGenerator::new(self.seed, self.degree_bound, self.coeff_bound, family)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseFailure {
    pub index: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub config: SuiteConfig,
    pub cases: usize,
    pub passed: usize,
    /// Drawn instances that did not meet the suite's precondition.
    pub skipped: usize,
    pub failures: Vec<CaseFailure>,
    pub notes: Vec<String>,
    /// Candidate counterexamples surfaced by the conjecture suite.
    pub counterexamples: Vec<conjecture::Counterexample>,
}

impl SuiteOutcome {
    fn new(suite: Suite, config: SuiteConfig) -> Self {
        SuiteOutcome { suite, config, cases: 0, passed: 0, skipped: 0, failures: Vec::new(), notes: Vec::new(), counterexamples: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, index: u64, problems: Vec<String>) {
        self.cases += 1;
        if problems.is_empty() {
            self.passed += 1;
        } else {
            self.failures.push(CaseFailure { index, detail: problems.join("; ") });
        }
    }

    pub fn transcript(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "suite {} seed={} count={} degree={} coeff={}\n  cases={} passed={} failed={} skipped={}\n",
            self.suite,
            c.seed,
            c.count,
            c.degree_bound,
            c.coeff_bound,
            self.cases,
            self.passed,
            self.failures.len(),
            self.skipped
        );
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!("  FAIL #{}: {}\n", f.index, f.detail));
        }
        out.push_str(&format!("result {} {}\n", self.suite, if self.ok() { "pass" } else { "fail" }));
        out
    }
}

fn show(polys: &[Polynomial]) -> String {
    let vars = Variables::default();
    polys.iter().map(|p| format!("[{}]", format_poly(p, &vars))).collect::<Vec<_>>().join(" ")
}

fn failed_checks(checks: &BTreeMap<String, Verdict>, keys: &[&str]) -> Vec<String> {
    keys.iter()
        .filter(|k| checks.get(**k).is_none_or(|v| v.is_fail()))
        .map(|k| k.to_string())
        .collect()
}

/// Random pairs with nonzero resultant, as `(index, f1, f2)`.
fn nonzero_resultant_corpus(cfg: &SuiteConfig, out: &mut SuiteOutcome) -> Result<Vec<(u64, Polynomial, Polynomial)>> {
    let mut corpus = Vec::with_capacity(cfg.count);
    for inst in cfg.generator(Family::Random) {
        if corpus.len() == cfg.count {
            break;
        }
        let (f1, f2) = (inst.polys[0].clone(), inst.polys[1].clone());
        if resultant::resultant(&f1, &f2, X)?.is_zero() {
            out.skipped += 1;
            continue;
        }
        corpus.push((inst.index, f1, f2));
    }
    Ok(corpus)
}

fn report_suite(suite: Suite, cfg: &SuiteConfig, keys: &[&str]) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(suite, *cfg);
    for (i, f1, f2) in nonzero_resultant_corpus(cfg, &mut out)? {
        let report = analysis::elim_report(&f1, &f2)?;
        let bad = failed_checks(&report.checks, keys);
        let problems = if bad.is_empty() { vec![] } else { vec![format!("{} failed on {}", bad.join(","), show(&[f1, f2]))] };
        out.record(i, problems);
    }
    Ok(out)
}

fn divisibility(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    report_suite(Suite::Divisibility, cfg, &DIVISIBILITY_CHECKS)
}

fn radical(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    report_suite(Suite::Radical, cfg, &["radical_identity"])
}

fn nu_one(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(Suite::NuOne, *cfg);
    let mut not_applicable = 0;
    for (i, f1, f2) in nonzero_resultant_corpus(cfg, &mut out)? {
        let (verdict, candidate) = analysis::nu_one_formula(&f1, &f2)?;
        match verdict {
            Verdict::NotApplicable => not_applicable += 1,
            Verdict::Pass => out.record(i, vec![]),
            Verdict::Fail => {
                let cand = candidate.map(|c| crate::text::format_uni(&c, "y")).unwrap_or_else(|| "none".into());
                out.record(i, vec![format!("candidate {cand} differs from g on {}", show(&[f1, f2]))]);
            }
        }
    }
    out.notes.push(format!("{not_applicable} instances with non-square-free resultant"));
    Ok(out)
}

/// Some `y = c` specialization keeps both `x`-degrees and has constant gcd.
fn coprime_witness(f1: &Polynomial, f2: &Polynomial) -> Result<Option<i64>> {
    let (h1, _) = analysis::lead_trail(f1)?;
    let (h2, _) = analysis::lead_trail(f2)?;
    for c in 0..32i64 {
        let v = int(c);
        if h1.eval(&v).is_zero() || h2.eval(&v).is_zero() {
            continue;
        }
        let a = conjecture::slice(f1, &v)?;
        let b = conjecture::slice(f2, &v)?;
        if factor::gcd(&a, &b).degree() == Some(0) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn res_zero(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(Suite::ResZero, *cfg);
    for inst in cfg.generator(Family::CommonFactor).take(cfg.count) {
        let (f1, f2) = (&inst.polys[0], &inst.polys[1]);
        let mut problems = Vec::new();
        if !resultant::resultant(f1, f2, X)?.is_zero() {
            problems.push(format!("nonzero resultant for common factor {}", show(&inst.polys)));
        }
        if !analysis::elimination_generator(&inst.polys)?.is_zero() {
            problems.push(format!("nonzero elimination ideal for common factor {}", show(&inst.polys)));
        }
        out.record(inst.index, problems);
    }
    let mut coprime = 0;
    for inst in cfg.generator(Family::Random) {
        if coprime == cfg.count {
            break;
        }
        let (f1, f2) = (&inst.polys[0], &inst.polys[1]);
        if coprime_witness(f1, f2)?.is_none() {
            out.skipped += 1;
            continue;
        }
        coprime += 1;
        let mut problems = Vec::new();
        if resultant::resultant(f1, f2, X)?.is_zero() {
            problems.push(format!("zero resultant for coprime {}", show(&inst.polys)));
        }
        if analysis::elimination_generator(&inst.polys)?.is_zero() {
            problems.push(format!("zero elimination ideal for coprime {}", show(&inst.polys)));
        }
        out.record(inst.index, problems);
    }
    out.notes.push(format!("{} common-factor pairs, {coprime} coprime pairs", cfg.count));
    Ok(out)
}

fn oracle(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(Suite::Oracle, *cfg);
    let mut laplace = 0;
    for inst in cfg.generator(Family::Random).take(cfg.count) {
        let (f1, f2) = (&inst.polys[0], &inst.polys[1]);
        let bareiss = resultant::resultant(f1, f2, X)?;
        let eval = resultant::resultant_eval_oracle(f1, f2, X)?;
        let mut problems = Vec::new();
        if bareiss != eval {
            problems.push(format!("bareiss and interpolation differ on {}", show(&inst.polys)));
        }
        let m = resultant::sylvester_matrix(f1, f2, X)?;
        if m.size() <= 4 {
            laplace += 1;
            if resultant::det_laplace(&m.rows, 2) != bareiss {
                problems.push(format!("laplace differs on {}", show(&inst.polys)));
            }
        }
        out.record(inst.index, problems);
    }
    out.notes.push(format!("{laplace} instances also checked by cofactor expansion"));
    Ok(out)
}

fn groebner_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(Suite::Groebner, *cfg);
    let gen = InstanceGenerator::new(cfg.seed, cfg.groebner_degree(), cfg.coeff_bound, Family::Random);
    let order = TermOrder::lex(2);
    let normal = BuchbergerOptions::default();
    let degree = BuchbergerOptions { strategy: PairStrategy::Degree, chain_criterion: true };
    for inst in gen.take(cfg.count) {
        let (a, _) = groebner::buchberger_with(&inst.polys, &order, normal)?;
        let (b, _) = groebner::buchberger_with(&inst.polys, &order, degree)?;
        let mut problems = Vec::new();
        if a != b {
            problems.push(format!("strategies disagree on {}", show(&inst.polys)));
        }
        if !groebner::is_groebner_basis(&a.elements, &order)? {
            problems.push(format!("S-polynomial with nonzero remainder for {}", show(&inst.polys)));
        }
        if !groebner::is_reduced(&a.elements, &order)? {
            problems.push(format!("basis not reduced for {}", show(&inst.polys)));
        }
        for p in &inst.polys {
            if !a.contains(p)? {
                problems.push(format!("input {} not in ideal of basis", show(std::slice::from_ref(p))));
            }
        }
        out.record(inst.index, problems);
    }
    out.notes.push(format!("degree bound {} for this suite", cfg.groebner_degree()));
    Ok(out)
}

fn expansion_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(Suite::Expansion, *cfg);
    let gen = InstanceGenerator::new(cfg.seed, cfg.groebner_degree(), cfg.coeff_bound, Family::Random);
    let (mut reductions, mut short, mut vanished) = (0, 0, 0);
    for inst in gen.take(cfg.count) {
        let e = ExpansionInstance::from_generators(inst.polys.clone(), TermOrder::lex(2))?;
        let run = expansion::expand_basis_with_stats(&e)?;
        reductions += run.stats.coefficient_reductions;
        short += run.stats.short_circuited;
        vanished += run.stats.vanished_generators;
        let check = expansion::verify_expansion(&e, &run.basis);
        let problems = if check.pass {
            vec![]
        } else {
            vec![format!("{} on {}", check.discrepancies.join(", "), show(&inst.polys))]
        };
        out.record(inst.index, problems);
    }
    out.notes.push(format!("degree bound {} for this suite", cfg.groebner_degree()));
    out.notes.push(format!(
        "coefficient reductions {reductions}, vanished generators {vanished}, short-circuited pairs {short}"
    ));
    Ok(out)
}

#[derive(Default)]
struct SignTally {
    plus: usize,
    minus: usize,
    not_applicable: usize,
}

impl SignTally {
    fn add(&mut self, c: &analysis::SignedCheck) {
        match (c.verdict, c.sign) {
            (Verdict::NotApplicable, _) => self.not_applicable += 1,
            (_, Some(1)) => self.plus += 1,
            (_, Some(_)) => self.minus += 1,
            _ => {}
        }
    }

    fn describe(&self, name: &str) -> String {
        format!("{name}: sign + {}, sign - {}, n/a {}", self.plus, self.minus, self.not_applicable)
    }
}

fn identities(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(Suite::Identities, *cfg);
    let (mut spol, mut step, mut whole) = (SignTally::default(), SignTally::default(), SignTally::default());
    for inst in cfg.generator(Family::Random) {
        if out.cases == cfg.count {
            break;
        }
        let (mut f1, mut f2) = (inst.polys[0].clone(), inst.polys[1].clone());
        if f1.degree_in(X) < f2.degree_in(X) {
            std::mem::swap(&mut f1, &mut f2);
        }
        let Some(parts) = analysis::spol_parts(&f1, &f2)? else {
            out.skipped += 1;
            continue;
        };
        let mut problems = Vec::new();
        let s = analysis::spol_resultant_identity(&f1, &f2)?;
        spol.add(&s);
        if s.verdict.is_fail() {
            problems.push(format!("spol identity fails on {}", show(&[f1.clone(), f2.clone()])));
        }
        // each step maps u to v = b·u − c·x^k·f2, so b·u ≡ v
        let b = f2.leading_coeff_wrt(X)?;
        let chain = analysis::reduction_chain(&f2, &parts.s)?;
        for w in chain.windows(2) {
            let c = analysis::reduction_resultant_relation(&f2, &(&b * &w[0]), &w[1])?;
            step.add(&c);
            if c.verdict.is_fail() {
                problems.push(format!(
                    "reduction step {} -> {} modulo {} fails",
                    show(std::slice::from_ref(&w[0])),
                    show(std::slice::from_ref(&w[1])),
                    show(std::slice::from_ref(&f2))
                ));
            }
        }
        if let Some(last) = chain.last() {
            let scaled = &b.pow(chain.len() as u32 - 1) * &parts.s;
            let c = analysis::reduction_resultant_relation(&f2, &scaled, last)?;
            whole.add(&c);
            if c.verdict.is_fail() {
                problems.push(format!("full reduction fails on {}", show(&[f1.clone(), f2.clone()])));
            }
        }
        out.record(inst.index, problems);
    }
    out.notes.push(spol.describe("spol identity"));
    out.notes.push(step.describe("single reduction steps"));
    out.notes.push(whole.describe("full reductions"));
    Ok(out)
}

fn many_poly(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(Suite::ManyPoly, *cfg);
    let gen = InstanceGenerator::new(cfg.seed, cfg.groebner_degree(), cfg.coeff_bound, Family::ManyPoly);
    for inst in gen.take(cfg.count) {
        let r = analysis::many_poly_suite(&inst.polys)?;
        if r.degenerate {
            out.skipped += 1;
            continue;
        }
        let bad: Vec<String> = r.checks.iter().filter(|(_, v)| v.is_fail()).map(|(k, _)| k.clone()).collect();
        let problems =
            if bad.is_empty() { vec![] } else { vec![format!("{} failed on {}", bad.join(","), show(&inst.polys))] };
        out.record(inst.index, problems);
    }
    Ok(out)
}

fn conjecture_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(Suite::Conjecture, *cfg);
    let s = conjecture::corpus_run(cfg.seed, cfg.count, cfg.degree_bound, cfg.coeff_bound)?;
    out.cases = s.instances;
    out.passed = s.instances;
    out.notes.push(format!(
        "zero resultant {}, points {}, applicable {}, common tangent {}, consistent {}, tangent components {}, inconclusive {}",
        s.zero_resultant, s.points, s.applicable, s.common_tangent, s.tangent_consistent, s.tangent_component, s.inconclusive
    ));
    out.notes.push(format!("candidate counterexamples {}", s.counterexamples.len()));
    for c in &s.counterexamples {
        out.notes.push(format!("candidate f1=[{}] f2=[{}] point=({}, {}) mu={} nu={}", c.f1, c.f2, c.x, c.y, c.mu, c.nu));
    }
    out.counterexamples = s.counterexamples;
    Ok(out)
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    match suite {
        Suite::Divisibility => divisibility(cfg),
        Suite::ResZero => res_zero(cfg),
        Suite::Radical => radical(cfg),
        Suite::NuOne => nu_one(cfg),
        Suite::Oracle => oracle(cfg),
        Suite::Groebner => groebner_suite(cfg),
        Suite::Expansion => expansion_suite(cfg),
        Suite::Identities => identities(cfg),
        Suite::ManyPoly => many_poly(cfg),
        Suite::Conjecture => conjecture_suite(cfg),
    }
}

pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<SuiteOutcome>> {
    Suite::ALL.into_iter().map(|s| run_suite(s, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass_and_repeat() {
        let cfg = SuiteConfig::new(5, 8);
        let a = run_all(&cfg).unwrap();
        let b = run_all(&cfg).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(x.ok(), "{}", x.transcript());
            assert_eq!(x.transcript(), y.transcript());
        }
    }
}
