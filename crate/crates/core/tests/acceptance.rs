//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one pass/fail line; exits nonzero on any failure.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use elimcalc::analysis::{self, elim_report, ElimReport, X};
use elimcalc::conjecture::{self, corpus_run};
use elimcalc::expansion::{self, ExpansionInstance};
use elimcalc::factor::{gcd, squarefree_decomposition, squarefree_part};
use elimcalc::generate::{Family, InstanceGenerator};
use elimcalc::groebner::{self, BuchbergerOptions, PairStrategy};
use elimcalc::resultant;
use elimcalc::text::{format_poly, parse_polynomial, Variables};
use elimcalc::{Polynomial, Rational, TermOrder, UniPoly};

const EXAMPLE_LIMIT: Duration = Duration::from_secs(1);
const DIVISIBILITY_LIMIT: Duration = Duration::from_secs(60);
const GROEBNER_LIMIT: Duration = Duration::from_secs(120);

const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 500;
const CORPUS_DEGREE: u32 = 4;
const COEFF_BOUND: i64 = 9;
const RES_ZERO_COUNT: usize = 100;
const ORACLE_COUNT: usize = 300;
const LAPLACE_MAX_SIZE: usize = 4;
const GROEBNER_COUNT: usize = 200;
const GROEBNER_DEGREE: u32 = 3;
const EXPANSION_COUNT: usize = 200;
const IDENTITY_COUNT: usize = 200;
const CONJECTURE_COUNT: usize = 100;

type Outcome = Result<String, String>;

fn p(s: &str) -> Polynomial {
    parse_polynomial(s, &Variables::default()).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn uy(s: &str) -> UniPoly {
    p(s).to_univariate(1).expect("polynomial in y only")
}

fn show(f: &Polynomial) -> String {
    format_poly(f, &Variables::default())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report(f1: &str, f2: &str) -> Result<ElimReport, String> {
    elim_report(&p(f1), &p(f2)).map_err(|e| e.to_string())
}

fn expect_row(r: &ElimReport, at: i64, factor: &str, mu: u32, nu: u32) -> Result<(), String> {
    let row = r.row_at(&Rational::from_integer(at.into())).ok_or_else(|| format!("no row vanishing at {at}"))?;
    ensure(row.factor == uy(factor) && row.mu == mu && row.nu == nu, || {
        format!("row at {at}: got ({:?}, {}, {}), want ({factor}, {mu}, {nu})", row.factor, row.mu, row.nu)
    })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = report("x^3 + 3*x^2*y + 3*x*y^2 + 4*x*y + y^3", "x - y")?;
    let elapsed = start.elapsed();
    ensure(r.g == uy("y^3 + 1/2*y^2"), || format!("g = {:?}", r.g))?;
    ensure(r.resultant == uy("-8*y^3 - 4*y^2"), || format!("R = {:?}", r.resultant))?;
    ensure(r.resultant == uy("-4*(2*y + 1)*y^2"), || "factored form differs".into())?;
    ensure(elapsed < EXAMPLE_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("g and R exact, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let r = report("(x - y)*(x - 3)", "(y - 1)*(x - 2)")?;
    ensure(r.g == uy("(y - 2)*(y - 1)"), || format!("g = {:?}", r.g))?;
    ensure(r.resultant == uy("(y - 2)*(y - 1)^2"), || format!("R = {:?}", r.resultant))?;
    ensure(r.h2 == uy("y - 1"), || format!("h2 = {:?}", r.h2))?;
    ensure(r.table.len() == 2, || format!("{} rows", r.table.len()))?;
    expect_row(&r, 1, "y - 1", 1, 2)?;
    expect_row(&r, 2, "y - 2", 1, 1)?;
    Ok("g, R, h2 and both rows exact".into())
}

fn criterion_3() -> Outcome {
    let r = report("-(x^2 + y - 2)", "(x - y)*(y - x^2)")?;
    ensure(r.g == uy("(y + 2)*(y - 1)^2"), || format!("g = {:?}", r.g))?;
    ensure(r.resultant == uy("-4*(y + 2)*(y - 1)^3"), || format!("R = {:?}", r.resultant))?;
    ensure(r.table.len() == 2, || format!("{} rows", r.table.len()))?;
    expect_row(&r, -2, "y + 2", 1, 1)?;
    expect_row(&r, 1, "y - 1", 2, 3)?;
    Ok("g, R and both rows exact".into())
}

fn criterion_4() -> Outcome {
    let (f1, f2) = (p("-(y + 1)*(x - y - 1)"), p("x^2 + y^2 - 1"));
    let r = elim_report(&f1, &f2).map_err(|e| e.to_string())?;
    ensure(r.g == uy("y*(y + 1)^2"), || format!("g = {:?}", r.g))?;
    ensure(r.resultant == uy("2*y*(y + 1)^3"), || format!("R = {:?}", r.resultant))?;
    let c = conjecture::conjecture_verdict(&f1, &f2).map_err(|e| e.to_string())?;
    let v = c
        .verdicts
        .iter()
        .find(|v| v.point.x.is_zero() && v.point.y == -Rational::one())
        .ok_or("point (0, -1) not reported")?;
    ensure(v.common_horizontal_tangent, || "no common tangent at (0, -1)".into())?;
    ensure(v.mu == 2 && v.nu == 3, || format!("mu = {}, nu = {}", v.mu, v.nu))?;
    ensure(v.applicable && v.consistent == Some(true), || format!("{v:?}"))?;
    Ok("g, R exact; (0, -1) tangent with mu 2 < nu 3".into())
}

/// Seeded random pairs with nonzero resultant, with their reports.
fn corpus() -> Vec<ElimReport> {
    let gen = InstanceGenerator::new(CORPUS_SEED, CORPUS_DEGREE, COEFF_BOUND, Family::Random);
    let mut out = Vec::with_capacity(CORPUS_SIZE);
    for inst in gen {
        if out.len() == CORPUS_SIZE {
            break;
        }
        let r = elim_report(&inst.polys[0], &inst.polys[1]).expect("report");
        if !r.resultant.is_zero() {
            out.push(r);
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let reports = corpus();
    let mut failures = Vec::new();
    for r in &reports {
        let c1 = analysis::coefficient_gcd(&r.f1).map_err(|e| e.to_string())?;
        let c2 = analysis::coefficient_gcd(&r.f2).map_err(|e| e.to_string())?;
        let res = &r.resultant;
        let checks = [
            ("g", r.g.divides(res)),
            ("gcd(h1,h2)", gcd(&r.h1, &r.h2).divides(res)),
            ("gcd(t1,t2)", gcd(&r.t1, &r.t2).divides(res)),
            ("content f1", c1.divides(res)),
            ("content f2", c2.divides(res)),
        ];
        for (name, ok) in checks {
            if !ok {
                failures.push(format!("{name} does not divide R for [{}] [{}]", show(&r.f1), show(&r.f2)));
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(reports.len() == CORPUS_SIZE, || format!("corpus has {} pairs", reports.len()))?;
    ensure(failures.is_empty(), || failures.join("; "))?;
    ensure(elapsed < DIVISIBILITY_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{} pairs, 0 failures, {elapsed:.2?}", reports.len()))
}

/// Some specialization `y = c` keeps both `x`-degrees and has constant gcd,
/// so the pair has no common factor of positive `x`-degree.
fn coprime_witness(f1: &Polynomial, f2: &Polynomial) -> bool {
    let (h1, h2) = (f1.leading_coeff_wrt(X).unwrap(), f2.leading_coeff_wrt(X).unwrap());
    (0..32i64).any(|c| {
        let v = Rational::from_integer(c.into());
        let pt = [Rational::zero(), v.clone()];
        if h1.eval(&pt).unwrap().is_zero() || h2.eval(&pt).unwrap().is_zero() {
            return false;
        }
        let a = conjecture::slice(f1, &v).unwrap();
        let b = conjecture::slice(f2, &v).unwrap();
        gcd(&a, &b).degree() == Some(0)
    })
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let common = InstanceGenerator::new(CORPUS_SEED, CORPUS_DEGREE, COEFF_BOUND, Family::CommonFactor);
    for inst in common.take(RES_ZERO_COUNT) {
        let res = resultant::resultant(&inst.polys[0], &inst.polys[1], X).map_err(|e| e.to_string())?;
        let elim = groebner::eliminate(&inst.polys, &TermOrder::lex(2), 1).map_err(|e| e.to_string())?;
        if !res.is_zero() || !elim.is_empty() {
            failures.push(format!("common factor #{}: R = 0 {}, I1 = 0 {}", inst.index, res.is_zero(), elim.is_empty()));
        }
    }
    let mut coprime = 0;
    for inst in InstanceGenerator::new(CORPUS_SEED, CORPUS_DEGREE, COEFF_BOUND, Family::Random) {
        if coprime == RES_ZERO_COUNT {
            break;
        }
        if !coprime_witness(&inst.polys[0], &inst.polys[1]) {
            continue;
        }
        coprime += 1;
        let res = resultant::resultant(&inst.polys[0], &inst.polys[1], X).map_err(|e| e.to_string())?;
        let elim = groebner::eliminate(&inst.polys, &TermOrder::lex(2), 1).map_err(|e| e.to_string())?;
        if res.is_zero() || elim.is_empty() {
            failures.push(format!("coprime #{}: R = 0 {}, I1 = 0 {}", inst.index, res.is_zero(), elim.is_empty()));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{RES_ZERO_COUNT} common-factor and {coprime} coprime pairs, 0 failures"))
}

fn criterion_7(reports: &[ElimReport]) -> Outcome {
    let mut failures = Vec::new();
    for r in reports {
        let lhs = squarefree_part(&r.resultant);
        let rhs = squarefree_part(&(&r.g * &gcd(&r.h1, &r.h2)));
        if lhs != rhs {
            failures.push(format!("[{}] [{}]", show(&r.f1), show(&r.f2)));
        }
    }
    ensure(failures.is_empty(), || format!("radical mismatch on {}", failures.join("; ")))?;
    Ok(format!("{} pairs, 0 failures", reports.len()))
}

fn criterion_8(reports: &[ElimReport]) -> Outcome {
    let mut failures = Vec::new();
    let mut applicable = 0;
    for r in reports {
        if !squarefree_decomposition(&r.resultant).map_err(|e| e.to_string())?.is_squarefree() {
            continue;
        }
        applicable += 1;
        let candidate = r.resultant.exact_div(&gcd(&r.h1, &r.h2)).map(|q| q.monic());
        if candidate.as_ref() != Some(&r.g) {
            failures.push(format!("[{}] [{}]", show(&r.f1), show(&r.f2)));
        }
    }
    ensure(applicable > 0, || "no square-free resultants in the corpus".into())?;
    ensure(failures.is_empty(), || format!("candidate differs from g on {}", failures.join("; ")))?;
    Ok(format!("{applicable} square-free instances of {}, 0 failures", reports.len()))
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let mut laplace = 0;
    let gen = InstanceGenerator::new(CORPUS_SEED, CORPUS_DEGREE, COEFF_BOUND, Family::Random);
    for inst in gen.take(ORACLE_COUNT) {
        let (f1, f2) = (&inst.polys[0], &inst.polys[1]);
        let m = resultant::sylvester_matrix(f1, f2, X).map_err(|e| e.to_string())?;
        let bareiss = m.determinant();
        let eval = resultant::resultant_eval_oracle(f1, f2, X).map_err(|e| e.to_string())?;
        if bareiss != eval {
            failures.push(format!("interpolation differs on #{}", inst.index));
        }
        if m.size() <= LAPLACE_MAX_SIZE {
            laplace += 1;
            if resultant::det_laplace(&m.rows, 2) != bareiss {
                failures.push(format!("cofactor expansion differs on #{}", inst.index));
            }
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{ORACLE_COUNT} pairs ({laplace} with cofactor expansion), 0 failures"))
}

fn all_spolys_reduce(basis: &[Polynomial], order: &TermOrder) -> bool {
    (0..basis.len()).all(|i| {
        (i + 1..basis.len()).all(|j| {
            let s = groebner::spolynomial(&basis[i], &basis[j], order).unwrap();
            groebner::normal_form(&s, basis, order).unwrap().is_zero()
        })
    })
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let order = TermOrder::lex(2);
    let normal = BuchbergerOptions::default();
    let degree = BuchbergerOptions { strategy: PairStrategy::Degree, chain_criterion: true };
    let mut failures = Vec::new();
    let gen = InstanceGenerator::new(CORPUS_SEED, GROEBNER_DEGREE, COEFF_BOUND, Family::Random);
    for inst in gen.take(GROEBNER_COUNT) {
        let (a, _) = groebner::buchberger_with(&inst.polys, &order, normal).map_err(|e| e.to_string())?;
        let (b, _) = groebner::buchberger_with(&inst.polys, &order, degree).map_err(|e| e.to_string())?;
        if a != b {
            failures.push(format!("strategies disagree on #{}", inst.index));
        }
        if !all_spolys_reduce(&a.elements, &order) {
            failures.push(format!("S-polynomial does not reduce to 0 on #{}", inst.index));
        }
        if !groebner::is_reduced(&a.elements, &order).map_err(|e| e.to_string())? {
            failures.push(format!("not reduced on #{}", inst.index));
        }
    }
    let elapsed = start.elapsed();
    ensure(failures.is_empty(), || failures.join("; "))?;
    ensure(elapsed < GROEBNER_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{GROEBNER_COUNT} instances (degree <= {GROEBNER_DEGREE}), normal = degree strategy, {elapsed:.2?}"))
}

fn criterion_11() -> Outcome {
    let order = TermOrder::lex(2);
    let mut failures = Vec::new();
    let mut short = 0;
    let gen = InstanceGenerator::new(CORPUS_SEED, GROEBNER_DEGREE, COEFF_BOUND, Family::Random);
    for inst in gen.take(EXPANSION_COUNT) {
        let e = ExpansionInstance::from_generators(inst.polys.clone(), order.clone()).map_err(|e| e.to_string())?;
        let run = expansion::expand_basis_with_stats(&e).map_err(|e| e.to_string())?;
        short += run.stats.short_circuited;
        let mut all = inst.polys.clone();
        all.extend(e.g_next.elements.iter().cloned());
        let direct = groebner::buchberger(&all, &order).map_err(|e| e.to_string())?;
        if run.basis.elements != direct.elements {
            failures.push(format!("differs from direct basis on #{}", inst.index));
        }
        if !e.g_next.elements.iter().all(|g| run.basis.elements.contains(g)) {
            failures.push(format!("elimination basis not contained on #{}", inst.index));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{EXPANSION_COUNT} instances, 0 failures, {short} pairs short-circuited"))
}

#[derive(Default)]
struct Signs {
    plus: usize,
    minus: usize,
}

impl Signs {
    fn add(&mut self, s: Option<i8>) {
        match s {
            Some(1) => self.plus += 1,
            Some(_) => self.minus += 1,
            None => {}
        }
    }
}

fn criterion_12() -> Outcome {
    use elimcalc::analysis::Verdict;
    let mut exceptions = Vec::new();
    let (mut spol, mut shifted, mut steps) = (Signs::default(), Signs::default(), Signs::default());
    let mut cases = 0;
    let gen = InstanceGenerator::new(CORPUS_SEED, CORPUS_DEGREE, COEFF_BOUND, Family::Random);
    for inst in gen {
        if cases == IDENTITY_COUNT {
            break;
        }
        let mut rng = gen_rng(inst.index);
        let (mut f1, mut f2) = (inst.polys[0].clone(), inst.polys[1].clone());
        if f1.degree_in(X) < f2.degree_in(X) {
            std::mem::swap(&mut f1, &mut f2);
        }
        let Some(parts) = analysis::spol_parts(&f1, &f2).map_err(|e| e.to_string())? else {
            continue;
        };
        cases += 1;
        let s = analysis::spol_resultant_identity(&f1, &f2).map_err(|e| e.to_string())?;
        spol.add(s.sign);
        if s.verdict != Verdict::Pass {
            exceptions.push(format!(
                "{{identity: spol, f1: [{}], f2: [{}], lhs: [{}], rhs: [{}]}}",
                show(&f1),
                show(&f2),
                show(&s.lhs),
                show(&s.rhs)
            ));
        }
        // u and u + q·f2 for a random low-degree q
        if !parts.s.is_zero() {
            let q = rng.poly_of_degree(1);
            let v = &parts.s + &(&q * &f2);
            if !v.is_zero() {
                let c = analysis::reduction_resultant_relation(&f2, &parts.s, &v).map_err(|e| e.to_string())?;
                shifted.add(c.sign);
                if c.verdict != Verdict::Pass {
                    exceptions.push(format!("{{identity: shift, f2: [{}], u: [{}], v: [{}]}}", show(&f2), show(&parts.s), show(&v)));
                }
            }
        }
        let b = f2.leading_coeff_wrt(X).unwrap();
        let chain = analysis::reduction_chain(&f2, &parts.s).map_err(|e| e.to_string())?;
        for w in chain.windows(2) {
            if w[1].is_zero() {
                continue;
            }
            let u = &b * &w[0];
            let c = analysis::reduction_resultant_relation(&f2, &u, &w[1]).map_err(|e| e.to_string())?;
            steps.add(c.sign);
            if c.verdict != Verdict::Pass {
                exceptions.push(format!("{{identity: step, f2: [{}], u: [{}], v: [{}]}}", show(&f2), show(&u), show(&w[1])));
            }
        }
    }
    ensure(cases == IDENTITY_COUNT, || format!("only {cases} instances met the precondition"))?;
    ensure(exceptions.is_empty(), || exceptions.join(" "))?;
    Ok(format!(
        "{cases} instances; signs spol +{}/-{}, shifted +{}/-{}, steps +{}/-{}",
        spol.plus, spol.minus, shifted.plus, shifted.minus, steps.plus, steps.minus
    ))
}

struct QuickRng {
    gen: InstanceGenerator,
    rng: rand_chacha::ChaCha8Rng,
}

impl QuickRng {
    fn poly_of_degree(&mut self, deg: u32) -> Polynomial {
        self.gen.poly_of_degree(&mut self.rng, deg)
    }
}

fn gen_rng(index: u64) -> QuickRng {
    let gen = InstanceGenerator::new(CORPUS_SEED ^ 0x5eed, 1, 3, Family::Random);
    let rng = gen.rng_for(index);
    QuickRng { gen, rng }
}

fn criterion_13() -> Outcome {
    let s = corpus_run(CORPUS_SEED, CONJECTURE_COUNT, CORPUS_DEGREE, COEFF_BOUND).map_err(|e| e.to_string())?;
    for c in &s.counterexamples {
        println!("    candidate counterexample: f1 = {}; f2 = {}; point ({}, {}); mu {} nu {}", c.f1, c.f2, c.x, c.y, c.mu, c.nu);
    }
    ensure(s.tangent_consistent + s.counterexamples.len() == s.common_tangent, || {
        format!(
            "{} common-tangent cases but {} consistent and {} surfaced",
            s.common_tangent,
            s.tangent_consistent,
            s.counterexamples.len()
        )
    })?;
    ensure(s.common_tangent > 0, || "corpus produced no common-tangent case".into())?;
    Ok(format!(
        "{} instances, {} applicable common-tangent points, {} candidate counterexamples",
        s.instances,
        s.common_tangent,
        s.counterexamples.len()
    ))
}

fn main() {
    let mut results: Vec<(u8, &str, Outcome)> = vec![
        (1, "cubic against a line", criterion_1()),
        (2, "two line pairs", criterion_2()),
        (3, "parabola against a cubic", criterion_3()),
        (4, "line pair against the unit circle", criterion_4()),
        (5, "divisibility suite", criterion_5()),
        (6, "resultant vanishing suite", criterion_6()),
    ];
    let reports = corpus();
    results.push((7, "radical identity suite", criterion_7(&reports)));
    results.push((8, "square-free resultant formula", criterion_8(&reports)));
    results.push((9, "resultant oracle equivalence", criterion_9()));
    results.push((10, "Groebner determinism and correctness", criterion_10()));
    results.push((11, "expansion equivalence", criterion_11()));
    results.push((12, "S-polynomial resultant identities", criterion_12()));
    results.push((13, "tangency corpus", criterion_13()));

    let mut failed = 0;
    for (id, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
