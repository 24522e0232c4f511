//! Empirical harness for the common-horizontal-tangent multiplicity drop.
//!
//! For each rational root `c` of `g` the fiber over `c` is enumerated over
//! the rationals. Where it is a single point at which both curves are
//! tangent to the line `y = c`, the factor's multiplicity in `g` should be
//! strictly below its multiplicity in the resultant.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::analysis::{elim_report, ElimReport, X, Y};
use crate::error::{AlgebraError, Result};
use crate::factor::{gcd, multiplicity_of, rational_roots, squarefree_decomposition};
use crate::generate::{Family, InstanceGenerator};
use crate::poly::{int, Polynomial, Rational, UniPoly};
use crate::text::{format_poly, Variables};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntersectionPoint {
    pub x: Rational,
    pub y: Rational,
    pub fiber_multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fiber {
    /// Rational points with their multiplicity in the gcd of the slices,
    /// and whether every root of that gcd is rational.
    Finite { points: Vec<IntersectionPoint>, complete: bool },
    /// Both slices vanish identically.
    Infinite,
}

/// `f(x, c)` as a polynomial in `x`.
pub fn slice(f: &Polynomial, c: &Rational) -> Result<UniPoly> {
    if f.arity() != 2 {
        return Err(AlgebraError::NotBivariate(f.arity()));
    }
    Ok(f.substitute(Y, c)?.to_univariate(X).expect("free of y after substitution"))
}

fn fiber_gcd(f1: &Polynomial, f2: &Polynomial, c: &Rational) -> Result<Option<UniPoly>> {
    let (s1, s2) = (slice(f1, c)?, slice(f2, c)?);
    Ok(match (s1.is_zero(), s2.is_zero()) {
        (true, true) => None,
        (true, false) => Some(s2.monic()),
        (false, true) => Some(s1.monic()),
        (false, false) => Some(gcd(&s1, &s2)),
    })
}

pub fn rational_fiber_points(f1: &Polynomial, f2: &Polynomial, c: &Rational) -> Result<Fiber> {
    let Some(d) = fiber_gcd(f1, f2, c)? else {
        return Ok(Fiber::Infinite);
    };
    let roots = rational_roots(&d);
    let found: usize = roots.iter().map(|(_, m)| *m as usize).sum();
    let complete = Some(found) == d.degree();
    let points = roots
        .into_iter()
        .map(|(x, m)| IntersectionPoint { x, y: c.clone(), fiber_multiplicity: m })
        .collect();
    Ok(Fiber::Finite { points, complete })
}

/// Slice criterion: `x_P` is at least a double root of `f(x, y_P)`, or that
/// slice vanishes identically.
pub fn horizontal_tangent(f: &Polynomial, p: &IntersectionPoint) -> Result<bool> {
    let value = f.eval(&[p.x.clone(), p.y.clone()])?;
    if !value.is_zero() {
        return Err(AlgebraError::PointNotOnCurve { x: p.x.to_string(), y: p.y.to_string() });
    }
    let s = slice(f, &p.y)?;
    if s.is_zero() {
        return Ok(true);
    }
    Ok(multiplicity_of(&UniPoly::linear(&p.x), &s)? >= 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureVerdict {
    pub point: IntersectionPoint,
    pub common_horizontal_tangent: bool,
    /// Some slice through the point vanishes identically, so the tangent
    /// line is a component of that curve.
    pub tangent_is_component: bool,
    pub mu: u32,
    pub nu: u32,
    pub applicable: bool,
    /// Defined only when applicable.
    pub consistent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inconclusive {
    /// Square-free factor of `g` without rational roots.
    IrrationalFactor(UniPoly),
    /// Rational root of `g` whose fiber has points outside the rationals.
    IrrationalFiber(Rational),
    InfiniteFiber(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub verdicts: Vec<ConjectureVerdict>,
    pub inconclusive: Vec<Inconclusive>,
}

pub fn conjecture_verdict(f1: &Polynomial, f2: &Polynomial) -> Result<ConjectureReport> {
    let report = elim_report(f1, f2)?;
    conjecture_from_report(&report)
}

pub fn conjecture_from_report(report: &ElimReport) -> Result<ConjectureReport> {
    if report.resultant.is_zero() {
        return Err(AlgebraError::Domain("conjecture verdicts need a nonzero resultant".into()));
    }
    let (f1, f2) = (&report.f1, &report.f2);
    let mut verdicts = Vec::new();
    let mut inconclusive = Vec::new();
    let parts = if report.g.is_constant() { Vec::new() } else { squarefree_decomposition(&report.g)?.parts };
    let mut roots = BTreeSet::new();
    for (factor, _) in &parts {
        let rs = rational_roots(factor);
        let found = rs.len();
        roots.extend(rs.into_iter().map(|(r, _)| r));
        if Some(found) != factor.degree() {
            // the cofactor of the rational linear factors
            let lin = roots.iter().filter(|r| factor.eval(r).is_zero()).fold(UniPoly::one(), |acc, r| &acc * &UniPoly::linear(r));
            inconclusive.push(Inconclusive::IrrationalFactor(factor.exact_div(&lin).expect("rational roots divide")));
        }
    }
    for c in roots {
        let row = report.row_at(&c).expect("root of g lies on a table row");
        let (mu, nu) = (row.mu, row.nu);
        match rational_fiber_points(f1, f2, &c)? {
            Fiber::Infinite => inconclusive.push(Inconclusive::InfiniteFiber(c)),
            Fiber::Finite { points, complete } => {
                if !complete {
                    inconclusive.push(Inconclusive::IrrationalFiber(c.clone()));
                }
                let applicable = complete && points.len() == 1;
                for point in points {
                    let t1 = horizontal_tangent(f1, &point)?;
                    let t2 = horizontal_tangent(f2, &point)?;
                    let component = slice(f1, &point.y)?.is_zero() || slice(f2, &point.y)?.is_zero();
                    let common = t1 && t2;
                    verdicts.push(ConjectureVerdict {
                        point,
                        common_horizontal_tangent: common,
                        tangent_is_component: common && component,
                        mu,
                        nu,
                        applicable,
                        consistent: applicable.then_some(!common || mu < nu),
                    });
                }
            }
        }
    }
    Ok(ConjectureReport { verdicts, inconclusive })
}

/// An applicable common-tangent point without a multiplicity drop.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Counterexample {
    pub f1: String,
    pub f2: String,
    pub x: String,
    pub y: String,
    pub mu: u32,
    pub nu: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusSummary {
    pub instances: usize,
    pub zero_resultant: usize,
    pub points: usize,
    pub applicable: usize,
    pub common_tangent: usize,
    pub tangent_consistent: usize,
    /// Common-tangent cases where the tangent line is a curve component.
    pub tangent_component: usize,
    pub inconclusive: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CorpusSummary {
    fn absorb(&mut self, f1: &Polynomial, f2: &Polynomial) -> Result<()> {
        self.instances += 1;
        let report = elim_report(f1, f2)?;
        if report.resultant.is_zero() {
            self.zero_resultant += 1;
            return Ok(());
        }
        let r = conjecture_from_report(&report)?;
        self.inconclusive += r.inconclusive.len();
        let vars = Variables::default();
        for v in r.verdicts {
            self.points += 1;
            if !v.applicable {
                continue;
            }
            self.applicable += 1;
            if !v.common_horizontal_tangent {
                continue;
            }
            self.common_tangent += 1;
            if v.tangent_is_component {
                self.tangent_component += 1;
            }
            if v.consistent == Some(true) {
                self.tangent_consistent += 1;
            } else {
                self.counterexamples.push(Counterexample {
                    f1: format_poly(f1, &vars),
                    f2: format_poly(f2, &vars),
                    x: v.point.x.to_string(),
                    y: v.point.y.to_string(),
                    mu: v.mu,
                    nu: v.nu,
                });
            }
        }
        Ok(())
    }
}

/// `f1 = −(y + 1)(x − y − 1)` against the unit circle; the line `y = −1`
/// touches the circle at `(0, −1)`.
pub fn line_circle_example() -> (Polynomial, Polynomial) {
    let x = Polynomial::var(2, X);
    let y = Polynomial::var(2, Y);
    let one = Polynomial::one(2);
    let f1 = -(&(&y + &one) * &(&(&x - &y) - &one));
    let f2 = &(&(&x * &x) + &(&y * &y)) - &one;
    (f1, f2)
}

/// `count` random pairs and `count` curated pairs: the line–circle example,
/// then alternating tangency-family and nodal-product instances.
pub fn corpus_instances(seed: u64, count: usize, degree_bound: u32, coeff_bound: i64) -> Vec<(Polynomial, Polynomial)> {
    let random = InstanceGenerator::new(seed, degree_bound, coeff_bound, Family::Random);
    let tangency = InstanceGenerator::new(seed, degree_bound, coeff_bound, Family::Tangency);
    let mut out: Vec<(Polynomial, Polynomial)> = random.take(count).map(|i| (i.polys[0].clone(), i.polys[1].clone())).collect();
    for k in 0..count as u64 {
        let pair = if k == 0 {
            line_circle_example()
        } else if k % 2 == 1 {
            let i = tangency.instance(k);
            (i.polys[0].clone(), i.polys[1].clone())
        } else {
            nodal_instance(&tangency, k)
        };
        out.push(pair);
    }
    out
}

/// A product of two lines crossing at `(a, c)` against a curve tangent to
/// `y = c` there.
fn nodal_instance(gen: &InstanceGenerator, k: u64) -> (Polynomial, Polynomial) {
    use rand::Rng;
    let mut rng = gen.rng_for(k);
    let small = gen.coeff_bound.min(3);
    let a = Polynomial::constant(2, int(rng.gen_range(-small..=small)));
    let c = Polynomial::constant(2, int(rng.gen_range(-small..=small)));
    let x = Polynomial::var(2, X);
    let y = Polynomial::var(2, Y);
    let dx = &x - &a;
    let dy = &y - &c;
    let mut slope = || {
        let v = rng.gen_range(1..=small.max(1));
        Polynomial::constant(2, int(if rng.gen_bool(0.5) { v } else { -v }))
    };
    let l1 = &dy - &(&slope() * &dx);
    let l2 = &dy - &(&slope() * &dx);
    let f1 = &l1 * &l2;
    let w = &Polynomial::one(2) + &(&slope() * &y);
    let f2 = &(&dy * &slope()) + &(&(&dx * &dx) * &w);
    (f1, f2)
}

pub fn corpus_run(seed: u64, count: usize, degree_bound: u32, coeff_bound: i64) -> Result<CorpusSummary> {
    let mut summary = CorpusSummary::default();
    for (f1, f2) in corpus_instances(seed, count, degree_bound, coeff_bound) {
        summary.absorb(&f1, &f2)?;
    }
    summary.counterexamples.sort();
    Ok(summary)
}
