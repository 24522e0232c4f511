//! Executable checks relating the elimination ideal of a bivariate pair to
//! the resultant: divisibility by leading/trailing coefficient gcds, the
//! radical-level projection identity, the square-free formula for `g`, the
//! S-polynomial resultant identities and the many-polynomial variants.
//!
//! Throughout, `x` (variable 0) is eliminated and everything univariate
//! lives in `y` (variable 1).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::factor::{gcd, gcd_all, gcd_free_basis, multiplicity_of, squarefree_decomposition, squarefree_part};
use crate::groebner::{self, buchberger};
use crate::poly::{Monomial, Polynomial, Rational, TermOrder, UniPoly};
use crate::resultant::{pairwise_resultants, resultant_uni};

pub const X: usize = 0;
pub const Y: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "n/a",
        }
    }

    pub fn is_fail(self) -> bool {
        self == Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One element of the gcd-free basis of `{g, R}` with its multiplicity `mu`
/// in `g` and `nu` in the resultant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityRow {
    pub factor: UniPoly,
    pub mu: u32,
    pub nu: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElimReport {
    pub f1: Polynomial,
    pub f2: Polynomial,
    /// Monic generator of the elimination ideal, or zero.
    pub g: UniPoly,
    pub resultant: UniPoly,
    pub h1: UniPoly,
    pub h2: UniPoly,
    pub t1: UniPoly,
    pub t2: UniPoly,
    pub table: Vec<MultiplicityRow>,
    pub checks: BTreeMap<String, Verdict>,
}

impl ElimReport {
    pub fn has_failure(&self) -> bool {
        self.checks.values().any(|v| v.is_fail())
    }

    /// Row whose factor vanishes at `c`.
    pub fn row_at(&self, c: &Rational) -> Option<&MultiplicityRow> {
        self.table.iter().find(|r| r.factor.eval(c).is_zero())
    }
}

fn check_pair(f1: &Polynomial, f2: &Polynomial) -> Result<()> {
    for f in [f1, f2] {
        if f.arity() != 2 {
            return Err(AlgebraError::NotBivariate(f.arity()));
        }
    }
    Ok(())
}

fn in_y(p: &Polynomial) -> UniPoly {
    p.to_univariate(Y).expect("coefficient free of x")
}

fn x_degree(f: &Polynomial) -> u32 {
    f.degree_in(X).unwrap_or(0)
}

/// `(h, t)`: leading and trailing coefficients in `x`.
pub fn lead_trail(f: &Polynomial) -> Result<(UniPoly, UniPoly)> {
    Ok((in_y(&f.leading_coeff_wrt(X)?), in_y(&f.trailing_coeff_wrt(X)?)))
}

/// Monic gcd of all coefficients of `f` in `x`.
pub fn coefficient_gcd(f: &Polynomial) -> Result<UniPoly> {
    let cs: Vec<UniPoly> = f.coeffs_wrt(X)?.iter().map(in_y).collect();
    Ok(gcd_all(&cs))
}

/// Monic generator of `⟨F⟩ ∩ K[y]` under lex with `x ≻ y`; zero when the
/// elimination ideal is trivial.
pub fn elimination_generator(polys: &[Polynomial]) -> Result<UniPoly> {
    let nonzero: Vec<Polynomial> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Err(AlgebraError::EmptyInput("elimination_generator"));
    }
    let elim = groebner::eliminate(&nonzero, &TermOrder::lex(2), 1)?;
    Ok(elim.first().map(in_y).unwrap_or_else(UniPoly::zero))
}

/// Gcd-free basis of `{g, R}` with multiplicities. Empty when `R = 0`.
pub fn multiplicity_table(g: &UniPoly, res: &UniPoly) -> Result<Vec<MultiplicityRow>> {
    if res.is_zero() {
        return Ok(Vec::new());
    }
    let inputs: Vec<UniPoly> = [g, res].into_iter().filter(|p| !p.is_zero()).cloned().collect();
    let basis = gcd_free_basis(&inputs)?;
    let mut rows = Vec::new();
    for b in basis.elements {
        let mu = if g.is_zero() { 0 } else { multiplicity_of(&b, g)? };
        let nu = multiplicity_of(&b, res)?;
        rows.push(MultiplicityRow { factor: b, mu, nu });
    }
    Ok(rows)
}

struct Data {
    g: UniPoly,
    res: UniPoly,
    h: (UniPoly, UniPoly),
    t: (UniPoly, UniPoly),
    degrees: (u32, u32),
}

impl Data {
    fn new(f1: &Polynomial, f2: &Polynomial) -> Result<Data> {
        check_pair(f1, f2)?;
        let g = elimination_generator(&[f1.clone(), f2.clone()])?;
        let res = resultant_uni(f1, f2, X)?;
        let (h1, t1) = lead_trail(f1)?;
        let (h2, t2) = lead_trail(f2)?;
        Ok(Data { g, res, h: (h1, h2), t: (t1, t2), degrees: (x_degree(f1), x_degree(f2)) })
    }

    /// Both inputs free of `x`: the resultant is then a convention, not a
    /// determinant, and none of the resultant statements apply.
    fn constant_pair(&self) -> bool {
        self.degrees == (0, 0)
    }

    fn res_zero_iff(&self) -> Verdict {
        Verdict::from_bool(self.res.is_zero() == self.g.is_zero())
    }

    fn radical(&self) -> Verdict {
        if self.res.is_zero() || self.constant_pair() {
            return Verdict::NotApplicable;
        }
        let rhs = &self.g * &gcd(&self.h.0, &self.h.1);
        Verdict::from_bool(!rhs.is_zero() && squarefree_part(&self.res) == squarefree_part(&rhs))
    }

    fn divisibility(&self, f1: &Polynomial, f2: &Polynomial) -> Result<BTreeMap<String, Verdict>> {
        let mut out = BTreeMap::new();
        if self.constant_pair() {
            for k in DIVISIBILITY_CHECKS {
                out.insert(k.to_string(), Verdict::NotApplicable);
            }
            return Ok(out);
        }
        out.insert("g_divides_res".into(), Verdict::from_bool(self.g.divides(&self.res)));
        let zero = self.res.is_zero();
        let mut put = |name: &str, d: UniPoly| {
            let v = if zero { Verdict::NotApplicable } else { Verdict::from_bool(d.divides(&self.res)) };
            out.insert(name.to_string(), v);
        };
        put("gcd_h_divides_res", gcd(&self.h.0, &self.h.1));
        put("gcd_t_divides_res", gcd(&self.t.0, &self.t.1));
        put("content_f1_divides_res", coefficient_gcd(f1)?);
        put("content_f2_divides_res", coefficient_gcd(f2)?);
        Ok(out)
    }

    fn nu_one(&self) -> (Verdict, Option<UniPoly>) {
        if self.res.is_zero() || self.degrees.0 == 0 || self.degrees.1 == 0 {
            return (Verdict::NotApplicable, None);
        }
        let squarefree = squarefree_decomposition(&self.res).map(|d| d.is_squarefree()).unwrap_or(false);
        if !squarefree {
            return (Verdict::NotApplicable, None);
        }
        let d = gcd(&self.h.0, &self.h.1);
        let candidate = self.res.exact_div(&d).map(|q| q.monic());
        match candidate {
            Some(c) => (Verdict::from_bool(c == self.g), Some(c)),
            None => (Verdict::Fail, None),
        }
    }
}

pub const DIVISIBILITY_CHECKS: [&str; 5] = [
    "content_f1_divides_res",
    "content_f2_divides_res",
    "g_divides_res",
    "gcd_h_divides_res",
    "gcd_t_divides_res",
];

/// Full report for a bivariate pair, not both zero.
pub fn elim_report(f1: &Polynomial, f2: &Polynomial) -> Result<ElimReport> {
    let d = Data::new(f1, f2)?;
    let table = if d.constant_pair() { Vec::new() } else { multiplicity_table(&d.g, &d.res)? };
    let mut checks = d.divisibility(f1, f2)?;
    checks.insert("res_zero_iff".into(), d.res_zero_iff());
    checks.insert("radical_identity".into(), d.radical());
    checks.insert("nu_one".into(), d.nu_one().0);
    checks.insert(
        "mu_le_nu".into(),
        if table.is_empty() {
            Verdict::NotApplicable
        } else {
            Verdict::from_bool(table.iter().all(|r| r.mu <= r.nu && r.nu >= 1))
        },
    );
    let (a, b) = if x_degree(f1) >= x_degree(f2) { (f1, f2) } else { (f2, f1) };
    checks.insert("spol_identity".into(), spol_resultant_identity(a, b)?.verdict);
    Ok(ElimReport {
        f1: f1.clone(),
        f2: f2.clone(),
        g: d.g,
        resultant: d.res,
        h1: d.h.0,
        h2: d.h.1,
        t1: d.t.0,
        t2: d.t.1,
        table,
        checks,
    })
}

/// Resultant vanishes exactly when the elimination ideal is zero.
pub fn check_res_zero_iff(f1: &Polynomial, f2: &Polynomial) -> Result<Verdict> {
    Ok(Data::new(f1, f2)?.res_zero_iff())
}

/// `sqf(R) = sqf(g · gcd(h1, h2))`.
pub fn radical_projection_identity(f1: &Polynomial, f2: &Polynomial) -> Result<Verdict> {
    Ok(Data::new(f1, f2)?.radical())
}

pub fn divisibility_suite(f1: &Polynomial, f2: &Polynomial) -> Result<BTreeMap<String, Verdict>> {
    Data::new(f1, f2)?.divisibility(f1, f2)
}

/// For square-free `R`, compares `monic(R / gcd(h1, h2))` with `g`. Not
/// applicable when either input is free of `x`.
pub fn nu_one_formula(f1: &Polynomial, f2: &Polynomial) -> Result<(Verdict, Option<UniPoly>)> {
    Ok(Data::new(f1, f2)?.nu_one())
}

/// Outcome of an identity check that holds up to sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCheck {
    pub verdict: Verdict,
    /// `+1` or `-1` when the two sides agree up to that sign.
    pub sign: Option<i8>,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
}

impl SignedCheck {
    fn not_applicable(arity: usize) -> Self {
        SignedCheck { verdict: Verdict::NotApplicable, sign: None, lhs: Polynomial::zero(arity), rhs: Polynomial::zero(arity) }
    }

    fn compare(lhs: Polynomial, rhs: Polynomial) -> Self {
        let sign = if lhs == rhs {
            Some(1)
        } else if lhs == -&rhs {
            Some(-1)
        } else {
            None
        };
        SignedCheck { verdict: Verdict::from_bool(sign.is_some()), sign, lhs, rhs }
    }
}

/// Pieces of the S-polynomial of a pair with `deg_x f1 >= deg_x f2 >= 1`
/// under lex `x ≻ y`: `S = m1·f1 − m2·f2` with `m1` free of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpolParts {
    pub m1: Polynomial,
    pub m2: Polynomial,
    pub s: Polynomial,
}

pub fn spol_parts(f1: &Polynomial, f2: &Polynomial) -> Result<Option<SpolParts>> {
    check_pair(f1, f2)?;
    if f1.is_zero() || f2.is_zero() {
        return Ok(None);
    }
    let (d1, d2) = (x_degree(f1), x_degree(f2));
    if d2 == 0 || d1 < d2 {
        return Ok(None);
    }
    let order = TermOrder::lex(2);
    let (a, ca) = f1.leading_term(&order)?;
    let (b, cb) = f2.leading_term(&order)?;
    let l = a.lcm(&b);
    let m1 = Polynomial::term(l.div(&a).expect("lcm"), ca.recip());
    let m2 = Polynomial::term(l.div(&b).expect("lcm"), cb.recip());
    let s = &(&m1 * f1) - &(&m2 * f2);
    Ok(Some(SpolParts { m1, m2, s }))
}

/// `b^{d1} · res(f2, S) = b^{deg_x S} · m1^{d2} · res(f2, f1)`, with `b` the
/// leading `x`-coefficient of `f2`. When `deg_x S = d1 − d2` this is the
/// coefficient-power form `b^{d2} res(f2, S) = m1^{d2} res(f2, f1)`.
pub fn spol_resultant_identity(f1: &Polynomial, f2: &Polynomial) -> Result<SignedCheck> {
    let Some(parts) = spol_parts(f1, f2)? else {
        return Ok(SignedCheck::not_applicable(2));
    };
    let (d1, d2) = (x_degree(f1), x_degree(f2));
    let b = f2.leading_coeff_wrt(X)?;
    let res_s = crate::resultant::resultant(f2, &parts.s, X)?;
    let res_f = crate::resultant::resultant(f2, f1, X)?;
    let lhs = &b.pow(d1) * &res_s;
    let rhs = if parts.s.is_zero() {
        // both resultants vanish, the power of b is immaterial
        Polynomial::zero(2)
    } else {
        &(&b.pow(x_degree(&parts.s)) * &parts.m1.pow(d2)) * &res_f
    };
    Ok(SignedCheck::compare(lhs, rhs))
}

/// For `u ≡ v (mod f2)`: `b^{deg_x v} · res(f2, u) = b^{deg_x u} · res(f2, v)`.
pub fn reduction_resultant_relation(f2: &Polynomial, u: &Polynomial, v: &Polynomial) -> Result<SignedCheck> {
    check_pair(f2, u)?;
    check_pair(f2, v)?;
    if f2.is_zero() || u.is_zero() || v.is_zero() || x_degree(f2) == 0 {
        return Ok(SignedCheck::not_applicable(2));
    }
    if (u - v).exact_div(f2).is_none() {
        return Ok(SignedCheck::not_applicable(2));
    }
    let b = f2.leading_coeff_wrt(X)?;
    let lhs = &b.pow(x_degree(v)) * &crate::resultant::resultant(f2, u, X)?;
    let rhs = &b.pow(x_degree(u)) * &crate::resultant::resultant(f2, v, X)?;
    Ok(SignedCheck::compare(lhs, rhs))
}

/// Chain of single reduction steps of `S` by `f2` in `x`, each step
/// `v = lc_x(f2)·u − c·x^k·f2` clearing the leading `x`-power of `u`. The
/// chain starts at `u = S` and stops once `deg_x u < deg_x f2`.
pub fn reduction_chain(f2: &Polynomial, start: &Polynomial) -> Result<Vec<Polynomial>> {
    let d2 = x_degree(f2);
    let b = f2.leading_coeff_wrt(X)?;
    let mut chain = vec![start.clone()];
    let mut u = start.clone();
    while !u.is_zero() && d2 > 0 && x_degree(&u) >= d2 {
        let k = x_degree(&u) - d2;
        let c = u.leading_coeff_wrt(X)?;
        let shift = Polynomial::term(Monomial::var(2, X, k), Rational::one());
        u = &(&b * &u) - &(&(&c * &shift) * f2);
        chain.push(u.clone());
    }
    Ok(chain)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManyPolyReport {
    pub resultants: BTreeMap<(usize, usize), UniPoly>,
    /// Monic gcd of all pairwise resultants.
    pub res_gcd: UniPoly,
    pub g: UniPoly,
    /// All pairwise resultants vanish; divisibility checks are skipped.
    pub degenerate: bool,
    pub checks: BTreeMap<String, Verdict>,
}

pub const MANY_POLY_CHECKS: [&str; 4] =
    ["g_divides_res_gcd", "g_divides_star_gcd", "gcd_h_divides_res_gcd", "radical_g_divides_radical_res"];

pub fn many_poly_suite(polys: &[Polynomial]) -> Result<ManyPolyReport> {
    if polys.len() < 2 {
        return Err(AlgebraError::Domain("many_poly_suite needs at least two polynomials".into()));
    }
    for p in polys {
        if p.arity() != 2 {
            return Err(AlgebraError::NotBivariate(p.arity()));
        }
    }
    let pr = pairwise_resultants(polys, X)?;
    let g = elimination_generator(polys)?;
    let degenerate = pr.gcd.is_zero();
    let mut checks = BTreeMap::new();
    if degenerate {
        for k in MANY_POLY_CHECKS {
            checks.insert(k.to_string(), Verdict::NotApplicable);
        }
    } else {
        let hs: Vec<UniPoly> = polys.iter().map(|p| lead_trail(p).map(|(h, _)| h)).collect::<Result<_>>()?;
        checks.insert("g_divides_res_gcd".into(), Verdict::from_bool(g.divides(&pr.gcd)));
        checks.insert(
            "g_divides_star_gcd".into(),
            if pr.star_gcd.is_zero() { Verdict::NotApplicable } else { Verdict::from_bool(g.divides(&pr.star_gcd)) },
        );
        checks.insert("gcd_h_divides_res_gcd".into(), Verdict::from_bool(gcd_all(&hs).divides(&pr.gcd)));
        checks.insert(
            "radical_g_divides_radical_res".into(),
            Verdict::from_bool(!g.is_zero() && squarefree_part(&g).divides(&squarefree_part(&pr.gcd))),
        );
    }
    Ok(ManyPolyReport { resultants: pr.entries, res_gcd: pr.gcd, g, degenerate, checks })
}

/// Probe for the claim that a pair forming a reduced Gröbner basis has zero
/// resultant. Records both facts without asserting either.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerPairProbe {
    pub pair_is_reduced_basis: bool,
    pub resultant: UniPoly,
}

impl GroebnerPairProbe {
    /// A reduced-basis pair with nonzero resultant.
    pub fn contradicts_claim(&self) -> bool {
        self.pair_is_reduced_basis && !self.resultant.is_zero()
    }
}

pub fn groebner_pair_probe(f1: &Polynomial, f2: &Polynomial) -> Result<GroebnerPairProbe> {
    check_pair(f1, f2)?;
    let resultant = resultant_uni(f1, f2, X)?;
    let order = TermOrder::lex(2);
    let pair_is_reduced_basis = if f1.is_zero() || f2.is_zero() {
        false
    } else {
        let gb = buchberger(&[f1.clone(), f2.clone()], &order)?;
        let mut own = vec![monic(f1, &order)?, monic(f2, &order)?];
        own.sort_by(|a, b| cmp_lead(a, b, &order));
        own.dedup();
        gb.elements == own
    };
    Ok(GroebnerPairProbe { pair_is_reduced_basis, resultant })
}

fn monic(f: &Polynomial, order: &TermOrder) -> Result<Polynomial> {
    let (_, c) = f.leading_term(order)?;
    Ok(f.scale(&c.recip()))
}

fn cmp_lead(a: &Polynomial, b: &Polynomial, order: &TermOrder) -> std::cmp::Ordering {
    let la = a.leading_term(order).map(|t| t.0).ok();
    let lb = b.leading_term(order).map(|t| t.0).ok();
    match (la, lb) {
        (Some(x), Some(y)) => order.cmp(&x, &y),
        (x, y) => x.is_some().cmp(&y.is_some()),
    }
}
