//! S-polynomials, multivariate division and Buchberger's algorithm under
//! lexicographic orders, plus elimination-ideal extraction.
//!
//! Public entry points take and return ordinary [`Polynomial`]s in the
//! caller's variables. Internally every polynomial is renamed so that the
//! requested order becomes plain lex, and the Buchberger engine works on
//! primitive integer polynomials stored as descending term vectors.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::poly::{Monomial, Polynomial, Rational, TermOrder};

/// Pair-selection strategy for Buchberger's algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairStrategy {
    /// Smallest lcm under the term order first.
    #[default]
    Normal,
    /// Smallest total degree of the lcm first, ties by the lcm under the term order.
    Degree,
    /// Pairs in creation order.
    Fifo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuchbergerOptions {
    pub strategy: PairStrategy,
    /// Apply the chain criterion (Gebauer–Möller pair update) on top of the
    /// coprime-leading-monomial criterion.
    pub chain_criterion: bool,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions { strategy: PairStrategy::Normal, chain_criterion: true }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuchbergerStats {
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub coprime_skips: usize,
    pub chain_skips: usize,
    /// Pairs skipped because the caller declared them already handled.
    pub handled_skips: usize,
}

/// A Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: TermOrder,
    /// Sorted by leading monomial, ascending. Monic when `reduced`.
    pub elements: Vec<Polynomial>,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Normal form of `f` modulo this basis.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, &self.elements, &self.order)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }
}

/// `lcm(lt f, lt g)/lt f · f − lcm(lt f, lt g)/lt g · g`, with leading terms
/// taken including their coefficients.
pub fn spolynomial(f: &Polynomial, g: &Polynomial, order: &TermOrder) -> Result<Polynomial> {
    let (mf, cf) = f.leading_term(order)?;
    order.check(g)?;
    let (mg, cg) = g.leading_term(order)?;
    let l = mf.lcm(&mg);
    let left = f.mul_term(&l.div(&mf).expect("lcm divisible"), &cf.recip());
    let right = g.mul_term(&l.div(&mg).expect("lcm divisible"), &cg.recip());
    Ok(left - right)
}

/// Full multivariate division remainder of `f` by `divisors`.
///
/// At each step the divisor is the first member, after sorting by leading
/// monomial ascending, whose leading monomial divides the current term.
/// Zero divisors are rejected.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial], order: &TermOrder) -> Result<Polynomial> {
    order.check(f)?;
    let mut lead: Vec<(Monomial, Rational, Polynomial)> = Vec::with_capacity(divisors.len());
    for d in divisors {
        order.check(d)?;
        if d.is_zero() {
            return Err(AlgebraError::ZeroPolynomial("normal_form divisor"));
        }
        let di = order.to_internal(d);
        let (m, c) = di.lex_leading().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero");
        lead.push((m, c, di));
    }
    lead.sort_by(|a, b| a.0.cmp(&b.0));

    let mut rest = order.to_internal(f);
    let mut rem = Polynomial::zero(f.arity());
    while let Some((m, c)) = rest.lex_leading().map(|(m, c)| (m.clone(), c.clone())) {
        match lead.iter().find(|(dm, _, _)| dm.divides(&m)) {
            Some((dm, dc, d)) => {
                let shift = m.div(dm).expect("divides");
                rest = rest - d.mul_term(&shift, &(c / dc));
            }
            None => {
                rem.add_term(m.clone(), c.clone());
                rest.add_term(m, -c);
            }
        }
    }
    Ok(order.to_external(&rem))
}

/// Reduced Gröbner basis with default options.
pub fn buchberger(polys: &[Polynomial], order: &TermOrder) -> Result<GroebnerBasis> {
    Ok(buchberger_with(polys, order, BuchbergerOptions::default())?.0)
}

pub fn buchberger_with(
    polys: &[Polynomial],
    order: &TermOrder,
    opts: BuchbergerOptions,
) -> Result<(GroebnerBasis, BuchbergerStats)> {
    let run = run_engine(polys, order, opts, false, &|_, _| false)?;
    Ok((run.basis, run.stats))
}

/// Reduced Gröbner basis plus, for every element, cofactors `c_k` with
/// `element = Σ c_k · polys[k]`.
pub fn buchberger_with_cofactors(
    polys: &[Polynomial],
    order: &TermOrder,
) -> Result<(GroebnerBasis, Vec<Vec<Polynomial>>)> {
    let run = run_engine(polys, order, BuchbergerOptions::default(), true, &|_, _| false)?;
    let cof = run.cofactors.expect("tracking enabled");
    Ok((run.basis, cof))
}

/// Members of the reduced Gröbner basis free of the first `drop` variables in
/// the order's priority. For a bivariate pair with `drop = 1` this is either
/// empty (zero elimination ideal) or the single monic generator.
pub fn eliminate(polys: &[Polynomial], order: &TermOrder, drop: usize) -> Result<Vec<Polynomial>> {
    if drop >= order.arity() {
        return Err(AlgebraError::Domain(format!(
            "cannot eliminate {drop} variables from a ring of arity {}",
            order.arity()
        )));
    }
    let gb = buchberger(polys, order)?;
    let gone = order.leading_vars(drop).to_vec();
    Ok(gb.elements.into_iter().filter(|g| gone.iter().all(|&v| g.is_free_of(v))).collect())
}

/// Independent check: every pairwise S-polynomial has normal form zero.
pub fn is_groebner_basis(elements: &[Polynomial], order: &TermOrder) -> Result<bool> {
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            let s = spolynomial(&elements[i], &elements[j], order)?;
            if !normal_form(&s, elements, order)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks the reduced-basis shape: monic, sorted ascending, no term of any
/// element divisible by another element's leading monomial.
pub fn is_reduced(elements: &[Polynomial], order: &TermOrder) -> Result<bool> {
    let mut leads = Vec::with_capacity(elements.len());
    for g in elements {
        let (m, c) = g.leading_term(order)?;
        if !c.is_one() {
            return Ok(false);
        }
        leads.push(m);
    }
    if leads.windows(2).any(|w| order.cmp(&w[0], &w[1]) != Ordering::Less) {
        return Ok(false);
    }
    for (i, g) in elements.iter().enumerate() {
        for (j, lm) in leads.iter().enumerate() {
            if i != j && g.terms().any(|(m, _)| lm.divides(m)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// engine

type Term = (Monomial, BigInt);

/// Primitive integer polynomial, terms in descending lex order, positive
/// leading coefficient.
#[derive(Clone, Debug)]
struct IntPoly {
    terms: Vec<Term>,
}

impl IntPoly {
    /// Returns the primitive form and the rational factor removed.
    fn from_poly(p: &Polynomial) -> (IntPoly, Rational) {
        let (k, prim) = p.primitive_part();
        let terms = prim.terms().rev().map(|(m, c)| (m.clone(), c.numer().clone())).collect();
        (IntPoly { terms }, k)
    }

    fn to_poly(&self, arity: usize) -> Polynomial {
        Polynomial::from_terms(
            arity,
            self.terms.iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()))),
        )
        .expect("arity preserved")
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn content(terms: &[Term]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in terms {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// `alpha·p − beta·shift·g` for descending term lists.
fn combine(p: &[Term], alpha: &BigInt, beta: &BigInt, shift: &Monomial, g: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut a = p.iter().peekable();
    let mut b = g.iter().map(|(m, c)| (m.mul(shift), c)).peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some((ma, _)), Some((mb, _))) => ma.cmp(mb),
        };
        match ord {
            Ordering::Greater => {
                let (m, c) = a.next().unwrap();
                out.push((m.clone(), alpha * c));
            }
            Ordering::Less => {
                let (m, c) = b.next().unwrap();
                out.push((m, -(beta * c)));
            }
            Ordering::Equal => {
                let (m, ca) = a.next().unwrap();
                let (_, cb) = b.next().unwrap();
                let c = alpha * ca - beta * cb;
                if !c.is_zero() {
                    out.push((m.clone(), c));
                }
            }
        }
    }
    out
}

struct Elem {
    poly: IntPoly,
    /// `poly = Σ cof[k]·input[k]` (inputs in internal variables), when tracked.
    cof: Option<Vec<Polynomial>>,
    origin: Option<usize>,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
    serial: usize,
}

pub(crate) struct EngineRun {
    pub basis: GroebnerBasis,
    pub stats: BuchbergerStats,
    pub cofactors: Option<Vec<Vec<Polynomial>>>,
}

struct Engine<'a> {
    arity: usize,
    elems: Vec<Elem>,
    /// Indices into `elems`, sorted by leading monomial ascending.
    sorted: Vec<usize>,
    pairs: Vec<Pair>,
    serial: usize,
    opts: BuchbergerOptions,
    stats: BuchbergerStats,
    handled: &'a dyn Fn(usize, usize) -> bool,
    inputs: usize,
}

impl<'a> Engine<'a> {
    fn scale_cof(cof: &mut Option<Vec<Polynomial>>, k: &Rational) {
        if let Some(c) = cof {
            for p in c.iter_mut() {
                *p = p.scale(k);
            }
        }
    }

    /// `alpha·x − beta·shift·y` on cofactor vectors.
    fn combine_cof(
        x: &Option<Vec<Polynomial>>,
        alpha: &BigInt,
        beta: &BigInt,
        shift: &Monomial,
        y: &Option<Vec<Polynomial>>,
    ) -> Option<Vec<Polynomial>> {
        match (x, y) {
            (Some(x), Some(y)) => Some(
                x.iter()
                    .zip(y)
                    .map(|(a, b)| {
                        a.scale(&Rational::from_integer(alpha.clone()))
                            - b.mul_term(shift, &Rational::from_integer(beta.clone()))
                    })
                    .collect(),
            ),
            _ => None,
        }
    }

    fn find_divisor(&self, m: &Monomial, among: &[usize]) -> Option<usize> {
        among.iter().copied().find(|&k| self.elems[k].poly.lm().divides(m))
    }

    /// Full reduction of `p` by the elements listed in `among`; the result is
    /// primitive with positive leading coefficient.
    fn reduce(
        &self,
        p: Vec<Term>,
        mut cof: Option<Vec<Polynomial>>,
        among: &[usize],
    ) -> (IntPoly, Option<Vec<Polynomial>>) {
        let mut todo = p;
        let mut start = 0;
        let mut rem: Vec<Term> = Vec::new();
        let mut steps = 0usize;
        while start < todo.len() {
            let (m, c) = &todo[start];
            match self.find_divisor(m, among) {
                None => {
                    rem.push(todo[start].clone());
                    start += 1;
                }
                Some(k) => {
                    let g = &self.elems[k];
                    let gc = g.poly.lc();
                    let gg = c.gcd(gc);
                    let alpha = gc / &gg;
                    let beta = c / &gg;
                    let shift = m.div(g.poly.lm()).expect("divides");
                    todo = combine(&todo[start..], &alpha, &beta, &shift, &g.poly.terms);
                    start = 0;
                    if !alpha.is_one() {
                        for t in rem.iter_mut() {
                            t.1 *= &alpha;
                        }
                    }
                    cof = Self::combine_cof(&cof, &alpha, &beta, &shift, &g.cof);
                    steps += 1;
                    if steps.is_multiple_of(8) {
                        let k = content(&rem).gcd(&content(&todo));
                        if !k.is_zero() && !k.is_one() {
                            for t in rem.iter_mut().chain(todo.iter_mut()) {
                                t.1 /= &k;
                            }
                            Self::scale_cof(&mut cof, &Rational::new(BigInt::one(), k));
                        }
                    }
                }
            }
        }
        let mut k = content(&rem);
        if rem.first().is_some_and(|t| t.1.is_negative()) {
            k = -k;
        }
        if !k.is_zero() && !k.is_one() {
            for t in rem.iter_mut() {
                t.1 /= &k;
            }
            Self::scale_cof(&mut cof, &Rational::new(BigInt::one(), k));
        }
        (IntPoly { terms: rem }, cof)
    }

    /// Adds an element, updates the pair set and drops active elements made
    /// redundant by the new leading monomial.
    fn insert(&mut self, elem: Elem) -> usize {
        let idx = self.elems.len();
        self.elems.push(elem);
        let h = self.elems[idx].poly.lm().clone();
        let cands: Vec<(usize, Monomial, bool)> = self
            .sorted
            .iter()
            .map(|&k| {
                let lm = self.elems[k].poly.lm();
                (k, lm.lcm(&h), lm.is_coprime(&h))
            })
            .collect();
        self.stats.pairs_created += cands.len();
        let mut fresh: Vec<usize> = Vec::new();
        if self.opts.chain_criterion {
            let mut kept: Vec<usize> = Vec::new();
            for a in 0..cands.len() {
                let l = &cands[a].1;
                let dominated = cands[a + 1..].iter().any(|c| c.1.divides(l))
                    || kept.iter().any(|&b| cands[b].1.divides(l));
                if cands[a].2 || !dominated {
                    kept.push(a);
                } else {
                    self.stats.chain_skips += 1;
                }
            }
            for a in kept {
                if cands[a].2 {
                    self.stats.coprime_skips += 1;
                } else {
                    fresh.push(a);
                }
            }
            let before = self.pairs.len();
            let elems = &self.elems;
            self.pairs.retain(|p| {
                !(h.divides(&p.lcm)
                    && elems[p.i].poly.lm().lcm(&h) != p.lcm
                    && elems[p.j].poly.lm().lcm(&h) != p.lcm)
            });
            self.stats.chain_skips += before - self.pairs.len();
        } else {
            fresh.extend(0..cands.len());
        }
        for a in fresh {
            let (k, lcm, _) = cands[a].clone();
            self.pairs.push(Pair { i: k, j: idx, degree: lcm.total_degree(), lcm, serial: self.serial });
            self.serial += 1;
        }
        let elems = &self.elems;
        self.sorted.retain(|&k| !h.divides(elems[k].poly.lm()));
        let pos = self.sorted.partition_point(|&k| self.elems[k].poly.lm() < &h);
        self.sorted.insert(pos, idx);
        idx
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let best = match self.opts.strategy {
            PairStrategy::Fifo => (0..self.pairs.len()).min_by_key(|&k| self.pairs[k].serial),
            PairStrategy::Normal => (0..self.pairs.len()).min_by(|&a, &b| {
                let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
                pa.lcm.cmp(&pb.lcm).then_with(|| pa.serial.cmp(&pb.serial))
            }),
            PairStrategy::Degree => (0..self.pairs.len()).min_by(|&a, &b| {
                let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
                pa.degree
                    .cmp(&pb.degree)
                    .then_with(|| pa.lcm.cmp(&pb.lcm))
                    .then_with(|| pa.serial.cmp(&pb.serial))
            }),
        }?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, pair: &Pair) -> (Vec<Term>, Option<Vec<Polynomial>>) {
        let (f, g) = (&self.elems[pair.i], &self.elems[pair.j]);
        let (cf, cg) = (f.poly.lc(), g.poly.lc());
        let gg = cf.gcd(cg);
        let alpha = cg / &gg;
        let beta = cf / &gg;
        let sf = pair.lcm.div(f.poly.lm()).expect("lcm");
        let sg = pair.lcm.div(g.poly.lm()).expect("lcm");
        let shifted: Vec<Term> = f.poly.terms.iter().map(|(m, c)| (m.mul(&sf), c.clone())).collect();
        let s = combine(&shifted, &alpha, &beta, &sg, &g.poly.terms);
        let cof = f.cof.as_ref().map(|c| c.iter().map(|p| p.mul_term(&sf, &Rational::one())).collect());
        let cof = Self::combine_cof(&cof, &alpha, &beta, &sg, &g.cof);
        (s, cof)
    }

    /// Runs the pair loop. Returns `true` if a nonzero constant was found.
    fn run(&mut self) -> bool {
        if self.elems.iter().any(|e| e.poly.lm().is_one()) {
            return true;
        }
        while let Some(pair) = self.pop_pair() {
            let (oi, oj) = (self.elems[pair.i].origin, self.elems[pair.j].origin);
            if let (Some(a), Some(b)) = (oi, oj) {
                if (self.handled)(a, b) {
                    self.stats.handled_skips += 1;
                    continue;
                }
            }
            if self.elems[pair.i].poly.lm().is_coprime(self.elems[pair.j].poly.lm()) {
                self.stats.coprime_skips += 1;
                continue;
            }
            let (s, cof) = self.spoly(&pair);
            self.stats.pairs_reduced += 1;
            if s.is_empty() {
                self.stats.zero_reductions += 1;
                continue;
            }
            let among = self.sorted.clone();
            let (h, cof) = self.reduce(s, cof, &among);
            if h.is_zero() {
                self.stats.zero_reductions += 1;
                continue;
            }
            let unit = h.lm().is_one();
            let idx = self.insert(Elem { poly: h, cof, origin: None });
            if unit {
                // keep only the constant so the final pass yields {1}
                self.sorted = vec![idx];
                return true;
            }
        }
        false
    }

    /// Minimal, inter-reduced, monic basis in original variables.
    fn finish(mut self, order: &TermOrder, unit: bool) -> EngineRun {
        let keep: Vec<usize> = if unit {
            let k = self.sorted.iter().copied().find(|&k| self.elems[k].poly.lm().is_one());
            vec![k.expect("constant element present")]
        } else {
            // ascending lex is compatible with divisibility, so one pass suffices
            let mut keep: Vec<usize> = Vec::new();
            for &k in &self.sorted {
                let lm = self.elems[k].poly.lm();
                if !keep.iter().any(|&j| self.elems[j].poly.lm().divides(lm)) {
                    keep.push(k);
                }
            }
            keep
        };

        let reduced: Vec<(IntPoly, Option<Vec<Polynomial>>)> = keep
            .iter()
            .map(|&k| {
                // the leading monomial is irreducible by the other kept
                // elements, so a full reduction only rewrites the tail
                let others: Vec<usize> = keep.iter().copied().filter(|&j| j != k).collect();
                let e = &self.elems[k];
                self.reduce(e.poly.terms.clone(), e.cof.clone(), &others)
            })
            .collect();
        let mut out: Vec<(Polynomial, Option<Vec<Polynomial>>)> = reduced
            .into_iter()
            .map(|(p, cof)| {
                let lc = Rational::from_integer(p.lc().clone());
                let inv = lc.recip();
                let poly = order.to_external(&p.to_poly(self.arity).scale(&inv));
                let cof = cof.map(|c| c.iter().map(|q| order.to_external(&q.scale(&inv))).collect());
                (poly, cof)
            })
            .collect();
        out.sort_by(|a, b| {
            let la = a.0.leading_term(order).expect("nonzero").0;
            let lb = b.0.leading_term(order).expect("nonzero").0;
            order.cmp(&la, &lb)
        });
        let cofactors = if out.iter().all(|(_, c)| c.is_some()) && self.inputs > 0 {
            Some(out.iter_mut().map(|(_, c)| c.take().unwrap()).collect::<Vec<_>>())
        } else {
            None
        };
        self.pairs.clear();
        EngineRun {
            basis: GroebnerBasis {
                order: order.clone(),
                elements: out.into_iter().map(|(p, _)| p).collect(),
                reduced: true,
            },
            stats: self.stats,
            cofactors,
        }
    }
}

/// Core driver shared by `buchberger*` and the expansion algorithm.
///
/// `handled(a, b)` marks pairs of input positions whose S-polynomials are
/// known to have standard representations and can be skipped.
pub(crate) fn run_engine(
    polys: &[Polynomial],
    order: &TermOrder,
    opts: BuchbergerOptions,
    track: bool,
    handled: &dyn Fn(usize, usize) -> bool,
) -> Result<EngineRun> {
    for p in polys {
        order.check(p)?;
    }
    if polys.iter().all(Polynomial::is_zero) {
        return Err(AlgebraError::EmptyInput("buchberger"));
    }
    let arity = order.arity();
    let mut engine = Engine {
        arity,
        elems: Vec::new(),
        sorted: Vec::new(),
        pairs: Vec::new(),
        serial: 0,
        opts,
        stats: BuchbergerStats::default(),
        handled,
        inputs: polys.len(),
    };
    for (k, p) in polys.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let (ip, factor) = IntPoly::from_poly(&order.to_internal(p));
        let cof = track.then(|| {
            let mut c = vec![Polynomial::zero(arity); polys.len()];
            c[k] = Polynomial::constant(arity, factor.recip());
            c
        });
        engine.insert(Elem { poly: ip, cof, origin: Some(k) });
    }
    let unit = engine.run();
    Ok(engine.finish(order, unit))
}
