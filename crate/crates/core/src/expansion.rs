//! Lifting the reduced Gröbner basis of an elimination ideal back to the
//! reduced basis of the full ideal.
//!
//! Given generators `F` of `I` and the reduced basis `G` of `I ∩ K[rest]`,
//! where `rest` are all variables except the most significant one `x`, the
//! procedure is:
//!
//! 1. View each `f ∈ F` as a polynomial in `x` and replace every coefficient
//!    by its normal form modulo `G`.
//! 2. For `f, g` among the reduced generators involving `x`, and for `f`
//!    involving `x` against `g ∈ G`, add `NF(S(f, g))` to the input.
//! 3. Run Buchberger on `G ∪ F ∪ {step-2 remainders}`, skipping pairs
//!    already settled (pairs inside `G`, pairs done in step 2), and
//!    autoreduce.

use crate::error::{AlgebraError, Result};
use crate::groebner::{self, normal_form, spolynomial, BuchbergerOptions, BuchbergerStats, GroebnerBasis};
use crate::poly::{Polynomial, TermOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionInstance {
    pub f_prev: Vec<Polynomial>,
    pub g_next: GroebnerBasis,
    pub order: TermOrder,
}

impl ExpansionInstance {
    /// Builds an instance whose `g_next` is computed with [`groebner::eliminate`].
    pub fn from_generators(f_prev: Vec<Polynomial>, order: TermOrder) -> Result<Self> {
        let elements = groebner::eliminate(&f_prev, &order, 1)?;
        let g_next = GroebnerBasis { order: order.clone(), elements, reduced: true };
        Ok(ExpansionInstance { f_prev, g_next, order })
    }

    pub fn eliminated_var(&self) -> usize {
        self.order.priority()[0]
    }

    fn check(&self) -> Result<()> {
        if self.f_prev.iter().all(Polynomial::is_zero) {
            return Err(AlgebraError::EmptyInput("expand_basis"));
        }
        let x = self.eliminated_var();
        for g in &self.g_next.elements {
            self.order.check(g)?;
            if !g.is_free_of(x) {
                return Err(AlgebraError::Domain(format!("basis element involves eliminated variable {x}")));
            }
        }
        if !groebner::is_reduced(&self.g_next.elements, &self.order)? {
            return Err(AlgebraError::Domain("elimination basis is not reduced".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpansionStats {
    /// Coefficients (in the eliminated variable) changed by reduction modulo `G`.
    pub coefficient_reductions: usize,
    /// Generators that became zero after coefficient reduction.
    pub vanished_generators: usize,
    /// Step-2 S-polynomials among generators involving the eliminated variable.
    pub s_internal: usize,
    /// Step-2 S-polynomials of such generators against `G`.
    pub s_against_g: usize,
    /// Step-2 remainders that were zero.
    pub s_zero: usize,
    /// Pairs a plain Buchberger run on `F ∪ G` would form but this one never
    /// sees: pairs touching a vanished generator, plus pairs skipped as settled.
    pub short_circuited: usize,
    pub engine: BuchbergerStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub basis: GroebnerBasis,
    pub stats: ExpansionStats,
}

fn reduce_coefficients(f: &Polynomial, x: usize, g: &GroebnerBasis, stats: &mut ExpansionStats) -> Result<Polynomial> {
    if g.is_empty() {
        return Ok(f.clone());
    }
    let coeffs = f.coeffs_wrt(x)?;
    let mut out = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        let r = g.reduce(c)?;
        if &r != c {
            stats.coefficient_reductions += 1;
        }
        out.push(r);
    }
    Polynomial::from_coeffs_wrt(f.arity(), x, &out)
}

pub fn expand_basis(inst: &ExpansionInstance) -> Result<GroebnerBasis> {
    Ok(expand_basis_with_stats(inst)?.basis)
}

pub fn expand_basis_with_stats(inst: &ExpansionInstance) -> Result<Expansion> {
    inst.check()?;
    let order = &inst.order;
    let x = inst.eliminated_var();
    let mut stats = ExpansionStats::default();
    let g = &inst.g_next;
    if g.is_unit_ideal() {
        return Ok(Expansion { basis: g.clone(), stats });
    }

    let nonzero: Vec<&Polynomial> = inst.f_prev.iter().filter(|f| !f.is_zero()).collect();
    let mut reduced = Vec::new();
    for f in &nonzero {
        let r = reduce_coefficients(f, x, g, &mut stats)?;
        if r.is_zero() {
            stats.vanished_generators += 1;
        } else {
            reduced.push(r);
        }
    }
    let vanished = stats.vanished_generators;
    let alive = nonzero.len() - vanished + g.len();
    stats.short_circuited += vanished * alive + vanished * vanished.saturating_sub(1) / 2;

    // inputs: G first, then reduced generators, then step-2 remainders
    let mut inputs: Vec<Polynomial> = g.elements.clone();
    let ng = inputs.len();
    inputs.extend(reduced.iter().cloned());
    let big: Vec<usize> = (ng..inputs.len()).filter(|&k| !inputs[k].is_free_of(x)).collect();

    let divisors = inputs.clone();
    let mut settled: Vec<(usize, usize)> = Vec::new();
    let mut remainders = Vec::new();
    for (a, &i) in big.iter().enumerate() {
        let partners = big[a + 1..].iter().copied().chain(0..ng);
        for j in partners {
            if j < ng {
                stats.s_against_g += 1;
            } else {
                stats.s_internal += 1;
            }
            let s = spolynomial(&inputs[i], &inputs[j], order)?;
            let r = normal_form(&s, &divisors, order)?;
            settled.push((i.min(j), i.max(j)));
            if r.is_zero() {
                stats.s_zero += 1;
            } else {
                remainders.push(r);
            }
        }
    }
    inputs.extend(remainders);
    settled.sort_unstable();

    let handled = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        b < ng || settled.binary_search(&(a, b)).is_ok()
    };
    let run = groebner::run_engine(&inputs, order, BuchbergerOptions::default(), false, &handled)?;
    stats.short_circuited += run.stats.handled_skips;
    stats.engine = run.stats;
    Ok(Expansion { basis: run.basis, stats })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionCheck {
    pub pass: bool,
    pub discrepancies: Vec<String>,
}

/// Compares `result` against a direct Buchberger run on `F ∪ G` and checks
/// that `G` is contained in it.
pub fn verify_expansion(inst: &ExpansionInstance, result: &GroebnerBasis) -> ExpansionCheck {
    let mut discrepancies = Vec::new();
    let mut all: Vec<Polynomial> = inst.f_prev.clone();
    all.extend(inst.g_next.elements.iter().cloned());
    match groebner::buchberger(&all, &inst.order) {
        Ok(direct) => {
            if direct.elements != result.elements {
                for p in &direct.elements {
                    if !result.elements.contains(p) {
                        discrepancies.push(format!("missing {p:?}"));
                    }
                }
                for p in &result.elements {
                    if !direct.elements.contains(p) {
                        discrepancies.push(format!("unexpected {p:?}"));
                    }
                }
                if discrepancies.is_empty() {
                    discrepancies.push("element order differs".into());
                }
            }
        }
        Err(e) => discrepancies.push(format!("direct computation failed: {e}")),
    }
    for g in &inst.g_next.elements {
        if !result.elements.contains(g) {
            discrepancies.push(format!("elimination element {g:?} not in result"));
        }
    }
    ExpansionCheck { pass: discrepancies.is_empty(), discrepancies }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{Family, InstanceGenerator};
    use crate::poly::{int, rat};

    fn x() -> Polynomial {
        Polynomial::var(2, 0)
    }
    fn y() -> Polynomial {
        Polynomial::var(2, 1)
    }
    fn c(v: i64) -> Polynomial {
        Polynomial::constant(2, int(v))
    }

    fn cubic_and_line() -> Vec<Polynomial> {
        let f1 = x().pow(3) + c(3) * x() * x() * y() + c(3) * x() * y() * y() + c(4) * x() * y() + y().pow(3);
        vec![f1, x() - y()]
    }

    fn basis(elements: Vec<Polynomial>) -> GroebnerBasis {
        GroebnerBasis { order: TermOrder::lex(2), elements, reduced: true }
    }

    #[test]
    fn cubic_and_line_matches_direct() {
        let g = y().pow(3) + y().pow(2).scale(&rat(1, 2));
        let inst = ExpansionInstance { f_prev: cubic_and_line(), g_next: basis(vec![g.clone()]), order: TermOrder::lex(2) };
        let out = expand_basis(&inst).unwrap();
        assert_eq!(out, groebner::buchberger(&cubic_and_line(), &TermOrder::lex(2)).unwrap());
        assert!(out.elements.contains(&g));
        assert!(verify_expansion(&inst, &out).pass);
    }

    #[test]
    fn already_a_basis() {
        let f = vec![x() - y(), y() * y() - c(2)];
        let inst = ExpansionInstance::from_generators(f.clone(), TermOrder::lex(2)).unwrap();
        let out = expand_basis(&inst).unwrap();
        assert_eq!(out.elements, vec![y() * y() - c(2), x() - y()]);
    }

    #[test]
    fn unit_ideal() {
        let inst = ExpansionInstance { f_prev: vec![x()], g_next: basis(vec![c(1)]), order: TermOrder::lex(2) };
        assert_eq!(expand_basis(&inst).unwrap().elements, vec![c(1)]);
    }

    #[test]
    fn empty_and_invalid() {
        let inst = ExpansionInstance { f_prev: vec![], g_next: basis(vec![]), order: TermOrder::lex(2) };
        assert!(expand_basis(&inst).is_err());
        let inst = ExpansionInstance { f_prev: vec![x()], g_next: basis(vec![x() - y()]), order: TermOrder::lex(2) };
        assert!(expand_basis(&inst).is_err());
    }

    #[test]
    fn corrupted_elimination_basis_fails() {
        let inst = ExpansionInstance { f_prev: cubic_and_line(), g_next: basis(vec![y() - c(5)]), order: TermOrder::lex(2) };
        let out = expand_basis(&inst).unwrap();
        let check = verify_expansion(&inst, &out);
        assert!(!check.pass);
        assert!(!check.discrepancies.is_empty());
    }

    #[test]
    fn random_pairs_match_direct() {
        for inst in InstanceGenerator::new(11, 3, 9, Family::Random).take(30) {
            let e = ExpansionInstance::from_generators(inst.polys.clone(), TermOrder::lex(2)).unwrap();
            let out = expand_basis(&e).unwrap();
            let check = verify_expansion(&e, &out);
            assert!(check.pass, "{:?}: {:?}", inst.polys, check.discrepancies);
        }
    }
}
