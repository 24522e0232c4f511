//! Exact rational roots of univariate polynomials.
//!
//! Real roots of the square-free part are isolated with a Sturm sequence
//! and each isolating interval is bisected until it is narrower than
//! `1/a_n^2`. Two distinct fractions with denominators at most `|a_n|` are
//! at least that far apart, so the simplest fraction in the final interval
//! is the only possible rational root there.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Rational, UniPoly};

use super::squarefree_decomposition;

/// Rational roots with multiplicities, ascending. The zero polynomial has no
/// finite root list and yields an empty vector.
pub fn rational_roots(p: &UniPoly) -> Vec<(Rational, u32)> {
    let Ok(dec) = squarefree_decomposition(p) else {
        return Vec::new();
    };
    let mut out: Vec<(Rational, u32)> = dec
        .parts
        .iter()
        .flat_map(|(f, m)| rational_roots_squarefree(f).into_iter().map(move |r| (r, *m)))
        .collect();
    out.sort();
    out
}

/// Rational roots of a square-free polynomial, ascending.
pub fn rational_roots_squarefree(p: &UniPoly) -> Vec<Rational> {
    let mut roots = Vec::new();
    let Some(mut p) = integer_form(p) else {
        return roots;
    };
    if p.coeff(0).is_zero() {
        roots.push(Rational::zero());
        p = p.exact_div(&UniPoly::identity()).expect("t divides");
    }
    if p.is_constant() {
        return roots;
    }
    let lead = p.leading_coeff().expect("nonconstant").numer().abs();
    let sturm = sturm_chain(&p);
    let bound = cauchy_bound(&p);
    let tol = Rational::new(BigInt::one(), &lead * &lead);

    let mut stack = vec![(-bound.clone(), bound.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let n = variations(&sturm, &lo) - variations(&sturm, &hi);
        if n == 0 {
            continue;
        }
        if p.eval(&hi).is_zero() {
            roots.push(hi.clone());
            if n > 1 {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
            continue;
        }
        if n == 1 {
            if let Some(r) = refine(&p, &sturm, lo, hi, &lead, &tol) {
                roots.push(r);
            }
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Primitive integer associate with positive leading coefficient.
fn integer_form(p: &UniPoly) -> Option<UniPoly> {
    p.leading_coeff()?;
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for c in p.coeffs() {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    let mut k = Rational::new(den, num);
    if p.leading_coeff().expect("nonzero").is_negative() {
        k = -k;
    }
    Some(p.scale(&k))
}

fn cauchy_bound(p: &UniPoly) -> Rational {
    let lc = p.leading_coeff().expect("nonzero").abs();
    let n = p.degree().expect("nonzero");
    let max = p.coeffs()[..n].iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero);
    Rational::one() + max / lc
}

fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let k = chain.len();
        let r = chain[k - 2].rem(&chain[k - 1]).expect("nonzero");
        if r.is_zero() {
            break;
        }
        // positive rescaling keeps sign patterns
        let lc = r.leading_coeff().expect("nonzero").abs();
        chain.push((-r).scale(&lc.recip()));
    }
    chain
}

fn variations(chain: &[UniPoly], t: &Rational) -> i64 {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for q in chain {
        let v = q.eval(t);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Narrows an interval `(lo, hi]` holding exactly one simple root, with
/// `p(hi) != 0`, and returns the root if it is rational.
fn refine(p: &UniPoly, sturm: &[UniPoly], mut lo: Rational, mut hi: Rational, lead: &BigInt, tol: &Rational) -> Option<Rational> {
    let two = Rational::from_integer(2.into());
    // move lo off a neighbouring root so sign bisection is valid
    while p.eval(&lo).is_zero() {
        let mid = (&lo + &hi) / &two;
        if p.eval(&mid).is_zero() {
            return Some(mid);
        }
        if variations(sturm, &mid) - variations(sturm, &hi) == 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut lo_pos = p.eval(&lo).is_positive();
    let mut step = 0u32;
    while &hi - &lo >= *tol {
        if step.is_multiple_of(4) {
            let cand = simplest_between(&lo, &hi);
            if cand.denom() <= lead && p.eval(&cand).is_zero() {
                return Some(cand);
            }
        }
        step += 1;
        let mid = (&lo + &hi) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            return Some(mid);
        }
        if v.is_positive() == lo_pos {
            lo = mid;
            lo_pos = v.is_positive();
        } else {
            hi = mid;
        }
    }
    let cand = simplest_between(&lo, &hi);
    (cand.denom() <= lead && p.eval(&cand).is_zero()).then_some(cand)
}

/// Fraction with the smallest denominator strictly between `lo < hi`.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    let next = &fl + Rational::one();
    if next < *hi {
        // an integer lies inside; pick the one closest to zero
        if lo.is_negative() && hi.is_positive() {
            return Rational::zero();
        }
        if hi.is_positive() {
            return next;
        }
        return hi.ceil() - Rational::one();
    }
    // fl <= lo < hi <= fl + 1
    let a = lo - &fl;
    let b = hi - &fl;
    let inner = if a.is_zero() {
        (b.recip()).floor() + Rational::one()
    } else {
        simplest_between(&b.recip(), &a.recip())
    };
    fl + inner.recip()
}
