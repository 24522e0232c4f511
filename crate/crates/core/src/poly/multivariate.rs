use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};

use super::{Monomial, Rational, TermOrder, UniPoly};

/// Sparse polynomial in `arity` variables over the rationals.
///
/// Terms are kept in a map keyed by monomial with no zero coefficients, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        Self::term(Monomial::one(arity), c)
    }

    pub fn var(arity: usize, var: usize) -> Self {
        Self::term(Monomial::var(arity, var, 1), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.arity());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from possibly repeated terms; repeated monomials are summed.
    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(arity);
        for (m, c) in terms {
            if m.arity() != arity {
                return Err(AlgebraError::ArityMismatch { left: arity, right: m.arity() });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Integer-coefficient convenience constructor, exponents first.
    pub fn from_int_terms(arity: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            arity,
            terms.iter().map(|(e, c)| {
                (Monomial::from_exponents(e.iter().copied()), Rational::from_integer((*c).into()))
            }),
        )
        .expect("exponent vectors must match arity")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Constant coefficient value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    /// Terms in ascending storage (plain lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree in `var`; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.degree(var)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn is_free_of(&self, var: usize) -> bool {
        self.terms.keys().all(|m| m.degree(var) == 0)
    }

    /// Variables that occur with positive degree.
    pub fn support(&self) -> Vec<usize> {
        (0..self.arity).filter(|&v| !self.is_free_of(v)).collect()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Polynomial) -> Result<()> {
        if self.arity != other.arity {
            return Err(AlgebraError::ArityMismatch { left: self.arity, right: other.arity });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = Polynomial::zero(self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.arity);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn differentiate(&self, var: usize) -> Result<Polynomial> {
        self.check_var(var)?;
        let mut out = Polynomial::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.degree(var);
            if e > 0 {
                out.add_term(m.with_degree(var, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    fn check_var(&self, var: usize) -> Result<()> {
        if var >= self.arity {
            return Err(AlgebraError::VariableOutOfRange { var, arity: self.arity });
        }
        Ok(())
    }

    /// Coefficients with respect to `var`: entry `j` is the coefficient of
    /// `var^j`, a polynomial of the same arity that does not involve `var`.
    ///
    /// The zero polynomial yields an empty vector; otherwise the last entry
    /// is nonzero.
    pub fn coeffs_wrt(&self, var: usize) -> Result<Vec<Polynomial>> {
        self.check_var(var)?;
        let Some(deg) = self.degree_in(var) else {
            return Ok(Vec::new());
        };
        let mut out = vec![Polynomial::zero(self.arity); deg as usize + 1];
        for (m, c) in &self.terms {
            let e = m.degree(var) as usize;
            out[e].terms.insert(m.with_degree(var, 0), c.clone());
        }
        Ok(out)
    }

    /// Inverse of [`coeffs_wrt`](Self::coeffs_wrt).
    pub fn from_coeffs_wrt(arity: usize, var: usize, coeffs: &[Polynomial]) -> Result<Polynomial> {
        let mut out = Polynomial::zero(arity);
        for (j, c) in coeffs.iter().enumerate() {
            if c.arity != arity {
                return Err(AlgebraError::ArityMismatch { left: arity, right: c.arity });
            }
            let shift = Monomial::var(arity, var, j as u32);
            for (m, a) in &c.terms {
                out.add_term(m.mul(&shift), a.clone());
            }
        }
        Ok(out)
    }

    /// Leading coefficient with respect to `var` (`h` in `f = h·var^N + …`).
    pub fn leading_coeff_wrt(&self, var: usize) -> Result<Polynomial> {
        Ok(self.coeffs_wrt(var)?.pop().unwrap_or_else(|| Polynomial::zero(self.arity)))
    }

    /// Coefficient of `var^0`.
    pub fn trailing_coeff_wrt(&self, var: usize) -> Result<Polynomial> {
        Ok(self.coeffs_wrt(var)?.into_iter().next().unwrap_or_else(|| Polynomial::zero(self.arity)))
    }

    pub fn leading_term(&self, order: &TermOrder) -> Result<(Monomial, Rational)> {
        order.check(self)?;
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(AlgebraError::ZeroPolynomial("leading_term"))
    }

    /// Leading term in storage order (plain lex).
    pub(crate) fn lex_leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Substitutes `var = value`; the result keeps the arity and is free of `var`.
    pub fn substitute(&self, var: usize, value: &Rational) -> Result<Polynomial> {
        self.check_var(var)?;
        let mut out = Polynomial::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.degree(var) as i32;
            out.add_term(m.with_degree(var, 0), c * num_traits::pow::Pow::pow(value, e));
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.arity {
            return Err(AlgebraError::ArityMismatch { left: self.arity, right: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow::Pow::pow(&point[v], e as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Views the polynomial as univariate in `var`, if no other variable occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly> {
        if var >= self.arity {
            return None;
        }
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            if m.exponents().iter().enumerate().any(|(v, &e)| v != var && e > 0) {
                return None;
            }
            let e = m.degree(var) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] = c.clone();
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    pub fn from_univariate(p: &UniPoly, arity: usize, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(arity);
        for (j, c) in p.coeffs().iter().enumerate() {
            out.add_term(Monomial::var(arity, var, j as u32), c.clone());
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        if self.arity != d.arity {
            return None;
        }
        let (dm, dc) = d.lex_leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.arity);
        while let Some((m, c)) = rem.lex_leading() {
            let qm = m.div(&dm)?;
            let qc = c / &dc;
            for (t, a) in &d.terms {
                rem.add_term(t.mul(&qm), -(a * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Divides out the numeric content, returning an integer polynomial with
    /// coprime coefficients and positive lex-leading coefficient together with
    /// the factor removed (`self = factor · result`).
    pub fn primitive_part(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut factor = Rational::new(num_gcd, den_lcm);
        if self.lex_leading().is_some_and(|(_, c)| c.is_negative()) {
            factor = -factor;
        }
        let inv = factor.recip();
        (factor, self.scale(&inv))
    }

    pub(crate) fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (f(m), c.clone())).collect(),
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

// Operator forms panic on arity mismatch; use the `try_*` methods to get an error.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$try(rhs).expect("polynomial arity mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
