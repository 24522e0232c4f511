use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial, one entry per ring variable.
///
/// The derived ordering is lexicographic with variable 0 most significant,
/// which is the storage order of [`Polynomial`](super::Polynomial).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(SmallVec::from_elem(0, arity))
    }

    pub fn var(arity: usize, var: usize, exp: u32) -> Self {
        let mut m = Self::one(arity);
        m.0[var] = exp;
        m
    }

    pub fn from_exponents<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        Monomial(exps.into_iter().collect())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn with_degree(&self, var: usize, exp: u32) -> Monomial {
        let mut m = self.clone();
        m.0[var] = exp;
        m
    }

    pub(crate) fn permuted(&self, perm: &[usize]) -> Monomial {
        Monomial(perm.iter().map(|&i| self.0[i]).collect())
    }

    pub(crate) fn unpermuted(&self, perm: &[usize]) -> Monomial {
        let mut out = SmallVec::from_elem(0, self.0.len());
        for (k, &i) in perm.iter().enumerate() {
            out[i] = self.0[k];
        }
        Monomial(out)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}
