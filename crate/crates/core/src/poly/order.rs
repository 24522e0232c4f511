use std::cmp::Ordering;

use crate::error::{AlgebraError, Result};

use super::{Monomial, Polynomial};

/// Lexicographic term order over a permutation of the ring variables.
///
/// `priority[0]` is the most significant variable, so `TermOrder::lex(2)`
/// is lex with `x ≻ y` for variables `[x, y]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    priority: Vec<usize>,
}

impl TermOrder {
    pub fn lex(arity: usize) -> Self {
        TermOrder { priority: (0..arity).collect() }
    }

    pub fn with_priority(priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &v in &priority {
            if v >= priority.len() || seen[v] {
                return Err(AlgebraError::InvalidOrder(format!(
                    "{priority:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        Ok(TermOrder { priority })
    }

    pub fn arity(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &v in &self.priority {
            match a.degree(v).cmp(&b.degree(v)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// The first `count` variables in priority order.
    pub fn leading_vars(&self, count: usize) -> &[usize] {
        &self.priority[..count.min(self.priority.len())]
    }

    pub(crate) fn check(&self, p: &Polynomial) -> Result<()> {
        if p.arity() != self.arity() {
            return Err(AlgebraError::ArityMismatch { left: p.arity(), right: self.arity() });
        }
        Ok(())
    }

    /// Renames variables so that this order becomes plain lex on the result.
    pub(crate) fn to_internal(&self, p: &Polynomial) -> Polynomial {
        p.map_monomials(|m| m.permuted(&self.priority))
    }

    pub(crate) fn to_external(&self, p: &Polynomial) -> Polynomial {
        p.map_monomials(|m| m.unpermuted(&self.priority))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_and_reversed_lex() {
        let xy = Monomial::from_exponents([1, 1]);
        let y3 = Monomial::from_exponents([0, 3]);
        assert_eq!(TermOrder::lex(2).cmp(&xy, &y3), Ordering::Greater);
        let y_first = TermOrder::with_priority(vec![1, 0]).unwrap();
        assert_eq!(y_first.cmp(&xy, &y3), Ordering::Less);
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(TermOrder::with_priority(vec![0, 0]).is_err());
        assert!(TermOrder::with_priority(vec![0, 2]).is_err());
    }
}
