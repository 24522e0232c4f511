//! Univariate gcd, square-free decomposition and gcd-free bases over the
//! rationals. Multiplicities are compared through coprime refinements, so
//! no irreducible factorization is ever needed.

mod roots;

use std::cmp::Ordering;

use crate::error::{AlgebraError, Result};
use crate::poly::{Rational, UniPoly};

pub use roots::{rational_roots, rational_roots_squarefree};

/// Monic gcd by the monic remainder sequence. `gcd(p, 0) = monic(p)` and
/// `gcd(0, 0) = 0`.
pub fn gcd(p: &UniPoly, q: &UniPoly) -> UniPoly {
    let mut a = p.monic();
    let mut b = q.monic();
    while !b.is_zero() {
        let r = a.rem(&b).expect("b nonzero");
        a = b;
        b = r.monic();
    }
    a
}

pub fn gcd_all<'a, I: IntoIterator<Item = &'a UniPoly>>(ps: I) -> UniPoly {
    ps.into_iter().fold(UniPoly::zero(), |acc, p| gcd(&acc, p))
}

/// Orders polynomials by degree, then coefficients from the top down.
pub fn canonical_cmp(a: &UniPoly, b: &UniPoly) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// `unit · Π factor^multiplicity`, factors monic, square-free, non-constant
/// and pairwise coprime, multiplicities strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: Rational,
    pub parts: Vec<(UniPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reassemble(&self) -> UniPoly {
        self.parts
            .iter()
            .fold(UniPoly::constant(self.unit.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }

    /// Product of the factors (the monic radical).
    pub fn squarefree_part(&self) -> UniPoly {
        self.parts.iter().fold(UniPoly::one(), |acc, (f, _)| &acc * f)
    }

    pub fn is_squarefree(&self) -> bool {
        self.parts.iter().all(|(_, m)| *m == 1)
    }
}

/// Yun's algorithm.
pub fn squarefree_decomposition(p: &UniPoly) -> Result<SquarefreeDecomposition> {
    let Some(unit) = p.leading_coeff().cloned() else {
        return Err(AlgebraError::ZeroPolynomial("squarefree_decomposition"));
    };
    let f = p.monic();
    let mut parts = Vec::new();
    if f.is_constant() {
        return Ok(SquarefreeDecomposition { unit, parts });
    }
    let df = f.derivative();
    let a0 = gcd(&f, &df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let mut c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        if !a.is_constant() {
            parts.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(SquarefreeDecomposition { unit, parts })
}

/// Monic radical of `p`; zero maps to zero.
pub fn squarefree_part(p: &UniPoly) -> UniPoly {
    match squarefree_decomposition(p) {
        Ok(d) => d.squarefree_part(),
        Err(_) => UniPoly::zero(),
    }
}

/// Monic, square-free, pairwise-coprime polynomials through which a family
/// of inputs factors as unit times powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdFreeBasis {
    pub elements: Vec<UniPoly>,
}

impl GcdFreeBasis {
    /// Exponent of each basis element in `p`.
    pub fn exponents(&self, p: &UniPoly) -> Result<Vec<u32>> {
        self.elements.iter().map(|b| multiplicity_of(b, p)).collect()
    }
}

/// Refines the square-free components of every non-constant input into a
/// pairwise-coprime basis. Constants carry no root information and are
/// dropped; zero inputs are rejected.
pub fn gcd_free_basis(ps: &[UniPoly]) -> Result<GcdFreeBasis> {
    let mut list: Vec<UniPoly> = Vec::new();
    for p in ps {
        if p.is_zero() {
            return Err(AlgebraError::ZeroPolynomial("gcd_free_basis"));
        }
        for (f, _) in squarefree_decomposition(p)?.parts {
            list.push(f);
        }
    }
    'outer: loop {
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let g = gcd(&list[i], &list[j]);
                if g.is_constant() {
                    continue;
                }
                let a = list[i].exact_div(&g).expect("gcd divides");
                let b = list[j].exact_div(&g).expect("gcd divides");
                list.swap_remove(j);
                list.swap_remove(i);
                list.extend([g, a, b].into_iter().filter(|q| !q.is_constant()));
                continue 'outer;
            }
        }
        break;
    }
    list.sort_by(canonical_cmp);
    Ok(GcdFreeBasis { elements: list })
}

/// Largest `k` with `b^k | p`, by repeated exact division.
pub fn multiplicity_of(b: &UniPoly, p: &UniPoly) -> Result<u32> {
    if b.is_constant() {
        return Err(AlgebraError::Domain("multiplicity_of needs a non-constant factor".into()));
    }
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial("multiplicity_of"));
    }
    let mut k = 0;
    let mut rest = p.clone();
    while let Some(q) = rest.exact_div(b) {
        rest = q;
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn lin(r: i64) -> UniPoly {
        UniPoly::from_i64(&[-r, 1])
    }

    #[test]
    fn gcd_examples() {
        let a = UniPoly::from_i64(&[-1, 0, 1]);
        let b = UniPoly::from_i64(&[1, 2, 1]);
        assert_eq!(gcd(&a, &b), lin(-1));
        let p = UniPoly::from_i64(&[4, 0, 2]);
        assert_eq!(gcd(&p, &UniPoly::zero()), p.monic());
        assert_eq!(gcd(&UniPoly::zero(), &UniPoly::zero()), UniPoly::zero());
        assert_eq!(gcd(&lin(2), &lin(3)), UniPoly::one());
    }

    #[test]
    fn squarefree_examples() {
        let p = &lin(2) * &lin(1).pow(2);
        let d = squarefree_decomposition(&p).unwrap();
        assert_eq!(d.parts, vec![(lin(2), 1), (lin(1), 2)]);
        assert_eq!(d.reassemble(), p);

        // y^3 + 1/2 y^2 = (y + 1/2) y^2
        let g = UniPoly::from_coeffs(vec![rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 1)]);
        let d = squarefree_decomposition(&g).unwrap();
        assert_eq!(d.parts, vec![(UniPoly::linear(&rat(-1, 2)), 1), (UniPoly::identity(), 2)]);

        let s = UniPoly::from_i64(&[3, 0, 6]);
        let d = squarefree_decomposition(&s).unwrap();
        assert_eq!(d.parts, vec![(s.monic(), 1)]);
        assert_eq!(d.unit, rat(6, 1));

        assert!(squarefree_decomposition(&UniPoly::zero()).is_err());
        let d = squarefree_decomposition(&UniPoly::from_i64(&[-5])).unwrap();
        assert!(d.parts.is_empty());
        assert_eq!(d.reassemble(), UniPoly::from_i64(&[-5]));
    }

    #[test]
    fn gcd_free_basis_examples() {
        let y = UniPoly::identity();
        let basis = gcd_free_basis(&[&y * &lin(-1), &lin(-1) * &lin(2)]).unwrap();
        assert_eq!(basis.elements, vec![lin(2), lin(0), lin(-1)]);

        let p = &lin(3).pow(3) * &lin(1);
        assert_eq!(gcd_free_basis(std::slice::from_ref(&p)).unwrap().elements, {
            let mut v = vec![lin(3), lin(1)];
            v.sort_by(canonical_cmp);
            v
        });

        let q = UniPoly::from_i64(&[1, 0, 1]);
        let basis = gcd_free_basis(&[lin(5), q.clone(), UniPoly::from_i64(&[7])]).unwrap();
        assert_eq!(basis.elements, vec![lin(5), q]);
        assert!(gcd_free_basis(&[UniPoly::zero()]).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let r = &(&UniPoly::from_i64(&[0, 2]) * &lin(-1).pow(3)) * &UniPoly::one();
        assert_eq!(multiplicity_of(&lin(-1), &r).unwrap(), 3);
        assert_eq!(multiplicity_of(&lin(-1), &UniPoly::identity()).unwrap(), 0);
        assert_eq!(multiplicity_of(&UniPoly::identity(), &UniPoly::identity().pow(2)).unwrap(), 2);
        assert!(multiplicity_of(&UniPoly::one(), &r).is_err());
        assert!(multiplicity_of(&lin(1), &UniPoly::zero()).is_err());
    }
}
