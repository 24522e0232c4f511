//! Sylvester matrices and resultants with respect to one variable.
//!
//! Coefficients in the eliminated variable are polynomials of the same arity
//! that do not involve it, so determinants are taken over the polynomial
//! ring itself with fraction-free (Bareiss) elimination.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::factor;
use crate::poly::{int, Polynomial, Rational, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterMatrix {
    pub var: usize,
    /// `(deg_var f1, deg_var f2)`
    pub degrees: (usize, usize),
    /// Rows `0..d2` hold shifts of `f1`, rows `d2..d1+d2` shifts of `f2`,
    /// highest power first.
    pub rows: Vec<Vec<Polynomial>>,
}

impl SylvesterMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn determinant(&self) -> Polynomial {
        let arity = self.rows.first().map_or(1, |r| r[0].arity());
        det_bareiss(&self.rows, arity)
    }
}

pub fn sylvester_matrix(f1: &Polynomial, f2: &Polynomial, var: usize) -> Result<SylvesterMatrix> {
    if f1.arity() != f2.arity() {
        return Err(AlgebraError::ArityMismatch { left: f1.arity(), right: f2.arity() });
    }
    if f1.is_zero() || f2.is_zero() {
        return Err(AlgebraError::ZeroPolynomial("sylvester_matrix"));
    }
    let a = f1.coeffs_wrt(var)?;
    let b = f2.coeffs_wrt(var)?;
    let (d1, d2) = (a.len() - 1, b.len() - 1);
    if d1 == 0 && d2 == 0 {
        return Err(AlgebraError::ConstantPair);
    }
    let n = d1 + d2;
    let zero = Polynomial::zero(f1.arity());
    let mut rows = vec![vec![zero; n]; n];
    for r in 0..d2 {
        for k in 0..=d1 {
            rows[r][r + k] = a[d1 - k].clone();
        }
    }
    for r in 0..d1 {
        for k in 0..=d2 {
            rows[d2 + r][r + k] = b[d2 - k].clone();
        }
    }
    Ok(SylvesterMatrix { var, degrees: (d1, d2), rows })
}

/// Resultant of `f1` and `f2` with respect to `var`.
///
/// Total by convention: zero if either input is zero, `1` if both are
/// nonzero constants in `var`, and `c^{deg f}` when exactly one is a
/// constant `c` in `var` (the Sylvester determinant in that case).
pub fn resultant(f1: &Polynomial, f2: &Polynomial, var: usize) -> Result<Polynomial> {
    if f1.arity() != f2.arity() {
        return Err(AlgebraError::ArityMismatch { left: f1.arity(), right: f2.arity() });
    }
    let arity = f1.arity();
    if f1.is_zero() || f2.is_zero() {
        return Ok(Polynomial::zero(arity));
    }
    match sylvester_matrix(f1, f2, var) {
        Ok(m) => Ok(m.determinant()),
        Err(AlgebraError::ConstantPair) => Ok(Polynomial::one(arity)),
        Err(e) => Err(e),
    }
}

/// Resultant of a bivariate pair with respect to `var`, as a univariate
/// polynomial in the other variable.
pub fn resultant_uni(f1: &Polynomial, f2: &Polynomial, var: usize) -> Result<UniPoly> {
    let other = other_var(f1, var)?;
    let r = resultant(f1, f2, var)?;
    Ok(r.to_univariate(other).expect("bivariate resultant lies in the other variable"))
}

fn other_var(f: &Polynomial, var: usize) -> Result<usize> {
    if f.arity() != 2 {
        return Err(AlgebraError::NotBivariate(f.arity()));
    }
    if var > 1 {
        return Err(AlgebraError::VariableOutOfRange { var, arity: 2 });
    }
    Ok(1 - var)
}

/// Fraction-free Gaussian elimination; every division is exact in the
/// polynomial ring.
pub fn det_bareiss(matrix: &[Vec<Polynomial>], arity: usize) -> Polynomial {
    let n = matrix.len();
    if n == 0 {
        return Polynomial::one(arity);
    }
    let mut m = matrix.to_vec();
    let mut negate = false;
    let mut prev = Polynomial::one(arity);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Polynomial::zero(arity),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Polynomial::zero(arity);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Cofactor expansion along the first row. Exponential; meant for checking
/// small matrices.
pub fn det_laplace(matrix: &[Vec<Polynomial>], arity: usize) -> Polynomial {
    let n = matrix.len();
    match n {
        0 => Polynomial::one(arity),
        1 => matrix[0][0].clone(),
        _ => {
            let mut acc = Polynomial::zero(arity);
            for j in 0..n {
                if matrix[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = matrix[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &matrix[0][j] * &det_laplace(&minor, arity);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Resultant of two univariate polynomials over the rationals by the
/// Euclidean remainder sequence.
pub fn univariate_resultant(a: &UniPoly, b: &UniPoly) -> Rational {
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = Rational::one();
    loop {
        let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
            return Rational::zero();
        };
        if da == 0 {
            return acc * pow(&a.coeff(0), db);
        }
        if db == 0 {
            return acc * pow(&b.coeff(0), da);
        }
        let r = a.rem(&b).expect("b nonzero");
        let Some(dr) = r.degree() else {
            return Rational::zero();
        };
        // res(a, b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow(b.leading_coeff().expect("nonzero"), da - dr);
        a = b;
        b = r;
    }
}

fn pow(c: &Rational, e: usize) -> Rational {
    num_traits::pow::Pow::pow(c, e as i32)
}

/// Independent resultant of a bivariate pair: specialise the free variable
/// at points where neither leading coefficient vanishes, take univariate
/// resultants by remainder sequences and interpolate.
///
/// Candidate points are `0, 1, -1, 2, -2, …`; each leading coefficient has
/// finitely many roots, so enough good points always exist.
pub fn resultant_eval_oracle(f1: &Polynomial, f2: &Polynomial, var: usize) -> Result<Polynomial> {
    let other = other_var(f1, var)?;
    if f2.arity() != 2 {
        return Err(AlgebraError::NotBivariate(f2.arity()));
    }
    if f1.is_zero() || f2.is_zero() {
        return Ok(Polynomial::zero(2));
    }
    let d1 = f1.degree_in(var).unwrap_or(0);
    let d2 = f2.degree_in(var).unwrap_or(0);
    if d1 == 0 && d2 == 0 {
        return Ok(Polynomial::one(2));
    }
    if d2 == 0 {
        return Ok(f2.pow(d1));
    }
    if d1 == 0 {
        return Ok(f1.pow(d2));
    }
    let bound = d2 * f1.degree_in(other).unwrap_or(0) + d1 * f2.degree_in(other).unwrap_or(0);
    let h1 = f1.leading_coeff_wrt(var)?;
    let h2 = f2.leading_coeff_wrt(var)?;

    let mut xs = Vec::with_capacity(bound as usize + 1);
    let mut ys = Vec::with_capacity(bound as usize + 1);
    let mut k: i64 = 0;
    while xs.len() <= bound as usize {
        let c = if k % 2 == 0 { int(-k / 2) } else { int((k + 1) / 2) };
        k += 1;
        let mut pt = [Rational::zero(), Rational::zero()];
        pt[other] = c.clone();
        if h1.eval(&pt)?.is_zero() || h2.eval(&pt)?.is_zero() {
            continue;
        }
        let s1 = f1.substitute(other, &c)?.to_univariate(var).expect("specialised");
        let s2 = f2.substitute(other, &c)?.to_univariate(var).expect("specialised");
        ys.push(univariate_resultant(&s1, &s2));
        xs.push(c);
    }
    let u = interpolate(&xs, &ys);
    Ok(Polynomial::from_univariate(&u, 2, other))
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        acc = &(&acc * &UniPoly::linear(&xs[i])) + &UniPoly::constant(dd[i].clone());
    }
    acc
}

/// Pairwise resultants `r_ij = res(f_i, f_j)` of a bivariate family and
/// their monic gcd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairwiseResultants {
    pub entries: BTreeMap<(usize, usize), UniPoly>,
    /// Monic gcd of all entries, or zero if all vanish.
    pub gcd: UniPoly,
    /// Monic gcd of `r_0j` only, the single-anchor variant.
    pub star_gcd: UniPoly,
}

pub fn pairwise_resultants(polys: &[Polynomial], var: usize) -> Result<PairwiseResultants> {
    if polys.len() < 2 {
        return Err(AlgebraError::Domain("pairwise resultants need at least two polynomials".into()));
    }
    let mut entries = BTreeMap::new();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            entries.insert((i, j), resultant_uni(&polys[i], &polys[j], var)?);
        }
    }
    let gcd = entries.values().fold(UniPoly::zero(), |acc, r| factor::gcd(&acc, r));
    let star_gcd = entries
        .iter()
        .filter(|((i, _), _)| *i == 0)
        .fold(UniPoly::zero(), |acc, (_, r)| factor::gcd(&acc, r));
    Ok(PairwiseResultants { entries, gcd, star_gcd })
}
