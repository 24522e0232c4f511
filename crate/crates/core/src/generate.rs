//! Seeded random bivariate instances. The stream depends only on the seed
//! and the parameters; instance `i` is drawn from its own generator so any
//! prefix of a stream is reproducible on its own.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{int, Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Independent sparse random polynomials.
    Random,
    /// `f1 = p·a`, `f2 = p·b` with `p` of positive `x`-degree.
    CommonFactor,
    /// `f_i = (y − c)·u_i + (x − a)^2·w_i`: both curves pass through
    /// `(a, c)` with a horizontal tangent there.
    Tangency,
    /// Three or four random polynomials.
    ManyPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub index: u64,
    pub polys: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct InstanceGenerator {
    pub seed: u64,
    pub degree_bound: u32,
    pub coeff_bound: i64,
    pub family: Family,
    next: u64,
}

impl InstanceGenerator {
    pub fn new(seed: u64, degree_bound: u32, coeff_bound: i64, family: Family) -> Self {
        InstanceGenerator { seed, degree_bound: degree_bound.max(1), coeff_bound: coeff_bound.max(1), family, next: 0 }
    }

    /// Generator for instance `index` of this stream.
    pub fn rng_for(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    pub fn instance(&self, index: u64) -> Instance {
        let mut rng = self.rng_for(index);
        let polys = match self.family {
            Family::Random => vec![self.random_poly(&mut rng), self.random_poly(&mut rng)],
            Family::CommonFactor => self.common_factor(&mut rng),
            Family::Tangency => self.tangency(&mut rng),
            Family::ManyPoly => {
                let m = rng.gen_range(3..=4);
                (0..m).map(|_| self.random_poly(&mut rng)).collect()
            }
        };
        Instance { index, polys }
    }

    fn coeff(&self, rng: &mut ChaCha8Rng) -> i64 {
        loop {
            let c = rng.gen_range(-self.coeff_bound..=self.coeff_bound);
            if c != 0 {
                return c;
            }
        }
    }

    /// Sparse polynomial of total degree at most `deg`, with positive
    /// `x`-degree.
    pub fn poly_of_degree(&self, rng: &mut ChaCha8Rng, deg: u32) -> Polynomial {
        let deg = deg.max(1);
        let mut p = Polynomial::zero(2);
        for i in 0..=deg {
            for j in 0..=deg - i {
                if rng.gen_bool(0.4) {
                    p = &p + &Polynomial::term(Monomial::from_exponents([i, j]), int(self.coeff(rng)));
                }
            }
        }
        if p.degree_in(0).unwrap_or(0) == 0 {
            let i = rng.gen_range(1..=deg);
            let j = rng.gen_range(0..=deg - i);
            p = &p + &Polynomial::term(Monomial::from_exponents([i, j]), int(self.coeff(rng)));
        }
        p
    }

    pub fn random_poly(&self, rng: &mut ChaCha8Rng) -> Polynomial {
        let deg = rng.gen_range(1..=self.degree_bound);
        self.poly_of_degree(rng, deg)
    }

    fn common_factor(&self, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
        let dp = rng.gen_range(1..=self.degree_bound.min(2));
        let p = self.poly_of_degree(rng, dp);
        let rest = (self.degree_bound - dp).max(1);
        let da = rng.gen_range(1..=rest);
        let a = self.poly_of_degree(rng, da);
        let db = rng.gen_range(1..=rest);
        let b = self.poly_of_degree(rng, db);
        vec![&p * &a, &p * &b]
    }

    fn tangency(&self, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
        let small = self.coeff_bound.min(3);
        let a = int(rng.gen_range(-small..=small));
        let c = int(rng.gen_range(-small..=small));
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let line = &y - &Polynomial::constant(2, c);
        let sq = (&x - &Polynomial::constant(2, a)).pow(2);
        (0..2)
            .map(|_| {
                let u = self.low_degree(rng);
                let w = self.low_degree(rng);
                &(&line * &u) + &(&sq * &w)
            })
            .collect()
    }

    /// Nonzero polynomial of total degree at most one.
    fn low_degree(&self, rng: &mut ChaCha8Rng) -> Polynomial {
        loop {
            let mut p = Polynomial::zero(2);
            for m in [[0, 0], [1, 0], [0, 1]] {
                if rng.gen_bool(0.6) {
                    p = &p + &Polynomial::term(Monomial::from_exponents(m), int(self.coeff(rng)));
                }
            }
            if !p.is_zero() {
                return p;
            }
        }
    }
}

impl Iterator for InstanceGenerator {
    type Item = Instance;

    fn next(&mut self) -> Option<Instance> {
        let inst = self.instance(self.next);
        self.next += 1;
        Some(inst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_streams() {
        for family in [Family::Random, Family::CommonFactor, Family::Tangency, Family::ManyPoly] {
            let a: Vec<Instance> = InstanceGenerator::new(7, 4, 9, family).take(20).collect();
            let b: Vec<Instance> = InstanceGenerator::new(7, 4, 9, family).take(20).collect();
            assert_eq!(a, b);
            let c: Vec<Instance> = InstanceGenerator::new(8, 4, 9, family).take(20).collect();
            assert_ne!(a, c);
        }
    }

    #[test]
    fn respects_bounds() {
        for inst in InstanceGenerator::new(1, 4, 9, Family::Random).take(200) {
            for p in &inst.polys {
                assert!(p.total_degree().unwrap() <= 4);
                assert!(p.degree_in(0).unwrap() >= 1);
                assert!(p.terms().all(|(_, c)| c.numer().magnitude() <= &9u32.into()));
            }
        }
    }

    #[test]
    fn tangency_family_shares_a_point() {
        for inst in InstanceGenerator::new(3, 4, 9, Family::Tangency).take(50) {
            let f = &inst.polys[0];
            let zeros: Vec<_> = (-3..=3)
                .flat_map(|a| (-3..=3).map(move |c| [int(a), int(c)]))
                .filter(|pt| inst.polys.iter().all(|p| p.eval(pt).unwrap() == int(0)))
                .collect();
            assert!(!zeros.is_empty(), "{f:?}");
        }
    }
}
