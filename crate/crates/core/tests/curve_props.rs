use proptest::prelude::*;

use elimcalc::analysis::elim_report;
use elimcalc::conjecture::{conjecture_verdict, horizontal_tangent, slice, IntersectionPoint};
use elimcalc::generate::{Family, InstanceGenerator};
use elimcalc::poly::{int, rat};
use elimcalc::{Monomial, Polynomial, Rational};

fn small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0u32..=2, 0u32..=2, -5i64..=5), 0..=4).prop_map(|terms| {
        terms.into_iter().fold(Polynomial::zero(2), |acc, (i, j, c)| {
            acc + Polynomial::term(Monomial::from_exponents([i, j]), int(c))
        })
    })
}

fn unit() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| if neg { -rat(n, d) } else { rat(n, d) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn slice_tangent_matches_gradient(a in -3i64..=3, c in -3i64..=3, k in 1u32..=2, u in small_poly(), w in small_poly()) {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let (a, c) = (int(a), int(c));
        let f = &(&(&y - &Polynomial::constant(2, c.clone())) * &u)
            + &(&(&x - &Polynomial::constant(2, a.clone())).pow(k) * &w);
        prop_assume!(!f.is_zero());
        let pt = IntersectionPoint { x: a.clone(), y: c.clone(), fiber_multiplicity: 1 };
        let dx = f.differentiate(0).unwrap().eval(&[a, c.clone()]).unwrap();
        let expected = slice(&f, &c).unwrap().is_zero() || dx == int(0);
        prop_assert_eq!(horizontal_tangent(&f, &pt).unwrap(), expected);
    }

    #[test]
    fn verdicts_ignore_rescaling(seed in any::<u64>(), index in 0u64..50, l1 in unit(), l2 in unit()) {
        let inst = InstanceGenerator::new(seed, 3, 5, Family::Tangency).instance(index);
        let (f1, f2) = (&inst.polys[0], &inst.polys[1]);
        let base = elim_report(f1, f2).unwrap();
        prop_assume!(!base.resultant.is_zero());
        let a = conjecture_verdict(f1, f2).unwrap();
        let b = conjecture_verdict(&f1.scale(&l1), &f2.scale(&l2)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn mu_never_exceeds_nu(seed in any::<u64>(), index in 0u64..1000) {
        let inst = InstanceGenerator::new(seed, 4, 9, Family::Random).instance(index);
        let r = elim_report(&inst.polys[0], &inst.polys[1]).unwrap();
        prop_assume!(!r.resultant.is_zero());
        prop_assert!(!r.table.is_empty() || r.resultant.is_constant());
        for row in &r.table {
            prop_assert!(row.mu <= row.nu, "{:?}", row);
            prop_assert!(row.nu >= 1);
        }
    }
}
