use fimhom_core::category::Truncation;
use fimhom_core::fi::{enumerate_morphisms, factorize, recompose, FimObject, MorTuple};
use fimhom_core::linalg::{Rat, RatMatrix};
use fimhom_core::module::{free_module, hom_space, quotient, submodule_span};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_big(r: &Rat) -> BigRational {
    BigRational::new(r.numer(), r.denom())
}

proptest! {
    // The fast path must agree with plain bignum arithmetic, including
    // across i64 overflow.
    #[test]
    fn rat_arithmetic_matches_bigrational(
        a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX,
    ) {
        let (x, y) = (Rat::new(a, b), Rat::new(c, d));
        let (bx, by) = (big(a, b), big(c, d));
        prop_assert_eq!(to_big(&(&x + &y)), &bx + &by);
        prop_assert_eq!(to_big(&(&x - &y)), &bx - &by);
        prop_assert_eq!(to_big(&(&x * &y)), &bx * &by);
        if c != 0 {
            prop_assert_eq!(to_big(&(&x / &y)), &bx / &by);
        }
        prop_assert_eq!(x.to_string().parse::<Rat>().unwrap(), x);
    }

    #[test]
    fn rank_plus_nullity(rows in 1usize..5, cols in 1usize..6, seed in prop::collection::vec(-3i64..=3, 30)) {
        let m = RatMatrix::from_vec(rows, cols, seed[..rows * cols].iter().map(|&v| Rat::from_int(v)).collect()).unwrap();
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), cols);
        prop_assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn factorization_recomposes(a in 0usize..3, b in 0usize..3, extra in 0usize..2, idx in 0usize..1000) {
        let s = FimObject(vec![a, b]);
        let u = FimObject(vec![a + extra, b + 1]);
        let homs = enumerate_morphisms(&s, &u);
        let f = &homs[idx % homs.len()];
        let word = factorize(f);
        prop_assert_eq!(&recompose(&s, &word).unwrap(), f);
        prop_assert_eq!(&MorTuple::unrank(&s, &u, f.rank()), f);
    }

    // Seeded cyclic submodules of free modules and their quotients are
    // modules, and dimensions add up.
    #[test]
    fn cyclic_submodule_and_quotient(n in 0usize..2, coeffs in prop::collection::vec(-2i64..=2, 6)) {
        let t = Truncation::new(vec![3]);
        let m = free_module(&FimObject(vec![n]), &t).unwrap();
        let u = n + 1;
        let dim = m.dim(u);
        let v: Vec<Rat> = coeffs[..dim].iter().map(|&c| Rat::from_int(c)).collect();
        prop_assume!(v.iter().any(|x| !x.is_zero()));
        let (sub, incl) = submodule_span(&m, &[(u, v)]).unwrap();
        prop_assert!(sub.validate().is_empty());
        prop_assert!(incl.is_valid(&sub, &m));
        prop_assert!(incl.is_injective());
        let (q, proj) = quotient(&m, &incl).unwrap();
        prop_assert!(q.validate().is_empty());
        prop_assert!(proj.is_valid(&m, &q));
        for i in 0..t.object_count() {
            prop_assert_eq!(sub.dim(i) + q.dim(i), m.dim(i));
        }
        let hs = hom_space(&q, &m).unwrap();
        for h in &hs.basis {
            prop_assert!(h.is_valid(&q, &m));
        }
    }
}
