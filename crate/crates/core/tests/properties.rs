//! Property tests for the algebraic invariants of each layer.

use std::sync::Arc;

use genusfield::chargroup::{Character, UnitGroup};
use genusfield::genus::{artin_schreier_genus, kummer_genus, witt_genus, AsInput, KummerInput, WittInput};
use genusfield::parse::parse_ratfunc;
use genusfield::polyring::{factor, is_irreducible};
use genusfield::ratfunc::{as_class_rank, as_normalize, in_wp_image, partial_fractions};
use genusfield::selftest::gen;
use genusfield::witt::WittRing;
use genusfield::{Field, FqElem, Poly, RatFunc};
use proptest::prelude::*;

const QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn field(q: u64) -> Field {
    Field::from_q(q).unwrap()
}

fn poly_from(f: &Field, raw: &[u16]) -> Poly {
    let els: Vec<FqElem> = f.elements().collect();
    Poly::new(f, raw.iter().map(|&c| els[c as usize % els.len()]).collect())
}

fn any_q() -> impl Strategy<Value = u64> {
    prop::sample::select(QS.to_vec())
}

fn raw_poly(max_len: usize) -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(any::<u16>(), 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_is_bijective(q in any_q(), i in any::<u16>()) {
        let f = field(q);
        let a = f.elements().nth(i as usize % q as usize).unwrap();
        let p = f.p() as u64;
        prop_assert_eq!(f.pow(f.pth_root(a), p), a);
        prop_assert_eq!(f.pth_root(f.pow(a, p)), a);
    }

    #[test]
    fn division_with_remainder(q in any_q(), a in raw_poly(8), b in raw_poly(5)) {
        let f = field(q);
        let (a, b) = (poly_from(&f, &a), poly_from(&f, &b));
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.divrem(&b);
        prop_assert_eq!(&(&quo * &b) + &rem, a.clone());
        prop_assert!(rem.deg() < b.deg());
    }

    #[test]
    fn extended_gcd(q in any_q(), a in raw_poly(6), b in raw_poly(6)) {
        let f = field(q);
        let (a, b) = (poly_from(&f, &a), poly_from(&f, &b));
        let (g, s, t) = a.xgcd(&b);
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
        if !g.is_zero() {
            prop_assert!(g.is_monic());
            prop_assert!(g.divides(&a) && g.divides(&b));
        }
    }

    #[test]
    fn factorization_recombines(q in prop::sample::select(vec![2u64, 3, 4, 5, 9]), a in raw_poly(7)) {
        let f = field(q);
        let a = poly_from(&f, &a);
        prop_assume!(!a.is_zero());
        let fz = factor(&a).unwrap();
        prop_assert_eq!(fz.recombine(&f), a);
        for (p, e) in &fz.factors {
            prop_assert!(*e >= 1 && p.is_monic());
            prop_assert!(is_irreducible(p).unwrap());
        }
        let mut sorted = fz.factors.clone();
        sorted.sort();
        sorted.dedup_by(|x, y| x.0 == y.0);
        prop_assert_eq!(sorted.len(), fz.factors.len());
    }

    #[test]
    fn partial_fractions_recombine(q in prop::sample::select(vec![2u64, 3, 5, 9]), seed in any::<u64>()) {
        let f = field(q);
        let mut rng = gen::rng(seed, 0);
        let primes = gen::random_primes(&f, 3, 2, &mut rng);
        let a = gen::random_ratfunc(&f, &primes, 4, 3, &mut rng);
        prop_assert_eq!(partial_fractions(&a).unwrap().recombine(), a);
    }

    #[test]
    fn display_parses_back(q in prop::sample::select(vec![2u64, 3, 4, 9]), seed in any::<u64>()) {
        let f = field(q);
        let mut rng = gen::rng(seed, 1);
        let primes = gen::random_primes(&f, 2, 2, &mut rng);
        let a = gen::random_ratfunc(&f, &primes, 3, 3, &mut rng);
        prop_assert_eq!(parse_ratfunc(&f, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn normalization_keeps_the_class(q in prop::sample::select(vec![2u64, 3, 4, 5, 9]), seed in any::<u64>()) {
        let f = field(q);
        let mut rng = gen::rng(seed, 2);
        let primes = gen::random_primes(&f, 2, 2, &mut rng);
        let a = gen::random_ratfunc(&f, &primes, 2 * f.p(), 2 * f.p() as usize, &mut rng);
        let (form, w) = as_normalize(&a).unwrap();
        let normal = form.recombine();
        prop_assert_eq!(&normal, &(&a - &w.w.wp()));
        prop_assert!(form.is_normalized());
        // the class of a is trivial exactly when the normal form vanishes
        prop_assert_eq!(in_wp_image(&a).unwrap(), normal.is_zero());
        prop_assert_eq!(as_class_rank(&[a.clone(), normal.clone()]).unwrap(), usize::from(!normal.is_zero()));
    }

    #[test]
    fn wp_of_anything_is_trivial(q in prop::sample::select(vec![2u64, 3, 9]), seed in any::<u64>()) {
        let f = field(q);
        let mut rng = gen::rng(seed, 3);
        let primes = gen::random_primes(&f, 2, 2, &mut rng);
        let a = gen::random_ratfunc(&f, &primes, 3, 3, &mut rng);
        prop_assert!(in_wp_image(&a.wp()).unwrap());
        prop_assert!(matches!(AsInput::new(&a.wp()), Err(genusfield::Error::Degenerate(_))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn witt_ring_axioms(q in prop::sample::select(vec![2u64, 3, 4]), n in 1usize..=3, seed in any::<u64>()) {
        let f = field(q);
        let ring = WittRing::new(&f, n).unwrap();
        let mut rng = gen::rng(seed, 4);
        let primes = gen::random_primes(&f, 2, 1, &mut rng);
        let a = gen::random_witt(&ring, &primes, 2, 2, &mut rng);
        let b = gen::random_witt(&ring, &primes, 2, 2, &mut rng);
        let c = gen::random_witt(&ring, &primes, 2, 2, &mut rng);
        let ab = ring.add(&a, &b).unwrap();
        prop_assert_eq!(&ab, &ring.add(&b, &a).unwrap());
        prop_assert_eq!(ring.add(&ab, &c).unwrap(), ring.add(&a, &ring.add(&b, &c).unwrap()).unwrap());
        prop_assert!(ring.add(&a, &ring.neg(&a).unwrap()).unwrap().is_zero());
        prop_assert_eq!(ring.add(&a, &ring.zero()).unwrap(), a.clone());
        // F - 1 is additive
        let lhs = ring.wp(&ab).unwrap();
        let rhs = ring.add(&ring.wp(&a).unwrap(), &ring.wp(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn witt_records_are_consistent(q in prop::sample::select(vec![2u64, 3]), n in 1usize..=3, seed in any::<u64>()) {
        let f = field(q);
        let ring = WittRing::new(&f, n).unwrap();
        let mut rng = gen::rng(seed, 5);
        let primes = gen::random_primes(&f, 2, 2, &mut rng);
        let beta = gen::random_witt(&ring, &primes, f.p() + 1, 3, &mut rng);
        match WittInput::new(&ring, &beta) {
            Ok(input) => {
                let r = witt_genus(&input).unwrap();
                prop_assert!(r.check().is_ok());
                prop_assert!(r.base_degree <= (f.p() as u64).pow(n as u32));
            }
            Err(e) => prop_assert!(matches!(e, genusfield::Error::Degenerate(_))),
        }
    }

    #[test]
    fn artin_schreier_records_are_consistent(q in prop::sample::select(vec![2u64, 3, 4, 5, 9]), seed in any::<u64>()) {
        let f = field(q);
        let mut rng = gen::rng(seed, 6);
        let primes = gen::random_primes(&f, 3, 2, &mut rng);
        let a = gen::random_ratfunc(&f, &primes, 2 * f.p(), 2 * f.p() as usize, &mut rng);
        if let Ok(input) = AsInput::new(&a) {
            let r = artin_schreier_genus(&input).unwrap();
            prop_assert!(r.check().is_ok());
            let p = f.p() as u64;
            let rank = input.form.terms.len() as u32 + u32::from(!input.form.polypart.is_zero());
            prop_assert_eq!(r.genus_degree, p.pow(rank - 1));
        }
    }

    #[test]
    fn kummer_records_are_consistent(q in prop::sample::select(vec![3u64, 4, 5, 7, 9]), raw in raw_poly(5), g in any::<u16>()) {
        let f = field(q);
        let d = poly_from(&f, &raw);
        prop_assume!(d.deg() >= 1);
        let d = d.monic();
        let gamma = f.nonzero().nth(g as usize % (q as usize - 1)).unwrap();
        let l = [2u32, 3, 5, 7].into_iter().find(|l| (q as u32 - 1).is_multiple_of(*l)).unwrap();
        if let Ok(input) = KummerInput::new(l, gamma, &d) {
            let r = kummer_genus(&input).unwrap();
            prop_assert!(r.check().is_ok());
            prop_assert!(r.infinity.e * r.infinity.f * r.infinity.h == l as u64);
        }
    }

    #[test]
    fn discrete_logs_invert_exponentiation(q in prop::sample::select(vec![2u64, 3, 5]), raw in raw_poly(4), v in prop::collection::vec(any::<u32>(), 4)) {
        let f = field(q);
        let n = poly_from(&f, &raw);
        prop_assume!(n.deg() >= 1);
        let n = n.monic();
        let g = Arc::new(UnitGroup::new(&n).unwrap());
        let coords: Vec<u64> = g.orders().iter().zip(&v).map(|(&d, &x)| x as u64 % d).collect();
        let a = g.element(&coords);
        prop_assert_eq!(g.dlog(&a).unwrap(), coords.clone());
        // characters are homomorphisms
        let exps: Vec<i64> = v.iter().take(g.rank()).map(|&x| x as i64).collect();
        let chi = Character::new(&g, &exps).unwrap();
        let b = g.element(&coords.iter().map(|x| x + 1).collect::<Vec<_>>());
        let ab = a.mul_mod(&b, &n);
        prop_assert_eq!(chi.eval(&ab).unwrap(), chi.eval(&a).unwrap() + chi.eval(&b).unwrap());
    }
}

#[test]
fn ratfunc_field_axioms_spot_check() {
    let f = field(9);
    let a = parse_ratfunc(&f, "u/(T^2+1) + T").unwrap();
    let b = parse_ratfunc(&f, "(T+u)/(T^3)").unwrap();
    assert_eq!(&(&a * &b).checked_div(&b).unwrap(), &a);
    assert_eq!(&(&a + &b) - &b, a);
    assert!(RatFunc::new(Poly::one(&f), Poly::zero(&f)).is_err());
}
