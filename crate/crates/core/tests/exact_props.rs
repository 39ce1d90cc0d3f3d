use mcf_core::exact::RationalInterval;
use mcf_core::{BigInt, BigRational, Exact};
use proptest::prelude::*;

fn surd_in(d: u64) -> impl Strategy<Value = Exact> {
    (-50i64..50, prop_oneof![-9i64..-1, 1i64..9], 1i64..30)
        .prop_map(move |(p, q, r)| Exact::surd(p, q, d, r).unwrap())
}

fn any_surd() -> impl Strategy<Value = Exact> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7), Just(13), Just(94)].prop_flat_map(surd_in)
}

fn pair_in_one_field() -> impl Strategy<Value = (Exact, Exact)> {
    prop_oneof![Just(2u64), Just(5), Just(11)].prop_flat_map(|d| (surd_in(d), surd_in(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_operations_round_trip((a, b) in pair_in_one_field()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&(&a * &b) / &b, a.clone());
        prop_assert_eq!(&a * &a.recip(), Exact::one());
    }

    #[test]
    fn canonical_form_is_unique(x in any_surd(), k in 2i64..20) {
        let s = x.as_surd().unwrap();
        let scaled = Exact::surd(s.p() * k, s.q() * k, s.d(), s.r() * k).unwrap();
        prop_assert_eq!(scaled, x);
    }

    #[test]
    fn order_matches_floats((a, b) in pair_in_one_field()) {
        let (fa, fb) = (a.to_f64(), b.to_f64());
        prop_assume!((fa - fb).abs() > 1e-9);
        prop_assert_eq!(a.try_cmp(&b).unwrap(), fa.partial_cmp(&fb).unwrap());
    }

    #[test]
    fn floor_brackets_value(x in any_surd()) {
        let n = x.floor();
        let below = &x - &Exact::integer(n.clone());
        prop_assert!(below.signum() >= 0);
        prop_assert!(below.try_cmp(&Exact::one()).unwrap().is_lt());
    }

    #[test]
    fn approximations_enclose_and_nest(x in any_surd(), bits in 4u32..200) {
        let coarse = x.approximate(&BigRational::new(1.into(), BigInt::from(2).pow(bits)));
        let fine = x.approximate(&BigRational::new(1.into(), BigInt::from(2).pow(bits + 7)));
        prop_assert!(coarse.width() <= BigRational::new(1.into(), BigInt::from(2).pow(bits)));
        prop_assert!(coarse.contains_interval(&fine));
        let lo = Exact::Rational(fine.lo().clone());
        let hi = Exact::Rational(fine.hi().clone());
        prop_assert!(!x.try_cmp(&lo).unwrap().is_lt() && !x.try_cmp(&hi).unwrap().is_gt());
    }

    #[test]
    fn cross_field_comparison_terminates(a in surd_in(2), b in surd_in(3)) {
        let ord = a.cmp_refined(&b, 64, 4096).unwrap();
        prop_assert!(!ord.is_eq());
        prop_assert_eq!(ord, a.to_f64().partial_cmp(&b.to_f64()).unwrap());
    }

    #[test]
    fn literals_round_trip(x in any_surd()) {
        let lit = x.to_literal();
        match mcf_core::exact::parse_literal(&lit).unwrap() {
            mcf_core::exact::Literal::Number(y) => prop_assert_eq!(y, x),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn interval_products_enclose(a in -20i64..20, b in 1i64..20, c in -20i64..20, d in 1i64..20) {
        let x = BigRational::new(a.into(), b.into());
        let y = BigRational::new(c.into(), d.into());
        let ix = RationalInterval::hull(x.clone(), &x + BigRational::new(1.into(), 7.into()));
        let iy = RationalInterval::hull(y.clone(), &y - BigRational::new(1.into(), 5.into()));
        prop_assert!((&ix * &iy).contains(&(&x * &y)));
        prop_assert!((&ix - &iy).contains(&(&x - &y)));
    }
}

#[test]
fn huge_radicand_with_known_field() {
    // 3·(2⁴⁰ + 1)²
    let f: BigInt = BigInt::from(2).pow(40) + 1;
    let d: BigInt = BigInt::from(3) * &f * &f;
    let x = Exact::surd_in_field(0, 1, d.clone(), 1, 3).unwrap();
    assert_eq!(x, Exact::surd(0, f, 3, 1).unwrap());
    assert!(Exact::surd(0, 1, d, 1).is_ok());
}
