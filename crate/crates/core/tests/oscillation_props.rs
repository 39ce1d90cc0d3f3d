use std::cmp::Ordering;

use mcf_core::legendre;
use mcf_core::mu;
use mcf_core::oscillation::{self, CompareOptions, CrossingStatus, Side};
use mcf_core::{BigRational, Exact};

fn surd(p: i64, q: i64, d: i64, r: i64) -> Exact {
    Exact::surd(p, q, d, r).unwrap()
}

fn t(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn difference_is_affine_between_breakpoints() {
    let (alpha, beta) = (Exact::sqrt_of(2).unwrap(), surd(1, 1, 3, 2));
    let opts = CompareOptions::default();
    let report = oscillation::find_crossings(&alpha, &beta, &t(10), &t(100_000), &opts).unwrap();
    let (_, _, ca) = legendre::chain_covering(&alpha, &t(100_000), 200).unwrap();
    let (_, _, cb) = legendre::chain_covering(&beta, &t(100_000), 200).unwrap();
    for w in report.rows.windows(2) {
        let (lo, hi) = (&w[0].t, &w[1].t);
        let mid = (lo + hi) / t(2);
        let third = (lo * t(2) + hi) / t(3);
        for chain in [&ca, &cb] {
            let at = |x: &BigRational| mu::mu_eval(chain, x).unwrap();
            let (a, m, b) = (at(lo), at(&mid), at(hi));
            assert_eq!(&(&a + &b) / &Exact::integer(2), m);
            let expect = &(&(&a * &Exact::integer(2)) + &b) / &Exact::integer(3);
            assert_eq!(expect, at(&third));
        }
    }
}

#[test]
fn crossings_are_sound_and_monotone_in_the_window() {
    let (alpha, beta) = (Exact::sqrt_of(2).unwrap(), surd(1, 1, 3, 2));
    let opts = CompareOptions::default();
    let mut last = 0;
    for hi in [1_000i64, 10_000, 100_000, 1_000_000] {
        let r = oscillation::find_crossings(&alpha, &beta, &t(10), &t(hi), &opts).unwrap();
        assert!(r.precondition_naturel);
        assert!(r.dominance.is_none());
        assert!(r.certified_count() >= last);
        last = r.certified_count();
        assert!(r.crossings.windows(2).all(|w| w[0].hi <= w[1].lo));
        for c in r.crossings.iter().filter(|c| c.status == CrossingStatus::Certified) {
            let sign = |x: &BigRational| r.rows.iter().find(|row| &row.t == x).unwrap().sign.unwrap();
            assert_eq!(sign(&c.lo), sign(&c.hi).reverse());
        }
    }
    assert!(last >= 5);
}

#[test]
fn dominance_holds_on_late_windows() {
    let opts = CompareOptions::default();
    let golden = surd(1, 1, 5, 2);
    for alpha in [Exact::sqrt_of(2).unwrap(), surd(1, 1, 3, 2)] {
        assert!(oscillation::proposition1_check(&alpha, &golden, &opts).unwrap());
        let big = t(10_000_000);
        let r = oscillation::find_crossings(&alpha, &golden, &big, &(&big * t(4)), &opts).unwrap();
        assert_eq!(r.certified_count(), 0);
        assert!(r.rows.iter().all(|row| row.sign == Some(Ordering::Less)));
        assert_eq!(r.dominance.unwrap().side, Side::AlphaBelow);
        // the same pair the other way round
        let r = oscillation::find_crossings(&golden, &alpha, &big, &(&big * t(4)), &opts).unwrap();
        assert_eq!(r.dominance.unwrap().side, Side::BetaBelow);
    }
}

#[test]
fn narrow_cap_leaves_nothing_silently_dropped() {
    // with a cap this low most signs stay undecided, and must be reported
    let opts = CompareOptions { precision_bits: 2, cap_bits: 4, max_terms: 200 };
    let r = oscillation::find_crossings(&Exact::sqrt_of(2).unwrap(), &surd(1, 1, 3, 2), &t(10), &t(100_000), &opts)
        .unwrap();
    let undecided = r.rows.iter().filter(|row| row.sign.is_none()).count();
    assert!(undecided > 0);
    assert!(r.undecided_count() > 0);
}
