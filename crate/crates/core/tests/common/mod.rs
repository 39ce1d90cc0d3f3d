#![allow(dead_code)]

use mcf_core::cf::CFExpansion;
use mcf_core::Exact;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Eventually periodic word with `a0 < 3`, a preperiod of length `< 3` and
/// a period of length `1..=max_period`, quotients in `1..=max_quotient`.
pub fn random_word(rng: &mut ChaCha8Rng, max_period: usize, max_quotient: u32) -> CFExpansion {
    let a0: u32 = rng.gen_range(0..3);
    let pre: Vec<u32> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(1..=max_quotient)).collect();
    let k = rng.gen_range(1..=max_period);
    let period: Vec<u32> = (0..k).map(|_| rng.gen_range(1..=max_quotient)).collect();
    CFExpansion::periodic(a0, pre, period).unwrap()
}

/// Irrational `(p + q√d)/r` with small random components.
pub fn random_surd(rng: &mut ChaCha8Rng) -> Exact {
    loop {
        let p: i64 = rng.gen_range(-20..=20);
        let q: i64 = rng.gen_range(1..=6) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let d: i64 = rng.gen_range(2..=60);
        let r: i64 = rng.gen_range(1..=12);
        let x = Exact::surd(p, q, d, r).unwrap();
        if !x.is_rational() {
            return x;
        }
    }
}
