//! Shared random generators for the integration suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ratcode::funcfield::{Divisor, Place};
use ratcode::gf::{Elem, FieldSpec};
use ratcode::poly::{irreducibles_up_to, Poly};
use ratcode::RatFun;

pub fn random_poly(f: &FieldSpec, rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<Elem> = (0..=deg).map(|_| rng.gen_range(0..f.q())).collect();
    Poly::new(coeffs)
}

pub fn random_ratfun(f: &FieldSpec, rng: &mut ChaCha8Rng, max_deg: usize) -> RatFun {
    loop {
        let num = random_poly(f, rng, max_deg);
        let den = random_poly(f, rng, max_deg);
        if num.is_zero() || den.is_zero() {
            continue;
        }
        let fun = RatFun::new(num, den, f).expect("nonzero denominator");
        if !fun.is_zero() {
            return fun;
        }
    }
}

pub fn random_divisor(f: &FieldSpec, rng: &mut ChaCha8Rng, effective: bool) -> Divisor {
    let irreducibles = irreducibles_up_to(f, 2);
    let mut d = Divisor::zero();
    let lo = if effective { 0 } else { -2 };
    for _ in 0..rng.gen_range(0..3usize) {
        let p = &irreducibles[rng.gen_range(0..irreducibles.len())];
        d.add_term(Place::Finite(p.clone()), rng.gen_range(lo..=2));
    }
    d.add_term(Place::Infinity, rng.gen_range(lo..=2));
    d
}
