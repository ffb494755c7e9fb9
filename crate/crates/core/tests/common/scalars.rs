//! Seeded random scalars and an exact field-law sweep over them. Every law is
//! checked twice: symbolically, and after evaluation at a random point with
//! plain Gaussian arithmetic.

use nilalg_core::{GaussianRational, Poly, Scalar};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    let re = GaussianRational::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    let im = GaussianRational::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    if rng.gen_bool(0.4) {
        &re + &(&im * &GaussianRational::i())
    } else {
        re
    }
}

fn poly(rng: &mut ChaCha8Rng) -> Poly {
    let len = rng.gen_range(0..=3);
    Poly::new((0..len).map(|_| gaussian(rng)).collect())
}

pub fn scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let num = poly(rng);
    let mut den = poly(rng);
    while den.is_zero() {
        den = poly(rng);
    }
    Scalar::from_parts(num, den).unwrap()
}

/// Runs `cases` rounds of field axioms and specialization checks. Returns the
/// number of individual checks performed and a description of each failure.
pub fn field_law_sweep(rng: &mut ChaCha8Rng, cases: usize) -> (usize, Vec<String>) {
    let mut checks = 0;
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: &str, case: usize| {
        checks += 1;
        if !ok {
            failures.push(format!("case {case}: {what}"));
        }
    };
    let zero = Scalar::zero();
    let one = Scalar::one();
    for case in 0..cases {
        let (x, y, z) = (scalar(rng), scalar(rng), scalar(rng));
        check(&x + &y == &y + &x, "a + b = b + a", case);
        check(&x * &y == &y * &x, "ab = ba", case);
        check(&(&x + &y) + &z == &x + &(&y + &z), "(a + b) + c = a + (b + c)", case);
        check(&(&x * &y) * &z == &x * &(&y * &z), "(ab)c = a(bc)", case);
        check(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), "a(b + c) = ab + ac", case);
        check(&x + &zero == x && &x * &one == x, "identities", case);
        check((&x + &(-&x)).is_zero(), "a + (-a) = 0", case);
        if !x.is_zero() {
            check(&x * &x.inv().unwrap() == one, "a a^-1 = 1", case);
        }
        let canonical = x.denom().is_monic() && x.numer().gcd(x.denom()).is_constant();
        check(canonical, "canonical form", case);

        let t = gaussian(rng);
        let (Ok(xt), Ok(yt)) = (x.eval(&t), y.eval(&t)) else {
            continue;
        };
        let eval = |s: &Scalar| s.eval(&t).ok();
        check(eval(&(&x + &y)) == Some(&xt + &yt), "(a + b)(t) = a(t) + b(t)", case);
        check(eval(&(&x - &y)) == Some(&xt - &yt), "(a - b)(t) = a(t) - b(t)", case);
        check(eval(&(&x * &y)) == Some(&xt * &yt), "(ab)(t) = a(t) b(t)", case);
        if !y.is_zero() && !yt.is_zero() {
            let q = x.checked_div(&y).unwrap();
            check(eval(&q) == Some(xt.checked_div(&yt).unwrap()), "(a / b)(t) = a(t) / b(t)", case);
        }
    }
    (checks, failures)
}
