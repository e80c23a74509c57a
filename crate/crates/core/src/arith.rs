//! Small exact-arithmetic utilities shared by the criteria and class-size
//! computations.

use num_bigint::BigUint;
use num_traits::One;

pub(crate) fn factorial_big(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

/// n! for n <= 20 (the largest factorial that fits in u64).
pub(crate) fn factorial_u64(n: usize) -> u64 {
    assert!(n <= 20, "factorial_u64 overflows past 20!");
    (2..=n as u64).product::<u64>().max(1)
}

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// increasing prime order. Intended for the small divisors 1 + n(n-1)/2 and
/// n(n-1)/2; fine for anything up to ~2^40.
pub(crate) fn factorize(mut x: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= x {
        if x.is_multiple_of(p) {
            let mut e = 0;
            while x.is_multiple_of(p) {
                x /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if x > 1 {
        factors.push((x, 1));
    }
    factors
}

/// Multiplicity of the prime `p` in m! (Legendre's formula).
pub(crate) fn prime_multiplicity_in_factorial(m: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = p;
    while q <= m {
        total += m / q;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    total
}

/// n! mod m without big integers.
pub(crate) fn factorial_mod(n: u64, m: u64) -> u64 {
    assert!(m > 0);
    let mut acc = 1 % m;
    for k in 2..=n {
        acc = acc * (k % m) % m;
        if acc == 0 {
            break;
        }
    }
    acc
}
