//! Small integer helpers shared by the number-theoretic modules.

use num_integer::{Integer, Roots};

/// Primes `p <= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Prime factorisation by trial division, primes ascending.
pub fn factor(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factor(n as u128).iter().all(|&(_, e)| e == 1)
}

/// Squarefree part of a nonzero integer, sign kept.
pub fn squarefree_part(n: i128) -> i128 {
    assert!(n != 0);
    let core: i128 = factor(n.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p as i128)
        .product();
    core * n.signum()
}

/// Square root of `n` if `n` is a perfect square.
pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

pub fn is_square(n: i128) -> bool {
    exact_sqrt(n).is_some()
}

/// 2-adic valuation; `None` for zero.
pub fn v2(n: i128) -> Option<u32> {
    (n != 0).then(|| n.trailing_zeros())
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let g = a.mod_floor(&m).extended_gcd(&m);
    (g.gcd == 1).then(|| g.x.mod_floor(&m))
}

/// Fundamental discriminant of `Q(sqrt(n))` for a non-square `n`.
pub fn field_discriminant(n: i128) -> i128 {
    let m = squarefree_part(n);
    assert!(m != 1, "Q(sqrt(1)) is not a quadratic field");
    if m.mod_floor(&4) == 1 {
        m
    } else {
        4 * m
    }
}
