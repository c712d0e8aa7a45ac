use num_integer::Roots;
use rayon::prelude::*;

use crate::arith;

/// Jacobi symbol `(a/n)` for odd positive `n`.
fn jacobi(a: i64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(d/n)` for `n >= 1`.
pub fn kronecker(d: i64, n: u64) -> i8 {
    assert!(n >= 1, "kronecker symbol needs n >= 1");
    let twos = n.trailing_zeros();
    let odd = n >> twos;
    let two = if d % 2 == 0 {
        0
    } else if matches!(d.rem_euclid(8), 1 | 7) {
        1
    } else {
        -1
    };
    let mut s = jacobi(d, odd);
    if twos % 2 == 1 {
        s *= two;
    } else if twos > 0 && two == 0 {
        s = 0;
    }
    s
}

/// Per-integer test: `d != 1` is a quadratic field discriminant.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => arith::is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && arith::is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Squarefree flags for `lo..hi` (index `k - lo`).
fn squarefree_window(lo: u64, hi: u64, primes: &[u64]) -> Vec<bool> {
    let mut flags = vec![true; (hi - lo) as usize];
    for &p in primes {
        let q = p * p;
        if q >= hi {
            break;
        }
        let mut k = lo.div_ceil(q) * q;
        while k < hi {
            flags[(k - lo) as usize] = false;
            k += q;
        }
    }
    if lo == 0 && hi > 0 {
        flags[0] = false;
    }
    flags
}

/// Whether `+k` and `-k` are fundamental, given squarefree flags for `k`
/// and `k / 4`.
fn signs_at(k: u64, sqf: impl Fn(u64) -> bool) -> (bool, bool) {
    match k % 4 {
        1 => (k > 1 && sqf(k), false),
        3 => (false, sqf(k)),
        0 => {
            let j = k / 4;
            let pos = matches!(j % 4, 2 | 3) && sqf(j);
            let neg = matches!(j % 4, 1 | 2) && sqf(j);
            (pos, neg)
        }
        _ => (false, false),
    }
}

/// All fundamental discriminants with `1 < |d| <= x`, ordered by `|d|` and
/// then negative before positive.
pub fn fundamental_discs(x: u64) -> Vec<i64> {
    if x < 3 {
        return Vec::new();
    }
    let primes = arith::primes_up_to(x.sqrt());
    let sqf = squarefree_window(0, x + 1, &primes);
    let mut out = Vec::new();
    for k in 3..=x {
        let (pos, neg) = signs_at(k, |n| sqf[n as usize]);
        if neg {
            out.push(-(k as i64));
        }
        if pos {
            out.push(k as i64);
        }
    }
    out
}

const COUNT_CHUNK: u64 = 1 << 16;

/// Number of quadratic fields with `|d| <= x`, by a segmented sieve.
pub fn count_quadratic_q(x: u64) -> u64 {
    if x < 3 {
        return 0;
    }
    let primes = arith::primes_up_to(x.sqrt());
    let chunks = x.div_ceil(COUNT_CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * COUNT_CHUNK + 1;
            let hi = ((c + 1) * COUNT_CHUNK).min(x) + 1;
            let own = squarefree_window(lo, hi, &primes);
            // k / 4 ranges over a quarter-size window
            let qlo = lo / 4;
            let qhi = (hi - 1) / 4 + 1;
            let quarter = squarefree_window(qlo, qhi, &primes);
            let mut n = 0;
            for k in lo.max(3)..hi {
                let (pos, neg) = signs_at(k, |m| {
                    if m == k {
                        own[(k - lo) as usize]
                    } else {
                        quarter[(m - qlo) as usize]
                    }
                });
                n += pos as u64 + neg as u64;
            }
            n
        })
        .sum()
}
