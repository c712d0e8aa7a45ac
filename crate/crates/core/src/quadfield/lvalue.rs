use serde::Serialize;

use super::{kronecker, QuadError};
use crate::interval::ErrorInterval;

/// Terms allowed in a direct `L(2)` sum before giving up.
pub const MAX_TERMS: u64 = 200_000_000;

/// `chi_d(a)` for `a` in `0..|d|`, built multiplicatively with a linear
/// sieve.
pub fn character_table(d: i64) -> Vec<i8> {
    let n = d.unsigned_abs() as usize;
    let mut chi = vec![0i8; n.max(2)];
    chi[1] = 1;
    let mut primes: Vec<usize> = Vec::new();
    let mut spf = vec![0usize; n.max(2)];
    for a in 2..n {
        if spf[a] == 0 {
            spf[a] = a;
            primes.push(a);
            chi[a] = kronecker(d, a as u64);
        }
        for &p in &primes {
            if p > spf[a] || a * p >= n {
                break;
            }
            spf[a * p] = p;
            chi[a * p] = chi[a] * chi[p];
        }
    }
    chi.truncate(n);
    chi
}

/// A certified Dirichlet L-value `L(s, chi_d)`.
#[derive(Clone, Debug, Serialize)]
pub struct LValue {
    pub s: u32,
    pub chi_discriminant: i64,
    pub value: ErrorInterval,
    /// Terms summed; one period for `s = 1`.
    pub truncation_n: u64,
}

/// `L(1, chi_d)` from the finite closed forms over one period.
pub fn l_one(d: i64, chi: &[i8]) -> ErrorInterval {
    let n = d.unsigned_abs();
    let pi = ErrorInterval::pi();
    let nn = ErrorInterval::from_i64(n as i64);
    if d < 0 {
        // L = -pi / |d|^(3/2) * sum chi(a) a
        let s: i64 = chi
            .iter()
            .enumerate()
            .map(|(a, &c)| c as i64 * a as i64)
            .sum();
        -pi * ErrorInterval::from_i64(s) / (nn * nn.sqrt())
    } else {
        // L = -(2 / sqrt d) * sum_{a < d/2} chi(a) log sin(pi a / d)
        let mut acc = ErrorInterval::exact(0.0);
        for (a, &c) in chi.iter().enumerate().take(n.div_ceil(2) as usize).skip(1) {
            if c == 0 {
                continue;
            }
            let x = pi * ErrorInterval::from_i64(a as i64) / nn;
            let term = x.sin_quarter().ln();
            acc = if c > 0 { acc + term } else { acc - term };
        }
        -(ErrorInterval::exact(2.0) * acc) / nn.sqrt()
    }
}

/// Tail of `sum_{n > N} chi(n) / n^2` in absolute value.
///
/// Trivially at most `1/N`; by partial summation, with character sums over
/// any interval bounded by `|d|/2`, also at most `|d| / (2 N^2)`.
pub fn l_two_tail(d: i64, n: u64) -> f64 {
    let n = n as f64;
    let trivial = 1.0 / n;
    let abel = d.unsigned_abs() as f64 / (2.0 * n * n);
    (trivial.min(abel) * (1.0 + 1e-12)).next_up()
}

/// Smallest term count whose tail is at most `target`.
pub fn l_two_terms(d: i64, target: f64) -> u64 {
    let abs = d.unsigned_abs() as f64;
    let by_abel = (abs / (2.0 * target)).sqrt().ceil();
    let trivial = (1.0 / target).ceil();
    let mut n = (by_abel.min(trivial).max(1.0) * (1.0 + 1e-9)).ceil() as u64;
    while l_two_tail(d, n) > target {
        n += 1;
    }
    n
}

/// `L(2, chi_d)` by direct summation of `n` terms, tail included.
pub fn l_two_with_terms(d: i64, chi: &[i8], n: u64) -> ErrorInterval {
    let period = chi.len() as u64;
    let mut acc = ErrorInterval::exact(0.0);
    let one = ErrorInterval::exact(1.0);
    for k in 1..=n {
        let c = chi[(k % period) as usize];
        if c == 0 {
            continue;
        }
        let kk = ErrorInterval::from_u128((k as u128) * (k as u128));
        let term = one / kk;
        acc = if c > 0 { acc + term } else { acc - term };
    }
    acc.widen(l_two_tail(d, n))
}

/// `L(s, chi_d)` for `s` in `{1, 2}` with width at most `tol`.
pub fn l_value(d: i64, s: u32, tol: f64) -> Result<LValue, QuadError> {
    let chi = character_table(d);
    match s {
        1 => {
            let value = l_one(d, &chi);
            if value.width() > tol {
                return Err(QuadError::TolUnachievable {
                    tol,
                    required_terms: None,
                });
            }
            Ok(LValue {
                s,
                chi_discriminant: d,
                value,
                truncation_n: d.unsigned_abs(),
            })
        }
        2 => {
            // the tail widens both ends; leave room for rounding
            let n = l_two_terms(d, tol / 4.0);
            if n > MAX_TERMS {
                return Err(QuadError::TolUnachievable {
                    tol,
                    required_terms: Some(n),
                });
            }
            let value = l_two_with_terms(d, &chi, n);
            if value.width() > tol {
                return Err(QuadError::TolUnachievable {
                    tol,
                    required_terms: Some(n),
                });
            }
            Ok(LValue {
                s,
                chi_discriminant: d,
                value,
                truncation_n: n,
            })
        }
        _ => Err(QuadError::UnsupportedPoint(s)),
    }
}
