use std::collections::BTreeSet;

use serde::Serialize;

use super::AsymError;
use crate::arith::{self, field_discriminant};
use crate::quadfield::{fundamental_discs, kronecker, QuadraticField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankBase {
    Rational,
    /// A quadratic field given by its discriminant.
    Quadratic(i64),
}

/// A bound on the number of `C_l` extensions of `base` unramified outside
/// `s` and the infinite places.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankBoundQuery {
    pub base: RankBase,
    pub ell: u64,
    /// Rational primes; over a quadratic base every prime above them counts.
    pub s: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankBound {
    pub s_exponent: u32,
    /// `(l^s - 1) / (l - 1)`.
    pub bound: u128,
}

fn check_prime(p: u64) -> Result<(), AsymError> {
    if arith::factor(p as u128) == [(p as u128, 1)] {
        Ok(())
    } else {
        Err(AsymError::NotPrime(p))
    }
}

/// Upper bound on `rk_l` of the class group of a quadratic field: the
/// genus rank `t - 1` for `l = 2`, `v_l(h)` otherwise.
fn class_rank_bound(d: i64, ell: u64) -> Result<u32, AsymError> {
    if ell == 2 {
        // prime discriminants: one per odd prime, plus one for the 2-part
        let t = arith::factor(d.unsigned_abs() as u128).len();
        return Ok(t as u32 - 1);
    }
    let mut h = QuadraticField::new(d)?.class_number();
    let mut v = 0;
    while h % ell == 0 {
        h /= ell;
        v += 1;
    }
    Ok(v)
}

/// `s = rk_l(Cl) + |S_1| + 2 deg + (r_1 if l = 2)` and the resulting count
/// bound, `S_1` being the primes of `S` not above `l`.
pub fn ell_rank_bound(q: &RankBoundQuery) -> Result<RankBound, AsymError> {
    check_prime(q.ell)?;
    for &p in &q.s {
        check_prime(p)?;
    }
    let primes: BTreeSet<u64> = q.s.iter().copied().filter(|&p| p != q.ell).collect();
    let (rank, s1, m, r1) = match q.base {
        RankBase::Rational => (0, primes.len() as u32, 1, 1),
        RankBase::Quadratic(d) => {
            let k = QuadraticField::new(d)?;
            let s1 = primes
                .iter()
                .map(|&p| if kronecker(d, p) == 1 { 2 } else { 1 })
                .sum();
            (class_rank_bound(d, q.ell)?, s1, 2, k.signature().0)
        }
    };
    let s = rank + s1 + 2 * m + if q.ell == 2 { r1 } else { 0 };
    let bound = (q.ell as u128)
        .checked_pow(s)
        .map(|p| (p - 1) / (q.ell as u128 - 1))
        .ok_or(AsymError::Overflow { s })?;
    Ok(RankBound {
        s_exponent: s,
        bound,
    })
}

/// Number of quadratic fields unramified outside `S` and infinity:
/// `2^(a + b) - 1` with `a` odd primes in `S` and `b = 2` if `2 in S`.
pub fn exact_quadratic_ramified_count(s: &[u64]) -> u64 {
    let set: BTreeSet<u64> = s.iter().copied().collect();
    let a = set.iter().filter(|&&p| p != 2).count() as u32;
    let b = if set.contains(&2) { 2 } else { 0 };
    (1u64 << (a + b)) - 1
}

/// The discriminants of the quadratic fields unramified outside `S`, by
/// running over `+-` products of subsets of `S` and keeping the field
/// discriminants supported on `S`.
pub fn quadratic_fields_unramified_outside(s: &[u64]) -> Vec<i128> {
    let set: Vec<u64> = s
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(set.len() <= 24, "too many primes");
    let supported = |d: i128| {
        arith::factor(d.unsigned_abs())
            .iter()
            .all(|&(p, _)| set.contains(&(p as u64)))
    };
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << set.len()) {
        let n: i128 = set
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p as i128)
            .product();
        for m in [n, -n] {
            if m == 1 {
                continue;
            }
            let d = field_discriminant(m);
            if supported(d) {
                out.insert(d);
            }
        }
    }
    out.into_iter().collect()
}

/// The same list by filtering all fundamental discriminants up to
/// `8 prod(S)`, when that is at most `limit`.
pub fn quadratic_fields_by_sieve(s: &[u64], limit: u64) -> Option<Vec<i128>> {
    let set: BTreeSet<u64> = s.iter().copied().collect();
    let bound = set
        .iter()
        .filter(|&&p| p != 2)
        .try_fold(8u64, |acc, &p| acc.checked_mul(p))
        .filter(|&b| b <= limit)?;
    Some(
        fundamental_discs(bound)
            .into_iter()
            .map(|d| d as i128)
            .filter(|&d| {
                arith::factor(d.unsigned_abs())
                    .iter()
                    .all(|&(p, _)| set.contains(&(p as u64)))
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &[u64]) -> RankBound {
        ell_rank_bound(&RankBoundQuery {
            base: RankBase::Rational,
            ell: 2,
            s: s.to_vec(),
        })
        .unwrap()
    }

    #[test]
    fn rational_examples() {
        assert_eq!(
            q(&[2]),
            RankBound {
                s_exponent: 3,
                bound: 7
            }
        );
        assert_eq!(
            q(&[2, 3]),
            RankBound {
                s_exponent: 4,
                bound: 15
            }
        );
        assert_eq!(
            q(&[5]),
            RankBound {
                s_exponent: 4,
                bound: 15
            }
        );
        assert_eq!(exact_quadratic_ramified_count(&[2]), 3);
        assert_eq!(exact_quadratic_ramified_count(&[2, 3]), 7);
        assert_eq!(exact_quadratic_ramified_count(&[5]), 1);
        assert_eq!(exact_quadratic_ramified_count(&[3]), 1);
        assert_eq!(exact_quadratic_ramified_count(&[]), 0);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(quadratic_fields_unramified_outside(&[2]), vec![-8, -4, 8]);
        assert_eq!(quadratic_fields_unramified_outside(&[3]), vec![-3]);
        assert_eq!(quadratic_fields_unramified_outside(&[5]), vec![5]);
        assert!(quadratic_fields_unramified_outside(&[]).is_empty());
        assert_eq!(quadratic_fields_unramified_outside(&[2, 3, 5, 7]).len(), 31);
        for s in [&[2u64, 3, 5, 7][..], &[3, 11], &[2, 13], &[]] {
            assert_eq!(
                quadratic_fields_by_sieve(s, 1 << 20),
                Some(quadratic_fields_unramified_outside(s))
            );
        }
        assert_eq!(quadratic_fields_by_sieve(&[101, 103, 107], 1 << 20), None);
    }

    #[test]
    fn quadratic_base() {
        // Q(i), l = 2, S = {5}: 5 splits, class group trivial
        let b = ell_rank_bound(&RankBoundQuery {
            base: RankBase::Quadratic(-4),
            ell: 2,
            s: vec![5],
        })
        .unwrap();
        assert_eq!(b.s_exponent, 2 + 4);
        // Q(sqrt -23), l = 3: h = 3
        let b = ell_rank_bound(&RankBoundQuery {
            base: RankBase::Quadratic(-23),
            ell: 3,
            s: vec![],
        })
        .unwrap();
        assert_eq!(
            b,
            RankBound {
                s_exponent: 5,
                bound: 121
            }
        );
    }

    #[test]
    fn rejects_composites() {
        let r = ell_rank_bound(&RankBoundQuery {
            base: RankBase::Rational,
            ell: 4,
            s: vec![],
        });
        assert_eq!(r, Err(AsymError::NotPrime(4)));
    }
}
