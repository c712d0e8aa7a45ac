use num_integer::Integer;
use serde::Serialize;

use super::{kronecker, QuadError, QuadInt, QuadOrder, QuadraticField};
use crate::arith::{self, mod_inverse};

/// Largest `b` range we are willing to scan for one rational prime.
const MAX_COEFF_SEARCH: i128 = 50_000_000;

/// Label of a prime ideal of `O_K`: `(p, r)` with `w = r mod P` for a prime
/// of degree one, `(p, p)` for an inert prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimeIdealKey {
    pub p: u64,
    pub r: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// A prime element generating a prime ideal of a class number one field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeElement {
    pub element: QuadInt,
    /// Absolute norm of the ideal.
    pub norm: u64,
    pub key: PrimeIdealKey,
    pub splitting: Splitting,
}

impl PrimeElement {
    pub fn rational_prime(&self) -> u64 {
        self.key.p
    }
}

/// Bound on `|b|` for an element of norm `+-p` after balancing by units.
fn coefficient_bound(field: &QuadraticField, p: u64) -> Result<i128, QuadError> {
    let ad = field.d().unsigned_abs() as f64;
    let p = p as f64;
    let bound = if field.d() < 0 {
        // |alpha|^2 = p and b sqrt|d| = alpha - conj(alpha)
        2.0 * (p / ad).sqrt()
    } else {
        // an associate has both embeddings in [sqrt(p/eps), sqrt(p eps)]
        let eps = field.regulator().hi().exp();
        (p.sqrt() * (eps.sqrt() + 1.0 / eps.sqrt())) / ad.sqrt()
    };
    let b = bound.floor() as i128 + 1;
    if b > MAX_COEFF_SEARCH {
        return Err(QuadError::SearchTooLarge {
            d: field.d(),
            p: p as u64,
        });
    }
    Ok(b)
}

/// Some element of norm `+p` or `-p`.
fn element_of_norm(field: &QuadraticField, o: &QuadOrder, p: u64) -> Result<QuadInt, QuadError> {
    let bmax = coefficient_bound(field, p)?;
    let d = field.d() as i128;
    let p = p as i128;
    let signs: &[i128] = if d < 0 { &[1] } else { &[1, -1] };
    for b in 1..=bmax {
        for &s in signs {
            // a^2 + t a b + n0 b^2 = s p, discriminant b^2 d + 4 s p
            let disc = b * b * d + 4 * s * p;
            let Some(r) = arith::exact_sqrt(disc) else {
                continue;
            };
            for root in [r, -r] {
                let num = -o.t * b + root;
                if num % 2 == 0 {
                    let x = QuadInt::new(num / 2, b);
                    debug_assert_eq!(o.norm(x)?, s * p);
                    return Ok(x);
                }
            }
        }
    }
    Err(QuadError::Inconsistent {
        d: field.d(),
        what: format!("no element of norm {p} found although h = 1"),
    })
}

fn key_of(o: &QuadOrder, x: QuadInt, p: u64) -> PrimeIdealKey {
    let pi = p as i128;
    let inv = mod_inverse(x.b, pi).expect("b is prime to p for a degree one prime");
    let r = (-x.a * inv).mod_floor(&pi);
    debug_assert_eq!(o.norm(QuadInt::new(-r, 1)).unwrap() % pi, 0);
    PrimeIdealKey { p, r: r as u64 }
}

/// Associates of `x` under roots of unity, and for real fields under the
/// powers of the unit that bring the two embeddings closest in size.
pub(crate) fn associates(
    field: &QuadraticField,
    o: &QuadOrder,
    x: QuadInt,
) -> Result<Vec<QuadInt>, QuadError> {
    let mut out = Vec::new();
    match field.d() {
        -4 => {
            let i = QuadInt::new(0, 1);
            let mut y = x;
            for _ in 0..4 {
                out.push(y);
                y = o.mul(y, i)?;
            }
        }
        -3 => {
            // w = (1 + sqrt -3)/2 is a primitive sixth root of unity
            let z = QuadInt::new(0, 1);
            let mut y = x;
            for _ in 0..6 {
                out.push(y);
                y = o.mul(y, z)?;
            }
        }
        d if d < 0 => {
            out.push(x);
            out.push(QuadInt::new(-x.a, -x.b));
        }
        _ => {
            // balance the two embeddings with powers of the unit
            let (t, u) = field.small_unit().ok_or(QuadError::Overflow)?;
            let b0 = o.t;
            let eps = QuadInt::new((t - u * b0) / 2, u);
            let eps_inv = o.conj(eps);
            let eps_inv = if field.unit().map(|e| e.norm) == Some(-1) {
                QuadInt::new(-eps_inv.a, -eps_inv.b)
            } else {
                eps_inv
            };
            let (s1, s2) = o.embeddings(x);
            let reg = field.regulator().mid();
            let k = ((s2.abs().ln() - s1.abs().ln()) / (2.0 * reg)).round() as i64;
            let base = if k >= 0 {
                o.mul(x, o.pow(eps, k as u32)?)?
            } else {
                o.mul(x, o.pow(eps_inv, (-k) as u32)?)?
            };
            for y in [o.mul(base, eps_inv)?, base, o.mul(base, eps)?] {
                out.push(y);
                out.push(QuadInt::new(-y.a, -y.b));
            }
        }
    }
    Ok(out)
}

/// Canonical associate among the near-balanced ones: smallest `|b|`, then
/// smallest `|a|`, then nonnegative `a` and `b`.
fn normalise(field: &QuadraticField, o: &QuadOrder, x: QuadInt) -> Result<QuadInt, QuadError> {
    let cands = associates(field, o, x)?;
    Ok(*cands
        .iter()
        .min_by_key(|y| (y.b.abs(), y.a.abs(), y.a < 0, y.b < 0))
        .expect("at least one associate"))
}

/// One generator per prime ideal of norm at most `bound`, sorted by norm
/// and key. Requires class number one.
pub fn prime_elements(field: &QuadraticField, bound: u64) -> Result<Vec<PrimeElement>, QuadError> {
    if field.class_number() != 1 {
        return Err(QuadError::UnsupportedField {
            d: field.d(),
            h: field.class_number(),
        });
    }
    let o = field.order();
    let mut out = Vec::new();
    for p in arith::primes_up_to(bound) {
        match kronecker(field.d(), p) {
            -1 => {
                if p.checked_mul(p).is_some_and(|n| n <= bound) {
                    out.push(PrimeElement {
                        element: QuadInt::rational(p as i128),
                        norm: p * p,
                        key: PrimeIdealKey { p, r: p },
                        splitting: Splitting::Inert,
                    });
                }
            }
            0 => {
                let x = normalise(field, &o, element_of_norm(field, &o, p)?)?;
                out.push(PrimeElement {
                    element: x,
                    norm: p,
                    key: key_of(&o, x, p),
                    splitting: Splitting::Ramified,
                });
            }
            _ => {
                let x = normalise(field, &o, element_of_norm(field, &o, p)?)?;
                let y = normalise(field, &o, o.conj(x))?;
                for z in [x, y] {
                    out.push(PrimeElement {
                        element: z,
                        norm: p,
                        key: key_of(&o, z, p),
                        splitting: Splitting::Split,
                    });
                }
            }
        }
    }
    out.sort_by_key(|e| (e.norm, e.key));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elems(d: i64, bound: u64) -> Vec<(i128, i128, u64)> {
        let k = QuadraticField::new(d).unwrap();
        prime_elements(&k, bound)
            .unwrap()
            .into_iter()
            .map(|e| (e.element.a, e.element.b, e.norm))
            .collect()
    }

    #[test]
    fn gaussian_primes() {
        assert_eq!(elems(-4, 5), vec![(1, 1, 2), (2, -1, 5), (2, 1, 5)]);
        assert_eq!(elems(-4, 9).last(), Some(&(3, 0, 9)));
    }

    #[test]
    fn real_quadratic_primes() {
        let e = elems(8, 7);
        assert_eq!(e, vec![(0, 1, 2), (3, -1, 7), (3, 1, 7)]);
        let k = QuadraticField::new(5).unwrap();
        let o = k.order();
        for p in prime_elements(&k, 1000).unwrap() {
            assert_eq!(o.norm(p.element).unwrap().unsigned_abs() as u64, p.norm);
        }
    }

    #[test]
    fn keys_distinguish_conjugates() {
        let k = QuadraticField::new(-7).unwrap();
        let ps = prime_elements(&k, 100).unwrap();
        let mut keys: Vec<_> = ps.iter().map(|p| p.key).collect();
        keys.dedup();
        assert_eq!(keys.len(), ps.len());
    }

    #[test]
    fn class_number_must_be_one() {
        let k = QuadraticField::new(-23).unwrap();
        assert!(matches!(
            prime_elements(&k, 10),
            Err(QuadError::UnsupportedField { d: -23, h: 3 })
        ));
    }
}
