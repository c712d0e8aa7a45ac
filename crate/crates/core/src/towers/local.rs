use serde::Serialize;

use super::TowerError;
use crate::arith::{self, exact_sqrt};
use crate::quadfield::{kronecker, QuadInt, QuadOrder};

/// Galois group of the normal closure of a quartic tower `L/K/Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GaloisType {
    D4,
    C4,
    V4,
}

impl std::fmt::Display for GaloisType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GaloisType::D4 => "D4",
            GaloisType::C4 => "C4",
            GaloisType::V4 => "V4",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TwoKind {
    Inert,
    Ramified,
    /// `w = rho mod P^8`.
    Split {
        rho: i128,
    },
}

/// A prime of `O_K` above 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct TwoPrime {
    kind: TwoKind,
    e: u32,
    norm: u64,
}

const HENSEL_BITS: u32 = 8;

fn two_primes(o: &QuadOrder) -> Vec<TwoPrime> {
    match kronecker(o.d, 2) {
        0 => vec![TwoPrime {
            kind: TwoKind::Ramified,
            e: 2,
            norm: 2,
        }],
        -1 => vec![TwoPrime {
            kind: TwoKind::Inert,
            e: 1,
            norm: 4,
        }],
        _ => {
            let m = 1i128 << HENSEL_BITS;
            let f = |x: i128| (x * x - o.t * x + o.n0).rem_euclid(m);
            // f' = 2x - t is odd, so each root mod 2 lifts uniquely
            (0..2)
                .map(|r| {
                    let rho = (0..m)
                        .find(|&x| x % 2 == r && f(x) == 0)
                        .expect("Hensel lift");
                    TwoPrime {
                        kind: TwoKind::Split { rho },
                        e: 1,
                        norm: 2,
                    }
                })
                .collect()
        }
    }
}

/// `min(v_P(x), cap)`; `cap` must stay below `HENSEL_BITS`.
fn valuation(o: &QuadOrder, p: &TwoPrime, x: QuadInt, cap: u32) -> Result<u32, TowerError> {
    let v = match p.kind {
        TwoKind::Inert => arith::v2(x.a)
            .unwrap_or(u32::MAX)
            .min(arith::v2(x.b).unwrap_or(u32::MAX)),
        TwoKind::Ramified => arith::v2(o.norm(x)?).unwrap_or(u32::MAX),
        TwoKind::Split { rho } => {
            let m = 1i128 << HENSEL_BITS;
            let y = (x.a.rem_euclid(m) + x.b.rem_euclid(m) * rho).rem_euclid(m);
            arith::v2(y).unwrap_or(HENSEL_BITS)
        }
    };
    Ok(v.min(cap))
}

fn describe(o: &QuadOrder, delta: QuadInt) -> (i64, String) {
    (o.d, delta.to_string())
}

/// Exponent of `P` in `d_{L/K}` for `L = K(sqrt(delta))`, `delta` squarefree.
///
/// If `P | delta` the extension is ramified with exponent `2e + 1`.
/// Otherwise, with `k` the largest `v_P(delta - x^2)` capped at `2e`,
/// the exponent is `2e + 1 - k`, and `k = 2e` means `P` is unramified.
fn local_exponent(o: &QuadOrder, p: &TwoPrime, delta: QuadInt) -> Result<u32, TowerError> {
    let e2 = 2 * p.e;
    let v = valuation(o, p, delta, 2)?;
    if v >= 2 {
        let (d, delta) = describe(o, delta);
        return Err(TowerError::NotSquarefree { d, delta });
    }
    if v == 1 {
        return Ok(e2 + 1);
    }
    // residues mod 4 O_K cover O_K / P^{2e}
    let mut k = 0;
    for a in 0..4 {
        for b in 0..4 {
            let x = QuadInt::new(a, b);
            let sq = o.mul(x, x)?;
            let diff = QuadInt::new(delta.a - sq.a, delta.b - sq.b);
            k = k.max(valuation(o, p, diff, e2)?);
        }
    }
    if k >= e2 {
        return Ok(0);
    }
    if k % 2 == 0 {
        let (d, delta) = describe(o, delta);
        return Err(TowerError::LocalInconsistency { d, delta });
    }
    Ok(e2 + 1 - k)
}

/// Rejects `delta` divisible by the square of a prime ideal.
fn check_squarefree(o: &QuadOrder, delta: QuadInt, n: u128) -> Result<(), TowerError> {
    for (p, k) in arith::factor(n) {
        if p == 2 {
            continue;
        }
        let ok = match k {
            1 => true,
            // an inert p, or both primes over a split p, each once
            2 => {
                let p = p as i128;
                kronecker(o.d, p as u64) != 0 && delta.a % p == 0 && delta.b % p == 0
            }
            _ => false,
        };
        if !ok {
            let (d, delta) = describe(o, delta);
            return Err(TowerError::NotSquarefree { d, delta });
        }
    }
    Ok(())
}

/// `N(d_{L/K})` for `L = K(sqrt(delta))` with `delta` squarefree and not a
/// square.
pub(crate) fn relative_discriminant(o: &QuadOrder, delta: QuadInt) -> Result<u64, TowerError> {
    let n = o.norm(delta)?.unsigned_abs();
    if n == 0 {
        let (d, delta) = describe(o, delta);
        return Err(TowerError::SquareDelta { d, delta });
    }
    check_squarefree(o, delta, n)?;
    let mut out = n >> n.trailing_zeros();
    for p in two_primes(o) {
        let v = local_exponent(o, &p, delta)?;
        out = p
            .norm
            .checked_pow(v)
            .and_then(|f| out.checked_mul(f as u128))
            .ok_or(crate::quadfield::QuadError::Overflow)?;
    }
    u64::try_from(out).map_err(|_| crate::quadfield::QuadError::Overflow.into())
}

/// Galois type of the normal closure of `K(sqrt(delta))` over `Q`.
///
/// The tower is Galois over `Q` exactly when `N(delta)` is a square in `K`:
/// a rational square gives `V4`, `m` times a square gives `C4`.
pub fn galois_type(o: &QuadOrder, delta: QuadInt) -> Result<GaloisType, TowerError> {
    let n = o.norm(delta)?;
    let m = if o.d % 4 == 0 { o.d / 4 } else { o.d } as i128;
    Ok(if exact_sqrt(n).is_some() {
        GaloisType::V4
    } else if n.checked_mul(m).and_then(exact_sqrt).is_some() {
        GaloisType::C4
    } else {
        GaloisType::D4
    })
}

/// Smallest prime `p` not dividing `d_K` that divides `N(d_{L/K})` exactly
/// once. Such a `p` has one ramified and one unramified prime above it,
/// which forces the tower to be non-Galois.
pub fn lemma_tower_witness(d_k: i64, rel_disc_norm: u64) -> Option<u64> {
    arith::factor(rel_disc_norm as u128)
        .into_iter()
        .filter(|&(p, k)| k == 1 && d_k % p as i64 != 0)
        .map(|(p, _)| p as u64)
        .min()
}
