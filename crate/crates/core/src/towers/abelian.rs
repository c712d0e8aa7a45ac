//! Independent discriminants for the towers that are abelian over `Q`.

use serde::Serialize;

use super::local::{galois_type, GaloisType};
use super::TowerError;
use crate::arith::{self, exact_sqrt, field_discriminant, squarefree_part};
use crate::quadfield::{is_square_sqrt_form, QuadError, QuadInt, QuadOrder};

/// `L = Q(sqrt(A (D + B sqrt D)))` with `D = B^2 + C^2` squarefree,
/// `A` squarefree and odd, `gcd(A, D) = 1`, `B, C > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct C4NormalForm {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
    pub conductor: u128,
}

impl C4NormalForm {
    /// `d_L = f^2 D` where `D` is the discriminant of the quadratic subfield.
    pub fn discriminant(&self) -> u128 {
        let dk = field_discriminant(self.d).unsigned_abs();
        self.conductor * self.conductor * dk
    }
}

fn squarefree_core(d: i64) -> i128 {
    (if d % 4 == 0 { d / 4 } else { d }) as i128
}

/// Coordinates `(U, V)` with `4 delta = U + V sqrt(m)`.
fn four_delta(o: &QuadOrder, delta: QuadInt) -> (i128, i128) {
    let (x, y) = o.sqrt_coords(delta);
    if o.d % 4 == 0 {
        (2 * x, 4 * y)
    } else {
        (2 * x, 2 * y)
    }
}

/// Discriminants of the three quadratic subfields of a biquadratic
/// `K(sqrt(delta))`, sorted.
pub(crate) fn biquadratic_subfields(
    o: &QuadOrder,
    delta: QuadInt,
) -> Result<Option<[i128; 3]>, TowerError> {
    let n = o.norm(delta)?;
    let Some(c) = exact_sqrt(n) else {
        return Ok(None);
    };
    // (sqrt(delta) +- sqrt(conj delta))^2 = T +- 2c is rational
    let t = o.trace(delta);
    let r = if t + 2 * c != 0 { t + 2 * c } else { t - 2 * c };
    let m = squarefree_core(o.d);
    let r = squarefree_part(r);
    let mr = squarefree_part(m.checked_mul(r).ok_or(QuadError::Overflow)?);
    let mut out = [
        field_discriminant(m),
        field_discriminant(r),
        field_discriminant(mr),
    ];
    out.sort();
    Ok(Some(out))
}

/// Normal form of a cyclic quartic tower, or `None` if `K(sqrt(delta))`
/// is not cyclic over `Q`.
pub fn c4_normal_form(o: &QuadOrder, delta: QuadInt) -> Result<Option<C4NormalForm>, TowerError> {
    if galois_type(o, delta)? != GaloisType::C4 {
        return Ok(None);
    }
    let dd = squarefree_core(o.d);
    let n = o.norm(delta)?.unsigned_abs();
    let odd: Vec<i128> = arith::factor(n)
        .into_iter()
        .map(|(p, _)| p as i128)
        .filter(|&p| p != 2 && dd % p != 0)
        .collect();
    let (u4, v4) = four_delta(o, delta);
    let mut bs = Vec::new();
    let mut b = 1;
    while b * b < dd {
        if let Some(c) = exact_sqrt(dd - b * b) {
            bs.push((b, c));
        }
        b += 1;
    }
    for mask in 0u32..(1 << odd.len()) {
        let abs_a: i128 = odd
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .product();
        for a in [abs_a, -abs_a] {
            for &(b, c) in &bs {
                // A (D + B sqrt D) * 4 delta
                let (u, v) = (a * dd, a * b);
                let x = u * u4 + dd * v * v4;
                let y = u * v4 + v * u4;
                if is_square_sqrt_form(dd, x, y)? {
                    let l = if dd % 8 == 2 || (dd % 4 == 1 && b % 2 == 1) {
                        3
                    } else if (a + b).rem_euclid(4) == 3 {
                        2
                    } else {
                        0
                    };
                    let conductor = (1u128 << l) * abs_a as u128 * dd as u128;
                    return Ok(Some(C4NormalForm {
                        a,
                        b,
                        c,
                        d: dd,
                        conductor,
                    }));
                }
            }
        }
    }
    Err(TowerError::LocalInconsistency {
        d: o.d,
        delta: delta.to_string(),
    })
}

/// `|d_L|` computed from the abelian structure: product of the quadratic
/// subfield discriminants for `V4`, conductor-discriminant formula for
/// `C4`. `None` for `D4`.
pub fn abelian_discriminant(o: &QuadOrder, delta: QuadInt) -> Result<Option<u128>, TowerError> {
    match galois_type(o, delta)? {
        GaloisType::D4 => Ok(None),
        GaloisType::V4 => {
            let s = biquadratic_subfields(o, delta)?.expect("V4 has a square norm");
            let p = s
                .iter()
                .try_fold(1u128, |acc, &x| acc.checked_mul(x.unsigned_abs()))
                .ok_or(QuadError::Overflow)?;
            Ok(Some(p))
        }
        GaloisType::C4 => Ok(c4_normal_form(o, delta)?.map(|f| f.discriminant())),
    }
}
