use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::QuadError;

/// The maximal order `Z[w]` of a quadratic field, `w = (b0 + sqrt(d)) / 2`
/// with `b0 = d mod 2`, so that `w^2 = t w - n0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadOrder {
    pub d: i64,
    /// Trace of `w`.
    pub t: i128,
    /// Norm of `w`.
    pub n0: i128,
}

/// `a + b w` in a [`QuadOrder`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadInt {
    pub a: i128,
    pub b: i128,
}

impl QuadInt {
    pub const ONE: QuadInt = QuadInt { a: 1, b: 0 };

    pub fn new(a: i128, b: i128) -> Self {
        Self { a, b }
    }

    pub fn rational(a: i128) -> Self {
        Self { a, b: 0 }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

fn overflow() -> QuadError {
    QuadError::Overflow
}

impl QuadOrder {
    pub fn new(d: i64) -> Self {
        let b0 = d.rem_euclid(2) as i128;
        Self {
            d,
            t: b0,
            n0: (b0 - d as i128) / 4,
        }
    }

    pub fn norm(&self, x: QuadInt) -> Result<i128, QuadError> {
        let aa = x.a.checked_mul(x.a).ok_or_else(overflow)?;
        let ab =
            x.a.checked_mul(x.b)
                .and_then(|v| v.checked_mul(self.t))
                .ok_or_else(overflow)?;
        let bb =
            x.b.checked_mul(x.b)
                .and_then(|v| v.checked_mul(self.n0))
                .ok_or_else(overflow)?;
        aa.checked_add(ab)
            .and_then(|v| v.checked_add(bb))
            .ok_or_else(overflow)
    }

    pub fn trace(&self, x: QuadInt) -> i128 {
        2 * x.a + x.b * self.t
    }

    pub fn conj(&self, x: QuadInt) -> QuadInt {
        QuadInt::new(x.a + x.b * self.t, -x.b)
    }

    pub fn mul(&self, x: QuadInt, y: QuadInt) -> Result<QuadInt, QuadError> {
        // (a + b w)(c + e w) = ac - be n0 + (ae + bc + be t) w
        let m = |p: i128, q: i128| p.checked_mul(q).ok_or_else(overflow);
        let be = m(x.b, y.b)?;
        let a = m(x.a, y.a)?
            .checked_sub(m(be, self.n0)?)
            .ok_or_else(overflow)?;
        let b = m(x.a, y.b)?
            .checked_add(m(x.b, y.a)?)
            .and_then(|v| v.checked_add(be.checked_mul(self.t)?))
            .ok_or_else(overflow)?;
        Ok(QuadInt::new(a, b))
    }

    pub fn pow(&self, x: QuadInt, e: u32) -> Result<QuadInt, QuadError> {
        let mut acc = QuadInt::ONE;
        for _ in 0..e {
            acc = self.mul(acc, x)?;
        }
        Ok(acc)
    }

    /// `x / y` when the quotient is integral.
    pub fn div_exact(&self, x: QuadInt, y: QuadInt) -> Result<Option<QuadInt>, QuadError> {
        let n = self.norm(y)?;
        let num = self.mul(x, self.conj(y))?;
        if num.a % n != 0 || num.b % n != 0 {
            return Ok(None);
        }
        Ok(Some(QuadInt::new(num.a / n, num.b / n)))
    }

    /// `x` modulo the rational integer `m`, coordinates in `0..m`.
    pub fn reduce(&self, x: QuadInt, m: i128) -> QuadInt {
        QuadInt::new(x.a.mod_floor(&m), x.b.mod_floor(&m))
    }

    /// Coordinates `(x, y)` with `2 z = x + y sqrt(d)`.
    pub fn sqrt_coords(&self, z: QuadInt) -> (i128, i128) {
        (2 * z.a + z.b * self.t, z.b)
    }

    /// Real embeddings (or real and imaginary parts of one complex
    /// embedding) as floats; only used for heuristics.
    pub fn embeddings(&self, z: QuadInt) -> (f64, f64) {
        let (x, y) = self.sqrt_coords(z);
        let r = (self.d.unsigned_abs() as f64).sqrt();
        if self.d > 0 {
            (
                (x as f64 + y as f64 * r) / 2.0,
                (x as f64 - y as f64 * r) / 2.0,
            )
        } else {
            (x as f64 / 2.0, y as f64 * r / 2.0)
        }
    }

    /// Whether `z` is a square in the field.
    pub fn is_square(&self, z: QuadInt) -> Result<bool, QuadError> {
        if z.b == 0 && z.a == 0 {
            return Ok(true);
        }
        // 4 z = 2x + 2y sqrt(d) has the same square class as z
        let (x, y) = self.sqrt_coords(z);
        is_square_sqrt_form(self.d as i128, 2 * x, 2 * y)
    }
}

/// Whether `u + v sqrt(d)` is a square in `Q(sqrt(d))`.
pub(crate) fn is_square_sqrt_form(d: i128, u: i128, v: i128) -> Result<bool, QuadError> {
    use crate::arith::exact_sqrt;
    let n = u
        .checked_mul(u)
        .zip(v.checked_mul(v).and_then(|w| w.checked_mul(d)))
        .and_then(|(p, q)| p.checked_sub(q))
        .ok_or(QuadError::Overflow)?;
    let Some(r) = exact_sqrt(n) else {
        return Ok(false);
    };
    if v == 0 {
        // u itself, or u / d, must be a rational square
        let ud = u.checked_mul(d).ok_or(QuadError::Overflow)?;
        return Ok(exact_sqrt(u).is_some() || exact_sqrt(ud).is_some());
    }
    // (p + q sqrt(d))^2 = u + v sqrt(d): p^2 = (u +- r) / 2, q = v / (2p).
    // p rational means 2 (u +- r) is a perfect square.
    for s in [u + r, u - r] {
        if s > 0 {
            if let Some(k) = exact_sqrt(2 * s) {
                // p = k / 2, q = v / k, check p^2 + d q^2 = u exactly:
                // k^4 + 4 d v^2 = 4 u k^2
                let lhs = k.pow(4) + 4 * d * v * v;
                if lhs == 4 * u * k * k {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let o = QuadOrder::new(-4);
        let i = QuadInt::new(0, 1);
        assert_eq!(o.mul(i, i).unwrap(), QuadInt::rational(-1));
        assert_eq!(o.norm(QuadInt::new(2, 1)).unwrap(), 5);
        assert_eq!(o.conj(QuadInt::new(2, 1)), QuadInt::new(2, -1));
        assert!(o.is_square(QuadInt::new(0, 2)).unwrap()); // 2i = (1+i)^2
        assert!(!o.is_square(i).unwrap());
        assert!(o.is_square(QuadInt::rational(-1)).unwrap());
        assert!(!o.is_square(QuadInt::rational(2)).unwrap());
    }

    #[test]
    fn golden_ratio_order() {
        let o = QuadOrder::new(5);
        let phi = QuadInt::new(0, 1);
        assert_eq!(o.mul(phi, phi).unwrap(), QuadInt::new(1, 1));
        assert_eq!(o.norm(phi).unwrap(), -1);
        assert!(o.is_square(QuadInt::rational(5)).unwrap());
        assert!(!o.is_square(QuadInt::rational(-1)).unwrap());
        assert!(o.is_square(QuadInt::new(1, 1)).unwrap()); // phi^2
        assert_eq!(o.div_exact(QuadInt::new(1, 1), phi).unwrap(), Some(phi));
    }
}
