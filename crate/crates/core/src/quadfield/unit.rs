use num_bigint::{BigInt, Sign};
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};

use super::QuadError;
use crate::interval::ErrorInterval;

/// Default size limit for unit coordinates.
pub const DEFAULT_UNIT_BITS: u64 = 4096;

/// Fundamental unit `(t + u sqrt(d)) / 2 > 1` of a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub t: BigInt,
    pub u: BigInt,
    /// `+1` or `-1`.
    pub norm: i8,
    /// Period length of the continued fraction of `w`.
    pub period: usize,
}

/// Fundamental unit from the continued fraction of `w = (b0 + sqrt(d)) / 2`.
///
/// With `w = [a0; a1, ..., al]` purely periodic after `a0`, the unit is
/// `p_{l-1} - q_{l-1} w'` and its norm is `(-1)^l`.
pub fn fundamental_unit(d: i64, max_bits: u64) -> Result<FundamentalUnit, QuadError> {
    assert!(d > 1);
    let s = d.sqrt();
    let b0 = d.rem_euclid(2);
    // x_k = (P_k + sqrt d) / Q_k with Q_k | d - P_k^2
    let (mut p, mut q) = (b0, 2i64);
    let (mut pm2, mut pm1) = (BigInt::zero(), BigInt::one());
    let (mut qm2, mut qm1) = (BigInt::one(), BigInt::zero());
    let mut first: Option<(i64, i64)> = None;
    let mut k = 0usize;
    loop {
        if k == 1 {
            first = Some((p, q));
        } else if k > 1 && Some((p, q)) == first {
            break;
        }
        let a = (p + s).div_euclid(q);
        let pk = BigInt::from(a) * &pm1 + &pm2;
        let qk = BigInt::from(a) * &qm1 + &qm2;
        if pk.bits() > max_bits {
            return Err(QuadError::UnitTooLarge { d, bits: max_bits });
        }
        pm2 = std::mem::replace(&mut pm1, pk);
        qm2 = std::mem::replace(&mut qm1, qk);
        let np = a * q - p;
        q = (d - np * np) / q;
        p = np;
        k += 1;
    }
    let period = k - 1;
    // the loop ran one step past the period, so p_{l-1} sits in pm2
    let (pl, ql) = (pm2, qm2);
    let t = BigInt::from(2) * &pl - &ql * BigInt::from(b0);
    let u = ql;
    let norm_val = &t * &t - BigInt::from(d) * &u * &u;
    let norm = if norm_val == BigInt::from(4) {
        1
    } else if norm_val == BigInt::from(-4) {
        -1
    } else {
        return Err(QuadError::Inconsistent {
            d,
            what: "continued fraction did not produce a unit".into(),
        });
    };
    let expected = if period.is_multiple_of(2) { 1 } else { -1 };
    if norm != expected {
        return Err(QuadError::Inconsistent {
            d,
            what: "unit norm disagrees with period parity".into(),
        });
    }
    Ok(FundamentalUnit { t, u, norm, period })
}

/// Encloses a positive big integer: `n` lies in `[m 2^k, (m+1) 2^k]`.
fn big_enclosure(n: &BigInt) -> (ErrorInterval, u64) {
    let bits = n.bits();
    let shift = bits.saturating_sub(53);
    let top = (n >> shift).to_u64().expect("53 bits fit");
    let iv = if shift == 0 {
        ErrorInterval::from_u128(top as u128)
    } else {
        ErrorInterval::new(top as f64, (top + 1) as f64)
    };
    (iv, shift)
}

/// `log` of the unit, i.e. the regulator.
pub fn regulator(unit: &FundamentalUnit) -> ErrorInterval {
    assert_eq!(unit.t.sign(), Sign::Plus);
    let (t_iv, shift) = big_enclosure(&unit.t);
    let bits = unit.t.bits();
    let four_n = ErrorInterval::from_i64(4 * unit.norm as i64);
    if bits <= 500 {
        let t = t_iv.scale_pow2(shift as i32);
        let eps = (t + (t.sqr() - four_n).sqrt()) / ErrorInterval::exact(2.0);
        return eps.ln();
    }
    // eps = t (1 + sqrt(1 - 4N/t^2)) / 2; the factor after t is within
    // 8/t^2 of 1, and 1/t^2 <= 4^(1 - bits)
    let ln_t = t_iv.ln() + ErrorInterval::ln2() * ErrorInterval::from_i64(shift as i64);
    let tiny = 2f64.powi(-2 * (bits as i32 - 1)).max(f64::MIN_POSITIVE) * 8.0;
    ln_t.widen(tiny)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(d: i64) -> (i64, i64, i8) {
        let u = fundamental_unit(d, DEFAULT_UNIT_BITS).unwrap();
        (u.t.to_i64().unwrap(), u.u.to_i64().unwrap(), u.norm)
    }

    #[test]
    fn small_units() {
        assert_eq!(unit(5), (1, 1, -1)); // golden ratio
        assert_eq!(unit(8), (2, 1, -1)); // 1 + sqrt 2
        assert_eq!(unit(12), (4, 1, 1)); // 2 + sqrt 3
        assert_eq!(unit(13), (3, 1, -1));
        assert_eq!(unit(21), (5, 1, 1));
        assert_eq!(unit(28), (16, 3, 1)); // 8 + 3 sqrt 7
        assert_eq!(unit(41), (64, 10, -1)); // 32 + 5 sqrt 41
    }

    #[test]
    fn large_unit_and_budget() {
        // Q(sqrt 94): 2143295 + 221064 sqrt 94
        let u = fundamental_unit(376, DEFAULT_UNIT_BITS).unwrap();
        assert_eq!(u.t, BigInt::from(2 * 2143295i64));
        assert_eq!(u.u, BigInt::from(221064i64));
        assert!(matches!(
            fundamental_unit(376, 8),
            Err(QuadError::UnitTooLarge { .. })
        ));
    }

    #[test]
    fn regulators() {
        let r5 = regulator(&fundamental_unit(5, DEFAULT_UNIT_BITS).unwrap());
        assert!(r5.contains(0.48121182505960347));
        assert!(r5.width() < 1e-14);
        let r8 = regulator(&fundamental_unit(8, DEFAULT_UNIT_BITS).unwrap());
        assert!(r8.contains(0.881373587019543));
    }
}
