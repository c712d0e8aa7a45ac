//! Outward-rounded interval arithmetic on `f64`.
//!
//! Basic operations are correctly rounded by IEEE 754, so stepping one ulp
//! outward keeps the exact result enclosed. Library transcendentals (`ln`,
//! `exp`, `sin`) are only faithful to within an ulp or so; those results
//! are widened by [`TRANSCENDENTAL_ULPS`] in each direction.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;

/// Ulps of outward widening applied after a libm call.
pub const TRANSCENDENTAL_ULPS: u32 = 4;

#[inline]
fn down(x: f64) -> f64 {
    x.next_down()
}

#[inline]
fn up(x: f64) -> f64 {
    x.next_up()
}

fn down_by(mut x: f64, ulps: u32) -> f64 {
    for _ in 0..ulps {
        x = x.next_down();
    }
    x
}

fn up_by(mut x: f64, ulps: u32) -> f64 {
    for _ in 0..ulps {
        x = x.next_up();
    }
    x
}

/// A closed interval `[lo, hi]` that encloses some real quantity.
#[derive(Clone, Copy, PartialEq, Serialize)]
pub struct ErrorInterval {
    lo: f64,
    hi: f64,
}

impl ErrorInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval with lo {lo} > hi {hi}");
        Self { lo, hi }
    }

    /// A degenerate interval; `x` must be exactly the intended value.
    pub fn exact(x: f64) -> Self {
        Self::new(x, x)
    }

    pub fn from_i64(n: i64) -> Self {
        let x = n as f64;
        if x.abs() < 9_007_199_254_740_992.0 {
            Self::exact(x)
        } else {
            Self::new(down(x), up(x))
        }
    }

    pub fn from_u128(n: u128) -> Self {
        let x = n as f64;
        if n < (1u128 << 53) {
            Self::exact(x)
        } else {
            Self::new(down(x), up(x))
        }
    }

    /// `p / q` enclosed.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_i64(p) / Self::from_i64(q)
    }

    pub fn pi() -> Self {
        // f64 PI is below pi by about 1.2e-16
        Self::new(std::f64::consts::PI, up(std::f64::consts::PI))
    }

    pub fn ln2() -> Self {
        let x = std::f64::consts::LN_2;
        Self::new(down(x), up(x))
    }

    /// `zeta(2) = pi^2 / 6`.
    pub fn zeta2() -> Self {
        let pi = Self::pi();
        pi * pi / Self::exact(6.0)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn width(&self) -> f64 {
        up(self.hi - self.lo)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Self { lo, hi })
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// Widens the upper end by a nonnegative amount.
    pub fn extend_up(&self, amount: f64) -> Self {
        assert!(amount >= 0.0);
        Self::new(self.lo, up(self.hi + amount))
    }

    /// Widens both ends by `radius`.
    pub fn widen(&self, radius: f64) -> Self {
        assert!(radius >= 0.0);
        Self::new(down(self.lo - radius), up(self.hi + radius))
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn recip(self) -> Self {
        Self::exact(1.0) / self
    }

    pub fn sqr(self) -> Self {
        if self.lo >= 0.0 {
            Self::new(down(self.lo * self.lo), up(self.hi * self.hi))
        } else if self.hi <= 0.0 {
            Self::new(down(self.hi * self.hi), up(self.lo * self.lo))
        } else {
            let m = self.lo.abs().max(self.hi.abs());
            Self::new(0.0, up(m * m))
        }
    }

    pub fn sqrt(self) -> Self {
        assert!(self.lo >= 0.0, "sqrt of negative interval");
        Self::new(down(self.lo.sqrt()).max(0.0), up(self.hi.sqrt()))
    }

    pub fn ln(self) -> Self {
        assert!(self.lo > 0.0, "ln of nonpositive interval");
        Self::new(
            down_by(self.lo.ln(), TRANSCENDENTAL_ULPS),
            up_by(self.hi.ln(), TRANSCENDENTAL_ULPS),
        )
    }

    pub fn exp(self) -> Self {
        Self::new(
            down_by(self.lo.exp(), TRANSCENDENTAL_ULPS).max(0.0),
            up_by(self.hi.exp(), TRANSCENDENTAL_ULPS),
        )
    }

    /// `self^p` for a positive base, via `exp(p ln self)`.
    pub fn powf(self, p: Self) -> Self {
        (p * self.ln()).exp()
    }

    /// Sine of an interval inside `[0, pi/2]`, where it is increasing.
    pub fn sin_quarter(self) -> Self {
        assert!(
            self.lo >= 0.0 && self.hi <= std::f64::consts::FRAC_PI_2,
            "sin_quarter outside [0, pi/2]"
        );
        Self::new(
            down_by(self.lo.sin(), TRANSCENDENTAL_ULPS).max(0.0),
            up_by(self.hi.sin(), TRANSCENDENTAL_ULPS).min(1.0),
        )
    }

    /// Multiplies by `2^k`, which is exact barring overflow.
    pub fn scale_pow2(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        Self::new(self.lo * f, self.hi * f)
    }
}

impl fmt::Debug for ErrorInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for ErrorInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for ErrorInterval {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(down(self.lo + rhs.lo), up(self.hi + rhs.hi))
    }
}

impl Sub for ErrorInterval {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(down(self.lo - rhs.hi), up(self.hi - rhs.lo))
    }
}

impl Neg for ErrorInterval {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.hi, -self.lo)
    }
}

impl Mul for ErrorInterval {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        // exact zeros stay exact
        let lo = if lo == 0.0 { 0.0 } else { down(lo) };
        let hi = if hi == 0.0 { 0.0 } else { up(hi) };
        Self::new(lo, hi)
    }
}

impl Div for ErrorInterval {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(
            rhs.lo > 0.0 || rhs.hi < 0.0,
            "division by an interval containing zero"
        );
        let q = [
            self.lo / rhs.lo,
            self.lo / rhs.hi,
            self.hi / rhs.lo,
            self.hi / rhs.hi,
        ];
        let lo = q.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = if lo == 0.0 { 0.0 } else { down(lo) };
        let hi = if hi == 0.0 { 0.0 } else { up(hi) };
        Self::new(lo, hi)
    }
}

impl std::iter::Sum for ErrorInterval {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::exact(0.0), |a, b| a + b)
    }
}
