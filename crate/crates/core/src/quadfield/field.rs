use num_traits::ToPrimitive;
use serde::Serialize;

use super::forms::{class_number_definite, narrow_class_number};
use super::lvalue::{character_table, l_one, l_two_terms, l_two_with_terms, MAX_TERMS};
use super::unit::{fundamental_unit, regulator, FundamentalUnit, DEFAULT_UNIT_BITS};
use super::{is_fundamental, QuadError, QuadOrder};
use crate::interval::ErrorInterval;

/// A quadratic field `Q(sqrt(d))` given by its discriminant, with class
/// number, unit data and `L(1, chi_d)`.
#[derive(Clone, Debug)]
pub struct QuadraticField {
    d: i64,
    m: i64,
    r1: u32,
    r2: u32,
    w: u32,
    h: u64,
    unit: Option<FundamentalUnit>,
    reg: ErrorInterval,
    l1: ErrorInterval,
}

impl QuadraticField {
    pub fn new(d: i64) -> Result<Self, QuadError> {
        Self::with_unit_budget(d, DEFAULT_UNIT_BITS)
    }

    pub fn with_unit_budget(d: i64, max_bits: u64) -> Result<Self, QuadError> {
        if !is_fundamental(d) {
            return Err(QuadError::NotFundamental(d));
        }
        let m = if d % 4 == 0 { d / 4 } else { d };
        let chi = character_table(d);
        let l1 = l_one(d, &chi);
        let (r1, r2, w, h, unit, reg) = if d < 0 {
            let w = match d {
                -3 => 6,
                -4 => 4,
                _ => 2,
            };
            (
                0,
                1,
                w,
                class_number_definite(d),
                None,
                ErrorInterval::exact(0.0),
            )
        } else {
            let unit = fundamental_unit(d, max_bits)?;
            let narrow = narrow_class_number(d);
            let h = if unit.norm < 0 {
                narrow
            } else {
                if !narrow.is_multiple_of(2) {
                    return Err(QuadError::Inconsistent {
                        d,
                        what: "odd narrow class number with a unit of norm +1".into(),
                    });
                }
                narrow / 2
            };
            let reg = regulator(&unit);
            (2, 0, 2, h, Some(unit), reg)
        };
        Ok(Self {
            d,
            m,
            r1,
            r2,
            w,
            h,
            unit,
            reg,
            l1,
        })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Squarefree `m` with `K = Q(sqrt(m))`.
    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn signature(&self) -> (u32, u32) {
        (self.r1, self.r2)
    }

    /// Number of complex places.
    pub fn i(&self) -> u32 {
        self.r2
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn class_number(&self) -> u64 {
        self.h
    }

    pub fn unit(&self) -> Option<&FundamentalUnit> {
        self.unit.as_ref()
    }

    pub fn regulator(&self) -> ErrorInterval {
        self.reg
    }

    pub fn order(&self) -> QuadOrder {
        QuadOrder::new(self.d)
    }

    /// `L(1, chi_d)`, which is the residue of `zeta_K` at `s = 1`.
    pub fn l_at_one(&self) -> ErrorInterval {
        self.l1
    }

    /// The residue from the class number formula
    /// `2^r1 (2 pi)^r2 h R / (w sqrt|d|)`.
    pub fn class_number_formula(&self) -> ErrorInterval {
        let h = ErrorInterval::from_i64(self.h as i64);
        let sqrt_d = ErrorInterval::from_i64(self.d.abs()).sqrt();
        let w = ErrorInterval::from_i64(self.w as i64);
        if self.d < 0 {
            ErrorInterval::pi().scale_pow2(1) * h / (w * sqrt_d)
        } else {
            ErrorInterval::exact(4.0) * h * self.reg / (w * sqrt_d)
        }
    }

    /// Residue of the Dedekind zeta function at `s = 1`, computed from the
    /// L-value and the class number formula and intersected.
    pub fn residue_zeta(&self) -> Result<ErrorInterval, QuadError> {
        let cnf = self.class_number_formula();
        self.l1
            .intersect(&cnf)
            .ok_or_else(|| QuadError::Inconsistent {
                d: self.d,
                what: format!(
                    "L(1) = {:?} but class number formula gives {:?}",
                    self.l1, cnf
                ),
            })
    }

    /// The class number implied by `L(1, chi_d)`, if the enclosure pins
    /// down a single integer.
    pub fn analytic_class_number(&self) -> Option<u64> {
        let sqrt_d = ErrorInterval::from_i64(self.d.abs()).sqrt();
        let w = ErrorInterval::from_i64(self.w as i64);
        let h = if self.d < 0 {
            self.l1 * w * sqrt_d / ErrorInterval::pi().scale_pow2(1)
        } else {
            self.l1 * sqrt_d / (ErrorInterval::exact(2.0) * self.reg)
        };
        let lo = h.lo().ceil();
        let hi = h.hi().floor();
        (lo == hi && lo >= 1.0).then_some(lo as u64)
    }

    /// `zeta_K(2) = zeta(2) L(2, chi_d)` with `L(2)` summed to `tol`.
    pub fn zeta_at_2(&self, tol: f64) -> Result<ErrorInterval, QuadError> {
        let n = l_two_terms(self.d, tol / 4.0);
        if n > MAX_TERMS {
            return Err(QuadError::TolUnachievable {
                tol,
                required_terms: Some(n),
            });
        }
        let l2 = l_two_with_terms(self.d, &character_table(self.d), n);
        Ok(ErrorInterval::zeta2() * l2)
    }

    /// `R(K) = 2^-i(K) res zeta_K / zeta_K(2)`, the density of quadratic
    /// extensions of `K` by relative discriminant norm.
    pub fn r_constant(&self, tol: f64) -> Result<ErrorInterval, QuadError> {
        let res = self.residue_zeta()?;
        let z2 = self.zeta_at_2(tol)?;
        Ok((res / z2).scale_pow2(-(self.r2 as i32)))
    }

    /// JSON record of the field data.
    pub fn dump(&self, tol: f64) -> Result<FieldDump, QuadError> {
        let res = self.residue_zeta()?;
        let z2 = self.zeta_at_2(tol)?;
        let r = (res / z2).scale_pow2(-(self.r2 as i32));
        Ok(FieldDump {
            d: self.d,
            h: self.h,
            w: self.w,
            r1: self.r1,
            r2: self.r2,
            reg_lo: self.reg.lo(),
            reg_hi: self.reg.hi(),
            res_lo: res.lo(),
            res_hi: res.hi(),
            zeta2_lo: z2.lo(),
            zeta2_hi: z2.hi(),
            R_lo: r.lo(),
            R_hi: r.hi(),
        })
    }

    /// Unit coordinates `(t, u)` as machine integers, when they fit.
    pub fn small_unit(&self) -> Option<(i128, i128)> {
        let u = self.unit.as_ref()?;
        Some((u.t.to_i128()?, u.u.to_i128()?))
    }
}

#[allow(non_snake_case)]
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FieldDump {
    pub d: i64,
    pub h: u64,
    pub w: u32,
    pub r1: u32,
    pub r2: u32,
    pub reg_lo: f64,
    pub reg_hi: f64,
    pub res_lo: f64,
    pub res_hi: f64,
    pub zeta2_lo: f64,
    pub zeta2_hi: f64,
    pub R_lo: f64,
    pub R_hi: f64,
}

/// Both sides of `res zeta_K <= 8 |d|^eps / eps`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ResiduumReport {
    pub lhs: ErrorInterval,
    pub rhs: ErrorInterval,
    pub ok: bool,
}

pub fn residuum_check(field: &QuadraticField, eps: f64) -> Result<ResiduumReport, QuadError> {
    assert!(eps > 0.0 && eps <= 1.0, "epsilon must lie in (0, 1]");
    let lhs = field.residue_zeta()?;
    let e = ErrorInterval::exact(eps);
    let rhs = ErrorInterval::exact(8.0) * ErrorInterval::from_i64(field.d().abs()).powf(e) / e;
    Ok(ResiduumReport {
        lhs,
        rhs,
        ok: lhs.hi() <= rhs.lo(),
    })
}

/// `h / (sqrt|d| log|d|)` for a class number `h`.
pub fn class_bound_ratio(d: i64, h: u64) -> ErrorInterval {
    assert!(d.abs() >= 3);
    let n = ErrorInterval::from_i64(d.abs());
    ErrorInterval::from_i64(h as i64) / (n.sqrt() * n.ln())
}

/// `h / (sqrt|d| log|d|)` for the field of discriminant `d`.
pub fn class_bound_report(d: i64) -> Result<ErrorInterval, QuadError> {
    let k = QuadraticField::new(d)?;
    Ok(class_bound_ratio(d, k.class_number()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let k = QuadraticField::new(-4).unwrap();
        assert_eq!((k.w(), k.class_number(), k.signature()), (4, 1, (0, 1)));
        assert!(k
            .residue_zeta()
            .unwrap()
            .contains(std::f64::consts::FRAC_PI_4));
        let k = QuadraticField::new(-23).unwrap();
        assert_eq!(k.class_number(), 3);
        assert_eq!(k.analytic_class_number(), Some(3));
        let k = QuadraticField::new(8).unwrap();
        assert_eq!((k.class_number(), k.unit().unwrap().norm), (1, -1));
        assert!(QuadraticField::new(1).is_err());
        assert!(QuadraticField::new(12 * 4).is_err());
        assert!(QuadraticField::new(-12).is_err());
    }

    #[test]
    fn zeta_and_r() {
        let k = QuadraticField::new(-4).unwrap();
        let z2 = k.zeta_at_2(1e-8).unwrap();
        // zeta(2) * Catalan = 1.50670300992298503...
        assert!(z2.contains(1.506_703_009_922_985));
        let r = k.r_constant(1e-8).unwrap();
        assert!(r.contains(0.260_634_696_494_564_6));
        let k5 = QuadraticField::new(5).unwrap();
        assert!((k5.residue_zeta().unwrap().mid() - 0.430_409).abs() < 1e-6);
    }

    #[test]
    fn residuum_examples() {
        let k = QuadraticField::new(-4).unwrap();
        let rep = residuum_check(&k, 1.0).unwrap();
        assert!(rep.ok && rep.rhs.contains(32.0));
        let k = QuadraticField::new(-3).unwrap();
        let rep = residuum_check(&k, 0.25).unwrap();
        assert!(rep.ok && (rep.rhs.mid() - 42.11).abs() < 0.01);
    }

    #[test]
    fn class_bound_examples() {
        assert!((class_bound_report(-4).unwrap().mid() - 0.3607).abs() < 1e-4);
        assert!((class_bound_report(-23).unwrap().mid() - 0.1998).abs() < 1e-3);
    }
}
