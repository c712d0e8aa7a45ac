use rayon::prelude::*;
use serde::Serialize;

use super::AsymError;
use crate::interval::ErrorInterval;
use crate::quadfield::{
    character_table, fundamental_discs, l_one, l_two_terms, l_two_with_terms, QuadraticField,
};

/// Which fields enter a [`ResidueSeries`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldFilter {
    All,
    ClassNumberOne,
}

/// `sum R(K) / d_K^2` over quadratic fields with `|d_K| <= D`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ResidueSeries {
    #[serde(rename = "D")]
    pub d_max: u64,
    pub field_filter: FieldFilter,
    pub fields: usize,
    pub partial_sum: ErrorInterval,
    /// Upper bound on the terms with `|d_K| > D`.
    pub tail: f64,
}

impl ResidueSeries {
    /// Enclosure of the full series.
    pub fn enclosure(&self) -> ErrorInterval {
        self.partial_sum.extend_up(self.tail)
    }
}

/// Relative accuracy of `L(2)` used when no tolerance is requested.
const DEFAULT_L2_TOL: f64 = 1e-4;

const COARSE_L2_TOL: f64 = 1e-2;
const MIN_L2_TOL: f64 = 1e-10;
/// Rough upper estimate of the full series.
const SUM_GUESS: f64 = 0.25;

/// `R(K) / d_K^2 = L(1, chi_d) / (2^i d^2 zeta(2) L(2, chi_d))`, with `L(2)`
/// summed to within `l2_tol`.
pub fn series_term(d: i64, l2_tol: f64) -> ErrorInterval {
    let chi = character_table(d);
    let l1 = l_one(d, &chi);
    let n = l_two_terms(d, l2_tol / 4.0);
    let z2 = ErrorInterval::zeta2() * l_two_with_terms(d, &chi, n);
    let dd = ErrorInterval::from_i64(d * d);
    let i = if d < 0 { -1 } else { 0 };
    (l1 / (dd * z2)).scale_pow2(i)
}

/// Bound on `sum_{|d| > D} R(K) / d^2`.
///
/// With `eps = 1 / log|d|` the residuum bound `res zeta_K <= 8 |d|^eps / eps`
/// becomes `8 e log|d|`. Since `zeta_K(2) > 1` and `2^-i <= 1`, each term is
/// at most `8 e log|d| / d^2`, there are at most two fields per `|d|`, and
/// `log t / t^2` decreases for `t > sqrt(e)`, so the tail is at most
/// `16 e int_D^inf log t / t^2 dt = 16 e (log D + 1) / D`.
pub fn tail_bound(d: u64) -> f64 {
    assert!(d >= 3, "tail bound needs D >= 3");
    let e = ErrorInterval::exact(1.0).exp();
    let dd = ErrorInterval::from_u128(d as u128);
    (ErrorInterval::exact(16.0) * e * (dd.ln() + ErrorInterval::exact(1.0)) / dd).hi()
}

/// Smallest `D` with `tail_bound(D) <= tol`.
fn required_d(tol: f64) -> u64 {
    let mut hi = 16u64;
    while tail_bound(hi) > tol {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tail_bound(mid) > tol {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// The residue series truncated at `|d| <= D`, with total enclosure width
/// (partial sum width plus tail) at most `tol`. Pass `f64::INFINITY` to
/// skip the tolerance check.
pub fn residue_series(
    d_max: u64,
    tol: f64,
    filter: FieldFilter,
) -> Result<ResidueSeries, AsymError> {
    assert!(d_max >= 3, "residue series needs D >= 3");
    let tail = tail_bound(d_max);
    if tail >= tol {
        return Err(AsymError::TolUnachievable {
            tol,
            d: d_max,
            required_d: required_d(tol),
        });
    }
    let mut discs = fundamental_discs(d_max);
    if filter == FieldFilter::ClassNumberOne {
        let keep: Vec<bool> = discs
            .par_iter()
            .map(|&d| QuadraticField::new(d).map(|k| k.class_number() == 1))
            .collect::<Result<_, _>>()?;
        let mut it = keep.iter();
        discs.retain(|_| *it.next().unwrap());
    }
    // L(2) > zeta(4) / zeta(2) > 0.65, so a term's relative width is about
    // 3 l2_tol and the total width about 3 l2_tol times the sum, which is
    // near 0.1; tighten and retry if that guess was off
    let budget = tol - tail;
    let mut l2_tol = if budget.is_finite() {
        (budget / (8.0 * SUM_GUESS)).min(COARSE_L2_TOL)
    } else {
        DEFAULT_L2_TOL
    };
    let partial_sum = loop {
        let terms: Vec<ErrorInterval> = discs.par_iter().map(|&d| series_term(d, l2_tol)).collect();
        // ascending |d|, independent of the thread count
        let sum: ErrorInterval = terms.into_iter().sum();
        if sum.width() + tail <= tol {
            break sum;
        }
        if l2_tol < MIN_L2_TOL {
            return Err(AsymError::TolUnachievable {
                tol,
                d: d_max,
                required_d: required_d(tol).max(d_max),
            });
        }
        l2_tol /= 10.0;
    };
    Ok(ResidueSeries {
        d_max,
        field_filter: filter,
        fields: discs.len(),
        partial_sum,
        tail,
    })
}

/// `sum R(K) / d_K^2` over the given fields, in the given order, each
/// term being the field's own `R(K)` enclosure divided by `d_K^2`.
pub fn restricted_sum(fields: &[i64], tol: f64) -> Result<ErrorInterval, AsymError> {
    let terms: Vec<ErrorInterval> = fields
        .par_iter()
        .map(|&d| {
            let k = QuadraticField::new(d)?;
            Ok(k.r_constant(tol)? / ErrorInterval::from_i64(d * d))
        })
        .collect::<Result<_, AsymError>>()?;
    Ok(terms.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_terms() {
        let s3 = residue_series(3, f64::INFINITY, FieldFilter::All).unwrap();
        assert_eq!(s3.fields, 1);
        // L(1) = pi / (3 sqrt 3), zeta_K(2) = zeta(2) * 0.78130241...
        assert!((s3.partial_sum.mid() - 0.026_135_3).abs() < 1e-6);
        let s4 = residue_series(4, f64::INFINITY, FieldFilter::All).unwrap();
        assert!((s4.partial_sum.mid() - 0.042_424_6).abs() < 2e-6);
    }

    #[test]
    fn tail_values() {
        assert!((tail_bound(100_000) - 5.44e-3).abs() < 1e-5);
        assert!((tail_bound(10_000_000) - 7.445e-5).abs() < 1e-7);
        assert!(tail_bound(1000) < tail_bound(100));
    }

    #[test]
    fn tolerance_error_reports_required_d() {
        match residue_series(100_000, 1e-3, FieldFilter::All) {
            Err(AsymError::TolUnachievable { required_d, .. }) => {
                assert!(tail_bound(required_d) <= 1e-3);
                assert!(tail_bound(required_d - 1) > 1e-3);
            }
            other => panic!("expected an error, got {other:?}"),
        }
    }

    #[test]
    fn class_number_one_filter() {
        let s = residue_series(50, f64::INFINITY, FieldFilter::ClassNumberOne).unwrap();
        assert_eq!(s.fields, 20);
    }
}
