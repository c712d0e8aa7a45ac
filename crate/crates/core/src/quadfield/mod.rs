//! Quadratic fields over `Q`: discriminants, Kronecker characters, class
//! numbers from reduced forms, fundamental units, certified L-values and
//! the constants entering quadratic-extension counts.

mod disc;
mod field;
pub mod forms;
mod lvalue;
mod primes;
mod ring;
mod unit;

pub use disc::{count_quadratic_q, fundamental_discs, is_fundamental, kronecker};
pub use field::{
    class_bound_ratio, class_bound_report, residuum_check, FieldDump, QuadraticField,
    ResiduumReport,
};
pub use lvalue::{
    character_table, l_one, l_two_tail, l_two_terms, l_two_with_terms, l_value, LValue,
};
pub use primes::{prime_elements, PrimeElement, PrimeIdealKey, Splitting};
pub(crate) use ring::is_square_sqrt_form;
pub use ring::{QuadInt, QuadOrder};
pub use unit::{fundamental_unit, regulator, FundamentalUnit, DEFAULT_UNIT_BITS};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("fundamental unit of Q(sqrt {d}) exceeds {bits} bits")]
    UnitTooLarge { d: i64, bits: u64 },
    #[error("inconsistent data for d = {d}: {what}")]
    Inconsistent { d: i64, what: String },
    #[error("tolerance {tol:e} unachievable{}", required_terms.map(|n| format!(", needs {n} terms")).unwrap_or_default())]
    TolUnachievable {
        tol: f64,
        required_terms: Option<u64>,
    },
    #[error("L-values are only implemented at s = 1 and s = 2, not {0}")]
    UnsupportedPoint(u32),
    #[error("field with d = {d} has class number {h}, only class number one is supported")]
    UnsupportedField { d: i64, h: u64 },
    #[error("coefficient search for norm {p} in d = {d} is too large")]
    SearchTooLarge { d: i64, p: u64 },
    #[error("integer overflow in quadratic integer arithmetic")]
    Overflow,
}
