//! Quadratic extensions `L = K(sqrt(delta))` of class number one quadratic
//! fields `K`: enumeration of square classes, relative discriminants,
//! Galois types of the quartic towers and the resulting counting functions.

mod abelian;
mod count;
mod kummer;
mod local;

pub use abelian::{abelian_discriminant, c4_normal_form, C4NormalForm};
pub use count::{count_quadratic_ext, count_towers, CountMode, FieldKey, TowerCount, TowerReport};
pub use kummer::{KummerClass, SquareClassId, TowerField};
pub use local::{galois_type, lemma_tower_witness, GaloisType};

use serde::Serialize;
use thiserror::Error;

use crate::quadfield::QuadError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TowerError {
    #[error(transparent)]
    Field(#[from] QuadError),
    #[error("fields {0:?} have class number greater than one")]
    UnsupportedFields(Vec<i64>),
    #[error("delta = {delta} is a square in Q(sqrt {d})")]
    SquareDelta { d: i64, delta: String },
    #[error("delta = {delta} is not squarefree in Q(sqrt {d})")]
    NotSquarefree { d: i64, delta: String },
    #[error("2-adic analysis of delta = {delta} in Q(sqrt {d}) is inconsistent")]
    LocalInconsistency { d: i64, delta: String },
}

/// Largest divisor of `a` coprime to every prime in `s`.
pub fn coprime_part(mut a: u64, s: &[u64]) -> u64 {
    assert!(a >= 1);
    for &p in s {
        if p < 2 {
            continue;
        }
        while a.is_multiple_of(p) {
            a /= p;
        }
    }
    a
}

/// Counters of a consistency sweep over enumerated towers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TowerChecks {
    pub towers: u64,
    pub identity_failures: u64,
    pub abelian_checked: u64,
    pub abelian_failures: u64,
    pub witness_violations: u64,
}

impl TowerChecks {
    pub fn merge(self, o: Self) -> Self {
        Self {
            towers: self.towers + o.towers,
            identity_failures: self.identity_failures + o.identity_failures,
            abelian_checked: self.abelian_checked + o.abelian_checked,
            abelian_failures: self.abelian_failures + o.abelian_failures,
            witness_violations: self.witness_violations + o.witness_violations,
        }
    }

    pub fn clean(&self) -> bool {
        self.identity_failures == 0 && self.abelian_failures == 0 && self.witness_violations == 0
    }
}
