//! Permutation groups by full element enumeration: Malle's `a` and `b`
//! invariants, conjugacy and `k`-conjugacy classes, block systems and
//! wreath products.

mod blocks;
mod catalog;
mod classes;
mod group;
mod perm;
mod wreath;

pub use blocks::{BlockAnalysis, BlockSystem};
pub use catalog::{catalog, CatalogEntry};
pub use classes::{ClassTable, ConjugacyClass, CyclotomicAction};
pub use group::{PermGroup, DEFAULT_ORDER_CAP};
pub use perm::Permutation;
pub use wreath::{
    cyclic_group, symmetric_group, wreath_decompose, wreath_product, WreathDecomposition,
};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("cannot parse permutation at `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("images do not form a bijection")]
    NotBijective,
    #[error("degree {0} is too large")]
    DegreeTooLarge(usize),
    #[error("generator of degree {found} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group too large: more than {cap} elements")]
    TooLarge { cap: usize },
    #[error("the trivial group has no index")]
    TrivialGroup,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("invalid cyclotomic action: {0}")]
    InvalidAction(String),
    #[error("modulus {modulus} is not a multiple of the group exponent {exponent}")]
    ModulusNotMultipleOfExponent { modulus: u64, exponent: u64 },
    #[error("group does not match the S_e wreath H it should decompose into")]
    DecompositionMismatch,
}

/// Invariant summary in the JSON record layout of the command line tool.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InvariantRecord {
    pub degree: usize,
    pub order: usize,
    pub ind: u32,
    pub a_num: u32,
    pub a_den: u32,
    pub b_q: usize,
    pub primitive: bool,
    pub block_sizes: Vec<usize>,
}

impl InvariantRecord {
    pub fn of(group: &PermGroup) -> Result<Self, GroupError> {
        let ind = group.ind()?;
        let a = group.a_invariant()?;
        let blocks = group.block_systems()?;
        Ok(Self {
            degree: group.degree(),
            order: group.order(),
            ind,
            a_num: *a.numer(),
            a_den: *a.denom(),
            b_q: group.b_rational()?,
            primitive: blocks.primitive,
            block_sizes: blocks.systems.iter().map(BlockSystem::block_size).collect(),
        })
    }
}
