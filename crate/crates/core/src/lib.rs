//! Group-theoretic Malle invariants and exact discriminant counting for
//! quadratic fields and quadratic towers over `Q`.

pub mod arith;
pub mod asymptotics;
pub mod interval;
pub mod permgroup;
pub mod quadfield;
pub mod towers;

pub use interval::ErrorInterval;
