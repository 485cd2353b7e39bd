//! Exact invariant hyperhermitian geometry on Lie algebras.

pub mod exact;
pub mod hermitian;
pub mod hypercomplex;
pub mod lie;
pub mod operator;
