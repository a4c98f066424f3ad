//! Online bounded analysis toolkit: run online algorithms for scheduling,
//! packing, seat reservation, and matching; compute exact offline optima
//! (unconstrained and prefix-constrained) by branch-and-bound; replay the
//! adversarial constructions from the competitive-analysis literature; and
//! report strict and asymptotic performance ratios with exact rational
//! arithmetic throughout.

pub mod adversary;
pub mod core;
pub mod graphs;
pub mod harness;
pub mod oracle;
pub mod packing;
pub mod scheduling;
pub mod seatres;
