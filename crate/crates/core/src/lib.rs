//! Weighted MAX-SAT lower bounds and kernels above the golden-ratio guarantee.
//!
//! Every unit-conflict-free formula `F` with clause weight `w` over `n`
//! variables has an assignment satisfying at least `φ·w + γ·n` weight, where
//! `φ = (√5 − 1)/2` and `γ = (7 − 3√5)/4`. The crate computes such
//! assignments, certifies them in exact `Q(√5)` arithmetic, and builds
//! kernels for the parameterized problems above `φ·m` and `m/2`.

pub mod autarky;
pub mod bounds;
pub mod cli;
pub mod compact_assign;
pub mod compactify;
pub mod dimacs;
pub mod formula;
pub mod generate;
pub mod kernel;
pub mod oracle;
pub mod q5;
