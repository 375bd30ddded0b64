//! Catalytic gate-set lowering.
//!
//! Rewrites circuits over a rich gate set into real-only gate sets
//! (`{H, CCZ}`, or real orthogonal single-qubit gates plus CCZ) by borrowing
//! one `|+i>` catalyst qubit, and checks every rewrite by dense simulation.

pub mod cli;
pub mod gadgets;
pub mod ir;
pub mod lemmas;
pub mod rewrite;
pub mod sim;
pub mod synth;
