//! Profile-vector codes for DNA storage.
//!
//! A word over `[q]` is observed through the multiset of its length-`ℓ`
//! substrings (its *profile vector*). This crate provides:
//!
//! * [`gram`]: words, constrained gram sets, profile vectors and the
//!   asymmetric distance;
//! * [`graph`]: restricted de Bruijn graphs and their analysis (strong
//!   components, Eulerian/Hamiltonian checks, simple cycles, the growth
//!   exponent of the condensation);
//! * [`euler`]: the deterministic Eulerian decoder mapping a profile back to
//!   its canonical word;
//! * [`lattice`]: exact lattice-point counting for flow polytopes and exact
//!   quasipolynomial fitting;
//! * [`codes`]: Varshamov asymmetric codes, gram reconstruction codes and
//!   the systematic profile encoder;
//! * [`channel`]: a seeded simulator of the synthesis/sequencing channel.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod channel;
pub mod codes;
mod error;
pub mod euler;
pub mod gram;
pub mod graph;
pub mod intmat;
pub mod lattice;

pub use error::{Error, Result};

/// Exhaustion limits shared by every oracle and enumerator.
///
/// Nothing in this crate truncates silently: an operation whose estimated
/// work exceeds its limit returns [`Error::BudgetExceeded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum `q^n` for brute-force word enumeration.
    pub words: u128,
    /// Maximum number of simple cycles to enumerate.
    pub cycles: u64,
    /// Maximum node count for Hamiltonian backtracking.
    pub hamiltonian_nodes: usize,
    /// Maximum number of enumeration nodes visited while counting lattice points.
    pub lattice_nodes: u64,
    /// Maximum number of pairwise comparisons in distance scans.
    pub pairs: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            words: 100_000_000,
            cycles: 1_000_000,
            hamiltonian_nodes: 64,
            lattice_nodes: 20_000_000_000,
            pairs: 2_000_000_000,
        }
    }
}
