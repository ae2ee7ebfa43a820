//! Multisigned complete graphs over F_2^m: exhaustive ground truth,
//! constructive realization of Hamiltonian-circle multisigns via covering
//! C4-necklaces, and classification of the realized set.

pub mod classify;
pub mod finder;
pub mod gf2;
pub mod graph;
pub mod instances;
pub mod necklace;
pub mod oracle;

pub use classify::{classify_instance, ClassificationReport, Mode};
pub use gf2::{Gf2Basis, Multisign, RealizationVerdict};
pub use graph::{HamiltonianCycle, MultisignedGraph};
pub use necklace::CoveringNecklace;
