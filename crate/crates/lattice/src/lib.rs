//! Exact integral lattices presented by Gram matrices: a small spec-string
//! grammar for direct sums of the standard constructors, and the invariants
//! (rank, signature, discriminant group, length, parity) that classify even
//! indefinite two-elementary lattices.

pub mod gram;
pub mod invariants;
pub mod presentations;

pub use gram::{build_lattice, GramLattice, LatticeError};
pub use invariants::{invariants, triple_equal, NikulinTriple};
pub use presentations::{polarization_chain_check, ChainReport, PresentationFamily, PRESENTATIONS};
