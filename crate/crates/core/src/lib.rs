//! Stanley decompositions of the syzygy modules `M(n,k)` of the residue field
//! in the upper half `⌊n/2⌋ ≤ k < n` of the Koszul complex.
//!
//! The construction is driven by the lexicographic matching `ψ` on the
//! Boolean lattice ([`matching`]). Each set `S` with `|S| − k` even gives a
//! Stanley space `K[Z_S] · X^{S∖G} ∂(e_G)` with `G = ψ^{|S|−k}(S)`
//! ([`decomposition`]). Everything needed to check that the result really is
//! a Stanley decomposition of depth `n − 1` is exhaustive and runs at desk
//! scale ([`decomposition::verify`], [`checks`]).
//!
//! ```
//! use koszul_sdepth::decomposition::{build_decomposition, verify::{verify_stanley, StanleyOptions}};
//!
//! let d = build_decomposition(7, 3).unwrap();
//! assert_eq!(d.summands.len(), 57);
//! assert_eq!(d.depth(), 6);
//! assert!(verify_stanley(7, 3, StanleyOptions::default()).unwrap().passed());
//! ```

pub mod checks;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod koszul;
pub mod matching;
pub mod subsets;

pub use error::{Error, Result};
pub use subsets::{GroundSet, Subset};
