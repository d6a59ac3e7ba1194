//! Integer persistent homology and spectral sequences of filtered chain
//! complexes, with exact Z-linear algebra throughout.
//!
//! The crate computes, for a finite filtered chain complex (or filtered
//! simplicial complex):
//!
//! * spectral sequence pages `E^r_{p,q}`, their differentials, image groups
//!   and the convergence level ([`spectral`]);
//! * integer persistent homology: the born/dying groups `BD^{i,k}_n`, the
//!   total groups `H^{i,j}_n`, the double-filtration groups `H^{i,j,k}_n`,
//!   all with explicit generator cycles ([`persistence`]), plus an
//!   independent oracle path ([`oracle`]) and a field-coefficient mode
//!   ([`field`]);
//! * integer barcode diagrams with group and extension labels, rendered as
//!   text or SVG ([`barcode`]);
//! * reductions and strong chain equivalences, homotopy filtration orders,
//!   and transfer of spectral/persistence results across an equivalence
//!   ([`transfer`]).
//!
//! Everything is exact: matrices are arbitrary-precision ([`matrix`]),
//! subgroups of Z^m are kept in canonical Hermite form ([`lattice`]), and
//! finitely generated abelian groups are reported by their invariant factors
//! ("basis-divisors" descriptions) with generator chains.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything can be queried concurrently without
//! synchronization.
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability, and the `perseq` binary for the command-line front end.

pub mod barcode;
pub mod complex;
pub mod field;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod parse;
pub mod persistence;
pub mod random;
pub mod samples;
pub mod simplicial;
pub mod spectral;
pub mod transfer;

pub use complex::{Chain, ChainComplexBuilder, Degree, FilteredChainComplex, Generator, Level, Stage};
pub use lattice::{AbelianGroupPresentation, Lattice};
pub use matrix::{IntMatrix, SmithDecomposition};
pub use persistence::Death;
pub use simplicial::FilteredSimplicialComplex;
