//! Energy-minimal trees of bounded maximum degree.
//!
//! The crate builds the extremal trees `T*(n, d)` (trees on `n` vertices with
//! maximum degree at most `d + 1` that minimize both the Hosoya index and the
//! graph energy), computes matching polynomials exactly, computes energy by
//! three independent routes (dense eigensolver, Coulson integral, closed forms
//! for complete `d`-ary trees) and exhaustively checks the minimality claims
//! for small `n`.
//!
//! Module map:
//!
//! * [`tree`], [`canon`], [`expansion`], [`outline`]: tree representations,
//!   canonical codes, digital expansions and extremal trees, outline graphs.
//! * [`poly`], [`matching`], [`qpoly`]: exact polynomial arithmetic, matching
//!   polynomials and the `Q_j` family.
//! * [`spectral`], [`coulson`], [`alpha`]: energies and the growth constant.
//! * [`enumerate`], [`verify`]: free-tree enumeration, brute-force oracles and
//!   verification reports.
//! * [`cli`]: the `etrees` command line front end.

pub mod alpha;
pub mod canon;
pub mod cli;
pub mod coulson;
pub mod enumerate;
pub mod error;
pub mod expansion;
pub mod fmt;
pub mod matching;
pub mod outline;
pub mod poly;
pub mod qpoly;
pub mod spectral;
pub mod tree;
pub mod verify;

pub use crate::canon::{canonical_code, CanonicalCode};
pub use crate::error::{Error, Result};
pub use crate::expansion::{digital_expansion, extremal_tree, DigitalExpansion, TerminalKind};
pub use crate::tree::{complete_dary, FreeTree, RootedTree, TreeClassParams};
