//! Exact tiling tests for polytopes under lattice translations.
//!
//! A polytope (or formal combination of simplices) tiles by a lattice `L` at
//! level `k` when almost every point is covered exactly `k` times by its
//! `L`-translates. [`invariants::is_tiling`] decides this exactly through
//! Hadwiger-type functionals attached to flag orbits; [`verify`] provides
//! independent sampling and Fourier oracles, [`criteria`] the classical
//! low-dimensional tests, and [`decomp`] constructive equidecompositions.
//!
//! ```
//! use multitile::invariants::is_tiling;
//! use multitile::{GroupElement, Lattice, Polytope, Simplex};
//!
//! let square = Polytope::new(2, vec![
//!     Simplex::from_ints(&[&[0, 0], &[1, 0], &[0, 1]])?,
//!     Simplex::from_ints(&[&[1, 0], &[1, 1], &[0, 1]])?,
//! ])?;
//! let verdict = is_tiling(&GroupElement::from_polytope(&square), &Lattice::integer(2))?;
//! assert_eq!(verdict.level, Some(1));
//! # Ok::<(), multitile::Error>(())
//! ```

pub mod criteria;
pub mod decomp;
pub mod error;
pub mod exact;
pub mod flags;
pub mod geom;
pub mod invariants;
pub mod io;
pub mod lattice;
pub mod par;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{QMatrix, QVector, Rational};
pub use geom::{GroupElement, Polytope, Simplex};
pub use invariants::{is_tiling, HadwigerReport, TilingVerdict};
pub use lattice::Lattice;
pub use par::Exec;
