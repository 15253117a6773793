//! Kolakoski-(3,1) as a (deformed) cut-and-project model set.
//!
//! * [`field`]: exact arithmetic in Q(α), α³ = 2α² + 1, and the internal plane.
//! * [`sequences`]: Kolakoski generators, the block substitution A ↦ ABC,
//!   B ↦ AB, C ↦ B and its Perron data.
//! * [`windows`]: the iterated function systems for the windows and their
//!   boundary, exact map identities, rhombus certificates, membership.
//! * [`modelset`]: lattice, star map, the point set ΣKol(3,1) and checks
//!   relating it to the model set Λ(Ω).
//! * [`diffraction`]: dual lattice, Fourier–Bohr amplitudes and the two
//!   linear deformations to equal and integer bond lengths.

pub mod diffraction;
pub mod error;
pub mod field;
pub mod io;
pub mod modelset;
pub mod report;
pub mod sequences;
pub mod windows;

pub use error::{Error, Result};
pub use field::{consts, CubicInt, CubicNumber, EmbeddingConstants, InternalPoint};
