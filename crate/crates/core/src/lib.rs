//! Exact-arithmetic relative cohomology and support varieties for
//! Cartan-type Lie superalgebras.
//!
//! Everything is computed over the rationals with no floating point:
//! algebras W(n), S(n), Sbar(n), gl(m|n) are built from superderivation or
//! matrix-unit composition, relative cochain complexes are assembled from
//! the Koszul-sign differential, and cohomology dimensions fall out of
//! sparse rank computations. An independent invariant-theory route and a
//! rank-variety sampler cross-check the homological answers.

pub mod cli;
pub mod liesuper;
pub mod cochain;
pub mod cohomology;
pub mod invariants;
pub mod ratlin;
pub mod smodule;
pub mod superspace;
pub mod varieties;
pub mod weights;
