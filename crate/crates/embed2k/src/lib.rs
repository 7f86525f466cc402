//! Exact deciders for Z2- and Z-embeddability of k-dimensional simplicial
//! complexes into compact (k-1)-connected PL 2k-manifolds, where the target
//! manifold is described only by its middle intersection-form data.
//!
//! The library works over three exact coefficient domains:
//!
//! * GF(2), backed by bit-packed matrices ([`linalg::gf2`]);
//! * the integers, backed by arbitrary-precision dense matrices;
//! * the rationals, used for exact computational geometry.
//!
//! The pipeline is: build a general position linear map of the complex into
//! R^2k on the moment curve ([`geometry`]), read off its intersection cocycle
//! on nonadjacent face pairs, and decide embeddability by searching for a
//! homology homomorphism whose induced cocycle is cohomologous to the
//! intersection cocycle ([`decide`]). Everything is deterministic and
//! exact; there is no floating point anywhere.

pub mod complex;
pub mod cocycle;
pub mod decide;
pub mod error;
pub mod geometry;
pub mod linalg;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Dense exact integer matrix.
pub type IntMatrix = linalg::Matrix<BigInt>;
/// Dense exact rational matrix.
pub type RatMatrix = linalg::Matrix<BigRational>;

/// Number of worker threads to use for independent per-pair computations.
///
/// Controlled by the `EMBED2K_THREADS` environment variable; defaults to the
/// available parallelism capped at 8. Results never depend on this value.
pub fn thread_count() -> usize {
    if let Ok(v) = std::env::var("EMBED2K_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            return n.clamp(1, 64);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get().min(8))
        .unwrap_or(1)
}
