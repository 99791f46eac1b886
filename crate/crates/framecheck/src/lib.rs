//! Decision procedures, certificates, and counterexample search for phase
//! retrieval, norm retrieval, and weak phase retrieval by finite frames and
//! orthogonal projection families in real n-space.
//!
//! The crate decides these properties exactly on rational inputs (partition
//! enumeration, fraction-free elimination), produces verified counterexample
//! pairs from closed-form constructions where a property fails, and falls
//! back to seeded randomized search where no finite decision procedure is
//! available. Inputs with irrational literals run in float mode under a
//! configurable tolerance.

pub mod error;
pub mod exec;
pub mod frames;
pub mod input;
pub mod linalg;
pub mod projections;
pub mod registry;
pub mod report;
pub mod retrieval;
pub mod scalar;
pub mod search;
pub mod weak_phase;

pub use error::{Error, Result};
pub use scalar::{Scalar, DEFAULT_TOL};

/// Shared knobs for the deciders: float-mode tolerance and the cap on
/// exact subset/partition enumeration (2^m growth).
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub tol: f64,
    pub exact_cap: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            tol: DEFAULT_TOL,
            exact_cap: 24,
        }
    }
}

impl Settings {
    pub fn with_tol(tol: f64) -> Self {
        Settings {
            tol,
            ..Settings::default()
        }
    }
}
