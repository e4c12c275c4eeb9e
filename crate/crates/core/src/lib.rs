//! Censored stochastic block model toolkit: sampling, the exact-recovery
//! threshold and its degree-profile geometry, one- and two-matrix spectral
//! recovery, and reproducible experiment sweeps.

pub mod error;
pub mod graph_io;
pub mod harness;
pub mod info_geometry;
pub mod linalg;
pub mod model;
pub mod recovery;
pub mod spectral;

pub use error::{CsbmError, Result};
pub use model::{CensoredGraph, CommunityAssignment, DegreeProfile, ModelParams, RawParams};
