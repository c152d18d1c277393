//! Signed graphs with at most 64 vertices: switching, spectra, forbidden
//! unbalanced triangles, named extremal families and the searches that compare
//! them.
//!
//! ```
//! use sgx_core::families::gamma;
//! use sgx_core::spectra::index;
//!
//! let g = gamma(6, 3).unwrap();
//! assert!((index(&g) - 4.0).abs() < 1e-9);
//! ```

pub mod error;
pub mod exec;
pub mod families;
pub mod forbidden;
pub mod graph;
pub mod io;
pub mod iso;
pub mod matching;
pub mod search;
pub mod spectra;
pub mod switching;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use forbidden::{ForbiddenKind, ForbiddenSpec};
pub use graph::{Sign, SignedGraph, SwitchSet, MAX_VERTICES};
