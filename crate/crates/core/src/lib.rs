//! Renormalization machinery for linear trajectories on the regular-octagon
//! translation surface: cutting sequences and their derivation, the octagon
//! Farey and Gauss continued-fraction maps with their natural extensions and
//! invariant measures, and the hyperbolic-disk geodesic coding tying them
//! together. All dynamics run in exact Q(√2) arithmetic; floating point only
//! appears in presentation layers and in independent cross-validation oracles.

pub mod cfmaps;
pub mod error;
pub mod natext;
pub mod projline;
pub mod qsqrt2;
pub mod sampling;
pub mod surface;
pub mod svg;
pub mod symbolic;
pub mod teich;
pub mod verify;

pub use error::Error;
pub use projline::{ProjPoint, SectorIndex};
pub use qsqrt2::{Mat2, QSqrt2};
