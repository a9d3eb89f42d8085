//! Exact computations for Mori dream spaces realized as simplicial projective
//! toric varieties.
//!
//! Everything is generic over an exact integer scalar ([`Int`]); the aliases
//! below fix it to `i64`, with `Big*` variants for arbitrary precision.

pub mod catalog;
pub mod cone;
pub mod error;
pub mod fano;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod mds;
pub mod mmp;
pub mod scalar;
pub mod toric;

use num_bigint::BigInt;

pub use error::{Error, Result};
pub use scalar::Int;

pub type Fan = toric::Fan<i64>;
pub type BigFan = toric::Fan<BigInt>;
pub type Cone = cone::PolyCone<i64>;
pub type BigCone = cone::PolyCone<BigInt>;
pub type ExtremalRay = toric::ExtremalRay<i64>;
pub type MoriTrace = mmp::MoriTrace<i64>;
pub type ConeInventory = mds::ConeInventory<i64>;
pub type ChamberAtlas = mds::ChamberAtlas<i64>;
