//! Exact modular-data toolkit: cyclotomic arithmetic, finite abelian groups
//! and cocycles, fusion rings, modular data, constructions and conjecture
//! verification suites.

pub mod abelian;
pub mod construct;
pub mod cyclo;
pub mod error;
pub mod fusion;
pub mod modular;
pub mod verify;

pub use cyclo::{Cyclotomic, Phase};
pub use error::{Error, Result};
