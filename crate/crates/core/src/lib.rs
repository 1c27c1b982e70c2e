pub mod approx;
pub mod complexes;
pub mod error;
pub mod groebner;
pub mod matrix;
pub mod mf;
pub mod polyring;
pub mod quotmod;
pub mod reflexivity;
pub mod stab;

pub use error::{Error, Result};
