pub mod complex;
pub mod dictionary;
pub mod error;
pub mod experiment;
pub mod io;
pub mod linalg;
pub mod slepian;
pub mod sparse;
pub mod spectral;
pub mod synth;
pub mod tol;

pub use error::{Error, Result};
