pub mod error;
pub mod experiment;
pub mod field;
pub mod fourier;
pub mod functions;
pub mod integrate;
pub mod io;
pub mod multidim;
pub mod numerics;
pub mod operators;

pub use error::{Error, Result};
