pub mod algebra;
pub mod canonical;
pub mod classical;
pub mod cli;
pub mod debranges;
pub mod error;
pub mod paleywiener;
pub mod quad;
pub mod sampling;
pub mod screw;
pub mod spectra;
pub mod weyl;

pub use error::{Error, Result};
