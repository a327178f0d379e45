pub mod algebra;
pub mod corep;
pub mod duality;
pub mod error;
pub mod exactnum;
pub mod haar;
pub mod mhopf;
pub mod models;
pub mod report;
pub mod suite;

pub use error::{Error, Result, Witness};
pub use exactnum::{Matrix, Scalar};
