pub mod error;
pub mod fock;
pub mod golden;
pub mod gv;
pub mod mukai;
pub mod pairs;
pub mod qseries;
pub mod rational;
pub mod taut;

pub use error::{Error, Result};
pub use qseries::QSeries;
pub use rational::Q;
