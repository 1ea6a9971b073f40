pub mod cli;
pub mod error;
pub mod grass;
pub mod holo;
pub mod ocs;
pub mod qcore;
pub mod sampling;
pub mod slice;
pub mod suite;
pub mod surfaces;
pub mod twistor;

pub use error::{Error, Result};
