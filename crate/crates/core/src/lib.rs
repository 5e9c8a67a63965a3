pub mod basis;
pub mod error;
pub mod rv;

pub use error::{Error, Result};
pub mod pcnn;
pub mod auxnet;
pub mod train;
pub mod analyze;
pub mod bench;
pub mod config;
pub mod pipeline;
