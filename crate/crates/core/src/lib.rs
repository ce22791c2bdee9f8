pub mod analysis;
pub mod cli;
pub mod error;
pub mod glm;
pub mod numerics;
pub mod phase;
pub mod separation;
pub mod sim;

pub use error::{Error, Result};
