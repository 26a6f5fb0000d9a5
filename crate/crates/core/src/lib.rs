pub mod cli;
pub mod counting;
pub mod design;
pub mod dsu;
pub mod error;
pub mod expected;
pub mod gf;
pub mod pgroup;
pub mod scheme;
pub mod wl;

pub use error::{Error, Result};
