pub mod cyclic;
pub mod error;
pub mod exact;
pub mod group;
pub mod io;
pub mod magic;
pub mod quasiflat;
pub mod rep;
pub mod report;
pub mod suite;
pub mod thoma;

pub use error::{Error, Result};
