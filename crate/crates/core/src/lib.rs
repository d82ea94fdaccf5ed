pub mod cli;
pub mod composite;
pub mod error;
pub mod invgauss;
pub mod oracle;
pub mod quad;
pub mod series;
pub mod specfun;
pub mod stable;
pub mod tempered;

pub use error::{Error, Result};
pub use series::{DensityValue, Method, SeriesConfig};
