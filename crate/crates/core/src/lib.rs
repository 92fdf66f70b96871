//! Exact E-polynomials and Euler characteristics of free-group character
//! varieties for `GL_n`, `SL_n` and `PGL_n`, stratified by polystable type.

pub mod acceptance;
pub mod charvar;
pub mod closed_forms;
pub mod error;
pub mod fforacle;
pub mod partitions;
pub mod plethystic;
pub mod poly;
pub mod series;

pub use charvar::{CharVarEngine, GroupKind, StratumQuery};
pub use error::{Error, Result};
pub use partitions::{Partition, RectPartition};
pub use poly::RatPoly;
pub use series::TruncSeries;
