pub mod cli;
pub mod error;
pub mod fuzzy;
pub mod grfn;
pub mod grfv;
pub mod inference;
pub mod interval;
pub mod linalg;
pub mod normal;
pub mod precision;
pub mod randomset;

pub use error::{Error, Result};
pub use fuzzy::{Gfn, Gfv, ProductResult};
pub use grfn::{Grfn, GrfnFusion, GrfnKind};
pub use grfv::{Grfv, GrfvFusion};
pub use interval::Interval;
pub use precision::Precision;
