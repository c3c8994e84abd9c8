//! Hardy's Z-function, the second-moment integral, Jacob's ladder φ₁ and
//! the reversely iterated segment transform built on top of them.

pub mod cli;
pub mod error;
pub mod euler_kernel;
pub mod experiments;
pub mod ladder;
pub mod moment;
pub mod quadrature;
pub mod report;
pub mod roots;
pub mod special;
pub mod transform;

pub use error::{Error, Result};
