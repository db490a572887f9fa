//! Parking functions, minimal factorizations of full cycles, and the
//! bijections and statistics relating them.

pub mod arch;
pub mod error;
pub mod factor;
pub mod inverse;
pub mod parking;
pub mod perm;
pub mod poly;
pub mod render;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
