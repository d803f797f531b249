pub mod abelian;
pub mod budget;
pub mod cohomology;
pub mod cover;
pub mod error;
pub mod extension;
pub mod group;
pub mod moduli;
pub mod scenario;
pub mod surface;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
