//! Instance files, belief panels, and report emission.

mod instance;

pub use instance::*;
