//! Matrices, presented modules, free resolutions and Tor.

pub mod matrix;
pub mod module;
pub mod resolution;
pub mod syzygy;
pub mod tor;

pub use matrix::Matrix;
pub use module::PresentedModule;
pub use resolution::{free_resolution, koszul_complex, FreeComplex};
pub use syzygy::{in_column_span, syzygies};
pub use tor::{chi, euler_characteristic, flat_base_change_check, koszul_euler, koszul_homology, tor, tor_all, FlatBaseChangeReport};
