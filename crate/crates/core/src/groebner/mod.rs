//! Gröbner bases for ideals and submodules of free modules, ideal
//! arithmetic, Krull dimension and Hilbert series.

pub mod buchberger;
pub mod hilbert;
pub mod ideal;
pub mod vector;

pub use buchberger::{groebner_basis, Reducers};
pub use hilbert::HilbertSeries;
pub use ideal::Ideal;
pub use vector::{BaseKind, FrameLead, ModuleOrder, OrderKind, SchreyerFrame, Term, Vector};
