//! Order complexes of finite posets and their reduced homology over a field.

mod betti;
mod field;
mod homology;
mod simplicial;

pub use betti::BettiVector;
pub use field::Field;
pub use homology::{boundary_ranks, euler_characteristic, reduced_betti};
pub use simplicial::{order_complex, SimplicialComplex};
