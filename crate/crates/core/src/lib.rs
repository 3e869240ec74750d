//! Exact windowed Chevalley–Eilenberg cohomology for Z-graded Lie algebras,
//! with the Witt and Virasoro algebras built in.

pub mod cochain;
pub mod cohomology;
pub mod deform;
pub mod lie;
pub mod linalg;
pub mod replay;
pub mod report;
pub mod scalar;
pub mod symbolic;
pub mod window;

pub use lie::{check_jacobi, load_algebra, make_virasoro, make_witt, Element, Gen, GradedLieAlgebra};
pub use scalar::Scalar;
pub use window::Window;
