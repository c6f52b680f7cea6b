//! Stability analysis of explicit finite difference schemes for one-dimensional
//! advection with ghost-point boundary conditions.
//!
//! The core quantity is the intrinsic Kreiss-Lopatinskii determinant evaluated on
//! the unit circle; its winding number around the origin counts the unstable
//! boundary modes. Most types are generic over the scalar; the aliases below fix
//! it to `f64`.

pub mod boundary;
pub mod error;
pub mod export;
pub mod kldet;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod scheme;
pub mod tolerances;
pub mod verdict;
pub mod winding;

pub use boundary::BoundarySpec;
pub use error::{Error, Result};
pub use scheme::SchemeTemplate;
pub use tolerances::Tolerances;
pub use verdict::{check, sweep, Status, StabilityVerdict, SweepGrid};
pub use winding::{winding_number, WindingResult};

pub type Complex = num_complex::Complex<f64>;
pub type Matrix = linalg::Matrix<f64>;
pub type Polynomial = poly::Polynomial<f64>;
pub type Scheme = scheme::Scheme<f64>;
pub type BoundaryCondition = boundary::BoundaryCondition<f64>;
pub type ReconstructionSpec = boundary::ReconstructionSpec<f64>;
pub type StableRootSet = kldet::StableRootSet<f64>;
pub type KlCurve = kldet::KlCurve<f64>;
pub type QuasiToeplitzMatrix = oracle::QuasiToeplitzMatrix<f64>;
pub type SimulationRun = oracle::SimulationRun<f64>;
