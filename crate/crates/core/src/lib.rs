//! Orthogonal polynomials for Jacobi-type weights w(x) = (1−x)^α (1+x)^β h(x)
//! on [−1, 1], evaluated through the large-degree Riemann–Hilbert expansion.

pub mod bessel;
pub mod branches;
pub mod coeffs;
pub mod contours;
pub mod error;
pub mod eval;
pub mod jet;
pub mod oracle;
pub mod quadrature;
pub mod weights;

pub use branches::{CPoint, Side};
pub use coeffs::CoeffTable;
pub use contours::{AuxData, ContourParams, Endpoint};
pub use error::{Error, Result};
pub use eval::{Engine, EngineOptions, EvalResult, Region};
pub use jet::{ComplexMat2, Jet, C64};
pub use oracle::RecurrenceTable;
pub use quadrature::{gauss_rule, QuadMethod, QuadRule};
pub use weights::{HSpec, WeightSpec};
