//! Exact series engine for deformed Bose gas models.
//!
//! The pipeline runs from a deformation structure function `φ(n)` through the
//! grand-partition series, the generalised Jackson derivative, series
//! reversion to the fugacity as a function of the reduced density, and finally
//! the virial coefficients of the equation of state. All of it is generic over
//! the coefficient ring, so the same code produces exact surd values, symbolic
//! polynomials in the deformation deviation, or high-precision decimals.

pub mod error;
pub mod exact;
pub mod perturb;
pub mod series;
pub mod structfn;
pub mod thermo;

pub use error::{Error, Result};
pub use exact::{
    Coeff, Decimal, PolyBounds, Rational, Scalar, SurdRational, TruncPoly, Var, GUARD_DIGITS,
};
pub use perturb::{hamiltonian_split, two_param_split, HamiltonianSplit, NPoly, TwoParamSplit};
pub use series::{PowerSeries, SeriesVar};
pub use structfn::StructureFunction;
pub use thermo::{Backend, ClosedFormMode, GasModel, Provenance, VirialTable};
