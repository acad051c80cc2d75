//! Exact super-Hochschild cohomology of finite-dimensional associative superalgebras.
//!
//! Everything is computed over `Q` or a prime field with exact arithmetic; no
//! comparison anywhere uses a tolerance.

pub mod bilinear;
pub mod cochain;
pub mod cohomology;
pub mod deformation;
pub mod error;
pub mod exactfield;
pub mod format;
pub mod parity;
pub mod products;
pub mod superalgebra;
pub mod supermodule;

pub use bilinear::BilinearMap;
pub use cochain::{delta, delta_matrix, Cochain, CochainShape, Complex, MixedCochain};
pub use cohomology::{
    cohomology, CohomologyDims, CohomologyGroup, CohomologyReport, DEFAULT_MAX_ARITY,
};
pub use deformation::{Deformation, ExtendOutcome, FormalIsomorphism};
pub use error::{Error, Result};
pub use exactfield::{DenseMatrix, Field, Scalar};
pub use format::{AlgebraFile, CochainFile, DeformationFile, ModuleFile};
pub use parity::Parity;
pub use products::{AuditReport, Coeff, ProductContext, Witness};
pub use superalgebra::{make_named, NamedAlgebra, SuperAlgebra, SuperElement};
pub use supermodule::{hom_module, self_module, square_zero_algebra, SuperBimodule};
