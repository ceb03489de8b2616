//! Exact arithmetic for Hermitian lattices over imaginary quadratic rings,
//! their trace lattices, root systems, embeddings into `II_{2,26}`, and the
//! age and weight bookkeeping used to certify general type.

pub mod arith;
pub mod definite;
pub mod embeddings;
pub mod error;
pub mod general_type;
pub mod hermitian;
pub mod lattices;
pub mod matrix;
pub mod normal_form;
pub mod quadratic;
pub mod singularity;

pub use arith::{FieldElement, Rational, RingBasis};
pub use error::{LatticeError, Result};
pub use hermitian::{HermitianLattice, HermitianMap};
pub use quadratic::{trace_form, DiscriminantGroup, QuadraticLattice, Signature};
pub use general_type::{run_case, EmbeddingCase, Verdict, VerdictStatus};
