//! Exact computations with determinantal curves in `P^3` over prime fields:
//! homogeneous forms, matrices of forms with their minors and Pfaffians,
//! Hilbert functions via Macaulay-matrix ranks, the embedded-transpose
//! construction of intersecting curve pairs and the closed forms for their
//! intersection lengths.

pub mod construct;
pub mod error;
pub mod field;
pub mod formulas;
pub mod harness;
pub mod hilbert;
pub mod linalg;
pub mod matforms;
pub mod ring;

pub use construct::{
    build_linear_pair, build_uniform_pair, embed, gorenstein_generators, skew_matrix, union_matrix,
    ConstructionPair, Embedding,
};
pub use error::{AlgebraError, FormulaError, HarnessError, HilbertError};
pub use field::{FieldSpec, DEFAULT_PRIME};
pub use formulas::{bound_linear, bound_uniform, deg_acm, expected_betti, h_vector_gorenstein, BettiShape, BettiTerm};
pub use harness::{
    intersect_count, pfaffian_span_check, rational_point_oracle, run_scenario, tensor_views, verify_construction,
    ScenarioId, ScenarioReport, TensorViews, VerificationReport,
};
pub use hilbert::{hilbert_function, HilbertProfile, IdealDocument, IdealPresentation};
pub use matforms::{FormMatrix, MatrixDocument, SkewFormMatrix};
pub use ring::{Form, FormDocument, Monomial, Ring, Term};
