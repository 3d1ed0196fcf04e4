//! Exact computation of algebraic restrictions of differential forms to
//! quasi-homogeneous ideals, together with the discrete symplectic invariants
//! and the symplectic classification of zero-dimensional isolated complete
//! intersection singularities.

pub mod error;
pub mod forms;
pub mod ideals;
pub mod linalg;
pub mod poly;
pub mod restrictions;
pub mod symclass;

pub use error::{Error, Result};
pub use forms::{DiffForm, FormKey, PolyMap, VectorField};
pub use ideals::{find_weights, jet_membership, EmbeddingCodim, FGIdeal, IdealJets, QhData, DEFAULT_TRUNC_CAP};
pub use poly::{q, qf, Monomial, Poly, QuasiDegree, Weights, Q};
pub use restrictions::{graded_primitive, homotopy_primitive, index_sets, AlgRestriction, RestrictionSpace};
pub use symclass::{
    classify, coordinate_lagrangians_in, derlog, index_of_isotropy, invariants, realizable, recognize,
    reduce_to_submanifold, symplectic_multiplicity, symplectic_names, table_notes, table_rows, ClassRecord,
    Family, Invariants, Iota, Params, Reduction, SymplecticForm,
};
