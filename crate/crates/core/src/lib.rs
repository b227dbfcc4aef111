//! Exact rational computations with free Lie algebras, symplectic derivation
//! algebras, trace maps, Johnson homomorphisms, Chevalley–Eilenberg cochains
//! on the symplectic derivation algebra and graph cochains.

pub mod cohomology;
pub mod derivation;
pub mod error;
pub mod free_lie;
pub mod graph;
pub mod johnson;
pub mod linalg;
pub mod rational;
pub mod rep;
pub mod selfcheck;
pub mod tensor;
pub mod trace;

pub use cohomology::{cohomology_row, Cochain, CohomologyRow, ComplexSlice, HComplex, InvariantCohomology};
pub use derivation::{h_basis, omega_action, tau1_iso, Derivation, HSlice, OmegaConvention, Tau1Iso, DEFAULT_CAP};
pub use error::{Error, Result};
pub use free_lie::{bracket, lyndon_basis, project_to_lie, witt_dim, BracketExpr, LiePoly};
pub use graph::{bidegree, enumerate_graphs, phi_cochain, Bidegree, OddGraph, VertexType};
pub use johnson::{
    filtration_level, fixes_boundary, johnson_tau, lcs_depth, magnus, Endomorphism, FiltrationLevel, GroupWord,
    LcsDepth, MagnusSeries,
};
pub use linalg::{kernel_basis, rank, SparseMatrix, SparseVec, Subspace, SubspaceOp, SubspaceOpResult};
pub use rational::Rational;
pub use tensor::{BasisContext, ExtPoly, LinearOp, SymPoly, TensorPoly};
pub use trace::{fox_partials, trace_k, FoxRow};
