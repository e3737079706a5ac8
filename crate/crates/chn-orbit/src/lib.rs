//! Exact-arithmetic analysis of homogeneous submanifolds of the complex
//! hyperbolic space `CH^n`, realized through its solvable model.
//!
//! The crate builds the real Lie algebra `su(1,n)` over Gaussian rationals,
//! computes its restricted root space decomposition, and analyzes orbits of
//! connected subgroups whose Lie algebras sit inside the parabolic subalgebra
//! `k0 + a + n`: second fundamental form, mean curvature, minimality, total
//! geodesy, and the classification of the minimal orbits.
//!
//! All core computations are exact (arbitrary-precision rationals); no
//! floating point enters any decision. Floats appear only in optional
//! reporting (Kaehler angle values and cross-checks).

pub mod algebra;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod scalar;
pub mod subalg;

pub use algebra::{build_algebra, AlgebraContext, IdentityReport, LieVector};
pub use classify::{
    branch2_subalgebra, branch3_subalgebra, build_family_a, build_family_b, build_twisted,
    match_classification, realize_subspace, solve_k0_action, solve_twist, verify_identities,
    verify_sandwich, ClassificationVerdict, Family, IdentityOutcome, IdentitySuiteResult, Label,
    ReductionTrail, SubspaceSpec,
};
pub use corpus::{generate_corpus, CorpusStats};

pub use error::{Error, Result};
pub use geometry::{
    is_minimal, is_minimal_float, is_totally_geodesic, kaehler_angles, koszul_sff, mean_curvature,
    minimality_report, sff_an, sff_p, sff_tensor, tangent_normal, KaehlerLabel, KaehlerReport,
    MinimalityReport, NonminimalityCertificate, SffTensor, TangentNormalSplit,
};

pub use scalar::{GaussRat, Rat};
pub use subalg::{
    closure_check, conjugate_to_base_point, decompose, lie_span, CanonicalDecomposition,
    ClosureOutcome, GroupElement, Subalgebra,
};
