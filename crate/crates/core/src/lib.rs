//! Fiberization of `L2(G)` over finite abelian groups.
//!
//! For a finite abelian group `G` and a subgroup `Gamma`, the Zak-type
//! transform [`fiber::zak`] identifies `L2(G)` with `L2(Omega, L2(C))`,
//! where `Omega` is a section of the dual quotient by `Gamma*` and `C` a
//! section of `G / Gamma`. Under this identification
//!
//! * `Gamma`-translation-invariant subspaces are range functions
//!   `w -> J(w)` ([`spaces`]);
//! * operators commuting with `Gamma`-translations are range-operator
//!   fields `w -> R(w)` ([`operators`]), with
//!   `||U|| = max_w ||R(w)||`, Hilbert-Schmidt norms and traces summing
//!   over fibers, and isometry/self-adjointness holding fiberwise.
//!
//! Every identity is checked numerically against direct computation. See
//! the `examples/` directory for one runnable walk-through per capability.

pub mod cli;
pub mod error;
pub mod fiber;
pub mod group;
pub mod json;
pub mod linalg;
pub mod operators;
pub mod report;
pub mod sampling;
pub mod signal;
pub mod spaces;
pub mod tolerance;

pub use error::{Error, Result};
pub use fiber::{
    determining_function, determining_set, fiber_context, zak, zak_inverse, DeterminingFunction, FiberContext,
    FiberedVector,
};
pub use group::{
    all_subgroups, annihilator, translate, transversal, DualElement, GroupElement, GroupSpec, Subgroup, Transversal,
};
pub use linalg::CMatrix;
pub use operators::{
    check_translation_preserving, extract_range_operator, fiber_solve, hs_trace_report, induced_operator,
    multiplication_preserving_check, norm_identity_report, structural_flags, synthesize_operator, MultiplicationMode,
    OperatorMatrix, RangeOperatorField,
};
pub use report::VerificationReport;
pub use signal::{SignalVector, C64};
pub use spaces::{
    is_translation_invariant, parseval_fiber_check, principal_decomposition, project_via_fibers, range_function,
    space_from_range, translate_frame, translate_span, RangeFunction, SubspaceBasis,
};
pub use tolerance::Tolerances;
