//! Degree ≤ 1 part of the families index formula for a Z/m action.
//!
//! Degree 0 determines the signatures (a_q, b_q) of the Hodge eigenbundles;
//! degree 1 gives a square linear system J·c = K·(σ, η)ᵀ for the first Chern
//! classes c_s = c₁(E_{ζ^s}), s = 0..⌊m/2⌋. J has ⌊m/2⌋ + 1 rows and columns:
//! one normalization row plus the character rows r = 1..⌊m/2⌋.

mod deg0;
mod expr;
mod jet;
mod solve;
mod system;

pub use deg0::{
    deg0_residual, mcmullen_count, rhs0, solve_deg0, Deg0Method, EigenSignature, InverseDft,
    RootCount, SigEntry,
};
pub use expr::{Coefficient, CohomExpr};
pub use jet::{coth_jet, rhs_jet, Jet1};
pub use solve::{
    q_label, solve_deg1, verify_deg1, ClassSolver, EliminationSolver, OrthogonalitySolver,
    SolvedClass, SolvedClasses,
};
pub use system::{
    build_system, character_exponents, character_value, character_weight, j_matrix, k_entry,
    Column, FlatSum, HodgeTrace, IndexSystem, SigmaRow,
};
