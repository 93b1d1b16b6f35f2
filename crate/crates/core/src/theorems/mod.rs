//! Cycle types, rank bounds and the extremal-graph characterizations.

mod bounds;
mod classify;
mod optimality;
mod reductions;

pub use bounds::{check_t30, check_t30_with, check_t60, check_t60_with, BoundReport};
pub use classify::{
    classify_cycle, classify_gain, cycle_inertia_formula, signed_specialization_check, CycleType, TYPE_A_TOL,
    TYPE_E_TOL,
};
pub use optimality::{
    lower_optimal_structural, upper_optimal_structural, verify_equivalence, verify_equivalence_with, Extremal,
    GraphStructure, OptimalityVerdict, StructuralFailure, StructuralVerdict,
};
pub use reductions::{pendant_reduction, pendant_reduction_at, vertex_deletion, PendantReduction, VertexDeletion};
