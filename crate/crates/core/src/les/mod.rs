//! Cohomology knowledge and its propagation along long exact sequences.

pub mod cohdim;
pub mod engine;
pub mod ses;
pub mod sheaf;

pub use cohdim::{refine, CohDim, CohDimKind, Contradiction};
pub use engine::{
    certifies_zero, flenner, omega_table, shared_engine, vanishing_threshold, vanishing_threshold_in, Axiom, AxiomSet,
    BoundaryStatus, ChainSolver, Direction, EngineError, SheafKey, SheafKind, ThresholdReport, VarietyEngine,
};
pub use ses::{propagate_les, propagate_ses, LesContradiction};
pub use sheaf::{serre_dual, CohEntry, CohTable, SheafBase, SheafExpr};
