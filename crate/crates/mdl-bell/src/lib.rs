//! Measurement-dependent Bell inequalities, end to end: scenario and
//! behavior types, weighted-correlator functionals, exact local and
//! algebraic bounds by enumeration, the measurement-dependence transform
//! with its strong-dependence bounds, explicit quantum strategies for the
//! Peres-Mermin square and the GHZ state, and a brute-force vertex oracle
//! that cross-checks every closed-form bound.

pub mod behavior;
pub mod bounds;
pub mod error;
pub mod fmt;
pub mod functional;
pub mod json;
pub mod mdl;
pub mod oracle;
pub mod quantum;
pub mod scan;
pub mod scenario;

pub use behavior::{conditional_to_joint, Behavior, InputDistribution, JointBehavior};
pub use bounds::{
    algebraic_bound, local_bound, quantum_parts, BoundReport, DeterministicStrategy, Witness,
};
pub use error::{Error, Result};
pub use functional::{
    builtin_functional, correlator, BellFunctional, BuiltinName, CorrelatorFlavor, CorrelatorSpec,
    Kind,
};
pub use mdl::{
    check_feasible, critical_q, md_transform, putz_local_bound, smd_local_bound,
    smd_quantum_value, visibility_sweep, CriticalQ, MdlParams, SweepRow,
};
pub use oracle::{
    box_vertices, enumerate_box_vertices, oracle_mdl_max, oracle_smd_max, verify_bounds,
    MdlOracleReport, SmdOracleReport, StrongMdlVertex, VerificationReport,
};
pub use quantum::{
    behavior_from_strategy, ghz_strategy, pm_strategy, ComplexMatrix, Measurement, NoisySpec,
    QuantumStrategy,
};
pub use scan::ScanOptions;
pub use scenario::Scenario;
