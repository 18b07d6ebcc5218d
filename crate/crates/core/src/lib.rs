//! Two-qubit Bell-diagonal states under Markovian and non-Markovian
//! phase damping: quantum discord in closed form and by brute-force
//! measurement optimization, and the necessary-and-sufficient conditions
//! for the discord-freezing phenomenon.
//!
//! Modules mirror the pipeline: [`qmath`] holds the dense complex kernels
//! and entropy functions, [`states`] the two state families, [`channels`]
//! the dephasing flow and time schedules, [`discord`] the correlation
//! measures, and [`freezing`] the condition analysis, surface geometry
//! and transition scanning.

pub mod channels;
pub mod discord;
pub mod error;
pub mod freezing;
pub mod qmath;
pub mod states;

pub use channels::{
    dephase_bell_diagonal, dephase_extended, dephase_qubit, dephase_subsystem, evolve_spectrum,
    NoiseSchedule, ParametrizedTime,
};
pub use discord::{
    classical_correlation, convexity_gap, discord_analytic, discord_bruteforce, discord_rate,
    dominant_correlation, mixing_reformulation, mutual_information, Branch, DiscordRate,
    DominantCorrelation, Measurement,
};
pub use error::{Error, Result};
pub use freezing::{
    boundary_curves, check_condition, default_scan_step, discord_at_time, frozen_value,
    multiple_transition_threshold, nonmarkovian_transitions, sample_surface, sudden_change_rate,
    transition_q, BoundaryPoint, Condition, ConditionVerdict, FreezeReport, OrderClass,
    RtnThreshold, SurfacePoint, TransitionDirection, TransitionEvent, DEFAULT_CONDITION_TOL,
};
pub use qmath::{
    binary_entropy, hermitian_eigenvalues, kron, partial_trace, relative_entropy, shannon_entropy,
    ComplexMatrix, ProbVector, Subsystem,
};
pub use states::{BellDiagonal, ExtendedBellDiagonal, ExtendedEigensystem, Spectrum, StateSpec};
