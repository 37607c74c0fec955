//! Independent verification of constructed chains.
//!
//! [`verify`] re-checks every property from the definitions, trusting only
//! the tournament's arc relation. [`harness`] drives construction plus
//! verification over exhaustive and random inputs.

pub mod harness;
pub mod verify;

pub use harness::{
    exhaustive_check, random_stress, Counterexample, ExhaustiveSummary, StressSummary, Timing,
};
pub use verify::{
    brute_is_king_of_induced, brute_is_strong, brute_kings, verify_chain, CycleCheck, StepCheck,
    VerificationReport,
};
