pub mod dfa;
pub mod dpda;
pub mod format;
pub mod machines;

pub use dfa::{CombineOp, Dfa, DfaRun};
pub use dpda::{Config, Dpda, RunOptions, RunOutcome, RunTrace, StepKind, TraceStep, Transition};
pub use format::{dfa_to_text, dpda_to_text, parse_machine, Machine};
