//! Desk-scale tools for incompressibility arguments about formal languages.
//!
//! - [`codec`]: the string/number bijection, self-delimiting codes, pairing.
//! - [`automata`]: DFAs and DPDAs, a text format, shipped machines.
//! - [`zoo`]: membership oracles for the example languages.
//! - [`charseq`]: characteristic sequences, residual tables, regularity evidence.
//! - [`kolmogorov`]: Ĉ, an upper bound on C relative to a versioned decoder suite.
//! - [`dcfl`]: stack profiles and the Case 1 / Case 2 analysis of DPDA runs.
//! - [`rec`]: λ, time-bounded halting sequences, the sparse sequence `h`.

pub mod automata;
pub mod charseq;
pub mod codec;
pub mod dcfl;
pub mod error;
pub mod kolmogorov;
pub mod rec;
pub mod word;
pub mod zoo;

pub use error::Error;
pub use word::{Alphabet, Natural, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Operation {
    pub module: &'static str,
    pub name: &'static str,
}

const fn op(module: &'static str, name: &'static str) -> Operation {
    Operation { module, name }
}

/// Every public operation, by module. Front ends check their coverage against this.
pub const OPERATIONS: &[Operation] = &[
    op("codec", "nat_str_bijection"),
    op("codec", "self_delim"),
    op("codec", "pair"),
    op("automata", "dfa_run"),
    op("automata", "dfa_combine"),
    op("automata", "dfa_minimize"),
    op("automata", "dpda_run"),
    op("zoo", "zoo_oracle"),
    op("zoo", "enumerate"),
    op("zoo", "nth_in_residual"),
    op("charseq", "chi_prefix"),
    op("charseq", "residual_table"),
    op("charseq", "synthesize_dfa"),
    op("charseq", "regularity_verdict"),
    op("kolmogorov", "estimate_C"),
    op("kolmogorov", "install_residual_decoder"),
    op("kolmogorov", "find_incompressible"),
    op("kolmogorov", "substring_bound_check"),
    op("kolmogorov", "a_n_census"),
    op("dcfl", "stack_profile"),
    op("dcfl", "case_classify"),
    op("dcfl", "cycle_detect"),
    op("dcfl", "kcdcfl_experiment"),
    op("dcfl", "dpda_vs_oracle_diff"),
    op("rec", "lambda_prefix"),
    op("rec", "halting_prefix"),
    op("rec", "sparse_sequence"),
    op("rec", "re_upperbound_probe"),
];
