//! Machines shipped with the library, kept as text so they double as
//! examples of the description format.

use crate::automata::dfa::Dfa;
use crate::automata::dpda::Dpda;
use crate::automata::format::{parse_machine, Machine};

pub const SHIPPED: &[(&str, &str)] = &[
    ("odd-ones", include_str!("../../machines/odd_ones.dfa")),
    ("even-length", include_str!("../../machines/even_length.dfa")),
    ("ends-with-one", include_str!("../../machines/ends_with_one.dfa")),
    ("odd-ones-padded", include_str!("../../machines/odd_ones_padded.dfa")),
    ("sigma-star", include_str!("../../machines/sigma_star.dfa")),
    ("eq01", include_str!("../../machines/eq01.dpda")),
    ("push-always", include_str!("../../machines/push_always.dpda")),
    ("flip2", include_str!("../../machines/flip2.dpda")),
    ("push-ab", include_str!("../../machines/push_ab.dpda")),
    ("parity", include_str!("../../machines/parity.dpda")),
];

pub fn names() -> Vec<&'static str> {
    SHIPPED.iter().map(|(n, _)| *n).collect()
}

pub fn source(name: &str) -> Option<&'static str> {
    SHIPPED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load(name: &str) -> Option<Machine> {
    source(name).map(|t| parse_machine(t).expect("shipped machine parses"))
}

fn dfa(name: &str) -> Dfa {
    load(name).and_then(Machine::into_dfa).expect("shipped dfa")
}

fn dpda(name: &str) -> Dpda {
    load(name).and_then(Machine::into_dpda).expect("shipped dpda")
}

pub fn odd_ones() -> Dfa {
    dfa("odd-ones")
}

pub fn even_length() -> Dfa {
    dfa("even-length")
}

pub fn ends_with_one() -> Dfa {
    dfa("ends-with-one")
}

pub fn odd_ones_padded() -> Dfa {
    dfa("odd-ones-padded")
}

pub fn sigma_star() -> Dfa {
    dfa("sigma-star")
}

pub fn eq01_dpda() -> Dpda {
    dpda("eq01")
}

pub fn push_always() -> Dpda {
    dpda("push-always")
}

pub fn flip2() -> Dpda {
    dpda("flip2")
}

pub fn push_ab() -> Dpda {
    dpda("push-ab")
}

pub fn parity_dpda() -> Dpda {
    dpda("parity")
}
