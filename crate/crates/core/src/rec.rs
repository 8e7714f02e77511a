//! Characteristic sequences of whole languages, time-bounded halting
//! sequences over a toy program enumeration, and the sparse sequence `h`.
//!
//! True halting is undecidable; everything here is the time-`T`
//! approximation `k^T` and is labelled as such.

use std::fmt;

use rayon::prelude::*;

use crate::charseq::chi_prefix;
use crate::codec::BitReader;
use crate::error::RecError;
use crate::kolmogorov::{fixed_bits, ChiDecoder, Decoder, Estimate, Suite};
use crate::word::{floor_log2, Alphabet, Natural, Word};
use crate::zoo::{self, Language};

/// Identifier of the toy interpreter; changes whenever its semantics do.
pub const INTERPRETER: &str = "toybf-v1";

/// Instruction alphabet, in enumeration order.
pub const INSTRUCTIONS: &[u8] = b"+-<>[]";

/// Longest sequence any operation here produces.
pub const MAX_SEQUENCE: usize = 1 << 20;

/// Largest step budget.
pub const MAX_STEPS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Lambda { language: String },
    Halting { steps: u64, interpreter: &'static str },
    Sparse { kbits: usize },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Lambda { language } => write!(f, "lambda({language})"),
            Provenance::Halting { steps, interpreter } => write!(f, "halting(T={steps}, {interpreter})"),
            Provenance::Sparse { kbits } => write!(f, "sparse(kbits={kbits})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSequencePrefix {
    pub bits: Word,
    pub provenance: Provenance,
}

fn check_len(n: usize) -> Result<(), RecError> {
    if n > MAX_SEQUENCE {
        return Err(RecError::Budget { requested: n, max: MAX_SEQUENCE });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaReport {
    pub sequence: BitSequencePrefix,
    /// Ĉ(λ_{1:n} | n) under the given suite.
    pub c_given_n: Estimate,
    /// The same with a chi decoder for the language's reference machine installed.
    pub c_given_n_installed: Option<Estimate>,
}

/// `λ_{1:n}`: membership of the first `n` words in length-lex order.
pub fn lambda_prefix(lang: &Language, n: usize, suite: &Suite) -> Result<LambdaReport, RecError> {
    check_len(n)?;
    let chi = chi_prefix(lang, &Word::new(), n)?;
    let side = Natural::from(n);
    let c_given_n = suite.estimate(&chi.bits, Some(&side))?;
    let c_given_n_installed = match lang.reference_dfa() {
        Some(dfa) => Some(suite.with(ChiDecoder::new(lang.name(), dfa)).estimate(&chi.bits, Some(&side))?),
        None => None,
    };
    Ok(LambdaReport {
        sequence: BitSequencePrefix { bits: chi.bits, provenance: Provenance::Lambda { language: chi.language } },
        c_given_n,
        c_given_n_installed,
    })
}

/// The `i`-th program (1-based, length-lex over [`INSTRUCTIONS`]); program 1 is empty.
pub fn program(i: u64) -> Word {
    assert!(i >= 1, "programs are numbered from 1");
    Alphabet::new(INSTRUCTIONS).expect("instruction alphabet").nth_word(i - 1)
}

/// Runs `program` with `input` in cell 0. Each executed instruction is one
/// step and halting is one more, so the empty program halts in 1 step.
/// Returns the step count when it is at most `budget`.
///
/// Cells are unbounded to the right and hold naturals; `-` stops at 0 and
/// `<` stops at cell 0. An unmatched `[` jumps past the end when the cell is
/// 0; an unmatched `]` does nothing.
pub fn run_toy(program: &[u8], input: u64, budget: u64) -> Option<u64> {
    let jumps = match_brackets(program);
    let mut tape = vec![input];
    let mut ptr = 0usize;
    let mut pc = 0usize;
    let mut steps = 0u64;
    while pc < program.len() {
        if steps >= budget {
            return None;
        }
        steps += 1;
        match program[pc] {
            b'+' => tape[ptr] = tape[ptr].saturating_add(1),
            b'-' => tape[ptr] = tape[ptr].saturating_sub(1),
            b'>' => {
                ptr += 1;
                if ptr == tape.len() {
                    tape.push(0);
                }
            }
            b'<' => ptr = ptr.saturating_sub(1),
            b'[' if tape[ptr] == 0 => pc = jumps[pc].unwrap_or(program.len()),
            b']' if tape[ptr] != 0 => {
                if let Some(open) = jumps[pc] {
                    pc = open;
                }
            }
            _ => {}
        }
        pc += 1;
    }
    (steps < budget).then_some(steps + 1)
}

fn match_brackets(program: &[u8]) -> Vec<Option<usize>> {
    let mut jumps = vec![None; program.len()];
    let mut open = Vec::new();
    for (i, &c) in program.iter().enumerate() {
        match c {
            b'[' => open.push(i),
            b']' => {
                if let Some(j) = open.pop() {
                    jumps[i] = Some(j);
                    jumps[j] = Some(i);
                }
            }
            _ => {}
        }
    }
    jumps
}

/// Steps program `i` takes on input `i`, if within `budget`.
pub fn halting_time(i: u64, budget: u64) -> Option<u64> {
    run_toy(program(i).as_bytes(), i, budget)
}

/// `k^T_{1:n}`: bit `i` is 1 iff program `i` on input `i` halts within `T` steps.
pub fn halting_prefix(steps: u64, n: usize) -> Result<BitSequencePrefix, RecError> {
    check_len(n)?;
    if steps > MAX_STEPS {
        return Err(RecError::Budget { requested: steps as usize, max: MAX_STEPS as usize });
    }
    let bits: Vec<u8> = (1..=n as u64)
        .into_par_iter()
        .map(|i| if halting_time(i, steps).is_some() { b'1' } else { b'0' })
        .collect();
    Ok(BitSequencePrefix {
        bits: Word::from_bytes(bits),
        provenance: Provenance::Halting { steps, interpreter: INTERPRETER },
    })
}

/// Positions of `k_1, k_2, …` in `h` up to `n`: 1, 4, 9, 18, …
pub fn sparse_positions(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut pos = 1usize;
    let mut i = 1u32;
    while pos <= n {
        out.push(pos);
        let Some(next) = 1usize.checked_shl(i).and_then(|g| pos.checked_add(g + 1)) else {
            break;
        };
        pos = next;
        i += 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseReport {
    pub sequence: BitSequencePrefix,
    pub positions: Vec<usize>,
    /// Ĉ(h_{1:n}), when `n ≥ 1`.
    pub c: Option<Estimate>,
}

impl SparseReport {
    /// `log log n`, printed next to Ĉ for comparison only.
    pub fn log_log_n(&self) -> f64 {
        let n = self.sequence.bits.len() as f64;
        if n > 1.0 {
            n.log2().log2().max(0.0)
        } else {
            0.0
        }
    }
}

/// `h = k_1 0^2 k_2 0^4 … k_i 0^{2^i} k_{i+1} …`, cut to `n` symbols.
pub fn sparse_sequence(kbits: &Word, n: usize, suite: &Suite) -> Result<SparseReport, RecError> {
    check_len(n)?;
    let positions = sparse_positions(n);
    let mut bits = vec![b'0'; n];
    for (idx, &pos) in positions.iter().enumerate() {
        let k = *kbits.as_bytes().get(idx).ok_or(RecError::InsufficientKbits {
            position: pos,
            index: idx + 1,
            available: kbits.len(),
        })?;
        bits[pos - 1] = if k == b'1' { b'1' } else { b'0' };
    }
    let bits = Word::from_bytes(bits);
    let c = if n == 0 { None } else { Some(suite.estimate(&bits, None)?) };
    Ok(SparseReport {
        sequence: BitSequencePrefix { bits, provenance: Provenance::Sparse { kbits: kbits.len() } },
        positions,
        c,
    })
}

/// A bounded semi-decider: reports the stage at which a word is found to be
/// a member, if that happens within the budget.
#[derive(Debug, Clone)]
pub enum SemiDecider {
    Empty,
    SigmaStar,
    /// `v_i` is a member iff program `i` halts on input `i`; found at its halting step.
    Halting,
    /// A decidable language, every member found at stage 1.
    Language(Language),
}

impl SemiDecider {
    pub fn parse(name: &str) -> Result<SemiDecider, RecError> {
        Ok(match name {
            "empty" => SemiDecider::Empty,
            "sigma-star-semi" => SemiDecider::SigmaStar,
            "halting" => SemiDecider::Halting,
            other => SemiDecider::Language(zoo::oracle(other).map_err(crate::error::CharSeqError::from)?),
        })
    }

    pub fn name(&self) -> String {
        match self {
            SemiDecider::Empty => "empty".to_string(),
            SemiDecider::SigmaStar => "sigma-star-semi".to_string(),
            SemiDecider::Halting => "halting".to_string(),
            SemiDecider::Language(l) => l.name().to_string(),
        }
    }

    /// Stage at which `v_i` (1-based) is found within `budget`.
    pub fn discovery(&self, i: u64, budget: u64) -> Option<u64> {
        if budget == 0 {
            return None;
        }
        match self {
            SemiDecider::Empty => None,
            SemiDecider::SigmaStar => Some(1),
            SemiDecider::Halting => halting_time(i, budget),
            SemiDecider::Language(l) => l.contains(&l.alphabet().nth_word(i - 1)).then_some(1),
        }
    }

    /// `λ^T_{1:n}`.
    pub fn lambda(&self, n: usize, budget: u64) -> Word {
        Word::from_bits((1..=n as u64).map(|i| self.discovery(i, budget).is_some()))
    }
}

/// Given `n` and the member count `m`, dovetails the semi-decider over
/// stages `1..=T` and words `v_1..v_n` until `m` members have turned up.
/// Program: `m` in `⌊log n⌋ + 1` bits; the side value is `n`.
pub struct ProbeDecoder {
    semi: SemiDecider,
    budget: u64,
}

impl ProbeDecoder {
    pub fn new(semi: SemiDecider, budget: u64) -> Self {
        ProbeDecoder { semi, budget }
    }

    pub fn width(n: usize) -> usize {
        floor_log2(n as u64) + 1
    }

    fn reconstruct(&self, n: usize, m: usize) -> Option<Word> {
        let mut found: Vec<(u64, u64)> = (1..=n as u64)
            .filter_map(|i| self.semi.discovery(i, self.budget).map(|t| (t, i)))
            .collect();
        if found.len() < m {
            return None;
        }
        found.sort_unstable();
        let mut bits = vec![b'0'; n];
        for &(_, i) in &found[..m] {
            bits[i as usize - 1] = b'1';
        }
        Some(Word::from_bytes(bits))
    }
}

impl Decoder for ProbeDecoder {
    fn label(&self) -> String {
        format!("reprobe:{}@{}", self.semi.name(), self.budget)
    }

    fn description(&self) -> String {
        format!(
            "count m of members among the first n words ({} within {} stages), dovetailed until m are found",
            self.semi.name(),
            self.budget
        )
    }

    fn decode(&self, program: &[u8], side: Option<&Natural>, max_len: usize) -> Option<Word> {
        let n = crate::kolmogorov::side_len(side)?;
        if n == 0 || n > max_len || n > MAX_SEQUENCE || program.len() != Self::width(n) {
            return None;
        }
        let m = BitReader::new(program).read_fixed(program.len()).ok()? as usize;
        if m > n {
            return None;
        }
        self.reconstruct(n, m)
    }

    fn encode(&self, x: &Word, side: Option<&Natural>) -> Vec<Word> {
        match crate::kolmogorov::side_len(side) {
            Some(n) if n == x.len() && n > 0 && x.is_binary() => {
                vec![Word::from_bytes(fixed_bits(x.count(b'1') as u64, Self::width(n)))]
            }
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub semi: String,
    pub n: usize,
    pub budget: u64,
    pub lambda: Word,
    pub m: usize,
    /// Length of the probe decoder's own description, tag included.
    pub witness_len: usize,
    /// Ĉ(λ^T_{1:n} | n) with the probe installed.
    pub estimate: Estimate,
    pub floor_log_n: usize,
    /// Probe tag length + 1.
    pub c: usize,
    pub replays: bool,
}

impl ProbeReport {
    /// `Ĉ(λ^T_{1:n} | n) ≤ ⌊log n⌋ + c`.
    pub fn holds(&self) -> bool {
        self.estimate.value <= self.floor_log_n + self.c
    }
}

pub fn re_upperbound_probe(semi: &SemiDecider, n: usize, budget: u64, suite: &Suite) -> Result<ProbeReport, RecError> {
    if n == 0 {
        return Err(RecError::Budget { requested: 0, max: MAX_SEQUENCE });
    }
    check_len(n)?;
    if budget > MAX_STEPS {
        return Err(RecError::Budget { requested: budget as usize, max: MAX_STEPS as usize });
    }
    let probe = ProbeDecoder::new(semi.clone(), budget);
    let lambda = semi.lambda(n, budget);
    let m = lambda.count(b'1');
    let ext = suite.with(probe);
    let idx = ext.len() - 1;
    let tag = ext.tag(idx).len();
    let side = Natural::from(n);
    let program = Word::from_bytes(fixed_bits(m as u64, ProbeDecoder::width(n)));
    let replays = ext.decoder(idx).decode(program.as_bytes(), Some(&side), n).as_ref() == Some(&lambda);
    let estimate = ext.estimate(&lambda, Some(&side))?;
    Ok(ProbeReport {
        semi: semi.name(),
        n,
        budget,
        m,
        witness_len: tag + program.len(),
        estimate,
        floor_log_n: floor_log2(n as u64),
        c: tag + 1,
        replays,
        lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_matches_chi() {
        let s = Suite::standard();
        let odd = zoo::oracle("odd-ones").unwrap();
        let r = lambda_prefix(&odd, 7, &s).unwrap();
        assert_eq!(r.sequence.bits.to_string(), "0010110");
        let all = lambda_prefix(&zoo::oracle("sigma-star").unwrap(), 20, &s).unwrap();
        assert_eq!(all.sequence.bits, Word::repeat_symbol(b'1', 20));
    }

    #[test]
    fn installed_parity_is_constant() {
        let s = Suite::standard();
        let odd = zoo::oracle("odd-ones").unwrap();
        let vals: Vec<usize> = [8, 16, 32, 64]
            .iter()
            .map(|&n| lambda_prefix(&odd, n, &s).unwrap().c_given_n_installed.unwrap().value)
            .collect();
        assert!(vals.windows(2).all(|p| p[0] == p[1]), "{vals:?}");
    }

    #[test]
    fn toy_interpreter_basics() {
        assert_eq!(program(1), Word::new());
        assert_eq!(program(2).to_string(), "+");
        assert_eq!(run_toy(b"", 5, 1), Some(1));
        assert_eq!(run_toy(b"", 5, 0), None);
        assert_eq!(run_toy(b"[-]", 3, 100), Some(1 + 3 * 2 + 1));
        assert_eq!(run_toy(b"[]", 1, 1000), None);
        assert_eq!(run_toy(b"[]", 0, 1000), Some(2));
        // Unmatched brackets.
        assert_eq!(run_toy(b"[+", 0, 10), Some(2));
        assert_eq!(run_toy(b"]+", 1, 10), Some(3));
    }

    #[test]
    fn halting_is_monotone() {
        assert_eq!(halting_prefix(0, 16).unwrap().bits, Word::repeat_symbol(b'0', 16));
        let lo = halting_prefix(10, 64).unwrap().bits;
        let hi = halting_prefix(100, 64).unwrap().bits;
        assert!(lo.as_bytes().iter().zip(hi.as_bytes()).all(|(a, b)| a <= b));
    }

    #[test]
    fn sparse_positions_follow_recurrence() {
        assert_eq!(sparse_positions(18), vec![1, 4, 9, 18]);
        let s = Suite::standard();
        let r = sparse_sequence(&Word::from("111"), 9, &s).unwrap();
        assert_eq!(r.sequence.bits.to_string(), "100100001");
        let z = sparse_sequence(&Word::from("0000"), 20, &s).unwrap();
        assert_eq!(z.sequence.bits, Word::repeat_symbol(b'0', 20));
        assert_eq!(
            sparse_sequence(&Word::from("11"), 9, &s).unwrap_err(),
            RecError::InsufficientKbits { position: 9, index: 3, available: 2 }
        );
    }

    #[test]
    fn probe_bound_and_replay() {
        let s = Suite::standard();
        for semi in [SemiDecider::Empty, SemiDecider::SigmaStar, SemiDecider::Halting] {
            for n in [16, 64, 256] {
                let r = re_upperbound_probe(&semi, n, 100, &s).unwrap();
                assert!(r.replays && r.holds(), "{r:?}");
                assert_eq!(r.witness_len, r.floor_log_n + r.c);
            }
        }
        let empty = re_upperbound_probe(&SemiDecider::Empty, 64, 100, &s).unwrap();
        assert_eq!(empty.m, 0);
        let all = re_upperbound_probe(&SemiDecider::SigmaStar, 64, 100, &s).unwrap();
        assert_eq!(all.m, 64);
    }
}
