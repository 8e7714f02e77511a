//! Decoder-suite complexity Ĉ: the least tag + program length over a fixed,
//! versioned family of total decoders. An upper bound on C relative to the
//! suite, never a lower bound.

mod builtin;
mod census;
mod installed;
mod substring;

use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::codec::{self_delim_nat, BitReader};
use crate::error::KcError;
use crate::word::{Alphabet, Natural, Word};

pub use builtin::{Dictionary, Literal, LiteralGivenLength, Rank, RunLength};
pub use census::{
    a_n_census, count_compressible, descriptions_upto, find_incompressible, CensusRow, Incompressible,
    CENSUS_MAX, EXHAUSTIVE_MAX, MAX_DESCRIPTION,
};
pub use installed::{chi_from_state, ChiDecoder, ResidualDecoder, ResidualOrder, SpliceDecoder, RESIDUAL_MAX_LEN};
pub use substring::{substring_bound_check, SubstringReport, LOG_TERM_CONSTANT};

/// Version of the default suite. Installing decoders appends `+label`.
pub const SUITE_VERSION: &str = "v1";

/// A total decoder. `decode` answers `None` for programs it rejects and for
/// outputs longer than `max_len`.
pub trait Decoder: Send + Sync {
    fn label(&self) -> String;

    fn description(&self) -> String;

    fn decode(&self, program: &[u8], side: Option<&Natural>, max_len: usize) -> Option<Word>;

    /// Candidate programs for `x`; the suite keeps those that replay.
    fn encode(&self, x: &Word, side: Option<&Natural>) -> Vec<Word>;
}

/// Side value as a length, when it fits.
pub(crate) fn side_len(side: Option<&Natural>) -> Option<usize> {
    side.and_then(|n| n.to_usize())
}

/// `v` in exactly `width` bits, most significant first.
pub(crate) fn fixed_bits(v: u64, width: usize) -> Vec<u8> {
    (0..width).rev().map(|i| if (v >> i) & 1 == 1 { b'1' } else { b'0' }).collect()
}

/// `⌈log2 n⌉`, zero for `n ≤ 1`.
pub(crate) fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Best description found for a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Estimate {
    pub value: usize,
    pub decoder: usize,
    pub decoder_label: String,
    pub tag: Word,
    pub program: Word,
    pub side: Option<Natural>,
    pub suite_version: String,
}

impl Estimate {
    /// `tag ++ program`, a complete description for the suite.
    pub fn witness(&self) -> Word {
        self.tag.concat(&self.program)
    }

    /// `(tag, program)` as `bits:hex` strings.
    pub fn witness_hex(&self) -> (String, String) {
        (self.tag.to_hex_bits(), self.program.to_hex_bits())
    }
}

impl fmt::Display for Estimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ĉ (suite {}) = {} via {}", self.suite_version, self.value, self.decoder_label)
    }
}

/// Ordered decoders with prefix-free tags: decoder `i` is tagged with the
/// self-delimiting code of `i`.
#[derive(Clone)]
pub struct Suite {
    version: String,
    decoders: Vec<Arc<dyn Decoder>>,
    tags: Vec<Word>,
}

impl fmt::Debug for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Suite({})", self.version)
    }
}

impl Default for Suite {
    fn default() -> Self {
        Suite::standard()
    }
}

impl Suite {
    /// literal, literal-given-length, run-length, dictionary, rank.
    pub fn standard() -> Suite {
        let mut s = Suite { version: SUITE_VERSION.to_string(), decoders: Vec::new(), tags: Vec::new() };
        s.push(Arc::new(Literal));
        s.push(Arc::new(LiteralGivenLength));
        s.push(Arc::new(RunLength));
        s.push(Arc::new(Dictionary));
        s.push(Arc::new(Rank));
        s
    }

    fn push(&mut self, d: Arc<dyn Decoder>) {
        self.tags.push(self_delim_nat(self.decoders.len() as u64));
        self.decoders.push(d);
    }

    /// A new suite with `d` appended.
    pub fn with(&self, d: impl Decoder + 'static) -> Suite {
        let mut s = self.clone();
        s.version = format!("{}+{}", self.version, d.label());
        s.push(Arc::new(d));
        s
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    /// Report label, e.g. `Ĉ (suite v1)`.
    pub fn label(&self) -> String {
        format!("Ĉ (suite {})", self.version)
    }

    pub fn len(&self) -> usize {
        self.decoders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decoders.is_empty()
    }

    pub fn tag(&self, i: usize) -> &Word {
        &self.tags[i]
    }

    pub fn decoder(&self, i: usize) -> &dyn Decoder {
        self.decoders[i].as_ref()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.decoders.iter().position(|d| d.label() == label)
    }

    /// Runs a full description `tag ++ program`.
    pub fn run(&self, description: &[u8], side: Option<&Natural>, max_len: usize) -> Option<Word> {
        let mut reader = BitReader::new(description);
        let i = reader.read_nat_u64().ok()?;
        let d = self.decoders.get(usize::try_from(i).ok()?)?;
        d.decode(reader.rest(), side, max_len)
    }

    pub fn replay(&self, e: &Estimate) -> Option<Word> {
        let max_len = usize::MAX;
        self.decoders.get(e.decoder)?.decode(e.program.as_bytes(), e.side.as_ref(), max_len)
    }

    /// Ĉ(x) or Ĉ(x | side) for a binary word.
    pub fn estimate(&self, x: &Word, side: Option<&Natural>) -> Result<Estimate, KcError> {
        if !x.is_binary() {
            return Err(KcError::NotBinary(x.to_string()));
        }
        let mut best: Option<Estimate> = None;
        for (i, d) in self.decoders.iter().enumerate() {
            let tag_len = self.tags[i].len();
            for program in d.encode(x, side) {
                let value = tag_len + program.len();
                if best.as_ref().is_some_and(|b| b.value <= value) {
                    continue;
                }
                if d.decode(program.as_bytes(), side, x.len()).as_ref() != Some(x) {
                    continue;
                }
                best = Some(Estimate {
                    value,
                    decoder: i,
                    decoder_label: d.label(),
                    tag: self.tags[i].clone(),
                    program,
                    side: side.cloned(),
                    suite_version: self.version.clone(),
                });
            }
        }
        // The literal decoder always succeeds, so a suite built from
        // `standard()` never reaches this.
        best.ok_or_else(|| KcError::ReplayMismatch { decoder: "suite".to_string() })
    }

    /// Estimates a word over any alphabet through its fixed-width binary image.
    pub fn estimate_over(&self, alphabet: &Alphabet, x: &Word, side: Option<&Natural>) -> Result<Estimate, KcError> {
        let bin = alphabet.binarize(x).ok_or_else(|| KcError::NotBinary(x.to_string()))?;
        self.estimate(&bin, side)
    }
}
