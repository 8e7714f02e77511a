use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("symbol {symbol:?} at position {position} is not a printable ASCII symbol")]
    BadSymbol { position: usize, symbol: char },
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("alphabet has {0} symbols; at most 254 are supported")]
    AlphabetTooLarge(usize),
    #[error("symbol {0:?} listed twice in alphabet")]
    DuplicateSymbol(char),
}

/// Which part of a self-delimiting code ran out of input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeField {
    /// The `0` terminating the unary run of ones.
    Separator,
    /// The bijective binary word holding the payload length.
    LengthField,
    Payload,
}

impl std::fmt::Display for CodeField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CodeField::Separator => "separator",
            CodeField::LengthField => "length field",
            CodeField::Payload => "payload",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("symbol {symbol:?} at position {position} is not a bit")]
    NotBinary { position: usize, symbol: char },
    #[error("self-delimiting code truncated in the {field} at bit {position}")]
    Truncated { field: CodeField, position: usize },
    #[error("natural is outside the pairing image: {source} (parse position {position})")]
    MalformedPair {
        position: usize,
        #[source]
        source: Box<CodecError>,
    },
    #[error("length {0} does not fit in memory")]
    LengthOverflow(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("symbol {symbol:?} at position {position} is not in the alphabet")]
    SymbolNotInAlphabet { position: usize, symbol: char },
    #[error("alphabets differ: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },
    #[error("state {state} out of range (machine has {states} states)")]
    StateOutOfRange { state: usize, states: usize },
    #[error("machine needs at least one state")]
    NoStates,
    #[error("no transition from state {state} on symbol {symbol:?}")]
    MissingTransition { state: usize, symbol: char },
    #[error("duplicate transition from state {state} on {input} with top {top:?}")]
    DuplicateTransition { state: usize, input: String, top: char },
    #[error("nondeterministic: state {state} with top {top:?} has both an ε-move and a move on {symbol:?}")]
    EpsilonConflict { state: usize, top: char, symbol: char },
    #[error("stack symbol {0:?} is not in the stack alphabet")]
    UnknownStackSymbol(char),
    #[error("bottom marker {bottom:?} misused in transition from state {state}: {reason}")]
    BottomMarker { state: usize, bottom: char, reason: &'static str },
    #[error("ε-move limit {limit} exceeded after consuming {position} symbols")]
    EpsilonLoop { limit: usize, position: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("combine operation {0} needs a second machine")]
    MissingOperand(&'static str),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZooError {
    #[error("unknown language {name:?}; available: {}", available.join(", "))]
    UnknownLanguage { name: String, available: Vec<&'static str> },
    #[error("unknown enumerator {0:?}; available: length-lex, prime")]
    UnknownEnumerator(String),
    #[error("enumeration index must be at least 1")]
    ZeroIndex,
    #[error("prime index {index} exceeds the sieve, which holds {available} primes")]
    OutOfSieve { index: u64, available: usize },
    #[error("search budget of {budget} enumeration steps exhausted after finding {found} of {wanted}")]
    BudgetExhausted { budget: u64, found: u64, wanted: u64 },
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("symbol {symbol:?} at position {position} is outside the {language} alphabet")]
    ForeignSymbol { language: String, position: usize, symbol: char },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharSeqError {
    #[error("table of {rows} rows by {columns} columns exceeds the cell budget {budget}")]
    Budget { rows: u64, columns: usize, budget: u64 },
    #[error("sequence length must be at least 1")]
    ZeroLength,
    #[error("residual depth must be at least 1")]
    ZeroDepth,
    #[error(transparent)]
    Zoo(#[from] ZooError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KcError {
    #[error("word {0:?} is not binary; binarize it first")]
    NotBinary(String),
    #[error("exhaustive search supports lengths up to {max}, got {requested}")]
    ExhaustiveRange { requested: usize, max: usize },
    #[error("split ({u}, {v}, {w}) does not cover a word of length {len}")]
    BadSplit { u: usize, v: usize, w: usize, len: usize },
    #[error("witness from decoder {decoder} did not replay to the input")]
    ReplayMismatch { decoder: String },
    #[error("residual enumeration needs more than {budget} steps")]
    Budget { budget: u64 },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DcflError {
    #[error(transparent)]
    Run(#[from] AutomatonError),
    #[error("block word y must be nonempty")]
    EmptyBlock,
    #[error("no repeating triple within {max_blocks} blocks ({history} never-popped triples seen)")]
    HorizonExhausted { max_blocks: usize, history: usize },
    #[error("machine got stuck at input position {position} while reading the prefix u")]
    StuckInPrefix { position: usize },
    #[error("constant c1 must be at least 1")]
    ZeroC1,
    #[error("machine disagrees with oracle {language} on {word:?}")]
    InconsistentMachine { language: String, word: String },
    #[error("cannot build u': period {period} blocks from {blocks} needs more than {max_blocks} blocks")]
    ConstructionFailed { blocks: usize, period: usize, max_blocks: usize },
    #[error("omega prefix has {available} symbols, {requested} requested")]
    ShortOmega { available: usize, requested: usize },
    #[error(transparent)]
    Kc(#[from] KcError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecError {
    #[error("k-bits exhausted: position {position} needs k_{index} but only {available} bits given")]
    InsufficientKbits { position: usize, index: usize, available: usize },
    #[error("sequence length {requested} exceeds budget {max}")]
    Budget { requested: usize, max: usize },
    #[error(transparent)]
    CharSeq(#[from] CharSeqError),
    #[error(transparent)]
    Kc(#[from] KcError),
}

/// Crate-wide error, convenient for front ends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Zoo(#[from] ZooError),
    #[error(transparent)]
    CharSeq(#[from] CharSeqError),
    #[error(transparent)]
    Kc(#[from] KcError),
    #[error(transparent)]
    Dcfl(#[from] DcflError),
    #[error(transparent)]
    Rec(#[from] RecError),
}
