//! Instrumented DPDA runs: stack profiles, the Case 1 / Case 2 split,
//! repeating triples at never-popped levels, and an oracle refuter.
//!
//! Stack heights are counted in stack symbols and include the bottom
//! marker. Block inputs are read as `y^k x`.

use std::collections::{HashMap, HashSet};

use crate::automata::dpda::Sim;
use crate::automata::{Config, Dpda, RunOutcome};
use crate::codec::nat_to_word_u64;
use crate::error::{AutomatonError, DcflError};
use crate::kolmogorov::{ceil_log2, Suite};
use crate::word::{Alphabet, Word};
use crate::zoo::Language;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackProfile {
    pub input: Word,
    /// Height after each consumed symbol and the ε-moves that follow it.
    pub heights: Vec<usize>,
    /// `suffix_min[i] = min(heights[i..])`: the level never popped again after step `i`.
    pub suffix_min: Vec<usize>,
    pub initial_height: usize,
    pub final_stack: Word,
    pub final_state: usize,
    pub accepted: bool,
    pub outcome: RunOutcome,
}

impl StackProfile {
    /// Heights as one character each: `0-9`, then `a-z`, then `+`.
    pub fn sparkline(&self) -> String {
        self.heights.iter().map(|&h| height_char(h)).collect()
    }
}

fn height_char(h: usize) -> char {
    match h {
        0..=9 => (b'0' + h as u8) as char,
        10..=35 => (b'a' + (h - 10) as u8) as char,
        _ => '+',
    }
}

fn symbol_index(m: &Dpda, position: usize, s: u8) -> Result<usize, AutomatonError> {
    m.alphabet().index_of(s).ok_or(AutomatonError::SymbolNotInAlphabet { position, symbol: s as char })
}

/// Start configuration after its ε-closure.
fn started(m: &Dpda) -> Result<(Sim<'_>, bool), AutomatonError> {
    let mut sim = m.config_to_sim(&m.initial_config())?;
    let acc = sim.close(m.default_epsilon_limit(), &mut |_, _| {})?;
    Ok((sim, acc))
}

/// Reads `w`, calling `after` with the position and the closed
/// configuration's acceptance after every symbol. Returns the stuck position.
fn feed<'m>(
    sim: &mut Sim<'m>,
    w: &Word,
    offset: usize,
    mut after: impl FnMut(&Sim<'m>, bool, usize),
) -> Result<Option<usize>, AutomatonError> {
    let limit = sim.m.default_epsilon_limit();
    for (i, &s) in w.as_bytes().iter().enumerate() {
        let a = symbol_index(sim.m, offset + i, s)?;
        if !sim.read(a) {
            return Ok(Some(offset + i));
        }
        let mut low = sim.height();
        let acc = sim.close(limit, &mut |s, _| low = low.min(s.height()))?;
        after(sim, acc, low);
    }
    Ok(None)
}

pub fn stack_profile(m: &Dpda, w: &Word) -> Result<StackProfile, DcflError> {
    let (mut sim, mut accepted) = started(m)?;
    let initial_height = sim.height();
    let mut heights = Vec::with_capacity(w.len());
    let stuck = feed(&mut sim, w, 0, |s, acc, _| {
        heights.push(s.height());
        accepted = acc;
    })?;
    let outcome = match stuck {
        Some(position) => RunOutcome::Stuck { position },
        None => RunOutcome::Completed,
    };
    let mut suffix_min = heights.clone();
    for i in (0..suffix_min.len().saturating_sub(1)).rev() {
        suffix_min[i] = suffix_min[i].min(suffix_min[i + 1]);
    }
    let config = sim.config();
    Ok(StackProfile {
        input: w.clone(),
        heights,
        suffix_min,
        initial_height,
        final_stack: config.stack_word(),
        final_state: config.state,
        accepted: stuck.is_none() && accepted,
        outcome,
    })
}

/// `|Γ| + 1`.
pub fn default_c1(m: &Dpda) -> usize {
    m.stack_alphabet().size() + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// Height fell to `≤ c1` after `position` symbols of `v`.
    Case1 { position: usize, height: usize },
    /// Height stayed above `c1`; `min_height` is the lowest seen.
    Case2 { min_height: usize },
}

impl Case {
    pub fn name(&self) -> &'static str {
        match self {
            Case::Case1 { .. } => "Case1",
            Case::Case2 { .. } => "Case2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub case: Case,
    pub c1: usize,
    pub height_after_u: usize,
    /// Height after each symbol of `v`.
    pub v_heights: Vec<usize>,
    /// Position in `v` where the machine got stuck, if it did.
    pub stuck_in_v: Option<usize>,
}

/// Runs `u` and reports whether the stack drops to `c1` while reading `v`.
/// ε-moves inside `v` count.
pub fn case_classify(m: &Dpda, u: &Word, v: &Word, c1: usize) -> Result<Classification, DcflError> {
    if c1 == 0 {
        return Err(DcflError::ZeroC1);
    }
    let (mut sim, _) = started(m)?;
    if let Some(position) = feed(&mut sim, u, 0, |_, _, _| {})? {
        return Err(DcflError::StuckInPrefix { position });
    }
    let height_after_u = sim.height();
    let mut case = (height_after_u <= c1).then_some(Case::Case1 { position: 0, height: height_after_u });
    let mut min_height = height_after_u;
    let mut v_heights = Vec::with_capacity(v.len());
    let stuck = feed(&mut sim, v, u.len(), |s, _, low| {
        v_heights.push(s.height());
        min_height = min_height.min(low);
        if case.is_none() && low <= c1 {
            case = Some(Case::Case1 { position: v_heights.len(), height: low });
        }
    })?;
    Ok(Classification {
        case: case.unwrap_or(Case::Case2 { min_height }),
        c1,
        height_after_u,
        v_heights,
        stuck_in_v: stuck.map(|p| p - u.len()),
    })
}

/// State, offset in `y` of the symbol just read, and the stack-top symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triple {
    pub state: usize,
    pub offset: usize,
    pub top: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    /// Block in which the repeating triple first appears.
    pub preamble: usize,
    pub period: usize,
    /// Stack symbols gained per period.
    pub growth: usize,
    pub triple: Triple,
    /// Heights at the first and second occurrence.
    pub heights: (usize, usize),
    pub max_blocks: usize,
    /// `|Q|·|Γ|·l(y)`.
    pub triple_space: usize,
}

impl CycleReport {
    pub fn within_triple_bound(&self) -> bool {
        self.preamble + self.period <= self.triple_space
    }
}

#[derive(Debug, Clone, Copy)]
struct Sighting {
    triple: Triple,
    block: usize,
    height: usize,
    cell: u64,
}

/// Read steps inside `y^max_blocks` whose top cell survives the whole of
/// `y^max_blocks x`, in reading order.
fn surviving_sightings(m: &Dpda, x: &Word, y: &Word, max_blocks: usize) -> Result<Vec<Sighting>, DcflError> {
    let (mut sim, _) = started(m)?;
    let mut seen = Vec::new();
    let mut stuck = false;
    'blocks: for block in 0..max_blocks {
        for (offset, &s) in y.as_bytes().iter().enumerate() {
            let position = block * y.len() + offset;
            let a = symbol_index(m, position, s)?;
            if !sim.read(a) {
                stuck = true;
                break 'blocks;
            }
            sim.close(m.default_epsilon_limit(), &mut |_, _| {})?;
            let cell = sim.top_cell();
            seen.push(Sighting {
                triple: Triple { state: sim.state, offset, top: m.stack_alphabet().symbol(cell.sym) },
                block,
                height: sim.height(),
                cell: cell.id,
            });
        }
    }
    if !stuck {
        feed(&mut sim, x, max_blocks * y.len(), |_, _, _| {})?;
    }
    let alive: HashSet<u64> = sim.stack.iter().map(|c| c.id).collect();
    seen.retain(|s| alive.contains(&s.cell));
    Ok(seen)
}

/// First repeated triple among never-popped levels while reading `y^max_blocks x`.
/// `None` when the repeat gains no height: the stack stays bounded.
pub fn cycle_detect(m: &Dpda, x: &Word, y: &Word, max_blocks: usize) -> Result<Option<CycleReport>, DcflError> {
    if y.is_empty() {
        return Err(DcflError::EmptyBlock);
    }
    let seen = surviving_sightings(m, x, y, max_blocks)?;
    let mut first: HashMap<Triple, Sighting> = HashMap::new();
    for s in &seen {
        if let Some(earlier) = first.get(&s.triple) {
            if s.height == earlier.height {
                return Ok(None);
            }
            return Ok(Some(CycleReport {
                preamble: earlier.block,
                period: s.block - earlier.block,
                growth: s.height - earlier.height,
                triple: s.triple,
                heights: (earlier.height, s.height),
                max_blocks,
                triple_space: m.state_count() * m.stack_alphabet().size() * y.len(),
            }));
        }
        first.insert(s.triple, *s);
    }
    Err(DcflError::HorizonExhausted { max_blocks, history: seen.len() })
}

/// Whether the triple recurs `periods` periods after its first sighting,
/// gaining `growth` each time.
pub fn cycle_recurs(m: &Dpda, x: &Word, y: &Word, report: &CycleReport, periods: usize) -> Result<bool, DcflError> {
    let seen = surviving_sightings(m, x, y, report.max_blocks)?;
    let at = |k: usize| {
        seen.iter()
            .find(|s| s.triple == report.triple && s.block == report.preamble + k * report.period)
            .map(|s| s.height)
    };
    Ok((0..=periods).all(|k| at(k) == Some(report.heights.0 + k * report.growth)))
}

#[derive(Debug, Clone)]
pub struct ExperimentParams {
    pub x: Word,
    pub y: Word,
    /// `u = y^blocks x`.
    pub blocks: usize,
    pub omega: Word,
    pub n: usize,
    pub c1: Option<usize>,
    /// Horizon for cycle detection and the largest admissible `u′`.
    pub max_blocks: usize,
    /// Words tried when looking for the first `w` with `uvw` accepted.
    pub w_budget: u64,
    /// When set, the machine is first checked against this oracle.
    pub oracle: Option<(Language, usize)>,
}

impl ExperimentParams {
    pub fn new(x: Word, y: Word, blocks: usize, omega: Word, n: usize) -> Self {
        ExperimentParams { x, y, blocks, omega, n, c1: None, max_blocks: 64, w_budget: 1 << 16, oracle: None }
    }

    pub fn u(&self) -> Word {
        self.y.power(self.blocks).concat(&self.x)
    }
}

/// Case 2 construction: `u′ = y^{blocks'} x` compared against `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SameTop {
    pub cycle: CycleReport,
    pub blocks: usize,
    pub u_len: usize,
    /// Ĉ of the numeral of `l(u′)`.
    pub c_len: usize,
    pub stack_u: Word,
    pub stack_u_prime: Word,
    pub same_state: bool,
    /// The top `height(u) − c1` symbols agree.
    pub same_top: bool,
    /// Acceptance streams over the prefixes of `v` agree.
    pub same_stream: bool,
}

impl SameTop {
    pub fn verified(&self) -> bool {
        self.same_state && self.same_top && self.same_stream
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    /// Nothing to construct in Case 1.
    NotNeeded,
    /// Case 2 but the stack stays bounded along `y`.
    BoundedStack,
    Checked(SameTop),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub u: Word,
    pub v: Word,
    pub classification: Classification,
    pub stack_u: Word,
    pub stack_uv: Word,
    /// Acceptance after each prefix `v_{1:j}`, `j = 0..n`.
    pub acceptance: Word,
    pub verification: Verification,
    pub w: Option<Word>,
    pub c_v: usize,
    pub c_w: Option<usize>,
    /// `2 log log l(u)`, printed for comparison only.
    pub log_log_reference: f64,
    /// `⌈log |Γ|⌉` bits per stack symbol.
    pub bits_per_symbol: usize,
    pub suite_version: String,
}

/// Configuration after `w` (closed), with the acceptance bit after each
/// prefix, `0..=l(w)`. Stuck runs reject from then on.
fn run_stream(m: &Dpda, start: &Config, w: &Word) -> Result<(Config, Word, bool), DcflError> {
    let mut sim = m.config_to_sim(start)?;
    let acc0 = sim.close(m.default_epsilon_limit(), &mut |_, _| {})?;
    let mut bits = vec![bit(acc0)];
    let stuck = feed(&mut sim, w, 0, |_, acc, _| bits.push(bit(acc)))?;
    bits.resize(w.len() + 1, b'0');
    Ok((sim.config(), Word::from_bytes(bits), stuck.is_some()))
}

fn bit(b: bool) -> u8 {
    if b {
        b'1'
    } else {
        b'0'
    }
}

fn config_after(m: &Dpda, u: &Word) -> Result<Config, DcflError> {
    let (mut sim, _) = started(m)?;
    if let Some(position) = feed(&mut sim, u, 0, |_, _, _| {})? {
        return Err(DcflError::StuckInPrefix { position });
    }
    Ok(sim.config())
}

fn first_completion(m: &Dpda, config: &Config, budget: u64) -> Result<Option<Word>, DcflError> {
    for i in 0..budget {
        let w = m.alphabet().nth_word(i);
        if m.accepts_from(config, &w)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn kcdcfl_experiment(m: &Dpda, params: &ExperimentParams, suite: &Suite) -> Result<ExperimentReport, DcflError> {
    if params.omega.len() < params.n {
        return Err(DcflError::ShortOmega { available: params.omega.len(), requested: params.n });
    }
    if let Some((lang, max_len)) = &params.oracle {
        if let DiffResult::Disagreement { word, .. } = dpda_vs_oracle_diff(m, lang, *max_len)? {
            return Err(DcflError::InconsistentMachine { language: lang.name().to_string(), word: word.to_string() });
        }
    }
    let c1 = params.c1.unwrap_or_else(|| default_c1(m));
    let u = params.u();
    let v = params.omega.slice(0, params.n);
    let classification = case_classify(m, &u, &v, c1)?;
    let after_u = config_after(m, &u)?;
    let (after_uv, acceptance, stuck) = run_stream(m, &after_u, &v)?;

    let verification = match classification.case {
        Case::Case1 { .. } => Verification::NotNeeded,
        Case::Case2 { .. } => match cycle_detect(m, &params.x, &params.y, params.max_blocks)? {
            None => Verification::BoundedStack,
            Some(cycle) => Verification::Checked(same_top(m, params, suite, cycle, &after_u, &acceptance, &v, c1)?),
        },
    };

    let w = if stuck { None } else { first_completion(m, &after_uv, params.w_budget)? };
    let alphabet = m.alphabet();
    let c_v = suite.estimate_over(alphabet, &v, None)?.value;
    let c_w = match &w {
        Some(w) => Some(suite.estimate_over(alphabet, w, None)?.value),
        None => None,
    };
    let lu = u.len() as f64;
    let log_log_reference = if lu > 1.0 { 2.0 * lu.log2().log2().max(0.0) } else { 0.0 };
    Ok(ExperimentReport {
        u,
        v,
        classification,
        stack_u: after_u.stack_word(),
        stack_uv: after_uv.stack_word(),
        acceptance,
        verification,
        w,
        c_v,
        c_w,
        log_log_reference,
        bits_per_symbol: ceil_log2(m.stack_alphabet().size()),
        suite_version: suite.version().to_string(),
    })
}

#[allow(clippy::too_many_arguments)]
fn same_top(
    m: &Dpda,
    params: &ExperimentParams,
    suite: &Suite,
    cycle: CycleReport,
    after_u: &Config,
    stream_u: &Word,
    v: &Word,
    c1: usize,
) -> Result<SameTop, DcflError> {
    let mut best: Option<(usize, usize, usize)> = None;
    for j in 1..=8 {
        let blocks = params.blocks + j * cycle.period;
        if blocks > params.max_blocks {
            break;
        }
        let u_len = blocks * params.y.len() + params.x.len();
        let c_len = suite.estimate(&nat_to_word_u64(u_len as u64), None)?.value;
        if best.is_none_or(|(_, _, c)| c_len < c) {
            best = Some((blocks, u_len, c_len));
        }
    }
    let Some((blocks, u_len, c_len)) = best else {
        return Err(DcflError::ConstructionFailed {
            blocks: params.blocks,
            period: cycle.period,
            max_blocks: params.max_blocks,
        });
    };
    let u_prime = params.y.power(blocks).concat(&params.x);
    let after_u_prime = config_after(m, &u_prime)?;
    let (_, stream_u_prime, _) = run_stream(m, &after_u_prime, v)?;
    let h = after_u.height();
    let h2 = after_u_prime.height();
    let keep = h.saturating_sub(c1);
    let same_top = h2 >= keep && after_u.stack[h - keep..] == after_u_prime.stack[h2 - keep..];
    Ok(SameTop {
        cycle,
        blocks,
        u_len,
        c_len,
        stack_u: after_u.stack_word(),
        stack_u_prime: after_u_prime.stack_word(),
        same_state: after_u.state == after_u_prime.state,
        same_top,
        same_stream: *stream_u == stream_u_prime,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiffResult {
    Disagreement { word: Word, machine: bool, oracle: bool, checked: u64 },
    /// Every word shorter than `max_len` agrees.
    Agreement { checked: u64, max_len: usize },
}

/// Length-lex scan of all words of length `< max_len`.
pub fn dpda_vs_oracle_diff(m: &Dpda, lang: &Language, max_len: usize) -> Result<DiffResult, DcflError> {
    if m.alphabet() != lang.alphabet() {
        return Err(AutomatonError::AlphabetMismatch {
            left: m.alphabet().to_string(),
            right: lang.alphabet().to_string(),
        }
        .into());
    }
    let alphabet: &Alphabet = m.alphabet();
    let mut checked = 0u64;
    for len in 0..max_len {
        for w in alphabet.words_of_length(len) {
            checked += 1;
            let machine = m.accepts(&w)?;
            let oracle = lang.contains(&w);
            if machine != oracle {
                return Ok(DiffResult::Disagreement { word: w, machine, oracle, checked });
            }
        }
    }
    Ok(DiffResult::Agreement { checked, max_len })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::machines;
    use crate::zoo;

    fn w(s: &str) -> Word {
        Word::from(s)
    }

    #[test]
    fn eq01_profile_rises_and_falls() {
        let p = stack_profile(&machines::eq01_dpda(), &w("00001111")).unwrap();
        assert_eq!(p.heights, vec![2, 3, 4, 5, 4, 3, 2, 1]);
        assert_eq!(p.sparkline(), "23454321");
        assert!(p.accepted);
        assert_eq!(p.suffix_min, vec![1; 8]);
        let rise = stack_profile(&machines::eq01_dpda(), &w("0000")).unwrap();
        assert_eq!(rise.heights, vec![2, 3, 4, 5]);
        assert_eq!(rise.final_stack.len(), 5);
        assert_eq!(rise.suffix_min, rise.heights);
    }

    #[test]
    fn push_always_strictly_increases() {
        let p = stack_profile(&machines::push_always(), &w("0110100")).unwrap();
        assert!(p.heights.windows(2).all(|h| h[0] < h[1]));
        for i in 1..p.suffix_min.len() {
            assert!(p.suffix_min[i - 1] <= p.suffix_min[i]);
        }
    }

    #[test]
    fn eq01_is_case1_at_end_of_ones() {
        let c = case_classify(&machines::eq01_dpda(), &w("00000000"), &w("11111111"), 1).unwrap();
        assert_eq!(c.case, Case::Case1 { position: 8, height: 1 });
        assert_eq!(c.height_after_u, 9);
    }

    #[test]
    fn push_always_is_case2() {
        for c1 in 1..9 {
            let c = case_classify(&machines::push_always(), &w("00000000"), &w("11111111"), c1).unwrap();
            assert_eq!(c.case, Case::Case2 { min_height: 9 });
        }
    }

    #[test]
    fn empty_v_compares_height_after_u() {
        let m = machines::eq01_dpda();
        assert!(matches!(case_classify(&m, &w("0"), &Word::new(), 2).unwrap().case, Case::Case1 { position: 0, .. }));
        assert!(matches!(case_classify(&m, &w("00"), &Word::new(), 2).unwrap().case, Case::Case2 { .. }));
        assert_eq!(case_classify(&m, &w("1"), &Word::new(), 1).unwrap_err(), DcflError::StuckInPrefix { position: 0 });
        assert_eq!(case_classify(&m, &w("0"), &w("1"), 0).unwrap_err(), DcflError::ZeroC1);
    }

    #[test]
    fn cycles_of_shipped_machines() {
        let r = cycle_detect(&machines::push_ab(), &w("a"), &w("ab"), 16).unwrap().unwrap();
        assert_eq!((r.period, r.growth), (1, 2));
        assert!(r.within_triple_bound());
        let r = cycle_detect(&machines::flip2(), &Word::new(), &w("0"), 16).unwrap().unwrap();
        assert_eq!((r.period, r.growth), (2, 1));
        assert!(r.within_triple_bound());
        assert!(cycle_recurs(&machines::flip2(), &Word::new(), &w("0"), &r, 2).unwrap());
        assert_eq!(cycle_detect(&machines::parity_dpda(), &w("1"), &w("01"), 16).unwrap(), None);
        assert_eq!(cycle_detect(&machines::parity_dpda(), &w("1"), &Word::new(), 16).unwrap_err(), DcflError::EmptyBlock);
    }

    #[test]
    fn popping_suffix_hides_levels() {
        // x pops everything y pushed, so no level survives.
        let err = cycle_detect(&machines::eq01_dpda(), &w("1111"), &w("0"), 4).unwrap_err();
        assert_eq!(err, DcflError::HorizonExhausted { max_blocks: 4, history: 0 });
    }

    #[test]
    fn eq01_experiment_is_case1() {
        let m = machines::eq01_dpda();
        let mut p = ExperimentParams::new(Word::new(), w("0"), 6, Word::repeat_symbol(b'1', 6), 6);
        p.c1 = Some(1);
        p.oracle = Some((zoo::oracle("eq01").unwrap(), 8));
        let r = kcdcfl_experiment(&m, &p, &Suite::standard()).unwrap();
        assert!(matches!(r.classification.case, Case::Case1 { position: 6, .. }));
        assert_eq!(r.stack_uv.to_string(), "Z");
        assert_eq!(r.w, Some(Word::new()));
        assert_eq!(r.c_w, Some(2));
        assert_eq!(r.acceptance.to_string(), "0000001");
        assert_eq!(r.verification, Verification::NotNeeded);
    }

    #[test]
    fn push_always_experiment_verifies() {
        let m = machines::push_always();
        let p = ExperimentParams::new(w("1"), w("0"), 8, w("0101"), 4);
        let r = kcdcfl_experiment(&m, &p, &Suite::standard()).unwrap();
        let Verification::Checked(t) = &r.verification else { panic!("{:?}", r.verification) };
        assert!(t.verified(), "{t:?}");
        assert_eq!(t.cycle.period, 1);
        assert!(t.blocks > 8);
        assert_eq!(r.bits_per_symbol, 1);
        let again = kcdcfl_experiment(&m, &p, &Suite::standard()).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn construction_needs_room() {
        let m = machines::push_always();
        let mut p = ExperimentParams::new(Word::new(), w("0"), 8, w("0"), 1);
        p.max_blocks = 8;
        assert!(matches!(kcdcfl_experiment(&m, &p, &Suite::standard()), Err(DcflError::ConstructionFailed { .. })));
        p.n = 2;
        assert_eq!(
            kcdcfl_experiment(&m, &p, &Suite::standard()).unwrap_err(),
            DcflError::ShortOmega { available: 1, requested: 2 }
        );
    }

    #[test]
    fn refuter() {
        let m = machines::eq01_dpda();
        let agree = dpda_vs_oracle_diff(&m, &zoo::oracle("eq01").unwrap(), 12).unwrap();
        assert_eq!(agree, DiffResult::Agreement { checked: 4095, max_len: 12 });
        let pal = dpda_vs_oracle_diff(&m, &zoo::oracle("palindrome").unwrap(), 12).unwrap();
        assert_eq!(pal, DiffResult::Disagreement { word: Word::new(), machine: false, oracle: true, checked: 1 });
        let parity = dpda_vs_oracle_diff(&machines::parity_dpda(), &zoo::oracle("odd-ones").unwrap(), 10).unwrap();
        assert!(matches!(parity, DiffResult::Agreement { .. }));
        assert!(dpda_vs_oracle_diff(&machines::push_ab(), &zoo::oracle("eq01").unwrap(), 3).is_err());
    }
}
