use std::fmt;

use crate::error::AutomatonError;
use crate::word::{Alphabet, Word};

/// One transition as written in a machine description. Symbols are raw
/// characters; `input: None` is an ε-move. `push` is written top-last and
/// replaces the current top, so an empty `push` pops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub from: usize,
    pub input: Option<u8>,
    pub top: u8,
    pub to: usize,
    pub push: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Move {
    pub to: usize,
    /// Stack-alphabet indices, top last.
    pub push: Vec<usize>,
}

/// Deterministic pushdown automaton accepting by final state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dpda {
    alphabet: Alphabet,
    stack_alphabet: Alphabet,
    states: usize,
    start: usize,
    accepting: Vec<bool>,
    bottom: usize,
    table: Vec<Option<Move>>,
    transitions: Vec<Transition>,
}

/// Machine configuration: state plus stack contents, bottom first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Config {
    pub state: usize,
    pub stack: Vec<u8>,
}

impl Config {
    pub fn height(&self) -> usize {
        self.stack.len()
    }

    pub fn stack_word(&self) -> Word {
        Word::from_bytes(self.stack.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Start,
    Input(u8),
    Epsilon,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Input symbols consumed once this step is done.
    pub position: usize,
    pub state: usize,
    pub height: usize,
    pub kind: StepKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunOutcome {
    Completed,
    /// No move applies with input left; the word is rejected.
    Stuck { position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    pub steps: Vec<TraceStep>,
    pub final_state: usize,
    pub accepted: bool,
    pub outcome: RunOutcome,
    pub final_stack: Word,
    /// Full stack after consuming the given number of symbols (and the ε-moves that follow).
    pub checkpoints: Vec<(usize, Word)>,
}

impl RunTrace {
    pub fn is_stuck(&self) -> bool {
        matches!(self.outcome, RunOutcome::Stuck { .. })
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Consecutive ε-moves allowed; defaults to `10·|Q|·|Γ|`.
    pub epsilon_limit: Option<usize>,
    pub checkpoints: Vec<usize>,
}

impl Dpda {
    pub fn new(
        alphabet: Alphabet,
        stack_alphabet: Alphabet,
        states: usize,
        start: usize,
        accepting: &[usize],
        bottom: u8,
        transitions: Vec<Transition>,
    ) -> Result<Self, AutomatonError> {
        if states == 0 {
            return Err(AutomatonError::NoStates);
        }
        for &q in std::iter::once(&start).chain(accepting) {
            if q >= states {
                return Err(AutomatonError::StateOutOfRange { state: q, states });
            }
        }
        let bottom_idx = stack_alphabet
            .index_of(bottom)
            .ok_or(AutomatonError::UnknownStackSymbol(bottom as char))?;
        let k = alphabet.size();
        let g = stack_alphabet.size();
        let mut table: Vec<Option<Move>> = vec![None; states * (k + 1) * g];
        for t in &transitions {
            for q in [t.from, t.to] {
                if q >= states {
                    return Err(AutomatonError::StateOutOfRange { state: q, states });
                }
            }
            let input_slot = match t.input {
                None => 0,
                Some(s) => {
                    1 + alphabet
                        .index_of(s)
                        .ok_or(AutomatonError::SymbolNotInAlphabet { position: 0, symbol: s as char })?
                }
            };
            let top = stack_alphabet
                .index_of(t.top)
                .ok_or(AutomatonError::UnknownStackSymbol(t.top as char))?;
            let push = t
                .push
                .iter()
                .map(|&s| stack_alphabet.index_of(s).ok_or(AutomatonError::UnknownStackSymbol(s as char)))
                .collect::<Result<Vec<_>, _>>()?;
            if top == bottom_idx {
                if push.first() != Some(&bottom_idx) {
                    return Err(AutomatonError::BottomMarker {
                        state: t.from,
                        bottom: bottom as char,
                        reason: "a move on the bottom marker must keep it",
                    });
                }
                if push[1..].contains(&bottom_idx) {
                    return Err(AutomatonError::BottomMarker {
                        state: t.from,
                        bottom: bottom as char,
                        reason: "the bottom marker is pushed only initially",
                    });
                }
            } else if push.contains(&bottom_idx) {
                return Err(AutomatonError::BottomMarker {
                    state: t.from,
                    bottom: bottom as char,
                    reason: "the bottom marker is pushed only initially",
                });
            }
            let slot = (t.from * (k + 1) + input_slot) * g + top;
            if table[slot].is_some() {
                return Err(AutomatonError::DuplicateTransition {
                    state: t.from,
                    input: t.input.map_or("eps".to_string(), |s| (s as char).to_string()),
                    top: t.top as char,
                });
            }
            table[slot] = Some(Move { to: t.to, push });
        }
        for q in 0..states {
            for top in 0..g {
                if table[(q * (k + 1)) * g + top].is_none() {
                    continue;
                }
                for a in 0..k {
                    if table[(q * (k + 1) + 1 + a) * g + top].is_some() {
                        return Err(AutomatonError::EpsilonConflict {
                            state: q,
                            top: stack_alphabet.symbol(top) as char,
                            symbol: alphabet.symbol(a) as char,
                        });
                    }
                }
            }
        }
        let mut acc = vec![false; states];
        for &q in accepting {
            acc[q] = true;
        }
        Ok(Dpda {
            alphabet,
            stack_alphabet,
            states,
            start,
            accepting: acc,
            bottom: bottom_idx,
            table,
            transitions,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn stack_alphabet(&self) -> &Alphabet {
        &self.stack_alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn bottom(&self) -> u8 {
        self.stack_alphabet.symbol(self.bottom)
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.states).filter(|&q| self.accepting[q]).collect()
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn default_epsilon_limit(&self) -> usize {
        10 * self.states * self.stack_alphabet.size()
    }

    pub fn initial_config(&self) -> Config {
        Config { state: self.start, stack: vec![self.bottom()] }
    }

    pub(crate) fn lookup(&self, q: usize, input: Option<usize>, top: usize) -> Option<&Move> {
        let k = self.alphabet.size();
        let g = self.stack_alphabet.size();
        let slot = input.map_or(0, |a| a + 1);
        self.table[(q * (k + 1) + slot) * g + top].as_ref()
    }

    pub(crate) fn config_to_sim(&self, config: &Config) -> Result<Sim<'_>, AutomatonError> {
        if config.state >= self.states {
            return Err(AutomatonError::StateOutOfRange { state: config.state, states: self.states });
        }
        let mut stack = Vec::with_capacity(config.stack.len());
        for (i, &s) in config.stack.iter().enumerate() {
            let sym = self
                .stack_alphabet
                .index_of(s)
                .ok_or(AutomatonError::UnknownStackSymbol(s as char))?;
            stack.push(Cell { sym, id: i as u64 });
        }
        if stack.first().map(|c| c.sym) != Some(self.bottom) {
            return Err(AutomatonError::BottomMarker {
                state: config.state,
                bottom: self.bottom() as char,
                reason: "configuration stack must start with the bottom marker",
            });
        }
        let next_id = stack.len() as u64;
        Ok(Sim { m: self, state: config.state, stack, next_id, consumed: 0 })
    }

    pub fn run(&self, w: &Word) -> Result<RunTrace, AutomatonError> {
        self.run_with(w, &RunOptions::default())
    }

    pub fn run_with(&self, w: &Word, opts: &RunOptions) -> Result<RunTrace, AutomatonError> {
        self.run_from(&self.initial_config(), w, opts)
    }

    /// Runs from an arbitrary configuration. ε-moves are taken eagerly; the
    /// word is accepted when some configuration reached after the last input
    /// symbol (including the trailing ε-moves) is in an accepting state.
    pub fn run_from(&self, config: &Config, w: &Word, opts: &RunOptions) -> Result<RunTrace, AutomatonError> {
        let limit = opts.epsilon_limit.unwrap_or_else(|| self.default_epsilon_limit());
        let mut sim = self.config_to_sim(config)?;
        let mut steps = vec![TraceStep { position: 0, state: sim.state, height: sim.height(), kind: StepKind::Start }];
        let mut checkpoints = Vec::new();
        let mut record = |sim: &Sim<'_>, kind: StepKind| {
            steps.push(TraceStep { position: sim.consumed, state: sim.state, height: sim.height(), kind });
        };
        let mut tail_accept = sim.close(limit, &mut record)?;
        if opts.checkpoints.contains(&0) {
            checkpoints.push((0, sim.config().stack_word()));
        }
        let mut outcome = RunOutcome::Completed;
        for (position, &s) in w.as_bytes().iter().enumerate() {
            let a = self
                .alphabet
                .index_of(s)
                .ok_or(AutomatonError::SymbolNotInAlphabet { position, symbol: s as char })?;
            if !sim.read(a) {
                outcome = RunOutcome::Stuck { position };
                break;
            }
            record(&sim, StepKind::Input(s));
            tail_accept = sim.close(limit, &mut record)?;
            if opts.checkpoints.contains(&sim.consumed) {
                checkpoints.push((sim.consumed, sim.config().stack_word()));
            }
        }
        let final_config = sim.config();
        Ok(RunTrace {
            steps,
            final_state: final_config.state,
            accepted: outcome == RunOutcome::Completed && tail_accept,
            outcome,
            final_stack: final_config.stack_word(),
            checkpoints,
        })
    }

    pub fn accepts(&self, w: &Word) -> Result<bool, AutomatonError> {
        self.accepts_from(&self.initial_config(), w)
    }

    /// Acceptance without recording a trace.
    pub fn accepts_from(&self, config: &Config, w: &Word) -> Result<bool, AutomatonError> {
        let limit = self.default_epsilon_limit();
        let mut sim = self.config_to_sim(config)?;
        let mut tail = sim.close(limit, &mut |_, _| {})?;
        for (position, &s) in w.as_bytes().iter().enumerate() {
            let a = self
                .alphabet
                .index_of(s)
                .ok_or(AutomatonError::SymbolNotInAlphabet { position, symbol: s as char })?;
            if !sim.read(a) {
                return Ok(false);
            }
            tail = sim.close(limit, &mut |_, _| {})?;
        }
        Ok(tail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Cell {
    pub sym: usize,
    /// Distinct per push; a cell whose id survives was never popped.
    pub id: u64,
}

/// Step-level simulator shared by runs and the stack analyses.
#[derive(Debug, Clone)]
pub(crate) struct Sim<'m> {
    pub m: &'m Dpda,
    pub state: usize,
    pub stack: Vec<Cell>,
    pub next_id: u64,
    pub consumed: usize,
}

impl<'m> Sim<'m> {
    pub fn height(&self) -> usize {
        self.stack.len()
    }

    pub fn top(&self) -> usize {
        self.stack.last().expect("stack keeps its bottom marker").sym
    }

    pub fn top_cell(&self) -> Cell {
        *self.stack.last().expect("stack keeps its bottom marker")
    }

    pub fn config(&self) -> Config {
        Config {
            state: self.state,
            stack: self.stack.iter().map(|c| self.m.stack_alphabet.symbol(c.sym)).collect(),
        }
    }

    fn apply(&mut self, mv: &Move) {
        let top = self.top();
        let keep_top = mv.push.first() == Some(&top);
        if !keep_top {
            self.stack.pop();
        }
        let skip = usize::from(keep_top);
        for &sym in &mv.push[skip..] {
            self.stack.push(Cell { sym, id: self.next_id });
            self.next_id += 1;
        }
        self.state = mv.to;
    }

    /// Takes ε-moves until none applies. Returns whether the current or any
    /// visited configuration is accepting.
    pub fn close(
        &mut self,
        limit: usize,
        observe: &mut impl FnMut(&Sim<'m>, StepKind),
    ) -> Result<bool, AutomatonError> {
        let mut accepting = self.m.accepting[self.state];
        let mut taken = 0usize;
        while let Some(mv) = self.m.lookup(self.state, None, self.top()) {
            if taken == limit {
                return Err(AutomatonError::EpsilonLoop { limit, position: self.consumed });
            }
            let mv = mv.clone();
            self.apply(&mv);
            taken += 1;
            accepting |= self.m.accepting[self.state];
            observe(self, StepKind::Epsilon);
        }
        Ok(accepting)
    }

    /// Consumes one symbol. `false` when no move applies.
    pub fn read(&mut self, a: usize) -> bool {
        match self.m.lookup(self.state, Some(a), self.top()) {
            Some(mv) => {
                let mv = mv.clone();
                self.apply(&mv);
                self.consumed += 1;
                true
            }
            None => false,
        }
    }
}

impl fmt::Display for Dpda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::automata::format::dpda_to_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::machines;

    fn w(s: &str) -> Word {
        Word::from(s)
    }

    fn input_heights(trace: &RunTrace) -> Vec<usize> {
        trace
            .steps
            .iter()
            .filter(|s| matches!(s.kind, StepKind::Input(_)))
            .map(|s| s.height)
            .collect()
    }

    #[test]
    fn eq01_accepts_balanced() {
        let m = machines::eq01_dpda();
        let trace = m.run(&w("0011")).unwrap();
        assert!(trace.accepted);
        assert_eq!(input_heights(&trace), vec![2, 3, 2, 1]);
        assert_eq!(trace.final_stack.to_string(), "Z");
    }

    #[test]
    fn eq01_sticks_after_match() {
        let m = machines::eq01_dpda();
        let trace = m.run(&w("010")).unwrap();
        assert!(!trace.accepted);
        assert_eq!(trace.outcome, RunOutcome::Stuck { position: 2 });
        assert!(!m.accepts(&w("010")).unwrap());
    }

    #[test]
    fn empty_input_uses_closure_of_start() {
        let m = machines::eq01_dpda();
        assert!(!m.run(&Word::new()).unwrap().accepted);
        // A machine whose start state ε-moves into acceptance.
        let t = vec![Transition { from: 0, input: None, top: b'Z', to: 1, push: b"Z".to_vec() }];
        let m = Dpda::new(Alphabet::binary(), Alphabet::new(b"Z").unwrap(), 2, 0, &[1], b'Z', t).unwrap();
        assert!(m.run(&Word::new()).unwrap().accepted);
    }

    #[test]
    fn height_changes_match_push_lengths() {
        let m = machines::eq01_dpda();
        let trace = m.run(&w("000111")).unwrap();
        for pair in trace.steps.windows(2) {
            let delta = pair[1].height as isize - pair[0].height as isize;
            assert!((-1..=1).contains(&delta));
            assert!(pair[1].position >= pair[0].position);
        }
    }

    #[test]
    fn checkpoints_record_stacks() {
        let m = machines::eq01_dpda();
        let opts = RunOptions { checkpoints: vec![0, 2, 3], ..Default::default() };
        let trace = m.run_with(&w("0011"), &opts).unwrap();
        let shown: Vec<(usize, String)> = trace.checkpoints.iter().map(|(p, s)| (*p, s.to_string())).collect();
        assert_eq!(shown, vec![(0, "Z".into()), (2, "ZAA".into()), (3, "ZA".into())]);
    }

    #[test]
    fn epsilon_loop_is_reported() {
        let t = vec![Transition { from: 0, input: None, top: b'Z', to: 0, push: b"Z".to_vec() }];
        let m = Dpda::new(Alphabet::binary(), Alphabet::new(b"Z").unwrap(), 1, 0, &[], b'Z', t).unwrap();
        assert_eq!(m.run(&w("0")).unwrap_err(), AutomatonError::EpsilonLoop { limit: 10, position: 0 });
    }

    #[test]
    fn determinism_enforced() {
        let t = vec![
            Transition { from: 0, input: None, top: b'Z', to: 0, push: b"Z".to_vec() },
            Transition { from: 0, input: Some(b'0'), top: b'Z', to: 0, push: b"Z".to_vec() },
        ];
        let err = Dpda::new(Alphabet::binary(), Alphabet::new(b"Z").unwrap(), 1, 0, &[], b'Z', t).unwrap_err();
        assert!(matches!(err, AutomatonError::EpsilonConflict { state: 0, .. }));
    }

    #[test]
    fn bottom_marker_rules() {
        let pop_bottom = vec![Transition { from: 0, input: Some(b'0'), top: b'Z', to: 0, push: vec![] }];
        assert!(matches!(
            Dpda::new(Alphabet::binary(), Alphabet::new(b"ZA").unwrap(), 1, 0, &[], b'Z', pop_bottom),
            Err(AutomatonError::BottomMarker { .. })
        ));
        let push_bottom = vec![Transition { from: 0, input: Some(b'0'), top: b'A', to: 0, push: b"AZ".to_vec() }];
        assert!(matches!(
            Dpda::new(Alphabet::binary(), Alphabet::new(b"ZA").unwrap(), 1, 0, &[], b'Z', push_bottom),
            Err(AutomatonError::BottomMarker { .. })
        ));
    }
}
