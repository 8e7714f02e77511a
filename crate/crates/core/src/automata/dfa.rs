use std::collections::{HashMap, VecDeque};

use crate::error::AutomatonError;
use crate::word::{Alphabet, Word};

/// Deterministic finite automaton with a total transition function.
///
/// States are `0..states`. The transition table is row-major: the successor
/// of `q` on the symbol with alphabet index `a` is `delta[q * |Σ| + a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    states: usize,
    delta: Vec<usize>,
    start: usize,
    accepting: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DfaRun {
    pub state: usize,
    pub accepted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Complement,
    Union,
    Intersection,
}

impl CombineOp {
    pub fn name(self) -> &'static str {
        match self {
            CombineOp::Complement => "complement",
            CombineOp::Union => "union",
            CombineOp::Intersection => "intersection",
        }
    }
}

impl std::str::FromStr for CombineOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "complement" => Ok(CombineOp::Complement),
            "union" => Ok(CombineOp::Union),
            "intersection" => Ok(CombineOp::Intersection),
            other => Err(format!("unknown operation {other:?}")),
        }
    }
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        states: usize,
        delta: Vec<usize>,
        start: usize,
        accepting: &[usize],
    ) -> Result<Self, AutomatonError> {
        if states == 0 {
            return Err(AutomatonError::NoStates);
        }
        let k = alphabet.size();
        if delta.len() != states * k {
            let missing = delta.len().min(states * k);
            return Err(AutomatonError::MissingTransition {
                state: missing / k,
                symbol: alphabet.symbol(missing % k) as char,
            });
        }
        for &target in delta.iter().chain(std::iter::once(&start)).chain(accepting) {
            if target >= states {
                return Err(AutomatonError::StateOutOfRange { state: target, states });
            }
        }
        let mut acc = vec![false; states];
        for &q in accepting {
            acc[q] = true;
        }
        Ok(Dfa { alphabet, states, delta, start, accepting: acc })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.states).filter(|&q| self.accepting[q]).collect()
    }

    /// Successor of `q` on the symbol with alphabet index `a`.
    pub fn step(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.alphabet.size() + a]
    }

    fn symbol_indices(&self, w: &Word) -> Result<Vec<usize>, AutomatonError> {
        w.as_bytes()
            .iter()
            .enumerate()
            .map(|(position, &s)| {
                self.alphabet
                    .index_of(s)
                    .ok_or(AutomatonError::SymbolNotInAlphabet { position, symbol: s as char })
            })
            .collect()
    }

    /// `δ'(w, q)`.
    pub fn run_from(&self, q: usize, w: &Word) -> Result<usize, AutomatonError> {
        Ok(self.symbol_indices(w)?.into_iter().fold(q, |q, a| self.step(q, a)))
    }

    pub fn run(&self, w: &Word) -> Result<DfaRun, AutomatonError> {
        let state = self.run_from(self.start, w)?;
        Ok(DfaRun { state, accepted: self.accepting[state] })
    }

    pub fn accepts(&self, w: &Word) -> Result<bool, AutomatonError> {
        Ok(self.run(w)?.accepted)
    }

    pub fn complement(&self) -> Dfa {
        let mut out = self.clone();
        for a in &mut out.accepting {
            *a = !*a;
        }
        out
    }

    fn product(&self, other: &Dfa, both: bool) -> Result<Dfa, AutomatonError> {
        self.check_alphabet(other)?;
        let k = self.alphabet.size();
        let n2 = other.states;
        let states = self.states * n2;
        let mut delta = Vec::with_capacity(states * k);
        let mut accepting = Vec::new();
        for p in 0..self.states {
            for q in 0..n2 {
                for a in 0..k {
                    delta.push(self.step(p, a) * n2 + other.step(q, a));
                }
                let (x, y) = (self.accepting[p], other.accepting[q]);
                if (both && x && y) || (!both && (x || y)) {
                    accepting.push(p * n2 + q);
                }
            }
        }
        Dfa::new(self.alphabet.clone(), states, delta, self.start * n2 + other.start, &accepting)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa, AutomatonError> {
        self.product(other, false)
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa, AutomatonError> {
        self.product(other, true)
    }

    pub fn combine(&self, op: CombineOp, other: Option<&Dfa>) -> Result<Dfa, AutomatonError> {
        match op {
            CombineOp::Complement => Ok(self.complement()),
            CombineOp::Union => self.union(other.ok_or(AutomatonError::MissingOperand("union"))?),
            CombineOp::Intersection => {
                self.intersection(other.ok_or(AutomatonError::MissingOperand("intersection"))?)
            }
        }
    }

    fn check_alphabet(&self, other: &Dfa) -> Result<(), AutomatonError> {
        if self.alphabet != other.alphabet {
            return Err(AutomatonError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        Ok(())
    }

    /// States reachable from the start, in breadth-first order over the alphabet.
    pub fn reachable_states(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states];
        let mut order = vec![self.start];
        seen[self.start] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for a in 0..self.alphabet.size() {
                let r = self.step(q, a);
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
            i += 1;
        }
        order
    }

    /// Minimal equivalent machine via Moore partition refinement over the
    /// reachable states. States of the result are numbered in breadth-first
    /// discovery order from the start, so equal languages give equal machines.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.size();
        let reachable = self.reachable_states();
        let mut class: Vec<usize> = vec![usize::MAX; self.states];
        for &q in &reachable {
            class[q] = usize::from(self.accepting[q]);
        }
        let mut count = {
            let mut c: Vec<usize> = reachable.iter().map(|&q| class[q]).collect();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        loop {
            let mut signatures: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![usize::MAX; self.states];
            for &q in &reachable {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend((0..k).map(|a| class[self.step(q, a)]));
                let fresh = signatures.len();
                next[q] = *signatures.entry(sig).or_insert(fresh);
            }
            let refined = signatures.len();
            class = next;
            if refined == count {
                break;
            }
            count = refined;
        }
        // Renumber classes in BFS order from the start.
        let mut renumber = vec![usize::MAX; count];
        let mut order = Vec::with_capacity(count);
        let mut queue = VecDeque::from([self.start]);
        renumber[class[self.start]] = 0;
        order.push(self.start);
        while let Some(q) = queue.pop_front() {
            for a in 0..k {
                let r = self.step(q, a);
                if renumber[class[r]] == usize::MAX {
                    renumber[class[r]] = order.len();
                    order.push(r);
                    queue.push_back(r);
                }
            }
        }
        let mut delta = Vec::with_capacity(count * k);
        let mut accepting = Vec::new();
        for (i, &rep) in order.iter().enumerate() {
            for a in 0..k {
                delta.push(renumber[class[self.step(rep, a)]]);
            }
            if self.accepting[rep] {
                accepting.push(i);
            }
        }
        Dfa::new(self.alphabet.clone(), count, delta, 0, &accepting).expect("minimized machine is valid")
    }

    /// Shortest (length-lex least) word on which the two machines disagree.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<Word>, AutomatonError> {
        self.check_alphabet(other)?;
        let k = self.alphabet.size();
        let n2 = other.states;
        let mut parent: HashMap<usize, (usize, usize)> = HashMap::new();
        let root = self.start * n2 + other.start;
        let mut queue = VecDeque::from([root]);
        let mut seen = vec![false; self.states * n2];
        seen[root] = true;
        while let Some(node) = queue.pop_front() {
            let (p, q) = (node / n2, node % n2);
            if self.accepting[p] != other.accepting[q] {
                let mut rev = Vec::new();
                let mut cur = node;
                while cur != root {
                    let (prev, a) = parent[&cur];
                    rev.push(self.alphabet.symbol(a));
                    cur = prev;
                }
                rev.reverse();
                return Ok(Some(Word::from_bytes(rev)));
            }
            for a in 0..k {
                let next = self.step(p, a) * n2 + other.step(q, a);
                if !seen[next] {
                    seen[next] = true;
                    parent.insert(next, (node, a));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }

    /// Language equality.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool, AutomatonError> {
        Ok(self.distinguishing_word(other)?.is_none())
    }
}
