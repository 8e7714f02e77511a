//! Line-oriented machine descriptions.
//!
//! ```text
//! # parity of ones
//! type dfa
//! alphabet 0 1
//! states 2
//! start 0
//! accept 1
//! trans 0 0 0
//! trans 0 1 1
//! trans 1 0 1
//! trans 1 1 0
//! ```
//!
//! A `dpda` adds `stack <symbols…>` and `bottom <symbol>` and writes
//! transitions as `trans <q> <symbol|eps> <top> <q'> <push|->`, the push
//! string top-last and `-` for a pop.

use std::collections::BTreeMap;

use crate::automata::dfa::Dfa;
use crate::automata::dpda::{Dpda, Transition};
use crate::error::AutomatonError;
use crate::word::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Machine {
    Dfa(Dfa),
    Dpda(Dpda),
}

impl Machine {
    pub fn kind(&self) -> &'static str {
        match self {
            Machine::Dfa(_) => "dfa",
            Machine::Dpda(_) => "dpda",
        }
    }

    pub fn into_dfa(self) -> Option<Dfa> {
        match self {
            Machine::Dfa(d) => Some(d),
            Machine::Dpda(_) => None,
        }
    }

    pub fn into_dpda(self) -> Option<Dpda> {
        match self {
            Machine::Dpda(d) => Some(d),
            Machine::Dfa(_) => None,
        }
    }
}

fn perr(line: usize, message: impl Into<String>) -> AutomatonError {
    AutomatonError::Parse { line, message: message.into() }
}

fn single_symbol(line: usize, token: &str) -> Result<u8, AutomatonError> {
    let bytes = token.as_bytes();
    if bytes.len() != 1 || !bytes[0].is_ascii_graphic() {
        return Err(perr(line, format!("symbol {token:?} must be one printable character")));
    }
    Ok(bytes[0])
}

fn parse_state(line: usize, token: &str, states: Option<usize>) -> Result<usize, AutomatonError> {
    let q: usize = token.parse().map_err(|_| perr(line, format!("bad state {token:?}")))?;
    match states {
        None => Err(perr(line, "`states` must come before states are used")),
        Some(n) if q >= n => Err(perr(line, format!("state {q} out of range (0..{n})"))),
        Some(_) => Ok(q),
    }
}

fn alphabet_of(line: usize, tokens: &[&str]) -> Result<Alphabet, AutomatonError> {
    let symbols = tokens.iter().map(|t| single_symbol(line, t)).collect::<Result<Vec<_>, _>>()?;
    Alphabet::new(&symbols).map_err(|e| perr(line, e.to_string()))
}

#[derive(Default)]
struct Header {
    kind: Option<(usize, String)>,
    alphabet: Option<Alphabet>,
    stack: Option<Alphabet>,
    bottom: Option<u8>,
    states: Option<usize>,
    start: Option<usize>,
    accept: Option<Vec<usize>>,
}

/// Parses a machine description, reporting the first problem with its line.
pub fn parse_machine(text: &str) -> Result<Machine, AutomatonError> {
    let mut h = Header::default();
    let mut dfa_moves: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut dpda_moves: Vec<(usize, Transition)> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        // '#' is also a legal symbol, so only whole-line comments exist.
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let (keyword, args) = (tokens[0], &tokens[1..]);
        if keyword != "type" && h.kind.is_none() {
            return Err(perr(line, "first directive must be `type dfa` or `type dpda`"));
        }
        let is_dpda = h.kind.as_ref().is_some_and(|(_, k)| k == "dpda");
        match keyword {
            "type" => {
                if h.kind.is_some() {
                    return Err(perr(line, "duplicate `type`"));
                }
                match args {
                    [k @ ("dfa" | "dpda")] => h.kind = Some((line, k.to_string())),
                    _ => return Err(perr(line, "expected `type dfa` or `type dpda`")),
                }
            }
            "alphabet" => h.alphabet = Some(alphabet_of(line, args)?),
            "stack" if is_dpda => h.stack = Some(alphabet_of(line, args)?),
            "bottom" if is_dpda => match args {
                [s] => h.bottom = Some(single_symbol(line, s)?),
                _ => return Err(perr(line, "expected `bottom <symbol>`")),
            },
            "states" => match args {
                [n] => {
                    let n: usize = n.parse().map_err(|_| perr(line, format!("bad state count {n:?}")))?;
                    if n == 0 {
                        return Err(perr(line, "machine needs at least one state"));
                    }
                    h.states = Some(n);
                }
                _ => return Err(perr(line, "expected `states <count>`")),
            },
            "start" => match args {
                [q] => h.start = Some(parse_state(line, q, h.states)?),
                _ => return Err(perr(line, "expected `start <state>`")),
            },
            "accept" => {
                let qs = args.iter().map(|q| parse_state(line, q, h.states)).collect::<Result<Vec<_>, _>>()?;
                h.accept = Some(qs);
            }
            "trans" if !is_dpda => {
                let alphabet = h.alphabet.as_ref().ok_or_else(|| perr(line, "`alphabet` must precede transitions"))?;
                let [from, sym, to] = args else {
                    return Err(perr(line, "expected `trans <q> <symbol> <q'>`"));
                };
                let from = parse_state(line, from, h.states)?;
                let s = single_symbol(line, sym)?;
                let a = alphabet
                    .index_of(s)
                    .ok_or_else(|| perr(line, format!("symbol {sym:?} not in alphabet")))?;
                let to = parse_state(line, to, h.states)?;
                if dfa_moves.insert((from, a), to).is_some() {
                    return Err(perr(line, format!("duplicate transition from {from} on {sym:?}")));
                }
            }
            "trans" => {
                let alphabet = h.alphabet.as_ref().ok_or_else(|| perr(line, "`alphabet` must precede transitions"))?;
                let stack = h.stack.as_ref().ok_or_else(|| perr(line, "`stack` must precede transitions"))?;
                let [from, sym, top, to, push] = args else {
                    return Err(perr(line, "expected `trans <q> <symbol|eps> <top> <q'> <push|->`"));
                };
                let from = parse_state(line, from, h.states)?;
                let input = if *sym == "eps" {
                    None
                } else {
                    let s = single_symbol(line, sym)?;
                    if !alphabet.contains(s) {
                        return Err(perr(line, format!("symbol {sym:?} not in alphabet")));
                    }
                    Some(s)
                };
                let top = single_symbol(line, top)?;
                if !stack.contains(top) {
                    return Err(perr(line, format!("stack symbol {:?} not in stack alphabet", top as char)));
                }
                let to = parse_state(line, to, h.states)?;
                let push = if *push == "-" { Vec::new() } else { push.as_bytes().to_vec() };
                if let Some(&bad) = push.iter().find(|&&s| !stack.contains(s)) {
                    return Err(perr(line, format!("stack symbol {:?} not in stack alphabet", bad as char)));
                }
                dpda_moves.push((line, Transition { from, input, top, to, push }));
            }
            other => return Err(perr(line, format!("unknown directive {other:?}"))),
        }
    }

    let (type_line, kind) = h.kind.ok_or_else(|| perr(last_line.max(1), "missing `type`"))?;
    let alphabet = h.alphabet.ok_or_else(|| perr(type_line, "missing `alphabet`"))?;
    let states = h.states.ok_or_else(|| perr(type_line, "missing `states`"))?;
    let start = h.start.ok_or_else(|| perr(type_line, "missing `start`"))?;
    let accept = h.accept.unwrap_or_default();

    if kind == "dfa" {
        let k = alphabet.size();
        let mut delta = Vec::with_capacity(states * k);
        for q in 0..states {
            for a in 0..k {
                match dfa_moves.get(&(q, a)) {
                    Some(&t) => delta.push(t),
                    None => {
                        return Err(perr(
                            last_line,
                            format!("missing transition from {q} on {:?}", alphabet.symbol(a) as char),
                        ))
                    }
                }
            }
        }
        return Ok(Machine::Dfa(Dfa::new(alphabet, states, delta, start, &accept)?));
    }

    let stack = h.stack.ok_or_else(|| perr(type_line, "missing `stack`"))?;
    let bottom = h.bottom.ok_or_else(|| perr(type_line, "missing `bottom`"))?;
    // Validate incrementally so a failure can name its line.
    let mut accepted: Vec<Transition> = Vec::with_capacity(dpda_moves.len());
    for (line, t) in dpda_moves {
        accepted.push(t);
        Dpda::new(alphabet.clone(), stack.clone(), states, start, &accept, bottom, accepted.clone())
            .map_err(|e| perr(line, e.to_string()))?;
    }
    Ok(Machine::Dpda(Dpda::new(alphabet, stack, states, start, &accept, bottom, accepted)?))
}

fn join_symbols(a: &Alphabet) -> String {
    a.to_string()
}

fn join_states(qs: &[usize]) -> String {
    qs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn dfa_to_text(d: &Dfa) -> String {
    let mut out = String::from("type dfa\n");
    out.push_str(&format!("alphabet {}\n", join_symbols(d.alphabet())));
    out.push_str(&format!("states {}\n", d.state_count()));
    out.push_str(&format!("start {}\n", d.start()));
    out.push_str(format!("accept {}", join_states(&d.accepting_states())).trim_end());
    out.push('\n');
    for q in 0..d.state_count() {
        for (a, &s) in d.alphabet().symbols().iter().enumerate() {
            out.push_str(&format!("trans {q} {} {}\n", s as char, d.step(q, a)));
        }
    }
    out
}

pub fn dpda_to_text(d: &Dpda) -> String {
    let mut out = String::from("type dpda\n");
    out.push_str(&format!("alphabet {}\n", join_symbols(d.alphabet())));
    out.push_str(&format!("stack {}\n", join_symbols(d.stack_alphabet())));
    out.push_str(&format!("bottom {}\n", d.bottom() as char));
    out.push_str(&format!("states {}\n", d.state_count()));
    out.push_str(&format!("start {}\n", d.start()));
    out.push_str(format!("accept {}", join_states(&d.accepting_states())).trim_end());
    out.push('\n');
    for t in d.transitions() {
        let input = t.input.map_or("eps".to_string(), |s| (s as char).to_string());
        let push = if t.push.is_empty() { "-".to_string() } else { String::from_utf8_lossy(&t.push).into_owned() };
        out.push_str(&format!("trans {} {input} {} {} {push}\n", t.from, t.top as char, t.to));
    }
    out
}
