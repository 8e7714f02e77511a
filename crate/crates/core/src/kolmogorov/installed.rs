//! Decoders built from a machine or from another suite.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::{ceil_log2, fixed_bits, side_len, Decoder, Suite};
use crate::automata::Dfa;
use crate::codec::{nat_to_word, parse_standard_binary, self_delim_nat, self_delim_natural, self_delim_unchecked, standard_binary, BitReader};
use crate::word::{Natural, Word};
use crate::zoo::{nth_prime, SIEVE_BOUND};

/// Longest word the residual decoder will rank or unrank.
pub const RESIDUAL_MAX_LEN: usize = 512;

fn read_state(r: &mut BitReader<'_>, width: usize, states: usize) -> Option<usize> {
    let q = r.read_fixed(width).ok()? as usize;
    (q < states).then_some(q)
}

fn state_code(q: usize, width: usize) -> Vec<u8> {
    fixed_bits(q as u64, width)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidualOrder {
    LengthLex,
    /// Binary numerals of the primes; scans at most `budget` primes.
    Prime { budget: u64 },
}

/// Program: state index in `⌈log2 |Q|⌉` bits, then `self_delim(n)`. Output:
/// the `n`-th nonempty word (in the chosen order) accepted from that state,
/// i.e. the `n`-th element of `L_x` for every `x` leading to the state.
#[derive(Debug, Clone)]
pub struct ResidualDecoder {
    name: String,
    dfa: Dfa,
    order: ResidualOrder,
    width: usize,
    /// `counts[l][q]`: words of length `l` accepted from `q`.
    counts: Vec<Vec<BigUint>>,
}

impl ResidualDecoder {
    pub fn new(name: &str, dfa: Dfa, order: ResidualOrder) -> Self {
        let states = dfa.state_count();
        let k = dfa.alphabet().size();
        let mut counts: Vec<Vec<BigUint>> = Vec::with_capacity(RESIDUAL_MAX_LEN + 1);
        counts.push((0..states).map(|q| BigUint::from(u8::from(dfa.is_accepting(q)))).collect());
        for l in 1..=RESIDUAL_MAX_LEN {
            let prev = &counts[l - 1];
            let row = (0..states).map(|q| (0..k).map(|a| &prev[dfa.step(q, a)]).sum()).collect();
            counts.push(row);
        }
        ResidualDecoder { name: name.to_string(), width: ceil_log2(states), dfa, order, counts }
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// Bits spent on the state index.
    pub fn state_width(&self) -> usize {
        self.width
    }

    /// The program naming the `n`-th word from state `q`.
    pub fn program(&self, q: usize, n: &Natural) -> Word {
        let mut p = state_code(q, self.width);
        p.extend(self_delim_natural(n).into_bytes());
        Word::from_bytes(p)
    }

    /// `n`-th (1-based) nonempty word accepted from `q`.
    pub fn nth_from_state(&self, q: usize, n: &Natural, max_len: usize) -> Option<Word> {
        if n.is_zero() || q >= self.dfa.state_count() {
            return None;
        }
        match self.order {
            ResidualOrder::LengthLex => self.unrank_length_lex(q, n, max_len),
            ResidualOrder::Prime { budget } => {
                let target = n.to_u64()?;
                let mut found = 0u64;
                for i in 1..=budget {
                    let p = nth_prime(i).ok()?;
                    let y = standard_binary(&BigUint::from(p));
                    if y.len() > max_len {
                        return None;
                    }
                    if self.accepts_from(q, &y) {
                        found += 1;
                        if found == target {
                            return Some(y);
                        }
                    }
                }
                None
            }
        }
    }

    fn accepts_from(&self, q: usize, y: &Word) -> bool {
        self.dfa.run_from(q, y).is_ok_and(|s| self.dfa.is_accepting(s))
    }

    fn unrank_length_lex(&self, q: usize, n: &Natural, max_len: usize) -> Option<Word> {
        let mut rank = n.clone();
        let mut len = 1;
        loop {
            if len > max_len.min(RESIDUAL_MAX_LEN) {
                return None;
            }
            let c = &self.counts[len][q];
            if &rank <= c {
                break;
            }
            rank -= c;
            len += 1;
        }
        let mut out = Vec::with_capacity(len);
        let mut cur = q;
        for remaining in (0..len).rev() {
            for a in 0..self.dfa.alphabet().size() {
                let next = self.dfa.step(cur, a);
                let c = &self.counts[remaining][next];
                if &rank <= c {
                    out.push(self.dfa.alphabet().symbol(a));
                    cur = next;
                    break;
                }
                rank -= c;
            }
        }
        Some(Word::from_bytes(out))
    }

    /// Rank of `y` among nonempty words accepted from `q`.
    pub fn rank_from_state(&self, q: usize, y: &Word) -> Option<Natural> {
        if y.is_empty() || !self.accepts_from(q, y) {
            return None;
        }
        match self.order {
            ResidualOrder::LengthLex => {
                if y.len() > RESIDUAL_MAX_LEN {
                    return None;
                }
                let mut rank: BigUint = (1..y.len()).map(|l| &self.counts[l][q]).sum();
                let mut cur = q;
                for (j, &s) in y.as_bytes().iter().enumerate() {
                    let remaining = y.len() - j - 1;
                    let sym = self.dfa.alphabet().index_of(s)?;
                    for a in 0..sym {
                        rank += &self.counts[remaining][self.dfa.step(cur, a)];
                    }
                    cur = self.dfa.step(cur, sym);
                }
                Some(rank + BigUint::one())
            }
            ResidualOrder::Prime { budget } => {
                let value = parse_standard_binary(y)?.to_u64()?;
                if value > SIEVE_BOUND {
                    return None;
                }
                let mut rank = 0u64;
                for i in 1..=budget {
                    let p = nth_prime(i).ok()?;
                    if p > value {
                        return None;
                    }
                    if self.accepts_from(q, &standard_binary(&BigUint::from(p))) {
                        rank += 1;
                    }
                    if p == value {
                        return Some(Natural::from(rank));
                    }
                }
                None
            }
        }
    }
}

impl Decoder for ResidualDecoder {
    fn label(&self) -> String {
        format!("residual:{}", self.name)
    }

    fn description(&self) -> String {
        let order = match self.order {
            ResidualOrder::LengthLex => "length-lex",
            ResidualOrder::Prime { .. } => "prime",
        };
        format!("n-th word of a residual language of {} ({order} order)", self.name)
    }

    fn decode(&self, program: &[u8], _side: Option<&Natural>, max_len: usize) -> Option<Word> {
        let mut r = BitReader::new(program);
        let q = read_state(&mut r, self.width, self.dfa.state_count())?;
        let n = r.read_nat().ok()?;
        if !r.is_done() {
            return None;
        }
        self.nth_from_state(q, &n, max_len)
    }

    fn encode(&self, x: &Word, _side: Option<&Natural>) -> Vec<Word> {
        (0..self.dfa.state_count())
            .filter_map(|q| self.rank_from_state(q, x).map(|n| self.program(q, &n)))
            .collect()
    }
}

/// Characteristic sequence of `L_q` along the length-lex order of Σ*.
pub fn chi_from_state(dfa: &Dfa, q: usize, n: usize) -> Word {
    let mut out = Vec::with_capacity(n);
    let mut layer = vec![q];
    while out.len() < n {
        for &s in &layer {
            if out.len() == n {
                break;
            }
            out.push(if dfa.is_accepting(s) { b'1' } else { b'0' });
        }
        if out.len() == n {
            break;
        }
        // Only as many successors as can still be emitted.
        let need = n - out.len();
        let k = dfa.alphabet().size();
        let mut next = Vec::with_capacity(need.min(layer.len() * k));
        'outer: for &s in &layer {
            for a in 0..k {
                if next.len() == need {
                    break 'outer;
                }
                next.push(dfa.step(s, a));
            }
        }
        layer = next;
    }
    Word::from_bytes(out)
}

/// Program: state index in `⌈log2 |Q|⌉` bits, then `self_delim(n)` unless
/// the side value supplies `n`. Output: `χ_{1:n}` of the residual language
/// at that state.
#[derive(Debug, Clone)]
pub struct ChiDecoder {
    name: String,
    dfa: Dfa,
    width: usize,
}

impl ChiDecoder {
    pub fn new(name: &str, dfa: Dfa) -> Self {
        ChiDecoder { name: name.to_string(), width: ceil_log2(dfa.state_count()), dfa }
    }

    pub fn state_width(&self) -> usize {
        self.width
    }
}

impl Decoder for ChiDecoder {
    fn label(&self) -> String {
        format!("chi:{}", self.name)
    }

    fn description(&self) -> String {
        format!("characteristic sequence of a residual language of {}", self.name)
    }

    fn decode(&self, program: &[u8], side: Option<&Natural>, max_len: usize) -> Option<Word> {
        let mut r = BitReader::new(program);
        let q = read_state(&mut r, self.width, self.dfa.state_count())?;
        let n = match side {
            Some(s) => s.to_usize()?,
            None => r.read_nat().ok()?.to_usize()?,
        };
        (r.is_done() && n <= max_len).then(|| chi_from_state(&self.dfa, q, n))
    }

    fn encode(&self, x: &Word, side: Option<&Natural>) -> Vec<Word> {
        let len_code = match side_len(side) {
            None if side.is_none() => self_delim_nat(x.len() as u64).into_bytes(),
            Some(n) if n == x.len() => Vec::new(),
            _ => return Vec::new(),
        };
        (0..self.dfa.state_count())
            .filter(|&q| chi_from_state(&self.dfa, q, x.len()) == *x)
            .map(|q| {
                let mut p = state_code(q, self.width);
                p.extend_from_slice(&len_code);
                Word::from_bytes(p)
            })
            .collect()
    }
}

/// Program: `self_delim(d) ++ self_delim(l(u)) ++ uw` where `d` is a full
/// description of `v` for the inner suite. Output: `u v w`.
#[derive(Debug, Clone)]
pub struct SpliceDecoder {
    inner: Suite,
}

impl SpliceDecoder {
    pub fn new(inner: Suite) -> Self {
        SpliceDecoder { inner }
    }

    pub fn compose(v_description: &Word, u_len: usize, uw: &Word) -> Word {
        let mut p = self_delim_unchecked(v_description.as_bytes()).into_bytes();
        p.extend(self_delim_unchecked(nat_to_word(&Natural::from(u_len)).as_bytes()).into_bytes());
        p.extend_from_slice(uw.as_bytes());
        Word::from_bytes(p)
    }
}

impl Decoder for SpliceDecoder {
    fn label(&self) -> String {
        "splice".into()
    }

    fn description(&self) -> String {
        format!("described middle spliced into a literal outside, inner suite {}", self.inner.version())
    }

    fn decode(&self, program: &[u8], _side: Option<&Natural>, max_len: usize) -> Option<Word> {
        let mut r = BitReader::new(program);
        let d = r.read_self_delim_slice().ok()?;
        let u_len = usize::try_from(r.read_nat_u64().ok()?).ok()?;
        let uw = r.rest();
        if u_len > uw.len() || uw.len() > max_len {
            return None;
        }
        let v = self.inner.run(d, None, max_len - uw.len())?;
        let mut out = uw[..u_len].to_vec();
        out.extend_from_slice(v.as_bytes());
        out.extend_from_slice(&uw[u_len..]);
        Some(Word::from_bytes(out))
    }

    fn encode(&self, _x: &Word, _side: Option<&Natural>) -> Vec<Word> {
        Vec::new()
    }
}
