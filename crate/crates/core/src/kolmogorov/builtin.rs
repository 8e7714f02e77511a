use num_traits::ToPrimitive;

use super::{ceil_log2, fixed_bits, side_len, Decoder};
use crate::codec::{nat_to_word, parse_standard_binary, self_delim_nat, self_delim_unchecked, standard_binary, word_to_nat, BitReader};
use crate::error::CodeField;
use crate::word::{Natural, Word};

/// Program `self_delim(x)`, output `x`.
#[derive(Debug, Clone, Copy)]
pub struct Literal;

impl Decoder for Literal {
    fn label(&self) -> String {
        "literal".into()
    }

    fn description(&self) -> String {
        "self-delimiting copy of the word".into()
    }

    fn decode(&self, program: &[u8], _side: Option<&Natural>, max_len: usize) -> Option<Word> {
        let mut r = BitReader::new(program);
        let x = r.read_self_delim_slice().ok()?;
        (r.is_done() && x.len() <= max_len).then(|| Word::from_bytes(x.to_vec()))
    }

    fn encode(&self, x: &Word, _side: Option<&Natural>) -> Vec<Word> {
        vec![self_delim_unchecked(x.as_bytes())]
    }
}

/// Program `x` itself; valid only when the side value equals `l(x)`.
#[derive(Debug, Clone, Copy)]
pub struct LiteralGivenLength;

impl Decoder for LiteralGivenLength {
    fn label(&self) -> String {
        "literal-given-length".into()
    }

    fn description(&self) -> String {
        "raw copy, length taken from the side value".into()
    }

    fn decode(&self, program: &[u8], side: Option<&Natural>, max_len: usize) -> Option<Word> {
        let n = side_len(side)?;
        (program.len() == n && n <= max_len).then(|| Word::from_bytes(program.to_vec()))
    }

    fn encode(&self, x: &Word, side: Option<&Natural>) -> Vec<Word> {
        match side_len(side) {
            Some(n) if n == x.len() => vec![x.clone()],
            _ => Vec::new(),
        }
    }
}

/// Reads an output length: from the side value when present, otherwise as a
/// self-delimited natural.
fn read_length(r: &mut BitReader<'_>, side: Option<&Natural>, max_len: usize) -> Option<usize> {
    let n = match side {
        Some(s) => s.to_usize()?,
        None => word_to_nat(&Word::from_bytes(r.read_self_delim_slice().ok()?.to_vec())).ok()?.to_usize()?,
    };
    (n <= max_len).then_some(n)
}

fn length_code(len: usize, side: Option<&Natural>) -> Option<Vec<u8>> {
    match side {
        None => Some(self_delim_nat(len as u64).into_bytes()),
        Some(s) if s.to_usize() == Some(len) => Some(Vec::new()),
        Some(_) => None,
    }
}

/// Program `self_delim(unit) ++ self_delim(len)`; output is the length-`len`
/// prefix of `unit unit unit …`. With a side value the length is omitted.
#[derive(Debug, Clone, Copy)]
pub struct RunLength;

pub(crate) fn minimal_period(x: &[u8]) -> usize {
    // Prefix function: the shortest period is n - border(n).
    let n = x.len();
    let mut pi = vec![0usize; n];
    for i in 1..n {
        let mut k = pi[i - 1];
        while k > 0 && x[i] != x[k] {
            k = pi[k - 1];
        }
        if x[i] == x[k] {
            k += 1;
        }
        pi[i] = k;
    }
    n - pi.last().copied().unwrap_or(0)
}

impl Decoder for RunLength {
    fn label(&self) -> String {
        "run-length".into()
    }

    fn description(&self) -> String {
        "repetition of a unit word up to a length".into()
    }

    fn decode(&self, program: &[u8], side: Option<&Natural>, max_len: usize) -> Option<Word> {
        let mut r = BitReader::new(program);
        let unit = r.read_self_delim_slice().ok()?;
        if unit.is_empty() {
            return None;
        }
        let n = read_length(&mut r, side, max_len)?;
        if !r.is_done() {
            return None;
        }
        Some(Word::from_bytes(unit.iter().copied().cycle().take(n).collect::<Vec<u8>>()))
    }

    fn encode(&self, x: &Word, side: Option<&Natural>) -> Vec<Word> {
        if x.is_empty() {
            return Vec::new();
        }
        let p = minimal_period(x.as_bytes());
        let Some(len) = length_code(x.len(), side) else {
            return Vec::new();
        };
        let mut prog = self_delim_unchecked(&x.as_bytes()[..p]).into_bytes();
        prog.extend(len);
        vec![Word::from_bytes(prog)]
    }
}

/// LZ78 parse. Program: output length (as in [`RunLength`]), then tokens
/// `index ++ bit` where the index into the phrase dictionary takes
/// `⌈log2 size⌉` bits. A final token may omit its bit when the phrase
/// completes the output.
#[derive(Debug, Clone, Copy)]
pub struct Dictionary;

impl Decoder for Dictionary {
    fn label(&self) -> String {
        "dictionary".into()
    }

    fn description(&self) -> String {
        "LZ78 phrase parse".into()
    }

    fn decode(&self, program: &[u8], side: Option<&Natural>, max_len: usize) -> Option<Word> {
        let mut r = BitReader::new(program);
        let n = read_length(&mut r, side, max_len)?;
        // Phrases as (start, len) into the output.
        let mut dict: Vec<(usize, usize)> = vec![(0, 0)];
        let mut out: Vec<u8> = Vec::with_capacity(n);
        while out.len() < n {
            let idx = r.read_fixed(ceil_log2(dict.len())).ok()? as usize;
            let &(start, len) = dict.get(idx)?;
            let pos = out.len();
            if pos + len > n {
                return None;
            }
            out.extend_from_within(start..start + len);
            if pos + len == n {
                break;
            }
            let bit = r.read_bits(1, CodeField::Payload).ok()?[0];
            out.push(bit);
            dict.push((pos, len + 1));
        }
        r.is_done().then(|| Word::from_bytes(out))
    }

    fn encode(&self, x: &Word, side: Option<&Natural>) -> Vec<Word> {
        let Some(mut prog) = length_code(x.len(), side) else {
            return Vec::new();
        };
        let bytes = x.as_bytes();
        // Trie over phrases: children[node][bit] -> node, node id = dict index.
        let mut children: Vec<[Option<usize>; 2]> = vec![[None, None]];
        let mut pos = 0;
        while pos < bytes.len() {
            let width = ceil_log2(children.len());
            let mut node = 0;
            while pos < bytes.len() {
                match children[node][usize::from(bytes[pos] == b'1')] {
                    Some(next) => {
                        node = next;
                        pos += 1;
                    }
                    None => break,
                }
            }
            prog.extend(fixed_bits(node as u64, width));
            if pos == bytes.len() {
                break;
            }
            let bit = bytes[pos];
            prog.push(bit);
            pos += 1;
            children.push([None, None]);
            let id = children.len() - 1;
            children[node][usize::from(bit == b'1')] = Some(id);
        }
        vec![Word::from_bytes(prog)]
    }
}

/// Program `self_delim(n)`, output the standard binary form of `n`.
#[derive(Debug, Clone, Copy)]
pub struct Rank;

impl Decoder for Rank {
    fn label(&self) -> String {
        "rank".into()
    }

    fn description(&self) -> String {
        "standard binary numeral of a self-delimited natural".into()
    }

    fn decode(&self, program: &[u8], _side: Option<&Natural>, max_len: usize) -> Option<Word> {
        let mut r = BitReader::new(program);
        let payload = r.read_self_delim_slice().ok()?;
        if !r.is_done() || payload.len() > max_len {
            return None;
        }
        let n = word_to_nat(&Word::from_bytes(payload.to_vec())).ok()?;
        let out = standard_binary(&n);
        (out.len() <= max_len).then_some(out)
    }

    fn encode(&self, x: &Word, _side: Option<&Natural>) -> Vec<Word> {
        match parse_standard_binary(x) {
            Some(n) => vec![self_delim_unchecked(nat_to_word(&n).as_bytes())],
            None => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn round_trip(d: &dyn Decoder, x: &Word, side: Option<&Natural>) {
        for p in d.encode(x, side) {
            assert_eq!(d.decode(p.as_bytes(), side, x.len()).as_ref(), Some(x), "{} on {x}", d.label());
        }
    }

    #[test]
    fn every_builtin_replays_exhaustively() {
        let ds: [&dyn Decoder; 5] = [&Literal, &LiteralGivenLength, &RunLength, &Dictionary, &Rank];
        for len in 0..=11 {
            for x in Alphabet::binary().words_of_length(len) {
                for d in ds {
                    round_trip(d, &x, None);
                    round_trip(d, &x, Some(&Natural::from(len)));
                }
            }
        }
    }

    #[test]
    fn periods() {
        assert_eq!(minimal_period(b"010101"), 2);
        assert_eq!(minimal_period(b"01001"), 3);
        assert_eq!(minimal_period(b"0000"), 1);
        assert_eq!(minimal_period(b"0110"), 3);
    }

    #[test]
    fn run_length_program() {
        let p = RunLength.encode(&Word::from("0101010"), None).remove(0);
        // self_delim("01") ++ self_delim(7)
        assert_eq!(p.to_string(), format!("{}{}", "10101", self_delim_nat(7)));
        assert_eq!(RunLength.decode(p.as_bytes(), None, 6), None);
    }

    #[test]
    fn dictionary_rejects_trailing_bits() {
        let x = Word::from("0010110");
        let mut p = Dictionary.encode(&x, None).remove(0).into_bytes();
        assert_eq!(Dictionary.decode(&p, None, 7).unwrap(), x);
        p.push(b'0');
        assert_eq!(Dictionary.decode(&p, None, 7), None);
    }

    #[test]
    fn rank_outputs_numerals() {
        let p = Rank.encode(&Word::from("101"), None).remove(0);
        assert_eq!(Rank.decode(p.as_bytes(), None, 10).unwrap().to_string(), "101");
        assert!(Rank.encode(&Word::from("0101"), None).is_empty());
    }
}
