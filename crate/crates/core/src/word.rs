//! Words over small finite alphabets.
//!
//! Symbols are single printable ASCII bytes. Binary words use `b'0'` and
//! `b'1'`, which is the representation every codec routine expects.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::WordError;

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;

/// A finite word. Ordered length-lexicographically by byte value.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_bytes(bytes: impl Into<Vec<u8>>) -> Self {
        Word(bytes.into())
    }

    /// Binary word from booleans, `true` mapping to `'1'`.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        Word(bits.into_iter().map(|b| if b { b'1' } else { b'0' }).collect())
    }

    pub fn repeat_symbol(symbol: u8, count: usize) -> Self {
        Word(vec![symbol; count])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }

    pub fn push(&mut self, symbol: u8) {
        self.0.push(symbol);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        Word(out)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// `self` repeated `times` times.
    pub fn power(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|&b| b == b'0' || b == b'1')
    }

    pub fn count(&self, symbol: u8) -> usize {
        self.0.iter().filter(|&&b| b == symbol).count()
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Bits as booleans. Non-binary symbols map to `false`.
    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().map(|&b| b == b'1')
    }

    /// Hex dump as `<bit count>:<hex>`, bits packed most significant first.
    pub fn to_hex_bits(&self) -> String {
        let mut hex = String::new();
        for chunk in self.0.chunks(8) {
            let mut byte = 0u8;
            for (i, &b) in chunk.iter().enumerate() {
                if b == b'1' {
                    byte |= 0x80 >> i;
                }
            }
            hex.push_str(&format!("{byte:02x}"));
        }
        format!("{}:{}", self.len(), hex)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.0).unwrap_or("<non-utf8>"))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        for (position, ch) in s.chars().enumerate() {
            if !ch.is_ascii_graphic() {
                return Err(WordError::BadSymbol { position, symbol: ch });
            }
        }
        Ok(Word(s.as_bytes().to_vec()))
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        s.parse().expect("word literal must be printable ASCII")
    }
}

/// An ordered finite alphabet. Symbol order defines length-lex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<u8>,
    index: [u8; 256],
}

const NO_INDEX: u8 = u8::MAX;

impl Alphabet {
    pub fn new(symbols: &[u8]) -> Result<Self, WordError> {
        if symbols.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        if symbols.len() >= NO_INDEX as usize {
            return Err(WordError::AlphabetTooLarge(symbols.len()));
        }
        let mut index = [NO_INDEX; 256];
        for (i, &s) in symbols.iter().enumerate() {
            if !s.is_ascii_graphic() {
                return Err(WordError::BadSymbol { position: i, symbol: s as char });
            }
            if index[s as usize] != NO_INDEX {
                return Err(WordError::DuplicateSymbol(s as char));
            }
            index[s as usize] = i as u8;
        }
        Ok(Alphabet { symbols: symbols.to_vec(), index })
    }

    pub fn binary() -> Self {
        Alphabet::new(b"01").expect("binary alphabet")
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> u8 {
        self.symbols[index]
    }

    pub fn index_of(&self, symbol: u8) -> Option<usize> {
        match self.index[symbol as usize] {
            NO_INDEX => None,
            i => Some(i as usize),
        }
    }

    pub fn contains(&self, symbol: u8) -> bool {
        self.index_of(symbol).is_some()
    }

    /// First position of `word` holding a symbol outside the alphabet.
    pub fn first_foreign(&self, word: &Word) -> Option<(usize, u8)> {
        word.as_bytes()
            .iter()
            .enumerate()
            .find(|(_, &s)| !self.contains(s))
            .map(|(i, &s)| (i, s))
    }

    pub fn is_binary(&self) -> bool {
        self.symbols == b"01"
    }

    /// Bits per symbol in the fixed-width binary image of a word.
    pub fn code_width(&self) -> usize {
        let k = self.size();
        if k <= 2 {
            1
        } else {
            (usize::BITS - (k - 1).leading_zeros()) as usize
        }
    }

    /// Fixed-width binary image of `word`: each symbol becomes its index in
    /// `code_width()` bits. Identity on binary words over the binary alphabet.
    pub fn binarize(&self, word: &Word) -> Option<Word> {
        if self.is_binary() {
            return if word.is_binary() { Some(word.clone()) } else { None };
        }
        let width = self.code_width();
        let mut out = Vec::with_capacity(word.len() * width);
        for &s in word.as_bytes() {
            let idx = self.index_of(s)?;
            for bit in (0..width).rev() {
                out.push(if (idx >> bit) & 1 == 1 { b'1' } else { b'0' });
            }
        }
        Some(Word(out))
    }

    /// The `i`-th word (0-based) in length-lex order over this alphabet.
    /// Over `{0,1}` this coincides with the number/string bijection.
    pub fn nth_word(&self, i: u64) -> Word {
        let k = self.size() as u64;
        let mut n = i;
        let mut rev = Vec::new();
        while n > 0 {
            n -= 1;
            rev.push(self.symbols[(n % k) as usize]);
            n /= k;
        }
        rev.reverse();
        Word(rev)
    }

    pub fn nth_word_big(&self, i: &Natural) -> Word {
        if let Some(small) = i.to_u64() {
            return self.nth_word(small);
        }
        let k = Natural::from(self.size());
        let mut n = i.clone();
        let mut rev = Vec::new();
        while !n.is_zero() {
            n -= 1u32;
            let digit = (&n % &k).to_usize().expect("digit fits");
            rev.push(self.symbols[digit]);
            n /= &k;
        }
        rev.reverse();
        Word(rev)
    }

    /// 0-based length-lex index of `word`. `None` if a symbol is foreign or
    /// the index overflows `u64`.
    pub fn index_of_word(&self, word: &Word) -> Option<u64> {
        let k = self.size() as u64;
        let mut n: u64 = 0;
        for &s in word.as_bytes() {
            let d = self.index_of(s)? as u64;
            n = n.checked_mul(k)?.checked_add(d + 1)?;
        }
        Some(n)
    }

    pub fn index_of_word_big(&self, word: &Word) -> Option<Natural> {
        let k = Natural::from(self.size());
        let mut n = Natural::zero();
        for &s in word.as_bytes() {
            let d = self.index_of(s)?;
            n = n * &k + Natural::from(d + 1);
        }
        Some(n)
    }

    /// All words of length exactly `len`, in lexicographic order.
    pub fn words_of_length(&self, len: usize) -> impl Iterator<Item = Word> + '_ {
        let k = self.size() as u64;
        let count = k.checked_pow(len as u32).expect("word count fits u64");
        let first = if len == 0 { 0 } else { (k.pow(len as u32) - 1) / (k - 1).max(1) };
        // For k == 1 the geometric sum degenerates to len.
        let first = if k == 1 { len as u64 } else { first };
        (0..count).map(move |j| self.nth_word(first + j))
    }

    /// Number of words of length at most `max_len`.
    pub fn count_up_to(&self, max_len: usize) -> u64 {
        let k = self.size() as u64;
        let mut total = 0u64;
        let mut layer = 1u64;
        for _ in 0..=max_len {
            total += layer;
            layer *= k;
        }
        total
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({})", String::from_utf8_lossy(&self.symbols))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.symbols.iter().map(|&s| (s as char).to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `⌊log2(n+1)⌋`, the length of the bijective binary word for `n`.
pub fn log_len(n: u64) -> usize {
    (u64::BITS - 1 - (n + 1).leading_zeros()) as usize
}

/// `⌊log2 n⌋` for `n ≥ 1`; zero for `n = 0`.
pub fn floor_log2(n: u64) -> usize {
    if n == 0 {
        0
    } else {
        (u64::BITS - 1 - n.leading_zeros()) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_lex_order() {
        let mut words: Vec<Word> = ["11", "0", "", "10", "1", "00"].iter().map(|&s| Word::from(s)).collect();
        words.sort();
        let shown: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["", "0", "1", "00", "10", "11"]);
    }

    #[test]
    fn nth_word_matches_index() {
        let a = Alphabet::new(b"01#").unwrap();
        for i in 0..500u64 {
            let w = a.nth_word(i);
            assert_eq!(a.index_of_word(&w), Some(i));
            assert_eq!(a.nth_word_big(&Natural::from(i)), w);
        }
        assert_eq!(a.nth_word(4).to_string(), "00");
    }

    #[test]
    fn words_of_length_enumerates_layer() {
        let a = Alphabet::binary();
        let layer: Vec<String> = a.words_of_length(2).map(|w| w.to_string()).collect();
        assert_eq!(layer, ["00", "01", "10", "11"]);
        assert_eq!(a.words_of_length(0).count(), 1);
        assert_eq!(a.count_up_to(3), 15);
    }

    #[test]
    fn binarize_widths() {
        let t = Alphabet::new(b"012").unwrap();
        assert_eq!(t.code_width(), 2);
        assert_eq!(t.binarize(&Word::from("21")).unwrap().to_string(), "1001");
        assert_eq!(Alphabet::binary().binarize(&Word::from("0110")).unwrap().to_string(), "0110");
        let ab = Alphabet::new(b"ab").unwrap();
        assert_eq!(ab.binarize(&Word::from("ba")).unwrap().to_string(), "10");
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert!(matches!(Alphabet::new(b"0101"), Err(WordError::DuplicateSymbol('0'))));
        assert!(matches!(Alphabet::new(b""), Err(WordError::EmptyAlphabet)));
    }

    #[test]
    fn logs() {
        assert_eq!(log_len(0), 0);
        assert_eq!(log_len(1), 1);
        assert_eq!(log_len(2), 1);
        assert_eq!(log_len(3), 2);
        assert_eq!(log_len(5), 2);
        assert_eq!(floor_log2(64), 6);
        assert_eq!(floor_log2(63), 5);
    }

    #[test]
    fn hex_dump() {
        assert_eq!(Word::from("1101001011").to_hex_bits(), "10:d2c0");
        assert_eq!(Word::new().to_hex_bits(), "0:");
    }
}
