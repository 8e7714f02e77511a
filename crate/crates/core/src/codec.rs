//! Number/string bijection, self-delimiting codes and pairing.
//!
//! Natural `n` corresponds to the word obtained by writing `n + 1` in binary
//! and dropping the leading `1`: `0 ↔ ε, 1 ↔ 0, 2 ↔ 1, 3 ↔ 00, …`. Numerically
//! `x_{k-1}…x_0` stands for `2^k - 1 + Σ x_i 2^i`.
//!
//! The self-delimiting code of `x` is `bar(L) x` where `L` is the word for
//! `l(x)` and `bar(z) = 1^{l(z)} 0 z`. Its length is `l(x) + 2⌊log(l(x)+1)⌋ + 1`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{CodeField, CodecError};
use crate::word::{log_len, Natural, Word};

fn check_binary(w: &Word) -> Result<(), CodecError> {
    match w.as_bytes().iter().position(|&b| b != b'0' && b != b'1') {
        Some(position) => Err(CodecError::NotBinary {
            position,
            symbol: w.as_bytes()[position] as char,
        }),
        None => Ok(()),
    }
}

/// Word corresponding to natural `n`.
pub fn nat_to_word(n: &Natural) -> Word {
    let shifted = n + 1u32;
    let bits = shifted.bits() as usize;
    let mut out = Vec::with_capacity(bits.saturating_sub(1));
    for i in (0..bits.saturating_sub(1)).rev() {
        out.push(if shifted.bit(i as u64) { b'1' } else { b'0' });
    }
    Word::from_bytes(out)
}

pub fn nat_to_word_u64(n: u64) -> Word {
    let shifted = n as u128 + 1;
    let bits = 128 - shifted.leading_zeros() as usize;
    let mut out = Vec::with_capacity(bits - 1);
    for i in (0..bits - 1).rev() {
        out.push(if (shifted >> i) & 1 == 1 { b'1' } else { b'0' });
    }
    Word::from_bytes(out)
}

/// Natural corresponding to binary word `w`.
pub fn word_to_nat(w: &Word) -> Result<Natural, CodecError> {
    check_binary(w)?;
    let mut value = Natural::one();
    for &b in w.as_bytes() {
        value <<= 1u32;
        if b == b'1' {
            value += 1u32;
        }
    }
    Ok(value - 1u32)
}

/// `u64` fast path; `None` on overflow or non-binary input.
pub fn word_to_nat_u64(w: &[u8]) -> Option<u64> {
    if w.len() >= 64 {
        return None;
    }
    let mut value: u64 = 1;
    for &b in w {
        value <<= 1;
        match b {
            b'1' => value |= 1,
            b'0' => {}
            _ => return None,
        }
    }
    Some(value - 1)
}

/// `bar(z) = 1^{l(z)} 0 z`.
pub fn bar(z: &Word) -> Word {
    let mut out = Vec::with_capacity(2 * z.len() + 1);
    out.extend(std::iter::repeat_n(b'1', z.len()));
    out.push(b'0');
    out.extend_from_slice(z.as_bytes());
    Word::from_bytes(out)
}

/// Self-delimiting code `x' = bar(l(x)) x`.
pub fn self_delim(x: &Word) -> Result<Word, CodecError> {
    check_binary(x)?;
    Ok(self_delim_unchecked(x.as_bytes()))
}

pub(crate) fn self_delim_unchecked(x: &[u8]) -> Word {
    let len_word = nat_to_word_u64(x.len() as u64);
    let mut out = Vec::with_capacity(x.len() + 2 * len_word.len() + 1);
    out.extend(std::iter::repeat_n(b'1', len_word.len()));
    out.push(b'0');
    out.extend_from_slice(len_word.as_bytes());
    out.extend_from_slice(x);
    Word::from_bytes(out)
}

/// Self-delimiting code of a natural: `self_delim(nat_to_word(n))`.
pub fn self_delim_nat(n: u64) -> Word {
    self_delim_unchecked(nat_to_word_u64(n).as_bytes())
}

pub fn self_delim_natural(n: &Natural) -> Word {
    self_delim_unchecked(nat_to_word(n).as_bytes())
}

/// Length of the self-delimiting code of a payload of `len` bits.
pub fn self_delim_len(len: usize) -> usize {
    len + 2 * log_len(len as u64) + 1
}

/// Length of `self_delim_nat(n)`.
pub fn self_delim_nat_len(n: u64) -> usize {
    self_delim_len(log_len(n))
}

/// Splits `s` into the payload of its leading self-delimiting code and the rest.
pub fn self_delim_decode(s: &Word) -> Result<(Word, Word), CodecError> {
    check_binary(s)?;
    let mut reader = BitReader::new(s.as_bytes());
    let x = reader.read_self_delim()?;
    Ok((x, Word::from_bytes(reader.rest().to_vec())))
}

/// Cursor over a binary slice used by codecs and decoders.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bits: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bits: &'a [u8]) -> Self {
        BitReader { bits, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn is_done(&self) -> bool {
        self.pos == self.bits.len()
    }

    pub fn rest(&self) -> &'a [u8] {
        &self.bits[self.pos..]
    }

    pub fn read_bits(&mut self, k: usize, field: CodeField) -> Result<&'a [u8], CodecError> {
        if self.remaining() < k {
            return Err(CodecError::Truncated { field, position: self.bits.len() });
        }
        let out = &self.bits[self.pos..self.pos + k];
        self.pos += k;
        Ok(out)
    }

    /// Reads `k` bits as an unsigned binary number, most significant first.
    pub fn read_fixed(&mut self, k: usize) -> Result<u64, CodecError> {
        let bits = self.read_bits(k, CodeField::Payload)?;
        let mut v = 0u64;
        for &b in bits {
            v = (v << 1) | u64::from(b == b'1');
        }
        Ok(v)
    }

    /// Reads one self-delimiting code and returns its payload bits.
    pub fn read_self_delim_slice(&mut self) -> Result<&'a [u8], CodecError> {
        let mut ones = 0usize;
        loop {
            match self.bits.get(self.pos) {
                None => {
                    return Err(CodecError::Truncated {
                        field: CodeField::Separator,
                        position: self.pos,
                    })
                }
                Some(b'1') => {
                    ones += 1;
                    self.pos += 1;
                }
                Some(_) => {
                    self.pos += 1;
                    break;
                }
            }
        }
        let len_bits = self.read_bits(ones, CodeField::LengthField)?;
        let len = word_to_nat_u64(len_bits)
            .and_then(|v| usize::try_from(v).ok())
            .ok_or_else(|| CodecError::LengthOverflow(String::from_utf8_lossy(len_bits).into_owned()))?;
        self.read_bits(len, CodeField::Payload)
    }

    pub fn read_self_delim(&mut self) -> Result<Word, CodecError> {
        self.read_self_delim_slice().map(|s| Word::from_bytes(s.to_vec()))
    }

    /// Reads a self-delimited natural.
    pub fn read_nat(&mut self) -> Result<Natural, CodecError> {
        let payload = self.read_self_delim_slice()?;
        word_to_nat(&Word::from_bytes(payload.to_vec()))
    }

    pub fn read_nat_u64(&mut self) -> Result<u64, CodecError> {
        let payload = self.read_self_delim_slice()?;
        word_to_nat_u64(payload)
            .ok_or_else(|| CodecError::LengthOverflow(String::from_utf8_lossy(payload).into_owned()))
    }
}

/// `⟨x, y⟩`: the natural whose word is `self_delim(x) ++ y`.
pub fn pair(x: &Word, y: &Word) -> Result<Natural, CodecError> {
    check_binary(y)?;
    let code = self_delim(x)?.concat(y);
    word_to_nat(&code)
}

/// Inverse of [`pair`].
pub fn unpair(n: &Natural) -> Result<(Word, Word), CodecError> {
    let w = nat_to_word(n);
    let mut reader = BitReader::new(w.as_bytes());
    let x = reader.read_self_delim().map_err(|e| CodecError::MalformedPair {
        position: reader.position(),
        source: Box::new(e),
    })?;
    Ok((x, Word::from_bytes(reader.rest().to_vec())))
}

/// `⟨x, y, z⟩ = ⟨x, ⟨y, z⟩⟩`.
pub fn triple(x: &Word, y: &Word, z: &Word) -> Result<Natural, CodecError> {
    let inner = pair(y, z)?;
    pair(x, &nat_to_word(&inner))
}

pub fn untriple(n: &Natural) -> Result<(Word, Word, Word), CodecError> {
    let (x, rest) = unpair(n)?;
    let inner = word_to_nat(&rest)?;
    let (y, z) = unpair(&inner)?;
    Ok((x, y, z))
}

/// Standard binary representation of `n` (`"0"` for zero).
pub fn standard_binary(n: &BigUint) -> Word {
    if n.is_zero() {
        return Word::from("0");
    }
    Word::from_bytes(n.to_str_radix(2).into_bytes())
}

/// Value of a standard binary representation; `None` for leading zeros.
pub fn parse_standard_binary(w: &Word) -> Option<BigUint> {
    let bytes = w.as_bytes();
    if bytes.is_empty() || !w.is_binary() || (bytes.len() > 1 && bytes[0] == b'0') {
        return None;
    }
    BigUint::parse_bytes(bytes, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn w(s: &str) -> Word {
        Word::from(s)
    }

    #[test]
    fn bijection_examples() {
        assert_eq!(nat_to_word(&Natural::from(0u32)), Word::new());
        assert_eq!(nat_to_word(&Natural::from(3u32)).to_string(), "00");
        assert_eq!(nat_to_word(&Natural::from(5u32)).to_string(), "10");
        assert_eq!(word_to_nat(&w("10")).unwrap(), Natural::from(5u32));
        assert_eq!(word_to_nat(&w("00")).unwrap(), Natural::from(3u32));
    }

    #[test]
    fn numeric_value_formula() {
        // 2^k - 1 + Σ x_i 2^i, evaluated independently
        for n in 0..2000u64 {
            let x = nat_to_word_u64(n);
            let k = x.len() as u32;
            let mut sum = 0u64;
            for (i, &b) in x.as_bytes().iter().rev().enumerate() {
                if b == b'1' {
                    sum += 1 << i;
                }
            }
            assert_eq!(2u64.pow(k) - 1 + sum, n);
            assert_eq!(x.len(), log_len(n));
        }
    }

    #[test]
    fn self_delim_examples() {
        assert_eq!(self_delim(&w("01011")).unwrap().to_string(), "1101001011");
        assert_eq!(self_delim(&Word::new()).unwrap().to_string(), "0");
        assert_eq!(self_delim(&w("1")).unwrap().to_string(), "1001");
    }

    #[test]
    fn self_delim_decode_splits_rest() {
        let (x, rest) = self_delim_decode(&w("1101001011" ).concat(&w("110"))).unwrap();
        assert_eq!(x.to_string(), "01011");
        assert_eq!(rest.to_string(), "110");
    }

    #[test]
    fn truncation_names_field() {
        let err = self_delim_decode(&w("111")).unwrap_err();
        assert_eq!(err, CodecError::Truncated { field: CodeField::Separator, position: 3 });
        let err = self_delim_decode(&w("110")).unwrap_err();
        assert!(matches!(err, CodecError::Truncated { field: CodeField::LengthField, .. }));
        let err = self_delim_decode(&w("11010010")).unwrap_err();
        assert!(matches!(err, CodecError::Truncated { field: CodeField::Payload, .. }));
        assert!(err.to_string().contains("payload"));
    }

    #[test]
    fn pair_examples() {
        assert_eq!(pair(&Word::new(), &Word::new()).unwrap(), Natural::from(1u32));
        assert_eq!(pair(&w("1"), &w("0")).unwrap(), Natural::from(49u32));
        let (x, y) = unpair(&Natural::from(49u32)).unwrap();
        assert_eq!((x.to_string(), y.to_string()), ("1".into(), "0".into()));
    }

    #[test]
    fn unpair_rejects_outside_image() {
        // 0 ↔ ε has no separator at all.
        let err = unpair(&Natural::from(0u32)).unwrap_err();
        assert!(matches!(err, CodecError::MalformedPair { position: 0, .. }));
        // 2 ↔ "1": unary run never terminates.
        assert!(unpair(&Natural::from(2u32)).is_err());
    }

    #[test]
    fn triple_nests_right() {
        let (x, y, z) = (w("01"), w(""), w("111"));
        let t = triple(&x, &y, &z).unwrap();
        let inner = pair(&y, &z).unwrap();
        assert_eq!(t, pair(&x, &nat_to_word(&inner)).unwrap());
        assert_eq!(untriple(&t).unwrap(), (x, y, z));
    }

    #[test]
    fn round_trip_small_range() {
        for n in 0..(1u64 << 20) {
            let word = nat_to_word_u64(n);
            assert_eq!(word_to_nat_u64(word.as_bytes()), Some(n));
        }
        let binary = Alphabet::binary();
        for len in 0..=16 {
            for x in binary.words_of_length(len) {
                let n = word_to_nat(&x).unwrap();
                assert_eq!(nat_to_word(&n), x);
            }
        }
    }

    #[test]
    fn order_isomorphism() {
        let mut prev = nat_to_word_u64(0);
        for n in 1..5000u64 {
            let cur = nat_to_word_u64(n);
            assert!(prev < cur, "{prev:?} !< {cur:?}");
            prev = cur;
        }
    }

    #[test]
    fn prefix_free_exhaustive() {
        let binary = Alphabet::binary();
        let mut codes: Vec<Word> = (0..=10)
            .flat_map(|len| binary.words_of_length(len).collect::<Vec<_>>())
            .map(|x| self_delim(&x).unwrap())
            .collect();
        codes.sort_by(|a, b| a.as_bytes().cmp(b.as_bytes()));
        // In plain lexicographic order a prefix sorts immediately before some extension of it.
        for pair in codes.windows(2) {
            assert!(!pair[1].as_bytes().starts_with(pair[0].as_bytes()), "{:?} prefixes {:?}", pair[0], pair[1]);
        }
    }

    #[test]
    fn length_law() {
        let binary = Alphabet::binary();
        for len in 0..=12 {
            for x in binary.words_of_length(len) {
                let code = self_delim(&x).unwrap();
                assert_eq!(code.len(), len + 2 * log_len(len as u64) + 1);
                assert_eq!(code.len(), self_delim_len(len));
            }
        }
    }

    #[test]
    fn standard_binary_round_trip() {
        for n in 0..300u32 {
            let b = standard_binary(&BigUint::from(n));
            assert_eq!(parse_standard_binary(&b), Some(BigUint::from(n)));
        }
        assert_eq!(parse_standard_binary(&w("01")), None);
    }

    #[test]
    fn non_binary_rejected() {
        assert!(matches!(self_delim(&w("012")), Err(CodecError::NotBinary { position: 2, .. })));
    }
}
