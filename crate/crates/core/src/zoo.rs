//! Example languages with direct membership procedures, enumerators of Σ*,
//! and residual search.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::automata::{machines, Dfa};
use crate::codec::standard_binary;
use crate::error::ZooError;
use crate::word::{Alphabet, Natural, Word};

/// Sieve bound for primality and for the prime enumerator.
pub const SIEVE_BOUND: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Regular,
    /// Shown non-regular; no finer class claimed.
    Nonregular,
    CflNotDcfl,
    CsNotCfl,
    Recursive,
    ReBounded,
}

impl Class {
    pub fn name(self) -> &'static str {
        match self {
            Class::Regular => "regular",
            Class::Nonregular => "nonregular",
            Class::CflNotDcfl => "cfl-not-dcfl",
            Class::CsNotCfl => "cs-not-cfl",
            Class::Recursive => "recursive",
            Class::ReBounded => "re-bounded",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

type Member = fn(&[u8]) -> bool;

struct Entry {
    name: &'static str,
    symbols: &'static [u8],
    class: Class,
    description: &'static str,
    member: Member,
    reference: Option<fn() -> Dfa>,
}

const ENTRIES: &[Entry] = &[
    Entry { name: "eq01", symbols: b"01", class: Class::Nonregular, description: "0^k 1^k, k >= 1", member: eq01, reference: None },
    Entry { name: "unary-prime", symbols: b"01", class: Class::Nonregular, description: "1^p, p prime", member: unary_prime, reference: None },
    Entry { name: "binary-prime", symbols: b"01", class: Class::Nonregular, description: "standard binary form of a prime", member: binary_prime, reference: None },
    Entry { name: "xxrw", symbols: b"01", class: Class::Nonregular, description: "x x^R w, x and w nonempty", member: xxrw, reference: None },
    Entry { name: "neq01", symbols: b"01", class: Class::Nonregular, description: "0^i 1^j, i != j", member: neq01, reference: None },
    Entry { name: "gcd1", symbols: b"01", class: Class::Nonregular, description: "0^i 1^j, gcd(i,j) = 1", member: gcd1, reference: None },
    Entry { name: "sigma-star", symbols: b"01", class: Class::Regular, description: "all binary words", member: |_| true, reference: Some(machines::sigma_star) },
    Entry { name: "odd-ones", symbols: b"01", class: Class::Regular, description: "odd number of 1s", member: odd_ones, reference: Some(machines::odd_ones) },
    Entry { name: "palindrome", symbols: b"01", class: Class::CflNotDcfl, description: "x = x^R", member: palindrome, reference: None },
    Entry { name: "xxr", symbols: b"01", class: Class::CflNotDcfl, description: "x x^R", member: xxr, reference: None },
    Entry { name: "xx", symbols: b"01", class: Class::CsNotCfl, description: "x x", member: xx, reference: None },
    Entry { name: "eq-or-double", symbols: b"01", class: Class::CflNotDcfl, description: "0^n 1^m, m = n or m = 2n", member: eq_or_double, reference: None },
    Entry { name: "halfmark", symbols: b"01", class: Class::CflNotDcfl, description: "x y, l(x) = l(y), y contains a 1", member: halfmark, reference: None },
    Entry { name: "ijk", symbols: b"012", class: Class::CflNotDcfl, description: "0^i 1^j 2^k, i = j or j = k", member: ijk, reference: None },
    Entry { name: "pattern-match", symbols: b"01#", class: Class::CflNotDcfl, description: "x # y x^R z over binary x, y, z", member: pattern_match, reference: None },
];

/// Membership oracle for one zoo language.
#[derive(Clone)]
pub struct Language {
    name: &'static str,
    alphabet: Alphabet,
    class: Class,
    description: &'static str,
    member: Member,
    reference: Option<fn() -> Dfa>,
}

impl fmt::Debug for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Language({})", self.name)
    }
}

impl Language {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn class(&self) -> Class {
        self.class
    }

    pub fn description(&self) -> &'static str {
        self.description
    }

    /// Total membership: words with foreign symbols are non-members.
    pub fn contains(&self, w: &Word) -> bool {
        self.contains_bytes(w.as_bytes())
    }

    pub fn contains_bytes(&self, w: &[u8]) -> bool {
        w.iter().all(|&s| self.alphabet.contains(s)) && (self.member)(w)
    }

    /// Membership that rejects words outside Σ* with an error.
    pub fn member(&self, w: &Word) -> Result<bool, ZooError> {
        if let Some((position, s)) = self.alphabet.first_foreign(w) {
            return Err(ZooError::ForeignSymbol { language: self.name.to_string(), position, symbol: s as char });
        }
        Ok((self.member)(w.as_bytes()))
    }

    /// Reference automaton for the regular entries.
    pub fn reference_dfa(&self) -> Option<Dfa> {
        self.reference.map(|f| f())
    }
}

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

pub fn oracle(name: &str) -> Result<Language, ZooError> {
    let e = ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| ZooError::UnknownLanguage { name: name.to_string(), available: names() })?;
    Ok(Language {
        name: e.name,
        alphabet: Alphabet::new(e.symbols).expect("zoo alphabets are valid"),
        class: e.class,
        description: e.description,
        member: e.member,
        reference: e.reference,
    })
}

pub fn all() -> Vec<Language> {
    names().into_iter().map(|n| oracle(n).expect("listed")).collect()
}

/// Splits `0^i 1^j`; `None` for any other shape.
fn zeros_then_ones(w: &[u8]) -> Option<(usize, usize)> {
    let i = w.iter().take_while(|&&s| s == b'0').count();
    let rest = &w[i..];
    rest.iter().all(|&s| s == b'1').then_some((i, rest.len()))
}

fn eq01(w: &[u8]) -> bool {
    matches!(zeros_then_ones(w), Some((i, j)) if i == j && i >= 1)
}

fn neq01(w: &[u8]) -> bool {
    matches!(zeros_then_ones(w), Some((i, j)) if i != j)
}

fn gcd1(w: &[u8]) -> bool {
    matches!(zeros_then_ones(w), Some((i, j)) if i.gcd(&j) == 1)
}

fn eq_or_double(w: &[u8]) -> bool {
    matches!(zeros_then_ones(w), Some((n, m)) if m == n || m == 2 * n)
}

fn unary_prime(w: &[u8]) -> bool {
    w.iter().all(|&s| s == b'1') && is_prime_u64(w.len() as u64)
}

fn binary_prime(w: &[u8]) -> bool {
    if w.first() != Some(&b'1') {
        return false;
    }
    if w.len() <= 64 {
        let v = w.iter().fold(0u64, |acc, &s| (acc << 1) | u64::from(s == b'1'));
        is_prime_u64(v)
    } else {
        is_prime_big(&BigUint::parse_bytes(w, 2).expect("binary word"))
    }
}

fn odd_ones(w: &[u8]) -> bool {
    w.iter().filter(|&&s| s == b'1').count() % 2 == 1
}

fn palindrome(w: &[u8]) -> bool {
    w.iter().eq(w.iter().rev())
}

fn xxr(w: &[u8]) -> bool {
    w.len().is_multiple_of(2) && palindrome(w)
}

fn xx(w: &[u8]) -> bool {
    let h = w.len() / 2;
    w.len().is_multiple_of(2) && w[..h] == w[h..]
}

fn xxrw(w: &[u8]) -> bool {
    (1..).map(|i| 2 * i).take_while(|&p| p < w.len()).any(|p| palindrome(&w[..p]))
}

fn halfmark(w: &[u8]) -> bool {
    w.len().is_multiple_of(2) && w[w.len() / 2..].contains(&b'1')
}

fn ijk(w: &[u8]) -> bool {
    let i = w.iter().take_while(|&&s| s == b'0').count();
    let j = w[i..].iter().take_while(|&&s| s == b'1').count();
    let rest = &w[i + j..];
    rest.iter().all(|&s| s == b'2') && (i == j || j == rest.len())
}

fn pattern_match(w: &[u8]) -> bool {
    let mut parts = w.split(|&s| s == b'#');
    let (Some(left), Some(right), None) = (parts.next(), parts.next(), parts.next()) else {
        return false;
    };
    let rev: Vec<u8> = left.iter().rev().copied().collect();
    rev.is_empty() || right.windows(rev.len()).any(|win| win == rev.as_slice())
}

struct Sieve {
    composite: Vec<bool>,
    primes: Vec<u64>,
}

fn sieve() -> &'static Sieve {
    static SIEVE: OnceLock<Sieve> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let n = SIEVE_BOUND as usize;
        let mut composite = vec![false; n + 1];
        composite[0] = true;
        composite[1] = true;
        let mut i = 2;
        while i * i <= n {
            if !composite[i] {
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
            i += 1;
        }
        let primes = (0..=n).filter(|&k| !composite[k]).map(|k| k as u64).collect();
        Sieve { composite, primes }
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Sieve lookup, then Miller–Rabin with the base set that is exact on u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n <= SIEVE_BOUND {
        return !sieve().composite[n as usize];
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Fixed-base Miller–Rabin for values beyond u64.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'bases: for &a in sieve().primes.iter().take(24) {
        let a = BigUint::from(a);
        if (&a % n).is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u8), n);
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// `p_i`, 1-based, from the sieve.
pub fn nth_prime(i: u64) -> Result<u64, ZooError> {
    if i == 0 {
        return Err(ZooError::ZeroIndex);
    }
    let primes = &sieve().primes;
    primes
        .get((i - 1) as usize)
        .copied()
        .ok_or(ZooError::OutOfSieve { index: i, available: primes.len() })
}

/// Effective order of (a subset of) Σ*, 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumerator {
    LengthLex(Alphabet),
    /// Standard binary forms of the primes in increasing order.
    Prime,
}

impl Enumerator {
    pub fn parse(name: &str, alphabet: &Alphabet) -> Result<Self, ZooError> {
        match name {
            "length-lex" => Ok(Enumerator::LengthLex(alphabet.clone())),
            "prime" => Ok(Enumerator::Prime),
            other => Err(ZooError::UnknownEnumerator(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Enumerator::LengthLex(_) => "length-lex",
            Enumerator::Prime => "prime",
        }
    }

    pub fn enumerate(&self, i: u64) -> Result<Word, ZooError> {
        if i == 0 {
            return Err(ZooError::ZeroIndex);
        }
        match self {
            Enumerator::LengthLex(a) => Ok(a.nth_word(i - 1)),
            Enumerator::Prime => Ok(standard_binary(&Natural::from(nth_prime(i)?))),
        }
    }

    pub fn enumerate_big(&self, i: &Natural) -> Result<Word, ZooError> {
        if i.is_zero() {
            return Err(ZooError::ZeroIndex);
        }
        match self {
            Enumerator::LengthLex(a) => Ok(a.nth_word_big(&(i - 1u32))),
            Enumerator::Prime => {
                let small = i.to_u64().ok_or(ZooError::OutOfSieve { index: u64::MAX, available: sieve().primes.len() })?;
                self.enumerate(small)
            }
        }
    }
}

/// Parameters of a residual search.
#[derive(Debug, Clone)]
pub struct ResidualQuery<'a> {
    pub language: &'a Language,
    pub x: &'a Word,
    pub enumerator: &'a Enumerator,
    pub complement: bool,
    pub include_empty: bool,
    /// Largest enumeration index examined.
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualHit {
    pub word: Word,
    /// Enumeration index of `word`.
    pub index: u64,
}

impl ResidualQuery<'_> {
    /// The `n`-th enumerated `y` with `xy ∈ L` (or `∉ L` under complement).
    pub fn nth(&self, n: u64) -> Result<ResidualHit, ZooError> {
        if n == 0 {
            return Err(ZooError::ZeroRank);
        }
        let mut found = 0u64;
        let mut xy = self.x.clone();
        let base = xy.len();
        for i in 1..=self.budget {
            let y = match self.enumerator.enumerate(i) {
                Ok(y) => y,
                Err(ZooError::OutOfSieve { .. }) => break,
                Err(e) => return Err(e),
            };
            if y.is_empty() && !self.include_empty {
                continue;
            }
            let mut bytes = std::mem::take(&mut xy).into_bytes();
            bytes.truncate(base);
            bytes.extend_from_slice(y.as_bytes());
            xy = Word::from_bytes(bytes);
            if self.language.contains(&xy) != self.complement {
                found += 1;
                if found == n {
                    return Ok(ResidualHit { word: y, index: i });
                }
            }
        }
        Err(ZooError::BudgetExhausted { budget: self.budget, found, wanted: n })
    }
}

/// Convenience wrapper with the length-lex order over the language's alphabet.
pub fn nth_in_residual(
    language: &Language,
    x: &Word,
    n: u64,
    complement: bool,
    include_empty: bool,
    budget: u64,
) -> Result<ResidualHit, ZooError> {
    let e = Enumerator::LengthLex(language.alphabet().clone());
    ResidualQuery { language, x, enumerator: &e, complement, include_empty, budget }.nth(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from(s)
    }

    fn lang(name: &str) -> Language {
        oracle(name).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(lang("eq01").contains(&w("0011")));
        assert!(!lang("eq01").contains(&w("010")));
        assert!(!lang("eq01").contains(&Word::new()));
        assert!(lang("unary-prime").contains(&w("11111")));
        assert!(!lang("unary-prime").contains(&w("1111")));
        assert!(!lang("gcd1").contains(&w("0011")));
        assert!(lang("gcd1").contains(&w("0111")));
        // gcd(0, j) = j
        assert!(lang("gcd1").contains(&w("1")));
        assert!(!lang("gcd1").contains(&w("11")));
        assert!(lang("binary-prime").contains(&w("101")));
        assert!(!lang("binary-prime").contains(&w("0101")));
        assert!(lang("xxrw").contains(&w("01101")));
        assert!(!lang("xxrw").contains(&w("0110")));
        assert!(!lang("xxrw").contains(&w("011")));
        assert!(!lang("xxrw").contains(&w("00")));
        assert!(lang("halfmark").contains(&w("0001")));
        assert!(!lang("halfmark").contains(&w("1000")));
        assert!(lang("ijk").contains(&w("0122")));
        assert!(lang("ijk").contains(&w("00112")));
        assert!(!lang("ijk").contains(&w("011222")));
        assert!(lang("pattern-match").contains(&w("110#0011")));
        assert!(!lang("pattern-match").contains(&w("110#0101")));
        assert!(!lang("pattern-match").contains(&w("0#0#0")));
        assert!(lang("eq-or-double").contains(&w("011")));
    }

    #[test]
    fn unknown_name_lists_available() {
        let err = oracle("nope").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("eq01") && msg.contains("pattern-match"), "{msg}");
    }

    #[test]
    fn foreign_symbols() {
        assert!(!lang("eq01").contains(&w("0a")));
        assert!(matches!(lang("eq01").member(&w("0a")), Err(ZooError::ForeignSymbol { position: 1, .. })));
    }

    #[test]
    fn enumerators() {
        let ll = Enumerator::LengthLex(Alphabet::binary());
        assert_eq!(ll.enumerate(1).unwrap(), Word::new());
        assert_eq!(ll.enumerate(4).unwrap(), w("00"));
        assert_eq!(Enumerator::Prime.enumerate(3).unwrap(), w("101"));
        assert!(matches!(ll.enumerate(0), Err(ZooError::ZeroIndex)));
        let count = sieve().primes.len() as u64;
        assert!(matches!(Enumerator::Prime.enumerate(count + 1), Err(ZooError::OutOfSieve { .. })));
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        fn trial(n: u64) -> bool {
            n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
        }
        for n in (SIEVE_BOUND - 500..SIEVE_BOUND + 3000).chain(0..200) {
            assert_eq!(is_prime_u64(n), trial(n), "{n}");
        }
        // Mersenne prime 2^61 - 1 and a neighbour.
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64((1 << 61) + 1));
        let m89 = (BigUint::one() << 89) - 1u32;
        assert!(is_prime_big(&m89));
        assert!(!is_prime_big(&(&m89 + 2u32)));
    }

    #[test]
    fn residual_examples() {
        let hit = nth_in_residual(&lang("eq01"), &Word::new(), 1, false, false, 1000).unwrap();
        assert_eq!(hit.word, w("01"));
        let hit = nth_in_residual(&lang("unary-prime"), &w("111"), 1, false, false, 1000).unwrap();
        assert_eq!(hit.word, w("11"));
        let hit = nth_in_residual(&lang("unary-prime"), &w("111"), 1, false, true, 1000).unwrap();
        assert_eq!(hit.word, Word::new());
        let err = nth_in_residual(&lang("eq01"), &w("10"), 1, false, false, 100).unwrap_err();
        assert_eq!(err, ZooError::BudgetExhausted { budget: 100, found: 0, wanted: 1 });
    }

    #[test]
    fn reference_dfas_agree_to_length_12() {
        for l in all().into_iter().filter(|l| l.class() == Class::Regular) {
            let d = l.reference_dfa().expect("regular entries ship a machine");
            for len in 0..=12 {
                for x in l.alphabet().words_of_length(len) {
                    assert_eq!(d.accepts(&x).unwrap(), l.contains(&x), "{} {x}", l.name());
                }
            }
        }
    }
}
