//! Characteristic sequences of residual languages and the tables built from
//! them.
//!
//! `χ_i = 1` iff `x y_i ∈ L` where `y_1 = ε, y_2, …` is the length-lex order
//! of Σ*. Two words with equal rows are indistinguishable by the first `n`
//! suffixes, so the number of distinct rows bounds the Myhill–Nerode index
//! from below.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::automata::Dfa;
use crate::error::CharSeqError;
use crate::kolmogorov::{ChiDecoder, Suite};
use crate::word::{Alphabet, Natural, Word};
use crate::zoo::Language;

pub const DEFAULT_CELL_BUDGET: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSeq {
    pub language: String,
    pub x: Word,
    /// `χ_1 … χ_n` as `0`/`1` symbols.
    pub bits: Word,
}

fn columns(lang: &Language, n: usize) -> Vec<Word> {
    (0..n as u64).map(|i| lang.alphabet().nth_word(i)).collect()
}

fn row_of(lang: &Language, x: &Word, cols: &[Word]) -> Word {
    let mut buf = x.as_bytes().to_vec();
    let base = buf.len();
    let bits = cols
        .iter()
        .map(|y| {
            buf.truncate(base);
            buf.extend_from_slice(y.as_bytes());
            if lang.contains_bytes(&buf) {
                b'1'
            } else {
                b'0'
            }
        })
        .collect::<Vec<u8>>();
    Word::from_bytes(bits)
}

pub fn chi_prefix(lang: &Language, x: &Word, n: usize) -> Result<CharSeq, CharSeqError> {
    if n == 0 {
        return Err(CharSeqError::ZeroLength);
    }
    let cols = columns(lang, n);
    Ok(CharSeq { language: lang.name().to_string(), x: x.clone(), bits: row_of(lang, x, &cols) })
}

/// Rows for every `x` with `l(x) ≤ p`, labels in length-lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualTable {
    pub language: String,
    pub p: usize,
    pub n: usize,
    pub alphabet: Alphabet,
    pub labels: Vec<Word>,
    pub rows: Vec<Word>,
}

impl ResidualTable {
    /// Distinct rows among labels of length at most `p`.
    pub fn distinct_upto(&self, p: usize) -> usize {
        let mut seen = std::collections::HashSet::new();
        for (label, row) in self.labels.iter().zip(&self.rows) {
            if label.len() > p {
                break;
            }
            seen.insert(row);
        }
        seen.len()
    }

    pub fn distinct_row_count(&self) -> usize {
        self.distinct_upto(self.p)
    }

    /// First label of each distinct row, in label order.
    pub fn representatives(&self) -> Vec<(&Word, &Word)> {
        let mut seen = std::collections::HashSet::new();
        self.labels.iter().zip(&self.rows).filter(|(_, r)| seen.insert(*r)).collect()
    }

    pub fn row(&self, x: &Word) -> Option<&Word> {
        let i = usize::try_from(self.alphabet.index_of_word(x)?).ok()?;
        self.rows.get(i)
    }
}

pub fn residual_table(lang: &Language, p: usize, n: usize, cell_budget: u64) -> Result<ResidualTable, CharSeqError> {
    if n == 0 {
        return Err(CharSeqError::ZeroLength);
    }
    let k = lang.alphabet().size() as u64;
    let row_count = (0..=p as u32).try_fold(0u64, |acc, l| k.checked_pow(l).and_then(|c| acc.checked_add(c)));
    let over = row_count.and_then(|r| r.checked_mul(n as u64)).is_none_or(|cells| cells > cell_budget);
    if over {
        return Err(CharSeqError::Budget { rows: row_count.unwrap_or(u64::MAX), columns: n, budget: cell_budget });
    }
    let labels: Vec<Word> = (0..row_count.unwrap_or(0)).map(|i| lang.alphabet().nth_word(i)).collect();
    let cols = columns(lang, n);
    let rows = labels.par_iter().map(|x| row_of(lang, x, &cols)).collect();
    Ok(ResidualTable { language: lang.name().to_string(), p, n, alphabet: lang.alphabet().clone(), labels, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthesisFailure {
    /// An extension row matches no row of a shorter word.
    NotClosed,
    /// Two equal rows have different extensions.
    Inconsistent,
    /// The machine disagrees with the oracle on a short word.
    Disagrees,
}

impl fmt::Display for SynthesisFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SynthesisFailure::NotClosed => "table not closed",
            SynthesisFailure::Inconsistent => "table not consistent",
            SynthesisFailure::Disagrees => "machine disagrees with oracle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Synthesis {
    Dfa(Dfa),
    Inconclusive { failure: SynthesisFailure, row: Word },
}

/// States are the distinct rows of words of length `≤ p`; transitions follow
/// one-symbol extensions, which must land on existing rows (closed) and must
/// not depend on the representative (consistent).
pub fn synthesize_dfa(lang: &Language, p: usize, n: usize, cell_budget: u64) -> Result<Synthesis, CharSeqError> {
    let table = residual_table(lang, p + 1, n, cell_budget)?;
    let alphabet = lang.alphabet();
    let k = alphabet.size();
    let mut state_of: HashMap<&Word, usize> = HashMap::new();
    let mut reps: Vec<&Word> = Vec::new();
    for (label, row) in table.labels.iter().zip(&table.rows) {
        if label.len() > p {
            break;
        }
        state_of.entry(row).or_insert_with(|| {
            reps.push(label);
            reps.len() - 1
        });
    }
    let row = |x: &Word| table.row(x).expect("extension inside table");
    let extend = |x: &Word, a: usize| {
        let mut ext = x.clone();
        ext.push(alphabet.symbol(a));
        ext
    };
    let short = || table.labels.iter().zip(&table.rows).take_while(|(label, _)| label.len() <= p);
    // Closedness over the whole table first, then consistency.
    for (label, _) in short() {
        for a in 0..k {
            let ext = extend(label, a);
            if !state_of.contains_key(row(&ext)) {
                return Ok(Synthesis::Inconclusive { failure: SynthesisFailure::NotClosed, row: ext });
            }
        }
    }
    let mut delta: Vec<Option<usize>> = vec![None; reps.len() * k];
    for (label, r) in short() {
        let s = state_of[r];
        for a in 0..k {
            let t = state_of[row(&extend(label, a))];
            match delta[s * k + a] {
                None => delta[s * k + a] = Some(t),
                Some(prev) if prev != t => {
                    return Ok(Synthesis::Inconclusive { failure: SynthesisFailure::Inconsistent, row: label.clone() })
                }
                Some(_) => {}
            }
        }
    }
    let delta: Vec<usize> = delta.into_iter().map(|t| t.expect("every state has a representative")).collect();
    let accepting: Vec<usize> = reps.iter().enumerate().filter(|(_, r)| row(r).as_bytes()[0] == b'1').map(|(i, _)| i).collect();
    let start = state_of[row(&Word::new())];
    let dfa = Dfa::new(alphabet.clone(), reps.len(), delta, start, &accepting).expect("synthesized machine is valid");
    for x in &table.labels {
        if dfa.accepts(x).expect("alphabet matches") != lang.contains(x) {
            return Ok(Synthesis::Inconclusive { failure: SynthesisFailure::Disagrees, row: x.clone() });
        }
    }
    Ok(Synthesis::Dfa(dfa))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Regular { states: usize },
    Nonregular,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Regular { states } => {
                write!(f, "regular-evidence (hypothesis: {states} state{})", if *states == 1 { "" } else { "s" })
            }
            Verdict::Nonregular => f.write_str("nonregular-evidence"),
            Verdict::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerdictOptions {
    /// Strictly increasing counts over this many consecutive `P` values
    /// signal non-regularity.
    pub growth_window: usize,
    /// Equal counts over this many final `P` values count as stable.
    pub stable_window: usize,
    pub cell_budget: u64,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions { growth_window: 3, stable_window: 3, cell_budget: DEFAULT_CELL_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRow {
    pub p: usize,
    pub rows: usize,
    pub distinct: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowComplexity {
    pub label: Word,
    pub bits: Word,
    pub c: usize,
    pub c_given_n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictReport {
    pub language: String,
    pub p_max: usize,
    pub n: usize,
    pub counts: Vec<CountRow>,
    pub verdict: Verdict,
    pub synthesis: Synthesis,
    /// Per distinct row at `p_max`, in label order.
    pub rows: Vec<RowComplexity>,
    pub max_c: usize,
    pub max_c_given_n: usize,
    pub suite_version: String,
}

fn strictly_grows(counts: &[usize], window: usize) -> bool {
    window >= 2 && counts.windows(window).any(|w| w.windows(2).all(|p| p[0] < p[1]))
}

fn stable_tail(counts: &[usize], window: usize) -> bool {
    counts.len() >= window && counts[counts.len() - window..].windows(2).all(|p| p[0] == p[1])
}

/// Heuristic regularity verdict from row counts for `P = 1..p_max` and
/// synthesis at `p_max`. Growth is checked before stability: a finite
/// column window makes every table look stable eventually.
pub fn regularity_verdict(
    lang: &Language,
    p_max: usize,
    n: usize,
    suite: &Suite,
    opts: &VerdictOptions,
) -> Result<VerdictReport, CharSeqError> {
    if p_max == 0 {
        return Err(CharSeqError::ZeroDepth);
    }
    let table = residual_table(lang, p_max, n, opts.cell_budget)?;
    let k = lang.alphabet().size();
    let counts: Vec<CountRow> = (1..=p_max)
        .map(|p| CountRow {
            p,
            rows: (0..=p).map(|l| k.pow(l as u32)).sum(),
            distinct: table.distinct_upto(p),
        })
        .collect();
    let distinct: Vec<usize> = counts.iter().map(|c| c.distinct).collect();
    let synthesis = synthesize_dfa(lang, p_max, n, opts.cell_budget)?;
    let verdict = if strictly_grows(&distinct, opts.growth_window) {
        Verdict::Nonregular
    } else {
        match &synthesis {
            Synthesis::Dfa(d) if stable_tail(&distinct, opts.stable_window) => Verdict::Regular { states: d.state_count() },
            _ => Verdict::Inconclusive,
        }
    };
    let scoring = match (&verdict, &synthesis) {
        (Verdict::Regular { .. }, Synthesis::Dfa(d)) => suite.with(ChiDecoder::new(lang.name(), d.clone())),
        _ => suite.clone(),
    };
    let side = Natural::from(n);
    let rows: Vec<RowComplexity> = table
        .representatives()
        .into_par_iter()
        .map(|(label, bits)| {
            let bin = |w: &Word| scoring.estimate(w, None).map(|e| e.value);
            let c = bin(bits).expect("rows are binary");
            let c_given_n = scoring.estimate(bits, Some(&side)).expect("rows are binary").value;
            RowComplexity { label: label.clone(), bits: bits.clone(), c, c_given_n }
        })
        .collect();
    Ok(VerdictReport {
        language: lang.name().to_string(),
        p_max,
        n,
        max_c: rows.iter().map(|r| r.c).max().unwrap_or(0),
        max_c_given_n: rows.iter().map(|r| r.c_given_n).max().unwrap_or(0),
        counts,
        verdict,
        synthesis,
        rows,
        suite_version: scoring.version().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::machines;
    use crate::zoo;

    fn lang(name: &str) -> Language {
        zoo::oracle(name).unwrap()
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_prefix(&lang("sigma-star"), &Word::from("0110"), 5).unwrap().bits.to_string(), "11111");
        assert_eq!(chi_prefix(&lang("odd-ones"), &Word::new(), 7).unwrap().bits.to_string(), "0010110");
        assert_eq!(chi_prefix(&lang("eq01"), &Word::from("01"), 4).unwrap().bits.to_string(), "1000");
        assert_eq!(chi_prefix(&lang("eq01"), &Word::new(), 0), Err(CharSeqError::ZeroLength));
    }

    #[test]
    fn table_examples() {
        let t = residual_table(&lang("odd-ones"), 3, 8, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(t.labels.len(), 15);
        assert_eq!(t.distinct_row_count(), 2);
        assert_eq!(residual_table(&lang("sigma-star"), 4, 8, DEFAULT_CELL_BUDGET).unwrap().distinct_row_count(), 1);
        assert!(residual_table(&lang("eq01"), 6, 64, DEFAULT_CELL_BUDGET).unwrap().distinct_row_count() >= 7);
        assert!(matches!(residual_table(&lang("eq01"), 20, 64, DEFAULT_CELL_BUDGET), Err(CharSeqError::Budget { .. })));
    }

    #[test]
    fn synthesis_examples() {
        match synthesize_dfa(&lang("odd-ones"), 2, 8, DEFAULT_CELL_BUDGET).unwrap() {
            Synthesis::Dfa(d) => {
                assert_eq!(d.state_count(), 2);
                assert!(d.equivalent(&machines::odd_ones()).unwrap());
            }
            other => panic!("{other:?}"),
        }
        match synthesize_dfa(&lang("sigma-star"), 1, 2, DEFAULT_CELL_BUDGET).unwrap() {
            Synthesis::Dfa(d) => assert_eq!((d.state_count(), d.accepting_states()), (1, vec![0])),
            other => panic!("{other:?}"),
        }
        // 0^4 1 and 0^3 share a row, 0000 and 1 share the empty row, but
        // their one-symbol extensions differ.
        assert_eq!(
            synthesize_dfa(&lang("eq01"), 4, 16, DEFAULT_CELL_BUDGET).unwrap(),
            Synthesis::Inconclusive { failure: SynthesisFailure::Inconsistent, row: Word::from("0000") }
        );
        assert!(matches!(
            synthesize_dfa(&lang("eq01"), 3, 64, DEFAULT_CELL_BUDGET).unwrap(),
            Synthesis::Inconclusive { .. }
        ));
    }

    #[test]
    fn rows_follow_dfa_states() {
        let l = lang("odd-ones");
        let d = machines::odd_ones();
        let t = residual_table(&l, 6, 32, DEFAULT_CELL_BUDGET).unwrap();
        for (x, r) in t.labels.iter().zip(&t.rows) {
            let q = d.run(x).unwrap().state;
            assert_eq!(r, &crate::kolmogorov::chi_from_state(&d, q, 32));
        }
    }

    #[test]
    fn window_rules() {
        assert!(strictly_grows(&[1, 2, 3, 3], 3));
        assert!(!strictly_grows(&[1, 2, 2, 3], 3));
        assert!(stable_tail(&[1, 2, 2, 2], 3));
        assert!(!stable_tail(&[2, 2], 3));
    }
}
