//! Exhaustive enumeration of short descriptions.

use std::collections::HashMap;

use rayon::prelude::*;

use super::Suite;
use crate::error::KcError;
use crate::word::{floor_log2, log_len, Natural, Word};

/// Largest word length handled by exhaustive operations.
pub const EXHAUSTIVE_MAX: usize = 20;

/// Largest census length.
pub const CENSUS_MAX: usize = 18;

/// Longest description (tag + program) the enumerators will try.
pub const MAX_DESCRIPTION: usize = 24;

fn program_bits(v: u64, len: usize) -> Vec<u8> {
    (0..len).rev().map(|i| if (v >> i) & 1 == 1 { b'1' } else { b'0' }).collect()
}

/// Every successful description of total length `≤ max_total` whose output
/// has length `≤ max_len`, as `(total length, output)`. Order is by decoder,
/// then program length, then program value.
pub fn descriptions_upto(
    suite: &Suite,
    max_total: usize,
    side: Option<&Natural>,
    max_len: usize,
) -> Result<Vec<(usize, Word)>, KcError> {
    if max_total > MAX_DESCRIPTION {
        return Err(KcError::ExhaustiveRange { requested: max_total, max: MAX_DESCRIPTION });
    }
    let mut jobs = Vec::new();
    for i in 0..suite.len() {
        let t = suite.tag(i).len();
        for p in 0..=max_total.saturating_sub(t) {
            if t + p <= max_total {
                jobs.push((i, t, p));
            }
        }
    }
    let chunks: Vec<Vec<(usize, Word)>> = jobs
        .par_iter()
        .map(|&(i, t, p)| {
            let d = suite.decoder(i);
            (0..1u64 << p)
                .into_par_iter()
                .filter_map(|v| d.decode(&program_bits(v, p), side, max_len).map(|out| (t + p, out)))
                .collect()
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Shortest description length per output word.
fn shortest_outputs(suite: &Suite, max_total: usize, max_len: usize) -> Result<HashMap<Word, usize>, KcError> {
    let mut best: HashMap<Word, usize> = HashMap::new();
    for (total, out) in descriptions_upto(suite, max_total, None, max_len)? {
        best.entry(out).and_modify(|b| *b = (*b).min(total)).or_insert(total);
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incompressible {
    pub word: Word,
    /// Words of the same length with a description shorter than the length.
    pub compressible: u64,
}

fn word_from_index(v: u64, n: usize) -> Word {
    Word::from_bytes(program_bits(v, n))
}

fn marked_outputs(n: usize, suite: &Suite, side: Option<&Natural>) -> Result<Vec<bool>, KcError> {
    if n > EXHAUSTIVE_MAX {
        return Err(KcError::ExhaustiveRange { requested: n, max: EXHAUSTIVE_MAX });
    }
    let mut marked = vec![false; 1usize << n];
    if n == 0 {
        return Ok(marked);
    }
    for (_, out) in descriptions_upto(suite, n - 1, side, n)? {
        if out.len() == n {
            let idx = out.as_bytes().iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b == b'1'));
            marked[idx] = true;
        }
    }
    Ok(marked)
}

/// Least word of length `n` with no description shorter than `n`.
pub fn find_incompressible(n: usize, suite: &Suite, side: Option<&Natural>) -> Result<Incompressible, KcError> {
    let marked = marked_outputs(n, suite, side)?;
    let compressible = marked.iter().filter(|&&m| m).count() as u64;
    let idx = marked.iter().position(|&m| !m).expect("fewer than 2^n short descriptions");
    Ok(Incompressible { word: word_from_index(idx as u64, n), compressible })
}

/// `#{x ∈ {0,1}^n : Ĉ(x) < n}`.
pub fn count_compressible(n: usize, suite: &Suite, side: Option<&Natural>) -> Result<u64, KcError> {
    Ok(marked_outputs(n, suite, side)?.iter().filter(|&&m| m).count() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    pub c: usize,
    /// `l(n) + c` with `l(n) = ⌊log(n+1)⌋`.
    pub threshold: usize,
    /// `d(A_n)`: words of length `n` with Ĉ at most the threshold.
    pub count: u64,
    /// Words of length `n` whose every prefix `x_{1:i}` meets `l(i) + c`.
    pub prefix_closed: u64,
    /// `⌊log2 n⌋`, for comparison with the `l(n)` convention.
    pub floor_log: usize,
}

impl CensusRow {
    /// `2^{threshold+1}`: more than the number of descriptions that fit.
    pub fn description_bound(&self) -> u128 {
        1u128 << (self.threshold + 1)
    }

    /// `2^{⌊log2 n⌋ + c + 1}`.
    pub fn floor_log_bound(&self) -> u128 {
        1u128 << (self.floor_log + self.c + 1)
    }
}

/// `d(A_n)` and the prefix-closed shadow of `A` for `1 ≤ n ≤ n_max`.
pub fn a_n_census(n_max: usize, c_values: &[usize], suite: &Suite) -> Result<Vec<CensusRow>, KcError> {
    if n_max > CENSUS_MAX {
        return Err(KcError::ExhaustiveRange { requested: n_max, max: CENSUS_MAX });
    }
    let mut rows = Vec::new();
    for &c in c_values {
        let top = log_len(n_max as u64) + c;
        let best = shortest_outputs(suite, top, n_max)?;
        let mut by_len: Vec<Vec<(&Word, usize)>> = vec![Vec::new(); n_max + 1];
        for (w, &t) in &best {
            by_len[w.len()].push((w, t));
        }
        let mut closed: Vec<Word> = vec![Word::new()];
        for n in 1..=n_max {
            let threshold = log_len(n as u64) + c;
            let members: std::collections::HashSet<&Word> =
                by_len[n].iter().filter(|(_, t)| *t <= threshold).map(|(w, _)| *w).collect();
            closed = closed
                .iter()
                .flat_map(|p| (*b"01").map(|b| {
                    let mut q = p.clone();
                    q.push(b);
                    q
                }))
                .filter(|q| members.contains(q))
                .collect();
            rows.push(CensusRow {
                n,
                c,
                threshold,
                count: members.len() as u64,
                prefix_closed: closed.len() as u64,
                floor_log: floor_log2(n as u64),
            });
        }
    }
    rows.sort_by_key(|r| (r.n, r.c));
    Ok(rows)
}
