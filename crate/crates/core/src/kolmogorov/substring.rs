use super::{SpliceDecoder, Suite};
use crate::error::KcError;
use crate::word::{floor_log2, Word};

/// Added to `4⌊log l(x)⌋` (and the splice tag) to bound the measured log-term.
pub const LOG_TERM_CONSTANT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstringReport {
    pub split: (usize, usize, usize),
    /// Ĉ(x) with the splice decoder installed.
    pub c_x: usize,
    /// Ĉ(x) under the original suite.
    pub c_x_base: usize,
    pub c_v: usize,
    pub l_uw: usize,
    /// Length of the verified composite description, tag included.
    pub composite: usize,
    /// `composite − Ĉ(v) − l(uw)`.
    pub log_term: usize,
    /// `4⌊log l(x)⌋ + splice tag + LOG_TERM_CONSTANT`.
    pub log_bound: usize,
    pub suite_version: String,
}

impl SubstringReport {
    /// `Ĉ(x) ≤ Ĉ(v) + l(uw) + log-term`.
    pub fn holds(&self) -> bool {
        self.c_x <= self.c_v + self.l_uw + self.log_term
    }

    pub fn within_log_bound(&self) -> bool {
        self.log_term <= self.log_bound
    }
}

/// Builds the composite description of `x = u v w` from a description of
/// `v` and the literal `uw`, checks that it replays, and reports both sides.
pub fn substring_bound_check(suite: &Suite, x: &Word, split: (usize, usize, usize)) -> Result<SubstringReport, KcError> {
    let (lu, lv, lw) = split;
    if lu + lv + lw != x.len() {
        return Err(KcError::BadSplit { u: lu, v: lv, w: lw, len: x.len() });
    }
    if !x.is_binary() {
        return Err(KcError::NotBinary(x.to_string()));
    }
    let v = x.slice(lu, lu + lv);
    let uw = x.slice(0, lu).concat(&x.slice(lu + lv, x.len()));
    let est_v = suite.estimate(&v, None)?;
    let ext = suite.with(SpliceDecoder::new(suite.clone()));
    let idx = ext.len() - 1;
    let program = SpliceDecoder::compose(&est_v.witness(), lu, &uw);
    if ext.decoder(idx).decode(program.as_bytes(), None, x.len()).as_ref() != Some(x) {
        return Err(KcError::ReplayMismatch { decoder: ext.decoder(idx).label() });
    }
    let tag = ext.tag(idx).len();
    let composite = tag + program.len();
    let c_x_base = suite.estimate(x, None)?.value;
    Ok(SubstringReport {
        split,
        c_x: c_x_base.min(composite),
        c_x_base,
        c_v: est_v.value,
        l_uw: uw.len(),
        composite,
        log_term: composite - est_v.value - uw.len(),
        log_bound: 4 * floor_log2(x.len() as u64) + tag + LOG_TERM_CONSTANT,
        suite_version: ext.version().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kolmogorov::find_incompressible;

    #[test]
    fn runs_in_the_middle() {
        let x = Word::from("0000000011111111");
        let r = substring_bound_check(&Suite::standard(), &x, (0, 8, 8)).unwrap();
        assert!(r.holds() && r.within_log_bound(), "{r:?}");
        let whole = substring_bound_check(&Suite::standard(), &x, (0, 16, 0)).unwrap();
        assert!(whole.c_x <= whole.c_v + whole.log_term);
    }

    #[test]
    fn incompressible_middle_stays_long() {
        let s = Suite::standard();
        let x = find_incompressible(12, &s, None).unwrap().word;
        let r = substring_bound_check(&s, &x, (4, 4, 4)).unwrap();
        // Ĉ(x) ≥ 12 and Ĉ(x) ≤ Ĉ(v) + 8 + log-term give Ĉ(v) ≥ 4 − log-term.
        assert!(r.c_x_base >= 12);
        assert!(r.c_v + r.log_term >= 4);
    }

    #[test]
    fn bad_split() {
        let err = substring_bound_check(&Suite::standard(), &Word::from("0101"), (1, 1, 1)).unwrap_err();
        assert_eq!(err, KcError::BadSplit { u: 1, v: 1, w: 1, len: 4 });
    }
}
