use std::collections::HashMap;

use kclab::automata::machines;
use kclab::charseq::chi_prefix;
use kclab::codec;
use kclab::kolmogorov::{a_n_census, ResidualDecoder, ResidualOrder, Suite};
use kclab::rec::{halting_prefix, halting_time, lambda_prefix, sparse_positions, sparse_sequence};
use kclab::word::log_len;
use kclab::zoo;
use kclab::{Alphabet, Natural, Word};

/// Program `i` spelled out in bijective base 6 over `+-<>[]`.
fn toy_program(i: u64) -> Vec<u8> {
    const OPS: &[u8] = b"+-<>[]";
    let mut out = Vec::new();
    let mut k = i - 1;
    while k > 0 {
        k -= 1;
        out.push(OPS[(k % 6) as usize]);
        k /= 6;
    }
    out.reverse();
    out
}

/// Brackets resolved by scanning at run time rather than from a table.
fn toy_steps(prog: &[u8], input: u64, budget: u64) -> Option<u64> {
    let find = |from: usize, forward: bool| -> Option<usize> {
        let mut depth = 0i64;
        let mut i = from as i64;
        loop {
            i += if forward { 1 } else { -1 };
            if i < 0 || i as usize >= prog.len() {
                return None;
            }
            match (prog[i as usize], forward) {
                (b'[', true) | (b']', false) => depth += 1,
                (b']', true) | (b'[', false) if depth == 0 => return Some(i as usize),
                (b']', true) | (b'[', false) => depth -= 1,
                _ => {}
            }
        }
    };
    let mut cells: HashMap<usize, u64> = HashMap::from([(0, input)]);
    let (mut head, mut pc, mut t) = (0usize, 0usize, 0u64);
    while pc < prog.len() {
        t += 1;
        if t > budget {
            return None;
        }
        let cell = cells.entry(head).or_insert(0);
        match prog[pc] {
            b'+' => *cell += 1,
            b'-' => *cell = cell.saturating_sub(1),
            b'>' => head += 1,
            b'<' => head = head.saturating_sub(1),
            b'[' if *cell == 0 => match find(pc, true) {
                Some(close) => pc = close,
                None => break,
            },
            b']' if *cell != 0 => {
                if let Some(open) = find(pc, false) {
                    pc = open;
                }
            }
            _ => {}
        }
        pc += 1;
    }
    (t < budget).then_some(t + 1)
}

#[test]
fn halting_prefix_matches_independent_interpreter() {
    let k = halting_prefix(1000, 64).unwrap().bits;
    assert_eq!(k.to_string(), "1111111111111111111111111111111111110111111111111111111111111111");
    assert_eq!(k.slice(0, 32).to_string(), "1".repeat(32));
    for i in 1..=64u64 {
        let expected = toy_steps(&toy_program(i), i, 1000);
        assert_eq!(halting_time(i, 1000), expected, "program {i} {:?}", String::from_utf8_lossy(&toy_program(i)));
        assert_eq!(k.as_bytes()[i as usize - 1] == b'1', expected.is_some());
    }
    assert_eq!(toy_program(37), b"[]");
    for i in (1..=3000u64).step_by(7) {
        assert_eq!(halting_time(i, 500), toy_steps(&toy_program(i), i, 500), "program {i}");
    }
    assert_eq!(halting_time(1, 1), Some(1));
    assert_eq!(halting_time(1, 0), None);
}

#[test]
fn lambda_is_chi_of_empty_word() {
    let suite = Suite::standard();
    for lang in zoo::all() {
        for n in [1, 17, 256] {
            let lambda = lambda_prefix(&lang, n, &suite).unwrap().sequence.bits;
            assert_eq!(lambda, chi_prefix(&lang, &Word::new(), n).unwrap().bits, "{} n={n}", lang.name());
            let direct = Word::from_bits((0..n as u64).map(|i| lang.contains(&lang.alphabet().nth_word(i))));
            assert_eq!(lambda, direct, "{} n={n}", lang.name());
        }
    }
}

#[test]
fn sparse_sequence_follows_its_recurrence() {
    // h = k_1 0^2 k_2 0^4 … built by concatenation.
    let n = 10_000;
    let mut h = String::new();
    let mut i = 1u32;
    while h.len() < n {
        h.push('1');
        h.push_str(&"0".repeat(1 << i));
        i += 1;
    }
    h.truncate(n);
    let expected: Vec<usize> = h.char_indices().filter(|&(_, c)| c == '1').map(|(j, _)| j + 1).collect();
    assert_eq!(sparse_positions(n), expected);
    assert_eq!(&expected[..6], [1, 4, 9, 18, 35, 68]);
    let kbits = Word::from_bytes(vec![b'1'; expected.len()]);
    let report = sparse_sequence(&kbits, n, &Suite::standard()).unwrap();
    assert_eq!(report.sequence.bits.to_string(), h);
    let short = Word::from_bytes(vec![b'1'; expected.len() - 1]);
    assert!(sparse_sequence(&short, n, &Suite::standard()).is_err());
}

#[test]
fn census_matches_brute_force_descriptions() {
    let suite = Suite::standard();
    let rows = a_n_census(12, &[0, 3, 6, 8], &suite).unwrap();
    let c8: Vec<u64> = rows.iter().filter(|r| r.c == 8).map(|r| r.count).collect();
    assert_eq!(c8, [2, 4, 8, 16, 0, 0, 0, 0, 0, 0, 0, 0]);

    // Every bit string up to the largest threshold, run as a full description.
    let top = log_len(12) + 8;
    let mut shortest: HashMap<Word, usize> = HashMap::new();
    for len in 0..=top {
        for d in Alphabet::binary().words_of_length(len) {
            if let Some(out) = suite.run(d.as_bytes(), None, 12) {
                shortest.entry(out).or_insert(len);
            }
        }
    }
    for r in &rows {
        let count = shortest.iter().filter(|(w, &t)| w.len() == r.n && t <= r.threshold).count() as u64;
        assert_eq!(r.count, count, "n={} c={}", r.n, r.c);
        assert!(r.prefix_closed <= r.count);
        assert!((r.count as u128) < r.floor_log_bound());
    }
}

#[test]
fn residual_overhead_is_constant_for_other_machines() {
    for (name, dfa) in [("even-length", machines::even_length()), ("ends-with-one", machines::ends_with_one())] {
        let lang_dfa = dfa.clone();
        let probe = ResidualDecoder::new(name, dfa.clone(), ResidualOrder::LengthLex);
        let suite = Suite::standard().with(ResidualDecoder::new(name, dfa, ResidualOrder::LengthLex));
        let tag = suite.tag(suite.len() - 1).len();
        for len in 0..=6 {
            for x in Alphabet::binary().words_of_length(len) {
                let q = lang_dfa.run(&x).unwrap().state;
                for n in 1..=24u64 {
                    let big = Natural::from(n);
                    let y = probe.nth_from_state(q, &big, 64).unwrap();
                    assert!(lang_dfa.accepts(&x.concat(&y)).unwrap());
                    let overhead = tag + probe.program(q, &big).len() - codec::self_delim_nat(n).len();
                    assert_eq!(overhead, tag + probe.state_width(), "{name} x={x:?} n={n}");
                    let e = suite.estimate(&y, None).unwrap();
                    assert!(e.value <= codec::self_delim_nat(n).len() + overhead);
                }
            }
        }
    }
}
