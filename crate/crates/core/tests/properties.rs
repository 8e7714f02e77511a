use kclab::automata::{machines, CombineOp};
use kclab::charseq::chi_prefix;
use kclab::codec;
use kclab::dcfl::stack_profile;
use kclab::kolmogorov::Suite;
use kclab::zoo;
use kclab::{Natural, Word};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn bits(max: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(prop_oneof![Just(b'0'), Just(b'1')], 0..=max).prop_map(Word::from_bytes)
}

proptest! {
    #[test]
    fn bijection_round_trips(n in any::<u64>()) {
        let w = codec::nat_to_word_u64(n);
        prop_assert_eq!(codec::word_to_nat_u64(w.as_bytes()), Some(n));
        prop_assert_eq!(codec::nat_to_word(&Natural::from(n)), w);
    }

    #[test]
    fn big_bijection_round_trips(limbs in proptest::collection::vec(any::<u32>(), 1..6)) {
        let n = BigUint::new(limbs);
        let w = codec::nat_to_word(&n);
        prop_assert_eq!(codec::word_to_nat(&w).unwrap(), n);
    }

    #[test]
    fn self_delim_splits_off_suffix(x in bits(80), z in bits(20)) {
        let code = codec::self_delim(&x).unwrap();
        prop_assert_eq!(code.len(), codec::self_delim_len(x.len()));
        let (back, rest) = codec::self_delim_decode(&code.concat(&z)).unwrap();
        prop_assert_eq!(back, x);
        prop_assert_eq!(rest, z);
    }

    #[test]
    fn pair_and_triple_invert(x in bits(24), y in bits(24), z in bits(24)) {
        prop_assert_eq!(codec::unpair(&codec::pair(&x, &y).unwrap()).unwrap(), (x.clone(), y.clone()));
        prop_assert_eq!(codec::untriple(&codec::triple(&x, &y, &z).unwrap()).unwrap(), (x, y, z));
    }

    #[test]
    fn dfa_operations_agree_with_definitions(w in bits(40)) {
        let a = machines::odd_ones_padded();
        let b = machines::ends_with_one();
        let (ia, ib) = (a.accepts(&w).unwrap(), b.accepts(&w).unwrap());
        prop_assert_eq!(a.minimize().accepts(&w).unwrap(), ia);
        prop_assert_eq!(a.complement().accepts(&w).unwrap(), !ia);
        prop_assert_eq!(a.union(&b).unwrap().accepts(&w).unwrap(), ia || ib);
        prop_assert_eq!(a.intersection(&b).unwrap().accepts(&w).unwrap(), ia && ib);
        let c = a.combine(CombineOp::Complement, None).unwrap();
        let x = c.combine(CombineOp::Intersection, Some(&b)).unwrap();
        prop_assert_eq!(x.accepts(&w).unwrap(), !ia && ib);
    }

    #[test]
    fn eq01_dpda_matches_oracle(n in 0usize..40, m in 0usize..40, noise in bits(6)) {
        let lang = zoo::oracle("eq01").unwrap();
        let dpda = machines::eq01_dpda();
        let w = Word::repeat_symbol(b'0', n).concat(&Word::repeat_symbol(b'1', m)).concat(&noise);
        prop_assert_eq!(dpda.accepts(&w).unwrap(), lang.contains(&w));
    }

    #[test]
    fn chi_matches_reference_runs(x in bits(12)) {
        for name in ["odd-ones", "sigma-star"] {
            let lang = zoo::oracle(name).unwrap();
            let dfa = lang.reference_dfa().unwrap();
            let chi = chi_prefix(&lang, &x, 64).unwrap();
            for (i, bit) in chi.bits.as_bytes().iter().enumerate() {
                let z = lang.alphabet().nth_word(i as u64);
                prop_assert_eq!(*bit == b'1', dfa.accepts(&x.concat(&z)).unwrap());
            }
        }
    }

    #[test]
    fn estimate_is_bounded_by_literal(x in bits(200)) {
        let suite = Suite::standard();
        let e = suite.estimate(&x, None).unwrap();
        prop_assert!(e.value <= suite.tag(0).len() + codec::self_delim_len(x.len()));
        prop_assert_eq!(e.witness().len(), e.value);
    }

    #[test]
    fn profile_never_popped_is_below_heights(w in bits(30)) {
        let p = stack_profile(&machines::push_ab(), &Word::from_bytes(
            w.as_bytes().iter().map(|&b| if b == b'0' { b'a' } else { b'b' }).collect::<Vec<_>>(),
        )).unwrap();
        prop_assert_eq!(p.suffix_min.len(), p.heights.len());
        for (lo, h) in p.suffix_min.iter().zip(&p.heights) {
            prop_assert!(lo <= h);
        }
    }
}

/// Words with structure the non-literal decoders can exploit, mixed with noise.
fn sample(rng: &mut StdRng) -> Word {
    let len = rng.gen_range(0..=96);
    match rng.gen_range(0..4) {
        0 => Word::from_bits((0..len).map(|_| rng.gen::<bool>())),
        1 => Word::repeat_symbol(if rng.gen() { b'1' } else { b'0' }, len),
        2 => {
            let unit = Word::from_bits((0..rng.gen_range(1..=6)).map(|_| rng.gen::<bool>()));
            unit.power(len / unit.len() + 1).slice(0, len)
        }
        _ => {
            let mut bytes = Vec::new();
            while bytes.len() < len {
                let run = rng.gen_range(1..=12);
                let b = if rng.gen() { b'1' } else { b'0' };
                bytes.extend(std::iter::repeat_n(b, run));
            }
            bytes.truncate(len);
            Word::from_bytes(bytes)
        }
    }
}

#[test]
fn ten_thousand_witnesses_replay() {
    let suite = Suite::standard();
    let mut rng = StdRng::seed_from_u64(0x00c0_ffee);
    for _ in 0..10_000 {
        let x = sample(&mut rng);
        let side = rng.gen::<bool>().then(|| Natural::from(x.len()));
        let e = suite.estimate(&x, side.as_ref()).unwrap();
        assert_eq!(suite.replay(&e).as_ref(), Some(&x), "{x:?} via {}", e.decoder_label);
        let full = suite.run(e.witness().as_bytes(), side.as_ref(), x.len());
        assert_eq!(full.as_ref(), Some(&x), "{x:?} via full witness");
    }
}
