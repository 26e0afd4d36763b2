//! Round-trip properties of the chain/string correspondence.

use morphic_core::{
    chain_to_string, morphic_compress, string_to_chain, Bit, BitStream, CompressionCertificate,
    MorphicProgram, PI_RULE_CODE,
};
use proptest::prelude::*;

fn arb_bit() -> impl Strategy<Value = Bit> {
    prop_oneof![Just(Bit::Zero), Just(Bit::One)]
}

fn arb_bits(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Bit>> {
    proptest::collection::vec(arb_bit(), len)
}

fn word_bits(word: u32, len: usize) -> Vec<Bit> {
    (0..len).map(|i| Bit::from(word >> (len - 1 - i) & 1 == 1)).collect()
}

#[test]
fn every_short_string_round_trips_exhaustively() {
    for len in 1..=10usize {
        for word in 0u32..1 << len {
            let bits = word_bits(word, len);
            let stream = BitStream::from_bits(bits.clone());
            let program = string_to_chain(&stream, len).unwrap();
            let back = chain_to_string(&program);
            assert_eq!(back.materialize(len).unwrap(), bits);
        }
    }
}

#[test]
fn every_short_program_round_trips_exhaustively() {
    for len in 0..=9usize {
        for word in 0u32..1 << len {
            for s0 in [Bit::Zero, Bit::One] {
                let program = MorphicProgram::new(s0, word_bits(word, len));
                let s = chain_to_string(&program);
                let back = string_to_chain(&s, program.len()).unwrap();
                assert_eq!(back, program);
            }
        }
    }
}

#[test]
fn distinct_strings_have_distinct_programs() {
    // Injectivity on a full exhaustive tier.
    let len = 12usize;
    let mut seen = std::collections::HashSet::new();
    for word in 0u32..1 << len {
        let stream = BitStream::from_bits(word_bits(word, len));
        let program = string_to_chain(&stream, len).unwrap();
        assert!(seen.insert((program.s0, program.operators.clone())));
    }
    assert_eq!(seen.len(), 1 << len);
}

proptest! {
    #[test]
    fn long_random_strings_round_trip(bits in arb_bits(1..1025)) {
        let len = bits.len();
        let stream = BitStream::from_bits(bits.clone());
        let program = string_to_chain(&stream, len).unwrap();
        prop_assert_eq!(chain_to_string(&program).materialize(len).unwrap(), bits);
    }

    #[test]
    fn compression_always_returns_the_same_rule(bits in arb_bits(1..300)) {
        let len = bits.len();
        let stream = BitStream::from_bits(bits);
        let certificate = morphic_compress(&stream, len).unwrap();
        prop_assert_eq!(certificate.rule.code(), PI_RULE_CODE);
        prop_assert_eq!(certificate.reproduced_prefix_length, len);
    }

    #[test]
    fn certificates_survive_text_serialization(bits in arb_bits(1..200)) {
        let len = bits.len();
        let stream = BitStream::from_bits(bits.clone());
        let certificate = morphic_compress(&stream, len).unwrap();
        let parsed = CompressionCertificate::parse_text(&certificate.render_text()).unwrap();
        prop_assert_eq!(&parsed, &certificate);
        prop_assert_eq!(parsed.replay().unwrap().materialize(len).unwrap(), bits);
    }
}
