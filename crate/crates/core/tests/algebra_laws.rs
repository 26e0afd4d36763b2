//! Property tests for the operator algebra.

use morphic_core::{
    apply_operator, compose, fold_chain, validate_chain, Bit, FiniteChain, Operator,
};
use proptest::prelude::*;

fn arb_bit() -> impl Strategy<Value = Bit> {
    prop_oneof![Just(Bit::Zero), Just(Bit::One)]
}

fn arb_operator() -> impl Strategy<Value = Operator> {
    prop_oneof![
        Just(Operator::Keep),
        Just(Operator::Flip),
        arb_bit().prop_map(Operator::Identity),
    ]
}

proptest! {
    #[test]
    fn composition_commutes_with_application(
        a in arb_operator(),
        b in arb_operator(),
        s in arb_bit(),
    ) {
        if let Ok(ab) = compose(a, b) {
            if let Ok(mid) = apply_operator(b, s) {
                if let Ok(stepwise) = apply_operator(a, mid) {
                    prop_assert_eq!(apply_operator(ab, s), Ok(stepwise));
                }
            }
        }
    }

    #[test]
    fn associativity_holds_wherever_both_groupings_compose(
        h in arb_operator(),
        g in arb_operator(),
        f in arb_operator(),
    ) {
        let left = compose(h, g).and_then(|hg| compose(hg, f));
        let right = compose(g, f).and_then(|gf| compose(h, gf));
        if let (Ok(a), Ok(b)) = (left, right) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn fold_of_a_program_chain_is_its_flip_parity(
        s0 in arb_bit(),
        program in proptest::collection::vec(arb_bit(), 0..200),
    ) {
        let fundaments: Vec<Operator> =
            program.iter().map(|&b| Operator::from_program_bit(b)).collect();
        let chain = FiniteChain::derive(s0, fundaments).unwrap();
        prop_assert!(validate_chain(&chain).is_valid());

        let flips = program.iter().filter(|&&b| b == Bit::One).count();
        let expected = if flips % 2 == 1 { Operator::Flip } else { Operator::Keep };
        let folded = fold_chain(&chain).unwrap();
        prop_assert_eq!(folded, expected);
        prop_assert_eq!(
            apply_operator(folded, s0).unwrap(),
            *chain.objects().last().unwrap()
        );
    }

    #[test]
    fn derived_chains_validate_and_fold_coherently(
        s0 in arb_bit(),
        ops in proptest::collection::vec(arb_operator(), 0..60),
    ) {
        // Identity-bearing derivations can fail (identity at the wrong
        // object); those that succeed must validate, and whenever the fold
        // is defined it must map the initial object to the final one.
        if let Ok(chain) = FiniteChain::derive(s0, ops) {
            prop_assert!(validate_chain(&chain).is_valid());
            if let Ok(folded) = fold_chain(&chain) {
                prop_assert_eq!(
                    apply_operator(folded, s0),
                    Ok(*chain.objects().last().unwrap())
                );
            }
        }
    }

    #[test]
    fn corrupting_one_object_is_caught(
        s0 in arb_bit(),
        program in proptest::collection::vec(arb_bit(), 1..100),
        which in any::<proptest::sample::Index>(),
    ) {
        let fundaments: Vec<Operator> =
            program.iter().map(|&b| Operator::from_program_bit(b)).collect();
        let chain = FiniteChain::derive(s0, fundaments.clone()).unwrap();
        let mut objects = chain.objects().to_vec();
        // Flip one non-initial object; keep/flip links on both sides of it
        // become inconsistent, so validation must fail at or before it.
        let k = 1 + which.index(objects.len() - 1);
        objects[k] = objects[k].flip();
        let corrupted = FiniteChain::from_parts(objects, fundaments).unwrap();
        match validate_chain(&corrupted) {
            morphic_core::ChainValidation::InvalidAt { index } => {
                prop_assert!(index <= k);
            }
            morphic_core::ChainValidation::Valid => {
                prop_assert!(false, "corrupted chain validated");
            }
        }
    }
}
