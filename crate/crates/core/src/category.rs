//! The binary operator algebra: two objects, a keep operator, a flip
//! operator, and one identity per object, together with composition,
//! application, and finite chains of morphisms.
//!
//! Application is an XOR calculus: writing the keep operator as `0` and the
//! flip operator as `1`, the target of a morphism is the XOR of the operator
//! bit with the origin bit. Keep and the identities act identically on bits
//! but are distinct values; equality is by kind, never by behavior.

use std::fmt;

use thiserror::Error;

use crate::bit::Bit;

/// A morphic fundament: what labels a single arrow between bits.
///
/// `Keep` and `Flip` act on both objects; an identity is pinned to its
/// object and is undefined elsewhere.
#[derive(Clone, Copy, Debug, Hash, PartialEq, Eq)]
pub enum Operator {
    /// Leaves the bit unchanged (an automorphism on each object).
    Keep,
    /// Boolean negation.
    Flip,
    /// The identity morphism on one object.
    Identity(Bit),
}

impl Operator {
    /// The operators written `0`, `1` in program strings.
    pub fn from_program_bit(bit: Bit) -> Operator {
        match bit {
            Bit::Zero => Operator::Keep,
            Bit::One => Operator::Flip,
        }
    }

    /// Inverse of [`Operator::from_program_bit`]; identities have no
    /// program-bit rendering.
    pub fn program_bit(self) -> Option<Bit> {
        match self {
            Operator::Keep => Some(Bit::Zero),
            Operator::Flip => Some(Bit::One),
            Operator::Identity(_) => None,
        }
    }

    pub const ALL: [Operator; 4] = [
        Operator::Keep,
        Operator::Flip,
        Operator::Identity(Bit::Zero),
        Operator::Identity(Bit::One),
    ];
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::Keep => write!(f, "0"),
            Operator::Flip => write!(f, "1"),
            Operator::Identity(x) => write!(f, "i{x}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
pub enum CategoryError {
    /// An identity was applied to the other object.
    #[error("identity on {object} is undefined at input {input}")]
    IdentityMismatch { object: Bit, input: Bit },
    /// The pair does not compose: the object pinned by an identity is not
    /// fixed by the other operand.
    #[error("composition {outer} o {inner} is undefined")]
    UndefinedComposition { outer: Operator, inner: Operator },
    /// Object and fundament counts are inconsistent for a chain.
    #[error("a chain with {fundaments} fundaments needs {fundaments} + 1 objects, got {objects}")]
    ObjectCountMismatch { objects: usize, fundaments: usize },
}

/// Applies an operator to a bit.
pub fn apply_operator(u: Operator, s: Bit) -> Result<Bit, CategoryError> {
    match u {
        Operator::Keep => Ok(s),
        Operator::Flip => Ok(s.flip()),
        Operator::Identity(x) if x == s => Ok(x),
        Operator::Identity(x) => Err(CategoryError::IdentityMismatch { object: x, input: s }),
    }
}

/// Composes two operators, `inner` acting first.
///
/// Keep is neutral on both sides for every operator, flip is an involution,
/// and an identity composes only with operators that fix its object (keep,
/// or the identity itself): the composite must stay an endomorphism at the
/// pinned object, so flip/identity pairings are undefined, as is a pairing
/// of the two distinct identities.
pub fn compose(outer: Operator, inner: Operator) -> Result<Operator, CategoryError> {
    use Operator::*;
    match (outer, inner) {
        (Keep, u) | (u, Keep) => Ok(u),
        (Flip, Flip) => Ok(Keep),
        (Identity(x), Identity(y)) if x == y => Ok(Identity(x)),
        _ => Err(CategoryError::UndefinedComposition { outer, inner }),
    }
}

/// One arrow: an origin bit, its fundament, and the resulting target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub origin: Bit,
    pub fundament: Operator,
    pub target: Bit,
}

impl Morphism {
    /// Builds the morphism with the target derived from the fundament.
    pub fn new(origin: Bit, fundament: Operator) -> Result<Morphism, CategoryError> {
        let target = apply_operator(fundament, origin)?;
        Ok(Morphism { origin, fundament, target })
    }

    /// Whether a claimed (origin, fundament, target) triple is an arrow.
    pub fn is_valid(origin: Bit, fundament: Operator, target: Bit) -> bool {
        apply_operator(fundament, origin) == Ok(target)
    }
}

/// A finite chain: objects `s0..sn` joined by fundaments `u1..un`.
///
/// The object list always has exactly one more entry than the fundament
/// list; whether each link is a real morphism is a separate question
/// answered by [`validate_chain`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteChain {
    objects: Vec<Bit>,
    fundaments: Vec<Operator>,
}

impl FiniteChain {
    /// Derives the chain from an initial object, applying each fundament in
    /// turn. Fails on the first identity mismatch.
    pub fn derive(initial: Bit, fundaments: Vec<Operator>) -> Result<FiniteChain, CategoryError> {
        let mut objects = Vec::with_capacity(fundaments.len() + 1);
        objects.push(initial);
        let mut current = initial;
        for &u in &fundaments {
            current = apply_operator(u, current)?;
            objects.push(current);
        }
        Ok(FiniteChain { objects, fundaments })
    }

    /// Wraps explicitly claimed objects, checking only the count invariant.
    pub fn from_parts(
        objects: Vec<Bit>,
        fundaments: Vec<Operator>,
    ) -> Result<FiniteChain, CategoryError> {
        if objects.len() != fundaments.len() + 1 {
            return Err(CategoryError::ObjectCountMismatch {
                objects: objects.len(),
                fundaments: fundaments.len(),
            });
        }
        Ok(FiniteChain { objects, fundaments })
    }

    pub fn initial(&self) -> Bit {
        self.objects[0]
    }

    pub fn objects(&self) -> &[Bit] {
        &self.objects
    }

    pub fn fundaments(&self) -> &[Operator] {
        &self.fundaments
    }

    pub fn len(&self) -> usize {
        self.fundaments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fundaments.is_empty()
    }
}

/// Outcome of checking every link of a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainValidation {
    Valid,
    /// `index` is the 1-based position of the first fundament whose
    /// (origin, fundament, target) triple is not a morphism.
    InvalidAt { index: usize },
}

impl ChainValidation {
    pub fn is_valid(self) -> bool {
        matches!(self, ChainValidation::Valid)
    }
}

/// Checks each consecutive (s_{k-1}, u_k, s_k) triple, reporting the first
/// offending 1-based index.
pub fn validate_chain(chain: &FiniteChain) -> ChainValidation {
    for (k, &u) in chain.fundaments.iter().enumerate() {
        if !Morphism::is_valid(chain.objects[k], u, chain.objects[k + 1]) {
            return ChainValidation::InvalidAt { index: k + 1 };
        }
    }
    ChainValidation::Valid
}

/// Composes all fundaments of a chain, rightmost applied first, so the
/// result maps `s0` to `sn`. The empty chain folds to the neutral `Keep`.
///
/// A valid chain can still fail to fold: a flip next to an identity has no
/// composite in the four-operator algebra, and the error is propagated.
pub fn fold_chain(chain: &FiniteChain) -> Result<Operator, CategoryError> {
    let mut acc = Operator::Keep;
    for &u in &chain.fundaments {
        acc = compose(u, acc)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bit::parse_bits;

    const K: Operator = Operator::Keep;
    const F: Operator = Operator::Flip;
    const I0: Operator = Operator::Identity(Bit::Zero);
    const I1: Operator = Operator::Identity(Bit::One);

    #[test]
    fn apply_keeps_flips_and_pins() {
        assert_eq!(apply_operator(K, Bit::One), Ok(Bit::One));
        assert_eq!(apply_operator(F, Bit::Zero), Ok(Bit::One));
        assert_eq!(apply_operator(F, Bit::One), Ok(Bit::Zero));
        assert_eq!(
            apply_operator(I0, Bit::One),
            Err(CategoryError::IdentityMismatch { object: Bit::Zero, input: Bit::One })
        );
    }

    #[test]
    fn compose_table() {
        assert_eq!(compose(F, F), Ok(K));
        assert_eq!(compose(K, F), Ok(F));
        assert_eq!(compose(F, K), Ok(F));
        assert_eq!(compose(K, K), Ok(K));
        assert_eq!(compose(I0, I0), Ok(I0));
        assert_eq!(
            compose(I0, I1),
            Err(CategoryError::UndefinedComposition { outer: I0, inner: I1 })
        );
    }

    #[test]
    fn keep_is_neutral_for_identities_on_both_sides() {
        for x in [Bit::Zero, Bit::One] {
            let id = Operator::Identity(x);
            assert_eq!(compose(K, id), Ok(id));
            assert_eq!(compose(id, K), Ok(id));
        }
    }

    #[test]
    fn flip_does_not_compose_with_identities() {
        for x in [Bit::Zero, Bit::One] {
            let id = Operator::Identity(x);
            assert!(compose(F, id).is_err());
            assert!(compose(id, F).is_err());
        }
    }

    #[test]
    fn involution_on_bits() {
        for s in [Bit::Zero, Bit::One] {
            let once = apply_operator(F, s).unwrap();
            assert_eq!(apply_operator(F, once), Ok(s));
        }
    }

    #[test]
    fn associativity_over_defined_triples() {
        for h in Operator::ALL {
            for g in Operator::ALL {
                for f in Operator::ALL {
                    let left = compose(h, g).and_then(|hg| compose(hg, f));
                    let right = compose(g, f).and_then(|gf| compose(h, gf));
                    if let (Ok(a), Ok(b)) = (left, right) {
                        assert_eq!(a, b, "({h} o {g}) o {f} != {h} o ({g} o {f})");
                    }
                }
            }
        }
    }

    #[test]
    fn homomorphism_on_valid_inputs() {
        for a in Operator::ALL {
            for b in Operator::ALL {
                let Ok(ab) = compose(a, b) else { continue };
                for s in [Bit::Zero, Bit::One] {
                    let Ok(mid) = apply_operator(b, s) else { continue };
                    let Ok(stepwise) = apply_operator(a, mid) else { continue };
                    assert_eq!(apply_operator(ab, s), Ok(stepwise));
                }
            }
        }
    }

    fn program_chain(initial: Bit, program: &str) -> FiniteChain {
        let fundaments = parse_bits(program)
            .unwrap()
            .into_iter()
            .map(Operator::from_program_bit)
            .collect();
        FiniteChain::derive(initial, fundaments).unwrap()
    }

    #[test]
    fn eleven_link_chain_is_valid_and_reaches_its_object_sequence() {
        let chain = program_chain(Bit::Zero, "00010011001");
        assert!(validate_chain(&chain).is_valid());
        assert_eq!(crate::bit::format_bits(chain.objects()), "000011101110");
    }

    #[test]
    fn flip_that_fails_to_flip_is_invalid_at_index_one() {
        let chain =
            FiniteChain::from_parts(vec![Bit::Zero, Bit::Zero], vec![F]).unwrap();
        assert_eq!(validate_chain(&chain), ChainValidation::InvalidAt { index: 1 });
    }

    #[test]
    fn empty_chain_is_valid_and_folds_to_keep() {
        let chain = FiniteChain::derive(Bit::Zero, vec![]).unwrap();
        assert!(validate_chain(&chain).is_valid());
        assert_eq!(fold_chain(&chain), Ok(K));
    }

    #[test]
    fn fold_follows_flip_parity() {
        let two_flips = FiniteChain::derive(Bit::Zero, vec![F, F]).unwrap();
        assert_eq!(fold_chain(&two_flips), Ok(K));

        let three_keeps = FiniteChain::derive(Bit::One, vec![K, K, K]).unwrap();
        assert_eq!(fold_chain(&three_keeps), Ok(K));

        // Independent oracle: the fold of a keep/flip chain is flip exactly
        // when the flip count is odd, and applying it to s0 lands on the
        // last object.
        let chain = program_chain(Bit::Zero, "00010011001");
        let flips = chain.fundaments().iter().filter(|&&u| u == F).count();
        let expected = if flips % 2 == 1 { F } else { K };
        let folded = fold_chain(&chain).unwrap();
        assert_eq!(folded, expected);
        assert_eq!(
            apply_operator(folded, chain.initial()),
            Ok(*chain.objects().last().unwrap())
        );
    }

    #[test]
    fn fold_propagates_undefined_composition() {
        // 0 -i0-> 0 -1-> 1 is a valid chain, but i0 then flip has no
        // composite operator value.
        let chain = FiniteChain::derive(Bit::Zero, vec![I0, F]).unwrap();
        assert!(validate_chain(&chain).is_valid());
        assert!(fold_chain(&chain).is_err());

        // Flips that cancel before the identity arrives do fold.
        let chain = FiniteChain::derive(Bit::Zero, vec![F, F, I0]).unwrap();
        assert_eq!(fold_chain(&chain), Ok(I0));
    }

    #[test]
    fn operator_tokens_round_trip() {
        for u in Operator::ALL {
            let text = u.to_string();
            let parsed = match text.as_str() {
                "0" => K,
                "1" => F,
                "i0" => I0,
                "i1" => I1,
                other => panic!("unexpected token {other}"),
            };
            assert_eq!(parsed, u);
        }
    }
}
