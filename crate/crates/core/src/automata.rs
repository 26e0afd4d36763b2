//! 12-bit local-connection rule codes and their two wirings over bitstreams.
//!
//! A rule code lists four input/fundament/output triples, read three bits at
//! a time, with the input pairs fixed in the canonical order 00, 01, 10, 11.
//! The output column alone therefore picks one of the sixteen two-input
//! Boolean functions.
//!
//! Two wirings are supported:
//!
//! - recurrent ("pi-style"): `S[0] = s0`, `S[n] = f(u_n, S[n-1])` driven by a
//!   program stream. With the XOR rule `000011101110` this realizes the
//!   object sequence of a keep/flip operator chain.
//! - parallel ("shift-style"): `S'[n] = f(S[n], S[n+1])`. With the transfer
//!   rule `000011100111` every cell copies its right neighbor, which is the
//!   one-step left shift: cellular automaton rule 170 on a right-infinite
//!   array, i.e. the doubling map on binary expansions.

use num_bigint::BigUint;
use thiserror::Error;

use crate::bit::{format_bits, Bit};
use crate::streams::{BitStream, StreamError};

/// Code of the recurrent XOR rule.
pub const PI_RULE_CODE: &str = "000011101110";
/// Code of the parallel shift (transfer) rule.
pub const SHIFT_RULE_CODE: &str = "000011100111";

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("rule code must be 12 characters, got {found}")]
    Length { found: usize },
    #[error("invalid rule character {character:?} at position {position}")]
    Alphabet { position: usize, character: char },
    #[error("triple {triple} must read inputs {expected_first}{expected_second}, got {found_first}{found_second}")]
    CanonicalOrder {
        triple: usize,
        expected_first: Bit,
        expected_second: Bit,
        found_first: Bit,
        found_second: Bit,
    },
}

/// A validated 12-bit rule code: four (input, input, output) triples with
/// the input pairs in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleCode12 {
    bits: [Bit; 12],
}

const CANONICAL_PAIRS: [(Bit, Bit); 4] = [
    (Bit::Zero, Bit::Zero),
    (Bit::Zero, Bit::One),
    (Bit::One, Bit::Zero),
    (Bit::One, Bit::One),
];

impl RuleCode12 {
    /// Parses and validates a 12-character code. Wrong length, characters
    /// outside `{0,1}`, and out-of-order input pairs are reported as
    /// distinct errors.
    pub fn parse(text: &str) -> Result<RuleCode12, RuleError> {
        let chars: Vec<char> = text.chars().collect();
        if chars.len() != 12 {
            return Err(RuleError::Length { found: chars.len() });
        }
        let mut bits = [Bit::Zero; 12];
        for (position, &character) in chars.iter().enumerate() {
            bits[position] =
                Bit::from_char(character).ok_or(RuleError::Alphabet { position, character })?;
        }
        for (triple, &(a, b)) in CANONICAL_PAIRS.iter().enumerate() {
            let (fa, fb) = (bits[3 * triple], bits[3 * triple + 1]);
            if (fa, fb) != (a, b) {
                return Err(RuleError::CanonicalOrder {
                    triple,
                    expected_first: a,
                    expected_second: b,
                    found_first: fa,
                    found_second: fb,
                });
            }
        }
        Ok(RuleCode12 { bits })
    }

    /// Builds the canonical code with the given output column.
    pub fn from_outputs(outputs: [Bit; 4]) -> RuleCode12 {
        let mut bits = [Bit::Zero; 12];
        for (triple, &(a, b)) in CANONICAL_PAIRS.iter().enumerate() {
            bits[3 * triple] = a;
            bits[3 * triple + 1] = b;
            bits[3 * triple + 2] = outputs[triple];
        }
        RuleCode12 { bits }
    }

    pub fn outputs(&self) -> [Bit; 4] {
        [self.bits[2], self.bits[5], self.bits[8], self.bits[11]]
    }

    /// The rule as a two-input Boolean function.
    pub fn output(&self, first: Bit, second: Bit) -> Bit {
        self.bits[3 * (2 * first.index() + second.index()) + 2]
    }

    /// The 12-character code.
    pub fn code(&self) -> String {
        format_bits(&self.bits)
    }
}

impl std::fmt::Display for RuleCode12 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// The recurrent XOR rule `000011101110`.
pub fn pi_rule() -> RuleCode12 {
    RuleCode12::parse(PI_RULE_CODE).expect("constant code is canonical")
}

/// The parallel shift rule `000011100111`.
pub fn shift_rule() -> RuleCode12 {
    RuleCode12::parse(SHIFT_RULE_CODE).expect("constant code is canonical")
}

/// Identifies which of the sixteen two-input Boolean functions a rule's
/// output column realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BooleanFunctionId {
    /// Output column read as a 4-bit number (inputs in canonical order).
    pub id: u8,
    pub name: &'static str,
}

const FUNCTION_NAMES: [&str; 16] = [
    "constant-0",
    "AND",
    "first-and-not-second",
    "first",
    "not-first-and-second",
    "transfer",
    "XOR",
    "OR",
    "NOR",
    "XNOR",
    "not-second",
    "first-or-not-second",
    "not-first",
    "not-first-or-second",
    "NAND",
    "constant-1",
];

impl BooleanFunctionId {
    /// The output column as four binary digits, e.g. `0110`.
    pub fn column(&self) -> String {
        format!("{:04b}", self.id)
    }
}

impl std::fmt::Display for BooleanFunctionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ({})", self.name, self.column())
    }
}

/// Classifies a rule by its output column.
pub fn boolean_table(rule: &RuleCode12) -> BooleanFunctionId {
    let o = rule.outputs();
    let id = (o[0].value() << 3) | (o[1].value() << 2) | (o[2].value() << 1) | o[3].value();
    BooleanFunctionId { id, name: FUNCTION_NAMES[id as usize] }
}

/// Recurrent wiring over plain bit slices: `S[0] = s0`,
/// `S[n] = rule(program[n-1], S[n-1])`.
pub fn apply_pi_bits(rule: &RuleCode12, s0: Bit, program: &[Bit]) -> Vec<Bit> {
    let mut out = Vec::with_capacity(program.len() + 1);
    let mut current = s0;
    out.push(current);
    for &u in program {
        current = rule.output(u, current);
        out.push(current);
    }
    out
}

/// Recurrent wiring: the first `length` output bits driven by the program
/// stream. The recurrence is inherently sequential in `n`.
pub fn apply_pi(
    rule: &RuleCode12,
    s0: Bit,
    program: &BitStream,
    length: usize,
) -> Result<BitStream, StreamError> {
    if length == 0 {
        return Ok(BitStream::from_bits(Vec::new()));
    }
    let program_bits = program.materialize(length - 1)?;
    Ok(BitStream::from_bits(apply_pi_bits(rule, s0, &program_bits)))
}

/// Parallel wiring: `S'[n] = rule(S[n], S[n+1])`.
///
/// Each output bit needs its right neighbor, so a finite input of `k` bits
/// yields `length <= k - 1` output bits. An eventually-periodic input is
/// transformed structurally (the output is again eventually periodic with
/// the same period length) and `length` is not consulted.
pub fn apply_shift_rule(
    rule: &RuleCode12,
    s: &BitStream,
    length: usize,
) -> Result<BitStream, StreamError> {
    if let Some((head, period)) = s.cycle_parts() {
        let p = period.len();
        let at = |i: usize| {
            if i < head.len() {
                head[i]
            } else {
                period[(i - head.len()) % p]
            }
        };
        let new_head: Vec<Bit> =
            (0..head.len()).map(|i| rule.output(at(i), at(i + 1))).collect();
        let new_period: Vec<Bit> =
            (0..p).map(|j| rule.output(period[j], period[(j + 1) % p])).collect();
        return crate::streams::cycle_stream(&new_period, &new_head);
    }
    let input = s.materialize(length + 1)?;
    let out = (0..length).map(|n| rule.output(input[n], input[n + 1])).collect();
    Ok(BitStream::from_bits(out))
}

/// Iterates the shift rule: `[S_0, S_1, ..., S_steps]` with
/// `S_{k+1} = rule-170 step of S_k`. Every returned step supports a prefix
/// of at least `length` bits; finite inputs lose one bit per step, so the
/// input must be materializable to `length + steps`.
pub fn iterate_bernoulli(
    s0: &BitStream,
    steps: usize,
    length: usize,
) -> Result<Vec<BitStream>, StreamError> {
    let rule = shift_rule();
    let mut out = Vec::with_capacity(steps + 1);
    out.push(s0.clone());
    if s0.is_eventually_periodic() {
        let mut current = s0.clone();
        for _ in 0..steps {
            current = apply_shift_rule(&rule, &current, 0)?;
            out.push(current.clone());
        }
        return Ok(out);
    }
    let total = length
        .checked_add(steps)
        .ok_or(StreamError::HorizonExceeded { requested: usize::MAX, horizon: s0.horizon() })?;
    if s0.horizon() < total {
        return Err(StreamError::HorizonExceeded { requested: total, horizon: s0.horizon() });
    }
    let mut current = BitStream::from_bits(s0.materialize(total)?);
    for k in 1..=steps {
        current = apply_shift_rule(&rule, &current, total - k)?;
        out.push(current.clone());
    }
    Ok(out)
}

/// Independent oracle for the shift-rule dynamics: reads the bits as the
/// binary expansion `0.b1 b2 ...`, applies `x -> 2x mod 1` the given number
/// of times with exact integer arithmetic, and returns the expansion of the
/// result truncated to the bits that remain determined.
pub fn dyadic_doubling_oracle(x_bits: &[Bit], steps: usize) -> Result<Vec<Bit>, StreamError> {
    let len = x_bits.len();
    if steps > len {
        return Err(StreamError::HorizonExceeded { requested: steps, horizon: len });
    }
    let mut numerator = BigUint::from(0u8);
    for &b in x_bits {
        numerator = (numerator << 1) | BigUint::from(b.value());
    }
    let modulus = BigUint::from(1u8) << len;
    for _ in 0..steps {
        numerator = (numerator << 1) % &modulus;
    }
    Ok((0..len - steps)
        .map(|i| Bit::from(numerator.bit((len - 1 - i) as u64)))
        .collect())
}
