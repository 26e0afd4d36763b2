//! The chain/string correspondence at finite-prefix scale.
//!
//! Every binary string is the object sequence of exactly one keep/flip
//! operator chain: the initial object is the first bit and each operator bit
//! is the XOR of two consecutive string bits. Conversely the recurrent XOR
//! rule replays a program into its object sequence. [`morphic_compress`]
//! packages the two directions as a verified certificate: a fixed 12-bit
//! rule plus the extracted program reproduce the input exactly.
//!
//! The certificate deliberately does not shrink the data: the program is as
//! long as the string. What is small is the generative mechanism, the 12-bit
//! rule, which is the same for every input. This is a different notion from
//! algorithmic (Turing) compressibility, where most strings have no short
//! description at all.

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::automata::{apply_pi_bits, pi_rule, RuleCode12};
use crate::bit::{format_bits, parse_bits, Bit};
use crate::category::{FiniteChain, Operator};
use crate::streams::{BitStream, StreamError};

/// Schema tag carried by serialized certificates.
pub const CERTIFICATE_SCHEMA: &str = "morphic.certificate.v1";

#[derive(Clone, Debug, Error, PartialEq)]
pub enum BridgeError {
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error("a program needs at least one object; prefix length must be positive")]
    EmptyPrefix,
    /// Replaying the extracted program failed to reproduce the input. This
    /// signals a bug in the library, not bad input.
    #[error("internal verification failure: replay differs from source at bit {index}")]
    RoundTripMismatch { index: usize },
    #[error("invalid certificate: {0}")]
    Certificate(String),
}

/// An initial object plus a keep/flip operator string, `0` for keep and `1`
/// for flip. Its length counts the objects of the chain it induces, one
/// more than the number of operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphicProgram {
    pub s0: Bit,
    pub operators: Vec<Bit>,
}

impl MorphicProgram {
    pub fn new(s0: Bit, operators: Vec<Bit>) -> MorphicProgram {
        MorphicProgram { s0, operators }
    }

    /// Number of objects in the induced chain (`operators + 1`).
    pub fn len(&self) -> usize {
        self.operators.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The induced chain of keep/flip morphisms. Never fails: keep and flip
    /// are defined on both objects.
    pub fn to_chain(&self) -> FiniteChain {
        let fundaments =
            self.operators.iter().map(|&b| Operator::from_program_bit(b)).collect();
        FiniteChain::derive(self.s0, fundaments).expect("keep/flip chains always derive")
    }
}

/// Maps a program to its object sequence (the string direction of the
/// correspondence), replayed through the recurrent XOR rule.
pub fn chain_to_string(program: &MorphicProgram) -> BitStream {
    BitStream::from_bits(apply_pi_bits(&pi_rule(), program.s0, &program.operators))
}

/// Maps a string prefix to the unique program that replays it: the first
/// bit seeds the chain and consecutive bits XOR into the operator string.
pub fn string_to_chain(s: &BitStream, length: usize) -> Result<MorphicProgram, BridgeError> {
    if length == 0 {
        return Err(BridgeError::EmptyPrefix);
    }
    let bits = s.materialize(length)?;
    let operators = bits.windows(2).map(|w| w[0].xor(w[1])).collect();
    Ok(MorphicProgram { s0: bits[0], operators })
}

/// The constant 12-bit rule together with a program that provably replays
/// the source prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionCertificate {
    /// Always the recurrent XOR rule.
    pub rule: RuleCode12,
    pub program: MorphicProgram,
    pub reproduced_prefix_length: usize,
    /// SHA-256 of the reproduced prefix in ASCII `0`/`1` form.
    pub digest: String,
}

fn prefix_digest(bits: &[Bit]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format_bits(bits).as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Extracts the program for a string prefix and verifies the round trip
/// before issuing the certificate.
pub fn morphic_compress(
    s: &BitStream,
    length: usize,
) -> Result<CompressionCertificate, BridgeError> {
    let source = s.materialize(length)?;
    let program = string_to_chain(s, length)?;
    let replayed = apply_pi_bits(&pi_rule(), program.s0, &program.operators);
    if let Some(index) = source.iter().zip(&replayed).position(|(a, b)| a != b) {
        return Err(BridgeError::RoundTripMismatch { index });
    }
    if replayed.len() != source.len() {
        return Err(BridgeError::RoundTripMismatch { index: source.len().min(replayed.len()) });
    }
    Ok(CompressionCertificate {
        rule: pi_rule(),
        program,
        reproduced_prefix_length: length,
        digest: prefix_digest(&source),
    })
}

impl CompressionCertificate {
    /// Structured text record, one field per line.
    pub fn render_text(&self) -> String {
        format!(
            "schema: {}\nrule: {}\ns0: {}\noperators: {}\nlength: {}\ndigest: sha256:{}\n",
            CERTIFICATE_SCHEMA,
            self.rule.code(),
            self.program.s0,
            format_bits(&self.program.operators),
            self.reproduced_prefix_length,
            self.digest,
        )
    }

    /// Parses the text record produced by [`CompressionCertificate::render_text`].
    pub fn parse_text(text: &str) -> Result<CompressionCertificate, BridgeError> {
        let mut schema = None;
        let mut rule = None;
        let mut s0 = None;
        let mut operators = None;
        let mut length = None;
        let mut digest = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| BridgeError::Certificate(format!("missing ':' in {line:?}")))?;
            let value = value.trim();
            match key.trim() {
                "schema" => schema = Some(value.to_string()),
                "rule" => {
                    rule = Some(RuleCode12::parse(value).map_err(|e| {
                        BridgeError::Certificate(format!("bad rule: {e}"))
                    })?)
                }
                "s0" => {
                    s0 = Some(match value {
                        "0" => Bit::Zero,
                        "1" => Bit::One,
                        other => {
                            return Err(BridgeError::Certificate(format!("bad s0 {other:?}")))
                        }
                    })
                }
                "operators" => {
                    operators = Some(parse_bits(value).map_err(|e| {
                        BridgeError::Certificate(format!("bad operators: {e}"))
                    })?)
                }
                "length" => {
                    length = Some(value.parse::<usize>().map_err(|e| {
                        BridgeError::Certificate(format!("bad length: {e}"))
                    })?)
                }
                "digest" => {
                    let value = value.strip_prefix("sha256:").ok_or_else(|| {
                        BridgeError::Certificate("digest must start with sha256:".into())
                    })?;
                    digest = Some(value.to_string());
                }
                other => {
                    return Err(BridgeError::Certificate(format!("unknown field {other:?}")))
                }
            }
        }
        match schema.as_deref() {
            Some(CERTIFICATE_SCHEMA) => {}
            Some(other) => {
                return Err(BridgeError::Certificate(format!("unknown schema {other:?}")))
            }
            None => return Err(BridgeError::Certificate("missing schema".into())),
        }
        let missing = |what: &str| BridgeError::Certificate(format!("missing {what}"));
        let cert = CompressionCertificate {
            rule: rule.ok_or_else(|| missing("rule"))?,
            program: MorphicProgram {
                s0: s0.ok_or_else(|| missing("s0"))?,
                operators: operators.ok_or_else(|| missing("operators"))?,
            },
            reproduced_prefix_length: length.ok_or_else(|| missing("length"))?,
            digest: digest.ok_or_else(|| missing("digest"))?,
        };
        if cert.reproduced_prefix_length != cert.program.len() {
            return Err(BridgeError::Certificate(format!(
                "length {} does not match {} operators + 1",
                cert.reproduced_prefix_length,
                cert.program.operators.len()
            )));
        }
        Ok(cert)
    }

    /// Replays the program and checks it against the recorded digest.
    pub fn replay(&self) -> Result<BitStream, BridgeError> {
        let bits = apply_pi_bits(&self.rule, self.program.s0, &self.program.operators);
        let digest = prefix_digest(&bits);
        if digest != self.digest {
            return Err(BridgeError::Certificate(format!(
                "digest mismatch: recorded {}, replayed {}",
                self.digest, digest
            )));
        }
        Ok(BitStream::from_bits(bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bit::parse_bits;

    fn bits(s: &str) -> Vec<Bit> {
        parse_bits(s).unwrap()
    }

    fn program(s0: u8, ops: &str) -> MorphicProgram {
        let s0 = if s0 == 0 { Bit::Zero } else { Bit::One };
        MorphicProgram::new(s0, bits(ops))
    }

    #[test]
    fn program_replays_to_its_object_sequence() {
        let s = chain_to_string(&program(0, "00010011001"));
        assert_eq!(s.materialize(12).unwrap(), bits("000011101110"));

        let constant = chain_to_string(&program(0, "0000000"));
        assert_eq!(constant.materialize(8).unwrap(), bits("00000000"));

        let alternating = chain_to_string(&program(1, "111"));
        assert_eq!(alternating.materialize(4).unwrap(), bits("1010"));
    }

    #[test]
    fn string_extracts_its_unique_program() {
        let s = BitStream::from_bits(bits("000011101110"));
        assert_eq!(string_to_chain(&s, 12).unwrap(), program(0, "00010011001"));

        let constant = BitStream::from_bits(bits("0000"));
        assert_eq!(string_to_chain(&constant, 4).unwrap(), program(0, "000"));

        let alternating = BitStream::from_bits(bits("0101"));
        assert_eq!(string_to_chain(&alternating, 4).unwrap(), program(0, "111"));
    }

    #[test]
    fn zero_length_prefix_is_rejected() {
        let s = BitStream::from_bits(bits("01"));
        assert_eq!(string_to_chain(&s, 0), Err(BridgeError::EmptyPrefix));
    }

    #[test]
    fn compression_verifies_the_round_trip() {
        let s = BitStream::bernoulli(0.5, 99, 1024).unwrap();
        let cert = morphic_compress(&s, 1024).unwrap();
        assert_eq!(cert.rule.code(), crate::automata::PI_RULE_CODE);
        assert_eq!(cert.program.len(), 1024);
        assert_eq!(
            cert.replay().unwrap().materialize(1024).unwrap(),
            s.materialize(1024).unwrap()
        );
    }

    #[test]
    fn all_ones_compress_to_a_constant_chain() {
        let s = crate::streams::cycle_stream(&bits("1"), &[]).unwrap();
        let cert = morphic_compress(&s, 6).unwrap();
        assert_eq!(cert.program, program(1, "00000"));
    }

    #[test]
    fn certificate_text_round_trips() {
        let s = BitStream::from_bits(bits("000011101110"));
        let cert = morphic_compress(&s, 12).unwrap();
        let text = cert.render_text();
        let parsed = CompressionCertificate::parse_text(&text).unwrap();
        assert_eq!(parsed, cert);
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let s = BitStream::from_bits(bits("0110"));
        let mut cert = morphic_compress(&s, 4).unwrap();
        cert.program.operators[0] = cert.program.operators[0].flip();
        assert!(cert.replay().is_err());
    }

    #[test]
    fn compressing_twice_equals_compressing_once() {
        let s = BitStream::bernoulli(0.5, 5, 64).unwrap();
        let once = morphic_compress(&s, 64).unwrap();
        let replay = once.replay().unwrap();
        let twice = morphic_compress(&replay, 64).unwrap();
        assert_eq!(once, twice);
    }
}
