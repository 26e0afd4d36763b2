//! The binary object alphabet and helpers for finite bit strings.

use std::fmt;

use thiserror::Error;

/// One of the two objects of the binary category.
#[derive(Clone, Copy, Debug, Hash, PartialEq, Eq, PartialOrd, Ord)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub fn flip(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }

    pub fn xor(self, other: Bit) -> Bit {
        if self == other {
            Bit::Zero
        } else {
            Bit::One
        }
    }

    pub fn value(self) -> u8 {
        match self {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }

    pub fn index(self) -> usize {
        self.value() as usize
    }

    pub fn from_char(c: char) -> Option<Bit> {
        match c {
            '0' => Some(Bit::Zero),
            '1' => Some(Bit::One),
            _ => None,
        }
    }
}

impl From<bool> for Bit {
    /// `true` maps to `One`.
    fn from(v: bool) -> Bit {
        if v {
            Bit::One
        } else {
            Bit::Zero
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A character outside the `{0,1}` alphabet.
#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("invalid bit character {character:?} at position {position}")]
pub struct BitParseError {
    pub position: usize,
    pub character: char,
}

/// Parses an ASCII `0`/`1` string into bits.
pub fn parse_bits(text: &str) -> Result<Vec<Bit>, BitParseError> {
    text.chars()
        .enumerate()
        .map(|(position, character)| {
            Bit::from_char(character).ok_or(BitParseError {
                position,
                character,
            })
        })
        .collect()
}

/// Renders bits as an ASCII `0`/`1` string.
pub fn format_bits(bits: &[Bit]) -> String {
    bits.iter().map(|b| char::from(b.value() + b'0')).collect()
}
