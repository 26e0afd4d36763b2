//! Finite-prefix and eventually-periodic views of infinite binary strings.
//!
//! A [`BitStream`] is an explicit head of bits followed by a tail that is one
//! of: nothing (a plain prefix-only approximation of an infinite string), an
//! infinitely repeated period, or a seeded pseudo-random source. The text
//! form is `PREFIX` or `PREFIX(PERIOD)`, e.g. `1(10)` for `1101010...`.
//!
//! Distances between streams are powers of two determined by the longest
//! common prefix and are kept in exact exponent form; no floating point is
//! involved, so metric properties can be tested exactly.

use std::fmt;
use std::sync::{Arc, Mutex};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bit::{format_bits, parse_bits, Bit};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum StreamError {
    #[error("requested {requested} bits but only {horizon} are materializable")]
    HorizonExceeded { requested: usize, horizon: usize },
    #[error("cycle period must be non-empty")]
    EmptyPeriod,
    #[error("probability must lie in [0, 1], got {value}")]
    InvalidProbability { value: f64 },
    #[error("invalid stream text: {0}")]
    Text(String),
}

/// A deterministic seeded source of independent bits with `P[bit = 0] = p_zero`.
///
/// Materialized bits are memoized behind a mutex, so concurrent readers of
/// the same source always observe identical bits.
#[derive(Debug)]
pub struct BernoulliSource {
    p_zero: f64,
    seed: u64,
    cache: Mutex<SourceCache>,
}

#[derive(Debug)]
struct SourceCache {
    rng: ChaCha8Rng,
    bits: Vec<Bit>,
}

impl BernoulliSource {
    fn new(p_zero: f64, seed: u64) -> Result<BernoulliSource, StreamError> {
        if !(0.0..=1.0).contains(&p_zero) {
            return Err(StreamError::InvalidProbability { value: p_zero });
        }
        Ok(BernoulliSource {
            p_zero,
            seed,
            cache: Mutex::new(SourceCache {
                rng: ChaCha8Rng::seed_from_u64(seed),
                bits: Vec::new(),
            }),
        })
    }

    fn range(&self, start: usize, end: usize) -> Vec<Bit> {
        let mut cache = self.cache.lock().expect("bit source poisoned");
        while cache.bits.len() < end {
            let bit = if cache.rng.gen_bool(self.p_zero) {
                Bit::Zero
            } else {
                Bit::One
            };
            cache.bits.push(bit);
        }
        cache.bits[start..end].to_vec()
    }
}

#[derive(Clone, Debug)]
enum Tail {
    /// The stream ends with the head; it stands for an unknown point of
    /// which only this prefix is known.
    Finite,
    /// The head is followed by this period repeated forever.
    Cycle(Vec<Bit>),
    /// The head is followed by `len` bits of a seeded source, starting
    /// `skip` bits into it.
    Random {
        source: Arc<BernoulliSource>,
        skip: usize,
        len: usize,
    },
}

/// A point of the space of infinite binary strings, represented exactly
/// (eventually periodic), generatively (seeded source), or as a bare prefix.
#[derive(Clone, Debug)]
pub struct BitStream {
    head: Vec<Bit>,
    tail: Tail,
}

impl BitStream {
    /// A prefix-only stream: exactly these bits are known.
    pub fn from_bits(bits: Vec<Bit>) -> BitStream {
        BitStream { head: bits, tail: Tail::Finite }
    }

    /// Seeded independent bits with `P[bit = 0] = p_zero`, materializable to
    /// `length`. The same `(p_zero, seed)` always yields the same stream.
    pub fn bernoulli(p_zero: f64, seed: u64, length: usize) -> Result<BitStream, StreamError> {
        Ok(BitStream {
            head: Vec::new(),
            tail: Tail::Random {
                source: Arc::new(BernoulliSource::new(p_zero, seed)?),
                skip: 0,
                len: length,
            },
        })
    }

    /// Maximum materializable length. Eventually-periodic streams have no
    /// bound and report `usize::MAX`.
    pub fn horizon(&self) -> usize {
        match &self.tail {
            Tail::Finite => self.head.len(),
            Tail::Cycle(_) => usize::MAX,
            Tail::Random { len, .. } => self.head.len() + len,
        }
    }

    /// Whether the stream is backed by an infinitely repeating period.
    pub fn is_eventually_periodic(&self) -> bool {
        matches!(self.tail, Tail::Cycle(_))
    }

    /// The (preperiod, period) parts of an eventually-periodic stream.
    pub(crate) fn cycle_parts(&self) -> Option<(&[Bit], &[Bit])> {
        match &self.tail {
            Tail::Cycle(period) => Some((&self.head, period)),
            _ => None,
        }
    }

    /// The first `len` bits.
    pub fn materialize(&self, len: usize) -> Result<Vec<Bit>, StreamError> {
        if len > self.horizon() {
            return Err(StreamError::HorizonExceeded { requested: len, horizon: self.horizon() });
        }
        let take_head = len.min(self.head.len());
        let mut out = self.head[..take_head].to_vec();
        let need = len - take_head;
        if need > 0 {
            match &self.tail {
                Tail::Finite => unreachable!("horizon check bounds finite streams"),
                Tail::Cycle(period) => {
                    out.extend((0..need).map(|i| period[i % period.len()]));
                }
                Tail::Random { source, skip, .. } => {
                    out.extend(source.range(*skip, *skip + need));
                }
            }
        }
        Ok(out)
    }

    /// Text rendering of the first `len` bits.
    pub fn render_prefix(&self, len: usize) -> Result<String, StreamError> {
        Ok(format_bits(&self.materialize(len)?))
    }

    /// Parses `PREFIX` or `PREFIX(PERIOD)` text.
    pub fn parse(text: &str) -> Result<BitStream, StreamError> {
        let bad = |e: crate::bit::BitParseError| StreamError::Text(e.to_string());
        match text.find('(') {
            None => Ok(BitStream::from_bits(parse_bits(text).map_err(bad)?)),
            Some(open) => {
                let inner = &text[open + 1..];
                let close = inner
                    .find(')')
                    .ok_or_else(|| StreamError::Text("missing ')'".into()))?;
                if close + 1 != inner.len() {
                    return Err(StreamError::Text("text after ')'".into()));
                }
                let prefix = parse_bits(&text[..open]).map_err(bad)?;
                let period = parse_bits(&inner[..close]).map_err(bad)?;
                cycle_stream(&period, &prefix)
            }
        }
    }

    /// Structural equality of the known point: cycles compare by canonical
    /// form, seeded streams by source parameters and offset. Prefix-only
    /// streams denote unknown points and are never provably equal unless
    /// they are the same value passed twice (handled by the metric).
    pub fn same_point(&self, other: &BitStream) -> bool {
        match (&self.tail, &other.tail) {
            (Tail::Cycle(p1), Tail::Cycle(p2)) => {
                canonical_cycle(&self.head, p1) == canonical_cycle(&other.head, p2)
            }
            (
                Tail::Random { source: s1, skip: k1, .. },
                Tail::Random { source: s2, skip: k2, .. },
            ) => {
                s1.p_zero.to_bits() == s2.p_zero.to_bits()
                    && s1.seed == s2.seed
                    && k1 == k2
                    && self.head == other.head
            }
            _ => false,
        }
    }
}

impl PartialEq for BitStream {
    fn eq(&self, other: &BitStream) -> bool {
        if self.head != other.head {
            return false;
        }
        match (&self.tail, &other.tail) {
            (Tail::Finite, Tail::Finite) => true,
            (Tail::Cycle(a), Tail::Cycle(b)) => a == b,
            (
                Tail::Random { source: s1, skip: k1, len: l1 },
                Tail::Random { source: s2, skip: k2, len: l2 },
            ) => {
                s1.p_zero.to_bits() == s2.p_zero.to_bits()
                    && s1.seed == s2.seed
                    && k1 == k2
                    && l1 == l2
            }
            _ => false,
        }
    }
}

impl Eq for BitStream {}

impl fmt::Display for BitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tail {
            Tail::Finite => write!(f, "{}", format_bits(&self.head)),
            Tail::Cycle(period) => {
                write!(f, "{}({})", format_bits(&self.head), format_bits(period))
            }
            Tail::Random { .. } => {
                let bits = self.materialize(self.horizon()).expect("within horizon");
                write!(f, "{}", format_bits(&bits))
            }
        }
    }
}

/// The eventually-periodic stream `preperiod . period . period . ...`.
pub fn cycle_stream(period: &[Bit], preperiod: &[Bit]) -> Result<BitStream, StreamError> {
    if period.is_empty() {
        return Err(StreamError::EmptyPeriod);
    }
    Ok(BitStream { head: preperiod.to_vec(), tail: Tail::Cycle(period.to_vec()) })
}

/// Whether the first `|w|` bits of `x` equal `w`.
pub fn is_prefix(w: &[Bit], x: &BitStream) -> Result<bool, StreamError> {
    Ok(x.materialize(w.len())? == w)
}

/// An exact dyadic distance between two streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefixDistance {
    /// The streams are provably the same point: distance exactly 0.
    Zero,
    /// The longest common prefix has length `n`: distance exactly `2^-n`.
    Exponent(usize),
    /// The streams agree through the whole comparison window of length `n`
    /// but equality is not provable: distance at most `2^-n`.
    AtMostExponent(usize),
}

impl fmt::Display for PrefixDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrefixDistance::Zero => write!(f, "0"),
            PrefixDistance::Exponent(0) => write!(f, "1"),
            PrefixDistance::Exponent(n) => write!(f, "2^-{n}"),
            PrefixDistance::AtMostExponent(n) => write!(f, "<=2^-{n}"),
        }
    }
}

/// Distance `2^-n` where `n` is the longest common prefix length, compared
/// through at most `horizon` bits (clamped to what both streams can
/// materialize). Provably equal points yield exactly [`PrefixDistance::Zero`].
pub fn prefix_metric(x: &BitStream, y: &BitStream, horizon: usize) -> PrefixDistance {
    if std::ptr::eq(x, y) || x.same_point(y) {
        return PrefixDistance::Zero;
    }
    let window = horizon.min(x.horizon()).min(y.horizon());
    let xs = x.materialize(window).expect("within horizon");
    let ys = y.materialize(window).expect("within horizon");
    match xs.iter().zip(&ys).position(|(a, b)| a != b) {
        Some(n) => PrefixDistance::Exponent(n),
        None => PrefixDistance::AtMostExponent(window),
    }
}

/// Outcome of a bounded search for eventual periodicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleReport {
    Detected {
        preperiod_length: usize,
        /// The primitive (minimal) period.
        period: Vec<Bit>,
        /// Length of the period.
        cycle_number: usize,
    },
    /// No cycle is confirmable from the materialized window; the horizon is
    /// a lower-bound witness, never a claim of aperiodicity.
    NotDetected { horizon: usize },
}

impl CycleReport {
    pub fn detected(&self) -> bool {
        matches!(self, CycleReport::Detected { .. })
    }
}

/// Knuth-Morris-Pratt prefix function: `pi[i]` is the length of the longest
/// proper border of `bits[..=i]`.
fn prefix_function(bits: &[Bit]) -> Vec<usize> {
    let mut pi = vec![0usize; bits.len()];
    for i in 1..bits.len() {
        let mut k = pi[i - 1];
        while k > 0 && bits[i] != bits[k] {
            k = pi[k - 1];
        }
        if bits[i] == bits[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi
}

/// Searches for the lexicographically smallest (preperiod length, period
/// length) pair consistent with the materialized window.
///
/// A candidate only counts as detected when it is actually confirmed by the
/// data: the preperiod may take up at most half the window, and the period
/// must repeat through the remainder at least twice in full. Under-supported
/// fits (a "period" glimpsed once at the end of the window) are rejected, so
/// seeded random streams report not-detected rather than a spurious cycle.
pub fn detect_cycle(x: &BitStream, horizon: usize) -> CycleReport {
    let n = horizon.min(x.horizon());
    let bits = x.materialize(n).expect("within horizon");

    // Minimal period of the suffix bits[q..] = m - (longest border of the
    // suffix), and borders of a suffix are borders of a prefix of the
    // reversed string: one prefix-function pass answers every q.
    let reversed: Vec<Bit> = bits.iter().rev().copied().collect();
    let pi = prefix_function(&reversed);

    for preperiod in 0..=n / 2 {
        let m = n - preperiod;
        if m == 0 {
            break;
        }
        let period_len = m - pi[m - 1];
        if period_len <= m / 2 {
            let period = bits[preperiod..preperiod + period_len].to_vec();
            debug_assert_eq!(primitive_root(&period).len(), period.len());
            return CycleReport::Detected {
                preperiod_length: preperiod,
                cycle_number: period.len(),
                period,
            };
        }
    }
    CycleReport::NotDetected { horizon: n }
}

/// Drops the first `k` bits. Eventually-periodic structure is preserved:
/// shifting into the cycle rotates the period in place.
pub fn shift(x: &BitStream, k: usize) -> Result<BitStream, StreamError> {
    if k > x.horizon() {
        return Err(StreamError::HorizonExceeded { requested: k, horizon: x.horizon() });
    }
    if k <= x.head.len() {
        return Ok(BitStream { head: x.head[k..].to_vec(), tail: x.tail.clone() });
    }
    let extra = k - x.head.len();
    let tail = match &x.tail {
        Tail::Finite => unreachable!("horizon check bounds finite streams"),
        Tail::Cycle(period) => {
            let r = extra % period.len();
            let mut rotated = period[r..].to_vec();
            rotated.extend_from_slice(&period[..r]);
            Tail::Cycle(rotated)
        }
        Tail::Random { source, skip, len } => Tail::Random {
            source: Arc::clone(source),
            skip: skip + extra,
            len: len - extra,
        },
    };
    Ok(BitStream { head: Vec::new(), tail })
}

/// Shortest `d` dividing the length such that the period is `d`-periodic.
fn primitive_root(period: &[Bit]) -> &[Bit] {
    let p = period.len();
    'candidates: for d in 1..=p / 2 {
        if !p.is_multiple_of(d) {
            continue;
        }
        for i in d..p {
            if period[i] != period[i - d] {
                continue 'candidates;
            }
        }
        return &period[..d];
    }
    period
}

/// Canonical (preperiod, primitive period) form of an eventually-periodic
/// stream: the period is reduced to its primitive root, then the preperiod
/// is shortened as long as its last bit already matches the rotating period.
fn canonical_cycle(head: &[Bit], period: &[Bit]) -> (Vec<Bit>, Vec<Bit>) {
    let mut per = primitive_root(period).to_vec();
    let mut pre = head.to_vec();
    while let Some(&last) = pre.last() {
        if last == *per.last().expect("period non-empty") {
            pre.pop();
            per.rotate_right(1);
        } else {
            break;
        }
    }
    (pre, per)
}
