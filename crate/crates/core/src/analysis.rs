//! Statistical analysis of object sequences and their programs.
//!
//! The pipeline samples (or receives) a bit string, extracts the unique
//! program that generates it, and then looks at the same data from two
//! sides: conditioned on the previous object alone the sequence is a
//! Bernoulli process, while conditioned on the previous object and the
//! operator bit every transition is fully determined. Counts are kept as
//! exact integers; derived probabilities are emitted as reduced fractions
//! plus decimal renderings, so row sums are exact by construction.
//!
//! Randomness of the raw sequence is gauged by a normalized Lempel-Ziv 1976
//! phrase count. This is a computable proxy for algorithmic
//! incompressibility, not the real thing, and reports label it as such.

use thiserror::Error;

use crate::bit::Bit;
use crate::bridge::{string_to_chain, BridgeError, MorphicProgram};
use crate::lz76;
use crate::streams::{BitStream, StreamError};

/// Chi-square critical value at the 1% level with one degree of freedom.
pub const DEFAULT_CHI_SQUARE_CRITICAL: f64 = 6.635;

/// Statistical floor under which the pipeline refuses to run.
pub const MIN_ANALYSIS_LENGTH: usize = 1000;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
    #[error("need at least {minimum} bits, got {found}")]
    TooShort { minimum: usize, found: usize },
    #[error("program of {program} objects cannot generate {length} objects")]
    ProgramTooShort { program: usize, length: usize },
    #[error("program does not generate the string: first mismatch at bit {index}")]
    ProgramMismatch { index: usize },
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One row of empirical counts over the two-column outcome alphabet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CountRow {
    pub counts: [u64; 2],
}

impl CountRow {
    fn record(&mut self, outcome: Bit) {
        self.counts[outcome.index()] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts[0] + self.counts[1]
    }

    /// Reduced fraction `count/total` for a column; `None` when the row has
    /// no samples.
    pub fn fraction(&self, column: usize) -> Option<(u64, u64)> {
        let total = self.total();
        if total == 0 {
            return None;
        }
        let count = self.counts[column];
        let d = gcd(count, total).max(1);
        Some((count / d, total / d))
    }

    pub fn probability(&self, column: usize) -> Option<f64> {
        let total = self.total();
        (total != 0).then(|| self.counts[column] as f64 / total as f64)
    }

    /// A populated row whose mass sits entirely in one column.
    pub fn is_unit(&self) -> bool {
        self.total() > 0 && (self.counts[0] == 0 || self.counts[1] == 0)
    }
}

/// Empirical conditional distributions of a (program, string) pair.
///
/// Rows are indexed by the conditioning event, columns by the outcome:
/// `object` conditions the next object on the previous one, `fundament`
/// conditions the operator bit on the previous object, and `joint`
/// conditions the next object on (previous object, operator) pairs in the
/// order 00, 01, 10, 11.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionEstimate {
    pub object: [CountRow; 2],
    pub fundament: [CountRow; 2],
    pub joint: [CountRow; 4],
    /// Number of transitions counted (`length - 1`).
    pub samples: u64,
}

impl TransitionEstimate {
    /// Every populated joint row is a unit vector: knowing the previous
    /// object and the operator bit leaves nothing random.
    pub fn joint_is_deterministic(&self) -> bool {
        self.joint.iter().all(|row| row.total() == 0 || row.is_unit())
    }
}

/// Counts object and operator transitions, after verifying that the program
/// really generates the string prefix.
pub fn estimate_transitions(
    program: &MorphicProgram,
    s: &BitStream,
    length: usize,
) -> Result<TransitionEstimate, AnalysisError> {
    if length < 2 {
        return Err(AnalysisError::TooShort { minimum: 2, found: length });
    }
    if program.len() < length {
        return Err(AnalysisError::ProgramTooShort { program: program.len(), length });
    }
    let bits = s.materialize(length)?;
    let replayed =
        crate::automata::apply_pi_bits(&crate::automata::pi_rule(), program.s0, &program.operators);
    if let Some(index) = replayed.iter().take(length).zip(&bits).position(|(a, b)| a != b) {
        return Err(AnalysisError::ProgramMismatch { index });
    }

    let mut object = [CountRow::default(); 2];
    let mut fundament = [CountRow::default(); 2];
    let mut joint = [CountRow::default(); 4];
    for n in 1..length {
        let prev = bits[n - 1];
        let cur = bits[n];
        let op = program.operators[n - 1];
        object[prev.index()].record(cur);
        fundament[prev.index()].record(op);
        joint[2 * prev.index() + op.index()].record(cur);
    }
    Ok(TransitionEstimate { object, fundament, joint, samples: (length - 1) as u64 })
}

/// Chi-square verdict for the 2x2 contingency table of consecutive objects.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IndependenceOutcome {
    Tested {
        statistic: f64,
        degrees_of_freedom: u32,
        critical_value: f64,
        /// Statistic below the critical value: independence not rejected.
        below_critical: bool,
    },
    /// A marginal is empty (constant or near-constant sequence); the
    /// statistic is undefined.
    NoVariation,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndependenceReport {
    /// `table[prev][cur]` counts consecutive-object pairs.
    pub table: [[u64; 2]; 2],
    pub outcome: IndependenceOutcome,
}

/// Pearson chi-square test of "the next object is independent of the
/// previous one" at the default 1% critical value.
pub fn independence_test(s: &BitStream, length: usize) -> Result<IndependenceReport, AnalysisError> {
    independence_test_with(s, length, DEFAULT_CHI_SQUARE_CRITICAL)
}

/// Same test with a caller-chosen critical value.
pub fn independence_test_with(
    s: &BitStream,
    length: usize,
    critical_value: f64,
) -> Result<IndependenceReport, AnalysisError> {
    if length < MIN_ANALYSIS_LENGTH {
        return Err(AnalysisError::TooShort { minimum: MIN_ANALYSIS_LENGTH, found: length });
    }
    let bits = s.materialize(length)?;
    let mut table = [[0u64; 2]; 2];
    for w in bits.windows(2) {
        table[w[0].index()][w[1].index()] += 1;
    }
    Ok(IndependenceReport { table, outcome: chi_square_outcome(&table, critical_value) })
}

fn chi_square_outcome(table: &[[u64; 2]; 2], critical_value: f64) -> IndependenceOutcome {
    let rows = [table[0][0] + table[0][1], table[1][0] + table[1][1]];
    let cols = [table[0][0] + table[1][0], table[0][1] + table[1][1]];
    if rows.contains(&0) || cols.contains(&0) {
        return IndependenceOutcome::NoVariation;
    }
    let n = rows[0] + rows[1];
    let diff = table[0][0] as i128 * table[1][1] as i128
        - table[0][1] as i128 * table[1][0] as i128;
    let denom = rows[0] as u128 * rows[1] as u128 * cols[0] as u128 * cols[1] as u128;
    let statistic = n as f64 * (diff as f64) * (diff as f64) / denom as f64;
    IndependenceOutcome::Tested {
        statistic,
        degrees_of_freedom: 1,
        critical_value,
        below_critical: statistic < critical_value,
    }
}

/// Normalized Lempel-Ziv phrase-count statistic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lz76Report {
    pub phrases: u64,
    pub length: usize,
    /// `phrases / (length / log2(length))`; near 1 for incompressible
    /// sequences, near 0 for eventually periodic ones.
    pub normalized: f64,
}

/// Phrase count of the first `length` bits, normalized by `length / log2(length)`.
pub fn lz76_complexity(s: &BitStream, length: usize) -> Result<Lz76Report, AnalysisError> {
    if length < 2 {
        return Err(AnalysisError::TooShort { minimum: 2, found: length });
    }
    let bits = s.materialize(length)?;
    Ok(lz76_of_bits(&bits))
}

fn lz76_of_bits(bits: &[Bit]) -> Lz76Report {
    let length = bits.len();
    let phrases = lz76::phrase_count(bits);
    let normalized = phrases as f64 * (length as f64).log2() / length as f64;
    Lz76Report { phrases, length, normalized }
}

/// Seeded independent draws with `P[bit = 0] = p_zero`; the same seed always
/// produces the same stream.
pub fn sample_random_string(
    p_zero: f64,
    length: usize,
    seed: u64,
) -> Result<BitStream, StreamError> {
    BitStream::bernoulli(p_zero, seed, length)
}

/// The unique program whose chain enacts the given string prefix. When the
/// string is a sequence of independent draws, the operator bits inherit the
/// conditional law that couples each operator to the previous object.
pub fn enacting_program(s: &BitStream, length: usize) -> Result<MorphicProgram, BridgeError> {
    string_to_chain(s, length)
}

/// Everything the pipeline measures about one string prefix.
#[derive(Clone, Debug, PartialEq)]
pub struct StreamAnalysis {
    pub length: usize,
    /// Zeros among the first `length` bits.
    pub zero_count: u64,
    pub transitions: TransitionEstimate,
    pub independence: IndependenceReport,
    pub lz76_source: Lz76Report,
    /// The same statistic for the extracted operator string.
    pub lz76_program: Lz76Report,
    /// The fixed 12-bit generating rule.
    pub rule_code: String,
    /// Set when the sequence shows no variation; the independence test is
    /// then skipped.
    pub degenerate: bool,
}

impl StreamAnalysis {
    pub fn marginal_zero(&self) -> (u64, u64) {
        (self.zero_count, self.length as u64)
    }
}

/// Runs the whole pipeline on a given stream: extract the program, count
/// transitions, test independence, and measure LZ76 complexity of both the
/// string and its program.
pub fn analyze_stream(s: &BitStream, length: usize) -> Result<StreamAnalysis, AnalysisError> {
    analyze_stream_with(s, length, DEFAULT_CHI_SQUARE_CRITICAL)
}

pub fn analyze_stream_with(
    s: &BitStream,
    length: usize,
    critical_value: f64,
) -> Result<StreamAnalysis, AnalysisError> {
    if length < MIN_ANALYSIS_LENGTH {
        return Err(AnalysisError::TooShort { minimum: MIN_ANALYSIS_LENGTH, found: length });
    }
    let bits = s.materialize(length)?;
    let program = string_to_chain(s, length)?;
    let transitions = estimate_transitions(&program, s, length)?;
    let independence = independence_test_with(s, length, critical_value)?;
    let degenerate = matches!(independence.outcome, IndependenceOutcome::NoVariation);
    let zero_count = bits.iter().filter(|&&b| b == Bit::Zero).count() as u64;
    Ok(StreamAnalysis {
        length,
        zero_count,
        lz76_source: lz76_of_bits(&bits),
        lz76_program: lz76_of_bits(&program.operators),
        transitions,
        independence,
        rule_code: crate::automata::PI_RULE_CODE.to_string(),
        degenerate,
    })
}

/// Parameters and outcome of one seeded end-to-end demonstration.
#[derive(Clone, Debug, PartialEq)]
pub struct ChaosReport {
    pub p_zero: f64,
    pub length: usize,
    pub seed: u64,
    pub analysis: StreamAnalysis,
}

/// End-to-end pipeline on a freshly sampled string: a deterministic 12-bit
/// mechanism plus a seeded program yields a sequence that is statistically
/// independent and LZ76-incompressible, while its joint transition matrix is
/// exactly deterministic.
pub fn chaos_demonstration(
    p_zero: f64,
    length: usize,
    seed: u64,
) -> Result<ChaosReport, AnalysisError> {
    let s = sample_random_string(p_zero, length, seed)?;
    let analysis = analyze_stream(&s, length)?;
    Ok(ChaosReport { p_zero, length, seed, analysis })
}
