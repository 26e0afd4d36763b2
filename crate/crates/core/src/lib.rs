//! Binary category computation over infinite binary strings.
//!
//! The library models a two-object category whose non-identity morphisms
//! keep or flip a bit, chains of such morphisms, and 12-bit local-connection
//! rule codes that act on points of the space of infinite binary strings.
//! Two rules matter most: the recurrent XOR rule `000011101110`, which
//! replays an operator program into its object sequence, and the transfer
//! rule `000011100111`, which shifts a string left one cell per step and is
//! the doubling map on binary expansions (cellular automaton rule 170).
//!
//! Every binary string corresponds to exactly one operator chain, so any
//! string prefix — including a statistically random one — is reproduced by
//! the fixed 12-bit rule driven by its extracted program. The [`analysis`]
//! module measures that tension: transition matrices that are exactly
//! deterministic given the program, next to independence statistics and a
//! Lempel-Ziv randomness proxy for the bare sequence.
//!
//! All values are immutable and all operations are pure; seeded generators
//! memoize their bits behind a lock so concurrent readers agree.

pub mod analysis;
pub mod automata;
pub mod bit;
pub mod bridge;
pub mod category;
pub mod lz76;
pub mod report;
pub mod streams;

pub use analysis::{
    analyze_stream, chaos_demonstration, enacting_program, estimate_transitions,
    independence_test, lz76_complexity, sample_random_string, AnalysisError, ChaosReport,
    IndependenceOutcome, StreamAnalysis, TransitionEstimate,
};
pub use automata::{
    apply_pi, apply_shift_rule, boolean_table, dyadic_doubling_oracle, iterate_bernoulli,
    pi_rule, shift_rule, BooleanFunctionId, RuleCode12, RuleError, PI_RULE_CODE,
    SHIFT_RULE_CODE,
};
pub use bit::{format_bits, parse_bits, Bit};
pub use bridge::{
    chain_to_string, morphic_compress, string_to_chain, BridgeError, CompressionCertificate,
    MorphicProgram,
};
pub use category::{
    apply_operator, compose, fold_chain, validate_chain, CategoryError, ChainValidation,
    FiniteChain, Morphism, Operator,
};
pub use report::{
    frequency_series, render_chaos_report, render_stream_analysis, ReportFormat, REPORT_SCHEMA,
};
pub use streams::{
    cycle_stream, detect_cycle, is_prefix, prefix_metric, shift, BitStream, CycleReport,
    PrefixDistance, StreamError,
};
