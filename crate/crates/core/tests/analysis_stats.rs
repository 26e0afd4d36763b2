//! Statistical behavior of the analysis pipeline at scale.

use morphic_core::{
    chaos_demonstration, enacting_program, estimate_transitions, independence_test,
    lz76_complexity, render_chaos_report, sample_random_string, Bit, IndependenceOutcome,
    ReportFormat,
};

/// Independent reference for the phrase count, working on the ASCII
/// rendering with substring search instead of bit slices.
fn lz76_reference(text: &str) -> u64 {
    let n = text.len();
    let mut count = 0u64;
    let mut pos = 0usize;
    while pos < n {
        let mut l = 1usize;
        while pos + l <= n && text[..pos + l - 1].contains(&text[pos..pos + l]) {
            l += 1;
        }
        pos += l.min(n - pos);
        count += 1;
    }
    count
}

#[test]
fn transition_matrices_follow_the_bernoulli_structure() {
    for (p_zero, seed) in [(0.3, 31u64), (0.5, 51), (0.7, 71)] {
        let length = 1_000_000;
        let s = sample_random_string(p_zero, length, seed).unwrap();
        let program = enacting_program(&s, length).unwrap();
        let est = estimate_transitions(&program, &s, length).unwrap();

        // Next-object rows are both (p0, 1-p0).
        for row in &est.object {
            assert!((row.probability(0).unwrap() - p_zero).abs() < 0.01);
            assert!((row.probability(1).unwrap() - (1.0 - p_zero)).abs() < 0.01);
        }
        // Operator rows: (p0, 1-p0) after a zero, mirrored after a one.
        assert!((est.fundament[0].probability(0).unwrap() - p_zero).abs() < 0.01);
        assert!((est.fundament[1].probability(0).unwrap() - (1.0 - p_zero)).abs() < 0.01);
        // Joint rows are unit vectors with no tolerance.
        assert!(est.joint_is_deterministic());
        assert_eq!(est.joint[0].counts[1], 0);
        assert_eq!(est.joint[1].counts[0], 0);
        assert_eq!(est.joint[2].counts[0], 0);
        assert_eq!(est.joint[3].counts[1], 0);
    }
}

#[test]
fn independence_holds_for_almost_all_seeds() {
    // Under the null the 1%-level test should pass about 99 of 100 runs;
    // demand at least 95.
    let mut below = 0;
    for seed in 0..100u64 {
        let s = sample_random_string(0.5, 1_000_000, 1000 + seed).unwrap();
        let report = independence_test(&s, 1_000_000).unwrap();
        if let IndependenceOutcome::Tested { below_critical: true, .. } = report.outcome { below += 1 }
    }
    assert!(below >= 95, "only {below} of 100 runs below the critical value");
}

#[test]
fn lz76_matches_an_independent_reference_at_scale() {
    let length = 10_000;
    let s = sample_random_string(0.5, length, 17).unwrap();
    let report = lz76_complexity(&s, length).unwrap();
    let text: String = s
        .materialize(length)
        .unwrap()
        .iter()
        .map(|b| if *b == Bit::Zero { '0' } else { '1' })
        .collect();
    assert_eq!(report.phrases, lz76_reference(&text));
    assert!((0.8..=1.2).contains(&report.normalized), "normalized {}", report.normalized);
}

#[test]
fn lz76_reference_agrees_on_structured_inputs() {
    for text in ["0".repeat(2000), "01".repeat(1000), "0011".repeat(500)] {
        let bits = morphic_core::parse_bits(&text).unwrap();
        let stream = morphic_core::BitStream::from_bits(bits);
        let report = lz76_complexity(&stream, text.len()).unwrap();
        assert_eq!(report.phrases, lz76_reference(&text), "on {}", &text[..8]);
        assert!(report.normalized < 0.1);
    }
}

#[test]
fn demonstration_reports_are_byte_identical_across_runs() {
    let length = 1_000_000;
    let first = chaos_demonstration(0.5, length, 7).unwrap();
    let second = chaos_demonstration(0.5, length, 7).unwrap();
    for format in [ReportFormat::Plain, ReportFormat::Csv, ReportFormat::JsonLines] {
        assert_eq!(
            render_chaos_report(&first, format),
            render_chaos_report(&second, format)
        );
    }
    assert!(first.analysis.transitions.joint_is_deterministic());
    match first.analysis.independence.outcome {
        IndependenceOutcome::Tested { below_critical, .. } => assert!(below_critical),
        IndependenceOutcome::NoVariation => panic!("fair sampling cannot be degenerate"),
    }
}

#[test]
fn custom_critical_value_is_respected() {
    let s = sample_random_string(0.5, 100_000, 5).unwrap();
    let strict = morphic_core::analysis::independence_test_with(&s, 100_000, 1e-12).unwrap();
    match strict.outcome {
        IndependenceOutcome::Tested { critical_value, below_critical, .. } => {
            assert_eq!(critical_value, 1e-12);
            assert!(!below_critical);
        }
        IndependenceOutcome::NoVariation => panic!("expected a test"),
    }
}
