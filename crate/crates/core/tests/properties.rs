// SPDX-License-Identifier: Apache-2.0

use fftgen_core::codegen::{emit_fft_suite, lint_structural, render_files, EmitConfig};
use fftgen_core::flowgraph::{build_graph, elaborate, output_permutation, validate_precedence, OutputOrder};
use fftgen_core::oracle::{fft_fixed_reference, first_mismatch, input_bound, random_vector};
use fftgen_core::sim::{simulate, SimConfig, SyncMode};
use fftgen_core::twiddle::{decode_word, twiddle_table};
use fftgen_core::ScalingMode;
use proptest::prelude::*;

fn mode() -> impl Strategy<Value = ScalingMode> {
    prop_oneof![Just(ScalingMode::PerStageHalving), Just(ScalingMode::None)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Chained enables make the schedule irrelevant to the result.
    #[test]
    fn chained_sim_matches_reference(
        log_n in 1u32..=7,
        width in 4u32..=32,
        mode in mode(),
        bf in 1u64..=4,
        cm in 1u64..=8,
        jitter in 0u64..=4,
        seed in any::<u64>(),
    ) {
        let n = 1usize << log_n;
        let x = random_vector(n, width, input_bound(n, width, mode), seed);
        let cfg = SimConfig {
            butterfly_latency: bf,
            cmult_latency: cm,
            scaling: mode,
            sync: SyncMode::StageChained,
            seed,
            jitter,
        };
        let (y, trace) = simulate(&build_graph(n).unwrap(), &x, &cfg).unwrap();
        prop_assert!(trace.violations.is_empty());
        prop_assert_eq!(first_mismatch(&y, &fft_fixed_reference(&x, mode).unwrap()), None);
    }

    #[test]
    fn emitted_suite_lints_clean(
        log_n in 1u32..=6,
        width in 4u32..=32,
        delay in 1u32..=6,
        sync in any::<bool>(),
        natural in any::<bool>(),
        mode in mode(),
    ) {
        let mut cfg = EmitConfig::new(1 << log_n, width);
        cfg.cmult_delay = delay;
        cfg.sync = if sync { SyncMode::StageChained } else { SyncMode::Disabled };
        cfg.order = if natural { OutputOrder::Natural } else { OutputOrder::Raw };
        cfg.scaling = mode;
        let text: String = render_files(&emit_fft_suite(&cfg).unwrap()).into_iter().map(|(_, t)| t).collect();
        let diags = lint_structural(&text);
        prop_assert!(diags.is_empty(), "{:?}", diags);
    }

    #[test]
    fn twiddle_words_round_trip(log_n in 1u32..=10, width in 4u32..=32) {
        let n = 1usize << log_n;
        for tw in twiddle_table(n, width).unwrap() {
            prop_assert_eq!(decode_word(tw.word, width).unwrap(), tw.fixed);
            prop_assert!(u128::from(tw.word) < 1u128 << (2 * width));
        }
    }
}

#[test]
fn elaborated_graphs_have_forward_precedence() {
    for log_n in 1..=8 {
        let n = 1usize << log_n;
        validate_precedence(&build_graph(n).unwrap()).unwrap();
        validate_precedence(&elaborate(n).unwrap()).unwrap();
    }
}

#[test]
fn output_permutation_is_an_involution() {
    for log_n in 1..=10 {
        let p = output_permutation(1 << log_n).unwrap();
        assert!(p.iter().enumerate().all(|(i, &j)| p[j] == i));
    }
}
