// SPDX-License-Identifier: Apache-2.0

//! Reference transforms used to check the simulator.
//!
//! [`fft_fixed_reference`] walks the DIF recursion directly. It shares the
//! butterfly and multiplier primitives with the simulator but nothing else:
//! no graph, no schedule, and the output ordering comes from interleaving
//! rather than from a bit-reversal table.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fixedpoint::{butterfly_fixed, cmult_fixed, FixedComplex, ScalingMode};
use crate::twiddle::{twiddle_table, ComplexFloat};
use crate::{checked_log2, Error, Result};

/// Allowed error, in output LSBs, between a fixed-point transform and the
/// scaled float DFT of the same input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBounds {
    pub max_abs: f64,
    pub rms: f64,
}

/// Per-stage-halving bounds indexed by `log2(n) - 1`, pinned from 1000 seeded
/// disc-uniform full-scale inputs per size at W = 16 (worst measured max:
/// 0.50, 2.00, 2.61, 2.39, 2.35, 2.61, 2.72, 3.04, 3.10, 3.24 for n = 2..1024;
/// worst rms never above 0.96). The last two entries are extrapolated.
const HALVING_MAX_LSB: [f64; 12] = [1.0, 2.5, 3.0, 3.0, 3.0, 3.0, 3.5, 3.5, 3.5, 4.0, 4.5, 5.0];
const HALVING_RMS_LSB: f64 = 1.0;

/// Bounds used by `verify` and the float-fidelity acceptance check.
///
/// Unscaled designs take inputs bounded by [`input_bound`]; their rounding
/// error is amplified by every later butterfly, so the bound grows with
/// `sqrt(n)` (measured at n = 64: max 8.18, rms 1.75).
pub fn float_error_bounds(n: usize, mode: ScalingMode) -> ErrorBounds {
    let log = n.max(2).trailing_zeros() as usize;
    match mode {
        ScalingMode::PerStageHalving => {
            ErrorBounds { max_abs: HALVING_MAX_LSB[(log - 1).min(HALVING_MAX_LSB.len() - 1)], rms: HALVING_RMS_LSB }
        }
        ScalingMode::None => {
            let root = libm::sqrt(n as f64);
            ErrorBounds { max_abs: 1.5 * root, rms: 0.5 + 0.35 * root }
        }
    }
}

/// `X[m] = sum_i x[i] exp(-j 2 pi i m / n)`, by direct summation.
pub fn dft_float(x: &[ComplexFloat]) -> Vec<ComplexFloat> {
    let n = x.len();
    // roots[r] = exp(-j 2 pi r / n); i*m is reduced mod n to keep the angle small
    let roots: Vec<ComplexFloat> = (0..n).map(|r| ComplexFloat::from_angle(-2.0 * PI * r as f64 / n as f64)).collect();
    (0..n).map(|m| x.iter().enumerate().fold(ComplexFloat::ZERO, |acc, (i, &v)| acc + v * roots[(i * m) % n])).collect()
}

/// Recursive radix-2 decimation-in-time FFT in floating point.
pub fn fft_float(x: &[ComplexFloat]) -> Result<Vec<ComplexFloat>> {
    if x.len() != 1 {
        checked_log2(x.len())?;
    }
    Ok(fft_float_rec(x))
}

fn fft_float_rec(x: &[ComplexFloat]) -> Vec<ComplexFloat> {
    let n = x.len();
    if n == 1 {
        return x.to_vec();
    }
    let even: Vec<ComplexFloat> = x.iter().step_by(2).copied().collect();
    let odd: Vec<ComplexFloat> = x.iter().skip(1).step_by(2).copied().collect();
    let (e, o) = (fft_float_rec(&even), fft_float_rec(&odd));
    let mut out = alloc::vec![ComplexFloat::ZERO; n];
    for k in 0..n / 2 {
        let t = ComplexFloat::from_angle(-2.0 * PI * k as f64 / n as f64) * o[k];
        out[k] = e[k] + t;
        out[k + n / 2] = e[k] - t;
    }
    out
}

/// Fixed-point DIF FFT with natural-order output.
pub fn fft_fixed_reference(x: &[FixedComplex], mode: ScalingMode) -> Result<Vec<FixedComplex>> {
    checked_log2(x.len())?;
    let width = x[0].width();
    if let Some(bad) = x.iter().find(|s| s.width() != width) {
        return Err(Error::WidthMismatch { expected: width, found: bad.width() });
    }
    dif(x, mode)
}

fn dif(x: &[FixedComplex], mode: ScalingMode) -> Result<Vec<FixedComplex>> {
    let n = x.len();
    if n == 1 {
        return Ok(x.to_vec());
    }
    let half = n / 2;
    let twiddles = if n > 2 { twiddle_table(n, x[0].width())? } else { Vec::new() };
    let mut upper = Vec::with_capacity(half);
    let mut lower = Vec::with_capacity(half);
    for i in 0..half {
        let out = butterfly_fixed(x[i], x[i + half], mode)?;
        upper.push(out.sum);
        // the 2-point transform has no multiplier stage
        lower.push(if n > 2 { cmult_fixed(out.diff, &twiddles[i])? } else { out.diff });
    }
    let even_bins = dif(&upper, mode)?;
    let odd_bins = dif(&lower, mode)?;
    let mut out = Vec::with_capacity(n);
    for (e, o) in even_bins.into_iter().zip(odd_bins) {
        out.push(e);
        out.push(o);
    }
    Ok(out)
}

pub fn to_float(x: &[FixedComplex]) -> Vec<ComplexFloat> {
    x.iter().map(|s| ComplexFloat::new(s.re() as f64, s.im() as f64)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    /// Worst per-component error, in LSBs.
    pub max_abs_error: f64,
    /// RMS over all real and imaginary components, in LSBs.
    pub rms_error: f64,
    pub bit_exact: bool,
    /// Bin holding the worst component.
    pub worst_bin: usize,
}

/// Compares fixed-point bins with `b_float * scale`.
pub fn compare_outputs(a: &[FixedComplex], b_float: &[ComplexFloat], scale: f64) -> Result<ComparisonReport> {
    if a.len() != b_float.len() {
        return Err(Error::LengthMismatch { expected: a.len(), found: b_float.len() });
    }
    let mut max = 0.0f64;
    let mut worst_bin = 0;
    let mut sum_sq = 0.0;
    for (i, (fixed, float)) in a.iter().zip(b_float).enumerate() {
        for (got, want) in [(fixed.re(), float.re), (fixed.im(), float.im)] {
            let err = libm::fabs(got as f64 - want * scale);
            sum_sq += err * err;
            if err > max {
                max = err;
                worst_bin = i;
            }
        }
    }
    let count = (2 * a.len()).max(1) as f64;
    Ok(ComparisonReport { max_abs_error: max, rms_error: libm::sqrt(sum_sq / count), bit_exact: max == 0.0, worst_bin })
}

/// `None` when both slices are identical, otherwise the first differing bin.
pub fn first_mismatch(a: &[FixedComplex], b: &[FixedComplex]) -> Option<usize> {
    if a.len() != b.len() {
        return Some(a.len().min(b.len()));
    }
    a.iter().zip(b).position(|(x, y)| x != y)
}

/// Scale turning a float DFT of the integer input into expected output LSBs.
pub fn output_scale(n: usize, mode: ScalingMode) -> f64 {
    match mode {
        ScalingMode::PerStageHalving => 1.0 / n as f64,
        ScalingMode::None => 1.0,
    }
}

/// Largest input magnitude for which `mode` cannot overflow an n-point design.
pub fn input_bound(n: usize, width: u32, mode: ScalingMode) -> i64 {
    let full = (1i64 << (width - 1)) - 1;
    match mode {
        ScalingMode::PerStageHalving => full,
        ScalingMode::None => full / n as i64,
    }
}

/// Seeded samples uniform over the disc of radius `bound`.
pub fn random_vector(n: usize, width: u32, bound: i64, seed: u64) -> Vec<FixedComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| loop {
            let re = rng.gen_range(-bound..=bound);
            let im = rng.gen_range(-bound..=bound);
            if (re * re + im * im) as f64 <= (bound * bound) as f64 {
                break FixedComplex::new(re, im, width).expect("bound fits width");
            }
        })
        .collect()
}

pub fn impulse(n: usize, width: u32, amplitude: i64) -> Result<Vec<FixedComplex>> {
    let mut x = alloc::vec![FixedComplex::zero(width); n];
    if let Some(first) = x.first_mut() {
        *first = FixedComplex::new(amplitude, 0, width)?;
    }
    Ok(x)
}

pub fn constant(n: usize, value: FixedComplex) -> Vec<FixedComplex> {
    alloc::vec![value; n]
}
