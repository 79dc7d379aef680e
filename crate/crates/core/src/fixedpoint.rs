// SPDX-License-Identifier: Apache-2.0

//! Two's-complement complex arithmetic with the exact semantics of the
//! emitted butterfly and complex-multiplier RTL.

use core::fmt;

use crate::twiddle::TwiddleWord;
use crate::{Error, Result};

/// A complex sample held as two W-bit two's-complement integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FixedComplex {
    re: i64,
    im: i64,
    width: u32,
}

impl FixedComplex {
    pub fn new(re: i64, im: i64, width: u32) -> Result<Self> {
        if !(2..=32).contains(&width) {
            return Err(Error::InvalidWidth(width));
        }
        let min = -(1i64 << (width - 1));
        let max = (1i64 << (width - 1)) - 1;
        for v in [re, im] {
            if v < min || v > max {
                return Err(Error::ComponentOverflow { value: v, width });
            }
        }
        Ok(FixedComplex { re, im, width })
    }

    pub fn zero(width: u32) -> Self {
        FixedComplex { re: 0, im: 0, width }
    }

    /// Wraps both components into `width` bits.
    pub fn wrapping(re: i64, im: i64, width: u32) -> Self {
        FixedComplex { re: wrap(re, width), im: wrap(im, width), width }
    }

    pub fn re(&self) -> i64 {
        self.re
    }

    pub fn im(&self) -> i64 {
        self.im
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// `{im, re}` packed into `2 * width` bits, the bus layout of the RTL.
    pub fn packed(&self) -> u64 {
        let mask = (1u64 << self.width) - 1;
        ((self.im as u64 & mask) << self.width) | (self.re as u64 & mask)
    }
}

impl fmt::Display for FixedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

/// Overflow policy of the butterfly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ScalingMode {
    /// Halve both butterfly outputs so a full-scale input can never overflow;
    /// an n-point transform then returns `DFT / n`.
    #[default]
    PerStageHalving,
    /// Full-precision sums wrapped to W bits.
    None,
}

impl ScalingMode {
    pub const ALL: [ScalingMode; 2] = [ScalingMode::PerStageHalving, ScalingMode::None];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ButterflyOutput {
    pub sum: FixedComplex,
    pub diff: FixedComplex,
    /// Set when an unscaled result did not fit in W bits and wrapped.
    pub overflow: bool,
}

fn wrap(v: i64, width: u32) -> i64 {
    let shift = 64 - width;
    (v << shift) >> shift
}

fn fits(v: i64, width: u32) -> bool {
    wrap(v, width) == v
}

fn same_width(a: u32, b: u32) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::WidthMismatch { expected: a, found: b })
    }
}

/// `(a + b, a - b)`, each arithmetically shifted right by one under
/// [`ScalingMode::PerStageHalving`].
pub fn butterfly_fixed(a: FixedComplex, b: FixedComplex, mode: ScalingMode) -> Result<ButterflyOutput> {
    same_width(a.width, b.width)?;
    let w = a.width;
    let raw = [a.re + b.re, a.im + b.im, a.re - b.re, a.im - b.im];
    let (vals, overflow) = match mode {
        ScalingMode::PerStageHalving => (raw.map(|v| v >> 1), false),
        ScalingMode::None => (raw.map(|v| wrap(v, w)), raw.iter().any(|&v| !fits(v, w))),
    };
    Ok(ButterflyOutput {
        sum: FixedComplex { re: vals[0], im: vals[1], width: w },
        diff: FixedComplex { re: vals[2], im: vals[3], width: w },
        overflow,
    })
}

/// Complex product with a twiddle word, shrunk by `W - 1` bits with
/// add-half rounding. Products are formed exactly; the result wraps to W bits.
pub fn cmult_fixed(a: FixedComplex, w: &TwiddleWord) -> Result<FixedComplex> {
    same_width(a.width, w.width)?;
    Ok(cmult_parts(a, w.fixed))
}

pub(crate) fn cmult_parts(a: FixedComplex, w: FixedComplex) -> FixedComplex {
    let width = a.width;
    let half = 1i128 << (width - 2);
    let shift = width - 1;
    let (ar, ai) = (a.re as i128, a.im as i128);
    let (wr, wi) = (w.re as i128, w.im as i128);
    let re = (ar * wr - ai * wi + half) >> shift;
    let im = (ar * wi + ai * wr + half) >> shift;
    FixedComplex::wrapping(re as i64, im as i64, width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twiddle::{twiddle_table, ComplexFloat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fc(re: i64, im: i64) -> FixedComplex {
        FixedComplex::new(re, im, 16).unwrap()
    }

    #[test]
    fn construction_checks_range() {
        assert!(FixedComplex::new(32767, -32768, 16).is_ok());
        assert_eq!(FixedComplex::new(32768, 0, 16), Err(Error::ComponentOverflow { value: 32768, width: 16 }));
        assert_eq!(FixedComplex::new(0, 0, 33), Err(Error::InvalidWidth(33)));
        assert_eq!(FixedComplex::wrapping(32768, -32769, 16), fc(-32768, 32767));
        assert_eq!(fc(23170, -23170).packed(), 0xA57E_5A82);
    }

    #[test]
    fn butterfly_examples() {
        let out = butterfly_fixed(fc(32767, 0), fc(0, 0), ScalingMode::PerStageHalving).unwrap();
        assert_eq!((out.sum, out.diff), (fc(16383, 0), fc(16383, 0)));
        let out = butterfly_fixed(fc(8, 0), fc(8, 0), ScalingMode::None).unwrap();
        assert_eq!((out.sum, out.diff, out.overflow), (fc(16, 0), fc(0, 0), false));
        for mode in ScalingMode::ALL {
            let out = butterfly_fixed(fc(0, 0), fc(0, 0), mode).unwrap();
            assert_eq!((out.sum, out.diff), (fc(0, 0), fc(0, 0)));
        }
    }

    #[test]
    fn butterfly_halving_shift_floors() {
        let out = butterfly_fixed(fc(-1, 0), fc(0, 0), ScalingMode::PerStageHalving).unwrap();
        assert_eq!(out.sum, fc(-1, 0));
        let out = butterfly_fixed(fc(-32768, -32768), fc(32767, 32767), ScalingMode::PerStageHalving).unwrap();
        assert_eq!(out.diff, fc(-32768, -32768));
    }

    #[test]
    fn butterfly_wraps_and_flags() {
        let out = butterfly_fixed(fc(32767, 0), fc(1, 0), ScalingMode::None).unwrap();
        assert!(out.overflow);
        assert_eq!(out.sum, fc(-32768, 0));
        assert_eq!(out.diff, fc(32766, 0));
    }

    #[test]
    fn width_mismatch() {
        let a = FixedComplex::new(1, 1, 12).unwrap();
        assert_eq!(
            butterfly_fixed(fc(1, 1), a, ScalingMode::None),
            Err(Error::WidthMismatch { expected: 16, found: 12 })
        );
        let tw = &twiddle_table(8, 12).unwrap()[0];
        assert_eq!(cmult_fixed(fc(1, 1), tw), Err(Error::WidthMismatch { expected: 16, found: 12 }));
    }

    #[test]
    fn cmult_examples() {
        let t8 = twiddle_table(8, 16).unwrap();
        assert_eq!(cmult_fixed(fc(16384, 0), &t8[0]).unwrap(), fc(16384, 0));
        assert_eq!(cmult_fixed(fc(0, 16384), &t8[2]).unwrap(), fc(16384, 0));
        for tw in &t8 {
            assert_eq!(cmult_fixed(fc(0, 0), tw).unwrap(), fc(0, 0));
        }
    }

    #[test]
    fn unit_twiddle_moves_at_most_one_lsb() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for width in [8u32, 16, 24, 32] {
            let tw = &twiddle_table(4, width).unwrap()[0];
            let lim = 1i64 << (width - 1);
            for _ in 0..2000 {
                let a = FixedComplex::new(rng.gen_range(-lim..lim), rng.gen_range(-lim..lim), width).unwrap();
                let y = cmult_fixed(a, tw).unwrap();
                assert!((y.re() - a.re()).abs() <= 1 && (y.im() - a.im()).abs() <= 1, "{a} -> {y}");
            }
        }
    }

    #[test]
    fn cmult_tracks_exact_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let width = 16;
        let lim = 1i64 << (width - 2);
        let tables: Vec<_> = (1..=6).map(|l| twiddle_table(1 << l, width).unwrap()).collect();
        let mut worst = 0.0f64;
        for i in 0..10_000 {
            let table = &tables[i % tables.len()];
            let tw = &table[rng.gen_range(0..table.len())];
            let a = FixedComplex::new(rng.gen_range(-lim..=lim), rng.gen_range(-lim..=lim), width).unwrap();
            let y = cmult_fixed(a, tw).unwrap();
            let exact = ComplexFloat::new(a.re() as f64, a.im() as f64) * tw.value;
            worst = worst.max((y.re() as f64 - exact.re).abs()).max((y.im() as f64 - exact.im).abs());
        }
        assert!(worst <= 1.5, "worst {worst}");
    }

    #[test]
    fn unscaled_small_inputs_never_overflow_and_invert() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let lim = 1i64 << 14;
        for _ in 0..10_000 {
            let a = fc(rng.gen_range(-lim..=lim), rng.gen_range(-lim..=lim));
            let b = fc(rng.gen_range(-lim..=lim), rng.gen_range(-lim..=lim));
            let out = butterfly_fixed(a, b, ScalingMode::None).unwrap();
            assert!(!out.overflow);
            assert_eq!(out.sum.re() + out.diff.re(), 2 * a.re());
            assert_eq!(out.sum.im() + out.diff.im(), 2 * a.im());
            assert_eq!(out.sum.re() - out.diff.re(), 2 * b.re());
            assert_eq!(out.sum.im() - out.diff.im(), 2 * b.im());
        }
    }
}
