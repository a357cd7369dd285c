//! Portable seeded randomness.
//!
//! All randomized procedures draw from [`SplitMix64`], a counter-based
//! generator whose `i`-th output (1-based) is `mix(seed + i·0x9E3779B97F4A7C15)`
//! with the finalizer
//!
//! ```text
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z ^ (z >> 31)
//! ```
//!
//! (all arithmetic modulo 2^64). Derived quantities use fixed recipes so a
//! port in another language reproduces every graph and every run:
//!
//! * `below(n)`: draw `x`; accept if `x >= (2^64 - n) mod n`, return `x mod n`.
//! * Bernoulli(p) for rational `p`: draw `x`; success iff `x < ⌊p · 2^64⌋`
//!   (`p = 1` always succeeds).
//! * `shuffle`: Fisher–Yates from the last index down, swapping `i` with
//!   `below(i + 1)`.
//! * Independent streams: `stream(seed, label)` seeds a fresh generator with
//!   `mix(seed ^ mix(label))`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::ratio::Ratio;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    /// Independent generator for a labelled sub-task of a seeded run.
    pub fn stream(seed: u64, label: u64) -> SplitMix64 {
        SplitMix64::new(mix64(seed ^ mix64(label)))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform integer in `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let threshold = n.wrapping_neg() % n;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % n;
            }
        }
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.below(len as u64) as usize
    }

    /// Uniform float in `[0, 1)` with 53 random bits.
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> Option<&'a T> {
        if items.is_empty() {
            None
        } else {
            Some(&items[self.index(items.len())])
        }
    }
}

/// A reusable Bernoulli trial with an exact rational success probability.
#[derive(Clone, Copy, Debug)]
pub struct Coin {
    threshold: u128,
}

impl Coin {
    /// `p` is clamped to `[0, 1]`.
    pub fn new(p: &Ratio) -> Coin {
        if p.is_negative() || p.is_zero() {
            return Coin { threshold: 0 };
        }
        let scaled: BigInt = (p.numer() << 64u32) / p.denom();
        let cap = 1u128 << 64;
        let threshold = scaled.to_u128().map_or(cap, |t| t.min(cap));
        Coin { threshold }
    }

    #[inline]
    pub fn flip(&self, rng: &mut SplitMix64) -> bool {
        (rng.next_u64() as u128) < self.threshold
    }
}
