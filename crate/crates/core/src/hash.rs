//! Deterministic hashing and the counter-based RNG built on it.
//!
//! Every random choice in the crate (restart vertices, shuffles, synthetic
//! graphs) draws from [`CounterRng`], so a seed fully determines the output on
//! any platform.

/// The 64-bit MurmurHash3 finalizer.
#[inline]
pub fn mix64(mut x: u64) -> u64 {
    x ^= x >> 33;
    x = x.wrapping_mul(0xff51_afd7_ed55_8ccd);
    x ^= x >> 33;
    x = x.wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    x ^= x >> 33;
    x
}

pub const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Random stream where draw `n` is a pure function of `(seed, n)`.
///
/// `value(seed, n) = mix64(mix64(seed) + (n + 1) * GOLDEN_GAMMA)`, i.e. a
/// SplitMix64 walk finalized by [`mix64`]. Streams can be split by counter
/// range without coordination.
#[derive(Debug, Clone)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self::at(seed, 0)
    }

    /// A stream positioned at `counter`.
    pub fn at(seed: u64, counter: u64) -> Self {
        Self {
            key: mix64(seed),
            counter,
        }
    }

    pub fn counter(&self) -> u64 {
        self.counter
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let n = self.counter;
        self.counter = self.counter.wrapping_add(1);
        mix64(
            self.key
                .wrapping_add(n.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)),
        )
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[0, bound)`. Unbiased: draws from the incomplete top
    /// bucket are rejected.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "below(0)");
        let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % bound;
            }
        }
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Written without shifts-by-name so it does not share code with mix64.
    fn reference_fmix64(k: u64) -> u64 {
        let mut h = k as u128;
        let mask = u64::MAX as u128;
        h ^= h >> 33;
        h = (h * 0xff51afd7ed558ccd) & mask;
        h ^= h >> 33;
        h = (h * 0xc4ceb9fe1a85ec53) & mask;
        h ^= h >> 33;
        h as u64
    }

    #[test]
    fn zero_is_fixpoint() {
        assert_eq!(mix64(0), 0);
    }

    #[test]
    fn known_vectors() {
        assert_eq!(mix64(1), 0xb456_bcfc_34c2_cb2c);
        assert_eq!(mix64(2), 0x3abf_2a20_6506_83e7);
        assert_eq!(mix64(0xdead_beef), 0xd24b_d59f_862a_1dac);
        let mut rng = CounterRng::new(99);
        for _ in 0..1000 {
            let x = rng.next_u64();
            assert_eq!(mix64(x), reference_fmix64(x));
        }
    }

    #[test]
    fn avalanche() {
        let mut rng = CounterRng::new(7);
        let samples = 10_000;
        let mut flipped = 0u64;
        for _ in 0..samples {
            let x = rng.next_u64();
            let bit = rng.below(64);
            flipped += (mix64(x) ^ mix64(x ^ (1 << bit))).count_ones() as u64;
        }
        let mean = flipped as f64 / samples as f64;
        assert!(mean >= 20.0, "mean flipped bits {mean}");
        assert!((mean - 32.0).abs() < 1.0, "mean flipped bits {mean}");
    }

    #[test]
    fn rng_is_counter_addressable() {
        let mut a = CounterRng::new(5);
        let seq: Vec<u64> = (0..10).map(|_| a.next_u64()).collect();
        let mut b = CounterRng::at(5, 6);
        assert_eq!(b.next_u64(), seq[6]);
        assert_ne!(CounterRng::new(6).next_u64(), seq[0]);
    }

    #[test]
    fn below_stays_in_range_and_covers_it() {
        let mut rng = CounterRng::new(1);
        let mut seen = [false; 7];
        for _ in 0..1000 {
            let x = rng.below(7);
            seen[x as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
        assert_eq!(rng.below(1), 0);
    }

    #[test]
    fn unit_floats() {
        let mut rng = CounterRng::new(3);
        let mean: f64 = (0..100_000).map(|_| rng.next_f64()).sum::<f64>() / 100_000.0;
        assert!((mean - 0.5).abs() < 0.01);
    }
}
