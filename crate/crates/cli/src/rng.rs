//! The fuzz generator, spelled out so other implementations can reproduce
//! the same cases.
//!
//! `next` is SplitMix64: add `0x9E3779B97F4A7C15` to the state, then
//! finalize with shifts 30/27/31 and multipliers `0xBF58476D1CE4E5B9`,
//! `0x94D049BB133111EB`. A uniform real in `[0, 1)` is the top 53 bits of
//! `next` times `2^-53`. Case `i` of operation number `k` (its position in
//! the fuzz op list) draws from a fresh generator seeded with
//! `mix(seed ^ mix((k << 32) | i))`, where `mix` is the finalizer alone.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Generator for one fuzz case.
    pub fn for_case(seed: u64, op_index: u32, case: u32) -> Self {
        SplitMix64::new(mix(seed ^ mix(((op_index as u64) << 32) | case as u64)))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix(self.state)
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.next_u64() % (hi - lo + 1)
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_sequence() {
        // first outputs for seed 0, as published for SplitMix64
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn uniform_in_unit_interval() {
        let mut r = SplitMix64::new(42);
        for _ in 0..10_000 {
            let u = r.uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn cases_are_independent_of_each_other() {
        let a = SplitMix64::for_case(42, 1, 7).next_u64();
        let b = SplitMix64::for_case(42, 1, 7).next_u64();
        let c = SplitMix64::for_case(42, 1, 8).next_u64();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
