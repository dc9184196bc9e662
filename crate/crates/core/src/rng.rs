//! Seedable, splittable random streams.
//!
//! Every Monte Carlo trial draws from its own [`RandomStream`], derived
//! from a master seed and a tuple of labels (observable, radius, trial
//! index). Derivation is a fixed splitmix64 chain, so streams are stable
//! across runs, platforms and worker counts.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a master seed with a sequence of labels into one 64-bit value.
pub fn mix_seed(master: u64, labels: &[u64]) -> u64 {
    labels.iter().fold(splitmix64(master), |acc, &l| {
        splitmix64(acc ^ splitmix64(l.wrapping_add(GOLDEN)))
    })
}

/// A named ChaCha8 stream.
#[derive(Clone, Debug)]
pub struct RandomStream {
    inner: ChaCha8Rng,
}

impl RandomStream {
    pub fn from_seed(seed: u64) -> Self {
        let mut bytes = [0u8; 32];
        let mut s = seed;
        for chunk in bytes.chunks_mut(8) {
            s = splitmix64(s);
            chunk.copy_from_slice(&s.to_le_bytes());
        }
        RandomStream {
            inner: ChaCha8Rng::from_seed(bytes),
        }
    }

    /// Stream for `(master, labels...)`.
    pub fn derive(master: u64, labels: &[u64]) -> Self {
        Self::from_seed(mix_seed(master, labels))
    }

    /// An independent child stream; does not advance `self`.
    pub fn split(&self, index: u64) -> Self {
        let mut probe = self.inner.clone();
        let base = probe.next_u64();
        Self::derive(base, &[index])
    }
}

impl RngCore for RandomStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
