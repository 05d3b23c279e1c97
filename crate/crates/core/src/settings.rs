use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Knobs for the randomized searches. Every search derives its generator
/// from `seed`, so identical settings give identical results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    /// Random combinations tried when looking for an invertible element of a
    /// Hom space over the rationals.
    pub iso_attempts: usize,
    /// Largest Hom dimension searched exhaustively over a prime field.
    pub fp_grid_dim: usize,
    /// Basis-path cap for path algebra enumeration.
    pub path_cap: usize,
    /// Largest number of simples `classify_all` will enumerate subsets of.
    pub classify_all_cap: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 0,
            iso_attempts: 20,
            fp_grid_dim: 4,
            path_cap: 10_000,
            classify_all_cap: 12,
        }
    }
}

impl Settings {
    pub fn with_seed(seed: u64) -> Self {
        Settings {
            seed,
            ..Settings::default()
        }
    }

    /// Generator for one search; `salt` separates independent call sites.
    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}
