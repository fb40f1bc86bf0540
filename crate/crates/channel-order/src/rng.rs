//! Counter-based random number generator used everywhere randomness is
//! needed, so that every sequence is reproducible from `(seed, stream,
//! index)` alone — including from other languages.
//!
//! The generator is fully specified by the splitmix64 finalizer
//!
//! ```text
//! mix(z): z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//!         z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//!         return z ^ (z >> 31)
//! ```
//!
//! with the 64-bit golden-ratio increment `Γ = 0x9e3779b97f4a7c15`:
//!
//! ```text
//! key(seed, stream)        = mix(seed ^ mix(stream * Γ))
//! value(seed, stream, i)   = mix(key + (i + 1) * Γ)        // i = 0, 1, ...
//! uniform = (value >> 11) * 2⁻⁵³                            // in [0, 1)
//! ```
//!
//! Normal deviates come from the Box–Muller transform applied to
//! consecutive uniforms (cosine branch first, sine branch second), with
//! `u1 = 0` remapped to `2⁻⁵³` to avoid `ln(0)`.

const GAMMA: u64 = 0x9e3779b97f4a7c15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Deterministic counter-based generator; see the module docs for the
/// exact integer recipe.
#[derive(Debug, Clone)]
pub struct CounterRng {
    key: u64,
    index: u64,
    spare_normal: Option<f64>,
}

impl CounterRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self {
            key: mix(seed ^ mix(stream.wrapping_mul(GAMMA))),
            index: 0,
            spare_normal: None,
        }
    }

    /// The raw word at a given counter position, independent of any state.
    pub fn value_at(seed: u64, stream: u64, index: u64) -> u64 {
        let key = mix(seed ^ mix(stream.wrapping_mul(GAMMA)));
        mix(key.wrapping_add((index + 1).wrapping_mul(GAMMA)))
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = mix(self.key.wrapping_add((self.index + 1).wrapping_mul(GAMMA)));
        self.index += 1;
        v
    }

    /// Uniform deviate in `[0, 1)` with 53 bits of precision.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Standard normal deviate (Box–Muller).
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let mut u1 = self.uniform();
        if u1 == 0.0 {
            u1 = 1.0 / 9007199254740992.0;
        }
        let u2 = self.uniform();
        let mag = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(mag * theta.sin());
        mag * theta.cos()
    }

    /// Index into `0..n` with the cumulative-weight inverse of `weights`
    /// (which must be nonnegative; they are normalized internally).
    pub fn categorical(&mut self, weights: &[f64]) -> usize {
        let total: f64 = weights.iter().sum();
        let target = self.uniform() * total;
        let mut acc = 0.0;
        for (i, w) in weights.iter().enumerate() {
            acc += w;
            if target < acc {
                return i;
            }
        }
        weights.len() - 1
    }
}
