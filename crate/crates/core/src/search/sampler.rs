use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use super::SearchError;
use crate::poly::RootList;

/// Smallest gap between adjacent sampled roots.
pub const MIN_SAMPLE_GAP: f64 = 1e-6;
const RETRIES_PER_KEY: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingScheme {
    /// Independent uniform roots in `[-w, w]`.
    UniformBox,
    /// Cumulative sums of unit exponential gaps, centered and scaled into
    /// `[-w, w]`.
    GapExponential,
    /// Additive recurrence with irrational steps (R-sequence), randomly
    /// shifted by the seed, mapped into `[-w, w]`.
    LowDiscrepancy,
}

impl SamplingScheme {
    pub fn name(self) -> &'static str {
        match self {
            SamplingScheme::UniformBox => "uniform-box",
            SamplingScheme::GapExponential => "gap-exponential",
            SamplingScheme::LowDiscrepancy => "low-discrepancy",
        }
    }
}

impl fmt::Display for SamplingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SamplingScheme {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform-box" => Ok(SamplingScheme::UniformBox),
            "gap-exponential" => Ok(SamplingScheme::GapExponential),
            "low-discrepancy" => Ok(SamplingScheme::LowDiscrepancy),
            other => Err(SearchError::UnknownScheme(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub n: usize,
    pub scheme: SamplingScheme,
    pub half_width: f64,
    pub seed: u64,
}

impl SamplerConfig {
    pub fn new(
        n: usize,
        scheme: SamplingScheme,
        half_width: f64,
        seed: u64,
    ) -> Result<Self, SearchError> {
        if n == 0 {
            return Err(SearchError::Config("degree must be at least 1".into()));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(SearchError::Config(format!(
                "half-width must be positive and finite, got {half_width}"
            )));
        }
        Ok(Self {
            n,
            scheme,
            half_width,
            seed,
        })
    }

    /// Gap-exponential on `[-1, 1]`.
    pub fn with_defaults(n: usize, seed: u64) -> Self {
        Self {
            n,
            scheme: SamplingScheme::GapExponential,
            half_width: 1.0,
            seed,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Counter-based stream for `(seed, index)`: a ChaCha key derived from the
/// seed and the rekey round, with `index` selecting the stream.
pub(crate) fn stream(seed: u64, round: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    let mut s = seed ^ round.wrapping_mul(0xd1b5_4a32_d192_ed03);
    for chunk in key.chunks_mut(8) {
        s = splitmix64(s);
        chunk.copy_from_slice(&s.to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// Deterministic in `(cfg, index)` alone, so samples can be drawn in any
/// order and on any number of threads.
pub fn sample_roots(cfg: &SamplerConfig, index: u64) -> RootList<f64> {
    for round in 0.. {
        let mut rng = stream(cfg.seed, round, index);
        for attempt in 0..RETRIES_PER_KEY {
            let raw = match cfg.scheme {
                SamplingScheme::UniformBox => uniform_box(cfg, &mut rng),
                SamplingScheme::GapExponential => gap_exponential(cfg, &mut rng),
                SamplingScheme::LowDiscrepancy => {
                    low_discrepancy(cfg, index, round * RETRIES_PER_KEY + attempt)
                }
            };
            if let Some(r) = accept(raw) {
                return r;
            }
        }
    }
    unreachable!("rejection sampling always terminates")
}

fn accept(mut roots: Vec<f64>) -> Option<RootList<f64>> {
    roots.sort_by(f64::total_cmp);
    if roots.windows(2).any(|w| !(w[1] - w[0] > MIN_SAMPLE_GAP)) {
        return None;
    }
    RootList::new(roots).ok()
}

fn uniform_box(cfg: &SamplerConfig, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let w = cfg.half_width;
    (0..cfg.n).map(|_| rng.gen_range(-w..w)).collect()
}

fn gap_exponential(cfg: &SamplerConfig, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut roots = Vec::with_capacity(cfg.n);
    let mut acc = 0.0;
    roots.push(acc);
    for _ in 1..cfg.n {
        let gap: f64 = Exp1.sample(rng);
        acc += gap;
        roots.push(acc);
    }
    let mean = roots.iter().sum::<f64>() / cfg.n as f64;
    let reach = roots.iter().map(|r| (r - mean).abs()).fold(0.0, f64::max);
    let scale = if reach > 0.0 {
        cfg.half_width / reach
    } else {
        1.0
    };
    roots.iter().map(|r| (r - mean) * scale).collect()
}

/// Positive root of `x^(d+1) = x + 1`.
fn generalized_golden(d: usize) -> f64 {
    let mut x: f64 = 2.0;
    for _ in 0..64 {
        x = (1.0 + x).powf(1.0 / (d as f64 + 1.0));
    }
    x
}

fn low_discrepancy(cfg: &SamplerConfig, index: u64, attempt: u64) -> Vec<f64> {
    let phi = generalized_golden(cfg.n);
    let mut shift_rng = stream(cfg.seed, u64::MAX, 0);
    let point = index.wrapping_add(attempt.wrapping_mul(1 << 40));
    (0..cfg.n)
        .map(|j| {
            // fixed-point step so the fractional part is exact for any index
            let alpha = phi.powi(-(j as i32 + 1)).fract();
            let step = (alpha * 2f64.powi(64)) as u64;
            let shift: u64 = shift_rng.gen();
            let u = shift.wrapping_add(point.wrapping_mul(step));
            let unit = (u >> 11) as f64 / (1u64 << 53) as f64;
            cfg.half_width * (2.0 * unit - 1.0)
        })
        .collect()
}
