//! Realizability experiments: sampling real-rooted polynomials, tallying
//! the symbolic sequences they produce, and auditing the quartic normal
//! form.

mod anderson;
mod classify;
mod sampler;

pub use anderson::{
    anderson_check, anderson_random, anderson_scan, normalize_quartic, AndersonReport,
    AndersonScanReport, QuarticNormalForm, UvBox,
};
pub use classify::{
    classify, classify_with_workers, ratio_estimate, ClassificationResult, RatioEstimate, Witness,
    WorkerPool,
};
pub use sampler::{sample_roots, SamplerConfig, SamplingScheme, MIN_SAMPLE_GAP};

pub(crate) use sampler::stream;

use thiserror::Error;

use crate::combinatorics::CombinatoricsError;
use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("invalid sampler configuration: {0}")]
    Config(String),
    #[error("unknown sampling scheme {0:?}")]
    UnknownScheme(String),
    #[error("normal form needs exactly 4 roots, got {0}")]
    NotQuartic(usize),
    #[error("shifted quartic has nonnegative x^2 coefficient {0}; roots cannot all be real")]
    NonNegativeQuadratic(f64),
    #[error("grid density must be at least 2, got {0}")]
    GridTooSparse(usize),
    #[error("worker pool: {0}")]
    Workers(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}
