use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampler::{sample_roots, SamplerConfig, SamplingScheme};
use super::SearchError;
use crate::combinatorics::{flat_count, CombinatoricsError, MAX_ENUM_DEGREE};
use crate::poly::{arrangement, symbolic_sequence, RootList, SymbolicSequence, DEFAULT_SEP_TOL};

/// Work unit for parallel classification. Fixed so that the partition of
/// indices does not depend on the worker count.
const CHUNK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Sample index that first produced the key.
    pub index: u64,
    pub roots: RootList<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub n: usize,
    pub seed: u64,
    pub scheme: SamplingScheme,
    pub half_width: f64,
    pub samples_attempted: u64,
    /// Samples whose arrangement was strictly nice. Sums the counts.
    pub samples_strict: u64,
    pub counts: BTreeMap<SymbolicSequence, u64>,
    /// Lowest-index exemplar per key.
    pub witnesses: BTreeMap<SymbolicSequence, Witness>,
}

impl ClassificationResult {
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn config(&self) -> SamplerConfig {
        SamplerConfig {
            n: self.n,
            scheme: self.scheme,
            half_width: self.half_width,
            seed: self.seed,
        }
    }

    /// Distinct keys over the admissible count, a lower bound on the
    /// realizable fraction.
    pub fn ratio_lower_bound(&self) -> f64 {
        self.distinct() as f64 / flat_count(self.n).to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn contains(&self, word: &str) -> bool {
        word.parse::<SymbolicSequence>()
            .map(|k| self.counts.contains_key(&k))
            .unwrap_or(false)
    }
}

#[derive(Debug, Default)]
struct Tally {
    strict: u64,
    counts: BTreeMap<SymbolicSequence, u64>,
    witnesses: BTreeMap<SymbolicSequence, Witness>,
}

impl Tally {
    fn record(&mut self, key: SymbolicSequence, index: u64, roots: &RootList<f64>) {
        self.strict += 1;
        *self.counts.entry(key.clone()).or_insert(0) += 1;
        self.witnesses
            .entry(key)
            .and_modify(|w| {
                if index < w.index {
                    *w = Witness {
                        index,
                        roots: roots.clone(),
                    };
                }
            })
            .or_insert_with(|| Witness {
                index,
                roots: roots.clone(),
            });
    }

    // Associative and commutative: sums counts, keeps the minimal index.
    fn merge(mut self, other: Tally) -> Tally {
        self.strict += other.strict;
        for (k, c) in other.counts {
            *self.counts.entry(k).or_insert(0) += c;
        }
        for (k, w) in other.witnesses {
            match self.witnesses.get(&k) {
                Some(mine) if mine.index <= w.index => {}
                _ => {
                    self.witnesses.insert(k, w);
                }
            }
        }
        self
    }
}

/// Symbolic sequence of one sample, or `None` when it is not strictly nice.
pub(crate) fn classify_roots(roots: &RootList<f64>) -> Option<SymbolicSequence> {
    let a = arrangement(roots).ok()?;
    symbolic_sequence(&a, DEFAULT_SEP_TOL).ok()
}

fn tally_range(cfg: &SamplerConfig, start: u64, end: u64) -> Tally {
    let mut t = Tally::default();
    for index in start..end {
        let roots = sample_roots(cfg, index);
        if let Some(key) = classify_roots(&roots) {
            t.record(key, index, &roots);
        }
    }
    t
}

/// Classifies samples `0..budget` on the global rayon pool.
pub fn classify(cfg: &SamplerConfig, budget: u64) -> ClassificationResult {
    let chunks = budget.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| tally_range(cfg, c * CHUNK, ((c + 1) * CHUNK).min(budget)))
        .reduce(Tally::default, Tally::merge);
    ClassificationResult {
        n: cfg.n,
        seed: cfg.seed,
        scheme: cfg.scheme,
        half_width: cfg.half_width,
        samples_attempted: budget,
        samples_strict: tally.strict,
        counts: tally.counts,
        witnesses: tally.witnesses,
    }
}

/// As [`classify`] on a dedicated pool of `workers` threads. The result does
/// not depend on `workers`.
pub fn classify_with_workers(
    cfg: &SamplerConfig,
    budget: u64,
    workers: usize,
) -> Result<ClassificationResult, SearchError> {
    Ok(WorkerPool::new(workers)?.install(|| classify(cfg, budget)))
}

/// Dedicated thread pool for the parallel routines of this module.
pub struct WorkerPool(rayon::ThreadPool);

impl WorkerPool {
    pub fn new(workers: usize) -> Result<Self, SearchError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
            .map(WorkerPool)
            .map_err(|e| SearchError::Workers(e.to_string()))
    }

    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        self.0.install(op)
    }
}

/// Observed distinct keys over the admissible count. Only a lower bound on
/// the realizable fraction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioEstimate {
    pub n: usize,
    pub distinct: usize,
    #[serde(with = "crate::combinatorics::biguint_decimal")]
    pub flat: BigUint,
    pub ratio: f64,
    pub is_lower_bound: bool,
}

pub fn ratio_estimate(cfg: &SamplerConfig, budget: u64) -> Result<RatioEstimate, SearchError> {
    if cfg.n > MAX_ENUM_DEGREE {
        return Err(CombinatoricsError::DegreeOutOfRange { n: cfg.n }.into());
    }
    let flat = flat_count(cfg.n);
    let distinct = classify(cfg, budget).distinct();
    let ratio = distinct as f64 / flat.to_f64().unwrap_or(f64::INFINITY);
    Ok(RatioEstimate {
        n: cfg.n,
        distinct,
        flat,
        ratio,
        is_lower_bound: true,
    })
}
