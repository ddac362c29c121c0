//! Zeros of real-rooted functions and their derivatives: root-form
//! polynomials and their arrangements, admissible Rolle words, the
//! inequalities characterizing cubic arrangements together with an explicit
//! construction realizing them, sampling experiments on realizability, and
//! the periodic analog for trigonometric polynomials.
//!
//! The numeric core is generic over [`scalar::Scalar`] (`f32`, `f64`);
//! concrete aliases are provided below.

// `!(a < b)` is used deliberately so that NaN fails the guard.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod combinatorics;
pub mod poly;
pub mod rolle3;
pub mod scalar;
pub mod search;
pub mod trig;

pub use combinatorics::{
    enumerate_periodic, enumerate_rolle_words, flat_count, is_possible_periodic, is_rolle_word,
    CircularSequence, CombinatoricsError, RolleWordSet,
};
pub use poly::{arrangement, check_standard_rolle, symbolic_sequence, PolyError, SymbolicSequence};
pub use rolle3::{check_case_inequalities, check_inequalities, construct_3nice, Rolle3Error};
pub use scalar::Scalar;
pub use search::{
    anderson_check, anderson_scan, classify, normalize_quartic, ratio_estimate, sample_roots,
    ClassificationResult, SamplerConfig, SamplingScheme, SearchError,
};
pub use trig::{
    differentiate_trig, eval_trig, periodic_arrangement, real_rooted_trig_from_zeros,
    roots_on_circle, TrigError,
};

pub type RootList = poly::RootList<f64>;
pub type Arrangement = poly::Arrangement<f64>;
pub type CoefficientPoly = poly::CoefficientPoly<f64>;
pub type Tuple3Arrangement = rolle3::Tuple3Arrangement<f64>;
pub type ConvexDerivativeSpline = rolle3::ConvexDerivativeSpline<f64>;
pub type QuarticNormalForm = search::QuarticNormalForm<f64>;
pub type TrigPoly = trig::TrigPoly<f64>;
pub type CircleRootList = trig::CircleRootList<f64>;

pub type RootList32 = poly::RootList<f32>;
pub type Arrangement32 = poly::Arrangement<f32>;
pub type Tuple3Arrangement32 = rolle3::Tuple3Arrangement<f32>;
pub type ConvexDerivativeSpline32 = rolle3::ConvexDerivativeSpline<f32>;
pub type TrigPoly32 = trig::TrigPoly<f32>;
