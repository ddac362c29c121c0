//! Trigonometric polynomials, their zeros on the circle, and the circular
//! order type of the zeros of a polynomial and its derivatives.

mod roots;

pub use roots::{
    periodic_arrangement, real_rooted_trig_from_zeros, roots_on_circle, roots_on_circle_auto,
    sample_product_form, CircleRootList, MAX_AUTO_GRID,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::CombinatoricsError;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrigError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("cosine and sine coefficient lists differ in length ({a} vs {b})")]
    LengthMismatch { a: usize, b: usize },
    #[error("leading coefficient pair is zero")]
    ZeroLeading,
    #[error("coefficient is not finite")]
    NonFinite,
    #[error("grid of {grid} points is below the minimum {min}")]
    GridTooSmall { grid: usize, min: usize },
    #[error("grid too coarse: zeros {gap} apart at grid step {step}; increase the grid")]
    GridTooCoarse { gap: f64, step: f64 },
    #[error("found {found} zeros, more than the {max} a degree {} polynomial can have", max / 2)]
    TooManyZeros { found: usize, max: usize },
    #[error("expected an even, nonzero number of zeros, got {0}")]
    OddZeroCount(usize),
    #[error("zero {0} is outside [0, 2pi)")]
    AngleOutOfRange(f64),
    #[error("coincident zeros near {0}")]
    CoincidentZeros(f64),
    #[error(
        "zero count mismatch: derivative {order} has {found} simple zeros, expected {expected}"
    )]
    ZeroCount {
        order: usize,
        found: usize,
        expected: usize,
    },
    #[error("not strictly nice on circle: zeros of derivatives {order_a} and {order_b} collide near {angle}")]
    NotStrictlyNice {
        order_a: usize,
        order_b: usize,
        angle: f64,
    },
    #[error("circular word fails the one-between invariant")]
    NotPeriodic,
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

/// `a0 + sum_k (a_k cos kx + b_k sin kx)` with exact degree `a.len()`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly<T> {
    a0: T,
    a: Vec<T>,
    b: Vec<T>,
}

impl<T: Scalar> TrigPoly<T> {
    pub fn new(a0: T, a: Vec<T>, b: Vec<T>) -> Result<Self, TrigError> {
        if a.len() != b.len() {
            return Err(TrigError::LengthMismatch {
                a: a.len(),
                b: b.len(),
            });
        }
        let n = a.len();
        if n == 0 {
            return Err(TrigError::ZeroDegree);
        }
        if !(a0.is_finite() && a.iter().chain(&b).all(|c| c.is_finite())) {
            return Err(TrigError::NonFinite);
        }
        if a[n - 1] == T::zero() && b[n - 1] == T::zero() {
            return Err(TrigError::ZeroLeading);
        }
        Ok(Self { a0, a, b })
    }

    pub fn degree(&self) -> usize {
        self.a.len()
    }

    pub fn a0(&self) -> T {
        self.a0
    }

    pub fn cos_coeffs(&self) -> &[T] {
        &self.a
    }

    pub fn sin_coeffs(&self) -> &[T] {
        &self.b
    }

    pub fn eval(&self, x: T) -> T {
        eval_trig(self, x)
    }

    pub fn derivative(&self) -> Self {
        differentiate_trig(self)
    }

    /// Magnitude of the leading pair `(a_n, b_n)`.
    pub fn leading_norm(&self) -> T {
        let n = self.degree() - 1;
        self.a[n].hypot(self.b[n])
    }
}

pub fn eval_trig<T: Scalar>(p: &TrigPoly<T>, x: T) -> T {
    p.a.iter()
        .zip(&p.b)
        .enumerate()
        .fold(p.a0, |acc, (k, (&ak, &bk))| {
            let (s, c) = (T::lit((k + 1) as f64) * x).sin_cos();
            acc + ak * c + bk * s
        })
}

/// Termwise derivative. The leading pair is rotated and scaled by `n`, so
/// the degree is preserved.
pub fn differentiate_trig<T: Scalar>(p: &TrigPoly<T>) -> TrigPoly<T> {
    let k = |i: usize| T::lit((i + 1) as f64);
    TrigPoly {
        a0: T::zero(),
        a: p.b.iter().enumerate().map(|(i, &bk)| k(i) * bk).collect(),
        b: p.a.iter().enumerate().map(|(i, &ak)| -k(i) * ak).collect(),
    }
}
