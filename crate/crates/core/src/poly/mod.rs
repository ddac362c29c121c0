//! Real-rooted polynomials held by their roots, the triangular table of
//! zeros of all their derivatives, and the order type of that table.

mod arrangement;
mod coeffs;
mod isolate;
mod sequence;

pub use arrangement::{
    arrangement, check_standard_rolle, symbolic_sequence, Arrangement, RolleViolation,
};
pub use coeffs::{coefficients_from_roots, differentiate, CoefficientPoly};
pub(crate) use isolate::refine_bracketed;
pub use isolate::{isolate_roots_interlaced, ProductDerivative, Univariate};
pub(crate) use sequence::render as render_word;
pub use sequence::SymbolicSequence;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

/// Relative separation below which two zeros of an arrangement are treated
/// as colliding.
pub const DEFAULT_SEP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("root list is empty")]
    Empty,
    #[error("root {index} is not finite")]
    NonFinite { index: usize },
    #[error("roots {index} and {} are not strictly increasing with a resolvable gap", index + 1)]
    NotIncreasing { index: usize },
    #[error("leading coefficient is zero")]
    ZeroLeading,
    #[error("constant has no derivative row")]
    ConstantDerivative,
    #[error("degree {degree} does not match a bracket of {brackets} roots")]
    DegreeMismatch { degree: usize, brackets: usize },
    #[error("interlacing violated in bracket {interval}")]
    InterlacingViolated { interval: usize },
    #[error("arrangement row {row} is malformed")]
    MalformedRow { row: usize },
    #[error("not strictly nice: zeros of rows {row_a} and {row_b} collide near {value}")]
    NotStrictlyNice {
        row_a: usize,
        row_b: usize,
        value: f64,
    },
    #[error("word {word} is not an admissible symbolic sequence for n = {n}")]
    NotRolleWord { word: String, n: usize },
}

/// Strictly increasing finite zeros of a monic real-rooted polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<T>", into = "Vec<T>")]
#[serde(bound(
    serialize = "T: Scalar + Serialize",
    deserialize = "T: Scalar + Deserialize<'de>"
))]
pub struct RootList<T: Scalar> {
    roots: Vec<T>,
}

impl<T: Scalar> RootList<T> {
    /// Validates ordering and separation. Adjacent roots must differ by more
    /// than four refinement widths so that bracketed isolation stays sound.
    pub fn new(roots: Vec<T>) -> Result<Self, PolyError> {
        if roots.is_empty() {
            return Err(PolyError::Empty);
        }
        if let Some(index) = roots.iter().position(|r| !r.is_finite()) {
            return Err(PolyError::NonFinite { index });
        }
        let four = T::lit(4.0);
        for (index, w) in roots.windows(2).enumerate() {
            let scale = T::one() + w[0].abs().max(w[1].abs());
            if !(w[1] - w[0] > four * T::refine_tol() * scale) {
                return Err(PolyError::NotIncreasing { index });
            }
        }
        Ok(Self { roots })
    }

    /// Sorts before validating.
    pub fn from_unsorted(mut roots: Vec<T>) -> Result<Self, PolyError> {
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        Self::new(roots)
    }

    /// Rows produced by bracketed isolation are increasing by construction;
    /// they may be closer together than `new` admits.
    pub(crate) fn from_isolated(roots: Vec<T>) -> Self {
        debug_assert!(roots.windows(2).all(|w| w[0] < w[1]));
        Self { roots }
    }

    pub fn as_slice(&self) -> &[T] {
        &self.roots
    }

    pub fn into_vec(self) -> Vec<T> {
        self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Degree of the monic polynomial these roots define.
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn min_gap(&self) -> Option<T> {
        self.roots
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(None, |acc, g| Some(acc.map_or(g, |a: T| a.min(g))))
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.roots.iter()
    }
}

impl<T: Scalar> AsRef<[T]> for RootList<T> {
    fn as_ref(&self) -> &[T] {
        &self.roots
    }
}

impl<T: Scalar> TryFrom<Vec<T>> for RootList<T> {
    type Error = PolyError;

    fn try_from(roots: Vec<T>) -> Result<Self, Self::Error> {
        Self::new(roots)
    }
}

impl<T: Scalar> From<RootList<T>> for Vec<T> {
    fn from(r: RootList<T>) -> Vec<T> {
        r.roots
    }
}
