//! Zeros of a 3-nice function, its derivative and its second derivative:
//! the admissibility check for a 6-tuple and a construction realizing any
//! admissible one.

mod construct;
mod inequalities;
mod spline;

pub use construct::{construct_3nice, construct_3nice_with_radius, MAX_RADIUS_HALVINGS};
pub use inequalities::{
    case_comparisons, check_case_inequalities, check_inequalities, inequality_comparisons,
    CasePart, CaseReport, CaseViolation, Comparison, InequalityLine, InequalityViolation,
    TupleCase, STRICT_TOL,
};
pub use spline::{evaluate, ConvexDerivativeSpline};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::Arrangement;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Rolle3Error {
    #[error("inadmissible tuple: {0} violated")]
    Inadmissible(InequalityLine),
    #[error("balancing failed on the {side} side")]
    BalancingFailed { side: &'static str },
    #[error("x = {x} outside spline domain [{lo}, {hi}]")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },
    #[error("derivative order {0} not available (expected 0, 1 or 2)")]
    BadOrder(usize),
    #[error("derivative of order {order} has {found} zeros, expected {expected}")]
    ZeroCount {
        order: usize,
        found: usize,
        expected: usize,
    },
    #[error("arrangement has {0} rows, expected 3")]
    NotCubic(usize),
}

/// Zeros `x1 < x2 < x3` of f, `y1 < y2` of f', and `z1` of f''.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tuple3Arrangement<T> {
    pub x1: T,
    pub x2: T,
    pub x3: T,
    pub y1: T,
    pub y2: T,
    pub z1: T,
}

impl<T: Scalar> Tuple3Arrangement<T> {
    pub fn new(x1: T, x2: T, x3: T, y1: T, y2: T, z1: T) -> Self {
        Self {
            x1,
            x2,
            x3,
            y1,
            y2,
            z1,
        }
    }

    /// In the order `(x1, x2, x3, y1, y2, z1)`.
    pub fn from_array(v: [T; 6]) -> Self {
        Self::new(v[0], v[1], v[2], v[3], v[4], v[5])
    }

    pub fn to_array(self) -> [T; 6] {
        [self.x1, self.x2, self.x3, self.y1, self.y2, self.z1]
    }

    pub fn from_arrangement(a: &Arrangement<T>) -> Result<Self, Rolle3Error> {
        if a.n() != 3 {
            return Err(Rolle3Error::NotCubic(a.n()));
        }
        let (x, y, z) = (a.row(0), a.row(1), a.row(2));
        Ok(Self::new(x[0], x[1], x[2], y[0], y[1], z[0]))
    }

    /// Image under `x -> -x`.
    pub fn mirrored(self) -> Self {
        Self::new(-self.x3, -self.x2, -self.x1, -self.y2, -self.y1, -self.z1)
    }

    pub fn map(self, f: impl Fn(T) -> T) -> Self {
        Self::from_array(self.to_array().map(f))
    }

    /// `x3 - x1`.
    pub fn span(&self) -> T {
        self.x3 - self.x1
    }

    /// Largest entrywise deviation from `other`, relative to this tuple's span.
    pub fn relative_deviation(&self, other: &Self) -> T {
        let span = self.span().abs().max(T::min_positive_value());
        self.to_array()
            .iter()
            .zip(other.to_array().iter())
            .map(|(a, b)| (*a - *b).abs() / span)
            .fold(T::zero(), T::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{arrangement, RootList};

    #[test]
    fn reads_tuple_from_cubic_arrangement() {
        let a = arrangement(&RootList::new(vec![0.0f64, 1.0, 4.0]).unwrap()).unwrap();
        let t = Tuple3Arrangement::from_arrangement(&a).unwrap();
        assert_eq!((t.x1, t.x2, t.x3), (0.0, 1.0, 4.0));
        assert!((t.z1 - 5.0 / 3.0).abs() < 1e-12);
        let a2 = arrangement(&RootList::new(vec![0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(
            Tuple3Arrangement::from_arrangement(&a2),
            Err(Rolle3Error::NotCubic(2))
        );
    }

    #[test]
    fn mirror_is_an_involution() {
        let t = Tuple3Arrangement::new(0.0, 1.0, 4.0, 0.4, 2.8, 1.6);
        assert_eq!(t.mirrored().mirrored(), t);
        assert_eq!(t.mirrored().x1, -4.0);
        assert_eq!(t.mirrored().y1, -2.8);
    }
}
