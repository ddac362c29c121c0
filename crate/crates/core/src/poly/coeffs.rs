use num_traits::{FromPrimitive, Num};

use super::{PolyError, RootList};
use crate::scalar::Scalar;

/// Dense polynomial, coefficients in ascending powers. Generic over any
/// numeric ring so the same expansion runs on floats and on exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Num + FromPrimitive> CoefficientPoly<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self, PolyError> {
        match coeffs.last() {
            Some(c) if !c.is_zero() => Ok(Self { coeffs }),
            _ => Err(PolyError::ZeroLeading),
        }
    }

    /// Monic product of `(x - r)` over `roots`, multiplied factor by factor.
    pub fn from_roots(roots: &[T]) -> Self {
        let mut coeffs = Vec::with_capacity(roots.len() + 1);
        coeffs.push(T::one());
        for r in roots {
            // (c_0 + c_1 x + ...)(x - r)
            coeffs.push(T::zero());
            for k in (0..coeffs.len()).rev() {
                let shifted = if k > 0 {
                    coeffs[k - 1].clone()
                } else {
                    T::zero()
                };
                coeffs[k] = shifted - coeffs[k].clone() * r.clone();
            }
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &T {
        self.coeffs.last().expect("nonempty by construction")
    }

    pub fn derivative(&self) -> Result<Self, PolyError> {
        if self.degree() == 0 {
            return Err(PolyError::ConstantDerivative);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_usize(k).expect("small integer"))
            .collect();
        Ok(Self { coeffs })
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Self {
        let lead = self.leading().clone();
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.clone() / lead.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> CoefficientPoly<T> {
    /// Value and first derivative in one Horner pass.
    pub fn eval_with_slope(&self, x: T) -> (T, T) {
        let mut value = T::zero();
        let mut slope = T::zero();
        for c in self.coeffs.iter().rev() {
            slope = slope * x + value;
            value = value * x + *c;
        }
        (value, slope)
    }
}

pub fn coefficients_from_roots<T: Scalar>(r: &RootList<T>) -> CoefficientPoly<T> {
    CoefficientPoly::from_roots(r.as_slice())
}

pub fn differentiate<T: Clone + Num + FromPrimitive>(
    p: &CoefficientPoly<T>,
) -> Result<CoefficientPoly<T>, PolyError> {
    p.derivative()
}
