use super::{CoefficientPoly, PolyError, RootList};
use crate::scalar::Scalar;

const MAX_ITER: usize = 300;

/// A real function of one variable that can report its value and slope.
pub trait Univariate<T> {
    fn degree(&self) -> usize;
    fn eval_with_slope(&self, x: T) -> (T, T);
}

impl<T: Scalar> Univariate<T> for CoefficientPoly<T> {
    fn degree(&self) -> usize {
        CoefficientPoly::degree(self)
    }

    fn eval_with_slope(&self, x: T) -> (T, T) {
        CoefficientPoly::eval_with_slope(self, x)
    }
}

/// Derivative of `prod (x - r)` evaluated directly from the roots, without
/// expanding coefficients. Accurate for clustered roots where the dense form
/// cancels badly.
#[derive(Debug, Clone, Copy)]
pub struct ProductDerivative<'a, T> {
    roots: &'a [T],
}

impl<'a, T: Scalar> ProductDerivative<'a, T> {
    pub fn new(roots: &'a [T]) -> Self {
        Self { roots }
    }
}

impl<T: Scalar> Univariate<T> for ProductDerivative<'_, T> {
    fn degree(&self) -> usize {
        self.roots.len().saturating_sub(1)
    }

    fn eval_with_slope(&self, x: T) -> (T, T) {
        // Running (P, P', P'') of the partial product.
        let two = T::lit(2.0);
        let (mut p0, mut p1, mut p2) = (T::one(), T::zero(), T::zero());
        for &r in self.roots {
            let d = x - r;
            p2 = p2 * d + two * p1;
            p1 = p1 * d + p0;
            p0 = p0 * d;
        }
        (p1, p2)
    }
}

/// Finds the `deg(p)` zeros of `p`, one strictly inside each gap of
/// `bracket`. Each bracket must carry a sign change; otherwise the
/// interlacing precondition is broken.
pub fn isolate_roots_interlaced<T: Scalar, P: Univariate<T>>(
    p: &P,
    bracket: &RootList<T>,
) -> Result<RootList<T>, PolyError> {
    let b = bracket.as_slice();
    if p.degree() + 1 != b.len() {
        return Err(PolyError::DegreeMismatch {
            degree: p.degree(),
            brackets: b.len(),
        });
    }
    let roots = b
        .windows(2)
        .enumerate()
        .map(|(interval, w)| {
            refine_bracketed(p, w[0], w[1]).ok_or(PolyError::InterlacingViolated { interval })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RootList::from_isolated(roots))
}

/// Safeguarded Newton inside a sign-change bracket. Stops once the bracket
/// is no wider than `refine_tol * (1 + |x|)` or an exact zero is hit.
pub(crate) fn refine_bracketed<T: Scalar, P: Univariate<T>>(p: &P, lo: T, hi: T) -> Option<T> {
    let (flo, _) = p.eval_with_slope(lo);
    let (fhi, _) = p.eval_with_slope(hi);
    if flo == T::zero() || fhi == T::zero() || flo.signum() == fhi.signum() {
        return None;
    }
    // f(neg) < 0 < f(pos)
    let (mut neg, mut pos) = if flo < T::zero() { (lo, hi) } else { (hi, lo) };
    let half = T::lit(0.5);
    let mut x = half * (lo + hi);
    let mut step_old = (hi - lo).abs();
    let mut step = step_old;
    let (mut fx, mut dfx) = p.eval_with_slope(x);

    for _ in 0..MAX_ITER {
        if fx == T::zero() {
            return Some(x);
        }
        if fx < T::zero() {
            neg = x;
        } else {
            pos = x;
        }
        let tol = T::refine_tol() * (T::one() + x.abs());
        if (pos - neg).abs() <= tol {
            return Some(x);
        }

        let (a, b) = if neg < pos { (neg, pos) } else { (pos, neg) };
        let newton = x - fx / dfx;
        let newton_ok = newton.is_finite()
            && newton > a
            && newton < b
            && (fx + fx).abs() <= (step_old * dfx).abs();
        step_old = step;
        let next = if newton_ok { newton } else { half * (a + b) };
        step = (next - x).abs();
        x = next;
        let (v, d) = p.eval_with_slope(x);
        fx = v;
        dfx = d;

        if newton_ok && step <= half * tol && fx != T::zero() {
            // Converged in value; probe one half-width on the far side so the
            // bracket itself closes.
            let probe = if (fx < T::zero()) == (pos > x) {
                (x + half * tol).min(b)
            } else {
                (x - half * tol).max(a)
            };
            let (fp, _) = p.eval_with_slope(probe);
            if fp.signum() != fx.signum() || fp == T::zero() {
                if fp == T::zero() {
                    return Some(probe);
                }
                return Some(x);
            }
        }
    }
    Some(x)
}
