use serde::Serialize;

use super::{Rolle3Error, Tuple3Arrangement};
use crate::scalar::Scalar;

/// C1 piecewise-quadratic profile `D` standing in for f'. On piece `i`,
/// `D(x) = c0 + c1 t + c2 t^2` with `t = x - knots[i]`. The realized
/// function is `f(x) = integral of D from x1 to x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexDerivativeSpline<T> {
    pub(crate) source: Tuple3Arrangement<T>,
    pub(crate) fillet_radius: T,
    pub(crate) knots: Vec<T>,
    pub(crate) pieces: Vec<[T; 3]>,
    /// `f` at each knot.
    #[serde(skip)]
    pub(crate) f_at_knots: Vec<T>,
}

impl<T: Scalar> ConvexDerivativeSpline<T> {
    /// Assembles a spline from raw pieces and fixes the integration constant
    /// so that `f(source.x1) = 0`.
    pub(crate) fn from_pieces(
        source: Tuple3Arrangement<T>,
        fillet_radius: T,
        knots: Vec<T>,
        pieces: Vec<[T; 3]>,
    ) -> Self {
        debug_assert_eq!(knots.len(), pieces.len() + 1);
        let mut f_at_knots = Vec::with_capacity(knots.len());
        let mut acc = T::zero();
        f_at_knots.push(acc);
        for (w, c) in knots.windows(2).zip(&pieces) {
            acc = acc + antiderivative(c, w[1] - w[0]);
            f_at_knots.push(acc);
        }
        let mut s = Self {
            source,
            fillet_radius,
            knots,
            pieces,
            f_at_knots,
        };
        let offset = s.f(source.x1);
        for v in &mut s.f_at_knots {
            *v = *v - offset;
        }
        s
    }

    pub fn source(&self) -> &Tuple3Arrangement<T> {
        &self.source
    }

    pub fn fillet_radius(&self) -> T {
        self.fillet_radius
    }

    pub fn knots(&self) -> &[T] {
        &self.knots
    }

    pub fn pieces(&self) -> &[[T; 3]] {
        &self.pieces
    }

    pub fn domain(&self) -> (T, T) {
        (self.knots[0], self.knots[self.knots.len() - 1])
    }

    fn locate(&self, x: T) -> (usize, T) {
        let i = self
            .knots
            .partition_point(|&k| k <= x)
            .saturating_sub(1)
            .min(self.pieces.len() - 1);
        (i, x - self.knots[i])
    }

    // Unchecked evaluators; callers keep x inside the domain.
    pub(crate) fn f(&self, x: T) -> T {
        let (i, t) = self.locate(x);
        self.f_at_knots[i] + antiderivative(&self.pieces[i], t)
    }

    pub(crate) fn d(&self, x: T) -> T {
        let (i, t) = self.locate(x);
        let [c0, c1, c2] = self.pieces[i];
        c0 + t * (c1 + t * c2)
    }

    pub(crate) fn d_prime(&self, x: T) -> T {
        let (i, t) = self.locate(x);
        let [_, c1, c2] = self.pieces[i];
        c1 + T::lit(2.0) * c2 * t
    }

    /// Exact integral of `D` over `[a, b]`.
    pub fn integral(&self, a: T, b: T) -> T {
        self.f(b) - self.f(a)
    }

    pub(crate) fn eval_order(&self, x: T, order: usize) -> T {
        match order {
            0 => self.f(x),
            1 => self.d(x),
            _ => self.d_prime(x),
        }
    }

    /// Multiplies `D` (and so `f`) by `k`.
    pub(crate) fn scaled(mut self, k: T) -> Self {
        for c in &mut self.pieces {
            *c = c.map(|v| v * k);
        }
        for v in &mut self.f_at_knots {
            *v = *v * k;
        }
        self
    }

    /// `D(x) -> D(-x)`, the profile realizing the mirrored tuple.
    pub(crate) fn reflected(&self, source: Tuple3Arrangement<T>) -> Self {
        let knots: Vec<T> = self.knots.iter().rev().map(|&k| -k).collect();
        let two = T::lit(2.0);
        let pieces = self
            .knots
            .windows(2)
            .zip(&self.pieces)
            .rev()
            .map(|(w, &[c0, c1, c2])| {
                let h = w[1] - w[0];
                [c0 + c1 * h + c2 * h * h, -c1 - two * c2 * h, c2]
            })
            .collect();
        Self::from_pieces(source, self.fillet_radius, knots, pieces)
    }

    /// Zeros of f, f' and f'' located by sign scanning every piece and
    /// bisecting; tangential zeros are not seen.
    pub fn zeros(&self, order: usize) -> Vec<T> {
        const SUBDIVISIONS: usize = 16;
        let mut grid = Vec::with_capacity(self.pieces.len() * SUBDIVISIONS + 1);
        for w in self.knots.windows(2) {
            let h = (w[1] - w[0]) / T::lit(SUBDIVISIONS as f64);
            for s in 0..SUBDIVISIONS {
                grid.push(w[0] + h * T::lit(s as f64));
            }
        }
        grid.push(self.domain().1);

        let mut out: Vec<T> = Vec::new();
        let mut prev: Option<(T, T)> = None;
        for &x in &grid {
            let v = self.eval_order(x, order);
            if v == T::zero() {
                out.push(x);
                prev = None;
                continue;
            }
            if let Some((px, pv)) = prev {
                if pv.signum() != v.signum() {
                    out.push(self.bisect(order, px, x));
                }
            }
            prev = Some((x, v));
        }
        out
    }

    fn bisect(&self, order: usize, mut a: T, mut b: T) -> T {
        let fa = self.eval_order(a, order);
        let half = T::lit(0.5);
        for _ in 0..200 {
            let m = half * (a + b);
            if (b - a) <= T::refine_tol() * (T::one() + m.abs()) {
                return m;
            }
            let fm = self.eval_order(m, order);
            if fm == T::zero() {
                return m;
            }
            if fm.signum() == fa.signum() {
                a = m;
            } else {
                b = m;
            }
        }
        half * (a + b)
    }

    /// Arrangement realized by the spline; fails unless f, f', f'' have
    /// exactly 3, 2 and 1 zeros on the domain.
    pub fn recovered_arrangement(&self) -> Result<Tuple3Arrangement<T>, Rolle3Error> {
        let x = self.zeros(0);
        let y = self.zeros(1);
        let z = self.zeros(2);
        for (order, found, expected) in [(0, x.len(), 3), (1, y.len(), 2), (2, z.len(), 1)] {
            if found != expected {
                return Err(Rolle3Error::ZeroCount {
                    order,
                    found,
                    expected,
                });
            }
        }
        Ok(Tuple3Arrangement::new(x[0], x[1], x[2], y[0], y[1], z[0]))
    }
}

/// `integral_0^t (c0 + c1 s + c2 s^2) ds`.
fn antiderivative<T: Scalar>(c: &[T; 3], t: T) -> T {
    let [c0, c1, c2] = *c;
    t * (c0 + t * (c1 * T::lit(0.5) + t * c2 / T::lit(3.0)))
}

/// f (`order` 0), f' = D (`order` 1) or f'' = D' (`order` 2) at `x`.
pub fn evaluate<T: Scalar>(
    s: &ConvexDerivativeSpline<T>,
    x: T,
    order: usize,
) -> Result<T, Rolle3Error> {
    let (lo, hi) = s.domain();
    if !(x >= lo && x <= hi) {
        return Err(Rolle3Error::OutsideDomain {
            x: x.to_f64_lossy(),
            lo: lo.to_f64_lossy(),
            hi: hi.to_f64_lossy(),
        });
    }
    if order > 2 {
        return Err(Rolle3Error::BadOrder(order));
    }
    Ok(s.eval_order(x, order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> ConvexDerivativeSpline<f64> {
        // D(x) = x^2 - 1 on [-2, 0] and [0, 2]
        let t = Tuple3Arrangement::new(-3f64.sqrt(), 0.0, 3f64.sqrt(), -1.0, 1.0, 0.0);
        ConvexDerivativeSpline::from_pieces(
            t,
            0.1,
            vec![-2.0, 0.0, 2.0],
            vec![[3.0, -4.0, 1.0], [-1.0, 0.0, 1.0]],
        )
    }

    #[test]
    fn evaluates_all_orders() {
        let s = toy();
        // f(x) = x^3/3 - x, zero at -sqrt(3)
        assert!(evaluate(&s, -3f64.sqrt(), 0).unwrap().abs() < 1e-14);
        assert!((evaluate(&s, 1.5, 0).unwrap() - (1.125 - 1.5)).abs() < 1e-14);
        assert!((evaluate(&s, -1.5, 1).unwrap() - 1.25).abs() < 1e-14);
        assert!((evaluate(&s, 0.5, 2).unwrap() - 1.0).abs() < 1e-14);
        assert!(evaluate(&s, 2.5, 0).is_err());
        assert_eq!(evaluate(&s, 0.0, 3), Err(Rolle3Error::BadOrder(3)));
    }

    #[test]
    fn finds_zeros_of_each_order() {
        let s = toy();
        let t = s.recovered_arrangement().unwrap();
        assert!((t.x1 + 3f64.sqrt()).abs() < 1e-12);
        assert!(t.x2.abs() < 1e-12);
        assert!((t.y2 - 1.0).abs() < 1e-12);
        assert!(t.z1.abs() < 1e-12);
    }

    #[test]
    fn reflection_mirrors_profile() {
        let s = toy();
        let r = s.reflected(s.source().mirrored());
        for &x in &[-1.7, -0.3, 0.0, 0.9, 1.99] {
            assert!((r.d(x) - s.d(-x)).abs() < 1e-13);
            assert!((r.d_prime(x) + s.d_prime(-x)).abs() < 1e-13);
        }
    }

    #[test]
    fn integral_matches_closed_form() {
        let s = toy();
        // integral of x^2 - 1 over [-1, 2] = 3 - 3 = 0
        assert!(s.integral(-1.0, 2.0).abs() < 1e-14);
    }
}
