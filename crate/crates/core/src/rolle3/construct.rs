use super::inequalities::{check_inequalities, TupleCase, STRICT_TOL};
use super::{ConvexDerivativeSpline, Rolle3Error, Tuple3Arrangement};
use crate::scalar::Scalar;

/// How many times the fillet radius may be halved before giving up.
pub const MAX_RADIUS_HALVINGS: usize = 8;
const RADIUS_FRACTION: f64 = 1e-2;

/// Builds a convex C1 profile `D` with zeros exactly at `y1, y2`, `D'`
/// vanishing exactly at `z1`, and `integral D = 0` over `[x1, x2]` and
/// `[x2, x3]`, so that `f = integral_{x1}^x D` has the zeros `x1, x2, x3`.
///
/// The profile is piecewise linear with corners at `x2` and near `z1`
/// (extreme case of the necessity argument, slightly tilted so that `D'`
/// never vanishes on a stretch), plus one extra corner inside each outer
/// interval whose slope is tuned to balance the areas. Every corner is
/// rounded by a parabolic fillet of half-width `epsilon`. The result is
/// scaled so that `min D = -1`.
pub fn construct_3nice<T: Scalar>(
    t: &Tuple3Arrangement<T>,
) -> Result<ConvexDerivativeSpline<T>, Rolle3Error> {
    construct_3nice_with_radius(t, default_radius(t))
}

/// As [`construct_3nice`] with an explicit starting fillet radius. The
/// radius is halved on balancing failure, up to [`MAX_RADIUS_HALVINGS`]
/// times.
pub fn construct_3nice_with_radius<T: Scalar>(
    t: &Tuple3Arrangement<T>,
    radius: T,
) -> Result<ConvexDerivativeSpline<T>, Rolle3Error> {
    if let Some(v) = check_inequalities(t).first() {
        return Err(Rolle3Error::Inadmissible(v.line));
    }
    let mut eps = radius;
    let mut last = Rolle3Error::BalancingFailed { side: "left" };
    for _ in 0..=MAX_RADIUS_HALVINGS {
        let built = match TupleCase::of(t) {
            TupleCase::X2BeforeZ1 => build_oriented(t, eps, false),
            TupleCase::Coincident => build_oriented(t, eps, true),
            TupleCase::Z1BeforeX2 => {
                build_oriented(&t.mirrored(), eps, false).map(|s| s.reflected(*t))
            }
        };
        match built {
            Ok(s) => return Ok(s),
            Err(e @ Rolle3Error::BalancingFailed { .. }) => {
                last = e;
                eps = eps * T::lit(0.5);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// One percent of the smallest gap between distinct tuple entries.
fn default_radius<T: Scalar>(t: &Tuple3Arrangement<T>) -> T {
    let mut v = t.to_array();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let tol = T::lit(STRICT_TOL);
    let gap = v
        .windows(2)
        .map(|w| w[1] - w[0])
        .zip(v.windows(2))
        .filter(|(g, w)| *g > tol * (T::one() + w[0].abs().max(w[1].abs())))
        .map(|(g, _)| g)
        .fold(T::infinity(), T::min);
    T::lit(RADIUS_FRACTION) * gap
}

/// A corner of the piecewise-linear profile: the slope grows by `delta`
/// across `center`, rounded over `[center - left, center + right]`. The
/// rounding has `D'` piecewise linear with a kink at `center`, which keeps
/// the corner itself fixed even when the two widths differ. A leftward ramp
/// is anchored on its right, so it only lifts the profile left of the corner.
#[derive(Debug, Clone, Copy)]
struct Ramp<T> {
    center: T,
    delta: T,
    left: T,
    right: T,
    leftward: bool,
}

impl<T: Scalar> Ramp<T> {
    fn symmetric(center: T, eps: T, leftward: bool) -> Self {
        Self {
            center,
            delta: T::zero(),
            left: eps,
            right: eps,
            leftward,
        }
    }

    /// Widths chosen so that `D'` passes through zero exactly at the corner
    /// when the slope goes from `before < 0` to `after > 0`.
    fn through_zero(center: T, before: T, after: T, eps: T) -> Self {
        let (left, right) = if after >= -before {
            (eps, eps * (-before) / after)
        } else {
            (eps * after / (-before), eps)
        };
        Self {
            center,
            delta: after - before,
            left,
            right,
            leftward: false,
        }
    }

    /// Local quadratic coefficients on a piece starting at `a` with
    /// midpoint `m`.
    fn coeffs(&self, a: T, m: T) -> Option<[T; 3]> {
        let (c, d) = (self.center, self.delta);
        let two = T::lit(2.0);
        if self.leftward {
            let e = self.left;
            let w = c - a;
            if m <= c - e {
                Some([d * w, -d, T::zero()])
            } else if m < c + e {
                let v = w + e;
                let k = d / (T::lit(4.0) * e);
                Some([k * v * v, -two * k * v, k])
            } else {
                None
            }
        } else {
            let (e1, e2) = (self.left, self.right);
            let theta = e2 / (e1 + e2);
            let u = a - c;
            if m >= c + e2 {
                Some([d * u, d, T::zero()])
            } else if m >= c {
                let k2 = (T::one() - theta) / (two * e2);
                Some([
                    d * (theta * e1 / two + theta * u + k2 * u * u),
                    d * (theta + two * k2 * u),
                    d * k2,
                ])
            } else if m > c - e1 {
                let v = a - (c - e1);
                let k1 = theta / (two * e1);
                Some([d * k1 * v * v, d * two * k1 * v, d * k1])
            } else {
                None
            }
        }
    }

    fn span(&self) -> (T, T) {
        if self.leftward {
            (self.center - self.left, self.center + self.left)
        } else {
            (self.center - self.left, self.center + self.right)
        }
    }
}

struct Profile<T> {
    // base line through (root, 0)
    slope: T,
    root: T,
    ramps: Vec<Ramp<T>>,
    eps: T,
    domain: (T, T),
}

impl<T: Scalar> Profile<T> {
    fn spline(&self, source: Tuple3Arrangement<T>) -> ConvexDerivativeSpline<T> {
        let (lo, hi) = self.domain;
        let mut knots = vec![lo, hi];
        for r in &self.ramps {
            let (a, b) = r.span();
            for k in [a, r.center, b] {
                if k > lo && k < hi {
                    knots.push(k);
                }
            }
        }
        knots.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        knots.dedup();

        let pieces = knots
            .windows(2)
            .map(|w| {
                let (a, m) = (w[0], T::lit(0.5) * (w[0] + w[1]));
                let mut c = [self.slope * (a - self.root), self.slope, T::zero()];
                for add in self.ramps.iter().filter_map(|r| r.coeffs(a, m)) {
                    for (ci, ai) in c.iter_mut().zip(add) {
                        *ci = *ci + ai;
                    }
                }
                c
            })
            .collect();
        ConvexDerivativeSpline::from_pieces(source, self.eps, knots, pieces)
    }

    /// Fillets must not overlap each other, the zeros of `D`, or the ends.
    fn fillets_fit(&self, zeros: [T; 2]) -> bool {
        let mut spans: Vec<(T, T)> = self.ramps.iter().map(Ramp::span).collect();
        spans.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        let separated = spans.windows(2).all(|w| w[0].1 < w[1].0);
        let clear = spans.iter().all(|&(a, b)| {
            zeros.iter().all(|&z| z < a || z > b) && a > self.domain.0 && b < self.domain.1
        });
        separated && clear
    }
}

/// Case `x2 <= z1`.
fn build_oriented<T: Scalar>(
    t: &Tuple3Arrangement<T>,
    eps: T,
    coincident: bool,
) -> Result<ConvexDerivativeSpline<T>, Rolle3Error> {
    let Tuple3Arrangement {
        x1,
        x2,
        x3,
        y1,
        y2,
        z1,
    } = *t;
    let (one, two, half) = (T::one(), T::lit(2.0), T::lit(0.5));
    let fail = |side| Rolle3Error::BalancingFailed { side };

    // The slope through y2 is 1 until the final rescale; the z1 corner sits
    // exactly at z1.
    let (s1, mut ramps) = if coincident {
        let s1 = -(y2 - z1) / (z1 - y1);
        (s1, vec![Ramp::through_zero(z1, s1, one, eps)])
    } else {
        // Slack of the right trapezoid bound; positive for admissible tuples.
        let slack = (y2 - z1) * (y2 - z1) + two * (y2 - z1) * (z1 - x2) - (x3 - y2) * (x3 - y2);
        // Small negative slope on [x2, z1] spending half of that slack.
        let tilt = half
            * ((y2 - z1) / (z1 - y1))
                .min(slack / ((z1 - x2) * (z1 - x2)))
                .min(one);
        let at_x2 = (z1 - y2) + tilt * (z1 - x2);
        let s1 = at_x2 / (x2 - y1);
        if !(s1 < -tilt) {
            return Err(fail("middle"));
        }
        let mut kink = Ramp::symmetric(x2, eps, false);
        kink.delta = -tilt - s1;
        (s1, vec![kink, Ramp::through_zero(z1, -tilt, one, eps)])
    };
    if !(s1 < T::zero()) {
        return Err(fail("middle"));
    }

    ramps.push(Ramp::symmetric(half * (x1 + y1), eps, true));
    ramps.push(Ramp::symmetric(half * (y2 + x3), eps, false));
    let margin = (x3 - x1) * T::lit(0.25);
    let mut profile = Profile {
        slope: s1,
        root: y1,
        ramps,
        eps,
        domain: (x1 - margin, x3 + margin),
    };
    if !profile.fillets_fit([y1, y2]) {
        return Err(fail("fillet"));
    }
    let left_idx = profile.ramps.len() - 2;
    let right_idx = profile.ramps.len() - 1;

    // Both balance conditions are affine in the extra slope, and each
    // depends only on its own outer corner.
    let balance = |profile: &mut Profile<T>, idx: usize, a: T, b: T, side| {
        profile.ramps[idx].delta = T::zero();
        let f0 = profile.spline(*t).integral(a, b);
        if !(f0 < T::zero()) {
            return Err(fail(side));
        }
        profile.ramps[idx].delta = one;
        let f1 = profile.spline(*t).integral(a, b);
        let rate = f1 - f0;
        if !(rate > T::zero()) {
            return Err(fail(side));
        }
        profile.ramps[idx].delta = -f0 / rate;
        Ok(())
    };
    balance(&mut profile, left_idx, x1, x2, "left")?;
    balance(&mut profile, right_idx, x2, x3, "right")?;

    let spline = profile.spline(*t);
    let depth = spline.d(z1);
    if !(depth < T::zero()) {
        return Err(fail("middle"));
    }
    Ok(spline.scaled(-one / depth))
}
