use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{TrigError, TrigPoly};
use crate::combinatorics::CircularSequence;
use crate::poly::DEFAULT_SEP_TOL;
use crate::scalar::Scalar;
use crate::search::stream;

/// Largest grid tried by [`roots_on_circle_auto`], per unit of degree.
pub const MAX_AUTO_GRID: usize = 1 << 16;

/// Zeros on one period, sorted in `[0, 2pi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleRootList<T> {
    angles: Vec<T>,
}

impl<T: Scalar> CircleRootList<T> {
    pub fn angles(&self) -> &[T] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Smallest cyclic distance between consecutive zeros.
    pub fn min_gap(&self) -> Option<T> {
        cyclic_min_gap(&self.angles)
    }
}

fn tau<T: Scalar>() -> T {
    T::TAU()
}

fn angle_tol<T: Scalar>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(16.0))
}

fn cyclic_min_gap<T: Scalar>(sorted: &[T]) -> Option<T> {
    if sorted.len() < 2 {
        return None;
    }
    let wrap = sorted[0] + tau::<T>() - sorted[sorted.len() - 1];
    Some(sorted.windows(2).map(|w| w[1] - w[0]).fold(wrap, T::min))
}

fn bisect<T: Scalar>(p: &TrigPoly<T>, mut lo: T, mut hi: T, mut flo: T) -> T {
    let half = T::lit(0.5);
    let tol = angle_tol::<T>();
    while hi - lo > tol {
        let mid = half * (lo + hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        let fm = p.eval(mid);
        if fm == T::zero() {
            return mid;
        }
        if (fm < T::zero()) == (flo < T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    half * (lo + hi)
}

/// Sign changes over `grid` uniform points, each refined by bisection.
/// Tangential zeros are invisible to the scan.
pub fn roots_on_circle<T: Scalar>(
    p: &TrigPoly<T>,
    grid: usize,
) -> Result<CircleRootList<T>, TrigError> {
    let n = p.degree();
    if grid < 8 * n {
        return Err(TrigError::GridTooSmall { grid, min: 8 * n });
    }
    let step = tau::<T>() / T::lit(grid as f64);
    let xs: Vec<T> = (0..=grid).map(|i| step * T::lit(i as f64)).collect();
    let mut fs: Vec<T> = xs[..grid].iter().map(|&x| p.eval(x)).collect();
    fs.push(fs[0]);

    let mut angles = Vec::new();
    for i in 0..grid {
        let (f0, f1) = (fs[i], fs[i + 1]);
        if f0 == T::zero() {
            angles.push(xs[i]);
        } else if f1 != T::zero() && (f0 < T::zero()) != (f1 < T::zero()) {
            let x = bisect(p, xs[i], xs[i + 1], f0);
            angles.push(if x >= tau::<T>() { x - tau::<T>() } else { x });
        }
    }
    angles.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
    if angles.len() > 2 * n {
        return Err(TrigError::TooManyZeros {
            found: angles.len(),
            max: 2 * n,
        });
    }
    if let Some(gap) = cyclic_min_gap(&angles) {
        if gap < T::lit(4.0) * step {
            return Err(TrigError::GridTooCoarse {
                gap: gap.to_f64_lossy(),
                step: step.to_f64_lossy(),
            });
        }
    }
    Ok(CircleRootList { angles })
}

/// Doubles the grid from `max(64, 8n)` until no coarseness advisory is
/// raised and all `2n` zeros are seen, or the grid reaches
/// `MAX_AUTO_GRID * n`.
pub fn roots_on_circle_auto<T: Scalar>(p: &TrigPoly<T>) -> Result<CircleRootList<T>, TrigError> {
    let n = p.degree();
    let cap = MAX_AUTO_GRID * n;
    let mut grid = (8 * n).max(64);
    loop {
        match roots_on_circle(p, grid) {
            Ok(r) if r.len() == 2 * n || grid >= cap => return Ok(r),
            Err(TrigError::GridTooCoarse { .. }) if grid < cap => {}
            Ok(_) => {}
            Err(e) => return Err(e),
        }
        grid *= 2;
    }
}

/// Degree-`n` polynomial proportional to `prod_j sin((x - r_j) / 2)` over
/// `2n` zeros, fitted by a discrete Fourier transform on `4n + 1` samples
/// and scaled so the leading pair has unit norm.
pub fn real_rooted_trig_from_zeros<T: Scalar>(zeros: &[T]) -> Result<TrigPoly<T>, TrigError> {
    if zeros.is_empty() || zeros.len() % 2 == 1 {
        return Err(TrigError::OddZeroCount(zeros.len()));
    }
    if let Some(&z) = zeros.iter().find(|&&z| !(z >= T::zero() && z < tau::<T>())) {
        return Err(TrigError::AngleOutOfRange(z.to_f64_lossy()));
    }
    let mut sorted = zeros.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
    if let Some(gap) = cyclic_min_gap(&sorted) {
        if gap <= angle_tol::<T>() {
            let at = sorted
                .windows(2)
                .find(|w| w[1] - w[0] <= angle_tol::<T>())
                .map_or(sorted[0], |w| w[0]);
            return Err(TrigError::CoincidentZeros(at.to_f64_lossy()));
        }
    }

    let n = zeros.len() / 2;
    let m = 4 * n + 1;
    let half = T::lit(0.5);
    let samples: Vec<(T, T)> = (0..m)
        .map(|i| {
            let x = tau::<T>() * T::lit(i as f64) / T::lit(m as f64);
            let g = zeros
                .iter()
                .fold(T::one(), |acc, &r| acc * (half * (x - r)).sin());
            (x, g)
        })
        .collect();
    let mf = T::lit(m as f64);
    let two = T::lit(2.0);
    let a0 = samples.iter().fold(T::zero(), |acc, &(_, g)| acc + g) / mf;
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for k in 1..=n {
        let kf = T::lit(k as f64);
        let (sa, sb) = samples
            .iter()
            .fold((T::zero(), T::zero()), |(sa, sb), &(x, g)| {
                let (s, c) = (kf * x).sin_cos();
                (sa + g * c, sb + g * s)
            });
        a.push(two * sa / mf);
        b.push(two * sb / mf);
    }
    let norm = a[n - 1].hypot(b[n - 1]);
    if !(norm > T::zero()) {
        return Err(TrigError::ZeroLeading);
    }
    let scale = norm.recip();
    TrigPoly::new(
        a0 * scale,
        a.into_iter().map(|c| c * scale).collect(),
        b.into_iter().map(|c| c * scale).collect(),
    )
}

/// Circular word of the zeros of `p, p', ..., p^(k-1)`, each of which must
/// have exactly `2n` simple zeros.
pub fn periodic_arrangement<T: Scalar>(
    p: &TrigPoly<T>,
    k: usize,
) -> Result<CircularSequence, TrigError> {
    let expected = 2 * p.degree();
    let mut labeled: Vec<(T, usize)> = Vec::with_capacity(expected * k);
    let mut current = p.clone();
    for order in 0..k {
        let roots = roots_on_circle_auto(&current)?;
        if roots.len() != expected {
            return Err(TrigError::ZeroCount {
                order,
                found: roots.len(),
                expected,
            });
        }
        labeled.extend(roots.angles.iter().map(|&x| (x, order)));
        current = current.derivative();
    }
    labeled.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"));

    let sep = T::lit(DEFAULT_SEP_TOL);
    let len = labeled.len();
    for i in 0..len {
        let (x0, o0) = labeled[i];
        let (x1, o1) = labeled[(i + 1) % len];
        let gap = if i + 1 == len {
            x1 + tau::<T>() - x0
        } else {
            x1 - x0
        };
        if len > 1 && gap <= sep * (T::one() + x0.abs().max(x1.abs())) {
            return Err(TrigError::NotStrictlyNice {
                order_a: o0,
                order_b: o1,
                angle: x0.to_f64_lossy(),
            });
        }
    }
    let word = labeled.iter().map(|&(_, o)| o as u8).collect();
    CircularSequence::new(word, expected, k).map_err(|_| TrigError::NotPeriodic)
}

/// Product-form polynomial of degree `n` whose `2n` zeros are uniform on
/// the circle subject to a cyclic gap of at least `min_gap`. Deterministic
/// in `(seed, index)`.
pub fn sample_product_form(
    n: usize,
    min_gap: f64,
    seed: u64,
    index: u64,
) -> Result<TrigPoly<f64>, TrigError> {
    if n == 0 {
        return Err(TrigError::ZeroDegree);
    }
    let tau = std::f64::consts::TAU;
    for round in 0.. {
        let mut rng = stream(seed, round, index);
        for _ in 0..64 {
            let mut zeros: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(0.0..tau)).collect();
            zeros.sort_by(f64::total_cmp);
            if cyclic_min_gap(&zeros).is_none_or(|g| g >= min_gap) {
                return real_rooted_trig_from_zeros(&zeros);
            }
        }
    }
    unreachable!("rejection sampling always terminates")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn sine_and_cosine_zeros() {
        let sin = TrigPoly::new(0.0, vec![0.0], vec![1.0]).unwrap();
        let r = roots_on_circle(&sin, 64).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.angles()[0], 0.0);
        assert!((r.angles()[1] - PI).abs() < 1e-12);

        let cos = TrigPoly::new(0.0, vec![1.0], vec![0.0]).unwrap();
        let r = roots_on_circle(&cos, 64).unwrap();
        assert!((r.angles()[0] - FRAC_PI_2).abs() < 1e-12);
        assert!((r.angles()[1] - 3.0 * FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn grid_guards() {
        let p = TrigPoly::new(0.0, vec![0.0, 0.0], vec![0.0, 1.0]).unwrap();
        assert_eq!(
            roots_on_circle(&p, 15),
            Err(TrigError::GridTooSmall { grid: 15, min: 16 })
        );
        let tight = real_rooted_trig_from_zeros(&[1.0, 1.05, 3.0, 5.0]).unwrap();
        // both zeros of the close pair are seen, 0.05 apart at step 2pi/200
        assert!(matches!(
            roots_on_circle(&tight, 200),
            Err(TrigError::GridTooCoarse { .. })
        ));
        assert_eq!(roots_on_circle_auto(&tight).unwrap().len(), 4);
    }

    #[test]
    fn prescribed_zeros_are_recovered() {
        let zeros = [0.3f64, 1.1, 2.0, 4.2];
        let p = real_rooted_trig_from_zeros(&zeros).unwrap();
        assert_eq!(p.degree(), 2);
        assert!((p.leading_norm() - 1.0).abs() < 1e-12);
        let r = roots_on_circle(&p, 256).unwrap();
        for (x, z) in r.angles().iter().zip(zeros) {
            assert!((x - z).abs() < 1e-10, "{x} vs {z}");
        }
    }

    #[test]
    fn quarter_turn_zeros_give_sin_2x() {
        let p = real_rooted_trig_from_zeros(&[0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2]).unwrap();
        let c = p.sin_coeffs()[1];
        assert!((c.abs() - 1.0).abs() < 1e-12);
        assert!(p.a0().abs() < 1e-12 && p.cos_coeffs().iter().all(|x| x.abs() < 1e-12));
        assert!(p.sin_coeffs()[0].abs() < 1e-12);
    }

    #[test]
    fn bad_zero_sets() {
        assert_eq!(
            real_rooted_trig_from_zeros::<f64>(&[1.0]),
            Err(TrigError::OddZeroCount(1))
        );
        assert!(matches!(
            real_rooted_trig_from_zeros(&[1.0, 1.0]),
            Err(TrigError::CoincidentZeros(_))
        ));
        assert!(matches!(
            real_rooted_trig_from_zeros(&[1.0, 7.0]),
            Err(TrigError::AngleOutOfRange(_))
        ));
    }

    #[test]
    fn sine_alternates_with_cosine() {
        let sin = TrigPoly::new(0.0, vec![0.0], vec![1.0]).unwrap();
        assert_eq!(periodic_arrangement(&sin, 2).unwrap().to_string(), "0101");
    }

    #[test]
    fn degree_two_sample_word() {
        let p = sample_product_form(2, 0.05, 3, 0).unwrap();
        let w = periodic_arrangement(&p, 2).unwrap();
        assert_eq!(w.word().len(), 8);
        assert_eq!((w.copies(), w.k()), (4, 2));
    }
}
