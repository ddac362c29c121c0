use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampler::stream;
use super::SearchError;
use crate::poly::{refine_bracketed, CoefficientPoly, RootList};
use crate::scalar::Scalar;

/// The quartic `x^4 - x^2 + u x + v`. Its second derivative vanishes at
/// `±sqrt(1/6)` and its third at `0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticNormalForm<T> {
    pub u: T,
    pub v: T,
}

impl<T: Scalar> QuarticNormalForm<T> {
    pub fn new(u: T, v: T) -> Self {
        Self { u, v }
    }

    pub fn poly(&self) -> CoefficientPoly<T> {
        CoefficientPoly::new(vec![self.v, self.u, -T::one(), T::zero(), T::one()])
            .expect("leading coefficient is one")
    }

    pub fn eval(&self, x: T) -> T {
        let x2 = x * x;
        (x2 - T::one()) * x2 + self.u * x + self.v
    }

    /// Zeros of the second derivative, `∓sqrt(1/6)`.
    pub fn inflections() -> [T; 2] {
        let s = T::lit(1.0 / 6.0).sqrt();
        [-s, s]
    }

    /// The four real roots, when they exist and are distinct.
    pub fn real_roots(&self) -> Option<RootList<T>> {
        let report = anderson_check(*self);
        report.roots.and_then(|r| RootList::new(r.to_vec()).ok())
    }
}

/// Affine normalization of a real-rooted quartic: shift by the root mean,
/// then scale so the `x^2` coefficient is `-1`.
pub fn normalize_quartic<T: Scalar>(r: &RootList<T>) -> Result<QuarticNormalForm<T>, SearchError> {
    let &[r0, r1, r2, r3] = r.as_slice() else {
        return Err(SearchError::NotQuartic(r.len()));
    };
    // Outer and inner pairs are summed first so symmetric input shifts exactly.
    let four = T::lit(4.0);
    let mean = ((r0 + r3) + (r1 + r2)) / four;
    let (s0, s1, s2, s3) = (r0 - mean, r1 - mean, r2 - mean, r3 - mean);
    // (x^2 - p1 x + q1)(x^2 - p2 x + q2), pairs (s0, s3) and (s1, s2)
    let (p1, q1) = (s0 + s3, s0 * s3);
    let (p2, q2) = (s1 + s2, s1 * s2);
    let c2 = q1 + q2 + p1 * p2;
    let c1 = -(p1 * q2 + p2 * q1);
    let c0 = q1 * q2;
    if !(c2 < T::zero()) {
        return Err(SearchError::NonNegativeQuadratic(c2.to_f64_lossy()));
    }
    let lambda = (-c2).sqrt();
    Ok(QuarticNormalForm {
        u: c1 / (lambda * lambda * lambda),
        v: c0 / (c2 * c2),
    })
}

/// Outcome of testing one normal-form quartic against the n = 4 theorem:
/// for real-rooted `p` with `x2 < z1` and `x3 < z2`, the middle critical
/// point satisfies `y2 < t1 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AndersonReport<T> {
    pub form: QuarticNormalForm<T>,
    /// `p(z1)` and `p(z2)` at the inflection points.
    pub at_inflections: [T; 2],
    pub real_rooted: bool,
    pub roots: Option<[T; 4]>,
    pub critical_points: Option<[T; 3]>,
    /// `x2 < z1` and `x3 < z2`; false when not real-rooted.
    pub hypotheses: bool,
    /// `y2 < 0`, evaluated only under the hypotheses.
    pub conclusion: Option<bool>,
    pub u_negative: bool,
}

impl<T> AndersonReport<T> {
    pub fn is_counterexample(&self) -> bool {
        self.hypotheses && self.conclusion == Some(false)
    }
}

pub fn anderson_check<T: Scalar>(q: QuarticNormalForm<T>) -> AndersonReport<T> {
    let [z1, z2] = QuarticNormalForm::<T>::inflections();
    let mut report = AndersonReport {
        form: q,
        at_inflections: [q.eval(z1), q.eval(z2)],
        real_rooted: false,
        roots: None,
        critical_points: None,
        hypotheses: false,
        conclusion: None,
        u_negative: q.u < T::zero(),
    };
    if !(q.u.is_finite() && q.v.is_finite()) {
        return report;
    }
    let Some(y) = critical_points(q) else {
        return report;
    };
    report.critical_points = Some(y);
    let p = q.poly();
    if !(q.eval(y[0]) < T::zero() && q.eval(y[1]) > T::zero() && q.eval(y[2]) < T::zero()) {
        return report;
    }
    let bound = T::one() + T::one().max(q.u.abs()).max(q.v.abs());
    let brackets = [(-bound, y[0]), (y[0], y[1]), (y[1], y[2]), (y[2], bound)];
    let mut x = [T::zero(); 4];
    for (slot, (lo, hi)) in x.iter_mut().zip(brackets) {
        match refine_bracketed(&p, lo, hi) {
            Some(root) => *slot = root,
            None => return report,
        }
    }
    report.real_rooted = true;
    report.roots = Some(x);
    report.hypotheses = x[1] < z1 && x[2] < z2;
    if report.hypotheses {
        report.conclusion = Some(y[1] < T::zero());
    }
    report
}

/// Zeros of `4x^3 - 2x + u` when all three are real and simple.
fn critical_points<T: Scalar>(q: QuarticNormalForm<T>) -> Option<[T; 3]> {
    let [z1, z2] = QuarticNormalForm::<T>::inflections();
    let dp = CoefficientPoly::new(vec![q.u, -T::lit(2.0), T::zero(), T::lit(4.0)])
        .expect("leading coefficient is four");
    if !(dp.eval(&z1) > T::zero() && dp.eval(&z2) < T::zero()) {
        return None;
    }
    let bound = T::one() + T::lit(0.5).max(q.u.abs() / T::lit(4.0));
    Some([
        refine_bracketed(&dp, -bound, z1)?,
        refine_bracketed(&dp, z1, z2)?,
        refine_bracketed(&dp, z2, bound)?,
    ])
}

/// Closed axis-aligned box in the `(u, v)` plane. Empty when either
/// minimum exceeds its maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UvBox {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl UvBox {
    pub fn new(u_min: f64, u_max: f64, v_min: f64, v_max: f64) -> Self {
        Self {
            u_min,
            u_max,
            v_min,
            v_max,
        }
    }

    pub fn is_empty(&self) -> bool {
        !(self.u_min <= self.u_max && self.v_min <= self.v_max)
    }
}

impl Default for UvBox {
    fn default() -> Self {
        Self::new(-0.5, 0.5, -0.5, 0.5)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AndersonScanReport {
    pub points: u64,
    pub real_rooted: u64,
    pub hypotheses_hold: u64,
    pub counterexamples: u64,
    /// Offending `(u, v)` in scan order, capped.
    pub examples: Vec<(f64, f64)>,
}

const MAX_EXAMPLES: usize = 16;

impl AndersonScanReport {
    fn record(&mut self, u: f64, v: f64) {
        let r = anderson_check(QuarticNormalForm::new(u, v));
        self.points += 1;
        self.real_rooted += u64::from(r.real_rooted);
        self.hypotheses_hold += u64::from(r.hypotheses);
        if r.is_counterexample() {
            self.counterexamples += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push((u, v));
            }
        }
    }

    // Callers merge in scan order so `examples` stays deterministic.
    fn merge(mut self, other: Self) -> Self {
        self.points += other.points;
        self.real_rooted += other.real_rooted;
        self.hypotheses_hold += other.hypotheses_hold;
        self.counterexamples += other.counterexamples;
        let room = MAX_EXAMPLES.saturating_sub(self.examples.len());
        self.examples.extend(other.examples.into_iter().take(room));
        self
    }
}

fn axis(lo: f64, hi: f64, i: usize, density: usize) -> f64 {
    lo + (hi - lo) * i as f64 / (density - 1) as f64
}

/// Checks every point of a `density × density` grid spanning `domain`.
pub fn anderson_scan(density: usize, domain: UvBox) -> Result<AndersonScanReport, SearchError> {
    if density < 2 {
        return Err(SearchError::GridTooSparse(density));
    }
    if domain.is_empty() {
        return Ok(AndersonScanReport::default());
    }
    let rows: Vec<AndersonScanReport> = (0..density)
        .into_par_iter()
        .map(|i| {
            let u = axis(domain.u_min, domain.u_max, i, density);
            let mut rep = AndersonScanReport::default();
            for j in 0..density {
                rep.record(u, axis(domain.v_min, domain.v_max, j, density));
            }
            rep
        })
        .collect();
    Ok(rows
        .into_iter()
        .fold(AndersonScanReport::default(), AndersonScanReport::merge))
}

/// Checks `samples` uniform points of `domain`; point `i` depends only on
/// `(seed, i)`.
pub fn anderson_random(samples: u64, seed: u64, domain: UvBox) -> AndersonScanReport {
    if domain.is_empty() {
        return AndersonScanReport::default();
    }
    const CHUNK: u64 = 4096;
    let chunks: Vec<AndersonScanReport> = (0..samples.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut rep = AndersonScanReport::default();
            for index in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                let mut rng = stream(seed, 0, index);
                let u = domain.u_min + (domain.u_max - domain.u_min) * rng.gen::<f64>();
                let v = domain.v_min + (domain.v_max - domain.v_min) * rng.gen::<f64>();
                rep.record(u, v);
            }
            rep
        })
        .collect();
    chunks
        .into_iter()
        .fold(AndersonScanReport::default(), AndersonScanReport::merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_roots_give_zero_u() {
        for (a, b) in [(3.0, 1.0), (0.7, 0.3), (1e3, 1e-2), (2.5, 0.1)] {
            let q = normalize_quartic(&RootList::new(vec![-a, -b, b, a]).unwrap()).unwrap();
            assert_eq!(q.u, 0.0);
        }
    }

    #[test]
    fn normalization_is_affine_invariant() {
        let base = [0.0, 1.0, 2.0, 4.0];
        let q = normalize_quartic(&RootList::new(base.to_vec()).unwrap()).unwrap();
        let moved: Vec<f64> = base.iter().map(|x| 3.5 * x - 7.25).collect();
        let q2 = normalize_quartic(&RootList::new(moved).unwrap()).unwrap();
        assert!((q.u - q2.u).abs() < 1e-12 && (q.v - q2.v).abs() < 1e-12);
    }

    #[test]
    fn normalization_is_idempotent() {
        let q = normalize_quartic(&RootList::new(vec![0.0f64, 1.0, 2.0, 4.0]).unwrap()).unwrap();
        let again = normalize_quartic(&q.real_roots().unwrap()).unwrap();
        assert!((q.u - again.u).abs() < 1e-12);
        assert!((q.v - again.v).abs() < 1e-12);
    }

    #[test]
    fn rejects_wrong_degree() {
        let r = RootList::new(vec![0.0, 1.0, 2.0]).unwrap();
        assert_eq!(normalize_quartic(&r), Err(SearchError::NotQuartic(3)));
    }

    #[test]
    fn even_quartic_fails_hypotheses() {
        let r = anderson_check(QuarticNormalForm::new(0.0f64, 0.05));
        assert!(r.real_rooted);
        let x = r.roots.unwrap();
        assert!((x[1] + 0.229_753).abs() < 1e-5, "x2 = {}", x[1]);
        assert!(!r.hypotheses);
        assert_eq!(r.conclusion, None);
    }

    #[test]
    fn positive_u_is_never_a_counterexample() {
        let r = anderson_check(QuarticNormalForm::new(0.3, 0.0));
        assert!(!r.hypotheses || r.conclusion == Some(true));
        assert!(!r.is_counterexample());
    }

    #[test]
    fn hypotheses_can_hold() {
        // a tight left pair and a distant right root
        let q = normalize_quartic(&RootList::new(vec![-0.7, -0.56, 0.18, 1.08]).unwrap()).unwrap();
        let r = anderson_check(q);
        assert!(r.real_rooted && r.hypotheses);
        assert_eq!(r.conclusion, Some(true));
        assert!(r.u_negative);
    }

    #[test]
    fn scans() {
        assert!(anderson_scan(1, UvBox::default()).is_err());
        let empty = UvBox::new(1.0, 0.0, 0.0, 1.0);
        assert_eq!(anderson_scan(10, empty).unwrap().points, 0);
        assert_eq!(anderson_random(10, 1, empty).points, 0);
        let g = anderson_scan(40, UvBox::default()).unwrap();
        assert_eq!(g.points, 1600);
        assert_eq!(g.counterexamples, 0);
        assert!(g.hypotheses_hold > 0);
        let r = anderson_random(2000, 7, UvBox::default());
        assert_eq!(r, anderson_random(2000, 7, UvBox::default()));
        assert_eq!(r.counterexamples, 0);
    }
}
