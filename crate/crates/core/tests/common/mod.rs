//! Helpers shared by the integration tests: a high-precision eigenvalue
//! oracle for polynomial roots and generators of random test inputs.

#![allow(dead_code, clippy::needless_range_loop)]

use dashu_float::ops::{Abs, SquareRoot};
use dashu_float::round::mode::HalfEven;
use dashu_float::{Context, FBig, Repr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rolle::rolle3::{check_inequalities, Tuple3Arrangement};

type Big = FBig<HalfEven, 2>;

/// Working precision of the oracle, in bits.
pub const ORACLE_BITS: usize = 192;

fn exact(x: f64) -> Big {
    Big::try_from(x).expect("finite").with_precision(0).value()
}

// `with_precision` leaves unlimited-precision values unrounded, so round
// through a product with one in the target context instead.
fn rounded(x: Big) -> Big {
    Context::<HalfEven>::new(ORACLE_BITS)
        .mul(x.repr(), &Repr::one())
        .value()
}

fn zero() -> Big {
    Big::ZERO.with_precision(ORACLE_BITS).value()
}

/// Ascending coefficients of `prod (x - r)`, computed without rounding:
/// products of doubles are dyadic rationals.
pub fn exact_coefficients(roots: &[f64]) -> Vec<Big> {
    let mut c = vec![exact(1.0)];
    for &r in roots {
        let r = exact(r);
        let mut next = vec![Big::ZERO.with_precision(0).value(); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] = &next[i + 1] + ci;
            next[i] = &next[i] - &(ci * &r);
        }
        c = next;
    }
    c
}

/// Exact termwise derivative.
pub fn exact_derivative(c: &[Big]) -> Vec<Big> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, ck)| ck * &exact(k as f64))
        .collect()
}

/// Eigenvalues of the companion matrix of `c` (ascending, degree >= 1) by
/// shifted Hessenberg QR at `ORACLE_BITS`. Assumes real eigenvalues.
pub fn companion_eigenvalues(c: &[Big]) -> Vec<f64> {
    let n = c.len() - 1;
    let lead = rounded(c[n].clone());
    if n == 1 {
        let x = -(rounded(c[0].clone()) / lead);
        return vec![x.to_f64().value()];
    }
    // first row -c_{n-1}/c_n ... -c_0/c_n, ones on the subdiagonal
    let mut h = vec![vec![zero(); n]; n];
    for j in 0..n {
        h[0][j] = -(rounded(c[n - 1 - j].clone()) / &lead);
    }
    for i in 1..n {
        h[i][i - 1] = rounded(Big::ONE);
    }
    let tol = rounded(exact(2f64.powi(16 - ORACLE_BITS as i32)));
    let mut eig = Vec::with_capacity(n);
    let mut m = n;
    let mut iterations = 0;
    while m > 1 {
        let k = m - 1;
        let scale = h[k][k].clone().abs() + h[k - 1][k - 1].clone().abs();
        if h[k][k - 1].clone().abs() <= &tol * &(scale + rounded(Big::ONE)) {
            eig.push(h[k][k].clone());
            m -= 1;
            iterations = 0;
            continue;
        }
        iterations += 1;
        assert!(iterations < 500, "QR failed to converge");
        let mu = if iterations % 11 == 0 {
            // exceptional shift
            &h[k][k] + &h[k][k - 1].clone().abs()
        } else {
            wilkinson(&h[k - 1][k - 1], &h[k - 1][k], &h[k][k - 1], &h[k][k])
        };
        qr_step(&mut h, m, &mu);
    }
    eig.push(h[0][0].clone());
    let mut out: Vec<f64> = eig.iter().map(|x| x.to_f64().value()).collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Eigenvalue of `[[a, b], [c, d]]` nearest `d`, or `d` when they are complex.
fn wilkinson(a: &Big, b: &Big, c: &Big, d: &Big) -> Big {
    let half = rounded(Big::try_from(0.5).unwrap());
    let delta = (a - d) * &half;
    let disc = &delta * &delta + b * c;
    if disc < zero() {
        return d.clone();
    }
    let root = disc.sqrt();
    let denom = if delta >= zero() {
        &delta + &root
    } else {
        &delta - &root
    };
    if denom == zero() {
        return d.clone();
    }
    d - &((b * c) / denom)
}

/// One explicit shifted QR step on the leading `m x m` Hessenberg block.
fn qr_step(h: &mut [Vec<Big>], m: usize, mu: &Big) {
    for i in 0..m {
        h[i][i] = &h[i][i] - mu;
    }
    let mut rotations = Vec::with_capacity(m - 1);
    for k in 0..m - 1 {
        let (a, b) = (h[k][k].clone(), h[k + 1][k].clone());
        let r = (&a * &a + &b * &b).sqrt();
        let (cs, sn) = if r == zero() {
            (rounded(Big::ONE), zero())
        } else {
            (&a / &r, &b / &r)
        };
        for j in k..m {
            let (x, y) = (h[k][j].clone(), h[k + 1][j].clone());
            h[k][j] = &cs * &x + &sn * &y;
            h[k + 1][j] = &cs * &y - &sn * &x;
        }
        rotations.push((cs, sn));
    }
    for (k, (cs, sn)) in rotations.into_iter().enumerate() {
        for i in 0..=(k + 1).min(m - 1) {
            let (x, y) = (h[i][k].clone(), h[i][k + 1].clone());
            h[i][k] = &cs * &x + &sn * &y;
            h[i][k + 1] = &cs * &y - &sn * &x;
        }
    }
    for i in 0..m {
        h[i][i] = &h[i][i] + mu;
    }
}

/// Zeros of every derivative of `prod (x - r)`, row `i` for order `i`.
pub fn oracle_rows(roots: &[f64]) -> Vec<Vec<f64>> {
    let mut c = exact_coefficients(roots);
    let mut rows = Vec::with_capacity(roots.len());
    while c.len() > 1 {
        rows.push(companion_eigenvalues(&c));
        c = exact_derivative(&c);
    }
    rows
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random tuple satisfying the admissibility system, by rejection from
/// exponential gaps with `z1` uniform between the critical points.
pub fn admissible_tuple(rng: &mut ChaCha8Rng) -> Tuple3Arrangement<f64> {
    loop {
        let mut acc = rng.gen_range(-2.0..2.0);
        let mut pts = [0.0; 5];
        for p in &mut pts {
            *p = acc;
            let g: f64 = Exp1.sample(rng);
            acc += g + 1e-3;
        }
        let [x1, y1, x2, y2, x3] = pts;
        let z1 = rng.gen_range(y1..y2);
        let t = Tuple3Arrangement::new(x1, x2, x3, y1, y2, z1);
        if check_inequalities(&t).is_empty() {
            return t;
        }
    }
}
