use std::cmp::Ordering;

use super::isolate::{isolate_roots_interlaced, ProductDerivative};
use super::{PolyError, RootList, SymbolicSequence};
use crate::scalar::Scalar;

/// Triangular table of zeros: row `i` holds the `n - i` zeros of the
/// `i`-th derivative in increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement<T> {
    rows: Vec<Vec<T>>,
}

/// A failed interlacing `x[i][l] < x[j][l] < x[i][l + j - i]`, with `l`
/// counted from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RolleViolation {
    pub i: usize,
    pub j: usize,
    pub l: usize,
}

impl<T: Scalar> Arrangement<T> {
    /// Checks shape only: row `i` has `n - i` finite, increasing entries.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, PolyError> {
        let n = rows.len();
        if n == 0 {
            return Err(PolyError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            let ok = row.len() == n - i
                && row.iter().all(|x| x.is_finite())
                && row.windows(2).all(|w| w[0] < w[1]);
            if !ok {
                return Err(PolyError::MalformedRow { row: i });
            }
        }
        Ok(Self { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.rows[i]
    }

    /// `x[i][l]` with `l` counted from 1.
    pub fn get(&self, i: usize, l: usize) -> T {
        self.rows[i][l - 1]
    }

    /// Every entry with its row index.
    pub fn labeled(&self) -> impl Iterator<Item = (T, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |&x| (x, i)))
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|&x| f(x)).collect())
                .collect(),
        }
    }
}

/// Zeros of every derivative of `prod (x - r)`. Each row is isolated inside
/// the gaps of the previous one.
pub fn arrangement<T: Scalar>(r: &RootList<T>) -> Result<Arrangement<T>, PolyError> {
    let n = r.degree();
    let mut rows = Vec::with_capacity(n);
    let mut current = r.clone();
    for _ in 1..n {
        // Row i's polynomial is a constant multiple of prod (x - row_i).
        let next = isolate_roots_interlaced(&ProductDerivative::new(current.as_slice()), &current)?;
        rows.push(std::mem::replace(&mut current, next).into_vec());
    }
    rows.push(current.into_vec());
    Ok(Arrangement { rows })
}

/// Order type of `a`. Two zeros closer than `sep_tol * (1 + |x|)` make the
/// arrangement non-strict.
pub fn symbolic_sequence<T: Scalar>(
    a: &Arrangement<T>,
    sep_tol: T,
) -> Result<SymbolicSequence, PolyError> {
    let mut all: Vec<(T, usize)> = a.labeled().collect();
    all.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap_or(Ordering::Equal));
    for w in all.windows(2) {
        let scale = T::one() + w[0].0.abs().max(w[1].0.abs());
        if w[1].0 - w[0].0 <= sep_tol * scale {
            return Err(PolyError::NotStrictlyNice {
                row_a: w[0].1,
                row_b: w[1].1,
                value: w[0].0.to_f64_lossy(),
            });
        }
    }
    let word = all.into_iter().map(|(_, i)| i as u8).collect();
    SymbolicSequence::new(word, a.n())
}

/// Every strict interlacing inequality of the table that fails.
pub fn check_standard_rolle<T: Scalar>(a: &Arrangement<T>) -> Vec<RolleViolation> {
    let n = a.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for l in 1..=n - j {
                let inner = a.get(j, l);
                if !(a.get(i, l) < inner && inner < a.get(i, l + j - i)) {
                    out.push(RolleViolation { i, j, l });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(v: &[f64]) -> RootList<f64> {
        RootList::new(v.to_vec()).unwrap()
    }

    #[test]
    fn worked_cubic_rows() {
        let a = arrangement(&roots(&[0.0, 1.0, 4.0])).unwrap();
        let s13 = 13f64.sqrt();
        assert_eq!(a.row(0), &[0.0, 1.0, 4.0]);
        assert!((a.get(1, 1) - (5.0 - s13) / 3.0).abs() < 1e-12);
        assert!((a.get(1, 2) - (5.0 + s13) / 3.0).abs() < 1e-12);
        assert!((a.get(2, 1) - 5.0 / 3.0).abs() < 1e-12);
        assert!(check_standard_rolle(&a).is_empty());
        let s = symbolic_sequence(&a, 1e-9).unwrap();
        assert_eq!(s.to_string(), "010210");
    }

    #[test]
    fn symmetric_pair() {
        let a = arrangement(&roots(&[-1.0, 1.0])).unwrap();
        assert_eq!(a.rows(), &[vec![-1.0, 1.0], vec![0.0]]);
        assert_eq!(symbolic_sequence(&a, 1e-9).unwrap().to_string(), "010");
    }

    #[test]
    fn linear_has_single_row() {
        let a = arrangement(&roots(&[2.5])).unwrap();
        assert_eq!(a.n(), 1);
        assert_eq!(symbolic_sequence(&a, 1e-9).unwrap().to_string(), "0");
    }

    #[test]
    fn symmetric_quartic_is_not_strict() {
        let a = arrangement(&roots(&[0.0, 1.0, 2.0, 3.0])).unwrap();
        let err = symbolic_sequence(&a, 1e-9).unwrap_err();
        assert!(matches!(err, PolyError::NotStrictlyNice { .. }));
        assert!(err.to_string().starts_with("not strictly nice"));
    }

    #[test]
    fn hand_built_violation() {
        // z1 placed between x1 and y1
        let a =
            Arrangement::from_rows(vec![vec![0.0, 1.0, 4.0], vec![0.46, 2.87], vec![0.3]]).unwrap();
        assert_eq!(
            check_standard_rolle(&a),
            vec![RolleViolation { i: 1, j: 2, l: 1 }]
        );
    }

    #[test]
    fn malformed_rows_rejected() {
        assert!(Arrangement::from_rows(vec![vec![0.0, 1.0], vec![0.5, 0.6]]).is_err());
        assert!(Arrangement::from_rows(vec![vec![1.0, 0.0], vec![0.5]]).is_err());
        assert!(Arrangement::<f64>::from_rows(vec![]).is_err());
    }
}
