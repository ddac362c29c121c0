use std::fmt;

use super::Tuple3Arrangement;
use crate::scalar::Scalar;

/// Relative margin below which a strict inequality counts as an equality.
pub const STRICT_TOL: f64 = 1e-12;

fn strictly_less<T: Scalar>(a: T, b: T) -> bool {
    b - a > T::lit(STRICT_TOL) * (T::one() + a.abs().max(b.abs()))
}

/// The four lines of the admissibility system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityLine {
    /// `x1 < y1 < x2 < y2 < x3`
    Interlacing = 1,
    /// `y1 < z1 < y2`
    Inflection = 2,
    /// `y1 - x1 < min(x2 - y1, sqrt((z1-y1)^2 + 2 (z1-y1) |z1-x2|))`
    LeftGap = 3,
    /// `x3 - y2 < min(y2 - x2, sqrt((y2-z1)^2 + 2 (y2-z1) |z1-x2|))`
    RightGap = 4,
}

impl InequalityLine {
    pub fn number(self) -> u8 {
        self as u8
    }

    pub const ALL: [InequalityLine; 4] = [
        InequalityLine::Interlacing,
        InequalityLine::Inflection,
        InequalityLine::LeftGap,
        InequalityLine::RightGap,
    ];
}

impl fmt::Display for InequalityLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}", self.number())
    }
}

/// A failed comparison `lhs < rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityViolation<T> {
    pub line: InequalityLine,
    pub lhs: T,
    pub rhs: T,
}

/// One strict comparison `lhs < rhs` of a system, labeled by `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison<L, T> {
    pub label: L,
    pub lhs: T,
    pub rhs: T,
}

impl<L, T: Scalar> Comparison<L, T> {
    /// Holds with margin `STRICT_TOL`.
    pub fn holds(&self) -> bool {
        strictly_less(self.lhs, self.rhs)
    }
}

fn ordering<T: Scalar, L: Copy>(
    t: &Tuple3Arrangement<T>,
    chain: L,
    inflection: L,
) -> Vec<Comparison<L, T>> {
    let mut out: Vec<_> = [t.x1, t.y1, t.x2, t.y2, t.x3]
        .windows(2)
        .map(|w| Comparison {
            label: chain,
            lhs: w[0],
            rhs: w[1],
        })
        .collect();
    out.push(Comparison {
        label: inflection,
        lhs: t.y1,
        rhs: t.z1,
    });
    out.push(Comparison {
        label: inflection,
        lhs: t.z1,
        rhs: t.y2,
    });
    out
}

/// `sqrt(a^2 + 2 a d)`: the side of the trapezoid bound.
fn area_side<T: Scalar>(a: T, d: T) -> T {
    (a * a + T::lit(2.0) * a * d).max(T::zero()).sqrt()
}

/// All eight comparisons of the admissibility system in line order.
pub fn inequality_comparisons<T: Scalar>(
    t: &Tuple3Arrangement<T>,
) -> Vec<Comparison<InequalityLine, T>> {
    let mut out = ordering(t, InequalityLine::Interlacing, InequalityLine::Inflection);
    let offset = (t.z1 - t.x2).abs();
    let left_bound = (t.x2 - t.y1).min(area_side(t.z1 - t.y1, offset));
    out.push(Comparison {
        label: InequalityLine::LeftGap,
        lhs: t.y1 - t.x1,
        rhs: left_bound,
    });
    let right_bound = (t.y2 - t.x2).min(area_side(t.y2 - t.z1, offset));
    out.push(Comparison {
        label: InequalityLine::RightGap,
        lhs: t.x3 - t.y2,
        rhs: right_bound,
    });
    out
}

/// Every failed comparison of the admissibility system, strict throughout.
pub fn check_inequalities<T: Scalar>(t: &Tuple3Arrangement<T>) -> Vec<InequalityViolation<T>> {
    inequality_comparisons(t)
        .into_iter()
        .filter(|c| !c.holds())
        .map(|c| InequalityViolation {
            line: c.label,
            lhs: c.lhs,
            rhs: c.rhs,
        })
        .collect()
}

/// Which side of `x2` the inflection point falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TupleCase {
    X2BeforeZ1,
    Z1BeforeX2,
    Coincident,
}

impl fmt::Display for TupleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TupleCase::X2BeforeZ1 => "x2<z1",
            TupleCase::Z1BeforeX2 => "z1<x2",
            TupleCase::Coincident => "z1=x2",
        })
    }
}

impl TupleCase {
    pub fn of<T: Scalar>(t: &Tuple3Arrangement<T>) -> Self {
        if !strictly_less(t.x2, t.z1) && !strictly_less(t.z1, t.x2) {
            TupleCase::Coincident
        } else if t.x2 < t.z1 {
            TupleCase::X2BeforeZ1
        } else {
            TupleCase::Z1BeforeX2
        }
    }
}

/// Part of the case-specific system that failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CasePart {
    Interlacing,
    Inflection,
    /// The plain gap comparison (`y1-x1 < x2-y1` when `x2 < z1`).
    First,
    /// The trapezoid comparison on the other side.
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseViolation<T> {
    pub part: CasePart,
    pub lhs: T,
    pub rhs: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseReport<T> {
    pub case: TupleCase,
    pub violations: Vec<CaseViolation<T>>,
}

impl<T> CaseReport<T> {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All comparisons of the case-specific system.
pub fn case_comparisons<T: Scalar>(
    t: &Tuple3Arrangement<T>,
) -> (TupleCase, Vec<Comparison<CasePart, T>>) {
    let case = TupleCase::of(t);
    let mut out = ordering(t, CasePart::Interlacing, CasePart::Inflection);
    let left = t.y1 - t.x1;
    let right = t.x3 - t.y2;
    let mut cmp = |label, lhs, rhs| out.push(Comparison { label, lhs, rhs });
    match case {
        TupleCase::X2BeforeZ1 => {
            cmp(CasePart::First, left, t.x2 - t.y1);
            cmp(CasePart::Second, right, area_side(t.y2 - t.z1, t.z1 - t.x2));
        }
        TupleCase::Z1BeforeX2 => {
            cmp(CasePart::First, right, t.y2 - t.x2);
            cmp(CasePart::Second, left, area_side(t.z1 - t.y1, t.x2 - t.z1));
        }
        TupleCase::Coincident => {
            cmp(CasePart::First, left, t.x2 - t.y1);
            cmp(CasePart::Second, right, t.y2 - t.x2);
        }
    }
    (case, out)
}

/// The system split by the position of `z1` relative to `x2`. Agrees with
/// [`check_inequalities`] on whether any violation exists.
pub fn check_case_inequalities<T: Scalar>(t: &Tuple3Arrangement<T>) -> CaseReport<T> {
    let (case, all) = case_comparisons(t);
    CaseReport {
        case,
        violations: all
            .into_iter()
            .filter(|c| !c.holds())
            .map(|c| CaseViolation {
                part: c.label,
                lhs: c.lhs,
                rhs: c.rhs,
            })
            .collect(),
    }
}
