//! Regular separation on the two kinds of carrier the combinators run on.

use std::fmt::{Debug, Display};

use crate::ordinal::{Interval, Ordinal, OrdinalSpace};
use crate::topology::{FiniteSpace, PointSet};

use super::TransformError;

/// Open sets closed under finite meets, with the two separation moves the
/// onion constructions need.
pub trait RegularSpace {
    type Point: Clone + PartialEq + Debug + Display;
    type Open: Clone + PartialEq + Debug + Display;

    fn meet(&self, a: &Self::Open, b: &Self::Open) -> Self::Open;
    fn contains(&self, v: &Self::Open, p: &Self::Point) -> bool;
    fn is_subset(&self, a: &Self::Open, b: &Self::Open) -> bool;
    fn closure_contains(&self, v: &Self::Open, p: &Self::Point) -> bool;

    /// An open `A ∋ x` with `cl(A) ⊆ v` and `y ∉ cl(A)`.
    fn separate(&self, x: &Self::Point, v: &Self::Open, y: &Self::Point) -> Result<Self::Open, TransformError>;

    /// An open `A ∋ x` with `cl(A) ⊆ v`.
    fn shrink(&self, x: &Self::Point, v: &Self::Open) -> Result<Self::Open, TransformError>;
}

impl RegularSpace for FiniteSpace {
    type Point = usize;
    type Open = PointSet;

    fn meet(&self, a: &PointSet, b: &PointSet) -> PointSet {
        a.intersection(*b)
    }

    fn contains(&self, v: &PointSet, p: &usize) -> bool {
        v.contains(*p)
    }

    fn is_subset(&self, a: &PointSet, b: &PointSet) -> bool {
        a.is_subset(*b)
    }

    fn closure_contains(&self, v: &PointSet, p: &usize) -> bool {
        self.min_nbhd(*p).intersects(*v)
    }

    /// The least open (in mask order) that works.
    fn separate(&self, x: &usize, v: &PointSet, y: &usize) -> Result<PointSet, TransformError> {
        self.opens_containing(*x)
            .find(|&a| self.closure(a).is_subset(*v) && !self.closure_contains(&a, y))
            .ok_or(TransformError::Separation {
                x: x.to_string(),
                y: y.to_string(),
                within: v.to_string(),
            })
    }

    fn shrink(&self, x: &usize, v: &PointSet) -> Result<PointSet, TransformError> {
        self.opens_containing(*x)
            .find(|&a| self.closure(a).is_subset(*v))
            .ok_or(TransformError::Shrink {
                x: x.to_string(),
                within: v.to_string(),
            })
    }
}

impl RegularSpace for OrdinalSpace {
    type Point = Ordinal;
    type Open = Interval;

    fn meet(&self, a: &Interval, b: &Interval) -> Interval {
        a.meet(b)
    }

    fn contains(&self, v: &Interval, p: &Ordinal) -> bool {
        v.contains(p)
    }

    fn is_subset(&self, a: &Interval, b: &Interval) -> bool {
        a.is_subset(b)
    }

    fn closure_contains(&self, v: &Interval, p: &Ordinal) -> bool {
        v.closure_contains(p)
    }

    fn separate(&self, x: &Ordinal, v: &Interval, y: &Ordinal) -> Result<Interval, TransformError> {
        self.regular_separate(x, v, y).map_err(|e| TransformError::Separation {
            x: x.to_string(),
            y: y.to_string(),
            within: format!("{v} ({e})"),
        })
    }

    fn shrink(&self, x: &Ordinal, v: &Interval) -> Result<Interval, TransformError> {
        OrdinalSpace::shrink(self, x, v).map_err(|e| TransformError::Shrink {
            x: x.to_string(),
            within: format!("{v} ({e})"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{discrete, indiscrete, sierpinski, FiniteSpace};

    #[test]
    fn finite_separation() {
        let s = sierpinski();
        // 1 lies in every open around 0's closure partner
        assert!(matches!(s.separate(&0, &PointSet::full(2), &1), Err(TransformError::Separation { .. })));
        assert!(indiscrete(2).unwrap().separate(&0, &PointSet::full(2), &1).is_err());
        let d = discrete(3).unwrap();
        assert_eq!(d.separate(&0, &PointSet::full(3), &1).unwrap(), PointSet::singleton(0));
        // a partition space separates across blocks only
        let p = FiniteSpace::from_lists(&[&[0, 1], &[0, 1], &[2]]).unwrap();
        assert_eq!(p.separate(&0, &PointSet::full(3), &2).unwrap(), PointSet::from_points([0, 1]));
        assert!(p.separate(&0, &PointSet::full(3), &1).is_err());
        assert_eq!(p.shrink(&2, &PointSet::full(3)).unwrap(), PointSet::singleton(2));
    }

    #[test]
    fn ordinal_separation() {
        let s = OrdinalSpace::omega_plus_one();
        let w = Ordinal::omega();
        let v = Interval::above(Ordinal::finite(2), w.clone());
        let a = s.separate(&w, &v, &Ordinal::finite(5)).unwrap();
        assert_eq!(a, Interval::above(Ordinal::finite(5), w.clone()));
        assert!(!s.closure_contains(&a, &Ordinal::finite(5)));
        assert!(s.separate(&w, &v, &w).is_err());
        assert_eq!(RegularSpace::shrink(&s, &w, &v).unwrap(), v);
    }
}
