use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use super::number::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("carrier top must be w or W1, got {0}")]
    BadLambda(Ordinal),
    #[error("{point} lies outside the carrier [0,{lambda}]")]
    OutOfCarrier { point: Ordinal, lambda: Ordinal },
    #[error("basic neighbourhoods of {point} need a left end below it, got {left}")]
    BadLeftEnd { point: Ordinal, left: Ordinal },
    #[error("pick W1 is barred")]
    BarredPick,
    #[error("offered interval {0} has no point below W1")]
    EmptyOffer(Interval),
    #[error("cannot separate {x} from {y}: need {y} < {x}")]
    NotBelow { x: Ordinal, y: Ordinal },
    #[error("{0} is not a limit point")]
    NotLimit(Ordinal),
    #[error("{point} is not in {interval}")]
    NotInInterval { point: Ordinal, interval: Interval },
    #[error("illegal pick {pick} from {offer} at inning {inning}")]
    IllegalPick {
        inning: usize,
        offer: Interval,
        pick: Ordinal,
    },
}

/// An order interval `(lo, hi]`, or `[0, hi]` when `lo` is `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Option<Ordinal>,
    pub hi: Ordinal,
}

impl Interval {
    pub fn from_zero(hi: Ordinal) -> Self {
        Interval { lo: None, hi }
    }

    pub fn above(lo: Ordinal, hi: Ordinal) -> Self {
        Interval { lo: Some(lo), hi }
    }

    /// `lo < β ≤ hi`.
    pub fn contains(&self, b: &Ordinal) -> bool {
        self.lo.as_ref().map_or(true, |lo| lo < b) && b <= &self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo.as_ref().is_some_and(|lo| lo >= &self.hi)
    }

    pub fn meet(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
        }
    }

    pub fn is_subset(&self, other: &Interval) -> bool {
        self.is_empty() || (self.lo >= other.lo && self.hi <= other.hi)
    }

    /// Least member, if any.
    pub fn least(&self) -> Option<Ordinal> {
        let least = match &self.lo {
            None => Ordinal::zero(),
            Some(lo) => lo.succ()?,
        };
        self.contains(&least).then_some(least)
    }

    /// Membership in the closure, decided from basic neighbourhoods: an
    /// isolated `β` is in the closure iff it is a member; a limit `β` iff every
    /// `(α, β]` with `α < β` meets the interval.
    pub fn closure_contains(&self, b: &Ordinal) -> bool {
        if self.contains(b) {
            return true;
        }
        if !b.is_limit() || self.is_empty() {
            return false;
        }
        // (α,β] meets (lo,hi] for every α<β iff lo < β and hi ≥ β; the
        // second condition with the first makes β a member, handled above
        let lo_below = self.lo.as_ref().map_or(true, |lo| lo < b);
        lo_below && &self.hi >= b
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            None => write!(f, "[0,{}]", self.hi),
            Some(lo) => write!(f, "({lo},{}]", self.hi),
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The closed interval `[0, λ]` with the order topology, `λ ∈ {ω, W1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalSpace {
    lambda: Ordinal,
}

/// Basic neighbourhoods of a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NbhdBasis {
    Isolated(Ordinal),
    /// `{(α, γ] : α < γ}`.
    Limit(Ordinal),
}

impl NbhdBasis {
    pub fn point(&self) -> &Ordinal {
        match self {
            NbhdBasis::Isolated(p) | NbhdBasis::Limit(p) => p,
        }
    }

    /// The basic neighbourhood with left end `alpha`; isolated points ignore
    /// `alpha` and return `{γ}`.
    pub fn member(&self, alpha: &Ordinal) -> Result<Interval, OrdinalError> {
        match self {
            NbhdBasis::Isolated(p) => Ok(singleton(p)),
            NbhdBasis::Limit(p) => {
                if alpha >= p {
                    Err(OrdinalError::BadLeftEnd {
                        point: p.clone(),
                        left: alpha.clone(),
                    })
                } else {
                    Ok(Interval::above(alpha.clone(), p.clone()))
                }
            }
        }
    }
}

fn singleton(p: &Ordinal) -> Interval {
    match p.pred() {
        Some(q) => Interval::above(q, p.clone()),
        None => Interval::from_zero(p.clone()),
    }
}

impl OrdinalSpace {
    pub fn new(lambda: Ordinal) -> Result<Self, OrdinalError> {
        if lambda == Ordinal::omega() || lambda.is_omega1() {
            Ok(OrdinalSpace { lambda })
        } else {
            Err(OrdinalError::BadLambda(lambda))
        }
    }

    /// `[0, ω]`.
    pub fn omega_plus_one() -> Self {
        OrdinalSpace {
            lambda: Ordinal::omega(),
        }
    }

    /// `[0, ω₁]`.
    pub fn omega1_plus_one() -> Self {
        OrdinalSpace {
            lambda: Ordinal::Omega1,
        }
    }

    pub fn lambda(&self) -> &Ordinal {
        &self.lambda
    }

    pub fn carrier(&self) -> Interval {
        Interval::from_zero(self.lambda.clone())
    }

    pub fn contains(&self, p: &Ordinal) -> bool {
        p <= &self.lambda
    }

    fn check(&self, p: &Ordinal) -> Result<(), OrdinalError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(OrdinalError::OutOfCarrier {
                point: p.clone(),
                lambda: self.lambda.clone(),
            })
        }
    }

    pub fn nbhd_basis(&self, gamma: &Ordinal) -> Result<NbhdBasis, OrdinalError> {
        self.check(gamma)?;
        Ok(if gamma.is_limit() {
            NbhdBasis::Limit(gamma.clone())
        } else {
            NbhdBasis::Isolated(gamma.clone())
        })
    }

    /// An interval `A = (max(left(V), y), x]` with `x ∈ A`, `cl(A) = A ⊆ V`
    /// and `y ∉ cl(A)`. Intervals of this shape are clopen.
    pub fn regular_separate(
        &self,
        x: &Ordinal,
        v: &Interval,
        y: &Ordinal,
    ) -> Result<Interval, OrdinalError> {
        self.check(x)?;
        if !x.is_limit() {
            return Err(OrdinalError::NotLimit(x.clone()));
        }
        if !v.contains(x) {
            return Err(OrdinalError::NotInInterval {
                point: x.clone(),
                interval: v.clone(),
            });
        }
        if y >= x {
            return Err(OrdinalError::NotBelow {
                x: x.clone(),
                y: y.clone(),
            });
        }
        let left = match &v.lo {
            Some(lo) if lo > y => lo.clone(),
            _ => y.clone(),
        };
        Ok(Interval::above(left, x.clone()))
    }

    /// An interval `A ∋ x` with `cl(A) ⊆ V`.
    pub fn shrink(&self, x: &Ordinal, v: &Interval) -> Result<Interval, OrdinalError> {
        self.check(x)?;
        if !v.contains(x) {
            return Err(OrdinalError::NotInInterval {
                point: x.clone(),
                interval: v.clone(),
            });
        }
        if x.is_limit() {
            Ok(Interval {
                lo: v.lo.clone(),
                hi: x.clone(),
            })
        } else {
            Ok(singleton(x))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn basis_examples() {
        let big = OrdinalSpace::omega1_plus_one();
        let b = big.nbhd_basis(&Ordinal::Omega1).unwrap();
        let v = b.member(&o("w")).unwrap();
        assert_eq!(v.to_string(), "(w*1,W1]");
        assert!(v.contains(&o("w+1")));
        assert!(!v.contains(&o("w")));

        let small = OrdinalSpace::omega_plus_one();
        assert_eq!(small.nbhd_basis(&o("5")).unwrap(), NbhdBasis::Isolated(o("5")));
        let lim = small.nbhd_basis(&o("w")).unwrap();
        assert_eq!(lim, NbhdBasis::Limit(o("w")));
        assert_eq!(lim.member(&o("3")).unwrap(), Interval::above(o("3"), o("w")));
        assert!(small.nbhd_basis(&o("w+1")).is_err());
        assert!(lim.member(&o("w")).is_err());
    }

    /// Samples left ends below a point and checks the closure predicate
    /// against "every sampled basic neighbourhood meets the interval".
    fn sampled_closure(i: &Interval, b: &Ordinal) -> bool {
        if !b.is_limit() {
            return i.contains(b);
        }
        let mut samples = vec![Ordinal::zero()];
        for k in 0..6u64 {
            for e in 0..3u32 {
                let cand = Ordinal::from_terms([(e, k + 1)]);
                if &cand < b {
                    samples.push(cand);
                }
            }
        }
        if let Some(lo) = &i.lo {
            if lo < b {
                samples.push(lo.clone());
            }
        }
        if &i.hi < b {
            samples.push(i.hi.clone());
        }
        samples
            .iter()
            .all(|a| !Interval::above(a.clone(), b.clone()).meet(i).is_empty())
    }

    #[test]
    fn separation_examples_are_clopen() {
        let big = OrdinalSpace::omega1_plus_one();
        let a = big
            .regular_separate(&Ordinal::Omega1, &Interval::above(o("5"), Ordinal::Omega1), &o("17"))
            .unwrap();
        assert_eq!(a, Interval::above(o("17"), Ordinal::Omega1));

        let small = OrdinalSpace::omega_plus_one();
        let v = Interval::above(o("2"), o("w"));
        let a = small.regular_separate(&o("w"), &v, &o("9")).unwrap();
        assert_eq!(a, Interval::above(o("9"), o("w")));
        assert!(matches!(
            small.regular_separate(&o("w"), &v, &o("w")),
            Err(OrdinalError::NotBelow { .. })
        ));

        let points = ["0", "3", "9", "10", "w", "w+1", "w*2", "w^2"].map(o);
        for i in [a, Interval::above(o("17"), Ordinal::Omega1), Interval::above(o("3"), o("w"))] {
            for p in &points {
                assert_eq!(i.closure_contains(p), sampled_closure(&i, p), "{i} {p}");
                assert_eq!(i.closure_contains(p), i.contains(p), "{i} is clopen");
            }
            assert!(!i.closure_contains(&o("9")) || i.contains(&o("9")));
        }
    }

    #[test]
    fn least_member() {
        assert_eq!(Interval::from_zero(Ordinal::Omega1).least(), Some(Ordinal::zero()));
        assert_eq!(Interval::above(o("w"), Ordinal::Omega1).least(), Some(o("w+1")));
        assert_eq!(Interval::above(o("3"), o("3")).least(), None);
    }
}
