use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::pointset::{PointSet, MAX_POINTS};

/// Why a minimal-neighbourhood map fails to describe a topology.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("point count {0} is outside 1..={max}", max = MAX_POINTS)]
    PointCount(usize),
    #[error("expected {expected} neighbourhoods, found {found}")]
    Length { expected: usize, found: usize },
    #[error("neighbourhood of {owner} mentions point {point} outside the carrier")]
    OutOfRange { owner: usize, point: usize },
    #[error("{0} is not a member of its own minimal neighbourhood")]
    NotReflexive(usize),
    #[error("{inner} lies in U({outer}) but U({inner}) is not contained in U({outer})")]
    NotTransitive { outer: usize, inner: usize },
}

/// Checks both invariants of a minimal-neighbourhood map and names the first
/// violating point or pair.
pub fn validate(n: usize, min_nbhd: &[PointSet]) -> Result<(), Violation> {
    if n == 0 || n > MAX_POINTS {
        return Err(Violation::PointCount(n));
    }
    if min_nbhd.len() != n {
        return Err(Violation::Length {
            expected: n,
            found: min_nbhd.len(),
        });
    }
    let carrier = PointSet::full(n);
    for (x, &u) in min_nbhd.iter().enumerate() {
        if let Some(point) = u.difference(carrier).first() {
            return Err(Violation::OutOfRange { owner: x, point });
        }
        if !u.contains(x) {
            return Err(Violation::NotReflexive(x));
        }
    }
    for (x, &u) in min_nbhd.iter().enumerate() {
        for y in u.iter() {
            if !min_nbhd[y].is_subset(u) {
                return Err(Violation::NotTransitive { outer: x, inner: y });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationAxioms {
    pub t0: bool,
    pub t1: bool,
    pub regular: bool,
    pub discrete: bool,
}

/// A finite topological space, stored as the minimal open neighbourhood of
/// each point. Open sets are the unions of minimal neighbourhoods.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpaceFile", into = "SpaceFile")]
pub struct FiniteSpace {
    n: usize,
    min_nbhd: Vec<PointSet>,
}

/// On-disk form: `{"n": int, "min_nbhd": [[ints]]}` with sorted arrays.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceFile {
    pub n: usize,
    pub min_nbhd: Vec<Vec<usize>>,
}

impl TryFrom<SpaceFile> for FiniteSpace {
    type Error = Violation;

    fn try_from(file: SpaceFile) -> Result<Self, Violation> {
        for (owner, list) in file.min_nbhd.iter().enumerate() {
            if let Some(&point) = list.iter().find(|&&p| p >= file.n || p >= MAX_POINTS) {
                return Err(Violation::OutOfRange { owner, point });
            }
        }
        let nbhds = file
            .min_nbhd
            .into_iter()
            .map(PointSet::from_points)
            .collect::<Vec<_>>();
        FiniteSpace::with_points(file.n, nbhds)
    }
}

impl From<FiniteSpace> for SpaceFile {
    fn from(space: FiniteSpace) -> Self {
        SpaceFile {
            n: space.n,
            min_nbhd: space.min_nbhd.iter().map(|u| u.to_vec()).collect(),
        }
    }
}

impl FiniteSpace {
    pub fn new(min_nbhd: Vec<PointSet>) -> Result<Self, Violation> {
        Self::with_points(min_nbhd.len(), min_nbhd)
    }

    pub fn with_points(n: usize, min_nbhd: Vec<PointSet>) -> Result<Self, Violation> {
        validate(n, &min_nbhd)?;
        Ok(FiniteSpace { n, min_nbhd })
    }

    pub fn from_lists(lists: &[&[usize]]) -> Result<Self, Violation> {
        SpaceFile {
            n: lists.len(),
            min_nbhd: lists.iter().map(|l| l.to_vec()).collect(),
        }
        .try_into()
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_valid(min_nbhd: Vec<PointSet>) -> Self {
        debug_assert!(validate(min_nbhd.len(), &min_nbhd).is_ok());
        FiniteSpace {
            n: min_nbhd.len(),
            min_nbhd,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn carrier(&self) -> PointSet {
        PointSet::full(self.n)
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn min_nbhd(&self, x: usize) -> PointSet {
        self.min_nbhd[x]
    }

    pub fn min_nbhds(&self) -> &[PointSet] {
        &self.min_nbhd
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("space serialization is infallible")
    }

    pub fn is_open(&self, a: PointSet) -> bool {
        a.iter().all(|x| self.min_nbhd[x].is_subset(a))
    }

    pub fn is_closed(&self, a: PointSet) -> bool {
        self.is_open(self.carrier().difference(a))
    }

    /// Smallest open set containing `a`.
    pub fn open_hull(&self, a: PointSet) -> PointSet {
        a.iter()
            .fold(PointSet::EMPTY, |acc, x| acc.union(self.min_nbhd[x]))
    }

    pub fn interior(&self, a: PointSet) -> PointSet {
        self.points()
            .filter(|&x| self.min_nbhd[x].is_subset(a))
            .collect()
    }

    /// `{x : U(x) ∩ A ≠ ∅}`.
    pub fn closure(&self, a: PointSet) -> PointSet {
        self.points()
            .filter(|&x| self.min_nbhd[x].intersects(a))
            .collect()
    }

    /// `{x : U(x) ∩ (A ∖ {x}) ≠ ∅}`.
    pub fn accumulation_points(&self, a: PointSet) -> PointSet {
        self.points()
            .filter(|&x| self.min_nbhd[x].intersects(a.without(x)))
            .collect()
    }

    pub fn is_isolated(&self, x: usize) -> bool {
        self.min_nbhd[x] == PointSet::singleton(x)
    }

    pub fn opens(&self) -> Vec<PointSet> {
        PointSet::all_subsets(self.n)
            .filter(|&a| self.is_open(a))
            .collect()
    }

    pub fn opens_containing(&self, x: usize) -> impl Iterator<Item = PointSet> + '_ {
        let m = self.min_nbhd[x];
        self.carrier()
            .difference(m)
            .subsets()
            .map(move |extra| extra.union(m))
            .filter(|&a| self.is_open(a))
    }

    pub fn closed_sets(&self) -> Vec<PointSet> {
        let carrier = self.carrier();
        let mut closed: Vec<_> = self
            .opens()
            .into_iter()
            .map(|u| carrier.difference(u))
            .collect();
        closed.sort();
        closed
    }

    /// T0/T1/regular/discrete. Regularity is decided by enumerating pairs of
    /// open sets; it is the point/closed-set separation property without T1.
    pub fn separation_axioms(&self) -> SeparationAxioms {
        let t0 = self.points().all(|x| {
            (x + 1..self.n).all(|y| self.min_nbhd[x] != self.min_nbhd[y])
        });
        let t1 = self.points().all(|x| self.is_isolated(x));
        let opens = self.opens();
        let regular = self.closed_sets().into_iter().all(|c| {
            self.points().filter(|&x| !c.contains(x)).all(|x| {
                opens.iter().filter(|u| u.contains(x)).any(|&u| {
                    opens
                        .iter()
                        .any(|&w| c.is_subset(w) && !u.intersects(w))
                })
            })
        });
        SeparationAxioms {
            t0,
            t1,
            regular,
            discrete: t1,
        }
    }

    /// Relabels points: point `i` of `self` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> FiniteSpace {
        let mut nb = vec![PointSet::EMPTY; self.n];
        for x in self.points() {
            nb[perm[x]] = self.min_nbhd[x].iter().map(|y| perm[y]).collect();
        }
        FiniteSpace::from_valid(nb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::catalog::{chain, discrete, indiscrete, sierpinski};

    fn ps(points: &[usize]) -> PointSet {
        PointSet::from_points(points.iter().copied())
    }

    #[test]
    fn validate_examples() {
        assert!(validate(2, &[ps(&[0, 1]), ps(&[1])]).is_ok());
        assert_eq!(
            validate(2, &[ps(&[1]), ps(&[1])]),
            Err(Violation::NotReflexive(0))
        );
        assert!(validate(2, &[ps(&[0, 1]), ps(&[0, 1])]).is_ok());
        assert_eq!(
            validate(3, &[ps(&[0, 1]), ps(&[1, 2]), ps(&[2])]),
            Err(Violation::NotTransitive { outer: 0, inner: 1 })
        );
        assert_eq!(validate(0, &[]), Err(Violation::PointCount(0)));
    }

    #[test]
    fn closure_examples() {
        let s = sierpinski();
        assert_eq!(s.closure(ps(&[1])), ps(&[0, 1]));
        assert_eq!(s.closure(PointSet::EMPTY), PointSet::EMPTY);
        assert_eq!(chain(3).unwrap().closure(ps(&[2])), ps(&[0, 1, 2]));
    }

    #[test]
    fn accumulation_examples() {
        assert_eq!(sierpinski().accumulation_points(ps(&[1])), ps(&[0]));
        assert_eq!(
            discrete(2).unwrap().accumulation_points(ps(&[0, 1])),
            PointSet::EMPTY
        );
        assert_eq!(indiscrete(2).unwrap().accumulation_points(ps(&[0])), ps(&[1]));
    }

    #[test]
    fn separation_examples() {
        let d = discrete(2).unwrap().separation_axioms();
        assert_eq!(
            d,
            SeparationAxioms { t0: true, t1: true, regular: true, discrete: true }
        );
        let s = sierpinski().separation_axioms();
        assert_eq!(
            s,
            SeparationAxioms { t0: true, t1: false, regular: false, discrete: false }
        );
        let i = indiscrete(2).unwrap().separation_axioms();
        assert_eq!(
            i,
            SeparationAxioms { t0: false, t1: false, regular: true, discrete: false }
        );
    }

    #[test]
    fn json_is_bit_exact() {
        let s = sierpinski();
        assert_eq!(s.to_json(), r#"{"n":2,"min_nbhd":[[0,1],[1]]}"#);
        let back: FiniteSpace = serde_json::from_str(r#"{"n":2,"min_nbhd":[[1,0],[1]]}"#).unwrap();
        assert_eq!(back, s);
        let bad = serde_json::from_str::<FiniteSpace>(r#"{"n":2,"min_nbhd":[[1],[1]]}"#);
        assert!(bad.is_err());
        let bad = serde_json::from_str::<FiniteSpace>(r#"{"n":2,"min_nbhd":[[0,5],[1]]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn opens_containing_matches_filter() {
        let c = chain(3).unwrap();
        for x in c.points() {
            let mut direct: Vec<_> = c.opens().into_iter().filter(|u| u.contains(x)).collect();
            let mut fast: Vec<_> = c.opens_containing(x).collect();
            direct.sort();
            fast.sort();
            assert_eq!(direct, fast);
        }
    }
}
