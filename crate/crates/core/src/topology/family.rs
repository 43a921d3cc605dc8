//! The point families the games and principles are built from.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::pointset::PointSet;
use super::space::FiniteSpace;

/// A family of subsets of a finite space, described intensionally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyId {
    /// Open sets containing the point.
    TauX(usize),
    /// Nonempty open sets.
    TauStar,
    /// `{A : x ∈ cl(A) ∖ A}`.
    OmegaX(usize),
    /// Members of `OmegaX` almost contained in every neighbourhood of the point.
    GammaX(usize),
    /// Closed discrete sets.
    CD,
    /// `⋃_p Ω_p`, i.e. sets with a closure point outside themselves.
    UnionOmega,
    /// Every subset not in `GammaX`.
    NotGamma(usize),
    /// Sets that do not converge to the point once the point itself is
    /// discarded: `A ∖ {x}` is nonempty and not in `GammaX`.
    NotConverging(usize),
    /// A literal list of sets.
    Explicit(Vec<PointSet>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("point {point} is outside a space with {n} points")]
    PointOutOfRange { point: usize, n: usize },
    #[error("explicit families may not contain the empty set")]
    EmptyMember,
    #[error("explicit member {0} leaves the carrier")]
    MemberOutOfRange(PointSet),
    #[error("cannot parse family `{0}`")]
    Parse(String),
}

impl FamilyId {
    pub fn point(&self) -> Option<usize> {
        match *self {
            FamilyId::TauX(x)
            | FamilyId::OmegaX(x)
            | FamilyId::GammaX(x)
            | FamilyId::NotGamma(x)
            | FamilyId::NotConverging(x) => Some(x),
            _ => None,
        }
    }

    /// Normalises explicit lists (sorted, deduplicated) and checks ranges.
    pub fn checked(self, space: &FiniteSpace) -> Result<Self, FamilyError> {
        if let Some(x) = self.point() {
            if x >= space.n() {
                return Err(FamilyError::PointOutOfRange { point: x, n: space.n() });
            }
        }
        match self {
            FamilyId::Explicit(mut sets) => {
                for &s in &sets {
                    if s.is_empty() {
                        return Err(FamilyError::EmptyMember);
                    }
                    if !s.is_subset(space.carrier()) {
                        return Err(FamilyError::MemberOutOfRange(s));
                    }
                }
                sets.sort();
                sets.dedup();
                Ok(FamilyId::Explicit(sets))
            }
            other => Ok(other),
        }
    }

    /// Membership test. Point-indexed tags assume the point is in range.
    pub fn contains(&self, space: &FiniteSpace, a: PointSet) -> bool {
        match *self {
            FamilyId::TauX(x) => a.contains(x) && space.is_open(a),
            FamilyId::TauStar => !a.is_empty() && space.is_open(a),
            FamilyId::OmegaX(x) => in_omega(space, x, a),
            FamilyId::GammaX(x) => in_gamma(space, x, a),
            FamilyId::CD => {
                space.is_closed(a)
                    && a.iter()
                        .all(|p| space.min_nbhd(p).intersection(a) == PointSet::singleton(p))
            }
            FamilyId::UnionOmega => !space.closure(a).difference(a).is_empty(),
            FamilyId::NotGamma(x) => !in_gamma(space, x, a),
            FamilyId::NotConverging(x) => {
                let rest = a.without(x);
                !rest.is_empty() && !in_gamma(space, x, rest)
            }
            FamilyId::Explicit(ref sets) => sets.binary_search(&a).is_ok(),
        }
    }

    /// Every member, in mask order.
    pub fn members(&self, space: &FiniteSpace) -> Vec<PointSet> {
        match self {
            FamilyId::Explicit(sets) => {
                let mut sets = sets.clone();
                sets.sort();
                sets.dedup();
                sets
            }
            _ => PointSet::all_subsets(space.n())
                .filter(|&a| self.contains(space, a))
                .collect(),
        }
    }

    /// The ⊆-minimal members, in mask order.
    pub fn minimal_members(&self, space: &FiniteSpace) -> Vec<PointSet> {
        minimal_sets(&self.members(space))
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

fn in_omega(space: &FiniteSpace, x: usize, a: PointSet) -> bool {
    !a.contains(x) && space.min_nbhd(x).intersects(a)
}

fn in_gamma(space: &FiniteSpace, x: usize, a: PointSet) -> bool {
    in_omega(space, x, a) && space.opens_containing(x).all(|v| a.difference(v).is_finite())
}

/// ⊆-minimal elements of a list of sets, in mask order.
pub fn minimal_sets(sets: &[PointSet]) -> Vec<PointSet> {
    let mut sorted = sets.to_vec();
    sorted.sort();
    sorted.dedup();
    // mask order refines inclusion, so a proper subset always appears earlier
    let mut out: Vec<PointSet> = Vec::new();
    for s in sorted {
        if !out.iter().any(|m| m.is_subset(s)) {
            out.push(s);
        }
    }
    out
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::TauX(x) => write!(f, "tau:{x}"),
            FamilyId::TauStar => f.write_str("taustar"),
            FamilyId::OmegaX(x) => write!(f, "omega:{x}"),
            FamilyId::GammaX(x) => write!(f, "gamma:{x}"),
            FamilyId::CD => f.write_str("cd"),
            FamilyId::UnionOmega => f.write_str("unionomega"),
            FamilyId::NotGamma(x) => write!(f, "notgamma:{x}"),
            FamilyId::NotConverging(x) => write!(f, "notconv:{x}"),
            FamilyId::Explicit(sets) => {
                f.write_str("explicit:")?;
                for (i, s) in sets.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    let pts: Vec<String> = s.iter().map(|p| p.to_string()).collect();
                    f.write_str(&pts.join(","))?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;

    /// `tau:0`, `taustar`, `omega:0`, `gamma:0`, `cd`, `unionomega`,
    /// `notgamma:0`, `notconv:0`, `explicit:0,1|1`.
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let bad = || FamilyError::Parse(s.to_string());
        let (tag, arg) = match s.split_once(':') {
            Some((t, a)) => (t.trim().to_ascii_lowercase(), Some(a.trim())),
            None => (s.trim().to_ascii_lowercase(), None),
        };
        let point = || -> Result<usize, FamilyError> {
            arg.ok_or_else(bad)?.parse().map_err(|_| bad())
        };
        match (tag.as_str(), arg) {
            ("tau" | "taux", _) => Ok(FamilyId::TauX(point()?)),
            ("taustar" | "tau*", None) => Ok(FamilyId::TauStar),
            ("omega", _) => Ok(FamilyId::OmegaX(point()?)),
            ("gamma", _) => Ok(FamilyId::GammaX(point()?)),
            ("cd", None) => Ok(FamilyId::CD),
            ("unionomega" | "notcd", None) => Ok(FamilyId::UnionOmega),
            ("notgamma", _) => Ok(FamilyId::NotGamma(point()?)),
            ("notconv", _) => Ok(FamilyId::NotConverging(point()?)),
            ("explicit", Some(body)) => {
                let mut sets = Vec::new();
                for member in body.split('|') {
                    let pts: Result<Vec<usize>, _> = member
                        .split(',')
                        .filter(|p| !p.trim().is_empty())
                        .map(|p| p.trim().parse::<usize>())
                        .collect();
                    let pts = pts.map_err(|_| bad())?;
                    if pts.iter().any(|&p| p >= 32) {
                        return Err(bad());
                    }
                    sets.push(PointSet::from_points(pts));
                }
                Ok(FamilyId::Explicit(sets))
            }
            _ => Err(bad()),
        }
    }
}
