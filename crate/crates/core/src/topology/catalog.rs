//! Named finite spaces.

use std::str::FromStr;

use thiserror::Error;

use super::pointset::{PointSet, MAX_POINTS};
use super::space::FiniteSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog space `{0}`")]
    Unknown(String),
    #[error("bad parameters for `{name}`: {detail}")]
    BadParams { name: String, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogSpace {
    Sierpinski,
    Chain(usize),
    Discrete(usize),
    Indiscrete(usize),
    ParticularPoint { n: usize, p: usize },
    ExcludedPoint { n: usize, p: usize },
}

impl CatalogSpace {
    pub fn build(self) -> Result<FiniteSpace, CatalogError> {
        let check_n = |name: &str, n: usize| {
            if n == 0 || n > MAX_POINTS {
                Err(CatalogError::BadParams {
                    name: name.to_string(),
                    detail: format!("n = {n} outside 1..={MAX_POINTS}"),
                })
            } else {
                Ok(())
            }
        };
        let check_p = |name: &str, n: usize, p: usize| {
            check_n(name, n)?;
            if p >= n {
                Err(CatalogError::BadParams {
                    name: name.to_string(),
                    detail: format!("point {p} outside 0..{n}"),
                })
            } else {
                Ok(())
            }
        };
        let nb: Vec<PointSet> = match self {
            CatalogSpace::Sierpinski => return Ok(sierpinski()),
            CatalogSpace::Chain(n) => {
                check_n("chain", n)?;
                (0..n).map(|i| (i..n).collect()).collect()
            }
            CatalogSpace::Discrete(n) => {
                check_n("discrete", n)?;
                (0..n).map(PointSet::singleton).collect()
            }
            CatalogSpace::Indiscrete(n) => {
                check_n("indiscrete", n)?;
                vec![PointSet::full(n); n]
            }
            CatalogSpace::ParticularPoint { n, p } => {
                check_p("particular_point", n, p)?;
                (0..n)
                    .map(|x| PointSet::singleton(x).with(p))
                    .collect()
            }
            CatalogSpace::ExcludedPoint { n, p } => {
                check_p("excluded_point", n, p)?;
                (0..n)
                    .map(|x| {
                        if x == p {
                            PointSet::full(n)
                        } else {
                            PointSet::singleton(x)
                        }
                    })
                    .collect()
            }
        };
        Ok(FiniteSpace::from_valid(nb))
    }

    pub fn name(self) -> String {
        match self {
            CatalogSpace::Sierpinski => "sierpinski".into(),
            CatalogSpace::Chain(n) => format!("chain:{n}"),
            CatalogSpace::Discrete(n) => format!("discrete:{n}"),
            CatalogSpace::Indiscrete(n) => format!("indiscrete:{n}"),
            CatalogSpace::ParticularPoint { n, p } => format!("particular_point:{n}:{p}"),
            CatalogSpace::ExcludedPoint { n, p } => format!("excluded_point:{n}:{p}"),
        }
    }
}

impl FromStr for CatalogSpace {
    type Err = CatalogError;

    /// `sierpinski`, `chain:3`, `discrete:2`, `indiscrete:2`,
    /// `particular_point:3:0`, `excluded_point:3:0`.
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let mut parts = s.split(|c| c == ':' || c == '(' || c == ',' || c == ')');
        let name = parts.next().unwrap_or_default().trim().to_ascii_lowercase();
        let args: Result<Vec<usize>, _> = parts
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse::<usize>())
            .collect();
        let args = args.map_err(|e| CatalogError::BadParams {
            name: name.clone(),
            detail: e.to_string(),
        })?;
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(CatalogError::BadParams {
                    name: name.clone(),
                    detail: format!("expected {k} parameter(s), got {}", args.len()),
                })
            }
        };
        match name.as_str() {
            "sierpinski" => arity(0).map(|_| CatalogSpace::Sierpinski),
            "chain" => arity(1).map(|_| CatalogSpace::Chain(args[0])),
            "discrete" => arity(1).map(|_| CatalogSpace::Discrete(args[0])),
            "indiscrete" => arity(1).map(|_| CatalogSpace::Indiscrete(args[0])),
            "particular_point" => arity(2).map(|_| CatalogSpace::ParticularPoint {
                n: args[0],
                p: args[1],
            }),
            "excluded_point" => arity(2).map(|_| CatalogSpace::ExcludedPoint {
                n: args[0],
                p: args[1],
            }),
            _ => Err(CatalogError::Unknown(s.to_string())),
        }
    }
}

/// Looks a space up by its catalog name.
pub fn catalog(name: &str) -> Result<FiniteSpace, CatalogError> {
    name.parse::<CatalogSpace>()?.build()
}

pub fn sierpinski() -> FiniteSpace {
    FiniteSpace::from_valid(vec![PointSet::from_points([0, 1]), PointSet::singleton(1)])
}

pub fn chain(n: usize) -> Result<FiniteSpace, CatalogError> {
    CatalogSpace::Chain(n).build()
}

pub fn discrete(n: usize) -> Result<FiniteSpace, CatalogError> {
    CatalogSpace::Discrete(n).build()
}

pub fn indiscrete(n: usize) -> Result<FiniteSpace, CatalogError> {
    CatalogSpace::Indiscrete(n).build()
}
