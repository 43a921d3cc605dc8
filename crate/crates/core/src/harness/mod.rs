//! Sweeps over small spaces: profiles, the implication diagram, duality,
//! transformer validation, interactive play and reports.
//!
//! Finite models make every property in the diagram true, so profiles alone
//! cannot separate anything. The checks get their strength from solving both
//! sides of every game, re-validating certificates, duality agreement and
//! the transformer sweeps.

mod diagram;
mod duality;
mod play;
mod profile;
mod report;
mod sweep;

use thiserror::Error;

use crate::game::GameError;
use crate::principles::PrincipleError;
use crate::topology::{enumerate_topologies, EnumerateError, FiniteSpace};

pub use diagram::{verify_diagram, Arrow, ArrowTally, DiagramReport, Violation, ARROWS, UNVERIFIED};
pub use duality::{duality_row, verify_duality, Diagnosis, DualityReport, DualityRow};
pub use play::{play, play_omega1, PlayError};
pub use profile::{profile, Certificate, Entry, Profile, Property};
pub use report::{diagram_dot, to_json_pretty};
pub use sweep::{ordinal_prefix_checks, verify_transformers, Failure, TransformerReport, TransformerRow, COMBINATORS};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("point {0} is isolated; the properties are about non-isolated points")]
    Isolated(usize),
    #[error("point {point} is outside a space with {n} points")]
    PointOutOfRange { point: usize, n: usize },
    #[error("no certificate for {0}")]
    Uncertified(Property),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Principle(#[from] PrincipleError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

/// Compact identifier of a labeled space: its minimal neighbourhoods.
pub fn space_id(space: &FiniteSpace) -> String {
    let lists: Vec<Vec<usize>> = space.min_nbhds().iter().map(|u| u.to_vec()).collect();
    serde_json::to_string(&lists).expect("plain lists serialize")
}

/// `(id, space, point)` for every labeled topology with at most `n_max`
/// points and each of its non-isolated points, in a fixed order.
pub fn instances(n_max: usize) -> Result<Vec<(String, FiniteSpace, usize)>, HarnessError> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for space in enumerate_topologies(n)? {
            let id = space_id(&space);
            for x in space.points().filter(|&x| !space.is_isolated(x)) {
                out.push((id.clone(), space.clone(), x));
            }
        }
    }
    Ok(out)
}

/// Profiles for every instance with at most `n_max` points.
pub fn profiles(n_max: usize) -> Result<Vec<Profile>, HarnessError> {
    use rayon::prelude::*;
    instances(n_max)?
        .par_iter()
        .map(|(id, space, x)| profile(space, *x, id))
        .collect()
}

/// Applies `TOPOGAME_JOBS` to the global worker pool. Call once, early.
pub fn init_workers() {
    if let Some(n) = std::env::var("TOPOGAME_JOBS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialisation is harmless to ignore
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}
