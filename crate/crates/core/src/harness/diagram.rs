//! The implication diagram, checked arrow by arrow against profiles.

use serde::Serialize;

use super::profile::{Profile, Property};

use Property::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub from: Property,
    pub to: Property,
    /// Short justification shown in reports.
    pub label: &'static str,
    /// Only asserted on regular spaces at a Gδ point.
    pub guarded: bool,
}

const fn arrow(from: Property, to: Property, label: &'static str, guarded: bool) -> Arrow {
    Arrow { from, to, label, guarded }
}

/// Every arrow with a stated justification.
pub const ARROWS: [Arrow; 25] = [
    arrow(CountableLocalBase, NotS1TauNotGamma, "first countability", false),
    arrow(NotS1TauNotGamma, CountableLocalBase, "first countability", false),
    arrow(CountableLocalBase, QPoint, "Michael", false),
    arrow(NotS1TauNotGamma, WPoint, "¬S1 ⇒ I↑", false),
    arrow(NotSeqS1, WtildePoint, "¬S1 ⇒ I↑", false),
    arrow(QPoint, IWinsQGame, "¬S1 ⇒ I↑", false),
    arrow(WPoint, WLowerPoint, "I↑ ⇒ II¬↑", false),
    arrow(WtildePoint, IINotWinsWtilde, "I↑ ⇒ II¬↑", false),
    arrow(IWinsQGame, IINotWinsQGame, "I↑ ⇒ II¬↑", false),
    arrow(NotS1TauNotGamma, NotSeqS1, "S1 to (S1)", false),
    arrow(WPoint, WtildePoint, "W to W̃", false),
    arrow(QPoint, NotSeqS1, "onion schedule", true),
    arrow(IWinsQGame, WtildePoint, "q-game to W̃-game", true),
    arrow(IINotWinsQGame, IINotWinsWtilde, "II transfer", true),
    arrow(IWinsQGame, IIWinsDual, "duality (i)", false),
    arrow(IIWinsDual, IWinsQGame, "duality (iv)", false),
    arrow(IINotWinsQGame, INotWinsDual, "duality (iii)", false),
    arrow(INotWinsDual, IINotWinsQGame, "duality (ii)", false),
    arrow(IIWinsCsft, IIWinsDual, "Ωx ⊆ ¬CD", false),
    arrow(INotWinsCsft, INotWinsDual, "Ωx ⊆ ¬CD", false),
    arrow(IIWinsDual, INotWinsDual, "II↑ ⇒ I¬↑", false),
    arrow(IIWinsCsft, INotWinsCsft, "II↑ ⇒ I¬↑", false),
    arrow(INotWinsCsft, S1OmegaOmega, "I¬↑ ⇒ S1", false),
    arrow(IWinsQGame, IIWinsCsft, "q-game to fan tightness", true),
    arrow(WLowerPoint, StrictlyFrechet, "Fréchet refuter", false),
];

/// Arrows drawn without a stated argument; listed, not checked.
pub const UNVERIFIED: [(Property, Property); 1] = [(CountableLocalBase, IIWinsCsft)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub space: String,
    pub point: usize,
    pub from: Property,
    pub to: Property,
    pub label: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct ArrowTally {
    pub from: Property,
    pub to: Property,
    pub label: &'static str,
    pub guarded: bool,
    /// Profiles on which the arrow was asserted.
    pub checked: usize,
    /// Of those, how many had a true antecedent.
    pub exercised: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagramReport {
    pub profiles: usize,
    pub arrows: Vec<ArrowTally>,
    pub violations: Vec<Violation>,
    /// Profiles with a certificate that failed its re-check.
    pub unvalidated: Vec<(String, usize, Property)>,
    pub unverified_arrows: Vec<(Property, Property)>,
}

impl DiagramReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty() && self.unvalidated.is_empty()
    }
}

pub fn verify_diagram(profiles: &[Profile]) -> DiagramReport {
    let mut arrows: Vec<ArrowTally> = ARROWS
        .iter()
        .map(|a| ArrowTally {
            from: a.from,
            to: a.to,
            label: a.label,
            guarded: a.guarded,
            checked: 0,
            exercised: 0,
            violations: 0,
        })
        .collect();
    let mut violations = Vec::new();
    let mut unvalidated = Vec::new();
    for p in profiles {
        for e in p.entries.iter().filter(|e| !e.validated) {
            unvalidated.push((p.space.clone(), p.point, e.property));
        }
        for (a, tally) in ARROWS.iter().zip(arrows.iter_mut()) {
            // the Gδ half of the guard is the minimal-neighbourhood stand-in
            if a.guarded && !p.regular {
                continue;
            }
            tally.checked += 1;
            if p.get(a.from) {
                tally.exercised += 1;
                if !p.get(a.to) {
                    tally.violations += 1;
                    violations.push(Violation {
                        space: p.space.clone(),
                        point: p.point,
                        from: a.from,
                        to: a.to,
                        label: a.label,
                    });
                }
            }
        }
    }
    DiagramReport {
        profiles: profiles.len(),
        arrows,
        violations,
        unvalidated,
        unverified_arrows: UNVERIFIED.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::profile;
    use crate::topology::{chain, sierpinski};

    #[test]
    fn clean_on_examples() {
        let ps = vec![
            profile(&sierpinski(), 0, "sierpinski").unwrap(),
            profile(&chain(3).unwrap(), 1, "chain:3").unwrap(),
        ];
        let r = verify_diagram(&ps);
        assert!(r.clean());
        assert!(r.arrows.iter().all(|a| a.guarded || a.exercised == 2));
    }

    #[test]
    fn injected_fault_is_localized() {
        let mut p = profile(&sierpinski(), 0, "sierpinski").unwrap();
        p.set(Property::IINotWinsQGame, false);
        let r = verify_diagram(&[p]);
        let broken: Vec<_> = r.violations.iter().map(|v| (v.from, v.to)).collect();
        assert!(broken.contains(&(IWinsQGame, IINotWinsQGame)));
        assert!(broken.contains(&(INotWinsDual, IINotWinsQGame)));
        assert!(broken.iter().all(|&(_, to)| to == IINotWinsQGame));
    }
}
