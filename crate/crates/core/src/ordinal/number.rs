use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An ordinal below `ω^ω` in Cantor normal form, or the symbol `W1` standing
/// for the first uncountable ordinal.
///
/// Terms are `(exponent, coefficient)` pairs with strictly decreasing
/// exponents and coefficients ≥ 1. Zero is the empty term list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Ordinal {
    Cnf(Vec<(u32, u64)>),
    Omega1,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse ordinal `{0}`")]
pub struct OrdinalParseError(pub String);

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal::Cnf(Vec::new())
    }

    pub fn finite(k: u64) -> Self {
        if k == 0 {
            Self::zero()
        } else {
            Ordinal::Cnf(vec![(0, k)])
        }
    }

    pub fn omega() -> Self {
        Ordinal::Cnf(vec![(1, 1)])
    }

    /// `ω^e · c`.
    pub fn monomial(exponent: u32, coefficient: u64) -> Self {
        if coefficient == 0 {
            Self::zero()
        } else {
            Ordinal::Cnf(vec![(exponent, coefficient)])
        }
    }

    /// Builds from terms, normalising order and merging equal exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u64)>) -> Self {
        let mut out = Self::zero();
        let mut terms: Vec<_> = terms.into_iter().filter(|&(_, c)| c > 0).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        for (e, c) in terms {
            if let Ordinal::Cnf(ref mut t) = out {
                match t.last_mut() {
                    Some(last) if last.0 == e => last.1 += c,
                    _ => t.push((e, c)),
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Ordinal::Cnf(t) if t.is_empty())
    }

    pub fn is_omega1(&self) -> bool {
        matches!(self, Ordinal::Omega1)
    }

    /// Nonzero ordinals without a constant term, and `W1`.
    pub fn is_limit(&self) -> bool {
        match self {
            Ordinal::Omega1 => true,
            Ordinal::Cnf(t) => t.last().is_some_and(|&(e, _)| e > 0),
        }
    }

    pub fn is_successor(&self) -> bool {
        matches!(self, Ordinal::Cnf(t) if t.last().is_some_and(|&(e, _)| e == 0))
    }

    pub fn terms(&self) -> Option<&[(u32, u64)]> {
        match self {
            Ordinal::Cnf(t) => Some(t),
            Ordinal::Omega1 => None,
        }
    }

    /// `α + 1`. The successor of `W1` is not representable.
    pub fn succ(&self) -> Option<Ordinal> {
        self.add(&Ordinal::finite(1))
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        match self {
            Ordinal::Cnf(t) if self.is_successor() => {
                let mut t = t.clone();
                let last = t.last_mut().expect("successor has a constant term");
                last.1 -= 1;
                if last.1 == 0 {
                    t.pop();
                }
                Some(Ordinal::Cnf(t))
            }
            _ => None,
        }
    }

    /// Ordinal sum `self + rhs`. Returns `None` when the result would exceed
    /// the representable range (anything past `W1`).
    pub fn add(&self, rhs: &Ordinal) -> Option<Ordinal> {
        match (self, rhs) {
            (Ordinal::Omega1, r) if r.is_zero() => Some(Ordinal::Omega1),
            (Ordinal::Omega1, _) => None,
            (Ordinal::Cnf(_), Ordinal::Omega1) => Some(Ordinal::Omega1),
            (Ordinal::Cnf(a), Ordinal::Cnf(b)) => {
                let Some(&(lead, _)) = b.first() else {
                    return Some(self.clone());
                };
                let mut out: Vec<(u32, u64)> =
                    a.iter().copied().take_while(|&(e, _)| e >= lead).collect();
                let mut rest = b.iter().copied();
                if let (Some(last), Some(first)) = (out.last_mut(), b.first()) {
                    if last.0 == first.0 {
                        last.1 += first.1;
                        rest.next();
                    }
                }
                out.extend(rest);
                Some(Ordinal::Cnf(out))
            }
        }
    }
}

/// Lexicographic CNF order; `W1` is above every CNF ordinal.
pub fn ord_compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    match (a, b) {
        (Ordinal::Omega1, Ordinal::Omega1) => Ordering::Equal,
        (Ordinal::Omega1, _) => Ordering::Greater,
        (_, Ordinal::Omega1) => Ordering::Less,
        (Ordinal::Cnf(x), Ordinal::Cnf(y)) => {
            for (s, t) in x.iter().zip(y.iter()) {
                let c = s.0.cmp(&t.0).then(s.1.cmp(&t.1));
                if c != Ordering::Equal {
                    return c;
                }
            }
            x.len().cmp(&y.len())
        }
    }
}

pub fn ord_succ(a: &Ordinal) -> Option<Ordinal> {
    a.succ()
}

/// The supremum of a finite collection is its maximum; zero for none.
pub fn ord_sup<'a>(items: impl IntoIterator<Item = &'a Ordinal>) -> Ordinal {
    items
        .into_iter()
        .max()
        .cloned()
        .unwrap_or_else(Ordinal::zero)
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        ord_compare(self, other)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ordinal::Omega1 => f.write_str("W1"),
            Ordinal::Cnf(t) if t.is_empty() => f.write_str("0"),
            Ordinal::Cnf(t) => {
                for (i, &(e, c)) in t.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    match e {
                        0 => write!(f, "{c}")?,
                        1 => write!(f, "w*{c}")?,
                        _ => write!(f, "w^{e}*{c}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalParseError;

    /// Accepts the canonical form (`w^2*3+w*1+5`, `W1`) and the shorthands
    /// `w`, `w^2`, `w*2`.
    fn from_str(s: &str) -> Result<Self, OrdinalParseError> {
        let bad = || OrdinalParseError(s.to_string());
        let trimmed = s.trim();
        if trimmed.eq_ignore_ascii_case("w1") {
            return Ok(Ordinal::Omega1);
        }
        let mut terms = Vec::new();
        for raw in trimmed.split('+') {
            let raw = raw.trim();
            if raw.is_empty() {
                return Err(bad());
            }
            let (base, coeff) = match raw.split_once('*') {
                Some((b, c)) => (b.trim(), c.trim().parse::<u64>().map_err(|_| bad())?),
                None => (raw, 1),
            };
            let exp = if base == "w" {
                1
            } else if let Some(e) = base.strip_prefix("w^") {
                e.trim().parse::<u32>().map_err(|_| bad())?
            } else if raw.split_once('*').is_none() {
                let k = base.parse::<u64>().map_err(|_| bad())?;
                terms.push((0, k));
                continue;
            } else {
                return Err(bad());
            };
            terms.push((exp, coeff));
        }
        // canonical input must already be in decreasing order
        let strictly_decreasing = terms.windows(2).all(|w| w[0].0 > w[1].0);
        if !strictly_decreasing {
            return Err(bad());
        }
        Ok(Ordinal::from_terms(terms))
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn compare_succ_sup_examples() {
        assert_eq!(ord_compare(&o("w^2"), &o("w*5")), Ordering::Greater);
        assert_eq!(ord_succ(&o("w")).unwrap(), o("w+1"));
        assert_eq!(ord_sup([&o("w*2+3"), &o("w^2"), &o("7")]), o("w^2"));
        assert_eq!(ord_compare(&Ordinal::Omega1, &o("w^9*99")), Ordering::Greater);
        assert!(Ordinal::Omega1.succ().is_none());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(o("w^2*3+w*1+5").to_string(), "w^2*3+w*1+5");
        assert_eq!(o("w^2+w+5").to_string(), "w^2*1+w*1+5");
        assert_eq!(Ordinal::Omega1.to_string(), "W1");
        assert_eq!(Ordinal::zero().to_string(), "0");
        assert!("w+w^2".parse::<Ordinal>().is_err());
        assert!("x".parse::<Ordinal>().is_err());
    }

    #[test]
    fn addition_absorbs_smaller_terms() {
        assert_eq!(o("5").add(&o("w")).unwrap(), o("w"));
        assert_eq!(o("w+3").add(&o("w*2")).unwrap(), o("w*3"));
        assert_eq!(o("w^2+1").add(&o("4")).unwrap(), o("w^2+5"));
        assert_eq!(o("w").add(&Ordinal::Omega1).unwrap(), Ordinal::Omega1);
    }

    #[test]
    fn limits_and_successors() {
        assert!(o("w").is_limit());
        assert!(o("w^2*3+w").is_limit());
        assert!(!o("w+1").is_limit());
        assert!(o("w+1").is_successor());
        assert!(!Ordinal::zero().is_limit());
        assert_eq!(o("w+1").pred().unwrap(), o("w"));
        assert!(o("w").pred().is_none());
    }

    fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
        proptest::collection::vec((0u32..4, 1u64..5), 0..4).prop_map(Ordinal::from_terms)
    }

    proptest! {
        #[test]
        fn text_round_trip(a in arb_ordinal()) {
            prop_assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a);
        }

        #[test]
        fn addition_is_monotone_in_right_argument(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            let (lo, hi) = if b <= c { (b, c) } else { (c, b) };
            prop_assert!(a.add(&lo).unwrap() <= a.add(&hi).unwrap());
        }

        #[test]
        fn successor_is_strictly_larger(a in arb_ordinal()) {
            let s = a.succ().unwrap();
            prop_assert!(s > a);
            prop_assert_eq!(s.pred().unwrap(), a);
        }
    }
}
