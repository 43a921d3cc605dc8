//! Exhaustive enumeration of labeled topologies on small carriers, with an
//! optional one-per-homeomorphism-class mode.

use std::collections::HashSet;

use thiserror::Error;

use super::pointset::PointSet;
use super::space::FiniteSpace;

/// Largest carrier the enumerator accepts.
pub const MAX_ENUMERATION: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("enumeration supports 1..={max} points, got {0}", max = MAX_ENUMERATION)]
pub struct EnumerateError(pub usize);

/// Streams every labeled topology on `n` points.
pub fn enumerate_topologies(n: usize) -> Result<LabeledTopologies, EnumerateError> {
    if n == 0 || n > MAX_ENUMERATION {
        return Err(EnumerateError(n));
    }
    Ok(LabeledTopologies {
        n,
        assigned: Vec::with_capacity(n),
        cursor: vec![0],
        finished: false,
    })
}

/// One representative per homeomorphism class, in first-seen order.
pub fn enumerate_canonical(n: usize) -> Result<Vec<FiniteSpace>, EnumerateError> {
    let mut seen = HashSet::new();
    Ok(enumerate_topologies(n)?
        .filter(|s| seen.insert(canonical_code(s)))
        .collect())
}

/// Backtracking enumeration of minimal-neighbourhood maps. Level `k` tries
/// every mask containing `k` that is consistent with levels `0..k`.
pub struct LabeledTopologies {
    n: usize,
    assigned: Vec<u32>,
    cursor: Vec<u32>,
    finished: bool,
}

impl LabeledTopologies {
    fn consistent(&self, k: usize, m: u32) -> bool {
        if m & (1 << k) == 0 {
            return false;
        }
        self.assigned.iter().enumerate().all(|(j, &mj)| {
            let j_in_m = m & (1 << j) != 0;
            let k_in_mj = mj & (1 << k) != 0;
            (!j_in_m || mj & !m == 0) && (!k_in_mj || m & !mj == 0)
        })
    }
}

impl Iterator for LabeledTopologies {
    type Item = FiniteSpace;

    fn next(&mut self) -> Option<FiniteSpace> {
        let limit = 1u32 << self.n;
        while !self.finished {
            let k = self.assigned.len();
            let cur = *self.cursor.last().expect("cursor stack is never empty while running");
            if cur >= limit {
                self.cursor.pop();
                match self.assigned.pop() {
                    Some(_) => {
                        *self.cursor.last_mut().expect("parent cursor") += 1;
                    }
                    None => self.finished = true,
                }
                continue;
            }
            if !self.consistent(k, cur) {
                *self.cursor.last_mut().expect("cursor") += 1;
                continue;
            }
            if k + 1 == self.n {
                *self.cursor.last_mut().expect("cursor") += 1;
                let mut nb: Vec<PointSet> =
                    self.assigned.iter().map(|&m| PointSet::from_bits(m)).collect();
                nb.push(PointSet::from_bits(cur));
                return Some(FiniteSpace::from_valid(nb));
            }
            self.assigned.push(cur);
            self.cursor.push(0);
        }
        None
    }
}

/// Invariant of a point under homeomorphism, used to restrict relabelings.
fn signature(space: &FiniteSpace, x: usize) -> (usize, usize) {
    let up = space.min_nbhd(x).len();
    let down = space.points().filter(|&y| space.min_nbhd(y).contains(x)).count();
    (up, down)
}

/// Lexicographically least adjacency code over all relabelings that keep
/// points sorted by signature. Two spaces are homeomorphic iff their codes
/// are equal.
pub fn canonical_code(space: &FiniteSpace) -> Vec<u32> {
    let n = space.n();
    let mut order: Vec<usize> = space.points().collect();
    order.sort_by_key(|&x| signature(space, x));
    let sigs: Vec<_> = order.iter().map(|&x| signature(space, x)).collect();

    let mut best: Option<Vec<u32>> = None;
    let mut point_at = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(space, &sigs, 0, &mut point_at, &mut used, &mut best);
    best.expect("at least one relabeling exists")
}

fn search(
    space: &FiniteSpace,
    sigs: &[(usize, usize)],
    slot: usize,
    point_at: &mut Vec<usize>,
    used: &mut Vec<bool>,
    best: &mut Option<Vec<u32>>,
) {
    let n = space.n();
    if slot == n {
        let mut inverse = vec![0; n];
        for (s, &p) in point_at.iter().enumerate() {
            inverse[p] = s;
        }
        let code: Vec<u32> = point_at
            .iter()
            .map(|&p| {
                space
                    .min_nbhd(p)
                    .iter()
                    .fold(0u32, |acc, q| acc | (1 << inverse[q]))
            })
            .collect();
        if best.as_ref().map_or(true, |b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    for p in 0..n {
        if used[p] || signature(space, p) != sigs[slot] {
            continue;
        }
        used[p] = true;
        point_at[slot] = p;
        search(space, sigs, slot + 1, point_at, used, best);
        used[p] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: families of subsets of an n-set containing ∅ and X
    /// and closed under pairwise union and intersection.
    fn closure_system_oracle(n: usize) -> HashSet<Vec<u32>> {
        let subsets = 1u32 << n;
        let full = subsets - 1;
        let inner: Vec<u32> = (1..full).collect();
        let mut out = HashSet::new();
        for choice in 0u64..(1u64 << inner.len()) {
            let mut fam: Vec<u32> = vec![0, full];
            for (i, &s) in inner.iter().enumerate() {
                if choice & (1 << i) != 0 {
                    fam.push(s);
                }
            }
            let set: HashSet<u32> = fam.iter().copied().collect();
            let closed = fam
                .iter()
                .all(|&a| fam.iter().all(|&b| set.contains(&(a | b)) && set.contains(&(a & b))));
            if closed {
                fam.sort();
                out.insert(fam);
            }
        }
        out
    }

    fn open_family(space: &FiniteSpace) -> Vec<u32> {
        let mut v: Vec<u32> = space.opens().iter().map(|o| o.bits()).collect();
        v.sort();
        v
    }

    #[test]
    fn counts_match_closure_system_oracle() {
        for n in 1..=4 {
            let oracle = closure_system_oracle(n);
            let mine: HashSet<Vec<u32>> =
                enumerate_topologies(n).unwrap().map(|s| open_family(&s)).collect();
            let total = enumerate_topologies(n).unwrap().count();
            assert_eq!(total, mine.len(), "duplicates at n={n}");
            assert_eq!(mine, oracle, "n={n}");
        }
        assert_eq!(closure_system_oracle(3).len(), 29);
        assert_eq!(closure_system_oracle(4).len(), 355);
    }

    #[test]
    fn larger_labeled_counts() {
        assert_eq!(enumerate_topologies(1).unwrap().count(), 1);
        assert_eq!(enumerate_topologies(5).unwrap().count(), 6942);
    }

    #[test]
    fn range_is_checked() {
        assert!(enumerate_topologies(0).is_err());
        assert!(enumerate_topologies(7).is_err());
    }

    /// Pairwise brute-force homeomorphism test over all permutations.
    fn homeomorphic(a: &FiniteSpace, b: &FiniteSpace) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(a.n()).iter().any(|p| a.permuted(p) == *b)
    }

    #[test]
    fn canonical_classes_match_pairwise_oracle() {
        for n in 1..=4 {
            let all: Vec<_> = enumerate_topologies(n).unwrap().collect();
            let mut reps: Vec<FiniteSpace> = Vec::new();
            for s in &all {
                if !reps.iter().any(|r| homeomorphic(r, s)) {
                    reps.push(s.clone());
                }
            }
            assert_eq!(enumerate_canonical(n).unwrap().len(), reps.len(), "n={n}");
        }
        assert_eq!(enumerate_canonical(3).unwrap().len(), 9);
        assert_eq!(enumerate_canonical(4).unwrap().len(), 33);
    }

    #[test]
    fn canonical_code_is_relabeling_invariant() {
        let spaces: Vec<_> = enumerate_topologies(4).unwrap().collect();
        for s in spaces.iter().step_by(17) {
            let p = [2, 0, 3, 1];
            assert_eq!(canonical_code(s), canonical_code(&s.permuted(&p)));
        }
    }
}
