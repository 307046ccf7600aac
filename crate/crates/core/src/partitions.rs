//! Partitions, the refinement order and the admissible classes `A(n)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A partition, stored as a non-increasing list of positive parts.
///
/// The total order puts shorter partitions first and, among partitions of
/// the same length, compares parts lexicographically with larger parts
/// first. With this order the matrix `c_alpha(l_beta)` is lower triangular.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn single(n: u32) -> Self {
        Partition::new(vec![n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_part(&self, part: u32) -> bool {
        self.0.contains(&part)
    }

    /// Multiset union of the parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] >= other.0[j] {
                parts.push(self.0[i]);
                i += 1;
            } else {
                parts.push(other.0[j]);
                j += 1;
            }
        }
        parts.extend_from_slice(&self.0[i..]);
        parts.extend_from_slice(&other.0[j..]);
        Partition(parts)
    }

    /// `floor(a_1/q) + ... + floor(a_n/q)`.
    pub fn pi_q(&self, q: u64) -> u64 {
        assert!(q >= 1, "pi_q needs q >= 1");
        self.0.iter().map(|&a| a as u64 / q).sum()
    }

    /// Whether `self` refines `coarse`: the parts of `self` can be grouped
    /// into blocks whose sums are exactly the parts of `coarse`.
    pub fn refines(&self, coarse: &Partition) -> bool {
        refines(self, coarse)
    }

    /// All sub-multisets of the parts, each listed once, as partitions.
    pub fn sub_multisets(&self) -> Vec<Partition> {
        let counts = multiplicities(&self.0);
        let mut out = vec![Vec::new()];
        for (part, count) in counts {
            let mut next = Vec::with_capacity(out.len() * (count + 1));
            for base in &out {
                for k in 0..=count {
                    let mut v: Vec<u32> = base.clone();
                    v.extend(std::iter::repeat_n(part, k));
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(Partition).collect()
    }

    /// Removes the parts of `sub` (a sub-multiset) from `self`.
    pub fn difference(&self, sub: &Partition) -> Option<Partition> {
        let mut rest = self.0.clone();
        for &x in &sub.0 {
            let pos = rest.iter().position(|&y| y == x)?;
            rest.remove(pos);
        }
        Some(Partition(rest))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl From<Vec<u32>> for Partition {
    fn from(parts: Vec<u32>) -> Self {
        Partition::new(parts)
    }
}

fn multiplicities(parts: &[u32]) -> Vec<(u32, usize)> {
    let mut out: Vec<(u32, usize)> = Vec::new();
    for &p in parts {
        match out.last_mut() {
            Some((q, c)) if *q == p => *c += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// All partitions of `n`, in the crate's total order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    gen_partitions(n, n, &mut current, &mut out);
    out.sort();
    out
}

fn gen_partitions(rest: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for part in (1..=max.min(rest)).rev() {
        current.push(part);
        gen_partitions(rest - part, part, current, out);
        current.pop();
    }
}

/// All partitions of weight at most `n`, grouped by weight.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

fn refines(fine: &Partition, coarse: &Partition) -> bool {
    if fine.weight() != coarse.weight() || fine.len() < coarse.len() {
        return false;
    }
    if fine.len() == coarse.len() {
        return fine == coarse;
    }
    let mut memo = HashMap::new();
    refine_search(fine.0.clone(), coarse.0.clone(), &mut memo)
}

// Assign blocks of `fine` to the parts of `coarse`, largest coarse part first.
fn refine_search(
    fine: Vec<u32>,
    coarse: Vec<u32>,
    memo: &mut HashMap<(Vec<u32>, Vec<u32>), bool>,
) -> bool {
    if coarse.is_empty() {
        return fine.is_empty();
    }
    let key = (fine.clone(), coarse.clone());
    if let Some(&hit) = memo.get(&key) {
        return hit;
    }
    let target = coarse[0];
    let rest_coarse = coarse[1..].to_vec();
    let counts = multiplicities(&fine);
    let mut chosen = vec![0usize; counts.len()];
    let found = choose_block(&counts, 0, target, &mut chosen, &mut |chosen| {
        let mut remaining = Vec::new();
        for ((part, count), &k) in counts.iter().zip(chosen) {
            remaining.extend(std::iter::repeat_n(*part, count - k));
        }
        refine_search(remaining, rest_coarse.clone(), memo)
    });
    memo.insert(key, found);
    found
}

fn choose_block(
    counts: &[(u32, usize)],
    idx: usize,
    rest: u32,
    chosen: &mut Vec<usize>,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if rest == 0 {
        return accept(chosen);
    }
    if idx == counts.len() {
        return false;
    }
    let (part, count) = counts[idx];
    let max_k = count.min((rest / part) as usize);
    for k in (0..=max_k).rev() {
        chosen[idx] = k;
        if choose_block(counts, idx + 1, rest - part * k as u32, chosen, accept) {
            chosen[idx] = 0;
            return true;
        }
    }
    chosen[idx] = 0;
    false
}

/// The forbidden block sums `{p - 1, p^2 - 1, ..., p^(r-1) - 1}`.
pub fn forbidden_sums(p: u64, r: u32) -> Vec<u64> {
    (1..r).map(|i| p.pow(i) - 1).collect()
}

/// Whether `alpha` lies in `A(r)`: no sub-multiset of its parts sums to
/// one of `p - 1, ..., p^(r-1) - 1`.
pub fn in_admissible_class(alpha: &Partition, p: u64, r: u32) -> bool {
    if r <= 1 {
        return true;
    }
    let forbidden = forbidden_sums(p, r);
    let cap = *forbidden.last().unwrap() as usize;
    let mut reachable = vec![false; cap + 1];
    reachable[0] = true;
    for &part in alpha.parts() {
        let part = part as usize;
        if part > cap {
            continue;
        }
        for s in (part..=cap).rev() {
            if reachable[s - part] {
                reachable[s] = true;
            }
        }
    }
    forbidden.iter().all(|&f| !reachable[f as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn union_examples() {
        assert_eq!(p(&[3, 1]).union(&p(&[2, 1])), p(&[3, 2, 1, 1]));
        assert_eq!(p(&[3, 1]).union(&Partition::empty()), p(&[3, 1]));
        assert_eq!(p(&[2]).union(&p(&[2])), p(&[2, 2]));
    }

    #[test]
    fn refines_examples() {
        assert!(p(&[2, 1, 1]).refines(&p(&[3, 1])));
        assert!(!p(&[3, 1]).refines(&p(&[2, 2])));
        assert!(p(&[5, 2]).refines(&p(&[5, 2])));
        assert!(Partition::empty().refines(&Partition::empty()));
        assert!(!Partition::empty().refines(&p(&[1])));
        assert!(p(&[1, 1, 1, 1]).refines(&p(&[2, 2])));
        assert!(!p(&[3, 3]).refines(&p(&[4, 2])));
    }

    #[test]
    fn pi_q_examples() {
        assert_eq!(p(&[3, 1]).pi_q(2), 1);
        assert_eq!(p(&[4, 4]).pi_q(4), 2);
        assert_eq!(p(&[5, 3, 2]).pi_q(1), 10);
    }

    #[test]
    fn admissible_examples() {
        assert!(in_admissible_class(&p(&[2, 2]), 2, 2));
        assert!(!in_admissible_class(&p(&[2, 1]), 2, 2));
        assert!(in_admissible_class(&p(&[7]), 2, 3));
        assert!(in_admissible_class(&p(&[1, 1]), 2, 1));
        // 1 + 2 = 3 = 2^2 - 1
        assert!(!in_admissible_class(&p(&[2, 1]), 2, 3));
        assert!(!in_admissible_class(&p(&[1, 1, 1]), 2, 3));
    }

    #[test]
    fn enumeration() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions_of(5).len(), 7);
        assert_eq!(partitions_of(12).len(), 77);
    }

    #[test]
    fn sub_multisets_and_difference() {
        let a = p(&[2, 1, 1]);
        let subs = a.sub_multisets();
        assert_eq!(subs.len(), 6);
        for s in &subs {
            let rest = a.difference(s).unwrap();
            assert_eq!(rest.union(s), a);
        }
    }

    #[test]
    fn json_is_a_plain_array() {
        assert_eq!(serde_json::to_string(&p(&[3, 1])).unwrap(), "[3,1]");
        let back: Partition = serde_json::from_str("[1,3]").unwrap();
        assert_eq!(back, p(&[3, 1]));
    }
}
