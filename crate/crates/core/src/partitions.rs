//! Integer partitions and Young-diagram combinatorics.
//!
//! A partition is stored as its weakly decreasing list of positive parts. The
//! empty partition is allowed everywhere and plays the role of `s_∅ = 1`.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "partition parts must be positive".into(),
            ));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts in any order; zeros are dropped.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), with zero beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Column lengths of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count() as u32)
            .collect();
        Partition { parts }
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }

    /// True if the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| self.parts[i] >= other.parts[i])
    }

    /// Cells `(row, column)` of the diagram, 0-based.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (0..p).map(move |c| (r as u32, c)))
    }

    /// The symmetric hook `(j, 1^{j-1})` with `2j - 1` boxes.
    pub fn gamma_hook(j: u32) -> Result<Partition> {
        if j == 0 {
            return Err(Error::InvalidArgument(
                "hook side length must be positive".into(),
            ));
        }
        let mut parts = vec![j];
        parts.extend(std::iter::repeat_n(1, j as usize - 1));
        Ok(Partition { parts })
    }

    /// The `j × j` square.
    pub fn square(j: u32) -> Partition {
        Partition {
            parts: vec![j; j as usize],
        }
    }

    /// All `μ ⊇ self` with `|μ| = |self| + k` such that `μ/self` is a border strip.
    pub fn border_strip_additions(&self, k: u32) -> Vec<Partition> {
        if k == 0 {
            return Vec::new();
        }
        partitions_containing(self, self.size() + k)
            .into_iter()
            .filter(|mu| is_border_strip(mu, self))
            .collect()
    }
}

/// Canonical listing order: larger size first, then lexicographically larger
/// parts first. Within one size this is the usual lexicographically
/// decreasing enumeration order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .size()
            .cmp(&self.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::syntax(0, "partition must be written as [a,b,...]"))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut offset = 1;
        for piece in inner.split(',') {
            let value = piece
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::syntax(offset, format!("invalid part {:?}", piece.trim())))?;
            parts.push(value);
            offset += piece.len() + 1;
        }
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// All partitions of `d`, lexicographically decreasing.
pub fn enumerate_partitions(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_bounded(d, d, &mut current, &mut out);
    out
}

fn fill_bounded(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        current.push(p);
        fill_bounded(remaining - p, p, current, out);
        current.pop();
    }
}

/// Partitions of `d` into parts drawn from `allowed`, lexicographically decreasing.
pub fn partitions_with_parts(d: u32, allowed: &[u32]) -> Vec<Partition> {
    let mut allowed: Vec<u32> = allowed.iter().copied().filter(|&a| a > 0).collect();
    allowed.sort_unstable_by(|a, b| b.cmp(a));
    allowed.dedup();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_restricted(d, 0, &allowed, &mut current, &mut out);
    out
}

fn fill_restricted(
    remaining: u32,
    start: usize,
    allowed: &[u32],
    current: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for (i, &p) in allowed.iter().enumerate().skip(start) {
        if p <= remaining {
            current.push(p);
            fill_restricted(remaining - p, i, allowed, current, out);
            current.pop();
        }
    }
}

/// Number of self-conjugate partitions of `d`.
pub fn count_self_conjugate(d: u32) -> usize {
    enumerate_partitions(d)
        .iter()
        .filter(|p| p.is_self_conjugate())
        .count()
}

/// Number of partitions of `d`.
pub fn partition_count(d: u32) -> usize {
    // Euler's recurrence would be faster, but d stays small here.
    enumerate_partitions(d).len()
}

/// All `μ ⊇ λ` with `|μ| = n`, lexicographically decreasing.
fn partitions_containing(lambda: &Partition, n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    if n < lambda.size() {
        return out;
    }
    let mut current = Vec::new();
    fill_containing(lambda, n, n, &mut current, &mut out);
    out
}

fn fill_containing(
    lambda: &Partition,
    remaining: u32,
    max_part: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    let row = current.len();
    // The rows of λ not yet covered must still fit.
    let needed: u32 = lambda.parts.iter().skip(row).sum();
    if remaining < needed {
        return;
    }
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    let lower = lambda.part(row).max(1);
    let upper = max_part.min(remaining);
    if lower > upper {
        return;
    }
    for p in (lower..=upper).rev() {
        current.push(p);
        fill_containing(lambda, remaining - p, p, current, out);
        current.pop();
    }
}

/// Cell-set test: `μ/λ` is nonempty, edge-connected and contains no 2×2 block.
pub fn is_border_strip(mu: &Partition, lambda: &Partition) -> bool {
    if !mu.contains(lambda) {
        return false;
    }
    let cells: HashSet<(u32, u32)> = (0..mu.len())
        .flat_map(|r| (lambda.part(r)..mu.part(r)).map(move |c| (r as u32, c)))
        .collect();
    let Some(&start) = cells.iter().next() else {
        return false;
    };

    for &(r, c) in &cells {
        if cells.contains(&(r + 1, c))
            && cells.contains(&(r, c + 1))
            && cells.contains(&(r + 1, c + 1))
        {
            return false;
        }
    }

    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((r, c)) = queue.pop_front() {
        let mut neighbours = vec![(r + 1, c), (r, c + 1)];
        if r > 0 {
            neighbours.push((r - 1, c));
        }
        if c > 0 {
            neighbours.push((r, c - 1));
        }
        for n in neighbours {
            if cells.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len() == cells.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Transposes the 0/1 diagram matrix directly.
    fn conjugate_by_matrix(lambda: &Partition) -> Partition {
        let rows = lambda.len();
        let cols = lambda.part(0) as usize;
        let mut grid = vec![vec![false; cols]; rows];
        for (r, c) in lambda.cells() {
            grid[r as usize][c as usize] = true;
        }
        let parts = (0..cols)
            .map(|c| (0..rows).filter(|&r| grid[r][c]).count() as u32)
            .collect();
        Partition::from_unsorted(parts)
    }

    /// Brute-force partition count by enumerating weakly decreasing tuples.
    fn brute_count(d: u32) -> usize {
        fn go(rem: u32, max: u32) -> usize {
            if rem == 0 {
                return 1;
            }
            (1..=max.min(rem)).map(|p| go(rem - p, p)).sum()
        }
        go(d, d)
    }

    /// Partitions into distinct odd parts, counted by subset enumeration.
    fn distinct_odd_count(d: u32) -> usize {
        let odds: Vec<u32> = (1..=d).filter(|k| k % 2 == 1).collect();
        (0u32..(1 << odds.len()))
            .filter(|mask| {
                odds.iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, k)| k)
                    .sum::<u32>()
                    == d
            })
            .count()
    }

    /// Border strip additions via beta-numbers: moving one bead k steps on the abacus.
    fn abacus_additions(lambda: &Partition, k: u32) -> Vec<Partition> {
        let len = lambda.len() + k as usize;
        let beta: Vec<u32> = (0..len)
            .map(|i| lambda.part(i) + (len - 1 - i) as u32)
            .collect();
        let mut out = Vec::new();
        for i in 0..len {
            let moved = beta[i] + k;
            if beta.contains(&moved) {
                continue;
            }
            let mut next = beta.clone();
            next[i] = moved;
            next.sort_unstable_by(|a, b| b.cmp(a));
            let parts = (0..len).map(|j| next[j] - (len - 1 - j) as u32).collect();
            out.push(Partition::from_unsorted(parts));
        }
        out.sort();
        out
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[1]).conjugate(), p(&[1]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(conjugate_by_matrix(&p(&[3, 1])), p(&[2, 1, 1]));
    }

    #[test]
    fn self_conjugate_examples() {
        assert!(p(&[2, 2]).is_self_conjugate());
        assert!(!p(&[3, 1]).is_self_conjugate());
        assert!(p(&[2, 1]).is_self_conjugate());
    }

    #[test]
    fn hooks_and_squares() {
        assert_eq!(Partition::gamma_hook(1).unwrap(), p(&[1]));
        assert_eq!(Partition::gamma_hook(2).unwrap(), p(&[2, 1]));
        assert_eq!(Partition::gamma_hook(3).unwrap(), p(&[3, 1, 1]));
        assert!(Partition::gamma_hook(0).is_err());
        for j in 1..8 {
            let g = Partition::gamma_hook(j).unwrap();
            assert_eq!(g.size(), 2 * j - 1);
            assert_eq!(conjugate_by_matrix(&g), g);
        }
        assert_eq!(Partition::square(0), Partition::empty());
        assert_eq!(Partition::square(1), p(&[1]));
        assert_eq!(Partition::square(2), p(&[2, 2]));
        assert!(Partition::square(4).is_self_conjugate());
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(4).len(), brute_count(4));
        assert_eq!(brute_count(4), 5);
        assert_eq!(enumerate_partitions(6).len(), brute_count(6));
        assert_eq!(brute_count(6), 11);
        assert_eq!(
            enumerate_partitions(4),
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
        for d in 0..=14 {
            let list = enumerate_partitions(d);
            assert_eq!(list.len(), brute_count(d));
            assert!(list.windows(2).all(|w| w[0] < w[1]), "order at d={d}");
        }
    }

    #[test]
    fn restricted_parts() {
        let even = partitions_with_parts(4, &[2, 4]);
        assert_eq!(even, vec![p(&[4]), p(&[2, 2])]);
        assert_eq!(partitions_with_parts(0, &[3]), vec![Partition::empty()]);
        assert!(partitions_with_parts(5, &[2, 4]).is_empty());
    }

    #[test]
    fn border_strip_examples() {
        let mut from_empty = Partition::empty().border_strip_additions(3);
        from_empty.sort();
        assert_eq!(from_empty, vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);

        let mut from_one = p(&[1]).border_strip_additions(3);
        from_one.sort();
        assert_eq!(from_one, vec![p(&[4]), p(&[2, 2]), p(&[1, 1, 1, 1])]);

        let mut single = p(&[1]).border_strip_additions(1);
        single.sort();
        assert_eq!(single, vec![p(&[2]), p(&[1, 1])]);

        assert!(p(&[2]).border_strip_additions(0).is_empty());
    }

    #[test]
    fn border_strips_agree_with_abacus() {
        for n in 0..=8 {
            for lambda in enumerate_partitions(n) {
                for k in 1..=(12 - n) {
                    let mut ours = lambda.border_strip_additions(k);
                    ours.sort();
                    assert_eq!(ours, abacus_additions(&lambda, k), "λ={lambda} k={k}");
                    for mu in &ours {
                        assert_eq!(mu.size(), lambda.size() + k);
                    }
                }
            }
        }
    }

    #[test]
    fn self_conjugate_counts() {
        assert_eq!(count_self_conjugate(2), 0);
        assert_eq!(count_self_conjugate(4), 1);
        assert_eq!(count_self_conjugate(8), 2);
        for d in 0..=14 {
            assert_eq!(count_self_conjugate(d), distinct_odd_count(d), "d={d}");
        }
    }

    #[test]
    fn text_form() {
        assert_eq!(p(&[3, 1, 1]).to_string(), "[3,1,1]");
        assert_eq!(Partition::empty().to_string(), "[]");
        assert_eq!("[3,1,1]".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(" [ 2, 2 ] ".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("[0]".parse::<Partition>().is_err());
        assert!("3,1".parse::<Partition>().is_err());
        assert!("[3,x]".parse::<Partition>().is_err());
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        (0u32..=12).prop_flat_map(|d| {
            let all = enumerate_partitions(d);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involution(lambda in arb_partition()) {
            prop_assert_eq!(lambda.conjugate().conjugate(), lambda.clone());
            prop_assert_eq!(lambda.conjugate().size(), lambda.size());
            prop_assert_eq!(lambda.conjugate(), conjugate_by_matrix(&lambda));
        }
    }
}
