//! Integer partitions, r-partitions, hook lengths and border-strip removal.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition, rejecting increasing or zero parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros; never fails.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// First (largest) part, 0 for the empty partition.
    pub fn first_part(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.first_part();
        Partition((0..width).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Product of all hook lengths.
    pub fn hook_product(&self) -> BigUint {
        let conj = self.conjugate();
        let mut prod = BigUint::one();
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.0[j] - i - 1;
                prod *= (arm + leg + 1) as u64;
            }
        }
        prod
    }

    /// Number of standard Young tableaux, `n! / ∏ hooks`.
    pub fn num_syt(&self) -> BigUint {
        let n = self.size();
        let (q, rem) = factorial(n).div_rem(&self.hook_product());
        assert!(rem.is_zero(), "hook product of {self} does not divide {n}!");
        q
    }

    /// Cells whose removal leaves a partition.
    pub fn corners(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| i + 1 == self.len() || self.0[i] > self.0[i + 1]).collect()
    }

    /// Every border strip of `size` cells whose removal leaves a partition
    /// containing `inner`. Yields `(remaining shape, height)`.
    pub fn remove_border_strips(&self, size: usize, inner: &Partition) -> Vec<(Partition, usize)> {
        if size == 0 || size > self.size() {
            return Vec::new();
        }
        let len = self.len();
        // beta-set: λ_i + (len - 1 - i), strictly decreasing
        let beta: Vec<usize> = self.0.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
        let mut out = Vec::new();
        for (i, &b) in beta.iter().enumerate() {
            if b < size {
                continue;
            }
            let target = b - size;
            if beta.contains(&target) {
                continue;
            }
            let height = beta.iter().filter(|&&x| x > target && x < b).count();
            let mut next = beta.clone();
            next[i] = target;
            next.sort_unstable_by(|a, b| b.cmp(a));
            let parts = next.iter().enumerate().map(|(k, &x)| x - (len - 1 - k)).collect();
            let shape = Partition::from_unsorted(parts);
            if shape.contains(inner) {
                out.push((shape, height));
            }
        }
        out
    }

    /// Partitions of `n` in reverse-lexicographic order, `(n)` first.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(current.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                current.push(p);
                rec(rest - p, p, current, out);
                current.pop();
            }
        }
        rec(n, n, &mut current, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
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

/// An r-tuple of partitions `(λ⁰, …, λ^{r−1})`.
///
/// Labels both the conjugacy classes (via colored cycle type) and the
/// irreducible representations of the colored permutation group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RPartition {
    components: Vec<Partition>,
}

impl RPartition {
    pub fn new(components: Vec<Partition>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::invalid("an r-partition needs r >= 1 components"));
        }
        Ok(RPartition { components })
    }

    pub fn empty(r: usize) -> Self {
        RPartition { components: vec![Partition::empty(); r.max(1)] }
    }

    /// Convenience constructor from nested vectors; panics on malformed input.
    pub fn from_parts(parts: &[&[usize]]) -> Self {
        RPartition::new(parts.iter().map(|p| Partition::new(p.to_vec()).expect("valid partition")).collect())
            .expect("at least one component")
    }

    pub fn r(&self) -> usize {
        self.components.len()
    }

    pub fn size(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Partition {
        &self.components[i]
    }

    pub(crate) fn with_component(&self, i: usize, p: Partition) -> RPartition {
        let mut components = self.components.clone();
        components[i] = p;
        RPartition { components }
    }

    /// `λ⁰` fixed, `λⁱ ↔ λ^{r−i}`.
    pub fn dual(&self) -> RPartition {
        let r = self.r();
        let components = (0..r).map(|i| self.components[(r - i) % r].clone()).collect();
        RPartition { components }
    }

    pub fn contains(&self, other: &RPartition) -> bool {
        self.r() == other.r() && self.components.iter().zip(&other.components).all(|(a, b)| a.contains(b))
    }

    /// All r-partitions of `n`. Component sizes run through compositions of
    /// `n` with `|λ⁰|` largest first; within a size vector the partitions are
    /// in reverse-lexicographic order.
    pub fn all(n: usize, r: usize) -> Vec<RPartition> {
        let r = r.max(1);
        let tables: Vec<Vec<Partition>> = (0..=n).map(Partition::all).collect();
        let mut out = Vec::new();
        let mut sizes = Vec::with_capacity(r);
        compositions(n, r, &mut sizes, &mut |sizes| {
            let mut current: Vec<Partition> = Vec::with_capacity(r);
            product(&tables, sizes, &mut current, &mut out);
        });
        out
    }

    /// Colored cycle list `(length, color)` for the class this labels.
    pub fn cycles(&self) -> Vec<(usize, usize)> {
        self.components.iter().enumerate().flat_map(|(c, p)| p.parts().iter().map(move |&len| (len, c))).collect()
    }
}

fn compositions(n: usize, r: usize, sizes: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if sizes.len() + 1 == r {
        sizes.push(n);
        f(sizes);
        sizes.pop();
        return;
    }
    for s in (0..=n).rev() {
        sizes.push(s);
        compositions(n - s, r, sizes, f);
        sizes.pop();
    }
}

fn product(tables: &[Vec<Partition>], sizes: &[usize], current: &mut Vec<Partition>, out: &mut Vec<RPartition>) {
    let depth = current.len();
    if depth == sizes.len() {
        out.push(RPartition { components: current.clone() });
        return;
    }
    for p in &tables[sizes[depth]] {
        current.push(p.clone());
        product(tables, sizes, current, out);
        current.pop();
    }
}

impl fmt::Display for RPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= (n - i) as u64;
        acc /= (i + 1) as u64;
    }
    acc
}

/// `(Σ kᵢ)! / ∏ kᵢ!`
pub fn multinomial(parts: &[usize]) -> BigUint {
    let mut total = 0;
    let mut acc = BigUint::one();
    for &k in parts {
        total += k;
        acc *= binomial(total, k);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_small_n() {
        let p2: Vec<_> = Partition::all(2).into_iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(p2, vec![vec![2], vec![1, 1]]);
        let counts: Vec<_> = (0..=10).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(RPartition::new(vec![]).is_err());
    }

    #[test]
    fn hook_length_of_two_one() {
        let p = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(p.hook_product(), BigUint::from(3u32));
        assert_eq!(p.num_syt(), BigUint::from(2u32));
        assert_eq!(Partition::empty().num_syt(), BigUint::one());
    }

    #[test]
    fn border_strips_of_three_two() {
        let p = Partition::new(vec![3, 2]).unwrap();
        let strips = |size| -> Vec<(Vec<usize>, usize)> {
            let mut s: Vec<_> = p
                .remove_border_strips(size, &Partition::empty())
                .into_iter()
                .map(|(s, h)| (s.parts().to_vec(), h))
                .collect();
            s.sort();
            s
        };
        // the only domino is the second row
        assert_eq!(strips(2), vec![(vec![3], 0)]);
        // cells (1,2),(1,3),(2,2)
        assert_eq!(strips(3), vec![(vec![1, 1], 1)]);
        assert_eq!(strips(4), vec![(vec![1], 1)]);
        assert_eq!(strips(5), vec![]);
        assert_eq!(strips(1), vec![(vec![2, 2], 0), (vec![3, 1], 0)]);
    }

    #[test]
    fn border_strips_respect_inner_shape() {
        let p = Partition::new(vec![3, 2]).unwrap();
        let inner = Partition::new(vec![2, 2]).unwrap();
        assert!(p.remove_border_strips(2, &inner).is_empty());
        let inner = Partition::new(vec![3]).unwrap();
        assert_eq!(p.remove_border_strips(2, &inner).len(), 1);
    }

    #[test]
    fn rpartitions_small() {
        let one_two = RPartition::all(1, 2);
        assert_eq!(one_two, vec![RPartition::from_parts(&[&[1], &[]]), RPartition::from_parts(&[&[], &[1]])]);
        assert_eq!(RPartition::all(2, 1).len(), 2);
        assert_eq!(RPartition::all(2, 2).len(), 5);
        assert_eq!(RPartition::all(0, 3), vec![RPartition::empty(3)]);
    }

    #[test]
    fn dual_examples() {
        let l = RPartition::from_parts(&[&[2], &[1]]);
        assert_eq!(l.dual(), l);
        let l = RPartition::from_parts(&[&[1], &[2], &[3]]);
        assert_eq!(l.dual(), RPartition::from_parts(&[&[1], &[3], &[2]]));
        let l = RPartition::from_parts(&[&[2, 1], &[], &[], &[]]);
        assert_eq!(l.dual(), l);
    }

    #[test]
    fn dual_is_involution() {
        for n in 0..=6 {
            for r in 1..=4 {
                for l in RPartition::all(n, r) {
                    assert_eq!(l.dual().dual(), l);
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(2, 5), BigUint::zero());
        assert_eq!(multinomial(&[1, 2, 3]), BigUint::from(60u32));
        assert_eq!(factorial(0), BigUint::one());
    }
}
