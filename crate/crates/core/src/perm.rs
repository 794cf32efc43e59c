//! Permutations, colored permutations `(σ, κ)`, rook placements and
//! exhaustive group enumeration.
//!
//! Positions and values are 1-based throughout, matching the usual one-line
//! notation `w = [w(1), …, w(n)]`. A colored permutation is written
//! `[σ(1)^{κ(σ(1))}, …]`, i.e. the color shown at position `i` is the color
//! of the value `σ(i)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{factorial, Partition, RPartition};

/// Default refusal threshold for exhaustive enumeration of `r^n · n!` elements.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::invalid(format!("{one_line:?} is not a permutation of 1..{n}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { one_line: (1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.one_line[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { one_line: inv }
    }

    /// Graph points `(i, w(i))`.
    pub fn points(&self) -> RookPlacement {
        RookPlacement::from_sorted_unchecked(self.one_line.iter().enumerate().map(|(i, &v)| (i + 1, v)).collect())
    }

    /// Advances to the lexicographically next permutation; false at the last one.
    pub fn next_lex(&mut self) -> bool {
        next_permutation(&mut self.one_line)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.one_line.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// An element `(σ, κ)` of the colored permutation group `(ℤ/rℤ) ≀ 𝔖ₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColoredPermutation {
    sigma: Permutation,
    /// `kappa[j - 1] = κ(j)`, indexed by value.
    kappa: Vec<usize>,
    r: usize,
}

impl ColoredPermutation {
    /// `kappa[j - 1]` is the color of the value `j`.
    pub fn new(sigma: Permutation, kappa: Vec<usize>, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::invalid("number of colors r must be at least 1"));
        }
        if kappa.len() != sigma.n() {
            return Err(Error::invalid(format!(
                "coloring has {} entries for a permutation of size {}",
                kappa.len(),
                sigma.n()
            )));
        }
        if let Some(&c) = kappa.iter().find(|&&c| c >= r) {
            return Err(Error::invalid(format!("color {c} is out of range 0..{r}")));
        }
        Ok(ColoredPermutation { sigma, kappa, r })
    }

    /// Builds from the one-line pairs `(σ(i), κ(σ(i)))`.
    pub fn from_one_line(entries: &[(usize, usize)], r: usize) -> Result<Self> {
        let sigma = Permutation::new(entries.iter().map(|e| e.0).collect())?;
        let mut kappa = vec![0; sigma.n()];
        for &(v, c) in entries {
            kappa[v - 1] = c;
        }
        ColoredPermutation::new(sigma, kappa, r)
    }

    pub fn identity(n: usize, r: usize) -> Self {
        ColoredPermutation { sigma: Permutation::identity(n), kappa: vec![0; n], r: r.max(1) }
    }

    pub fn uncolored(sigma: Permutation) -> Self {
        let n = sigma.n();
        ColoredPermutation { sigma, kappa: vec![0; n], r: 1 }
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    /// `κ(j)` for 1-based value `j`.
    pub fn color_of_value(&self, j: usize) -> usize {
        self.kappa[j - 1]
    }

    pub fn kappa(&self) -> &[usize] {
        &self.kappa
    }

    /// The function view on `[n]^r`: `w(i^j) = σ(i)^{κ(σ(i)) + j}`.
    pub fn apply(&self, i: usize, j: usize) -> (usize, usize) {
        let v = self.sigma.apply(i);
        (v, (self.kappa[v - 1] + j) % self.r)
    }

    /// Product acting left to right: `(u.then(v))(x) = v(u(x))`.
    ///
    /// With this order the matrix view is a homomorphism:
    /// `M(u.then(v)) = M(u) · M(v)`.
    pub fn then(&self, other: &ColoredPermutation) -> ColoredPermutation {
        assert_eq!(self.n(), other.n(), "size mismatch");
        assert_eq!(self.r, other.r, "color count mismatch");
        let n = self.n();
        let r = self.r;
        let mut one_line = vec![0; n];
        let mut kappa = vec![0; n];
        for i in 1..=n {
            let (mid, c1) = self.apply(i, 0);
            let (end, c2) = other.apply(mid, c1);
            one_line[i - 1] = end;
            kappa[end - 1] = c2 % r;
        }
        ColoredPermutation { sigma: Permutation { one_line }, kappa, r }
    }

    pub fn inverse(&self) -> ColoredPermutation {
        let n = self.n();
        let inv = self.sigma.inverse();
        let mut kappa = vec![0; n];
        for m in 1..=n {
            // u then u⁻¹ must be colorless: κ'(m) = −κ(σ(m))
            kappa[m - 1] = (self.r - self.kappa[self.sigma.apply(m) - 1]) % self.r;
        }
        ColoredPermutation { sigma: inv, kappa, r: self.r }
    }

    /// Cycle type: the i-th component collects lengths of cycles whose
    /// color (sum of κ over the cycle, mod r) is i.
    pub fn cycle_type(&self) -> RPartition {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut lengths: Vec<Vec<usize>> = vec![Vec::new(); self.r];
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut color = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                color += self.kappa[x - 1];
                x = self.sigma.apply(x);
            }
            lengths[color % self.r].push(len);
        }
        RPartition::new(lengths.into_iter().map(Partition::from_unsorted).collect()).expect("r >= 1 components")
    }

    /// Color layers `C_c(w) = {(i, σ(i)) : κ(σ(i)) = c}`.
    pub fn diagram(&self) -> ColoredDiagram {
        let mut layers = vec![Vec::new(); self.r];
        for i in 1..=self.n() {
            let v = self.sigma.apply(i);
            layers[self.kappa[v - 1]].push((i, v));
        }
        ColoredDiagram { layers: layers.into_iter().map(RookPlacement::from_sorted_unchecked).collect() }
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &v) in self.sigma.one_line().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if self.r == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{}", self.kappa[v - 1])?;
            }
        }
        Ok(())
    }
}

impl ColoredPermutation {
    /// Parses `4^2,2^1,5^0,3^2,1^2`. A missing `^c` means color 0; brackets
    /// and whitespace are ignored. When `r` is `None` it is inferred as one
    /// more than the largest color seen.
    pub fn parse(input: &str, r: Option<usize>) -> Result<Self> {
        let mut entries = Vec::new();
        let mut column = 1;
        let body = input.trim();
        // "" and "[]" name the permutation of the empty set
        let bare = body.trim_start_matches('[').trim_end_matches(']').trim();
        let tokens: Vec<&str> = if bare.is_empty() { Vec::new() } else { body.split(',').collect() };
        for token in tokens {
            let start = column;
            column += token.chars().count() + 1;
            let t = token.trim().trim_start_matches('[').trim_end_matches(']').trim();
            if t.is_empty() {
                return Err(Error::Parse { column: start, message: "empty entry".into() });
            }
            let (v, c) = match t.split_once('^') {
                Some((v, c)) => (v.trim(), c.trim()),
                None => (t, "0"),
            };
            let value: usize = v
                .parse()
                .map_err(|_| Error::Parse { column: start, message: format!("`{v}` is not a positive integer") })?;
            let color: usize =
                c.parse().map_err(|_| Error::Parse { column: start, message: format!("`{c}` is not a color") })?;
            entries.push((value, color));
        }
        let max_color = entries.iter().map(|e| e.1).max().unwrap_or(0);
        let r = r.unwrap_or(max_color + 1);
        ColoredPermutation::from_one_line(&entries, r)
    }
}

impl FromStr for ColoredPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ColoredPermutation::parse(s, None)
    }
}

/// Grid points with at most one point per row and per column.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RookPlacement {
    /// Sorted by row.
    points: Vec<(usize, usize)>,
}

impl RookPlacement {
    pub fn new(mut points: Vec<(usize, usize)>) -> Result<Self> {
        points.sort_unstable();
        let mut cols = BTreeSet::new();
        for w in points.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::invalid(format!("two points in row {}", w[0].0)));
            }
        }
        for p in &points {
            if !cols.insert(p.1) {
                return Err(Error::invalid(format!("two points in column {}", p.1)));
            }
        }
        Ok(RookPlacement { points })
    }

    pub(crate) fn from_sorted_unchecked(points: Vec<(usize, usize)>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0].0 < w[1].0));
        RookPlacement { points }
    }

    pub fn empty() -> Self {
        RookPlacement::default()
    }

    /// Points sorted by row.
    pub fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: (usize, usize)) -> bool {
        self.points.binary_search(&p).is_ok()
    }
}

/// Per-color point sets `C_0(w), …, C_{r−1}(w)`; for `r = 2` these are
/// `pos(w)` and `neg(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredDiagram {
    layers: Vec<RookPlacement>,
}

impl ColoredDiagram {
    pub fn layer(&self, c: usize) -> &RookPlacement {
        &self.layers[c]
    }

    pub fn layers(&self) -> &[RookPlacement] {
        &self.layers
    }

    pub fn union(&self) -> RookPlacement {
        let mut all: Vec<_> = self.layers.iter().flat_map(|l| l.points.iter().copied()).collect();
        all.sort_unstable();
        RookPlacement::from_sorted_unchecked(all)
    }
}

/// `r^n · n!`
pub fn group_order(n: usize, r: usize) -> BigUint {
    BigUint::from(r).pow(n as u32) * factorial(n)
}

fn check_cap(n: usize, r: usize, cap: u64) -> Result<()> {
    let size = group_order(n, r);
    if size > BigUint::from(cap) {
        return Err(Error::SizeLimit { what: "r^n*n!", size: size.to_string(), cap: cap.to_string() });
    }
    Ok(())
}

/// Every element of the group exactly once: σ in lexicographic order, then
/// κ counted as a base-r number with `κ(1)` the most significant digit.
pub fn enumerate_group(n: usize, r: usize, cap: u64) -> Result<GroupIter> {
    if r == 0 {
        return Err(Error::invalid("number of colors r must be at least 1"));
    }
    check_cap(n, r, cap)?;
    Ok(GroupIter::new(Permutation::identity(n), r, None))
}

/// The group split into `n` disjoint blocks by the value of `σ(1)`, each in
/// the same order as [`enumerate_group`]. Concatenated they give the full
/// enumeration.
pub fn enumerate_group_blocks(n: usize, r: usize, cap: u64) -> Result<Vec<GroupIter>> {
    if r == 0 {
        return Err(Error::invalid("number of colors r must be at least 1"));
    }
    check_cap(n, r, cap)?;
    if n == 0 {
        return Ok(vec![GroupIter::new(Permutation::identity(0), r, None)]);
    }
    Ok((1..=n)
        .map(|first| {
            let mut one_line = vec![first];
            one_line.extend((1..=n).filter(|&v| v != first));
            GroupIter::new(Permutation { one_line }, r, Some(first))
        })
        .collect())
}

pub struct GroupIter {
    sigma: Permutation,
    kappa: Vec<usize>,
    r: usize,
    first: Option<usize>,
    done: bool,
}

impl GroupIter {
    fn new(sigma: Permutation, r: usize, first: Option<usize>) -> Self {
        let n = sigma.n();
        GroupIter { sigma, kappa: vec![0; n], r, first, done: false }
    }

    /// Remaining element count upper bound, for progress reporting.
    pub fn len_hint(&self) -> Option<usize> {
        let n = self.sigma.n();
        let per_block = match self.first {
            Some(_) => factorial(n.saturating_sub(1)),
            None => factorial(n),
        };
        (per_block * BigUint::from(self.r).pow(n as u32)).to_usize()
    }
}

impl Iterator for GroupIter {
    type Item = ColoredPermutation;

    fn next(&mut self) -> Option<ColoredPermutation> {
        if self.done {
            return None;
        }
        // κ is stored by value here; the digit order is by value 1..n
        let item = ColoredPermutation { sigma: self.sigma.clone(), kappa: self.kappa.clone(), r: self.r };
        // advance κ as a base-r counter, κ(n) least significant
        let mut carried = true;
        for d in self.kappa.iter_mut().rev() {
            *d += 1;
            if *d < self.r {
                carried = false;
                break;
            }
            *d = 0;
        }
        if carried {
            let more = next_permutation(&mut self.sigma.one_line);
            let left_block = match self.first {
                Some(f) => self.sigma.one_line.first() != Some(&f),
                None => false,
            };
            if !more || left_block {
                self.done = true;
            }
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn w(s: &str, r: usize) -> ColoredPermutation {
        ColoredPermutation::parse(s, Some(r)).unwrap()
    }

    #[test]
    fn group_sizes() {
        let b1: Vec<_> = enumerate_group(1, 2, DEFAULT_ENUMERATION_CAP).unwrap().collect();
        assert_eq!(b1, vec![w("1^0", 2), w("1^1", 2)]);
        assert_eq!(enumerate_group(3, 2, DEFAULT_ENUMERATION_CAP).unwrap().count(), 48);
        assert_eq!(enumerate_group(3, 3, DEFAULT_ENUMERATION_CAP).unwrap().count(), 162);
        assert_eq!(enumerate_group(0, 3, DEFAULT_ENUMERATION_CAP).unwrap().count(), 1);
    }

    #[test]
    fn enumeration_is_distinct_and_ordered() {
        let all: Vec<_> = enumerate_group(3, 2, DEFAULT_ENUMERATION_CAP).unwrap().collect();
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 48);
        assert!(all.windows(2).all(|p| (p[0].sigma(), p[0].kappa()) < (p[1].sigma(), p[1].kappa())));
    }

    #[test]
    fn blocks_concatenate_to_full_enumeration() {
        for (n, r) in [(1, 1), (3, 2), (4, 1), (2, 3)] {
            let full: Vec<_> = enumerate_group(n, r, DEFAULT_ENUMERATION_CAP).unwrap().collect();
            let blocks: Vec<_> =
                enumerate_group_blocks(n, r, DEFAULT_ENUMERATION_CAP).unwrap().into_iter().flatten().collect();
            assert_eq!(full, blocks);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_group(5, 3, 1000).err().unwrap();
        assert!(matches!(err, Error::SizeLimit { ref size, .. } if size == "29160"));
        assert!(enumerate_group(5, 3, 29160).is_ok());
    }

    #[test]
    fn cycle_type_examples() {
        let x = w("4^2,2^1,5^0,3^2,1^2", 3);
        assert_eq!(x.kappa(), &[2, 1, 2, 2, 0]);
        assert_eq!(x.cycle_type(), RPartition::from_parts(&[&[4], &[1], &[]]));
        assert_eq!(ColoredPermutation::identity(4, 3).cycle_type(), RPartition::from_parts(&[&[1, 1, 1, 1], &[], &[]]));
        assert_eq!(w("1^1", 2).cycle_type(), RPartition::from_parts(&[&[], &[1]]));
    }

    #[test]
    fn function_view_example() {
        // w(1^0) = 4^2, w(2^0) = 2^1, w(3^0) = 5^0, w(4^0) = 3^2, w(5^0) = 1^2
        let x = w("4^2,2^1,5^0,3^2,1^2", 3);
        let images: Vec<_> = (1..=5).map(|i| x.apply(i, 0)).collect();
        assert_eq!(images, vec![(4, 2), (2, 1), (5, 0), (3, 2), (1, 2)]);
    }

    #[test]
    fn diagram_examples() {
        let x = w("2^1,5^0,3^0,1^0,6^0,4^1", 2);
        let d = x.diagram();
        assert_eq!(d.layer(1).points(), &[(1, 2), (6, 4)]);
        assert_eq!(d.layer(0).points(), &[(2, 5), (3, 3), (4, 1), (5, 6)]);

        let id = ColoredPermutation::identity(3, 3).diagram();
        assert_eq!(id.layer(0).points(), &[(1, 1), (2, 2), (3, 3)]);
        assert!(id.layer(1).is_empty() && id.layer(2).is_empty());

        let y = w("3^0,1^1,6^0,4^0,7^0,2^1,5^1", 2);
        assert_eq!(y.diagram().layer(0).points(), &[(1, 3), (3, 6), (4, 4), (5, 7)]);
    }

    #[test]
    fn parse_and_format() {
        let x: ColoredPermutation = "4^2,2^1,5^0,3^2,1^2".parse().unwrap();
        assert_eq!(x.r(), 3);
        assert_eq!(x.to_string(), "4^2,2^1,5^0,3^2,1^2");
        let y = ColoredPermutation::parse("[3, 1, 2]", None).unwrap();
        assert_eq!(y.r(), 1);
        assert_eq!(y.to_string(), "3,1,2");
        let z = ColoredPermutation::parse("3,1,2", Some(2)).unwrap();
        assert_eq!(z.to_string(), "3^0,1^0,2^0");
    }

    #[test]
    fn parse_errors_carry_columns() {
        match ColoredPermutation::parse("1,x,3", None) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("unexpected {other:?}"),
        }
        match ColoredPermutation::parse("1,2^q", None) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(ColoredPermutation::parse("1,1", None), Err(Error::InvalidInput(_))));
        assert!(matches!(ColoredPermutation::parse("1^2", Some(2)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rook_placement_validation() {
        assert!(RookPlacement::new(vec![(1, 1), (1, 2)]).is_err());
        assert!(RookPlacement::new(vec![(1, 1), (2, 1)]).is_err());
        let p = RookPlacement::new(vec![(3, 1), (1, 2)]).unwrap();
        assert_eq!(p.points(), &[(1, 2), (3, 1)]);
    }

    #[test]
    fn inverse_and_product() {
        for u in enumerate_group(3, 3, DEFAULT_ENUMERATION_CAP).unwrap() {
            assert_eq!(u.then(&u.inverse()), ColoredPermutation::identity(3, 3));
            assert_eq!(u.inverse().then(&u), ColoredPermutation::identity(3, 3));
        }
    }
}
