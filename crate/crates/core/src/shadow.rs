//! Viennot shadow lines, iterated shadow sets, Schensted row insertion and
//! shadow monomials.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::perm::{ColoredPermutation, Permutation, RookPlacement};

/// One shadow line: its points in increasing x (hence decreasing y) and the
/// north-east corners between consecutive points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowLine {
    pub points: Vec<(usize, usize)>,
    /// Corner `i` is `(x_{i+1}, y_i)`.
    pub corners: Vec<(usize, usize)>,
}

impl ShadowLine {
    /// y of the infinite horizontal ray.
    pub fn horizontal_ray(&self) -> usize {
        self.points.last().expect("lines are nonempty").1
    }

    /// x of the infinite vertical ray.
    pub fn vertical_ray(&self) -> usize {
        self.points[0].0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowDecomposition {
    pub lines: Vec<ShadowLine>,
    pub shadow_set: RookPlacement,
    pub horizontal_ray_ys: Vec<usize>,
    pub vertical_ray_xs: Vec<usize>,
}

/// Shadow lines of a rook placement, computed by a greedy sweep in
/// increasing x: a point joins the first line whose lowest y is above it,
/// otherwise it opens a new line. Line minima stay sorted, so the search is a
/// binary search.
pub fn shadow_lines(points: &RookPlacement) -> ShadowDecomposition {
    let mut lines: Vec<ShadowLine> = Vec::new();
    // lowest y of each line, increasing in line index
    let mut lows: Vec<usize> = Vec::new();
    for &(x, y) in points.points() {
        let slot = lows.partition_point(|&low| low < y);
        if slot == lows.len() {
            lines.push(ShadowLine { points: vec![(x, y)], corners: Vec::new() });
            lows.push(y);
        } else {
            let line = &mut lines[slot];
            line.corners.push((x, lows[slot]));
            line.points.push((x, y));
            lows[slot] = y;
        }
    }
    let mut corners: Vec<(usize, usize)> = lines.iter().flat_map(|l| l.corners.iter().copied()).collect();
    corners.sort_unstable();
    let mut vertical_ray_xs: Vec<usize> = lines.iter().map(ShadowLine::vertical_ray).collect();
    vertical_ray_xs.sort_unstable();
    ShadowDecomposition {
        shadow_set: RookPlacement::new(corners).expect("shadow corners never share a row or column"),
        horizontal_ray_ys: lows,
        vertical_ray_xs,
        lines,
    }
}

/// A tableau stored as ragged rows.
pub type Tableau = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauPair {
    pub p: Tableau,
    pub q: Tableau,
}

impl TableauPair {
    pub fn shape(&self) -> Vec<usize> {
        self.p.iter().map(Vec::len).collect()
    }

    /// Same shape, rows and columns strictly increasing, entries exactly 1..n.
    pub fn is_standard_pair(&self) -> bool {
        let shape_ok = self.shape() == self.q.iter().map(Vec::len).collect::<Vec<_>>();
        shape_ok && is_standard(&self.p) && is_standard(&self.q)
    }
}

fn is_standard(t: &Tableau) -> bool {
    let n: usize = t.iter().map(Vec::len).sum();
    let mut seen = vec![false; n + 1];
    for row in t {
        for &v in row {
            if v == 0 || v > n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
    }
    let rows_ok = t.iter().all(|row| row.windows(2).all(|w| w[0] < w[1]));
    let shape_ok = t.windows(2).all(|w| w[0].len() >= w[1].len());
    let cols_ok = t.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| above < below));
    rows_ok && shape_ok && cols_ok
}

/// Iterates the shadow construction on successive shadow sets. Row k of `p`
/// holds the horizontal-ray heights of the k-th iterate and row k of `q` its
/// vertical-ray positions.
pub fn iterated_shadows(points: &RookPlacement) -> TableauPair {
    iterated_decompositions(points).into_iter().fold(TableauPair { p: Vec::new(), q: Vec::new() }, |mut acc, d| {
        acc.p.push(d.horizontal_ray_ys);
        acc.q.push(d.vertical_ray_xs);
        acc
    })
}

/// Every level of the iteration, stopping before the empty set.
pub fn iterated_decompositions(points: &RookPlacement) -> Vec<ShadowDecomposition> {
    let mut levels = Vec::new();
    let mut current = points.clone();
    while !current.is_empty() {
        let d = shadow_lines(&current);
        current = d.shadow_set.clone();
        levels.push(d);
    }
    levels
}

/// Classical Schensted row insertion.
pub fn schensted_insert(w: &Permutation) -> TableauPair {
    let mut p: Tableau = Vec::new();
    let mut q: Tableau = Vec::new();
    for (idx, &value) in w.one_line().iter().enumerate() {
        let mut x = value;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![idx + 1]);
                break;
            }
            let pos = p[row].partition_point(|&y| y < x);
            if pos == p[row].len() {
                p[row].push(x);
                q[row].push(idx + 1);
                break;
            }
            std::mem::swap(&mut p[row][pos], &mut x);
            row += 1;
        }
    }
    TableauPair { p, q }
}

/// A monomial in the `x_{i,j}`, exponents keyed by `(i, j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShadowMonomial {
    pub exponents: BTreeMap<(usize, usize), u32>,
}

impl ShadowMonomial {
    pub fn degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    pub fn support(&self) -> Result<RookPlacement> {
        RookPlacement::new(self.exponents.keys().copied().collect())
    }

    fn multiply_set(&mut self, set: &RookPlacement, e: u32) {
        for &p in set.points() {
            *self.exponents.entry(p).or_insert(0) += e;
        }
    }
}

impl fmt::Display for ShadowMonomial {
    /// Factors as `x[i,j]^e`, ordered by exponent then position.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let mut factors: Vec<_> = self.exponents.iter().map(|(&(i, j), &e)| (e, i, j)).collect();
        factors.sort_unstable();
        for (k, (e, i, j)) in factors.into_iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "x[{i},{j}]")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// `𝔰(w) = m(C₁)·m(C₂)²·…·m(C_{r−1})^{r−1}·m(𝒮(C₀))^r`.
pub fn shadow_monomial(w: &ColoredPermutation) -> ShadowMonomial {
    let r = w.r() as u32;
    let diagram = w.diagram();
    let mut m = ShadowMonomial::default();
    for (c, layer) in diagram.layers().iter().enumerate().skip(1) {
        m.multiply_set(layer, c as u32);
    }
    m.multiply_set(&shadow_lines(diagram.layer(0)).shadow_set, r);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn worked_example_shadow_set() {
        let w = perm(&[5, 1, 3, 6, 7, 2, 4]);
        let d = shadow_lines(&w.points());
        assert_eq!(d.shadow_set.points(), &[(2, 5), (6, 3), (7, 6)]);
        assert_eq!(d.lines.len(), 4);
        assert_eq!(d.horizontal_ray_ys, vec![1, 2, 4, 7]);
        assert_eq!(d.vertical_ray_xs, vec![1, 3, 4, 5]);
    }

    #[test]
    fn worked_example_second_iterate() {
        let w = perm(&[5, 1, 3, 6, 7, 2, 4]);
        let levels = iterated_decompositions(&w.points());
        assert_eq!(levels[1].shadow_set.points(), &[(6, 5)]);
        let t = iterated_shadows(&w.points());
        assert_eq!(t.p[0], vec![1, 2, 4, 7]);
        assert_eq!(t.q[0], vec![1, 3, 4, 5]);
        assert_eq!(t, schensted_insert(&w));
    }

    #[test]
    fn identity_and_reversal() {
        let d = shadow_lines(&Permutation::identity(4).points());
        assert_eq!(d.lines.len(), 4);
        assert!(d.shadow_set.is_empty());
        let t = iterated_shadows(&Permutation::identity(3).points());
        assert_eq!(t.p, vec![vec![1, 2, 3]]);
        assert_eq!(t.q, vec![vec![1, 2, 3]]);

        let rev = perm(&[3, 2, 1]);
        let d = shadow_lines(&rev.points());
        assert_eq!(d.lines.len(), 1);
        assert_eq!(d.shadow_set.points(), &[(2, 3), (3, 2)]);
        let s = schensted_insert(&rev);
        assert_eq!(s.p, vec![vec![1], vec![2], vec![3]]);
        assert_eq!(s.q, vec![vec![1], vec![2], vec![3]]);
        assert_eq!(iterated_shadows(&rev.points()), s);
    }

    #[test]
    fn empty_input() {
        let d = shadow_lines(&RookPlacement::empty());
        assert!(d.lines.is_empty() && d.shadow_set.is_empty());
        assert_eq!(iterated_shadows(&RookPlacement::empty()), TableauPair { p: vec![], q: vec![] });
    }

    #[test]
    fn signed_monomial_example() {
        let w = ColoredPermutation::parse("2^1,5^0,3^0,1^0,6^0,4^1", Some(2)).unwrap();
        let m = shadow_monomial(&w);
        let expected: BTreeMap<_, _> = [((1, 2), 1), ((6, 4), 1), ((3, 5), 2), ((4, 3), 2)].into_iter().collect();
        assert_eq!(m.exponents, expected);
        assert_eq!(m.degree(), 6);
        assert_eq!(m.to_string(), "x[1,2]*x[6,4]*x[3,5]^2*x[4,3]^2");
    }

    #[test]
    fn uncolored_monomial_example() {
        let w = ColoredPermutation::uncolored(perm(&[5, 1, 3, 6, 7, 2, 4]));
        let m = shadow_monomial(&w);
        assert_eq!(m.to_string(), "x[2,5]*x[6,3]*x[7,6]");
        assert_eq!(m.degree(), 3);
        assert_eq!(shadow_monomial(&ColoredPermutation::identity(5, 3)).to_string(), "1");
    }
}
