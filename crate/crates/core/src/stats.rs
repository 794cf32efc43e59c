//! Longest-increasing-subsequence statistics over colored permutation
//! groups, the resulting Hilbert series, and shape analysis of the counts.
//!
//! Two independent routes produce every table:
//!
//! * **enumeration** walks the whole group and evaluates the statistic;
//! * **fast** assembles the counts from `a_{j,ℓ} = Σ_{λ ⊢ j, λ₁ = ℓ} (f^λ)²`
//!   and independent choices of rows, columns and colors for the points that
//!   do not carry color 0.
//!
//! All arithmetic is on arbitrary-precision integers.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::partition::{binomial, factorial, multinomial, Partition};
use crate::perm::{enumerate_group_blocks, ColoredPermutation, Permutation, RookPlacement};
use crate::shadow::shadow_monomial;

/// Default upper bound on `n` for the closed-form path.
pub const DEFAULT_FAST_BOUND: usize = 64;

/// Longest chain `(i, j) < (i', j')` with `i < i'` and `j < j'`, by patience
/// sorting on the columns in row order.
pub fn lis_points(points: &RookPlacement) -> usize {
    let mut piles: Vec<usize> = Vec::new();
    for &(_, col) in points.points() {
        let slot = piles.partition_point(|&top| top < col);
        if slot == piles.len() {
            piles.push(col);
        } else {
            piles[slot] = col;
        }
    }
    piles.len()
}

pub fn lis(w: &Permutation) -> usize {
    lis_points(&w.points())
}

/// `r · lis(C₀(w)) + Σᵢ (r − i) · |Cᵢ(w)|`
pub fn colored_statistic(w: &ColoredPermutation) -> usize {
    let r = w.r();
    let d = w.diagram();
    let colored: usize = (1..r).map(|i| (r - i) * d.layer(i).len()).sum();
    r * lis_points(d.layer(0)) + colored
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatKind {
    /// `a_{n,k}`: permutations with `lis = k`.
    A,
    /// `b_{n,k}`: signed permutations with `2 lis(pos) + |neg| = k`.
    B,
    /// `c_{n,r,k}`: colored permutations with the colored statistic `k`.
    C,
}

impl StatKind {
    pub fn colors(self, r: usize) -> usize {
        match self {
            StatKind::A => 1,
            StatKind::B => 2,
            StatKind::C => r,
        }
    }
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StatKind::A => "a",
            StatKind::B => "b",
            StatKind::C => "c",
        })
    }
}

impl std::str::FromStr for StatKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(StatKind::A),
            "b" => Ok(StatKind::B),
            "c" => Ok(StatKind::C),
            other => Err(Error::invalid(format!("unknown statistic `{other}` (expected a, b or c)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountPath {
    Enumerate,
    Fast,
}

impl fmt::Display for CountPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountPath::Enumerate => "enumerate",
            CountPath::Fast => "fast",
        })
    }
}

/// Counts keyed by the statistic value `k`, dense over `1..=r·n`
/// (`0..=0` when `n = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatTable {
    pub kind: StatKind,
    pub n: usize,
    pub r: usize,
    pub path: CountPath,
    pub values: BTreeMap<usize, BigUint>,
}

impl StatTable {
    fn from_histogram(kind: StatKind, n: usize, r: usize, path: CountPath, hist: Vec<BigUint>) -> StatTable {
        let top = r * n;
        let lo = if n == 0 { 0 } else { 1 };
        let mut values: BTreeMap<usize, BigUint> = (lo..=top).map(|k| (k, BigUint::zero())).collect();
        for (k, v) in hist.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            assert!(k >= lo && k <= top, "statistic {k} outside 1..={top}");
            values.insert(k, v);
        }
        StatTable { kind, n, r, path, values }
    }

    pub fn get(&self, k: usize) -> BigUint {
        self.values.get(&k).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.values.values().sum()
    }

    /// Same counts, ignoring which path produced them.
    pub fn same_counts(&self, other: &StatTable) -> bool {
        self.n == other.n && self.r == other.r && self.values == other.values
    }

    pub fn log_concavity(&self) -> LogConcavityReport {
        let (start, seq) = self.dense();
        check_log_concave(start, &seq)
    }

    pub fn unimodality(&self) -> UnimodalityReport {
        let (start, seq) = self.dense();
        check_unimodal(start, &seq)
    }

    fn dense(&self) -> (usize, Vec<BigUint>) {
        let start = self.values.keys().next().copied().unwrap_or(0);
        (start, self.values.values().cloned().collect())
    }

    /// `{schema, kind, n, r, path, cap, values}` with counts as decimal strings.
    pub fn to_json(&self, cap: Option<u64>) -> serde_json::Value {
        let values: serde_json::Map<String, serde_json::Value> =
            self.values.iter().map(|(k, v)| (k.to_string(), json!(v.to_string()))).collect();
        json!({
            "schema": 1,
            "kind": self.kind,
            "n": self.n,
            "r": self.r,
            "path": self.path,
            "cap": cap,
            "values": values,
        })
    }
}

/// Histogram of `stat` over the whole group, evaluated in parallel blocks
/// when the `parallel` feature is on.
fn group_histogram<F>(n: usize, r: usize, cap: u64, stat: F) -> Result<Vec<BigUint>>
where
    F: Fn(&ColoredPermutation) -> usize + Sync,
{
    let blocks = enumerate_group_blocks(n, r, cap)?;
    let width = r * n + 1;
    let count_block = |block: crate::perm::GroupIter| {
        let mut h = vec![0u64; width];
        for w in block {
            h[stat(&w)] += 1;
        }
        h
    };
    #[cfg(feature = "parallel")]
    let partials: Vec<Vec<u64>> = {
        use rayon::prelude::*;
        blocks.into_par_iter().map(count_block).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<Vec<u64>> = blocks.into_iter().map(count_block).collect();

    let mut total = vec![0u64; width];
    for p in partials {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }
    Ok(total.into_iter().map(BigUint::from).collect())
}

/// `a_{n,k}` by enumerating `𝔖ₙ`.
pub fn count_a(n: usize, cap: u64) -> Result<StatTable> {
    let hist = group_histogram(n, 1, cap, |w| lis(w.sigma()))?;
    Ok(StatTable::from_histogram(StatKind::A, n, 1, CountPath::Enumerate, hist))
}

/// `b_{n,k}` by enumerating `Bₙ`.
pub fn count_b(n: usize, cap: u64) -> Result<StatTable> {
    let hist = group_histogram(n, 2, cap, |w| {
        let d = w.diagram();
        2 * lis_points(d.layer(0)) + d.layer(1).len()
    })?;
    Ok(StatTable::from_histogram(StatKind::B, n, 2, CountPath::Enumerate, hist))
}

/// `c_{n,r,k}` by enumerating `𝔖ₙ,ᵣ`.
pub fn count_c(n: usize, r: usize, cap: u64) -> Result<StatTable> {
    if r == 0 {
        return Err(Error::invalid("number of colors r must be at least 1"));
    }
    let hist = group_histogram(n, r, cap, colored_statistic)?;
    Ok(StatTable::from_histogram(StatKind::C, n, r, CountPath::Enumerate, hist))
}

pub fn count_enumerate(kind: StatKind, n: usize, r: usize, cap: u64) -> Result<StatTable> {
    match kind {
        StatKind::A => count_a(n, cap),
        StatKind::B => count_b(n, cap),
        StatKind::C => count_c(n, r, cap),
    }
}

/// `table[j][ℓ] = a_{j,ℓ}` for all `j ≤ n`, from the hook length formula.
pub fn lis_distribution_table(n: usize) -> Vec<Vec<BigUint>> {
    (0..=n)
        .map(|j| {
            let mut row = vec![BigUint::zero(); j + 1];
            for lambda in Partition::all(j) {
                let f = lambda.num_syt();
                row[lambda.first_part()] += &f * &f;
            }
            row
        })
        .collect()
}

/// Closed-form counts: `c_{n,r,k} = Σ C(n,M)²·M!·multinomial(M; m)·a_{n−M,ℓ}`
/// over color counts `m = (m₁, …, m_{r−1})`, `M = Σ mᵢ`, and `ℓ` with
/// `rℓ + Σ (r − i) mᵢ = k`.
pub fn count_fast(kind: StatKind, n: usize, r: usize, bound: usize) -> Result<StatTable> {
    if n > bound {
        return Err(Error::SizeLimit { what: "n (fast path)", size: n.to_string(), cap: bound.to_string() });
    }
    let r = kind.colors(r);
    if r == 0 {
        return Err(Error::invalid("number of colors r must be at least 1"));
    }
    let a = lis_distribution_table(n);
    let mut hist = vec![BigUint::zero(); r * n + 1];
    for big_m in 0..=n {
        // Σ multinomial(M; m) grouped by the weight Σ (r − i) mᵢ
        let mut by_weight: BTreeMap<usize, BigUint> = BTreeMap::new();
        let mut m = Vec::with_capacity(r.saturating_sub(1));
        color_counts(big_m, r.saturating_sub(1), &mut m, &mut |m| {
            let weight: usize = m.iter().enumerate().map(|(idx, &mi)| (r - (idx + 1)) * mi).sum();
            *by_weight.entry(weight).or_default() += multinomial(m);
        });
        if by_weight.is_empty() {
            continue;
        }
        let placements = binomial(n, big_m).pow(2) * factorial(big_m);
        for (weight, ways) in by_weight {
            let base = &placements * ways;
            for (ell, count) in a[n - big_m].iter().enumerate() {
                if !count.is_zero() {
                    hist[r * ell + weight] += &base * count;
                }
            }
        }
    }
    Ok(StatTable::from_histogram(kind, n, r, CountPath::Fast, hist))
}

/// All `m` of length `parts` summing to `total`; with zero parts only the
/// empty vector for `total = 0`.
fn color_counts(total: usize, parts: usize, m: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if parts == 0 {
        if total == 0 {
            f(m);
        }
        return;
    }
    if m.len() + 1 == parts {
        m.push(total);
        f(m);
        m.pop();
        return;
    }
    for x in 0..=total {
        m.push(x);
        color_counts(total - x, parts, m, f);
        m.pop();
    }
}

/// Coefficients of a Hilbert series, `coeffs[d]` for `q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSeries {
    pub n: usize,
    pub r: usize,
    pub coeffs: Vec<BigUint>,
}

impl GradedSeries {
    /// `coeffs[d] = c_{n,r,rn−d}` for `d = 0..=rn`.
    pub fn from_table(table: &StatTable) -> GradedSeries {
        let top = table.r * table.n;
        let coeffs = (0..=top).map(|d| table.get(top - d)).collect();
        GradedSeries { n: table.n, r: table.r, coeffs }
    }

    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn coeff(&self, d: usize) -> BigUint {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    /// Highest `d` with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn log_concavity(&self) -> LogConcavityReport {
        check_log_concave(0, &self.coeffs)
    }

    pub fn unimodality(&self) -> UnimodalityReport {
        check_unimodal(0, &self.coeffs)
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if d > 0 && c.is_one() { String::new() } else { c.to_string() };
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{coeff}q")?,
                _ => write!(f, "{coeff}q^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn hilbert_series(n: usize, r: usize, path: CountPath, cap: u64, fast_bound: usize) -> Result<GradedSeries> {
    let table = match path {
        CountPath::Enumerate => count_c(n, r, cap)?,
        CountPath::Fast => count_fast(StatKind::C, n, r, fast_bound)?,
    };
    Ok(GradedSeries::from_table(&table))
}

/// Histogram of `deg 𝔰(w)` over the group: the Hilbert series read directly
/// off the shadow monomial basis.
pub fn shadow_degree_series(n: usize, r: usize, cap: u64) -> Result<GradedSeries> {
    let coeffs = group_histogram(n, r, cap, |w| shadow_monomial(w).degree() as usize)?;
    Ok(GradedSeries { n, r, coeffs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogConcavityReport {
    /// Indices `i` (in the caller's indexing) where `a_{i−1}·a_{i+1} > a_i²`.
    pub violations: Vec<usize>,
    /// First and last nonzero index, `None` for an all-zero sequence.
    pub support: Option<(usize, usize)>,
}

impl LogConcavityReport {
    pub fn is_log_concave(&self) -> bool {
        self.violations.is_empty()
    }
}

fn support(values: &[BigUint]) -> Option<(usize, usize)> {
    let lo = values.iter().position(|v| !v.is_zero())?;
    let hi = values.iter().rposition(|v| !v.is_zero())?;
    Some((lo, hi))
}

/// Log-concavity on the support of `values`, whose first entry has index
/// `start`. Zeros inside the support are kept.
pub fn check_log_concave(start: usize, values: &[BigUint]) -> LogConcavityReport {
    let Some((lo, hi)) = support(values) else {
        return LogConcavityReport { violations: Vec::new(), support: None };
    };
    let violations = (lo + 1..hi)
        .filter(|&i| &values[i - 1] * &values[i + 1] > &values[i] * &values[i])
        .map(|i| i + start)
        .collect();
    LogConcavityReport { violations, support: Some((lo + start, hi + start)) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodalityReport {
    pub unimodal: bool,
    /// Where the first strict descent starts (or the last index if none).
    pub peak: Option<usize>,
    /// First `(i, i+1)` rising again after a descent.
    pub witness: Option<(usize, usize)>,
}

/// Single rise-then-fall on the support of `values`.
pub fn check_unimodal(start: usize, values: &[BigUint]) -> UnimodalityReport {
    let Some((lo, hi)) = support(values) else {
        return UnimodalityReport { unimodal: true, peak: None, witness: None };
    };
    let mut peak = None;
    for i in lo..hi {
        if values[i + 1] < values[i] {
            if peak.is_none() {
                peak = Some(i);
            }
        } else if values[i + 1] > values[i] && peak.is_some() {
            return UnimodalityReport {
                unimodal: false,
                peak: peak.map(|p| p + start),
                witness: Some((i + start, i + 1 + start)),
            };
        }
    }
    UnimodalityReport { unimodal: true, peak: Some(peak.unwrap_or(hi) + start), witness: None }
}

/// Both orderings of the log-concavity check plus unimodality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeAnalysis {
    pub table: LogConcavityReport,
    pub series: LogConcavityReport,
    /// The series report is the table report reflected through `d = rn − k`.
    pub consistent: bool,
    pub unimodality: UnimodalityReport,
}

pub fn analyze(table: &StatTable) -> ShapeAnalysis {
    let series = GradedSeries::from_table(table);
    let t = table.log_concavity();
    let s = series.log_concavity();
    let top = table.r * table.n;
    let mut reflected: Vec<usize> = s.violations.iter().map(|&d| top - d).collect();
    reflected.sort_unstable();
    let consistent = reflected == t.violations;
    ShapeAnalysis { table: t, series: s, consistent, unimodality: table.unimodality() }
}

/// Two-column `k,count` CSV in increasing `k`.
pub fn write_histogram_csv<W: Write>(table: &StatTable, mut out: W) -> std::io::Result<()> {
    writeln!(out, "k,count")?;
    for (k, v) in &table.values {
        writeln!(out, "{k},{v}")?;
    }
    Ok(())
}

pub fn histogram_csv(table: &StatTable, path: &Path) -> std::result::Result<(), HistogramError> {
    let file = std::fs::File::create(path).map_err(|source| HistogramError { path: path.to_owned(), source })?;
    let mut buf = std::io::BufWriter::new(file);
    write_histogram_csv(table, &mut buf)
        .and_then(|_| buf.flush())
        .map_err(|source| HistogramError { path: path.to_owned(), source })
}

#[derive(Debug, thiserror::Error)]
#[error("failed to write {}: {source}", path.display())]
pub struct HistogramError {
    pub path: std::path::PathBuf,
    #[source]
    pub source: std::io::Error,
}

/// Sum of `values`, convenient for the `r^n · n!` checks.
pub fn expected_total(n: usize, r: usize) -> BigUint {
    crate::perm::group_order(n, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::DEFAULT_ENUMERATION_CAP as CAP;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn lis_examples() {
        let w = ColoredPermutation::parse("3^0,1^1,6^0,4^0,7^0,2^1,5^1", Some(2)).unwrap();
        assert_eq!(lis_points(w.diagram().layer(0)), 3);
        let p = Permutation::new(vec![5, 1, 3, 6, 7, 2, 4]).unwrap();
        assert_eq!(lis(&p), 4);
        assert_eq!(lis_points(&RookPlacement::empty()), 0);
    }

    #[test]
    fn colored_statistic_example() {
        // n = 6, r = 4 worked example: 4·2 + 3·1 + 2·2 + 1·1 = 16
        let w = ColoredPermutation::parse("4^2,1^0,5^2,6^3,2^1,3^0", Some(4)).unwrap();
        assert_eq!(w.diagram().layer(0).points(), &[(2, 1), (6, 3)]);
        assert_eq!(colored_statistic(&w), 16);
    }

    #[test]
    fn a3_by_enumeration() {
        let t = count_a(3, CAP).unwrap();
        assert_eq!(t.values.values().cloned().collect::<Vec<_>>(), big(&[1, 4, 1]));
    }

    #[test]
    fn b3_has_48_elements() {
        assert_eq!(count_b(3, CAP).unwrap().total(), BigUint::from(48u32));
    }

    #[test]
    fn c_for_b1() {
        let t = count_c(1, 2, CAP).unwrap();
        assert_eq!(t.get(2), BigUint::one());
        assert_eq!(t.get(1), BigUint::one());
    }

    #[test]
    fn fast_small_examples() {
        let a = count_fast(StatKind::A, 3, 1, DEFAULT_FAST_BOUND).unwrap();
        assert_eq!(a.get(2), BigUint::from(4u32));
        assert!(a.same_counts(&count_a(3, CAP).unwrap()));
        let b = count_fast(StatKind::B, 3, 2, DEFAULT_FAST_BOUND).unwrap();
        assert!(b.same_counts(&count_b(3, CAP).unwrap()));
        for r in 1..=5 {
            let c = count_fast(StatKind::C, 1, r, DEFAULT_FAST_BOUND).unwrap();
            for k in 1..=r {
                assert_eq!(c.get(k), BigUint::one(), "c_(1,{r},{k})");
            }
        }
        assert!(count_fast(StatKind::A, 65, 1, DEFAULT_FAST_BOUND).is_err());
    }

    #[test]
    fn series_examples() {
        let s = hilbert_series(3, 1, CountPath::Enumerate, CAP, DEFAULT_FAST_BOUND).unwrap();
        assert_eq!(s.to_string(), "1 + 4q + q^2");
        let s = hilbert_series(3, 2, CountPath::Enumerate, CAP, DEFAULT_FAST_BOUND).unwrap();
        assert_eq!(s.total(), BigUint::from(48u32));
        let z = hilbert_series(0, 2, CountPath::Fast, CAP, DEFAULT_FAST_BOUND).unwrap();
        assert_eq!(z.coeffs, big(&[1]));
    }

    #[test]
    fn log_concave_examples() {
        assert!(check_log_concave(0, &big(&[1, 1, 1])).is_log_concave());
        assert_eq!(check_log_concave(5, &big(&[0, 1, 1, 4, 0])).violations, vec![7]);
        assert_eq!(check_log_concave(0, &big(&[0, 0])).support, None);
    }

    #[test]
    fn unimodal_examples() {
        let bad = check_unimodal(0, &big(&[1, 2, 1, 2]));
        assert!(!bad.unimodal);
        assert_eq!(bad.witness, Some((2, 3)));
        assert!(check_unimodal(0, &big(&[7])).unimodal);
        let ok = check_unimodal(1, &big(&[0, 1, 3, 3, 2, 2, 0]));
        assert!(ok.unimodal);
        assert_eq!(ok.peak, Some(4));
        // an interior zero breaks the pattern
        assert!(!check_unimodal(0, &big(&[1, 0, 1])).unimodal);
    }

    #[test]
    fn csv_output() {
        let t = count_a(10, CAP).unwrap();
        let mut out = Vec::new();
        write_histogram_csv(&t, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "k,count");
        assert_eq!(lines.len(), 11);
        assert_eq!(lines[1], "1,1");
        assert_eq!(lines[10], "10,1");

        let empty = StatTable { kind: StatKind::A, n: 0, r: 1, path: CountPath::Fast, values: BTreeMap::new() };
        let mut out = Vec::new();
        write_histogram_csv(&empty, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "k,count\n");
    }

    #[test]
    fn csv_path_errors_name_the_file() {
        let t = count_a(2, CAP).unwrap();
        let err = histogram_csv(&t, Path::new("/nonexistent-dir/x.csv")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"));
    }

    #[test]
    fn json_export() {
        let t = count_b(2, CAP).unwrap();
        let v = t.to_json(Some(CAP));
        assert_eq!(v["schema"], 1);
        assert_eq!(v["kind"], "b");
        assert_eq!(v["path"], "enumerate");
        assert_eq!(v["values"]["4"], "1");
    }
}
