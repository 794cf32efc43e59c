//! Irreducible characters of `(ℤ/rℤ) ≀ 𝔖ₙ` by ribbon removal, skew
//! characters, branching, irreducible dimensions, class sizes and the graded
//! strata of the coinvariant-type quotient.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::json;

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::partition::{factorial, multinomial, Partition, RPartition};
use crate::perm::{enumerate_group, group_order};
use crate::stats::{hilbert_series, CountPath, DEFAULT_FAST_BOUND};

/// A colored cycle: `(length, color)`.
pub type Cycle = (usize, usize);

/// `outer / inner`, componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewRShape {
    outer: RPartition,
    inner: RPartition,
}

impl SkewRShape {
    pub fn new(outer: RPartition, inner: RPartition) -> Result<Self> {
        if outer.r() != inner.r() {
            return Err(Error::invalid(format!("{} and {} have different color counts", outer, inner)));
        }
        if !outer.contains(&inner) {
            return Err(Error::invalid(format!("{inner} is not contained in {outer}")));
        }
        Ok(SkewRShape { outer, inner })
    }

    /// A straight shape (empty inner part).
    pub fn straight(outer: RPartition) -> Self {
        let inner = RPartition::empty(outer.r());
        SkewRShape { outer, inner }
    }

    pub fn outer(&self) -> &RPartition {
        &self.outer
    }

    pub fn inner(&self) -> &RPartition {
        &self.inner
    }

    pub fn r(&self) -> usize {
        self.outer.r()
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }
}

/// Number of standard tableaux of an r-shape:
/// `multinomial(|λ⁰|, …, |λ^{r−1}|) · ∏ f^{λⁱ}`.
pub fn dim_irreducible(lambda: &RPartition) -> BigUint {
    let sizes: Vec<usize> = lambda.components().iter().map(Partition::size).collect();
    lambda.components().iter().fold(multinomial(&sizes), |acc, p| acc * p.num_syt())
}

/// Ribbon-removal evaluator for one skew shape. Values are accumulated in
/// `ℤ[x]/(x^r − 1)` with `x = ω` and reduced to the field at the end.
struct RibbonEvaluator<'a> {
    r: usize,
    inner: &'a RPartition,
    cycles: &'a [Cycle],
    memo: HashMap<(RPartition, usize), Vec<BigInt>>,
}

impl RibbonEvaluator<'_> {
    /// Sum over ways to strip `cycles[..=idx]` from `shape` down to `inner`.
    fn eval(&mut self, shape: &RPartition, idx: usize) -> Vec<BigInt> {
        if idx == 0 {
            let mut v = vec![BigInt::zero(); self.r];
            if shape == self.inner {
                v[0] = BigInt::one();
            }
            return v;
        }
        if let Some(v) = self.memo.get(&(shape.clone(), idx)) {
            return v.clone();
        }
        let (len, color) = self.cycles[idx - 1];
        let mut acc = vec![BigInt::zero(); self.r];
        for j in 0..self.r {
            for (rest, height) in shape.component(j).remove_border_strips(len, self.inner.component(j)) {
                let smaller = shape.with_component(j, rest);
                let sub = self.eval(&smaller, idx - 1);
                let shift = (j * color) % self.r;
                for (e, c) in sub.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let slot = &mut acc[(e + shift) % self.r];
                    if height % 2 == 0 {
                        *slot += c;
                    } else {
                        *slot -= c;
                    }
                }
            }
        }
        self.memo.insert((shape.clone(), idx), acc.clone());
        acc
    }
}

/// `χ^{outer/inner}` at an element with the given colored cycles.
pub fn mn_character(shape: &SkewRShape, cycles: &[Cycle]) -> Result<CyclotomicNumber> {
    let total: usize = cycles.iter().map(|c| c.0).sum();
    if total != shape.size() {
        return Err(Error::invalid(format!("cycle lengths sum to {total}, shape has {} cells", shape.size())));
    }
    let r = shape.r();
    if let Some(&(l, c)) = cycles.iter().find(|&&(l, c)| l == 0 || c >= r) {
        return Err(Error::invalid(format!("bad cycle (length {l}, color {c}) for r = {r}")));
    }
    let mut ev = RibbonEvaluator { r, inner: &shape.inner, cycles, memo: HashMap::new() };
    let coeffs = ev.eval(&shape.outer, cycles.len());
    Ok(CyclotomicNumber::from_power_sum(r, &coeffs))
}

/// `χ^λ` at the class labelled by the cycle type `mu`.
pub fn irreducible_character(lambda: &RPartition, mu: &RPartition) -> Result<CyclotomicNumber> {
    mn_character(&SkewRShape::straight(lambda.clone()), &mu.cycles())
}

fn contained_rpartitions(lambda: &RPartition, k: usize) -> Vec<RPartition> {
    RPartition::all(k, lambda.r()).into_iter().filter(|mu| lambda.contains(mu)).collect()
}

/// Checks `χ^λ(g ⊔ h) = Σ_{μ ⊢_r k, μ ⊆ λ} χ^μ(g) · χ^{λ/μ}(h)` with
/// `g` on `k` points and `h` on the rest.
pub fn verify_branching(lambda: &RPartition, k: usize, g: &[Cycle], h: &[Cycle]) -> Result<bool> {
    let n = lambda.size();
    if k == 0 || k >= n {
        return Err(Error::invalid(format!("need 0 < k < n, got k = {k}, n = {n}")));
    }
    let g_size: usize = g.iter().map(|c| c.0).sum();
    let h_size: usize = h.iter().map(|c| c.0).sum();
    if g_size != k || h_size != n - k {
        return Err(Error::invalid(format!("cycle data covers {g_size} + {h_size} points, expected {k} + {}", n - k)));
    }
    let joined: Vec<Cycle> = g.iter().chain(h).copied().collect();
    let lhs = mn_character(&SkewRShape::straight(lambda.clone()), &joined)?;
    let mut rhs = CyclotomicNumber::zero(lambda.r());
    for mu in contained_rpartitions(lambda, k) {
        let left = mn_character(&SkewRShape::straight(mu.clone()), g)?;
        if left.is_zero() {
            continue;
        }
        let right = mn_character(&SkewRShape::new(lambda.clone(), mu)?, h)?;
        rhs = &rhs + &(&left * &right);
    }
    Ok(lhs == rhs)
}

/// `r·λ⁰₁ + Σ_{i≥1} i·|λⁱ|`, with `λ⁰₁ = 0` for an empty `λ⁰`.
pub fn strata_weight(lambda: &RPartition) -> usize {
    let r = lambda.r();
    r * lambda.component(0).first_part()
        + lambda.components().iter().enumerate().skip(1).map(|(i, p)| i * p.size()).sum::<usize>()
}

/// The degree an irreducible label contributes to: `rn − weight`.
pub fn strata_degree(lambda: &RPartition) -> usize {
    lambda.r() * lambda.size() - strata_weight(lambda)
}

/// All `λ ⊢_r n` sitting in degree exactly `k`.
pub fn strata(n: usize, r: usize, k: usize) -> Vec<RPartition> {
    RPartition::all(n, r).into_iter().filter(|l| strata_degree(l) == k).collect()
}

/// All `λ ⊢_r n` with `weight ≥ rn − k`, i.e. in degrees `0..=k`.
pub fn strata_at_most(n: usize, r: usize, k: usize) -> Vec<RPartition> {
    RPartition::all(n, r).into_iter().filter(|l| strata_degree(l) <= k).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrataRow {
    pub k: usize,
    pub num_lambdas: usize,
    pub sum_dim_sq: BigUint,
    pub hilbert_coeff: BigUint,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDecompositionReport {
    pub n: usize,
    pub r: usize,
    pub rows: Vec<StrataRow>,
    /// Cumulative sums over `strata_at_most` agree with partial sums of the
    /// series at every `k`.
    pub filtration_matches: bool,
    /// Each label fell in exactly one degree.
    pub strata_partition_ok: bool,
}

impl GradedDecompositionReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.matches) && self.filtration_matches && self.strata_partition_ok
    }

    /// `k,num_lambdas,sum_dim_sq,hilbert_coeff,match`
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "k,num_lambdas,sum_dim_sq,hilbert_coeff,match")?;
        for row in &self.rows {
            writeln!(out, "{},{},{},{},{}", row.k, row.num_lambdas, row.sum_dim_sq, row.hilbert_coeff, row.matches)?;
        }
        Ok(())
    }
}

/// Compares `Σ_{λ ∈ strata(n,r,k)} dim(λ)·dim(dual λ)` with the Hilbert
/// coefficient of `q^k` for every `k`.
pub fn verify_graded_decomposition(n: usize, r: usize, path: CountPath, cap: u64) -> Result<GradedDecompositionReport> {
    let series = hilbert_series(n, r, path, cap, DEFAULT_FAST_BOUND)?;
    let top = r * n;
    let mut by_degree: BTreeMap<usize, (usize, BigUint)> = BTreeMap::new();
    let labels = RPartition::all(n, r);
    for lambda in &labels {
        let d = strata_degree(lambda);
        let e = by_degree.entry(d).or_insert((0, BigUint::zero()));
        e.0 += 1;
        e.1 += dim_irreducible(lambda) * dim_irreducible(&lambda.dual());
    }
    let mut rows = Vec::with_capacity(top + 1);
    let mut strata_total = 0;
    let mut filtration_matches = true;
    let mut running_series = BigUint::zero();
    let mut running_strata = BigUint::zero();
    for k in 0..=top {
        let members = strata(n, r, k);
        let (num, sum) = by_degree.get(&k).cloned().unwrap_or((0, BigUint::zero()));
        debug_assert_eq!(num, members.len());
        strata_total += members.len();
        let coeff = series.coeff(k);
        running_series += &coeff;
        running_strata += &sum;
        let cumulative: BigUint =
            strata_at_most(n, r, k).iter().map(|l| dim_irreducible(l) * dim_irreducible(&l.dual())).sum();
        filtration_matches &= cumulative == running_series && cumulative == running_strata;
        rows.push(StrataRow { k, num_lambdas: num, matches: sum == coeff, sum_dim_sq: sum, hilbert_coeff: coeff });
    }
    Ok(GradedDecompositionReport { n, r, rows, filtration_matches, strata_partition_ok: strata_total == labels.len() })
}

/// `|class(μ)| = r^n n! / ∏_{i,p} m_{i,p}! (r p)^{m_{i,p}}`.
pub fn class_size(mu: &RPartition) -> BigUint {
    let n = mu.size();
    let r = mu.r();
    let mut centralizer = BigUint::one();
    for comp in mu.components() {
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in comp.parts() {
            *mult.entry(p).or_insert(0) += 1;
        }
        for (p, m) in mult {
            centralizer *= factorial(m) * BigUint::from(r * p).pow(m as u32);
        }
    }
    group_order(n, r) / centralizer
}

/// Class sizes by walking the whole group.
pub fn class_sizes_by_enumeration(n: usize, r: usize, cap: u64) -> Result<BTreeMap<RPartition, BigUint>> {
    let mut out: BTreeMap<RPartition, BigUint> = BTreeMap::new();
    for w in enumerate_group(n, r, cap)? {
        *out.entry(w.cycle_type()).or_insert_with(BigUint::zero) += 1u32;
    }
    Ok(out)
}

/// Default bounds for [`character_table`].
pub const CHARACTER_TABLE_MAX_N: usize = 5;
pub const CHARACTER_TABLE_MAX_R: usize = 3;
/// Class sizes come from enumeration up to this `n`, from the formula above.
const ENUMERATE_CLASSES_UP_TO: usize = 4;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub n: usize,
    pub r: usize,
    /// Row labels.
    pub irreducibles: Vec<RPartition>,
    /// Column labels (cycle types).
    pub classes: Vec<RPartition>,
    pub class_sizes: Vec<BigUint>,
    /// `values[row][col]`
    pub values: Vec<Vec<CyclotomicNumber>>,
}

pub fn character_table(n: usize, r: usize) -> Result<CharacterTable> {
    character_table_bounded(n, r, CHARACTER_TABLE_MAX_N, CHARACTER_TABLE_MAX_R)
}

pub fn character_table_bounded(n: usize, r: usize, max_n: usize, max_r: usize) -> Result<CharacterTable> {
    if r == 0 {
        return Err(Error::invalid("number of colors r must be at least 1"));
    }
    if n > max_n || r > max_r {
        return Err(Error::SizeLimit {
            what: "character table (n, r)",
            size: format!("({n}, {r})"),
            cap: format!("({max_n}, {max_r})"),
        });
    }
    let labels = RPartition::all(n, r);
    let class_sizes = if n <= ENUMERATE_CLASSES_UP_TO {
        let counted = class_sizes_by_enumeration(n, r, u64::MAX)?;
        labels.iter().map(|mu| counted.get(mu).cloned().unwrap_or_default()).collect()
    } else {
        labels.iter().map(class_size).collect()
    };
    let values = table_rows(&labels)?;
    Ok(CharacterTable { n, r, irreducibles: labels.clone(), classes: labels, class_sizes, values })
}

fn table_row(lambda: &RPartition, classes: &[RPartition]) -> Result<Vec<CyclotomicNumber>> {
    classes.iter().map(|mu| irreducible_character(lambda, mu)).collect()
}

#[cfg(feature = "parallel")]
fn table_rows(labels: &[RPartition]) -> Result<Vec<Vec<CyclotomicNumber>>> {
    use rayon::prelude::*;
    labels.par_iter().map(|l| table_row(l, labels)).collect()
}

#[cfg(not(feature = "parallel"))]
fn table_rows(labels: &[RPartition]) -> Result<Vec<Vec<CyclotomicNumber>>> {
    labels.iter().map(|l| table_row(l, labels)).collect()
}

impl CharacterTable {
    pub fn group_order(&self) -> BigUint {
        group_order(self.n, self.r)
    }

    /// `Σ_c |c| χ^λ(c) conj(χ^μ(c))`
    pub fn inner_product(&self, a: usize, b: usize) -> CyclotomicNumber {
        let mut acc = CyclotomicNumber::zero(self.r);
        for (c, size) in self.class_sizes.iter().enumerate() {
            let term = &self.values[a][c] * &self.values[b][c].conj();
            acc = &acc + &term.scale(&BigInt::from(size.clone()).into());
        }
        acc
    }

    /// Row pairs whose inner product is not `|G|·[a = b]`.
    pub fn orthogonality_failures(&self) -> Vec<(usize, usize)> {
        let order = BigInt::from(self.group_order());
        let mut bad = Vec::new();
        for a in 0..self.irreducibles.len() {
            for b in a..self.irreducibles.len() {
                let ip = self.inner_product(a, b);
                let expected = if a == b { order.clone() } else { BigInt::zero() };
                if ip.as_integer() != Some(expected) {
                    bad.push((a, b));
                }
            }
        }
        bad
    }

    /// Index of the identity class `((1^n), ∅, …)`.
    pub fn identity_class(&self) -> usize {
        self.classes
            .iter()
            .position(|mu| mu.component(0).parts().iter().all(|&p| p == 1) && mu.component(0).size() == self.n)
            .expect("identity class is always present")
    }

    /// Labels as nested arrays, values as coordinate vectors (strings) in
    /// the power basis of `ℚ(ω_r)`.
    pub fn to_json(&self) -> serde_json::Value {
        let label = |l: &RPartition| -> serde_json::Value {
            l.components().iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>().into()
        };
        let values: Vec<Vec<Vec<String>>> = self
            .values
            .iter()
            .map(|row| row.iter().map(|x| x.coords().iter().map(ToString::to_string).collect()).collect())
            .collect();
        json!({
            "schema": 1,
            "n": self.n,
            "r": self.r,
            "modulus": self.r,
            "irreducibles": self.irreducibles.iter().map(label).collect::<Vec<_>>(),
            "classes": self.classes.iter().map(label).collect::<Vec<_>>(),
            "class_sizes": self.class_sizes.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "values": values,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(parts: &[&[usize]]) -> RPartition {
        RPartition::from_parts(parts)
    }

    fn int(x: &CyclotomicNumber) -> i64 {
        i64::try_from(x.as_integer().expect("integer value")).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_irreducible(&rp(&[&[4]])), BigUint::one());
        assert_eq!(dim_irreducible(&rp(&[&[2, 1]])), BigUint::from(2u32));
        // C(9,3) * f(2,1) * f(4,2) = 84 * 2 * 9
        assert_eq!(dim_irreducible(&rp(&[&[2, 1], &[4, 2]])), BigUint::from(1512u32));
    }

    #[test]
    fn sign_character_of_b1() {
        let shape = SkewRShape::straight(rp(&[&[], &[1]]));
        assert_eq!(int(&mn_character(&shape, &[(1, 1)]).unwrap()), -1);
        assert_eq!(int(&mn_character(&shape, &[(1, 0)]).unwrap()), 1);
        assert!(mn_character(&shape, &[(2, 0)]).is_err());
    }

    #[test]
    fn trivial_character() {
        let shape = SkewRShape::straight(rp(&[&[4], &[], &[]]));
        for mu in RPartition::all(4, 3) {
            assert!(mn_character(&shape, &mu.cycles()).unwrap().is_one(), "{mu}");
        }
    }

    #[test]
    fn symmetric_group_s3() {
        // rows (3), (2,1), (1,1,1); classes (3), (2,1), (1,1,1)
        let t = character_table(3, 1).unwrap();
        let vals: Vec<Vec<i64>> = t.values.iter().map(|row| row.iter().map(int).collect()).collect();
        assert_eq!(vals, vec![vec![1, 1, 1], vec![-1, 0, 2], vec![1, -1, 1]]);
        assert_eq!(t.class_sizes, vec![2u32.into(), 3u32.into(), 1u32.into()]);
        assert!(t.orthogonality_failures().is_empty());
    }

    #[test]
    fn small_tables() {
        let t = character_table(1, 2).unwrap();
        let vals: Vec<Vec<i64>> = t.values.iter().map(|row| row.iter().map(int).collect()).collect();
        assert_eq!(vals, vec![vec![1, 1], vec![1, -1]]);
        assert_eq!(t.class_sizes, vec![BigUint::one(), BigUint::one()]);
        let t = character_table(2, 2).unwrap();
        assert_eq!(t.values.len(), 5);
        assert!(t.orthogonality_failures().is_empty());
        assert!(matches!(character_table(6, 2), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn class_size_formula_matches_enumeration() {
        for (n, r) in [(3, 2), (3, 3), (4, 2), (2, 4)] {
            let counted = class_sizes_by_enumeration(n, r, u64::MAX).unwrap();
            for mu in RPartition::all(n, r) {
                assert_eq!(counted.get(&mu).cloned().unwrap_or_default(), class_size(&mu), "{mu}");
            }
        }
    }

    #[test]
    fn strata_examples() {
        assert_eq!(strata(1, 2, 0), vec![rp(&[&[1], &[]])]);
        assert_eq!(strata(1, 2, 1), vec![rp(&[&[], &[1]])]);
        assert_eq!(strata(3, 1, 1), vec![rp(&[&[2, 1]])]);
        assert_eq!(strata(4, 3, 0), vec![rp(&[&[4], &[], &[]])]);
    }

    #[test]
    fn graded_decomposition_small() {
        let rep = verify_graded_decomposition(3, 1, CountPath::Enumerate, 1_000).unwrap();
        assert!(rep.passed());
        let sums: Vec<u32> = rep.rows.iter().map(|r| u32::try_from(&r.sum_dim_sq).unwrap()).collect();
        assert_eq!(sums, vec![1, 4, 1, 0]);
        let mut csv = Vec::new();
        verify_graded_decomposition(1, 2, CountPath::Fast, 10).unwrap().write_csv(&mut csv).unwrap();
        assert_eq!(
            String::from_utf8(csv).unwrap(),
            "k,num_lambdas,sum_dim_sq,hilbert_coeff,match\n0,1,1,1,true\n1,1,1,1,true\n2,0,0,0,true\n"
        );
    }

    #[test]
    fn branching_b2() {
        let lambda = rp(&[&[1], &[1]]);
        for g in [[(1, 0)], [(1, 1)]] {
            for h in [[(1, 0)], [(1, 1)]] {
                assert!(verify_branching(&lambda, 1, &g, &h).unwrap());
            }
        }
        assert!(verify_branching(&lambda, 0, &[], &[(2, 0)]).is_err());
    }
}
