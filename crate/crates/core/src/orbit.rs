//! Matrix view of the group, point evaluation of monomials, the ideal
//! generator lists, the Toeplitz monomial order and the evaluation-matrix
//! basis certificate.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::cyclotomic::{CyclotomicNumber, Rational};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::perm::{enumerate_group, group_order, ColoredPermutation};
use crate::shadow::{shadow_monomial, ShadowMonomial};

/// Monomials in the `x_{i,j}` share the shadow-monomial representation.
pub type MonomialKey = ShadowMonomial;

/// Default row cap for [`verify_basis`].
pub const DEFAULT_MATRIX_CAP: u64 = 200;

/// `M[i][σ(i)] = ω^{κ(σ(i))}`, zero elsewhere.
pub fn group_matrix(w: &ColoredPermutation) -> ExactMatrix {
    let n = w.n();
    let mut m = ExactMatrix::zeros(n, n, w.r());
    for i in 1..=n {
        let (v, c) = w.apply(i, 0);
        m.set(i - 1, v - 1, CyclotomicNumber::omega_pow(w.r(), c as i64));
    }
    m
}

/// `∏ M[i][j]^{e_ij}` with 1-based `(i, j)`.
pub fn evaluate_monomial(m: &MonomialKey, matrix: &ExactMatrix) -> Result<CyclotomicNumber> {
    let mut acc = CyclotomicNumber::one(matrix.r());
    for (&(i, j), &e) in &m.exponents {
        if i == 0 || j == 0 || i > matrix.rows() || j > matrix.cols() {
            return Err(Error::invalid(format!(
                "variable x[{i},{j}] is outside a {}x{} matrix",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let entry = matrix.get(i - 1, j - 1);
        if entry.is_zero() {
            return Ok(CyclotomicNumber::zero(matrix.r()));
        }
        acc = &acc * &entry.pow(e);
    }
    Ok(acc)
}

/// A polynomial with integer coefficients in the `x_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    /// `(coefficient, monomial)`; no zero coefficients, no repeated monomials.
    pub terms: Vec<(i64, MonomialKey)>,
}

impl Polynomial {
    fn from_terms(terms: impl IntoIterator<Item = (i64, MonomialKey)>) -> Self {
        let mut merged: Vec<(i64, MonomialKey)> = Vec::new();
        for (c, m) in terms {
            match merged.iter_mut().find(|(_, x)| *x == m) {
                Some(t) => t.0 += c,
                None => merged.push((c, m)),
            }
        }
        merged.retain(|t| t.0 != 0);
        Polynomial { terms: merged }
    }

    pub fn evaluate(&self, matrix: &ExactMatrix) -> Result<CyclotomicNumber> {
        let mut acc = CyclotomicNumber::zero(matrix.r());
        for (c, m) in &self.terms {
            let v = evaluate_monomial(m, matrix)?;
            acc = &acc + &v.scale(&Rational::from_integer((*c).into()));
        }
        Ok(acc)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].1.degree() == w[1].1.degree())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, m)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            match (k, *c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_one = m.exponents.is_empty();
            if is_one {
                write!(f, "{mag}")?;
            } else if mag != 1 {
                write!(f, "{mag}*{m}")?;
            } else {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

fn var(i: usize, j: usize, e: u32) -> MonomialKey {
    let mut m = MonomialKey::default();
    m.exponents.insert((i, j), e);
    m
}

fn product(a: (usize, usize), b: (usize, usize)) -> MonomialKey {
    let mut m = MonomialKey::default();
    m.exponents.insert(a, 1);
    m.exponents.insert(b, 1);
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorFamily {
    Power,
    RowProduct,
    ColumnProduct,
    RowPowerSum,
    ColumnPowerSum,
}

impl fmt::Display for GeneratorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorFamily::Power => "power",
            GeneratorFamily::RowProduct => "row_product",
            GeneratorFamily::ColumnProduct => "column_product",
            GeneratorFamily::RowPowerSum => "row_power_sum",
            GeneratorFamily::ColumnPowerSum => "column_power_sum",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub family: GeneratorFamily,
    pub polynomial: Polynomial,
}

fn generators(n: usize, r: usize, inhomogeneous: bool) -> Vec<Generator> {
    let r32 = r as u32;
    let mut out = Vec::new();
    let mut push = |family, terms: Vec<(i64, MonomialKey)>| {
        out.push(Generator { family, polynomial: Polynomial::from_terms(terms) });
    };
    for i in 1..=n {
        for j in 1..=n {
            let mut terms = vec![(1, var(i, j, r32 + 1))];
            if inhomogeneous {
                terms.push((-1, var(i, j, 1)));
            }
            push(GeneratorFamily::Power, terms);
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            for j2 in j + 1..=n {
                push(GeneratorFamily::RowProduct, vec![(1, product((i, j), (i, j2)))]);
            }
        }
    }
    for j in 1..=n {
        for i in 1..=n {
            for i2 in i + 1..=n {
                push(GeneratorFamily::ColumnProduct, vec![(1, product((i, j), (i2, j)))]);
            }
        }
    }
    for (family, row_major) in [(GeneratorFamily::RowPowerSum, true), (GeneratorFamily::ColumnPowerSum, false)] {
        for a in 1..=n {
            let mut terms: Vec<(i64, MonomialKey)> =
                (1..=n).map(|b| (1, if row_major { var(a, b, r32) } else { var(b, a, r32) })).collect();
            if inhomogeneous {
                terms.push((-1, MonomialKey::default()));
            }
            push(family, terms);
        }
    }
    out
}

/// The homogeneous generators: `x^{r+1}`, same-row and same-column
/// products, row and column sums of `r`-th powers.
pub fn ideal_generators(n: usize, r: usize) -> Vec<Generator> {
    generators(n, r, false)
}

/// The inhomogeneous generators vanishing on the group matrices:
/// `x^{r+1} − x`, the same products, power sums minus one.
pub fn vanishing_generators(n: usize, r: usize) -> Vec<Generator> {
    generators(n, r, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub n: usize,
    pub r: usize,
    pub generators: usize,
    pub points: usize,
    /// `(generator, group element)` pairs with a nonzero value.
    pub failures: Vec<(String, String)>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates every inhomogeneous generator at every group matrix.
pub fn check_vanishing(n: usize, r: usize, cap: u64) -> Result<VanishingReport> {
    let gens = vanishing_generators(n, r);
    let mut failures = Vec::new();
    let mut points = 0;
    for w in enumerate_group(n, r, cap)? {
        let m = group_matrix(&w);
        points += 1;
        for g in &gens {
            if !g.polynomial.evaluate(&m)?.is_zero() {
                failures.push((g.polynomial.to_string(), w.to_string()));
            }
        }
    }
    Ok(VanishingReport { n, r, generators: gens.len(), points, failures })
}

/// Position of `x_{i,j}` in the Toeplitz variable order, largest first:
/// antidiagonal `i + j` ascending, then `i` descending.
fn toeplitz_rank(i: usize, j: usize) -> (usize, std::cmp::Reverse<usize>) {
    (i + j, std::cmp::Reverse(i))
}

/// Lexicographic comparison of exponent vectors with the variables listed
/// from largest to smallest in the Toeplitz order.
pub fn toeplitz_compare(a: &MonomialKey, b: &MonomialKey) -> Ordering {
    let mut vars: Vec<(usize, usize)> = a.exponents.keys().chain(b.exponents.keys()).copied().collect();
    vars.sort_unstable_by_key(|&(i, j)| toeplitz_rank(i, j));
    vars.dedup();
    for v in vars {
        let ea = a.exponents.get(&v).copied().unwrap_or(0);
        let eb = b.exponents.get(&v).copied().unwrap_or(0);
        match ea.cmp(&eb) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

pub fn multiply(a: &MonomialKey, b: &MonomialKey) -> MonomialKey {
    let mut out = a.clone();
    for (&k, &e) in &b.exponents {
        *out.exponents.entry(k).or_insert(0) += e;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub n: usize,
    pub r: usize,
    pub matrix_size: usize,
    /// Every group element received a different shadow monomial.
    pub monomials_distinct: bool,
    /// Pairs of group elements sharing a monomial.
    pub collisions: Vec<(String, String, String)>,
    pub invertible: bool,
    /// `E · E⁻¹ = I` was confirmed.
    pub inverse_checked: bool,
    #[serde(skip)]
    pub matrix: Option<ExactMatrix>,
}

impl BasisReport {
    pub fn passed(&self) -> bool {
        self.monomials_distinct && self.invertible && self.inverse_checked
    }
}

/// Builds `E[w][v] = 𝔰(v)(M(w))` over the whole group and certifies it is
/// invertible. Refuses when `r^n·n!` exceeds `cap`.
pub fn verify_basis(n: usize, r: usize, cap: u64) -> Result<BasisReport> {
    let size = group_order(n, r);
    if size > BigUint::from(cap) {
        return Err(Error::SizeLimit { what: "evaluation matrix rows", size: size.to_string(), cap: cap.to_string() });
    }
    let elements: Vec<ColoredPermutation> = enumerate_group(n, r, cap)?.collect();
    let monomials: Vec<MonomialKey> = elements.iter().map(shadow_monomial).collect();

    let mut seen: BTreeMap<&MonomialKey, usize> = BTreeMap::new();
    let mut collisions = Vec::new();
    for (idx, m) in monomials.iter().enumerate() {
        if let Some(&prev) = seen.get(m) {
            collisions.push((elements[prev].to_string(), elements[idx].to_string(), m.to_string()));
        } else {
            seen.insert(m, idx);
        }
    }
    let monomials_distinct = collisions.is_empty();

    let rows = evaluation_rows(&elements, &monomials)?;
    let matrix = ExactMatrix::from_rows(rows, r)?;
    let inverse = matrix.inverse()?;
    let (invertible, inverse_checked) = match &inverse {
        Some(inv) => (true, (&matrix * inv).is_identity()),
        None => (false, false),
    };
    Ok(BasisReport {
        n,
        r,
        matrix_size: elements.len(),
        monomials_distinct,
        collisions,
        invertible,
        inverse_checked,
        matrix: Some(matrix),
    })
}

#[cfg(feature = "parallel")]
fn evaluation_rows(elements: &[ColoredPermutation], monomials: &[MonomialKey]) -> Result<Vec<Vec<CyclotomicNumber>>> {
    use rayon::prelude::*;
    elements.par_iter().map(|w| evaluation_row(w, monomials)).collect()
}

#[cfg(not(feature = "parallel"))]
fn evaluation_rows(elements: &[ColoredPermutation], monomials: &[MonomialKey]) -> Result<Vec<Vec<CyclotomicNumber>>> {
    elements.iter().map(|w| evaluation_row(w, monomials)).collect()
}

fn evaluation_row(w: &ColoredPermutation, monomials: &[MonomialKey]) -> Result<Vec<CyclotomicNumber>> {
    let m = group_matrix(w);
    monomials.iter().map(|mono| evaluate_monomial(mono, &m)).collect()
}
