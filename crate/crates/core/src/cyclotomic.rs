//! Exact arithmetic in `ℚ(ω_r)`, `ω_r = e^{2πi/r}`.
//!
//! An element is a rational coordinate vector of length `φ(r)` in the power
//! basis `1, ω, …, ω^{φ(r)−1}`, reduced modulo the cyclotomic polynomial
//! `Φ_r`. Inverses are formed from the product of the nontrivial Galois
//! conjugates, which turns `x · x⁻¹` into the rational norm.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer coefficients, lowest degree first.
pub type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic divisor; panics on a nonzero remainder.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> IntPoly {
    assert!(den.last().is_some_and(One::is_one), "divisor must be monic");
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    trim(&mut quot);
    quot
}

/// `Φ_r` as `(x^r − 1) / ∏_{d | r, d < r} Φ_d`.
pub fn cyclotomic_poly(r: usize) -> IntPoly {
    assert!(r >= 1, "cyclotomic polynomial needs r >= 1");
    let mut xr1 = vec![BigInt::zero(); r + 1];
    xr1[0] = -BigInt::one();
    xr1[r] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in (1..r).filter(|d| r.is_multiple_of(*d)) {
        den = poly_mul(&den, &cyclotomic_poly(d));
    }
    poly_div_exact(&xr1, &den)
}

/// Euler's totient.
pub fn totient(r: usize) -> usize {
    (1..=r).filter(|&k| k.gcd(&r) == 1).count()
}

/// Modulus data for `ℚ(ω_r)`; shared between all its elements.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    r: usize,
    /// `Φ_r`, monic, degree `φ(r)`.
    modulus: IntPoly,
    /// `ω^k` in coordinates for `k = 0..r`.
    powers: Vec<Vec<BigInt>>,
}

impl CyclotomicField {
    fn build(r: usize) -> CyclotomicField {
        let modulus = cyclotomic_poly(r);
        let deg = modulus.len() - 1;
        let powers = (0..r)
            .map(|k| {
                let mut p = vec![BigInt::zero(); k + 1];
                p[k] = BigInt::one();
                let mut red = reduce_int(&p, &modulus);
                red.resize(deg, BigInt::zero());
                red
            })
            .collect();
        CyclotomicField { r, modulus, powers }
    }

    /// Cached field for `r`.
    pub fn get(r: usize) -> Arc<CyclotomicField> {
        static CACHE: OnceLock<Mutex<Vec<Option<Arc<CyclotomicField>>>>> = OnceLock::new();
        assert!(r >= 1, "r must be at least 1");
        let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
        let mut guard = cache.lock().expect("field cache poisoned");
        if guard.len() <= r {
            guard.resize(r + 1, None);
        }
        guard[r].get_or_insert_with(|| Arc::new(CyclotomicField::build(r))).clone()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `φ(r)`
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }
}

fn reduce_int(p: &[BigInt], modulus: &[BigInt]) -> IntPoly {
    let deg = modulus.len() - 1;
    let mut rem = p.to_vec();
    if rem.len() <= deg {
        return rem;
    }
    for k in (deg..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        for (j, m) in modulus.iter().enumerate() {
            rem[k - deg + j] -= &c * m;
        }
    }
    rem.truncate(deg);
    rem
}

fn reduce_rat(p: Vec<Rational>, modulus: &[BigInt]) -> Vec<Rational> {
    let deg = modulus.len() - 1;
    let mut rem = p;
    if rem.len() > deg {
        for k in (deg..rem.len()).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            for (j, m) in modulus.iter().enumerate() {
                let t = &c * Rational::from_integer(m.clone());
                rem[k - deg + j] -= t;
            }
        }
        rem.truncate(deg);
    }
    rem.resize(deg, Rational::zero());
    rem
}

#[derive(Clone, PartialEq, Eq)]
pub struct CyclotomicNumber {
    coords: Vec<Rational>,
    field: Arc<CyclotomicField>,
}

impl CyclotomicNumber {
    pub fn zero(r: usize) -> Self {
        let field = CyclotomicField::get(r);
        CyclotomicNumber { coords: vec![Rational::zero(); field.degree()], field }
    }

    pub fn one(r: usize) -> Self {
        Self::from_integer(r, BigInt::one())
    }

    pub fn from_integer(r: usize, v: impl Into<BigInt>) -> Self {
        Self::from_rational(r, Rational::from_integer(v.into()))
    }

    pub fn from_rational(r: usize, v: Rational) -> Self {
        let mut x = Self::zero(r);
        x.coords[0] = v;
        x
    }

    /// `ω^k`, any integer `k`.
    pub fn omega_pow(r: usize, k: i64) -> Self {
        let field = CyclotomicField::get(r);
        let e = k.rem_euclid(r as i64) as usize;
        let coords = field.powers[e].iter().cloned().map(Rational::from_integer).collect();
        CyclotomicNumber { coords, field }
    }

    /// From coefficients of `Σ cₖ ω^k` with `k = 0..len` (any length).
    pub fn from_power_sum(r: usize, coeffs: &[BigInt]) -> Self {
        let field = CyclotomicField::get(r);
        let mut acc = vec![BigInt::zero(); field.degree()];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, p) in acc.iter_mut().zip(&field.powers[k % r]) {
                *a += c * p;
            }
        }
        CyclotomicNumber { coords: acc.into_iter().map(Rational::from_integer).collect(), field }
    }

    pub fn from_coords(r: usize, coords: Vec<Rational>) -> Result<Self> {
        let field = CyclotomicField::get(r);
        if coords.len() != field.degree() {
            return Err(Error::invalid(format!(
                "expected {} coordinates for r = {r}, got {}",
                field.degree(),
                coords.len()
            )));
        }
        Ok(CyclotomicNumber { coords, field })
    }

    pub fn r(&self) -> usize {
        self.field.r
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in `ℚ`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..].iter().all(Zero::is_zero).then_some(&self.coords[0])
    }

    /// The value as an integer, if it lies in `ℤ`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Galois automorphism `ω ↦ ω^k`, `gcd(k, r) = 1`.
    pub fn galois(&self, k: usize) -> Self {
        let r = self.r();
        assert_eq!(k.gcd(&r), 1, "ω ↦ ω^{k} is not an automorphism of ℚ(ω_{r})");
        let mut acc = vec![Rational::zero(); self.field.degree()];
        for (e, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, p) in acc.iter_mut().zip(&self.field.powers[(e * k) % r]) {
                if !p.is_zero() {
                    *a += c * Rational::from_integer(p.clone());
                }
            }
        }
        CyclotomicNumber { coords: acc, field: self.field.clone() }
    }

    /// Complex conjugation, `ω ↦ ω⁻¹`.
    pub fn conj(&self) -> Self {
        let r = self.r();
        self.galois((r - 1).max(1))
    }

    /// Field norm: product of all conjugates, a rational.
    pub fn norm(&self) -> Rational {
        let r = self.r();
        let mut acc = self.clone();
        for k in (2..r).filter(|k| k.gcd(&r) == 1) {
            acc = &acc * &self.galois(k);
        }
        acc.as_rational().cloned().expect("norm lies in ℚ")
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let r = self.r();
        let mut cofactor = Self::one(r);
        for k in (2..r).filter(|k| k.gcd(&r) == 1) {
            cofactor = &cofactor * &self.galois(k);
        }
        let n = (self * &cofactor).as_rational().cloned().expect("norm lies in ℚ");
        let scale = n.recip();
        Some(cofactor.scale(&scale))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        CyclotomicNumber { coords: self.coords.iter().map(|c| c * s).collect(), field: self.field.clone() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.r());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Bits in all numerators and denominators; a pivot-cost heuristic.
    pub fn bit_size(&self) -> u64 {
        self.coords.iter().map(|c| c.numer().bits() + c.denom().bits()).sum()
    }

    /// `a0/b0,a1/b1,...`
    pub fn to_coord_string(&self) -> String {
        self.coords.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect::<Vec<_>>().join(",")
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.field.r, other.field.r, "mixing ℚ(ω_{}) and ℚ(ω_{})", self.field.r, other.field.r);
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    /// `3 - 2w + 1/2w^2`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = e == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "w")?,
                _ => write!(f, "w^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_field(rhs);
        CyclotomicNumber {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
            field: self.field.clone(),
        }
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_field(rhs);
        CyclotomicNumber {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
            field: self.field.clone(),
        }
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_field(rhs);
        let deg = self.field.degree();
        if deg == 1 {
            return CyclotomicNumber { coords: vec![&self.coords[0] * &rhs.coords[0]], field: self.field.clone() };
        }
        let mut prod = vec![Rational::zero(); 2 * deg - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CyclotomicNumber { coords: reduce_rat(prod, &self.field.modulus), field: self.field.clone() }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { coords: self.coords.iter().map(|c| -c).collect(), field: self.field.clone() }
    }
}

impl Add for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
        &self + &rhs
    }
}

impl Sub for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
        &self - &rhs
    }
}

impl Mul for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
        &self * &rhs
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}
