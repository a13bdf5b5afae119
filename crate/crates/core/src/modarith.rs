//! Residues modulo `m`, finite fields `F_{p^n}` in a fixed polynomial model,
//! and a few dense matrix routines over `Z_p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest field order accepted by [`make_field`].
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn reduce(value: i64, m: u64) -> u64 {
    (value as i128).rem_euclid(m as i128) as u64
}

/// Returns `(gcd(a, b), lcm(a, b))` for positive arguments.
pub fn gcd_lcm(a: i64, b: i64) -> Result<(u64, u64)> {
    if a <= 0 || b <= 0 {
        return Err(Error::NonPositive(a, b));
    }
    let (g, l) = (a as u64).gcd_lcm(&(b as u64));
    Ok((g, l))
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative inverse of `a` modulo `m`, if it exists.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// An integer residue with an eagerly reduced value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModInt {
    value: u64,
    modulus: u64,
}

impl ModInt {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Self { value: reduce(value, modulus), modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn inverse(self) -> Option<Self> {
        inverse_mod(self.value, self.modulus).map(|v| Self { value: v, modulus: self.modulus })
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = ModInt::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn check(self, other: Self) {
        assert_eq!(self.modulus, other.modulus, "ModInt moduli differ");
    }
}

impl Add for ModInt {
    type Output = ModInt;
    fn add(self, rhs: Self) -> Self {
        self.check(rhs);
        let v = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Self { value: v as u64, modulus: self.modulus }
    }
}

impl Sub for ModInt {
    type Output = ModInt;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for ModInt {
    type Output = ModInt;
    fn mul(self, rhs: Self) -> Self {
        self.check(rhs);
        let v = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Self { value: v as u64, modulus: self.modulus }
    }
}

impl Neg for ModInt {
    type Output = ModInt;
    fn neg(self) -> Self {
        let v = if self.value == 0 { 0 } else { self.modulus - self.value };
        Self { value: v, modulus: self.modulus }
    }
}

impl fmt::Display for ModInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

// Polynomials over Z_p, coefficients low-degree-first, no trailing zeros
// except for the zero polynomial which is empty.

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let mut r = poly_trim(a.to_vec());
    let deg_m = modulus.len() - 1;
    let lead_inv = inverse_mod(modulus[deg_m], p).expect("leading coefficient invertible");
    while r.len() > deg_m {
        let shift = r.len() - 1 - deg_m;
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &m) in modulus.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - factor * m % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn monic_with_digits(index: u64, degree: usize, p: u64) -> Vec<u64> {
    // Lowest-degree coefficient is the most significant digit so that
    // increasing `index` walks the low-degree-first lexicographic order.
    let mut coeffs = vec![0u64; degree + 1];
    let mut t = index;
    for slot in (0..degree).rev() {
        coeffs[slot] = t % p;
        t /= p;
    }
    coeffs[degree] = 1;
    coeffs
}

/// Exhaustive irreducibility test: no monic factor of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let poly = poly_trim(poly.to_vec());
    let deg = match poly.len() {
        0 | 1 => return false,
        l => l - 1,
    };
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let divisor = monic_with_digits(idx, d, p);
            if poly_rem(&poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The field `F_{p^n}` realized as `Z_p[x] / (modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    n: u32,
    modulus: Vec<u64>,
}

impl FieldSpec {
    /// Builds a field from an explicit modulus, validating primality and
    /// irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus = poly_trim(modulus);
        if modulus.len() < 2 || modulus[modulus.len() - 1] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidProfile("modulus must be monic with reduced coefficients".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidProfile("modulus is reducible".into()));
        }
        let n = (modulus.len() - 1) as u32;
        Ok(Self { p, n, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// Monic modulus polynomial, low-degree-first, length `n + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

/// Field `F_{p^n}` whose modulus is the lexicographically least monic
/// irreducible polynomial of degree `n` (coefficients compared low degree
/// first).
pub fn make_field(p: u64, n: u32) -> Result<Arc<FieldSpec>> {
    make_field_with_cap(p, n, DEFAULT_FIELD_CAP)
}

pub fn make_field_with_cap(p: u64, n: u32, cap: u64) -> Result<Arc<FieldSpec>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidProfile("field degree must be at least 1".into()));
    }
    let order = p.checked_pow(n).filter(|&q| q <= cap);
    if order.is_none() {
        return Err(Error::DegreeTooLarge { p, n, cap });
    }
    let degree = n as usize;
    let modulus = (0..p.pow(n))
        .map(|idx| monic_with_digits(idx, degree, p))
        .find(|cand| is_irreducible(cand, p))
        .expect("an irreducible polynomial of every degree exists");
    Ok(Arc::new(FieldSpec { p, n, modulus }))
}

/// Element of `F_{p^n}` as coordinates in the basis `1, x, ..., x^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
    field: Arc<FieldSpec>,
}

impl FieldElement {
    pub fn new(field: &Arc<FieldSpec>, coeffs: &[i64]) -> Result<Self> {
        let n = field.n as usize;
        if coeffs.len() != n {
            return Err(Error::ShapeMismatch { expected: n, got: coeffs.len() });
        }
        let coeffs = coeffs.iter().map(|&c| reduce(c, field.p)).collect();
        Ok(Self { coeffs, field: Arc::clone(field) })
    }

    pub fn zero(field: &Arc<FieldSpec>) -> Self {
        Self { coeffs: vec![0; field.n as usize], field: Arc::clone(field) }
    }

    pub fn one(field: &Arc<FieldSpec>) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[0] = 1;
        e
    }

    /// The basis element `x^i` (zero-based).
    pub fn basis(field: &Arc<FieldSpec>, i: usize) -> Result<Self> {
        let n = field.n as usize;
        if i >= n {
            return Err(Error::IndexRange { index: i, limit: n });
        }
        let mut e = Self::zero(field);
        e.coeffs[i] = 1;
        Ok(e)
    }

    /// Element indexed by `0..p^n`, lowest coordinate least significant.
    pub fn from_index(field: &Arc<FieldSpec>, mut index: u64) -> Self {
        let mut e = Self::zero(field);
        for c in e.coeffs.iter_mut() {
            *c = index % field.p;
            index /= field.p;
        }
        e
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % p).collect();
        Ok(Self { coeffs, field: Arc::clone(&self.field) })
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        Self { coeffs, field: Arc::clone(&self.field) }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Polynomial product reduced modulo the field modulus.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let p = self.field.p;
        let n = self.field.n as usize;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let mut coeffs = poly_rem(&prod, &self.field.modulus, p);
        coeffs.resize(n, 0);
        Ok(Self { coeffs, field: Arc::clone(&self.field) })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.field.order() - 2))
        }
    }
}

/// Row-major square matrix over `Z_p`.
pub type ZpMatrix = Vec<Vec<u64>>;

pub fn mat_mul_mod(a: &ZpMatrix, b: &ZpMatrix, p: u64) -> ZpMatrix {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0u64; cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] = (out[i][j] + aik * b[k][j]) % p;
            }
        }
    }
    out
}

/// Determinant modulo a prime by Gaussian elimination.
pub fn det_mod_p(m: &ZpMatrix, p: u64) -> u64 {
    let n = m.len();
    let mut a: ZpMatrix = m.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let mut det = 1u64;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            a.swap(pivot, col);
            det = (p - det) % p;
        }
        det = det * a[col][col] % p;
        let inv = inverse_mod(a[col][col], p).expect("prime modulus");
        for r in col + 1..n {
            let factor = a[r][col] * inv % p;
            if factor == 0 {
                continue;
            }
            for c in col..n {
                a[r][c] = (a[r][c] + p - factor * a[col][c] % p) % p;
            }
        }
    }
    det
}

/// Inverse modulo a prime, or `None` when singular.
pub fn inverse_mod_p(m: &ZpMatrix, p: u64) -> Option<ZpMatrix> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<u64> = r.iter().map(|&x| x % p).collect();
            row.extend((0..n).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(pivot, col);
        let inv = inverse_mod(a[col][col], p)?;
        for c in 0..2 * n {
            a[col][c] = a[col][c] * inv % p;
        }
        for r in 0..n {
            if r == col || a[r][col] == 0 {
                continue;
            }
            let factor = a[r][col];
            for c in 0..2 * n {
                a[r][c] = (a[r][c] + p - factor * a[col][c] % p) % p;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_lcm_examples() {
        assert_eq!(gcd_lcm(2, 3), Ok((1, 6)));
        assert_eq!(gcd_lcm(4, 6), Ok((2, 12)));
        assert_eq!(gcd_lcm(7, 7), Ok((7, 7)));
        assert_eq!(gcd_lcm(0, 3), Err(Error::NonPositive(0, 3)));
        assert_eq!(gcd_lcm(3, -1), Err(Error::NonPositive(3, -1)));
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(make_field(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        // low-degree-first: [1, 0, 1, 1] precedes [1, 1, 0, 1]
        assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn make_field_errors() {
        assert_eq!(make_field(4, 2), Err(Error::NotPrime(4)));
        assert!(matches!(make_field(2, 21), Err(Error::DegreeTooLarge { .. })));
        assert!(make_field(2, 20).is_ok());
    }

    #[test]
    fn reducible_quadratics_over_z2() {
        assert!(!is_irreducible(&[0, 0, 1], 2));
        assert!(!is_irreducible(&[0, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 1], 2));
    }

    #[test]
    fn f4_products() {
        let f = make_field(2, 2).unwrap();
        let x = FieldElement::basis(&f, 1).unwrap();
        let xx = x.mul(&x).unwrap();
        assert_eq!(xx.coeffs(), &[1, 1]);
        for idx in 0..4 {
            let a = FieldElement::from_index(&f, idx);
            assert_eq!(FieldElement::one(&f).mul(&a).unwrap(), a);
            assert!(FieldElement::zero(&f).mul(&a).unwrap().is_zero());
        }
    }

    #[test]
    fn field_mismatch_is_rejected() {
        let f4 = make_field(2, 2).unwrap();
        let f9 = make_field(3, 2).unwrap();
        let a = FieldElement::one(&f4);
        let b = FieldElement::one(&f9);
        assert_eq!(a.mul(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn matrix_routines() {
        let m = vec![vec![1, 2], vec![3, 4]];
        assert_eq!(det_mod_p(&m, 5), 3); // -2 mod 5
        let inv = inverse_mod_p(&m, 5).unwrap();
        assert_eq!(mat_mul_mod(&m, &inv, 5), vec![vec![1, 0], vec![0, 1]]);
        assert!(inverse_mod_p(&vec![vec![1, 1], vec![1, 1]], 2).is_none());
    }

    #[test]
    fn modint_basics() {
        let a = ModInt::new(-3, 7);
        assert_eq!(a.value(), 4);
        assert_eq!((a * a.inverse().unwrap()).value(), 1);
        assert_eq!((-a + a).value(), 0);
        assert_eq!(a.pow(6).value(), 1);
    }
}
