//! Exact arithmetic in GF(p^e) over a polynomial basis.
//!
//! A field is fixed by its characteristic and a monic irreducible modulus. Elements are
//! [`Elem`] values: the coefficient vector (constant term first) packed into fixed-width
//! digits of a `u128`, most significant digit = highest power. Because every digit has
//! the same width, the integer ordering of `Elem` is exactly the enumeration order of
//! coefficient sequences read as base-p integers, so "the first element such that ..."
//! is simply the smallest `Elem` satisfying the predicate.
//!
//! All arithmetic goes through the owning [`GaloisField`]; use [`FieldElement`] when a
//! value needs to carry its field with it and be checked against mismatches.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith;

/// Shared handle to an immutable field description.
pub type Field = Arc<GaloisField>;

/// Default cap on the field order q = p^e (the largest value a `u64` holds).
pub const DEFAULT_SIZE_CAP: u64 = u64::MAX;

const MAX_CHARACTERISTIC: u64 = 1 << 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("degree {e} out of range for characteristic {p} (size cap {cap})")]
    DegreeOutOfRange { p: u64, e: u32, cap: u64 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("extension of degree {0} exceeds the size cap")]
    SizeCap(u32),
    #[error("no element of order {order} has the requested {n}-th power")]
    NoSuchRoot { order: u64, n: u64 },
}

/// Multiplication by a fixed element, see [`GaloisField::scalar`].
#[derive(Clone, Debug)]
pub struct Scalar {
    value: Elem,
    // images[i*e + d]: coefficient d of value * x^i; empty when plain multiplication is used
    images: Vec<u64>,
}

impl Scalar {
    pub fn value(&self) -> Elem {
        self.value
    }
}

/// A field element in packed polynomial-basis form. Only meaningful together with the
/// [`GaloisField`] that produced it.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u128);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Raw packed representation.
    pub fn raw(self) -> u128 {
        self.0
    }
}

/// Concrete realization of GF(p^e).
pub struct GaloisField {
    p: u64,
    e: u32,
    modulus: Vec<u64>,
    // x^e = sum neg_tail[i] x^i
    neg_tail: Vec<u64>,
    order: u64,
    bits: u32,
    digit_mask: u128,
    small_p: bool,
    // floor(2^64 / p), for division-free reduction
    reciprocal: u64,
    factors: Vec<(u64, u32)>,
    // frob[j][i] = (x^i)^(p^j)
    frob: Vec<Vec<Elem>>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.p, self.e, self.modulus)
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.e)
        }
    }
}

/// `true` when both handles describe the same field.
pub fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// GF(p^e) with the lexicographically smallest monic irreducible modulus.
pub fn make_field(p: u64, e: u32) -> Result<Field, FieldError> {
    make_field_with_cap(p, e, DEFAULT_SIZE_CAP)
}

pub fn make_field_with_cap(p: u64, e: u32, cap: u64) -> Result<Field, FieldError> {
    check_parameters(p, e, cap)?;
    let modulus = smallest_irreducible(p, e);
    GaloisField::build(p, modulus)
}

fn check_parameters(p: u64, e: u32, cap: u64) -> Result<u64, FieldError> {
    if p >= MAX_CHARACTERISTIC || !arith::is_prime_trial(p) {
        return Err(FieldError::NonPrimeCharacteristic(p));
    }
    if e < 1 {
        return Err(FieldError::DegreeOutOfRange { p, e, cap });
    }
    match arith::checked_pow(p, e) {
        Some(q) if q <= cap => Ok(q),
        _ => Err(FieldError::DegreeOutOfRange { p, e, cap }),
    }
}

impl GaloisField {
    /// Field with an explicit modulus (constant term first). The modulus must be monic and
    /// irreducible over GF(p).
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Field, FieldError> {
        if modulus.len() < 2 {
            return Err(FieldError::InvalidModulus("degree must be at least 1".into()));
        }
        let e = (modulus.len() - 1) as u32;
        check_parameters(p, e, DEFAULT_SIZE_CAP)?;
        if modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::InvalidModulus("coefficient not reduced mod p".into()));
        }
        if modulus[e as usize] != 1 {
            return Err(FieldError::InvalidModulus("modulus is not monic".into()));
        }
        if !poly::is_irreducible(modulus, p) {
            return Err(FieldError::InvalidModulus("modulus is reducible".into()));
        }
        GaloisField::build(p, modulus.to_vec())
    }

    fn build(p: u64, modulus: Vec<u64>) -> Result<Field, FieldError> {
        let e = (modulus.len() - 1) as u32;
        let order = arith::checked_pow(p, e).expect("checked by caller");
        let bits = 64 - (p - 1).leading_zeros().min(63);
        let neg_tail = modulus[..e as usize].iter().map(|&c| (p - c) % p).collect();
        let mut f = GaloisField {
            p,
            e,
            modulus,
            neg_tail,
            order,
            bits,
            digit_mask: (1u128 << bits) - 1,
            small_p: p < (1 << 16),
            reciprocal: (u64::MAX / p) + u64::from(u64::MAX % p == p - 1),
            factors: arith::factorize(order - 1),
            frob: Vec::new(),
        };
        f.frob = f.frobenius_tables();
        Ok(Arc::new(f))
    }

    fn frobenius_tables(&self) -> Vec<Vec<Elem>> {
        let e = self.e as usize;
        let x = self.generator();
        let mut tables = Vec::with_capacity(e);
        let mut xj = x;
        for j in 0..e {
            if j > 0 {
                xj = self.pow(xj, self.p);
            }
            let mut row = Vec::with_capacity(e);
            let mut acc = Elem::ONE;
            for _ in 0..e {
                row.push(acc);
                acc = self.mul(acc, xj);
            }
            tables.push(row);
        }
        tables
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// q = p^e.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Modulus coefficients, constant term first, including the leading 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Prime factorization of q - 1.
    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The class of x modulo the field's modulus.
    pub fn generator(&self) -> Elem {
        if self.e == 1 {
            Elem(((self.p - self.modulus[0]) % self.p) as u128)
        } else {
            Elem(1u128 << self.bits)
        }
    }

    /// `a mod p` without a hardware division.
    #[inline]
    fn rem(&self, a: u64) -> u64 {
        let q = ((a as u128 * self.reciprocal as u128) >> 64) as u64;
        let r = a.wrapping_sub(q.wrapping_mul(self.p));
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline]
    fn digit(&self, x: Elem, i: usize) -> u64 {
        ((x.0 >> (self.bits as usize * i)) & self.digit_mask) as u64
    }

    #[inline]
    fn decode(&self, x: Elem, out: &mut [u64]) {
        let mut v = x.0;
        for d in out.iter_mut().take(self.e as usize) {
            *d = (v & self.digit_mask) as u64;
            v >>= self.bits;
        }
    }

    #[inline]
    fn encode(&self, digits: &[u64]) -> Elem {
        let mut v = 0u128;
        for &d in digits[..self.e as usize].iter().rev() {
            v = (v << self.bits) | d as u128;
        }
        Elem(v)
    }

    /// Element with the given coefficients (constant term first, exactly `e` of them).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem, FieldError> {
        if coeffs.len() != self.e as usize {
            return Err(FieldError::InvalidElement(format!(
                "expected {} coefficients, got {}",
                self.e,
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(FieldError::InvalidElement(format!(
                "coefficient {c} not reduced mod {}",
                self.p
            )));
        }
        Ok(self.encode(coeffs))
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u64> {
        (0..self.e as usize).map(|i| self.digit(x, i)).collect()
    }

    /// `c * 1` for an integer `c` (reduced mod p).
    pub fn from_int(&self, c: i64) -> Elem {
        Elem(c.rem_euclid(self.p as i64) as u128)
    }

    /// Element whose coefficient sequence is the base-p expansion of `index`.
    pub fn from_index(&self, mut index: u64) -> Elem {
        let mut digits = [0u64; 64];
        for d in digits.iter_mut().take(self.e as usize) {
            *d = index % self.p;
            index /= self.p;
        }
        self.encode(&digits)
    }

    /// Position of `x` in the enumeration order.
    pub fn index_of(&self, x: Elem) -> u64 {
        (0..self.e as usize)
            .rev()
            .fold(0u64, |acc, i| acc * self.p + self.digit(x, i))
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order).map(move |i| self.from_index(i))
    }

    pub fn is_valid(&self, x: Elem) -> bool {
        if self.bits as usize * self.e as usize != 128 && x.0 >> (self.bits * self.e) != 0 {
            return false;
        }
        (0..self.e as usize).all(|i| self.digit(x, i) < self.p)
    }

    pub fn is_prime_subfield(&self, x: Elem) -> bool {
        x.0 < self.p as u128
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        if self.e == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p as u128 { s - p as u128 } else { s });
        }
        let mut out = 0u128;
        for i in (0..self.e as usize).rev() {
            let s = self.digit(a, i) + self.digit(b, i);
            let s = if s >= p { s - p } else { s };
            out = (out << self.bits) | s as u128;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.p;
        let mut out = 0u128;
        for i in (0..self.e as usize).rev() {
            let d = self.digit(a, i);
            out = (out << self.bits) | (if d == 0 { 0 } else { p - d }) as u128;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        if self.e == 1 {
            return Elem(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + p as u128 - b.0 });
        }
        let mut out = 0u128;
        for i in (0..self.e as usize).rev() {
            let (x, y) = (self.digit(a, i), self.digit(b, i));
            let s = if x >= y { x - y } else { x + p - y };
            out = (out << self.bits) | s as u128;
        }
        Elem(out)
    }

    /// Multiplication by an integer (element of the prime subfield).
    pub fn scale(&self, c: u64, a: Elem) -> Elem {
        let c = c % self.p;
        if c == 0 {
            return Elem::ZERO;
        }
        let mut out = 0u128;
        for i in (0..self.e as usize).rev() {
            let d = arith::mul_mod(self.digit(a, i), c, self.p);
            out = (out << self.bits) | d as u128;
        }
        Elem(out)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let p = self.p;
        let e = self.e as usize;
        if e == 1 {
            return Elem(self.rem((a.0 * b.0) as u64) as u128);
        }
        let mut da = [0u64; 64];
        let mut db = [0u64; 64];
        self.decode(a, &mut da);
        self.decode(b, &mut db);
        let mut prod = [0u64; 128];
        if self.small_p {
            for i in 0..e {
                if da[i] == 0 {
                    continue;
                }
                for j in 0..e {
                    prod[i + j] += da[i] * db[j];
                }
            }
            for k in (e..2 * e - 1).rev() {
                let c = self.rem(prod[k]);
                if c != 0 {
                    for i in 0..e {
                        prod[k - e + i] += c * self.neg_tail[i];
                    }
                }
            }
            for d in prod.iter_mut().take(e) {
                *d = self.rem(*d);
            }
        } else {
            for i in 0..e {
                for j in 0..e {
                    prod[i + j] = (prod[i + j] + arith::mul_mod(da[i], db[j], p)) % p;
                }
            }
            for k in (e..2 * e - 1).rev() {
                let c = prod[k];
                if c != 0 {
                    for i in 0..e {
                        prod[k - e + i] =
                            (prod[k - e + i] + arith::mul_mod(c, self.neg_tail[i], p)) % p;
                    }
                }
            }
        }
        self.encode(&prod)
    }

    /// Whether coefficient-plane kernels apply: an extension of a small prime field where
    /// `e (p-1)^2 + p` fits comfortably in a `u32` lane.
    pub fn planar_ok(&self) -> bool {
        self.e > 1 && self.small_p && (self.e as u64) * (self.p - 1).pow(2) + self.p < (1 << 31)
    }

    /// `table[i * e + d]`: coefficient `d` of `c * x^i`.
    pub fn coefficient_table(&self, c: Elem) -> Vec<u32> {
        let e = self.e as usize;
        let mut out = vec![0u32; e * e];
        let x = self.generator();
        let mut img = c;
        let mut d = [0u64; 64];
        for i in 0..e {
            self.decode(img, &mut d);
            for (o, &v) in out[i * e..(i + 1) * e].iter_mut().zip(&d) {
                *o = v as u32;
            }
            img = self.mul(img, x);
        }
        out
    }

    /// Coefficient `i` of `x`.
    #[inline]
    pub fn coefficient(&self, x: Elem, i: usize) -> u32 {
        self.digit(x, i) as u32
    }

    /// Element with reduced coefficients `digits(0), .., digits(e-1)`.
    #[inline]
    pub fn from_digits(&self, digits: impl Fn(usize) -> u32) -> Elem {
        let mut v = 0u128;
        for i in (0..self.e as usize).rev() {
            v = (v << self.bits) | digits(i) as u128;
        }
        Elem(v)
    }

    /// Precomputes multiplication by `c` as a GF(p)-linear map on coefficients.
    pub fn scalar(&self, c: Elem) -> Scalar {
        if !self.small_p || self.e == 1 {
            return Scalar { value: c, images: Vec::new() };
        }
        let e = self.e as usize;
        let mut images = vec![0u64; e * e];
        let x = self.generator();
        let mut img = c;
        for i in 0..e {
            self.decode(img, &mut images[i * e..(i + 1) * e]);
            img = self.mul(img, x);
        }
        Scalar { value: c, images }
    }

    /// How many [`GaloisField::accumulate`] calls an accumulator absorbs before it must
    /// be reduced.
    pub fn accumulation_capacity(&self) -> usize {
        let term = (self.e as u128) * (self.p as u128 - 1).pow(2) + self.p as u128;
        (u64::MAX as u128 / term).min(usize::MAX as u128) as usize
    }

    /// Adds the coefficients of `s * x` to `acc` (length `e`) without reducing mod p.
    #[inline]
    pub fn accumulate(&self, s: &Scalar, x: Elem, acc: &mut [u64]) {
        if x.0 == 0 {
            return;
        }
        if s.images.is_empty() {
            let mut d = [0u64; 64];
            self.decode(self.mul(s.value, x), &mut d);
            for (a, &v) in acc.iter_mut().zip(&d) {
                *a += v;
            }
            return;
        }
        let e = self.e as usize;
        let mut v = x.0;
        for i in 0..e {
            let d = (v & self.digit_mask) as u64;
            v >>= self.bits;
            if d != 0 {
                for (a, &m) in acc.iter_mut().zip(&s.images[i * e..(i + 1) * e]) {
                    *a += d * m;
                }
            }
        }
    }

    /// Reduces an accumulator in place.
    pub fn normalize(&self, acc: &mut [u64]) {
        for a in acc.iter_mut() {
            *a = self.rem(*a);
        }
    }

    /// Element from an accumulator.
    pub fn reduce(&self, acc: &[u64]) -> Elem {
        let mut d = [0u64; 64];
        for (o, &a) in d.iter_mut().zip(acc) {
            *o = self.rem(a);
        }
        self.encode(&d)
    }

    /// `y - s * x`.
    #[inline]
    pub fn sub_scaled(&self, s: &Scalar, y: Elem, x: Elem) -> Elem {
        if x.0 == 0 {
            return y;
        }
        if s.images.is_empty() {
            return self.sub(y, self.mul(s.value, x));
        }
        let e = self.e as usize;
        let mut acc = [0u64; 64];
        self.accumulate(s, x, &mut acc[..e]);
        // offset is a multiple of p above any accumulated value
        let offset = self.p * ((self.e as u64) * (self.p - 1) + 1);
        let mut yv = y.0;
        for a in acc.iter_mut().take(e) {
            let yd = (yv & self.digit_mask) as u64;
            yv >>= self.bits;
            *a = self.rem(yd + offset - *a);
        }
        self.encode(&acc)
    }

    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    /// `x^n` for `n >= 0` by square-and-multiply.
    pub fn pow(&self, x: Elem, mut n: u64) -> Elem {
        let mut acc = Elem::ONE;
        let mut base = x;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// `x^n` for any integer exponent; negative exponents need `x != 0`.
    pub fn pow_signed(&self, x: Elem, n: i64) -> Result<Elem, FieldError> {
        if n >= 0 {
            Ok(self.pow(x, n as u64))
        } else {
            let inv = self.inv(x)?;
            Ok(self.pow(inv, n.unsigned_abs()))
        }
    }

    pub fn inv(&self, x: Elem) -> Result<Elem, FieldError> {
        if x.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(x, self.order - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x^(p^j)`; `j` is taken modulo `e`.
    pub fn frobenius(&self, x: Elem, j: u32) -> Elem {
        let j = (j % self.e) as usize;
        if j == 0 || self.e == 1 {
            return x;
        }
        let table = &self.frob[j];
        let mut acc = Elem::ZERO;
        for (i, &basis) in table.iter().enumerate() {
            let c = self.digit(x, i);
            if c != 0 {
                acc = self.add(acc, self.scale(c, basis));
            }
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: Elem) -> Result<u64, FieldError> {
        if x.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let mut n = self.order - 1;
        for &(r, _) in &self.factors {
            while n % r == 0 && self.pow(x, n / r) == Elem::ONE {
                n /= r;
            }
        }
        Ok(n)
    }

    pub fn is_primitive(&self, x: Elem) -> bool {
        !x.is_zero()
            && self
                .factors
                .iter()
                .all(|&(r, _)| self.pow(x, (self.order - 1) / r) != Elem::ONE)
    }

    /// First element in enumeration order of multiplicative order q - 1.
    pub fn primitive_element(&self) -> Elem {
        (1..self.order)
            .map(|i| self.from_index(i))
            .find(|&x| self.is_primitive(x))
            .expect("every finite field has a primitive element")
    }

    /// Human-readable polynomial form, e.g. `2 + x^2`.
    pub fn format(&self, x: Elem) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .coeffs(x)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        terms.join(" + ")
    }

    fn eval_prime_poly(&self, coeffs: &[u64], x: Elem) -> Elem {
        coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| self.add(self.mul(acc, x), self.from_int(c as i64)))
    }
}

/// An element bundled with its field; every binary operation checks that both operands
/// live in the same field.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl FieldElement {
    pub fn new(field: &Field, value: Elem) -> Result<Self, FieldError> {
        if !field.is_valid(value) {
            return Err(FieldError::InvalidElement(format!("{value:?}")));
        }
        Ok(FieldElement { field: field.clone(), value })
    }

    pub fn from_coeffs(field: &Field, coeffs: &[u64]) -> Result<Self, FieldError> {
        Ok(FieldElement { field: field.clone(), value: field.from_coeffs(coeffs)? })
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.coeffs(self.value)
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn wrap(&self, value: Elem) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, n: i64) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.field.pow_signed(self.value, n)?))
    }

    pub fn frobenius(&self, j: u32) -> FieldElement {
        self.wrap(self.field.frobenius(self.value, j))
    }

    pub fn order(&self) -> Result<u64, FieldError> {
        self.field.element_order(self.value)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.value == other.value
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.format(self.value), self.field)
    }
}

/// Ring embedding GF(q) -> GF(q^m) sending the class of x to a fixed root of the small
/// field's modulus.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: Field,
    big: Field,
    root: Elem,
    basis: Vec<Elem>,
    pivots: Vec<usize>,
    // inverse of the pivot submatrix, used for pull-backs
    inverse: Vec<Vec<u64>>,
}

impl Embedding {
    /// Embedding determined by the smallest root (in enumeration order) of the small
    /// modulus inside `big`; the identity when both fields coincide.
    pub fn new(small: &Field, big: &Field) -> Result<Self, FieldError> {
        if small.p != big.p || big.e % small.e != 0 {
            return Err(FieldError::FieldMismatch);
        }
        let root = if same_field(small, big) {
            big.generator()
        } else if small.e == 1 {
            big.from_int(-(small.modulus[0] as i64))
        } else {
            smallest_root(small, big)?
        };
        let mut basis = Vec::with_capacity(small.e as usize);
        let mut acc = Elem::ONE;
        for _ in 0..small.e {
            basis.push(acc);
            acc = big.mul(acc, root);
        }
        let rows: Vec<Vec<u64>> = basis.iter().map(|&b| big.coeffs(b)).collect();
        let pivots = modp::pivot_columns(&rows, big.p);
        let sub: Vec<Vec<u64>> =
            rows.iter().map(|r| pivots.iter().map(|&c| r[c]).collect()).collect();
        let inverse = modp::inverse(&sub, big.p).ok_or(FieldError::FieldMismatch)?;
        Ok(Embedding { small: small.clone(), big: big.clone(), root, basis, pivots, inverse })
    }

    pub fn small(&self) -> &Field {
        &self.small
    }

    pub fn big(&self) -> &Field {
        &self.big
    }

    /// Image of the class of x.
    pub fn root(&self) -> Elem {
        self.root
    }

    pub fn apply(&self, x: Elem) -> Elem {
        let big = &self.big;
        self.small
            .coeffs(x)
            .iter()
            .zip(&self.basis)
            .filter(|(&c, _)| c != 0)
            .fold(Elem::ZERO, |acc, (&c, &b)| big.add(acc, big.scale(c, b)))
    }

    /// The unique preimage of `y`, or `None` when `y` lies outside the embedded subfield.
    pub fn preimage(&self, y: Elem) -> Option<Elem> {
        let p = self.big.p;
        let yc = self.big.coeffs(y);
        let yv: Vec<u64> = self.pivots.iter().map(|&c| yc[c]).collect();
        let e = self.small.e as usize;
        let x: Vec<u64> = (0..e)
            .map(|i| {
                yv.iter()
                    .zip(&self.inverse)
                    .fold(0u64, |acc, (&yt, row)| (acc + arith::mul_mod(yt, row[i], p)) % p)
            })
            .collect();
        let x = self.small.encode(&x);
        (self.apply(x) == y).then_some(x)
    }
}

fn smallest_root(small: &Field, big: &Field) -> Result<Elem, FieldError> {
    // Every root lies in the copy of GF(q) inside the big field, generated by g^((Q-1)/(q-1)).
    let g = big.primitive_element();
    let h = big.pow(g, (big.order - 1) / (small.order - 1));
    let mut y = Elem::ONE;
    for _ in 0..small.order - 1 {
        if big.eval_prime_poly(&small.modulus, y).is_zero() {
            let conjugates = (0..small.e).map(|j| big.frobenius(y, j));
            return Ok(conjugates.min().expect("e >= 1"));
        }
        y = big.mul(y, h);
    }
    Err(FieldError::NoSuchRoot { order: small.order - 1, n: 1 })
}

/// GF(q^m) built with [`make_field`] together with the embedding of GF(q).
pub fn extension_field(f: &Field, m: u32) -> Result<(Field, Embedding), FieldError> {
    if m == 0 {
        return Err(FieldError::SizeCap(m));
    }
    if m == 1 {
        return Ok((f.clone(), Embedding::new(f, f)?));
    }
    let degree = f.e.checked_mul(m).ok_or(FieldError::SizeCap(m))?;
    let big = make_field(f.p, degree).map_err(|_| FieldError::SizeCap(m))?;
    let emb = Embedding::new(f, &big)?;
    Ok((big, emb))
}

/// θ of exact order `rn` with `θ^n = λ`, the first one in enumeration order.
pub fn nth_root_of_unity(f: &Field, rn: u64, lambda: Elem, n: u64) -> Result<Elem, FieldError> {
    let no_root = FieldError::NoSuchRoot { order: rn, n };
    if rn == 0 || (f.order - 1) % rn != 0 {
        return Err(no_root);
    }
    // Elements of order dividing rn are the powers of zeta; pick the least valid one.
    let zeta = f.pow(f.primitive_element(), (f.order - 1) / rn);
    let mut best: Option<Elem> = None;
    let mut power = Elem::ONE;
    for s in 0..rn {
        if arith::gcd(s, rn) == 1 && f.pow(power, n) == lambda {
            best = Some(best.map_or(power, |b| b.min(power)));
        }
        power = f.mul(power, zeta);
    }
    best.ok_or(no_root)
}

/// Lexicographically smallest monic irreducible of degree `e`, comparing coefficient
/// sequences from the constant term upward.
fn smallest_irreducible(p: u64, e: u32) -> Vec<u64> {
    let e = e as usize;
    if e == 1 {
        return vec![0, 1];
    }
    // tail[0] is the most significant position; a zero constant term means x | f
    let mut tail = vec![0u64; e];
    tail[0] = 1;
    loop {
        let mut f = tail.clone();
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return f;
        }
        let mut i = e - 1;
        loop {
            tail[i] += 1;
            if tail[i] < p {
                break;
            }
            tail[i] = 0;
            i -= 1;
        }
    }
}

/// Polynomials over GF(p) as coefficient vectors, constant term first.
mod poly {
    use crate::arith::mul_mod;

    fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = crate::arith::pow_mod(f[df], p - 2, p);
        while r.len() > df {
            let dr = r.len() - 1;
            let c = mul_mod(r[dr], lead_inv, p);
            for i in 0..=df {
                let t = mul_mod(c, f[i], p);
                let idx = dr - df + i;
                r[idx] = (r[idx] + p - t) % p;
            }
            trim(&mut r);
        }
        r
    }

    fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        rem(&out, f, p)
    }

    fn powmod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, f, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(&acc, &b, f, p);
            }
            exp >>= 1;
            if exp > 0 {
                b = mulmod(&b, &b, f, p);
            }
        }
        acc
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin-style test: no common factor with x^(p^j) - x for 1 <= j <= deg/2.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let mut f = f.to_vec();
        trim(&mut f);
        if f.len() < 2 {
            return false;
        }
        let deg = f.len() - 1;
        if deg == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let x = vec![0u64, 1];
        let mut xp = x.clone();
        for _ in 1..=deg / 2 {
            xp = powmod(&xp, p, &f, p);
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            if diff.is_empty() {
                return false;
            }
            if gcd(&f, &diff, p).len() > 1 {
                return false;
            }
        }
        true
    }
}

/// Small dense linear algebra over GF(p) for subfield pull-backs.
mod modp {
    use crate::arith::{mul_mod, pow_mod};

    pub fn pivot_columns(rows: &[Vec<u64>], p: u64) -> Vec<usize> {
        let mut m = rows.to_vec();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, pr);
            let inv = pow_mod(m[r][c], p - 2, p);
            for x in m[r].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            for i in 0..m.len() {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..ncols {
                        let t = mul_mod(f, m[r][j], p);
                        m[i][j] = (m[i][j] + p - t) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        pivots
    }

    pub fn inverse(a: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
        let n = a.len();
        let mut m: Vec<Vec<u64>> = a
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| u64::from(i == j)));
                r
            })
            .collect();
        for c in 0..n {
            let pr = (c..n).find(|&i| m[i][c] != 0)?;
            m.swap(c, pr);
            let inv = pow_mod(m[c][c], p - 2, p);
            for x in m[c].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            for i in 0..n {
                if i != c && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..2 * n {
                        let t = mul_mod(f, m[c][j], p);
                        m[i][j] = (m[i][j] + p - t) % p;
                    }
                }
            }
        }
        Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
    }
}
