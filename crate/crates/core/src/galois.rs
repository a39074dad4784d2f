//! Arithmetic in GF(p^k) and in polynomial rings over it.
//!
//! An element of GF(p^k) is a coefficient vector over GF(p) with respect to the
//! polynomial basis 1, x, ..., x^{k-1}. [`Fe`] stores that vector packed into an
//! integer, `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`, so equality of `Fe` values is
//! equality of coefficient vectors. Multiplication goes through log/exp tables
//! built once per [`Field`].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

/// A packed field element. Only meaningful together with the [`Field`] it came from.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parameters and lookup tables of one finite field.
pub struct FieldSpec {
    p: u32,
    k: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    // odd characteristic only; empty when p = 2 or the table would be too large
    add: Vec<u32>,
    neg: Vec<u32>,
}

/// Shared handle to a [`FieldSpec`]. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, e)` with `q = p^e`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest == 1 && p <= u32::MAX as u64 {
        Some((p as u32, e))
    } else {
        None
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn checked_order(p: u32, k: u32) -> Result<u32> {
    (p as u64)
        .checked_pow(k)
        .filter(|&q| q <= MAX_FIELD_ORDER as u64)
        .map(|q| q as u32)
        .ok_or_else(|| {
            Error::InvalidField(format!("GF({p}^{k}) exceeds the supported order {MAX_FIELD_ORDER}"))
        })
}

impl Field {
    /// GF(p^k) with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u32, k: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        checked_order(p, k)?;
        if k == 1 {
            return Field::with_modulus(p, vec![0, 1]);
        }
        let base = Field::prime(p)?;
        let g = find_irreducible(&base, k as usize, IrreducibleStrategy::Lexicographic, &[])?;
        let modulus = g.coeffs().iter().map(|c| c.0).collect();
        Field::with_modulus(p, modulus)
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new_unchecked_prime(p)
    }

    fn new_unchecked_prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        checked_order(p, 1)?;
        Ok(Field::build(p, vec![0, 1]))
    }

    /// GF(2^u).
    pub fn binary(u: u32) -> Result<Field> {
        Field::new(2, u)
    }

    /// GF(q) for a prime power q.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Field::new(p, k)
    }

    /// GF(p^k) with an explicit modulus, given as GF(p) coefficients, constant term first.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree at least 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficients must lie in [0, p)".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let k = (modulus.len() - 1) as u32;
        checked_order(p, k)?;
        if k > 1 {
            let base = Field::prime(p)?;
            let poly = Polynomial::new(&base, modulus.iter().map(|&c| Fe(c)).collect());
            if !poly.is_irreducible() {
                return Err(Error::InvalidField(format!("modulus {poly} is reducible over GF({p})")));
            }
        }
        Ok(Field::build(p, modulus))
    }

    fn build(p: u32, modulus: Vec<u32>) -> Field {
        let k = (modulus.len() - 1) as u32;
        let order = p.pow(k);
        let mut spec = FieldSpec {
            p,
            k,
            order,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add: Vec::new(),
            neg: Vec::new(),
        };
        if p != 2 {
            spec.neg = (0..order).map(|a| spec.neg_digits(a)).collect();
            if order <= 256 {
                spec.add = (0..order * order)
                    .map(|i| spec.add_digits(i / order, i % order))
                    .collect();
            }
        }
        let group = order - 1;
        let factors = prime_factors(group);
        let generator = (1..order)
            .find(|&g| factors.iter().all(|&f| spec.pow_slow(g, (group / f) as u64) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(2 * group as usize);
        let mut log = vec![0u32; order as usize];
        let mut cur = 1u32;
        for i in 0..group {
            exp.push(cur);
            log[cur as usize] = i;
            cur = spec.mul_slow(cur, generator);
        }
        for i in 0..group as usize {
            exp.push(exp[i]);
        }
        spec.exp = exp;
        spec.log = log;
        Field(Arc::new(spec))
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Extension degree k.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Bits of information per element, `log2(q)`.
    pub fn bits_per_symbol(&self) -> f64 {
        (self.0.order as f64).log2()
    }

    /// Bytes needed for a fixed-width little-endian encoding of one element.
    pub fn element_bytes(&self) -> usize {
        let bits = 32 - (self.0.order - 1).leading_zeros() as usize;
        bits.div_ceil(8).max(1)
    }

    pub fn element(&self, value: u32) -> Result<Fe> {
        if value < self.0.order {
            Ok(Fe(value))
        } else {
            Err(Error::InvalidField(format!(
                "{value} is not an element of a field of order {}",
                self.0.order
            )))
        }
    }

    /// All elements in increasing packed order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.order).map(Fe)
    }

    /// Image of an integer under the ring map Z -> GF(p) -> GF(q).
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Coefficient vector of `a` over GF(p), constant term first.
    pub fn coefficients(&self, a: Fe) -> Vec<u32> {
        self.0.digits(a.0)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.0.k as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::InvalidField("coefficient vector does not fit the field".into()));
        }
        Ok(Fe(coeffs.iter().rev().fold(0, |acc, &c| acc * self.0.p + c)))
    }

    /// The element represented by the polynomial x (a field generator over GF(p) when k > 1).
    pub fn x(&self) -> Fe {
        if self.0.k == 1 {
            Fe(0)
        } else {
            Fe(self.0.p)
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let s = &*self.0;
        if s.p == 2 {
            Fe(a.0 ^ b.0)
        } else if !s.add.is_empty() {
            Fe(s.add[(a.0 * s.order + b.0) as usize])
        } else {
            Fe(s.add_digits(a.0, b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.0.p == 2 {
            a
        } else {
            Fe(self.0.neg[a.0 as usize])
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let s = &*self.0;
        Fe(s.exp[(s.log[a.0 as usize] + s.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let s = &*self.0;
        let group = s.order - 1;
        Ok(Fe(s.exp[((group - s.log[a.0 as usize]) % group) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let s = &*self.0;
        let group = (s.order - 1) as u64;
        let l = (s.log[a.0 as usize] as u64 * (e % group)) % group;
        Fe(s.exp[l as usize])
    }

    /// Sum of products, the inner loop of every matrix operation.
    pub fn dot(&self, a: &[Fe], b: &[Fe]) -> Fe {
        a.iter()
            .zip(b)
            .fold(Fe::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    pub fn checked(&self, value: Fe) -> Result<FieldElement> {
        self.element(value.0)?;
        Ok(FieldElement { field: self.clone(), value })
    }
}

impl FieldSpec {
    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = vec![0u32; self.k as usize];
        for d in out.iter_mut() {
            *d = a % self.p;
            a /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn neg_digits(&self, mut a: u32) -> u32 {
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    /// Schoolbook product reduced by the modulus; only used to build tables.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let k = self.k as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (k..prod.len()).rev() {
            let c = prod[deg];
            if c != 0 {
                for (i, &m) in self.modulus.iter().enumerate() {
                    let idx = deg - k + i;
                    prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
                }
            }
        }
        let low: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.pack(&low)
    }

    fn pow_slow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "GF({}^{})/modulus=[{}]", self.0.p, self.0.k, m.join(","))
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `GF(p^k)/modulus=[c0,...,ck]`, `GF(p^k)` and `GF(p)`.
    fn from_str(s: &str) -> Result<Field> {
        let bad = |msg: &str| Error::InvalidField(format!("cannot parse field `{s}`: {msg}"));
        let s = s.trim();
        let rest = s.strip_prefix("GF(").ok_or_else(|| bad("expected GF("))?;
        let close = rest.find(')').ok_or_else(|| bad("missing )"))?;
        let inner = &rest[..close];
        let tail = &rest[close + 1..];
        let (p, k) = match inner.split_once('^') {
            Some((p, k)) => (
                p.trim().parse::<u32>().map_err(|_| bad("bad characteristic"))?,
                k.trim().parse::<u32>().map_err(|_| bad("bad degree"))?,
            ),
            None => {
                let q = inner.trim().parse::<u64>().map_err(|_| bad("bad order"))?;
                let (p, k) = prime_power(q).ok_or_else(|| bad("order is not a prime power"))?;
                (p, k)
            }
        };
        if tail.is_empty() {
            return Field::new(p, k);
        }
        let list = tail
            .strip_prefix("/modulus=[")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| bad("expected /modulus=[...]"))?;
        let modulus = list
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad("bad modulus coefficient"))?;
        if modulus.len() != k as usize + 1 {
            return Err(bad("modulus length does not match the degree"));
        }
        Field::with_modulus(p, modulus)
    }
}

/// An element bundled with its field, for arithmetic that must reject mixed fields.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldElement {
    field: Field,
    value: Fe,
}

impl FieldElement {
    pub fn new(field: &Field, value: u32) -> Result<FieldElement> {
        Ok(FieldElement { field: field.clone(), value: field.element(value)? })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Fe {
        self.value
    }

    pub fn coefficients(&self) -> Vec<u32> {
        self.field.coefficients(self.value)
    }

    fn same(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, value: Fe) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.div(self.value, other.value)?))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.value))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.wrap(self.field.pow(self.value, e))
    }
}

/// Degree of a polynomial; the zero polynomial has degree negative infinity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Univariate polynomial, constant term first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Fe>,
}

impl Polynomial {
    pub fn new(field: &Field, mut coeffs: Vec<Fe>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial::new(field, Vec::new())
    }

    pub fn constant(field: &Field, c: Fe) -> Polynomial {
        Polynomial::new(field, vec![c])
    }

    /// `c * x^deg`
    pub fn monomial(field: &Field, c: Fe, deg: usize) -> Polynomial {
        let mut coeffs = vec![Fe::ZERO; deg + 1];
        coeffs[deg] = c;
        Polynomial::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Fe::ONE)
    }

    fn same(&self, other: &Polynomial) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Polynomial::new(f, coeffs))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Polynomial::new(f, coeffs))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Polynomial::new(f, out))
    }

    pub fn scale(&self, c: Fe) -> Polynomial {
        let f = &self.field;
        Polynomial::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.same(divisor)?;
        let f = &self.field;
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(lead)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(f), self.clone()));
        }
        let mut quot = vec![Fe::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[i - dd] = factor;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(rem[idx], f.mul(factor, d));
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::new(f, quot), Polynomial::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(self.field.inv(l).expect("leading coefficient is nonzero")),
        }
    }

    /// Horner evaluation at a point of the coefficient field.
    pub fn eval(&self, at: Fe) -> Fe {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, at), c))
    }

    pub fn eval_checked(&self, at: &FieldElement) -> Result<FieldElement> {
        if at.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        self.field.checked(self.eval(at.value()))
    }

    pub fn roots_in(&self, points: &[Fe]) -> Vec<Fe> {
        points.iter().copied().filter(|&a| self.eval(a).is_zero()).collect()
    }

    pub fn has_root_in(&self, points: &[Fe]) -> bool {
        points.iter().any(|&a| self.eval(a).is_zero())
    }

    /// Irreducibility over the coefficient field: root test up to degree 3,
    /// otherwise trial division by every monic polynomial of degree at most half.
    pub fn is_irreducible(&self) -> bool {
        let deg = match self.degree() {
            Degree::Finite(d) if d >= 1 => d,
            _ => return false,
        };
        if deg == 1 {
            return true;
        }
        let all: Vec<Fe> = self.field.elements().collect();
        if self.has_root_in(&all) {
            return false;
        }
        if deg <= 3 {
            return true;
        }
        for e in 2..=deg / 2 {
            for candidate in monic_polynomials(&self.field, e) {
                let r = self.rem(&candidate).expect("monic divisor");
                if r.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// All monic polynomials of the given degree, in lexicographic order: the
/// lower-order coefficients, read as base-q digits with the constant term least
/// significant, count upward from zero.
pub fn monic_polynomials(field: &Field, degree: usize) -> impl Iterator<Item = Polynomial> + '_ {
    let q = field.order() as u64;
    let count = q.checked_pow(degree as u32).unwrap_or(u64::MAX);
    (0..count).map(move |idx| monic_from_index(field, degree, idx))
}

fn monic_from_index(field: &Field, degree: usize, mut idx: u64) -> Polynomial {
    let q = field.order() as u64;
    let mut coeffs = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        coeffs.push(Fe((idx % q) as u32));
        idx /= q;
    }
    coeffs.push(Fe::ONE);
    Polynomial::new(field, coeffs)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = *c != Fe::ONE || i == 0;
            if show_coeff {
                write!(f, "{c}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// How [`find_irreducible`] walks the candidate space.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum IrreducibleStrategy {
    Lexicographic,
    SeededRandom(u64),
}

/// A monic irreducible polynomial of `degree` over `base` with no root in `exclude`.
pub fn find_irreducible(
    base: &Field,
    degree: usize,
    strategy: IrreducibleStrategy,
    exclude: &[Fe],
) -> Result<Polynomial> {
    if degree == 0 {
        return Err(Error::ParameterOutOfRange("irreducible degree must be at least 1".into()));
    }
    let acceptable = |g: &Polynomial| g.is_irreducible() && !g.has_root_in(exclude);
    match strategy {
        IrreducibleStrategy::Lexicographic => monic_polynomials(base, degree)
            .find(acceptable)
            .ok_or(Error::NoIrreducible { degree }),
        IrreducibleStrategy::SeededRandom(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = base.order();
            // irreducibles have density about 1/degree, so this cap only trips on
            // an exclusion set that rules out every candidate
            for _ in 0..(1u32 << 16) {
                let mut coeffs: Vec<Fe> = (0..degree).map(|_| Fe(rng.random_range(0..q))).collect();
                coeffs.push(Fe::ONE);
                let g = Polynomial::new(base, coeffs);
                if acceptable(&g) {
                    return Ok(g);
                }
            }
            Err(Error::NoIrreducible { degree })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_addition_wraps() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.add(Fe(2), Fe(4)), Fe(1));
        assert_eq!(f.sub(Fe(1), Fe(3)), Fe(3));
        assert_eq!(f.neg(Fe(2)), Fe(3));
    }

    #[test]
    fn gf4_alpha_squared_is_alpha_plus_one() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let alpha = f.x();
        // alpha + 1 has coefficient vector (1, 1)
        assert_eq!(f.mul(alpha, alpha), f.from_coefficients(&[1, 1]).unwrap());
    }

    #[test]
    fn gf8_inverse_axiom() {
        let f = Field::new(2, 3).unwrap();
        for x in f.elements().skip(1) {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), Fe::ONE);
        }
        assert_eq!(f.inv(Fe::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn default_moduli_are_lexicographically_smallest() {
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1), (2, 4)] {
            let f = Field::new(p, k).unwrap();
            let els: Vec<Fe> = f.elements().collect();
            for &a in &els {
                if !a.is_zero() {
                    assert_eq!(f.pow(a, f.order() as u64 - 1), Fe::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = FieldElement::new(&Field::prime(2).unwrap(), 1).unwrap();
        let b = FieldElement::new(&Field::prime(3).unwrap(), 1).unwrap();
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        let zero = FieldElement::new(a.field(), 0).unwrap();
        assert_eq!(a.div(&zero), Err(Error::DivisionByZero));
    }

    #[test]
    fn textual_form_round_trips() {
        let f = Field::new(2, 3).unwrap();
        let s = f.to_string();
        assert_eq!(s, "GF(2^3)/modulus=[1,1,0,1]");
        assert_eq!(s.parse::<Field>().unwrap(), f);
        assert_eq!("GF(9)".parse::<Field>().unwrap(), Field::new(3, 2).unwrap());
        assert!("GF(2^2)/modulus=[1,0,1]".parse::<Field>().is_err());
        assert!("GF(6)".parse::<Field>().is_err());
    }

    #[test]
    fn element_widths() {
        assert_eq!(Field::prime(2).unwrap().element_bytes(), 1);
        assert_eq!(Field::new(2, 8).unwrap().element_bytes(), 1);
        assert_eq!(Field::new(2, 9).unwrap().element_bytes(), 2);
        assert_eq!(Field::new(3, 2).unwrap().element_bytes(), 1);
    }

    #[test]
    fn polynomial_examples() {
        let f2 = Field::prime(2).unwrap();
        let x1 = Polynomial::new(&f2, vec![Fe(1), Fe(1)]);
        assert!(x1.rem(&x1).unwrap().is_zero());
        assert_eq!(x1.mul(&x1).unwrap(), Polynomial::new(&f2, vec![Fe(1), Fe(0), Fe(1)]));

        let f4 = Field::new(2, 2).unwrap();
        let g = Polynomial::new(&f4, vec![Fe(1), Fe(1), Fe(1)]);
        let alpha = f4.x();
        assert_eq!(g.eval(alpha), Fe::ZERO);
        assert_eq!(g.eval(Fe(1)), Fe(1));
    }

    #[test]
    fn zero_polynomial_degree_is_sentinel() {
        let f = Field::prime(3).unwrap();
        let z = Polynomial::zero(&f);
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(Polynomial::new(&f, vec![Fe(0), Fe(0)]).degree(), Degree::NegInfinity);
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn division_by_zero_polynomial() {
        let f = Field::prime(3).unwrap();
        let p = Polynomial::new(&f, vec![Fe(1), Fe(2)]);
        assert_eq!(p.rem(&Polynomial::zero(&f)), Err(Error::DivisionByZero));
        let g = Polynomial::new(&Field::prime(2).unwrap(), vec![Fe(1)]);
        assert_eq!(p.add(&g), Err(Error::FieldMismatch));
    }

    #[test]
    fn find_irreducible_examples() {
        let f8 = Field::new(2, 3).unwrap();
        let g = find_irreducible(&f8, 1, IrreducibleStrategy::Lexicographic, &[]).unwrap();
        assert_eq!(g, Polynomial::new(&f8, vec![Fe(0), Fe(1)]));

        // with the whole field excluded, no linear polynomial qualifies
        let all: Vec<Fe> = f8.elements().collect();
        assert_eq!(
            find_irreducible(&f8, 1, IrreducibleStrategy::Lexicographic, &all),
            Err(Error::NoIrreducible { degree: 1 })
        );
        // excluding zero skips x and lands on x + 1
        let g = find_irreducible(&f8, 1, IrreducibleStrategy::Lexicographic, &[Fe(0)]).unwrap();
        assert_eq!(g, Polynomial::new(&f8, vec![Fe(1), Fe(1)]));

        let f2 = Field::prime(2).unwrap();
        let g = find_irreducible(&f2, 2, IrreducibleStrategy::Lexicographic, &[]).unwrap();
        assert_eq!(g, Polynomial::new(&f2, vec![Fe(1), Fe(1), Fe(1)]));
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
