//! Exact coefficient fields: GF(p), GF(p^k) and the rationals.
//!
//! Finite field elements are encoded as integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_i` is the coefficient of `w^i` in the reduced polynomial representative.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest finite field order the workbench will construct.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    PrimeFinite,
    ExtensionFinite,
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub characteristic: u64,
    #[serde(default = "one_u32")]
    pub degree: u32,
    /// Coefficients of the monic modulus, constant term first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

fn one_u32() -> u32 {
    1
}

impl FieldSpec {
    pub fn gf(p: u64) -> FieldSpec {
        FieldSpec { kind: FieldKind::PrimeFinite, characteristic: p, degree: 1, modulus: None }
    }

    pub fn gf_ext(p: u64, k: u32) -> FieldSpec {
        if k == 1 {
            return FieldSpec::gf(p);
        }
        FieldSpec { kind: FieldKind::ExtensionFinite, characteristic: p, degree: k, modulus: None }
    }

    pub fn rational() -> FieldSpec {
        FieldSpec { kind: FieldKind::Rational, characteristic: 0, degree: 1, modulus: None }
    }

    /// Parses the short names `GF(4)`, `GF(2^3)`, `Q`.
    pub fn parse_short(s: &str) -> Result<FieldSpec> {
        let t = s.trim();
        if t == "Q" || t.eq_ignore_ascii_case("rational") {
            return Ok(FieldSpec::rational());
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::input(format!("unrecognised field name {s:?}")))?;
        let (p, k) = if let Some((a, b)) = inner.split_once('^') {
            (parse_u64(a)?, parse_u64(b)? as u32)
        } else {
            let q = parse_u64(inner)?;
            prime_power(q).ok_or_else(|| Error::input(format!("{q} is not a prime power")))?
        };
        Ok(FieldSpec::gf_ext(p, k))
    }

    pub fn short_name(&self) -> String {
        match self.kind {
            FieldKind::Rational => "Q".into(),
            _ => format!("GF({})", self.characteristic.pow(self.degree)),
        }
    }
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim().parse::<u64>().map_err(|_| Error::input(format!("bad integer {s:?}")))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, k)` with `q = p^k` if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// The operations every coefficient field provides.
pub trait Field: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    /// `None` for infinite fields.
    fn order(&self) -> Option<u64>;
    /// All elements, zero first, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn spec(&self) -> FieldSpec;

    /// True when this is GF(2) and elements are the integers 0 and 1.
    fn is_gf2(&self) -> bool {
        false
    }
    /// Element as `0`/`1` when `is_gf2`.
    fn to_bit(&self, _a: &Self::Elem) -> bool {
        unreachable!("to_bit on a field other than GF(2)")
    }
    fn from_bit(&self, b: bool) -> Self::Elem {
        if b {
            self.one()
        } else {
            self.zero()
        }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }
    /// `a + b*c`, the elimination workhorse.
    fn add_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(b, c))
    }
}

/// All `x` with `x^n = a`.
pub fn nth_roots<F: Field>(field: &F, a: &F::Elem, n: u64) -> Vec<F::Elem> {
    assert!(n >= 1, "nth_roots needs n >= 1");
    match field.elements() {
        Some(all) => all.into_iter().filter(|x| field.pow(x, n) == *a).collect(),
        // rational case: perfect power test on numerator and denominator
        None => rational_roots(field, a, n),
    }
}

fn rational_roots<F: Field>(field: &F, a: &F::Elem, n: u64) -> Vec<F::Elem> {
    let s = field.format(a);
    let r = match parse_rational(&s) {
        Ok(r) => r,
        Err(_) => return vec![],
    };
    if r.is_zero() {
        return vec![field.zero()];
    }
    let n32 = n as u32;
    let neg = r.is_negative();
    if neg && n % 2 == 0 {
        return vec![];
    }
    let num = r.numer().abs();
    let den = r.denom().abs();
    let rn = num.nth_root(n32);
    let rd = den.nth_root(n32);
    if rn.pow(n32) != num || rd.pow(n32) != den {
        return vec![];
    }
    let mut root = BigRational::new(rn, rd);
    if neg {
        root = -root;
    }
    let mut out = vec![field.parse(&format_rational(&root)).expect("root formats")];
    if n % 2 == 0 {
        out.insert(0, field.parse(&format_rational(&-root)).expect("root formats"));
    }
    out
}

// ---------------------------------------------------------------------------
// Finite fields

#[derive(Debug)]
struct FiniteInner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..2(q-1)
    exp: Vec<u32>,
    /// log[x] for x != 0
    log: Vec<u32>,
}

/// GF(p^k) for `p^k <= 2^16`, multiplication through log/exp tables.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<FiniteInner>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.k)
    }
}

/// The documented default modulus for GF(p^k).
pub fn default_modulus(p: u64, k: u32) -> Vec<u64> {
    match (p, k) {
        (2, 2) => vec![1, 1, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (2, 4) => vec![1, 1, 0, 0, 1],
        (3, 2) => vec![1, 0, 1],
        _ => {
            // first monic irreducible in increasing integer encoding
            let q = p.pow(k);
            for code in 0..q {
                let mut coeffs: Vec<u64> = (0..k).map(|i| (code / p.pow(i)) % p).collect();
                coeffs.push(1);
                if poly_irreducible(&coeffs, p) {
                    return coeffs;
                }
            }
            unreachable!("irreducible polynomials exist in every degree")
        }
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let top = *r.last().unwrap() % p;
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - f * c % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut r = 1;
    for _ in 0..p - 2 {
        r = r * a % p;
    }
    r
}

/// Trial division by all monic polynomials of degree `1..=deg/2`.
pub fn poly_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg == 0 || m[deg] % p == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut f: Vec<u64> = (0..d).map(|i| (code / p.pow(i as u32)) % p).collect();
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(spec: &FieldSpec) -> Result<FiniteField> {
        let p = spec.characteristic;
        if !is_prime(p) {
            return Err(Error::input(format!("characteristic {p} is not prime")));
        }
        let k = spec.degree.max(1);
        let q =
            p.checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER).ok_or_else(|| Error::input(format!("field order {p}^{k} exceeds 2^16")))?;
        let modulus: Vec<u64> = if k == 1 {
            vec![0, 1]
        } else {
            let m = spec.modulus.clone().unwrap_or_else(|| default_modulus(p, k));
            if m.len() != k as usize + 1 || m[k as usize] != 1 {
                return Err(Error::input(format!("modulus must be monic of degree {k}")));
            }
            if m.iter().any(|&c| c >= p) {
                return Err(Error::input("modulus coefficients must be reduced mod p"));
            }
            if !poly_irreducible(&m, p) {
                return Err(Error::input(format!("modulus {m:?} is reducible over GF({p})")));
            }
            m
        };
        let (p32, q32) = (p as u32, q as u32);
        let modulus32: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();
        // multiply by w: shift digits and reduce
        let mul_slow = |a: u32, b: u32| -> u32 {
            let ad = digits(a, p32, k);
            let bd = digits(b, p32, k);
            let mut prod = vec![0u64; 2 * k as usize];
            for (i, &x) in ad.iter().enumerate() {
                for (j, &y) in bd.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + (x as u64) * (y as u64)) % p;
                }
            }
            let r = if k == 1 { vec![prod[0] % p] } else { poly_rem(&prod, &modulus, p) };
            undigits(&r.iter().map(|&c| c as u32).collect::<Vec<_>>(), p32)
        };
        // find a primitive element
        let mut exp = Vec::new();
        let mut log = vec![0u32; q as usize];
        for g in 2.min(q32 - 1)..q32 {
            let g = if q32 == 2 { 1 } else { g };
            exp.clear();
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..q32 - 1 {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = mul_slow(x, g);
            }
            if ok && x == 1 {
                break;
            }
        }
        assert_eq!(exp.len() as u32, q32 - 1, "no primitive element found");
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        let ext: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
        Ok(FiniteField { inner: Arc::new(FiniteInner { p: p32, k, q: q32, modulus: modulus32, exp: ext, log }) })
    }

    pub fn gf(q: u64) -> FiniteField {
        let (p, k) = prime_power(q).expect("prime power");
        FiniteField::new(&FieldSpec::gf_ext(p, k)).expect("valid field")
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// The class of `w` (a primitive-polynomial root for the default moduli).
    pub fn generator(&self) -> u32 {
        if self.inner.k == 1 {
            self.inner.exp[1]
        } else {
            self.inner.p
        }
    }
}

fn digits(mut a: u32, p: u32, k: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(k as usize);
    for _ in 0..k {
        d.push(a % p);
        a /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Field for FiniteField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let inner = &*self.inner;
        if inner.p == 2 {
            return a ^ b;
        }
        if inner.k == 1 {
            let s = a + b;
            return if s >= inner.p { s - inner.p } else { s };
        }
        let (mut x, mut y, mut out, mut place) = (*a, *b, 0, 1);
        for _ in 0..inner.k {
            out += ((x % inner.p + y % inner.p) % inner.p) * place;
            x /= inner.p;
            y /= inner.p;
            place *= inner.p;
        }
        out
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        let inner = &*self.inner;
        if inner.p == 2 {
            return *a;
        }
        if inner.k == 1 {
            return if *a == 0 { 0 } else { inner.p - a };
        }
        let (mut x, mut out, mut place) = (*a, 0, 1);
        for _ in 0..inner.k {
            out += ((inner.p - x % inner.p) % inner.p) * place;
            x /= inner.p;
            place *= inner.p;
        }
        out
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        inner.exp[(inner.log[*a as usize] + inner.log[*b as usize]) as usize]
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let inner = &*self.inner;
        let l = inner.log[*a as usize];
        Some(inner.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize])
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.inner.p as i64) as u32
    }
    fn characteristic(&self) -> u64 {
        self.inner.p as u64
    }
    fn order(&self) -> Option<u64> {
        Some(self.inner.q as u64)
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.inner.q).collect())
    }
    fn format(&self, a: &u32) -> String {
        let inner = &*self.inner;
        if inner.k == 1 {
            return a.to_string();
        }
        let d = digits(*a, inner.p, inner.k);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            let var = match i {
                0 => String::new(),
                1 => "w".into(),
                _ => format!("w^{i}"),
            };
            terms.push(format!("{coef}{var}"));
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
    fn parse(&self, s: &str) -> Result<u32> {
        let inner = &*self.inner;
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::input("empty field element"));
        }
        if inner.k == 1 {
            let n: i64 = t.parse().map_err(|_| Error::input(format!("bad element {s:?} for GF({})", inner.p)))?;
            return Ok(self.from_i64(n));
        }
        let mut d = vec![0u32; inner.k as usize];
        for term in t.split('+') {
            let (coef, pw) = if let Some(pos) = term.find('w') {
                let c = &term[..pos];
                let c = if c.is_empty() { 1 } else { c.parse::<u32>().map_err(|_| Error::input(format!("bad term {term:?}")))? };
                let rest = &term[pos + 1..];
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').and_then(|x| x.parse::<u32>().ok()).ok_or_else(|| Error::input(format!("bad term {term:?}")))?
                };
                (c, e)
            } else {
                (term.parse::<u32>().map_err(|_| Error::input(format!("bad term {term:?}")))?, 0)
            };
            if pw >= inner.k {
                // reduce w^pw through the multiplicative structure
                let wp = self.pow(&self.generator(), pw as u64);
                let mut acc = undigits(&d, inner.p);
                for _ in 0..coef % inner.p {
                    acc = self.add(&acc, &wp);
                }
                d = digits(acc, inner.p, inner.k);
            } else {
                d[pw as usize] = (d[pw as usize] + coef) % inner.p;
            }
        }
        Ok(undigits(&d, inner.p))
    }
    fn spec(&self) -> FieldSpec {
        let inner = &*self.inner;
        if inner.k == 1 {
            FieldSpec::gf(inner.p as u64)
        } else {
            FieldSpec {
                kind: FieldKind::ExtensionFinite,
                characteristic: inner.p as u64,
                degree: inner.k,
                modulus: Some(inner.modulus.iter().map(|&c| c as u64).collect()),
            }
        }
    }
    fn is_gf2(&self) -> bool {
        self.inner.q == 2
    }
    fn to_bit(&self, a: &u32) -> bool {
        *a == 1
    }
}

// ---------------------------------------------------------------------------
// Rationals

#[derive(Clone, Debug, Default)]
pub struct Rationals;

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::input(format!("bad rational {s:?}"));
    if let Some((a, b)) = t.split_once('/') {
        let n: BigInt = a.trim().parse().map_err(|_| bad())?;
        let d: BigInt = b.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = t.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn format(&self, a: &BigRational) -> String {
        format_rational(a)
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        parse_rational(s)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::rational()
    }
}

/// A field chosen at run time from a [`FieldSpec`].
#[derive(Clone, Debug)]
pub enum AnyField {
    Finite(FiniteField),
    Rational(Rationals),
}

pub fn field_make(spec: &FieldSpec) -> Result<AnyField> {
    match spec.kind {
        FieldKind::Rational => {
            if spec.characteristic != 0 {
                return Err(Error::input("rational field must have characteristic 0"));
            }
            Ok(AnyField::Rational(Rationals))
        }
        FieldKind::PrimeFinite => {
            if spec.degree != 1 {
                return Err(Error::input("prime field must have degree 1"));
            }
            Ok(AnyField::Finite(FiniteField::new(spec)?))
        }
        FieldKind::ExtensionFinite => Ok(AnyField::Finite(FiniteField::new(spec)?)),
    }
}

/// Small integer for reports; `None` if the value does not fit.
pub fn rational_to_i64(r: &BigRational) -> Option<i64> {
    r.is_integer().then(|| r.numer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<FiniteField> {
        [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64].iter().map(|&q| FiniteField::gf(q)).collect()
    }

    #[test]
    fn gf2_basics() {
        let f = FiniteField::gf(2);
        assert_eq!(f.add(&1, &1), 0);
        assert_eq!(f.elements().unwrap(), vec![0, 1]);
    }

    #[test]
    fn gf4_omega_squared() {
        let f = FiniteField::gf(4);
        let w = f.parse("w").unwrap();
        assert_eq!(f.format(&f.mul(&w, &w)), "w+1");
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn gf4_roots_oracle() {
        let f = FiniteField::gf(4);
        let w = f.parse("w").unwrap();
        let fmt = |v: Vec<u32>| v.iter().map(|x| f.format(x)).collect::<Vec<_>>();
        assert_eq!(fmt(nth_roots(&f, &1, 4)), vec!["1"]);
        assert_eq!(fmt(nth_roots(&f, &w, 2)), vec!["w+1"]);
        assert_eq!(fmt(nth_roots(&f, &1, 3)), vec!["1", "w", "w+1"]);
        for x in f.elements().unwrap() {
            assert_eq!(nth_roots(&f, &x, 2).len(), 1);
        }
    }

    #[test]
    fn axioms_exhaustive() {
        for f in all_fields().into_iter().filter(|f| f.order().unwrap() <= 64) {
            let els = f.elements().unwrap();
            for a in &els {
                assert_eq!(f.add(a, &f.neg(a)), 0);
                if *a != 0 {
                    assert_eq!(f.mul(a, &f.inv(a).unwrap()), 1);
                }
                for b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in els.iter().step_by(if els.len() > 16 { 5 } else { 1 }) {
                        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                        assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_automorphism() {
        for f in all_fields() {
            let p = f.characteristic();
            let els = f.elements().unwrap();
            let img: std::collections::BTreeSet<u32> = els.iter().map(|x| f.pow(x, p)).collect();
            assert_eq!(img.len(), els.len());
            for a in &els {
                for b in els.iter().take(9) {
                    assert_eq!(f.pow(&f.add(a, b), p), f.add(&f.pow(a, p), &f.pow(b, p)));
                }
            }
        }
    }

    #[test]
    fn format_parse_roundtrip() {
        for f in all_fields() {
            for x in f.elements().unwrap() {
                assert_eq!(f.parse(&f.format(&x)).unwrap(), x, "{f:?} {x}");
            }
        }
        let f8 = FiniteField::gf(8);
        assert_eq!(f8.format(&f8.parse("w^3").unwrap()), "w+1");
    }

    #[test]
    fn reducible_modulus_rejected() {
        let spec = FieldSpec { kind: FieldKind::ExtensionFinite, characteristic: 2, degree: 2, modulus: Some(vec![1, 0, 1]) };
        assert!(FiniteField::new(&spec).is_err());
        assert!(field_make(&FieldSpec::gf(4)).is_err());
        assert!(FiniteField::new(&FieldSpec::gf(6)).is_err());
    }

    #[test]
    fn short_names() {
        assert_eq!(FieldSpec::parse_short("GF(8)").unwrap(), FieldSpec::gf_ext(2, 3));
        assert_eq!(FieldSpec::parse_short("GF(3)").unwrap(), FieldSpec::gf(3));
        assert!(FieldSpec::parse_short("GF(6)").is_err());
        assert_eq!(FieldSpec::parse_short("Q").unwrap().kind, FieldKind::Rational);
    }

    #[test]
    fn rational_arithmetic_and_roots() {
        let q = Rationals;
        let a = q.parse("3/4").unwrap();
        let b = q.parse("-1/4").unwrap();
        assert_eq!(q.format(&q.add(&a, &b)), "1/2");
        assert_eq!(q.format(&q.inv(&a).unwrap()), "4/3");
        let r = nth_roots(&q, &q.parse("4/9").unwrap(), 2);
        assert_eq!(r.iter().map(|x| q.format(x)).collect::<Vec<_>>(), vec!["-2/3", "2/3"]);
        assert!(nth_roots(&q, &q.parse("2").unwrap(), 2).is_empty());
        assert_eq!(nth_roots(&q, &q.parse("-8").unwrap(), 3).len(), 1);
    }

    #[test]
    fn char2_freshman() {
        for q in [2u64, 4, 8, 16] {
            let f = FiniteField::gf(q);
            for a in f.elements().unwrap() {
                for b in f.elements().unwrap() {
                    let s = f.add(&a, &b);
                    assert_eq!(f.mul(&s, &s), f.add(&f.mul(&a, &a), &f.mul(&b, &b)));
                }
            }
        }
    }
}
