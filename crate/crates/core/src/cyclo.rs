//! Exact arithmetic in the cyclotomic field Q(ζ_m).
//!
//! A scalar is stored as the unique residue of a rational polynomial modulo
//! the m-th cyclotomic polynomial, so it has exactly φ(m) coefficients in the
//! power basis 1, ζ, ζ², … and equality is coefficient-wise.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {0} does not divide {1}")]
    NotDivisible(u32, u32),
    #[error("bad scalar: {0}")]
    Parse(String),
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// Integer coefficients of Φ_n, lowest degree first.
///
/// Computed by dividing x^n − 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "conductor must be positive");
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        num = exact_div_monic(&num, &cyclotomic_cached(d).poly);
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    q
}

struct Field {
    phi: usize,
    /// Φ_m, monic, lowest degree first.
    poly: Vec<BigInt>,
}

fn registry() -> &'static RwLock<HashMap<u32, Arc<Field>>> {
    static REG: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cyclotomic_cached(m: u32) -> Arc<Field> {
    if let Some(f) = registry().read().unwrap().get(&m) {
        return f.clone();
    }
    let poly = cyclotomic_poly(m);
    let f = Arc::new(Field { phi: poly.len() - 1, poly });
    registry().write().unwrap().entry(m).or_insert(f).clone()
}

/// Degree of Q(ζ_m) over Q.
pub fn field_degree(m: u32) -> usize {
    cyclotomic_cached(m).phi
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloScalar {
    m: u32,
    c: Vec<BigRational>,
}

fn reduce(poly: &mut Vec<BigRational>, f: &Field) {
    let phi = f.phi;
    while poly.len() > phi {
        let top = poly.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = poly.len() - phi;
        for (j, pj) in f.poly.iter().enumerate().take(phi) {
            if !pj.is_zero() {
                poly[shift + j] -= &top * BigRational::from_integer(pj.clone());
            }
        }
    }
    while poly.len() < phi {
        poly.push(BigRational::zero());
    }
}

impl CycloScalar {
    pub fn zero(m: u32) -> Self {
        let phi = field_degree(m);
        CycloScalar { m, c: vec![BigRational::zero(); phi] }
    }

    pub fn one(m: u32) -> Self {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: u32, v: i64) -> Self {
        Self::from_rational(m, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_frac(m: u32, p: i64, q: i64) -> Self {
        Self::from_rational(m, BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(m: u32, r: BigRational) -> Self {
        let mut s = Self::zero(m);
        s.c[0] = r;
        s
    }

    /// Builds a scalar from power-basis coefficients of any length, reducing
    /// modulo Φ_m.
    pub fn from_poly(m: u32, mut coeffs: Vec<BigRational>) -> Self {
        let f = cyclotomic_cached(m);
        reduce(&mut coeffs, &f);
        CycloScalar { m, c: coeffs }
    }

    /// Builds a scalar from exactly φ(m) coefficients, which must already be
    /// a reduced residue.
    pub fn from_coeffs(m: u32, coeffs: Vec<BigRational>) -> Result<Self, CycloError> {
        let phi = field_degree(m);
        if coeffs.len() != phi {
            return Err(CycloError::Parse(format!(
                "expected {} coefficients for conductor {}, got {}",
                phi,
                m,
                coeffs.len()
            )));
        }
        Ok(CycloScalar { m, c: coeffs })
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// The rational value when the scalar lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), CycloError> {
        if self.m != other.m {
            Err(CycloError::ConductorMismatch(self.m, other.m))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        Ok(self * &other.inv()?)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.m, r.recip()));
        }
        let f = cyclotomic_cached(self.m);
        let modulus: Vec<BigRational> =
            f.poly.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let u = poly_inverse_mod(&self.c, &modulus);
        Ok(Self::from_poly(self.m, u))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloScalar { m: self.m, c: self.c.iter().map(|x| x * r).collect() }
    }

    pub fn pow(&self, e: i64) -> Result<Self, CycloError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.m);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Re-expresses the scalar in Q(ζ_{m'}) for a multiple m' of m, using
    /// ζ_m = ζ_{m'}^{m'/m}.
    pub fn embed(&self, target: u32) -> Result<Self, CycloError> {
        if target % self.m != 0 {
            return Err(CycloError::NotDivisible(self.m, target));
        }
        if target == self.m {
            return Ok(self.clone());
        }
        let step = (target / self.m) as usize;
        let mut poly = vec![BigRational::zero(); step * self.c.len().max(1)];
        for (i, ci) in self.c.iter().enumerate() {
            poly[i * step] = ci.clone();
        }
        Ok(Self::from_poly(target, poly))
    }

    /// Smallest k ≥ 1 with self^k = 1, searched up to 2m.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self.clone();
        for k in 1..=(2 * self.m as u64) {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Coefficients as "p/q" strings in the power basis.
    pub fn to_strings(&self) -> Vec<String> {
        self.c.iter().map(|r| format!("{}/{}", r.numer(), r.denom())).collect()
    }

    /// Parses power-basis coefficients given as "p/q" or "p" strings.  A
    /// single string is accepted as a rational for any conductor.
    pub fn from_strings(m: u32, items: &[String]) -> Result<Self, CycloError> {
        let parsed = items
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        if parsed.len() == 1 {
            return Ok(Self::from_rational(m, parsed.into_iter().next().unwrap()));
        }
        Self::from_coeffs(m, parsed)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, CycloError> {
    let t = s.trim();
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| CycloError::Parse(s.to_string()))?;
    let q: BigInt = q.parse().map_err(|_| CycloError::Parse(s.to_string()))?;
    if q.is_zero() {
        return Err(CycloError::Parse(format!("zero denominator in {s}")));
    }
    Ok(BigRational::new(p, q))
}

/// ζ_m^k in canonical form.
pub fn root_of_unity(m: u32, k: i64) -> CycloScalar {
    assert!(m >= 1, "conductor must be positive");
    let e = k.rem_euclid(m as i64) as usize;
    let mut poly = vec![BigRational::zero(); e + 1];
    poly[e] = BigRational::one();
    CycloScalar::from_poly(m, poly)
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().map_or(false, |x| x.is_zero()) {
        p.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if !c.is_zero() {
            for j in 0..=db {
                let t = &c * &b[j];
                r[i + j] -= t;
            }
        }
        q[i] = c;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn poly_inverse_mod(a: &[BigRational], modulus: &[BigRational]) -> Vec<BigRational> {
    // Invariant: s_i * a ≡ r_i (mod modulus).
    let mut r0 = modulus.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is a nonzero constant since Φ_m is irreducible.
    let c = r0[0].clone();
    s0.iter().map(|x| x / &c).collect()
}

impl<'a> Add<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn add(self, o: &CycloScalar) -> CycloScalar {
        assert_eq!(self.m, o.m, "conductor mismatch");
        CycloScalar { m: self.m, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn sub(self, o: &CycloScalar) -> CycloScalar {
        assert_eq!(self.m, o.m, "conductor mismatch");
        CycloScalar { m: self.m, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
}

impl<'a> Mul<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn mul(self, o: &CycloScalar) -> CycloScalar {
        assert_eq!(self.m, o.m, "conductor mismatch");
        if self.c.len() == 1 {
            return CycloScalar { m: self.m, c: vec![&self.c[0] * &o.c[0]] };
        }
        if let Some(r) = o.as_rational() {
            return if r.is_one() { self.clone() } else { self.scale(r) };
        }
        if let Some(r) = self.as_rational() {
            return if r.is_one() { o.clone() } else { o.scale(r) };
        }
        CycloScalar::from_poly(self.m, poly_mul(&self.c, &o.c))
    }
}

impl Add for CycloScalar {
    type Output = CycloScalar;
    fn add(self, o: CycloScalar) -> CycloScalar {
        &self + &o
    }
}

impl Sub for CycloScalar {
    type Output = CycloScalar;
    fn sub(self, o: CycloScalar) -> CycloScalar {
        &self - &o
    }
}

impl Mul for CycloScalar {
    type Output = CycloScalar;
    fn mul(self, o: CycloScalar) -> CycloScalar {
        &self * &o
    }
}

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, o: &CycloScalar) {
        assert_eq!(self.m, o.m, "conductor mismatch");
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, o: &CycloScalar) {
        assert_eq!(self.m, o.m, "conductor mismatch");
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar { m: self.m, c: self.c.iter().map(|a| -a).collect() }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                1 if a.is_one() => write!(f, "z")?,
                1 => write!(f, "{}*z", a)?,
                _ if a.is_one() => write!(f, "z^{}", i)?,
                _ => write!(f, "{}*z^{}", a, i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        let as_i64 = |v: Vec<BigInt>| v.iter().map(|x| x.try_into().unwrap()).collect::<Vec<i64>>();
        assert_eq!(as_i64(cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_poly(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_poly(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(15).len() - 1, 8);
    }

    #[test]
    fn i_squared() {
        let i = root_of_unity(4, 1);
        assert_eq!(&i * &i, CycloScalar::from_int(4, -1));
        assert!((&(&i * &i) + &CycloScalar::one(4)).is_zero());
    }

    #[test]
    fn inverse_of_one_plus_zeta3() {
        let z = root_of_unity(3, 1);
        let a = &CycloScalar::one(3) + &z;
        assert!((&a * &(-&z)).is_one());
        assert_eq!(CycloScalar::one(3).checked_div(&a).unwrap(), -&z);
    }

    #[test]
    fn small_roots() {
        assert_eq!(root_of_unity(2, 1), CycloScalar::from_int(2, -1));
        assert_eq!(root_of_unity(6, 1).multiplicative_order(), Some(6));
        assert!(root_of_unity(5, 0).is_one());
    }

    #[test]
    fn errors() {
        let a = CycloScalar::one(3);
        let b = CycloScalar::one(4);
        assert_eq!(a.checked_add(&b), Err(CycloError::ConductorMismatch(3, 4)));
        assert_eq!(a.checked_div(&CycloScalar::zero(3)), Err(CycloError::DivisionByZero));
    }

    #[test]
    fn embedding() {
        let i = root_of_unity(4, 1);
        let e = i.embed(8).unwrap();
        assert_eq!(e, root_of_unity(8, 2));
        assert!(root_of_unity(3, 1).embed(4).is_err());
    }

    #[test]
    fn string_round_trip() {
        let x = &root_of_unity(5, 3) + &CycloScalar::from_frac(5, -2, 7);
        let s = x.to_strings();
        assert_eq!(CycloScalar::from_strings(5, &s).unwrap(), x);
    }
}
