//! Exact arithmetic in cyclotomic fields Q(ζ_m).
//!
//! An element is stored in the power basis `1, ζ, …, ζ^(φ(m)-1)` modulo the
//! m-th cyclotomic polynomial, with all coefficients sharing one positive
//! denominator. That representation is unique per field element, so equality
//! and hashing are structural.

mod fp;
mod matrix;
mod serial;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use fp::{is_prime, primitive_root, FpScalar};
pub use matrix::CycMatrix;
pub use serial::Term;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic orders {0} and {1} differ; embed into a common order first")]
    OrderMismatch(u32, u32),
    #[error("cannot embed order {from} into order {to}: {from} does not divide {to}")]
    NotADivisor { from: u32, to: u32 },
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("invalid term: {0}")]
    InvalidTerm(String),
}

/// Arithmetic operation selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn totient(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

static CYCLOTOMIC_POLYS: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();

/// Coefficients (constant term first) of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    let cache = CYCLOTOMIC_POLYS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().expect("poly cache poisoned").get(&m) {
        return Arc::clone(p);
    }
    // x^m - 1 divided by every Φ_d with d | m, d < m.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if !m.is_multiple_of(d) {
            continue;
        }
        let div = cyclotomic_polynomial(d);
        num = exact_poly_div(&num, &div);
    }
    let poly = Arc::new(num);
    cache
        .write()
        .expect("poly cache poisoned")
        .insert(m, Arc::clone(&poly));
    poly
}

fn exact_poly_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = num.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An exact element of Q(ζ_m).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    /// Numerators in the power basis, length φ(order).
    num: Vec<BigInt>,
    /// Positive common denominator, coprime to the numerators as a whole.
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        Cyclotomic {
            order,
            num: vec![BigInt::zero(); totient(order) as usize],
            den: BigInt::one(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u32, value: i64) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = BigInt::from(value);
        z
    }

    pub fn from_rational(order: u32, value: &Rational) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = value.numer().clone();
        z.den = value.denom().clone();
        z.canonicalize_denominator();
        z
    }

    /// ζ_m^k.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let power = k.rem_euclid(order as i64) as u32;
        Self::from_terms(order, [(Rational::one(), power)])
    }

    /// Canonical reduction of `Σ coeff · ζ_m^power`.
    ///
    /// Powers are taken modulo `order`; the result is the unique normal form.
    pub fn from_terms<I>(order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, u32)>,
    {
        assert!(order > 0, "cyclotomic order must be positive");
        let terms: Vec<(Rational, u32)> = terms.into_iter().collect();
        let den = terms
            .iter()
            .fold(BigInt::one(), |acc, (c, _)| acc.lcm(c.denom()));
        let mut raw = vec![BigInt::zero(); order as usize];
        for (c, p) in &terms {
            let scaled = c.numer() * (&den / c.denom());
            raw[(*p % order) as usize] += scaled;
        }
        Self::reduce_raw(order, raw, den)
    }

    /// Reduces an arbitrary-length numerator vector modulo Φ_m.
    fn reduce_raw(order: u32, mut raw: Vec<BigInt>, den: BigInt) -> Self {
        let poly = cyclotomic_polynomial(order);
        let phi = poly.len() - 1;
        if raw.len() > phi {
            for k in (phi..raw.len()).rev() {
                if raw[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut raw[k]);
                for (j, &pj) in poly[..phi].iter().enumerate() {
                    match pj {
                        0 => {}
                        1 => raw[k - phi + j] -= &c,
                        -1 => raw[k - phi + j] += &c,
                        _ => raw[k - phi + j] -= &c * pj,
                    }
                }
            }
            raw.truncate(phi);
        } else {
            raw.resize(phi, BigInt::zero());
        }
        let mut z = Cyclotomic {
            order,
            num: raw,
            den,
        };
        z.canonicalize_denominator();
        z
    }

    fn canonicalize_denominator(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let g = self.num.iter().fold(self.den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coefficients, length φ(order).
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// Same element expressed over Q(ζ_target).
    pub fn embed(&self, target: u32) -> Result<Self, CyclotomicError> {
        if target == 0 {
            return Err(CyclotomicError::ZeroOrder);
        }
        if !target.is_multiple_of(self.order) {
            return Err(CyclotomicError::NotADivisor {
                from: self.order,
                to: target,
            });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let step = (target / self.order) as usize;
        let mut raw = vec![BigInt::zero(); target as usize];
        for (j, c) in self.num.iter().enumerate() {
            raw[j * step] = c.clone();
        }
        Ok(Self::reduce_raw(target, raw, self.den.clone()))
    }

    fn embed_unchecked(&self, target: u32) -> Self {
        self.embed(target).expect("target order is a multiple")
    }

    /// The Galois automorphism ζ ↦ ζ^k; `k` must be coprime to the order.
    pub fn galois(&self, k: u32) -> Self {
        let m = self.order;
        debug_assert_eq!(k.gcd(&m), 1);
        let mut raw = vec![BigInt::zero(); m as usize];
        for (j, c) in self.num.iter().enumerate() {
            let p = ((j as u64 * k as u64) % m as u64) as usize;
            raw[p] += c;
        }
        Self::reduce_raw(m, raw, self.den.clone())
    }

    /// Complex conjugation ζ ↦ ζ^(m-1).
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    /// `x · conj(x)`, a totally real element.
    pub fn abs_squared(&self) -> Self {
        self * &self.conj()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(self.order);
        }
        let mut z = Cyclotomic {
            order: self.order,
            num: self.num.iter().map(|c| c * q.numer()).collect(),
            den: &self.den * q.denom(),
        };
        z.canonicalize_denominator();
        z
    }

    fn mul_same_order(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        if let Some(q) = other.to_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.to_rational() {
            return other.scale(&q);
        }
        let n = self.num.len();
        let mut raw = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Self::reduce_raw(self.order, raw, &self.den * &other.den)
    }

    fn add_same_order(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.order, other.order);
        let sign = |c: &BigInt| if negate { -c } else { c.clone() };
        if self.den == other.den {
            let num: Vec<BigInt> = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a + sign(b))
                .collect();
            let mut z = Cyclotomic {
                order: self.order,
                num,
                den: self.den.clone(),
            };
            z.canonicalize_denominator();
            return z;
        }
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &fa + sign(b) * &fb)
            .collect();
        let mut z = Cyclotomic {
            order: self.order,
            num,
            den,
        };
        z.canonicalize_denominator();
        z
    }

    fn common_order(a: &Self, b: &Self) -> u32 {
        lcm_u32(a.order, b.order)
    }

    /// Multiplicative inverse, by solving `x · y = 1` in the power basis.
    pub fn inverse(&self) -> Result<Self, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(self.order, &q.recip()));
        }
        let n = self.num.len();
        // Column j of the multiplication matrix is x·ζ^j.
        let columns: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                (self * &Self::root_of_unity(self.order, j as i64)).coeffs()
            })
            .collect();
        let mut aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n).map(|j| columns[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or(CyclotomicError::DivisionByZero)?;
            aug.swap(col, pivot);
            let inv = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=n {
                        let delta = &f * &aug[col][c];
                        aug[r][c] -= delta;
                    }
                }
            }
        }
        Ok(Self::from_terms(
            self.order,
            aug.into_iter().enumerate().map(|(i, row)| (row[n].clone(), i as u32)),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CyclotomicError> {
        Ok(self * &other.inverse()?)
    }

    /// Floating-point shadow under ζ_m ↦ exp(2πi/m).
    pub fn to_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let m = self.order as f64;
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let angle = 2.0 * std::f64::consts::PI * j as f64 / m;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, angle)
            })
            .sum()
    }

    /// Image under the reduction map ζ_m ↦ `root` in F_p.
    ///
    /// `root` must be a primitive m-th root of unity mod p. Returns `None`
    /// when p divides the denominator.
    pub fn reduce_mod_p(&self, p: u64, root: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let den = self.den.mod_floor(&pb).to_u64()?;
        if den == 0 {
            return None;
        }
        let mut acc = FpScalar::new(0, p);
        let mut power = FpScalar::new(1, p);
        let r = FpScalar::new(root, p);
        for c in &self.num {
            let cm = c.mod_floor(&pb).to_u64().expect("reduced below p");
            acc = acc + FpScalar::new(cm, p) * power;
            power = power * r;
        }
        Some((acc * FpScalar::new(den, p).inv()?).value())
    }
}

/// Exact field arithmetic on operands of equal order.
pub fn arith(x: &Cyclotomic, y: &Cyclotomic, op: ArithOp) -> Result<Cyclotomic, CyclotomicError> {
    if x.order != y.order {
        return Err(CyclotomicError::OrderMismatch(x.order, y.order));
    }
    Ok(match op {
        ArithOp::Add => x.add_same_order(y, false),
        ArithOp::Sub => x.add_same_order(y, true),
        ArithOp::Mul => x.mul_same_order(y),
        ArithOp::Div => x.checked_div(y)?,
    })
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.order == rhs.order {
            return self.add_same_order(rhs, false);
        }
        let m = Cyclotomic::common_order(self, rhs);
        self.embed_unchecked(m)
            .add_same_order(&rhs.embed_unchecked(m), false)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.order == rhs.order {
            return self.add_same_order(rhs, true);
        }
        let m = Cyclotomic::common_order(self, rhs);
        self.embed_unchecked(m)
            .add_same_order(&rhs.embed_unchecked(m), true)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.order == rhs.order {
            return self.mul_same_order(rhs);
        }
        let m = Cyclotomic::common_order(self, rhs);
        self.embed_unchecked(m)
            .mul_same_order(&rhs.embed_unchecked(m))
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order: by field order, then coefficientwise as rationals.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&other.order).then_with(|| {
            for (a, b) in self.num.iter().zip(&other.num) {
                let ord = (a * &other.den).cmp(&(b * &self.den));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match j {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "E({})^{}", self.order, j)?,
                _ => write!(f, "{a}*E({})^{}", self.order, j)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.order, self)
    }
}
