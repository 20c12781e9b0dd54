use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{bareiss_solve, field, CycloField};
use super::Rat;
use crate::error::{Error, Result};

/// Exact element of the cyclotomic field Q(ζ_m).
///
/// Stored as an integer coefficient vector on the power basis
/// 1, ζ, …, ζ^{φ(m)-1} (reduced modulo Φ_m) over one positive common
/// denominator, kept in lowest terms, so equality is a plain compare.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl CycloNum {
    fn from_parts(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> CycloNum {
        let mut out = CycloNum { field, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        } else if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero(m: u32) -> CycloNum {
        let f = field(m);
        let phi = f.phi;
        CycloNum {
            field: f,
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        }
    }

    pub fn one(m: u32) -> CycloNum {
        CycloNum::from_int(m, 1)
    }

    pub fn from_int(m: u32, n: i64) -> CycloNum {
        let mut z = CycloNum::zero(m);
        z.num[0] = n.into();
        z
    }

    pub fn from_rat(m: u32, r: &Rat) -> CycloNum {
        let mut z = CycloNum::zero(m);
        z.num[0] = r.numer().clone();
        z.den = r.denom().clone();
        z
    }

    /// ζ_m^k for any integer k, with m >= 1.
    pub fn root(m: u32, k: i64) -> CycloNum {
        let f = field(m);
        let e = k.rem_euclid(m as i64) as usize;
        let mut num = vec![BigInt::zero(); f.phi];
        for &(i, c) in f.power(e) {
            num[i] = c.into();
        }
        CycloNum {
            field: f,
            num,
            den: BigInt::one(),
        }
    }

    /// ζ_m^k, validating the conductor.
    pub fn make(m: i64, k: i64) -> Result<CycloNum> {
        if m < 1 || m > u32::MAX as i64 {
            return Err(Error::InvalidConductor(m));
        }
        Ok(CycloNum::root(m as u32, k))
    }

    /// Builds an element from rational coefficients on the power basis; the
    /// vector may be longer than φ(m), extra powers are reduced.
    pub fn from_coeffs(m: u32, coeffs: &[Rat]) -> CycloNum {
        let f = field(m);
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.numer() * (&den / c.denom());
            for &(i, r) in f.power(k) {
                num[i] += &scaled * r;
            }
        }
        CycloNum::from_parts(f, num, den)
    }

    pub fn conductor(&self) -> u32 {
        self.field.m
    }

    /// Integer numerators on the power basis and the common denominator.
    pub fn raw_parts(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    /// Multiplication by ζ^k, a shift followed by reduction.
    pub fn mul_root(&self, k: i64) -> CycloNum {
        let m = self.field.m as i64;
        let shift = k.rem_euclid(m) as usize;
        let mut num = vec![BigInt::zero(); self.field.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(l, r) in self.field.power(i + shift) {
                num[l] += c * r;
            }
        }
        CycloNum {
            field: self.field.clone(),
            num,
            den: self.den.clone(),
        }
    }

    /// Rational coefficients on the reduced power basis, length φ(m).
    pub fn coeffs(&self) -> Vec<Rat> {
        self.num
            .iter()
            .map(|c| Rat::from_big(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it lies in Q.
    pub fn to_rational(&self) -> Option<Rat> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rat::from_big(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_same(&self, other: &CycloNum) -> Result<()> {
        if self.field.m != other.field.m {
            Err(Error::ConductorMismatch(self.field.m, other.field.m))
        } else {
            Ok(())
        }
    }

    pub fn arith(&self, other: &CycloNum, op: ArithOp) -> Result<CycloNum> {
        self.check_same(other)?;
        match op {
            ArithOp::Add => Ok(self.add_unchecked(other, false)),
            ArithOp::Sub => Ok(self.add_unchecked(other, true)),
            ArithOp::Mul => Ok(self.mul_unchecked(other)),
            ArithOp::Div => Ok(self.mul_unchecked(&other.inv()?)),
        }
    }

    pub fn try_add(&self, other: &CycloNum) -> Result<CycloNum> {
        self.arith(other, ArithOp::Add)
    }

    pub fn try_sub(&self, other: &CycloNum) -> Result<CycloNum> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn try_mul(&self, other: &CycloNum) -> Result<CycloNum> {
        self.arith(other, ArithOp::Mul)
    }

    pub fn try_div(&self, other: &CycloNum) -> Result<CycloNum> {
        self.arith(other, ArithOp::Div)
    }

    fn add_unchecked(&self, other: &CycloNum, subtract: bool) -> CycloNum {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let den = self.den.lcm(&other.den);
            let fa = &den / &self.den;
            let fb = &den / &other.den;
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let (x, y) = (a * &fa, b * &fb);
                    if subtract {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect();
            (num, den)
        };
        CycloNum::from_parts(self.field.clone(), num, den)
    }

    fn mul_poly(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let phi = self.field.phi;
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = conv.drain(..phi).collect();
        for (k, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, r) in self.field.power(phi + k) {
                out[i] += &c * r;
            }
        }
        out
    }

    fn mul_unchecked(&self, other: &CycloNum) -> CycloNum {
        if self.is_zero() || other.is_zero() {
            return CycloNum::zero(self.field.m);
        }
        let num = self.mul_poly(&self.num, &other.num);
        CycloNum::from_parts(self.field.clone(), num, &self.den * &other.den)
    }

    pub fn scale(&self, r: &Rat) -> CycloNum {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        CycloNum::from_parts(self.field.clone(), num, &self.den * r.denom())
    }

    pub fn scale_int(&self, n: i64) -> CycloNum {
        let n = BigInt::from(n);
        let num = self.num.iter().map(|c| c * &n).collect();
        CycloNum::from_parts(self.field.clone(), num, self.den.clone())
    }

    /// Multiplicative inverse; solves the φ(m)×φ(m) integer system for
    /// multiplication by the numerator polynomial.
    pub fn inv(&self) -> Result<CycloNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi = self.field.phi;
        if let Some(r) = self.to_rational() {
            return Ok(CycloNum::from_rat(self.field.m, &r.recip().unwrap()));
        }
        // column k holds num * x^k mod Φ_m
        let mut cols = Vec::with_capacity(phi);
        let mut basis = vec![BigInt::zero(); phi];
        for k in 0..phi {
            basis.iter_mut().for_each(|b| *b = BigInt::zero());
            basis[k] = BigInt::one();
            cols.push(self.mul_poly(&self.num, &basis));
        }
        let matrix: Vec<Vec<BigInt>> = (0..phi)
            .map(|i| (0..phi).map(|k| cols[k][i].clone()).collect())
            .collect();
        let mut rhs = vec![BigInt::zero(); phi];
        rhs[0] = BigInt::one();
        let (z, det) = bareiss_solve(matrix, rhs).ok_or_else(|| {
            Error::Internal("nonzero cyclotomic element is not invertible".into())
        })?;
        let num = z.into_iter().map(|c| c * &self.den).collect();
        Ok(CycloNum::from_parts(self.field.clone(), num, det))
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> CycloNum {
        let m = self.field.m as usize;
        let mut num = vec![BigInt::zero(); self.field.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, r) in self.field.power((m - k % m) % m) {
                num[i] += c * r;
            }
        }
        CycloNum {
            field: self.field.clone(),
            num,
            den: self.den.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Re-expresses the value in Q(ζ_{m'}) for a multiple m' of m.
    pub fn lift(&self, target: u32) -> Result<CycloNum> {
        let m = self.field.m;
        if target == 0 || !target.is_multiple_of(m) {
            return Err(Error::ConductorMismatch(m, target));
        }
        let step = (target / m) as usize;
        let f = field(target);
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, r) in f.power(k * step) {
                num[i] += c * r;
            }
        }
        Ok(CycloNum::from_parts(f, num, self.den.clone()))
    }

    pub fn pow(&self, mut e: u32) -> CycloNum {
        let mut base = self.clone();
        let mut acc = CycloNum::one(self.field.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Evaluation at ζ = e^{2πi/m} in double precision. Cross-check channel
    /// only; accurate to about 1e-9 relative for coefficients below 2^40.
    pub fn embed(&self) -> Complex64 {
        let m = self.field.m as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = BigRational::new(c.clone(), BigInt::one())
                .to_f64()
                .unwrap_or(f64::NAN)
                / den;
            let angle = 2.0 * std::f64::consts::PI * k as f64 / m;
            acc += Complex64::from_polar(coeff, angle);
        }
        acc
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloNum {}

impl std::hash::Hash for CycloNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.m.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

// Operator forms panic on conductor mismatch; use `arith` for the checked form.
impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.try_add(rhs).expect("conductor mismatch")
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.try_sub(rhs).expect("conductor mismatch")
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.try_mul(rhs).expect("conductor mismatch")
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (k, mag == Rat::one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[m={}]({})", self.field.m, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    m: u32,
    coeffs: Vec<Rat>,
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr {
            m: self.field.m,
            coeffs: self.coeffs(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CycloRepr::deserialize(deserializer)?;
        if repr.m == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        Ok(CycloNum::from_coeffs(repr.m, &repr.coeffs))
    }
}
