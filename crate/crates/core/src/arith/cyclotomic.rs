//! Exact arithmetic in the cyclotomic field Q(ζ_L).
//!
//! An element is stored as an integer vector over the power basis
//! 1, ζ, …, ζ^{φ(L)-1} together with a single positive denominator.
//! Reduction is modulo the L-th cyclotomic polynomial Φ_L, so the
//! representation is canonical and every nonzero element is invertible.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ArithError, Rational};

/// Static data for Q(ζ_L): the modulus Φ_L and the reductions of ζ^j.
#[derive(Debug)]
pub struct CycField {
    level: u32,
    degree: usize,
    /// Φ_L, lowest coefficient first, monic.
    modulus: Vec<i64>,
    /// `powers[j]` is ζ^j written in the power basis, for 0 <= j < L.
    powers: Vec<Vec<i64>>,
}

fn field_table() -> &'static Mutex<HashMap<u32, Arc<CycField>>> {
    static TABLE: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![0];
    }
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Φ_n by dividing x^n - 1 by Φ_d for every proper divisor d of n.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut n = n;
    let mut result = n as usize;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p as usize;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n as usize;
    }
    result
}

impl CycField {
    /// The shared field descriptor for level `level`.
    pub fn get(level: u32) -> Arc<CycField> {
        assert!(level >= 1, "cyclotomic level must be positive");
        let mut table = field_table().lock().expect("field table poisoned");
        table
            .entry(level)
            .or_insert_with(|| Arc::new(CycField::build(level)))
            .clone()
    }

    fn build(level: u32) -> CycField {
        let modulus = cyclotomic_polynomial(level);
        let degree = modulus.len() - 1;
        debug_assert_eq!(degree, euler_phi(level));
        let mut powers = Vec::with_capacity(level as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..level {
            powers.push(cur.clone());
            // multiply by x and reduce the overflow term
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * modulus[i];
                }
            }
        }
        CycField {
            level,
            degree,
            modulus,
            powers,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// φ(L), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// ζ^j in the power basis (j taken mod L).
    pub fn power(&self, j: i64) -> &[i64] {
        let l = self.level as i64;
        &self.powers[j.rem_euclid(l) as usize]
    }

    /// Reduce an integer polynomial of arbitrary length modulo Φ_L in place,
    /// returning the first `degree` coefficients.
    pub(crate) fn reduce_bigint(&self, mut poly: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree;
        if poly.len() > d {
            for i in (d..poly.len()).rev() {
                if poly[i].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut poly[i]);
                for (j, &m) in self.modulus[..d].iter().enumerate() {
                    if m != 0 {
                        poly[i - d + j] -= &c * m;
                    }
                }
            }
            poly.truncate(d);
        }
        poly.resize(d, BigInt::zero());
        poly
    }

    /// Reduce using the table of ζ^j; `poly[j]` may have any index j.
    pub(crate) fn reduce_i128(&self, poly: &[i128]) -> Vec<i128> {
        let d = self.degree;
        let mut out = vec![0i128; d];
        out[..d.min(poly.len())].copy_from_slice(&poly[..d.min(poly.len())]);
        for (j, &c) in poly.iter().enumerate().skip(d) {
            if c == 0 {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(self.power(j as i64)) {
                *o += c * p as i128;
            }
        }
        out
    }

    /// Largest absolute entry in the table of reduced powers.
    pub(crate) fn max_power_entry(&self) -> i64 {
        self.powers
            .iter()
            .flat_map(|v| v.iter().map(|c| c.abs()))
            .max()
            .unwrap_or(1)
    }
}

/// An element of Q(ζ_L).
#[derive(Clone)]
pub struct CycElem {
    field: Arc<CycField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycElem {
    /// Build from an already-reduced numerator vector and denominator.
    pub(crate) fn from_parts(field: Arc<CycField>, num: Vec<BigInt>, den: BigInt) -> CycElem {
        debug_assert_eq!(num.len(), field.degree);
        let mut e = CycElem { field, num, den };
        e.normalize();
        e
    }

    pub(crate) fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in self.num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
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
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero(level: u32) -> CycElem {
        let field = CycField::get(level);
        let d = field.degree;
        CycElem {
            field,
            num: vec![BigInt::zero(); d],
            den: BigInt::one(),
        }
    }

    pub fn one(level: u32) -> CycElem {
        CycElem::from_int(level, 1)
    }

    pub fn from_int(level: u32, n: i64) -> CycElem {
        let mut e = CycElem::zero(level);
        e.num[0] = BigInt::from(n);
        e
    }

    pub fn from_rational(level: u32, r: &Rational) -> CycElem {
        let mut e = CycElem::zero(level);
        e.num[0] = r.numer().clone();
        e.den = r.denom().clone();
        e.normalize();
        e
    }

    /// ζ_L^k.
    pub fn root_of_unity(level: u32, k: i64) -> CycElem {
        let field = CycField::get(level);
        let num = field.power(k).iter().map(|&c| BigInt::from(c)).collect();
        CycElem {
            field,
            num,
            den: BigInt::one(),
        }
    }

    /// Reduce `poly` (coefficients of 1, x, x², …) modulo Φ_L with x ↦ ζ_L.
    pub fn from_poly(level: u32, poly: &[Rational]) -> CycElem {
        let field = CycField::get(level);
        let den = poly.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let lifted: Vec<BigInt> = poly
            .iter()
            .map(|r| r.numer() * (&den / r.denom()))
            .collect();
        let num = field.reduce_bigint(lifted);
        CycElem::from_parts(field, num, den)
    }

    pub fn level(&self) -> u32 {
        self.field.level
    }

    /// Coefficients in the power basis 1, ζ, …, ζ^{φ(L)-1}.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The element as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Bit length of the largest numerator or the denominator.
    pub(crate) fn height_bits(&self) -> u64 {
        self.num
            .iter()
            .map(|c| c.bits())
            .max()
            .unwrap_or(0)
            .max(self.den.bits())
    }

    fn check_level(&self, other: &CycElem) {
        assert_eq!(
            self.field.level, other.field.level,
            "cyclotomic level mismatch ({} vs {})",
            self.field.level, other.field.level
        );
    }

    /// Multiply by ζ^k without a general product.
    pub fn mul_root(&self, k: i64) -> CycElem {
        let d = self.field.degree;
        let mut acc = vec![BigInt::zero(); 2 * d - 1];
        let root = self.field.power(k);
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &r) in root.iter().enumerate() {
                if r != 0 {
                    acc[i + j] += a * r;
                }
            }
        }
        let num = self.field.reduce_bigint(acc);
        // multiplication by a unit of Z[ζ] preserves the content
        CycElem {
            field: self.field.clone(),
            num,
            den: self.den.clone(),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> CycElem {
        CycElem::from_parts(
            self.field.clone(),
            self.num.iter().map(|c| c * k).collect(),
            self.den.clone(),
        )
    }

    pub fn scale_rational(&self, r: &Rational) -> CycElem {
        CycElem::from_parts(
            self.field.clone(),
            self.num.iter().map(|c| c * r.numer()).collect(),
            &self.den * r.denom(),
        )
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_L.
    pub fn inv(&self) -> Result<CycElem, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let modulus: Vec<Rational> = self
            .field
            .modulus
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        let a: Vec<Rational> = self
            .num
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // invariant: r0 ≡ s0·a, r1 ≡ s1·a (mod Φ)
        let mut r0 = trim(modulus);
        let mut r1 = trim(a);
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while r1.len() != 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                // gcd nontrivial: impossible for an irreducible modulus
                return Err(ArithError::DivisionByZero);
            }
        }
        let c = r1[0].clone();
        let inv_poly: Vec<Rational> = s1.into_iter().map(|x| x / &c).collect();
        // the result is an inverse of the numerator polynomial; restore the denominator
        let e = CycElem::from_poly(self.field.level, &inv_poly);
        Ok(e.scale_int(&self.den))
    }

    /// Image under ζ_L ↦ ζ_{L'}^{L'/L}.
    pub fn embed(&self, target: u32) -> Result<CycElem, ArithError> {
        let l = self.field.level;
        if target == 0 || !target.is_multiple_of(l) {
            return Err(ArithError::IncompatibleLevels {
                from: l,
                to: target,
            });
        }
        if target == l {
            return Ok(self.clone());
        }
        let step = (target / l) as i64;
        let field = CycField::get(target);
        let mut acc = vec![BigInt::zero(); field.degree];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &p) in field.power(step * i as i64).iter().enumerate() {
                if p != 0 {
                    acc[j] += c * p;
                }
            }
        }
        Ok(CycElem::from_parts(field, acc, self.den.clone()))
    }

    /// Galois action ζ ↦ ζ^k for k coprime to L.
    pub fn galois(&self, k: i64) -> CycElem {
        let field = self.field.clone();
        let mut acc = vec![BigInt::zero(); field.degree];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &p) in field.power(k * i as i64).iter().enumerate() {
                if p != 0 {
                    acc[j] += c * p;
                }
            }
        }
        CycElem::from_parts(field, acc, self.den.clone())
    }

    pub fn pow(&self, mut e: u32) -> CycElem {
        let mut base = self.clone();
        let mut acc = CycElem::one(self.level());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Complex value, for numeric cross-checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let l = self.field.level as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let ang = 2.0 * std::f64::consts::PI * i as f64 / l;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (vec![], trim(rem));
    }
    let lead = b.last().expect("division by zero polynomial");
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + b.len() - 1] / lead;
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                rem[i + j] -= &c * y;
            }
        }
        quot[i] = c;
    }
    rem.truncate(b.len() - 1);
    (trim(quot), trim(rem))
}

impl PartialEq for CycElem {
    fn eq(&self, other: &CycElem) -> bool {
        self.field.level == other.field.level && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycElem {}

impl std::hash::Hash for CycElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.level.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl<'a> Add<&'a CycElem> for &'a CycElem {
    type Output = CycElem;
    fn add(self, rhs: &CycElem) -> CycElem {
        self.check_level(rhs);
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
            return CycElem::from_parts(self.field.clone(), num, self.den.clone());
        }
        let l = self.den.lcm(&rhs.den);
        let fa = &l / &self.den;
        let fb = &l / &rhs.den;
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &fa + b * &fb)
            .collect();
        CycElem::from_parts(self.field.clone(), num, l)
    }
}

impl<'a> Sub<&'a CycElem> for &'a CycElem {
    type Output = CycElem;
    fn sub(self, rhs: &CycElem) -> CycElem {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycElem> for &'a CycElem {
    type Output = CycElem;
    fn mul(self, rhs: &CycElem) -> CycElem {
        self.check_level(rhs);
        let d = self.field.degree;
        if d == 1 {
            return CycElem::from_parts(
                self.field.clone(),
                vec![&self.num[0] * &rhs.num[0]],
                &self.den * &rhs.den,
            );
        }
        let mut acc = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    acc[i + j] += a * b;
                }
            }
        }
        let num = self.field.reduce_bigint(acc);
        CycElem::from_parts(self.field.clone(), num, &self.den * &rhs.den)
    }
}

impl Neg for &CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        CycElem {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycElem> for CycElem {
            type Output = CycElem;
            fn $m(self, rhs: CycElem) -> CycElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycElem> for CycElem {
            type Output = CycElem;
            fn $m(self, rhs: &CycElem) -> CycElem {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CycElem> for CycElem {
    fn add_assign(&mut self, rhs: &CycElem) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycElem> for CycElem {
    fn sub_assign(&mut self, rhs: &CycElem) {
        *self = &*self - rhs;
    }
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycElem[L={}]({})", self.field.level, self)
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// Renders e.g. `1 − ζ5 + 2ζ5²` or `(1/2)ζ7³`.
impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = Rational::new(c.clone(), self.den.clone());
            let neg = r.is_negative();
            let a = r.abs();
            if first {
                if neg {
                    write!(f, "−")?;
                }
            } else {
                write!(f, " {} ", if neg { "−" } else { "+" })?;
            }
            first = false;
            let coeff = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("({}/{})", a.numer(), a.denom())
            };
            match i {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coeff}")?;
                    }
                    write!(f, "ζ{}", self.field.level)?;
                    if i > 1 {
                        write!(f, "{}", superscript(i))?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Sum of CycElem over an iterator at a fixed level.
pub fn cyc_sum<'a, I: IntoIterator<Item = &'a CycElem>>(level: u32, items: I) -> CycElem {
    let mut acc = CycElem::zero(level);
    for x in items {
        acc += x;
    }
    acc
}
