//! Truncated Laurent series in q with coefficients in Q(ζ_L).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::cyclotomic::{CycElem, CycField};
use super::{ArithError, Rational};

/// Outcome of comparing two truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesVerdict {
    /// All coefficients through `through` agree, and `through` meets the request.
    Equal { through: i64 },
    /// The coefficients of q^`at` differ.
    Unequal { at: i64 },
    /// No difference seen, but only `available` coefficients are known.
    InsufficientPrecision { available: i64, required: i64 },
}

impl SeriesVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, SeriesVerdict::Equal { .. })
    }
}

/// A q-series known through q^prec.
///
/// `coeffs[i]` is the coefficient of q^(valuation + i). The leading stored
/// coefficient is nonzero; the zero series has no stored coefficients and
/// valuation `prec + 1`.
///
/// `PartialEq` is structural (same level, precision and coefficients). Use
/// [`QSeries::compare`] for equality as series.
#[derive(Clone, PartialEq)]
pub struct QSeries {
    level: u32,
    valuation: i64,
    prec: i64,
    coeffs: Vec<CycElem>,
}

impl QSeries {
    /// Build from coefficients of q^start, q^(start+1), …; entries past `prec` are dropped.
    pub fn from_coeffs(level: u32, start: i64, coeffs: Vec<CycElem>, prec: i64) -> QSeries {
        let mut coeffs = coeffs;
        let keep = (prec - start + 1).max(0) as usize;
        coeffs.truncate(keep);
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => QSeries::zero(level, prec),
            Some(i) => {
                let mut coeffs = coeffs.split_off(i);
                while coeffs.last().is_some_and(CycElem::is_zero) {
                    coeffs.pop();
                }
                for c in &coeffs {
                    assert_eq!(c.level(), level, "coefficient level mismatch");
                }
                QSeries {
                    level,
                    valuation: start + i as i64,
                    prec,
                    coeffs,
                }
            }
        }
    }

    pub fn from_rationals(level: u32, start: i64, coeffs: &[Rational], prec: i64) -> QSeries {
        let coeffs = coeffs
            .iter()
            .map(|r| CycElem::from_rational(level, r))
            .collect();
        QSeries::from_coeffs(level, start, coeffs, prec)
    }

    pub fn zero(level: u32, prec: i64) -> QSeries {
        CycField::get(level);
        QSeries {
            level,
            valuation: prec + 1,
            prec,
            coeffs: vec![],
        }
    }

    pub fn constant(c: CycElem, prec: i64) -> QSeries {
        let level = c.level();
        QSeries::from_coeffs(level, 0, vec![c], prec)
    }

    pub fn one(level: u32, prec: i64) -> QSeries {
        QSeries::constant(CycElem::one(level), prec)
    }

    /// c·q^exp
    pub fn monomial(c: CycElem, exp: i64, prec: i64) -> QSeries {
        let level = c.level();
        QSeries::from_coeffs(level, exp, vec![c], prec)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Exponent of the lowest nonzero term (`prec + 1` for the zero series).
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of q^n, or `None` when n lies beyond the precision.
    pub fn get(&self, n: i64) -> Option<CycElem> {
        if n > self.prec {
            return None;
        }
        Some(self.coeff_or_zero(n))
    }

    /// Coefficient of q^n.
    ///
    /// Panics if n exceeds the precision.
    pub fn coeff(&self, n: i64) -> CycElem {
        assert!(
            n <= self.prec,
            "coefficient of q^{n} unknown (precision {})",
            self.prec
        );
        self.coeff_or_zero(n)
    }

    fn coeff_or_zero(&self, n: i64) -> CycElem {
        if n < self.valuation {
            return CycElem::zero(self.level);
        }
        let i = (n - self.valuation) as usize;
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| CycElem::zero(self.level))
    }

    /// Known coefficients from the valuation on, as (exponent, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycElem)> {
        let v = self.valuation;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (v + i as i64, c))
    }

    /// Dense coefficients of q^0..=q^prec (negative powers must be absent).
    pub fn dense_from_zero(&self) -> Vec<CycElem> {
        (0..=self.prec).map(|n| self.coeff_or_zero(n)).collect()
    }

    /// Lower the precision to `prec` (no-op if already lower).
    pub fn truncate(&self, prec: i64) -> QSeries {
        if prec >= self.prec {
            return self.clone();
        }
        QSeries::from_coeffs(self.level, self.valuation, self.coeffs.clone(), prec)
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: i64) -> QSeries {
        QSeries {
            level: self.level,
            valuation: self.valuation + k,
            prec: self.prec + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn map_coeffs<F: Fn(&CycElem) -> CycElem>(&self, level: u32, f: F) -> QSeries {
        let coeffs = self.coeffs.iter().map(f).collect();
        QSeries::from_coeffs(level, self.valuation, coeffs, self.prec)
    }

    pub fn scale(&self, c: &CycElem) -> QSeries {
        self.map_coeffs(self.level, |x| x * c)
    }

    pub fn scale_rational(&self, r: &Rational) -> QSeries {
        self.map_coeffs(self.level, |x| x.scale_rational(r))
    }

    pub fn scale_int(&self, k: i64) -> QSeries {
        let k = BigInt::from(k);
        self.map_coeffs(self.level, |x| x.scale_int(&k))
    }

    pub fn neg(&self) -> QSeries {
        self.map_coeffs(self.level, |x| -x)
    }

    /// Coefficientwise Galois action ζ ↦ ζ^k.
    pub fn galois(&self, k: i64) -> QSeries {
        self.map_coeffs(self.level, |x| x.galois(k))
    }

    /// View the coefficients in Q(ζ_target).
    pub fn embed(&self, target: u32) -> Result<QSeries, ArithError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.embed(target))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            if !target.is_multiple_of(self.level) {
                return Err(ArithError::IncompatibleLevels {
                    from: self.level,
                    to: target,
                });
            }
            return Ok(QSeries::zero(target, self.prec));
        }
        Ok(QSeries::from_coeffs(
            target,
            self.valuation,
            coeffs,
            self.prec,
        ))
    }

    /// Substitute q → q^p. The precision becomes p·prec.
    pub fn substitute_power(&self, p: u32) -> QSeries {
        assert!(p >= 1);
        let p = p as i64;
        let prec = self.prec * p;
        if self.is_zero() {
            return QSeries::zero(self.level, prec);
        }
        let mut coeffs = vec![CycElem::zero(self.level); (self.coeffs.len() - 1) * p as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * p as usize] = c.clone();
        }
        QSeries::from_coeffs(self.level, self.valuation * p, coeffs, prec)
    }

    /// Keep the coefficients of q^(np), reindexed to q^n. The precision becomes floor(prec/p).
    pub fn extract_multiples(&self, p: u32) -> QSeries {
        assert!(p >= 1);
        let p = p as i64;
        let prec = Integer::div_floor(&self.prec, &p);
        let start = Integer::div_ceil(&self.valuation, &p).min(prec + 1);
        let coeffs = (start..=prec).map(|n| self.coeff_or_zero(n * p)).collect();
        QSeries::from_coeffs(self.level, start, coeffs, prec)
    }

    fn check_level(&self, other: &QSeries) {
        assert_eq!(
            self.level, other.level,
            "series level mismatch ({} vs {})",
            self.level, other.level
        );
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.combine(other, |a, b| a - b)
    }

    fn combine<F: Fn(&CycElem, &CycElem) -> CycElem>(&self, other: &QSeries, f: F) -> QSeries {
        self.check_level(other);
        let prec = self.prec.min(other.prec);
        let start = self.valuation.min(other.valuation).min(prec + 1);
        let coeffs = (start..=prec)
            .map(|n| f(&self.coeff_or_zero(n), &other.coeff_or_zero(n)))
            .collect();
        QSeries::from_coeffs(self.level, start, coeffs, prec)
    }

    /// Product; precision min(P_a + v_b, P_b + v_a).
    pub fn mul(&self, other: &QSeries) -> QSeries {
        self.check_level(other);
        let prec = (self.prec + other.valuation).min(other.prec + self.valuation);
        if self.is_zero() || other.is_zero() {
            return QSeries::zero(self.level, prec);
        }
        let v = self.valuation + other.valuation;
        let n = prec - v + 1;
        if n <= 0 {
            return QSeries::zero(self.level, prec);
        }
        let n = n as usize;
        let a = &self.coeffs[..self.coeffs.len().min(n)];
        let b = &other.coeffs[..other.coeffs.len().min(n)];
        let coeffs = mul_dense(a, b, n);
        QSeries::from_coeffs(self.level, v, coeffs, prec)
    }

    /// e-th power; `pow(0)` is the constant 1 at the same precision.
    pub fn pow(&self, e: u32) -> QSeries {
        if e == 0 {
            return QSeries::one(self.level, self.prec);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse of a series with known nonzero leading term.
    /// The precision becomes prec − 2·valuation.
    pub fn invert(&self) -> Result<QSeries, ArithError> {
        if self.is_zero() {
            return Err(ArithError::NotAUnit);
        }
        let v = self.valuation;
        let m = (self.prec - v + 1) as usize;
        let lead_inv = self.coeffs[0].inv()?;
        let mut h: Vec<CycElem> = Vec::with_capacity(m);
        h.push(lead_inv.clone());
        for k in 1..m {
            let mut acc = CycElem::zero(self.level);
            for j in 1..=k.min(self.coeffs.len() - 1) {
                let g = &self.coeffs[j];
                if !g.is_zero() && !h[k - j].is_zero() {
                    acc += &(g * &h[k - j]);
                }
            }
            h.push(-(&acc * &lead_inv));
        }
        Ok(QSeries::from_coeffs(self.level, -v, h, self.prec - 2 * v))
    }

    /// Multiply by 1/(1 − c·q^e) for e ≥ 1. The precision is unchanged.
    pub fn div_one_minus(&self, c: &CycElem, e: i64) -> QSeries {
        assert!(e >= 1, "geometric factor needs a positive exponent");
        if self.is_zero() {
            return self.clone();
        }
        let v = self.valuation;
        let m = (self.prec - v + 1) as usize;
        let e = e as usize;
        let mut g: Vec<CycElem> = Vec::with_capacity(m);
        for i in 0..m {
            let mut x = self
                .coeffs
                .get(i)
                .cloned()
                .unwrap_or_else(|| CycElem::zero(self.level));
            if i >= e && !g[i - e].is_zero() {
                x += &(c * &g[i - e]);
            }
            g.push(x);
        }
        QSeries::from_coeffs(self.level, v, g, self.prec)
    }

    /// Compare as series, demanding agreement through q^`required`.
    pub fn compare(&self, other: &QSeries, required: i64) -> SeriesVerdict {
        self.check_level(other);
        let available = self.prec.min(other.prec);
        let lo = self.valuation.min(other.valuation);
        for n in lo..=available {
            if self.coeff_or_zero(n) != other.coeff_or_zero(n) {
                return SeriesVerdict::Unequal { at: n };
            }
        }
        if available < required {
            SeriesVerdict::InsufficientPrecision {
                available,
                required,
            }
        } else {
            SeriesVerdict::Equal { through: available }
        }
    }

    /// Compare through the common precision.
    pub fn agrees_with(&self, other: &QSeries) -> SeriesVerdict {
        self.compare(other, self.prec.min(other.prec))
    }

    /// Every coefficient lies in Q.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_rational().is_some())
    }
}

/// Dense product of two coefficient runs, first `n` terms.
fn mul_dense(a: &[CycElem], b: &[CycElem], n: usize) -> Vec<CycElem> {
    let field = a[0].field().clone();
    let d = field.degree();
    let (da, na) = lift(a);
    let (db, nb) = lift(b);
    let den = &da * &db;
    let bits_a = na.iter().flatten().map(|c| c.bits()).max().unwrap_or(0);
    let bits_b = nb.iter().flatten().map(|c| c.bits()).max().unwrap_or(0);
    let terms = (n.min(a.len()).min(b.len()) * d) as u64;
    let spread = (2 * d as u64) * field.max_power_entry() as u64 + 1;
    let budget = bits_a + bits_b + bits_of(terms) + bits_of(spread) + 2;
    let nz_a: Vec<usize> = (0..na.len())
        .filter(|&i| na[i].iter().any(|c| !c.is_zero()))
        .collect();
    let work = (n * nz_a.len() * d * d) as u64;
    let parallel = work > 1 << 18;
    if budget <= 120 {
        let ia: Vec<Vec<i128>> = na
            .iter()
            .map(|v| v.iter().map(|c| c.to_i128().unwrap()).collect())
            .collect();
        let ib: Vec<Vec<i128>> = nb
            .iter()
            .map(|v| v.iter().map(|c| c.to_i128().unwrap()).collect())
            .collect();
        let one = |k: usize| -> CycElem {
            let mut acc = vec![0i128; 2 * d - 1];
            for &i in &nz_a {
                if i > k {
                    break;
                }
                let Some(y) = ib.get(k - i) else { continue };
                let x = &ia[i];
                for (s, xs) in x.iter().enumerate() {
                    if *xs == 0 {
                        continue;
                    }
                    for (t, yt) in y.iter().enumerate() {
                        acc[s + t] += xs * yt;
                    }
                }
            }
            let red = field.reduce_i128(&acc);
            CycElem::from_parts(
                field.clone(),
                red.into_iter().map(BigInt::from).collect(),
                den.clone(),
            )
        };
        if parallel {
            (0..n).into_par_iter().map(one).collect()
        } else {
            (0..n).map(one).collect()
        }
    } else {
        let one = |k: usize| -> CycElem {
            let mut acc = vec![BigInt::zero(); 2 * d - 1];
            for &i in &nz_a {
                if i > k {
                    break;
                }
                let Some(y) = nb.get(k - i) else { continue };
                let x = &na[i];
                for (s, xs) in x.iter().enumerate() {
                    if xs.is_zero() {
                        continue;
                    }
                    for (t, yt) in y.iter().enumerate() {
                        if !yt.is_zero() {
                            acc[s + t] += xs * yt;
                        }
                    }
                }
            }
            let red = field.reduce_bigint(acc);
            CycElem::from_parts(field.clone(), red, den.clone())
        };
        if parallel {
            (0..n).into_par_iter().map(one).collect()
        } else {
            (0..n).map(one).collect()
        }
    }
}

fn bits_of(x: u64) -> u64 {
    64 - x.leading_zeros() as u64
}

/// Common denominator and scaled integer numerators.
fn lift(xs: &[CycElem]) -> (BigInt, Vec<Vec<BigInt>>) {
    let den = xs
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denominator()));
    let nums = xs
        .iter()
        .map(|x| {
            let f = &den / x.denominator();
            if f.is_one() {
                x.numerators().to_vec()
            } else {
                x.numerators().iter().map(|c| c * &f).collect()
            }
        })
        .collect();
    (den, nums)
}

fn superscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s = String::new();
    if n < 0 {
        s.push('⁻');
    }
    for ch in n.unsigned_abs().to_string().chars() {
        s.push(DIGITS[ch.to_digit(10).unwrap() as usize]);
    }
    s
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[L={}]({})", self.level, self)
    }
}

/// Renders e.g. `1 + (1 − ζ5 + 2ζ5²)·q³ + O(q⁴)`.
impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let compound = text.trim_start_matches('−').contains(' ');
            let (neg, body) = match text.strip_prefix('−') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            if first {
                if neg {
                    write!(f, "−")?;
                }
            } else {
                write!(f, " {} ", if neg { "−" } else { "+" })?;
            }
            first = false;
            let body = if compound { format!("({body})") } else { body };
            match n {
                0 => write!(f, "{body}")?,
                _ => {
                    if body != "1" {
                        write!(f, "{body}·")?;
                    }
                    write!(f, "q")?;
                    if n != 1 {
                        write!(f, "{}", superscript(n))?;
                    }
                }
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q{})", superscript(self.prec + 1))
    }
}

/// Divisor sum σ_k(n) as a BigInt.
pub fn sigma(k: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// Convenience: value of a rational-coefficient series coefficient.
pub fn rational_coeff(f: &QSeries, n: i64) -> Option<Rational> {
    f.get(n).and_then(|c| c.as_rational())
}

impl QSeries {
    /// Sign-aware helper used in tests and oracles: the series Σ c_n q^n from integers.
    pub fn from_ints(start: i64, coeffs: &[i64], prec: i64) -> QSeries {
        let cs: Vec<Rational> = coeffs
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        QSeries::from_rationals(1, start, &cs, prec)
    }

    /// Largest coefficient height in bits (diagnostics).
    pub fn height_bits(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.height_bits())
            .max()
            .unwrap_or(0)
    }

    /// True if some known coefficient has negative exponent.
    pub fn has_negative_terms(&self) -> bool {
        !self.is_zero() && self.valuation < 0
    }

    /// Absolute value helper for valuations of possibly-zero series.
    pub fn order(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.valuation)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn geometric_inverse() {
        let f = QSeries::from_ints(0, &[1, -1], 20);
        let g = f.invert().unwrap();
        assert_eq!(g, QSeries::from_ints(0, &[1; 21], 20));
        assert_eq!(QSeries::zero(1, 5).invert(), Err(ArithError::NotAUnit));
    }

    #[test]
    fn laurent_inverse_precision() {
        // q^2 (1 - q), known through q^10
        let f = QSeries::from_ints(2, &[1, -1], 10);
        let g = f.invert().unwrap();
        assert_eq!(g.valuation(), -2);
        assert_eq!(g.prec(), 6);
        assert!(f.mul(&g).compare(&QSeries::one(1, 4), 4).is_equal());
    }

    #[test]
    fn substitute_and_extract() {
        let f = QSeries::from_ints(0, &[1, 2, 3, 4], 3);
        let g = f.substitute_power(2);
        assert_eq!(g.prec(), 6);
        assert_eq!(g, QSeries::from_ints(0, &[1, 0, 2, 0, 3, 0, 4], 6));
        assert_eq!(g.extract_multiples(2), f);
        let q = QSeries::from_ints(1, &[1], 10);
        assert!(q.extract_multiples(2).is_zero());
        assert_eq!(q.substitute_power(3), QSeries::from_ints(3, &[1], 30));
    }

    #[test]
    fn product_precision_is_pessimistic() {
        let a = QSeries::from_ints(0, &[1, 1], 10);
        let b = QSeries::from_ints(3, &[1], 5);
        let c = a.mul(&b);
        assert_eq!(c.prec(), 5);
        assert_eq!(c, QSeries::from_ints(3, &[1, 1], 5));
    }

    #[test]
    fn three_valued_comparison() {
        let a = QSeries::from_ints(0, &[1, 2, 3], 5);
        let b = QSeries::from_ints(0, &[1, 2, 3], 3);
        assert_eq!(a.compare(&b, 3), SeriesVerdict::Equal { through: 3 });
        assert_eq!(
            a.compare(&b, 10),
            SeriesVerdict::InsufficientPrecision {
                available: 3,
                required: 10
            }
        );
        let c = QSeries::from_ints(0, &[1, 2, 4], 5);
        assert_eq!(a.compare(&c, 10), SeriesVerdict::Unequal { at: 2 });
    }

    #[test]
    fn cyclotomic_products_match_naive() {
        let z = CycElem::root_of_unity(7, 1);
        let h = CycElem::from_rational(7, &rat(1, 3));
        let a = QSeries::from_coeffs(7, 0, vec![z.clone(), h.clone(), &z * &h], 6);
        let b = QSeries::from_coeffs(7, -1, vec![h.clone(), z.pow(3), CycElem::one(7)], 8);
        let c = a.mul(&b);
        for n in c.valuation()..=c.prec() {
            let mut want = CycElem::zero(7);
            for i in 0..=6 {
                let j = n - i;
                if (-1..=8).contains(&j) {
                    want += &(&a.coeff(i) * &b.coeff(j));
                }
            }
            assert_eq!(c.coeff(n), want, "n = {n}");
        }
    }

    #[test]
    fn big_coefficients_take_bigint_path() {
        let big = CycElem::from_rational(5, &Rational::from_integer(BigInt::from(1u8) << 90));
        let a = QSeries::from_coeffs(5, 0, vec![big.clone(), big.clone()], 3);
        let sq = a.mul(&a);
        let b2 = &big * &big;
        assert_eq!(sq.coeff(1), b2.scale_int(&BigInt::from(2)));
    }

    #[test]
    fn display() {
        let z = CycElem::root_of_unity(5, 1);
        let c = &(&CycElem::one(5) - &z) + &z.pow(2).scale_int(&BigInt::from(2));
        let f = QSeries::from_coeffs(
            5,
            0,
            vec![CycElem::one(5), CycElem::zero(5), CycElem::zero(5), c],
            3,
        );
        assert_eq!(f.to_string(), "1 + (1 − ζ5 + 2ζ5²)·q³ + O(q⁴)");
        assert_eq!(QSeries::zero(1, 2).to_string(), "O(q³)");
        assert_eq!(QSeries::from_ints(1, &[-2], 2).to_string(), "−2·q + O(q³)");
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(3, 2), BigInt::from(9));
        assert_eq!(sigma(1, 12), BigInt::from(28));
        assert_eq!(sigma(0, 36), BigInt::from(9));
    }
}
