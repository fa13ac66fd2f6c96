//! Exact q-expansions of the generators s_{a/l}^(k) and r̂^(k).
//!
//! With t = 2πiz and E = e^{−t}, the logarithm of the theta ratio splits as
//! a trigonometric part in E plus Lambert sums in q. The constant of the k-th
//! t-derivative comes from the trigonometric part expanded as a FormalSeries;
//! the Lambert sums give closed divisor sums.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::GenError;
use crate::arith::{CycElem, FormalSeries, QSeries, Rational};

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// (1 − E)/t = Σ_i (−1)^i t^i/(i+1)! to `order` terms.
fn one_minus_e_over_t(level: u32, order: usize) -> FormalSeries {
    let mut cs = Vec::with_capacity(order);
    let mut fact = BigInt::one();
    for i in 0..order {
        fact *= BigInt::from(i + 1);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        cs.push(Rational::new(BigInt::from(sign), fact.clone()));
    }
    FormalSeries::from_rationals(level, &cs, order)
}

/// k!·[t^k] of log(1 + c(1−E)) − log((1−E)/t), with c = 1/(ζ^a − 1).
pub fn s_constant(a: i64, l: u32, k: u32) -> Result<CycElem, GenError> {
    check_residue(a, l)?;
    let order = k as usize + 1;
    let x = CycElem::root_of_unity(l, a);
    let c = (&x - &CycElem::one(l)).inv()?;
    let ratio = one_minus_e_over_t(l, order);
    let one_minus_e = FormalSeries::var(l, order).mul(&ratio);
    let inner = FormalSeries::constant(CycElem::one(l), order).add(&one_minus_e.scale(&c));
    let trig = inner.log()?.sub(&ratio.log()?);
    Ok(trig.coeff(k as usize).scale_int(&factorial(k)))
}

/// k!·[t^k] of t/2 + log((1−E)/t); equals B_k/k for even k.
pub fn r_constant(k: u32) -> Result<Rational, GenError> {
    check_even(k)?;
    let order = k as usize + 1;
    // t/2 only touches t¹
    let trig = one_minus_e_over_t(1, order).log()?;
    let c = trig
        .coeff(k as usize)
        .as_rational()
        .expect("level 1 is rational");
    Ok(c * Rational::from_integer(factorial(k)))
}

fn check_residue(a: i64, l: u32) -> Result<(), GenError> {
    if l == 0 || a.rem_euclid(l as i64) == 0 {
        return Err(GenError::BadResidue { a, l });
    }
    Ok(())
}

fn check_even(k: u32) -> Result<(), GenError> {
    if k == 0 || k % 2 == 1 {
        return Err(GenError::OddOrder { k });
    }
    Ok(())
}

/// s_{a/l}^(k) through q^prec.
///
/// The q^d coefficient is Σ_{j|d} j^{k−1}·[(1+(−1)^k) − ζ^{aj} − (−1)^k ζ^{−aj}].
pub fn s_series(a: i64, l: u32, k: u32, prec: i64) -> Result<QSeries, GenError> {
    check_residue(a, l)?;
    if k == 0 {
        return Err(GenError::ZeroOrder);
    }
    if prec < 0 {
        return Ok(QSeries::zero(l, prec));
    }
    let n = prec as usize;
    let li = l as i64;
    let even = k.is_multiple_of(2);
    // weights[d][r]: integer coefficient of ζ^r in the q^d coefficient
    let mut weights = vec![vec![BigInt::zero(); l as usize]; n + 1];
    for j in 1..=n {
        let jp = BigInt::from(j).pow(k - 1);
        let up = (a * j as i64).rem_euclid(li) as usize;
        let down = (-a * j as i64).rem_euclid(li) as usize;
        for d in (j..=n).step_by(j) {
            let w = &mut weights[d];
            if even {
                w[0] += &jp * 2;
                w[up] -= &jp;
                w[down] -= &jp;
            } else {
                w[up] -= &jp;
                w[down] += &jp;
            }
        }
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(s_constant(a, l, k)?);
    for w in weights.into_iter().skip(1) {
        let poly: Vec<Rational> = w.into_iter().map(Rational::from_integer).collect();
        coeffs.push(CycElem::from_poly(l, &poly));
    }
    Ok(QSeries::from_coeffs(l, 0, coeffs, prec))
}

/// r̂^(k) = (2πi)^{−k} r^(k) through q^prec, with rational coefficients.
///
/// The q^d coefficient is −2σ_{k−1}(d).
pub fn r_series(k: u32, prec: i64) -> Result<QSeries, GenError> {
    check_even(k)?;
    if prec < 0 {
        return Ok(QSeries::zero(1, prec));
    }
    let n = prec as usize;
    let mut sig = vec![BigInt::zero(); n + 1];
    for j in 1..=n {
        let jp = BigInt::from(j).pow(k - 1);
        for d in (j..=n).step_by(j) {
            sig[d] += &jp;
        }
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(r_constant(k)?);
    coeffs.extend(
        sig.into_iter()
            .skip(1)
            .map(|s| Rational::from_integer(s * -2)),
    );
    Ok(QSeries::from_rationals(1, 0, &coeffs, prec))
}

/// The ratio of the q¹ coefficient of r̂^(k) to σ_{k−1}(1) = 1.
pub fn eisenstein_scale(k: u32) -> Result<Rational, GenError> {
    let f = r_series(k, 1)?;
    Ok(f.coeff(1).as_rational().expect("rational series"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qseries::sigma;
    use crate::arith::rat;

    #[test]
    fn weight_one_constant_and_first_coefficient() {
        for l in [5u32, 7, 12] {
            for a in 1..l as i64 {
                let f = s_series(a, l, 1, 3).unwrap();
                let x = CycElem::root_of_unity(l, a);
                let want =
                    CycElem::from_rational(l, &rat(1, 2)) + (&x - &CycElem::one(l)).inv().unwrap();
                assert_eq!(f.coeff(0), want);
                let xinv = CycElem::root_of_unity(l, -a);
                assert_eq!(f.coeff(1), -(&x - &xinv));
            }
        }
    }

    #[test]
    fn weight_one_divisor_sums() {
        for l in [5u32, 7] {
            for a in 1..l as i64 {
                let f = s_series(a, l, 1, 100).unwrap();
                for d in 1..=100i64 {
                    let mut want = CycElem::zero(l);
                    for j in (1..=d).filter(|j| d % j == 0) {
                        want -= &(&CycElem::root_of_unity(l, a * j)
                            - &CycElem::root_of_unity(l, -a * j));
                    }
                    assert_eq!(f.coeff(d), want, "l={l} a={a} d={d}");
                }
            }
        }
    }

    #[test]
    fn symmetry() {
        for l in [5u32, 7] {
            for a in 1..l as i64 {
                for k in 1..=4u32 {
                    let f = s_series(a, l, k, 100).unwrap();
                    let g = s_series(l as i64 - a, l, k, 100).unwrap();
                    let g = if k % 2 == 1 { g.neg() } else { g };
                    assert_eq!(f, g, "a={a} l={l} k={k}");
                }
            }
        }
    }

    #[test]
    fn r_series_examples() {
        let f = r_series(2, 5).unwrap();
        assert_eq!(f.coeff(0).as_rational().unwrap(), rat(1, 12));
        let f = r_series(4, 5).unwrap();
        assert_eq!(f.coeff(0).as_rational().unwrap(), rat(-1, 120));
        assert_eq!(
            f.coeff(2).as_rational().unwrap() / f.coeff(1).as_rational().unwrap(),
            rat(9, 1)
        );
        assert_eq!(
            r_series(6, 0).unwrap().coeff(0).as_rational().unwrap(),
            rat(1, 252)
        );
        assert_eq!(r_series(3, 5).unwrap_err(), GenError::OddOrder { k: 3 });
        assert_eq!(eisenstein_scale(4).unwrap(), rat(-2, 1));
        for d in 1..20u64 {
            let c = r_series(6, 20)
                .unwrap()
                .coeff(d as i64)
                .as_rational()
                .unwrap();
            assert_eq!(c, Rational::from_integer(sigma(5, d) * -2));
        }
    }

    #[test]
    fn bad_residue() {
        assert_eq!(
            s_series(10, 5, 1, 3).unwrap_err(),
            GenError::BadResidue { a: 10, l: 5 }
        );
    }
}
