//! Truncated power series in one auxiliary variable w.

use num_bigint::BigInt;
use num_traits::One;

use super::{ArithError, CycElem, Rational};

/// Σ_{i < order} c_i w^i over Q(ζ_L).
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries {
    level: u32,
    coeffs: Vec<CycElem>,
}

impl FormalSeries {
    /// Coefficients past `order` are dropped; missing ones are zero.
    pub fn new(level: u32, mut coeffs: Vec<CycElem>, order: usize) -> FormalSeries {
        coeffs.truncate(order);
        coeffs.resize(order, CycElem::zero(level));
        FormalSeries { level, coeffs }
    }

    pub fn from_rationals(level: u32, coeffs: &[Rational], order: usize) -> FormalSeries {
        let cs = coeffs
            .iter()
            .map(|r| CycElem::from_rational(level, r))
            .collect();
        FormalSeries::new(level, cs, order)
    }

    pub fn zero(level: u32, order: usize) -> FormalSeries {
        FormalSeries::new(level, vec![], order)
    }

    pub fn constant(c: CycElem, order: usize) -> FormalSeries {
        let level = c.level();
        FormalSeries::new(level, vec![c], order)
    }

    /// The variable w itself.
    pub fn var(level: u32, order: usize) -> FormalSeries {
        FormalSeries::new(
            level,
            vec![CycElem::zero(level), CycElem::one(level)],
            order,
        )
    }

    /// e^{c·w}
    pub fn exp_linear(c: &CycElem, order: usize) -> FormalSeries {
        let level = c.level();
        let mut coeffs = Vec::with_capacity(order);
        let mut term = CycElem::one(level);
        for i in 0..order {
            coeffs.push(term.clone());
            term = (&term * c).scale_rational(&Rational::new(BigInt::one(), BigInt::from(i + 1)));
        }
        FormalSeries { level, coeffs }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Number of known coefficients W (w^0 … w^{W−1}).
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &CycElem {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[CycElem] {
        &self.coeffs
    }

    pub fn add(&self, other: &FormalSeries) -> FormalSeries {
        let n = self.order().min(other.order());
        let cs = (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        FormalSeries::new(self.level, cs, n)
    }

    pub fn sub(&self, other: &FormalSeries) -> FormalSeries {
        let n = self.order().min(other.order());
        let cs = (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        FormalSeries::new(self.level, cs, n)
    }

    pub fn mul(&self, other: &FormalSeries) -> FormalSeries {
        let n = self.order().min(other.order());
        let mut cs = vec![CycElem::zero(self.level); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    cs[i + j] += &(a * b);
                }
            }
        }
        FormalSeries::new(self.level, cs, n)
    }

    pub fn scale(&self, c: &CycElem) -> FormalSeries {
        let cs = self.coeffs.iter().map(|x| x * c).collect();
        FormalSeries::new(self.level, cs, self.order())
    }

    /// d/dw; the order drops by one.
    pub fn derivative(&self) -> FormalSeries {
        let n = self.order().saturating_sub(1);
        let cs = (0..n)
            .map(|i| self.coeffs[i + 1].scale_int(&BigInt::from(i + 1)))
            .collect();
        FormalSeries::new(self.level, cs, n)
    }

    /// log f for f with constant term 1.
    pub fn log(&self) -> Result<FormalSeries, ArithError> {
        if self.coeffs.is_empty() || !self.coeffs[0].is_one() {
            return Err(ArithError::LogOfNonUnit);
        }
        let n = self.order();
        // n·L_n = n·f_n − Σ_{k=1}^{n−1} k·L_k·f_{n−k}
        let mut out = vec![CycElem::zero(self.level); n];
        for m in 1..n {
            let mut acc = self.coeffs[m].scale_int(&BigInt::from(m));
            for k in 1..m {
                if out[k].is_zero() || self.coeffs[m - k].is_zero() {
                    continue;
                }
                acc -= &(&out[k] * &self.coeffs[m - k]).scale_int(&BigInt::from(k));
            }
            out[m] = acc.scale_rational(&Rational::new(BigInt::one(), BigInt::from(m)));
        }
        Ok(FormalSeries::new(self.level, out, n))
    }

    /// exp f for f with constant term 0.
    pub fn exp(&self) -> Result<FormalSeries, ArithError> {
        let n = self.order();
        if n > 0 && !self.coeffs[0].is_zero() {
            return Err(ArithError::ExpOfNonZeroConstant);
        }
        // n·E_n = Σ_{k=1}^{n} k·f_k·E_{n−k}
        let mut out = vec![CycElem::zero(self.level); n];
        if n > 0 {
            out[0] = CycElem::one(self.level);
        }
        for m in 1..n {
            let mut acc = CycElem::zero(self.level);
            for k in 1..=m {
                if self.coeffs[k].is_zero() || out[m - k].is_zero() {
                    continue;
                }
                acc += &(&self.coeffs[k] * &out[m - k]).scale_int(&BigInt::from(k));
            }
            out[m] = acc.scale_rational(&Rational::new(BigInt::one(), BigInt::from(m)));
        }
        Ok(FormalSeries::new(self.level, out, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn exp_log_roundtrip() {
        let f = FormalSeries::from_rationals(1, &[rat(1, 1), rat(1, 1)], 8);
        let back = f.log().unwrap().exp().unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn log_of_one_plus_w() {
        let f = FormalSeries::from_rationals(1, &[rat(1, 1), rat(1, 1)], 5);
        let l = f.log().unwrap();
        let want = FormalSeries::from_rationals(
            1,
            &[rat(0, 1), rat(1, 1), rat(-1, 2), rat(1, 3), rat(-1, 4)],
            5,
        );
        assert_eq!(l, want);
    }

    #[test]
    fn domain_errors() {
        let f = FormalSeries::from_rationals(1, &[rat(2, 1)], 3);
        assert_eq!(f.log(), Err(ArithError::LogOfNonUnit));
        assert_eq!(f.exp(), Err(ArithError::ExpOfNonZeroConstant));
    }

    #[test]
    fn exp_linear_matches_exp() {
        let z = CycElem::root_of_unity(5, 2);
        let a = FormalSeries::exp_linear(&z, 7);
        let b = FormalSeries::var(5, 7).scale(&z).exp().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.derivative(), a.scale(&z).truncated(6));
    }

    impl FormalSeries {
        fn truncated(&self, n: usize) -> FormalSeries {
            FormalSeries::new(self.level, self.coeffs.clone(), n)
        }
    }
}
