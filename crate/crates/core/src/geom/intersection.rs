//! Intersection numbers of torus-invariant divisors on a smooth complete toric variety.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use super::linalg::{dot, inverse};
use super::{Fan, GeomError};
use crate::arith::Rational;

/// Which maximal cone to use when several contain the support of a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeChoice {
    First,
    Last,
}

/// A smooth complete fan with integration of divisor monomials.
#[derive(Debug)]
pub struct IntersectionRing {
    fan: Fan,
    /// Dual bases of the maximal cones: `duals[c][k]·d_{c_j}` = δ_kj.
    duals: Vec<Vec<Vec<i64>>>,
    memo: Mutex<HashMap<Vec<u32>, Rational>>,
}

impl IntersectionRing {
    pub fn new(fan: &Fan) -> Result<IntersectionRing, GeomError> {
        if !fan.is_smooth() {
            return Err(GeomError::NotSmooth);
        }
        if !fan.complete() {
            return Err(GeomError::NotComplete);
        }
        let duals = fan
            .max_cones()
            .iter()
            .map(|ids| {
                let m: Vec<Vec<i64>> = (0..fan.rank())
                    .map(|i| ids.iter().map(|&j| fan.rays()[j][i]).collect())
                    .collect();
                // rows of A⁻¹ form the dual basis; entries are integral for unimodular A
                inverse(&m)
                    .expect("smooth cone is invertible")
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|x| i64::try_from(x.to_integer()).unwrap())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(IntersectionRing {
            fan: fan.clone(),
            duals,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    fn spans_cone(&self, support: &[usize]) -> bool {
        self.fan
            .max_cones()
            .iter()
            .any(|c| support.iter().all(|i| c.contains(i)))
    }

    /// ∫_X Π D_i^{e_i}.
    pub fn integrate_monomial(&self, exponents: &[u32]) -> Result<Rational, GeomError> {
        self.integrate_with(exponents, ConeChoice::First)
    }

    /// As [`IntersectionRing::integrate_monomial`], choosing the rewriting cone explicitly.
    pub fn integrate_with(
        &self,
        exponents: &[u32],
        choice: ConeChoice,
    ) -> Result<Rational, GeomError> {
        if exponents.len() != self.fan.rays().len() {
            return Err(GeomError::Invalid(format!(
                "{} exponents for {} rays",
                exponents.len(),
                self.fan.rays().len()
            )));
        }
        let total: u32 = exponents.iter().sum();
        if total as usize != self.fan.rank() {
            return Err(GeomError::WrongDegree {
                expected: self.fan.rank(),
                got: total as usize,
            });
        }
        if choice == ConeChoice::First {
            if let Some(v) = self.memo.lock().unwrap().get(exponents) {
                return Ok(v.clone());
            }
        }
        let v = self.integrate_rec(exponents, choice);
        if choice == ConeChoice::First {
            self.memo
                .lock()
                .unwrap()
                .insert(exponents.to_vec(), v.clone());
        }
        Ok(v)
    }

    fn integrate_rec(&self, e: &[u32], choice: ConeChoice) -> Rational {
        let support: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
        if !self.spans_cone(&support) {
            return Rational::zero();
        }
        let Some(j) = (0..e.len()).find(|&i| e[i] >= 2) else {
            return Rational::one();
        };
        let mut containing = self
            .fan
            .max_cones()
            .iter()
            .enumerate()
            .filter(|(_, c)| support.iter().all(|i| c.contains(i)));
        let (c, ids) = match choice {
            ConeChoice::First => containing.next(),
            ConeChoice::Last => containing.next_back(),
        }
        .unwrap();
        // m = −(dual vector of d_j): then D_j = Σ_{i ∉ σ} (m·d_i) D_i
        let k = ids.iter().position(|&i| i == j).unwrap();
        let m: Vec<i64> = self.duals[c][k].iter().map(|x| -x).collect();
        let mut acc = Rational::zero();
        for (i, d) in self.fan.rays().iter().enumerate() {
            if ids.contains(&i) {
                continue;
            }
            let coef = dot(&m, d);
            if coef == 0 {
                continue;
            }
            let mut f = e.to_vec();
            f[j] -= 1;
            f[i] += 1;
            acc += Rational::from_integer(coef.into()) * self.integrate_rec(&f, choice);
        }
        acc
    }
}

/// `integrate_monomial`
pub fn integrate_monomial(
    ring: &IntersectionRing,
    exponents: &[u32],
) -> Result<Rational, GeomError> {
    ring.integrate_monomial(exponents)
}
