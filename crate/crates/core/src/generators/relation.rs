//! The coefficient of t^N in exp(Σ_{k≥1} t^k/k! · Σ_j s_{a_j/l}^(k)).

use num_bigint::BigInt;
use num_traits::One;

use super::series::s_series;
use super::GenError;
use crate::arith::{QSeries, Rational};

/// For residues a_1..a_{N+1} summing to 0 mod l, the t^N coefficient (which vanishes).
pub fn relation_coefficient(l: u32, residues: &[i64], prec: i64) -> Result<QSeries, GenError> {
    let li = l as i64;
    let bad = || GenError::BadResidues {
        residues: residues.to_vec(),
        l,
    };
    if l == 0 || residues.is_empty() || residues.iter().any(|a| a.rem_euclid(li) == 0) {
        return Err(bad());
    }
    if residues.iter().sum::<i64>().rem_euclid(li) != 0 {
        return Err(bad());
    }
    let n = residues.len() - 1;
    // c_k = S_k / k!
    let mut c = vec![QSeries::zero(l, prec)];
    let mut fact = BigInt::one();
    for k in 1..=n as u32 {
        fact *= BigInt::from(k);
        let mut total = QSeries::zero(l, prec);
        for &a in residues {
            total = total.add(&s_series(a, l, k, prec)?);
        }
        c.push(total.scale_rational(&Rational::new(BigInt::one(), fact.clone())));
    }
    // m·E_m = Σ_{k=1}^m k·c_k·E_{m−k}
    let mut e = vec![QSeries::one(l, prec)];
    for m in 1..=n {
        let mut acc = QSeries::zero(l, prec);
        for k in 1..=m {
            acc = acc.add(&c[k].mul(&e[m - k]).scale_int(k as i64));
        }
        e.push(acc.scale_rational(&Rational::new(BigInt::one(), BigInt::from(m))));
    }
    Ok(e.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishing_examples() {
        assert!(relation_coefficient(5, &[1, 4], 20).unwrap().is_zero());
        assert!(relation_coefficient(5, &[1, 2, 2], 40).unwrap().is_zero());
        assert!(relation_coefficient(7, &[1, 2, 4], 40).unwrap().is_zero());
        assert!(relation_coefficient(7, &[1, 1, 2, 3], 25)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn nonzero_sum_is_rejected() {
        assert!(matches!(
            relation_coefficient(5, &[1, 2], 5),
            Err(GenError::BadResidues { .. })
        ));
        assert!(matches!(
            relation_coefficient(5, &[5, 0], 5),
            Err(GenError::BadResidues { .. })
        ));
    }
}
