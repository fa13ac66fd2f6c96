//! Lattices N ⊂ S ⊂ (1/p)N with [S:N] = p^{r−1}, and transport of fans into them.

use std::sync::Arc;

use num_integer::Integer;

use super::linalg::{gcd_all, inverse};
use super::{DegreeFunction, Fan, GeomError};
use crate::arith::Rational;

/// S = (1/p)·K with K = {n ∈ Z^r : φ·n ≡ 0 mod p}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superlattice {
    pub p: u32,
    /// The functional φ over F_p, normalized so its first nonzero entry is 1.
    pub functional: Vec<i64>,
    /// Columns of K, a basis of p·S.
    pub basis: Vec<Vec<i64>>,
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// All (p^r − 1)/(p − 1) lattices S with N ⊂ S ⊂ (1/p)N and [S:N] = p^{r−1}.
pub fn superlattices(rank: usize, p: u32) -> Result<Vec<Superlattice>, GeomError> {
    if !is_prime(p) {
        return Err(GeomError::Invalid(format!("{p} is not prime")));
    }
    let pi = p as i64;
    let mut out = vec![];
    let total = (pi as u64).pow(rank as u32);
    for code in 1..total {
        let mut phi = vec![0i64; rank];
        let mut c = code;
        for x in phi.iter_mut() {
            *x = (c % p as u64) as i64;
            c /= p as u64;
        }
        let lead = phi.iter().position(|&x| x != 0).unwrap();
        if phi[lead] != 1 {
            continue;
        }
        // basis of K: p·e_lead and e_j − φ_j·e_lead
        let mut basis = vec![];
        for j in 0..rank {
            let mut v = vec![0i64; rank];
            if j == lead {
                v[lead] = pi;
            } else {
                v[j] = 1;
                v[lead] = (-phi[j]).rem_euclid(pi);
            }
            basis.push(v);
        }
        out.push(Superlattice {
            p,
            functional: phi,
            basis,
        });
    }
    Ok(out)
}

impl Superlattice {
    /// Whether p·x ∈ K for the integer vector `scaled` = p·x.
    pub fn contains_scaled(&self, scaled: &[i64]) -> bool {
        let s: i64 = self.functional.iter().zip(scaled).map(|(a, b)| a * b).sum();
        s.mod_floor(&(self.p as i64)) == 0
    }

    /// Coordinates in the basis of S of the point d ∈ N.
    fn coords_of(&self, inv: &[Vec<Rational>], d: &[i64]) -> Vec<i64> {
        let p = self.p as i64;
        inv.iter()
            .map(|row| {
                let x: Rational = row
                    .iter()
                    .zip(d)
                    .map(|(a, &b)| a * Rational::from_integer((p * b).into()))
                    .sum();
                assert!(x.is_integer());
                i64::try_from(x.to_integer()).unwrap()
            })
            .collect()
    }

    /// The fan and the degree function `multiplier·deg` rewritten in a basis of S.
    ///
    /// Each ray d becomes the primitive S-vector d/g (g ∈ {1, p}); its value is
    /// multiplier·deg(d/g).
    pub fn transport(
        &self,
        deg: &DegreeFunction,
        multiplier: i64,
    ) -> Result<DegreeFunction, GeomError> {
        let fan = deg.fan();
        let cols: Vec<Vec<i64>> = (0..fan.rank())
            .map(|i| self.basis.iter().map(|b| b[i]).collect())
            .collect();
        let inv = inverse(&cols).expect("superlattice basis is invertible");
        let mut rays = vec![];
        let mut values = vec![];
        for (d, &a) in fan.rays().iter().zip(deg.values()) {
            let c = self.coords_of(&inv, d);
            let g = gcd_all(&c);
            rays.push(c.iter().map(|x| x / g).collect());
            let num = multiplier * a;
            if num % g != 0 {
                return Err(GeomError::LevelViolation { point: d.clone() });
            }
            values.push(num / g);
        }
        let new_fan = Fan::new(fan.rank(), rays, fan.max_cones().to_vec())?;
        DegreeFunction::on(Arc::new(new_fan), deg.level(), values)
    }
}
