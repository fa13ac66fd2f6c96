//! Lattice points of the half-open fundamental parallelepiped of a simplicial cone.

use num_traits::{One, Zero};

use super::linalg::smith;
use super::{Cone, GeomError};
use crate::arith::Rational;

/// The points Σ λ_i d_i with 0 ≤ λ_i < 1 that lie in the lattice.
#[derive(Debug, Clone)]
pub struct ParallelepipedData {
    pub cone: Cone,
    pub points: Vec<Vec<i64>>,
    /// λ for each point, in the ray basis.
    pub coords: Vec<Vec<Rational>>,
    pub index: u64,
}

fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Enumerate the parallelepiped via the Smith form U·A·V = D of the ray matrix A.
///
/// With μ = V⁻¹λ, A·λ is integral iff e_i·μ_i ∈ Z, so the points are
/// A·frac(V·μ) for μ_i ∈ {0, 1/e_i, …, (e_i−1)/e_i}.
pub fn parallelepiped(cone: &Cone) -> Result<ParallelepipedData, GeomError> {
    if !cone.is_simplicial() {
        return Err(GeomError::NotSimplicial);
    }
    let k = cone.rays.len();
    let r = cone.rays.first().map_or(0, Vec::len);
    if k == 0 {
        return Ok(ParallelepipedData {
            cone: cone.clone(),
            points: vec![vec![0; r]],
            coords: vec![vec![]],
            index: 1,
        });
    }
    let a: Vec<Vec<i64>> = (0..r)
        .map(|i| cone.rays.iter().map(|d| d[i]).collect())
        .collect();
    let s = smith(&a);
    let e: Vec<i64> = (0..k).map(|i| s.d[i][i]).collect();
    let index: u64 = e.iter().map(|&x| x as u64).product();
    let mut points = Vec::with_capacity(index as usize);
    let mut coords = Vec::with_capacity(index as usize);
    let mut digits = vec![0i64; k];
    loop {
        let lambda: Vec<Rational> = (0..k)
            .map(|i| {
                let x: Rational = (0..k)
                    .map(|j| Rational::new((s.v[i][j] * digits[j]).into(), e[j].into()))
                    .sum();
                frac(&x)
            })
            .collect();
        let p: Vec<i64> = (0..r)
            .map(|i| {
                let x: Rational = (0..k)
                    .map(|j| &lambda[j] * Rational::from_integer(cone.rays[j][i].into()))
                    .sum();
                debug_assert!(x.is_integer());
                i64::try_from(x.to_integer()).unwrap()
            })
            .collect();
        points.push(p);
        coords.push(lambda);
        // odometer over the digit ranges
        let mut i = 0;
        loop {
            if i == k {
                return Ok(finish(cone, points, coords, index));
            }
            digits[i] += 1;
            if digits[i] < e[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn finish(
    cone: &Cone,
    points: Vec<Vec<i64>>,
    coords: Vec<Vec<Rational>>,
    index: u64,
) -> ParallelepipedData {
    debug_assert!(coords.iter().all(|l| l
        .iter()
        .all(|x| *x >= Rational::zero() && *x < Rational::one())));
    ParallelepipedData {
        cone: cone.clone(),
        points,
        coords,
        index,
    }
}
