//! f_{N,deg} = Σ_m r(q,m), summed over the finitely many m with L(m) ≤ prec.
//!
//! Every cone term is an integral series over Z[x]/(x^l − 1) except for the
//! constants 1/(1 − ζ^{a_i}) from rays with m·d_i = 0. Terms are accumulated in
//! i64 buckets keyed by that set of rays, and the constants are applied once
//! at the end.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::truncation::{TruncationBound, TruncationCertificate};
use super::FormsError;
use crate::arith::{CycElem, QSeries, Rational};
use crate::geom::linalg::dot;
use crate::geom::parallelepiped::parallelepiped;
use crate::geom::DegreeFunction;

/// Series together with the certificate that no omitted m contributes.
#[derive(Debug, Clone)]
pub struct LatticeSum {
    pub series: QSeries,
    pub certificate: TruncationCertificate,
    /// Number of m summed.
    pub terms: usize,
}

struct ConeData {
    ray_ids: Vec<usize>,
    sign: i64,
    /// (point, l·deg(point) mod l)
    points: Vec<(Vec<i64>, usize)>,
}

type Buckets = BTreeMap<Vec<usize>, Vec<i64>>;

struct Pipeline {
    l: usize,
    prec: usize,
    rays: Vec<Vec<i64>>,
    values: Vec<i64>,
    cones: Vec<ConeData>,
}

impl Pipeline {
    fn new(deg: &DegreeFunction, prec: i64) -> Result<Pipeline, FormsError> {
        let fan = deg.fan();
        let l = deg.level() as usize;
        let mut cones = vec![];
        for cone in fan.cones() {
            let data = parallelepiped(cone)?;
            let points = data
                .points
                .iter()
                .zip(&data.coords)
                .map(|(p, lambda)| (p.clone(), deg.numerator_on(&cone.ray_ids, lambda) as usize))
                .collect();
            cones.push(ConeData {
                ray_ids: cone.ray_ids.clone(),
                sign: if (fan.rank() - cone.dim).is_multiple_of(2) {
                    1
                } else {
                    -1
                },
                points,
            });
        }
        Ok(Pipeline {
            l,
            prec: prec as usize,
            rays: fan.rays().to_vec(),
            values: deg.values().to_vec(),
            cones,
        })
    }

    /// Add r(q,m) into `acc`, using `buf` as scratch.
    fn add_m(&self, m: &[i64], acc: &mut Buckets, buf: &mut Vec<i64>) {
        let l = self.l;
        let li = l as i64;
        let prec = self.prec as i64;
        let k: Vec<i64> = self.rays.iter().map(|d| dot(m, d)).collect();
        for cone in &self.cones {
            let mut shift = 0;
            let mut twist = 0i64;
            let mut sign = cone.sign;
            let mut zero = vec![];
            for &i in &cone.ray_ids {
                if k[i] < 0 {
                    shift -= k[i];
                    twist -= self.values[i];
                    sign = -sign;
                } else if k[i] == 0 {
                    zero.push(i);
                }
            }
            let exps: Vec<i64> = cone.points.iter().map(|(p, _)| dot(m, p) + shift).collect();
            let lo = *exps.iter().min().unwrap();
            if lo > prec {
                continue;
            }
            debug_assert!(lo >= 0);
            buf.clear();
            buf.resize((self.prec + 1) * l, 0);
            for ((_, t), &e) in cone.points.iter().zip(&exps) {
                if e <= prec {
                    let j = (*t as i64 + twist).rem_euclid(li) as usize;
                    buf[e as usize * l + j] += sign;
                }
            }
            // divide by 1 − ζ^rot q^step for each ray with m·d ≠ 0
            for &i in &cone.ray_ids {
                if k[i] == 0 {
                    continue;
                }
                let step = k[i].unsigned_abs() as usize;
                let rot = (if k[i] > 0 {
                    self.values[i]
                } else {
                    -self.values[i]
                })
                .rem_euclid(li) as usize;
                for n in (lo as usize + step)..=self.prec {
                    let (done, cur) = buf.split_at_mut(n * l);
                    let prev = &done[(n - step) * l..(n - step + 1) * l];
                    let cur = &mut cur[..l];
                    for j in 0..l {
                        cur[(j + rot) % l] += prev[j];
                    }
                }
            }
            let slot = acc
                .entry(zero)
                .or_insert_with(|| vec![0; (self.prec + 1) * l]);
            for (a, b) in slot.iter_mut().zip(buf.iter()) {
                *a += b;
            }
        }
    }

    fn finish(&self, level: u32, acc: Buckets) -> Result<QSeries, FormsError> {
        let l = self.l;
        let mut total = vec![CycElem::zero(level); self.prec + 1];
        for (zero, vec) in acc {
            let mut c = CycElem::one(level);
            for i in zero {
                c = &c
                    * &(&CycElem::one(level) - &CycElem::root_of_unity(level, self.values[i]))
                        .inv()?;
            }
            for (n, slot) in total.iter_mut().enumerate() {
                let chunk = &vec[n * l..(n + 1) * l];
                if chunk.iter().all(|&x| x == 0) {
                    continue;
                }
                let poly: Vec<Rational> = chunk
                    .iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect();
                *slot += &(&CycElem::from_poly(level, &poly) * &c);
            }
        }
        Ok(QSeries::from_coeffs(level, 0, total, self.prec as i64))
    }
}

fn merge(mut a: Buckets, b: Buckets) -> Buckets {
    for (k, v) in b {
        match a.get_mut(&k) {
            Some(slot) => slot.iter_mut().zip(&v).for_each(|(x, y)| *x += y),
            None => {
                a.insert(k, v);
            }
        }
    }
    a
}

/// The lattice-sum definition, on a triangulation of the fan, with its certificate.
pub fn lattice_sum(deg: &DegreeFunction, prec: i64) -> Result<LatticeSum, FormsError> {
    if prec < 0 {
        return Err(FormsError::BadPrecision { prec });
    }
    let fan = deg.fan();
    if !fan.complete() {
        return Err(FormsError::Geom(crate::geom::GeomError::NotComplete));
    }
    let tri = if fan.is_simplicial() {
        deg.clone()
    } else {
        deg.with_fan(Arc::new(fan.triangulate()))?
    };
    let bound = TruncationBound::new(tri.fan())?;
    let ms = bound.contributing(prec);
    let pipeline = Pipeline::new(&tri, prec)?;
    let acc = ms
        .par_chunks(64)
        .map(|chunk| {
            let mut acc = Buckets::new();
            let mut buf = vec![];
            for m in chunk {
                pipeline.add_m(m, &mut acc, &mut buf);
            }
            acc
        })
        .reduce(Buckets::new, merge);
    let series = pipeline.finish(deg.level(), acc)?;
    Ok(LatticeSum {
        series,
        certificate: bound.certificate(prec),
        terms: ms.len(),
    })
}

/// f_{N,deg} through q^prec by the lattice-sum definition.
pub fn toric_form_lattice_sum(deg: &DegreeFunction, prec: i64) -> Result<QSeries, FormsError> {
    Ok(lattice_sum(deg, prec)?.series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::cone::r_of_m;
    use crate::generators::s_series;
    use crate::geom::examples;

    #[test]
    fn projective_line_is_minus_twice_s1() {
        for l in [5u32, 7] {
            for a in 1..l as i64 {
                let deg = DegreeFunction::new(&examples::p1(), l, vec![a, a]).unwrap();
                let f = toric_form_lattice_sum(&deg, 40).unwrap();
                assert_eq!(f, s_series(a, l, 1, 40).unwrap().scale_int(-2));
            }
        }
    }

    #[test]
    fn fast_path_matches_cone_sums() {
        for (fan, vals) in [
            (examples::p2(), vec![1i64, 2, 3]),
            (examples::f1(), vec![1, 4, 2, 6]),
            (examples::p2_stellar(), vec![1, 2, 4, 3]),
        ] {
            let deg = DegreeFunction::new(&fan, 7, vals).unwrap();
            let prec = 8;
            let fast = toric_form_lattice_sum(&deg, prec).unwrap();
            let bound = TruncationBound::new(&fan).unwrap();
            let mut slow = QSeries::zero(7, prec);
            for m in bound.contributing(prec) {
                let r = r_of_m(&deg, &m, prec).unwrap();
                assert!(r.valuation() >= bound.lower_order(&m), "m={m:?}");
                slow = slow.add(&r);
            }
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn non_simplicial_fan_is_triangulated() {
        let cube = examples::cube_fan();
        let deg = DegreeFunction::new(&cube, 5, vec![1; 8]).unwrap();
        let f = toric_form_lattice_sum(&deg, 4).unwrap();
        assert_eq!(f.prec(), 4);
    }
}
