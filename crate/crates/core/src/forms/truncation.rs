//! Which m contribute below a given power of q, with a checkable certificate.
//!
//! For every m, ord_q r(q,m) ≥ L(m) = min_{n∈S°} m·n + Σ_i max(0, −m·d_i),
//! where S° is the set of lattice points interior to the zonotope Σ_i [0, d_i].
//! On a closed chamber of the arrangement {m·d_i = 0} the second term is
//! linear, so L is concave and positively homogeneous there, hence
//! superadditive. Writing m = Σ μ_j u_j over the chamber's extreme rays gives
//! L(m) ≥ ρ·|m|_∞ with ρ = min_j L(u_j)/|u_j|_∞.

use serde::{Deserialize, Serialize};

use super::FormsError;
use crate::geom::linalg::{dot, feasible, nullspace, primitive, rank};
use crate::geom::Fan;

/// The lattice points strictly inside the zonotope spanned by `rays`.
pub fn zonotope_interior(rays: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = rays.first().map_or(0, Vec::len);
    let normals = hyperplane_normals(rays, r);
    let support = |u: &[i64]| -> (i64, i64) {
        rays.iter().fold((0, 0), |(lo, hi), d| {
            let t = dot(u, d);
            (lo + t.min(0), hi + t.max(0))
        })
    };
    let bounds: Vec<(Vec<i64>, i64, i64)> = normals
        .into_iter()
        .map(|u| {
            let (lo, hi) = support(&u);
            (u, lo, hi)
        })
        .collect();
    let box_lo: Vec<i64> = (0..r)
        .map(|j| rays.iter().map(|d| d[j].min(0)).sum())
        .collect();
    let box_hi: Vec<i64> = (0..r)
        .map(|j| rays.iter().map(|d| d[j].max(0)).sum())
        .collect();
    let mut out = vec![];
    for x in box_points(&box_lo, &box_hi) {
        if bounds.iter().all(|(u, lo, hi)| {
            let t = dot(u, &x);
            *lo < t && t < *hi
        }) {
            out.push(x);
        }
    }
    out
}

/// Normals of the hyperplanes spanned by r−1 independent rays (one per direction).
fn hyperplane_normals(rays: &[Vec<i64>], r: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![];
    for subset in subsets(rays.len(), r.saturating_sub(1)) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| rays[i].clone()).collect();
        if rank(&rows) + 1 != r && r > 0 {
            continue;
        }
        let ns = nullspace(&rows, r);
        if ns.len() != 1 {
            continue;
        }
        let v = canonical_line(&ns[0]);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn canonical_line(v: &[i64]) -> Vec<i64> {
    let v = primitive(v);
    let lead = v.iter().find(|&&x| x != 0).copied().unwrap_or(1);
    if lead < 0 {
        v.iter().map(|x| -x).collect()
    } else {
        v
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(0, n, k, &mut vec![], &mut out);
    out
}

/// All integer points of the box lo ≤ x ≤ hi.
pub(crate) fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for (a, b) in lo.iter().zip(hi) {
        let mut next = Vec::with_capacity(out.len() * (b - a + 1).max(0) as usize);
        for p in &out {
            for x in *a..=*b {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// L(m) for the given rays and zonotope interior.
pub fn lower_order(rays: &[Vec<i64>], interior: &[Vec<i64>], m: &[i64]) -> i64 {
    let neg: i64 = rays.iter().map(|d| (-dot(m, d)).max(0)).sum();
    let lin = interior.iter().map(|n| dot(m, n)).min().unwrap_or(0);
    lin + neg
}

/// One closed chamber: its sign vector, extreme rays and L at each ray.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionBound {
    pub signs: Vec<i8>,
    pub rays: Vec<Vec<i64>>,
    pub bounds: Vec<i64>,
}

/// Proof that every m with |m|_∞ > `radius` has L(m) > `prec`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationCertificate {
    pub prec: i64,
    pub radius: i64,
    pub interior: Vec<Vec<i64>>,
    pub regions: Vec<RegionBound>,
}

/// S° and the chamber data of a fan, reusable across precisions.
#[derive(Debug, Clone)]
pub struct TruncationBound {
    rays: Vec<Vec<i64>>,
    interior: Vec<Vec<i64>>,
    regions: Vec<RegionBound>,
}

impl TruncationBound {
    pub fn new(fan: &Fan) -> Result<TruncationBound, FormsError> {
        let rays = fan.rays().to_vec();
        let r = fan.rank();
        if rank(&rays) != r {
            return Err(FormsError::Certificate(
                "rays do not span the lattice".into(),
            ));
        }
        let interior = zonotope_interior(&rays);
        let candidates: Vec<Vec<i64>> = hyperplane_normals_dual(&rays, r);
        let mut regions = vec![];
        for signs in sign_vectors(rays.len()) {
            if !chamber_is_open(&rays, &signs, r) {
                continue;
            }
            let ext: Vec<Vec<i64>> = candidates
                .iter()
                .filter(|u| in_closed_chamber(&rays, &signs, u))
                .cloned()
                .collect();
            let bounds: Vec<i64> = ext
                .iter()
                .map(|u| lower_order(&rays, &interior, u))
                .collect();
            if let Some(i) = bounds.iter().position(|&b| b <= 0) {
                return Err(FormsError::Certificate(format!(
                    "L vanishes on the ray {:?}; is the fan complete?",
                    ext[i]
                )));
            }
            regions.push(RegionBound {
                signs,
                rays: ext,
                bounds,
            });
        }
        Ok(TruncationBound {
            rays,
            interior,
            regions,
        })
    }

    pub fn interior(&self) -> &[Vec<i64>] {
        &self.interior
    }

    pub fn regions(&self) -> &[RegionBound] {
        &self.regions
    }

    pub fn lower_order(&self, m: &[i64]) -> i64 {
        lower_order(&self.rays, &self.interior, m)
    }

    /// Smallest R such that |m|_∞ > R forces L(m) > prec.
    pub fn radius(&self, prec: i64) -> i64 {
        let mut radius = 0;
        for reg in &self.regions {
            for (u, &b) in reg.rays.iter().zip(&reg.bounds) {
                let norm = u.iter().map(|x| x.abs()).max().unwrap();
                // need (R+1)·b > prec·norm
                radius = radius.max((prec.max(0) * norm).div_euclid(b));
            }
        }
        radius
    }

    pub fn certificate(&self, prec: i64) -> TruncationCertificate {
        TruncationCertificate {
            prec,
            radius: self.radius(prec),
            interior: self.interior.clone(),
            regions: self.regions.clone(),
        }
    }

    /// Every m with L(m) ≤ prec, in lexicographic order.
    pub fn contributing(&self, prec: i64) -> Vec<Vec<i64>> {
        let r = self.rays[0].len();
        let radius = self.radius(prec);
        box_points(&vec![-radius; r], &vec![radius; r])
            .into_iter()
            .filter(|m| self.lower_order(m) <= prec)
            .collect()
    }
}

/// Primitive directions lying on r−1 independent hyperplanes m·d_i = 0, both signs.
fn hyperplane_normals_dual(rays: &[Vec<i64>], r: usize) -> Vec<Vec<i64>> {
    let mut out = vec![];
    for v in hyperplane_normals(rays, r) {
        out.push(v.iter().map(|x| -x).collect());
        out.push(v);
    }
    out
}

fn sign_vectors(n: usize) -> Vec<Vec<i8>> {
    (0..1u64 << n)
        .map(|code| {
            (0..n)
                .map(|i| if code >> i & 1 == 1 { 1 } else { -1 })
                .collect()
        })
        .collect()
}

/// Is {m : s_i·(m·d_i) > 0 for all i} nonempty? Scaled to s_i·(m·d_i) ≥ 1.
fn chamber_is_open(rays: &[Vec<i64>], signs: &[i8], r: usize) -> bool {
    let ineqs: Vec<(Vec<i64>, i64)> = rays
        .iter()
        .zip(signs)
        .map(|(d, &s)| (d.iter().map(|x| x * s as i64).collect(), 1))
        .collect();
    feasible(r, &[], &ineqs)
}

fn in_closed_chamber(rays: &[Vec<i64>], signs: &[i8], u: &[i64]) -> bool {
    rays.iter()
        .zip(signs)
        .all(|(d, &s)| s as i64 * dot(u, d) >= 0)
}

/// Re-derive everything from the fan and confirm the certificate proves its claim.
pub fn check_certificate(fan: &Fan, cert: &TruncationCertificate) -> Result<(), String> {
    let rays = fan.rays();
    let r = fan.rank();
    let interior = zonotope_interior(rays);
    if interior != cert.interior {
        return Err("interior points differ from the zonotope interior".into());
    }
    // every open chamber is listed
    for signs in sign_vectors(rays.len()) {
        if chamber_is_open(rays, &signs, r) && !cert.regions.iter().any(|g| g.signs == signs) {
            return Err(format!("chamber {signs:?} is missing"));
        }
    }
    for reg in &cert.regions {
        if reg.rays.len() != reg.bounds.len() || reg.rays.is_empty() {
            return Err(format!("chamber {:?} has malformed rays", reg.signs));
        }
        for u in &reg.rays {
            if !in_closed_chamber(rays, &reg.signs, u) {
                return Err(format!("ray {u:?} lies outside chamber {:?}", reg.signs));
            }
        }
        // every extreme ray of the chamber is among the listed ones
        for subset in subsets(rays.len(), r - 1) {
            let rows: Vec<Vec<i64>> = subset.iter().map(|&i| rays[i].clone()).collect();
            let ns = nullspace(&rows, r);
            if ns.len() != 1 {
                continue;
            }
            for v in [ns[0].clone(), ns[0].iter().map(|x| -x).collect()] {
                let v = primitive(&v);
                if in_closed_chamber(rays, &reg.signs, &v) && !reg.rays.contains(&v) {
                    return Err(format!("extreme ray {v:?} of {:?} is missing", reg.signs));
                }
            }
        }
        for (u, &b) in reg.rays.iter().zip(&reg.bounds) {
            let l = lower_order(rays, &interior, u);
            if l != b || l <= 0 {
                return Err(format!("L({u:?}) = {l}, certificate says {b}"));
            }
            // the boundary point (radius+1)·u/|u|_∞ must have L > prec
            let norm = u.iter().map(|x| x.abs()).max().unwrap();
            if (cert.radius + 1) * l <= cert.prec * norm {
                return Err(format!("boundary point on ray {u:?} has L ≤ {}", cert.prec));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::examples;

    #[test]
    fn projective_line() {
        let b = TruncationBound::new(&examples::p1()).unwrap();
        assert_eq!(b.interior(), &[vec![0]]);
        assert_eq!(b.lower_order(&[-4]), 4);
        assert_eq!(b.radius(10), 10);
        assert_eq!(b.contributing(3).len(), 7);
        check_certificate(&examples::p1(), &b.certificate(10)).unwrap();
    }

    #[test]
    fn projective_plane_regions() {
        let fan = examples::p2();
        let b = TruncationBound::new(&fan).unwrap();
        assert_eq!(b.interior(), &[vec![0, 0]]);
        assert_eq!(b.regions().len(), 6);
        assert_eq!(b.lower_order(&[1, 0]), 1);
        check_certificate(&fan, &b.certificate(30)).unwrap();
    }

    #[test]
    fn contributing_set_matches_wider_box() {
        for (_, fan) in examples::all_fans() {
            let b = TruncationBound::new(&fan).unwrap();
            let prec = 6;
            let got = b.contributing(prec);
            let r = fan.rank() as i64;
            let wide = b.radius(prec) + 3;
            let want: Vec<Vec<i64>> = box_points(&vec![-wide; r as usize], &vec![wide; r as usize])
                .into_iter()
                .filter(|m| b.lower_order(m) <= prec)
                .collect();
            assert_eq!(got, want);
            check_certificate(&fan, &b.certificate(prec)).unwrap();
        }
    }

    #[test]
    fn tampered_certificates_fail() {
        let fan = examples::f1();
        let b = TruncationBound::new(&fan).unwrap();
        let mut c = b.certificate(20);
        c.radius -= 1;
        assert!(check_certificate(&fan, &c).is_err());
        let mut c = b.certificate(20);
        c.regions.pop();
        assert!(check_certificate(&fan, &c).is_err());
        let mut c = b.certificate(20);
        c.regions[0].rays.pop();
        c.regions[0].bounds.pop();
        assert!(check_certificate(&fan, &c).is_err());
    }
}
