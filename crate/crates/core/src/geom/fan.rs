//! Cones and fans with validated face structure.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::linalg::{self, dot, feasible, gcd_all, nullspace};
use super::GeomError;

/// A rational polyhedral cone, stored by its primitive ray generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    /// Indices of the rays in the ambient fan (sorted).
    pub ray_ids: Vec<usize>,
    pub rays: Vec<Vec<i64>>,
    pub dim: usize,
}

impl Cone {
    /// A cone outside any fan; ray ids are positions in `rays`.
    pub fn from_rays(rays: Vec<Vec<i64>>) -> Cone {
        let dim = linalg::rank(&rays);
        Cone {
            ray_ids: (0..rays.len()).collect(),
            rays,
            dim,
        }
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim == self.rays.len()
    }
}

/// Whether the rays `sub` (a subset of `all`) are exactly the rays of a face of cone(`all`).
fn is_face(rank: usize, all: &[Vec<i64>], sub: &BTreeSet<usize>) -> bool {
    let eqs: Vec<Vec<i64>> = sub.iter().map(|&i| all[i].clone()).collect();
    let ineqs: Vec<(Vec<i64>, i64)> = (0..all.len())
        .filter(|i| !sub.contains(i))
        .map(|i| (all[i].clone(), 1))
        .collect();
    feasible(rank, &eqs, &ineqs)
}

/// All faces of cone(`rays`), as index subsets of `rays`, including the empty face.
pub(crate) fn faces_of(rank: usize, rays: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = rays.len();
    assert!(n <= 20, "too many rays in one cone");
    let simplicial = linalg::rank(rays) == n;
    let mut out = vec![];
    for mask in 0u32..(1 << n) {
        let sub: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if simplicial || mask == (1 << n) - 1 || is_face(rank, rays, &sub) {
            out.push(sub.into_iter().collect());
        }
    }
    out
}

/// A fan in N = Z^rank, stored with all of its cones.
#[derive(Debug, Clone)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    cones: Vec<Cone>,
    /// For each cone, a maximal cone containing it.
    parent: Vec<usize>,
    /// Inward facet normals of each full-dimensional maximal cone.
    normals: Vec<Vec<Vec<i64>>>,
    /// Equations cutting out the span of each cone.
    span_eqs: Vec<Vec<Vec<i64>>>,
    complete: bool,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Fan) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

/// The JSON form: faces are derived, never supplied.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FanSpec {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Validate and build a fan from rays and maximal cones (ray indices).
    pub fn new(
        rank: usize,
        rays: Vec<Vec<i64>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Fan, GeomError> {
        if rank == 0 {
            return Err(GeomError::Invalid("rank must be positive".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(GeomError::Invalid(format!(
                    "ray {i} has {} entries, expected {rank}",
                    r.len()
                )));
            }
            match gcd_all(r) {
                0 => return Err(GeomError::Invalid(format!("ray {i} is zero"))),
                1 => {}
                _ => return Err(GeomError::Invalid(format!("ray {i} is not primitive"))),
            }
            if let Some(j) = rays[..i].iter().position(|s| s == r) {
                return Err(GeomError::Invalid(format!("rays {j} and {i} coincide")));
            }
        }
        let mut cones_sorted: Vec<Vec<usize>> = vec![];
        for (c, cone) in max_cones.iter().enumerate() {
            if cone.is_empty() {
                return Err(GeomError::Invalid(format!("maximal cone {c} is empty")));
            }
            let set: BTreeSet<usize> = cone.iter().copied().collect();
            if set.len() != cone.len() {
                return Err(GeomError::Invalid(format!(
                    "maximal cone {c} repeats a ray"
                )));
            }
            if let Some(&bad) = set.iter().find(|&&i| i >= rays.len()) {
                return Err(GeomError::Invalid(format!(
                    "maximal cone {c} uses unknown ray {bad}"
                )));
            }
            cones_sorted.push(set.into_iter().collect());
        }
        for i in 0..rays.len() {
            if !cones_sorted.iter().any(|c| c.contains(&i)) {
                return Err(GeomError::Invalid(format!("ray {i} lies in no cone")));
            }
        }
        for (a, ca) in cones_sorted.iter().enumerate() {
            for (b, cb) in cones_sorted.iter().enumerate() {
                if a != b && ca.iter().all(|i| cb.contains(i)) {
                    return Err(GeomError::Invalid(format!(
                        "maximal cone {a} is contained in maximal cone {b}"
                    )));
                }
            }
        }

        // faces of every maximal cone
        let mut face_index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut cones = vec![];
        let mut parent = vec![];
        for (c, ids) in cones_sorted.iter().enumerate() {
            let vecs: Vec<Vec<i64>> = ids.iter().map(|&i| rays[i].clone()).collect();
            let faces = faces_of(rank, &vecs);
            if !faces.iter().any(|f| f.is_empty()) {
                return Err(GeomError::Invalid(format!(
                    "maximal cone {c} is not pointed"
                )));
            }
            for (k, &i) in ids.iter().enumerate() {
                if !faces.iter().any(|f| f.len() == 1 && f[0] == k) {
                    return Err(GeomError::Invalid(format!(
                        "ray {i} is not an extreme ray of maximal cone {c}"
                    )));
                }
            }
            for f in faces {
                let fids: Vec<usize> = f.iter().map(|&k| ids[k]).collect();
                if face_index.contains_key(&fids) {
                    continue;
                }
                let frays: Vec<Vec<i64>> = fids.iter().map(|&i| rays[i].clone()).collect();
                let dim = linalg::rank(&frays);
                face_index.insert(fids.clone(), cones.len());
                cones.push(Cone {
                    ray_ids: fids,
                    rays: frays,
                    dim,
                });
                parent.push(c);
            }
        }

        // pairwise intersections must be common faces
        for a in 0..cones_sorted.len() {
            for b in a + 1..cones_sorted.len() {
                let (ca, cb) = (&cones_sorted[a], &cones_sorted[b]);
                let common: Vec<usize> = ca.iter().copied().filter(|i| cb.contains(i)).collect();
                let eqs: Vec<Vec<i64>> = common.iter().map(|&i| rays[i].clone()).collect();
                let mut ineqs: Vec<(Vec<i64>, i64)> = vec![];
                for &i in ca.iter().filter(|i| !common.contains(i)) {
                    ineqs.push((rays[i].clone(), 1));
                }
                for &i in cb.iter().filter(|i| !common.contains(i)) {
                    ineqs.push((rays[i].iter().map(|x| -x).collect(), 1));
                }
                if !feasible(rank, &eqs, &ineqs) {
                    return Err(GeomError::Invalid(format!(
                        "maximal cones {a} and {b} do not meet in a common face"
                    )));
                }
            }
        }

        let mut order: Vec<usize> = (0..cones.len()).collect();
        order.sort_by(|&x, &y| {
            (cones[x].dim, &cones[x].ray_ids).cmp(&(cones[y].dim, &cones[y].ray_ids))
        });
        let cones: Vec<Cone> = order.iter().map(|&i| cones[i].clone()).collect();
        let parent: Vec<usize> = order.iter().map(|&i| parent[i]).collect();
        let span_eqs = cones.iter().map(|c| nullspace(&c.rays, rank)).collect();

        let mut fan = Fan {
            rank,
            rays,
            max_cones: cones_sorted,
            cones,
            parent,
            normals: vec![],
            span_eqs,
            complete: false,
        };
        fan.normals = (0..fan.max_cones.len())
            .map(|c| fan.facet_normals(c))
            .collect();
        fan.complete = fan.is_complete().unwrap_or(false);
        Ok(fan)
    }

    pub fn from_spec(spec: &FanSpec) -> Result<Fan, GeomError> {
        Fan::new(spec.rank, spec.rays.clone(), spec.max_cones.clone())
    }

    pub fn to_spec(&self) -> FanSpec {
        FanSpec {
            rank: self.rank,
            rays: self.rays.clone(),
            max_cones: self.max_cones.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Every cone of the fan, the zero cone first, sorted by dimension.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// The maximal cone with index `c` as a [`Cone`].
    pub fn max_cone(&self, c: usize) -> Cone {
        let ids = self.max_cones[c].clone();
        let rays: Vec<Vec<i64>> = ids.iter().map(|&i| self.rays[i].clone()).collect();
        let dim = linalg::rank(&rays);
        Cone {
            ray_ids: ids,
            rays,
            dim,
        }
    }

    /// Completeness as established at construction.
    pub fn complete(&self) -> bool {
        self.complete
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(Cone::is_simplicial)
    }

    /// Every maximal cone is full-dimensional and unimodular.
    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|c| {
            c.len() == self.rank && {
                let m: Vec<Vec<i64>> = c.iter().map(|&i| self.rays[i].clone()).collect();
                linalg::det(&m).abs() == 1
            }
        })
    }

    /// Facet pairing plus connectivity through shared facets.
    pub fn is_complete(&self) -> Result<bool, GeomError> {
        let dims: BTreeSet<usize> = (0..self.max_cones.len())
            .map(|c| self.max_cone(c).dim)
            .collect();
        if dims.len() > 1 {
            return Err(GeomError::NotPure);
        }
        if dims.into_iter().next() != Some(self.rank) {
            return Ok(false);
        }
        let mut facet_owners: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (c, ids) in self.max_cones.iter().enumerate() {
            for f in self.cones.iter().filter(|f| f.dim + 1 == self.rank) {
                if f.ray_ids.iter().all(|i| ids.contains(i)) {
                    facet_owners.entry(f.ray_ids.clone()).or_default().push(c);
                }
            }
        }
        if facet_owners.values().any(|o| o.len() != 2) {
            return Ok(false);
        }
        // connectivity of maximal cones through shared facets
        let n = self.max_cones.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for owners in facet_owners.values() {
                if owners.contains(&c) {
                    for &o in owners {
                        if !seen[o] {
                            seen[o] = true;
                            stack.push(o);
                        }
                    }
                }
            }
        }
        Ok(seen.into_iter().all(|s| s))
    }

    fn facet_normals(&self, c: usize) -> Vec<Vec<i64>> {
        let cone = self.max_cone(c);
        if cone.dim != self.rank {
            return vec![];
        }
        let mut out = vec![];
        for f in self.cones.iter().filter(|f| f.dim + 1 == self.rank) {
            if !f.ray_ids.iter().all(|i| cone.ray_ids.contains(i)) {
                continue;
            }
            let ns = nullspace(&f.rays, self.rank);
            debug_assert_eq!(ns.len(), 1);
            let mut u = ns[0].clone();
            let witness = cone
                .rays
                .iter()
                .map(|r| dot(&u, r))
                .find(|&x| x != 0)
                .expect("facet normal vanishes on the cone");
            if witness < 0 {
                u.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(u);
        }
        out
    }

    /// Index of the first full-dimensional maximal cone containing `n`.
    pub fn max_cone_containing(&self, n: &[i64]) -> Option<usize> {
        (0..self.max_cones.len()).find(|&c| {
            !self.normals[c].is_empty() && self.normals[c].iter().all(|u| dot(u, n) >= 0)
        })
    }

    /// Whether cone `k` of [`Fan::cones`] contains `n`.
    pub fn cone_contains(&self, k: usize, n: &[i64]) -> bool {
        let p = self.parent[k];
        if self.normals[p].is_empty() {
            // Farkas: n lies outside iff some m is ≥ 0 on the rays and negative at n
            let mut ineqs: Vec<(Vec<i64>, i64)> =
                self.cones[k].rays.iter().map(|r| (r.clone(), 0)).collect();
            ineqs.push((n.iter().map(|x| -x).collect(), 1));
            return !feasible(self.rank, &[], &ineqs);
        }
        self.normals[p].iter().all(|u| dot(u, n) >= 0)
            && self.span_eqs[k].iter().all(|e| dot(e, n) == 0)
    }

    /// Pulling triangulation: repeatedly cone off the lowest-indexed ray.
    pub fn triangulate(&self) -> Fan {
        if self.is_simplicial() {
            return self.clone();
        }
        let mut simplices: BTreeSet<Vec<usize>> = BTreeSet::new();
        for ids in &self.max_cones {
            for s in self.pull(ids) {
                simplices.insert(s);
            }
        }
        Fan::new(
            self.rank,
            self.rays.clone(),
            simplices.into_iter().collect(),
        )
        .expect("pulling triangulation of a valid fan is a fan")
    }

    fn pull(&self, ids: &[usize]) -> Vec<Vec<usize>> {
        let vecs: Vec<Vec<i64>> = ids.iter().map(|&i| self.rays[i].clone()).collect();
        let dim = linalg::rank(&vecs);
        if ids.len() == dim {
            return vec![ids.to_vec()];
        }
        let apex = ids[0];
        let mut out = vec![];
        for f in faces_of(self.rank, &vecs) {
            if f.contains(&0) {
                continue;
            }
            let fids: Vec<usize> = f.iter().map(|&k| ids[k]).collect();
            let fvecs: Vec<Vec<i64>> = fids.iter().map(|&i| self.rays[i].clone()).collect();
            if linalg::rank(&fvecs) + 1 != dim {
                continue;
            }
            for s in self.pull(&fids) {
                let mut t = vec![apex];
                t.extend(s);
                t.sort_unstable();
                out.push(t);
            }
        }
        out
    }

    /// Cones containing `n`, with signs (−1)^codim summed.
    pub fn euler_sum_at(&self, n: &[i64]) -> i64 {
        (0..self.cones.len())
            .filter(|&k| self.cone_contains(k, n))
            .map(|k| {
                if (self.rank - self.cones[k].dim).is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            })
            .sum()
    }
}
