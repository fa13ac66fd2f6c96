//! Bundled example fans.

use super::Fan;

fn build(rank: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
    Fan::new(
        rank,
        rays.iter().map(|r| r.to_vec()).collect(),
        cones.iter().map(|c| c.to_vec()).collect(),
    )
    .expect("bundled fan is valid")
}

/// The projective line: rays ±1.
pub fn p1() -> Fan {
    build(1, &[&[1], &[-1]], &[&[0], &[1]])
}

/// The projective plane: rays (1,0), (0,1), (−1,−1).
pub fn p2() -> Fan {
    build(
        2,
        &[&[1, 0], &[0, 1], &[-1, -1]],
        &[&[0, 1], &[1, 2], &[2, 0]],
    )
}

/// P¹×P¹: rays e1, −e1, e2, −e2.
pub fn p1xp1() -> Fan {
    build(
        2,
        &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
        &[&[0, 2], &[2, 1], &[1, 3], &[3, 0]],
    )
}

/// The Hirzebruch surface F_1: rays (1,0), (0,1), (−1,1), (0,−1).
pub fn f1() -> Fan {
    build(
        2,
        &[&[1, 0], &[0, 1], &[-1, 1], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
    )
}

/// The P² fan with the first quadrant cone subdivided at (1,1); the new ray is last.
pub fn p2_stellar() -> Fan {
    build(
        2,
        &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]],
        &[&[0, 3], &[3, 1], &[1, 2], &[2, 0]],
    )
}

/// Projective 3-space: rays e1, e2, e3, −e1−e2−e3.
pub fn p3() -> Fan {
    build(
        3,
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
        &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
    )
}

/// The fan over the faces of the cube [−1,1]³: eight rays (±1,±1,±1), six square cones.
pub fn cube_fan() -> Fan {
    let mut rays = vec![];
    for x in [-1i64, 1] {
        for y in [-1i64, 1] {
            for z in [-1i64, 1] {
                rays.push(vec![x, y, z]);
            }
        }
    }
    let mut cones = vec![];
    for axis in 0..3 {
        for sign in [-1i64, 1] {
            cones.push(
                (0..8)
                    .filter(|&i| rays[i][axis] == sign)
                    .collect::<Vec<usize>>(),
            );
        }
    }
    Fan::new(3, rays, cones).expect("cube fan is valid")
}

/// A single cone over the unit square at height one (not complete).
pub fn unit_square_cone() -> Fan {
    build(
        3,
        &[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]],
        &[&[0, 1, 2, 3]],
    )
}

/// The product fan of `a` and `b` in N_a ⊕ N_b.
pub fn product(a: &Fan, b: &Fan) -> Fan {
    let (ra, rb) = (a.rank(), b.rank());
    let mut rays = vec![];
    for r in a.rays() {
        let mut v = r.clone();
        v.extend(std::iter::repeat_n(0, rb));
        rays.push(v);
    }
    for r in b.rays() {
        let mut v = vec![0; ra];
        v.extend(r.iter().copied());
        rays.push(v);
    }
    let na = a.rays().len();
    let mut cones = vec![];
    for ca in a.max_cones() {
        for cb in b.max_cones() {
            let mut c = ca.clone();
            c.extend(cb.iter().map(|i| i + na));
            cones.push(c);
        }
    }
    Fan::new(ra + rb, rays, cones).expect("product of fans is a fan")
}

/// The complete fans shipped with the library, by name.
pub fn all_fans() -> Vec<(&'static str, Fan)> {
    vec![
        ("P1", p1()),
        ("P2", p2()),
        ("P1xP1", p1xp1()),
        ("F1", f1()),
        ("P2-stellar", p2_stellar()),
        ("P3", p3()),
        ("cube", cube_fan()),
    ]
}

/// Look up a bundled fan by name (case-insensitive).
pub fn by_name(name: &str) -> Option<Fan> {
    all_fans()
        .into_iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, f)| f)
}
