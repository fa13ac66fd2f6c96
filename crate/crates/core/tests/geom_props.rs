use proptest::prelude::*;
use torimod::geom::linalg::{det, smith};
use torimod::geom::{deg_eval, examples, parallelepiped, superlattices, Cone, DegreeFunction};

fn point(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-40i64..=40, rank)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 1000,
        max_global_rejects: 100_000,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn triangulation_preserves_degree(n in point(3), c in prop::collection::vec(-5i64..=5, 3)) {
        // a global linear function restricts to a valid degree function on the cube fan
        let fan = examples::cube_fan();
        let values = fan.rays().iter().map(|d| d.iter().zip(&c).map(|(x, y)| x * y).sum()).collect();
        let deg = DegreeFunction::new(&fan, 7, values);
        prop_assume!(deg.is_ok());
        let deg = deg.unwrap();
        let tri = deg.with_fan(std::sync::Arc::new(fan.triangulate())).unwrap();
        prop_assert_eq!(deg_eval(&deg, &n).unwrap(), deg_eval(&tri, &n).unwrap());
    }

    #[test]
    fn euler_sum_is_one(n in point(3), idx in any::<prop::sample::Index>()) {
        let fans: Vec<_> = examples::all_fans().into_iter().filter(|(_, f)| f.rank() == 3).collect();
        let (name, fan) = &fans[idx.index(fans.len())];
        prop_assert_eq!(fan.euler_sum_at(&n), 1, "{}", name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn parallelepiped_size_is_determinant(rays in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 3)) {
        let d = det(&rays);
        prop_assume!(d != 0);
        let data = parallelepiped(&Cone::from_rays(rays)).unwrap();
        prop_assert_eq!(data.points.len() as i64, d.abs());
    }

    #[test]
    fn superlattices_have_index_p(rank in 1usize..=3, p in prop::sample::select(vec![2u32, 3, 5])) {
        let all = superlattices(rank, p).unwrap();
        let expected = ((p as usize).pow(rank as u32) - 1) / (p as usize - 1);
        prop_assert_eq!(all.len(), expected);
        for (i, s) in all.iter().enumerate() {
            // the basis spans p·S ⊂ N with [N : p·S] = p, hence [S : N] = p^{rank−1}
            let divisors: i64 = smith(&s.basis).divisors().iter().product();
            prop_assert_eq!(divisors.abs(), p as i64);
            for j in 0..rank {
                let mut e = vec![0; rank];
                e[j] = p as i64;
                prop_assert!(s.contains_scaled(&e));
            }
            for t in &all[..i] {
                prop_assert_ne!(&t.functional, &s.functional);
            }
        }
    }
}
