use proptest::prelude::*;
use torimod::arith::json::{series_from_json, series_to_json};
use torimod::forms::{
    check_certificate, cohomological_poly, cone::r_of_m, express_in_generators,
    toric_form_cohomological, toric_form_lattice_sum, TruncationBound,
};
use torimod::generators::{s_series, GeneratorPoly, GeneratorSymbol};
use torimod::geom::{examples, DegreeFunction, Fan, FanSpec};
use torimod::hecke::{diamond, level_raise, t_p, v_p, HeckeContext};

fn residues(n: usize, l: u32) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1..l as i64, n)
}

fn agree(fan: &Fan, l: u32, vals: Vec<i64>) {
    let deg = DegreeFunction::new(fan, l, vals).unwrap();
    let a = toric_form_lattice_sum(&deg, 30).unwrap();
    let b = toric_form_cohomological(&deg, 30).unwrap();
    assert_eq!(a, b, "{:?}", deg.values());
}

/// A random weight-w combination of products of s^(1) at level l.
fn weight_poly(l: u32, w: usize) -> impl Strategy<Value = GeneratorPoly> {
    prop::collection::vec((prop::collection::vec(1..l, w), -3i64..=3), 1..4).prop_map(
        move |terms| {
            let mut g = GeneratorPoly::zero(l, w as u32);
            for (res, c) in terms {
                let mut m = GeneratorPoly::constant(torimod::arith::CycElem::from_int(l, c));
                for a in res {
                    m = m.mul(&GeneratorPoly::symbol(l, GeneratorSymbol::S { a, k: 1 }));
                }
                g = g.add(&m);
            }
            g
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pipelines_agree_on_projective_line(l in prop::sample::select(vec![5u32, 7]), v in residues(2, 7)) {
        let v: Vec<i64> = v.into_iter().map(|a| 1 + (a - 1) % (l as i64 - 1)).collect();
        agree(&examples::p1(), l, v);
    }

    #[test]
    fn pipelines_agree_on_projective_plane(v in residues(3, 5)) {
        agree(&examples::p2(), 5, v);
    }

    #[test]
    fn pipelines_agree_on_quadric(v in residues(4, 7)) {
        agree(&examples::p1xp1(), 7, v);
    }

    #[test]
    fn pipelines_agree_on_hirzebruch(v in residues(4, 7)) {
        agree(&examples::f1(), 7, v);
    }

    #[test]
    fn stellar_subdivision_is_invisible(v in residues(3, 7)) {
        prop_assume!((v[0] + v[1]) % 7 != 0);
        let coarse = DegreeFunction::new(&examples::p2(), 7, v.clone()).unwrap();
        let fine = DegreeFunction::new(&examples::p2_stellar(), 7, vec![v[0], v[1], v[2], v[0] + v[1]]).unwrap();
        prop_assert_eq!(toric_form_lattice_sum(&coarse, 25).unwrap(), toric_form_lattice_sum(&fine, 25).unwrap());
    }

    #[test]
    fn products_of_fans_multiply(v in residues(4, 5)) {
        let both = DegreeFunction::new(&examples::p1xp1(), 5, v.clone()).unwrap();
        let a = DegreeFunction::new(&examples::p1(), 5, v[..2].to_vec()).unwrap();
        let b = DegreeFunction::new(&examples::p1(), 5, v[2..].to_vec()).unwrap();
        let prod = toric_form_lattice_sum(&a, 25).unwrap().mul(&toric_form_lattice_sum(&b, 25).unwrap()).truncate(25);
        prop_assert_eq!(toric_form_lattice_sum(&both, 25).unwrap(), prod);
    }

    #[test]
    fn s_series_symmetry(a in 1i64..7, k in 1u32..6) {
        let f = s_series(a, 7, k, 30).unwrap();
        let g = s_series(-a, 7, k, 30).unwrap();
        prop_assert_eq!(g, if k % 2 == 0 { f } else { f.neg() });
    }

    #[test]
    fn galois_moves_the_residue(a in 1i64..7, c in 1i64..7, k in 1u32..5) {
        let f = s_series(a, 7, k, 30).unwrap();
        prop_assert_eq!(f.galois(c), s_series(c * a, 7, k, 30).unwrap());
    }

    #[test]
    fn diamond_is_galois_on_series(g in weight_poly(7, 2), p in prop::sample::select(vec![2u32, 3, 4, 5, 6])) {
        let lhs = diamond(&g, p).unwrap().evaluate(20).unwrap();
        prop_assert_eq!(lhs, g.evaluate(20).unwrap().galois(p as i64));
    }

    #[test]
    fn diamonds_compose(g in weight_poly(7, 2), p in 1u32..7, q in 1u32..7) {
        let twice = diamond(&diamond(&g, p).unwrap(), q).unwrap();
        prop_assert_eq!(twice, diamond(&g, p * q % 7).unwrap());
    }

    #[test]
    fn hecke_operators_commute(g in weight_poly(5, 1)) {
        // T_2 T_3 g and T_3 T_2 g, applying the second operator to the generator form of the first
        let inner = |p: u32| express_in_generators(&t_p(&g, p, 1, 60).unwrap(), 1, 5).unwrap();
        let a = t_p(&inner(3), 2, 1, 50).unwrap();
        let b = t_p(&inner(2), 3, 1, 50).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hecke_images_stay_in_the_ring(
        v in residues(3, 5),
        p in prop::sample::select(vec![2u32, 3, 5]),
        rank2 in any::<bool>(),
    ) {
        let deg = if rank2 {
            DegreeFunction::new(&examples::p2(), 5, v).unwrap()
        } else {
            DegreeFunction::new(&examples::p1(), 5, v[..2].to_vec()).unwrap()
        };
        let w = deg.fan().rank() as u32;
        let g = cohomological_poly(&deg).unwrap();
        // U_p when p | l, T_p otherwise; 25 coefficients is well past the Sturm bound
        let image = HeckeContext::new(5, w, p).unwrap().apply(&g, 25).unwrap();
        let h = express_in_generators(&image, w, 5).unwrap();
        prop_assert!(h.is_homogeneous() && h.weight() == w);
    }

    #[test]
    fn membership_returns_weight_rank(v in residues(4, 7)) {
        let deg = DegreeFunction::new(&examples::f1(), 7, v).unwrap();
        let f = toric_form_lattice_sum(&deg, 40).unwrap();
        let g = express_in_generators(&f, 2, 7).unwrap();
        prop_assert!(g.is_homogeneous());
        prop_assert_eq!(g.weight(), 2);
        prop_assert_eq!(g.evaluate(40).unwrap(), f);
    }

    #[test]
    fn level_raise_is_substitution(g in weight_poly(5, 2), p in prop::sample::select(vec![2u32, 3])) {
        let raised = level_raise(&g, p).unwrap();
        let direct = v_p(&g.evaluate(20).unwrap(), p).embed(5 * p).unwrap();
        prop_assert_eq!(raised.evaluate(20 * p as i64).unwrap(), direct);
    }

    #[test]
    fn generator_poly_json_round_trip(g in weight_poly(7, 3)) {
        let back = GeneratorPoly::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn series_json_round_trip(a in 1i64..13, k in 1u32..4, prec in 0i64..40) {
        let f = s_series(a, 13, k, prec).unwrap();
        prop_assert_eq!(series_from_json(&series_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn certificates_check(idx in any::<prop::sample::Index>(), prec in 0i64..80) {
        let mut fans = examples::all_fans();
        let (name, fan) = fans.swap_remove(idx.index(fans.len()));
        let fan = fan.triangulate();
        let bound = TruncationBound::new(&fan).unwrap();
        let cert = bound.certificate(prec);
        prop_assert!(check_certificate(&fan, &cert).is_ok(), "{}", name);
        if cert.radius > 0 {
            let mut short = cert.clone();
            short.radius -= 1;
            prop_assert!(check_certificate(&fan, &short).is_err(), "{} accepted a short radius", name);
        }
    }

    #[test]
    fn cone_terms_have_no_poles(v in residues(4, 7), m in prop::collection::vec(-8i64..=8, 2)) {
        let deg = DegreeFunction::new(&examples::f1(), 7, v).unwrap();
        let r = r_of_m(&deg, &m, 10).unwrap();
        prop_assert!(r.is_zero() || r.valuation() >= 0);
    }

    #[test]
    fn omitted_points_contribute_nothing(v in residues(4, 7), m in prop::collection::vec(-12i64..=12, 2)) {
        let deg = DegreeFunction::new(&examples::f1(), 7, v).unwrap();
        let bound = TruncationBound::new(deg.fan()).unwrap();
        let prec = 6;
        prop_assume!(bound.lower_order(&m) > prec);
        prop_assert!(r_of_m(&deg, &m, prec).unwrap().is_zero());
    }
}

#[test]
fn fan_spec_round_trip() {
    for (name, fan) in examples::all_fans() {
        let text = serde_json::to_string(&fan.to_spec()).unwrap();
        let spec: FanSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(
            Fan::from_spec(&spec).unwrap().to_spec(),
            fan.to_spec(),
            "{name}"
        );
    }
}
