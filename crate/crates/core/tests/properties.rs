use num_integer::Integer;
use proptest::prelude::*;
use surgery_atlas::{
    build_diagram, classify_knot, classify_slope, emit, evaluate, even_expansion,
    exhaustive_allowable_paths, mod_inverse, normalize_knot, parse_knot_terms, surgery_interval,
    DiagramJson, Expansion, Format, Fraction, RobertsData, SurgeryKind,
};

/// `p/q` with `q` odd, `0 < p < q` and `p` even.
fn even_knot(max_q: i64) -> impl Strategy<Value = Fraction> {
    (1..=max_q / 2)
        .prop_flat_map(|h| {
            let q = 2 * h + 1;
            (Just(q), 1..=h)
        })
        .prop_filter_map("coprime", |(q, k)| {
            let p = 2 * k;
            (p.gcd(&q) == 1).then(|| Fraction::new(p, q).unwrap())
        })
}

/// Any knot fraction `p/q`, `q` odd, `0 < p < q`.
fn any_knot(max_q: i64) -> impl Strategy<Value = Fraction> {
    (1..=max_q / 2)
        .prop_flat_map(|h| (Just(2 * h + 1), 1..2 * h + 1))
        .prop_filter_map("coprime", |(q, p)| {
            (p.gcd(&q) == 1).then(|| Fraction::new(p, q).unwrap())
        })
}

fn kinds(f: Fraction) -> Vec<(Fraction, SurgeryKind)> {
    classify_knot(f)
        .unwrap()
        .census
        .iter()
        .map(|v| (v.slope, v.kind))
        .collect()
}

proptest! {
    #[test]
    fn even_expansion_round_trips(f in even_knot(2001)) {
        let e = even_expansion(f).unwrap();
        prop_assert!(e.is_all_even());
        prop_assert_eq!(evaluate(&e).unwrap(), f);
        let shown: Expansion = e.to_string().parse().unwrap();
        prop_assert_eq!(shown, e);
    }

    #[test]
    fn fraction_text_round_trips(n in -10_000i64..10_000, d in 1i64..10_000) {
        let f = Fraction::new(n, d).unwrap();
        prop_assert_eq!(f.to_string().parse::<Fraction>().unwrap(), f);
        let j = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<Fraction>(&j).unwrap(), f);
    }

    #[test]
    fn diagrams_are_valid(f in even_knot(401)) {
        let d = build_diagram(&even_expansion(f).unwrap()).unwrap();
        prop_assert!(d.validate().is_ok());
        prop_assert_eq!(d.label(d.end()), f);
        let j: DiagramJson = serde_json::from_str(&emit(&d, Format::Json)).unwrap();
        prop_assert_eq!(j.vertices.len(), d.vertices().len());
        prop_assert_eq!(j.triangles.len(), d.triangles().len());
    }

    #[test]
    fn diagrams_of_mixed_expansions_glue(t in prop::collection::vec(
        prop_oneof![-6i64..=-2, 2i64..=6], 1..6)
    ) {
        let e = Expansion::new(t).unwrap();
        if let Ok(d) = build_diagram(&e) {
            prop_assert!(d.validate().is_ok());
            prop_assert_eq!(d.label(d.end()), evaluate(&e).unwrap());
        }
    }

    #[test]
    fn allowable_paths_respect_corners(f in even_knot(61)) {
        let d = build_diagram(&even_expansion(f).unwrap()).unwrap();
        for c in exhaustive_allowable_paths(&d, 200_000) {
            let c = c.unwrap();
            prop_assert!(c.channel_count >= 1 && c.min_corner >= 2);
            for &(v, cv) in c.path.corners() {
                prop_assert!(cv >= 2 && cv <= d.triangles_at(v));
            }
        }
    }

    #[test]
    fn mirror_equivariance(f in any_knot(199), g in -30i64..=30) {
        let m = Fraction::new(f.den() - f.num(), f.den()).unwrap();
        let a = classify_slope(f, Fraction::integer(g)).unwrap().kind;
        let b = classify_slope(m, Fraction::integer(-g)).unwrap().kind;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn inverse_invariance(f in any_knot(199)) {
        let inv = Fraction::new(mod_inverse(f.num(), f.den()).unwrap(), f.den()).unwrap();
        prop_assert_eq!(kinds(f), kinds(inv));
    }

    #[test]
    fn census_slopes_are_integral(f in any_knot(299)) {
        let class = normalize_knot(f).unwrap();
        let census = kinds(f);
        let expected = match class.family.name() {
            "Generic" => 0,
            "TwoTermGeneric" | "TorusKnot2q" => 1,
            "TwistKnot" => 5,
            "FigureEight" => 9,
            other => panic!("unexpected family {other}"),
        };
        prop_assert_eq!(census.len(), expected);
        for (s, k) in census {
            prop_assert!(s.is_integer());
            if k == SurgeryKind::Toroidal {
                prop_assert!(s.num().is_even());
            }
        }
    }

    #[test]
    fn links_are_rejected(p in 1i64..200, h in 1i64..100) {
        let q = 2 * h;
        prop_assume!(p.gcd(&q) == 1);
        let spec = format!("{}/{}", p, q);
        prop_assert!(parse_knot_terms(&spec).is_err());
    }

    #[test]
    fn interval_contains_its_samples(
        r in -20i64..=20, p1 in 0u32..5, p2 in 0u32..5, n1 in 0u32..5, n2 in 0u32..5,
        x in 1e-3f64..1e3,
    ) {
        let d = RobertsData { r: Fraction::integer(r), p1, p2, n1, n2 };
        let j = surgery_interval(&d).unwrap();
        let y = d.eval(x);
        let lo = j.lo.to_f64();
        let hi = j.hi.to_f64();
        prop_assert!(y >= lo - 1e-9 && y <= hi + 1e-9, "{} not in {}", y, j);
    }
}
