use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use tropcount::conditions::PointConditionType;
use tropcount::engines::brute::{
    brute_enumerate, enumerate_subdivisions, random_points, BruteConfig,
};
use tropcount::engines::{
    count, count_brute, divide_path, enumerate_curves, enumerate_paths, MikhalkinConfig,
    PathOptions, Scheme,
};
use tropcount::invariants::Value;
use tropcount::lattice::{pt, LatticePolygon};
use tropcount::tropcurve::validate;
use tropcount::Error;

fn tri(d: i64) -> LatticePolygon {
    LatticePolygon::triangle(d).unwrap()
}

fn conds(s: &str) -> PointConditionType {
    PointConditionType::parse(s).unwrap()
}

fn path_value(p: &LatticePolygon, g: i64, c: &str, scheme: Scheme) -> Value {
    count(
        p,
        g,
        &MikhalkinConfig::new(p, conds(c)),
        scheme,
        &PathOptions::default(),
    )
    .unwrap()
    .value
}

fn brute_value(p: &LatticePolygon, g: i64, c: &str, scheme: Scheme, seed: u64) -> Value {
    let c = conds(c);
    let cfg = BruteConfig {
        points: random_points(c.len(), seed),
        conditions: c,
    };
    count_brute(p, g, &cfg, scheme).unwrap().value
}

#[test]
fn path_counts() {
    let n: Vec<usize> = (1..=3)
        .map(|s| enumerate_paths(&tri(1), s).unwrap().count())
        .collect();
    assert_eq!(n, vec![1, 1, 0]);
    // The line: one path through the middle point.
    let paths: Vec<_> = enumerate_paths(&tri(1), 2).unwrap().collect();
    assert_eq!(paths, vec![vec![pt(0, 1), pt(0, 0), pt(1, 0)]]);
    assert_eq!(enumerate_paths(&tri(4), 11).unwrap().count(), 286);
    assert_eq!(enumerate_paths(&tri(4), 12).unwrap().count(), 78);
}

#[test]
fn conic_path_divides_into_one_curve() {
    let p = tri(2);
    let mut total = 0;
    for path in enumerate_paths(&p, 5).unwrap() {
        total += divide_path(&p, &path).unwrap().len();
    }
    assert!(total >= 1);
    let cs = enumerate_curves(
        &p,
        0,
        &MikhalkinConfig::new(&p, conds("int*5")),
        &PathOptions::default(),
    )
    .unwrap();
    assert_eq!(cs.curves.len(), 1);
}

#[test]
fn subdivision_counts() {
    let all = |_: Option<tropcount::conditions::Side>, w: u64| w == 1;
    assert_eq!(enumerate_subdivisions(&tri(1), &all).len(), 1);
    assert_eq!(enumerate_subdivisions(&tri(2), &all).len(), 7);
    assert_eq!(enumerate_subdivisions(&tri(3), &all).len(), 387);
}

#[test]
fn engines_agree_per_scheme() {
    let cases = [
        (2, 0, "int*5"),
        (2, 0, "bnd:bottom:2,int*3"),
        (2, 0, "bnd:left:1,int*4"),
        (2, 0, "pairbnd:left,int*3"),
        (2, 0, "pairbnd:bottom,int*3"),
        (2, 0, "pairbnd:diag,int*3"),
        (3, 0, "int*8"),
        (3, 0, "bnd:left:2,int*6"),
        (3, 0, "pairbnd:bottom,pairbnd:bottom,int*4"),
    ];
    for (d, g, c) in cases {
        let p = tri(d);
        for scheme in [Scheme::Complex, Scheme::Refined, Scheme::Real] {
            let a = path_value(&p, g, c, scheme);
            let b = brute_value(&p, g, c, scheme, 5);
            assert_eq!(a, b, "d={d} {c} {scheme}");
        }
    }
}

#[test]
fn counts_depend_only_on_the_order() {
    let p = tri(4);
    let c = conds("int*10,pair@4");
    let a = count(
        &p,
        1,
        &MikhalkinConfig::new(&p, c.clone()),
        Scheme::Mixed,
        &PathOptions::default(),
    )
    .unwrap();
    let tighter = MikhalkinConfig {
        epsilon: BigRational::new(BigInt::from(1), BigInt::from(1000)),
        conditions: c,
    };
    let b = count(&p, 1, &tighter, Scheme::Mixed, &PathOptions::default()).unwrap();
    assert_eq!(a.value, b.value);
    assert_eq!(a.curves_enumerated, b.curves_enumerated);
}

#[test]
fn worker_count_does_not_change_the_curves() {
    let p = tri(4);
    let cfg = MikhalkinConfig::new(&p, conds("int*12"));
    let one = enumerate_curves(
        &p,
        1,
        &cfg,
        &PathOptions {
            mixed: false,
            jobs: 1,
        },
    )
    .unwrap();
    let four = enumerate_curves(
        &p,
        1,
        &cfg,
        &PathOptions {
            mixed: false,
            jobs: 4,
        },
    )
    .unwrap();
    assert_eq!(one.curves, four.curves);
}

#[test]
fn boundary_conditions_map_back_to_valid_curves() {
    let p = tri(3);
    for c in [
        "bnd:bottom:2,int*6",
        "int*6,bnd:diag:2",
        "bnd:diag:1,int*2,bnd:diag:2,int*3",
    ] {
        let cs = enumerate_curves(
            &p,
            0,
            &MikhalkinConfig::new(&p, conds(c)),
            &PathOptions::default(),
        )
        .unwrap();
        assert!(!cs.curves.is_empty(), "{c}");
        for curve in &cs.curves {
            let r = validate(curve);
            assert!(r.ok(), "{c}: {:?}", r.problems);
            let fixed: Vec<usize> = curve.markings.iter().map(|m| m.condition).collect();
            let mut sorted = fixed.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), conds(c).len(), "{c}");
        }
    }
}

#[test]
fn unsupported_inputs() {
    let e = enumerate_curves(
        &tri(3),
        0,
        &MikhalkinConfig::new(&tri(3), conds("bnd:left:1,bnd:bottom:1,int*6")),
        &PathOptions::default(),
    );
    assert!(matches!(e, Err(Error::Unsupported(_))));
    let brute = |p: &LatticePolygon, c: &str, n: usize| {
        brute_enumerate(
            p,
            0,
            &BruteConfig {
                conditions: conds(c),
                points: random_points(n, 1),
            },
        )
    };
    assert!(matches!(
        brute(&tri(4), "int*11", 11),
        Err(Error::Unsupported(_))
    ));
    assert!(matches!(
        brute(&tri(2), "int*3,pair", 4),
        Err(Error::Unsupported(_))
    ));
    assert!(brute(&tri(2), "int*5", 4).is_err());
    assert!(matches!(
        count(
            &tri(2),
            0,
            &MikhalkinConfig::new(&tri(2), conds("int*4")),
            Scheme::Complex,
            &PathOptions::default()
        ),
        Err(Error::DimensionMismatch {
            expected: 5,
            got: 4
        })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn conic_through_random_points(seed in any::<u64>()) {
        let p = tri(2);
        let b = brute_value(&p, 0, "int*5", Scheme::Refined, seed);
        prop_assert_eq!(b, path_value(&p, 0, "int*5", Scheme::Refined));
    }

    #[test]
    fn conic_with_boundary_pair(seed in any::<u64>()) {
        let p = tri(2);
        let b = brute_value(&p, 0, "pairbnd:bottom,int*3", Scheme::Real, seed);
        prop_assert_eq!(b, path_value(&p, 0, "pairbnd:bottom,int*3", Scheme::Real));
    }
}
