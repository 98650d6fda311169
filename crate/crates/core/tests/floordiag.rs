use num_bigint::BigInt;
use num_rational::BigRational;

use tropcount::conditions::PointConditionType;
use tropcount::floordiag::{
    enumerate_floor_diagrams, fd_multiplicity, fd_refined_multiplicity, relative_refined_fd,
};
use tropcount::invariants::{refined, refined_floor};
use tropcount::lattice::LatticePolygon;
use tropcount::qpoly::{poly_eval_y1, poly_limit_yneg1};
use tropcount::Error;

fn conds(s: &str) -> PointConditionType {
    PointConditionType::parse(s).unwrap()
}

fn profiles() -> Vec<(u64, i64, &'static str)> {
    vec![
        (1, 0, "int*2"),
        (1, 0, "bnd:left:1,int*1"),
        (2, 0, "int*5"),
        (2, 0, "bnd:left:2,int*3"),
        (2, 0, "bnd:left:1,bnd:left:1,int*3"),
        (3, 0, "int*8"),
        (3, 1, "int*9"),
        (3, 0, "bnd:left:2,int*6"),
        (3, 0, "bnd:left:3,int*5"),
        (3, 0, "bnd:left:2,bnd:left:1,int*5"),
        (3, 1, "bnd:left:2,int*7"),
        (4, 0, "int*11"),
        (4, 1, "int*12"),
        (4, 0, "bnd:left:3,int*8"),
        (4, 0, "bnd:left:2,bnd:left:2,int*7"),
        (4, 1, "bnd:left:2,int*10"),
        (4, 1, "bnd:left:1,bnd:left:3,int*8"),
    ]
}

#[test]
fn floor_diagrams_match_lattice_paths() {
    for (d, g, c) in profiles() {
        let p = LatticePolygon::triangle(d as i64).unwrap();
        let a = refined(&p, g, &conds(c)).unwrap();
        let b = refined_floor(d, g, &conds(c)).unwrap();
        assert_eq!(a.value, b.value, "d={d} g={g} {c}");
        assert!(b.evaluations_consistent());
    }
}

#[test]
fn tangency_values() {
    let f = |d, g, c| relative_refined_fd(d, g, &conds(c)).unwrap().0.to_string();
    assert_eq!(f(3, 0, "bnd:left:2,int*6"), "q^-2 + 8 + q^2");
    assert_eq!(f(3, 0, "bnd:left:3,int*5"), "q^-2 + 5 + q^2");
    assert_eq!(f(3, 0, "bnd:left:2,bnd:left:1,int*5"), "q^-2 + 6 + q^2");
    assert_eq!(
        f(4, 1, "bnd:left:2,int*10"),
        "3*q^-4 + 29*q^-2 + 121 + 29*q^2 + 3*q^4"
    );
}

#[test]
fn diagram_invariants_and_specializations() {
    for (d, g, c) in profiles() {
        let ds = enumerate_floor_diagrams(d, g, &conds(c)).unwrap();
        assert!(!ds.is_empty(), "d={d} g={g} {c}");
        for m in &ds {
            let dg = &m.diagram;
            assert_eq!(dg.floors, d as usize);
            assert_eq!(dg.degree(), d);
            assert_eq!(dg.genus(), g);
            assert!(dg.is_connected());
            for f in 0..dg.floors {
                assert_eq!(dg.divergence(f), 1);
            }
            for e in &dg.edges {
                assert!(e.src < e.dst);
            }
            let fixed: Vec<u64> = dg
                .ends
                .iter()
                .filter(|x| x.fixed.is_some())
                .map(|x| x.weight)
                .collect();
            let wanted: usize = conds(c)
                .0
                .iter()
                .filter(|x| x.fixed_end().is_some())
                .count();
            assert_eq!(fixed.len(), wanted);
            assert!(dg.ends.iter().all(|x| x.fixed.is_some() || x.weight == 1));

            let r = fd_refined_multiplicity(m);
            let classical: u64 = dg.edges.iter().map(|e| e.weight * e.weight).product();
            assert_eq!(poly_eval_y1(&r), BigInt::from(classical));
            assert_eq!(fd_multiplicity(m), BigInt::from(classical));
            let lim = poly_limit_yneg1(&r).unwrap();
            if dg.edges.iter().any(|e| e.weight % 2 == 0) {
                assert_eq!(lim, BigRational::from_integer(0.into()));
            } else {
                assert_eq!(lim, BigRational::from_integer(1.into()));
            }
        }
    }
}

#[test]
fn floor_profile_errors() {
    let err = |d, c| enumerate_floor_diagrams(d, 0, &conds(c)).unwrap_err();
    assert!(matches!(
        err(3, "bnd:bottom:2,int*6"),
        Error::ProfileMismatch(_)
    ));
    assert!(matches!(err(3, "pair,int*6"), Error::ProfileMismatch(_)));
    assert!(matches!(err(3, "int*7"), Error::ProfileMismatch(_)));
}

#[test]
fn diagram_json_has_marks() {
    let ds = enumerate_floor_diagrams(2, 0, &conds("int*5")).unwrap();
    assert_eq!(ds.len(), 1);
    let j = ds[0].to_json();
    assert!(j.is_object());
    assert!(j.to_string().contains("floors"));
}
