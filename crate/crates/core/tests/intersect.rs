use num_bigint::BigInt;
use proptest::prelude::*;
use quadweb::intersect::*;

fn pascal(n: usize, k: usize) -> i64 {
    let mut row = vec![1i64];
    for _ in 0..n {
        let mut next = vec![1i64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k]
}

fn sum_of_hyperplanes(dims: &[usize]) -> ChowClass {
    (0..dims.len()).fold(ChowClass::zero(dims), |acc, i| acc.add(&ChowClass::hyperplane(dims, i)).unwrap())
}

#[test]
fn bidegree_count_in_p3_times_p2() {
    let h = sum_of_hyperplanes(&[3, 2]);
    assert_eq!(multiproj_top_degree(&h.pow(5)).unwrap(), BigInt::from(10));
}

#[test]
fn top_degree_matches_binomial_expansion() {
    for a in 0..6 {
        for b in 0..6 {
            let h = sum_of_hyperplanes(&[a, b]);
            let got = multiproj_top_degree(&h.pow((a + b) as u32)).unwrap();
            assert_eq!(got, BigInt::from(pascal(a + b, a)), "dims ({a},{b})");
        }
    }
}

#[test]
fn single_projective_space_has_degree_one() {
    for n in 1..8 {
        let h = ChowClass::hyperplane(&[n], 0);
        assert_eq!(multiproj_top_degree(&h.pow(n as u32)).unwrap(), BigInt::from(1));
    }
}

#[test]
fn wrong_degree_is_rejected() {
    let h = sum_of_hyperplanes(&[3, 2]);
    assert!(matches!(multiproj_top_degree(&h.pow(4)), Err(IntersectError::WrongDegree { .. })));
}

#[test]
fn intersection_of_four_quadrics_in_p7() {
    let r = euler_complete_intersection(&CIData { n: 7, degrees: vec![2, 2, 2, 2] }).unwrap();
    assert_eq!(r.euler, BigInt::from(-128));
}

#[test]
fn octic_surface_chern_classes() {
    let r = euler_complete_intersection(&CIData { n: 3, degrees: vec![8] }).unwrap();
    assert_eq!(r.euler, BigInt::from(304));
    assert_eq!(r.chern[2], BigInt::from(38));
}

#[test]
fn surface_euler_matches_closed_form() {
    // chi of a smooth degree-d surface in P^3 is d^3 - 4 d^2 + 6 d
    for d in 1i64..30 {
        let r = euler_complete_intersection(&CIData { n: 3, degrees: vec![d as u64] }).unwrap();
        assert_eq!(r.euler, BigInt::from(d * d * d - 4 * d * d + 6 * d));
    }
}

#[test]
fn double_cover_and_nodal_chains() {
    assert_eq!(double_cover_euler(8).unwrap(), BigInt::from(-296));
    assert_eq!(nodal_euler_chain(-296, 84).unwrap(), (-212, -128));
    assert_eq!(nodal_euler_chain(-296, 94).unwrap(), (-202, -108));
    assert_eq!(nodal_euler_chain(-128, 10).unwrap(), (-118, -108));
}

#[test]
fn calabi_yau_hodge_numbers() {
    assert_eq!(hodge_from_euler(-128, 1).unwrap(), 65);
    assert_eq!(hodge_from_euler(-108, 2).unwrap(), 56);
}

#[test]
fn rank_six_locus_of_symmetric_eight_by_eight() {
    let (degree, codim) = harris_tu_symmetric_degree(8, 6).unwrap();
    assert_eq!(degree, BigInt::from(84));
    // a 32-dimensional locus in P^35
    assert_eq!(35 - codim, 32);
}

#[test]
fn dimension_ledger_values() {
    let l = incidence_dimension_ledger();
    let get = |n: &str| l.iter().find(|e| e.name == n).unwrap().value;
    assert_eq!(get("all_webs"), 128);
    assert_eq!(get("webs_with_plane"), 119);
    assert_eq!(get("webs_with_fixed_plane"), 104);
    assert_eq!(get("two_disjoint_planes"), 110);
    assert_eq!(get("two_planes_line"), 114);
    assert_eq!(get("two_planes_point"), 111);
    assert_eq!(get("plane_line_incidence"), 23);
    assert_eq!(get("fiber_G(4,28)"), 96);
    assert_eq!(get("line_on_P_bound"), 102);
}

fn class_strategy(dims: Vec<usize>) -> impl Strategy<Value = ChowClass> {
    let monos: Vec<Vec<usize>> = {
        let mut out = vec![vec![]];
        for &n in &dims {
            out = out.into_iter().flat_map(|p: Vec<usize>| (0..=n).map(move |e| [p.clone(), vec![e]].concat())).collect();
        }
        out
    };
    let len = monos.len();
    prop::collection::vec(-5i64..=5, len).prop_map(move |cs| {
        monos
            .iter()
            .zip(cs)
            .fold(ChowClass::zero(&dims), |acc, (m, c)| acc.add(&ChowClass::monomial(&dims, m, BigInt::from(c))).unwrap())
    })
}

proptest! {
    #[test]
    fn chow_ring_is_commutative_and_associative(
        a in class_strategy(vec![2, 3]),
        b in class_strategy(vec![2, 3]),
        c in class_strategy(vec![2, 3]),
    ) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let sum = b.add(&c).unwrap();
        prop_assert_eq!(a.mul(&sum).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn hyperplane_powers_truncate(n in 1usize..6, extra in 1u32..4) {
        let h = ChowClass::hyperplane(&[n], 0);
        prop_assert!(h.pow(n as u32 + extra).is_zero());
        prop_assert!(!h.pow(n as u32).is_zero());
    }
}
