use proptest::prelude::*;
use quadweb::arith::{FieldCtx, Fp, PrimeField};
use quadweb::groebner::*;
use quadweb::linalg::Mat;
use quadweb::poly::{Monomial, MultiPoly};
use quadweb::web::trial_rng;
use quadweb::intersect::{harris_tu_symmetric_degree, multiproj_top_degree, ChowClass};
use quadweb::Status;
use rand::Rng;

/// A random homogeneous polynomial of degree `d` in `n` variables.
fn random_form<R: Rng>(f: &PrimeField, n: usize, d: u16, rng: &mut R) -> MultiPoly<Fp> {
    let mut exps: Vec<Vec<u16>> = vec![vec![]];
    for k in 0..n {
        exps = exps
            .into_iter()
            .flat_map(|p| {
                let used: u16 = p.iter().sum();
                let range: Vec<u16> = if k + 1 == n { vec![d - used] } else { (0..=d - used).collect() };
                range.into_iter().map(move |e| [p.clone(), vec![e]].concat())
            })
            .collect();
    }
    MultiPoly::from_terms(n, exps.iter().map(|e| (Monomial::from_exponents(e), f.random(rng))))
}

fn run(f: &PrimeField, polys: &[MultiPoly<Fp>]) -> GroebnerBasis {
    buchberger(&IdealPresentation::new(f, polys).unwrap(), &Budget::default()).unwrap()
}

#[test]
fn two_conics_meet_in_four_points() {
    let f = PrimeField::default();
    let mut rng = trial_rng(1, 0);
    let g = run(&f, &[random_form(&f, 3, 2, &mut rng), random_form(&f, 3, 2, &mut rng)]);
    assert!(g.verify());
    assert_eq!(hilbert_degree_dim(&g), (0, 4));
}

#[test]
fn basis_generates_the_input_ideal() {
    let f = PrimeField::default();
    let mut rng = trial_rng(2, 0);
    let polys: Vec<_> = (0..3).map(|_| random_form(&f, 4, 2, &mut rng)).collect();
    let g = run(&f, &polys);
    for p in &polys {
        assert!(g.contains(p).unwrap());
    }
    // a product of two inputs is in the ideal, a random cubic is not
    assert!(g.contains(&(&polys[0] * &polys[1])).unwrap());
    assert!(!g.contains(&random_form(&f, 4, 3, &mut rng)).unwrap());
}

#[test]
fn hypersurface_degree() {
    let f = PrimeField::default();
    let mut rng = trial_rng(3, 0);
    for d in 1..6 {
        let g = run(&f, &[random_form(&f, 4, d, &mut rng)]);
        assert_eq!(hilbert_degree_dim(&g), (2, d as i64));
    }
}

#[test]
fn small_census_cases_certify_expected_degrees() {
    let f = PrimeField::default();
    for case in [CensusCase::Nodes10, CensusCase::Bezout16, CensusCase::Veronese4] {
        for seed in 0..3 {
            let r = census_degree(case, &f, seed, &case.default_budget()).unwrap();
            assert_eq!(r.status, Status::Pass, "{r:?}");
            assert_eq!(r.computed, Some(case.expected() as i64));
        }
    }
}

#[test]
fn exhausted_budget_is_inconclusive() {
    let f = PrimeField::default();
    let r = census_degree(CensusCase::Bezout16, &f, 0, &Budget { max_pairs: 1, max_degree: 64 }).unwrap();
    assert_eq!(r.status, Status::Inconclusive);
    assert!(r.computed.is_none());
}

#[test]
fn census_case_names_round_trip() {
    for c in CensusCase::ALL {
        assert_eq!(c.name().parse::<CensusCase>().unwrap(), c);
        assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
    }
    assert!("nodes11".parse::<CensusCase>().is_err());
}

/// Points of `P^3(F_p)` where a 4-dimensional slice of symmetric 3x3
/// matrices has rank at most one.
fn veronese_points_brute(f: &PrimeField, seed: u64) -> usize {
    let (polys, _) = census_ideal(CensusCase::Veronese4, f, seed).unwrap();
    let p = f.p();
    let mut count = 0;
    let mut visit = |l: [Fp; 4]| {
        if polys.iter().all(|m| m.eval(&l).unwrap() == f.zero()) {
            count += 1;
        }
    };
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                visit([f.residue(a), f.residue(b), f.residue(c), f.one()]);
            }
        }
    }
    for a in 0..p {
        for b in 0..p {
            visit([f.residue(a), f.residue(b), f.one(), f.zero()]);
        }
    }
    for a in 0..p {
        visit([f.residue(a), f.one(), f.zero(), f.zero()]);
    }
    visit([f.one(), f.zero(), f.zero(), f.zero()]);
    count
}

#[test]
fn veronese_rational_points_bounded_by_degree() {
    let f = PrimeField::new(31).unwrap();
    let mut seen = 0;
    for seed in 0..6 {
        let r = census_degree(CensusCase::Veronese4, &f, seed, &Budget::default()).unwrap();
        if r.status != Status::Pass {
            continue;
        }
        let n = veronese_points_brute(&f, seed);
        assert!(n <= 4, "seed {seed}: {n} points");
        seen += 1;
    }
    assert!(seen > 0);
}

#[test]
fn veronese_slice_through_known_points() {
    // slice spanned by four rank-one matrices v v^T: exactly those four
    // points are rank-one members, and the Groebner count agrees
    let f = PrimeField::default();
    let mut rng = trial_rng(5, 0);
    let mats: Vec<Mat<Fp>> = (0..4)
        .map(|_| {
            let v: Vec<Fp> = (0..3).map(|_| f.random(&mut rng)).collect();
            Mat::from_fn(3, 3, |i, j| v[i] * v[j])
        })
        .collect();
    let m = quadweb::poly::PolyMat::linear_combination(&mats);
    let mut polys = Vec::new();
    for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
        for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
            polys.push(&(m.get(r1, c1) * m.get(r2, c2)) - &(m.get(r1, c2) * m.get(r2, c1)));
        }
    }
    let g = run(&f, &polys);
    assert_eq!(hilbert_degree_dim(&g), (0, 4));
    for k in 0..4 {
        let e: Vec<Fp> = (0..4).map(|i| if i == k { f.one() } else { f.zero() }).collect();
        assert!(polys.iter().all(|p| p.eval(&e).unwrap() == f.zero()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn bezout_for_random_complete_intersections(seed in 0u64..10_000, d1 in 1u16..4, d2 in 1u16..4, d3 in 1u16..3) {
        let f = PrimeField::default();
        let mut rng = trial_rng(seed, 7);
        let polys = vec![
            random_form(&f, 4, d1, &mut rng),
            random_form(&f, 4, d2, &mut rng),
            random_form(&f, 4, d3, &mut rng),
        ];
        let g = run(&f, &polys);
        prop_assert!(g.verify());
        prop_assert_eq!(hilbert_degree_dim(&g), (0, (d1 * d2 * d3) as i64));
    }
}

#[test]
fn census_degrees_agree_with_intersection_formulas() {
    let f = PrimeField::default();
    let dims = [3, 2];
    let h = ChowClass::hyperplane(&dims, 0).add(&ChowClass::hyperplane(&dims, 1)).unwrap();
    let nodes = multiproj_top_degree(&h.pow(5)).unwrap();
    let (rank6, _) = harris_tu_symmetric_degree(8, 6).unwrap();
    // a 2-plane of symmetric 3x3 matrices meets the rank-one locus in deg v_2(P^2) points
    let (veronese, _) = harris_tu_symmetric_degree(3, 1).unwrap();
    for (case, formula) in [(CensusCase::Nodes10, nodes), (CensusCase::Rank84Slice, rank6), (CensusCase::Veronese4, veronese)] {
        let r = census_degree(case, &f, 11, &case.default_budget()).unwrap();
        assert_eq!(r.computed.map(num_bigint::BigInt::from), Some(formula), "{case}");
    }
}
