use std::collections::BTreeSet;

use multfree::cech::{
    cech_cohomology, h0_matches_global, reduce_to_phi0, wall_pairing_surjectivity, CechComplex, ConvexCover,
    SheafMode,
};
use multfree::exact_linalg::rational::{rat, rat_int_dot, ratio, Rat, RatVec};
use multfree::exact_linalg::Sublattice;
use multfree::local_glue::{
    check_coherence, construct_phi_m, glue_weyl, induced_assignment, stabilizer_is_generated_locally,
};
use multfree::polytope::{face_lattice, RationalPolytope};
use multfree::root_data::{catalog, RootDatum};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// The dominant representative of `x`.
fn dominant(d: &RootDatum, x: &[Rat]) -> RatVec {
    let simple = d.simple();
    d.weyl_group()
        .unwrap()
        .elements()
        .iter()
        .map(|w| (0..w.rows()).map(|i| rat_int_dot(x, w.row(i))).collect::<RatVec>())
        .find(|y| simple.iter().all(|&s| !d.pairing(y, s).is_negative()))
        .expect("every orbit meets the closed chamber")
}

fn chamber_polytope() -> impl Strategy<Value = (&'static str, RootDatum, RationalPolytope)> {
    let data = catalog::all();
    (0..data.len(), prop::collection::vec(prop::collection::vec((-6i64..=6, 1i64..=3), 3), 1..5), any::<bool>())
        .prop_map(move |(k, pts, with_origin)| {
            let (name, d) = data[k].clone();
            let mut verts: Vec<RatVec> =
                pts.iter().map(|p| dominant(&d, &p[..d.rank()].iter().map(|&(a, b)| ratio(a, b)).collect::<Vec<_>>())).collect();
            if with_origin {
                verts.push(vec![Rat::zero(); d.rank()]);
            }
            let p = RationalPolytope::from_vertices(&verts).unwrap();
            (name, d, p)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn induced_assignment_glues_back((name, d, p) in chamber_polytope()) {
        let l = induced_assignment(&d, &p).unwrap();
        prop_assert!(check_coherence(&l, &p).unwrap().is_coherent(), "{}", name);
        let simple: BTreeSet<usize> = d.simple().into_iter().collect();
        for f in face_lattice(&p).unwrap() {
            let walls: BTreeSet<Vec<BigInt>> = simple
                .iter()
                .filter(|&&s| d.pairing(&f.sample, s).is_zero())
                .map(|&s| d.root(s).to_vec())
                .collect();
            let listed: BTreeSet<Vec<BigInt>> = l.simple_at(f).into_iter().map(|r| r.root).collect();
            prop_assert_eq!(listed, walls, "{}", name);
        }
        let glued = glue_weyl(&l, &p).unwrap();
        for f in face_lattice(&p).unwrap() {
            prop_assert!(stabilizer_is_generated_locally(&glued, &f.sample).unwrap(), "{}", name);
        }
        let phi_m = construct_phi_m(&Sublattice::full(d.rank()), &glued.weyl, &l, &p).unwrap();
        prop_assert_eq!(phi_m.datum.weyl_group().unwrap().order(), glued.weyl.order(), "{}", name);
        prop_assert_eq!(phi_m.datum.simple().len(), glued.simple.len(), "{}", name);
    }

    #[test]
    fn interval_covers_of_rank_one(cuts in prop::collection::btree_set(1i64..30, 1..5), overlap in 1i64..3) {
        let sl2 = catalog::sl2();
        let red = reduce_to_phi0(&sl2).unwrap();
        let p = red.pull_back(&RationalPolytope::interval(rat(0), rat(1)).unwrap()).unwrap();
        let mut ends: Vec<i64> = vec![0];
        ends.extend(cuts);
        ends.push(30);
        let pieces: Vec<RationalPolytope> = ends
            .windows(2)
            .map(|w| RationalPolytope::interval(ratio(w[0] - overlap, 60), ratio(w[1] + overlap, 60)).unwrap())
            .collect();
        let cover = ConvexCover::new(pieces, &p).unwrap();
        let complex = CechComplex::build(&red.datum, &cover, SheafMode::KPlus).unwrap();
        for pair in complex.lattice_d.windows(2) {
            prop_assert!((&pair[1] * &pair[0]).is_zero());
        }
        let h = complex.cohomology();
        prop_assert!(h.iter().skip(1).all(|c| c.is_zero()));
        prop_assert_eq!(h[0].free_rank, 0);
        prop_assert!(h0_matches_global(&red.datum, &p, &complex).unwrap());
        prop_assert!(wall_pairing_surjectivity(&red.datum, &p).is_surjective());
    }
}

fn grid_cover(xs: &[(i64, i64)], ys: &[(i64, i64)], den: i64) -> Vec<RationalPolytope> {
    let mut out = Vec::new();
    for &(x0, x1) in xs {
        for &(y0, y1) in ys {
            out.push(
                RationalPolytope::from_bounds(&[(ratio(x0, den), ratio(x1, den)), (ratio(y0, den), ratio(y1, den))])
                    .unwrap(),
            );
        }
    }
    out
}

#[test]
fn square_cohomology_is_cover_independent() {
    let d = catalog::a1xa1();
    let red = reduce_to_phi0(&d).unwrap();
    let sq = RationalPolytope::from_bounds(&[(rat(0), rat(1)), (rat(0), rat(1))]).unwrap();
    let p = red.pull_back(&sq).unwrap();
    let covers = [
        grid_cover(&[(0, 6)], &[(0, 6)], 6),
        grid_cover(&[(0, 4), (2, 6)], &[(0, 4), (2, 6)], 6),
        grid_cover(&[(0, 3), (2, 5), (4, 6)], &[(0, 4), (3, 6)], 6),
    ];
    let mut results = Vec::new();
    for pieces in covers {
        let pieces = red.pull_back_cover(&pieces).unwrap();
        let cover = ConvexCover::new(pieces, &p).unwrap();
        let h = cech_cohomology(&red.datum, &cover, SheafMode::KPlus).unwrap();
        assert!(h.iter().skip(1).all(|c| c.is_zero()), "{h:?}");
        results.push((h[0].free_rank, h[0].torsion.clone(), h[0].rational_betti));
        let constant = cech_cohomology(&red.datum, &cover, SheafMode::Constant).unwrap();
        assert_eq!(constant[0].free_rank, 2);
        assert!(constant.iter().skip(1).all(|c| c.is_zero()));
    }
    assert!(results.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(results[0], (0, vec![], 1));
}

#[test]
fn cover_that_misses_a_point_is_rejected() {
    let p = RationalPolytope::interval(rat(0), rat(1)).unwrap();
    let pieces = vec![
        RationalPolytope::interval(rat(0), ratio(1, 2)).unwrap(),
        RationalPolytope::interval(ratio(2, 3), rat(1)).unwrap(),
    ];
    assert!(ConvexCover::new(pieces, &p).is_err());
}
