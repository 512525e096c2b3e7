use std::collections::BTreeSet;

use multfree::exact_linalg::rational::{rat_int_dot, ratio, Rat};
use multfree::exact_linalg::{is_primitive, IntMatrix, Sublattice};
use multfree::root_data::{
    catalog, fiber_structure, global_sections, phi_max, special_involution, special_roots,
    DiagonalizableGroupDescriptor,
};
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn weyl_orders_of_catalog() {
    let orders: Vec<(&str, usize)> =
        catalog::all().iter().map(|(n, d)| (*n, d.weyl_group().expect("finite").order())).collect();
    let expected = [
        ("SL2", 2),
        ("PGL2", 2),
        ("GL2", 2),
        ("A1xA1", 4),
        ("A2", 6),
        ("B2", 8),
        ("G2", 12),
        ("A3", 24),
        ("B3", 48),
        ("C3", 48),
    ];
    assert_eq!(orders, expected);
}

#[test]
fn weyl_group_permutes_roots() {
    for (name, d) in catalog::all() {
        let roots: BTreeSet<Vec<_>> = d.roots().iter().cloned().collect();
        for w in d.weyl_group().unwrap().elements() {
            let image: BTreeSet<Vec<_>> = d.roots().iter().map(|r| w.mul_vec(r)).collect();
            assert_eq!(image, roots, "{name}");
        }
    }
}

#[test]
fn phi_max_has_primitive_coroots_and_same_reflections() {
    for (name, d) in catalog::all() {
        let w = d.weyl_group().unwrap();
        let m = phi_max(&w).unwrap_or_else(|e| panic!("{name}: {e}"));
        for c in m.coroots() {
            assert!(is_primitive(c), "{name}: coroot {c:?} is not primitive");
        }
        let ours: BTreeSet<IntMatrix> = (0..m.num_roots()).map(|i| m.reflection_matrix(i)).collect();
        let theirs: BTreeSet<IntMatrix> = w.reflections().into_iter().collect();
        assert_eq!(ours, theirs, "{name}");
        assert_eq!(m.weyl_group().unwrap().order(), w.order(), "{name}");
    }
}

#[test]
fn special_involutions_are_invariant() {
    for (name, d) in catalog::all() {
        let w = d.weyl_group().unwrap();
        for s in special_roots(&d).unwrap() {
            let eps = special_involution(&d, s.index).unwrap();
            assert!(eps.is_invariant_under(&w), "{name}");
            assert_eq!(eps.eval(d.root(s.index)), -1, "{name}");
        }
    }
}

#[test]
fn zero_fiber_is_global_sections() {
    for (name, d) in catalog::all() {
        let zero = vec![Rat::zero(); d.rank()];
        assert_eq!(fiber_structure(&d, &zero).semisimple, global_sections(&d), "{name}");
        assert_eq!(global_sections(&d), DiagonalizableGroupDescriptor::of_quotient(&d.root_lattice()), "{name}");
    }
    // SL2 has centre {±1}; PGL2 and GL2 have connected constant sections
    assert_eq!(global_sections(&catalog::sl2()).torsion_factors.len(), 1);
    assert!(global_sections(&catalog::pgl2()).is_trivial());
    assert_eq!(global_sections(&catalog::gl2()).torus_rank, 1);
}

proptest! {
    #[test]
    fn regular_fibers_are_tori(which in 0usize..10, coords in prop::collection::vec((-50i64..50, 1i64..20), 3)) {
        let (name, d) = catalog::all().swap_remove(which);
        let a: Vec<Rat> = coords.iter().take(d.rank()).map(|&(p, q)| ratio(p, q)).collect();
        let regular = d.coroots().iter().all(|c| !rat_int_dot(&a, c).is_zero());
        let f = fiber_structure(&d, &a);
        if regular {
            prop_assert_eq!(f.semisimple.torus_rank, d.rank(), "{}", name);
            prop_assert!(f.semisimple.torsion_factors.is_empty());
            prop_assert_eq!(f.unipotent_rank, 0);
        } else {
            prop_assert!(!f.local_roots.is_empty());
        }
        // the fiber group is the quotient of Λ by the local root lattice
        let lattice = Sublattice::new(d.rank(), f.local_roots.iter().map(|&i| d.root(i).to_vec()).collect());
        prop_assert_eq!(f.unipotent_rank, lattice.rank());
    }
}
