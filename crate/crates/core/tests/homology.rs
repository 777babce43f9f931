use proptest::prelude::*;
use wallcx::builders::EnumerationBounds;
use wallcx::homology::{
    component_count, connectivity_probe, cycle_basis, euler_identity_holds, homology, is_boundary,
    reduced_homology, FixedComplex, Verdict,
};
use wallcx::lattice::Int;
use wallcx::poset::{join, suspension, SimplicialComplex};

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..8).prop_flat_map(|n| {
        prop::collection::vec(
            prop::sample::subsequence((0..n as u32).collect::<Vec<_>>(), 1..=n.min(4)),
            1..8,
        )
        .prop_map(move |gens| SimplicialComplex::from_generators(labels(n), gens).unwrap())
    })
}

proptest! {
    #[test]
    fn euler_identity(k in random_complex()) {
        prop_assert!(euler_identity_holds(&k).unwrap());
    }

    #[test]
    fn vertex_order_does_not_matter(k in random_complex(), seed in any::<u64>()) {
        let n = k.num_vertices();
        let mut perm: Vec<u32> = (0..n as u32).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(homology(&k, 3).unwrap(), homology(&k.permuted(&perm), 3).unwrap());
    }

    #[test]
    fn suspension_shifts_reduced_homology(k in random_complex()) {
        let h = reduced_homology(&k, 3).unwrap();
        let s = reduced_homology(&suspension(&k), 4).unwrap();
        prop_assert!(s.reduced_matches_shifted(&h, 1));
    }

    #[test]
    fn cycles_of_a_cone_bound(k in random_complex()) {
        let apex = SimplicialComplex::simplex(1);
        let cone = join(&k, &apex, None);
        prop_assert_eq!(component_count(&cone), 1);
        for d in 1..=2 {
            for z in cycle_basis(&cone, d).unwrap() {
                prop_assert!(is_boundary(&cone, &z).unwrap());
            }
        }
    }
}

#[test]
fn spheres_and_projective_plane() {
    for k in 2..=5 {
        let h = homology(&SimplicialComplex::simplex_boundary(k), k).unwrap();
        assert_eq!(h.betti(0), 1);
        assert_eq!(h.betti(k - 1), 1);
        assert_eq!(h.bettis().iter().sum::<usize>(), 2);
    }
    let h = homology(&SimplicialComplex::projective_plane(), 3).unwrap();
    assert_eq!(h.torsion(1), [Int::from(2)]);
    assert_eq!(h.bettis(), vec![1, 0, 0, 0]);
}

#[test]
fn empty_complex_reduced_homology() {
    let h = reduced_homology(&SimplicialComplex::empty(), 2).unwrap();
    assert_eq!(h.reduced_group(-1).0, 1);
    assert!(!h.vanishes_through(-1));
    assert!(homology(&SimplicialComplex::empty(), 2)
        .unwrap()
        .bettis()
        .iter()
        .all(|&b| b == 0));
}

#[test]
fn probes_on_fixed_complexes() {
    let b = EnumerationBounds::new(1, 1, 3).unwrap();
    let sphere = FixedComplex {
        name: "S2".into(),
        complex: SimplicialComplex::simplex_boundary(3),
    };
    assert_eq!(
        connectivity_probe(&sphere, 1, &b, 0).unwrap().verdict,
        Verdict::Pass
    );
    assert_eq!(
        connectivity_probe(&sphere, 2, &b, 0).unwrap().verdict,
        Verdict::Fail
    );
    let two_points = FixedComplex {
        name: "S0".into(),
        complex: SimplicialComplex::from_generators(labels(2), vec![vec![0], vec![1]]).unwrap(),
    };
    assert_eq!(
        connectivity_probe(&two_points, 0, &b, 0).unwrap().verdict,
        Verdict::Fail
    );
    assert_eq!(
        connectivity_probe(&two_points, -1, &b, 0).unwrap().verdict,
        Verdict::Pass
    );
}
