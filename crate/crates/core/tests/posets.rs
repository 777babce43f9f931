use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wallcx::homology::homology;
use wallcx::poset::{check_link_suspension, check_null_homotopy, is_sublist, SequencePoset};
use wallcx::verify::random_chain_poset;

fn ground(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

fn generators() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(
        prop::sample::subsequence((0u32..5).collect::<Vec<_>>(), 1..=3).prop_shuffle(),
        1..5,
    )
}

proptest! {
    #[test]
    fn chain_closure_satisfies_chain_condition(gens in generators()) {
        let p = SequencePoset::chain_closure(ground(5), gens.clone()).unwrap();
        prop_assert!(p.satisfies_chain_condition());
        for g in &gens {
            prop_assert!(p.contains(g));
        }
        let again = SequencePoset::chain_closure(ground(5), p.elements().cloned()).unwrap();
        prop_assert_eq!(again.len(), p.len());
    }

    #[test]
    fn order_complex_faces_are_chains(gens in generators()) {
        let p = SequencePoset::chain_closure(ground(5), gens).unwrap();
        let elems: Vec<Vec<u32>> = p.elements().cloned().collect();
        let k = p.order_complex(None);
        prop_assert_eq!(k.num_vertices(), elems.len());
        for e in k.faces(1) {
            let (a, b) = (&elems[e[0] as usize], &elems[e[1] as usize]);
            prop_assert!(is_sublist(a, b) || is_sublist(b, a));
        }
    }

    #[test]
    fn link_and_null_homotopy_shadows(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_chain_poset(&mut rng);
        prop_assert!(f.satisfies_chain_condition());
        let v = f.elements().next().cloned().expect("nonempty");
        prop_assert!(check_link_suspension(&f, &v, 3).unwrap().equal);
        prop_assert!(check_null_homotopy(&f, &v, 2).unwrap().zero_map);
    }
}

#[test]
fn sublist_order() {
    assert!(is_sublist(&[0, 2], &[0, 1, 2]));
    assert!(!is_sublist(&[2, 0], &[0, 1, 2]));
    assert!(is_sublist(&[], &[1]));
}

#[test]
fn invalid_posets_are_rejected() {
    assert!(SequencePoset::new(ground(2), vec![vec![0, 0]]).is_err());
    assert!(SequencePoset::new(ground(2), vec![vec![3]]).is_err());
    assert!(SequencePoset::new(ground(2), vec![vec![]]).is_err());
    assert!(SequencePoset::new(vec!["a".to_string(), "a".to_string()], vec![vec![0]]).is_err());
}

#[test]
fn full_poset_counts_and_homology() {
    // Injective words on 3 letters of length <= 2: 3 + 6 elements.
    let p = SequencePoset::full(ground(3), 2).unwrap();
    assert_eq!(p.len(), 9);
    assert!(p.satisfies_chain_condition());
    let h = homology(&p.order_complex(None), 2).unwrap();
    // A connected graph with 9 vertices and 12 edges.
    assert_eq!(h.bettis(), vec![1, 4, 0]);
}

#[test]
fn links_of_a_full_poset() {
    let p = SequencePoset::full(ground(3), 3).unwrap();
    let l = p.link(&[0]).unwrap();
    assert!(!l.is_empty());
    assert!(p.link(&[0, 0]).is_err() || !p.contains(&[0, 0]));
}
