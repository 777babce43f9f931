use wallcx::builders::{
    build_kpi, build_l, build_m, build_unimodular_complex, compatible, enumerate_kpi_vertices,
    filtration, kpi_flag_matches_brute_force, retraction_h, weak_cm_vertex_links,
    EnumerationBounds, MReading,
};
use wallcx::homology::{component_count, Verdict};
use wallcx::wall::StandardWallPairing;

fn b(g: usize, bound: i64) -> EnumerationBounds {
    EnumerationBounds::defaults(g, bound).unwrap()
}

#[test]
fn kpi_small_ranks() {
    let (_, k0) = build_kpi(&StandardWallPairing::new(0), &b(0, 1)).unwrap();
    assert!(k0.is_empty());
    let (_, k1) = build_kpi(&StandardWallPairing::new(1), &b(1, 1)).unwrap();
    assert_eq!(k1.num_vertices(), 2);
    let p = StandardWallPairing::new(2);
    assert!(kpi_flag_matches_brute_force(&p, &b(2, 1)).unwrap());
    for v in enumerate_kpi_vertices(&p, &b(2, 1)).unwrap() {
        assert!(!compatible(&v, &v));
    }
}

#[test]
fn kpi_is_connected_in_rank_three() {
    let (_, k) = build_kpi(&StandardWallPairing::new(3), &b(3, 1)).unwrap();
    assert_eq!(k.num_vertices(), 696);
    assert_eq!(component_count(&k), 1);
}

#[test]
fn unimodular_complexes() {
    let (_, u1) = build_unimodular_complex(1, &b(1, 1)).unwrap();
    assert_eq!(u1.num_vertices(), 2);
    let (_, u3) = build_unimodular_complex(3, &b(3, 1)).unwrap();
    assert_eq!(u3.num_vertices(), 26);
    assert_eq!(component_count(&u3), 1);
}

#[test]
fn l_and_m_satisfy_the_chain_condition() {
    let p = StandardWallPairing::new(2);
    let l = build_l(&p, &b(2, 1)).unwrap();
    assert!(l.satisfies_chain_condition());
    for reading in [MReading::DualToOwn, MReading::OrthogonalToAll] {
        let m = build_m(&p, &b(2, 1), reading).unwrap();
        assert!(m.satisfies_chain_condition());
        let f0 = filtration(&m, 0);
        assert!(f0.len() <= m.len());
        assert_eq!(filtration(&m, 2).len(), m.len());
    }
}

#[test]
fn retraction_keeps_nonzero_entries() {
    let p = StandardWallPairing::new(2);
    let m = build_m(&p, &b(2, 1), MReading::DualToOwn).unwrap();
    for e in m.elements() {
        let seq = m.labels(e);
        match retraction_h(&seq) {
            Ok(h) => assert!(h.len() <= seq.len() && !h.is_empty()),
            Err(_) => assert!(seq
                .iter()
                .all(|q| q.y.free.iter().all(|&c| c == 0) && q.y.tor.iter().all(|&c| c == 0))),
        }
    }
}

#[test]
fn weak_cm_vertex_links_rank_three() {
    let r = weak_cm_vertex_links(3, &b(3, 1), 0).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.vertices, 696);
}

#[test]
fn bounds_are_validated() {
    assert!(EnumerationBounds::new(0, 1, 1).is_err());
    assert!(EnumerationBounds::new(-1, 1, 1).is_err());
}
