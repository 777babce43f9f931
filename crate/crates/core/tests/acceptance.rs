//! Acceptance criteria 1–9. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.
//!
//! Every comparison is exact (tolerance zero). The runtime ceilings are the
//! per-criterion budgets below and are part of each verdict.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wallcx::builders::{
    build_m, check_filtration_links, check_sub_poset_chain, equivalence1_map,
    link_identification_check, EnumerationBounds, KpiFamily, MReading, UnimodularFamily,
};
use wallcx::homology::{connectivity_probe, euler_identity_holds, homology, Verdict};
use wallcx::lattice::Int;
use wallcx::poset::{check_link_suspension, check_null_homotopy, SimplicialComplex};
use wallcx::verify::{
    random_chain_poset, random_subspace_pair, random_torsion_complement, run_suite, wall_axioms,
    Suite, VerifyOptions,
};
use wallcx::wall::{
    complement, search_rho, torsion_duality, verify_complement, StandardWallPairing, SubspacePair,
    XVector, YVector,
};

const SEED: u64 = 42;
/// Exact arithmetic throughout: no numeric slack anywhere.
const TOLERANCE: u64 = 0;

const BUDGET_1: Duration = Duration::from_secs(10);
const BUDGET_2: Duration = Duration::from_secs(10);
const BUDGET_3: Duration = Duration::from_secs(60);
const BUDGET_4: Duration = Duration::from_secs(5);
const BUDGET_5: Duration = Duration::from_secs(120);
const BUDGET_6: Duration = Duration::from_secs(60);
const BUDGET_7: Duration = Duration::from_secs(5);
const BUDGET_8: Duration = Duration::from_secs(600);

struct Outcome {
    ok: bool,
    detail: String,
}

fn run(n: u32, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = budget.is_none_or(|b| took <= b);
    let ok = out.ok && in_time;
    let limit = budget.map_or("none".to_string(), |b| format!("{}s", b.as_secs()));
    println!(
        "criterion {n}: {} - {name}: {} [{:.2}s, limit {limit}]",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64()
    );
    ok
}

fn c1() -> Outcome {
    let mut violations = 0;
    let mut pairs = 0;
    for g in 0..=3 {
        let r = wall_axioms(g, 2).expect("axiom suite runs");
        violations += r.violations.values().sum::<u64>();
        pairs += r.y_domain * r.y_domain;
    }
    Outcome {
        ok: violations == TOLERANCE,
        detail: format!("{violations} violations over {pairs} pairs, g <= 3, B = 2"),
    }
}

fn c2() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for g in 0..=3 {
        let s = search_rho(&StandardWallPairing::new(g)).expect("rho search runs");
        let identity: Vec<Vec<u8>> = (0..g)
            .map(|i| (0..g).map(|j| u8::from(i == j)).collect())
            .collect();
        ok &= s.solutions.len() == 1 && s.solutions[0] == identity;
        parts.push(format!("g={g}: {}/{}", s.solutions.len(), s.candidates));
    }
    Outcome {
        ok,
        detail: format!("solutions/candidates {}", parts.join(", ")),
    }
}

fn c3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let p = StandardWallPairing::new(5);
    let mut bad = 0;
    for i in 0..100 {
        let k = 1 + i % 5;
        let sub = random_subspace_pair(&mut rng, 5, k, 2).expect("valid pair drawn");
        let c = complement(&p, &sub).expect("complement exists");
        let chk = verify_complement(&p, &sub, &c).expect("check runs");
        if !chk.all_hold(5 - k) || c.pairing.rank != 5 - k {
            bad += 1;
        }
    }
    Outcome {
        ok: bad == 0,
        detail: format!("{bad} of 100 complements in W_5 failed (a)-(d) or standardization"),
    }
}

fn c4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = 0;
    for i in 0..50 {
        let g = 1 + i % 3;
        let y = random_torsion_complement(&mut rng, g, 2).expect("complement drawn");
        if !torsion_duality(&StandardWallPairing::new(g), &y).expect("duality check runs") {
            bad += 1;
        }
    }
    Outcome {
        ok: bad == 0,
        detail: format!("{bad} of 50 Z/2 duality matrices singular, g <= 3"),
    }
}

fn c5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut cases, mut link_bad, mut null_bad) = (0, 0, 0);
    for _ in 0..25 {
        let f = random_chain_poset(&mut rng);
        let vs: Vec<Vec<u32>> = f.elements().filter(|v| v.len() <= 2).cloned().collect();
        for v in vs {
            cases += 1;
            link_bad += usize::from(!check_link_suspension(&f, &v, 3).expect("link check").equal);
            null_bad += usize::from(!check_null_homotopy(&f, &v, 2).expect("null check").zero_map);
        }
    }
    let mut retract_bad = 0;
    for g in 1..=2 {
        let p = StandardWallPairing::new(g);
        let b = EnumerationBounds::defaults(g, 1).unwrap();
        let m = build_m(&p, &b, MReading::DualToOwn).expect("M builds");
        let r = check_filtration_links(&p, &m, &b).expect("retraction check");
        retract_bad += usize::from(!(r.retraction_ok && r.retraction_fixes_l));
    }
    Outcome {
        ok: link_bad + null_bad + retract_bad == 0,
        detail: format!(
            "(a) {link_bad} and (b) {null_bad} mismatches over {cases} (poset, v) cases; (c) {retract_bad} of 2 M instances"
        ),
    }
}

fn c6() -> Outcome {
    let mut ok = true;
    for g in 1..=2 {
        let r = check_sub_poset_chain(
            &StandardWallPairing::new(g),
            &EnumerationBounds::defaults(g, 1).unwrap(),
            MReading::DualToOwn,
        )
        .expect("chain check");
        ok &= r.verdict == Verdict::Pass;
    }
    let p = StandardWallPairing::new(2);
    let b = EnumerationBounds::defaults(2, 1).unwrap();
    let sub = SubspacePair {
        v: vec![XVector::basis(2, 0)],
        w: vec![YVector::y(2, 0)],
    };
    let e = equivalence1_map(&p, &sub, &b).expect("equivalence check");
    let l = link_identification_check(&p, &sub, &b).expect("link identification");
    ok &= e.verdict == Verdict::Pass && e.injective && e.forward_matched == e.source_size;
    ok &= e.inverse_matched == e.target_size && l.verdict == Verdict::Pass;
    Outcome {
        ok,
        detail: format!(
            "sub-poset chain g <= 2; equivalence {}<->{} ({}); link {}<->{} ({})",
            e.source_size, e.target_size, e.verdict, l.left_size, l.right_size, l.verdict
        ),
    }
}

fn c7() -> Outcome {
    let mut ok = true;
    for k in 1..=4 {
        let h = homology(&SimplicialComplex::simplex_boundary(k), k).expect("sphere homology");
        let mut want = vec![0; k + 1];
        if k == 1 {
            want[0] = 2;
        } else {
            want[0] = 1;
            want[k - 1] = 1;
        }
        ok &= h.bettis() == want && h.degrees.iter().all(|d| d.torsion.is_empty());
    }
    let rp2 = SimplicialComplex::projective_plane();
    let h = homology(&rp2, 2).expect("RP2 homology");
    let torsion_ok = h.torsion(1) == [Int::from(2)];
    ok &= torsion_ok && h.bettis() == vec![1, 0, 0];
    let mut euler = 0;
    for k in (1..=4)
        .map(SimplicialComplex::simplex_boundary)
        .chain([rp2, SimplicialComplex::empty()])
    {
        ok &= euler_identity_holds(&k).expect("Euler identity");
        euler += 1;
    }
    Outcome {
        ok,
        detail: format!("spheres k <= 4, RP2 torsion [2] = {torsion_ok}, {euler} Euler identities"),
    }
}

fn c8() -> Outcome {
    let probe = |f: &dyn wallcx::homology::ComplexFamily, g: usize, d: i64| {
        connectivity_probe(f, d, &EnumerationBounds::defaults(g, 1).unwrap(), 2)
            .expect("probe runs")
            .verdict
    };
    let u2 = probe(&UnimodularFamily { g: 2 }, 2, -1);
    let u3 = probe(&UnimodularFamily { g: 3 }, 3, 0);
    let k1 = probe(&KpiFamily { g: 1 }, 1, -1);
    let k3 = probe(&KpiFamily { g: 3 }, 3, 0);
    let ok =
        u2 == Verdict::Pass && u3 == Verdict::Pass && k1 == Verdict::Pass && k3 != Verdict::Fail;
    Outcome { ok, detail: format!("U(Z^2) nonempty {u2}, U(Z^3) connected {u3}, K(W_1) nonempty {k1}, K(W_3) connected {k3}") }
}

fn c9() -> Outcome {
    let opts = VerifyOptions {
        seed: 42,
        budget: 2,
    };
    let a = run_suite(Suite::All, &opts).expect("suite runs").to_json();
    let b = run_suite(Suite::All, &opts).expect("suite runs").to_json();
    wallcx::par::set_parallel(false);
    let c = run_suite(Suite::All, &opts).expect("suite runs").to_json();
    wallcx::par::set_parallel(true);
    Outcome {
        ok: a == b && a == c,
        detail: format!(
            "verify all --seed 42: {} bytes, repeat identical {}, sequential identical {}",
            a.len(),
            a == b,
            a == c
        ),
    }
}

fn main() {
    let results = [
        run(1, "Wall-algebra axiom suite", Some(BUDGET_1), c1),
        run(2, "rho existence and uniqueness", Some(BUDGET_2), c2),
        run(3, "complement algorithm", Some(BUDGET_3), c3),
        run(4, "torsion duality", Some(BUDGET_4), c4),
        run(5, "poset lemma shadows", Some(BUDGET_5), c5),
        run(6, "structural identifications", Some(BUDGET_6), c6),
        run(7, "homology engine calibration", Some(BUDGET_7), c7),
        run(8, "connectivity probes", Some(BUDGET_8), c8),
        run(9, "determinism", None, c9),
    ];
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
