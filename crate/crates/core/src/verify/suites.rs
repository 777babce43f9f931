use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::algebra::{random_subspace_pair, random_torsion_complement, wall_axioms};
use super::{CheckResult, Suite, VerificationReport, VerifyOptions};
use crate::builders::{
    build_kpi, build_l, build_m, build_unimodular_complex, check_filtration_links,
    check_sub_poset_chain, equivalence1_map, kpi_flag_matches_brute_force,
    link_identification_check, weak_cm_vertex_links, EnumerationBounds, KpiFamily, MReading,
    UnimodularFamily,
};
use crate::homology::{
    connectivity_probe, euler_identity_holds, homology, ordered_tuple_homology, ComplexFamily,
    Verdict,
};
use crate::lattice::Int;
use crate::poset::{
    check_homotopy_isomorphisms, check_link_suspension, check_null_homotopy, SequencePoset,
    SimplicialComplex,
};
use crate::wall::{
    complement, search_rho, torsion_duality, verify_complement, StandardWallPairing, SubspacePair,
    XVector, YVector,
};
use crate::Error;

fn verdict_of(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn result(
    id: &str,
    anchor: &str,
    verdict: Verdict,
    params: Value,
    summary: String,
    data: impl Serialize,
) -> CheckResult {
    let params: BTreeMap<String, Value> = match params {
        Value::Object(m) => m.into_iter().collect(),
        _ => BTreeMap::new(),
    };
    CheckResult {
        id: id.into(),
        anchor: anchor.into(),
        verdict,
        params,
        summary,
        data: serde_json::to_value(data).expect("check data serializes"),
    }
}

/// Independent stream per check, so adding draws to one check leaves the
/// others unchanged.
fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn bounds(g: usize, b: i64) -> Result<EnumerationBounds, Error> {
    Ok(EnumerationBounds::defaults(g, b)?)
}

fn standard_sub(g: usize) -> SubspacePair {
    SubspacePair {
        v: vec![XVector::basis(g, 0)],
        w: vec![YVector::y(g, 0)],
    }
}

// ---------------------------------------------------------------- algebra

fn check_axioms() -> Result<CheckResult, Error> {
    let reports = (0..=3)
        .map(|g| wall_axioms(g, 2))
        .collect::<Result<Vec<_>, _>>()?;
    let bad: u64 = reports.iter().flat_map(|r| r.violations.values()).sum();
    let domains: usize = reports.iter().map(|r| r.y_domain * r.y_domain).sum();
    Ok(result(
        "wall_axioms",
        "Wall pairing axioms and the alpha summation formula",
        verdict_of(bad == 0),
        json!({"g": [0, 1, 2, 3], "bound": 2}),
        format!("{bad} violations over {domains} pairs (y, y')"),
        reports,
    ))
}

fn check_rho() -> Result<CheckResult, Error> {
    let mut rows = Vec::new();
    let mut ok = true;
    for g in 0..=3 {
        let s = search_rho(&StandardWallPairing::new(g))?;
        let identity: Vec<Vec<u8>> = (0..g)
            .map(|i| (0..g).map(|j| u8::from(i == j)).collect())
            .collect();
        let unique = s.solutions.len() == 1 && s.solutions[0] == identity;
        ok &= unique;
        rows.push(json!({"g": g, "candidates": s.candidates, "solutions": s.solutions.len(), "closed_form": unique}));
    }
    Ok(result(
        "rho_unique",
        "existence and uniqueness of rho",
        verdict_of(ok),
        json!({"g": [0, 1, 2, 3], "bound": 2}),
        "exactly one homomorphism X -> Torsion(Y) satisfies q(rho(x), y) = lambda(x, y) mod 2"
            .into(),
        rows,
    ))
}

fn check_complements(seed: u64) -> Result<CheckResult, Error> {
    const G: usize = 5;
    const SAMPLES: usize = 100;
    let mut rng = rng_for(seed, 3);
    let p = StandardWallPairing::new(G);
    let mut by_k: BTreeMap<usize, usize> = BTreeMap::new();
    let mut failures = Vec::new();
    for i in 0..SAMPLES {
        let k = rng.random_range(1..=G);
        let sub = random_subspace_pair(&mut rng, G, k, 2)?;
        *by_k.entry(k).or_insert(0) += 1;
        let c = complement(&p, &sub)?;
        let chk = verify_complement(&p, &sub, &c)?;
        if !chk.all_hold(G - k) {
            failures.push(json!({"sample": i, "input": sub, "check": chk}));
        }
    }
    Ok(result(
        "complement",
        "complement of a perfectly paired pair is a Wall pairing of rank g - k",
        verdict_of(failures.is_empty()),
        json!({"g": G, "bound": 2, "samples": SAMPLES, "seed": seed}),
        format!("{} of {SAMPLES} complements failed", failures.len()),
        json!({"samples_by_k": by_k, "failures": failures}),
    ))
}

fn check_torsion_duality(seed: u64) -> Result<CheckResult, Error> {
    const SAMPLES: usize = 50;
    let mut rng = rng_for(seed, 4);
    let mut failures = Vec::new();
    let mut by_g: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..SAMPLES {
        let g = rng.random_range(1..=3);
        *by_g.entry(g).or_insert(0) += 1;
        let y = random_torsion_complement(&mut rng, g, 2)?;
        if !torsion_duality(&StandardWallPairing::new(g), &y)? {
            failures.push(json!({"sample": i, "basis": y}));
        }
    }
    Ok(result(
        "torsion_duality",
        "torsion duality z -> q(z, -)",
        verdict_of(failures.is_empty()),
        json!({"g": [1, 2, 3], "bound": 2, "samples": SAMPLES, "seed": seed}),
        format!("{} of {SAMPLES} Z/2 matrices singular", failures.len()),
        json!({"samples_by_g": by_g, "failures": failures}),
    ))
}

pub fn algebra_checks(opts: &VerifyOptions) -> Result<Vec<CheckResult>, Error> {
    Ok(vec![
        check_axioms()?,
        check_rho()?,
        check_complements(opts.seed)?,
        check_torsion_duality(opts.seed)?,
    ])
}

// ----------------------------------------------------------------- posets

/// Chain closure of one to four random generators of length at most 3 on
/// one to six letters.
pub fn random_chain_poset(rng: &mut impl Rng) -> SequencePoset<String> {
    let n = rng.random_range(1..=6usize);
    let ground: Vec<String> = (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let gens: Vec<Vec<u32>> = (0..rng.random_range(1..=4))
        .map(|_| {
            let len = rng.random_range(1..=n.min(3));
            sample(rng, n, len).into_iter().map(|i| i as u32).collect()
        })
        .collect();
    SequencePoset::chain_closure(ground, gens).expect("generated sequences are valid")
}

const POSET_SAMPLES: usize = 25;

fn poset_instances(seed: u64) -> Vec<SequencePoset<String>> {
    let mut rng = rng_for(seed, 5);
    (0..POSET_SAMPLES)
        .map(|_| random_chain_poset(&mut rng))
        .collect()
}

fn short_elements(f: &SequencePoset<String>) -> Vec<Vec<u32>> {
    f.elements().filter(|v| v.len() <= 2).cloned().collect()
}

fn check_link_suspensions(
    posets: &[SequencePoset<String>],
    seed: u64,
) -> Result<CheckResult, Error> {
    let (mut cases, mut bad) = (0, Vec::new());
    for (i, f) in posets.iter().enumerate() {
        for v in short_elements(f) {
            cases += 1;
            let c = check_link_suspension(f, &v, 3)?;
            if !c.equal {
                bad.push(
                    json!({"poset": i, "v": f.display_seq(&v), "link": c.link, "model": c.model}),
                );
            }
        }
    }
    Ok(result(
        "link_suspension",
        "link of v is the (|v| - 1)-fold suspension of Z^|v| F_v",
        verdict_of(bad.is_empty()),
        json!({"posets": POSET_SAMPLES, "max_ground": 6, "max_v_len": 2, "degree_cap": 3, "seed": seed}),
        format!(
            "{} of {cases} reduced homology comparisons differ",
            bad.len()
        ),
        json!({"cases": cases, "mismatches": bad}),
    ))
}

fn check_null_homotopies(
    posets: &[SequencePoset<String>],
    seed: u64,
) -> Result<CheckResult, Error> {
    let (mut cases, mut cycles, mut bad) = (0, 0, Vec::new());
    for (i, f) in posets.iter().enumerate() {
        for v in short_elements(f) {
            cases += 1;
            let c = check_null_homotopy(f, &v, 2)?;
            cycles += c.cycles_tested;
            if !c.zero_map {
                bad.push(json!({"poset": i, "v": f.display_seq(&v)}));
            }
        }
    }
    Ok(result(
        "null_homotopy",
        "the inclusion of F_v into F is null-homotopic",
        verdict_of(bad.is_empty()),
        json!({"posets": POSET_SAMPLES, "max_ground": 6, "max_v_len": 2, "degree_cap": 2, "seed": seed}),
        format!(
            "{cycles} cycles pushed into F over {cases} cases, {} not bounding",
            bad.len()
        ),
        json!({"cases": cases, "cycles": cycles, "failures": bad}),
    ))
}

fn check_homotopy_isos(posets: &[SequencePoset<String>], seed: u64) -> Result<CheckResult, Error> {
    let (mut applicable, mut bad) = (0, Vec::new());
    for (i, f) in posets.iter().enumerate() {
        for d in 0..=1 {
            let c = check_homotopy_isomorphisms(f, d, 1, 2)?;
            applicable += usize::from(c.hypotheses_hold);
            if !c.consistent() {
                bad.push(json!({"poset": i, "d": d, "check": c}));
            }
        }
    }
    Ok(result(
        "homotopy_isomorphisms",
        "i_n, (s_0)_* and their composite are isomorphisms on low homotopy",
        verdict_of(bad.is_empty()),
        json!({"posets": POSET_SAMPLES, "d": [0, 1], "n": 1, "labels": 2, "seed": seed}),
        format!(
            "hypotheses held in {applicable} of {} cases; {} inconsistent",
            2 * posets.len(),
            bad.len()
        ),
        json!({"applicable": applicable, "failures": bad}),
    ))
}

fn check_m_filtration() -> Result<(CheckResult, CheckResult), Error> {
    let mut reports = Vec::new();
    for g in 1..=2 {
        let p = StandardWallPairing::new(g);
        let b = bounds(g, 1)?;
        let m = build_m(&p, &b, MReading::DualToOwn)?;
        reports.push((g, m.len(), check_filtration_links(&p, &m, &b)?));
    }
    let retract_ok = reports
        .iter()
        .all(|(_, _, r)| r.retraction_ok && r.retraction_fixes_l);
    let links_ok = reports
        .iter()
        .all(|(_, _, r)| r.links_in_previous && r.lower_links_zero);
    let data: Vec<Value> = reports
        .iter()
        .map(|(g, n, r)| json!({"g": g, "m_size": n, "report": r}))
        .collect();
    let params = json!({"g": [1, 2], "bound": 1, "reading": MReading::DualToOwn});
    Ok((
        result(
            "deformation_retraction",
            "h and j form a deformation retraction pair",
            verdict_of(retract_ok),
            params.clone(),
            "h(j(u)) = u on L; h(z) <= z and h monotone on F_0".into(),
            &data,
        ),
        result(
            "filtration_links",
            "links of new elements in the filtration of M",
            verdict_of(links_ok),
            params,
            "each v in F_i \\ F_(i-1) has its whole link in F_(i-1), lower link inside U".into(),
            &data,
        ),
    ))
}

pub fn posets_checks(opts: &VerifyOptions) -> Result<Vec<CheckResult>, Error> {
    let posets = poset_instances(opts.seed);
    let (retract, links) = check_m_filtration()?;
    Ok(vec![
        check_link_suspensions(&posets, opts.seed)?,
        check_null_homotopies(&posets, opts.seed)?,
        check_homotopy_isos(&posets, opts.seed)?,
        retract,
        links,
    ])
}

// -------------------------------------------------------------- complexes

fn check_sub_posets() -> Result<CheckResult, Error> {
    let mut reports = Vec::new();
    for g in 1..=2 {
        reports.push(check_sub_poset_chain(
            &StandardWallPairing::new(g),
            &bounds(g, 1)?,
            MReading::DualToOwn,
        )?);
    }
    let v = reports
        .iter()
        .map(|r| r.verdict)
        .max()
        .unwrap_or(Verdict::Pass);
    Ok(result(
        "sub_poset_chain",
        "U and L as the zero and nonzero parts of M",
        v,
        json!({"g": [1, 2], "bound": 1}),
        "elements of M with all y = 0 are U, with all y != 0 are L".into(),
        reports,
    ))
}

fn check_equivalence() -> Result<CheckResult, Error> {
    let r = equivalence1_map(
        &StandardWallPairing::new(2),
        &standard_sub(2),
        &bounds(2, 1)?,
    )?;
    Ok(result(
        "equivalence1",
        "u -> u.v identifies L with the labeled complement poset",
        r.verdict,
        json!({"g": 2, "bound": 1, "V": "x1", "W": "y1"}),
        format!(
            "{} source and {} target elements, {} and {} matched",
            r.source_size, r.target_size, r.forward_matched, r.inverse_matched
        ),
        &r,
    ))
}

fn check_link_identification() -> Result<CheckResult, Error> {
    let r = link_identification_check(
        &StandardWallPairing::new(2),
        &standard_sub(2),
        &bounds(2, 1)?,
    )?;
    Ok(result(
        "link_identification",
        "L_vw is L of the complement pairing",
        r.verdict,
        json!({"g": 2, "bound": 1, "V": "x1", "W": "y1"}),
        format!(
            "{} link elements, {} complement elements, {} matched",
            r.left_size, r.right_size, r.matched
        ),
        &r,
    ))
}

fn sphere_expected(k: usize) -> Vec<usize> {
    // Homology of the boundary of the k-simplex, a (k−1)-sphere.
    let mut b = vec![0; k];
    if k == 1 {
        b[0] = 2;
    } else {
        b[0] = 1;
        b[k - 1] = 1;
    }
    b
}

fn check_calibration() -> Result<CheckResult, Error> {
    let mut ok = true;
    let mut rows = Vec::new();
    for k in 1..=4 {
        let h = homology(&SimplicialComplex::simplex_boundary(k), k)?;
        let got: Vec<usize> = h.bettis().into_iter().take(k).collect();
        let torsion_free = h.degrees.iter().all(|d| d.torsion.is_empty());
        let good =
            got == sphere_expected(k) && torsion_free && h.bettis()[k..].iter().all(|&b| b == 0);
        ok &= good;
        rows.push(
            json!({"complex": format!("boundary of simplex {k}"), "betti": h.bettis(), "ok": good}),
        );
    }
    let rp2 = homology(&SimplicialComplex::projective_plane(), 2)?;
    let rp2_ok = rp2.bettis() == vec![1, 0, 0]
        && rp2.torsion(1) == [Int::from(2)]
        && rp2.torsion(2).is_empty();
    ok &= rp2_ok;
    rows.push(json!({"complex": "projective plane", "betti": rp2.bettis(), "torsion_1": rp2.torsion(1), "ok": rp2_ok}));

    let mut euler = Vec::new();
    let mut named: Vec<(String, SimplicialComplex)> = (1..=4)
        .map(|k| {
            (
                format!("boundary of simplex {k}"),
                SimplicialComplex::simplex_boundary(k),
            )
        })
        .collect();
    named.push((
        "projective plane".into(),
        SimplicialComplex::projective_plane(),
    ));
    named.push(("empty".into(), SimplicialComplex::empty()));
    for g in 0..=2 {
        let p = StandardWallPairing::new(g);
        let b = bounds(g, 1)?;
        named.push((format!("K^pi(W_{g}) B=1"), build_kpi(&p, &b)?.1));
        named.push((
            format!("|L(W_{g})| B=1"),
            build_l(&p, &b)?.order_complex(None),
        ));
    }
    for g in 1..=3 {
        named.push((
            format!("U(Z^{g}) B=1"),
            build_unimodular_complex(g, &bounds(g, 1)?)?.1,
        ));
    }
    for (name, k) in &named {
        let holds = euler_identity_holds(k)?;
        ok &= holds;
        euler.push(json!({"complex": name, "faces": k.face_counts(), "euler": k.euler_characteristic(), "ok": holds}));
    }
    Ok(result(
        "homology_calibration",
        "homology engine on spheres, the projective plane and the Euler identity",
        verdict_of(ok),
        json!({"spheres": [1, 2, 3, 4]}),
        format!(
            "{} fixtures and {} Euler identities",
            rows.len(),
            euler.len()
        ),
        json!({"fixtures": rows, "euler": euler}),
    ))
}

fn check_flag() -> Result<CheckResult, Error> {
    let b = EnumerationBounds::new(1, 2, 2)?;
    let mut rows = Vec::new();
    for g in 0..=2 {
        rows.push(json!({"g": g, "matches": kpi_flag_matches_brute_force(&StandardWallPairing::new(g), &b)?}));
    }
    let ok = rows.iter().all(|r| r["matches"] == json!(true));
    Ok(result(
        "kpi_flag",
        "K^pi is the flag complex of its compatibility graph",
        verdict_of(ok),
        json!({"g": [0, 1, 2], "bound": 1, "max_dim": 2}),
        "flag construction against the simplex conditions on every vertex set".into(),
        rows,
    ))
}

fn check_l_tuples() -> Result<CheckResult, Error> {
    let mut rows = Vec::new();
    let mut ok = true;
    for g in 1..=2 {
        let p = StandardWallPairing::new(g);
        let b = bounds(g, 1)?;
        let top = b.max_seq_len - 1;
        let l = build_l(&p, &b)?;
        let hl = homology(&l.order_complex(None), top)?;
        let (_, k) = build_kpi(&p, &b.with_dim(top))?;
        let ht = ordered_tuple_homology(&k, top)?;
        let same = hl.degrees == ht.degrees;
        ok &= same;
        rows.push(json!({"g": g, "order_complex": hl.degrees, "ordered_tuples": ht.degrees, "equal": same}));
    }
    Ok(result(
        "l_vs_ordered_tuples",
        "|L| is the realization of the ordered simplices of K^pi",
        verdict_of(ok),
        json!({"g": [1, 2], "bound": 1}),
        "homology of the order complex of L against the semi-simplicial set of ordered faces"
            .into(),
        rows,
    ))
}

pub fn complexes_checks(_opts: &VerifyOptions) -> Result<Vec<CheckResult>, Error> {
    Ok(vec![
        check_sub_posets()?,
        check_equivalence()?,
        check_link_identification()?,
        check_calibration()?,
        check_flag()?,
        check_l_tuples()?,
    ])
}

// ----------------------------------------------------------- connectivity

fn probe(
    id: &str,
    anchor: &str,
    family: &dyn ComplexFamily,
    g: usize,
    degree: i64,
    opts: &VerifyOptions,
) -> Result<CheckResult, Error> {
    let r = connectivity_probe(family, degree, &bounds(g, 1)?, opts.budget)?;
    Ok(result(
        id,
        anchor,
        r.verdict,
        json!({"g": g, "start_bound": 1, "degree": degree, "budget": opts.budget}),
        format!(
            "{}: {} at bound {} ({} vertices)",
            r.family,
            r.claim(),
            r.base_bound,
            r.base_vertices
        ),
        &r,
    ))
}

pub fn connectivity_checks(opts: &VerifyOptions) -> Result<Vec<CheckResult>, Error> {
    let unimodular = "connectivity of the unimodular complex";
    let wall = "connectivity of the Wall complex";
    let weak = weak_cm_vertex_links(3, &bounds(3, 1)?, opts.budget)?;
    Ok(vec![
        probe(
            "u2_nonempty",
            unimodular,
            &UnimodularFamily { g: 2 },
            2,
            -1,
            opts,
        )?,
        probe(
            "u3_connected",
            unimodular,
            &UnimodularFamily { g: 3 },
            3,
            0,
            opts,
        )?,
        probe("kpi1_nonempty", wall, &KpiFamily { g: 1 }, 1, -1, opts)?,
        probe("kpi3_connected", wall, &KpiFamily { g: 3 }, 3, 0, opts)?,
        result(
            "weak_cm_vertex_links",
            "vertex links of K^pi for the weak Cohen-Macaulay property",
            weak.verdict,
            json!({"g": 3, "start_bound": 1, "degree": weak.predicted_connectivity, "budget": opts.budget}),
            format!("{} of {} vertex links pass", weak.passed, weak.vertices),
            &weak,
        ),
    ])
}

/// Runs a suite. Checks run in a fixed order; parallelism lives inside
/// the individual computations.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<VerificationReport, Error> {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Algebra {
        checks.extend(algebra_checks(opts)?);
    }
    if all || suite == Suite::Posets {
        checks.extend(posets_checks(opts)?);
    }
    if all || suite == Suite::Complexes {
        checks.extend(complexes_checks(opts)?);
    }
    if all || suite == Suite::Connectivity {
        checks.extend(connectivity_checks(opts)?);
    }
    debug_assert_eq!(
        checks.iter().map(|c| &c.id).collect::<BTreeSet<_>>().len(),
        checks.len()
    );
    Ok(VerificationReport::new(suite, opts, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_posets_are_deterministic_and_valid() {
        let a = poset_instances(42);
        let b = poset_instances(42);
        assert_eq!(a, b);
        assert!(a
            .iter()
            .all(|f| f.satisfies_chain_condition() && !f.is_empty()));
        assert_ne!(a, poset_instances(43));
    }
}
