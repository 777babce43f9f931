//! Bounded checks of the identifications between L, M and their pieces.
//!
//! Each check enumerates both sides at the same coefficient bound, maps
//! every element across and compares. An image that leaves the bound can
//! be neither confirmed nor refuted, so it only lowers the verdict to
//! INCONCLUSIVE.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::sequences::{
    build_l, build_m, build_u, filtration, m_conditions_hold, retraction_h, PairPoset,
};
use super::{EnumerationBounds, MReading, Pair};
use crate::homology::Verdict;
use crate::poset::is_sublist;
use crate::wall::{
    bit_vectors, box_vectors, complement, ComplementCoordinates, StandardWallPairing, SubspacePair,
    XVector, YVector,
};
use crate::Error;

const MAX_RECORDED: usize = 8;

/// Label (b, e) ∈ V × ρ(V)-coordinates carried by an element of the
/// labeled complement poset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VRhoLabel {
    pub b: Vec<i64>,
    pub e: Vec<u8>,
}

impl fmt::Display for VRhoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.b.iter().map(ToString::to_string).collect();
        let e: Vec<String> = self.e.iter().map(ToString::to_string).collect();
        write!(f, "({}|{})", b.join(","), e.join(","))
    }
}

type LabeledSeq = Vec<(Pair, VRhoLabel)>;

#[derive(Clone, Debug, Serialize)]
pub struct Equivalence1Report {
    pub rank: usize,
    pub sub_rank: usize,
    pub coeff_bound: i64,
    pub source_size: usize,
    pub target_size: usize,
    /// Source elements whose image lies in the target, and conversely.
    pub forward_matched: usize,
    pub inverse_matched: usize,
    pub out_of_bound: usize,
    pub injective: bool,
    pub mismatches: Vec<String>,
    pub verdict: Verdict,
}

struct Tally {
    out_of_bound: usize,
    mismatches: Vec<String>,
    failed: bool,
}

impl Tally {
    fn new() -> Self {
        Tally {
            out_of_bound: 0,
            mismatches: Vec::new(),
            failed: false,
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed = true;
        if self.mismatches.len() < MAX_RECORDED {
            self.mismatches.push(msg);
        }
    }

    fn verdict(&self) -> Verdict {
        if self.failed {
            Verdict::Fail
        } else if self.out_of_bound > 0 {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }
}

fn show<T: fmt::Display>(seq: &[T]) -> String {
    let parts: Vec<String> = seq.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn coords(p: &StandardWallPairing, sub: &SubspacePair) -> Result<ComplementCoordinates, Error> {
    let comp = complement(p, sub)?;
    Ok(ComplementCoordinates::new(p, sub, comp)?)
}

fn in_box(v: &[i64], b: i64) -> bool {
    v.iter().all(|c| c.abs() <= b)
}

/// Compares {u ∈ L(X, Y) : u·((v_1, 0), …, (v_k, 0)) ∈ M} with the labeled
/// poset L(W^⊥, V^⊥ ∩ Ŵ)⟨V × ρ(V)⟩ through the coordinate splitting
/// x = a + b, y = c + d + e. The map acts entrywise, so it preserves the
/// sub-list order; injectivity and both inclusions are checked.
pub fn equivalence1_map(
    p: &StandardWallPairing,
    sub: &SubspacePair,
    bounds: &EnumerationBounds,
) -> Result<Equivalence1Report, Error> {
    let co = coords(p, sub)?;
    let g = p.rank;
    let k = sub.v.len();
    let bb = bounds.coeff_bound;
    let vseq: Vec<Pair> = sub
        .v
        .iter()
        .map(|v| Pair::new(v.clone(), YVector::zero(g)))
        .collect();

    let l = build_l(p, bounds)?;
    let mut source: BTreeSet<Vec<Pair>> = BTreeSet::new();
    for e in l.elements() {
        let u = l.labels(e);
        let mut uv = u.clone();
        uv.extend(vseq.iter().cloned());
        if m_conditions_hold(p, &uv, MReading::DualToOwn)? {
            source.insert(u);
        }
    }

    let comp_pairing = co.complement().pairing;
    let l2 = build_l(&comp_pairing, bounds)?;
    let labels: Vec<VRhoLabel> = box_vectors(k, bb)
        .into_iter()
        .flat_map(|b| {
            bit_vectors(k)
                .into_iter()
                .map(move |e| VRhoLabel { b: b.clone(), e })
        })
        .collect();
    let labeled = l2.label(&labels)?;
    let target: BTreeSet<LabeledSeq> = labeled
        .elements()
        .map(|e| labeled.labels(e).into_iter().map(|l| (l.0, l.1)).collect())
        .collect();

    let mut t = Tally::new();
    let mut images = BTreeSet::new();
    let mut forward_matched = 0;
    'src: for u in &source {
        let mut img: LabeledSeq = Vec::with_capacity(u.len());
        let mut inside = true;
        for pr in u {
            let xs = co.split_x(&pr.x);
            let ys = co.split_y(&pr.y);
            if ys.d.iter().any(|&c| c != 0) {
                t.fail(format!("{} has a nonzero W-component", show(u)));
                continue 'src;
            }
            inside &= in_box(&xs.a, bb) && in_box(&ys.c_free, bb) && in_box(&xs.b, bb);
            let q = Pair::new(XVector::new(xs.a), YVector::new(ys.c_free, ys.c_tor));
            img.push((q, VRhoLabel { b: xs.b, e: ys.e }));
        }
        if !images.insert(img.clone()) {
            t.fail(format!("{} collides with another element", show(u)));
        }
        if !inside {
            t.out_of_bound += 1;
        } else if target.contains(&img) {
            forward_matched += 1;
        } else {
            t.fail(format!(
                "image of {} is not in the labeled complement poset",
                show(u)
            ));
        }
    }

    let mut inverse_matched = 0;
    for s in &target {
        let back: Vec<Pair> = s
            .iter()
            .map(|(q, lab)| {
                Pair::new(
                    co.embed_x(&q.x.coeffs).add(&co.embed_v(&lab.b)),
                    co.embed_y(&q.y).add(&co.embed_rho_v(&lab.e)),
                )
            })
            .collect();
        if !back.iter().all(|q| bounds.pair_in_bound(q)) {
            t.out_of_bound += 1;
        } else if source.contains(&back) {
            inverse_matched += 1;
        } else {
            let shown: Vec<String> = s.iter().map(|(q, l)| format!("<{q}@{l}>")).collect();
            t.fail(format!(
                "preimage of ({}) is not in the source",
                shown.join(",")
            ));
        }
    }

    Ok(Equivalence1Report {
        rank: g,
        sub_rank: k,
        coeff_bound: bb,
        source_size: source.len(),
        target_size: target.len(),
        forward_matched,
        inverse_matched,
        out_of_bound: t.out_of_bound,
        injective: images.len() == source.len(),
        mismatches: t.mismatches.clone(),
        verdict: t.verdict(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkIdentificationReport {
    pub rank: usize,
    pub sub_rank: usize,
    pub coeff_bound: i64,
    /// Whether ((v_1, w_1), …, (v_k, w_k)) itself lies in the bounded L.
    pub frame_in_bound: bool,
    pub left_size: usize,
    pub right_size: usize,
    pub matched: usize,
    pub out_of_bound: usize,
    pub mismatches: Vec<String>,
    pub verdict: Verdict,
}

/// Compares L(X, Y)_{vw}, for vw = ((v_1, w_1), …, (v_k, w_k)) with the
/// w's rebased to be λ-dual to the v's, with L(W^⊥, V^⊥ ∩ Ŵ) embedded
/// entrywise.
pub fn link_identification_check(
    p: &StandardWallPairing,
    sub: &SubspacePair,
    bounds: &EnumerationBounds,
) -> Result<LinkIdentificationReport, Error> {
    let co = coords(p, sub)?;
    let k = sub.v.len();
    let bb = bounds.coeff_bound;
    let vw: Vec<Pair> = sub
        .v
        .iter()
        .zip(&co.complement().w_dual)
        .map(|(v, w)| Pair::new(v.clone(), w.clone()))
        .collect();
    let frame_in_bound = vw.iter().all(|q| bounds.pair_in_bound(q));
    let mut t = Tally::new();

    let l = build_l(p, bounds)?;
    let mut left: BTreeSet<Vec<Pair>> = BTreeSet::new();
    if frame_in_bound {
        for e in l.elements().filter(|e| e.len() > k) {
            let labs = l.labels(e);
            if labs[labs.len() - k..] == vw[..] {
                left.insert(labs[..labs.len() - k].to_vec());
            }
        }
    } else {
        t.out_of_bound += 1;
    }

    let comp_pairing = co.complement().pairing;
    let right_len = bounds.max_seq_len.saturating_sub(k);
    let right_poset = build_l(&comp_pairing, &bounds.with_seq_len(right_len))?;
    let mut right: BTreeSet<Vec<Pair>> = BTreeSet::new();
    let mut matched = 0;
    for e in right_poset.elements() {
        let img: Vec<Pair> = right_poset
            .labels(e)
            .iter()
            .map(|q| Pair::new(co.embed_x(&q.x.coeffs), co.embed_y(&q.y)))
            .collect();
        right.insert(img.clone());
        if !frame_in_bound || !img.iter().all(|q| bounds.pair_in_bound(q)) {
            t.out_of_bound += 1;
        } else if left.contains(&img) {
            matched += 1;
        } else {
            t.fail(format!("{} is missing from the link", show(&img)));
        }
    }
    for u in &left {
        if right.contains(u) {
            continue;
        }
        let mut inside = true;
        let mut in_complement = true;
        for q in u {
            let xs = co.split_x(&q.x);
            let ys = co.split_y(&q.y);
            in_complement &= xs.b.iter().all(|&c| c == 0)
                && ys.d.iter().all(|&c| c == 0)
                && ys.e.iter().all(|&c| c == 0);
            inside &= in_box(&xs.a, bb) && in_box(&ys.c_free, bb);
        }
        if in_complement && !inside {
            t.out_of_bound += 1;
        } else {
            t.fail(format!(
                "{} is in the link but not in the complement poset",
                show(u)
            ));
        }
    }

    Ok(LinkIdentificationReport {
        rank: p.rank,
        sub_rank: k,
        coeff_bound: bb,
        frame_in_bound,
        left_size: left.len(),
        right_size: right.len(),
        matched,
        out_of_bound: t.out_of_bound,
        mismatches: t.mismatches.clone(),
        verdict: t.verdict(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubPosetChainReport {
    pub rank: usize,
    pub coeff_bound: i64,
    pub m_size: usize,
    pub u_size: usize,
    pub l_size: usize,
    /// All-zero-y part of M, read as x-sequences, equals U.
    pub zero_part_is_u: bool,
    /// All-nonzero-y part of M equals L.
    pub nonzero_part_is_l: bool,
    pub verdict: Verdict,
}

/// U ⊂ M ⊃ L at one bound: both ends are recovered exactly as the parts
/// of M where every y vanishes, respectively where none does.
pub fn check_sub_poset_chain(
    p: &StandardWallPairing,
    bounds: &EnumerationBounds,
    reading: MReading,
) -> Result<SubPosetChainReport, Error> {
    let m = build_m(p, bounds, reading)?;
    let u = build_u(p.rank, bounds)?;
    let l = build_l(p, bounds)?;
    let mut zero: BTreeSet<Vec<XVector>> = BTreeSet::new();
    let mut nonzero: BTreeSet<Vec<Pair>> = BTreeSet::new();
    for e in m.elements() {
        let labs = m.labels(e);
        if labs.iter().all(|q| q.y.is_zero()) {
            zero.insert(labs.into_iter().map(|q| q.x).collect());
        } else if labs.iter().all(|q| !q.y.is_zero()) {
            nonzero.insert(labs);
        }
    }
    let u_set: BTreeSet<Vec<XVector>> = u.elements().map(|e| u.labels(e)).collect();
    let l_set: BTreeSet<Vec<Pair>> = l.elements().map(|e| l.labels(e)).collect();
    let zero_part_is_u = zero == u_set;
    let nonzero_part_is_l = nonzero == l_set;
    Ok(SubPosetChainReport {
        rank: p.rank,
        coeff_bound: bounds.coeff_bound,
        m_size: m.len(),
        u_size: u.len(),
        l_size: l.len(),
        zero_part_is_u,
        nonzero_part_is_l,
        verdict: if zero_part_is_u && nonzero_part_is_l {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationLinkReport {
    pub levels: usize,
    /// Elements of F_i \ F_{i−1} examined, over all i.
    pub new_elements: usize,
    /// For each such v, everything in F_i comparable to v already lies in
    /// F_{i−1}.
    pub links_in_previous: bool,
    /// The lower link of each such v has only zero y's.
    pub lower_links_zero: bool,
    /// h(z) ∈ L, h(z) ≤ z and h is monotone on F_0.
    pub retraction_ok: bool,
    /// h restricts to the identity on L.
    pub retraction_fixes_l: bool,
    pub verdict: Verdict,
}

/// Link and retraction checks on the filtration F_0 ⊂ F_1 ⊂ … of M.
pub fn check_filtration_links(
    p: &StandardWallPairing,
    m: &PairPoset,
    bounds: &EnumerationBounds,
) -> Result<FiltrationLinkReport, Error> {
    let levels = m.height();
    let ground = m.ground();
    let mut out = FiltrationLinkReport {
        levels,
        new_elements: 0,
        links_in_previous: true,
        lower_links_zero: true,
        retraction_ok: true,
        retraction_fixes_l: true,
        verdict: Verdict::Pass,
    };
    let mut prev = filtration(m, 0);
    for i in 1..=levels {
        let cur = filtration(m, i);
        for v in cur.elements().filter(|v| !prev.contains(v)) {
            out.new_elements += 1;
            let link_cur = cur.comparable_to(v);
            if !link_cur.elements().all(|w| prev.contains(w)) {
                out.links_in_previous = false;
            }
            if !cur
                .strictly_below(v)
                .elements()
                .all(|w| w.iter().all(|&a| ground[a as usize].y.is_zero()))
            {
                out.lower_links_zero = false;
            }
        }
        prev = cur;
    }

    let f0 = filtration(m, 0);
    let l = build_l(p, bounds)?;
    let l_set: BTreeSet<Vec<Pair>> = l.elements().map(|e| l.labels(e)).collect();
    let h_of: Vec<(Vec<u32>, Vec<u32>)> = f0
        .elements()
        .map(|z| {
            let labs = m.labels(z);
            let h = retraction_h(&labs)?;
            let idx: Vec<u32> = h
                .iter()
                .map(|q| m.index_of(q).expect("ground label"))
                .collect();
            Ok((z.clone(), idx))
        })
        .collect::<Result<_, super::BuilderError>>()?;
    for (z, h) in &h_of {
        if !l_set.contains(&m.labels(h)) || !is_sublist(h, z) {
            out.retraction_ok = false;
        }
        if l_set.contains(&m.labels(z)) && h != z {
            out.retraction_fixes_l = false;
        }
    }
    for (z, hz) in &h_of {
        for (w, hw) in &h_of {
            if z.len() < w.len() && is_sublist(z, w) && !is_sublist(hz, hw) {
                out.retraction_ok = false;
            }
        }
    }
    if !l_set
        .iter()
        .all(|u| u.iter().all(|q| m.index_of(q).is_some()))
    {
        out.retraction_fixes_l = false;
    }
    let ok = out.links_in_previous
        && out.lower_links_zero
        && out.retraction_ok
        && out.retraction_fixes_l;
    out.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard_sub(g: usize) -> SubspacePair {
        SubspacePair {
            v: vec![XVector::basis(g, 0)],
            w: vec![YVector::y(g, 0)],
        }
    }

    #[test]
    fn equivalence_rank_two_by_hand() {
        let p = StandardWallPairing::new(2);
        let b = EnumerationBounds::defaults(2, 1).unwrap();
        let r = equivalence1_map(&p, &standard_sub(2), &b).unwrap();
        assert_eq!((r.source_size, r.target_size), (12, 12), "{r:?}");
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert!(r.injective);
    }

    #[test]
    fn link_identification_rank_two() {
        let p = StandardWallPairing::new(2);
        let b = EnumerationBounds::defaults(2, 1).unwrap();
        let r = link_identification_check(&p, &standard_sub(2), &b).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert!(r.matched > 0);
    }

    #[test]
    fn sub_poset_chain_rank_two() {
        let p = StandardWallPairing::new(2);
        let b = EnumerationBounds::defaults(2, 1).unwrap();
        let r = check_sub_poset_chain(&p, &b, MReading::DualToOwn).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    }

    #[test]
    fn filtration_rank_two() {
        let p = StandardWallPairing::new(2);
        let b = EnumerationBounds::defaults(2, 1).unwrap();
        let m = build_m(&p, &b, MReading::DualToOwn).unwrap();
        let r = check_filtration_links(&p, &m, &b).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert!(r.new_elements > 0);
    }

    #[test]
    fn label_display() {
        assert_eq!(
            VRhoLabel {
                b: vec![-1, 0],
                e: vec![1, 0]
            }
            .to_string(),
            "(-1,0|1,0)"
        );
    }
}
