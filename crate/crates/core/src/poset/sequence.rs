use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::complex::{join, SimplicialComplex};
use super::PosetError;

/// Finite set of nonempty sequences of distinct ground elements, ordered
/// by "is an ordered sub-list of".
///
/// Sequences are stored as index lists into `ground`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequencePoset<V> {
    ground: Vec<V>,
    elements: BTreeSet<Vec<u32>>,
}

/// Ground element of Z^nF: an original label or a fresh z_i.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tagged<V> {
    Base(V),
    Fresh(u32),
}

/// Ground element of F⟨S⟩.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labeled<V, S>(pub V, pub S);

impl<V: fmt::Display> fmt::Display for Tagged<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tagged::Base(v) => write!(f, "{v}"),
            Tagged::Fresh(i) => write!(f, "z{i}'"),
        }
    }
}

impl<V: fmt::Display, S: fmt::Display> fmt::Display for Labeled<V, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}@{}>", self.0, self.1)
    }
}

/// The strictly-lower and strictly-upper parts of a link.
#[derive(Clone, Debug)]
pub struct Link<V> {
    pub lower: SequencePoset<V>,
    pub upper: SequencePoset<V>,
}

/// Serialized form: ground labels and index sequences.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetData {
    pub ground: Vec<String>,
    pub elements: Vec<Vec<u32>>,
}

/// Whether `u` is an ordered sub-list of `w` (not necessarily contiguous).
pub fn is_sublist(u: &[u32], w: &[u32]) -> bool {
    let mut it = w.iter();
    u.iter().all(|a| it.any(|b| b == a))
}

fn distinct(seq: &[u32]) -> bool {
    let mut s = seq.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

/// All permutations of `seq`, in lexicographic order of positions.
pub(crate) fn permutations(seq: &[u32]) -> Vec<Vec<u32>> {
    if seq.len() <= 1 {
        return vec![seq.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..seq.len() {
        let mut rest = seq.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Proper nonempty ordered sub-lists of `w`.
fn proper_sublists(w: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    let n = w.len();
    let full = (1u64 << n) - 1;
    (1..full).map(move |mask| {
        (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| w[i])
            .collect()
    })
}

impl<V: Clone + Ord + fmt::Display> SequencePoset<V> {
    /// Validates that every sequence is nonempty, uses known indices and
    /// repeats nothing, and that ground labels are distinct.
    pub fn new<I>(ground: Vec<V>, elements: I) -> Result<Self, PosetError>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        if ground.iter().collect::<BTreeSet<_>>().len() != ground.len() {
            return Err(PosetError::Input("duplicate ground label".into()));
        }
        let n = ground.len() as u32;
        let mut set = BTreeSet::new();
        for e in elements {
            if e.is_empty() {
                return Err(PosetError::Input("sequences must be nonempty".into()));
            }
            if e.iter().any(|&i| i >= n) {
                return Err(PosetError::Input(format!(
                    "sequence {e:?} uses an unknown label"
                )));
            }
            if !distinct(&e) {
                return Err(PosetError::Input(format!("sequence {e:?} repeats a label")));
            }
            set.insert(e);
        }
        Ok(SequencePoset {
            ground,
            elements: set,
        })
    }

    pub(crate) fn from_parts_unchecked(ground: Vec<V>, elements: BTreeSet<Vec<u32>>) -> Self {
        SequencePoset { ground, elements }
    }

    /// Sequences given by their labels.
    pub fn from_labels<I>(ground: Vec<V>, seqs: I) -> Result<Self, PosetError>
    where
        I: IntoIterator<Item = Vec<V>>,
    {
        let idx: BTreeMap<&V, u32> = ground
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i as u32))
            .collect();
        let mut out = Vec::new();
        for s in seqs {
            let e: Option<Vec<u32>> = s.iter().map(|v| idx.get(v).copied()).collect();
            out.push(e.ok_or_else(|| {
                PosetError::Input("sequence uses a label outside the ground set".into())
            })?);
        }
        Self::new(ground.clone(), out)
    }

    /// Smallest poset containing `gens` that satisfies the chain condition.
    pub fn chain_closure<I>(ground: Vec<V>, gens: I) -> Result<Self, PosetError>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let base = Self::new(ground, gens)?;
        let mut set = BTreeSet::new();
        for g in &base.elements {
            set.extend(permutations(g));
            for s in proper_sublists(g) {
                set.extend(permutations(&s));
            }
        }
        Ok(SequencePoset {
            ground: base.ground,
            elements: set,
        })
    }

    /// Every sequence of distinct labels of length 1..=max_len.
    pub fn full(ground: Vec<V>, max_len: usize) -> Result<Self, PosetError> {
        let n = ground.len() as u32;
        let mut layer: Vec<Vec<u32>> = vec![Vec::new()];
        let mut set = BTreeSet::new();
        for _ in 0..max_len.min(n as usize) {
            let mut next = Vec::new();
            for s in &layer {
                for v in 0..n {
                    if !s.contains(&v) {
                        let mut t = s.clone();
                        t.push(v);
                        next.push(t);
                    }
                }
            }
            set.extend(next.iter().cloned());
            layer = next;
        }
        Self::new(ground, set)
    }

    pub fn ground(&self) -> &[V] {
        &self.ground
    }

    pub fn elements(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.elements.iter()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, seq: &[u32]) -> bool {
        self.elements.contains(seq)
    }

    /// Length of the longest element; 0 when empty.
    pub fn height(&self) -> usize {
        self.elements.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn labels(&self, seq: &[u32]) -> Vec<V> {
        seq.iter()
            .map(|&i| self.ground[i as usize].clone())
            .collect()
    }

    pub fn index_of(&self, label: &V) -> Option<u32> {
        self.ground
            .iter()
            .position(|v| v == label)
            .map(|i| i as u32)
    }

    /// Display form of one element, e.g. `(a,b)`.
    pub fn display_seq(&self, seq: &[u32]) -> String {
        let parts: Vec<String> = seq
            .iter()
            .map(|&i| self.ground[i as usize].to_string())
            .collect();
        format!("({})", parts.join(","))
    }

    /// Closure under sub-lists and permutations. Closure under deleting one
    /// entry and swapping two adjacent entries generates both, so only
    /// those are checked.
    pub fn satisfies_chain_condition(&self) -> bool {
        self.elements.iter().all(|w| {
            let n = w.len();
            let deletions_ok = n == 1
                || (0..n).all(|i| {
                    let mut s = w.clone();
                    s.remove(i);
                    self.elements.contains(&s)
                });
            deletions_ok
                && (0..n.saturating_sub(1)).all(|i| {
                    let mut s = w.clone();
                    s.swap(i, i + 1);
                    self.elements.contains(&s)
                })
        })
    }

    /// Sub-poset of elements satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&[u32]) -> bool) -> Self {
        SequencePoset {
            ground: self.ground.clone(),
            elements: self.elements.iter().filter(|e| keep(e)).cloned().collect(),
        }
    }

    /// F_v = { w ∈ F : w·v ∈ F }.
    pub fn below(&self, v: &[u32]) -> Result<Self, PosetError> {
        if v.is_empty() {
            return Err(PosetError::Input("F_v needs a nonempty v".into()));
        }
        Ok(self.filter(|w| {
            let mut wv = w.to_vec();
            wv.extend_from_slice(v);
            self.elements.contains(&wv)
        }))
    }

    pub fn strictly_below(&self, v: &[u32]) -> Self {
        self.filter(|w| w.len() < v.len() && is_sublist(w, v))
    }

    pub fn strictly_above(&self, v: &[u32]) -> Self {
        self.filter(|w| w.len() > v.len() && is_sublist(v, w))
    }

    /// link_F(v) = F_{<v} ⋆ F_{>v}, for v ∈ F.
    pub fn link(&self, v: &[u32]) -> Result<Link<V>, PosetError> {
        if !self.contains(v) {
            return Err(PosetError::NotMember(self.display_seq(v)));
        }
        Ok(self.link_of(v))
    }

    /// Same as [`link`](Self::link) but for any sequence, member or not.
    pub fn link_of(&self, v: &[u32]) -> Link<V> {
        Link {
            lower: self.strictly_below(v),
            upper: self.strictly_above(v),
        }
    }

    /// Elements comparable to `v` and distinct from it, as one poset.
    pub fn comparable_to(&self, v: &[u32]) -> Self {
        self.filter(|w| w != v && (is_sublist(w, v) || is_sublist(v, w)))
    }

    /// Z^nF: sequences over ground ⊔ {z_1..z_n} containing (z_1..z_n) as an
    /// ordered sub-list, whose complement is in F.
    pub fn adjoin(&self, n: u32) -> SequencePoset<Tagged<V>> {
        let base = self.ground.len() as u32;
        let mut ground: Vec<Tagged<V>> = self.ground.iter().cloned().map(Tagged::Base).collect();
        ground.extend((1..=n).map(Tagged::Fresh));
        let zs: Vec<u32> = (base..base + n).collect();
        let mut set = BTreeSet::new();
        for w in &self.elements {
            interleavings(w, &zs, &mut Vec::new(), &mut set);
        }
        SequencePoset {
            ground,
            elements: set,
        }
    }

    /// F⟨S⟩: every labeling of every element by values in `s`.
    pub fn label<S>(&self, s: &[S]) -> Result<SequencePoset<Labeled<V, S>>, PosetError>
    where
        S: Clone + Ord + fmt::Display,
    {
        if s.is_empty() {
            return Err(PosetError::Input("label set must be nonempty".into()));
        }
        if s.iter().collect::<BTreeSet<_>>().len() != s.len() {
            return Err(PosetError::Input("label set has duplicates".into()));
        }
        let m = s.len() as u32;
        let ground: Vec<Labeled<V, S>> = self
            .ground
            .iter()
            .flat_map(|v| s.iter().map(move |t| Labeled(v.clone(), t.clone())))
            .collect();
        let mut set = BTreeSet::new();
        for w in &self.elements {
            let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
            for &a in w {
                stack = stack
                    .into_iter()
                    .flat_map(|p| {
                        (0..m).map(move |t| {
                            let mut q = p.clone();
                            q.push(a * m + t);
                            q
                        })
                    })
                    .collect();
            }
            set.extend(stack);
        }
        Ok(SequencePoset {
            ground,
            elements: set,
        })
    }

    /// Index of each element in the canonical vertex order of the order
    /// complex.
    pub fn element_index(&self) -> HashMap<Vec<u32>, u32> {
        self.elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect()
    }

    /// Chains x_0 < … < x_p with p ≤ `max_dim` (all chains when `None`).
    /// Vertex i is the i-th element in sequence order, labelled by its
    /// display form.
    pub fn order_complex(&self, max_dim: Option<usize>) -> SimplicialComplex {
        let index = self.element_index();
        let elems: Vec<&Vec<u32>> = self.elements.iter().collect();
        // lower[i]: indices of elements strictly below element i.
        let lower: Vec<Vec<u32>> = elems
            .iter()
            .map(|w| {
                let mut l: Vec<u32> = proper_sublists(w)
                    .filter_map(|s| index.get(&s).copied())
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        let cap = max_dim.unwrap_or(usize::MAX);
        let mut faces: Vec<Vec<Vec<u32>>> = Vec::new();
        let mut chain = Vec::new();
        for top in 0..elems.len() as u32 {
            chain.push(top);
            descend(&lower, &mut chain, cap, &mut faces);
            chain.pop();
        }
        for fs in &mut faces {
            fs.sort();
        }
        let vertices = unique_labels(elems.iter().map(|e| self.display_seq(e)).collect());
        SimplicialComplex::from_sorted_unchecked(vertices, faces)
    }

    pub fn to_data(&self) -> PosetData {
        PosetData {
            ground: self.ground.iter().map(ToString::to_string).collect(),
            elements: self.elements.iter().cloned().collect(),
        }
    }
}

impl SequencePoset<String> {
    pub fn from_data(data: PosetData) -> Result<Self, PosetError> {
        Self::new(data.ground, data.elements)
    }
}

impl<V: Clone + Ord + fmt::Display> SequencePoset<Tagged<V>> {
    /// Elements free of fresh labels, as a poset over the original ground.
    pub fn restrict_base(&self) -> SequencePoset<V> {
        let ground: Vec<V> = self
            .ground
            .iter()
            .filter_map(|t| match t {
                Tagged::Base(v) => Some(v.clone()),
                Tagged::Fresh(_) => None,
            })
            .collect();
        let nb = ground.len() as u32;
        let elements = self
            .elements
            .iter()
            .filter(|e| e.iter().all(|&i| i < nb))
            .cloned()
            .collect();
        SequencePoset { ground, elements }
    }
}

impl<V: Clone + Ord + fmt::Display> Link<V> {
    /// |F_{<v}| ⋆ |F_{>v}| as order complexes.
    pub fn order_complex(&self, max_dim: Option<usize>) -> SimplicialComplex {
        join(
            &self.lower.order_complex(max_dim),
            &self.upper.order_complex(max_dim),
            max_dim,
        )
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty() && self.upper.is_empty()
    }
}

fn interleavings(w: &[u32], zs: &[u32], prefix: &mut Vec<u32>, out: &mut BTreeSet<Vec<u32>>) {
    match (w.split_first(), zs.split_first()) {
        (None, None) => {
            out.insert(prefix.clone());
        }
        (Some((a, wr)), None) => {
            prefix.push(*a);
            interleavings(wr, zs, prefix, out);
            prefix.pop();
        }
        (None, Some((z, zr))) => {
            prefix.push(*z);
            interleavings(w, zr, prefix, out);
            prefix.pop();
        }
        (Some((a, wr)), Some((z, zr))) => {
            prefix.push(*a);
            interleavings(wr, zs, prefix, out);
            prefix.pop();
            prefix.push(*z);
            interleavings(w, zr, prefix, out);
            prefix.pop();
        }
    }
}

fn descend(lower: &[Vec<u32>], chain: &mut Vec<u32>, cap: usize, faces: &mut Vec<Vec<Vec<u32>>>) {
    let d = chain.len() - 1;
    if faces.len() <= d {
        faces.resize_with(d + 1, Vec::new);
    }
    let mut f = chain.clone();
    f.sort_unstable();
    faces[d].push(f);
    if d == cap {
        return;
    }
    let last = *chain.last().expect("nonempty chain");
    for &b in &lower[last as usize] {
        chain.push(b);
        descend(lower, chain, cap, faces);
        chain.pop();
    }
}

/// Makes labels distinct by suffixing repeats with `#k`, in order.
pub(crate) fn unique_labels(labels: Vec<String>) -> Vec<String> {
    let mut seen: HashMap<String, usize> = HashMap::new();
    let taken: BTreeSet<String> = labels.iter().cloned().collect();
    labels
        .into_iter()
        .map(|l| {
            let c = seen.entry(l.clone()).or_insert(0);
            *c += 1;
            if *c == 1 {
                return l;
            }
            let mut k = *c;
            loop {
                let cand = format!("{l}#{k}");
                if !taken.contains(&cand) {
                    return cand;
                }
                k += 1;
            }
        })
        .collect()
}
