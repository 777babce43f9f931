use std::collections::BTreeMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::{components, cycle_basis, BoundaryOracle, Chain};
use crate::builders::EnumerationBounds;
use crate::poset::SimplicialComplex;
use crate::Error;

/// Three-valued outcome. The derived order is the dominance order:
/// FAIL beats INCONCLUSIVE beats PASS.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Fail => "FAIL",
        })
    }
}

/// A complex depending on a coefficient bound, nested as the bound grows.
/// Vertex labels must be stable across bounds; they identify vertices
/// under inclusion.
pub trait ComplexFamily: Sync {
    fn name(&self) -> String;
    fn complex_at(&self, bounds: &EnumerationBounds) -> Result<SimplicialComplex, Error>;
    /// A family that ignores the bound: obstructions found in it are final.
    fn is_bound_independent(&self) -> bool {
        false
    }
}

/// One complex viewed as a constant family.
pub struct FixedComplex {
    pub name: String,
    pub complex: SimplicialComplex,
}

impl ComplexFamily for FixedComplex {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn complex_at(&self, _: &EnumerationBounds) -> Result<SimplicialComplex, Error> {
        Ok(self.complex.clone())
    }
    fn is_bound_independent(&self) -> bool {
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeOutcome {
    /// −1 stands for nonemptiness.
    pub degree: i64,
    /// Nonzero classes found at the base bound.
    pub classes: usize,
    /// How many of them died in some larger bound within the budget.
    pub resolved: usize,
    /// Largest bound needed to kill the resolved classes.
    pub resolved_at: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub family: String,
    pub target_degree: i64,
    pub start_bound: i64,
    /// Bound the classes were collected at (later than the start when the
    /// start complex was empty).
    pub base_bound: i64,
    pub budget: usize,
    pub bounds_built: Vec<i64>,
    pub base_vertices: usize,
    pub base_components: usize,
    pub degrees: Vec<DegreeOutcome>,
    pub verdict: Verdict,
}

impl ProbeReport {
    /// What a PASS certifies, in words.
    pub fn claim(&self) -> String {
        match self.target_degree {
            d if d < 0 => "nonempty".into(),
            0 => "path-connected".into(),
            d => format!("path-connected and homologically {d}-connected"),
        }
    }
}

struct Cache<'a, F: ComplexFamily + ?Sized> {
    family: &'a F,
    base: EnumerationBounds,
    built: BTreeMap<i64, SimplicialComplex>,
}

impl<F: ComplexFamily + ?Sized> Cache<'_, F> {
    fn at(&mut self, b: i64) -> Result<&SimplicialComplex, Error> {
        if !self.built.contains_key(&b) {
            let k = self.family.complex_at(&self.base.with_bound(b))?;
            self.built.insert(b, k);
        }
        Ok(&self.built[&b])
    }
}

/// Expanding-bound connectivity probe.
///
/// Every nonzero reduced class in degrees −1..=target_degree found at the
/// base bound must die after inclusion into the complex at some larger
/// bound, at most `budget` steps up. Degree −1 asks for a nonempty
/// complex, degree 0 is decided by union-find, higher degrees push a cycle
/// basis forward by vertex label and test it against the larger boundary
/// group. Surviving classes give FAIL for bound-independent families and
/// INCONCLUSIVE otherwise.
pub fn connectivity_probe<F: ComplexFamily + ?Sized>(
    family: &F,
    target_degree: i64,
    bounds: &EnumerationBounds,
    budget: usize,
) -> Result<ProbeReport, Error> {
    let start = bounds.coeff_bound;
    let top = target_degree.max(0) as usize + 1;
    let base = EnumerationBounds {
        max_dim: top,
        ..bounds.clone()
    };
    let mut cache = Cache {
        family,
        base,
        built: BTreeMap::new(),
    };
    let mut degrees = Vec::new();
    let mut report = ProbeReport {
        family: family.name(),
        target_degree,
        start_bound: start,
        base_bound: start,
        budget,
        bounds_built: Vec::new(),
        base_vertices: 0,
        base_components: 0,
        degrees: Vec::new(),
        verdict: Verdict::Pass,
    };
    if target_degree < -1 {
        return Ok(report);
    }

    // Degree −1: move the base up until the complex is nonempty.
    let mut b0 = start;
    let empty = cache.at(start)?.is_empty();
    let mut outcome = DegreeOutcome {
        degree: -1,
        classes: usize::from(empty),
        resolved: 0,
        resolved_at: None,
    };
    if empty {
        for j in 1..=budget as i64 {
            if !cache.at(start + j)?.is_empty() {
                b0 = start + j;
                outcome.resolved = 1;
                outcome.resolved_at = Some(b0);
                break;
            }
        }
    }
    let unresolved_empty = outcome.resolved < outcome.classes;
    degrees.push(outcome);
    if unresolved_empty {
        return Ok(finish(
            report,
            degrees,
            &cache,
            family.is_bound_independent(),
        ));
    }
    let remaining = budget - (b0 - start) as usize;
    report.base_bound = b0;

    let base_k = cache.at(b0)?.clone();
    report.base_vertices = base_k.num_vertices();
    let comp = components(&base_k);
    let reps: Vec<usize> = comp
        .iter()
        .enumerate()
        .filter(|(v, r)| v == *r)
        .map(|(v, _)| v)
        .collect();
    report.base_components = reps.len();

    for d in 0..=target_degree {
        let mut outcome = DegreeOutcome {
            degree: d,
            classes: 0,
            resolved: 0,
            resolved_at: None,
        };
        if d == 0 {
            let pairs: Vec<(String, String)> = reps
                .iter()
                .skip(1)
                .map(|&r| {
                    (
                        base_k.vertices()[reps[0]].clone(),
                        base_k.vertices()[r].clone(),
                    )
                })
                .collect();
            outcome.classes = pairs.len();
            let mut alive = pairs;
            for j in 1..=remaining as i64 {
                if alive.is_empty() {
                    break;
                }
                let k = cache.at(b0 + j)?;
                let mut uf = UnionFind::<usize>::new(k.num_vertices());
                for e in k.faces(1) {
                    uf.union(e[0] as usize, e[1] as usize);
                }
                let before = alive.len();
                let mut keep = Vec::new();
                for (a, b) in alive {
                    let (ia, ib) = (lookup(k, &a)?, lookup(k, &b)?);
                    if !uf.equiv(ia, ib) {
                        keep.push((a, b));
                    }
                }
                if keep.len() < before {
                    outcome.resolved_at = Some(b0 + j);
                }
                outcome.resolved += before - keep.len();
                alive = keep;
            }
        } else {
            let du = d as usize;
            let here = BoundaryOracle::new(&base_k, du).map_err(Error::from)?;
            let mut alive: Vec<Chain> = Vec::new();
            for c in cycle_basis(&base_k, du)? {
                if !here.contains(&c.to_vector(&base_k)?)? {
                    alive.push(c);
                }
            }
            outcome.classes = alive.len();
            let base_labels: Vec<String> = base_k.vertices().to_vec();
            for j in 1..=remaining as i64 {
                if alive.is_empty() {
                    break;
                }
                let k = cache.at(b0 + j)?.clone();
                let oracle = BoundaryOracle::new(&k, du)?;
                let before = alive.len();
                let mut keep = Vec::new();
                for c in alive {
                    let moved =
                        c.relabel(|v| k.vertex_index(&base_labels[v as usize]).map(|i| i as u32))?;
                    if !oracle.contains(&moved.to_vector(&k)?)? {
                        keep.push(c);
                    }
                }
                if keep.len() < before {
                    outcome.resolved_at = Some(b0 + j);
                }
                outcome.resolved += before - keep.len();
                alive = keep;
            }
        }
        degrees.push(outcome);
    }
    Ok(finish(
        report,
        degrees,
        &cache,
        family.is_bound_independent(),
    ))
}

fn lookup(k: &SimplicialComplex, label: &str) -> Result<usize, Error> {
    k.vertex_index(label)
        .ok_or_else(|| Error::Internal(format!("vertex {label} vanished at a larger bound")))
}

fn finish<F: ComplexFamily + ?Sized>(
    mut report: ProbeReport,
    degrees: Vec<DegreeOutcome>,
    cache: &Cache<'_, F>,
    fixed: bool,
) -> ProbeReport {
    let open = degrees.iter().any(|d| d.resolved < d.classes);
    report.verdict = match (open, fixed) {
        (false, _) => Verdict::Pass,
        (true, true) => Verdict::Fail,
        (true, false) => Verdict::Inconclusive,
    };
    report.degrees = degrees;
    report.bounds_built = cache.built.keys().copied().collect();
    report
}
