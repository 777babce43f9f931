use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::Serialize;

use super::kpi::build_kpi;
use super::unimodular::build_unimodular_complex;
use super::EnumerationBounds;
use crate::homology::{connectivity_probe, ComplexFamily, Verdict};
use crate::poset::SimplicialComplex;
use crate::wall::StandardWallPairing;
use crate::Error;

/// K^π of the standard pairing of rank g, as a family in the bound.
pub struct KpiFamily {
    pub g: usize,
}

impl ComplexFamily for KpiFamily {
    fn name(&self) -> String {
        format!("K^pi(W_{})", self.g)
    }
    fn complex_at(&self, bounds: &EnumerationBounds) -> Result<SimplicialComplex, Error> {
        Ok(build_kpi(&StandardWallPairing::new(self.g), bounds)?.1)
    }
}

/// The unimodular complex of ℤ^g, as a family in the bound.
pub struct UnimodularFamily {
    pub g: usize,
}

impl ComplexFamily for UnimodularFamily {
    fn name(&self) -> String {
        format!("U(Z^{})", self.g)
    }
    fn complex_at(&self, bounds: &EnumerationBounds) -> Result<SimplicialComplex, Error> {
        Ok(build_unimodular_complex(self.g, bounds)?.1)
    }
}

/// Shared K^π builds, keyed by (bound, dimension).
struct KpiCache {
    g: usize,
    built: Mutex<BTreeMap<(i64, usize), SimplicialComplex>>,
}

impl KpiCache {
    fn at(&self, bounds: &EnumerationBounds) -> Result<SimplicialComplex, Error> {
        let key = (bounds.coeff_bound, bounds.max_dim);
        if let Some(k) = self.built.lock().expect("cache lock").get(&key) {
            return Ok(k.clone());
        }
        let k = build_kpi(&StandardWallPairing::new(self.g), bounds)?.1;
        self.built
            .lock()
            .expect("cache lock")
            .insert(key, k.clone());
        Ok(k)
    }
}

/// The link of one vertex of K^π, identified by label across bounds.
struct VertexLink<'a> {
    cache: &'a KpiCache,
    label: String,
}

impl ComplexFamily for VertexLink<'_> {
    fn name(&self) -> String {
        format!("lk({}) in K^pi(W_{})", self.label, self.cache.g)
    }
    fn complex_at(&self, bounds: &EnumerationBounds) -> Result<SimplicialComplex, Error> {
        let k = self.cache.at(&bounds.with_dim(bounds.max_dim + 1))?;
        let v = k.vertex_index(&self.label).ok_or_else(|| {
            Error::Internal(format!(
                "vertex {} missing at bound {}",
                self.label, bounds.coeff_bound
            ))
        })?;
        Ok(k.link(v as u32))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeakCmReport {
    pub rank: usize,
    /// Connectivity demanded of every vertex link: ⌊(g − 5)/2⌋.
    pub predicted_connectivity: i64,
    pub coeff_bound: i64,
    pub budget: usize,
    pub vertices: usize,
    pub passed: usize,
    pub inconclusive: usize,
    pub failed: usize,
    /// Vertices whose link was empty at the start bound but not after
    /// expanding it.
    pub resolved_by_expansion: usize,
    /// Up to eight labels of vertices without a PASS.
    pub open_vertices: Vec<String>,
    pub verdict: Verdict,
}

/// Probes every vertex link of K^π(W_g) at the start bound for
/// ⌊(g − 5)/2⌋-connectivity, letting the bound grow by up to `budget`.
pub fn weak_cm_vertex_links(
    g: usize,
    bounds: &EnumerationBounds,
    budget: usize,
) -> Result<WeakCmReport, Error> {
    let c = (g as i64 - 5).div_euclid(2);
    let cache = KpiCache {
        g,
        built: Mutex::new(BTreeMap::new()),
    };
    let base = cache.at(&bounds.with_dim(c.max(0) as usize + 2))?;
    let mut out = WeakCmReport {
        rank: g,
        predicted_connectivity: c,
        coeff_bound: bounds.coeff_bound,
        budget,
        vertices: base.num_vertices(),
        passed: 0,
        inconclusive: 0,
        failed: 0,
        resolved_by_expansion: 0,
        open_vertices: Vec::new(),
        verdict: Verdict::Pass,
    };
    for label in base.vertices() {
        let fam = VertexLink {
            cache: &cache,
            label: label.clone(),
        };
        let r = connectivity_probe(&fam, c, bounds, budget)?;
        if r.base_bound > r.start_bound {
            out.resolved_by_expansion += 1;
        }
        match r.verdict {
            Verdict::Pass => out.passed += 1,
            Verdict::Inconclusive => out.inconclusive += 1,
            Verdict::Fail => out.failed += 1,
        }
        if r.verdict != Verdict::Pass && out.open_vertices.len() < 8 {
            out.open_vertices.push(label.clone());
        }
        out.verdict = out.verdict.max(r.verdict);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_are_nested_by_label() {
        let b = EnumerationBounds::new(1, 2, 1).unwrap();
        let small = KpiFamily { g: 2 }.complex_at(&b).unwrap();
        let large = KpiFamily { g: 2 }.complex_at(&b.with_bound(2)).unwrap();
        for e in small.faces(1) {
            let i = large
                .vertex_index(&small.vertices()[e[0] as usize])
                .unwrap() as u32;
            let j = large
                .vertex_index(&small.vertices()[e[1] as usize])
                .unwrap() as u32;
            assert!(large.contains_face(&[i.min(j), i.max(j)]));
        }
    }

    #[test]
    fn rank_three_vertex_links_nonempty() {
        let b = EnumerationBounds::new(1, 3, 2).unwrap();
        let r = weak_cm_vertex_links(3, &b, 1).unwrap();
        assert_eq!(r.predicted_connectivity, -1);
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    }
}
