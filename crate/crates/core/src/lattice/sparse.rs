//! Sparse integer matrices and invariant factors by unit-pivot elimination.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{normal_form, Int, IntMatrix, LatticeError};

/// Row-compressed sparse integer matrix. Each row holds `(column, value)`
/// pairs sorted by column with no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<(u32, Int)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: vec![Vec::new(); rows],
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Int)>,
    ) -> Result<Self, LatticeError> {
        let mut acc: Vec<HashMap<u32, Int>> = vec![HashMap::new(); rows];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(LatticeError::Dimension(format!(
                    "entry ({i},{j}) outside {rows}x{cols}"
                )));
            }
            let e = acc[i].entry(j as u32).or_insert(Int::ZERO);
            *e = &*e + &v;
        }
        let entries = acc
            .into_iter()
            .map(|row| {
                let mut r: Vec<(u32, Int)> =
                    row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                r.sort_by_key(|(c, _)| *c);
                r
            })
            .collect();
        Ok(SparseIntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let entries = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j as u32, v.clone()))
                    .collect()
            })
            .collect();
        SparseIntMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn row_entries(&self, i: usize) -> &[(u32, Int)] {
        &self.entries[i]
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j as usize, v.clone());
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Int]) -> Result<Vec<Int>, LatticeError> {
        if v.len() != self.cols {
            return Err(LatticeError::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(j, _)| !v[*j as usize].is_zero())
                    .map(|(j, a)| a * &v[*j as usize])
                    .sum()
            })
            .collect())
    }

    /// Sparse product `self * other`.
    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix, LatticeError> {
        if self.cols != other.rows {
            return Err(LatticeError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut triplets = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            let mut acc: HashMap<u32, Int> = HashMap::new();
            for (k, a) in row {
                for (j, b) in &other.entries[*k as usize] {
                    let e = acc.entry(*j).or_insert(Int::ZERO);
                    *e = &*e + &(a * b);
                }
            }
            triplets.extend(acc.into_iter().map(|(j, v)| (i, j as usize, v)));
        }
        SparseIntMatrix::from_triplets(self.rows, other.cols, triplets)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }

    /// Nonzero invariant factors.
    ///
    /// Unit pivots are eliminated sparsely first (Markowitz-style: shortest
    /// row, then the least populated column within it). Each such step
    /// contributes a factor 1 and shrinks the matrix by one row and column.
    /// The remaining block, which has no unit entries, goes through the
    /// dense Smith reduction.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let mut rows: Vec<Vec<(u32, Int)>> = self.entries.clone();
        let mut col_rows: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); self.cols];
        for (i, row) in rows.iter().enumerate() {
            for (j, _) in row {
                col_rows[*j as usize].insert(i as u32);
            }
        }
        let mut alive: BTreeSet<(usize, u32)> = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .map(|(i, r)| (r.len(), i as u32))
            .collect();
        let mut unit_count = 0usize;
        let mut stalled: BTreeSet<u32> = BTreeSet::new();

        loop {
            // Shortest live row holding a unit entry.
            let mut choice = None;
            let mut no_unit = Vec::new();
            for &(_, i) in alive.iter() {
                if stalled.contains(&i) {
                    continue;
                }
                let row = &rows[i as usize];
                let best = row
                    .iter()
                    .filter(|(_, v)| v.is_unit())
                    .min_by_key(|(j, _)| (col_rows[*j as usize].len(), *j));
                if let Some((j, v)) = best {
                    choice = Some((i, *j, v.clone()));
                    break;
                }
                no_unit.push(i);
            }
            // Rows without a unit entry stay skipped until modified.
            stalled.extend(no_unit);
            let Some((p, c, pv)) = choice else { break };
            unit_count += 1;
            let pivot_row = std::mem::take(&mut rows[p as usize]);
            alive.remove(&(pivot_row.len(), p));
            for (j, _) in &pivot_row {
                col_rows[*j as usize].remove(&p);
            }
            let targets: Vec<u32> = col_rows[c as usize].iter().copied().collect();
            for r in targets {
                let row = std::mem::take(&mut rows[r as usize]);
                alive.remove(&(row.len(), r));
                let a = row
                    .iter()
                    .find(|(j, _)| *j == c)
                    .map(|(_, v)| v.clone())
                    .unwrap_or(Int::ZERO);
                // row -= (a / pv) * pivot_row, pv = ±1 so a / pv = a * pv.
                let k = &a * &pv;
                let merged = axpy_sparse(&row, &pivot_row, &k);
                for (j, _) in &row {
                    col_rows[*j as usize].remove(&r);
                }
                for (j, _) in &merged {
                    col_rows[*j as usize].insert(r);
                }
                if !merged.is_empty() {
                    alive.insert((merged.len(), r));
                }
                stalled.remove(&r);
                rows[r as usize] = merged;
            }
        }

        let mut factors = vec![Int::ONE; unit_count];
        let rest: Vec<u32> = alive.iter().map(|&(_, i)| i).collect();
        if !rest.is_empty() {
            let mut cols: Vec<u32> = rest
                .iter()
                .flat_map(|&i| rows[i as usize].iter().map(|(j, _)| *j))
                .collect();
            cols.sort_unstable();
            cols.dedup();
            let col_index: HashMap<u32, usize> =
                cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
            let mut dense = IntMatrix::zeros(rest.len(), cols.len());
            for (ri, &i) in rest.iter().enumerate() {
                for (j, v) in &rows[i as usize] {
                    dense.set(ri, col_index[j], v.clone());
                }
            }
            factors.extend(normal_form::invariant_factors(&dense));
        }
        factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// `x - k * y` for sorted sparse rows.
fn axpy_sparse(x: &[(u32, Int)], y: &[(u32, Int)], k: &Int) -> Vec<(u32, Int)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut a, mut b) = (0, 0);
    while a < x.len() || b < y.len() {
        let ja = x.get(a).map(|e| e.0);
        let jb = y.get(b).map(|e| e.0);
        match (ja, jb) {
            (Some(p), Some(q)) if p == q => {
                let v = &x[a].1 - &(k * &y[b].1);
                if !v.is_zero() {
                    out.push((p, v));
                }
                a += 1;
                b += 1;
            }
            (Some(p), Some(q)) if p < q => {
                out.push((p, x[a].1.clone()));
                a += 1;
            }
            (Some(p), None) => {
                out.push((p, x[a].1.clone()));
                a += 1;
            }
            (_, Some(q)) => {
                out.push((q, -(k * &y[b].1)));
                b += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_matches_dense_factors() {
        let rows: Vec<Vec<i64>> = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let d = IntMatrix::from_rows(&rows).unwrap();
        let s = SparseIntMatrix::from_dense(&d);
        assert_eq!(s.invariant_factors(), normal_form::invariant_factors(&d));
    }

    #[test]
    fn unit_elimination_then_torsion() {
        // Boundary of the 2-cell of RP^2 against a 1-skeleton with one loop
        // traversed twice, padded with a unit block.
        let rows: Vec<Vec<i64>> = vec![vec![1, 1, 0], vec![0, 2, 0], vec![1, 0, 1]];
        let d = IntMatrix::from_rows(&rows).unwrap();
        let s = SparseIntMatrix::from_dense(&d);
        assert_eq!(s.invariant_factors(), normal_form::invariant_factors(&d));
    }
}
