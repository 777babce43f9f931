use std::fmt;

use serde::{Deserialize, Serialize};

/// Element of X ≅ ℤ^g in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct XVector {
    pub coeffs: Vec<i64>,
}

/// Element of Y ≅ ℤ^g ⊕ (ℤ/2)^g: free coefficients on the y_i and
/// torsion bits on the z_i.
///
/// The derived ordering (free part first, then torsion) is the canonical
/// order used by every builder.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YVector {
    pub free: Vec<i64>,
    pub tor: Vec<u8>,
}

impl XVector {
    pub fn new(coeffs: Vec<i64>) -> Self {
        XVector { coeffs }
    }

    pub fn zero(g: usize) -> Self {
        XVector { coeffs: vec![0; g] }
    }

    /// The basis vector x_{i+1} (zero-based index).
    pub fn basis(g: usize, i: usize) -> Self {
        let mut v = Self::zero(g);
        v.coeffs[i] = 1;
        v
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &XVector) -> XVector {
        XVector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &XVector) -> XVector {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> XVector {
        XVector {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> XVector {
        XVector {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }
}

impl YVector {
    /// Torsion entries are reduced mod 2.
    pub fn new(free: Vec<i64>, tor: Vec<u8>) -> Self {
        YVector {
            free,
            tor: tor.into_iter().map(|t| t & 1).collect(),
        }
    }

    pub fn zero(g: usize) -> Self {
        YVector {
            free: vec![0; g],
            tor: vec![0; g],
        }
    }

    /// The free generator y_{i+1}.
    pub fn y(g: usize, i: usize) -> Self {
        let mut v = Self::zero(g);
        v.free[i] = 1;
        v
    }

    /// The torsion generator z_{i+1}.
    pub fn z(g: usize, i: usize) -> Self {
        let mut v = Self::zero(g);
        v.tor[i] = 1;
        v
    }

    pub fn torsion(tor: Vec<u8>) -> Self {
        let g = tor.len();
        YVector::new(vec![0; g], tor)
    }

    pub fn rank(&self) -> usize {
        self.free.len()
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&c| c == 0) && self.tor.iter().all(|&t| t == 0)
    }

    pub fn is_torsion(&self) -> bool {
        self.free.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &YVector) -> YVector {
        YVector {
            free: self
                .free
                .iter()
                .zip(&other.free)
                .map(|(a, b)| a + b)
                .collect(),
            tor: self
                .tor
                .iter()
                .zip(&other.tor)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    pub fn neg(&self) -> YVector {
        YVector {
            free: self.free.iter().map(|a| -a).collect(),
            tor: self.tor.clone(),
        }
    }

    pub fn sub(&self, other: &YVector) -> YVector {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> YVector {
        let odd = (k & 1) as u8;
        YVector {
            free: self.free.iter().map(|a| a * k).collect(),
            tor: self.tor.iter().map(|t| t & odd).collect(),
        }
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, v) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

impl fmt::Display for XVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_list(f, &self.coeffs)?;
        write!(f, ")")
    }
}

impl fmt::Display for YVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_list(f, &self.free)?;
        write!(f, "|")?;
        write_list(f, &self.tor)?;
        write!(f, ")")
    }
}

/// All integer vectors of length `g` with entries in `[-b, b]`, in
/// lexicographic order.
pub fn box_vectors(g: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(g)];
    for _ in 0..g {
        let mut next = Vec::with_capacity(out.len() * (2 * b as usize + 1));
        for v in &out {
            for c in -b..=b {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// All bit vectors of length `g` in lexicographic order.
pub fn bit_vectors(g: usize) -> Vec<Vec<u8>> {
    (0..1u64 << g)
        .map(|m| (0..g).map(|i| ((m >> (g - 1 - i)) & 1) as u8).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_lexicographic() {
        let v = box_vectors(2, 1);
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], vec![-1, -1]);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        let b = bit_vectors(3);
        assert_eq!(b.len(), 8);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(box_vectors(0, 2), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn torsion_arithmetic() {
        let z = YVector::z(2, 0);
        assert!(z.add(&z).is_zero());
        assert_eq!(z.neg(), z);
        assert!(z.scale(2).is_zero());
        assert_eq!(YVector::y(2, 1).scale(-3).free, vec![0, -3]);
    }
}
