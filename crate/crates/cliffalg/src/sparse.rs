//! Sparse vectors over ℚ(i) with a fixed ambient coordinate dimension.

use crate::scalar::Scalar;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseVector {
    pub dim: usize,
    entries: BTreeMap<usize, Scalar>,
}

impl SparseVector {
    pub fn new(dim: usize) -> Self {
        SparseVector { dim, entries: BTreeMap::new() }
    }

    pub fn unit(dim: usize, idx: usize) -> Self {
        let mut v = SparseVector::new(dim);
        v.set(idx, Scalar::one());
        v
    }

    pub fn from_entries(dim: usize, it: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = SparseVector::new(dim);
        for (i, c) in it {
            v.add_entry(i, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, idx: usize) -> Option<&Scalar> {
        self.entries.get(&idx)
    }

    pub fn set(&mut self, idx: usize, c: Scalar) {
        assert!(idx < self.dim, "index {idx} out of range {}", self.dim);
        if c.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, c);
        }
    }

    pub fn add_entry(&mut self, idx: usize, c: &Scalar) {
        assert!(idx < self.dim);
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&idx) {
            Some(cur) => {
                *cur += c;
                if cur.is_zero() {
                    self.entries.remove(&idx);
                }
            }
            None => {
                self.entries.insert(idx, c.clone());
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    /// Smallest coordinate index with a nonzero entry.
    pub fn leading(&self) -> Option<usize> {
        self.entries.keys().next().copied()
    }

    /// self += k·other
    pub fn add_scaled(&mut self, other: &SparseVector, k: &Scalar) {
        debug_assert_eq!(self.dim, other.dim);
        if k.is_zero() {
            return;
        }
        for (i, c) in other.entries.iter() {
            self.add_entry(*i, &(k * c));
        }
    }

    pub fn scale(&mut self, k: &Scalar) {
        if k.is_zero() {
            self.entries.clear();
            return;
        }
        for c in self.entries.values_mut() {
            *c *= k;
        }
    }

    pub fn scaled(&self, k: &Scalar) -> SparseVector {
        let mut v = self.clone();
        v.scale(k);
        v
    }

    pub fn neg(&self) -> SparseVector {
        SparseVector {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseVector) -> SparseVector {
        let mut v = self.clone();
        v.add_scaled(other, &Scalar::one());
        v
    }

    pub fn sub(&self, other: &SparseVector) -> SparseVector {
        let mut v = self.clone();
        v.add_scaled(other, &Scalar::from_int(-1));
        v
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, c) in self.entries.iter() {
            out[*i] = c.clone();
        }
        out
    }

    /// Entry-wise complex conjugation (coefficients only; coordinates fixed).
    pub fn conj(&self) -> SparseVector {
        SparseVector {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, c)| (*i, c.conj())).collect(),
        }
    }
}

/// A linear map given by its columns: column j is the image of coordinate j.
/// Columns that are absent map to zero.
pub struct LinearMap {
    pub domain_dim: usize,
    pub codomain_dim: usize,
    cols: Vec<Option<SparseVector>>,
}

impl LinearMap {
    pub fn from_fn(
        domain_dim: usize,
        codomain_dim: usize,
        f: impl Fn(usize) -> SparseVector,
    ) -> Self {
        let cols = (0..domain_dim)
            .map(|j| {
                let v = f(j);
                debug_assert_eq!(v.dim, codomain_dim);
                if v.is_zero() { None } else { Some(v) }
            })
            .collect();
        LinearMap { domain_dim, codomain_dim, cols }
    }

    pub fn apply(&self, v: &SparseVector) -> SparseVector {
        debug_assert_eq!(v.dim, self.domain_dim);
        let mut out = SparseVector::new(self.codomain_dim);
        for (j, c) in v.iter() {
            if let Some(col) = &self.cols[j] {
                out.add_scaled(col, c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_scaled_cancels() {
        let mut a = SparseVector::from_entries(
            4,
            [(0, Scalar::from_int(1)), (2, Scalar::rat(1, 2))],
        );
        let b = SparseVector::from_entries(
            4,
            [(0, Scalar::from_int(2)), (2, Scalar::from_int(1)), (3, Scalar::from_int(5))],
        );
        a.add_scaled(&b, &Scalar::rat(-1, 2));
        assert_eq!(a.get(0), None);
        assert_eq!(a.get(2), None);
        assert_eq!(a.get(3), Some(&Scalar::rat(-5, 2)));
        assert_eq!(a.support_len(), 1);
    }

    #[test]
    fn linear_map_apply() {
        // rotation-ish map on 2 coords: e0 -> e1, e1 -> -e0
        let m = LinearMap::from_fn(2, 2, |j| {
            if j == 0 {
                SparseVector::unit(2, 1)
            } else {
                SparseVector::unit(2, 0).neg()
            }
        });
        let v = SparseVector::from_entries(2, [(0, Scalar::from_int(3)), (1, Scalar::from_int(4))]);
        let w = m.apply(&v);
        assert_eq!(w.get(0), Some(&Scalar::from_int(-4)));
        assert_eq!(w.get(1), Some(&Scalar::from_int(3)));
    }
}
