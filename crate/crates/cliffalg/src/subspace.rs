//! Row-echelon subspaces, kernels of linear operators, and simultaneous
//! eigenspace decompositions, all exact over ℚ(i).

use crate::scalar::Scalar;
use crate::sparse::SparseVector;
use crate::Error;
use std::collections::HashMap;

/// A subspace of ℚ(i)^dim kept in reduced row-echelon form: pivot entries are
/// 1, pivot columns are eliminated from every other row, pivots strictly
/// increase. Two equal subspaces therefore have identical bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    rows: Vec<SparseVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors(ambient_dim: usize, vecs: impl IntoIterator<Item = SparseVector>) -> Self {
        let mut s = Subspace::new(ambient_dim);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating all pivot coordinates.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        debug_assert_eq!(v.dim, self.ambient_dim);
        // dense fallback once fill-in passes half the ambient dimension
        if v.support_len() * 2 > self.ambient_dim && self.ambient_dim > 16 {
            return self.reduce_dense(v);
        }
        let mut v = v.clone();
        loop {
            // find the first pivot present in v (v's entries are sorted, as are pivots)
            let mut hit = None;
            for (i, p) in self.pivots.iter().enumerate() {
                if let Some(c) = v.get(*p) {
                    hit = Some((i, c.clone()));
                    break;
                }
            }
            match hit {
                Some((i, c)) => v.add_scaled(&self.rows[i], &(-&c)),
                None => return v,
            }
        }
    }

    fn reduce_dense(&self, v: &SparseVector) -> SparseVector {
        let mut dense: Vec<Scalar> = v.to_dense();
        for (i, p) in self.pivots.iter().enumerate() {
            if dense[*p].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut dense[*p], Scalar::zero());
            for (j, rc) in self.rows[i].iter() {
                if j == *p {
                    continue;
                }
                let delta = &c * rc;
                let cur = &dense[j] - &delta;
                dense[j] = cur;
            }
        }
        SparseVector::from_entries(
            self.ambient_dim,
            dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c)),
        )
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert `v`, returning true if it enlarged the space. Keeps RREF.
    pub fn insert(&mut self, v: SparseVector) -> bool {
        let mut r = self.reduce(&v);
        let lead = match r.leading() {
            Some(l) => l,
            None => return false,
        };
        let inv = r.get(lead).unwrap().inv();
        r.scale(&inv);
        // eliminate the new pivot from existing rows
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(lead) {
                let c = c.clone();
                row.add_scaled(&r, &(-&c));
            }
        }
        let pos = self.pivots.partition_point(|p| *p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, r);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        // RREF is canonical
        self.pivots == other.pivots && self.rows == other.rows
    }

    /// Intersection, via the kernel of (a, b) ↦ Σ aᵢuᵢ − Σ bⱼwⱼ.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let na = self.rank();
        let joint: Vec<SparseVector> = self
            .rows
            .iter()
            .cloned()
            .chain(other.rows.iter().map(|w| w.neg()))
            .collect();
        // relations among the joint family
        let rels = linear_relations(&joint);
        let mut out = Subspace::new(self.ambient_dim);
        for rel in rels {
            let mut v = SparseVector::new(self.ambient_dim);
            for (k, c) in rel.iter() {
                if k < na {
                    v.add_scaled(&self.rows[k], c);
                }
            }
            out.insert(v);
        }
        out
    }
}

/// Real points of a conjugation-stable subspace: the ℚ-span of the real and
/// imaginary parts of a basis.  Panics if the space is not conjugation-stable
/// (the collected parts would then span something strictly larger).
pub fn real_points(space: &Subspace) -> Subspace {
    let mut parts = Vec::new();
    for v in space.basis() {
        let c = v.conj();
        let mut re = v.clone();
        re.add_scaled(&c, &Scalar::one());
        re.scale(&Scalar::rat(1, 2));
        let mut im = v.clone();
        im.add_scaled(&c, &Scalar::from_int(-1));
        im.scale(&(&Scalar::rat(-1, 2) * &Scalar::i()));
        parts.push(re);
        parts.push(im);
    }
    let real = Subspace::from_vectors(space.ambient_dim, parts);
    assert_eq!(
        real.rank(),
        space.rank(),
        "subspace is not conjugation-stable"
    );
    real
}

/// Coefficient vectors x with Σ xₖ·vecs[k] = 0, as a basis of the relation
/// space (each relation has dim = vecs.len()).
pub fn linear_relations(vecs: &[SparseVector]) -> Vec<SparseVector> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let ncols = vecs.len();
    // constraint rows indexed by ambient coordinate
    let mut rows: HashMap<usize, SparseVector> = HashMap::new();
    for (k, v) in vecs.iter().enumerate() {
        for (i, c) in v.iter() {
            rows.entry(i).or_insert_with(|| SparseVector::new(ncols)).set(k, c.clone());
        }
    }
    let mut rref = Subspace::new(ncols);
    for (_, row) in rows {
        rref.insert(row);
    }
    let pivot_set: Vec<usize> = rref.pivots().to_vec();
    let mut kernel = Vec::new();
    for f in 0..ncols {
        if pivot_set.binary_search(&f).is_ok() {
            continue;
        }
        let mut x = SparseVector::new(ncols);
        x.set(f, Scalar::one());
        for (i, p) in pivot_set.iter().enumerate() {
            if let Some(c) = rref.basis()[i].get(f) {
                x.set(*p, -c);
            }
        }
        kernel.push(x);
    }
    kernel
}

pub type Op<'a> = &'a dyn Fn(&SparseVector) -> SparseVector;

/// Basis (in ambient coordinates) of {v ∈ span(domain) : opᵢ(v) = 0 ∀i}.
pub fn kernel(domain: &[SparseVector], ops: &[Op]) -> Vec<SparseVector> {
    if domain.is_empty() {
        return Vec::new();
    }
    let ncols = domain.len();
    let mut rows: HashMap<(usize, usize), SparseVector> = HashMap::new();
    for (k, d) in domain.iter().enumerate() {
        for (oi, op) in ops.iter().enumerate() {
            let img = op(d);
            for (i, c) in img.iter() {
                rows.entry((oi, i))
                    .or_insert_with(|| SparseVector::new(ncols))
                    .set(k, c.clone());
            }
        }
    }
    let mut rref = Subspace::new(ncols);
    for (_, row) in rows {
        rref.insert(row);
    }
    let pivot_set: Vec<usize> = rref.pivots().to_vec();
    let ambient_dim = domain[0].dim;
    let mut out = Vec::new();
    for f in 0..ncols {
        if pivot_set.binary_search(&f).is_ok() {
            continue;
        }
        let mut v = domain[f].clone();
        for (i, p) in pivot_set.iter().enumerate() {
            if let Some(c) = rref.basis()[i].get(f) {
                v.add_scaled(&domain[*p], &(-c));
            }
        }
        debug_assert_eq!(v.dim, ambient_dim);
        out.push(v);
    }
    out
}

#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub eigen: Vec<Scalar>,
    pub basis: Vec<SparseVector>,
}

/// Split span(domain) into joint eigenspaces of the (commuting) operators,
/// trying only the hinted eigenvalues. Errors if the hints fail to exhaust
/// any intermediate space.
pub fn simultaneous_eigenspaces(
    domain: &[SparseVector],
    ops: &[Op],
    hints: &[Vec<Scalar>],
) -> Result<Vec<WeightSpace>, Error> {
    assert_eq!(ops.len(), hints.len());
    let mut parts = vec![WeightSpace { eigen: Vec::new(), basis: domain.to_vec() }];
    for (op, lams) in ops.iter().zip(hints) {
        let mut next = Vec::new();
        for part in parts {
            let total = part.basis.len();
            let mut found = 0usize;
            for lam in lams {
                let shifted = |v: &SparseVector| {
                    let mut w = op(v);
                    w.add_scaled(v, &(-lam));
                    w
                };
                let ker = kernel(&part.basis, &[&shifted]);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let mut eigen = part.eigen.clone();
                eigen.push(lam.clone());
                next.push(WeightSpace { eigen, basis: ker });
            }
            if found != total {
                return Err(Error::IncompleteDecomposition { expected: total, found });
            }
        }
        parts = next;
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn v(dim: usize, entries: &[(usize, i64)]) -> SparseVector {
        SparseVector::from_entries(
            dim,
            entries.iter().map(|(i, c)| (*i, Scalar::from_int(*c))),
        )
    }

    #[test]
    fn rref_canonical() {
        let a = Subspace::from_vectors(3, [v(3, &[(0, 1), (1, 2)]), v(3, &[(1, 1), (2, 1)])]);
        let b = Subspace::from_vectors(3, [v(3, &[(0, 2), (1, 4)]), v(3, &[(0, 1), (1, 3), (2, 1)])]);
        assert!(a.equals(&b));
        assert_eq!(a.rank(), 2);
        assert!(a.contains(&v(3, &[(0, 5), (1, 13), (2, 3)])));
        assert!(!a.contains(&v(3, &[(2, 1), (0, 1)])));
    }

    #[test]
    fn kernel_of_projection() {
        // op = projection onto coordinate 0; kernel within full space = e1, e2
        let dom: Vec<_> = (0..3).map(|i| SparseVector::unit(3, i)).collect();
        let op = |x: &SparseVector| {
            let mut w = SparseVector::new(3);
            if let Some(c) = x.get(0) {
                w.set(0, c.clone());
            }
            w
        };
        let k = kernel(&dom, &[&op]);
        let ks = Subspace::from_vectors(3, k);
        assert_eq!(ks.rank(), 2);
        assert!(ks.contains(&v(3, &[(1, 1)])));
        assert!(ks.contains(&v(3, &[(2, 1)])));
    }

    #[test]
    fn eigen_split() {
        // diag(1,1,-1) in a sheared basis
        let dom = vec![v(3, &[(0, 1), (2, 1)]), v(3, &[(1, 1)]), v(3, &[(2, 1)])];
        let op = |x: &SparseVector| {
            let mut w = SparseVector::new(3);
            for (i, c) in x.iter() {
                w.set(i, if i == 2 { -c } else { c.clone() });
            }
            w
        };
        let hints = vec![vec![Scalar::from_int(1), Scalar::from_int(-1)]];
        let parts = simultaneous_eigenspaces(&dom, &[&op], &hints).unwrap();
        assert_eq!(parts.len(), 2);
        let plus = parts.iter().find(|p| p.eigen[0] == Scalar::from_int(1)).unwrap();
        let minus = parts.iter().find(|p| p.eigen[0] == Scalar::from_int(-1)).unwrap();
        assert_eq!(plus.basis.len(), 2);
        assert_eq!(minus.basis.len(), 1);
    }

    #[test]
    fn eigen_split_incomplete_errors() {
        let dom = vec![v(2, &[(0, 1)]), v(2, &[(1, 1)])];
        let op = |x: &SparseVector| {
            let mut w = SparseVector::new(2);
            for (i, c) in x.iter() {
                w.set(i, if i == 1 { -c } else { c.clone() });
            }
            w
        };
        let hints = vec![vec![Scalar::from_int(1)]];
        assert!(simultaneous_eigenspaces(&dom, &[&op], &hints).is_err());
    }

    #[test]
    fn intersection() {
        let a = Subspace::from_vectors(3, [v(3, &[(0, 1)]), v(3, &[(1, 1)])]);
        let b = Subspace::from_vectors(3, [v(3, &[(1, 1)]), v(3, &[(2, 1)])]);
        let c = a.intersect(&b);
        assert_eq!(c.rank(), 1);
        assert!(c.contains(&v(3, &[(1, 1)])));
    }
}
