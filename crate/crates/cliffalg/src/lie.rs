//! Lie algebras as commutator-closed subspaces of an ambient associative
//! algebra. Two ambients are supported: the even part of a Clifford algebra,
//! and n×n matrices over ℚ or over ℚ(j) with j an *internal* imaginary unit
//! kept in the coordinates (so that real forms of complex matrix algebras are
//! honest ℚ-subspaces, and a later ℚ(i)-promotion of the scalars is an honest
//! complexification).

use crate::clifford::{Blade, CliffordElement, Signature};
use crate::scalar::Scalar;
use crate::sparse::SparseVector;
use crate::subspace::{kernel, Op, Subspace};
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmbientKind {
    /// Even subalgebra of C(p,q); coordinates index the even blades sorted by
    /// (grade, mask).
    CliffordEven(Signature),
    /// Full Clifford algebra C(p,q); coordinates index all blades sorted by
    /// (grade, mask). Needed when modules have odd-grade components.
    CliffordFull(Signature),
    /// n×n matrices; coordinate (i·n+j)·s + part with s = 2 for complex
    /// (part 0 = real component, part 1 = j-component), s = 1 for real.
    Matrix { n: usize, complex: bool },
}

#[derive(Debug)]
pub struct Ambient {
    pub kind: AmbientKind,
    blades: Vec<Blade>,
    blade_index: HashMap<Blade, usize>,
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Ambient {
    pub fn clifford_even(sig: Signature) -> Arc<Ambient> {
        let blades = sig.even_blades();
        let blade_index = blades.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        Arc::new(Ambient { kind: AmbientKind::CliffordEven(sig), blades, blade_index })
    }

    pub fn clifford_full(sig: Signature) -> Arc<Ambient> {
        let blades = sig.all_blades();
        let blade_index = blades.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        Arc::new(Ambient { kind: AmbientKind::CliffordFull(sig), blades, blade_index })
    }

    pub fn matrix(n: usize, complex: bool) -> Arc<Ambient> {
        Arc::new(Ambient {
            kind: AmbientKind::Matrix { n, complex },
            blades: Vec::new(),
            blade_index: HashMap::new(),
        })
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            AmbientKind::CliffordEven(_) | AmbientKind::CliffordFull(_) => self.blades.len(),
            AmbientKind::Matrix { n, complex } => n * n * if *complex { 2 } else { 1 },
        }
    }

    pub fn sig(&self) -> Signature {
        match &self.kind {
            AmbientKind::CliffordEven(sig) | AmbientKind::CliffordFull(sig) => *sig,
            _ => panic!("not a Clifford ambient"),
        }
    }

    pub fn blades(&self) -> &[Blade] {
        match &self.kind {
            AmbientKind::CliffordEven(_) | AmbientKind::CliffordFull(_) => &self.blades,
            _ => panic!("not a Clifford ambient"),
        }
    }

    pub fn blade_pos(&self, b: Blade) -> usize {
        *self.blade_index.get(&b).expect("blade not in ambient basis")
    }

    pub fn n(&self) -> usize {
        match &self.kind {
            AmbientKind::Matrix { n, .. } => *n,
            _ => panic!("not a matrix ambient"),
        }
    }

    pub fn is_complex(&self) -> bool {
        match &self.kind {
            AmbientKind::Matrix { complex, .. } => *complex,
            _ => panic!("not a matrix ambient"),
        }
    }

    /// Flat coordinate of matrix entry (i,j), component `part` (0 = real,
    /// 1 = internal imaginary; must be 0 for real ambients).
    pub fn eidx(&self, i: usize, j: usize, part: usize) -> usize {
        match &self.kind {
            AmbientKind::Matrix { n, complex } => {
                debug_assert!(i < *n && j < *n);
                if *complex {
                    (i * n + j) * 2 + part
                } else {
                    debug_assert_eq!(part, 0);
                    i * n + j
                }
            }
            _ => panic!("not a matrix ambient"),
        }
    }

    pub fn decode(&self, idx: usize) -> (usize, usize, usize) {
        match &self.kind {
            AmbientKind::Matrix { n, complex } => {
                if *complex {
                    let part = idx % 2;
                    let cell = idx / 2;
                    (cell / n, cell % n, part)
                } else {
                    (idx / n, idx % n, 0)
                }
            }
            _ => panic!("not a matrix ambient"),
        }
    }

    pub fn unit(&self, i: usize, j: usize, part: usize) -> SparseVector {
        SparseVector::unit(self.dim(), self.eidx(i, j, part))
    }

    pub fn identity_matrix(&self) -> SparseVector {
        let mut v = SparseVector::new(self.dim());
        for i in 0..self.n() {
            v.set(self.eidx(i, i, 0), Scalar::one());
        }
        v
    }

    pub fn transpose(&self, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new(self.dim());
        for (idx, c) in v.iter() {
            let (i, j, part) = self.decode(idx);
            out.set(self.eidx(j, i, part), c.clone());
        }
        out
    }

    /// Conjugation of the internal unit j (negates part-1 components).
    pub fn conj_internal(&self, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new(self.dim());
        for (idx, c) in v.iter() {
            let (i, j, part) = self.decode(idx);
            out.set(self.eidx(i, j, part), if part == 1 { -c } else { c.clone() });
        }
        out
    }

    /// Conjugate transpose wrt the internal unit (plain transpose when real).
    pub fn dagger(&self, v: &SparseVector) -> SparseVector {
        if self.is_complex() {
            self.transpose(&self.conj_internal(v))
        } else {
            self.transpose(v)
        }
    }

    /// Multiplication by the internal unit j (panics on real ambients).
    pub fn times_internal_i(&self, v: &SparseVector) -> SparseVector {
        assert!(self.is_complex());
        let mut out = SparseVector::new(self.dim());
        for (idx, c) in v.iter() {
            let (i, j, part) = self.decode(idx);
            if part == 0 {
                out.set(self.eidx(i, j, 1), c.clone());
            } else {
                out.set(self.eidx(i, j, 0), -c);
            }
        }
        out
    }

    /// Trace as (real component, internal-imaginary component).
    pub fn trace(&self, v: &SparseVector) -> (Scalar, Scalar) {
        let mut re = Scalar::zero();
        let mut im = Scalar::zero();
        for i in 0..self.n() {
            if let Some(c) = v.get(self.eidx(i, i, 0)) {
                re += c;
            }
            if self.is_complex() {
                if let Some(c) = v.get(self.eidx(i, i, 1)) {
                    im += c;
                }
            }
        }
        (re, im)
    }

    pub fn entry(&self, v: &SparseVector, i: usize, j: usize) -> (Scalar, Scalar) {
        let re = v.get(self.eidx(i, j, 0)).cloned().unwrap_or_else(Scalar::zero);
        let im = if self.is_complex() {
            v.get(self.eidx(i, j, 1)).cloned().unwrap_or_else(Scalar::zero)
        } else {
            Scalar::zero()
        };
        (re, im)
    }

    pub fn product(&self, x: &SparseVector, y: &SparseVector) -> SparseVector {
        match &self.kind {
            AmbientKind::CliffordEven(sig) | AmbientKind::CliffordFull(sig) => {
                let mut out = SparseVector::new(self.dim());
                for (ia, ca) in x.iter() {
                    let a = self.blades[ia];
                    for (ib, cb) in y.iter() {
                        let b = self.blades[ib];
                        let (sign, mask) = sig.blade_product(a, b);
                        let mut c = ca * cb;
                        if sign < 0 {
                            c = -&c;
                        }
                        out.add_entry(self.blade_pos(mask), &c);
                    }
                }
                out
            }
            AmbientKind::Matrix { n, .. } => {
                // group y's entries by row for the middle-index match
                let mut rows: HashMap<usize, Vec<(usize, usize, Scalar)>> = HashMap::new();
                for (idx, c) in y.iter() {
                    let (j, k, part) = self.decode(idx);
                    rows.entry(j).or_default().push((k, part, c.clone()));
                }
                let mut out = SparseVector::new(self.dim());
                let _ = n;
                for (idx, cx) in x.iter() {
                    let (i, j, px) = self.decode(idx);
                    if let Some(row) = rows.get(&j) {
                        for (k, py, cy) in row {
                            let c = cx * cy;
                            let (part, neg) = match (px, *py) {
                                (0, 0) => (0, false),
                                (0, 1) | (1, 0) => (1, false),
                                (1, 1) => (0, true),
                                _ => unreachable!(),
                            };
                            let c = if neg { -&c } else { c };
                            out.add_entry(self.eidx(i, *k, part), &c);
                        }
                    }
                }
                out
            }
        }
    }

    pub fn bracket(&self, x: &SparseVector, y: &SparseVector) -> SparseVector {
        let mut out = self.product(x, y);
        let yx = self.product(y, x);
        out.add_scaled(&yx, &Scalar::from_int(-1));
        out
    }

    pub fn from_clifford(&self, x: &CliffordElement) -> SparseVector {
        assert_eq!(x.sig, self.sig());
        let even_only = matches!(self.kind, AmbientKind::CliffordEven(_));
        let mut v = SparseVector::new(self.dim());
        for (b, c) in x.terms() {
            assert!(!even_only || b.count_ones() % 2 == 0, "element has odd-grade terms");
            v.set(self.blade_pos(b), c.clone());
        }
        v
    }

    pub fn to_clifford(&self, v: &SparseVector) -> CliffordElement {
        let sig = self.sig();
        let mut x = CliffordElement::zero(sig);
        for (i, c) in v.iter() {
            x.add_term(self.blades[i], c.clone());
        }
        x
    }
}

#[derive(Clone)]
pub struct LieAlgebra {
    pub ambient: Arc<Ambient>,
    pub space: Subspace,
}

impl LieAlgebra {
    pub fn new(ambient: Arc<Ambient>, space: Subspace) -> Self {
        assert_eq!(space.ambient_dim, ambient.dim());
        LieAlgebra { ambient, space }
    }

    pub fn from_vectors(ambient: Arc<Ambient>, vecs: impl IntoIterator<Item = SparseVector>) -> Self {
        let space = Subspace::from_vectors(ambient.dim(), vecs);
        LieAlgebra { ambient, space }
    }

    pub fn dim(&self) -> usize {
        self.space.rank()
    }

    pub fn basis(&self) -> &[SparseVector] {
        self.space.basis()
    }

    pub fn contains_vec(&self, v: &SparseVector) -> bool {
        self.space.contains(v)
    }

    pub fn contains(&self, other: &LieAlgebra) -> Result<bool> {
        if self.ambient.kind != other.ambient.kind {
            return Err(Error::Invalid("ambient mismatch".into()));
        }
        Ok(self.space.contains_subspace(&other.space))
    }

    pub fn equals(&self, other: &LieAlgebra) -> Result<bool> {
        if self.ambient.kind != other.ambient.kind {
            return Err(Error::Invalid("ambient mismatch".into()));
        }
        Ok(self.space.equals(&other.space))
    }

    /// Check [space, space] ⊆ space on all basis pairs.
    pub fn is_bracket_closed(&self) -> bool {
        let basis = self.basis();
        basis.par_iter().enumerate().all(|(i, x)| {
            basis[..=i].iter().all(|y| self.space.contains(&self.ambient.bracket(x, y)))
        })
    }

    pub fn assert_closed(&self) {
        assert!(self.is_bracket_closed(), "subspace is not bracket-closed");
    }
}

/// g(p,q) = {x ∈ C_even : x + x* = 0} = ⊕_{k ≡ 2 mod 4} ∧^k, built both ways;
/// panics if the two constructions disagree.
pub fn g_pq(p: usize, q: usize) -> LieAlgebra {
    let sig = Signature::new(p, q);
    let ambient = Ambient::clifford_even(sig);
    let graded = LieAlgebra::from_vectors(
        ambient.clone(),
        ambient
            .blades()
            .iter()
            .filter(|b| b.count_ones() % 4 == 2)
            .map(|b| SparseVector::unit(ambient.dim(), ambient.blade_pos(*b))),
    );
    // star-equation construction: kernel of x ↦ x + x*
    let star_op = |v: &SparseVector| {
        let x = ambient.to_clifford(v);
        ambient.from_clifford(&x.add(&x.star()))
    };
    let domain: Vec<SparseVector> =
        (0..ambient.dim()).map(|i| SparseVector::unit(ambient.dim(), i)).collect();
    let solved = LieAlgebra::from_vectors(ambient.clone(), kernel(&domain, &[&star_op]));
    assert!(
        graded.space.equals(&solved.space),
        "star-equation and graded constructions of g({p},{q}) disagree"
    );
    graded
}

/// spin(p,q) = ∧², dimension m(m−1)/2.
pub fn spin_pq(p: usize, q: usize) -> LieAlgebra {
    let sig = Signature::new(p, q);
    let ambient = Ambient::clifford_even(sig);
    let alg = LieAlgebra::from_vectors(
        ambient.clone(),
        ambient
            .blades()
            .iter()
            .filter(|b| b.count_ones() == 2)
            .map(|b| SparseVector::unit(ambient.dim(), ambient.blade_pos(*b))),
    );
    let m = sig.m();
    assert_eq!(alg.dim(), m * (m - 1) / 2);
    alg
}

/// Bracket closure of the span of the generators: repeat
/// span ← span + [span, span] until stable, bracketing only (new × all) pairs.
pub fn generated_subalgebra(ambient: Arc<Ambient>, gens: &[SparseVector]) -> LieAlgebra {
    let mut space = Subspace::new(ambient.dim());
    let mut members: Vec<SparseVector> = Vec::new();
    for g in gens {
        if space.insert(g.clone()) {
            members.push(g.clone());
        }
    }
    let mut new_from = 0usize;
    while new_from < members.len() {
        let hi = members.len();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for a in new_from..hi {
            for b in 0..=a {
                if a != b {
                    pairs.push((a, b));
                }
            }
        }
        let brackets: Vec<SparseVector> = pairs
            .par_iter()
            .map(|(a, b)| ambient.bracket(&members[*a], &members[*b]))
            .collect();
        new_from = hi;
        for w in brackets {
            let r = space.reduce(&w);
            if !r.is_zero() && space.insert(r.clone()) {
                members.push(r);
            }
        }
    }
    LieAlgebra { ambient, space }
}

/// {x ∈ g : [x, s] = 0 for all s}.
pub fn centralizer(g: &LieAlgebra, s: &[SparseVector]) -> LieAlgebra {
    if s.is_empty() {
        return g.clone();
    }
    let ambient = g.ambient.clone();
    let ops: Vec<Box<dyn Fn(&SparseVector) -> SparseVector + Sync>> = s
        .iter()
        .map(|si| {
            let a = ambient.clone();
            let si = si.clone();
            Box::new(move |v: &SparseVector| a.bracket(v, &si))
                as Box<dyn Fn(&SparseVector) -> SparseVector + Sync>
        })
        .collect();
    let op_refs: Vec<Op> = ops.iter().map(|b| b.as_ref() as Op).collect();
    let ker = kernel(g.basis(), &op_refs);
    LieAlgebra::from_vectors(ambient, ker)
}

pub fn center(g: &LieAlgebra) -> LieAlgebra {
    let basis: Vec<SparseVector> = g.basis().to_vec();
    centralizer(g, &basis)
}

/// ±1-eigenspace split of θ on g; returns (k, p) with d(G) = dim p.
pub fn cartan_decomposition(
    g: &LieAlgebra,
    theta: &dyn Fn(&SparseVector) -> SparseVector,
) -> Result<(LieAlgebra, Subspace)> {
    for v in g.basis() {
        let tv = theta(v);
        if !g.space.contains(&tv) {
            return Err(Error::Invalid("involution does not preserve the algebra".into()));
        }
        let mut ttv = theta(&tv);
        ttv.add_scaled(v, &Scalar::from_int(-1));
        if !ttv.is_zero() {
            return Err(Error::Invalid("map is not an involution".into()));
        }
    }
    let minus = |v: &SparseVector| {
        let mut w = theta(v);
        w.add_scaled(v, &Scalar::from_int(-1));
        w
    };
    let plus = |v: &SparseVector| {
        let mut w = theta(v);
        w.add_scaled(v, &Scalar::one());
        w
    };
    let k = kernel(g.basis(), &[&minus]);
    let p = kernel(g.basis(), &[&plus]);
    assert_eq!(k.len() + p.len(), g.dim());
    let k_alg = LieAlgebra::from_vectors(g.ambient.clone(), k);
    k_alg.assert_closed();
    Ok((k_alg, Subspace::from_vectors(g.ambient.dim(), p)))
}

/// The standard Cartan involution θ(X) = −X† (internal conjugate transpose).
pub fn theta_minus_dagger(ambient: &Arc<Ambient>) -> impl Fn(&SparseVector) -> SparseVector + '_ {
    move |v: &SparseVector| {
        let mut w = ambient.dagger(v);
        w.scale(&Scalar::from_int(-1));
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixFamily {
    /// gl(n, ℝ)
    GlR(usize),
    /// sl(n, ℝ)
    SlR(usize),
    /// gl(n, ℂ) realified
    GlC(usize),
    /// sl(n, ℂ) realified
    SlC(usize),
    /// so of a diagonal real symmetric form with the given signs
    SoDiag(Vec<i64>),
    /// so(n, ℂ) realified, diagonal form with the given signs
    SoCDiag(Vec<i64>),
    /// u of the diagonal Hermitian form with the given signs
    UDiag(Vec<i64>),
    /// su of the diagonal Hermitian form with the given signs
    SuDiag(Vec<i64>),
    /// sp(2n, ℝ), parameter n
    SpR(usize),
    /// sp(2n, ℂ) realified, parameter n
    SpC(usize),
    /// sp(p, q) as complex 2(p+q)×2(p+q) matrices (quaternionic picture)
    SpPq(usize, usize),
    /// gl(n, ℍ) as complex 2n×2n matrices
    GlH(usize),
    /// sl(n, ℍ)
    SlH(usize),
    /// so*(2n), parameter n
    SoStar(usize),
}

impl MatrixFamily {
    pub fn expected_dim(&self) -> usize {
        match self {
            MatrixFamily::GlR(n) => n * n,
            MatrixFamily::SlR(n) => n * n - 1,
            MatrixFamily::GlC(n) => 2 * n * n,
            MatrixFamily::SlC(n) => 2 * n * n - 2,
            MatrixFamily::SoDiag(signs) => signs.len() * (signs.len() - 1) / 2,
            MatrixFamily::SoCDiag(signs) => signs.len() * (signs.len() - 1),
            MatrixFamily::UDiag(signs) => signs.len() * signs.len(),
            MatrixFamily::SuDiag(signs) => signs.len() * signs.len() - 1,
            MatrixFamily::SpR(n) => n * (2 * n + 1),
            MatrixFamily::SpC(n) => 2 * n * (2 * n + 1),
            MatrixFamily::SpPq(p, q) => (p + q) * (2 * (p + q) + 1),
            MatrixFamily::GlH(n) => 4 * n * n,
            MatrixFamily::SlH(n) => 4 * n * n - 1,
            MatrixFamily::SoStar(n) => n * (2 * n - 1),
        }
    }

    pub fn matrix_size(&self) -> (usize, bool) {
        match self {
            MatrixFamily::GlR(n) | MatrixFamily::SlR(n) => (*n, false),
            MatrixFamily::GlC(n) | MatrixFamily::SlC(n) => (*n, true),
            MatrixFamily::SoDiag(signs) => (signs.len(), false),
            MatrixFamily::SoCDiag(signs) => (signs.len(), true),
            MatrixFamily::UDiag(signs) | MatrixFamily::SuDiag(signs) => (signs.len(), true),
            MatrixFamily::SpR(n) => (2 * n, false),
            MatrixFamily::SpC(n) => (2 * n, true),
            MatrixFamily::SpPq(p, q) => (2 * (p + q), true),
            MatrixFamily::GlH(n) | MatrixFamily::SlH(n) => (2 * n, true),
            MatrixFamily::SoStar(n) => (2 * n, true),
        }
    }
}

/// Diagonal matrix with ±1 entries as an ambient vector.
fn diag_signs(ambient: &Ambient, signs: &[i64]) -> SparseVector {
    let mut v = SparseVector::new(ambient.dim());
    for (i, s) in signs.iter().enumerate() {
        v.set(ambient.eidx(i, i, 0), Scalar::from_int(*s));
    }
    v
}

/// The standard symplectic form J = [[0, I], [−I, 0]] (n×n blocks).
fn symplectic_form(ambient: &Ambient, half: usize) -> SparseVector {
    let mut v = SparseVector::new(ambient.dim());
    for i in 0..half {
        v.set(ambient.eidx(i, half + i, 0), Scalar::one());
        v.set(ambient.eidx(half + i, i, 0), Scalar::from_int(-1));
    }
    v
}

/// Solve the family's defining linear equations inside the full matrix space.
pub fn matrix_algebra(family: &MatrixFamily) -> LieAlgebra {
    let (n, complex) = family.matrix_size();
    let ambient = Ambient::matrix(n, complex);
    let a = ambient.clone();
    let dim = ambient.dim();
    let domain: Vec<SparseVector> = (0..dim).map(|i| SparseVector::unit(dim, i)).collect();

    // constraint builders, each mapping X to a vector that must vanish
    let form_t = |form: SparseVector| {
        let a = a.clone();
        move |x: &SparseVector| {
            // Xᵀ·F + F·X
            let mut w = a.product(&a.transpose(x), &form);
            let fx = a.product(&form, x);
            w.add_scaled(&fx, &Scalar::one());
            w
        }
    };
    let form_dagger = |form: SparseVector| {
        let a = a.clone();
        move |x: &SparseVector| {
            // X†·F + F·X
            let mut w = a.product(&a.dagger(x), &form);
            let fx = a.product(&form, x);
            w.add_scaled(&fx, &Scalar::one());
            w
        }
    };
    let trace_re = {
        let a = a.clone();
        move |x: &SparseVector| {
            let (re, _) = a.trace(x);
            let mut w = SparseVector::new(1);
            w.set(0, re);
            w
        }
    };
    let trace_im = {
        let a = a.clone();
        move |x: &SparseVector| {
            let (_, im) = a.trace(x);
            let mut w = SparseVector::new(1);
            w.set(0, im);
            w
        }
    };
    // quaternionic reality: Ω·conj(X) − X·Ω = 0 with Ω = [[0, −I], [I, 0]]
    let quaternionic_reality = |half: usize| {
        let a = a.clone();
        let mut omega = SparseVector::new(a.dim());
        for i in 0..half {
            omega.set(a.eidx(i, half + i, 0), Scalar::from_int(-1));
            omega.set(a.eidx(half + i, i, 0), Scalar::one());
        }
        move |x: &SparseVector| {
            let mut w = a.product(&omega, &a.conj_internal(x));
            let xo = a.product(x, &omega);
            w.add_scaled(&xo, &Scalar::from_int(-1));
            w
        }
    };

    let mut ops: Vec<Box<dyn Fn(&SparseVector) -> SparseVector + Sync>> = Vec::new();
    match family {
        MatrixFamily::GlR(_) | MatrixFamily::GlC(_) => {}
        MatrixFamily::SlR(_) => ops.push(Box::new(trace_re)),
        MatrixFamily::SlC(_) => {
            ops.push(Box::new(trace_re));
            ops.push(Box::new(trace_im));
        }
        MatrixFamily::SoDiag(signs) | MatrixFamily::SoCDiag(signs) => {
            ops.push(Box::new(form_t(diag_signs(&ambient, signs))));
        }
        MatrixFamily::UDiag(signs) => {
            ops.push(Box::new(form_dagger(diag_signs(&ambient, signs))));
        }
        MatrixFamily::SuDiag(signs) => {
            ops.push(Box::new(form_dagger(diag_signs(&ambient, signs))));
            ops.push(Box::new(trace_im));
        }
        MatrixFamily::SpR(h) | MatrixFamily::SpC(h) => {
            ops.push(Box::new(form_t(symplectic_form(&ambient, *h))));
        }
        MatrixFamily::SpPq(p, q) => {
            let half = p + q;
            let mut signs: Vec<i64> = Vec::new();
            for _ in 0..2 {
                signs.extend(std::iter::repeat(1).take(*p));
                signs.extend(std::iter::repeat(-1).take(*q));
            }
            ops.push(Box::new(quaternionic_reality(half)));
            ops.push(Box::new(form_dagger(diag_signs(&ambient, &signs))));
        }
        MatrixFamily::GlH(h) => ops.push(Box::new(quaternionic_reality(*h))),
        MatrixFamily::SlH(h) => {
            ops.push(Box::new(quaternionic_reality(*h)));
            ops.push(Box::new(trace_re));
        }
        MatrixFamily::SoStar(h) => {
            let mut omega = SparseVector::new(ambient.dim());
            for i in 0..*h {
                omega.set(ambient.eidx(i, h + i, 0), Scalar::from_int(-1));
                omega.set(ambient.eidx(h + i, i, 0), Scalar::one());
            }
            ops.push(Box::new(quaternionic_reality(*h)));
            ops.push(Box::new(form_dagger(omega)));
        }
    }
    let op_refs: Vec<Op> = ops.iter().map(|b| b.as_ref() as Op).collect();
    let sol = if op_refs.is_empty() { domain } else { kernel(&domain, &op_refs) };
    let alg = LieAlgebra::from_vectors(ambient, sol);
    assert_eq!(
        alg.dim(),
        family.expected_dim(),
        "{family:?}: solved dimension does not match the classical formula"
    );
    alg.assert_closed();
    // θ(X) = −X† must preserve every standard family
    let amb = alg.ambient.clone();
    for v in alg.basis() {
        let mut tv = amb.dagger(v);
        tv.scale(&Scalar::from_int(-1));
        assert!(alg.space.contains(&tv), "{family:?}: θ(X) = −X† does not preserve the algebra");
    }
    alg
}

/// so(diag form) supported on a coordinate block: matrices vanishing outside
/// coords × coords with XᵀD + DX = 0 for the full diagonal form.
pub fn so_block(ambient: &Arc<Ambient>, signs: &[i64], coords: &[usize]) -> LieAlgebra {
    assert_eq!(signs.len(), ambient.n());
    let d = diag_signs(ambient, signs);
    let mut domain = Vec::new();
    for &i in coords {
        for &j in coords {
            domain.push(ambient.unit(i, j, 0));
            if ambient.is_complex() {
                domain.push(ambient.unit(i, j, 1));
            }
        }
    }
    let a = ambient.clone();
    let cond = move |x: &SparseVector| {
        let mut w = a.product(&a.transpose(x), &d);
        let dx = a.product(&d, x);
        w.add_scaled(&dx, &Scalar::one());
        w
    };
    let alg = LieAlgebra::from_vectors(ambient.clone(), kernel(&domain, &[&cond]));
    alg.assert_closed();
    alg
}

/// su(diag Hermitian form) supported on a coordinate block.
pub fn su_block(ambient: &Arc<Ambient>, signs: &[i64], coords: &[usize]) -> LieAlgebra {
    assert!(ambient.is_complex());
    assert_eq!(signs.len(), ambient.n());
    let d = diag_signs(ambient, signs);
    let mut domain = Vec::new();
    for &i in coords {
        for &j in coords {
            domain.push(ambient.unit(i, j, 0));
            domain.push(ambient.unit(i, j, 1));
        }
    }
    let a = ambient.clone();
    let cond = move |x: &SparseVector| {
        let mut w = a.product(&a.dagger(x), &d);
        let dx = a.product(&d, x);
        w.add_scaled(&dx, &Scalar::one());
        w
    };
    let a2 = ambient.clone();
    let tr_im = move |x: &SparseVector| {
        let (_, im) = a2.trace(x);
        let mut w = SparseVector::new(1);
        w.set(0, im);
        w
    };
    let alg = LieAlgebra::from_vectors(ambient.clone(), kernel(&domain, &[&cond, &tr_im]));
    alg.assert_closed();
    alg
}

/// su of an arbitrary Hermitian form H (H† = H): X†H + HX = 0, tr X = 0.
pub fn su_of_form(ambient: &Arc<Ambient>, h: &SparseVector) -> LieAlgebra {
    assert!(ambient.is_complex());
    let hd = ambient.dagger(h);
    let mut diff = hd.clone();
    diff.add_scaled(h, &Scalar::from_int(-1));
    assert!(diff.is_zero(), "form is not Hermitian");
    let dim = ambient.dim();
    let domain: Vec<SparseVector> = (0..dim).map(|i| SparseVector::unit(dim, i)).collect();
    let a = ambient.clone();
    let hh = h.clone();
    let cond = move |x: &SparseVector| {
        let mut w = a.product(&a.dagger(x), &hh);
        let hx = a.product(&hh, x);
        w.add_scaled(&hx, &Scalar::one());
        w
    };
    let a2 = ambient.clone();
    let tr_re = move |x: &SparseVector| {
        let (re, _) = a2.trace(x);
        let mut w = SparseVector::new(1);
        w.set(0, re);
        w
    };
    let a3 = ambient.clone();
    let tr_im = move |x: &SparseVector| {
        let (_, im) = a3.trace(x);
        let mut w = SparseVector::new(1);
        w.set(0, im);
        w
    };
    let sol = kernel(&domain, &[&cond, &tr_re, &tr_im]);
    let alg = LieAlgebra::from_vectors(ambient.clone(), sol);
    alg.assert_closed();
    alg
}

/// so of an arbitrary symmetric bilinear form B over the ambient's base:
/// XᵀB + BX = 0.
pub fn so_of_form(ambient: &Arc<Ambient>, b: &SparseVector) -> LieAlgebra {
    let bt = ambient.transpose(b);
    let mut diff = bt;
    diff.add_scaled(b, &Scalar::from_int(-1));
    assert!(diff.is_zero(), "form is not symmetric");
    let dim = ambient.dim();
    let domain: Vec<SparseVector> = (0..dim).map(|i| SparseVector::unit(dim, i)).collect();
    let a = ambient.clone();
    let bb = b.clone();
    let cond = move |x: &SparseVector| {
        let mut w = a.product(&a.transpose(x), &bb);
        let bx = a.product(&bb, x);
        w.add_scaled(&bx, &Scalar::one());
        w
    };
    let sol = kernel(&domain, &[&cond]);
    let alg = LieAlgebra::from_vectors(ambient.clone(), sol);
    alg.assert_closed();
    alg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_pq_dimensions() {
        assert_eq!(g_pq(4, 3).dim(), 28);
        assert_eq!(g_pq(1, 0).dim(), 0);
        // dim depends only on m
        for m in 2..=9 {
            let dims: Vec<usize> = (1..=m).map(|p| g_pq(p, m - p).dim()).collect();
            assert!(dims.windows(2).all(|w| w[0] == w[1]), "m={m}: {dims:?}");
        }
    }

    #[test]
    fn g_pq_83_is_528() {
        // binomial oracle: C(11,2) + C(11,6) + C(11,10)
        fn c(n: u64, k: u64) -> u64 {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        assert_eq!(c(11, 2) + c(11, 6) + c(11, 10), 528);
        assert_eq!(g_pq(8, 3).dim(), 528);
    }

    #[test]
    fn spin_pq_dimensions_and_closure() {
        let s41 = spin_pq(4, 1);
        assert_eq!(s41.dim(), 10);
        s41.assert_closed();
        let s81 = spin_pq(8, 1);
        assert_eq!(s81.dim(), 36);
        assert!(g_pq(8, 1).contains(&s81).unwrap());
    }

    #[test]
    fn g_pq_excludes_grade_4() {
        let g = g_pq(4, 3);
        let amb = g.ambient.clone();
        for b in amb.sig().graded_blades(4) {
            let v = SparseVector::unit(amb.dim(), amb.blade_pos(b));
            assert!(!g.contains_vec(&v));
        }
        for b in amb.sig().graded_blades(2) {
            let v = SparseVector::unit(amb.dim(), amb.blade_pos(b));
            assert!(g.contains_vec(&v));
        }
    }

    #[test]
    fn generated_subalgebra_sl2() {
        let amb = Ambient::matrix(2, false);
        let e = amb.unit(0, 1, 0);
        let f = amb.unit(1, 0, 0);
        let nil = generated_subalgebra(amb.clone(), &[e.clone()]);
        assert_eq!(nil.dim(), 1);
        let full = generated_subalgebra(amb.clone(), &[e, f]);
        assert_eq!(full.dim(), 3);
        // idempotent and monotone
        let again = generated_subalgebra(amb, &full.basis().to_vec());
        assert!(again.equals(&full).unwrap());
    }

    #[test]
    fn generated_spin_and_wedge6_in_81() {
        let g = g_pq(8, 1);
        let amb = g.ambient.clone();
        let mut gens: Vec<SparseVector> = Vec::new();
        for b in amb.blades() {
            let k = b.count_ones();
            if k == 2 || k == 6 {
                gens.push(SparseVector::unit(amb.dim(), amb.blade_pos(*b)));
            }
        }
        let closed = generated_subalgebra(amb, &gens);
        assert_eq!(closed.dim(), 120);
        assert!(closed.equals(&g).unwrap());
    }

    #[test]
    fn centralizer_examples() {
        let g = g_pq(4, 1);
        let z = centralizer(&g, &g.basis().to_vec());
        assert_eq!(z.dim(), 0);
        let all = centralizer(&g, &[]);
        assert_eq!(all.dim(), g.dim());

        // diag(1,−1,0) in sl(3) → the 2-dim diagonal torus
        let sl3 = matrix_algebra(&MatrixFamily::SlR(3));
        let amb = sl3.ambient.clone();
        let mut h = SparseVector::new(amb.dim());
        h.set(amb.eidx(0, 0, 0), Scalar::one());
        h.set(amb.eidx(1, 1, 0), Scalar::from_int(-1));
        let z = centralizer(&sl3, &[h]);
        assert_eq!(z.dim(), 2);
    }

    #[test]
    fn matrix_family_dimensions() {
        assert_eq!(matrix_algebra(&MatrixFamily::SoDiag(vec![1, 1, 1, 1, -1, -1, -1, -1])).dim(), 28);
        assert_eq!(matrix_algebra(&MatrixFamily::SuDiag(vec![1, 1, -1, -1])).dim(), 15);
        assert_eq!(matrix_algebra(&MatrixFamily::SoStar(4)).dim(), 28);
        assert_eq!(matrix_algebra(&MatrixFamily::SpR(2)).dim(), 10);
        assert_eq!(matrix_algebra(&MatrixFamily::SpPq(1, 1)).dim(), 10);
        assert_eq!(matrix_algebra(&MatrixFamily::GlH(2)).dim(), 16);
        assert_eq!(matrix_algebra(&MatrixFamily::SlH(2)).dim(), 15);
        assert_eq!(matrix_algebra(&MatrixFamily::SlC(3)).dim(), 16);
        assert_eq!(matrix_algebra(&MatrixFamily::SoCDiag(vec![1, 1, 1, 1])).dim(), 12);
    }

    #[test]
    fn cartan_decompositions() {
        let so88 = matrix_algebra(&MatrixFamily::SoDiag(
            std::iter::repeat(1).take(8).chain(std::iter::repeat(-1).take(8)).collect(),
        ));
        let th = theta_minus_dagger(&so88.ambient);
        let (_k, p) = cartan_decomposition(&so88, &th).unwrap();
        assert_eq!(p.rank(), 64);

        let su88 = matrix_algebra(&MatrixFamily::SuDiag(
            std::iter::repeat(1).take(8).chain(std::iter::repeat(-1).take(8)).collect(),
        ));
        let th = theta_minus_dagger(&su88.ambient);
        let (_k, p) = cartan_decomposition(&su88, &th).unwrap();
        assert_eq!(p.rank(), 128);

        let so5 = matrix_algebra(&MatrixFamily::SoDiag(vec![1; 5]));
        let th = theta_minus_dagger(&so5.ambient);
        let (k, p) = cartan_decomposition(&so5, &th).unwrap();
        assert_eq!(p.rank(), 0);
        assert_eq!(k.dim(), 10);
    }

    #[test]
    fn matrix_product_associative() {
        use rand::{Rng, SeedableRng};
        let amb = Ambient::matrix(3, true);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut random_vec = || {
            let mut v = SparseVector::new(amb.dim());
            for _ in 0..5 {
                let idx = rng.gen_range(0..amb.dim());
                v.add_entry(idx, &Scalar::from_int(rng.gen_range(-3i64..=3)));
            }
            v
        };
        for _ in 0..20 {
            let x = random_vec();
            let y = random_vec();
            let z = random_vec();
            let a1 = amb.product(&amb.product(&x, &y), &z);
            let a2 = amb.product(&x, &amb.product(&y, &z));
            let mut d = a1;
            d.add_scaled(&a2, &Scalar::from_int(-1));
            assert!(d.is_zero());
        }
    }

    #[test]
    fn internal_unit_squares_to_minus_one() {
        let amb = Ambient::matrix(2, true);
        let mut ji = SparseVector::new(amb.dim());
        for i in 0..2 {
            ji.set(amb.eidx(i, i, 1), Scalar::one());
        }
        let sq = amb.product(&ji, &ji);
        let mut expect = amb.identity_matrix();
        expect.scale(&Scalar::from_int(-1));
        let mut d = sq;
        d.add_scaled(&expect, &Scalar::from_int(-1));
        assert!(d.is_zero());
    }
}
