//! The maximal Zariski-closure algebra g^φ of a spin(n,1) embedding, computed
//! two independent ways and cross-checked:
//!
//! * by definition: the subalgebra generated by the image of spin(n,1) and
//!   the centralizer of the embedded spin(n−1,1);
//! * by structure: the subalgebra generated by the image together with every
//!   isotypic component isomorphic to spherical harmonics (including the
//!   degree-0/trivial one, which carries the centralizer of the full image).
//!
//! Also: the sl(2) evenness criterion, bending directions, first-cohomology
//! vanishing reports, and the closed-form fullness condition.

use serde_json::{json, Value};

use crate::clifford::blade_from_indices;
use crate::lie::{centralizer, g_pq, generated_subalgebra, AmbientKind, LieAlgebra};
use crate::repdecomp::{
    decompose, lowering_closure, standard_frame, Decomposition, FrameFamily, SubalgebraFrame,
};
use crate::sparse::SparseVector;
use crate::subspace::{kernel, Op, Subspace};
use crate::{Error, Result};

/// An embedded spin(n,1) together with its spin(n−1,1) subalgebra and a frame
/// for weight computations.
pub struct SpinEmbedding {
    pub ambient_g: LieAlgebra,
    pub n: usize,
    pub image_l: LieAlgebra,
    pub image_l_prime: LieAlgebra,
    pub frame: SubalgebraFrame,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GphiMethod {
    ByCentralizer,
    BySpherical,
}

pub struct GphiResult {
    pub gphi: LieAlgebra,
    pub method: GphiMethod,
    pub is_full: bool,
    pub summand_report: Decomposition,
}

/// Assemble an embedding from parts, checking the structural invariants.
pub fn spin_embedding(
    ambient_g: LieAlgebra,
    n: usize,
    image_l: LieAlgebra,
    image_l_prime: LieAlgebra,
    frame: SubalgebraFrame,
) -> Result<SpinEmbedding> {
    if n < 2 {
        return Err(Error::Invalid("spin embeddings need n ≥ 2".into()));
    }
    if image_l.dim() != (n + 1) * n / 2 || image_l_prime.dim() != n * (n - 1) / 2 {
        return Err(Error::Invalid("embedded algebra dimensions do not match spin(n,1)".into()));
    }
    if !image_l.contains(&image_l_prime)? || !ambient_g.contains(&image_l)? {
        return Err(Error::Invalid("embedding containments violated".into()));
    }
    if !frame.l.equals(&image_l)? {
        return Err(Error::Invalid("frame does not realize the embedded algebra".into()));
    }
    Ok(SpinEmbedding { ambient_g, n, image_l, image_l_prime, frame })
}

/// The natural embedding spin(n,1) → g(p,q): ∧² of the sub-Clifford algebra
/// on {e₁,…,e_n, e_{p+1}}; the spin(n−1,1) subalgebra drops e_n.
pub fn clifford_spin_embedding(p: usize, q: usize, n: usize) -> Result<SpinEmbedding> {
    if !(p >= n && n >= 2 && q >= 1) {
        return Err(Error::Invalid(format!(
            "clifford_spin_embedding needs p ≥ n ≥ 2 and q ≥ 1, got ({p},{q},{n})"
        )));
    }
    let g = g_pq(p, q);
    let ambient = g.ambient.clone();
    let wedge2 = |idx: &[usize]| -> Result<Vec<SparseVector>> {
        let mut out = Vec::new();
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                let mask = blade_from_indices(&[i, j])?;
                out.push(SparseVector::unit(ambient.dim(), ambient.blade_pos(mask)));
            }
        }
        Ok(out)
    };
    let w: Vec<usize> = (1..=n).collect();
    let mut full: Vec<usize> = w.clone();
    full.push(p + 1);
    let mut sub: Vec<usize> = (1..n).collect();
    sub.push(p + 1);
    let image_l = LieAlgebra::from_vectors(ambient.clone(), wedge2(&full)?);
    let image_l_prime = LieAlgebra::from_vectors(ambient.clone(), wedge2(&sub)?);
    let frame = standard_frame(&image_l, FrameFamily::Spin { w, neg: p + 1 })?;
    spin_embedding(g, n, image_l, image_l_prime, frame)
}

/// Cartan-eigenvalue bound for decomposing the ambient adjoint module:
/// Clifford blades meet each rotation plane at most once (bound 1); matrix
/// adjoint weights are differences of module weights (bound 2).
fn ambient_bound(e: &SpinEmbedding) -> i64 {
    match e.ambient_g.ambient.kind {
        AmbientKind::CliffordEven(_) | AmbientKind::CliffordFull(_) => 1,
        AmbientKind::Matrix { .. } => 2,
    }
}

fn decompose_ambient(e: &SpinEmbedding) -> Result<Decomposition> {
    decompose(&e.frame, e.ambient_g.basis(), ambient_bound(e))
}

fn sandwich_assert(e: &SpinEmbedding, gphi: &LieAlgebra) {
    assert!(gphi.contains(&e.image_l).unwrap(), "g^φ must contain the image");
    let z_l = centralizer(&e.ambient_g, e.image_l.basis());
    for v in z_l.basis() {
        assert!(gphi.contains_vec(v), "g^φ must contain the image centralizer");
    }
    assert!(e.ambient_g.contains(gphi).unwrap(), "g^φ must sit inside g");
}

fn finish(e: &SpinEmbedding, gphi: LieAlgebra, method: GphiMethod, dec: Decomposition) -> Result<GphiResult> {
    sandwich_assert(e, &gphi);
    let is_full = gphi.equals(&e.ambient_g)?;
    Ok(GphiResult { gphi, method, is_full, summand_report: dec })
}

/// g^φ by its definition: the smallest subalgebra containing the image of
/// spin(n,1) and the centralizer of the embedded spin(n−1,1).
pub fn g_phi_by_centralizer(e: &SpinEmbedding) -> Result<GphiResult> {
    let z = centralizer(&e.ambient_g, e.image_l_prime.basis());
    let mut gens: Vec<SparseVector> = e.image_l.basis().to_vec();
    gens.extend_from_slice(z.basis());
    let gphi = generated_subalgebra(e.ambient_g.ambient.clone(), &gens);
    let dec = decompose_ambient(e)?;
    finish(e, gphi, GphiMethod::ByCentralizer, dec)
}

/// g^φ by structure: the subalgebra generated by the image and every
/// spherical-harmonics isotypic component (degree 0 included).
pub fn g_phi_by_spherical(e: &SpinEmbedding) -> Result<GphiResult> {
    let dec = decompose_ambient(e)?;
    let mut gens: Vec<SparseVector> = e.image_l.basis().to_vec();
    for s in &dec.summands {
        if s.spherical {
            gens.extend_from_slice(s.isotypic.basis());
        }
    }
    let gphi = generated_subalgebra(e.ambient_g.ambient.clone(), &gens);
    finish(e, gphi, GphiMethod::BySpherical, dec)
}

/// Run both definitions and assert they agree.
pub fn g_phi_both(e: &SpinEmbedding) -> Result<(GphiResult, GphiResult)> {
    let by_c = g_phi_by_centralizer(e)?;
    let by_s = g_phi_by_spherical(e)?;
    assert!(
        by_c.gphi.equals(&by_s.gphi)?,
        "centralizer and spherical definitions of g^φ disagree ({} vs {})",
        by_c.gphi.dim(),
        by_s.gphi.dim()
    );
    Ok((by_c, by_s))
}

/// g^φ for an sl(2)-triple: the even-weight part of the ambient under ad(H),
/// i.e. the fixed space of the eigenvalue-parity involution. Returns the
/// result plus the evenness flag (all weights even ⟺ g^φ = g).
pub fn sl2_gphi(
    ambient_g: &LieAlgebra,
    h: SparseVector,
    e: SparseVector,
    f: SparseVector,
) -> Result<(GphiResult, bool)> {
    let ambient = ambient_g.ambient.clone();
    let l = LieAlgebra::from_vectors(ambient.clone(), vec![h.clone(), e.clone(), f.clone()]);
    if l.dim() != 3 {
        return Err(Error::Invalid("not an sl(2)-triple: wrong span".into()));
    }
    let frame = standard_frame(&l, FrameFamily::Sl2 { h, e, f })?;
    let bound = ambient_g.dim() as i64;
    let dec = decompose(&frame, ambient_g.basis(), bound)?;
    let even = dec.summands.iter().all(|s| s.spherical);

    let mut gens: Vec<SparseVector> = l.basis().to_vec();
    let mut even_span = Subspace::new(ambient.dim());
    for s in &dec.summands {
        if s.spherical {
            gens.extend_from_slice(s.isotypic.basis());
            for v in s.isotypic.basis() {
                even_span.insert(v.clone());
            }
        }
    }
    let gphi = generated_subalgebra(ambient, &gens);
    assert!(gphi.space.equals(&even_span), "even part is not already closed");
    let is_full = gphi.equals(ambient_g)?;
    assert_eq!(is_full, even, "evenness must coincide with fullness");
    Ok((GphiResult { gphi, method: GphiMethod::BySpherical, is_full, summand_report: dec }, even))
}

/// Bending data: the centralizer of the full image (the u-part carrier) and
/// one vector v_j per multiplicity layer, v_j = Σ_i v_i^{(j)} over the
/// nontrivial spherical isotypic components, where v_i^{(j)} spans the unique
/// spin(n−1,1)-invariant line of the j-th irreducible copy. Verifies that
/// image ∪ {v_j} ∪ centralizer generates g^φ.
pub fn bending_directions(e: &SpinEmbedding) -> Result<(Subspace, Vec<SparseVector>)> {
    let dec = decompose_ambient(e)?;
    let ambient = e.ambient_g.ambient.clone();
    let z_l = centralizer(&e.ambient_g, e.image_l.basis());

    let lp_store: Vec<_> = e
        .image_l_prime
        .basis()
        .iter()
        .map(|x| {
            let a = ambient.clone();
            let x = x.clone();
            move |v: &SparseVector| a.bracket(&x, v)
        })
        .collect();
    let lp_ops: Vec<Op> = lp_store.iter().map(|f| f as Op).collect();

    let max_layers = dec
        .summands
        .iter()
        .filter(|s| s.spherical && s.highest_weight.iter().any(|&x| x != 0))
        .map(|s| s.multiplicity)
        .max()
        .unwrap_or(0);
    let mut v_list: Vec<SparseVector> = vec![SparseVector::new(ambient.dim()); max_layers];
    for s in &dec.summands {
        if !s.spherical || s.highest_weight.iter().all(|&x| x == 0) {
            continue;
        }
        for (j, hw) in s.highest_vectors.iter().enumerate() {
            let copy = lowering_closure(&e.frame, std::slice::from_ref(hw));
            assert_eq!(copy.rank(), s.dim, "copy is not a single irreducible");
            let inv = kernel(copy.basis(), &lp_ops);
            assert_eq!(
                inv.len(),
                1,
                "spherical copy must have a 1-dimensional invariant line, got {}",
                inv.len()
            );
            v_list[j].add_scaled(&inv[0], &crate::scalar::Scalar::one());
        }
    }

    let mut gens: Vec<SparseVector> = e.image_l.basis().to_vec();
    gens.extend(v_list.iter().cloned());
    gens.extend_from_slice(z_l.basis());
    let closed = generated_subalgebra(ambient, &gens);
    let gphi = g_phi_by_centralizer(e)?.gphi;
    assert!(
        closed.equals(&gphi)?,
        "bending generators do not recover g^φ ({} vs {})",
        closed.dim(),
        gphi.dim()
    );
    Ok((z_l.space, v_list))
}

/// Which simple family the acting algebra belongs to, for the cohomology
/// vanishing criterion.
pub enum RagFamily {
    /// so(n,1)/spin(n,1) with n ≥ 3.
    So { n: usize },
    /// su(n,1) blocks (A-type frames).
    Su,
    /// Any other simple algebra: no exceptions, H¹ always vanishes.
    OtherSimple,
}

pub enum RaghunathanReport {
    MustVanish,
    /// (weight, multiplicity) of each summand that matches an exception.
    MayNotVanish(Vec<(Vec<i64>, usize)>),
}

/// First-cohomology report: H¹(Γ, module) must vanish unless some summand
/// matches the family's exception list — spherical harmonics (any degree,
/// trivial included) for so(n,1); Sym^k of the standard module or its dual
/// with k ≥ 1 for su(n,1); nothing for other simple algebras.
pub fn raghunathan_report(dec: &Decomposition, family: RagFamily) -> Result<RaghunathanReport> {
    let witnesses: Vec<(Vec<i64>, usize)> = match family {
        RagFamily::So { n } => {
            if n < 3 {
                return Err(Error::Invalid(
                    "vanishing criterion covers n ≥ 3; use the sl2 path for n = 2".into(),
                ));
            }
            dec.summands
                .iter()
                .filter(|s| s.spherical)
                .map(|s| (s.highest_weight.clone(), s.multiplicity))
                .collect()
        }
        RagFamily::Su => dec
            .summands
            .iter()
            .filter(|s| s.spherical && s.highest_weight.iter().any(|&x| x != 0))
            .map(|s| (s.highest_weight.clone(), s.multiplicity))
            .collect(),
        RagFamily::OtherSimple => Vec::new(),
    };
    Ok(if witnesses.is_empty() {
        RaghunathanReport::MustVanish
    } else {
        RaghunathanReport::MayNotVanish(witnesses)
    })
}

/// Closed-form fullness condition: with i ∈ {1,2,3,4} and m ≡ i (mod 4),
/// either m − n ≥ i + 2, or m < 10 and n ≤ 6.
pub fn thm316_condition(p: usize, q: usize, n: usize) -> Result<bool> {
    if !(p >= n && n >= 2 && q >= 1) {
        return Err(Error::Invalid(format!(
            "condition needs p ≥ n ≥ 2 and q ≥ 1, got ({p},{q},{n})"
        )));
    }
    let m = p + q;
    let i = if m % 4 == 0 { 4 } else { m % 4 };
    Ok(m - n >= i + 2 || (m < 10 && n <= 6))
}

/// The CLI-facing report for a (p,q,n) run.
pub fn report_json(
    p: usize,
    q: usize,
    n: usize,
    e: &SpinEmbedding,
    by_c: &GphiResult,
    by_s: &GphiResult,
) -> Value {
    json!({
        "p": p,
        "q": q,
        "n": n,
        "dim_g": e.ambient_g.dim(),
        "dim_gphi": by_c.gphi.dim(),
        "is_full": by_c.is_full,
        "methods_agree": by_c.gphi.equals(&by_s.gphi).unwrap_or(false),
        "summands": by_s.summand_report.to_json(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Ambient;
    use crate::scalar::Scalar;
    use crate::subspace::simultaneous_eigenspaces;

    #[test]
    fn clifford_embedding_shapes() {
        let e = clifford_spin_embedding(4, 3, 4).unwrap();
        assert_eq!(e.image_l.dim(), 10);
        assert_eq!(e.image_l_prime.dim(), 6);
        assert_eq!(e.ambient_g.dim(), 28);

        let e = clifford_spin_embedding(6, 1, 6).unwrap();
        assert_eq!(e.image_l.dim(), 21);
        assert_eq!(e.ambient_g.dim(), 28);

        let e = clifford_spin_embedding(2, 1, 2).unwrap();
        assert_eq!(e.image_l.dim(), 3);
        assert!(e.image_l.equals(&e.ambient_g).unwrap());

        assert!(clifford_spin_embedding(1, 1, 2).is_err());
        assert!(clifford_spin_embedding(4, 0, 3).is_err());
    }

    #[test]
    fn gphi_full_on_g43() {
        let e = clifford_spin_embedding(4, 3, 4).unwrap();
        let (by_c, by_s) = g_phi_both(&e).unwrap();
        assert!(by_c.is_full && by_s.is_full);
        assert_eq!(by_c.gphi.dim(), 28);
        assert!(thm316_condition(4, 3, 4).unwrap());
    }

    #[test]
    fn gphi_full_on_g61() {
        let e = clifford_spin_embedding(6, 1, 6).unwrap();
        let (by_c, by_s) = g_phi_both(&e).unwrap();
        assert!(by_c.is_full);
        assert_eq!(by_s.gphi.dim(), 28);
        // g(6,1) = spin(6,1) ⊕ ℝ^{6,1}: exactly one nontrivial spherical piece
        let spherical: Vec<_> =
            by_s.summand_report.summands.iter().filter(|s| s.spherical).collect();
        assert_eq!(spherical.len(), 1);
        assert_eq!(spherical[0].dim, 7);
    }

    #[test]
    fn self_embedding_returns_l() {
        let e = clifford_spin_embedding(4, 1, 4).unwrap();
        assert!(e.image_l.equals(&e.ambient_g).unwrap());
        let (by_c, by_s) = g_phi_both(&e).unwrap();
        assert!(by_c.is_full && by_s.is_full);
        // only the adjoint summand, which is not spherical for n ≥ 3
        assert_eq!(by_s.summand_report.summands.len(), 1);
        assert!(!by_s.summand_report.summands[0].spherical);
    }

    #[test]
    fn sl2_gphi_in_sl3() {
        let sl3 = crate::lie::matrix_algebra(&crate::lie::MatrixFamily::SlR(3));
        let ambient = sl3.ambient.clone();
        let e01 = ambient.unit(0, 1, 0);
        let e10 = ambient.unit(1, 0, 0);
        let diag = |a: i64, b: i64, c: i64| {
            let mut v = SparseVector::new(ambient.dim());
            v.set(ambient.eidx(0, 0, 0), Scalar::from_int(a));
            v.set(ambient.eidx(1, 1, 0), Scalar::from_int(b));
            v.set(ambient.eidx(2, 2, 0), Scalar::from_int(c));
            v
        };

        // standard block triple: odd weights appear, g^φ = gl(2)-block ∩ sl3
        let (res, even) = sl2_gphi(&sl3, diag(1, -1, 0), e01.clone(), e10.clone()).unwrap();
        assert!(!even && !res.is_full);
        assert_eq!(res.gphi.dim(), 4);

        // principal triple: all weights even, g^φ = sl(3)
        let mut ep = e01.clone();
        ep.add_entry(ambient.eidx(1, 2, 0), &Scalar::one());
        let mut fp = e10.scaled(&Scalar::from_int(2));
        fp.add_entry(ambient.eidx(2, 1, 0), &Scalar::from_int(2));
        let (res, even) = sl2_gphi(&sl3, diag(2, 0, -2), ep, fp).unwrap();
        assert!(even && res.is_full);

        // sl(2) itself
        let ambient2 = Ambient::matrix(2, false);
        let h = {
            let mut v = SparseVector::new(ambient2.dim());
            v.set(ambient2.eidx(0, 0, 0), Scalar::one());
            v.set(ambient2.eidx(1, 1, 0), Scalar::from_int(-1));
            v
        };
        let sl2 = LieAlgebra::from_vectors(
            ambient2.clone(),
            vec![h.clone(), ambient2.unit(0, 1, 0), ambient2.unit(1, 0, 0)],
        );
        let (res, even) =
            sl2_gphi(&sl2, h, ambient2.unit(0, 1, 0), ambient2.unit(1, 0, 0)).unwrap();
        assert!(even && res.is_full);
    }

    #[test]
    fn n2_pathway_agrees_with_sl2() {
        let e = clifford_spin_embedding(3, 1, 2).unwrap();
        let (by_c, by_s) = g_phi_both(&e).unwrap();
        assert_eq!(by_c.gphi.dim(), by_s.gphi.dim());

        // build a split triple inside the image: H spans the boost line,
        // E and F are the ±2 eigenvectors of ad(H) scaled so [E,F] = H
        let ambient = e.ambient_g.ambient.clone();
        let mask = blade_from_indices(&[1, 4]).unwrap();
        let h = SparseVector::unit(ambient.dim(), ambient.blade_pos(mask));
        let ad_h = |v: &SparseVector| ambient.bracket(&h, v);
        let hints = vec![(-2..=2).map(Scalar::from_int).collect::<Vec<_>>()];
        let parts = simultaneous_eigenspaces(e.image_l.basis(), &[&ad_h], &hints).unwrap();
        let pick = |val: i64| {
            parts
                .iter()
                .find(|p| p.eigen[0] == Scalar::from_int(val))
                .map(|p| p.basis[0].clone())
                .unwrap()
        };
        let ev = pick(2);
        let mut fv = pick(-2);
        // normalize [E,F] = H
        let comm = ambient.bracket(&ev, &fv);
        let (idx, c) = comm.iter().next().unwrap();
        let h_c = h.get(idx).cloned().unwrap();
        fv.scale(&h_c.div(c));
        let (res, _even) = sl2_gphi(&e.ambient_g, h, ev, fv).unwrap();
        assert_eq!(res.gphi.dim(), by_c.gphi.dim());
        assert!(res.gphi.equals(&by_c.gphi).unwrap());
    }

    #[test]
    fn bending_on_g43() {
        let e = clifford_spin_embedding(4, 3, 4).unwrap();
        let (center_part, v_list) = bending_directions(&e).unwrap();
        // Three spherical standard summands and a 3-dim centralizer
        assert_eq!(v_list.len(), 3);
        assert_eq!(center_part.rank(), 3);
        for v in &v_list {
            assert!(!v.is_zero());
        }
    }

    #[test]
    fn bending_on_self_embedding_is_empty() {
        let e = clifford_spin_embedding(4, 1, 4).unwrap();
        let (center_part, v_list) = bending_directions(&e).unwrap();
        assert!(v_list.is_empty());
        assert_eq!(center_part.rank(), 0);
    }

    #[test]
    fn raghunathan_reports() {
        let e = clifford_spin_embedding(4, 3, 4).unwrap();
        let dec = decompose_ambient(&e).unwrap();
        match raghunathan_report(&dec, RagFamily::So { n: 4 }).unwrap() {
            RaghunathanReport::MayNotVanish(ws) => {
                assert_eq!(ws, vec![(vec![1, 0], 3), (vec![0, 0], 3)]);
            }
            _ => panic!("expected witnesses"),
        }
        assert!(matches!(
            raghunathan_report(&dec, RagFamily::OtherSimple).unwrap(),
            RaghunathanReport::MustVanish
        ));
        assert!(raghunathan_report(&dec, RagFamily::So { n: 2 }).is_err());

        let e = clifford_spin_embedding(4, 1, 4).unwrap();
        let dec = decompose_ambient(&e).unwrap();
        assert!(matches!(
            raghunathan_report(&dec, RagFamily::So { n: 4 }).unwrap(),
            RaghunathanReport::MustVanish
        ));
    }

    #[test]
    fn thm316_examples() {
        assert!(thm316_condition(8, 2, 6).unwrap());
        assert!(thm316_condition(7, 1, 6).unwrap());
        assert!(thm316_condition(9, 3, 2).unwrap());
        assert!(thm316_condition(1, 1, 2).is_err());
    }
}
