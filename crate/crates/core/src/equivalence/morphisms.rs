use crate::bidcpo::{validate_bidcpo, BiDcpo};
use crate::bitset::BitSet;
use crate::error::{Code, Diagnostic, Error, Result};
use crate::kospace::CRelation;
use crate::order::subfam::find_bounded;
use crate::order::{set_names, FinLattice, FinPoset, WeakRel};
use crate::polarity::{GaloisMorphism, Polarity};

use super::objects::{bidcpo_to_kospace_full, kospace_to_bidcpo_full, BiDcpoSpace, SpaceBiDcpo};

/// (K ↦ R[K], U ↦ R⇐[U]) between the bi-dcpos of the two spaces.
pub fn crelation_to_galois(r: &CRelation) -> Result<GaloisMorphism> {
    let s = kospace_to_bidcpo_full(r.source())?;
    let t = kospace_to_bidcpo_full(r.target())?;
    crelation_to_galois_with(r, &s, &t)
}

pub(crate) fn crelation_to_galois_with(r: &CRelation, s: &SpaceBiDcpo, t: &SpaceBiDcpo) -> Result<GaloisMorphism> {
    let (src, tgt) = (r.source(), r.target());
    let mut fwd = vec![0; src.kfam().len()];
    for (i, k) in src.kfam().iter().enumerate() {
        let img = r.rel().image(k);
        fwd[s.kidx[i]] = t.kidx[tgt.k_index(&img).expect("c-relation image")];
    }
    let mut bwd = vec![0; tgt.ofam().len()];
    for (i, u) in tgt.ofam().iter().enumerate() {
        let pre = r.rel().preimage_univ(u);
        bwd[t.oidx[i]] = s.oidx[src.o_index(&pre).expect("c-relation preimage")];
    }
    GaloisMorphism::new(s.bidcpo.pol().clone(), t.bidcpo.pol().clone(), fwd, bwd)
        .map_err(|e| Error::theorem("c-relations give Galois morphisms", e.to_string()))
}

fn bidcpo_of(p: &Polarity) -> Result<BiDcpo> {
    validate_bidcpo(p)
}

/// x R y iff ♦(k_x) ⋪ u_y on the completely prime pairs.
pub fn galois_to_crelation(m: &GaloisMorphism) -> Result<CRelation> {
    let x = bidcpo_to_kospace_full(&bidcpo_of(m.source())?)?;
    let y = bidcpo_to_kospace_full(&bidcpo_of(m.target())?)?;
    galois_to_crelation_with(m, &x, &y)
}

pub(crate) fn galois_to_crelation_with(m: &GaloisMorphism, x: &BiDcpoSpace, y: &BiDcpoSpace) -> Result<CRelation> {
    let t = m.target();
    let ny = y.points.len();
    let rows = x
        .points
        .iter()
        .map(|&(kx, _)| BitSet::from_indices(ny, (0..ny).filter(|&j| !t.rel(m.fwd()[kx], y.points[j].1))))
        .collect();
    let rel = WeakRel::new(x.space.base().clone(), y.space.base().clone(), rows)
        .map_err(|e| Error::theorem("Galois morphisms give weakening relations", e.to_string()))?;
    CRelation::new(x.space.clone(), y.space.clone(), rel)
        .map_err(|e| Error::theorem("Galois morphisms give c-relations", e.to_string()))
}

/// c-relation -> Galois morphism -> c-relation, compared along the point isomorphisms.
pub fn crelation_roundtrip(r: &CRelation) -> Result<bool> {
    let s = kospace_to_bidcpo_full(r.source())?;
    let t = kospace_to_bidcpo_full(r.target())?;
    let m = crelation_to_galois_with(r, &s, &t)?;
    let xs = bidcpo_to_kospace_full(&s.bidcpo)?;
    let ys = bidcpo_to_kospace_full(&t.bidcpo)?;
    let back = galois_to_crelation_with(&m, &xs, &ys)?;
    let fx = super::objects::point_iso(r.source(), &s, &xs)?;
    let fy = super::objects::point_iso(r.target(), &t, &ys)?;
    let (nx, ny) = (r.source().len(), r.target().len());
    Ok((0..nx).all(|a| (0..ny).all(|b| r.rel().related(a, b) == back.rel().related(fx[a], fy[b]))))
}

/// Galois morphism -> c-relation -> Galois morphism, compared along k ↦ k̂, u ↦ û.
pub fn galois_roundtrip(m: &GaloisMorphism) -> Result<bool> {
    let x = bidcpo_to_kospace_full(&bidcpo_of(m.source())?)?;
    let y = bidcpo_to_kospace_full(&bidcpo_of(m.target())?)?;
    let r = galois_to_crelation_with(m, &x, &y)?;
    let s = kospace_to_bidcpo_full(&x.space)?;
    let t = kospace_to_bidcpo_full(&y.space)?;
    let back = crelation_to_galois_with(&r, &s, &t)?;
    let kmap1 = |k: usize| s.kidx[x.khat[k]];
    let kmap2 = |k: usize| t.kidx[y.khat[k]];
    let omap1 = |u: usize| s.oidx[x.ohat[u]];
    let omap2 = |u: usize| t.oidx[y.ohat[u]];
    let fwd_ok = (0..m.source().klen()).all(|k| back.fwd()[kmap1(k)] == kmap2(m.fwd()[k]));
    let bwd_ok = (0..m.target().olen()).all(|u| back.bwd()[omap2(u)] == omap1(m.bwd()[u]));
    Ok(fwd_ok && bwd_ok)
}

pub fn lawson_dual(b: &BiDcpo) -> BiDcpo {
    b.lawson_dual()
}

pub fn lawson_dual_morphism(m: &GaloisMorphism) -> GaloisMorphism {
    m.swap()
}

/// First codirected F ⊆ K₁ with ♦(⋀F) ≠ ⋀♦[F], or directed I ⊆ O₂ with □(⋁I) ≠ ⋁□[I].
pub fn preservation_witness(m: &GaloisMorphism) -> Result<Option<String>> {
    let (s, t) = (m.source(), m.target());
    let (k1, k2) = (s.k_poset()?, t.k_poset()?);
    let (o1, o2) = (s.o_poset()?, t.o_poset()?);
    let fwd = m.fwd();
    let bwd = m.bwd();
    let set = |n: usize, it: &mut dyn Iterator<Item = usize>| BitSet::from_indices(n, it);
    if let Some(f) = find_bounded(s.klen(), |a, i| k1.leq(a, i), |f| {
        let lhs = k1.meet_of(&set(s.klen(), &mut f.iter().copied())).map(|x| fwd[x]);
        let rhs = k2.meet_of(&set(t.klen(), &mut f.iter().map(|&i| fwd[i])));
        (lhs != rhs).then(|| f.to_vec())
    })? {
        let n: Vec<&str> = f.iter().map(|&i| s.kname(i)).collect();
        return Ok(Some(format!("forward map does not preserve the meet of [{}]", n.join(", "))));
    }
    if let Some(f) = find_bounded(t.olen(), |a, i| o2.leq(i, a), |f| {
        let lhs = o2.join_of(&set(t.olen(), &mut f.iter().copied())).map(|x| bwd[x]);
        let rhs = o1.join_of(&set(s.olen(), &mut f.iter().map(|&i| bwd[i])));
        (lhs != rhs).then(|| f.to_vec())
    })? {
        let n: Vec<&str> = f.iter().map(|&i| t.oname(i)).collect();
        return Ok(Some(format!("backward map does not preserve the join of [{}]", n.join(", "))));
    }
    Ok(None)
}

/// (Up(D), D, ∋) with upsets named by their members.
pub fn scott_polarity(d: &FinPoset) -> Result<(Polarity, Vec<BitSet>)> {
    let ups = d.upsets()?;
    let (p, kperm, _) = Polarity::from_fn_unsorted(set_names(d.names(), &ups), d.names().to_vec(), |k, x| ups[k].contains(x))?;
    let mut sorted = ups.clone();
    for (old, &new) in kperm.iter().enumerate() {
        sorted[new] = ups[old].clone();
    }
    Ok((p, sorted))
}

/// (f⁻¹[-], f) for a monotone f: D₂ -> D₁.
pub fn scott_fn_to_galois(d1: &FinPoset, d2: &FinPoset, f: &[usize]) -> Result<GaloisMorphism> {
    if f.len() != d2.len() || f.iter().any(|&y| y >= d1.len()) {
        return Err(Error::Invalid(vec![Diagnostic::new(Code::NotFunction, "map is not a function D2 -> D1")]));
    }
    if let Some((a, b)) = d2.monotone_violation(d1, f) {
        return Err(Error::Invalid(vec![Diagnostic::new(
            Code::NotMonotone,
            format!("{} <= {} but {} </= {}", d2.name(a), d2.name(b), d1.name(f[a]), d1.name(f[b])),
        )]));
    }
    let (p1, u1) = scott_polarity(d1)?;
    let (p2, u2) = scott_polarity(d2)?;
    let fwd = u1
        .iter()
        .map(|u| {
            let pre = BitSet::from_indices(d2.len(), (0..d2.len()).filter(|&y| u.contains(f[y])));
            u2.iter().position(|v| *v == pre).expect("preimage of an upset")
        })
        .collect();
    GaloisMorphism::new(p1, p2, fwd, f.to_vec())
}

/// A pair of monotone maps with fwd(x) <= y iff x <= bwd(y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointPair {
    source: FinLattice,
    target: FinLattice,
    fwd: Vec<usize>,
    bwd: Vec<usize>,
}

impl AdjointPair {
    pub fn new(source: FinLattice, target: FinLattice, fwd: Vec<usize>, bwd: Vec<usize>) -> Result<Self> {
        if fwd.len() != source.len() || bwd.len() != target.len() {
            return Err(Error::Invalid(vec![Diagnostic::new(Code::NotFunction, "tables do not match the lattices")]));
        }
        for x in 0..source.len() {
            for y in 0..target.len() {
                if target.leq(fwd[x], y) != source.leq(x, bwd[y]) {
                    return Err(Error::Invalid(vec![Diagnostic::new(
                        Code::Adjunction,
                        format!("x = {}, y = {}", source.name(x), target.name(y)),
                    )]));
                }
            }
        }
        Ok(AdjointPair { source, target, fwd, bwd })
    }

    pub fn source(&self) -> &FinLattice {
        &self.source
    }

    pub fn target(&self) -> &FinLattice {
        &self.target
    }

    pub fn fwd(&self) -> &[usize] {
        &self.fwd
    }

    pub fn bwd(&self) -> &[usize] {
        &self.bwd
    }
}

/// (R[-], R⇐[-]) between the upset lattices.
pub fn relation_to_adjoint(r: &WeakRel) -> Result<AdjointPair> {
    let a = crate::order::upset_lattice(r.source())?;
    let b = crate::order::upset_lattice(r.target())?;
    let fwd = a.sets.iter().map(|s| b.element_of(&r.image(s)).expect("image of an upset")).collect();
    let bwd = b.sets.iter().map(|s| a.element_of(&r.preimage_univ(s)).expect("preimage of an upset")).collect();
    AdjointPair::new(a.lattice, b.lattice, fwd, bwd).map_err(|e| Error::theorem("relations give adjoint pairs", e.to_string()))
}

/// x R y iff ♦(↑x) ⊄ Y∖↓y, for an adjoint pair between Up(X) and Up(Y).
pub fn adjoint_to_relation(p: &AdjointPair, x: &FinPoset, y: &FinPoset) -> Result<WeakRel> {
    let a = crate::order::upset_lattice(x)?;
    let b = crate::order::upset_lattice(y)?;
    if a.lattice != *p.source() || b.lattice != *p.target() {
        return Err(Error::Mismatch("adjoint pair is not between the upset lattices".into()));
    }
    let rows = (0..x.len())
        .map(|i| {
            let img = &b.sets[p.fwd()[a.element_of(x.up(i)).expect("principal upset")]];
            BitSet::from_indices(y.len(), (0..y.len()).filter(|&j| !img.is_subset(&y.down(j).complement())))
        })
        .collect();
    WeakRel::new(x.clone(), y.clone(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::kospace_to_bidcpo;
    use crate::kospace::KoSpace;
    use crate::polarity::all_galois_morphisms;

    fn vee() -> FinPoset {
        FinPoset::new(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap()
    }

    #[test]
    fn identity_goes_to_identity() {
        let s = KoSpace::from_dcpo(&vee()).unwrap();
        let m = crelation_to_galois(&CRelation::identity(&s)).unwrap();
        assert_eq!(m, GaloisMorphism::identity(kospace_to_bidcpo(&s).unwrap().pol()));
        let r = galois_to_crelation(&m).unwrap();
        assert_eq!(r.rel(), &WeakRel::identity(r.source().base()));
        assert!(crelation_roundtrip(&CRelation::identity(&s)).unwrap());
        assert!(galois_roundtrip(&m).unwrap());
    }

    #[test]
    fn hypergraph_backward_is_preimage() {
        let s = KoSpace::from_dcpo(&vee()).unwrap();
        let f = [0, 1, 1];
        let r = CRelation::hypergraph(&s, &s, &f).unwrap();
        let via = kospace_to_bidcpo_full(&s).unwrap();
        let m = crelation_to_galois_with(&r, &via, &via).unwrap();
        for (i, u) in s.ofam().iter().enumerate() {
            let pre = BitSet::from_indices(3, (0..3).filter(|&x| u.contains(f[x])));
            assert_eq!(m.bwd()[via.oidx[i]], via.oidx[s.o_index(&pre).unwrap()]);
        }
        assert!(crelation_roundtrip(&r).unwrap());
    }

    #[test]
    fn all_galois_morphisms_roundtrip_and_preserve() {
        let c = FinPoset::chain(&["a", "b"]).unwrap();
        let b1 = kospace_to_bidcpo(&KoSpace::from_dcpo(&c).unwrap()).unwrap();
        let b2 = kospace_to_bidcpo(&KoSpace::minimal(&vee())).unwrap();
        let mut seen = 0;
        for (s, t) in [(&b1, &b2), (&b2, &b1), (&b1, &b1)] {
            let ms = all_galois_morphisms(s.pol(), t.pol()).unwrap();
            seen += ms.len();
            for m in ms {
                assert!(galois_roundtrip(&m).unwrap());
                assert!(preservation_witness(&m).unwrap().is_none());
                assert_eq!(lawson_dual_morphism(&lawson_dual_morphism(&m)), m);
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn scott_identity_and_constant() {
        let d = FinPoset::chain(&["a", "b"]).unwrap();
        let (p, _) = scott_polarity(&d).unwrap();
        assert_eq!(scott_fn_to_galois(&d, &d, &[0, 1]).unwrap(), GaloisMorphism::identity(&p));
        // constant map to the top b: U ↦ D or ∅ depending on b ∈ U
        let m = scott_fn_to_galois(&d, &d, &[1, 1]).unwrap();
        for (k, name) in p.knames().iter().enumerate() {
            let target = if name.contains('b') { "{a,b}" } else { "{}" };
            assert_eq!(p.kname(m.fwd()[k]), target);
        }
        let e = scott_fn_to_galois(&d, &d, &[1, 0]).unwrap_err();
        assert!(e.has_code(Code::NotMonotone));
    }

    #[test]
    fn scott_bijection_up_to_three_points() {
        let posets = [
            FinPoset::empty(),
            FinPoset::antichain(&["a"]).unwrap(),
            FinPoset::chain(&["a", "b"]).unwrap(),
            FinPoset::antichain(&["a", "b"]).unwrap(),
            FinPoset::chain(&["a", "b", "c"]).unwrap(),
            vee(),
            FinPoset::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap(),
            FinPoset::new(&["a", "b", "c"], &[("a", "b")]).unwrap(),
            FinPoset::antichain(&["a", "b", "c"]).unwrap(),
        ];
        for d1 in &posets {
            for d2 in &posets {
                let (p1, _) = scott_polarity(d1).unwrap();
                let (p2, _) = scott_polarity(d2).unwrap();
                let ms = all_galois_morphisms(&p1, &p2).unwrap();
                let mut monotone = 0;
                let total = d1.len().pow(d2.len() as u32);
                for code in 0..total {
                    let f: Vec<usize> = (0..d2.len()).map(|i| code / d1.len().pow(i as u32) % d1.len()).collect();
                    if let Ok(m) = scott_fn_to_galois(d1, d2, &f) {
                        monotone += 1;
                        assert!(ms.contains(&m));
                        assert_eq!(m.bwd(), &f[..]);
                    }
                }
                assert_eq!(ms.len(), monotone);
            }
        }
    }

    #[test]
    fn adjoint_pairs_from_relations() {
        let x = vee();
        let y = FinPoset::chain(&["p", "q"]).unwrap();
        for m in 0u32..1 << 6 {
            let rows: Vec<BitSet> = (0..3).map(|i| BitSet::from_indices(2, (0..2).filter(|j| m >> (i * 2 + j) & 1 == 1))).collect();
            let r = WeakRel::closure(x.clone(), y.clone(), &rows);
            let a = relation_to_adjoint(&r).unwrap();
            assert_eq!(adjoint_to_relation(&a, &x, &y).unwrap(), r);
        }
    }
}
