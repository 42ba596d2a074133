use crate::bitset::BitSet;
use crate::error::{check, Code, Diagnostic, Error, Result};
use crate::order::subfam::find_bounded;
use crate::order::WeakRel;

use super::space::{family_name, KoSpace};

/// A weakening relation between ko-spaces with R[K] a k-set for every k-set K
/// and R⇐[U] an o-set for every o-set U.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CRelation {
    source: KoSpace,
    target: KoSpace,
    rel: WeakRel,
}

impl CRelation {
    pub fn new(source: KoSpace, target: KoSpace, rel: WeakRel) -> Result<Self> {
        if rel.source() != source.base() || rel.target() != target.base() {
            return Err(Error::Mismatch("relation posets differ from the ko-space posets".into()));
        }
        let mut ds = Vec::new();
        for k in source.kfam() {
            let img = rel.image(k);
            if target.k_index(&img).is_none() {
                ds.push(Diagnostic::new(
                    Code::CRelImage,
                    format!("image of k-set {} is {}, not a k-set", source.base().set_name(k), target.base().set_name(&img)),
                ));
            }
        }
        for u in target.ofam() {
            let pre = rel.preimage_univ(u);
            if source.o_index(&pre).is_none() {
                ds.push(Diagnostic::new(
                    Code::CRelPreimage,
                    format!("universal preimage of o-set {} is {}, not an o-set", target.base().set_name(u), source.base().set_name(&pre)),
                ));
            }
        }
        check(ds)?;
        Ok(CRelation { source, target, rel })
    }

    pub fn from_pairs<S: AsRef<str>>(source: KoSpace, target: KoSpace, pairs: &[(S, S)]) -> Result<Self> {
        let rel = WeakRel::from_pairs(source.base().clone(), target.base().clone(), pairs)?;
        Self::new(source, target, rel)
    }

    /// The order of the space as a relation.
    pub fn identity(s: &KoSpace) -> Self {
        CRelation { source: s.clone(), target: s.clone(), rel: WeakRel::identity(s.base()) }
    }

    /// Hypergraph of a monotone map, x R y iff f(x) <= y.
    pub fn hypergraph(source: &KoSpace, target: &KoSpace, f: &[usize]) -> Result<Self> {
        let rel = WeakRel::hypergraph(source.base(), target.base(), f)?;
        Self::new(source.clone(), target.clone(), rel)
    }

    pub fn source(&self) -> &KoSpace {
        &self.source
    }

    pub fn target(&self) -> &KoSpace {
        &self.target
    }

    pub fn rel(&self) -> &WeakRel {
        &self.rel
    }

    pub fn compose(&self, next: &CRelation) -> Result<CRelation> {
        if self.target != next.source {
            return Err(Error::Mismatch("composite of c-relations with different middle spaces".into()));
        }
        let rel = self.rel.compose(&next.rel)?;
        CRelation::new(self.source.clone(), next.target.clone(), rel)
            .map_err(|e| Error::theorem("c-relations compose", e.to_string()))
    }

    /// Converse relation between the de Groot duals, in the reverse direction.
    pub fn degroot(&self) -> Result<CRelation> {
        CRelation::new(self.target.degroot_dual(), self.source.degroot_dual(), self.rel.converse())
            .map_err(|e| Error::theorem("converse of a c-relation", e.to_string()))
    }

    /// First failure of R[∩F] = ∩R[F] over codirected F ⊆ K, or of
    /// R⇐[∪I] = ∪R⇐[I] over directed I ⊆ O.
    pub fn esakia_witness(&self) -> Result<Option<String>> {
        let (k, o) = (self.source.kfam(), self.target.ofam());
        let (nx, ny) = (self.source.len(), self.target.len());
        let xn = self.source.base().names();
        let yn = self.target.base().names();
        if let Some(f) = find_bounded(k.len(), |a, i| k[a].is_subset(&k[i]), |f| {
            let meet = f.iter().fold(BitSet::full(nx), |acc, &i| acc.intersection(&k[i]));
            let lhs = self.rel.image(&meet);
            let rhs = f.iter().fold(BitSet::full(ny), |acc, &i| acc.intersection(&self.rel.image(&k[i])));
            (lhs != rhs).then(|| f.to_vec())
        })? {
            let m: Vec<&BitSet> = f.iter().map(|&i| &k[i]).collect();
            return Ok(Some(format!("image of the intersection of {}", family_name(xn, &m))));
        }
        if let Some(f) = find_bounded(o.len(), |a, i| o[i].is_subset(&o[a]), |f| {
            let join = f.iter().fold(BitSet::new(ny), |acc, &i| acc.union(&o[i]));
            let lhs = self.rel.preimage_univ(&join);
            let rhs = f.iter().fold(BitSet::new(nx), |acc, &i| acc.union(&self.rel.preimage_univ(&o[i])));
            (lhs != rhs).then(|| f.to_vec())
        })? {
            let m: Vec<&BitSet> = f.iter().map(|&i| &o[i]).collect();
            return Ok(Some(format!("preimage of the union of {}", family_name(yn, &m))));
        }
        Ok(None)
    }

    pub fn esakia_check(&self) -> Result<bool> {
        Ok(self.esakia_witness()?.is_none())
    }
}

/// The pair of c-relations induced by an order isomorphism f: x R y iff
/// f(x) <= y and y S x iff y <= f(x). They compose to identities when f is
/// also a bijection on k-sets and o-sets.
pub fn iso_crelations(source: &KoSpace, target: &KoSpace, f: &[usize]) -> Result<(CRelation, CRelation)> {
    let r = CRelation::hypergraph(source, target, f)?;
    let rows = (0..target.len())
        .map(|y| BitSet::from_indices(source.len(), (0..source.len()).filter(|&x| target.base().leq(y, f[x]))))
        .collect();
    let s = CRelation::new(target.clone(), source.clone(), WeakRel::new(target.base().clone(), source.base().clone(), rows)?)?;
    Ok((r, s))
}
