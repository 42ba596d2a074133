use crate::bitset::BitSet;
use crate::error::{check, Code, Diagnostic, Error, Result};
use crate::order::{find_isomorphism, FinLattice, Structure};

use super::concept::{concept_lattice, ConceptLattice};
use super::relation::Polarity;

/// A finite lattice with a join-dense subset K and a meet-dense subset O.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleBaseLattice {
    lattice: FinLattice,
    kset: BitSet,
    oset: BitSet,
}

impl DoubleBaseLattice {
    pub fn new(lattice: FinLattice, kset: BitSet, oset: BitSet) -> Result<Self> {
        let mut ds = Vec::new();
        for a in 0..lattice.len() {
            let below = kset.intersection(lattice.poset().down(a));
            if lattice.join_all(below.iter()) != a {
                ds.push(Diagnostic::new(Code::Density, format!("{} is not a join of k-elements", lattice.name(a))));
            }
            let above = oset.intersection(lattice.poset().up(a));
            if lattice.meet_all(above.iter()) != a {
                ds.push(Diagnostic::new(Code::Density, format!("{} is not a meet of o-elements", lattice.name(a))));
            }
        }
        check(ds)?;
        Ok(DoubleBaseLattice { lattice, kset, oset })
    }

    pub fn from_names<S: AsRef<str>>(lattice: FinLattice, kset: &[S], oset: &[S]) -> Result<Self> {
        let k = lattice.poset().subset(kset)?;
        let o = lattice.poset().subset(oset)?;
        Self::new(lattice, k, o)
    }

    pub fn lattice(&self) -> &FinLattice {
        &self.lattice
    }

    pub fn kset(&self) -> &BitSet {
        &self.kset
    }

    pub fn oset(&self) -> &BitSet {
        &self.oset
    }

    /// Lattice elements of K in index order.
    pub fn kelems(&self) -> Vec<usize> {
        self.kset.to_vec()
    }

    pub fn oelems(&self) -> Vec<usize> {
        self.oset.to_vec()
    }

    /// (K, O, <=)
    pub fn to_polarity(&self) -> Polarity {
        let ks = self.kelems();
        let os = self.oelems();
        let l = &self.lattice;
        Polarity::from_fn(
            ks.iter().map(|&k| l.name(k).to_string()).collect(),
            os.iter().map(|&u| l.name(u).to_string()).collect(),
            |k, u| l.leq(ks[k], os[u]),
        )
    }

    pub(crate) fn structure(&self) -> Structure {
        let l = &self.lattice;
        let colors = (0..l.len()).map(|a| self.kset.contains(a) as u64 + 2 * self.oset.contains(a) as u64).collect();
        Structure { colors, rels: vec![(0..l.len()).map(|a| l.poset().up(a).clone()).collect()] }
    }
}

/// (𝔅(P), im ι_K, im ι_O) for a purified polarity, together with its concept lattice.
pub fn to_double_base_with(p: &Polarity) -> Result<(DoubleBaseLattice, ConceptLattice)> {
    p.require_purified()?;
    let cl = concept_lattice(p)?;
    let n = cl.len();
    let kset = BitSet::from_indices(n, (0..p.klen()).map(|k| cl.iota_k(k)));
    let oset = BitSet::from_indices(n, (0..p.olen()).map(|u| cl.iota_o(u)));
    let d = DoubleBaseLattice::new(cl.lattice().clone(), kset, oset)
        .map_err(|e| Error::theorem("concept lattice density", e.to_string()))?;
    Ok((d, cl))
}

pub fn to_double_base(p: &Polarity) -> Result<DoubleBaseLattice> {
    to_double_base_with(p).map(|(d, _)| d)
}

/// Isomorphism of lattices preserving both designated subsets.
pub fn dbl_isomorphic(a: &DoubleBaseLattice, b: &DoubleBaseLattice) -> Option<Vec<usize>> {
    find_isomorphism(&a.structure(), &b.structure())
}

/// The explicit map a -> (↓_K a, ↑_O a) into the concept lattice of (K, O, <=),
/// checked to be an isomorphism of double base lattices, with its inverse
/// (A, B) -> ⋁A checked as well.
pub fn fca_isomorphism(d: &DoubleBaseLattice) -> Result<Vec<usize>> {
    let p = d.to_polarity();
    let (e, cl) = to_double_base_with(&p)?;
    let l = d.lattice();
    let ks = d.kelems();
    let os = d.oelems();
    let mut map = Vec::with_capacity(l.len());
    for a in 0..l.len() {
        let intent = BitSet::from_indices(os.len(), (0..os.len()).filter(|&i| l.leq(a, os[i])));
        let c = cl.by_intent(&intent).ok_or_else(|| {
            Error::theorem("fundamental theorem of concept analysis", format!("{} has no concept", l.name(a)))
        })?;
        let back = l.join_all(cl.concepts()[c].extent.iter().map(|i| ks[i]));
        let back_meet = l.meet_all(cl.concepts()[c].intent.iter().map(|i| os[i]));
        if back != a || back_meet != a {
            return Err(Error::theorem("fundamental theorem of concept analysis", format!("inverse fails at {}", l.name(a))));
        }
        map.push(c);
    }
    let ok = (0..l.len()).all(|a| {
        (0..l.len()).all(|b| l.leq(a, b) == e.lattice().leq(map[a], map[b]))
            && d.kset().contains(a) == e.kset().contains(map[a])
            && d.oset().contains(a) == e.oset().contains(map[a])
    });
    if !ok {
        return Err(Error::theorem("fundamental theorem of concept analysis", "map is not an isomorphism".into()));
    }
    Ok(map)
}
