use std::collections::{HashMap, HashSet};

use crate::bitset::BitSet;
use crate::error::Result;
use crate::guard;
use crate::order::{numbered, FinLattice, FinPoset};

use super::relation::Polarity;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: BitSet,
    pub intent: BitSet,
}

/// All formal concepts of a polarity under the hierarchical order.
#[derive(Clone, Debug)]
pub struct ConceptLattice {
    source: Polarity,
    concepts: Vec<Concept>,
    lattice: FinLattice,
    by_intent: HashMap<BitSet, usize>,
}

impl ConceptLattice {
    pub fn source(&self) -> &Polarity {
        &self.source
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn lattice(&self) -> &FinLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn by_intent(&self, intent: &BitSet) -> Option<usize> {
        self.by_intent.get(intent).copied()
    }

    /// ι_K(k) = (↓_K k, ↑_O k)
    pub fn iota_k(&self, k: usize) -> usize {
        self.by_intent[self.source.up_o(k)]
    }

    /// ι_O(u) = (↓_K u, ↑_O u)
    pub fn iota_o(&self, u: usize) -> usize {
        let intent = self.source.ub_o(self.source.down_k(u));
        self.by_intent[&intent]
    }

    /// The concept generated by a set of k-elements.
    pub fn closure_of_extent(&self, a: &BitSet) -> usize {
        self.by_intent[&self.source.ub_o(a)]
    }
}

/// Enumerate intents as all intersections of rows (the empty intersection is O),
/// then order concepts by intent, lexicographically.
pub fn concept_lattice(p: &Polarity) -> Result<ConceptLattice> {
    let mut intents: HashSet<BitSet> = HashSet::new();
    intents.insert(BitSet::full(p.olen()));
    for k in 0..p.klen() {
        let row = p.up_o(k);
        let fresh: Vec<BitSet> = intents.iter().map(|b| b.intersection(row)).collect();
        intents.extend(fresh);
        guard::ensure("concept lattice", intents.len(), guard::LATTICE_LIMIT)?;
    }
    let mut intents: Vec<BitSet> = intents.into_iter().collect();
    intents.sort_by(|a, b| a.cmp_lex(b));
    let concepts: Vec<Concept> =
        intents.iter().map(|b| Concept { extent: p.lb_k(b), intent: b.clone() }).collect();
    let names = numbered("c", concepts.len());
    let poset = FinPoset::from_fn(names, |a, b| concepts[a].extent.is_subset(&concepts[b].extent))?;
    let lattice = FinLattice::new(poset)?;
    let by_intent = intents.into_iter().enumerate().map(|(i, b)| (b, i)).collect();
    Ok(ConceptLattice { source: p.clone(), concepts, lattice, by_intent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::lattice_isomorphic;

    fn m3() -> Polarity {
        Polarity::new(&["a", "b", "c"], &["a", "b", "c"], &[("a", "a"), ("b", "b"), ("c", "c")]).unwrap()
    }

    /// Oracle: test every pair (A, B) of subsets for the concept equations.
    fn brute_concepts(p: &Polarity) -> Vec<Concept> {
        let mut out = Vec::new();
        for am in 0u32..1 << p.klen() {
            let a = BitSet::from_indices(p.klen(), (0..p.klen()).filter(|i| am >> i & 1 == 1));
            for bm in 0u32..1 << p.olen() {
                let b = BitSet::from_indices(p.olen(), (0..p.olen()).filter(|i| bm >> i & 1 == 1));
                if p.ub_o(&a) == b && p.lb_k(&b) == a {
                    out.push(Concept { extent: a.clone(), intent: b });
                }
            }
        }
        out.sort_by(|x, y| x.intent.cmp_lex(&y.intent));
        out
    }

    #[test]
    fn one_by_one_empty_relation() {
        let p = Polarity::new(&["k"], &["u"], &[]).unwrap();
        let cl = concept_lattice(&p).unwrap();
        assert_eq!(cl.len(), 2);
        assert_eq!(cl.concepts(), &brute_concepts(&p)[..]);
        let top = cl.lattice().top();
        assert_eq!(cl.concepts()[top].extent.to_vec(), vec![0]);
    }

    #[test]
    fn m3_has_five_concepts() {
        let cl = concept_lattice(&m3()).unwrap();
        assert_eq!(cl.len(), 5);
        assert!(!cl.lattice().is_distributive());
        let shape = FinPoset::new(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .unwrap();
        assert!(lattice_isomorphic(cl.lattice(), &FinLattice::new(shape).unwrap()).is_some());
    }

    #[test]
    fn empty_polarity() {
        let cl = concept_lattice(&Polarity::empty()).unwrap();
        assert_eq!(cl.len(), 1);
    }

    #[test]
    fn matches_oracle_on_all_2x3() {
        for m in 0u32..1 << 6 {
            let p = Polarity::from_fn(vec!["k0".into(), "k1".into()], vec!["u0".into(), "u1".into(), "u2".into()], |k, u| {
                m >> (k * 3 + u) & 1 == 1
            });
            let cl = concept_lattice(&p).unwrap();
            assert_eq!(cl.concepts(), &brute_concepts(&p)[..]);
        }
    }
}
