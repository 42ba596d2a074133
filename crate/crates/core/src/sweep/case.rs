use crate::bidcpo::{validate_bidcpo, BiDcpo};
use crate::bitset::BitSet;
use crate::io::{to_json, to_text, Doc, Item};
use crate::kospace::{CRelation, KoSpace};
use crate::order::FinLattice;
use crate::polarity::{GaloisMorphism, Polarity};

/// A sweep instance: one-element-smaller variants for shrinking and a
/// printable form for reports.
pub trait Case: Clone + Send + Sync {
    fn smaller(&self) -> Vec<Self>;
    fn describe(&self) -> String;
}

fn show(doc: Doc) -> String {
    to_text(&doc).unwrap_or_else(|| to_json(&doc))
}

fn all_but(n: usize, i: usize) -> BitSet {
    let mut s = BitSet::full(n);
    s.remove(i);
    s
}

impl Case for Polarity {
    fn smaller(&self) -> Vec<Self> {
        let (nk, no) = (self.klen(), self.olen());
        let ks = (0..nk).map(|k| self.restrict(&all_but(nk, k), &BitSet::full(no)));
        let os = (0..no).map(|u| self.restrict(&BitSet::full(nk), &all_but(no, u)));
        ks.chain(os).map(|p| p.purify()).collect()
    }

    fn describe(&self) -> String {
        show(Item::Polarity(self.clone()).to_doc())
    }
}

impl Case for BiDcpo {
    fn smaller(&self) -> Vec<Self> {
        self.pol().smaller().iter().filter_map(|p| validate_bidcpo(p).ok()).collect()
    }

    fn describe(&self) -> String {
        show(Item::BiDcpo(self.clone()).to_doc())
    }
}

impl Case for FinLattice {
    fn smaller(&self) -> Vec<Self> {
        (0..self.len()).filter_map(|i| FinLattice::new(self.poset().restrict(&all_but(self.len(), i))).ok()).collect()
    }

    fn describe(&self) -> String {
        show(Item::Lattice(self.clone()).to_doc())
    }
}

impl Case for KoSpace {
    fn smaller(&self) -> Vec<Self> {
        (0..self.len())
            .filter_map(|i| {
                let r = self.restrict_unchecked(&all_but(self.len(), i));
                KoSpace::new(r.base().clone(), r.kfam().to_vec(), r.ofam().to_vec()).ok()
            })
            .collect()
    }

    fn describe(&self) -> String {
        show(Item::KoSpace(self.clone()).to_doc())
    }
}

impl Case for CRelation {
    fn smaller(&self) -> Vec<Self> {
        vec![]
    }

    fn describe(&self) -> String {
        show(Item::CRelation(self.clone()).to_doc())
    }
}

impl Case for GaloisMorphism {
    fn smaller(&self) -> Vec<Self> {
        vec![]
    }

    fn describe(&self) -> String {
        show(Item::Galois(self.clone()).to_doc())
    }
}

impl<A: Case, B: Case> Case for (A, B) {
    fn smaller(&self) -> Vec<Self> {
        vec![]
    }

    fn describe(&self) -> String {
        format!("{}\n{}", self.0.describe(), self.1.describe())
    }
}

impl Case for crate::localcompact::Dirspace {
    fn smaller(&self) -> Vec<Self> {
        vec![]
    }

    fn describe(&self) -> String {
        show(Item::Dirspace(self.clone()).to_doc())
    }
}
