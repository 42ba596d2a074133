use crate::bitset::BitSet;
use crate::error::{check, Code, Diagnostic, Error, Result};

use super::poset::FinPoset;

/// A weakening relation between two finite posets, stored as rows x -> R[x].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakRel {
    source: FinPoset,
    target: FinPoset,
    rows: Vec<BitSet>,
}

impl WeakRel {
    /// Validate that `rows` is a weakening relation.
    pub fn new(source: FinPoset, target: FinPoset, rows: Vec<BitSet>) -> Result<Self> {
        assert_eq!(rows.len(), source.len());
        let mut ds = Vec::new();
        'outer: for x in 0..source.len() {
            for y in rows[x].iter() {
                for x2 in source.down(x).iter() {
                    if let Some(y2) = target.up(y).difference(&rows[x2]).first() {
                        ds.push(Diagnostic::new(
                            Code::Weakening,
                            format!(
                                "{} <= {} R {} <= {} but not {} R {}",
                                source.name(x2),
                                source.name(x),
                                target.name(y),
                                target.name(y2),
                                source.name(x2),
                                target.name(y2)
                            ),
                        ));
                        break 'outer;
                    }
                }
            }
        }
        check(ds)?;
        Ok(WeakRel { source, target, rows })
    }

    pub fn from_pairs<S: AsRef<str>>(source: FinPoset, target: FinPoset, pairs: &[(S, S)]) -> Result<Self> {
        let mut rows = vec![BitSet::new(target.len()); source.len()];
        for (a, b) in pairs {
            match (source.index_of(a.as_ref()), target.index_of(b.as_ref())) {
                (Some(x), Some(y)) => rows[x].insert(y),
                _ => {
                    return Err(Error::Invalid(vec![Diagnostic::new(
                        Code::UnknownElement,
                        format!("({}, {})", a.as_ref(), b.as_ref()),
                    )]))
                }
            }
        }
        Self::new(source, target, rows)
    }

    /// Smallest weakening relation containing the given rows.
    pub fn closure(source: FinPoset, target: FinPoset, rows: &[BitSet]) -> Self {
        let out = (0..source.len())
            .map(|x| {
                let mut r = BitSet::new(target.len());
                for x0 in source.up(x).iter() {
                    r.union_with(&target.up_closure(&rows[x0]));
                }
                r
            })
            .collect();
        WeakRel { source, target, rows: out }
    }

    /// The order of X as a relation; the identity morphism.
    pub fn identity(x: &FinPoset) -> Self {
        let rows = (0..x.len()).map(|i| x.up(i).clone()).collect();
        WeakRel { source: x.clone(), target: x.clone(), rows }
    }

    pub fn source(&self) -> &FinPoset {
        &self.source
    }

    pub fn target(&self) -> &FinPoset {
        &self.target
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.source.len()).flat_map(|x| self.rows[x].iter().map(move |y| (x, y))).collect()
    }

    /// R[A]
    pub fn image(&self, a: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.target.len());
        for x in a.iter() {
            out.union_with(&self.rows[x]);
        }
        out
    }

    /// R⇐[B] = {x : R[x] ⊆ B}
    pub fn preimage_univ(&self, b: &BitSet) -> BitSet {
        BitSet::from_indices(self.source.len(), (0..self.source.len()).filter(|&x| self.rows[x].is_subset(b)))
    }

    /// Relational composite: first self, then `next`.
    pub fn compose(&self, next: &WeakRel) -> Result<WeakRel> {
        if self.target != next.source {
            return Err(Error::Mismatch("composite of relations with different middle posets".into()));
        }
        let rows = self.rows.iter().map(|r| next.image(r)).collect();
        Ok(WeakRel { source: self.source.clone(), target: next.target.clone(), rows })
    }

    /// Converse relation between the dual posets, target^op -> source^op.
    pub fn converse(&self) -> WeakRel {
        let mut rows = vec![BitSet::new(self.source.len()); self.target.len()];
        for (x, y) in self.pairs() {
            rows[y].insert(x);
        }
        WeakRel { source: self.target.dual(), target: self.source.dual(), rows }
    }

    /// Hypergraph of a monotone map: x R y iff f(x) <= y.
    pub fn hypergraph(source: &FinPoset, target: &FinPoset, f: &[usize]) -> Result<WeakRel> {
        let rows = (0..source.len()).map(|x| target.up(f[x]).clone()).collect();
        WeakRel::new(source.clone(), target.clone(), rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FinPoset {
        FinPoset::chain(&["a", "b", "c"]).unwrap()
    }

    fn brute_compose(r: &WeakRel, s: &WeakRel) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..r.source().len() {
            for z in 0..s.target().len() {
                if (0..r.target().len()).any(|y| r.related(x, y) && s.related(y, z)) {
                    out.push((x, z));
                }
            }
        }
        out
    }

    #[test]
    fn identity_is_neutral() {
        let x = chain3();
        let rows = [BitSet::new(3), BitSet::singleton(3, 1), BitSet::new(3)];
        let r = WeakRel::closure(x.clone(), x.clone(), &rows);
        let id = WeakRel::identity(&x);
        assert_eq!(id.compose(&r).unwrap(), r);
        assert_eq!(r.compose(&id).unwrap(), r);
    }

    #[test]
    fn full_composite_is_full() {
        let x = chain3();
        let full = vec![x.all(); 3];
        let r = WeakRel::new(x.clone(), x.clone(), full.clone()).unwrap();
        assert_eq!(r.compose(&r).unwrap().rows(), &full[..]);
    }

    #[test]
    fn composite_matches_brute_force() {
        let x = chain3();
        let y = FinPoset::antichain(&["p", "q", "r"]).unwrap();
        let r = WeakRel::closure(x.clone(), y.clone(), &[BitSet::singleton(3, 2), BitSet::singleton(3, 0), BitSet::singleton(3, 1)]);
        let s = WeakRel::closure(y.clone(), x.clone(), &[BitSet::singleton(3, 2), BitSet::new(3), BitSet::singleton(3, 1)]);
        let rs = r.compose(&s).unwrap();
        assert_eq!(rs.pairs(), brute_compose(&r, &s));
        assert!(WeakRel::new(rs.source().clone(), rs.target().clone(), rs.rows().to_vec()).is_ok());
        assert!(r.compose(&r).is_err());
    }

    #[test]
    fn rejects_non_weakening() {
        let x = chain3();
        let e = WeakRel::from_pairs(x.clone(), x.clone(), &[("b", "b")]).unwrap_err();
        assert!(e.has_code(Code::Weakening));
        let e = WeakRel::from_pairs(x.clone(), x.clone(), &[("c", "a")]).unwrap_err();
        assert!(e.has_code(Code::Weakening));
    }

    #[test]
    fn converse_twice() {
        let x = chain3();
        let y = FinPoset::antichain(&["p", "q"]).unwrap();
        let r = WeakRel::closure(x.clone(), y.clone(), &[BitSet::new(2), BitSet::singleton(2, 1), BitSet::new(2)]);
        let c = r.converse();
        assert!(WeakRel::new(c.source().clone(), c.target().clone(), c.rows().to_vec()).is_ok());
        assert_eq!(c.converse(), r);
    }
}
