use crate::bitset::BitSet;
use crate::error::{Code, Diagnostic, Error, Result};
use crate::guard;

use super::poset::{set_names, FinPoset};

/// A finite lattice with tabulated binary joins and meets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLattice {
    poset: FinPoset,
    join: Vec<u32>,
    meet: Vec<u32>,
    top: usize,
    bottom: usize,
}

impl FinLattice {
    pub fn new(poset: FinPoset) -> Result<Self> {
        let n = poset.len();
        guard::ensure("lattice", n, guard::LATTICE_LIMIT)?;
        let invalid = |w: String| Error::Invalid(vec![Diagnostic::new(Code::NotLattice, w)]);
        let bottom = poset.least(&poset.all()).ok_or_else(|| invalid("no bottom element".into()))?;
        let top = poset.greatest(&poset.all()).ok_or_else(|| invalid("no top element".into()))?;
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let j = poset
                    .least(&poset.up(a).intersection(poset.up(b)))
                    .ok_or_else(|| invalid(format!("{} and {} have no join", poset.name(a), poset.name(b))))?;
                let m = poset
                    .greatest(&poset.down(a).intersection(poset.down(b)))
                    .ok_or_else(|| invalid(format!("{} and {} have no meet", poset.name(a), poset.name(b))))?;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
            }
        }
        Ok(FinLattice { poset, join, meet, top, bottom })
    }

    /// Chain lattice in the given order.
    pub fn chain<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(FinPoset::chain(names)?)
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        self.poset.names()
    }

    pub fn name(&self, i: usize) -> &str {
        self.poset.name(i)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.poset.index_of(name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = usize>) -> usize {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = usize>) -> usize {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Cut-rule form: k <= u v c and c ^ k <= u imply k <= u.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for k in 0..n {
            for u in 0..n {
                if self.leq(k, u) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(k, self.join(u, c)) && self.leq(self.meet(c, k), u) {
                        return Some((k, u, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// Textbook check a ^ (b v c) = (a ^ b) v (a ^ c).
    pub fn is_distributive_by_identity(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c)))
            })
        })
    }
}

/// Up(X) together with the upset carried by each lattice element.
#[derive(Clone, Debug)]
pub struct UpsetLattice {
    pub lattice: FinLattice,
    pub sets: Vec<BitSet>,
}

impl UpsetLattice {
    pub fn element_of(&self, s: &BitSet) -> Option<usize> {
        self.sets.iter().position(|t| t == s)
    }
}

/// The lattice of all upsets of X under inclusion; elements are named `{a,b}`.
pub fn upset_lattice(x: &FinPoset) -> Result<UpsetLattice> {
    let ups = x.upsets()?;
    let names = set_names(x.names(), &ups);
    let (poset, perm) = FinPoset::from_fn_unsorted(names, |a, b| ups[a].is_subset(&ups[b]))?;
    let mut sets = vec![BitSet::new(x.len()); ups.len()];
    for (old, s) in ups.into_iter().enumerate() {
        sets[perm[old]] = s;
    }
    Ok(UpsetLattice { lattice: FinLattice::new(poset)?, sets })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn m3() -> FinLattice {
        FinLattice::new(
            FinPoset::new(
                &["0", "a", "b", "c", "1"],
                &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn n5() -> FinLattice {
        FinLattice::new(
            FinPoset::new(&["0", "a", "b", "c", "1"], &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])
                .unwrap(),
        )
        .unwrap()
    }

    fn boolean4() -> FinLattice {
        FinLattice::new(FinPoset::new(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap())
            .unwrap()
    }

    #[test]
    fn distributivity_examples() {
        assert!(boolean4().is_distributive());
        assert!(!m3().is_distributive());
        assert!(!n5().is_distributive());
        assert!(FinLattice::chain(&["0", "1", "2"]).unwrap().is_distributive());
    }

    #[test]
    fn rejects_non_lattices() {
        let anti = FinPoset::antichain(&["a", "b"]).unwrap();
        assert!(FinLattice::new(anti).unwrap_err().has_code(Code::NotLattice));
        assert!(FinLattice::new(FinPoset::empty()).is_err());
    }

    #[test]
    fn upset_lattice_shapes() {
        let e = upset_lattice(&FinPoset::empty()).unwrap();
        assert_eq!(e.lattice.len(), 1);
        let c = upset_lattice(&FinPoset::chain(&["a", "b"]).unwrap()).unwrap();
        assert_eq!(c.lattice.len(), 3);
        assert_eq!(c.lattice.names(), &["{a,b}", "{b}", "{}"]);
        assert!(c.lattice.leq(2, 1) && c.lattice.leq(1, 0));
        let a = upset_lattice(&FinPoset::antichain(&["a", "b"]).unwrap()).unwrap();
        assert_eq!(a.lattice.len(), 4);
        assert!(a.lattice.is_distributive());
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(a.sets[a.lattice.join(x, y)], a.sets[x].union(&a.sets[y]));
                assert_eq!(a.sets[a.lattice.meet(x, y)], a.sets[x].intersection(&a.sets[y]));
            }
        }
    }
}
