use crate::bitset::BitSet;
use crate::error::{check, Code, Diagnostic, Result};
use crate::order::{find_isomorphism, sort_names, FinPoset, Structure};

/// A relation from a finite set K of k-elements to a finite set O of o-elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polarity {
    kset: Vec<String>,
    oset: Vec<String>,
    rows: Vec<BitSet>,
    cols: Vec<BitSet>,
}

impl Polarity {
    pub fn new<S: AsRef<str>>(kset: &[S], oset: &[S], rel: &[(S, S)]) -> Result<Self> {
        let ks: Vec<String> = kset.iter().map(|s| s.as_ref().to_string()).collect();
        let os: Vec<String> = oset.iter().map(|s| s.as_ref().to_string()).collect();
        let mut pairs = Vec::new();
        let mut ds = Vec::new();
        for (a, b) in rel {
            let k = ks.iter().position(|x| x == a.as_ref());
            let u = os.iter().position(|x| x == b.as_ref());
            match (k, u) {
                (Some(k), Some(u)) => pairs.push((k, u)),
                _ => ds.push(Diagnostic::new(Code::UnknownElement, format!("({}, {})", a.as_ref(), b.as_ref()))),
            }
        }
        check(ds)?;
        let (p, _, _) = Self::from_fn_unsorted(ks, os, |k, u| pairs.contains(&(k, u)))?;
        Ok(p)
    }

    /// Names must already be sorted and valid.
    pub(crate) fn from_fn(kset: Vec<String>, oset: Vec<String>, rel: impl Fn(usize, usize) -> bool) -> Self {
        debug_assert!(kset.windows(2).all(|w| w[0] < w[1]), "k names unsorted: {kset:?}");
        debug_assert!(oset.windows(2).all(|w| w[0] < w[1]), "o names unsorted: {oset:?}");
        let (nk, no) = (kset.len(), oset.len());
        let rows: Vec<BitSet> = (0..nk).map(|k| BitSet::from_indices(no, (0..no).filter(|&u| rel(k, u)))).collect();
        let cols = (0..no).map(|u| BitSet::from_indices(nk, (0..nk).filter(|&k| rows[k].contains(u)))).collect();
        Polarity { kset, oset, rows, cols }
    }

    /// Sorts both sides; returns the permutations old -> new.
    pub fn from_fn_unsorted(
        kset: Vec<String>,
        oset: Vec<String>,
        rel: impl Fn(usize, usize) -> bool,
    ) -> Result<(Self, Vec<usize>, Vec<usize>)> {
        let (ks, kp) = sort_names(&kset)?;
        let (os, op) = sort_names(&oset)?;
        let kinv = invert(&kp);
        let oinv = invert(&op);
        Ok((Self::from_fn(ks, os, |k, u| rel(kinv[k], oinv[u])), kp, op))
    }

    pub fn empty() -> Self {
        Polarity { kset: vec![], oset: vec![], rows: vec![], cols: vec![] }
    }

    pub fn klen(&self) -> usize {
        self.kset.len()
    }

    pub fn olen(&self) -> usize {
        self.oset.len()
    }

    pub fn knames(&self) -> &[String] {
        &self.kset
    }

    pub fn onames(&self) -> &[String] {
        &self.oset
    }

    pub fn kname(&self, k: usize) -> &str {
        &self.kset[k]
    }

    pub fn oname(&self, u: usize) -> &str {
        &self.oset[u]
    }

    pub fn k_index(&self, name: &str) -> Option<usize> {
        self.kset.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn o_index(&self, name: &str) -> Option<usize> {
        self.oset.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    /// k ◁ u
    pub fn rel(&self, k: usize, u: usize) -> bool {
        self.rows[k].contains(u)
    }

    /// ↑_O k = {u : k ◁ u}
    pub fn up_o(&self, k: usize) -> &BitSet {
        &self.rows[k]
    }

    /// ↓_K u = {k : k ◁ u}
    pub fn down_k(&self, u: usize) -> &BitSet {
        &self.cols[u]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.klen()).flat_map(|k| self.rows[k].iter().map(move |u| (k, u))).collect()
    }

    /// Specialization preorder on K: k <= l iff ↑_O k ⊇ ↑_O l.
    pub fn k_leq(&self, k: usize, l: usize) -> bool {
        self.rows[l].is_subset(&self.rows[k])
    }

    /// Specialization preorder on O: u <= v iff ↓_K u ⊆ ↓_K v.
    pub fn o_leq(&self, u: usize, v: usize) -> bool {
        self.cols[u].is_subset(&self.cols[v])
    }

    /// {v : u <= v} in the O preorder.
    pub fn o_above(&self, u: usize) -> BitSet {
        BitSet::from_indices(self.olen(), (0..self.olen()).filter(|&v| self.o_leq(u, v)))
    }

    /// {l : l <= k} in the K preorder.
    pub fn k_below(&self, k: usize) -> BitSet {
        BitSet::from_indices(self.klen(), (0..self.klen()).filter(|&l| self.k_leq(l, k)))
    }

    /// ub_O(A) = {u : A ⊆ ↓_K u}
    pub fn ub_o(&self, a: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.olen());
        for k in a.iter() {
            out.intersect_with(&self.rows[k]);
        }
        out
    }

    /// lb_K(B) = {k : B ⊆ ↑_O k}
    pub fn lb_k(&self, b: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.klen());
        for u in b.iter() {
            out.intersect_with(&self.cols[u]);
        }
        out
    }

    /// Pairs of distinct elements with equal rows (K side) or columns (O side).
    pub fn purification_violations(&self) -> Vec<Diagnostic> {
        let mut ds = Vec::new();
        for k in 0..self.klen() {
            for l in k + 1..self.klen() {
                if self.rows[k] == self.rows[l] {
                    ds.push(Diagnostic::new(Code::NotPurifiedK, format!("{} and {}", self.kset[k], self.kset[l])));
                }
            }
        }
        for u in 0..self.olen() {
            for v in u + 1..self.olen() {
                if self.cols[u] == self.cols[v] {
                    ds.push(Diagnostic::new(Code::NotPurifiedO, format!("{} and {}", self.oset[u], self.oset[v])));
                }
            }
        }
        ds
    }

    pub fn is_purified(&self) -> bool {
        self.purification_violations().is_empty()
    }

    pub(crate) fn require_purified(&self) -> Result<()> {
        check(self.purification_violations())
    }

    /// Quotient by equal rows/columns keeping the least representative;
    /// also returns the class maps old index -> new index.
    pub fn purify_with_map(&self) -> (Polarity, Vec<usize>, Vec<usize>) {
        let kreps: Vec<usize> =
            (0..self.klen()).filter(|&k| (0..k).all(|l| self.rows[l] != self.rows[k])).collect();
        let oreps: Vec<usize> =
            (0..self.olen()).filter(|&u| (0..u).all(|v| self.cols[v] != self.cols[u])).collect();
        let kmap = (0..self.klen()).map(|k| kreps.iter().position(|&r| self.rows[r] == self.rows[k]).unwrap()).collect();
        let omap = (0..self.olen()).map(|u| oreps.iter().position(|&r| self.cols[r] == self.cols[u]).unwrap()).collect();
        let p = Polarity::from_fn(
            kreps.iter().map(|&k| self.kset[k].clone()).collect(),
            oreps.iter().map(|&u| self.oset[u].clone()).collect(),
            |k, u| self.rel(kreps[k], oreps[u]),
        );
        (p, kmap, omap)
    }

    pub fn purify(&self) -> Polarity {
        self.purify_with_map().0
    }

    /// K with its specialization order; requires purification.
    pub fn k_poset(&self) -> Result<FinPoset> {
        self.require_purified()?;
        FinPoset::from_fn(self.kset.clone(), |k, l| self.k_leq(k, l))
    }

    pub fn o_poset(&self) -> Result<FinPoset> {
        self.require_purified()?;
        FinPoset::from_fn(self.oset.clone(), |u, v| self.o_leq(u, v))
    }

    /// (O, K, ◁ reversed)
    pub fn swap(&self) -> Polarity {
        Polarity { kset: self.oset.clone(), oset: self.kset.clone(), rows: self.cols.clone(), cols: self.rows.clone() }
    }

    /// Sub-polarity on the given k- and o-elements.
    pub fn restrict(&self, ks: &BitSet, os: &BitSet) -> Polarity {
        let ki = ks.to_vec();
        let oi = os.to_vec();
        Polarity::from_fn(
            ki.iter().map(|&k| self.kset[k].clone()).collect(),
            oi.iter().map(|&u| self.oset[u].clone()).collect(),
            |k, u| self.rel(ki[k], oi[u]),
        )
    }

    pub(crate) fn structure(&self) -> Structure {
        let (nk, no) = (self.klen(), self.olen());
        let n = nk + no;
        let mut rel = vec![BitSet::new(n); n];
        for (k, u) in self.pairs() {
            rel[k].insert(nk + u);
        }
        let mut colors = vec![0; nk];
        colors.extend(vec![1; no]);
        Structure { colors, rels: vec![rel] }
    }
}

pub(crate) fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    inv
}

/// Isomorphism of polarities as a pair of bijections (K-side, O-side).
pub fn polarity_isomorphic(p: &Polarity, q: &Polarity) -> Option<(Vec<usize>, Vec<usize>)> {
    if p.klen() != q.klen() || p.olen() != q.olen() {
        return None;
    }
    let f = find_isomorphism(&p.structure(), &q.structure())?;
    let nk = p.klen();
    let kmap = f[..nk].to_vec();
    let omap = f[nk..].iter().map(|&v| v - nk).collect();
    Some((kmap, omap))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn m3() -> Polarity {
        Polarity::new(&["a", "b", "c"], &["a", "b", "c"], &[("a", "a"), ("b", "b"), ("c", "c")]).unwrap()
    }

    #[test]
    fn purified_examples() {
        assert!(m3().is_purified());
        let dup = Polarity::new(&["k", "l"], &["u"], &[("k", "u"), ("l", "u")]).unwrap();
        assert!(!dup.is_purified());
        let one = Polarity::new(&["k"], &["u"], &[]).unwrap();
        assert!(one.is_purified());
    }

    #[test]
    fn purify_collapses_duplicates() {
        let p = Polarity::new(&["k", "l"], &["u", "v"], &[("k", "u"), ("k", "v")]).unwrap();
        let (q, kmap, omap) = p.purify_with_map();
        assert_eq!(q.onames(), &["u"]);
        assert_eq!(omap, vec![0, 0]);
        assert_eq!(kmap, vec![0, 1]);
        assert!(q.is_purified());
        assert_eq!(m3().purify(), m3());
    }

    #[test]
    fn specialization_orders() {
        let p = Polarity::new(&["k", "l"], &["u", "v"], &[("k", "u"), ("k", "v"), ("l", "v")]).unwrap();
        assert!(p.k_leq(0, 1));
        assert!(!p.k_leq(1, 0));
        assert!(p.o_leq(0, 1));
        assert_eq!(p.ub_o(&BitSet::full(2)).to_vec(), vec![1]);
        assert_eq!(p.lb_k(&BitSet::new(2)).to_vec(), vec![0, 1]);
    }

    #[test]
    fn isomorphism_of_relabelled() {
        let q = Polarity::new(&["x", "y", "z"], &["p", "q", "r"], &[("x", "r"), ("y", "q"), ("z", "p")]).unwrap();
        let (km, om) = polarity_isomorphic(&m3(), &q).unwrap();
        for k in 0..3 {
            for u in 0..3 {
                assert_eq!(m3().rel(k, u), q.rel(km[k], om[u]));
            }
        }
    }
}
