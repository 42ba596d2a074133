use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::error::{check, Code, Diagnostic, Error, Result};
use crate::guard;

/// A finite partial order on named elements, kept in sorted-name order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinPoset {
    names: Vec<String>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
}

pub(crate) fn check_identifier(name: &str) -> Option<Diagnostic> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c.is_control() || c == '"') {
        Some(Diagnostic::new(Code::BadIdentifier, format!("{name:?}")))
    } else {
        None
    }
}

/// Validate identifiers and sort them; returns the permutation old -> new.
pub(crate) fn sort_names(names: &[String]) -> Result<(Vec<String>, Vec<usize>)> {
    let mut ds: Vec<Diagnostic> = names.iter().filter_map(|n| check_identifier(n)).collect();
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by(|&a, &b| names[a].cmp(&names[b]));
    for w in order.windows(2) {
        if names[w[0]] == names[w[1]] {
            ds.push(Diagnostic::new(Code::DuplicateElement, names[w[0]].clone()));
        }
    }
    check(ds)?;
    let mut perm = vec![0; names.len()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    Ok((order.iter().map(|&i| names[i].clone()).collect(), perm))
}

/// Render a subset as `{a,b}` using element names.
pub fn set_name(names: &[String], s: &BitSet) -> String {
    let parts: Vec<&str> = s.iter().map(|i| names[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Names for a list of distinct subsets; falls back to numbered names on collision.
pub(crate) fn set_names(names: &[String], sets: &[BitSet]) -> Vec<String> {
    let out: Vec<String> = sets.iter().map(|s| set_name(names, s)).collect();
    let distinct: HashSet<&String> = out.iter().collect();
    if distinct.len() == out.len() {
        out
    } else {
        numbered("s", sets.len())
    }
}

/// `prefix` followed by a zero-padded index, so string order equals numeric order.
pub fn numbered(prefix: &str, n: usize) -> Vec<String> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n).map(|i| format!("{prefix}{i:0width$}")).collect()
}

impl FinPoset {
    /// Build from any relation; the reflexive-transitive closure is taken.
    pub fn new<S: AsRef<str>>(names: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let raw: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let (sorted, perm) = sort_names(&raw)?;
        let n = sorted.len();
        let mut up: Vec<BitSet> = (0..n).map(|i| BitSet::singleton(n, i)).collect();
        let mut ds = Vec::new();
        for (a, b) in pairs {
            let ia = raw.iter().position(|x| x == a.as_ref());
            let ib = raw.iter().position(|x| x == b.as_ref());
            match (ia, ib) {
                (Some(i), Some(j)) => up[perm[i]].insert(perm[j]),
                _ => {
                    for (s, found) in [(a.as_ref(), ia), (b.as_ref(), ib)] {
                        if found.is_none() {
                            ds.push(Diagnostic::new(Code::UnknownElement, s));
                        }
                    }
                }
            }
        }
        check(ds)?;
        Self::from_up_rows(sorted, up)
    }

    /// Build from a predicate over already sorted, validated names.
    pub(crate) fn from_fn(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]), "names must be sorted: {names:?}");
        let n = names.len();
        let up = (0..n)
            .map(|i| BitSet::from_indices(n, (0..n).filter(|&j| i == j || leq(i, j))))
            .collect();
        Self::from_up_rows(names, up)
    }

    /// Like `from_fn` but names may come in any order; returns the permutation old -> new.
    pub fn from_fn_unsorted(
        names: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<(Self, Vec<usize>)> {
        let (sorted, perm) = sort_names(&names)?;
        let mut inv = vec![0; perm.len()];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let p = Self::from_fn(sorted, |a, b| leq(inv[a], inv[b]))?;
        Ok((p, perm))
    }

    fn from_up_rows(names: Vec<String>, mut up: Vec<BitSet>) -> Result<Self> {
        let n = names.len();
        // Warshall on rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let mut ds = Vec::new();
        for i in 0..n {
            for j in up[i].iter().filter(|&j| j > i) {
                if up[j].contains(i) {
                    ds.push(Diagnostic::new(
                        Code::Antisymmetry,
                        format!("{} <= {} <= {}", names[i], names[j], names[i]),
                    ));
                }
            }
        }
        check(ds)?;
        let mut down = vec![BitSet::new(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        Ok(FinPoset { names, up, down })
    }

    pub fn empty() -> Self {
        FinPoset { names: vec![], up: vec![], down: vec![] }
    }

    pub fn antichain<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(names, &[])
    }

    /// Chain in the given order (first is least).
    pub fn chain<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let pairs: Vec<(&str, &str)> =
            names.windows(2).map(|w| (w[0].as_ref(), w[1].as_ref())).collect();
        let ns: Vec<&str> = names.iter().map(|s| s.as_ref()).collect();
        Self::new(&ns, &pairs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// ↑x
    pub fn up(&self, i: usize) -> &BitSet {
        &self.up[i]
    }

    /// ↓x
    pub fn down(&self, i: usize) -> &BitSet {
        &self.down[i]
    }

    pub fn all(&self) -> BitSet {
        BitSet::full(self.len())
    }

    pub fn set_name(&self, s: &BitSet) -> String {
        set_name(&self.names, s)
    }

    pub fn subset<S: AsRef<str>>(&self, members: &[S]) -> Result<BitSet> {
        let mut s = BitSet::new(self.len());
        for m in members {
            let i = self
                .index_of(m.as_ref())
                .ok_or_else(|| Error::Invalid(vec![Diagnostic::new(Code::UnknownElement, m.as_ref())]))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn up_closure(&self, s: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.len());
        for i in s.iter() {
            out.union_with(&self.up[i]);
        }
        out
    }

    pub fn down_closure(&self, s: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.len());
        for i in s.iter() {
            out.union_with(&self.down[i]);
        }
        out
    }

    /// Some (x, y) with x in S, x <= y, y not in S.
    pub fn upset_violation(&self, s: &BitSet) -> Option<(usize, usize)> {
        s.iter().find_map(|x| self.up[x].difference(s).first().map(|y| (x, y)))
    }

    pub fn is_upset(&self, s: &BitSet) -> bool {
        self.upset_violation(s).is_none()
    }

    pub fn is_downset(&self, s: &BitSet) -> bool {
        s.iter().all(|x| self.down[x].is_subset(s))
    }

    /// Nonempty, and every pair has an upper bound inside S.
    pub fn is_directed(&self, s: &BitSet) -> bool {
        !s.is_empty()
            && s.iter().all(|a| s.iter().all(|b| self.up[a].intersection(&self.up[b]).intersects(s)))
    }

    /// Nonempty, and every pair has a lower bound inside S.
    pub fn is_codirected(&self, s: &BitSet) -> bool {
        !s.is_empty()
            && s.iter()
                .all(|a| s.iter().all(|b| self.down[a].intersection(&self.down[b]).intersects(s)))
    }

    /// The least element of S, if any.
    pub fn least(&self, s: &BitSet) -> Option<usize> {
        s.iter().find(|&x| s.is_subset(&self.up[x]))
    }

    pub fn greatest(&self, s: &BitSet) -> Option<usize> {
        s.iter().find(|&x| s.is_subset(&self.down[x]))
    }

    pub fn upper_bounds(&self, s: &BitSet) -> BitSet {
        let mut ub = self.all();
        for x in s.iter() {
            ub.intersect_with(&self.up[x]);
        }
        ub
    }

    pub fn lower_bounds(&self, s: &BitSet) -> BitSet {
        let mut lb = self.all();
        for x in s.iter() {
            lb.intersect_with(&self.down[x]);
        }
        lb
    }

    /// Least upper bound of S in the whole poset.
    pub fn join_of(&self, s: &BitSet) -> Option<usize> {
        self.least(&self.upper_bounds(s))
    }

    pub fn meet_of(&self, s: &BitSet) -> Option<usize> {
        self.greatest(&self.lower_bounds(s))
    }

    pub fn minimal(&self, s: &BitSet) -> BitSet {
        BitSet::from_indices(
            self.len(),
            s.iter().filter(|&x| self.down[x].intersection(s).count() == 1),
        )
    }

    pub fn maximal(&self, s: &BitSet) -> BitSet {
        BitSet::from_indices(self.len(), s.iter().filter(|&x| self.up[x].intersection(s).count() == 1))
    }

    /// Same names, reversed order.
    pub fn dual(&self) -> FinPoset {
        FinPoset { names: self.names.clone(), up: self.down.clone(), down: self.up.clone() }
    }

    /// Restriction of the order to a subset, keeping names.
    pub fn restrict(&self, s: &BitSet) -> FinPoset {
        let idx: Vec<usize> = s.to_vec();
        let names = idx.iter().map(|&i| self.names[i].clone()).collect();
        FinPoset::from_fn(names, |a, b| self.leq(idx[a], idx[b])).expect("restriction of a poset")
    }

    /// All upsets, sorted lexicographically by member list.
    pub fn upsets(&self) -> Result<Vec<BitSet>> {
        guard::ensure("poset for upset enumeration", self.len(), guard::UPSET_LIMIT)?;
        let n = self.len();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, BitSet::new(n), BitSet::new(n))];
        while let Some((i, inc, exc)) = stack.pop() {
            let next = (i..n).find(|&j| !inc.contains(j) && !exc.contains(j));
            match next {
                None => out.push(inc),
                Some(j) => {
                    stack.push((j + 1, inc.clone(), exc.union(&self.down[j])));
                    stack.push((j + 1, inc.union(&self.up[j]), exc));
                }
            }
        }
        out.sort_by(|a, b| a.cmp_lex(b));
        Ok(out)
    }

    /// Codirected upsets. At finite scale these are exactly the principal upsets.
    pub fn filters(&self) -> Vec<BitSet> {
        let mut out: Vec<BitSet> = (0..self.len()).map(|x| self.up[x].clone()).collect();
        out.sort_by(|a, b| a.cmp_lex(b));
        out
    }

    /// Covering pairs (x, y): x < y with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.up[x].iter().filter(|&y| y != x) {
                let between = self.up[x].intersection(&self.down[y]).count();
                if between == 2 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Is `f` (indexed by self, valued in `to`) order-preserving? Returns a violating pair.
    pub fn monotone_violation(&self, to: &FinPoset, f: &[usize]) -> Option<(usize, usize)> {
        for x in 0..self.len() {
            for y in self.up[x].iter() {
                if !to.leq(f[x], f[y]) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// An order-preserving map between finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    source: FinPoset,
    target: FinPoset,
    map: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: FinPoset, target: FinPoset, map: Vec<usize>) -> Result<Self> {
        assert_eq!(map.len(), source.len());
        if let Some((x, y)) = source.monotone_violation(&target, &map) {
            return Err(Error::Invalid(vec![Diagnostic::new(
                Code::NotMonotone,
                format!("{} <= {} but {} -> {}, {} -> {}", source.name(x), source.name(y), source.name(x), target.name(map[x]), source.name(y), target.name(map[y])),
            )]));
        }
        Ok(MonotoneMap { source, target, map })
    }

    pub fn source(&self) -> &FinPoset {
        &self.source
    }

    pub fn target(&self) -> &FinPoset {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}
