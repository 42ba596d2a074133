use crate::bitset::BitSet;
use crate::error::{check, Code, Diagnostic, Error, Result};
use crate::order::{sort_names, FinPoset};

use super::space::{normalize, KoSpace};

/// A finite topological space given by its open sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinTopSpace {
    points: Vec<String>,
    opens: Vec<BitSet>,
}

impl FinTopSpace {
    /// Validate the topology axioms and T0.
    pub fn new<S: AsRef<str>>(points: &[S], opens: &[Vec<S>]) -> Result<Self> {
        let raw: Vec<String> = points.iter().map(|s| s.as_ref().to_string()).collect();
        let (names, _) = sort_names(&raw)?;
        let n = names.len();
        let mut sets = Vec::new();
        for m in opens {
            let mut s = BitSet::new(n);
            for x in m {
                let i = names
                    .binary_search_by(|p| p.as_str().cmp(x.as_ref()))
                    .map_err(|_| Error::Invalid(vec![Diagnostic::new(Code::UnknownElement, x.as_ref())]))?;
                s.insert(i);
            }
            sets.push(s);
        }
        Self::from_sets(names, sets)
    }

    pub fn from_sets(points: Vec<String>, opens: Vec<BitSet>) -> Result<Self> {
        let n = points.len();
        let opens = normalize(opens);
        let sn = |s: &BitSet| crate::order::set_name(&points, s);
        let mut ds = Vec::new();
        if !opens.contains(&BitSet::new(n)) {
            ds.push(Diagnostic::new(Code::TopEmpty, "the empty set is not open"));
        }
        if !opens.contains(&BitSet::full(n)) {
            ds.push(Diagnostic::new(Code::TopWhole, "the whole space is not open"));
        }
        'pairs: for (i, a) in opens.iter().enumerate() {
            for b in &opens[i + 1..] {
                if !opens.contains(&a.union(b)) {
                    ds.push(Diagnostic::new(Code::TopUnion, format!("{} ∪ {} is not open", sn(a), sn(b))));
                    break 'pairs;
                }
            }
        }
        'pairs2: for (i, a) in opens.iter().enumerate() {
            for b in &opens[i + 1..] {
                if !opens.contains(&a.intersection(b)) {
                    ds.push(Diagnostic::new(Code::TopIntersection, format!("{} ∩ {} is not open", sn(a), sn(b))));
                    break 'pairs2;
                }
            }
        }
        'sep: for x in 0..n {
            for y in x + 1..n {
                if opens.iter().all(|u| u.contains(x) == u.contains(y)) {
                    ds.push(Diagnostic::new(Code::T0, format!("{} and {} are topologically indistinguishable", points[x], points[y])));
                    break 'sep;
                }
            }
        }
        check(ds)?;
        Ok(FinTopSpace { points, opens })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn opens(&self) -> &[BitSet] {
        &self.opens
    }

    /// x <= y iff every open containing x contains y.
    pub fn specialization(&self) -> FinPoset {
        FinPoset::from_fn(self.points.clone(), |x, y| self.opens.iter().all(|u| !u.contains(x) || u.contains(y)))
            .expect("T0 space gives a partial order")
    }
}

/// (X, KSat(X), O(X)): saturated compact sets, which at finite size are all
/// intersections of opens, with the opens.
pub fn from_topspace(t: &FinTopSpace) -> Result<KoSpace> {
    let n = t.points.len();
    let mut ksat: Vec<BitSet> = vec![BitSet::full(n)];
    let mut grew = true;
    while grew {
        grew = false;
        let cur = ksat.clone();
        for a in &cur {
            for u in &t.opens {
                let m = a.intersection(u);
                if !ksat.contains(&m) {
                    ksat.push(m);
                    grew = true;
                }
            }
        }
    }
    KoSpace::new(t.specialization(), ksat, t.opens.clone())
        .map_err(|e| Error::theorem("finite T0 spaces are ko-spaces", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sierpinski() {
        let t = FinTopSpace::new(&["0", "1"], &[vec![], vec!["1"], vec!["0", "1"]]).unwrap();
        let s = from_topspace(&t).unwrap();
        assert!(s.base().leq(0, 1));
        let expect: Vec<BitSet> = vec![BitSet::new(2), BitSet::singleton(2, 1), BitSet::full(2)];
        assert_eq!(s.kfam(), &normalize(expect.clone())[..]);
        assert_eq!(s.ofam(), &normalize(expect)[..]);
    }

    #[test]
    fn axioms() {
        let e = FinTopSpace::new(&["a", "b"], &[vec!["a"]]).unwrap_err();
        assert!(e.has_code(Code::TopEmpty) && e.has_code(Code::TopWhole));
        let e = FinTopSpace::new(&["a", "b"], &[vec![], vec!["a", "b"]]).unwrap_err();
        assert!(e.has_code(Code::T0));
        let e = FinTopSpace::new(&["a", "b", "c"], &[vec![], vec!["a"], vec!["b"], vec!["a", "b", "c"]]).unwrap_err();
        assert!(e.has_code(Code::TopUnion));
    }

    #[test]
    fn finite_t0_gives_all_upsets() {
        // Oracle: every topology on 3 points; saturated compacts are exactly the
        // upsets of the specialization order, as are the opens.
        let all: Vec<BitSet> = (0u32..8).map(|m| BitSet::from_indices(3, (0..3).filter(|b| m >> b & 1 == 1))).collect();
        let mut seen = 0;
        for fm in 0u32..1 << 8 {
            let opens: Vec<BitSet> = (0..8).filter(|i| fm >> i & 1 == 1).map(|i| all[i].clone()).collect();
            let names = vec!["a".to_string(), "b".to_string(), "c".to_string()];
            let Ok(t) = FinTopSpace::from_sets(names, opens) else { continue };
            seen += 1;
            let s = from_topspace(&t).unwrap();
            let ups = normalize(t.specialization().upsets().unwrap());
            assert_eq!(s.kfam(), &ups[..]);
            assert_eq!(s.ofam(), &ups[..]);
        }
        // T0 topologies on 3 labelled points
        assert_eq!(seen, 19);
    }
}
