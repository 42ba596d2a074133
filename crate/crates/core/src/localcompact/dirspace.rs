use crate::bitset::BitSet;
use crate::error::{check, Code, Diagnostic, Error, Result};
use crate::guard;
use crate::kospace::KoSpace;
use crate::order::subfam::find_bounded;
use crate::order::{set_name, sort_names, FinPoset};

fn normalize(mut fam: Vec<BitSet>) -> Vec<BitSet> {
    fam.sort_by(|a, b| a.cmp_lex(b));
    fam.dedup();
    fam
}

fn union_of<'a>(n: usize, it: impl IntoIterator<Item = &'a BitSet>) -> BitSet {
    it.into_iter().fold(BitSet::new(n), |acc, s| acc.union(s))
}

fn inter_of<'a>(n: usize, it: impl IntoIterator<Item = &'a BitSet>) -> BitSet {
    it.into_iter().fold(BitSet::full(n), |acc, s| acc.intersection(s))
}

/// A finite set with a family of open subsets closed under directed unions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dirspace {
    points: Vec<String>,
    opens: Vec<BitSet>,
}

impl Dirspace {
    pub fn new<S: AsRef<str>>(points: &[S], opens: &[Vec<S>]) -> Result<Self> {
        let raw: Vec<String> = points.iter().map(|s| s.as_ref().to_string()).collect();
        let (names, _) = sort_names(&raw)?;
        let mut sets = Vec::new();
        for m in opens {
            let mut s = BitSet::new(names.len());
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
        let opens = normalize(opens);
        let n = points.len();
        let bad = find_bounded(opens.len(), |a, i| opens[i].is_subset(&opens[a]), |f| {
            let u = union_of(n, f.iter().map(|&i| &opens[i]));
            (!opens.contains(&u)).then_some(u)
        })?;
        let ds = bad
            .map(|u| vec![Diagnostic::new(Code::DirectedUnion, format!("directed union {} is not open", set_name(&points, &u)))])
            .unwrap_or_default();
        check(ds)?;
        Ok(Dirspace { points, opens })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn opens(&self) -> &[BitSet] {
        &self.opens
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// x <= y iff every open containing x contains y.
    pub fn spec_leq(&self, x: usize, y: usize) -> bool {
        self.opens.iter().all(|u| !u.contains(x) || u.contains(y))
    }

    pub fn is_t0(&self) -> bool {
        (0..self.len()).all(|x| (x + 1..self.len()).all(|y| !(self.spec_leq(x, y) && self.spec_leq(y, x))))
    }

    pub fn specialization(&self) -> Result<FinPoset> {
        if let Some((x, y)) =
            (0..self.len()).flat_map(|x| (x + 1..self.len()).map(move |y| (x, y))).find(|&(x, y)| self.spec_leq(x, y) && self.spec_leq(y, x))
        {
            return Err(Error::Invalid(vec![Diagnostic::new(
                Code::T0,
                format!("{} and {} are indistinguishable", self.points[x], self.points[y]),
            )]));
        }
        FinPoset::from_fn(self.points.clone(), |x, y| self.spec_leq(x, y))
    }

    /// Opens containing S.
    fn nbhds(&self, s: &BitSet) -> Vec<&BitSet> {
        self.opens.iter().filter(|u| s.is_subset(u)).collect()
    }

    /// The open neighbourhoods of S are codirected with intersection S.
    pub fn is_saturated(&self, s: &BitSet) -> bool {
        let nb = self.nbhds(s);
        let codirected = !nb.is_empty()
            && nb.iter().all(|a| nb.iter().all(|b| nb.iter().any(|c| c.is_subset(a) && c.is_subset(b))));
        codirected && inter_of(self.len(), nb.iter().copied()) == *s
    }

    /// Unions of the directed subfamilies of opens, each with its members.
    fn directed_unions(&self) -> Result<Vec<(BitSet, Vec<usize>)>> {
        let mut out = Vec::new();
        find_bounded(self.opens.len(), |a, i| self.opens[i].is_subset(&self.opens[a]), |f| {
            out.push((union_of(self.len(), f.iter().map(|&i| &self.opens[i])), f.to_vec()));
            None::<()>
        })?;
        Ok(out)
    }

    /// Every directed family of opens covering S has a member containing S.
    pub fn is_compact(&self, s: &BitSet) -> Result<bool> {
        let dus = self.directed_unions()?;
        Ok(compact_in(&dus, &self.opens, s))
    }

    /// Compact saturated subsets, in lexicographic order.
    pub fn ksat(&self) -> Result<Vec<BitSet>> {
        let n = self.len();
        guard::ensure("dirspace for subset enumeration", n, guard::UPSET_LIMIT)?;
        let dus = self.directed_unions()?;
        let mut out: Vec<BitSet> = (0u64..1 << n)
            .map(|m| BitSet::from_indices(n, (0..n).filter(|&i| m >> i & 1 == 1)))
            .filter(|s| self.is_saturated(s) && compact_in(&dus, &self.opens, s))
            .collect();
        out.sort_by(|a, b| a.cmp_lex(b));
        Ok(out)
    }

    /// Every codirected family F of compact saturated sets with ⋂F ⊆ U open
    /// has a member inside U.
    pub fn is_well_filtered(&self) -> Result<bool> {
        let ks = self.ksat()?;
        let n = self.len();
        let bad = find_bounded(ks.len(), |a, i| ks[a].is_subset(&ks[i]), |f| {
            let m = inter_of(n, f.iter().map(|&i| &ks[i]));
            self.opens.iter().find(|u| m.is_subset(u) && !f.iter().any(|&i| ks[i].is_subset(u))).map(|_| ())
        })?;
        Ok(bad.is_none())
    }

    /// K ⊆ U gives an open U' and compact saturated K' with K ⊆ U' ⊆ K' ⊆ U.
    pub fn is_locally_compact(&self) -> Result<bool> {
        let ks = self.ksat()?;
        Ok(ks.iter().all(|k| {
            self.opens.iter().filter(|u| k.is_subset(u)).all(|u| {
                self.opens.iter().any(|u2| k.is_subset(u2) && ks.iter().any(|k2| u2.is_subset(k2) && k2.is_subset(u)))
            })
        }))
    }

    /// Every open is the directed union of the compact saturated sets inside it.
    pub fn opens_are_directed_unions(&self) -> Result<bool> {
        let ks = self.ksat()?;
        Ok(self.opens.iter().all(|u| {
            let inside: Vec<&BitSet> = ks.iter().filter(|k| k.is_subset(u)).collect();
            let directed = !inside.is_empty()
                && inside.iter().all(|a| inside.iter().all(|b| inside.iter().any(|c| a.is_subset(c) && b.is_subset(c))));
            directed && union_of(self.len(), inside.iter().copied()) == *u
        }))
    }

    /// (X, {X∖K : K compact saturated}); fails if that is not a dirspace.
    pub fn degroot(&self) -> Result<Dirspace> {
        let opens = self.ksat()?.iter().map(|k| k.complement()).collect();
        Dirspace::from_sets(self.points.clone(), opens)
    }

    pub fn has_degroot_duality(&self) -> Result<bool> {
        let d = match self.degroot() {
            Ok(d) => d,
            Err(Error::Invalid(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        Ok(matches!(d.degroot(), Ok(dd) if dd == *self))
    }

    /// (X, KSat, O) with X under the specialization order.
    pub fn to_kospace(&self) -> Result<KoSpace> {
        KoSpace::new(self.specialization()?, self.ksat()?, self.opens.clone())
    }

    pub fn from_kospace(s: &KoSpace) -> Dirspace {
        Dirspace { points: s.base().names().to_vec(), opens: normalize(s.ofam().to_vec()) }
    }
}

fn compact_in(dus: &[(BitSet, Vec<usize>)], opens: &[BitSet], s: &BitSet) -> bool {
    dus.iter().all(|(u, f)| !s.is_subset(u) || f.iter().any(|&i| s.is_subset(&opens[i])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kospace::{from_topspace, FinTopSpace};
    use crate::localcompact::check_bicontinuous;

    fn all_dirspaces(n: usize) -> Vec<Dirspace> {
        crate::catalog::all_dirspaces(n).unwrap()
    }

    #[test]
    fn singleton_whole_set_only() {
        let d = Dirspace::new(&["x"], &[vec!["x"]]).unwrap();
        let empty = BitSet::new(1);
        assert!(d.specialization().unwrap().is_upset(&empty));
        assert!(!d.is_saturated(&empty));
        assert!(d.is_compact(&empty).unwrap());
        assert_eq!(d.ksat().unwrap(), vec![BitSet::full(1)]);
        assert!(d.is_locally_compact().unwrap() && d.is_well_filtered().unwrap());
    }

    #[test]
    fn empty_dirspace() {
        let d = Dirspace::new::<&str>(&[], &[]).unwrap();
        // the empty set is the intersection of no opens but has no neighbourhoods
        assert!(d.ksat().unwrap().is_empty());
    }

    #[test]
    fn topological_saturated_is_intersection_of_opens() {
        for d in all_dirspaces(3) {
            let top = FinTopSpace::from_sets(d.points().to_vec(), d.opens().to_vec());
            let Ok(t) = top else { continue };
            assert!(d.is_well_filtered().unwrap());
            let s = from_topspace(&t).unwrap();
            assert_eq!(d.ksat().unwrap(), s.kfam());
        }
    }

    #[test]
    fn degroot_involution_on_qualifying_dirspaces() {
        let mut qualifying = 0;
        for n in 0..=3 {
            for d in all_dirspaces(n) {
                if d.is_locally_compact().unwrap() && d.is_well_filtered().unwrap() && d.opens_are_directed_unions().unwrap() {
                    qualifying += 1;
                    assert!(d.has_degroot_duality().unwrap(), "{:?}", d);
                    let g = d.degroot().unwrap();
                    assert!(g.is_locally_compact().unwrap() && g.is_well_filtered().unwrap() && g.opens_are_directed_unions().unwrap());
                }
            }
        }
        assert!(qualifying > 10);
    }

    /// Codirected neighbourhoods of points and a largest open avoiding each point.
    fn point_conditions(d: &Dirspace) -> bool {
        (0..d.len()).all(|x| {
            let s = BitSet::singleton(d.len(), x);
            let nb = d.nbhds(&s);
            let codir = !nb.is_empty() && nb.iter().all(|a| nb.iter().all(|b| nb.iter().any(|c| c.is_subset(a) && c.is_subset(b))));
            let avoid: Vec<&BitSet> = d.opens.iter().filter(|u| !u.contains(x)).collect();
            let largest = avoid.iter().any(|a| avoid.iter().all(|b| b.is_subset(a)));
            codir && largest
        })
    }

    #[test]
    fn qualifying_dirspaces_are_bicontinuous_kospaces() {
        let mut seen = 0;
        for n in 0..=3 {
            for d in all_dirspaces(n) {
                let qualifies = d.is_t0()
                    && d.is_locally_compact().unwrap()
                    && d.is_well_filtered().unwrap()
                    && d.opens_are_directed_unions().unwrap()
                    && point_conditions(&d);
                if !qualifies {
                    continue;
                }
                seen += 1;
                let s = d.to_kospace().unwrap();
                assert!(check_bicontinuous(&s).bicontinuous);
                assert_eq!(Dirspace::from_kospace(&s), d);
            }
        }
        assert!(seen > 5);
    }
}
