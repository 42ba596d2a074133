use crate::bitset::BitSet;
use crate::error::{check, Code, Diagnostic, Error, Result};
use crate::order::subfam::find_bounded;
use crate::order::{find_isomorphism, sort_names, FinPoset, Structure};

/// A poset X with a family K of k-sets and a family O of o-sets, all upsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KoSpace {
    base: FinPoset,
    kfam: Vec<BitSet>,
    ofam: Vec<BitSet>,
}

pub(crate) fn normalize(mut fam: Vec<BitSet>) -> Vec<BitSet> {
    fam.sort_by(|a, b| a.cmp_lex(b));
    fam.dedup();
    fam
}

pub(crate) fn family_name(names: &[String], members: &[&BitSet]) -> String {
    let parts: Vec<String> = members.iter().map(|s| crate::order::set_name(names, s)).collect();
    format!("[{}]", parts.join(", "))
}

/// Closure of K under codirected intersections and O under directed unions,
/// and double compactness, by literal subfamily enumeration.
pub(crate) fn check_s1_s2(names: &[String], kfam: &[BitSet], ofam: &[BitSet]) -> Result<Vec<Diagnostic>> {
    let n = names.len();
    let mut ds = Vec::new();
    let codirected_k = |k: usize, i: usize| kfam[k].is_subset(&kfam[i]);
    let directed_o = |k: usize, i: usize| ofam[i].is_subset(&ofam[k]);
    let meet = |fam: &[usize]| fam.iter().fold(BitSet::full(n), |acc, &i| acc.intersection(&kfam[i]));
    let join = |fam: &[usize]| fam.iter().fold(BitSet::new(n), |acc, &i| acc.union(&ofam[i]));

    if let Some(f) = find_bounded(kfam.len(), codirected_k, |f| {
        let m = meet(f);
        (!kfam.contains(&m)).then(|| f.to_vec())
    })? {
        let members: Vec<&BitSet> = f.iter().map(|&i| &kfam[i]).collect();
        ds.push(Diagnostic::new(Code::S1K, format!("intersection of {} is not a k-set", family_name(names, &members))));
    }
    if let Some(f) = find_bounded(ofam.len(), directed_o, |f| {
        let j = join(f);
        (!ofam.contains(&j)).then(|| f.to_vec())
    })? {
        let members: Vec<&BitSet> = f.iter().map(|&i| &ofam[i]).collect();
        ds.push(Diagnostic::new(Code::S1O, format!("union of {} is not an o-set", family_name(names, &members))));
    }
    if let Some((k, f)) = find_bounded(ofam.len(), directed_o, |f| {
        let j = join(f);
        kfam.iter()
            .position(|k| k.is_subset(&j) && !f.iter().any(|&i| k.is_subset(&ofam[i])))
            .map(|k| (k, f.to_vec()))
    })? {
        let members: Vec<&BitSet> = f.iter().map(|&i| &ofam[i]).collect();
        ds.push(Diagnostic::new(
            Code::S2K,
            format!(
                "k-set {} is covered by the directed union of {} but by no member",
                crate::order::set_name(names, &kfam[k]),
                family_name(names, &members)
            ),
        ));
    }
    if let Some((u, f)) = find_bounded(kfam.len(), codirected_k, |f| {
        let m = meet(f);
        ofam.iter()
            .position(|u| m.is_subset(u) && !f.iter().any(|&i| kfam[i].is_subset(u)))
            .map(|u| (u, f.to_vec()))
    })? {
        let members: Vec<&BitSet> = f.iter().map(|&i| &kfam[i]).collect();
        ds.push(Diagnostic::new(
            Code::S2O,
            format!(
                "o-set {} contains the codirected intersection of {} but no member",
                crate::order::set_name(names, &ofam[u]),
                family_name(names, &members)
            ),
        ));
    }
    Ok(ds)
}

impl KoSpace {
    /// Validate (S1)-(S3) and the upset condition.
    pub fn new(base: FinPoset, kfam: Vec<BitSet>, ofam: Vec<BitSet>) -> Result<Self> {
        let kfam = normalize(kfam);
        let ofam = normalize(ofam);
        let names = base.names().to_vec();
        let mut ds = Vec::new();
        for (label, fam) in [("k-set", &kfam), ("o-set", &ofam)] {
            for s in fam.iter() {
                if let Some((x, y)) = base.upset_violation(s) {
                    ds.push(Diagnostic::new(
                        Code::NotUpset,
                        format!("{label} {} contains {} but not {}", base.set_name(s), base.name(x), base.name(y)),
                    ));
                }
            }
        }
        ds.extend(check_s1_s2(&names, &kfam, &ofam)?);
        for x in 0..base.len() {
            if !kfam.contains(base.up(x)) {
                ds.push(Diagnostic::new(Code::S3K, format!("up-set of {} is not a k-set", base.name(x))));
            }
            if !ofam.contains(&base.down(x).complement()) {
                ds.push(Diagnostic::new(Code::S3O, format!("complement of down-set of {} is not an o-set", base.name(x))));
            }
        }
        check(ds)?;
        Ok(KoSpace { base, kfam, ofam })
    }

    pub fn from_names<S: AsRef<str>>(base: FinPoset, kfam: &[Vec<S>], ofam: &[Vec<S>]) -> Result<Self> {
        let k = kfam.iter().map(|m| base.subset(m)).collect::<Result<Vec<_>>>()?;
        let o = ofam.iter().map(|m| base.subset(m)).collect::<Result<Vec<_>>>()?;
        Self::new(base, k, o)
    }

    /// Skip validation; only for structures correct by construction.
    pub(crate) fn trusted(base: FinPoset, kfam: Vec<BitSet>, ofam: Vec<BitSet>) -> Self {
        KoSpace { base, kfam: normalize(kfam), ofam: normalize(ofam) }
    }

    pub fn empty() -> Self {
        KoSpace { base: FinPoset::empty(), kfam: vec![], ofam: vec![] }
    }

    pub fn base(&self) -> &FinPoset {
        &self.base
    }

    pub fn kfam(&self) -> &[BitSet] {
        &self.kfam
    }

    pub fn ofam(&self) -> &[BitSet] {
        &self.ofam
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn k_index(&self, s: &BitSet) -> Option<usize> {
        self.kfam.iter().position(|t| t == s)
    }

    pub fn o_index(&self, s: &BitSet) -> Option<usize> {
        self.ofam.iter().position(|t| t == s)
    }

    /// (X^op, {X∖U}, {X∖K})
    pub fn degroot_dual(&self) -> KoSpace {
        KoSpace::trusted(
            self.base.dual(),
            self.ofam.iter().map(|u| u.complement()).collect(),
            self.kfam.iter().map(|k| k.complement()).collect(),
        )
    }

    /// K = {↑x}, O = {X∖↓x}.
    pub fn minimal(x: &FinPoset) -> KoSpace {
        KoSpace::trusted(
            x.clone(),
            (0..x.len()).map(|i| x.up(i).clone()).collect(),
            (0..x.len()).map(|i| x.down(i).complement()).collect(),
        )
    }

    /// K = principal upsets, O = all upsets.
    pub fn from_dcpo(d: &FinPoset) -> Result<KoSpace> {
        Ok(KoSpace::trusted(d.clone(), (0..d.len()).map(|i| d.up(i).clone()).collect(), d.upsets()?))
    }

    pub(crate) fn structure(&self) -> Structure {
        let n = self.len();
        let (nk, no) = (self.kfam.len(), self.ofam.len());
        let total = n + nk + no;
        let mut order = vec![BitSet::new(total); total];
        let mut member = vec![BitSet::new(total); total];
        for x in 0..n {
            for y in self.base.up(x).iter() {
                order[x].insert(y);
            }
            for (i, k) in self.kfam.iter().enumerate() {
                if k.contains(x) {
                    member[x].insert(n + i);
                }
            }
            for (i, u) in self.ofam.iter().enumerate() {
                if u.contains(x) {
                    member[x].insert(n + nk + i);
                }
            }
        }
        let mut colors = vec![0; n];
        colors.extend(vec![1; nk]);
        colors.extend(vec![2; no]);
        Structure { colors, rels: vec![order, member] }
    }

    /// Restriction to a subset of points (families intersected); unvalidated.
    pub(crate) fn restrict_unchecked(&self, keep: &BitSet) -> KoSpace {
        let idx = keep.to_vec();
        let base = self.base.restrict(keep);
        let shrink = |s: &BitSet| BitSet::from_indices(idx.len(), (0..idx.len()).filter(|&i| s.contains(idx[i])));
        KoSpace::trusted(base, self.kfam.iter().map(shrink).collect(), self.ofam.iter().map(shrink).collect())
    }
}

/// Structure-preserving bijection of points, if any.
pub fn kospace_isomorphic(a: &KoSpace, b: &KoSpace) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.kfam.len() != b.kfam.len() || a.ofam.len() != b.ofam.len() {
        return None;
    }
    find_isomorphism(&a.structure(), &b.structure()).map(|f| f[..a.len()].to_vec())
}

/// Validate on a bare point set by double fitness, T0 separation and
/// principality, then recover the order from the o-sets.
pub fn validate_kospace_alt<S: AsRef<str>>(points: &[S], kfam: &[Vec<S>], ofam: &[Vec<S>]) -> Result<KoSpace> {
    let raw: Vec<String> = points.iter().map(|s| s.as_ref().to_string()).collect();
    let (names, _) = sort_names(&raw)?;
    let n = names.len();
    let to_set = |m: &Vec<S>| -> Result<BitSet> {
        let mut s = BitSet::new(n);
        for x in m {
            let i = names
                .binary_search_by(|p| p.as_str().cmp(x.as_ref()))
                .map_err(|_| Error::Invalid(vec![Diagnostic::new(Code::UnknownElement, x.as_ref())]))?;
            s.insert(i);
        }
        Ok(s)
    };
    let kf = normalize(kfam.iter().map(to_set).collect::<Result<Vec<_>>>()?);
    let of = normalize(ofam.iter().map(to_set).collect::<Result<Vec<_>>>()?);
    let sn = |s: &BitSet| crate::order::set_name(&names, s);

    let mut ds = check_s1_s2(&names, &kf, &of)?;
    for u in &of {
        let inner = kf.iter().filter(|k| k.is_subset(u)).fold(BitSet::new(n), |acc, k| acc.union(k));
        if &inner != u {
            ds.push(Diagnostic::new(Code::A1O, format!("o-set {} is not a union of k-sets", sn(u))));
        }
    }
    for k in &kf {
        let outer = of.iter().filter(|u| k.is_subset(u)).fold(BitSet::full(n), |acc, u| acc.intersection(u));
        if &outer != k {
            ds.push(Diagnostic::new(Code::A1K, format!("k-set {} is not an intersection of o-sets", sn(k))));
        }
    }
    'sep: for x in 0..n {
        for y in x + 1..n {
            if of.iter().all(|u| u.contains(x) == u.contains(y)) {
                ds.push(Diagnostic::new(Code::A2, format!("{} and {} are not separated", names[x], names[y])));
                break 'sep;
            }
        }
    }
    for x in 0..n {
        let with: Vec<&BitSet> = kf.iter().filter(|k| k.contains(x)).collect();
        if !with.iter().any(|k| with.iter().all(|l| k.is_subset(l))) {
            ds.push(Diagnostic::new(Code::A3K, format!("no smallest k-set contains {}", names[x])));
        }
        let without: Vec<&BitSet> = of.iter().filter(|u| !u.contains(x)).collect();
        if !without.iter().any(|u| without.iter().all(|v| v.is_subset(u))) {
            ds.push(Diagnostic::new(Code::A3O, format!("no largest o-set avoids {}", names[x])));
        }
    }
    check(ds)?;
    let base = FinPoset::from_fn(names, |x, y| of.iter().all(|u| !u.contains(x) || u.contains(y)))?;
    KoSpace::new(base, kf, of)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sing() -> KoSpace {
        KoSpace::from_names(FinPoset::antichain(&["x"]).unwrap(), &[vec!["x"]], &[vec![]]).unwrap()
    }

    /// Oracle for (S1)/(S2): every subfamily tested directly against the definitions.
    fn brute_s1_s2(k: &[BitSet], o: &[BitSet], n: usize) -> bool {
        let subs = |m: usize| (1u32..1 << m).map(move |mask| (0..m).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
        for f in subs(k.len()) {
            let codir = f.iter().all(|&a| f.iter().all(|&b| f.iter().any(|&c| k[c].is_subset(&k[a].intersection(&k[b])))));
            if !codir {
                continue;
            }
            let m = f.iter().fold(BitSet::full(n), |acc, &i| acc.intersection(&k[i]));
            if !k.contains(&m) {
                return false;
            }
            if o.iter().any(|u| m.is_subset(u) && !f.iter().any(|&i| k[i].is_subset(u))) {
                return false;
            }
        }
        for i in subs(o.len()) {
            let dir = i.iter().all(|&a| i.iter().all(|&b| i.iter().any(|&c| o[a].union(&o[b]).is_subset(&o[c]))));
            if !dir {
                continue;
            }
            let j = i.iter().fold(BitSet::new(n), |acc, &x| acc.union(&o[x]));
            if !o.contains(&j) {
                return false;
            }
            if k.iter().any(|kk| kk.is_subset(&j) && !i.iter().any(|&x| kk.is_subset(&o[x]))) {
                return false;
            }
        }
        true
    }

    #[test]
    fn examples() {
        assert!(KoSpace::new(FinPoset::empty(), vec![], vec![]).is_ok());
        assert!(KoSpace::from_names(FinPoset::antichain(&["x"]).unwrap(), &[vec!["x"]], &[vec![]]).is_ok());
        let e = KoSpace::from_names::<&str>(FinPoset::antichain(&["x"]).unwrap(), &[], &[vec![]]).unwrap_err();
        assert!(e.has_code(Code::S3K));
        assert!(e.diagnostics()[0].witness.contains('x'));
    }

    #[test]
    fn not_upset_rejected() {
        let c = FinPoset::chain(&["a", "b"]).unwrap();
        let e = KoSpace::from_names(c, &[vec!["a", "b"], vec!["b"], vec!["a"]], &[vec!["b"], vec![]]).unwrap_err();
        assert!(e.has_code(Code::NotUpset));
    }

    #[test]
    fn s1_s2_agree_with_oracle_on_all_small_families() {
        // Arbitrary families of subsets of a 3-point set.
        for km in 0u32..1 << 8 {
            if km.count_ones() > 4 {
                continue;
            }
            for om in (0u32..1 << 8).step_by(7) {
                let k: Vec<BitSet> = (0..8).filter(|i| km >> i & 1 == 1).map(|m| BitSet::from_indices(3, (0..3).filter(|b| m >> b & 1 == 1))).collect();
                let o: Vec<BitSet> = (0..8).filter(|i| om >> i & 1 == 1).map(|m| BitSet::from_indices(3, (0..3).filter(|b| m >> b & 1 == 1))).collect();
                let names = vec!["a".to_string(), "b".to_string(), "c".to_string()];
                let ours = check_s1_s2(&names, &k, &o).unwrap().is_empty();
                assert_eq!(ours, brute_s1_s2(&k, &o, 3));
                // Finite families are always (co)directed-complete and doubly compact.
                assert!(ours);
            }
        }
    }

    #[test]
    fn minimal_and_dcpo() {
        let c = FinPoset::chain(&["a", "b"]).unwrap();
        let m = KoSpace::minimal(&c);
        assert_eq!(m.kfam(), &[c.subset(&["a", "b"]).unwrap(), c.subset(&["b"]).unwrap()]);
        assert_eq!(m.ofam(), &[BitSet::new(2), c.subset(&["b"]).unwrap()]);
        assert!(KoSpace::new(c.clone(), m.kfam().to_vec(), m.ofam().to_vec()).is_ok());
        assert_eq!(KoSpace::minimal(&FinPoset::empty()), KoSpace::empty());
        assert_eq!(KoSpace::minimal(&FinPoset::antichain(&["x"]).unwrap()), sing());
        let d = KoSpace::from_dcpo(&c).unwrap();
        assert_eq!(d.ofam().len(), 3);
        let p = KoSpace::from_dcpo(&FinPoset::antichain(&["x"]).unwrap()).unwrap();
        assert_eq!(p.ofam(), &[BitSet::new(1), BitSet::full(1)]);
    }

    #[test]
    fn dcpo_dual_is_the_closed_set_space() {
        // Dual of (D, principal upsets, upsets): points D^op, k-sets = complements of upsets
        // (downsets of D = upsets of D^op), o-sets = complements of principal upsets.
        let c = FinPoset::chain(&["a", "b"]).unwrap();
        let d = KoSpace::from_dcpo(&c).unwrap().degroot_dual();
        let op = c.dual();
        assert_eq!(d.base(), &op);
        assert_eq!(d.kfam(), &normalize(op.upsets().unwrap())[..]);
        let expect: Vec<BitSet> = (0..2).map(|x| c.up(x).complement()).collect();
        assert_eq!(d.ofam(), &normalize(expect)[..]);
        assert!(KoSpace::new(d.base().clone(), d.kfam().to_vec(), d.ofam().to_vec()).is_ok());
    }

    #[test]
    fn degroot_examples() {
        assert_eq!(KoSpace::empty().degroot_dual(), KoSpace::empty());
        assert_eq!(sing().degroot_dual(), sing());
        let c = FinPoset::new(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        let s = KoSpace::from_dcpo(&c).unwrap();
        assert_eq!(s.degroot_dual().degroot_dual(), s);
    }

    #[test]
    fn alt_axioms() {
        let e = validate_kospace_alt(&["x", "y"], &[vec!["x"], vec!["y"]], &[vec![]]).unwrap_err();
        assert!(e.has_code(Code::A1K));
        assert!(e.has_code(Code::A2));
        assert!(validate_kospace_alt::<&str>(&[], &[], &[]).is_ok());
        let c = FinPoset::new(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        let s = KoSpace::from_dcpo(&c).unwrap();
        let fam = |f: &[BitSet]| -> Vec<Vec<String>> { f.iter().map(|m| m.iter().map(|i| c.name(i).to_string()).collect()).collect() };
        let back = validate_kospace_alt(c.names(), &fam(s.kfam()), &fam(s.ofam())).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn isomorphism_detects_relabelling() {
        let c1 = FinPoset::chain(&["a", "b"]).unwrap();
        let c2 = FinPoset::chain(&["q", "p"]).unwrap();
        let s1 = KoSpace::minimal(&c1);
        let s2 = KoSpace::minimal(&c2);
        assert_eq!(kospace_isomorphic(&s1, &s2), Some(vec![1, 0]));
        assert!(kospace_isomorphic(&s1, &KoSpace::from_dcpo(&c1).unwrap()).is_none());
    }
}
