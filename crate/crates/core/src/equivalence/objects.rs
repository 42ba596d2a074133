use crate::bidcpo::{cp_pairs_lattice, cp_with, validate_bidcpo, BiDcpo, EmbeddedBiDcpo};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::kospace::KoSpace;
use crate::order::{set_names, upset_lattice, FinPoset};
use crate::polarity::{to_double_base, DoubleBaseLattice, Polarity};

/// (K, O, ⊆) together with the positions of each family member in it.
#[derive(Clone, Debug)]
pub struct SpaceBiDcpo {
    pub bidcpo: BiDcpo,
    /// k-family index -> k-element index
    pub kidx: Vec<usize>,
    /// o-family index -> o-element index
    pub oidx: Vec<usize>,
}

/// The ko-space of a distributive bi-dcpo with its hat maps.
#[derive(Clone, Debug)]
pub struct BiDcpoSpace {
    pub space: KoSpace,
    /// point index -> (k, u)
    pub points: Vec<(usize, usize)>,
    /// k -> k-family index of k̂
    pub khat: Vec<usize>,
    /// u -> o-family index of û
    pub ohat: Vec<usize>,
}

pub fn kospace_to_bidcpo_full(s: &KoSpace) -> Result<SpaceBiDcpo> {
    let names = s.base().names();
    let (p, kidx, oidx) = Polarity::from_fn_unsorted(set_names(names, s.kfam()), set_names(names, s.ofam()), |k, u| {
        s.kfam()[k].is_subset(&s.ofam()[u])
    })?;
    let b = validate_bidcpo(&p).map_err(|e| Error::theorem("(K, O, ⊆) is a bi-dcpo", e.to_string()))?;
    if let Some(q) = b.distributivity_witness() {
        return Err(Error::theorem("(K, O, ⊆) is distributive", format!("{:?}", b.quadruple_names(q))));
    }
    Ok(SpaceBiDcpo { bidcpo: b, kidx, oidx })
}

/// (K, O, ⊆)
pub fn kospace_to_bidcpo(s: &KoSpace) -> Result<BiDcpo> {
    kospace_to_bidcpo_full(s).map(|r| r.bidcpo)
}

fn not_distributive(b: &BiDcpo) -> Result<()> {
    match b.distributivity_witness() {
        Some(q) => {
            let (k, l, u, v) = b.quadruple_names(q);
            Err(Error::NotDistributive(format!("quadruple ({k}, {l}, {u}, {v})")))
        }
        None => Ok(()),
    }
}

pub fn bidcpo_to_kospace_full(b: &BiDcpo) -> Result<BiDcpoSpace> {
    not_distributive(b)?;
    let p = b.pol();
    let kord = b.k_order();
    let cps = cp_with(p, kord, b.o_order());
    let names: Vec<String> = cps.iter().map(|&(k, _)| p.kname(k).to_string()).collect();
    let (base, perm) = FinPoset::from_fn_unsorted(names, |i, j| kord.leq(cps[j].0, cps[i].0))?;
    let n = cps.len();
    let mut points = vec![(0, 0); n];
    for (old, &new) in perm.iter().enumerate() {
        points[new] = cps[old];
    }
    let khats: Vec<BitSet> = (0..p.klen()).map(|k| BitSet::from_indices(n, (0..n).filter(|&i| kord.leq(points[i].0, k)))).collect();
    let ohats: Vec<BitSet> = (0..p.olen()).map(|u| BitSet::from_indices(n, (0..n).filter(|&i| p.rel(points[i].0, u)))).collect();
    let space = KoSpace::new(base, khats.clone(), ohats.clone())
        .map_err(|e| Error::theorem("distributive bi-dcpos give ko-spaces", e.to_string()))?;
    let khat: Vec<usize> = khats.iter().map(|s| space.k_index(s).expect("member")).collect();
    let ohat: Vec<usize> = ohats.iter().map(|s| space.o_index(s).expect("member")).collect();
    if (0..khat.len()).any(|i| khat[..i].contains(&khat[i])) || (0..ohat.len()).any(|i| ohat[..i].contains(&ohat[i])) {
        return Err(Error::theorem("hat maps are injective", "two elements share a hat".into()));
    }
    Ok(BiDcpoSpace { space, points, khat, ohat })
}

/// Points are the completely prime pairs, named by their k-element.
pub fn bidcpo_to_kospace(b: &BiDcpo) -> Result<KoSpace> {
    bidcpo_to_kospace_full(b).map(|r| r.space)
}

pub fn bidcpo_to_embedded(b: &BiDcpo) -> Result<EmbeddedBiDcpo> {
    let d = to_double_base(b.pol())?;
    EmbeddedBiDcpo::new(d).map_err(|e| Error::theorem("concept lattice of a bi-dcpo is embedded", e.to_string()))
}

pub fn embedded_to_bidcpo(e: &EmbeddedBiDcpo) -> Result<BiDcpo> {
    validate_bidcpo(&e.dbl().to_polarity())
        .map_err(|err| Error::theorem("embedded bi-dcpos restrict to bi-dcpos", err.to_string()))
}

/// (Up(X), K, O)
pub fn kospace_to_embedded(s: &KoSpace) -> Result<EmbeddedBiDcpo> {
    let up = upset_lattice(s.base())?;
    let n = up.lattice.len();
    let pick = |fam: &[BitSet]| BitSet::from_indices(n, fam.iter().map(|a| up.element_of(a).expect("upset")));
    let d = DoubleBaseLattice::new(up.lattice.clone(), pick(s.kfam()), pick(s.ofam()))
        .map_err(|e| Error::theorem("(Up(X), K, O) is a double base lattice", e.to_string()))?;
    EmbeddedBiDcpo::new(d).map_err(|e| Error::theorem("(Up(X), K, O) is an embedded bi-dcpo", e.to_string()))
}

/// Points are the lattice completely prime pairs, named by their first component.
pub fn embedded_to_kospace(e: &EmbeddedBiDcpo) -> Result<KoSpace> {
    let l = e.dbl().lattice();
    if let Some((k, u, c)) = l.distributivity_witness() {
        return Err(Error::NotDistributive(format!("cut rule fails at ({}, {}, {})", l.name(k), l.name(u), l.name(c))));
    }
    let cps = cp_pairs_lattice(l);
    let names: Vec<String> = cps.iter().map(|&(a, _)| l.name(a).to_string()).collect();
    let (base, perm) = FinPoset::from_fn_unsorted(names, |i, j| l.leq(cps[j].0, cps[i].0))?;
    let n = cps.len();
    let mut points = vec![0; n];
    for (old, &new) in perm.iter().enumerate() {
        points[new] = cps[old].0;
    }
    let hat = |a: usize| BitSet::from_indices(n, (0..n).filter(|&i| l.leq(points[i], a)));
    KoSpace::new(base, e.dbl().kelems().into_iter().map(hat).collect(), e.dbl().oelems().into_iter().map(hat).collect())
        .map_err(|err| Error::theorem("distributive embedded bi-dcpos give ko-spaces", err.to_string()))
}

/// Index in `bidcpo_to_kospace(kospace_to_bidcpo(s))` of the point (↑x, X∖↓x), for each x.
pub fn point_iso(s: &KoSpace, via: &SpaceBiDcpo, back: &BiDcpoSpace) -> Result<Vec<usize>> {
    let p = via.bidcpo.pol();
    (0..s.len())
        .map(|x| {
            let k = via.kidx[s.k_index(s.base().up(x)).expect("principal upset is a k-set")];
            let u = via.oidx[s.o_index(&s.base().down(x).complement()).expect("co-principal set is an o-set")];
            back.points.iter().position(|&pt| pt == (k, u)).ok_or_else(|| {
                Error::theorem("points are completely prime pairs", format!("{} gives no pair {}", s.base().name(x), p.kname(k)))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kospace::kospace_isomorphic;
    use crate::polarity::{dbl_isomorphic, polarity_isomorphic};

    fn sing() -> KoSpace {
        KoSpace::minimal(&FinPoset::antichain(&["x"]).unwrap())
    }

    fn m3() -> BiDcpo {
        validate_bidcpo(&Polarity::new(&["a", "b", "c"], &["a", "b", "c"], &[("a", "a"), ("b", "b"), ("c", "c")]).unwrap()).unwrap()
    }

    #[test]
    fn sing_roundtrips() {
        let b = kospace_to_bidcpo(&sing()).unwrap();
        assert_eq!((b.klen(), b.olen()), (1, 1));
        assert!(b.pol().pairs().is_empty());
        let back = bidcpo_to_kospace(&b).unwrap();
        assert!(kospace_isomorphic(&back, &sing()).is_some());
        let e = kospace_to_embedded(&sing()).unwrap();
        assert_eq!(e.dbl().lattice().len(), 2);
        assert_eq!(e.dbl().kelems(), vec![e.dbl().lattice().top()]);
        assert_eq!(e.dbl().oelems(), vec![e.dbl().lattice().bottom()]);
        assert!(kospace_isomorphic(&embedded_to_kospace(&e).unwrap(), &sing()).is_some());
    }

    #[test]
    fn empty_roundtrips() {
        let b = kospace_to_bidcpo(&KoSpace::empty()).unwrap();
        assert_eq!((b.klen(), b.olen()), (0, 0));
        assert_eq!(bidcpo_to_kospace(&b).unwrap(), KoSpace::empty());
        let e = bidcpo_to_embedded(&b).unwrap();
        assert_eq!(e.dbl().lattice().len(), 1);
        assert_eq!(embedded_to_kospace(&e).unwrap(), KoSpace::empty());
    }

    #[test]
    fn two_chain_dcpo_table() {
        // from_dcpo(a < b): K = {ab, b}, O = {∅, b, ab}
        let s = KoSpace::from_dcpo(&FinPoset::chain(&["a", "b"]).unwrap()).unwrap();
        let b = kospace_to_bidcpo(&s).unwrap();
        let p = b.pol();
        assert_eq!(p.knames(), &["{a,b}".to_string(), "{b}".to_string()]);
        assert_eq!(p.onames(), &["{a,b}".to_string(), "{b}".to_string(), "{}".to_string()]);
        let table: Vec<(&str, &str)> = p.pairs().into_iter().map(|(k, u)| (p.kname(k), p.oname(u))).collect();
        assert_eq!(table, vec![("{a,b}", "{a,b}"), ("{b}", "{a,b}"), ("{b}", "{b}")]);
    }

    #[test]
    fn m3_rejected() {
        let e = bidcpo_to_kospace(&m3()).unwrap_err();
        assert!(matches!(e, Error::NotDistributive(_)));
        let emb = bidcpo_to_embedded(&m3()).unwrap();
        assert!(matches!(embedded_to_kospace(&emb), Err(Error::NotDistributive(_))));
        let back = embedded_to_bidcpo(&emb).unwrap();
        assert!(polarity_isomorphic(back.pol(), m3().pol()).is_some());
    }

    #[test]
    fn chain_embedded_gives_chain_space() {
        let c = FinPoset::chain(&["a", "b"]).unwrap();
        let s = KoSpace::minimal(&c);
        let e = kospace_to_embedded(&s).unwrap();
        assert!(e.is_distributive());
        let back = embedded_to_kospace(&e).unwrap();
        assert!(kospace_isomorphic(&back, &s).is_some());
        let e2 = bidcpo_to_embedded(&kospace_to_bidcpo(&s).unwrap()).unwrap();
        assert!(dbl_isomorphic(e.dbl(), e2.dbl()).is_some());
    }

    #[test]
    fn point_iso_matches() {
        let c = FinPoset::new(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        let s = KoSpace::from_dcpo(&c).unwrap();
        let via = kospace_to_bidcpo_full(&s).unwrap();
        let back = bidcpo_to_kospace_full(&via.bidcpo).unwrap();
        let f = point_iso(&s, &via, &back).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(c.leq(x, y), back.space.base().leq(f[x], f[y]));
            }
        }
    }
}
