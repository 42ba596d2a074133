use crate::bitset::BitSet;
use crate::error::{check, Code, Diagnostic, Result};
use crate::order::subfam::find_bounded;
use crate::order::FinPoset;
use crate::par;
use crate::polarity::{DoubleBaseLattice, Polarity};

/// A purified polarity with (co)directed completeness and double compactness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiDcpo {
    pol: Polarity,
    kord: FinPoset,
    oord: FinPoset,
}

fn names_of(p: &FinPoset, idx: &[usize]) -> String {
    let parts: Vec<&str> = idx.iter().map(|&i| p.name(i)).collect();
    format!("[{}]", parts.join(", "))
}

/// (L1) and (L2) for a polarity whose specialization orders are `kord`, `oord`.
fn check_l1_l2(p: &Polarity, kord: &FinPoset, oord: &FinPoset) -> Result<Vec<Diagnostic>> {
    let (nk, no) = (p.klen(), p.olen());
    let mut ds = Vec::new();
    let set = |n: usize, f: &[usize]| BitSet::from_indices(n, f.iter().copied());
    if let Some(f) = find_bounded(nk, |a, i| kord.leq(a, i), |f| kord.meet_of(&set(nk, f)).is_none().then(|| f.to_vec()))? {
        ds.push(Diagnostic::new(Code::L1K, format!("codirected {} has no meet", names_of(kord, &f))));
    }
    if let Some(f) = find_bounded(no, |a, i| oord.leq(i, a), |f| oord.join_of(&set(no, f)).is_none().then(|| f.to_vec()))? {
        ds.push(Diagnostic::new(Code::L1O, format!("directed {} has no join", names_of(oord, &f))));
    }
    if let Some((k, f)) = find_bounded(no, |a, i| oord.leq(i, a), |f| {
        let j = oord.join_of(&set(no, f))?;
        (0..nk).find(|&k| p.rel(k, j) && !f.iter().any(|&u| p.rel(k, u))).map(|k| (k, f.to_vec()))
    })? {
        ds.push(Diagnostic::new(
            Code::L2K,
            format!("{} is below the join of {} but below no member", p.kname(k), names_of(oord, &f)),
        ));
    }
    if let Some((u, f)) = find_bounded(nk, |a, i| kord.leq(a, i), |f| {
        let m = kord.meet_of(&set(nk, f))?;
        (0..no).find(|&u| p.rel(m, u) && !f.iter().any(|&k| p.rel(k, u))).map(|u| (u, f.to_vec()))
    })? {
        ds.push(Diagnostic::new(
            Code::L2O,
            format!("the meet of {} is below {} but no member is", names_of(kord, &f), p.oname(u)),
        ));
    }
    Ok(ds)
}

/// Validate a polarity as a bi-dcpo.
pub fn validate_bidcpo(p: &Polarity) -> Result<BiDcpo> {
    p.require_purified()?;
    let kord = p.k_poset()?;
    let oord = p.o_poset()?;
    check(check_l1_l2(p, &kord, &oord)?)?;
    Ok(BiDcpo { pol: p.clone(), kord, oord })
}

/// Quadruple (k, l, u, v) violating the distributivity condition.
pub type Quadruple = (usize, usize, usize, usize);

impl BiDcpo {
    pub fn pol(&self) -> &Polarity {
        &self.pol
    }

    pub fn k_order(&self) -> &FinPoset {
        &self.kord
    }

    pub fn o_order(&self) -> &FinPoset {
        &self.oord
    }

    pub fn klen(&self) -> usize {
        self.pol.klen()
    }

    pub fn olen(&self) -> usize {
        self.pol.olen()
    }

    pub fn rel(&self, k: usize, u: usize) -> bool {
        self.pol.rel(k, u)
    }

    /// Lexicographically least violating quadruple, if any: (1) k is below every
    /// w ≥ u with l ◁ w, (2) l ◁ v, (3) u is above every m ≤ k with m ◁ v, yet k ⋪ u.
    pub fn distributivity_witness(&self) -> Option<Quadruple> {
        let p = &self.pol;
        let (nk, no) = (p.klen(), p.olen());
        // lb[u * nk + l] = lb_K(↑_O u ∩ ↑_O l)
        let lb: Vec<BitSet> = par::map_range(no * nk, |i| {
            let (u, l) = (i / nk, i % nk);
            p.lb_k(&self.oord.up(u).intersection(p.up_o(l)))
        });
        // ub[v * nk + k] = ub_O(↓_K v ∩ ↓_K k)
        let ub: Vec<BitSet> = par::map_range(no * nk, |i| {
            let (v, k) = (i / nk, i % nk);
            p.ub_o(&p.down_k(v).intersection(self.kord.down(k)))
        });
        par::find_first(nk, |k| {
            for l in 0..nk {
                for u in 0..no {
                    if p.rel(k, u) || !lb[u * nk + l].contains(k) {
                        continue;
                    }
                    for v in p.up_o(l).iter() {
                        if ub[v * nk + k].contains(u) {
                            return Some((k, l, u, v));
                        }
                    }
                }
            }
            None
        })
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    pub fn quadruple_names(&self, q: Quadruple) -> (String, String, String, String) {
        let p = &self.pol;
        (p.kname(q.0).into(), p.kname(q.1).into(), p.oname(q.2).into(), p.oname(q.3).into())
    }

    /// Swap the roles of k- and o-elements.
    pub fn lawson_dual(&self) -> BiDcpo {
        BiDcpo { pol: self.pol.swap(), kord: self.oord.dual(), oord: self.kord.dual() }
    }
}

/// A double base lattice whose designated subsets are (co)directedly closed
/// and doubly compact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedBiDcpo {
    dbl: DoubleBaseLattice,
}

impl EmbeddedBiDcpo {
    pub fn new(dbl: DoubleBaseLattice) -> Result<Self> {
        let l = dbl.lattice();
        let ks = dbl.kelems();
        let os = dbl.oelems();
        let mut ds = Vec::new();
        let kb = |a: usize, i: usize| l.leq(ks[a], ks[i]);
        let ob = |a: usize, i: usize| l.leq(os[i], os[a]);
        if let Some(f) = find_bounded(ks.len(), kb, |f| {
            let m = l.meet_all(f.iter().map(|&i| ks[i]));
            (!dbl.kset().contains(m)).then(|| f.to_vec())
        })? {
            let idx: Vec<usize> = f.iter().map(|&i| ks[i]).collect();
            ds.push(Diagnostic::new(Code::L1K, format!("meet of codirected {} is not a k-element", names_of(l.poset(), &idx))));
        }
        if let Some(f) = find_bounded(os.len(), ob, |f| {
            let j = l.join_all(f.iter().map(|&i| os[i]));
            (!dbl.oset().contains(j)).then(|| f.to_vec())
        })? {
            let idx: Vec<usize> = f.iter().map(|&i| os[i]).collect();
            ds.push(Diagnostic::new(Code::L1O, format!("join of directed {} is not an o-element", names_of(l.poset(), &idx))));
        }
        if let Some((k, f)) = find_bounded(os.len(), ob, |f| {
            let j = l.join_all(f.iter().map(|&i| os[i]));
            ks.iter().find(|&&k| l.leq(k, j) && !f.iter().any(|&i| l.leq(k, os[i]))).map(|&k| (k, f.to_vec()))
        })? {
            let idx: Vec<usize> = f.iter().map(|&i| os[i]).collect();
            ds.push(Diagnostic::new(
                Code::L2K,
                format!("{} is below the join of {} but below no member", l.name(k), names_of(l.poset(), &idx)),
            ));
        }
        if let Some((u, f)) = find_bounded(ks.len(), kb, |f| {
            let m = l.meet_all(f.iter().map(|&i| ks[i]));
            os.iter().find(|&&u| l.leq(m, u) && !f.iter().any(|&i| l.leq(ks[i], u))).map(|&u| (u, f.to_vec()))
        })? {
            let idx: Vec<usize> = f.iter().map(|&i| ks[i]).collect();
            ds.push(Diagnostic::new(
                Code::L2O,
                format!("the meet of {} is below {} but no member is", names_of(l.poset(), &idx), l.name(u)),
            ));
        }
        check(ds)?;
        Ok(EmbeddedBiDcpo { dbl })
    }

    pub fn dbl(&self) -> &DoubleBaseLattice {
        &self.dbl
    }

    pub fn is_distributive(&self) -> bool {
        self.dbl.lattice().is_distributive()
    }
}

pub fn is_distributive_embedded(e: &EmbeddedBiDcpo) -> bool {
    e.is_distributive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarity::{concept_lattice, to_double_base};

    fn m3() -> Polarity {
        Polarity::new(&["a", "b", "c"], &["a", "b", "c"], &[("a", "a"), ("b", "b"), ("c", "c")]).unwrap()
    }

    /// Oracle: the quadruple condition spelled out with the relation only.
    fn brute_witness(p: &Polarity) -> Option<Quadruple> {
        let (nk, no) = (p.klen(), p.olen());
        let kle = |k: usize, l: usize| (0..no).all(|w| !p.rel(l, w) || p.rel(k, w));
        let ole = |u: usize, v: usize| (0..nk).all(|m| !p.rel(m, u) || p.rel(m, v));
        for k in 0..nk {
            for l in 0..nk {
                for u in 0..no {
                    for v in 0..no {
                        let c1 = (0..no).all(|w| !(ole(u, w) && p.rel(l, w)) || p.rel(k, w));
                        let c2 = p.rel(l, v);
                        let c3 = (0..nk).all(|m| !(p.rel(m, v) && kle(m, k)) || p.rel(m, u));
                        if c1 && c2 && c3 && !p.rel(k, u) {
                            return Some((k, l, u, v));
                        }
                    }
                }
            }
        }
        None
    }

    #[test]
    fn m3_is_a_nondistributive_bidcpo() {
        let b = validate_bidcpo(&m3()).unwrap();
        let q = b.distributivity_witness().unwrap();
        assert_eq!(b.quadruple_names(q), ("a".into(), "b".into(), "c".into(), "b".into()));
        assert_eq!(Some(q), brute_witness(&m3()));
    }

    #[test]
    fn sing_is_distributive() {
        let p = Polarity::new(&["k"], &["u"], &[]).unwrap();
        assert!(validate_bidcpo(&p).unwrap().is_distributive());
    }

    #[test]
    fn not_purified_rejected() {
        let p = Polarity::new(&["k", "l"], &["u"], &[("k", "u"), ("l", "u")]).unwrap();
        assert!(validate_bidcpo(&p).unwrap_err().has_code(Code::NotPurifiedK));
    }

    #[test]
    fn quadruples_match_oracle_and_concept_lattice_on_all_3x3() {
        let names = |p: &str| (0..3).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
        let mut checked = 0;
        for m in 0u32..1 << 9 {
            let p = Polarity::from_fn(names("k"), names("u"), |k, u| m >> (k * 3 + u) & 1 == 1);
            if !p.is_purified() {
                continue;
            }
            let b = validate_bidcpo(&p).unwrap();
            let w = b.distributivity_witness();
            assert_eq!(w, brute_witness(&p));
            assert_eq!(w.is_none(), concept_lattice(&p).unwrap().lattice().is_distributive());
            let e = EmbeddedBiDcpo::new(to_double_base(&p).unwrap()).unwrap();
            assert_eq!(e.is_distributive(), w.is_none());
            checked += 1;
        }
        assert!(checked > 0);
    }

    #[test]
    fn embedded_m3() {
        let d = to_double_base(&m3()).unwrap();
        let e = EmbeddedBiDcpo::new(d).unwrap();
        assert!(!is_distributive_embedded(&e));
    }

    #[test]
    fn lawson_dual_involutive() {
        let b = validate_bidcpo(&m3()).unwrap();
        assert_eq!(b.lawson_dual().lawson_dual(), b);
        assert_eq!(validate_bidcpo(b.lawson_dual().pol()).unwrap(), b.lawson_dual());
    }
}
