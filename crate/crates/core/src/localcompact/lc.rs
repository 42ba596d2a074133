use serde::Serialize;

use crate::bidcpo::{BiDcpo, EmbeddedBiDcpo};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::kospace::KoSpace;
use crate::order::set_name;
use crate::par;

/// Entry u holds {k : u ◀ k}, where u ◀ k iff ↑_O k ⊆ ↑_O u.
pub fn black_triangle(b: &BiDcpo) -> Vec<BitSet> {
    let p = b.pol();
    (0..p.olen())
        .map(|u| {
            let above = b.o_order().up(u);
            BitSet::from_indices(p.klen(), (0..p.klen()).filter(|&k| p.up_o(k).is_subset(above)))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "failure", rename_all = "kebab-case")]
pub enum LcWitness {
    /// k below u with no u', k' such that k ◁ u' ◀ k' ◁ u.
    NoInterpolant { k: String, u: String },
    /// The k-elements below u are not directed.
    NotDirected { u: String },
    /// The o-elements above k are not codirected.
    NotCodirected { k: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LCReport {
    pub locally_compact: bool,
    pub bicontinuous: bool,
    pub witnesses: Vec<LcWitness>,
}

/// The three structure kinds, seen as k-things, o-things, a "below" relation
/// between them and an order on each side.
pub trait LocalCompactness {
    fn k_count(&self) -> usize;
    fn o_count(&self) -> usize;
    fn below(&self, k: usize, u: usize) -> bool;
    /// u ◀ k
    fn tri(&self, u: usize, k: usize) -> bool;
    fn k_leq(&self, k: usize, l: usize) -> bool;
    fn o_leq(&self, u: usize, v: usize) -> bool;
    fn k_label(&self, k: usize) -> String;
    fn o_label(&self, u: usize) -> String;
}

impl LocalCompactness for BiDcpo {
    fn k_count(&self) -> usize {
        self.klen()
    }
    fn o_count(&self) -> usize {
        self.olen()
    }
    fn below(&self, k: usize, u: usize) -> bool {
        self.rel(k, u)
    }
    fn tri(&self, u: usize, k: usize) -> bool {
        self.pol().up_o(k).is_subset(self.o_order().up(u))
    }
    fn k_leq(&self, k: usize, l: usize) -> bool {
        self.k_order().leq(k, l)
    }
    fn o_leq(&self, u: usize, v: usize) -> bool {
        self.o_order().leq(u, v)
    }
    fn k_label(&self, k: usize) -> String {
        self.pol().kname(k).to_string()
    }
    fn o_label(&self, u: usize) -> String {
        self.pol().oname(u).to_string()
    }
}

impl LocalCompactness for KoSpace {
    fn k_count(&self) -> usize {
        self.kfam().len()
    }
    fn o_count(&self) -> usize {
        self.ofam().len()
    }
    fn below(&self, k: usize, u: usize) -> bool {
        self.kfam()[k].is_subset(&self.ofam()[u])
    }
    fn tri(&self, u: usize, k: usize) -> bool {
        self.ofam()[u].is_subset(&self.kfam()[k])
    }
    fn k_leq(&self, k: usize, l: usize) -> bool {
        self.kfam()[k].is_subset(&self.kfam()[l])
    }
    fn o_leq(&self, u: usize, v: usize) -> bool {
        self.ofam()[u].is_subset(&self.ofam()[v])
    }
    fn k_label(&self, k: usize) -> String {
        set_name(self.base().names(), &self.kfam()[k])
    }
    fn o_label(&self, u: usize) -> String {
        set_name(self.base().names(), &self.ofam()[u])
    }
}

impl LocalCompactness for EmbeddedBiDcpo {
    fn k_count(&self) -> usize {
        self.dbl().kset().count()
    }
    fn o_count(&self) -> usize {
        self.dbl().oset().count()
    }
    fn below(&self, k: usize, u: usize) -> bool {
        let d = self.dbl();
        d.lattice().leq(nth(d.kset(), k), nth(d.oset(), u))
    }
    fn tri(&self, u: usize, k: usize) -> bool {
        let d = self.dbl();
        d.lattice().leq(nth(d.oset(), u), nth(d.kset(), k))
    }
    fn k_leq(&self, k: usize, l: usize) -> bool {
        let d = self.dbl();
        d.lattice().leq(nth(d.kset(), k), nth(d.kset(), l))
    }
    fn o_leq(&self, u: usize, v: usize) -> bool {
        let d = self.dbl();
        d.lattice().leq(nth(d.oset(), u), nth(d.oset(), v))
    }
    fn k_label(&self, k: usize) -> String {
        let d = self.dbl();
        d.lattice().name(nth(d.kset(), k)).to_string()
    }
    fn o_label(&self, u: usize) -> String {
        let d = self.dbl();
        d.lattice().name(nth(d.oset(), u)).to_string()
    }
}

fn nth(s: &BitSet, i: usize) -> usize {
    s.iter().nth(i).expect("index within the designated subset")
}

/// Nonempty, and every pair of members has a common bound among the members.
pub(crate) fn bounded_family(members: &[usize], bound: impl Fn(usize, usize) -> bool) -> bool {
    !members.is_empty()
        && members.iter().all(|&a| members.iter().all(|&b| members.iter().any(|&c| bound(a, c) && bound(b, c))))
}

pub(crate) fn k_directed_below<S: LocalCompactness + ?Sized>(s: &S, u: usize) -> bool {
    let ks: Vec<usize> = (0..s.k_count()).filter(|&k| s.below(k, u)).collect();
    bounded_family(&ks, |a, c| s.k_leq(a, c))
}

pub(crate) fn o_codirected_above<S: LocalCompactness + ?Sized>(s: &S, k: usize) -> bool {
    let us: Vec<usize> = (0..s.o_count()).filter(|&u| s.below(k, u)).collect();
    bounded_family(&us, |a, c| s.o_leq(c, a))
}

pub(crate) fn interpolates<S: LocalCompactness + ?Sized>(s: &S, k: usize, u: usize) -> bool {
    (0..s.o_count()).any(|u2| s.below(k, u2) && (0..s.k_count()).any(|k2| s.tri(u2, k2) && s.below(k2, u)))
}

fn report<S: LocalCompactness + Sync + ?Sized>(s: &S) -> LCReport {
    let mut witnesses: Vec<LcWitness> = par::map_range(s.k_count(), |k| {
        (0..s.o_count())
            .filter(|&u| s.below(k, u) && !interpolates(s, k, u))
            .map(|u| LcWitness::NoInterpolant { k: s.k_label(k), u: s.o_label(u) })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    let locally_compact = witnesses.is_empty();
    for u in 0..s.o_count() {
        if !k_directed_below(s, u) {
            witnesses.push(LcWitness::NotDirected { u: s.o_label(u) });
        }
    }
    for k in 0..s.k_count() {
        if !o_codirected_above(s, k) {
            witnesses.push(LcWitness::NotCodirected { k: s.k_label(k) });
        }
    }
    LCReport { locally_compact, bicontinuous: witnesses.is_empty(), witnesses }
}

/// Every k below u interpolates as k ◁ u' ◀ k' ◁ u.
pub fn check_locally_compact<S: LocalCompactness + Sync + ?Sized>(s: &S) -> LCReport {
    report(s)
}

/// Locally compact, every ↓_K u directed and every ↑_O k codirected.
pub fn check_bicontinuous<S: LocalCompactness + Sync + ?Sized>(s: &S) -> LCReport {
    report(s)
}

/// ∃k: v ◀ k ◁ u, with no precondition.
pub fn interpolated_below(b: &BiDcpo, v: usize, u: usize) -> bool {
    (0..b.klen()).any(|k| b.tri(v, k) && b.rel(k, u))
}

fn require_way_below(b: &BiDcpo, u: usize) -> Result<()> {
    if !k_directed_below(b, u) {
        return Err(Error::Precondition(format!("k-elements below {} are not directed", b.pol().oname(u))));
    }
    if let Some(w) = report(b).witnesses.into_iter().find(|w| matches!(w, LcWitness::NoInterpolant { .. })) {
        return Err(Error::Precondition(format!("not locally compact: {w:?}")));
    }
    Ok(())
}

/// v way below u in the o-poset, computed as ∃k: v ◀ k ◁ u.
pub fn way_below(b: &BiDcpo, v: usize, u: usize) -> Result<bool> {
    require_way_below(b, u)?;
    Ok(interpolated_below(b, v, u))
}

/// {v : v way below u}
pub fn way_below_set(b: &BiDcpo, u: usize) -> Result<BitSet> {
    require_way_below(b, u)?;
    Ok(BitSet::from_indices(b.olen(), (0..b.olen()).filter(|&v| interpolated_below(b, v, u))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bidcpo::validate_bidcpo;
    use crate::order::subfam::find_bounded;
    use crate::order::FinPoset;
    use crate::polarity::{concept_lattice, Polarity};
    use crate::localcompact::fixtures::dia;

    fn bidcpos_3x3() -> Vec<BiDcpo> {
        let names = |p: &str| (0..3).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
        let mut out = Vec::new();
        for m in 0u32..1 << 9 {
            let p = Polarity::from_fn(names("k"), names("u"), |k, u| m >> (k * 3 + u) & 1 == 1);
            if let Ok(b) = validate_bidcpo(&p) {
                out.push(b);
            }
        }
        out
    }

    #[test]
    fn triangle_is_the_concept_order() {
        for b in bidcpos_3x3() {
            let c = concept_lattice(b.pol()).unwrap();
            let t = black_triangle(&b);
            for u in 0..b.olen() {
                for k in 0..b.klen() {
                    assert_eq!(t[u].contains(k), c.lattice().leq(c.iota_o(u), c.iota_k(k)));
                }
            }
        }
    }

    #[test]
    fn sing_triangle() {
        let p = Polarity::new(&["k"], &["u"], &[]).unwrap();
        let b = validate_bidcpo(&p).unwrap();
        assert!(black_triangle(&b)[0].contains(0));
    }

    #[test]
    fn diamond_is_bicontinuous() {
        let e = dia();
        let r = check_bicontinuous(&e);
        assert!(r.locally_compact && r.bicontinuous, "{r:?}");
        let b = validate_bidcpo(&e.dbl().to_polarity()).unwrap();
        assert!(check_bicontinuous(&b).bicontinuous);
    }

    #[test]
    fn empty_and_two_chain() {
        let r = check_bicontinuous(&KoSpace::empty());
        assert!(r.locally_compact && r.bicontinuous && r.witnesses.is_empty());
        // K = {↑a, ↑b}, O = {∅, {b}} on a < b
        let s = KoSpace::minimal(&FinPoset::chain(&["a", "b"]).unwrap());
        assert!(check_locally_compact(&s).locally_compact);
    }

    #[test]
    fn sing_is_lc_but_not_bicontinuous() {
        let b = validate_bidcpo(&Polarity::new(&["k"], &["u"], &[]).unwrap()).unwrap();
        let r = check_bicontinuous(&b);
        assert!(r.locally_compact);
        assert!(!r.bicontinuous);
        assert_eq!(r.witnesses, vec![LcWitness::NotDirected { u: "u".into() }, LcWitness::NotCodirected { k: "k".into() }]);
    }

    /// Oracle: v ≪ u iff every directed E ⊆ O whose join is above u has a
    /// member above v.
    fn dcpo_way_below(o: &FinPoset, v: usize, u: usize) -> bool {
        let n = o.len();
        find_bounded(n, |a, i| o.leq(i, a), |e| {
            let j = o.join_of(&BitSet::from_indices(n, e.iter().copied()))?;
            (o.leq(u, j) && !e.iter().any(|&x| o.leq(v, x))).then_some(())
        })
        .unwrap()
        .is_none()
    }

    #[test]
    fn way_below_matches_dcpo_definition() {
        let mut checked = 0;
        for b in bidcpos_3x3() {
            let lc = check_locally_compact(&b).locally_compact;
            for u in 0..b.olen() {
                let res = way_below_set(&b, u);
                if !lc || !k_directed_below(&b, u) {
                    assert!(matches!(res, Err(Error::Precondition(_))));
                    continue;
                }
                let set = res.unwrap();
                for v in 0..b.olen() {
                    assert_eq!(set.contains(v), dcpo_way_below(b.o_order(), v, u));
                    checked += 1;
                }
                assert!(b.o_order().is_directed(&set));
                assert_eq!(b.o_order().join_of(&set), Some(u));
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn way_below_on_diamond_and_empty_k() {
        let e = dia();
        let b = validate_bidcpo(&e.dbl().to_polarity()).unwrap();
        let (bot, a) = (b.pol().o_index("bot").unwrap(), b.pol().o_index("a").unwrap());
        assert!(way_below(&b, bot, a).unwrap());
        let p = Polarity::new::<&str>(&[], &["u"], &[]).unwrap();
        let b = validate_bidcpo(&p).unwrap();
        assert!(!interpolated_below(&b, 0, 0));
        assert!(matches!(way_below(&b, 0, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn three_kinds_agree() {
        use crate::equivalence::{bidcpo_to_embedded, bidcpo_to_kospace};
        for b in bidcpos_3x3() {
            let rb = check_bicontinuous(&b);
            let re = check_bicontinuous(&bidcpo_to_embedded(&b).unwrap());
            assert_eq!((rb.locally_compact, rb.bicontinuous), (re.locally_compact, re.bicontinuous));
            if let Ok(s) = bidcpo_to_kospace(&b) {
                let rs = check_bicontinuous(&s);
                assert_eq!((rb.locally_compact, rb.bicontinuous), (rs.locally_compact, rs.bicontinuous));
            }
        }
    }
}
