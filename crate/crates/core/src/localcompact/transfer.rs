use serde::Serialize;

use crate::bidcpo::BiDcpo;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::kospace::KoSpace;
use crate::order::{set_name, FinLattice, FinPoset};
use crate::polarity::DoubleBaseLattice;

use super::lc::{check_bicontinuous, check_locally_compact, interpolated_below, k_directed_below, o_codirected_above, LCReport};

fn require_bicontinuous(r: &LCReport) -> Result<()> {
    if r.bicontinuous {
        Ok(())
    } else {
        Err(Error::Precondition(format!("not bicontinuous: {:?}", r.witnesses)))
    }
}

fn require_lc(r: &LCReport) -> Result<()> {
    if r.locally_compact {
        Ok(())
    } else {
        Err(Error::Precondition(format!("not locally compact: {:?}", r.witnesses)))
    }
}

/// k ↦ ↑_O k onto the filters of O, and u ↦ ↓_K u onto the filters of K^op.
/// Filters are named by their least element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HofMisReport {
    /// k -> w with ↑_O k = ↑w in O
    pub k_to_o: Vec<usize>,
    /// u -> m with ↓_K u = ↓m in K
    pub o_to_k: Vec<usize>,
}

fn onto_filters(sets: &[&BitSet], poset: &FinPoset, what: &'static str) -> Result<Vec<usize>> {
    let filters = poset.filters();
    let mut hit = vec![false; filters.len()];
    let mut out = Vec::with_capacity(sets.len());
    for (i, s) in sets.iter().enumerate() {
        let f = filters.iter().position(|f| f == *s).ok_or_else(|| Error::theorem(what, format!("element {i} does not give a filter")))?;
        if hit[f] {
            return Err(Error::theorem(what, format!("element {i} repeats a filter")));
        }
        hit[f] = true;
        out.push(poset.least(s).expect("finite filters are principal"));
    }
    if hit.iter().any(|h| !h) {
        return Err(Error::theorem(what, "some filter is missed".into()));
    }
    Ok(out)
}

pub fn hofmann_mislove(b: &BiDcpo) -> Result<HofMisReport> {
    require_bicontinuous(&check_bicontinuous(b))?;
    let p = b.pol();
    let rows: Vec<&BitSet> = (0..p.klen()).map(|k| p.up_o(k)).collect();
    let k_to_o = onto_filters(&rows, b.o_order(), "k ↦ ↑_O k is a bijection onto filters of O")?;
    let cols: Vec<&BitSet> = (0..p.olen()).map(|u| p.down_k(u)).collect();
    let o_to_k = onto_filters(&cols, &b.k_order().dual(), "u ↦ ↓_K u is a bijection onto filters of K^op")?;
    Ok(HofMisReport { k_to_o, o_to_k })
}

pub fn has_binary_meets(p: &FinPoset) -> bool {
    (0..p.len()).all(|a| (a + 1..p.len()).all(|b| p.meet_of(&BitSet::from_indices(p.len(), [a, b])).is_some()))
}

pub fn has_binary_joins(p: &FinPoset) -> bool {
    has_binary_meets(&p.dual())
}

/// Binary meets and a top (the empty meet).
pub fn has_finite_meets(p: &FinPoset) -> bool {
    p.meet_of(&BitSet::new(p.len())).is_some() && has_binary_meets(p)
}

/// Binary joins and a bottom (the empty join).
pub fn has_finite_joins(p: &FinPoset) -> bool {
    has_finite_meets(&p.dual())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MeetsJoins {
    pub o_finite_meets: bool,
    pub k_finite_joins: bool,
}

/// For a bicontinuous bi-dcpo, O has finite meets iff K has finite joins.
pub fn check_meets_joins_transfer(b: &BiDcpo) -> Result<MeetsJoins> {
    require_bicontinuous(&check_bicontinuous(b))?;
    let r = MeetsJoins { o_finite_meets: has_finite_meets(b.o_order()), k_finite_joins: has_finite_joins(b.k_order()) };
    if r.o_finite_meets != r.k_finite_joins {
        return Err(Error::theorem("O has finite meets iff K has finite joins", format!("{r:?}")));
    }
    Ok(r)
}

fn closed(s: &BitSet, unit: usize, op: impl Fn(usize, usize) -> usize) -> bool {
    s.contains(unit) && s.iter().all(|a| s.iter().all(|b| s.contains(op(a, b))))
}

/// O contains the top of L and is closed under binary meets in L.
pub fn o_closed_under_finite_meets(d: &DoubleBaseLattice) -> bool {
    let l = d.lattice();
    closed(d.oset(), l.top(), |a, b| l.meet(a, b))
}

pub fn o_closed_under_finite_joins(d: &DoubleBaseLattice) -> bool {
    let l = d.lattice();
    closed(d.oset(), l.bottom(), |a, b| l.join(a, b))
}

pub fn k_closed_under_finite_joins(d: &DoubleBaseLattice) -> bool {
    let l = d.lattice();
    closed(d.kset(), l.bottom(), |a, b| l.join(a, b))
}

pub fn k_closed_under_finite_meets(d: &DoubleBaseLattice) -> bool {
    let l = d.lattice();
    closed(d.kset(), l.top(), |a, b| l.meet(a, b))
}

fn fam_closed(fam: &[BitSet], unit: BitSet, op: impl Fn(&BitSet, &BitSet) -> BitSet) -> bool {
    fam.contains(&unit) && fam.iter().all(|a| fam.iter().all(|b| fam.contains(&op(a, b))))
}

/// O contains X and is closed under binary intersections.
pub fn o_closed_under_intersections(s: &KoSpace) -> bool {
    fam_closed(s.ofam(), BitSet::full(s.len()), |a, b| a.intersection(b))
}

pub fn o_closed_under_unions(s: &KoSpace) -> bool {
    fam_closed(s.ofam(), BitSet::new(s.len()), |a, b| a.union(b))
}

pub fn k_closed_under_unions(s: &KoSpace) -> bool {
    fam_closed(s.kfam(), BitSet::new(s.len()), |a, b| a.union(b))
}

pub fn k_closed_under_intersections(s: &KoSpace) -> bool {
    fam_closed(s.kfam(), BitSet::full(s.len()), |a, b| a.intersection(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    O,
    K,
}

/// Distributivity of the lattice on one side, which for a locally compact
/// bi-dcpo meeting the side's hypotheses equals distributivity of the bi-dcpo.
pub fn distributivity_from(b: &BiDcpo, side: Side) -> Result<bool> {
    require_lc(&check_locally_compact(b))?;
    let p = b.pol();
    let (ord, name) = match side {
        Side::O => (b.o_order().clone(), "O"),
        Side::K => (b.k_order().dual(), "K"),
    };
    if !has_binary_meets(&ord) || !has_binary_joins(&ord) {
        return Err(Error::Precondition(format!("{name} lacks binary meets or joins")));
    }
    // every pair in ↑_O k has a lower bound in it (dually for ↓_K u)
    let pairwise = |s: &BitSet, lower: &dyn Fn(usize, usize) -> bool| {
        s.iter().all(|a| s.iter().all(|c| s.iter().any(|m| lower(m, a) && lower(m, c))))
    };
    let bad = match side {
        Side::O => (0..p.klen()).find(|&k| !pairwise(p.up_o(k), &|m, a| b.o_order().leq(m, a))).map(|k| p.kname(k)),
        Side::K => (0..p.olen()).find(|&u| !pairwise(p.down_k(u), &|m, a| b.k_order().leq(a, m))).map(|u| p.oname(u)),
    };
    if let Some(x) = bad {
        return Err(Error::Precondition(format!("pairs related to {x} lack a common bound among them")));
    }
    let lattice_dist = if ord.is_empty() {
        true
    } else {
        FinLattice::new(ord).map_err(|e| Error::theorem("a finite poset with binary meets and joins is a lattice", e.to_string()))?.is_distributive()
    };
    if lattice_dist != b.is_distributive() {
        return Err(Error::theorem(
            "under local compactness the bi-dcpo is distributive iff the side lattice is",
            format!("side {name}: lattice {lattice_dist}, bi-dcpo {}", b.is_distributive()),
        ));
    }
    Ok(lattice_dist)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    One,
    Two,
}

impl Variant {
    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "1" => Some(Variant::One),
            "2" => Some(Variant::Two),
            _ => None,
        }
    }
}

fn wilker_violation(what: String) -> Error {
    Error::theorem("Wilker interpolation", what)
}

/// Exhaustive Wilker interpolation on a locally compact bi-dcpo. Returns the
/// number of instances checked.
pub fn wilker_bidcpo(b: &BiDcpo, variant: Variant) -> Result<usize> {
    require_lc(&check_locally_compact(b))?;
    let p = b.pol();
    let (ko, oo) = (b.k_order(), b.o_order());
    let mut n = 0;
    match variant {
        Variant::One => {
            if !has_binary_joins(oo) {
                return Err(Error::Precondition("variant 1 needs binary joins in O".into()));
            }
            let join = |a: usize, c: usize| oo.join_of(&BitSet::from_indices(oo.len(), [a, c])).expect("binary join");
            for u in (0..p.olen()).filter(|&u| k_directed_below(b, u)) {
                let wb: Vec<usize> = (0..p.olen()).filter(|&w| interpolated_below(b, w, u)).collect();
                for v in 0..p.olen() {
                    let j = join(u, v);
                    for k in p.down_k(j).iter() {
                        n += 1;
                        if !wb.iter().any(|&w| p.rel(k, join(w, v))) {
                            return Err(wilker_violation(format!("k={} u={} v={}", p.kname(k), p.oname(u), p.oname(v))));
                        }
                    }
                }
            }
        }
        Variant::Two => {
            if !has_binary_meets(ko) {
                return Err(Error::Precondition("variant 2 needs binary meets in K".into()));
            }
            let meet = |a: usize, c: usize| ko.meet_of(&BitSet::from_indices(ko.len(), [a, c])).expect("binary meet");
            // k ≪ k' iff k ◁ w ◀ k' for some w
            let above = |k: usize, k2: usize| p.up_o(k).iter().any(|w| p.up_o(k2).is_subset(oo.up(w)));
            for k in (0..p.klen()).filter(|&k| o_codirected_above(b, k)) {
                let wa: Vec<usize> = (0..p.klen()).filter(|&k2| above(k, k2)).collect();
                for l in 0..p.klen() {
                    let m = meet(k, l);
                    for u in p.up_o(m).iter() {
                        n += 1;
                        if !wa.iter().any(|&k2| p.rel(meet(k2, l), u)) {
                            return Err(wilker_violation(format!("k={} l={} u={}", p.kname(k), p.kname(l), p.oname(u))));
                        }
                    }
                }
            }
        }
    }
    Ok(n)
}

/// Exhaustive Wilker conditions on a ko-space. Variant 1: K ⊆ U1 ∪ U2 gives
/// k-sets L1 ⊆ U1, L2 ⊆ U2 covering K. Variant 2: K1 ∩ K2 ⊆ U gives o-sets
/// V1 ⊇ K1, V2 ⊇ K2 with V1 ∩ V2 ⊆ U.
pub fn wilker_kospace(s: &KoSpace, variant: Variant) -> Result<usize> {
    let r = check_locally_compact(s);
    require_lc(&r)?;
    let (kf, of) = (s.kfam(), s.ofam());
    let nm = |a: &BitSet| set_name(s.base().names(), a);
    let mut n = 0;
    match variant {
        Variant::One => {
            if !o_closed_under_unions(s) {
                return Err(Error::Precondition("variant 1 needs o-sets closed under finite unions".into()));
            }
            for u in of {
                let inside: Vec<&BitSet> = kf.iter().filter(|k| k.is_subset(u)).collect();
                let union = inside.iter().fold(BitSet::new(s.len()), |acc, k| acc.union(k));
                let ks: Vec<usize> = (0..kf.len()).filter(|&k| kf[k].is_subset(u)).collect();
                if union != *u || !super::lc::bounded_family(&ks, |a, c| kf[a].is_subset(&kf[c])) {
                    return Err(Error::Precondition(format!("k-sets inside {} are not directed with union it", nm(u))));
                }
            }
            for u1 in of {
                for u2 in of {
                    let cover = u1.union(u2);
                    for k in kf.iter().filter(|k| k.is_subset(&cover)) {
                        n += 1;
                        let ok = kf.iter().filter(|l| l.is_subset(u1)).any(|l1| {
                            kf.iter().filter(|l| l.is_subset(u2)).any(|l2| k.is_subset(&l1.union(l2)))
                        });
                        if !ok {
                            return Err(wilker_violation(format!("K={} U1={} U2={}", nm(k), nm(u1), nm(u2))));
                        }
                    }
                }
            }
        }
        Variant::Two => {
            if !k_closed_under_intersections(s) {
                return Err(Error::Precondition("variant 2 needs k-sets closed under finite intersections".into()));
            }
            for k in kf {
                let around: Vec<usize> = (0..of.len()).filter(|&u| k.is_subset(&of[u])).collect();
                let meet = around.iter().fold(BitSet::full(s.len()), |acc, &u| acc.intersection(&of[u]));
                if meet != *k || !super::lc::bounded_family(&around, |a, c| of[c].is_subset(&of[a])) {
                    return Err(Error::Precondition(format!("o-sets around {} are not codirected with intersection it", nm(k))));
                }
            }
            for k1 in kf {
                for k2 in kf {
                    let inter = k1.intersection(k2);
                    for u in of.iter().filter(|u| inter.is_subset(u)) {
                        n += 1;
                        let ok = of.iter().filter(|v| k1.is_subset(v)).any(|v1| {
                            of.iter().filter(|v| k2.is_subset(v)).any(|v2| v1.intersection(v2).is_subset(u))
                        });
                        if !ok {
                            return Err(wilker_violation(format!("K1={} K2={} U={}", nm(k1), nm(k2), nm(u))));
                        }
                    }
                }
            }
        }
    }
    Ok(n)
}
