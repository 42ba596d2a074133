use crate::bidcpo::{cp_pairs_lattice, raney_witness};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::order::{upset_lattice, FinLattice, FinPoset};

/// x ↦ (↑x, X∖↓x) from X onto the completely prime pairs of Up(X).
#[derive(Clone, Debug)]
pub struct RaneyPosetReport {
    pub lattice: FinLattice,
    pub pairs: Vec<(usize, usize)>,
    /// point -> index into `pairs`
    pub map: Vec<usize>,
}

/// a ↦ {(k, u) : k ≤ a} from L onto Up(CP(L)).
#[derive(Clone, Debug)]
pub struct RaneyLatticeReport {
    pub points: FinPoset,
    pub upsets: FinLattice,
    /// lattice element -> element of `upsets`
    pub map: Vec<usize>,
}

/// Completely prime pairs of L as a poset: (k, u) <= (l, v) iff l <= k.
pub fn cp_poset(l: &FinLattice) -> Result<(FinPoset, Vec<(usize, usize)>)> {
    let cps = cp_pairs_lattice(l);
    let names: Vec<String> = cps.iter().map(|&(k, _)| l.name(k).to_string()).collect();
    let (p, perm) = FinPoset::from_fn_unsorted(names, |i, j| l.leq(cps[j].0, cps[i].0))?;
    let mut sorted = cps.clone();
    for (old, &new) in perm.iter().enumerate() {
        sorted[new] = cps[old];
    }
    Ok((p, sorted))
}

pub fn raney_poset_roundtrip(x: &FinPoset) -> Result<RaneyPosetReport> {
    let up = upset_lattice(x)?;
    let (cp, pairs) = cp_poset(&up.lattice)?;
    let mut map = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let k = up.element_of(x.up(i)).expect("upset");
        let u = up.element_of(&x.down(i).complement()).expect("upset");
        let j = pairs.iter().position(|&p| p == (k, u)).ok_or_else(|| {
            Error::theorem("points of X are completely prime pairs of Up(X)", x.name(i).to_string())
        })?;
        map.push(j);
    }
    if pairs.len() != x.len() || (0..x.len()).any(|a| (0..x.len()).any(|b| x.leq(a, b) != cp.leq(map[a], map[b]))) {
        return Err(Error::theorem("X is isomorphic to CP(Up(X))", "map is not an order isomorphism".into()));
    }
    Ok(RaneyPosetReport { lattice: up.lattice, pairs, map })
}

pub fn raney_lattice_roundtrip(l: &FinLattice) -> Result<RaneyLatticeReport> {
    if let Some((a, b)) = raney_witness(l) {
        return Err(Error::Precondition(format!(
            "not a Raney lattice: no completely prime pair separates {} from {}",
            l.name(a),
            l.name(b)
        )));
    }
    let (points, pairs) = cp_poset(l)?;
    let up = upset_lattice(&points)?;
    let n = pairs.len();
    let mut map = Vec::with_capacity(l.len());
    for a in 0..l.len() {
        let s = BitSet::from_indices(n, (0..n).filter(|&i| l.leq(pairs[i].0, a)));
        let e = up.element_of(&s).ok_or_else(|| Error::theorem("hat of an element is an upset", l.name(a).to_string()))?;
        if l.join_all(s.iter().map(|i| pairs[i].0)) != a {
            return Err(Error::theorem("a is the join of the pairs below it", l.name(a).to_string()));
        }
        map.push(e);
    }
    let bij = up.lattice.len() == l.len();
    if !bij || (0..l.len()).any(|a| (0..l.len()).any(|b| l.leq(a, b) != up.lattice.leq(map[a], map[b]))) {
        return Err(Error::theorem("L is isomorphic to Up(CP(L))", "map is not an order isomorphism".into()));
    }
    Ok(RaneyLatticeReport { points, upsets: up.lattice, map })
}
