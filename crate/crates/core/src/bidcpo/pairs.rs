use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::order::{FinLattice, FinPoset};
use crate::polarity::Polarity;

/// Pairs (k, u) with u maximal in {v : k ⋪ v} and k minimal in {l : l ⋪ u}.
/// Requires a purified polarity.
pub fn neswarrow_pairs(p: &Polarity) -> Result<Vec<(usize, usize)>> {
    let kord = p.k_poset()?;
    let oord = p.o_poset()?;
    Ok(neswarrow_with(p, &kord, &oord))
}

pub(crate) fn neswarrow_with(p: &Polarity, kord: &FinPoset, oord: &FinPoset) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 0..p.klen() {
        let not_above = p.up_o(k).complement();
        let maxes = oord.maximal(&not_above);
        for u in maxes.iter() {
            let not_below = p.down_k(u).complement();
            if kord.minimal(&not_below).contains(k) {
                out.push((k, u));
            }
        }
    }
    out
}

/// Lattice pairs (a, b) with b maximal in {c : a ≰ c} and a minimal in {c : c ≰ b}.
pub fn neswarrow_pairs_lattice(l: &FinLattice) -> Vec<(usize, usize)> {
    let p = l.poset();
    let mut out = Vec::new();
    for a in 0..l.len() {
        for b in p.maximal(&p.up(a).complement()).iter() {
            if p.minimal(&p.down(b).complement()).contains(a) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Completely prime pairs: k = min{l : l ⋪ u} and u = max{v : k ⋪ v}.
pub fn cp_pairs(p: &Polarity) -> Result<Vec<(usize, usize)>> {
    let kord = p.k_poset()?;
    let oord = p.o_poset()?;
    Ok(cp_with(p, &kord, &oord))
}

pub(crate) fn cp_with(p: &Polarity, kord: &FinPoset, oord: &FinPoset) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..p.olen() {
        let Some(k) = kord.least(&p.down_k(u).complement()) else { continue };
        if oord.greatest(&p.up_o(k).complement()) == Some(u) {
            out.push((k, u));
        }
    }
    out.sort_unstable();
    out
}

/// Lattice CP pairs: ↑a and ↓b partition L.
pub fn cp_pairs_lattice(l: &FinLattice) -> Vec<(usize, usize)> {
    let p = l.poset();
    let mut out = Vec::new();
    for a in 0..l.len() {
        let rest = p.up(a).complement();
        if let Some(b) = p.greatest(&rest) {
            if p.down(b) == &rest {
                out.push((a, b));
            }
        }
    }
    out
}

fn dominated(pairs: &[(usize, usize)], below: &BitSet, above: &BitSet) -> bool {
    pairs.iter().any(|&(l, v)| below.contains(l) && above.contains(v))
}

/// First k ⋪ u not dominated by a ⤢ pair (l, v) with l ≤ k, u ≤ v.
pub fn bifounded_witness(p: &Polarity) -> Result<Option<(usize, usize)>> {
    let kord = p.k_poset()?;
    let oord = p.o_poset()?;
    let pairs = neswarrow_with(p, &kord, &oord);
    for k in 0..p.klen() {
        for u in p.up_o(k).complement().iter() {
            if !dominated(&pairs, kord.down(k), oord.up(u)) {
                return Ok(Some((k, u)));
            }
        }
    }
    Ok(None)
}

pub fn is_bifounded(p: &Polarity) -> Result<bool> {
    Ok(bifounded_witness(p)?.is_none())
}

pub fn bifounded_witness_lattice(l: &FinLattice) -> Option<(usize, usize)> {
    let p = l.poset();
    let pairs = neswarrow_pairs_lattice(l);
    for a in 0..l.len() {
        for b in p.up(a).complement().iter() {
            if !dominated(&pairs, p.down(a), p.up(b)) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn is_bifounded_lattice(l: &FinLattice) -> bool {
    bifounded_witness_lattice(l).is_none()
}

/// First a ≰ b with no CP pair (k, u) such that k ≤ a and b ≤ u.
pub fn raney_witness(l: &FinLattice) -> Option<(usize, usize)> {
    let p = l.poset();
    let pairs = cp_pairs_lattice(l);
    for a in 0..l.len() {
        for b in p.up(a).complement().iter() {
            if !dominated(&pairs, p.down(a), p.up(b)) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn is_raney(l: &FinLattice) -> bool {
    raney_witness(l).is_none()
}

/// On a distributive lattice the CP pairs are exactly the ⤢ pairs.
pub fn key_lemma_check(l: &FinLattice) -> Result<bool> {
    if let Some((k, u, c)) = l.distributivity_witness() {
        return Err(Error::NotDistributive(format!(
            "cut rule fails at ({}, {}, {})",
            l.name(k),
            l.name(u),
            l.name(c)
        )));
    }
    Ok(cp_pairs_lattice(l) == neswarrow_pairs_lattice(l))
}
