//! Seeded random structures. Everything draws from ChaCha8, so equal seeds
//! give equal output on every platform.
//!
//! Distributions:
//! - poset: names p0.., each pair i < j related independently with
//!   probability 1/2, then transitively closed (so index order is a linear
//!   extension).
//! - ko-space: a random poset, its minimal ko-space, plus each remaining
//!   upset added to K and to O independently with probability `extra`.
//!   Invalid draws are rejected; after `TRIES` rejections in a row the
//!   probability is halved, and at zero the minimal space is returned.
//! - bicontinuous ko-space: see `random_bicontinuous_kospace`.
//! - polarity: each pair related with probability 1/2, then purified. The
//!   bi-dcpo generator rejection-samples on the bi-dcpo axioms.
//! - monotone map: values chosen along the index order from the common
//!   upper set of earlier images; dead ends restart.
//! - weakening relation: each pair with probability 1/2, then the smallest
//!   weakening relation containing them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bidcpo::{validate_bidcpo, BiDcpo};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::guard::{self, UPSET_LIMIT};
use crate::kospace::{CRelation, KoSpace};
use crate::localcompact::check_bicontinuous;
use crate::order::{numbered, FinPoset, WeakRel};
use crate::polarity::{all_galois_morphisms, GaloisMorphism, Polarity};

pub type GenRng = ChaCha8Rng;

pub const TRIES: usize = 64;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn size_ok(n: usize) -> Result<()> {
    guard::ensure("generated structure", n, UPSET_LIMIT)
}

pub fn random_poset(rng: &mut GenRng, n: usize) -> Result<FinPoset> {
    size_ok(n)?;
    let rel: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i < j && rng.gen_bool(0.5)).collect()).collect();
    FinPoset::from_fn_unsorted(numbered("p", n), |i, j| rel[i][j]).map(|(p, _)| p)
}

pub fn random_kospace(rng: &mut GenRng, n: usize, extra: f64) -> Result<KoSpace> {
    let base = random_poset(rng, n)?;
    draw_kospace(rng, base, extra)
}

fn draw_kospace(rng: &mut GenRng, base: FinPoset, extra: f64) -> Result<KoSpace> {
    let min = KoSpace::minimal(&base);
    let ups = base.upsets()?;
    let mut p = extra;
    while p > 1e-3 {
        for _ in 0..TRIES {
            let mut k = min.kfam().to_vec();
            let mut o = min.ofam().to_vec();
            for u in &ups {
                if rng.gen_bool(p) {
                    k.push(u.clone());
                }
                if rng.gen_bool(p) {
                    o.push(u.clone());
                }
            }
            if let Ok(s) = KoSpace::new(base.clone(), k, o) {
                return Ok(s);
            }
        }
        p /= 2.0;
    }
    Ok(min)
}

/// Finite bicontinuous ko-spaces have K = O (a k-set is the least o-set
/// above it), so this draws one family F holding ∅, X, the principal upsets
/// and the complements of principal downsets, plus each other upset with
/// probability 0.3, and keeps K = O = F once it validates. The fallback is
/// F = all upsets.
pub fn random_bicontinuous_kospace(rng: &mut GenRng, n: usize) -> Result<KoSpace> {
    let base = random_poset(rng, n)?;
    let min = KoSpace::minimal(&base);
    let ups = base.upsets()?;
    for _ in 0..TRIES {
        let mut f: Vec<BitSet> = min.kfam().iter().chain(min.ofam()).cloned().collect();
        f.push(BitSet::new(n));
        f.push(BitSet::full(n));
        f.extend(ups.iter().filter(|_| rng.gen_bool(0.3)).cloned());
        if let Ok(s) = KoSpace::new(base.clone(), f.clone(), f) {
            if check_bicontinuous(&s).bicontinuous {
                return Ok(s);
            }
        }
    }
    Ok(KoSpace::trusted(base, ups.clone(), ups))
}

/// Purified; the sides may shrink.
pub fn random_polarity(rng: &mut GenRng, nk: usize, no: usize) -> Result<Polarity> {
    size_ok(nk.max(no))?;
    let rel: Vec<Vec<bool>> = (0..nk).map(|_| (0..no).map(|_| rng.gen_bool(0.5)).collect()).collect();
    let (p, _, _) = Polarity::from_fn_unsorted(numbered("k", nk), numbered("u", no), |k, u| rel[k][u])?;
    Ok(p.purify())
}

pub fn random_bidcpo(rng: &mut GenRng, nk: usize, no: usize) -> Result<BiDcpo> {
    for _ in 0..TRIES {
        if let Ok(b) = validate_bidcpo(&random_polarity(rng, nk, no)?) {
            return Ok(b);
        }
    }
    Err(Error::Precondition(format!("no {nk}x{no} bi-dcpo in {TRIES} draws")))
}

pub fn random_monotone(rng: &mut GenRng, from: &FinPoset, to: &FinPoset) -> Result<Vec<usize>> {
    if to.is_empty() {
        return if from.is_empty() { Ok(vec![]) } else { Err(Error::Precondition("no map into the empty poset".into())) };
    }
    // a linear extension: fewer elements below comes first
    let mut order: Vec<usize> = (0..from.len()).collect();
    order.sort_by_key(|&x| from.down(x).count());
    'restart: for _ in 0..TRIES {
        let mut f = vec![usize::MAX; from.len()];
        for &x in &order {
            let mut cand = to.all();
            for y in from.down(x).iter().filter(|&y| y != x) {
                cand.intersect_with(to.up(f[y]));
            }
            let c = cand.to_vec();
            match c.choose(rng) {
                Some(&v) => f[x] = v,
                None => continue 'restart,
            }
        }
        return Ok(f);
    }
    // constant maps are monotone
    Ok(vec![rng.gen_range(0..to.len()); from.len()])
}

pub fn random_weakening(rng: &mut GenRng, from: &FinPoset, to: &FinPoset, density: f64) -> WeakRel {
    let rows: Vec<BitSet> = (0..from.len())
        .map(|_| BitSet::from_indices(to.len(), (0..to.len()).filter(|_| rng.gen_bool(density))))
        .collect();
    WeakRel::closure(from.clone(), to.clone(), &rows)
}

/// Rejection-sampled over weakening relations of varying density; the
/// densities cycle so sparse and dense relations both appear.
pub fn random_crelation(rng: &mut GenRng, s: &KoSpace, t: &KoSpace) -> Option<CRelation> {
    const DENSITIES: [f64; 4] = [0.15, 0.3, 0.5, 0.7];
    for i in 0..TRIES {
        let r = random_weakening(rng, s.base(), t.base(), DENSITIES[i % 4]);
        if let Ok(c) = CRelation::new(s.clone(), t.clone(), r) {
            return Some(c);
        }
    }
    None
}

/// Uniform over all Galois morphisms; None if there are none or the
/// enumeration is refused.
pub fn random_galois(rng: &mut GenRng, s: &Polarity, t: &Polarity) -> Option<GaloisMorphism> {
    all_galois_morphisms(s, t).ok()?.choose(rng).cloned()
}
