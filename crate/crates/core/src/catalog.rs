//! Exhaustive small catalogs: posets and lattices up to isomorphism, purified
//! polarities, admissible ko-space families over a poset, and dirspaces.
//! Lattice lists are cached on disk under the system temp directory.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;

use crate::bitset::BitSet;
use crate::error::Result;
use crate::guard;
use crate::io::PosetDoc;
use crate::kospace::KoSpace;
use crate::localcompact::Dirspace;
use crate::order::{numbered, poset_isomorphic, FinLattice, FinPoset};
use crate::polarity::Polarity;

/// Poset sizes above this are refused (natural labellings grow as 2^(n(n-1)/2)).
pub const POSET_LIMIT: usize = 6;
/// Non-principal upsets per side above this are refused by `all_kospaces`.
pub const EXTRA_UPSET_LIMIT: usize = 10;

/// All n-element posets up to isomorphism, elements named by `names`.
fn posets_named(names: &[String]) -> Result<Vec<FinPoset>> {
    let n = names.len();
    guard::ensure("poset for exhaustive enumeration", n, POSET_LIMIT)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut by_shape: HashMap<Vec<(usize, usize)>, Vec<FinPoset>> = HashMap::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let mut rel = vec![vec![false; n]; n];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            rel[i][j] = mask >> b & 1 == 1;
        }
        // every poset has a natural labelling, so i < j suffices; keep closed relations only
        let closed = (0..n).all(|i| (i..n).all(|j| !rel[i][j] || (j..n).all(|k| !rel[j][k] || rel[i][k])));
        if !closed {
            continue;
        }
        let (p, _) = FinPoset::from_fn_unsorted(names.to_vec(), |i, j| rel[i][j])?;
        let mut shape: Vec<(usize, usize)> = (0..n).map(|i| (p.up(i).count(), p.down(i).count())).collect();
        shape.sort_unstable();
        let bucket = by_shape.entry(shape).or_default();
        if bucket.iter().all(|q| poset_isomorphic(q, &p).is_none()) {
            bucket.push(p.clone());
            out.push(p);
        }
    }
    Ok(out)
}

/// All n-element posets up to isomorphism, elements p0, p1, ...
pub fn all_posets(n: usize) -> Result<Vec<FinPoset>> {
    posets_named(&numbered("p", n))
}

fn cache_path(n: usize) -> PathBuf {
    std::env::temp_dir().join("kodual-cache").join(format!("lattices-{n}.json"))
}

fn load_cached(n: usize) -> Option<Vec<FinLattice>> {
    let text = fs::read_to_string(cache_path(n)).ok()?;
    let docs: Vec<PosetDoc> = serde_json::from_str(&text).ok()?;
    docs.iter().map(|d| d.build().and_then(FinLattice::new).ok().filter(|l| l.len() == n)).collect()
}

fn store(n: usize, ls: &[FinLattice]) {
    let path = cache_path(n);
    let docs: Vec<PosetDoc> = ls.iter().map(|l| PosetDoc::from_poset(l.poset())).collect();
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let written = path.parent().map(fs::create_dir_all).transpose().is_ok()
        && fs::write(&tmp, serde_json::to_string(&docs).expect("documents serialize")).is_ok();
    // a failed write only costs a recomputation next time
    if !written || fs::rename(&tmp, &path).is_err() {
        log::debug!("lattice cache for n = {n} not written");
        let _ = fs::remove_file(&tmp);
    }
}

/// All n-element lattices up to isomorphism without touching the cache.
/// Bottom is `0`, top is `1`, the rest are a, b, ...
pub fn enumerate_lattices(n: usize) -> Result<Vec<FinLattice>> {
    match n {
        0 => return Ok(vec![]),
        1 => return Ok(vec![FinLattice::chain(&["0"])?]),
        _ => {}
    }
    let inner: Vec<String> = (0..n - 2).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut out = Vec::new();
    for p in posets_named(&inner)? {
        let mut names = vec!["0".to_string(), "1".to_string()];
        names.extend(inner.iter().cloned());
        let bounded = FinPoset::from_fn_unsorted(names, |i, j| match (i, j) {
            (0, _) | (_, 1) => true,
            (1, _) | (_, 0) => false,
            _ => p.leq(i - 2, j - 2),
        })?
        .0;
        if let Ok(l) = FinLattice::new(bounded) {
            out.push(l);
        }
    }
    Ok(out)
}

/// Like `enumerate_lattices`, through the disk cache.
pub fn all_lattices(n: usize) -> Result<Vec<FinLattice>> {
    if let Some(ls) = load_cached(n) {
        return Ok(ls);
    }
    let ls = enumerate_lattices(n)?;
    store(n, &ls);
    Ok(ls)
}

/// Lattices of sizes 1..=n, named like `L5#3` (size, then position).
pub fn lattices_up_to(n: usize) -> Result<Vec<(String, FinLattice)>> {
    let mut out = Vec::new();
    for size in 1..=n {
        for (i, l) in all_lattices(size)?.into_iter().enumerate() {
            out.push((format!("L{size}#{i:02}"), l));
        }
    }
    Ok(out)
}

/// Every purified polarity on k0.. x u0.. with the given sizes (labelled,
/// not up to isomorphism).
pub fn purified_polarities(nk: usize, no: usize) -> Result<Vec<Polarity>> {
    guard::ensure("polarity for exhaustive enumeration", nk * no, 16)?;
    let mut out = Vec::new();
    for mask in 0u32..1 << (nk * no) {
        let p = Polarity::from_fn_unsorted(numbered("k", nk), numbered("u", no), |k, u| mask >> (k * no + u) & 1 == 1)?.0;
        if p.is_purified() {
            out.push(p);
        }
    }
    Ok(out)
}

/// All sizes up to nk x no, named like `P2x3#017`.
pub fn purified_polarities_up_to(nk: usize, no: usize) -> Result<Vec<(String, Polarity)>> {
    let mut out = Vec::new();
    for a in 0..=nk {
        for b in 0..=no {
            for (i, p) in purified_polarities(a, b)?.into_iter().enumerate() {
                out.push((format!("P{a}x{b}#{i:03}"), p));
            }
        }
    }
    Ok(out)
}

/// Every ko-space on the poset: K and O range over the families of upsets
/// containing the principal ones, and each pair is validated.
pub fn all_kospaces(x: &FinPoset) -> Result<Vec<KoSpace>> {
    let ups = x.upsets()?;
    let min = KoSpace::minimal(x);
    let extra = |fam: &[BitSet]| -> Vec<BitSet> { ups.iter().filter(|u| !fam.contains(u)).cloned().collect() };
    let (ek, eo) = (extra(min.kfam()), extra(min.ofam()));
    guard::ensure("non-principal upsets", ek.len().max(eo.len()), EXTRA_UPSET_LIMIT)?;
    let pick = |base: &[BitSet], more: &[BitSet], mask: u32| -> Vec<BitSet> {
        let mut f = base.to_vec();
        f.extend((0..more.len()).filter(|i| mask >> i & 1 == 1).map(|i| more[i].clone()));
        f
    };
    let mut out = Vec::new();
    for mk in 0u32..1 << ek.len() {
        for mo in 0u32..1 << eo.len() {
            if let Ok(s) = KoSpace::new(x.clone(), pick(min.kfam(), &ek, mk), pick(min.ofam(), &eo, mo)) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Every dirspace on p0..: in the finite case each family of subsets is
/// closed under directed unions.
pub fn all_dirspaces(n: usize) -> Result<Vec<Dirspace>> {
    guard::ensure("points for dirspace enumeration", n, 3)?;
    let names = numbered("p", n);
    let subsets: Vec<BitSet> = (0u32..1 << n).map(|m| BitSet::from_indices(n, (0..n).filter(|&i| m >> i & 1 == 1))).collect();
    (0u64..1 << subsets.len())
        .map(|fm| {
            let opens = (0..subsets.len()).filter(|&i| fm >> i & 1 == 1).map(|i| subsets[i].clone()).collect();
            Dirspace::from_sets(names.clone(), opens)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::lattice_isomorphic;

    #[test]
    fn poset_counts() {
        // unlabelled posets on 0..6 points
        let counts: Vec<usize> = (0..=5).map(|n| all_posets(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn lattice_counts() {
        let ls: Vec<Vec<FinLattice>> = (1..=6).map(|n| enumerate_lattices(n).unwrap()).collect();
        assert_eq!(ls.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 1, 1, 2, 5, 15]);
        let dist: Vec<usize> = ls.iter().map(|v| v.iter().filter(|l| l.is_distributive()).count()).collect();
        assert_eq!(dist, vec![1, 1, 1, 2, 3, 5]);
        for v in &ls {
            for (i, a) in v.iter().enumerate() {
                for b in &v[i + 1..] {
                    assert!(lattice_isomorphic(a, b).is_none());
                }
            }
        }
    }

    #[test]
    fn cache_matches_fresh_enumeration() {
        for n in 1..=6 {
            let fresh = enumerate_lattices(n).unwrap();
            assert_eq!(all_lattices(n).unwrap().len(), fresh.len());
            // second call is served from disk when writable
            let again = all_lattices(n).unwrap();
            assert!(again.iter().zip(&fresh).all(|(a, b)| a.poset() == b.poset()));
        }
    }

    #[test]
    fn polarity_counts() {
        // purified relations on 1x1: both; on 2x2 the oracle counts directly
        assert_eq!(purified_polarities(1, 1).unwrap().len(), 2);
        let brute = (0u32..16)
            .filter(|m| {
                let rows = [m & 3, m >> 2 & 3];
                let cols = [(m & 1) | (m >> 1 & 2), (m >> 1 & 1) | (m >> 2 & 2)];
                rows[0] != rows[1] && cols[0] != cols[1]
            })
            .count();
        assert_eq!(purified_polarities(2, 2).unwrap().len(), brute);
        // with no k-elements all o-columns coincide
        assert_eq!(purified_polarities(0, 3).unwrap().len(), 0);
        assert_eq!(purified_polarities(0, 1).unwrap().len(), 1);
    }

    #[test]
    fn kospaces_over_small_posets() {
        // one point: K must hold {x}; O must hold {} ; extras are the other upset each side
        let one = FinPoset::antichain(&["x"]).unwrap();
        let all = all_kospaces(&one).unwrap();
        assert!(all.iter().all(|s| s.kfam().contains(&BitSet::full(1)) && s.ofam().contains(&BitSet::new(1))));
        assert!(all.iter().any(|s| *s == KoSpace::minimal(&one)));
        for n in 0..=3 {
            for p in all_posets(n).unwrap() {
                assert!(all_kospaces(&p).unwrap().contains(&KoSpace::minimal(&p)));
            }
        }
    }

    #[test]
    fn dirspace_count() {
        assert_eq!(all_dirspaces(2).unwrap().len(), 16);
        assert!(all_dirspaces(4).is_err());
    }
}
