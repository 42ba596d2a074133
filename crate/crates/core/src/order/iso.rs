//! Isomorphism search for small vertex-colored relational structures.

use crate::bitset::BitSet;

use super::poset::FinPoset;

/// Vertices `0..n` with a color each and some binary relations given as rows.
#[derive(Clone, Debug)]
pub struct Structure {
    pub colors: Vec<u64>,
    pub rels: Vec<Vec<BitSet>>,
}

impl Structure {
    fn len(&self) -> usize {
        self.colors.len()
    }

    /// Color refined by in/out degree in every relation.
    fn profile(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0..n)
            .map(|v| {
                let mut p = vec![self.colors[v] as usize];
                for r in &self.rels {
                    p.push(r[v].count());
                    p.push((0..n).filter(|&u| r[u].contains(v)).count());
                    p.push(r[v].contains(v) as usize);
                }
                p
            })
            .collect()
    }
}

/// First isomorphism a -> b in lexicographic order of the image sequence.
pub fn find_isomorphism(a: &Structure, b: &Structure) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() || a.rels.len() != b.rels.len() {
        return None;
    }
    let pa = a.profile();
    let pb = b.profile();
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &pa, &pb, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    a: &Structure,
    b: &Structure,
    pa: &[Vec<usize>],
    pb: &[Vec<usize>],
    v: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if v == a.len() {
        return true;
    }
    for w in 0..b.len() {
        if used[w] || pa[v] != pb[w] {
            continue;
        }
        let ok = (0..v).all(|p| {
            let q = map[p];
            a.rels.iter().zip(&b.rels).all(|(ra, rb)| {
                ra[v].contains(p) == rb[w].contains(q) && ra[p].contains(v) == rb[q].contains(w)
            })
        });
        if !ok {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(a, b, pa, pb, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}

pub(crate) fn poset_structure(p: &FinPoset) -> Structure {
    Structure { colors: vec![0; p.len()], rels: vec![(0..p.len()).map(|i| p.up(i).clone()).collect()] }
}

/// An order-isomorphism P -> Q, if any.
pub fn poset_isomorphic(p: &FinPoset, q: &FinPoset) -> Option<Vec<usize>> {
    find_isomorphism(&poset_structure(p), &poset_structure(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn brute(p: &FinPoset, q: &FinPoset) -> Option<Vec<usize>> {
        if p.len() != q.len() {
            return None;
        }
        (0..p.len()).permutations(p.len()).find(|f| {
            (0..p.len()).all(|x| (0..p.len()).all(|y| p.leq(x, y) == q.leq(f[x], f[y])))
        })
    }

    #[test]
    fn examples() {
        let c = FinPoset::chain(&["a", "b"]).unwrap();
        let a = FinPoset::antichain(&["a", "b"]).unwrap();
        assert_eq!(poset_isomorphic(&c, &c), Some(vec![0, 1]));
        assert_eq!(poset_isomorphic(&c, &a), None);
        let d1 = FinPoset::new(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap();
        let d2 = FinPoset::new(&["p", "q", "r", "s"], &[("s", "q"), ("s", "p"), ("q", "r"), ("p", "r")]).unwrap();
        let f = poset_isomorphic(&d1, &d2).unwrap();
        assert_eq!(Some(f), brute(&d1, &d2));
    }

    #[test]
    fn agrees_with_permutation_oracle() {
        // All labeled posets on 4 points from upper-triangular relations.
        let pairs: Vec<(usize, usize)> = (0..4).tuple_combinations().collect();
        let names = ["a", "b", "c", "d"];
        let mut posets = Vec::new();
        for m in 0u32..1 << pairs.len() {
            let rel: Vec<(&str, &str)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &(x, y))| (names[x], names[y]))
                .collect();
            posets.push(FinPoset::new(&names, &rel).unwrap());
        }
        posets.dedup();
        for p in posets.iter().step_by(7) {
            for q in posets.iter().step_by(5) {
                assert_eq!(poset_isomorphic(p, q), brute(p, q));
            }
        }
    }
}
