use crate::error::{check, Code, Diagnostic, Error, Result};
use crate::guard;

use super::dbl::{to_double_base_with, DoubleBaseLattice};
use super::relation::Polarity;

/// A pair (♦: K₁ -> K₂, □: O₂ -> O₁) with ♦(k) ◁₂ u iff k ◁₁ □(u).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaloisMorphism {
    source: Polarity,
    target: Polarity,
    fwd: Vec<usize>,
    bwd: Vec<usize>,
}

impl GaloisMorphism {
    pub fn new(source: Polarity, target: Polarity, fwd: Vec<usize>, bwd: Vec<usize>) -> Result<Self> {
        let mut ds = Vec::new();
        if fwd.len() != source.klen() || fwd.iter().any(|&k| k >= target.klen()) {
            ds.push(Diagnostic::new(Code::NotFunction, "forward map is not a function K1 -> K2"));
        }
        if bwd.len() != target.olen() || bwd.iter().any(|&u| u >= source.olen()) {
            ds.push(Diagnostic::new(Code::NotFunction, "backward map is not a function O2 -> O1"));
        }
        check(ds)?;
        if let Some((k, u)) = galois_violation(&source, &target, &fwd, &bwd) {
            return Err(Error::Invalid(vec![Diagnostic::new(
                Code::GaloisCondition,
                format!("k = {}, u = {}", source.kname(k), target.oname(u)),
            )]));
        }
        Ok(GaloisMorphism { source, target, fwd, bwd })
    }

    pub fn identity(p: &Polarity) -> Self {
        GaloisMorphism {
            source: p.clone(),
            target: p.clone(),
            fwd: (0..p.klen()).collect(),
            bwd: (0..p.olen()).collect(),
        }
    }

    pub fn source(&self) -> &Polarity {
        &self.source
    }

    pub fn target(&self) -> &Polarity {
        &self.target
    }

    /// ♦ as a table over K₁.
    pub fn fwd(&self) -> &[usize] {
        &self.fwd
    }

    /// □ as a table over O₂.
    pub fn bwd(&self) -> &[usize] {
        &self.bwd
    }

    /// First self, then `next`.
    pub fn compose(&self, next: &GaloisMorphism) -> Result<GaloisMorphism> {
        if self.target != next.source {
            return Err(Error::Mismatch("composite of Galois morphisms with different middle polarities".into()));
        }
        Ok(GaloisMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            fwd: self.fwd.iter().map(|&k| next.fwd[k]).collect(),
            bwd: next.bwd.iter().map(|&u| self.bwd[u]).collect(),
        })
    }

    /// The unique □ making ♦ a Galois morphism, if any (purified polarities).
    pub fn from_fwd(source: &Polarity, target: &Polarity, fwd: Vec<usize>) -> Option<Self> {
        let bwd = (0..target.olen())
            .map(|u| {
                let col = crate::BitSet::from_indices(
                    source.klen(),
                    (0..source.klen()).filter(|&k| target.rel(fwd[k], u)),
                );
                (0..source.olen()).find(|&v| *source.down_k(v) == col)
            })
            .collect::<Option<Vec<usize>>>()?;
        Some(GaloisMorphism { source: source.clone(), target: target.clone(), fwd, bwd })
    }

    /// The unique ♦ making □ a Galois morphism, if any (purified polarities).
    pub fn from_bwd(source: &Polarity, target: &Polarity, bwd: Vec<usize>) -> Option<Self> {
        let fwd = (0..source.klen())
            .map(|k| {
                let row = crate::BitSet::from_indices(
                    target.olen(),
                    (0..target.olen()).filter(|&u| source.rel(k, bwd[u])),
                );
                (0..target.klen()).find(|&l| *target.up_o(l) == row)
            })
            .collect::<Option<Vec<usize>>>()?;
        Some(GaloisMorphism { source: source.clone(), target: target.clone(), fwd, bwd })
    }

    /// (□, ♦) from the swapped target to the swapped source.
    pub fn swap(&self) -> GaloisMorphism {
        GaloisMorphism {
            source: self.target.swap(),
            target: self.source.swap(),
            fwd: self.bwd.clone(),
            bwd: self.fwd.clone(),
        }
    }
}

fn galois_violation(s: &Polarity, t: &Polarity, fwd: &[usize], bwd: &[usize]) -> Option<(usize, usize)> {
    (0..s.klen())
        .flat_map(|k| (0..t.olen()).map(move |u| (k, u)))
        .find(|&(k, u)| t.rel(fwd[k], u) != s.rel(k, bwd[u]))
}

/// Every Galois morphism between two purified polarities. Either component
/// determines the other, so the smaller table space is enumerated.
pub fn all_galois_morphisms(source: &Polarity, target: &Polarity) -> Result<Vec<GaloisMorphism>> {
    let by_fwd = (target.klen() as f64).powi(source.klen() as i32);
    let by_bwd = (source.olen() as f64).powi(target.olen() as i32);
    let mut out = if by_fwd <= by_bwd {
        guard::ensure("forward tables to enumerate", by_fwd.min(1e12) as usize, 1 << 20)?;
        tables(source.klen(), target.klen(), |t| GaloisMorphism::from_fwd(source, target, t))
    } else {
        guard::ensure("backward tables to enumerate", by_bwd.min(1e12) as usize, 1 << 20)?;
        tables(target.olen(), source.olen(), |t| GaloisMorphism::from_bwd(source, target, t))
    };
    out.sort_by(|a, b| (&a.fwd, &a.bwd).cmp(&(&b.fwd, &b.bwd)));
    Ok(out)
}

/// Every function table [0, m)^n passed through `f`.
fn tables(n: usize, m: usize, f: impl Fn(Vec<usize>) -> Option<GaloisMorphism>) -> Vec<GaloisMorphism> {
    let mut out = Vec::new();
    if n > 0 && m == 0 {
        return out;
    }
    let mut t = vec![0usize; n];
    loop {
        if let Some(g) = f(t.clone()) {
            out.push(g);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            t[i] += 1;
            if t[i] < m {
                break;
            }
            t[i] = 0;
            i += 1;
        }
    }
}

/// Adjoint pair between double base lattices preserving the designated subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGaloisMorphism {
    source: DoubleBaseLattice,
    target: DoubleBaseLattice,
    fwd: Vec<usize>,
    bwd: Vec<usize>,
}

impl EmbeddedGaloisMorphism {
    pub fn new(source: DoubleBaseLattice, target: DoubleBaseLattice, fwd: Vec<usize>, bwd: Vec<usize>) -> Result<Self> {
        let (l1, l2) = (source.lattice(), target.lattice());
        let mut ds = Vec::new();
        if fwd.len() != l1.len() || bwd.len() != l2.len() || fwd.iter().any(|&y| y >= l2.len()) || bwd.iter().any(|&x| x >= l1.len()) {
            return Err(Error::Invalid(vec![Diagnostic::new(Code::NotFunction, "map tables have wrong shape")]));
        }
        'adj: for x in 0..l1.len() {
            for y in 0..l2.len() {
                if l2.leq(fwd[x], y) != l1.leq(x, bwd[y]) {
                    ds.push(Diagnostic::new(Code::Adjunction, format!("x = {}, y = {}", l1.name(x), l2.name(y))));
                    break 'adj;
                }
            }
        }
        if let Some(k) = source.kelems().into_iter().find(|&k| !target.kset().contains(fwd[k])) {
            ds.push(Diagnostic::new(Code::KPreserved, format!("{} leaves the k-elements", l1.name(k))));
        }
        if let Some(u) = target.oelems().into_iter().find(|&u| !source.oset().contains(bwd[u])) {
            ds.push(Diagnostic::new(Code::OPreserved, format!("{} leaves the o-elements", l2.name(u))));
        }
        check(ds)?;
        Ok(EmbeddedGaloisMorphism { source, target, fwd, bwd })
    }

    pub fn source(&self) -> &DoubleBaseLattice {
        &self.source
    }

    pub fn target(&self) -> &DoubleBaseLattice {
        &self.target
    }

    pub fn fwd(&self) -> &[usize] {
        &self.fwd
    }

    pub fn bwd(&self) -> &[usize] {
        &self.bwd
    }

    pub fn compose(&self, next: &EmbeddedGaloisMorphism) -> Result<EmbeddedGaloisMorphism> {
        if self.target != next.source {
            return Err(Error::Mismatch("composite of embedded morphisms with different middle lattices".into()));
        }
        Ok(EmbeddedGaloisMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            fwd: self.fwd.iter().map(|&a| next.fwd[a]).collect(),
            bwd: next.bwd.iter().map(|&b| self.bwd[b]).collect(),
        })
    }
}

/// Extension to the concept lattices: ♦̄(a) = ⋁{ι♦(k) : ι k <= a}, □̄(b) = ⋀{ι□(u) : b <= ι u}.
pub fn galois_to_embedded(m: &GaloisMorphism) -> Result<EmbeddedGaloisMorphism> {
    let (d1, c1) = to_double_base_with(m.source())?;
    let (d2, c2) = to_double_base_with(m.target())?;
    let (l1, l2) = (d1.lattice(), d2.lattice());
    let (p1, p2) = (m.source(), m.target());
    let fwd = (0..l1.len())
        .map(|a| l2.join_all((0..p1.klen()).filter(|&k| l1.leq(c1.iota_k(k), a)).map(|k| c2.iota_k(m.fwd[k]))))
        .collect();
    let bwd = (0..l2.len())
        .map(|b| l1.meet_all((0..p2.olen()).filter(|&u| l2.leq(b, c2.iota_o(u))).map(|u| c1.iota_o(m.bwd[u]))))
        .collect();
    EmbeddedGaloisMorphism::new(d1, d2, fwd, bwd).map_err(|e| Error::theorem("extension of Galois morphisms", e.to_string()))
}

/// Restriction to the designated subsets, between the polarities (K, O, <=).
pub fn embedded_to_galois(m: &EmbeddedGaloisMorphism) -> Result<GaloisMorphism> {
    let (k1, k2) = (m.source.kelems(), m.target.kelems());
    let (o1, o2) = (m.source.oelems(), m.target.oelems());
    let fwd = k1
        .iter()
        .map(|&k| k2.iter().position(|&l| l == m.fwd[k]))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Invalid(vec![Diagnostic::new(Code::KPreserved, "forward map leaves K")]))?;
    let bwd = o2
        .iter()
        .map(|&u| o1.iter().position(|&v| v == m.bwd[u]))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Invalid(vec![Diagnostic::new(Code::OPreserved, "backward map leaves O")]))?;
    GaloisMorphism::new(m.source.to_polarity(), m.target.to_polarity(), fwd, bwd)
}

/// Galois morphism -> embedded -> Galois morphism, compared along k ↦ ι k and
/// u ↦ ι u into the designated subsets.
pub fn galois_embedded_roundtrip(m: &GaloisMorphism) -> Result<bool> {
    let (_, c1) = to_double_base_with(m.source())?;
    let (_, c2) = to_double_base_with(m.target())?;
    let e = galois_to_embedded(m)?;
    let back = embedded_to_galois(&e)?;
    let pos = |elems: Vec<usize>, x: usize| elems.iter().position(|&y| y == x);
    let kmap1 = |k| pos(e.source().kelems(), c1.iota_k(k));
    let kmap2 = |k| pos(e.target().kelems(), c2.iota_k(k));
    let omap1 = |u| pos(e.source().oelems(), c1.iota_o(u));
    let omap2 = |u| pos(e.target().oelems(), c2.iota_o(u));
    let fwd_ok = (0..m.source().klen()).all(|k| kmap1(k).map(|i| back.fwd()[i]) == kmap2(m.fwd()[k]));
    let bwd_ok = (0..m.target().olen()).all(|u| omap2(u).map(|i| back.bwd()[i]) == omap1(m.bwd()[u]));
    Ok(fwd_ok && bwd_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarity::{concept_lattice, to_double_base};

    fn chainp() -> Polarity {
        // (↑x, D, ∋) for the 2-chain a < b.
        Polarity::new(&["^a", "^b"], &["a", "b"], &[("^a", "a"), ("^a", "b"), ("^b", "b")]).unwrap()
    }

    #[test]
    fn identity_extends_to_identity() {
        let p = chainp();
        let e = galois_to_embedded(&GaloisMorphism::identity(&p)).unwrap();
        let n = e.source().lattice().len();
        assert_eq!(e.fwd(), &(0..n).collect::<Vec<_>>()[..]);
        assert_eq!(e.bwd(), &(0..n).collect::<Vec<_>>()[..]);
        let g = embedded_to_galois(&e).unwrap();
        assert_eq!(g.fwd(), &[0, 1]);
    }

    #[test]
    fn into_one_point_is_constant_top_extent() {
        let p = chainp();
        let one = Polarity::new(&["k"], &["u"], &[("k", "u")]).unwrap();
        let ms = all_galois_morphisms(&p, &one).unwrap();
        assert!(!ms.is_empty());
        for m in &ms {
            let e = galois_to_embedded(m).unwrap();
            let cl = concept_lattice(&one).unwrap();
            let top_extent = cl.lattice().top();
            let l1 = e.source().lattice();
            let (_, c1) = to_double_base_with(&p).unwrap();
            for a in 0..l1.len() {
                let hit = (0..p.klen()).any(|k| l1.leq(c1.iota_k(k), a));
                let expect = if hit { top_extent } else { cl.lattice().bottom() };
                assert_eq!(e.fwd()[a], expect);
            }
        }
    }

    #[test]
    fn adjunction_uniqueness() {
        let p = chainp();
        for m in all_galois_morphisms(&p, &p).unwrap() {
            let back = GaloisMorphism::from_bwd(&p, &p, m.bwd().to_vec()).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn roundtrips_and_composition() {
        let p = chainp();
        let q = Polarity::new(&["a", "b"], &["a", "b"], &[("a", "a"), ("b", "b")]).unwrap();
        let ms = all_galois_morphisms(&p, &q).unwrap();
        let ns = all_galois_morphisms(&q, &p).unwrap();
        let (_, c1) = to_double_base_with(&p).unwrap();
        let (_, c2) = to_double_base_with(&q).unwrap();
        for m in &ms {
            let e = galois_to_embedded(m).unwrap();
            let g = embedded_to_galois(&e).unwrap();
            // transport through ι
            for k in 0..p.klen() {
                let lhs = e.target().kelems()[g.fwd()[e.source().kelems().iter().position(|&x| x == c1.iota_k(k)).unwrap()]];
                assert_eq!(lhs, c2.iota_k(m.fwd()[k]));
            }
            let e2 = galois_to_embedded(&g).unwrap();
            assert_eq!(e2.fwd().len(), e.fwd().len());
            for n in &ns {
                let mn = m.compose(n).unwrap();
                let lhs = galois_to_embedded(&mn).unwrap();
                let rhs = e.compose(&galois_to_embedded(n).unwrap()).unwrap();
                assert_eq!(lhs.fwd(), rhs.fwd());
                assert_eq!(lhs.bwd(), rhs.bwd());
            }
        }
        assert!(to_double_base(&q).is_ok());
    }
}
