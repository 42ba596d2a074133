use serde::{Deserialize, Serialize};

use crate::bidcpo::{validate_bidcpo, BiDcpo, EmbeddedBiDcpo};
use crate::error::{Error, Result};
use crate::kospace::{CRelation, FinTopSpace, KoSpace};
use crate::localcompact::Dirspace;
use crate::order::{FinLattice, FinPoset, MonotoneMap, WeakRel};
use crate::polarity::{DoubleBaseLattice, GaloisMorphism, Polarity};
use crate::BitSet;

pub type Pair = (String, String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    /// generating pairs; closed reflexively and transitively on load
    #[serde(default)]
    pub leq: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarityDoc {
    pub k: Vec<String>,
    pub o: Vec<String>,
    #[serde(default)]
    pub rel: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KoSpaceDoc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<Pair>,
    pub kfam: Vec<Vec<String>>,
    pub ofam: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddedDoc {
    pub lattice: PosetDoc,
    pub kset: Vec<String>,
    pub oset: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CRelationDoc {
    pub source: KoSpaceDoc,
    pub target: KoSpaceDoc,
    #[serde(default)]
    pub rel: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisDoc {
    pub source: PolarityDoc,
    pub target: PolarityDoc,
    /// k in the source -> k in the target
    pub fwd: Vec<Pair>,
    /// o in the target -> o in the source
    pub bwd: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub source: PosetDoc,
    pub target: PosetDoc,
    pub map: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelDoc {
    pub source: PosetDoc,
    pub target: PosetDoc,
    #[serde(default)]
    pub rel: Vec<Pair>,
}

/// Every structure the workbench reads or writes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Doc {
    Poset(PosetDoc),
    Lattice(PosetDoc),
    Polarity(PolarityDoc),
    Bidcpo(PolarityDoc),
    Kospace(KoSpaceDoc),
    Topspace(SpaceDoc),
    Dirspace(SpaceDoc),
    Dbl(EmbeddedDoc),
    Embedded(EmbeddedDoc),
    Crelation(CRelationDoc),
    Galois(GaloisDoc),
    Monotone(MapDoc),
    Weakening(RelDoc),
}

pub const KINDS: &[&str] =
    &["poset", "lattice", "polarity", "bidcpo", "kospace", "topspace", "dirspace", "dbl", "embedded", "crelation", "galois", "monotone",
    "weakening"];

/// A validated structure.
#[derive(Clone, Debug)]
pub enum Item {
    Poset(FinPoset),
    Lattice(FinLattice),
    Polarity(Polarity),
    BiDcpo(BiDcpo),
    KoSpace(KoSpace),
    TopSpace(FinTopSpace),
    Dirspace(Dirspace),
    Dbl(DoubleBaseLattice),
    Embedded(EmbeddedBiDcpo),
    CRelation(CRelation),
    Galois(GaloisMorphism),
    Monotone(MonotoneMap),
    Weakening(WeakRel),
}

impl Doc {
    pub fn kind(&self) -> &'static str {
        match self {
            Doc::Poset(_) => "poset",
            Doc::Lattice(_) => "lattice",
            Doc::Polarity(_) => "polarity",
            Doc::Bidcpo(_) => "bidcpo",
            Doc::Kospace(_) => "kospace",
            Doc::Topspace(_) => "topspace",
            Doc::Dirspace(_) => "dirspace",
            Doc::Dbl(_) => "dbl",
            Doc::Embedded(_) => "embedded",
            Doc::Crelation(_) => "crelation",
            Doc::Galois(_) => "galois",
            Doc::Monotone(_) => "monotone",
            Doc::Weakening(_) => "weakening",
        }
    }

    /// Run the validator for the document's kind.
    pub fn build(&self) -> Result<Item> {
        Ok(match self {
            Doc::Poset(d) => Item::Poset(d.build()?),
            Doc::Lattice(d) => Item::Lattice(FinLattice::new(d.build()?)?),
            Doc::Polarity(d) => Item::Polarity(d.build()?),
            Doc::Bidcpo(d) => Item::BiDcpo(validate_bidcpo(&d.build()?)?),
            Doc::Kospace(d) => Item::KoSpace(d.build()?),
            Doc::Topspace(d) => Item::TopSpace(FinTopSpace::new(&d.points, &d.opens)?),
            Doc::Dirspace(d) => Item::Dirspace(Dirspace::new(&d.points, &d.opens)?),
            Doc::Dbl(d) => Item::Dbl(d.build()?),
            Doc::Embedded(d) => Item::Embedded(EmbeddedBiDcpo::new(d.build()?)?),
            Doc::Crelation(d) => {
                let (s, t) = (d.source.build()?, d.target.build()?);
                let rel = WeakRel::from_pairs(s.base().clone(), t.base().clone(), &d.rel)?;
                Item::CRelation(CRelation::new(s, t, rel)?)
            }
            Doc::Galois(d) => {
                let (s, t) = (d.source.build()?, d.target.build()?);
                let fwd = table(&d.fwd, s.knames(), t.knames(), "fwd")?;
                let bwd = table(&d.bwd, t.onames(), s.onames(), "bwd")?;
                Item::Galois(GaloisMorphism::new(s, t, fwd, bwd)?)
            }
            Doc::Monotone(d) => {
                let (s, t) = (d.source.build()?, d.target.build()?);
                let map = table(&d.map, s.names(), t.names(), "map")?;
                Item::Monotone(MonotoneMap::new(s, t, map)?)
            }
            Doc::Weakening(d) => Item::Weakening(WeakRel::from_pairs(d.source.build()?, d.target.build()?, &d.rel)?),
        })
    }
}

fn field_err(field: &str, message: String) -> Error {
    Error::Parse { line: None, field: field.into(), message }
}

/// A total function given as pairs, checked for totality and single values.
fn table(pairs: &[Pair], from: &[String], to: &[String], field: &str) -> Result<Vec<usize>> {
    let mut out = vec![None; from.len()];
    for (a, b) in pairs {
        let i = from.iter().position(|x| x == a).ok_or_else(|| field_err(field, format!("unknown argument `{a}`")))?;
        let j = to.iter().position(|x| x == b).ok_or_else(|| field_err(field, format!("unknown value `{b}`")))?;
        if out[i].replace(j).is_some_and(|old| old != j) {
            return Err(field_err(field, format!("`{a}` mapped twice")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| field_err(field, format!("no value for `{}`", from[i]))))
        .collect()
}

impl PosetDoc {
    pub fn build(&self) -> Result<FinPoset> {
        FinPoset::new(&self.elements, &self.leq)
    }

    /// Elements in sorted order; `leq` lists the covering pairs.
    pub fn from_poset(p: &FinPoset) -> Self {
        PosetDoc { elements: p.names().to_vec(), leq: cover_pairs(p) }
    }
}

fn cover_pairs(p: &FinPoset) -> Vec<Pair> {
    p.covers().into_iter().map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string())).collect()
}

fn members(names: &[String], s: &BitSet) -> Vec<String> {
    s.iter().map(|i| names[i].clone()).collect()
}

impl PolarityDoc {
    pub fn build(&self) -> Result<Polarity> {
        Polarity::new(&self.k, &self.o, &self.rel)
    }

    pub fn from_polarity(p: &Polarity) -> Self {
        let rel = p.pairs().into_iter().map(|(k, u)| (p.kname(k).to_string(), p.oname(u).to_string())).collect();
        PolarityDoc { k: p.knames().to_vec(), o: p.onames().to_vec(), rel }
    }
}

impl KoSpaceDoc {
    pub fn build(&self) -> Result<KoSpace> {
        KoSpace::from_names(FinPoset::new(&self.elements, &self.leq)?, &self.kfam, &self.ofam)
    }

    pub fn from_kospace(s: &KoSpace) -> Self {
        let b = s.base();
        KoSpaceDoc {
            elements: b.names().to_vec(),
            leq: cover_pairs(b),
            kfam: s.kfam().iter().map(|k| members(b.names(), k)).collect(),
            ofam: s.ofam().iter().map(|u| members(b.names(), u)).collect(),
        }
    }
}

impl SpaceDoc {
    pub fn new(points: &[String], opens: &[BitSet]) -> Self {
        SpaceDoc { points: points.to_vec(), opens: opens.iter().map(|u| members(points, u)).collect() }
    }
}

impl EmbeddedDoc {
    pub fn build(&self) -> Result<DoubleBaseLattice> {
        DoubleBaseLattice::from_names(FinLattice::new(self.lattice.build()?)?, &self.kset, &self.oset)
    }

    pub fn from_dbl(d: &DoubleBaseLattice) -> Self {
        let l = d.lattice();
        EmbeddedDoc {
            lattice: PosetDoc::from_poset(l.poset()),
            kset: members(l.names(), d.kset()),
            oset: members(l.names(), d.oset()),
        }
    }
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Poset(_) => "poset",
            Item::Lattice(_) => "lattice",
            Item::Polarity(_) => "polarity",
            Item::BiDcpo(_) => "bidcpo",
            Item::KoSpace(_) => "kospace",
            Item::TopSpace(_) => "topspace",
            Item::Dirspace(_) => "dirspace",
            Item::Dbl(_) => "dbl",
            Item::Embedded(_) => "embedded",
            Item::CRelation(_) => "crelation",
            Item::Galois(_) => "galois",
            Item::Monotone(_) => "monotone",
            Item::Weakening(_) => "weakening",
        }
    }

    pub fn to_doc(&self) -> Doc {
        match self {
            Item::Poset(p) => Doc::Poset(PosetDoc::from_poset(p)),
            Item::Lattice(l) => Doc::Lattice(PosetDoc::from_poset(l.poset())),
            Item::Polarity(p) => Doc::Polarity(PolarityDoc::from_polarity(p)),
            Item::BiDcpo(b) => Doc::Bidcpo(PolarityDoc::from_polarity(b.pol())),
            Item::KoSpace(s) => Doc::Kospace(KoSpaceDoc::from_kospace(s)),
            Item::TopSpace(t) => Doc::Topspace(SpaceDoc::new(t.points(), t.opens())),
            Item::Dirspace(d) => Doc::Dirspace(SpaceDoc::new(d.points(), d.opens())),
            Item::Dbl(d) => Doc::Dbl(EmbeddedDoc::from_dbl(d)),
            Item::Embedded(e) => Doc::Embedded(EmbeddedDoc::from_dbl(e.dbl())),
            Item::CRelation(c) => {
                let (s, t) = (c.source().base(), c.target().base());
                let rel =
                    c.rel().pairs().into_iter().map(|(x, y)| (s.name(x).to_string(), t.name(y).to_string())).collect();
                Doc::Crelation(CRelationDoc {
                    source: KoSpaceDoc::from_kospace(c.source()),
                    target: KoSpaceDoc::from_kospace(c.target()),
                    rel,
                })
            }
            Item::Galois(m) => {
                let (s, t) = (m.source(), m.target());
                Doc::Galois(GaloisDoc {
                    source: PolarityDoc::from_polarity(s),
                    target: PolarityDoc::from_polarity(t),
                    fwd: m.fwd().iter().enumerate().map(|(k, &k2)| (s.kname(k).into(), t.kname(k2).into())).collect(),
                    bwd: m.bwd().iter().enumerate().map(|(u, &u1)| (t.oname(u).into(), s.oname(u1).into())).collect(),
                })
            }
            Item::Monotone(f) => {
                let (s, t) = (f.source(), f.target());
                Doc::Monotone(MapDoc {
                    source: PosetDoc::from_poset(s),
                    target: PosetDoc::from_poset(t),
                    map: f.map().iter().enumerate().map(|(x, &y)| (s.name(x).into(), t.name(y).into())).collect(),
                })
            }
            Item::Weakening(r) => {
                let (s, t) = (r.source(), r.target());
                Doc::Weakening(RelDoc {
                    source: PosetDoc::from_poset(s),
                    target: PosetDoc::from_poset(t),
                    rel: r.pairs().into_iter().map(|(x, y)| (s.name(x).into(), t.name(y).into())).collect(),
                })
            }
        }
    }
}
