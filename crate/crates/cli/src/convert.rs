use std::collections::VecDeque;

use kodual::bidcpo::{from_dcpo_filters, validate_bidcpo, EmbeddedBiDcpo};
use kodual::equivalence::{
    bidcpo_to_embedded, bidcpo_to_kospace, crelation_roundtrip, crelation_to_galois, embedded_to_bidcpo,
    embedded_to_kospace, galois_roundtrip, galois_to_crelation, kospace_to_bidcpo, kospace_to_embedded,
};
use kodual::io::Item;
use kodual::kospace::{from_topspace, kospace_isomorphic, FinTopSpace, KoSpace};
use kodual::localcompact::Dirspace;
use kodual::order::{poset_isomorphic, FinLattice};
use kodual::polarity::{concept_lattice, dbl_isomorphic, polarity_isomorphic, to_double_base};
use kodual::{Error, Result};

/// Direct conversions, tried in this order when searching for a route.
const EDGES: &[(&str, &str)] = &[
    ("poset", "lattice"),
    ("poset", "kospace"),
    ("poset", "bidcpo"),
    ("lattice", "poset"),
    ("lattice", "bidcpo"),
    ("polarity", "bidcpo"),
    ("polarity", "lattice"),
    ("polarity", "dbl"),
    ("bidcpo", "polarity"),
    ("bidcpo", "kospace"),
    ("bidcpo", "embedded"),
    ("kospace", "bidcpo"),
    ("kospace", "embedded"),
    ("kospace", "poset"),
    ("kospace", "topspace"),
    ("kospace", "dirspace"),
    ("topspace", "kospace"),
    ("topspace", "dirspace"),
    ("dirspace", "kospace"),
    ("dirspace", "topspace"),
    ("dbl", "polarity"),
    ("dbl", "lattice"),
    ("dbl", "embedded"),
    ("embedded", "dbl"),
    ("embedded", "bidcpo"),
    ("embedded", "kospace"),
    ("crelation", "galois"),
    ("galois", "crelation"),
];

/// Shortest chain of kinds from `from` to `to`, both ends included.
pub fn route(from: &str, to: &str) -> Option<Vec<&'static str>> {
    let start = EDGES.iter().map(|e| e.0).chain(EDGES.iter().map(|e| e.1)).find(|k| *k == from)?;
    let mut prev: Vec<(&str, &str)> = vec![(start, start)];
    let mut queue = VecDeque::from([start]);
    while let Some(k) = queue.pop_front() {
        if k == to {
            let mut path = vec![k];
            let mut cur = k;
            while cur != start {
                cur = prev.iter().find(|p| p.0 == cur).unwrap().1;
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &(a, b) in EDGES {
            if a == k && !prev.iter().any(|p| p.0 == b) {
                prev.push((b, a));
                queue.push_back(b);
            }
        }
    }
    None
}

fn step(item: &Item, to: &str) -> Result<Item> {
    Ok(match (item, to) {
        (Item::Poset(p), "lattice") => Item::Lattice(FinLattice::new(p.clone())?),
        (Item::Poset(p), "kospace") => Item::KoSpace(KoSpace::from_dcpo(p)?),
        (Item::Poset(p), "bidcpo") => Item::BiDcpo(from_dcpo_filters(p)?),
        (Item::Lattice(l), "poset") => Item::Poset(l.poset().clone()),
        (Item::Lattice(l), "bidcpo") => Item::BiDcpo(from_dcpo_filters(l.poset())?),
        (Item::Polarity(p), "bidcpo") => Item::BiDcpo(validate_bidcpo(p)?),
        (Item::Polarity(p), "lattice") => Item::Lattice(concept_lattice(p)?.lattice().clone()),
        (Item::Polarity(p), "dbl") => Item::Dbl(to_double_base(p)?),
        (Item::BiDcpo(b), "polarity") => Item::Polarity(b.pol().clone()),
        (Item::BiDcpo(b), "kospace") => Item::KoSpace(bidcpo_to_kospace(b)?),
        (Item::BiDcpo(b), "embedded") => Item::Embedded(bidcpo_to_embedded(b)?),
        (Item::KoSpace(s), "bidcpo") => Item::BiDcpo(kospace_to_bidcpo(s)?),
        (Item::KoSpace(s), "embedded") => Item::Embedded(kospace_to_embedded(s)?),
        (Item::KoSpace(s), "poset") => Item::Poset(s.base().clone()),
        (Item::KoSpace(s), "topspace") => Item::TopSpace(FinTopSpace::from_sets(s.base().names().to_vec(), s.ofam().to_vec())?),
        (Item::KoSpace(s), "dirspace") => Item::Dirspace(Dirspace::from_kospace(s)),
        (Item::TopSpace(t), "kospace") => Item::KoSpace(from_topspace(t)?),
        (Item::TopSpace(t), "dirspace") => Item::Dirspace(Dirspace::from_sets(t.points().to_vec(), t.opens().to_vec())?),
        (Item::Dirspace(d), "kospace") => Item::KoSpace(d.to_kospace()?),
        (Item::Dirspace(d), "topspace") => Item::TopSpace(FinTopSpace::from_sets(d.points().to_vec(), d.opens().to_vec())?),
        (Item::Dbl(d), "polarity") => Item::Polarity(d.to_polarity()),
        (Item::Dbl(d), "lattice") => Item::Lattice(d.lattice().clone()),
        (Item::Dbl(d), "embedded") => Item::Embedded(EmbeddedBiDcpo::new(d.clone())?),
        (Item::Embedded(e), "dbl") => Item::Dbl(e.dbl().clone()),
        (Item::Embedded(e), "bidcpo") => Item::BiDcpo(embedded_to_bidcpo(e)?),
        (Item::Embedded(e), "kospace") => Item::KoSpace(embedded_to_kospace(e)?),
        (Item::CRelation(c), "galois") => Item::Galois(crelation_to_galois(c)?),
        (Item::Galois(m), "crelation") => Item::CRelation(galois_to_crelation(m)?),
        _ => unreachable!("no direct conversion {} -> {to}", item.kind()),
    })
}

pub fn convert(item: &Item, to: &str) -> Result<Item> {
    let path = route(item.kind(), to)
        .ok_or_else(|| Error::Precondition(format!("no conversion from `{}` to `{to}`", item.kind())))?;
    let mut cur = item.clone();
    for k in &path[1..] {
        log::debug!("convert {} -> {k}", cur.kind());
        cur = step(&cur, k)?;
    }
    Ok(cur)
}

/// Same structure up to renaming of elements.
fn isomorphic(a: &Item, b: &Item) -> bool {
    match (a, b) {
        (Item::Poset(p), Item::Poset(q)) => poset_isomorphic(p, q).is_some(),
        (Item::Lattice(p), Item::Lattice(q)) => poset_isomorphic(p.poset(), q.poset()).is_some(),
        (Item::Polarity(p), Item::Polarity(q)) => polarity_isomorphic(p, q).is_some(),
        (Item::BiDcpo(p), Item::BiDcpo(q)) => polarity_isomorphic(p.pol(), q.pol()).is_some(),
        (Item::KoSpace(s), Item::KoSpace(t)) => kospace_isomorphic(s, t).is_some(),
        (Item::TopSpace(s), Item::TopSpace(t)) => s == t,
        (Item::Dirspace(s), Item::Dirspace(t)) => s == t,
        (Item::Dbl(d), Item::Dbl(e)) => dbl_isomorphic(d, e).is_some(),
        (Item::Embedded(d), Item::Embedded(e)) => dbl_isomorphic(d.dbl(), e.dbl()).is_some(),
        _ => false,
    }
}

/// Convert to `to` and back, requiring the result to match the input.
pub fn roundtrip(item: &Item, to: &str) -> Result<Item> {
    let out = convert(item, to)?;
    let ok = match item {
        Item::CRelation(c) if to == "galois" => crelation_roundtrip(c)?,
        Item::Galois(m) if to == "crelation" => galois_roundtrip(m)?,
        _ => isomorphic(item, &convert(&out, item.kind())?),
    };
    if !ok {
        return Err(Error::Mismatch(format!("{} -> {to} -> {} is not isomorphic to the input", item.kind(), item.kind())));
    }
    Ok(out)
}
