use std::fmt::Write;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::order::FinPoset;
use crate::polarity::{concept_lattice, DoubleBaseLattice, Polarity};

use super::doc::Item;

fn esc(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram, bottom up, one label per element, then trailing comments.
/// Labels arrive escaped.
fn hasse(name: &str, p: &FinPoset, labels: &[String], notes: &[String]) -> String {
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{l}\"];");
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    for n in notes {
        let _ = writeln!(out, "  // {n}");
    }
    out.push_str("}\n");
    out
}

fn escaped(names: &[String]) -> Vec<String> {
    names.iter().map(|n| esc(n)).collect()
}

fn list(names: &[String], s: &BitSet) -> String {
    let v: Vec<String> = s.iter().map(|i| esc(&names[i])).collect();
    format!("{{{}}}", v.join(","))
}

/// Indices of the family members containing x.
fn member_of(fam: &[BitSet], x: usize) -> String {
    let v: Vec<String> = fam.iter().enumerate().filter(|(_, s)| s.contains(x)).map(|(i, _)| i.to_string()).collect();
    v.join(",")
}

fn family_notes(p: &FinPoset, tag: &str, fam: &[BitSet]) -> Vec<String> {
    fam.iter().enumerate().map(|(i, s)| format!("{tag}{i} = {}", p.set_name(s))).collect()
}

fn concepts(p: &Polarity) -> Result<String> {
    let c = concept_lattice(p)?;
    let labels: Vec<String> = c
        .concepts()
        .iter()
        .map(|x| format!("{} | {}", list(p.knames(), &x.extent), list(p.onames(), &x.intent)))
        .collect();
    Ok(hasse("concepts", c.lattice().poset(), &labels, &[]))
}

fn double_base(d: &DoubleBaseLattice) -> String {
    let l = d.lattice();
    let labels: Vec<String> = (0..l.len())
        .map(|x| {
            let tag = match (d.kset().contains(x), d.oset().contains(x)) {
                (true, true) => " [k,o]",
                (true, false) => " [k]",
                (false, true) => " [o]",
                (false, false) => "",
            };
            format!("{}{tag}", esc(l.name(x)))
        })
        .collect();
    hasse("embedded", l.poset(), &labels, &[])
}

fn space(name: &str, p: &FinPoset, opens: &[BitSet]) -> String {
    let labels: Vec<String> = (0..p.len()).map(|x| format!("{}\\nO: {}", esc(p.name(x)), member_of(opens, x))).collect();
    hasse(name, p, &labels, &family_notes(p, "O", opens))
}

/// Graphviz text; morphisms have no diagram.
pub fn to_dot(item: &Item) -> Result<String> {
    Ok(match item {
        Item::Poset(p) => hasse("poset", p, &escaped(p.names()), &[]),
        Item::Lattice(l) => hasse("lattice", l.poset(), &escaped(l.names()), &[]),
        Item::Polarity(p) => concepts(p)?,
        Item::BiDcpo(b) => concepts(b.pol())?,
        Item::KoSpace(s) => {
            let b = s.base();
            let labels: Vec<String> = (0..b.len())
                .map(|x| format!("{}\\nK: {}\\nO: {}", esc(b.name(x)), member_of(s.kfam(), x), member_of(s.ofam(), x)))
                .collect();
            let mut notes = family_notes(b, "K", s.kfam());
            notes.extend(family_notes(b, "O", s.ofam()));
            hasse("kospace", b, &labels, &notes)
        }
        Item::TopSpace(t) => space("topspace", &t.specialization(), t.opens()),
        Item::Dirspace(d) => space("dirspace", &d.specialization()?, d.opens()),
        Item::Dbl(d) => double_base(d),
        Item::Embedded(e) => double_base(e.dbl()),
        Item::CRelation(_) | Item::Galois(_) | Item::Monotone(_) | Item::Weakening(_) => {
            return Err(Error::Precondition(format!("no diagram for kind `{}`", item.kind())))
        }
    })
}
