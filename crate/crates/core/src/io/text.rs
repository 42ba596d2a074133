//! Line-oriented form for hand-written fixtures.
//!
//! ```text
//! # comments run to the end of the line
//! kind kospace
//! elements a b
//! leq a b        # a chain: `leq x y z` reads x <= y <= z
//! kfam a b       # one family member per line
//! kfam b
//! ofam           # a bare key is the empty set
//! ofam b
//! ```
//!
//! Names are whitespace-free, so every token is one name. Families with no
//! lines are empty. Morphism kinds
//! nest whole structures and only have the JSON form.

use std::fmt::Write;

use crate::error::{Error, Result};

use super::doc::{Doc, EmbeddedDoc, KoSpaceDoc, Pair, PolarityDoc, PosetDoc, SpaceDoc};

fn err(line: usize, field: &str, message: impl Into<String>) -> Error {
    Error::Parse { line: Some(line), field: field.into(), message: message.into() }
}

#[derive(Default)]
struct Fields {
    names: Vec<String>,
    pairs: Vec<Pair>,
    k: Vec<String>,
    o: Vec<String>,
    kfam: Vec<Vec<String>>,
    ofam: Vec<Vec<String>>,
    seen: Vec<&'static str>,
}

pub fn parse_text(src: &str) -> Result<Doc> {
    let mut kind: Option<(usize, String)> = None;
    let mut f = Fields::default();
    let mut lines = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut toks = line.split_whitespace();
        let Some(key) = toks.next() else { continue };
        let rest: Vec<String> = toks.map(str::to_string).collect();
        if key == "kind" {
            if kind.is_some() {
                return Err(err(i + 1, "kind", "kind given twice"));
            }
            match rest.as_slice() {
                [k] => kind = Some((i + 1, k.clone())),
                _ => return Err(err(i + 1, "kind", "expected exactly one kind")),
            }
        } else {
            lines.push((i + 1, key.to_string(), rest));
        }
    }
    let Some((kline, kind)) = kind else {
        return Err(Error::Parse { line: None, field: "kind".into(), message: "missing `kind` line".into() });
    };
    let allowed: &[&'static str] = match kind.as_str() {
        "poset" | "lattice" => &["elements", "leq"],
        "polarity" | "bidcpo" => &["k", "o", "rel"],
        "kospace" => &["elements", "leq", "kfam", "ofam"],
        "topspace" | "dirspace" => &["points", "opens"],
        "dbl" | "embedded" => &["elements", "leq", "kset", "oset"],
        "crelation" | "galois" | "monotone" | "weakening" => return Err(err(kline, "kind", format!("kind `{kind}` has no text form, use JSON"))),
        other => return Err(err(kline, "kind", format!("unknown kind `{other}`"))),
    };
    for (line, key, rest) in lines {
        let Some(&key) = allowed.iter().find(|&&a| a == key) else {
            return Err(err(line, &key, format!("unexpected key for kind `{kind}`")));
        };
        if !f.seen.contains(&key) {
            f.seen.push(key);
        }
        match key {
            "elements" | "points" => f.names.extend(rest),
            "k" | "kset" => f.k.extend(rest),
            "o" | "oset" => f.o.extend(rest),
            "kfam" => f.kfam.push(rest),
            "ofam" | "opens" => f.ofam.push(rest),
            "leq" => {
                if rest.len() < 2 {
                    return Err(err(line, key, "expected at least two names"));
                }
                f.pairs.extend(rest.windows(2).map(|w| (w[0].clone(), w[1].clone())));
            }
            "rel" => match <[String; 2]>::try_from(rest) {
                Ok([a, b]) => f.pairs.push((a, b)),
                Err(_) => return Err(err(line, key, "expected exactly two names")),
            },
            _ => unreachable!(),
        }
    }
    let need = |keys: &[&str]| -> Result<()> {
        match keys.iter().find(|k| !f.seen.contains(k)) {
            Some(k) => Err(err(kline, k, "missing field")),
            None => Ok(()),
        }
    };
    Ok(match kind.as_str() {
        "poset" | "lattice" => {
            need(&["elements"])?;
            let d = PosetDoc { elements: f.names, leq: f.pairs };
            if kind == "poset" { Doc::Poset(d) } else { Doc::Lattice(d) }
        }
        "polarity" | "bidcpo" => {
            need(&["k", "o"])?;
            let d = PolarityDoc { k: f.k, o: f.o, rel: f.pairs };
            if kind == "polarity" { Doc::Polarity(d) } else { Doc::Bidcpo(d) }
        }
        "kospace" => {
            need(&["elements"])?;
            Doc::Kospace(KoSpaceDoc { elements: f.names, leq: f.pairs, kfam: f.kfam, ofam: f.ofam })
        }
        "topspace" | "dirspace" => {
            need(&["points"])?;
            let d = SpaceDoc { points: f.names, opens: f.ofam };
            if kind == "topspace" { Doc::Topspace(d) } else { Doc::Dirspace(d) }
        }
        _ => {
            need(&["elements", "kset", "oset"])?;
            let d = EmbeddedDoc { lattice: PosetDoc { elements: f.names, leq: f.pairs }, kset: f.k, oset: f.o };
            if kind == "dbl" { Doc::Dbl(d) } else { Doc::Embedded(d) }
        }
    })
}

fn line(out: &mut String, key: &str, names: &[String]) {
    out.push_str(key);
    for n in names {
        out.push(' ');
        out.push_str(n);
    }
    out.push('\n');
}

fn pairs(out: &mut String, key: &str, ps: &[Pair]) {
    for (a, b) in ps {
        let _ = writeln!(out, "{key} {a} {b}");
    }
}

/// None for the morphism kinds.
pub fn to_text(doc: &Doc) -> Option<String> {
    let mut out = format!("kind {}\n", doc.kind());
    match doc {
        Doc::Poset(d) | Doc::Lattice(d) => {
            line(&mut out, "elements", &d.elements);
            pairs(&mut out, "leq", &d.leq);
        }
        Doc::Polarity(d) | Doc::Bidcpo(d) => {
            line(&mut out, "k", &d.k);
            line(&mut out, "o", &d.o);
            pairs(&mut out, "rel", &d.rel);
        }
        Doc::Kospace(d) => {
            line(&mut out, "elements", &d.elements);
            pairs(&mut out, "leq", &d.leq);
            d.kfam.iter().for_each(|s| line(&mut out, "kfam", s));
            d.ofam.iter().for_each(|s| line(&mut out, "ofam", s));
        }
        Doc::Topspace(d) | Doc::Dirspace(d) => {
            line(&mut out, "points", &d.points);
            d.opens.iter().for_each(|s| line(&mut out, "opens", s));
        }
        Doc::Dbl(d) | Doc::Embedded(d) => {
            line(&mut out, "elements", &d.lattice.elements);
            pairs(&mut out, "leq", &d.lattice.leq);
            line(&mut out, "kset", &d.kset);
            line(&mut out, "oset", &d.oset);
        }
        Doc::Crelation(_) | Doc::Galois(_) | Doc::Monotone(_) | Doc::Weakening(_) => return None,
    }
    Some(out)
}
