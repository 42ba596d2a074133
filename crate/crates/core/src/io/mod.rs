//! Documents: one JSON schema keyed by `kind`, a terse text form, and DOT export.

mod doc;
mod dot;
mod text;

pub use doc::{CRelationDoc, Doc, EmbeddedDoc, GaloisDoc, Item, KoSpaceDoc, MapDoc, Pair, PolarityDoc, PosetDoc, RelDoc, SpaceDoc, KINDS};
pub use dot::to_dot;
pub use text::{parse_text, to_text};

use crate::error::{Error, Result};

/// JSON if the first non-blank character is `{`, text otherwise.
pub fn parse(src: &str) -> Result<Doc> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

pub fn parse_json(src: &str) -> Result<Doc> {
    serde_json::from_str(src).map_err(|e| {
        let msg = e.to_string();
        // serde names the offending field or variant in backticks; syntax
        // errors have no field
        let field = if msg.contains("variant") || msg.contains("`kind`") {
            "kind".to_string()
        } else {
            msg.split_once("field `").and_then(|(_, r)| r.split('`').next()).unwrap_or("").to_string()
        };
        let message = msg.split(" at line ").next().unwrap_or(&msg).to_string();
        Error::Parse { line: Some(e.line()), field, message }
    })
}

pub fn to_json(doc: &Doc) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

/// Parse and validate in one step.
pub fn load(src: &str) -> Result<Item> {
    parse(src)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Code;

    const SING: &str = include_str!("../../../../fixtures/sing.txt");
    const SING_JSON: &str = include_str!("../../../../fixtures/sing.json");
    const MISSING: &str = include_str!("../../../../fixtures/missing-principal.txt");
    const M3: &str = include_str!("../../../../fixtures/m3.txt");
    const DIA: &str = include_str!("../../../../fixtures/dia.txt");
    const CHAIN2: &str = include_str!("../../../../fixtures/chain2.txt");
    const EMPTY: &str = include_str!("../../../../fixtures/empty.txt");
    const MALFORMED: &str = include_str!("../../../../fixtures/malformed.json");

    fn parse_err(src: &str) -> (Option<usize>, String) {
        match parse(src) {
            Err(Error::Parse { line, field, .. }) => (line, field),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn text_and_json_agree() {
        assert_eq!(parse(SING).unwrap(), parse(SING_JSON).unwrap());
        assert!(matches!(load(SING).unwrap(), Item::KoSpace(_)));
    }

    #[test]
    fn missing_principal_upset_is_invalid() {
        match load(MISSING) {
            Err(Error::Invalid(ds)) => assert!(ds.iter().any(|d| d.code == Code::S3K), "{ds:?}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_json_reports_line() {
        let (line, _) = parse_err(MALFORMED);
        assert_eq!(line, Some(5));
    }

    #[test]
    fn json_errors_name_the_field() {
        assert_eq!(parse_err(r#"{"kind": "poset", "elements": [], "bogus": 1}"#).1, "bogus");
        assert_eq!(parse_err(r#"{"kind": "polarity", "k": []}"#).1, "o");
        assert_eq!(parse_err(r#"{"kind": "frobnicator"}"#).1, "kind");
        assert_eq!(parse_err(r#"{"elements": []}"#).1, "kind");
    }

    #[test]
    fn text_errors_name_line_and_field() {
        assert_eq!(parse_err("kind poset\nelements a b\nleq a\n"), (Some(3), "leq".into()));
        assert_eq!(parse_err("kind poset\n\nkfam a\n"), (Some(3), "kfam".into()));
        assert_eq!(parse_err("# nothing\nelements a\n"), (None, "kind".into()));
        assert_eq!(parse_err("kind polarity\nk a\n"), (Some(1), "o".into()));
        assert_eq!(parse_err("kind galois\n"), (Some(1), "kind".into()));
    }

    #[test]
    fn every_fixture_roundtrips_both_forms() {
        for src in [SING, M3, DIA, CHAIN2, EMPTY] {
            let item = load(src).unwrap();
            let doc = item.to_doc();
            assert_eq!(parse_json(&to_json(&doc)).unwrap(), doc);
            assert_eq!(parse_text(&to_text(&doc).unwrap()).unwrap(), doc);
            // written documents are canonical
            assert_eq!(doc.build().unwrap().to_doc(), doc);
        }
    }

    #[test]
    fn json_carries_kind() {
        let v: serde_json::Value = serde_json::from_str(&to_json(&parse(DIA).unwrap())).unwrap();
        assert_eq!(v["kind"], "embedded");
    }

    #[test]
    fn morphisms_roundtrip_through_json() {
        use crate::equivalence::crelation_to_galois;
        use crate::kospace::CRelation;
        let Item::KoSpace(s) = load(SING).unwrap() else { panic!() };
        let c = Item::CRelation(CRelation::identity(&s));
        let doc = c.to_doc();
        assert!(to_text(&doc).is_none());
        assert_eq!(parse(&to_json(&doc)).unwrap().build().unwrap().to_doc(), doc);
        let Item::CRelation(c) = c else { unreachable!() };
        let g = Item::Galois(crelation_to_galois(&c).unwrap());
        let gd = g.to_doc();
        assert_eq!(parse(&to_json(&gd)).unwrap().build().unwrap().to_doc(), gd);
    }

    #[test]
    fn galois_table_must_be_total() {
        let src = r#"{"kind": "galois",
            "source": {"k": ["x"], "o": ["y"], "rel": []},
            "target": {"k": ["x"], "o": ["y"], "rel": []},
            "fwd": [], "bwd": [["y", "y"]]}"#;
        match parse(src).unwrap().build() {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "fwd"),
            other => panic!("{other:?}"),
        }
    }

    fn edges(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("->")).count()
    }

    fn nodes(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("[label=")).count()
    }

    #[test]
    fn dot_shapes() {
        let d = to_dot(&load(CHAIN2).unwrap()).unwrap();
        assert_eq!((nodes(&d), edges(&d)), (2, 1));
        let d = to_dot(&load(M3).unwrap()).unwrap();
        assert_eq!((nodes(&d), edges(&d)), (5, 6));
        assert!(d.contains("{a} | {a}"), "{d}");
        assert!(d.contains("{a,b,c} | {}"), "{d}");
        let d = to_dot(&load(DIA).unwrap()).unwrap();
        assert_eq!((nodes(&d), edges(&d)), (4, 4));
        assert!(d.contains("top\"") && d.contains("bot [k,o]"), "{d}");
        let d = to_dot(&load(SING).unwrap()).unwrap();
        assert!(d.contains(r#"label="x\nK: 0\nO: ""#), "{d}");
        let p = crate::order::FinPoset::antichain(&["a\\b"]).unwrap();
        assert!(to_dot(&Item::Poset(p)).unwrap().contains(r#"label="a\\b""#));
    }

    #[test]
    fn dot_is_deterministic() {
        for src in [SING, M3, DIA, CHAIN2, EMPTY] {
            assert_eq!(to_dot(&load(src).unwrap()).unwrap(), to_dot(&load(src).unwrap()).unwrap());
        }
    }
}
