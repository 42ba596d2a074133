use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kodual::bidcpo::{
    bifounded_witness, bifounded_witness_lattice, raney_witness, validate_bidcpo, BiDcpo,
};
use kodual::equivalence::{embedded_to_bidcpo, kospace_to_bidcpo, lawson_dual, lawson_dual_morphism};
use kodual::gen;
use kodual::io::{self, Item, KINDS};
use kodual::localcompact::{
    check_bicontinuous, check_locally_compact, hofmann_mislove, wilker_bidcpo, wilker_kospace, LCReport, LcWitness,
    Variant,
};
use kodual::order::{FinLattice, MonotoneMap};
use kodual::polarity::concept_lattice;
use kodual::sweep::{self, Bound, SweepConfig};
use kodual::{guard, par, Error, Result};

mod convert;

#[derive(Parser)]
#[command(name = "kodual", version, about = "Finite workbench for ko-spaces, bi-dcpos and their dualities")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Lift the size guardrails on exponential enumerations.
    #[arg(long, global = true)]
    override_guardrail: bool,
    /// Run sweeps and searches on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a document against the axioms of its kind.
    Validate { path: String },
    /// Convert a structure to another kind.
    Convert {
        path: String,
        #[arg(long)]
        to: String,
        /// Convert back as well and require an isomorphic result.
        #[arg(long)]
        roundtrip: bool,
    },
    /// Apply a duality.
    Dualize {
        #[arg(value_enum)]
        which: Duality,
        path: String,
    },
    /// Formal concepts of a polarity, with their order.
    ConceptLattice { path: String },
    /// Decide a property, printing a witness when it fails.
    Check {
        #[arg(value_enum)]
        prop: Prop,
        path: String,
        /// Wilker variant.
        #[arg(long, default_value = "1", value_parser = ["1", "2"])]
        variant: String,
    },
    /// Run a registered sweep over enumerated and generated instances.
    Sweep {
        id: String,
        /// Size bound, e.g. `6` or `3x3`.
        #[arg(value_name = "BOUND")]
        size: Option<Bound>,
        #[arg(long)]
        bound: Option<Bound>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the number of random instances.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Generate a random structure.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hasse diagram in DOT.
    ExportDot { path: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Duality {
    Degroot,
    Lawson,
}

#[derive(Clone, Copy, ValueEnum)]
enum Prop {
    Distributive,
    Bifounded,
    Raney,
    Lc,
    Bicontinuous,
    Wilker,
    Hofmis,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Poset,
    Kospace,
    Bicontinuous,
    Polarity,
    Bidcpo,
    Monotone,
    Weakening,
    Crelation,
    Galois,
}

/// Successful output, or a failed check that still has something to say.
struct Out {
    ok: bool,
    json: String,
    text: String,
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

impl Out {
    fn pass(json: Value, text: String) -> Out {
        Out { ok: true, json: pretty(&json), text }
    }
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse { line: None, field: String::new(), message: format!("{path}: {e}") })
}

fn load(path: &str) -> Result<Item> {
    io::load(&read(path)?)
}

fn item_out(item: &Item) -> Out {
    let doc = item.to_doc();
    let json = io::to_json(&doc);
    // morphism kinds have no text form
    let text = io::to_text(&doc).unwrap_or_else(|| json.clone());
    Out { ok: true, json, text }
}

fn validate(path: &str) -> Result<Out> {
    let doc = io::parse(&read(path)?)?;
    let item = doc.build()?;
    let size = summary(&item);
    Ok(Out::pass(json!({"kind": item.kind(), "valid": true, "size": size}), format!("valid {} ({size})", item.kind())))
}

fn summary(item: &Item) -> String {
    match item {
        Item::Poset(p) => format!("{} elements", p.len()),
        Item::Lattice(l) => format!("{} elements", l.len()),
        Item::Polarity(p) => format!("{}x{}", p.klen(), p.olen()),
        Item::BiDcpo(b) => format!("{}x{}", b.klen(), b.olen()),
        Item::KoSpace(s) => format!("{} points, {} k-sets, {} o-sets", s.len(), s.kfam().len(), s.ofam().len()),
        Item::TopSpace(t) => format!("{} points, {} opens", t.points().len(), t.opens().len()),
        Item::Dirspace(d) => format!("{} points, {} opens", d.len(), d.opens().len()),
        Item::Dbl(d) => format!("{} elements, {} k, {} o", d.lattice().len(), d.kset().count(), d.oset().count()),
        Item::Embedded(e) => {
            let d = e.dbl();
            format!("{} elements, {} k, {} o", d.lattice().len(), d.kset().count(), d.oset().count())
        }
        Item::CRelation(c) => format!("{} pairs", c.rel().pairs().len()),
        Item::Galois(m) => format!("{} k-elements mapped", m.fwd().len()),
        Item::Monotone(f) => format!("{} elements mapped", f.map().len()),
        Item::Weakening(r) => format!("{} pairs", r.pairs().len()),
    }
}

fn dualize(which: Duality, item: &Item) -> Result<Item> {
    Ok(match (which, item) {
        (Duality::Degroot, Item::KoSpace(s)) => Item::KoSpace(s.degroot_dual()),
        (Duality::Degroot, Item::CRelation(c)) => Item::CRelation(c.degroot()?),
        (Duality::Degroot, Item::Dirspace(d)) => Item::Dirspace(d.degroot()?),
        (Duality::Lawson, Item::BiDcpo(b)) => Item::BiDcpo(lawson_dual(b)),
        (Duality::Lawson, Item::Polarity(p)) => Item::Polarity(p.swap()),
        (Duality::Lawson, Item::Galois(m)) => Item::Galois(lawson_dual_morphism(m)),
        (d, item) => {
            let name = match d {
                Duality::Degroot => "degroot (kospace, crelation, dirspace)",
                Duality::Lawson => "lawson (bidcpo, polarity, galois)",
            };
            return Err(Error::Precondition(format!("{name} does not apply to kind `{}`", item.kind())));
        }
    })
}

fn concepts(item: &Item) -> Result<Out> {
    let p = match item {
        Item::Polarity(p) => p.clone(),
        Item::BiDcpo(b) => b.pol().clone(),
        other => return Err(Error::Precondition(format!("concept-lattice needs a polarity, got `{}`", other.kind()))),
    };
    let c = concept_lattice(&p)?;
    let l = c.lattice();
    let ks = |s: &kodual::BitSet| s.iter().map(|i| p.kname(i).to_string()).collect::<Vec<_>>();
    let os = |s: &kodual::BitSet| s.iter().map(|i| p.oname(i).to_string()).collect::<Vec<_>>();
    let mut text = format!("{} concepts, distributive {}\n", c.len(), l.is_distributive());
    let mut list = Vec::new();
    for (i, cc) in c.concepts().iter().enumerate() {
        let (e, n) = (ks(&cc.extent), os(&cc.intent));
        text.push_str(&format!("{} {{{}}} | {{{}}}\n", l.name(i), e.join(","), n.join(",")));
        list.push(json!({"name": l.name(i), "extent": e, "intent": n}));
    }
    let covers: Vec<(String, String)> =
        l.poset().covers().into_iter().map(|(a, b)| (l.name(a).to_string(), l.name(b).to_string())).collect();
    for (a, b) in &covers {
        text.push_str(&format!("cover {a} {b}\n"));
    }
    text.pop();
    let json = json!({"kind": "concept-lattice", "distributive": l.is_distributive(), "concepts": list, "covers": covers});
    Ok(Out::pass(json, text))
}

fn as_bidcpo(item: &Item) -> Result<BiDcpo> {
    match item {
        Item::BiDcpo(b) => Ok(b.clone()),
        Item::Polarity(p) => validate_bidcpo(p),
        Item::KoSpace(s) => kospace_to_bidcpo(s),
        Item::Embedded(e) => embedded_to_bidcpo(e),
        other => Err(Error::Precondition(format!("needs a bi-dcpo, polarity, ko-space or embedded bi-dcpo, got `{}`", other.kind()))),
    }
}

fn as_lattice(item: &Item) -> Result<FinLattice> {
    match item {
        Item::Lattice(l) => Ok(l.clone()),
        Item::Dbl(d) => Ok(d.lattice().clone()),
        Item::Embedded(e) => Ok(e.dbl().lattice().clone()),
        Item::Polarity(_) | Item::BiDcpo(_) | Item::KoSpace(_) => Ok(concept_lattice(as_bidcpo(item)?.pol())?.lattice().clone()),
        other => Err(Error::Precondition(format!("needs a lattice or something with a concept lattice, got `{}`", other.kind()))),
    }
}

fn verdict(name: &str, witness: Option<String>, extra: Value) -> Out {
    let ok = witness.is_none();
    let mut text = format!("{name}: {ok}");
    if let Some(w) = &witness {
        text.push_str(&format!("\nwitness: {w}"));
    }
    let mut json = json!({"check": name, "holds": ok, "witness": witness});
    if let (Value::Object(m), Value::Object(e)) = (&mut json, extra) {
        m.extend(e);
    }
    Out { ok, json: pretty(&json), text }
}

fn describe_lc(w: &LcWitness) -> String {
    match w {
        LcWitness::NoInterpolant { k, u } => format!("no interpolant between {k} and {u}"),
        LcWitness::NotDirected { u } => format!("k-elements below {u} not directed"),
        LcWitness::NotCodirected { k } => format!("o-elements above {k} not codirected"),
    }
}

fn lc_report(item: &Item, bi: bool) -> Result<LCReport> {
    fn run<S: kodual::localcompact::LocalCompactness + Sync>(s: &S, bi: bool) -> LCReport {
        if bi {
            check_bicontinuous(s)
        } else {
            check_locally_compact(s)
        }
    }
    Ok(match item {
        Item::KoSpace(s) => run(s, bi),
        Item::Embedded(e) => run(e, bi),
        _ => run(&as_bidcpo(item)?, bi),
    })
}

fn check(prop: Prop, item: &Item, variant: &str) -> Result<Out> {
    Ok(match prop {
        Prop::Distributive => match item {
            Item::Lattice(_) | Item::Dbl(_) | Item::Embedded(_) => {
                let l = as_lattice(item)?;
                let w = l.distributivity_witness().map(|(a, b, c)| format!("cut rule fails at ({}, {}, {})", l.name(a), l.name(b), l.name(c)));
                verdict("distributive", w, json!({}))
            }
            _ => {
                let b = as_bidcpo(item)?;
                let q = b.distributivity_witness().map(|q| b.quadruple_names(q));
                let w = q.as_ref().map(|(k, l, u, v)| format!("quadruple ({k}, {l}, {u}, {v})"));
                verdict("distributive", w, json!({"quadruple": q.map(|(k, l, u, v)| [k, l, u, v])}))
            }
        },
        Prop::Bifounded => match item {
            Item::Lattice(_) | Item::Dbl(_) | Item::Embedded(_) => {
                let l = as_lattice(item)?;
                let w = bifounded_witness_lattice(&l).map(|(a, b)| format!("{} not above-below dominated at {}", l.name(a), l.name(b)));
                verdict("bifounded", w, json!({}))
            }
            _ => {
                let p = match item {
                    Item::Polarity(p) => p.clone(),
                    _ => as_bidcpo(item)?.pol().clone(),
                };
                let w = bifounded_witness(&p)?.map(|(k, u)| format!("{} not below {} and no pair between", p.kname(k), p.oname(u)));
                verdict("bifounded", w, json!({}))
            }
        },
        Prop::Raney => {
            let l = as_lattice(item)?;
            let w = raney_witness(&l).map(|(a, b)| format!("{} not below {} and no completely prime pair between", l.name(a), l.name(b)));
            verdict("raney", w, json!({}))
        }
        Prop::Lc | Prop::Bicontinuous => {
            let bi = matches!(prop, Prop::Bicontinuous);
            let r = lc_report(item, bi)?;
            let name = if bi { "bicontinuous" } else { "lc" };
            let holds = if bi { r.bicontinuous } else { r.locally_compact };
            let w = (!holds).then(|| r.witnesses.iter().map(describe_lc).collect::<Vec<_>>().join("; "));
            verdict(name, w, json!({"locally_compact": r.locally_compact, "bicontinuous": r.bicontinuous, "witnesses": r.witnesses}))
        }
        Prop::Wilker => {
            let v = Variant::parse(variant).expect("clap restricts the variant");
            let n = match item {
                Item::KoSpace(s) => wilker_kospace(s, v),
                _ => wilker_bidcpo(&as_bidcpo(item)?, v),
            };
            match n {
                Ok(n) => {
                    let mut out = verdict("wilker", None, json!({"variant": variant, "instances": n}));
                    out.text.push_str(&format!(" ({n} instances, variant {variant})"));
                    out
                }
                Err(Error::TheoremViolation { witness, .. }) => verdict("wilker", Some(witness), json!({"variant": variant})),
                Err(e) => return Err(e),
            }
        }
        Prop::Hofmis => {
            let b = as_bidcpo(item)?;
            let r = hofmann_mislove(&b)?;
            let p = b.pol();
            let mut text = String::from("hofmis: true");
            for (k, &w) in r.k_to_o.iter().enumerate() {
                text.push_str(&format!("\n{} -> filter ^{}", p.kname(k), p.oname(w)));
            }
            for (u, &m) in r.o_to_k.iter().enumerate() {
                text.push_str(&format!("\n{} -> ideal v{}", p.oname(u), p.kname(m)));
            }
            let k_to_o: Vec<(&str, &str)> = r.k_to_o.iter().enumerate().map(|(k, &w)| (p.kname(k), p.oname(w))).collect();
            let o_to_k: Vec<(&str, &str)> = r.o_to_k.iter().enumerate().map(|(u, &m)| (p.oname(u), p.kname(m))).collect();
            Out::pass(json!({"check": "hofmis", "holds": true, "k_to_o": k_to_o, "o_to_k": o_to_k}), text)
        }
    })
}

fn run_sweep(id: &str, size: Option<Bound>, bound: Option<Bound>, seed: u64, samples: Option<usize>) -> Result<Out> {
    let bound = match (size, bound) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Parse { line: None, field: "bound".into(), message: format!("conflicting bounds {a} and {b}") })
        }
        (a, b) => a.or(b),
    };
    let report = sweep::run(id, &SweepConfig { bound, seed, samples })?;
    Ok(Out { ok: report.ok(), json: serde_json::to_string_pretty(&report).expect("reports serialize"), text: report.to_text() })
}

fn generate(kind: GenKind, size: usize, seed: u64) -> Result<Item> {
    let r = &mut gen::rng(seed);
    let none = |what: &str| Error::Precondition(format!("no {what} found for size {size}, seed {seed}"));
    Ok(match kind {
        GenKind::Poset => Item::Poset(gen::random_poset(r, size)?),
        GenKind::Kospace => Item::KoSpace(gen::random_kospace(r, size, 0.3)?),
        GenKind::Bicontinuous => Item::KoSpace(gen::random_bicontinuous_kospace(r, size)?),
        GenKind::Polarity => Item::Polarity(gen::random_polarity(r, size, size)?),
        GenKind::Bidcpo => Item::BiDcpo(gen::random_bidcpo(r, size, size)?),
        GenKind::Monotone => {
            let (s, t) = (gen::random_poset(r, size)?, gen::random_poset(r, size)?);
            let f = gen::random_monotone(r, &s, &t)?;
            Item::Monotone(MonotoneMap::new(s, t, f)?)
        }
        GenKind::Weakening => {
            let (s, t) = (gen::random_poset(r, size)?, gen::random_poset(r, size)?);
            Item::Weakening(gen::random_weakening(r, &s, &t, 0.3))
        }
        // redraw the endpoints until a morphism exists between them
        GenKind::Crelation => (0..64)
            .find_map(|_| {
                let s = gen::random_kospace(r, size, 0.3).ok()?;
                let t = gen::random_kospace(r, size, 0.3).ok()?;
                gen::random_crelation(r, &s, &t)
            })
            .map(Item::CRelation)
            .ok_or_else(|| none("c-relation"))?,
        GenKind::Galois => (0..64)
            .find_map(|_| {
                let s = gen::random_bidcpo(r, size, size).ok()?;
                let t = gen::random_bidcpo(r, size, size).ok()?;
                gen::random_galois(r, s.pol(), t.pol())
            })
            .map(Item::Galois)
            .ok_or_else(|| none("Galois morphism"))?,
    })
}

fn dispatch(cli: &Cli) -> Result<Out> {
    match &cli.cmd {
        Cmd::Validate { path } => validate(path),
        Cmd::Convert { path, to, roundtrip } => {
            if !KINDS.contains(&to.as_str()) {
                return Err(Error::Parse {
                    line: None,
                    field: "to".into(),
                    message: format!("unknown kind `{to}`, expected one of {}", KINDS.join(", ")),
                });
            }
            let item = load(path)?;
            let out = if *roundtrip { convert::roundtrip(&item, to)? } else { convert::convert(&item, to)? };
            Ok(item_out(&out))
        }
        Cmd::Dualize { which, path } => Ok(item_out(&dualize(*which, &load(path)?)?)),
        Cmd::ConceptLattice { path } => concepts(&load(path)?),
        Cmd::Check { prop, path, variant } => check(*prop, &load(path)?, variant),
        Cmd::Sweep { id, size, bound, seed, samples } => run_sweep(id, *size, *bound, *seed, *samples),
        Cmd::Gen { kind, size, seed } => Ok(item_out(&generate(*kind, *size, *seed)?)),
        Cmd::ExportDot { path } => {
            let dot = io::to_dot(&load(path)?)?;
            Ok(Out::pass(json!({"dot": dot}), dot.trim_end().to_string()))
        }
    }
}

fn report_error(e: &Error, format: Format) {
    match format {
        Format::Json => {
            let kind = match e {
                Error::Parse { .. } => "parse",
                Error::Invalid(_) => "invalid",
                Error::Guardrail { .. } => "guardrail",
                Error::Precondition(_) => "precondition",
                Error::NotDistributive(_) => "not-distributive",
                Error::TheoremViolation { .. } => "theorem-violation",
                Error::Mismatch(_) => "mismatch",
            };
            let v = json!({"error": kind, "message": e.to_string(), "diagnostics": e.diagnostics()});
            eprintln!("{}", pretty(&v));
        }
        Format::Text => match e {
            Error::Invalid(ds) => {
                eprintln!("invalid structure");
                for d in ds {
                    eprintln!("  {d}");
                }
            }
            _ => eprintln!("error: {e}"),
        },
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    guard::set_override(cli.override_guardrail);
    par::set_sequential(cli.sequential);
    match dispatch(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", out.json),
                Format::Text => println!("{}", out.text.trim_end()),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            report_error(&e, cli.format);
            ExitCode::from(if matches!(e, Error::Parse { .. }) { 2 } else { 1 })
        }
    }
}
