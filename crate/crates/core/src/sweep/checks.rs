use crate::bidcpo::{
    is_bifounded, is_bifounded_lattice, is_raney, key_lemma_check, validate_bidcpo, BiDcpo, EmbeddedBiDcpo,
};
use crate::catalog::{all_dirspaces, all_kospaces, all_posets, lattices_up_to, purified_polarities_up_to};
use crate::equivalence::{
    bidcpo_to_embedded, bidcpo_to_kospace, crelation_roundtrip, crelation_to_galois, embedded_to_bidcpo,
    embedded_to_kospace, galois_roundtrip, galois_to_crelation, kospace_to_bidcpo, kospace_to_embedded,
    preservation_witness, raney_lattice_roundtrip,
};
use crate::error::{Error, Result};
use crate::gen::{
    random_bicontinuous_kospace, random_bidcpo, random_crelation, random_galois, random_kospace, random_polarity, rng,
    GenRng,
};
use crate::kospace::{kospace_isomorphic, CRelation, KoSpace};
use crate::localcompact::{
    check_meets_joins_transfer, finite_frame_pipeline, hofmann_mislove, wilker_bidcpo, wilker_kospace, Dirspace,
    Variant,
};
use crate::order::{FinLattice, FinPoset};
use crate::polarity::{
    concept_lattice, dbl_isomorphic, galois_embedded_roundtrip, polarity_isomorphic, to_double_base,
    DoubleBaseLattice, GaloisMorphism, Polarity,
};

use super::{run_cases, Bound, Case, Outcome, Sweep, SweepConfig, Verdict};

pub(super) static REGISTRY: &[Sweep] = &[
    Sweep {
        id: "bifounded",
        checks: "validated bi-dcpos are bifounded; polarity and concept-lattice bifoundedness agree",
        default_bound: Bound { first: 3, second: Some(3) },
        run: bifounded,
    },
    Sweep {
        id: "key-lemma",
        checks: "completely prime pairs equal the ⤢ pairs in distributive lattices",
        default_bound: Bound { first: 6, second: None },
        run: key_lemma,
    },
    Sweep {
        id: "raney-char",
        checks: "a lattice is Raney iff it is distributive and bifounded",
        default_bound: Bound { first: 6, second: None },
        run: raney_char,
    },
    Sweep {
        id: "corr-distributivity",
        checks: "bi-dcpo distributivity agrees with concept-lattice distributivity",
        default_bound: Bound { first: 3, second: Some(3) },
        run: corr_distributivity,
    },
    Sweep {
        id: "esakia",
        checks: "c-relations commute with codirected intersections and directed unions",
        default_bound: Bound { first: 4, second: None },
        run: esakia,
    },
    Sweep {
        id: "wilker-1",
        checks: "the first Wilker condition holds when its preconditions do",
        default_bound: Bound { first: 5, second: None },
        run: wilker_1,
    },
    Sweep {
        id: "wilker-2",
        checks: "the second Wilker condition holds when its preconditions do",
        default_bound: Bound { first: 5, second: None },
        run: wilker_2,
    },
    Sweep {
        id: "hofmis",
        checks: "k-elements and o-elements biject with the filters on the other side",
        default_bound: Bound { first: 5, second: None },
        run: hofmis,
    },
    Sweep {
        id: "meets-joins",
        checks: "finite meets of O exist iff finite joins of K do, for bicontinuous bi-dcpos",
        default_bound: Bound { first: 5, second: None },
        run: meets_joins,
    },
    Sweep {
        id: "bijcorr-roundtrip",
        checks: "all six object roundtrips between the three structure kinds return isomorphic structures",
        default_bound: Bound { first: 3, second: None },
        run: bijcorr_roundtrip,
    },
    Sweep {
        id: "main-functoriality",
        checks: "morphism translations roundtrip and preserve identities and composition",
        default_bound: Bound { first: 3, second: None },
        run: main_functoriality,
    },
    Sweep {
        id: "degroot-involution",
        checks: "the de Groot double dual is the identity on ko-spaces and qualifying dirspaces",
        default_bound: Bound { first: 3, second: None },
        run: degroot_involution,
    },
    Sweep {
        id: "frame-pipeline",
        checks: "finite distributive lattices are recovered as open-set lattices",
        default_bound: Bound { first: 6, second: None },
        run: frame_pipeline,
    },
    Sweep {
        id: "fca-roundtrip",
        checks: "polarities and Galois morphisms roundtrip through double base lattices",
        default_bound: Bound { first: 5, second: Some(5) },
        run: fca_roundtrip,
    },
    Sweep {
        id: "morphism-preservation",
        checks: "♦ preserves codirected meets and □ directed joins",
        default_bound: Bound { first: 3, second: Some(3) },
        run: morphism_preservation,
    },
];

fn samples(cfg: &SweepConfig, default: usize) -> usize {
    cfg.samples.unwrap_or(default)
}

fn fail_unless(ok: bool, detail: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(detail)
}

/// Draw `count` instances, giving up after `count * 20` attempts.
fn draw<T>(r: &mut GenRng, prefix: &str, count: usize, mut f: impl FnMut(&mut GenRng, usize) -> Result<Option<T>>) -> Result<Vec<(String, T)>> {
    let mut out = Vec::with_capacity(count);
    let mut attempt = 0;
    while out.len() < count && attempt < count * 20 {
        if let Some(x) = f(r, attempt)? {
            out.push((format!("{prefix}#{:04}", out.len()), x));
        }
        attempt += 1;
    }
    if out.len() < count {
        log::warn!("{prefix}: only {} of {count} instances drawn", out.len());
    }
    Ok(out)
}

fn check<T: Case>(cases: Vec<(String, T)>, f: impl Fn(&T) -> Result<Option<String>> + Sync + Send) -> Vec<Outcome> {
    run_cases(cases, |c| Verdict::from_check(f(c)))
}

// polarity corpus: every purified polarity within the bound plus random 5x5 bi-dcpos

fn polarity_corpus(bound: Bound, cfg: &SweepConfig) -> Result<(Vec<(String, Polarity)>, Vec<(String, BiDcpo)>)> {
    let (a, b) = bound.pair();
    let small = purified_polarities_up_to(a, b)?;
    let mut r = rng(cfg.seed);
    let random = draw(&mut r, "R5x5", samples(cfg, 500), |r, _| Ok(random_bidcpo(r, 5, 5).ok()))?;
    Ok((small, random))
}

fn bifounded_agree(p: &Polarity) -> Result<Option<String>> {
    let pol = is_bifounded(p)?;
    let lat = is_bifounded_lattice(concept_lattice(p)?.lattice());
    if pol != lat {
        return Ok(Some(format!("polarity bifounded = {pol}, concept lattice bifounded = {lat}")));
    }
    Ok(fail_unless(pol || validate_bidcpo(p).is_err(), || "validated bi-dcpo is not bifounded".into()))
}

fn bifounded(bound: Bound, cfg: &SweepConfig) -> Result<Vec<Outcome>> {
    let (small, random) = polarity_corpus(bound, cfg)?;
    let mut out = check(small, bifounded_agree);
    out.extend(check(random, |b: &BiDcpo| bifounded_agree(b.pol())));
    Ok(out)
}

fn distributivity_agree(b: &BiDcpo) -> Result<Option<String>> {
    let bd = b.is_distributive();
    let ld = concept_lattice(b.pol())?.lattice().is_distributive();
    Ok(fail_unless(bd == ld, || {
        let q = b.distributivity_witness().map(|q| format!(", quadruple {:?}", b.quadruple_names(q))).unwrap_or_default();
        format!("bi-dcpo distributive = {bd}, concept lattice distributive = {ld}{q}")
    }))
}

fn corr_distributivity(bound: Bound, cfg: &SweepConfig) -> Result<Vec<Outcome>> {
    let (small, random) = polarity_corpus(bound, cfg)?;
    let mut out = check(small, |p: &Polarity| {
        let b = validate_bidcpo(p).map_err(|e| Error::Precondition(format!("not a bi-dcpo: {e}")))?;
        distributivity_agree(&b)
    });
    out.extend(check(random, distributivity_agree));
    Ok(out)
}

// lattice catalog

fn key_lemma(bound: Bound, _: &SweepConfig) -> Result<Vec<Outcome>> {
    let dist: Vec<(String, FinLattice)> = lattices_up_to(bound.first)?.into_iter().filter(|(_, l)| l.is_distributive()).collect();
    Ok(check(dist, |l| Ok(fail_unless(key_lemma_check(l)?, || "CP pairs differ from ⤢ pairs".into()))))
}

fn raney_char(bound: Bound, _: &SweepConfig) -> Result<Vec<Outcome>> {
    Ok(check(lattices_up_to(bound.first)?, |l| {
        let raney = is_raney(l);
        let rhs = l.is_distributive() && is_bifounded_lattice(l);
        if raney != rhs {
            return Ok(Some(format!("Raney = {raney}, distributive and bifounded = {rhs}")));
        }
        if raney {
            raney_lattice_roundtrip(l)?;
        }
        Ok(None)
    }))
}

fn frame_pipeline(bound: Bound, _: &SweepConfig) -> Result<Vec<Outcome>> {
    let dist: Vec<(String, FinLattice)> = lattices_up_to(bound.first)?.into_iter().filter(|(_, l)| l.is_distributive()).collect();
    Ok(check(dist, |l| {
        let r = finite_frame_pipeline(l)?;
        Ok(fail_unless(r.opens.len() == l.len(), || format!("{} opens for {} elements", r.opens.len(), l.len())))
    }))
}

// random morphisms

fn crelations(r: &mut GenRng, prefix: &str, count: usize, max: usize) -> Result<Vec<(String, CRelation)>> {
    draw(r, prefix, count, |r, i| {
        let s = random_kospace(r, 2 + i % (max - 1), 0.3)?;
        let t = random_kospace(r, 2 + (i / 2) % (max - 1), 0.3)?;
        Ok(random_crelation(r, &s, &t))
    })
}

fn esakia(bound: Bound, cfg: &SweepConfig) -> Result<Vec<Outcome>> {
    let cases = crelations(&mut rng(cfg.seed), "C", samples(cfg, 200), bound.first.max(2))?;
    Ok(check(cases, |c| c.esakia_witness()))
}

fn galois_between_bidcpos(r: &mut GenRng, prefix: &str, count: usize, bound: Bound) -> Result<Vec<(String, GaloisMorphism)>> {
    let (a, b) = bound.pair();
    draw(r, prefix, count, |r, i| {
        let s = random_bidcpo(r, 1 + i % a, 1 + (i / a) % b)?;
        let t = random_bidcpo(r, 1 + (i / 2) % a, 1 + (i / 3) % b)?;
        Ok(random_galois(r, s.pol(), t.pol()))
    })
}

fn morphism_preservation(bound: Bound, cfg: &SweepConfig) -> Result<Vec<Outcome>> {
    let cases = galois_between_bidcpos(&mut rng(cfg.seed), "G", samples(cfg, 200), bound)?;
    Ok(check(cases, preservation_witness))
}

fn main_functoriality(bound: Bound, cfg: &SweepConfig) -> Result<Vec<Outcome>> {
    let max = bound.first.max(2);
    let n = samples(cfg, 100);
    let mut r = rng(cfg.seed);
    let crels = crelations(&mut r, "C", n, max)?;
    // Galois morphisms between bi-dcpos of ko-spaces, so both ends are distributive
    let gals = draw(&mut r, "G", n, |r, i| {
        let s = kospace_to_bidcpo(&random_kospace(r, 1 + i % max, 0.3)?)?;
        let t = kospace_to_bidcpo(&random_kospace(r, 1 + (i / 2) % max, 0.3)?)?;
        Ok(random_galois(r, s.pol(), t.pol()))
    })?;
    let pairs = draw(&mut r, "P", n / 2, |r, i| {
        let s1 = random_kospace(r, 2 + i % (max - 1), 0.3)?;
        let s2 = random_kospace(r, 2 + (i / 2) % (max - 1), 0.3)?;
        let s3 = random_kospace(r, 2 + (i / 3) % (max - 1), 0.3)?;
        Ok(random_crelation(r, &s1, &s2).zip(random_crelation(r, &s2, &s3)))
    })?;
    let mut out = check(crels, |c| Ok(fail_unless(crelation_roundtrip(c)?, || "c-relation roundtrip differs".into())));
    out.extend(check(gals, |m| Ok(fail_unless(galois_roundtrip(m)?, || "Galois roundtrip differs".into()))));
    out.extend(check(pairs, |(c1, c2): &(CRelation, CRelation)| {
        let (g1, g2) = (crelation_to_galois(c1)?, crelation_to_galois(c2)?);
        let c12 = c1.compose(c2)?;
        if crelation_to_galois(&c12)? != g1.compose(&g2)? {
            return Ok(Some("composite of c-relations not sent to the composite".into()));
        }
        let back = galois_to_crelation(&g1)?.compose(&galois_to_crelation(&g2)?)?;
        if galois_to_crelation(&g1.compose(&g2)?)? != back {
            return Ok(Some("composite of Galois morphisms not sent to the composite".into()));
        }
        let s = c1.source();
        let id = crelation_to_galois(&CRelation::identity(s))?;
        Ok(fail_unless(id == GaloisMorphism::identity(kospace_to_bidcpo(s)?.pol()), || "identity not preserved".into()))
    }));
    Ok(out)
}

fn fca_roundtrip(bound: Bound, cfg: &SweepConfig) -> Result<Vec<Outcome>> {
    let (a, b) = bound.pair();
    let mut r = rng(cfg.seed);
    let pols = draw(&mut r, "F", samples(cfg, 200), |r, i| Ok(Some(random_polarity(r, 1 + i % a, 1 + (i / a) % b)?)))?;
    let n_morph = cfg.samples.map_or(100, |s| s.div_ceil(2));
    let (ma, mb) = (a.min(3), b.min(3));
    let morphs = draw(&mut r, "M", n_morph, |r, i| {
        let s = random_polarity(r, 1 + i % ma, 1 + (i / ma) % mb)?;
        let t = random_polarity(r, 1 + (i / 2) % ma, 1 + (i / 3) % mb)?;
        Ok(random_galois(r, &s, &t))
    })?;
    let mut out = check(pols, |p| {
        let back = to_double_base(p)?.to_polarity();
        Ok(fail_unless(polarity_isomorphic(&back, p).is_some(), || "to_polarity(to_double_base(P)) is not isomorphic to P".into()))
    });
    out.extend(check(morphs, |m| {
        Ok(fail_unless(galois_embedded_roundtrip(m)?, || "Galois morphism changed through the embedded form".into()))
    }));
    Ok(out)
}

// object correspondences

fn six_roundtrips(s: &KoSpace) -> Result<Option<String>> {
    let b = kospace_to_bidcpo(s)?;
    let e = kospace_to_embedded(s)?;
    let same_b = |x: &BiDcpo| polarity_isomorphic(x.pol(), b.pol()).is_some();
    let same_e = |x: &EmbeddedBiDcpo| dbl_isomorphic(x.dbl(), e.dbl()).is_some();
    let checks = [
        ("kospace -> bidcpo -> kospace", kospace_isomorphic(&bidcpo_to_kospace(&b)?, s).is_some()),
        ("kospace -> embedded -> kospace", kospace_isomorphic(&embedded_to_kospace(&e)?, s).is_some()),
        ("bidcpo -> kospace -> bidcpo", same_b(&kospace_to_bidcpo(&bidcpo_to_kospace(&b)?)?)),
        ("bidcpo -> embedded -> bidcpo", same_b(&embedded_to_bidcpo(&bidcpo_to_embedded(&b)?)?)),
        ("embedded -> kospace -> embedded", same_e(&kospace_to_embedded(&embedded_to_kospace(&e)?)?)),
        ("embedded -> bidcpo -> embedded", same_e(&bidcpo_to_embedded(&embedded_to_bidcpo(&e)?)?)),
    ];
    Ok(checks.iter().find(|(_, ok)| !ok).map(|(what, _)| format!("{what} is not isomorphic")))
}

fn bijcorr_roundtrip(bound: Bound, cfg: &SweepConfig) -> Result<Vec<Outcome>> {
    let mut cases = Vec::new();
    for n in 0..=bound.first {
        for (pi, p) in all_posets(n)?.iter().enumerate() {
            for (si, s) in all_kospaces(p)?.into_iter().enumerate() {
                cases.push((format!("E{n}#{pi:02}#{si:04}"), s));
            }
        }
    }
    cases.extend(draw(&mut rng(cfg.seed), "R", samples(cfg, 200), |r, i| Ok(Some(random_kospace(r, 4 + i % 2, 0.3)?)))?);
    Ok(check(cases, six_roundtrips))
}

// bicontinuous corpus

fn bicontinuous_corpus(bound: Bound, cfg: &SweepConfig) -> Result<Vec<(String, KoSpace)>> {
    let max = bound.first.max(3);
    draw(&mut rng(cfg.seed), "B", samples(cfg, 200), |r, i| Ok(Some(random_bicontinuous_kospace(r, 3 + i % (max - 2))?)))
}

fn wilker(bound: Bound, cfg: &SweepConfig, v: Variant) -> Result<Vec<Outcome>> {
    Ok(run_cases(bicontinuous_corpus(bound, cfg)?, |s| {
        let ks = wilker_kospace(s, v);
        let bs = kospace_to_bidcpo(s).and_then(|b| wilker_bidcpo(&b, v));
        match (ks, bs) {
            (Err(Error::Precondition(a)), Err(Error::Precondition(_))) => Verdict::Skip(a),
            (Err(e), _) | (_, Err(e)) if !matches!(e, Error::Precondition(_)) => Verdict::Fail(e.to_string()),
            _ => Verdict::Pass,
        }
    }))
}

fn wilker_1(bound: Bound, cfg: &SweepConfig) -> Result<Vec<Outcome>> {
    wilker(bound, cfg, Variant::One)
}

fn wilker_2(bound: Bound, cfg: &SweepConfig) -> Result<Vec<Outcome>> {
    wilker(bound, cfg, Variant::Two)
}

fn hofmis(bound: Bound, cfg: &SweepConfig) -> Result<Vec<Outcome>> {
    Ok(check(bicontinuous_corpus(bound, cfg)?, |s| {
        hofmann_mislove(&kospace_to_bidcpo(s)?)?;
        Ok(None)
    }))
}

/// The four-element diamond with K = O = {bot, a, b}.
pub(crate) fn diamond() -> Result<EmbeddedBiDcpo> {
    let p = FinPoset::new(&["bot", "a", "b", "top"], &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")])?;
    EmbeddedBiDcpo::new(DoubleBaseLattice::from_names(FinLattice::new(p)?, &["bot", "a", "b"], &["bot", "a", "b"])?)
}

fn meets_joins(bound: Bound, cfg: &SweepConfig) -> Result<Vec<Outcome>> {
    let mut cases: Vec<(String, BiDcpo)> = vec![("DIA".into(), embedded_to_bidcpo(&diamond()?)?)];
    for (name, s) in bicontinuous_corpus(bound, cfg)? {
        cases.push((name, kospace_to_bidcpo(&s)?));
    }
    Ok(check(cases, |b| {
        check_meets_joins_transfer(b)?;
        Ok(None)
    }))
}

fn degroot_involution(bound: Bound, cfg: &SweepConfig) -> Result<Vec<Outcome>> {
    let spaces = draw(&mut rng(cfg.seed), "K", samples(cfg, 200), |r, i| Ok(Some(random_kospace(r, 1 + i % 5, 0.3)?)))?;
    let mut out = check(spaces, |s| {
        let d = s.degroot_dual();
        KoSpace::new(d.base().clone(), d.kfam().to_vec(), d.ofam().to_vec())?;
        Ok(fail_unless(d.degroot_dual() == *s, || "double dual differs".into()))
    });
    let mut dirs = Vec::new();
    for n in 0..=bound.first.min(3) {
        for (i, d) in all_dirspaces(n)?.into_iter().enumerate() {
            dirs.push((format!("D{n}#{i:03}"), d));
        }
    }
    out.extend(check(dirs, |d: &Dirspace| {
        if !(d.is_locally_compact()? && d.is_well_filtered()? && d.opens_are_directed_unions()?) {
            return Err(Error::Precondition("not locally compact, well-filtered, with opens directed unions".into()));
        }
        Ok(fail_unless(d.has_degroot_duality()?, || "double dual differs".into()))
    }));
    Ok(out)
}
