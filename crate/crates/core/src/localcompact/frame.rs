use serde::Serialize;

use crate::bidcpo::from_dcpo_filters;
use crate::error::{Error, Result};
use crate::equivalence::{bidcpo_to_embedded, bidcpo_to_kospace_full};
use crate::kospace::FinTopSpace;
use crate::order::{set_name, FinLattice};

use super::dirspace::Dirspace;
use super::lc::check_bicontinuous;
use super::transfer::{
    has_finite_joins, has_finite_meets, k_closed_under_finite_joins, k_closed_under_unions, o_closed_under_finite_joins,
    o_closed_under_finite_meets, o_closed_under_intersections, o_closed_under_unions,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramePoint {
    /// the principal filter ^x the point comes from
    pub filter: String,
    /// the element u with D∖↓u = ^x
    pub prime: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramePipelineReport {
    pub points: Vec<FramePoint>,
    pub opens: Vec<String>,
    /// lattice element -> index into `opens`
    pub iso: Vec<usize>,
}

fn ensure(ok: bool, what: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::theorem(what, "check failed on the pipeline output".into()))
    }
}

/// D -> (filters(D), D, ∋) -> embedded bi-dcpo -> ko-space -> topological
/// space, checking each stage and that the opens recover D.
pub fn finite_frame_pipeline(d: &FinLattice) -> Result<FramePipelineReport> {
    if let Some((a, b, c)) = d.distributivity_witness() {
        return Err(Error::NotDistributive(format!("cut rule fails at ({}, {}, {})", d.name(a), d.name(b), d.name(c))));
    }
    let b = from_dcpo_filters(d.poset())?;
    let p = b.pol();
    ensure(check_bicontinuous(&b).bicontinuous, "filter bi-dcpo of a finite frame is bicontinuous")?;
    ensure(*b.o_order() == *d.poset(), "the o-side is the frame")?;
    ensure(has_finite_meets(b.o_order()) && has_finite_joins(b.o_order()), "the o-side is a bounded lattice")?;

    let e = bidcpo_to_embedded(&b)?;
    let er = check_bicontinuous(&e);
    ensure(er.locally_compact && e.is_distributive(), "embedded stage is locally compact and distributive")?;
    let dbl = e.dbl();
    ensure(
        o_closed_under_finite_meets(dbl) && o_closed_under_finite_joins(dbl) && k_closed_under_finite_joins(dbl),
        "embedded stage has the closure properties")?;

    let full = bidcpo_to_kospace_full(&b)?;
    let s = &full.space;
    ensure(check_bicontinuous(s).locally_compact, "ko-space stage is locally compact")?;
    ensure(
        o_closed_under_intersections(s) && o_closed_under_unions(s) && k_closed_under_unions(s),
        "ko-space stage has the closure properties")?;

    let names = s.base().names().to_vec();
    FinTopSpace::from_sets(names.clone(), s.ofam().to_vec())
        .map_err(|err| Error::theorem("opens form a T0 topology", err.to_string()))?;
    let ds = Dirspace::from_kospace(s);
    ensure(
        ds.is_t0() && ds.is_locally_compact()? && ds.is_well_filtered()?,
        "the space is locally compact, well-filtered and T0")?;
    ensure(ds.ksat()? == s.kfam(), "k-sets are the compact saturated sets")?;

    let mut iso = Vec::with_capacity(d.len());
    for a in 0..d.len() {
        let u = p.o_index(d.name(a)).expect("o-elements are the frame elements");
        iso.push(full.ohat[u]);
    }
    let of = s.ofam();
    let order_iso = of.len() == d.len()
        && (0..d.len()).all(|a| (0..d.len()).all(|c| d.leq(a, c) == of[iso[a]].is_subset(&of[iso[c]])));
    ensure(order_iso, "the open-set lattice is isomorphic to the frame")?;

    let points = full
        .points
        .iter()
        .map(|&(k, u)| FramePoint { filter: p.kname(k).to_string(), prime: p.oname(u).to_string() })
        .collect();
    Ok(FramePipelineReport { points, opens: of.iter().map(|u| set_name(&names, u)).collect(), iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::FinPoset;

    #[test]
    fn three_chain_gives_two_points() {
        let r = finite_frame_pipeline(&FinLattice::chain(&["0", "1", "2"]).unwrap()).unwrap();
        let primes: Vec<&str> = r.points.iter().map(|p| p.prime.as_str()).collect();
        assert_eq!(primes, vec!["0", "1"]);
        assert_eq!(r.opens.len(), 3);
    }

    #[test]
    fn boolean_gives_discrete_pair() {
        let b = FinLattice::new(FinPoset::new(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap())
            .unwrap();
        let r = finite_frame_pipeline(&b).unwrap();
        let mut primes: Vec<&str> = r.points.iter().map(|p| p.prime.as_str()).collect();
        primes.sort();
        assert_eq!(primes, vec!["a", "b"]);
        // discrete: all four subsets open
        assert_eq!(r.opens.len(), 4);
    }

    #[test]
    fn one_element_gives_empty_space() {
        let r = finite_frame_pipeline(&FinLattice::chain(&["x"]).unwrap()).unwrap();
        assert!(r.points.is_empty());
        assert_eq!(r.opens, vec!["{}".to_string()]);
    }

    #[test]
    fn m3_rejected() {
        let m3 = FinLattice::new(
            FinPoset::new(&["0", "a", "b", "c", "1"], &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])
                .unwrap(),
        )
        .unwrap();
        assert!(matches!(finite_frame_pipeline(&m3), Err(Error::NotDistributive(_))));
    }
}
