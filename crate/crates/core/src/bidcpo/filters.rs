use crate::error::{Error, Result};
use crate::order::FinPoset;
use crate::polarity::Polarity;

use super::dcpo::{validate_bidcpo, BiDcpo};

/// Some x ≰ y with no filter containing x but not y.
pub fn filter_separation_witness(d: &FinPoset) -> Option<(usize, usize)> {
    let filters = d.filters();
    (0..d.len())
        .flat_map(|x| (0..d.len()).map(move |y| (x, y)))
        .find(|&(x, y)| !d.leq(x, y) && !filters.iter().any(|f| f.contains(x) && !f.contains(y)))
}

/// (filters(D), D, ∋) with filter `^x` for the principal filter of x.
pub fn filter_polarity(d: &FinPoset) -> Result<Polarity> {
    let filters = d.filters();
    let knames: Vec<String> = filters.iter().map(|f| format!("^{}", d.name(d.least(f).expect("principal")))).collect();
    Polarity::from_fn_unsorted(knames, d.names().to_vec(), |k, x| filters[k].contains(x)).map(|r| r.0)
}

/// The bi-dcpo of a finite open-filter-determined poset.
pub fn from_dcpo_filters(d: &FinPoset) -> Result<BiDcpo> {
    if let Some((x, y)) = filter_separation_witness(d) {
        return Err(Error::Precondition(format!(
            "not open-filter-determined: no filter separates {} from {}",
            d.name(x),
            d.name(y)
        )));
    }
    validate_bidcpo(&filter_polarity(d)?)
}

/// For every x ≰ y some z ≥ y with x ≰ z has D∖↓z a filter.
pub fn filter_distributivity_criterion(d: &FinPoset) -> bool {
    let n = d.len();
    let prime: Vec<bool> = (0..n)
        .map(|z| {
            d.least(&d.down(z).complement()).is_some()
        })
        .collect();
    (0..n).all(|x| (0..n).all(|y| d.leq(x, y) || d.up(y).iter().any(|z| prime[z] && !d.leq(x, z))))
}
