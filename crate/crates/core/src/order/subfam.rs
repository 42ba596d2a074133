//! Literal enumeration of (co)directed subfamilies of a small family.

use itertools::Itertools;

use crate::error::Result;
use crate::guard;

/// Visit every nonempty subfamily of `0..m` in which each pair has a bound
/// inside the subfamily, smallest first and then lexicographically.
/// `bound(k, i)` says member k bounds member i. Stops at the first `Some`.
///
/// Above the family guardrail (only reachable with the override) nothing is
/// visited: finite (co)directed families contain their own extremum, which the
/// callers' conditions are trivially satisfied by.
pub(crate) fn find_bounded<T>(
    m: usize,
    bound: impl Fn(usize, usize) -> bool,
    mut f: impl FnMut(&[usize]) -> Option<T>,
) -> Result<Option<T>> {
    guard::ensure("family for subfamily enumeration", m, guard::FAMILY_LIMIT)?;
    if m > guard::FAMILY_LIMIT {
        log::warn!("family of {m} members: literal subfamily enumeration skipped");
        return Ok(None);
    }
    let mut masks = vec![0u32; m * m];
    for i in 0..m {
        for j in 0..m {
            masks[i * m + j] = (0..m).filter(|&k| bound(k, i) && bound(k, j)).fold(0, |acc, k| acc | 1 << k);
        }
    }
    for size in 1..=m {
        for combo in (0..m).combinations(size) {
            let fam = combo.iter().fold(0u32, |acc, &k| acc | 1 << k);
            let ok = combo.iter().enumerate().all(|(a, &i)| combo[a..].iter().all(|&j| masks[i * m + j] & fam != 0));
            if ok {
                if let Some(t) = f(&combo) {
                    return Ok(Some(t));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_family_all_subfamilies_directed() {
        // Chain of 3 under <=: every nonempty subfamily is directed.
        let mut n = 0;
        find_bounded(3, |k, i| k >= i, |_| {
            n += 1;
            None::<()>
        })
        .unwrap();
        assert_eq!(n, 7);
    }

    #[test]
    fn antichain_only_singletons() {
        let mut seen = Vec::new();
        find_bounded(3, |k, i| k == i, |c| {
            seen.push(c.to_vec());
            None::<()>
        })
        .unwrap();
        assert_eq!(seen, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn order_is_size_then_lex() {
        let mut seen = Vec::new();
        find_bounded(3, |_, _| true, |c| {
            seen.push(c.to_vec());
            None::<()>
        })
        .unwrap();
        assert_eq!(seen[3], vec![0, 1]);
        assert_eq!(seen.last().unwrap(), &vec![0, 1, 2]);
    }
}
