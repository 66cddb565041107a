use itertools::Itertools;

use super::permanent::{perfect_matchings, permanent};
use super::OracleConfig;
use crate::bipartite::aux_incidence;
use crate::error::{Error, Result};
use crate::hypergraph::PartiteView;

fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

/// Checks the view and prefix; returns the part size.
fn check(view: &PartiteView<'_>, prefix: &[Vec<usize>], cfg: &OracleConfig) -> Result<usize> {
    let k = view.base().k();
    if view.num_parts() != k {
        return Err(Error::arg(format!(
            "need exactly k = {k} parts, got {}",
            view.num_parts()
        )));
    }
    let m = view
        .part_size()
        .ok_or_else(|| Error::arg("matching extensions need an equipartition"))?;
    let r = prefix.len();
    if r + 2 > k {
        return Err(Error::arg(format!("prefix length {r} exceeds k - 2 = {}", k - 2)));
    }
    for (i, perm) in prefix.iter().enumerate() {
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        let mut part = view.part(i).to_vec();
        part.sort_unstable();
        if sorted != part {
            return Err(Error::arg(format!("prefix entry {i} is not a bijection onto part {i}")));
        }
    }
    let free = (k - 1 - r) as u32;
    let tuples = factorial(m).checked_pow(free);
    if tuples.map_or(true, |t| t > cfg.max_tuples) {
        return Err(Error::LimitExceeded {
            what: "free permutation tuples",
            value: tuples.map_or(usize::MAX, |t| t.min(usize::MAX as u128) as usize),
            limit: cfg.max_tuples.min(usize::MAX as u128) as usize,
            hint: "use smaller parts or a longer fixed prefix",
        });
    }
    Ok(m)
}

/// Walks every choice of the free permutations `π_{r+1}, …, π_{k-1}` and hands the full
/// list `π_1, …, π_{k-1}` to `visit`.
fn for_each_free_choice(
    view: &PartiteView<'_>,
    prefix: &[Vec<usize>],
    mut visit: impl FnMut(&[Vec<usize>]) -> Result<()>,
) -> Result<()> {
    let k = view.base().k();
    let m = view.part_size().unwrap_or(0);
    let choices = (prefix.len()..k - 1).map(|i| view.part(i).iter().copied().permutations(m));
    let mut perms: Vec<Vec<usize>> = prefix.to_vec();
    for free in choices.multi_cartesian_product() {
        perms.truncate(prefix.len());
        perms.extend(free);
        visit(&perms)?;
    }
    Ok(())
}

fn left_sets(perms: &[Vec<usize>], m: usize) -> Vec<Vec<usize>> {
    (0..m).map(|j| perms.iter().map(|p| p[j]).collect()).collect()
}

/// Number of tuples `(π_{r+1}, …, π_k)` that, together with the fixed prefix
/// `(π_1, …, π_r)`, pick out a perfect matching `{π_1(j), …, π_k(j)}` of the view.
///
/// Tuples are counted, not matchings. The last permutation is summed out with a
/// permanent, so the enumeration runs over `(m!)^{k-1-r}` choices.
pub fn count_matching_extensions(
    view: &PartiteView<'_>,
    prefix: &[Vec<usize>],
    cfg: &OracleConfig,
) -> Result<u128> {
    let m = check(view, prefix, cfg)?;
    let k = view.base().k();
    let right = view.part(k - 1);
    let mut total = 0u128;
    for_each_free_choice(view, prefix, |perms| {
        let left = left_sets(perms, m);
        let b = aux_incidence(view.base(), left.iter().map(Vec::as_slice), right)?;
        total += permanent(&b)?;
        Ok(())
    })?;
    Ok(total)
}

/// Every full tuple `(π_1, …, π_k)` counted by [`count_matching_extensions`], in
/// lexicographic order of the free permutations.
pub fn enumerate_matching_extensions(
    view: &PartiteView<'_>,
    prefix: &[Vec<usize>],
    cfg: &OracleConfig,
) -> Result<Vec<Vec<Vec<usize>>>> {
    let m = check(view, prefix, cfg)?;
    let k = view.base().k();
    let right = view.part(k - 1);
    let mut out = Vec::new();
    for_each_free_choice(view, prefix, |perms| {
        let left = left_sets(perms, m);
        let b = aux_incidence(view.base(), left.iter().map(Vec::as_slice), right)?;
        for assignment in perfect_matchings(&b) {
            let mut tuple = perms.to_vec();
            tuple.push(assignment.iter().map(|&j| right[j]).collect());
            out.push(tuple);
        }
        Ok(())
    })?;
    Ok(out)
}
