use crate::error::{Error, Result};
use crate::hypergraph::MAX_UNIFORMITY;

/// Sizes for one run of the sampler.
///
/// `m` paths of `parts` vertices each cover `n_prime` vertices, one vertex per part.
/// `m` connector blocks of `t` vertices cover the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PipelineParams {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub m: usize,
    pub t: usize,
    pub n_prime: usize,
    /// Number of parts in the equipartition of the covered set, each of size `m`.
    pub parts: usize,
    /// Chained matching steps: `(parts - ℓ) / (k - ℓ)`.
    pub steps: usize,
}

impl PipelineParams {
    pub fn stride(&self) -> usize {
        self.k - self.ell
    }

    /// Re-checks every constraint, naming the first that fails.
    pub fn check(&self) -> Result<()> {
        let fresh = candidate(self.n, self.k, self.ell, self.m, self.t)
            .map_err(|c| Error::ContractViolation(format!("violates {c}")))?;
        if fresh != *self {
            return Err(Error::ContractViolation(format!(
                "derived fields disagree: expected {fresh:?}"
            )));
        }
        Ok(())
    }
}

/// The constraints in the order they are checked.
fn candidate(n: usize, k: usize, ell: usize, m: usize, t: usize) -> std::result::Result<PipelineParams, &'static str> {
    let s = k - ell;
    if m == 0 {
        return Err("m >= 1");
    }
    if t < s {
        return Err("t >= k - ℓ");
    }
    if (t + ell) % s != 0 {
        return Err("t ≡ -ℓ (mod k - ℓ)");
    }
    if m.saturating_mul(t) >= n {
        return Err("m·t < n");
    }
    let n_prime = n - m * t;
    if n_prime % m != 0 {
        return Err("m | n′");
    }
    let parts = n_prime / m;
    if parts < k {
        return Err("n′/m >= k");
    }
    if parts % s != ell % s {
        return Err("n′/m ≡ ℓ (mod k - ℓ)");
    }
    // A single path is closed through W_1 onto itself, so its end edges must be disjoint.
    if m == 1 && parts < 2 * k {
        return Err("n′ >= 2k when m = 1");
    }
    Ok(PipelineParams {
        n,
        k,
        ell,
        m,
        t,
        n_prime,
        parts,
        steps: (parts - ell) / s,
    })
}

/// The feasible `(m, t)` closest to the targets in `|m - target_m| + |t - target_t|`,
/// ties going to smaller `m`, then smaller `t`.
pub fn solve_params(n: usize, k: usize, ell: usize, target_m: usize, target_t: usize) -> Result<PipelineParams> {
    if !(2..=MAX_UNIFORMITY).contains(&k) {
        return Err(Error::arg(format!("uniformity k = {k} outside 2..={MAX_UNIFORMITY}")));
    }
    if ell + 1 >= k {
        return Err(Error::arg(format!(
            "the sampler needs ℓ < k - 1, got ℓ = {ell}, k = {k}"
        )));
    }
    let s = k - ell;
    if n % s != 0 {
        return Err(Error::arg(format!("n = {n} is not divisible by k - ℓ = {s}")));
    }
    let mut best: Option<(usize, PipelineParams)> = None;
    for m in 1..n {
        for t in s..n {
            if m * t >= n {
                break;
            }
            if let Ok(p) = candidate(n, k, ell, m, t) {
                let cost = m.abs_diff(target_m) + t.abs_diff(target_t);
                if best.map_or(true, |(c, _)| cost < c) {
                    best = Some((cost, p));
                }
            }
        }
    }
    match best {
        Some((_, p)) => Ok(p),
        None => {
            let reason = match candidate(n, k, ell, target_m, target_t) {
                Err(c) => c,
                Ok(_) => unreachable!("a feasible target would have been found"),
            };
            Err(Error::Infeasible(format!(
                "no (m, t) fits n = {n}, k = {k}, ℓ = {ell}; the targets already fail {reason}"
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_instance() {
        let p = solve_params(40, 3, 1, 2, 5).unwrap();
        assert_eq!((p.m, p.t, p.n_prime, p.parts, p.steps), (2, 5, 30, 15, 7));
        p.check().unwrap();
    }

    #[test]
    fn moves_to_nearest_feasible() {
        // t = 4 is even; t = 3 and t = 5 tie at distance 1 and the smaller wins if feasible.
        let p = solve_params(40, 3, 1, 2, 4).unwrap();
        assert_eq!((p.m, p.t), (2, 3));
        assert_eq!(p.parts, 17);
    }

    #[test]
    fn rejections() {
        assert!(matches!(solve_params(40, 3, 2, 2, 5), Err(Error::InvalidArgument(_))));
        assert!(matches!(solve_params(41, 3, 1, 2, 5), Err(Error::InvalidArgument(_))));
        assert!(matches!(solve_params(3, 3, 0, 1, 3), Err(Error::Infeasible(_))));
        assert!(matches!(solve_params(4, 3, 1, 1, 2), Err(Error::Infeasible(_))));
    }

    #[test]
    fn single_path_needs_disjoint_ends() {
        // m = 1, t = 1 would leave 5 covered vertices, below 2k.
        for p in (4..40).step_by(2).filter_map(|n| solve_params(n, 3, 1, 1, 1).ok()) {
            assert!(p.m > 1 || p.parts >= 6, "{p:?}");
        }
    }
}
