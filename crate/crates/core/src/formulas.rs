//! Closed-form counts for Hamiltonian ℓ-cycles and the log-space lower bounds built on them.
//!
//! Exact values use arbitrary-precision rationals because `Ψ_k(n, ℓ)` leaves 64 bits
//! around `n = 20`. The log-space evaluators go through `ln Γ` and never form the product.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use statrs::function::factorial::ln_factorial;

use crate::error::{Error, Result};
use crate::hypergraph::is_degenerate_shape;

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Within-window reordering multiplicity `c_k(ℓ) = r! (k-ℓ-r)!` with `r = k mod (k-ℓ)`.
pub fn c_k_ell(k: usize, ell: usize) -> Result<u64> {
    if ell >= k {
        return Err(Error::arg(format!("need ℓ < k, got ℓ = {ell}, k = {k}")));
    }
    if k > 20 {
        return Err(Error::arg(format!("k = {k} too large for 64-bit factorials")));
    }
    let s = (k - ell) as u64;
    let r = k as u64 % s;
    let f = |m: u64| (1..=m).product::<u64>();
    Ok(f(r) * f(s - r))
}

/// An exact rational count, tagged with whether the closed form is trusted for the shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCount {
    pub value: BigRational,
    /// False on degenerate shapes, where distinct orderings can produce one edge set in
    /// ways the symmetry quotient does not account for.
    pub reliable: bool,
}

impl ExactCount {
    pub fn to_integer(&self) -> Option<BigUint> {
        if self.value.is_integer() && !self.value.is_negative() {
            self.value.to_integer().to_biguint()
        } else {
            None
        }
    }

    pub fn ln(&self) -> f64 {
        let numer = self.value.numer().to_f64().unwrap_or(f64::INFINITY);
        let denom = self.value.denom().to_f64().unwrap_or(f64::INFINITY);
        if numer.is_finite() && denom.is_finite() {
            numer.ln() - denom.ln()
        } else {
            // |ln(a/b)| via bit lengths is too coarse; fall back to digit strings.
            ln_big(self.value.numer()) - ln_big(self.value.denom())
        }
    }
}

fn ln_big(x: &BigInt) -> f64 {
    let digits = x.magnitude().to_string();
    let lead: f64 = digits[..digits.len().min(17)].parse().expect("decimal digits");
    lead.ln() + (digits.len().saturating_sub(17)) as f64 * std::f64::consts::LN_10
}

fn check_cycle_params(n: usize, k: usize, ell: usize) -> Result<usize> {
    if ell >= k {
        return Err(Error::arg(format!("need ℓ < k, got ℓ = {ell}, k = {k}")));
    }
    let s = k - ell;
    if n % s != 0 {
        return Err(Error::arg(format!("n = {n} is not divisible by k - ℓ = {s}")));
    }
    if n < k {
        return Err(Error::arg(format!("n = {n} is below k = {k}")));
    }
    Ok(s)
}

/// `Ψ_k(n, ℓ) = (n-1)! · (k-ℓ)/2 · c_k(ℓ)^{-n/(k-ℓ)}`, the number of Hamiltonian ℓ-cycles of
/// the complete k-graph on `n` vertices.
pub fn psi(n: usize, k: usize, ell: usize) -> Result<ExactCount> {
    let s = check_cycle_params(n, k, ell)?;
    let c = BigUint::from(c_k_ell(k, ell)?);
    let numer = factorial(n as u64 - 1) * BigUint::from(s);
    let denom = BigUint::from(2u32) * c.pow((n / s) as u32);
    Ok(ExactCount {
        value: BigRational::new(numer.into(), denom.into()),
        reliable: !is_degenerate_shape(n, k, ell),
    })
}

/// Natural log of `Ψ_k(n, ℓ)` without forming it.
pub fn psi_ln(n: usize, k: usize, ell: usize) -> Result<f64> {
    let s = check_cycle_params(n, k, ell)?;
    let c = c_k_ell(k, ell)? as f64;
    Ok(ln_factorial(n as u64 - 1) + (s as f64 / 2.0).ln() - (n / s) as f64 * c.ln())
}

/// Why a bound was evaluated outside the range where it is claimed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DomainWarning {
    /// `δ <= 1/2`: the minimum co-degree bound is not asserted there.
    DeltaAtMostHalf { delta: f64 },
    /// `d < n/2`: the bipartite matching bound needs a Dirac bipartite graph.
    DegreeBelowHalf { d: f64, n: usize },
}

/// A natural-log value with the multiplicative slack that was folded in.
///
/// `slack` stands in for the unspecified `(1 - o(1))^n` factor and is always explicit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogBound {
    pub log_value: f64,
    pub slack: f64,
    pub warning: Option<DomainWarning>,
}

impl LogBound {
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }
}

/// `ln(slack^n · Ψ_k(n, ℓ) · δ^{n/(k-ℓ)})`.
pub fn dirac_lower_bound_log(
    n: usize,
    k: usize,
    ell: usize,
    delta: f64,
    slack: f64,
) -> Result<LogBound> {
    let s = check_cycle_params(n, k, ell)?;
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::arg(format!("δ = {delta} outside (0, 1]")));
    }
    if !(slack > 0.0 && slack <= 1.0) {
        return Err(Error::arg(format!("slack = {slack} outside (0, 1]")));
    }
    let log_value =
        n as f64 * slack.ln() + psi_ln(n, k, ell)? + (n / s) as f64 * delta.ln();
    Ok(LogBound {
        log_value,
        slack,
        warning: (delta <= 0.5).then_some(DomainWarning::DeltaAtMostHalf { delta }),
    })
}

/// `ln((n-1)! p^n / 2)`, the expected number of Hamiltonian cycles of `G(n, p)`.
pub fn gnp_expected_ham_log(n: usize, p: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::arg(format!("need n >= 3, got {n}")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::arg(format!("p = {p} outside (0, 1]")));
    }
    Ok(ln_factorial(n as u64 - 1) + n as f64 * p.ln() - std::f64::consts::LN_2)
}

/// `ln(n! (d/n)^n)`, the perfect-matching lower bound for a bipartite graph with sides of
/// size `n` and minimum degree `d`.
pub fn ck_matching_bound_log(n_side: usize, d: f64) -> Result<LogBound> {
    if n_side == 0 {
        return Err(Error::arg("sides must be non-empty"));
    }
    let n = n_side as f64;
    if !(d > 0.0 && d <= n) {
        return Err(Error::arg(format!("degree {d} outside (0, {n_side}]")));
    }
    Ok(LogBound {
        log_value: ln_factorial(n_side as u64) + n * (d / n).ln(),
        slack: 1.0,
        warning: (d < n / 2.0).then_some(DomainWarning::DegreeBelowHalf { d, n: n_side }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(c: &ExactCount) -> u64 {
        c.to_integer().unwrap().to_u64().unwrap()
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_k_ell(3, 1).unwrap(), 1);
        assert_eq!(c_k_ell(3, 0).unwrap(), 6);
        assert_eq!(c_k_ell(2, 1).unwrap(), 1);
        assert_eq!(c_k_ell(4, 2).unwrap(), 2);
        assert_eq!(c_k_ell(5, 2).unwrap(), 2);
        assert!(c_k_ell(3, 3).is_err());
    }

    #[test]
    fn c_divides_stride_factorial() {
        for k in 2..=8 {
            for ell in 0..k {
                let s = (k - ell) as u64;
                let sf: u64 = (1..=s).product();
                assert_eq!(sf % c_k_ell(k, ell).unwrap(), 0, "k={k} ℓ={ell}");
            }
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(int(&psi(6, 2, 1).unwrap()), 60);
        assert_eq!(int(&psi(6, 3, 1).unwrap()), 120);
        assert_eq!(int(&psi(9, 3, 0).unwrap()), 280);
        assert_eq!(int(&psi(8, 4, 2).unwrap()), 315);
        assert!(psi(7, 3, 1).is_err());
        assert!(psi(2, 3, 1).is_err());
    }

    #[test]
    fn psi_graph_case_is_half_factorial() {
        for n in 3..30u64 {
            let half: BigUint = factorial(n - 1) / 2u32;
            assert_eq!(psi(n as usize, 2, 1).unwrap().to_integer().unwrap(), half);
        }
    }

    #[test]
    fn psi_is_integral() {
        for k in 2..=6 {
            for ell in 0..k {
                let s = k - ell;
                for n in (k..=60).filter(|n| n % s == 0 && n / s >= 3) {
                    let c = psi(n, k, ell).unwrap();
                    assert!(c.to_integer().is_some_and(|v| v > BigUint::from(0u32)), "n={n} k={k} ℓ={ell}");
                }
            }
        }
    }

    #[test]
    fn two_edge_shapes_are_unreliable() {
        assert!(!psi(4, 3, 1).unwrap().reliable);
        assert!(!psi(6, 3, 0).unwrap().reliable);
        assert!(psi(6, 3, 1).unwrap().reliable);
    }

    #[test]
    fn log_bound_matches_exact() {
        for k in 2..=5 {
            for ell in 0..k {
                let s = k - ell;
                for n in (k..=40).filter(|n| n % s == 0 && n / s >= 3) {
                    let exact = psi(n, k, ell).unwrap();
                    let bound = dirac_lower_bound_log(n, k, ell, 1.0, 1.0).unwrap();
                    let rel = (bound.log_value - exact.ln()).exp() - 1.0;
                    assert!(rel.abs() < 1e-9, "n={n} k={k} ℓ={ell}: {rel}");
                }
            }
        }
    }

    #[test]
    fn dirac_bound_examples() {
        let b = dirac_lower_bound_log(6, 3, 1, 0.75, 1.0).unwrap();
        assert!((b.log_value - 50.625f64.ln()).abs() < 1e-12);
        assert!(b.warning.is_none());
        let lo = dirac_lower_bound_log(12, 3, 1, 0.6, 0.9).unwrap();
        let hi = dirac_lower_bound_log(12, 3, 1, 0.7, 0.9).unwrap();
        assert!(hi.log_value > lo.log_value);
        let w = dirac_lower_bound_log(12, 3, 1, 0.4, 1.0).unwrap();
        assert_eq!(w.warning, Some(DomainWarning::DeltaAtMostHalf { delta: 0.4 }));
        assert!(dirac_lower_bound_log(12, 3, 1, 0.7, 0.0).is_err());
        assert!(dirac_lower_bound_log(12, 3, 1, 0.7, 1.5).is_err());
    }

    #[test]
    fn gnp_examples() {
        assert!((gnp_expected_ham_log(4, 1.0).unwrap() - 3f64.ln()).abs() < 1e-12);
        assert!((gnp_expected_ham_log(6, 1.0).unwrap() - 60f64.ln()).abs() < 1e-12);
        assert!((gnp_expected_ham_log(5, 0.5).unwrap() - 0.375f64.ln()).abs() < 1e-12);
        assert!(gnp_expected_ham_log(2, 0.5).is_err());
    }

    #[test]
    fn matching_bound_examples() {
        let b = ck_matching_bound_log(5, 5.0).unwrap();
        assert!((b.log_value - 120f64.ln()).abs() < 1e-12);
        let b = ck_matching_bound_log(4, 2.0).unwrap();
        assert!((b.log_value - 1.5f64.ln()).abs() < 1e-12);
        assert!(b.warning.is_none());
        assert!(ck_matching_bound_log(6, 2.0).unwrap().warning.is_some());
        assert!((ck_matching_bound_log(6, 6.0).unwrap().value() - 720.0).abs() < 1e-6);
    }
}
