//! Expectation values over a ground state: height profile and colour pairing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use statevec::{Amplitude, BasisLabel, WeightedState};

use crate::{CorrError, ModelAdapter};

/// `⟨φ_r⟩` and its forward difference `⟨S_r⟩ = ⟨φ_{r+1}⟩ − ⟨φ_r⟩`, for `r = 0 … N−1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    pub r: Vec<usize>,
    pub phi_mean: Vec<f64>,
    pub s_r: Vec<f64>,
}

/// Unnormalized probabilities `|amplitude|²` at rational `q`. Every amplitude
/// must be an exact monomial whose square is a whole power of `q`.
pub fn exact_weights(state: &WeightedState, q: &BigRational) -> Result<Vec<(BasisLabel, BigRational)>, CorrError> {
    let mut out = Vec::new();
    for (label, a) in state.terms() {
        let Amplitude::Exact(m) = a else { return Err(CorrError::NotExact) };
        if (2 * m.exp12) % 12 != 0 {
            return Err(CorrError::Irrational(m.exp12));
        }
        let c = BigRational::new(BigInt::from(*m.coeff.numer()), BigInt::from(*m.coeff.denom()));
        let w = &c * &c * pow(q, 2 * m.exp12 / 12);
        out.push((label.clone(), w));
    }
    if out.is_empty() {
        return Err(CorrError::Empty);
    }
    Ok(out)
}

fn pow(q: &BigRational, e: i64) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        out *= q;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

fn expectation(
    weights: &[(BasisLabel, BigRational)],
    mut event: impl FnMut(&[u8]) -> Result<bool, CorrError>,
) -> Result<BigRational, CorrError> {
    let mut hit = BigRational::zero();
    let mut total = BigRational::zero();
    for (label, w) in weights {
        if event(label)? {
            hit += w;
        }
        total += w;
    }
    if total.is_zero() {
        return Err(CorrError::Empty);
    }
    Ok(hit / total)
}

/// Probability that the walk is back at height 0 after `r` steps.
pub fn touch_probability_enum(
    weights: &[(BasisLabel, BigRational)],
    r: usize,
    adapter: &impl ModelAdapter,
) -> Result<BigRational, CorrError> {
    expectation(weights, |l| Ok(adapter.heights(l)?.get(r) == Some(&0)))
}

/// Probability that the boundary spin's nearest-unmatched partner is the
/// spin `r − 1` (the pair spans `r` steps), so their colours are tied.
pub fn color_corr_enum(
    weights: &[(BasisLabel, BigRational)],
    r: usize,
    adapter: &impl ModelAdapter,
) -> Result<BigRational, CorrError> {
    if r == 0 {
        return Err(CorrError::Distance { r, l: 0 });
    }
    expectation(weights, |l| Ok(adapter.partners(l)?.first() == Some(&Some(r - 1))))
}

/// `Σ_r G_c(r)` over every span (1 when the boundary spin is always paired).
pub fn pairing_total(weights: &[(BasisLabel, BigRational)], adapter: &impl ModelAdapter) -> Result<BigRational, CorrError> {
    let n = adapter.spins(&weights.first().ok_or(CorrError::Empty)?.0)?.len();
    let mut total = BigRational::zero();
    for r in 1..=n {
        total += color_corr_enum(weights, r, adapter)?;
    }
    Ok(total)
}

fn numeric_mean(state: &WeightedState, mut f: impl FnMut(&[u8]) -> Result<f64, CorrError>) -> Result<f64, CorrError> {
    let mut acc = 0.0;
    let mut norm = 0.0;
    for (label, a) in state.numeric_terms() {
        acc += a * a * f(label)?;
        norm += a * a;
    }
    if norm == 0.0 {
        return Err(CorrError::Empty);
    }
    Ok(acc / norm)
}

/// Floating-point [`color_corr_enum`] for any `q`.
pub fn color_corr(state: &WeightedState, r: usize, adapter: &impl ModelAdapter) -> Result<f64, CorrError> {
    if r == 0 {
        return Err(CorrError::Distance { r, l: 0 });
    }
    numeric_mean(state, |l| Ok(f64::from(u8::from(adapter.partners(l)?.first() == Some(&Some(r - 1))))))
}

/// Floating-point [`touch_probability_enum`] for any `q`.
pub fn touch_probability(state: &WeightedState, r: usize, adapter: &impl ModelAdapter) -> Result<f64, CorrError> {
    numeric_mean(state, |l| Ok(f64::from(u8::from(adapter.heights(l)?.get(r) == Some(&0)))))
}

pub fn spin_profile(state: &WeightedState, adapter: &impl ModelAdapter) -> Result<Profile, CorrError> {
    let first = state.numeric_terms().next().ok_or(CorrError::Empty)?.0.clone();
    let n = adapter.heights(&first)?.len();
    let mut sums = vec![0.0; n];
    let mut norm = 0.0;
    for (label, a) in state.numeric_terms() {
        let h = adapter.heights(label)?;
        if h.len() != n {
            return Err(CorrError::Label("walks of different lengths".into()));
        }
        for (s, x) in sums.iter_mut().zip(&h) {
            *s += a * a * *x as f64;
        }
        norm += a * a;
    }
    let phi: Vec<f64> = sums.iter().map(|s| s / norm).collect();
    let s_r: Vec<f64> = phi.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(Profile { r: (0..n - 1).collect(), phi_mean: phi[..n - 1].to_vec(), s_r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{color_corr_formula, ChainAdapter};

    fn weights(n: usize, s: u8) -> Vec<(BasisLabel, BigRational)> {
        let st = fredkin1d::ground_state_exact(n, s, 1.0).unwrap();
        exact_weights(&st, &BigRational::one()).unwrap()
    }

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn six_site_values() {
        let w = weights(6, 1);
        let a = ChainAdapter { s: 1 };
        assert_eq!(color_corr_enum(&w, 2, &a).unwrap(), rat(2, 5));
        assert_eq!(color_corr_enum(&w, 4, &a).unwrap(), rat(1, 5));
        assert_eq!(color_corr_enum(&w, 6, &a).unwrap(), rat(2, 5));
        assert_eq!(touch_probability_enum(&w, 4, &a).unwrap(), color_corr_formula(6, 4).unwrap());
        assert_eq!(pairing_total(&w, &a).unwrap(), BigRational::one());
    }

    #[test]
    fn weights_follow_q() {
        // N = 4: areas 2 (UDUD) and 4 (UUDD); q = 2 → weights 16 and 256
        let st = fredkin1d::ground_state_exact(4, 1, 2.0).unwrap();
        let w = exact_weights(&st, &rat(2, 1)).unwrap();
        let mut v: Vec<BigRational> = w.into_iter().map(|x| x.1).collect();
        v.sort();
        assert_eq!(v, [rat(16, 1), rat(256, 1)]);
    }

    #[test]
    fn profile_lengths() {
        let st = fredkin1d::ground_state(8, 1, 1.0).unwrap();
        let p = spin_profile(&st, &ChainAdapter { s: 1 }).unwrap();
        assert_eq!(p.r.len(), 8);
        assert_eq!(p.phi_mean.len(), 8);
        assert_eq!(p.s_r.len(), 8);
        assert_eq!(p.phi_mean[0], 0.0);
        assert!((p.s_r[0] - 1.0).abs() < 1e-12);
    }
}
