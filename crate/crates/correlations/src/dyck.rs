use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::CorrError;

/// Number of Dyck walks of length `r`: the Catalan number `C_{r/2}` (0 for odd `r`).
pub fn n_dyck(r: usize) -> BigUint {
    if r % 2 == 1 {
        return BigUint::from(0u8);
    }
    let m = r / 2;
    // C_m = binom(2m, m) / (m + 1), built incrementally to stay exact
    let mut c = BigUint::from(1u8);
    for k in 0..m as u64 {
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

/// `N(r)·N(L−r) / N(L)`: the share of length-`L` walks that return to zero
/// after `r` steps. `r = L` gives 1.
pub fn color_corr_formula(l: usize, r: usize) -> Result<BigRational, CorrError> {
    if l % 2 == 1 {
        return Err(CorrError::Odd(l));
    }
    if r % 2 == 1 {
        return Err(CorrError::Odd(r));
    }
    if r == 0 || r > l {
        return Err(CorrError::Distance { r, l });
    }
    let big = |x: BigUint| BigInt::from(x);
    Ok(BigRational::new(big(n_dyck(r) * n_dyck(l - r)), big(n_dyck(l))))
}
