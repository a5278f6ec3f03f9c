//! Monomials `c · q^(p/12)` with exact rational coefficients.

use std::fmt;
use std::ops::Mul;

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::TensorError;

/// Exact coefficient type.
pub type Coeff = Ratio<i64>;

/// `coeff · q^(exp12 / 12)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QMonomial {
    pub coeff: Coeff,
    pub exp12: i64,
}

impl QMonomial {
    pub fn new(coeff: Coeff, exp12: i64) -> Self {
        QMonomial { coeff, exp12 }
    }

    /// `q^(exp12/12)` with unit coefficient.
    pub fn q_pow12(exp12: i64) -> Self {
        QMonomial { coeff: Coeff::one(), exp12 }
    }

    pub fn one() -> Self {
        Self::q_pow12(0)
    }

    /// The zero sentinel (only used for absent amplitudes).
    pub fn zero() -> Self {
        QMonomial { coeff: Coeff::zero(), exp12: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Exact sum; fails when both terms are nonzero with different exponents.
    pub fn try_add(&self, other: &Self) -> Result<Self, TensorError> {
        if self.is_zero() {
            return Ok(*other);
        }
        if other.is_zero() {
            return Ok(*self);
        }
        if self.exp12 != other.exp12 {
            return Err(TensorError::MixedExponent { a: self.exp12, b: other.exp12 });
        }
        let coeff = self.coeff + other.coeff;
        if coeff.is_zero() {
            Ok(Self::zero())
        } else {
            Ok(QMonomial { coeff, exp12: self.exp12 })
        }
    }

    /// Exact quotient `self / other`; `None` if `other` is zero.
    pub fn ratio(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        Some(QMonomial { coeff: self.coeff / other.coeff, exp12: self.exp12 - other.exp12 })
    }

    /// Numeric value at a concrete `q > 0`.
    pub fn eval(&self, q: f64) -> f64 {
        let c = self.coeff.numer().to_f64().unwrap_or(f64::NAN)
            / self.coeff.denom().to_f64().unwrap_or(f64::NAN);
        if self.is_zero() {
            return 0.0;
        }
        c * q.powf(self.exp12 as f64 / 12.0)
    }
}

impl Mul for QMonomial {
    type Output = QMonomial;
    fn mul(self, rhs: QMonomial) -> QMonomial {
        if self.is_zero() || rhs.is_zero() {
            return QMonomial::zero();
        }
        QMonomial { coeff: self.coeff * rhs.coeff, exp12: self.exp12 + rhs.exp12 }
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sign = if self.coeff.is_negative() { "-" } else { "" };
        let c = self.coeff.abs();
        let g = num_integer_gcd(self.exp12.unsigned_abs(), 12);
        let (num, den) = (self.exp12 / g as i64, 12 / g as i64);
        let qpart = match (num, den) {
            (0, _) => String::new(),
            (1, 1) => "q".to_string(),
            (n, 1) => format!("q^{n}"),
            (n, d) => format!("q^({n}/{d})"),
        };
        match (c.is_one(), qpart.is_empty()) {
            (true, true) => write!(f, "{sign}1"),
            (true, false) => write!(f, "{sign}{qpart}"),
            (false, true) => write!(f, "{sign}{c}"),
            (false, false) => write!(f, "{sign}{c}·{qpart}"),
        }
    }
}

fn num_integer_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Values a sparse tensor can carry: exact monomials or plain floats.
pub trait Weight: Clone + PartialEq + fmt::Debug {
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn try_add(&self, other: &Self) -> Result<Self, TensorError>;
}

impl Weight for QMonomial {
    fn one() -> Self {
        QMonomial::one()
    }
    fn is_zero(&self) -> bool {
        QMonomial::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn try_add(&self, other: &Self) -> Result<Self, TensorError> {
        QMonomial::try_add(self, other)
    }
}

impl Weight for f64 {
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn try_add(&self, other: &Self) -> Result<Self, TensorError> {
        Ok(self + other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponents_add_under_product() {
        let m = QMonomial::q_pow12(3) * QMonomial::q_pow12(6);
        assert_eq!(m.exp12, 9);
    }

    #[test]
    fn mixed_exponent_sum_is_rejected() {
        let err = QMonomial::q_pow12(0).try_add(&QMonomial::q_pow12(12)).unwrap_err();
        assert_eq!(err, TensorError::MixedExponent { a: 0, b: 12 });
        let two = QMonomial::q_pow12(6).try_add(&QMonomial::q_pow12(6)).unwrap();
        assert_eq!(two.coeff, Coeff::from_integer(2));
    }

    #[test]
    fn eval_and_display() {
        assert!((QMonomial::q_pow12(6).eval(4.0) - 2.0).abs() < 1e-15);
        assert_eq!(QMonomial::q_pow12(6).to_string(), "q^(1/2)");
        assert_eq!(QMonomial::q_pow12(-1).to_string(), "q^(-1/12)");
        assert_eq!(QMonomial::new(Coeff::new(3, 2), 24).to_string(), "3/2·q^2");
        assert_eq!(QMonomial::zero().to_string(), "0");
    }
}
