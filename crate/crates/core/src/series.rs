//! Truncated power series with exact coefficients, used for the exponential
//! generating function identities.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};
use thiserror::Error;

/// Field-like coefficient bound for series arithmetic.
pub trait SeriesCoeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + FromPrimitive
{
}

impl<T> SeriesCoeff for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + FromPrimitive
{
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("exp requires constant term 0, got {0}")]
    ExpConstantTerm(String),
    #[error("{op} requires constant term 1, got {term}")]
    UnitConstantTerm { op: &'static str, term: String },
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
}

/// Power series truncated at `order` (inclusive); always holds exactly
/// `order + 1` coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series<C> {
    order: usize,
    coeffs: Vec<C>,
}

impl<C: SeriesCoeff> Series<C> {
    pub fn new(order: usize, mut coeffs: Vec<C>) -> Self {
        coeffs.resize(order + 1, C::zero());
        Series { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series::new(order, Vec::new())
    }

    pub fn constant(order: usize, c: C) -> Self {
        Series::new(order, vec![c])
    }

    pub fn one(order: usize) -> Self {
        Series::constant(order, C::one())
    }

    /// The series `c * x`.
    pub fn linear(order: usize, c: C) -> Self {
        Series::new(order, vec![C::zero(), c])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order);
        Series::new(
            self.order,
            (0..=self.order).map(|i| self.coeff(i) + rhs.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order);
        Series::new(
            self.order,
            (0..=self.order).map(|i| self.coeff(i) - rhs.coeff(i)).collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order);
        let mut out = vec![C::zero(); self.order + 1];
        for i in 0..=self.order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(self.order - i) {
                out[i + j] =
                    out[i + j].clone() + self.coeffs[i].clone() * rhs.coeffs[j].clone();
            }
        }
        Series::new(self.order, out)
    }

    pub fn scale(&self, c: &C) -> Self {
        Series::new(
            self.order,
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        )
    }

    pub fn int_pow(&self, e: u32) -> Self {
        let mut acc = Series::one(self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn nth(n: usize) -> C {
        C::from_usize(n).expect("small integer fits in coefficient field")
    }

    /// exp of a series with zero constant term, via `E' = S' E`.
    pub fn exp(&self) -> Result<Self, SeriesError>
    where
        C: std::fmt::Display,
    {
        if !self.coeff(0).is_zero() {
            return Err(SeriesError::ExpConstantTerm(self.coeff(0).to_string()));
        }
        let mut e = vec![C::one()];
        for n in 1..=self.order {
            let mut acc = C::zero();
            for k in 1..=n {
                acc = acc + Self::nth(k) * self.coeff(k) * e[n - k].clone();
            }
            e.push(acc / Self::nth(n));
        }
        Ok(Series::new(self.order, e))
    }

    /// log of a series with constant term one, via `L' = S'/S`.
    pub fn log(&self) -> Result<Self, SeriesError>
    where
        C: std::fmt::Display,
    {
        if !self.coeff(0).is_one() {
            return Err(SeriesError::UnitConstantTerm {
                op: "log",
                term: self.coeff(0).to_string(),
            });
        }
        let mut l = vec![C::zero()];
        for n in 1..=self.order {
            let mut acc = Self::nth(n) * self.coeff(n);
            for k in 1..n {
                acc = acc - Self::nth(k) * l[k].clone() * self.coeff(n - k);
            }
            l.push(acc / Self::nth(n));
        }
        Ok(Series::new(self.order, l))
    }

    /// `self^r` for an arbitrary exponent of the coefficient field; constant
    /// term must be one. Uses `S P' = r S' P`.
    pub fn pow(&self, r: &C) -> Result<Self, SeriesError>
    where
        C: std::fmt::Display,
    {
        if !self.coeff(0).is_one() {
            return Err(SeriesError::UnitConstantTerm {
                op: "pow",
                term: self.coeff(0).to_string(),
            });
        }
        let mut p = vec![C::one()];
        for n in 1..=self.order {
            let mut acc = C::zero();
            for i in 1..=n {
                acc = acc + r.clone() * Self::nth(i) * self.coeff(i) * p[n - i].clone();
            }
            for j in 1..n {
                acc = acc - Self::nth(j) * self.coeff(n - j) * p[j].clone();
            }
            p.push(acc / Self::nth(n));
        }
        Ok(Series::new(self.order, p))
    }
}

/// Which transcendental map `series_map` applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesMap {
    Exp,
    Log,
    Pow,
}

/// Truncated composition with exp, log, or a fractional power. `r` is used
/// only for `Pow`.
pub fn series_map(
    kind: SeriesMap,
    s: &Series<BigRational>,
    r: Option<&BigRational>,
) -> Result<Series<BigRational>, SeriesError> {
    match kind {
        SeriesMap::Exp => s.exp(),
        SeriesMap::Log => s.log(),
        SeriesMap::Pow => s.pow(r.expect("pow requires an exponent")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn s(order: usize, coeffs: &[(i64, i64)]) -> Series<BigRational> {
        Series::new(order, coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn exp_of_x() {
        let x = Series::linear(3, rat(1, 1));
        let e = x.exp().unwrap();
        assert_eq!(e, s(3, &[(1, 1), (1, 1), (1, 2), (1, 6)]));
    }

    #[test]
    fn log_of_one_plus_x() {
        let v = s(3, &[(1, 1), (1, 1)]);
        assert_eq!(v.log().unwrap(), s(3, &[(0, 1), (1, 1), (-1, 2), (1, 3)]));
    }

    #[test]
    fn sqrt_of_one_plus_two_x() {
        let v = s(2, &[(1, 1), (2, 1)]);
        let half = rat(1, 2);
        assert_eq!(v.pow(&half).unwrap(), s(2, &[(1, 1), (1, 1), (-1, 2)]));
    }

    #[test]
    fn exp_precondition_error() {
        let v = s(2, &[(1, 1), (1, 1)]);
        assert_eq!(
            v.exp().unwrap_err(),
            SeriesError::ExpConstantTerm("1".to_string())
        );
    }

    #[test]
    fn log_precondition_error() {
        let v = s(2, &[(2, 1)]);
        assert!(matches!(v.log().unwrap_err(), SeriesError::UnitConstantTerm { .. }));
    }

    #[test]
    fn log_exp_roundtrip() {
        // constant-term-0 inputs at orders up to 12
        for order in [4usize, 8, 12] {
            let mut coeffs = vec![rat(0, 1)];
            for i in 1..=order as i64 {
                coeffs.push(rat((i * 7) % 5 - 2, i + 1));
            }
            let v = Series::new(order, coeffs);
            let round = v.exp().unwrap().log().unwrap();
            assert_eq!(round, v);
        }
    }

    #[test]
    fn pow_integer_matches_repeated_mul() {
        let v = s(6, &[(1, 1), (3, 2), (-1, 3)]);
        let cube = v.pow(&rat(3, 1)).unwrap();
        assert_eq!(cube, v.int_pow(3));
    }
}
