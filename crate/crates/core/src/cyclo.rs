//! Exact arithmetic in the cyclotomic field `Q(ζ_m)`, realized as
//! `Q[x]/(Φ_m(x))` with `x ↦ ζ_m`. Inversion goes through the extended
//! Euclidean algorithm, so every rank decision downstream is exact.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::{div_rem, Poly};

/// `Φ_m(x)` over the integers, by the quotient
/// `Φ_m = (x^m - 1) / Π_{d|m, d<m} Φ_d`.
pub fn cyclotomic_polynomial(m: u32) -> Poly<BigInt> {
    assert!(m >= 1);
    fn compute(m: u32) -> Poly<BigRational> {
        let mut num: Poly<BigRational> = Poly::monomial(BigRational::one(), m as usize)
            - Poly::constant(BigRational::one());
        for d in 1..m {
            if m % d == 0 {
                let (q, r) = div_rem(&num, &compute(d));
                debug_assert!(r.is_zero());
                num = q;
            }
        }
        num
    }
    compute(m).map(|c| {
        debug_assert!(c.is_integer());
        c.to_integer()
    })
}

fn phi_rational(m: u32) -> Poly<BigRational> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Poly<BigRational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(m)
        .or_insert_with(|| cyclotomic_polynomial(m).map(|c| BigRational::from(c.clone())))
        .clone()
}

/// Euler phi, the degree of the extension.
pub fn euler_phi(m: u32) -> usize {
    cyclotomic_polynomial(m).degree().unwrap()
}

/// An element of `Q(ζ_m)`: the residue polynomial of degree < φ(m).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycloNumber {
    m: u32,
    residue: Poly<BigRational>,
}

impl CycloNumber {
    fn reduce(m: u32, p: Poly<BigRational>) -> Self {
        let phi = phi_rational(m);
        let residue = if p.degree().map_or(false, |d| d >= phi.degree().unwrap()) {
            div_rem(&p, &phi).1
        } else {
            p
        };
        CycloNumber { m, residue }
    }

    pub fn zero(m: u32) -> Self {
        CycloNumber {
            m,
            residue: Poly::zero(),
        }
    }

    pub fn one(m: u32) -> Self {
        CycloNumber {
            m,
            residue: Poly::one(),
        }
    }

    pub fn from_rational(m: u32, r: BigRational) -> Self {
        CycloNumber {
            m,
            residue: Poly::constant(r),
        }
    }

    pub fn from_int(m: u32, v: i64) -> Self {
        CycloNumber::from_rational(m, BigRational::from(BigInt::from(v)))
    }

    /// `ζ_m^c`.
    pub fn zeta_pow(m: u32, c: u32) -> Self {
        CycloNumber::reduce(m, Poly::monomial(BigRational::one(), (c % m) as usize))
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn residue(&self) -> &Poly<BigRational> {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m);
        CycloNumber {
            m: self.m,
            residue: self.residue.clone() + rhs.residue.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m);
        CycloNumber {
            m: self.m,
            residue: self.residue.clone() - rhs.residue.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        CycloNumber {
            m: self.m,
            residue: -self.residue.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m);
        CycloNumber::reduce(self.m, self.residue.clone() * rhs.residue.clone())
    }

    /// Multiplicative inverse via extended Euclid against `Φ_m`.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in Q(ζ_m)");
        let phi = phi_rational(self.m);
        // extended euclid: u·residue + v·Φ = gcd (a unit in Q[x])
        let (mut r0, mut r1) = (self.residue.clone(), phi);
        let (mut s0, mut s1): (Poly<BigRational>, Poly<BigRational>) =
            (Poly::one(), Poly::zero());
        while !r1.is_zero() {
            let (q, r) = div_rem(&r0, &r1);
            let s = s0 - q * s1.clone();
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant (residue is invertible mod the
        // irreducible Φ_m)
        debug_assert_eq!(r0.degree(), Some(0));
        let unit = r0.coeff(0);
        CycloNumber::reduce(self.m, s0.scale(&(BigRational::one() / unit)))
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    /// Render the residue coefficients ascending, for certificates.
    pub fn coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.residue
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue.to_string_var("z"))
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_poly(coeffs: &[i64]) -> Poly<BigInt> {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), int_poly(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), int_poly(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), int_poly(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), int_poly(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), int_poly(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), int_poly(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn zeta_orders() {
        for m in 1..=8u32 {
            let z = CycloNumber::zeta_pow(m, 1);
            let mut acc = CycloNumber::one(m);
            for _ in 0..m {
                acc = acc.mul(&z);
            }
            assert_eq!(acc, CycloNumber::one(m), "ζ_{m}^{m} = 1");
            // sum of all m-th roots of unity is 0 for m > 1
            if m > 1 {
                let mut total = CycloNumber::zero(m);
                for c in 0..m {
                    total = total.add(&CycloNumber::zeta_pow(m, c));
                }
                assert!(total.is_zero());
            }
        }
    }

    #[test]
    fn field_inverse() {
        for m in [1u32, 2, 3, 4, 6] {
            for c in 0..m {
                let z = CycloNumber::zeta_pow(m, c);
                assert_eq!(z.mul(&z.inv()), CycloNumber::one(m));
            }
            let v = CycloNumber::zeta_pow(m, 1)
                .add(&CycloNumber::from_int(m, 3));
            assert_eq!(v.mul(&v.inv()), CycloNumber::one(m));
        }
    }

    #[test]
    fn m_one_is_rational() {
        let z = CycloNumber::zeta_pow(1, 0);
        assert_eq!(z, CycloNumber::one(1));
        assert_eq!(euler_phi(1), 1);
    }
}
