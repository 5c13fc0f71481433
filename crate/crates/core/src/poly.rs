//! Dense univariate polynomials over an exact coefficient ring, plus the
//! q-brackets, m-step factorials, and symmetric-polynomial evaluators used
//! throughout the crate.
//!
//! `Poly<C>` is generic over its coefficient ring via `num-traits` bounds so
//! the same type serves integer polynomials in `q` (`Poly<BigInt>`),
//! bivariate polynomials in `t` over `Z[q]` (`Poly<Poly<BigInt>>`), and
//! rational polynomials for cyclotomic arithmetic (`Poly<BigRational>`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Coefficient ring bound: exact ring arithmetic and equality.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// Dense polynomial; `coeffs[i]` is the coefficient of the i-th power.
/// Canonical form: no trailing zero coefficients, so the zero polynomial is
/// the empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: C, exp: usize) -> Self {
        let mut coeffs = vec![C::zero(); exp + 1];
        coeffs[exp] = c;
        Poly::new(coeffs)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Horner evaluation at a point of the coefficient ring.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl<C: Coeff> Zero for Poly<C> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Coeff> One for Poly<C> {
    fn one() -> Self {
        Poly::constant(C::one())
    }
}

impl<C: Coeff> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl<C: Coeff> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<C: Coeff> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<C: Coeff + fmt::Display> Poly<C> {
    /// Render with the given variable name, lowest degree first, e.g. `2+q+q^2`.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let term = match i {
                0 => cs,
                _ => {
                    let v = if i == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{i}")
                    };
                    if cs == "1" {
                        v
                    } else if cs == "-1" {
                        format!("-{v}")
                    } else {
                        format!("{cs}{v}")
                    }
                }
            };
            parts.push(term);
        }
        let mut out = String::new();
        for (i, t) in parts.iter().enumerate() {
            if i > 0 && !t.starts_with('-') {
                out.push('+');
            }
            out.push_str(t);
        }
        out
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("q"))
    }
}

impl<C: Coeff + fmt::Display> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("q"))
    }
}

/// Quotient and remainder; the divisor's leading coefficient must be
/// invertible (we use this over fields and for monic integer divisors).
pub fn div_rem<C>(num: &Poly<C>, den: &Poly<C>) -> (Poly<C>, Poly<C>)
where
    C: Coeff + std::ops::Div<Output = C>,
{
    let dd = den.degree().expect("division by zero polynomial");
    let lead = den.leading().unwrap().clone();
    let mut rem = num.clone();
    let mut quo = vec![C::zero(); num.coeffs.len().saturating_sub(dd)];
    while let Some(rd) = rem.degree() {
        if rd < dd {
            break;
        }
        let factor = rem.leading().unwrap().clone() / lead.clone();
        let shift = rd - dd;
        quo[shift] = factor.clone();
        rem = rem - Poly::monomial(factor, shift) * den.clone();
    }
    (Poly::new(quo), rem)
}

// ---------------------------------------------------------------------------
// q-brackets and factorials
// ---------------------------------------------------------------------------

/// `[k]_q = 1 + q + ... + q^{k-1}`; zero when `k <= 0` (empty sum).
pub fn q_bracket(k: i64) -> Poly<BigInt> {
    if k <= 0 {
        return Poly::zero();
    }
    Poly::new(vec![BigInt::one(); k as usize])
}

/// `[k]! = [1][2]...[k]`.
pub fn q_factorial(k: i64) -> Poly<BigInt> {
    let mut acc = Poly::one();
    for i in 1..=k.max(0) {
        acc = acc * q_bracket(i);
    }
    acc
}

/// `[l]!_m = [l][l-m][l-2m]...[r]` where `r` in `[m]` is the residue of `l`;
/// the empty product 1 when `l <= 0`.
pub fn q_mstep_factorial(l: i64, m: u32) -> Poly<BigInt> {
    assert!(m >= 1);
    let mut acc = Poly::one();
    let mut i = l;
    while i > 0 {
        acc = acc * q_bracket(i);
        i -= m as i64;
    }
    acc
}

/// Integer value of the m-step factorial; equals `q_mstep_factorial` at q=1.
pub fn mstep_factorial(l: i64, m: u32) -> BigInt {
    assert!(m >= 1);
    let mut acc = BigInt::one();
    let mut i = l;
    while i > 0 {
        acc *= BigInt::from(i);
        i -= m as i64;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

// ---------------------------------------------------------------------------
// symmetric polynomial evaluators
// ---------------------------------------------------------------------------

/// Complete homogeneous symmetric polynomial `h_d` evaluated at `vals`,
/// by the recursion `h_k(n) = h_k(n-1) + x_n h_{k-1}(n)` with
/// `h_k(0) = delta_{k,0}`.
pub fn homogeneous_eval<R: Coeff>(d: usize, vals: &[R]) -> R {
    // table[k] = h_k(x_1..x_j) as j grows
    let mut table: Vec<R> = Vec::with_capacity(d + 1);
    table.push(R::one());
    for k in 1..=d {
        let _ = k;
        table.push(R::zero());
    }
    for x in vals {
        for k in 1..=d {
            table[k] = table[k].clone() + x.clone() * table[k - 1].clone();
        }
    }
    table[d].clone()
}

/// Elementary symmetric polynomial `e_d` at `vals`; zero when `d` exceeds the
/// number of values.
pub fn elementary_eval<R: Coeff>(d: usize, vals: &[R]) -> R {
    let mut table: Vec<R> = vec![R::zero(); d + 1];
    table[0] = R::one();
    for x in vals {
        for k in (1..=d).rev() {
            table[k] = table[k].clone() + x.clone() * table[k - 1].clone();
        }
    }
    table[d].clone()
}

/// Coefficient reversal about the degree: `rev f(q) = q^d f(1/q)`.
pub fn reverse_coefficients<C: Coeff>(p: &Poly<C>) -> Poly<C> {
    let mut coeffs = p.coeffs.clone();
    coeffs.reverse();
    Poly::new(coeffs)
}

/// Substitution `q -> q^m`.
pub fn substitute_power<C: Coeff>(p: &Poly<C>, m: u32) -> Poly<C> {
    assert!(m >= 1);
    if p.is_zero() {
        return Poly::zero();
    }
    let m = m as usize;
    let mut coeffs = vec![C::zero(); (p.coeffs.len() - 1) * m + 1];
    for (i, c) in p.coeffs.iter().enumerate() {
        coeffs[i * m] = c.clone();
    }
    Poly::new(coeffs)
}

/// JSON encoding of an integer polynomial: decimal-string coefficients in
/// ascending degree.
pub fn int_poly_to_json(p: &Poly<BigInt>) -> serde_json::Value {
    serde_json::Value::Array(
        p.coeffs()
            .iter()
            .map(|c| serde_json::Value::String(c.to_string()))
            .collect(),
    )
}

/// JSON encoding of a bivariate polynomial, t-major: one coefficient array
/// per power of t.
pub fn bivar_poly_to_json(p: &Poly<Poly<BigInt>>) -> serde_json::Value {
    serde_json::Value::Array(p.coeffs().iter().map(int_poly_to_json).collect())
}

pub fn int_poly_from_json(v: &serde_json::Value) -> Option<Poly<BigInt>> {
    let arr = v.as_array()?;
    let mut coeffs = Vec::with_capacity(arr.len());
    for c in arr {
        coeffs.push(c.as_str()?.parse::<BigInt>().ok()?);
    }
    Some(Poly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn ip(coeffs: &[i64]) -> Poly<BigInt> {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    // Independent oracle: expand h_d / e_d by direct iteration over monomials.
    fn h_oracle(d: usize, vals: &[i64]) -> i64 {
        fn rec(d: usize, vals: &[i64], start: usize) -> i64 {
            if d == 0 {
                return 1;
            }
            let mut total = 0;
            for i in start..vals.len() {
                total += vals[i] * rec(d - 1, vals, i);
            }
            total
        }
        rec(d, vals, 0)
    }

    fn e_oracle(d: usize, vals: &[i64]) -> i64 {
        fn rec(d: usize, vals: &[i64], start: usize) -> i64 {
            if d == 0 {
                return 1;
            }
            let mut total = 0;
            for i in start..vals.len() {
                total += vals[i] * rec(d - 1, vals, i + 1);
            }
            total
        }
        rec(d, vals, 0)
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(q_bracket(3), ip(&[1, 1, 1]));
        assert_eq!(q_bracket(0), Poly::zero());
        assert_eq!(q_bracket(-2), Poly::zero());
    }

    #[test]
    fn bracket_at_one_is_k() {
        for k in 0..40i64 {
            assert_eq!(
                q_bracket(k).eval(&BigInt::one()).to_i64().unwrap(),
                k.max(0)
            );
        }
    }

    #[test]
    fn mstep_factorial_examples() {
        assert_eq!(
            q_mstep_factorial(7, 3),
            q_bracket(7) * q_bracket(4) * q_bracket(1)
        );
        assert_eq!(q_mstep_factorial(-1, 2), Poly::one());
        assert_eq!(q_mstep_factorial(0, 4), Poly::one());
        assert_eq!(mstep_factorial(3, 2), BigInt::from(3));
        assert_eq!(mstep_factorial(-4, 3), BigInt::one());
        assert_eq!(mstep_factorial(6, 3), BigInt::from(18));
    }

    #[test]
    fn mstep_q1_matches_integer() {
        for m in 1..=5u32 {
            for l in -3..=13i64 {
                assert_eq!(
                    q_mstep_factorial(l, m).eval(&BigInt::one()),
                    mstep_factorial(l, m),
                    "l={l} m={m}"
                );
            }
        }
    }

    #[test]
    fn homogeneous_examples() {
        let vals: Vec<BigInt> = vec![BigInt::from(1), BigInt::from(4)];
        assert_eq!(homogeneous_eval(0, &vals), BigInt::one());
        // oracle: monomials of degree 2 in {1,4}: 1*1 + 1*4 + 4*4 = 21
        assert_eq!(h_oracle(2, &[1, 4]), 21);
        assert_eq!(homogeneous_eval(2, &vals), BigInt::from(21));
        let brackets = vec![q_bracket(1), q_bracket(3)];
        assert_eq!(homogeneous_eval(1, &brackets), ip(&[2, 1, 1]));
    }

    #[test]
    fn elementary_examples() {
        let vals: Vec<BigInt> = [1, 2, 3].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(elementary_eval(0, &vals), BigInt::one());
        assert_eq!(e_oracle(2, &[1, 2, 3]), 11);
        assert_eq!(elementary_eval(2, &vals), BigInt::from(11));
        let two: Vec<BigInt> = [1, 2].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(elementary_eval(3, &two), BigInt::zero());
    }

    #[test]
    fn symmetric_evaluators_match_oracle() {
        let valsets: [&[i64]; 4] = [&[2], &[1, 3], &[1, 4, 7], &[1, 3, 5, 7, 9]];
        for vals in valsets {
            let big: Vec<BigInt> = vals.iter().map(|&c| BigInt::from(c)).collect();
            for d in 0..=5usize {
                assert_eq!(
                    homogeneous_eval(d, &big),
                    BigInt::from(h_oracle(d, vals)),
                    "h_{d}{vals:?}"
                );
                assert_eq!(
                    elementary_eval(d, &big),
                    BigInt::from(e_oracle(d, vals)),
                    "e_{d}{vals:?}"
                );
            }
        }
    }

    #[test]
    fn reverse_and_substitute() {
        assert_eq!(reverse_coefficients(&ip(&[1, 2, 3])), ip(&[3, 2, 1]));
        assert_eq!(reverse_coefficients(&Poly::zero()), ip(&[]));
        assert_eq!(reverse_coefficients(&ip(&[0, 0, 1])), ip(&[1]));
        assert_eq!(substitute_power(&ip(&[1, 1]), 3), ip(&[1, 0, 0, 1]));
        assert_eq!(substitute_power(&q_bracket(2), 2), ip(&[1, 0, 1]));
        assert_eq!(substitute_power::<BigInt>(&Poly::zero(), 5), Poly::zero());
    }

    #[test]
    fn division_exact() {
        // (x^6 - 1) / (x^2 - 1) = x^4 + x^2 + 1 over the rationals
        use num_rational::BigRational;
        let x6: Poly<BigRational> = Poly::monomial(BigRational::one(), 6)
            - Poly::constant(BigRational::one());
        let x2: Poly<BigRational> = Poly::monomial(BigRational::one(), 2)
            - Poly::constant(BigRational::one());
        let (q, r) = div_rem(&x6, &x2);
        assert!(r.is_zero());
        assert_eq!(
            q,
            Poly::new(
                [1, 0, 1, 0, 1]
                    .iter()
                    .map(|&c| BigRational::from(BigInt::from(c)))
                    .collect()
            )
        );
    }

    proptest! {
        #[test]
        fn newton_duality(vals in proptest::collection::vec(-6i64..7, 1..6), d in 1usize..6) {
            // sum_{i=0..d} (-1)^i e_i h_{d-i} = 0 for d >= 1
            prop_assume!(d <= vals.len());
            let big: Vec<BigInt> = vals.iter().map(|&c| BigInt::from(c)).collect();
            let mut total = BigInt::zero();
            for i in 0..=d {
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                total += sign * elementary_eval(i, &big) * homogeneous_eval(d - i, &big);
            }
            prop_assert_eq!(total, BigInt::zero());
        }

        #[test]
        fn reverse_is_involution(coeffs in proptest::collection::vec(-9i64..10, 1..8)) {
            prop_assume!(coeffs[0] != 0);
            let p = ip(&coeffs);
            prop_assert_eq!(reverse_coefficients(&reverse_coefficients(&p)), p);
        }

        #[test]
        fn mul_commutes(a in proptest::collection::vec(-5i64..6, 0..6),
                        b in proptest::collection::vec(-5i64..6, 0..6)) {
            let pa = ip(&a);
            let pb = ip(&b);
            prop_assert_eq!(pa.clone() * pb.clone(), pb * pa);
        }
    }
}
