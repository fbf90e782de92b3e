//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored in ascending order of degree: `coeffs[i]` is the
//! coefficient of `X^i`. The zero polynomial is the empty vector, so the
//! representation of every polynomial is unique.

mod gcd;
mod quotient;

pub use quotient::{QuotientRing, Residue};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * X^n`
    pub fn monomial(c: BigInt, n: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = c;
        Self { coeffs }
    }

    /// `X^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `X^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Returns `q` with `self = q * divisor`.
    ///
    /// Works for any divisor whose leading coefficient divides the running
    /// remainder at every step; anything else is reported as non-exact.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.div_rem_checked(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonExactDivision)
        }
    }

    /// Euclidean division by a monic polynomial.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        self.div_rem_checked(divisor)
    }

    fn div_rem_checked(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (c, r) = rem[i].div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NonExactDivision);
            }
            let shift = i - dd;
            for (j, g) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &c * g;
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, modulus: &IntPoly) -> Result<IntPoly> {
        self.div_rem_monic(modulus).map(|(_, r)| r)
    }

    /// `f(X + a)`, by repeated synthetic division.
    pub fn taylor_shift(&self, a: &BigInt) -> IntPoly {
        let mut c = self.coeffs.clone();
        if a.is_zero() || c.len() < 2 {
            return self.clone();
        }
        let n = c.len() - 1;
        for i in 0..n {
            for j in (i..n).rev() {
                let t = a * &c[j + 1];
                c[j] += t;
            }
        }
        IntPoly::new(c)
    }

    /// `f(X^t)`.
    pub fn substitute_power(&self, t: usize) -> IntPoly {
        assert!(t >= 1, "substitute_power needs t >= 1");
        if self.is_zero() || t == 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * t + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * t] = c.clone();
        }
        IntPoly { coeffs }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Splits `f = c * p` with `p` primitive and positive leading coefficient;
    /// the sign of `f` travels with the content `c`.
    pub fn content_and_primitive(&self) -> Result<(BigInt, IntPoly)> {
        let lead = self.leading_coeff().ok_or(Error::ZeroPolynomial)?;
        let mut content = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if lead.is_negative() {
            content = -content;
        }
        let primitive = self.div_scalar_exact(&content);
        Ok((content, primitive))
    }

    /// Greatest common divisor in `Z[X]`, normalized to a positive leading
    /// coefficient.
    pub fn gcd_z(&self, other: &IntPoly) -> Result<IntPoly> {
        gcd::gcd_z(self, other)
    }

    /// Renders the polynomial in the variable `var`, e.g. `-n^17 + 17n + 1`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            if i == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => {
                    out.push_str(var);
                    out.push('^');
                    out.push_str(&i.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("X"))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl<'a> Add<&'a IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &'a IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPoly::new(coeffs)
    }
}

impl<'a> Sub<&'a IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &'a IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &'a IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        // Z has no zero divisors, so the leading product is nonzero.
        IntPoly { coeffs }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &'a IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn zero_is_empty() {
        assert!(p(&[0, 0, 0]).coeffs().is_empty());
        assert_eq!(p(&[0, 0]), IntPoly::zero());
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(p(&[3, 0, 1, 0]).degree(), Some(2));
    }

    #[test]
    fn add_examples() {
        assert_eq!(p(&[1, 1]) + p(&[-1, 1]), p(&[0, 2]));
        let f = p(&[4, -2, 7]);
        assert_eq!(&f + &IntPoly::zero(), f);
        assert_eq!(p(&[1, 1, 1]) + p(&[1, -1, 1]), p(&[2, 0, 2]));
        assert_eq!(p(&[1, 2, 3]) - p(&[1, 2, 3]), IntPoly::zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p(&[-1, 1]) * p(&[1, 1]), p(&[-1, 0, 1]));
        assert_eq!(p(&[-1, 1]) * p(&[1, 1, 1]), p(&[-1, 0, 0, 1]));
        // Phi_1 * Phi_2 * Phi_4
        let prod = p(&[-1, 1]) * p(&[1, 1]) * p(&[1, 0, 1]);
        assert_eq!(prod, IntPoly::x_pow_minus_one(4));
        assert_eq!(p(&[1, 2]) * IntPoly::zero(), IntPoly::zero());
    }

    #[test]
    fn div_exact_examples() {
        assert_eq!(p(&[-1, 0, 1]).div_exact(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        let cofactor = p(&[-1, 1]) * p(&[1, 1]) * p(&[1, 1, 1]);
        assert_eq!(
            IntPoly::x_pow_minus_one(6).div_exact(&cofactor).unwrap(),
            p(&[1, -1, 1])
        );
        assert_eq!(
            p(&[1, 0, 1]).div_exact(&p(&[1, 1])),
            Err(Error::NonExactDivision)
        );
        assert_eq!(
            p(&[1, 0, 1]).div_exact(&IntPoly::zero()),
            Err(Error::DivisionByZero)
        );
        // non-monic divisor with exact quotient
        assert_eq!(p(&[2, 6, 4]).div_exact(&p(&[2, 2])).unwrap(), p(&[1, 2]));
        assert_eq!(
            p(&[1, 2]).div_exact(&p(&[0, 2])),
            Err(Error::NonExactDivision)
        );
    }

    #[test]
    fn rem_monic_rejects_non_monic() {
        assert_eq!(p(&[1, 1, 1]).rem_monic(&p(&[1, 2])), Err(Error::NotMonic));
        assert_eq!(p(&[0, 0, 1]).rem_monic(&p(&[1, 0, 1])).unwrap(), p(&[-1]));
    }

    #[test]
    fn eval_examples() {
        // (18^3 - 1) / 17 = 7^3
        assert_eq!(p(&[1, 1, 1]).eval(&big(18)), big(343));
        assert_eq!(p(&[5, 9, -3]).eval(&big(0)), big(5));
        let repunit = IntPoly::new(vec![BigInt::one(); 11]);
        let oracle = (BigInt::from(10).pow(11) - 1) / 9;
        assert_eq!(repunit.eval(&big(10)), oracle);
        assert_eq!(oracle, "11111111111".parse::<BigInt>().unwrap());
    }

    #[test]
    fn taylor_shift_examples() {
        assert_eq!(p(&[1, 0, 1]).taylor_shift(&big(1)), p(&[2, 2, 1]));
        let f = p(&[3, -1, 4, 1, -5]);
        assert_eq!(f.taylor_shift(&big(0)), f);
        // (X+3)^2 + (X+3) + 1 expanded by hand
        assert_eq!(p(&[1, 1, 1]).taylor_shift(&big(3)), p(&[13, 7, 1]));
    }

    #[test]
    fn substitute_power_examples() {
        assert_eq!(p(&[1, 1]).substitute_power(2), p(&[1, 0, 1]));
        assert_eq!(p(&[1, 1]).substitute_power(4), p(&[1, 0, 0, 0, 1]));
        let phi9 = IntPoly::x_pow_minus_one(9)
            .div_exact(&IntPoly::x_pow_minus_one(3))
            .unwrap();
        assert_eq!(p(&[1, 1, 1]).substitute_power(3), phi9);
        assert_eq!(IntPoly::zero().substitute_power(5), IntPoly::zero());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[2, 2, 1]).derivative(), p(&[2, 2]));
        assert_eq!(p(&[7]).derivative(), IntPoly::zero());
        let phi11 = IntPoly::new(vec![BigInt::one(); 11]);
        let oracle: BigInt = (1..=10u32)
            .map(|i| BigInt::from(i) * BigInt::from(10).pow(i - 1))
            .sum();
        assert_eq!(phi11.derivative().eval(&big(10)), oracle);
        assert_eq!(oracle, big(10_987_654_321));
    }

    #[test]
    fn content_examples() {
        assert_eq!(
            p(&[6, 4]).content_and_primitive().unwrap(),
            (big(2), p(&[3, 2]))
        );
        assert_eq!(
            p(&[0, 0, -3]).content_and_primitive().unwrap(),
            (big(-3), p(&[0, 0, 1]))
        );
        let mut c = vec![0i64; 15];
        c[1] = 17;
        c[14] = 680;
        let mut e = vec![0i64; 15];
        e[1] = 1;
        e[14] = 40;
        assert_eq!(p(&c).content_and_primitive().unwrap(), (big(17), p(&e)));
        assert_eq!(
            IntPoly::zero().content_and_primitive(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, -1, 0, 1]).to_string(), "X^4 - X^2 + 1");
        assert_eq!(p(&[0, 17]).display_in("n"), "17n");
        assert_eq!(p(&[1, 17, 0, -1]).display_in("n"), "-n^3 + 17n + 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
