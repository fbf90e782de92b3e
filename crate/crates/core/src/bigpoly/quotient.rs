//! Arithmetic in `Z[X] / (P)` for a monic modulus `P`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
pub struct QuotientRing {
    modulus: IntPoly,
}

impl QuotientRing {
    pub fn new(modulus: IntPoly) -> Result<Arc<Self>> {
        if !modulus.is_monic() || modulus.degree() == Some(0) {
            return Err(Error::NotMonic);
        }
        Ok(Arc::new(Self { modulus }))
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("monic modulus")
    }

    /// Folds every coefficient at index `>= d` back using `X^d = -(lower terms)`.
    fn reduce_vec(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        let m = self.modulus.coeffs();
        for i in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                v[i - d + j] -= &c * &m[j];
            }
        }
        v.resize(d, BigInt::zero());
        v
    }

    pub fn reduce(self: &Arc<Self>, f: &IntPoly) -> Residue {
        Residue {
            ring: Arc::clone(self),
            coeffs: self.reduce_vec(f.coeffs().to_vec()),
        }
    }

    /// Builds a residue from ascending coefficients of any length.
    pub fn element(self: &Arc<Self>, coeffs: Vec<BigInt>) -> Residue {
        Residue {
            ring: Arc::clone(self),
            coeffs: self.reduce_vec(coeffs),
        }
    }

    pub fn zero(self: &Arc<Self>) -> Residue {
        self.element(Vec::new())
    }

    pub fn one(self: &Arc<Self>) -> Residue {
        self.element(vec![BigInt::one()])
    }

    /// Residue of the integer constant `c`.
    pub fn constant(self: &Arc<Self>, c: BigInt) -> Residue {
        self.element(vec![c])
    }

    /// Residue of `X^j`.
    pub fn x_pow(self: &Arc<Self>, j: u64) -> Residue {
        let mut r = self.one();
        for _ in 0..j {
            r = r.mul_x();
        }
        r
    }
}

/// Element of a quotient ring in canonical reduced form: exactly `deg P`
/// coefficients, low degree first.
#[derive(Clone)]
pub struct Residue {
    ring: Arc<QuotientRing>,
    coeffs: Vec<BigInt>,
}

impl Residue {
    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn same_ring(&self, other: &Residue) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Residue) -> Result<Residue> {
        self.same_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Residue {
            ring: Arc::clone(&self.ring),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Residue) -> Result<Residue> {
        self.same_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Residue {
            ring: Arc::clone(&self.ring),
            coeffs,
        })
    }

    pub fn neg(&self) -> Residue {
        Residue {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Residue {
        Residue {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Residue) -> Result<Residue> {
        self.same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Residue) -> Residue {
        let d = self.coeffs.len();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Residue {
            ring: Arc::clone(&self.ring),
            coeffs: self.ring.reduce_vec(prod),
        }
    }

    /// Multiplication by `X`.
    pub fn mul_x(&self) -> Residue {
        let m = self.ring.modulus.coeffs();
        let d = self.coeffs.len();
        let top = &self.coeffs[d - 1];
        let coeffs = (0..d)
            .map(|i| {
                let shifted = if i == 0 {
                    BigInt::zero()
                } else {
                    self.coeffs[i - 1].clone()
                };
                shifted - top * &m[i]
            })
            .collect();
        Residue {
            ring: Arc::clone(&self.ring),
            coeffs,
        }
    }

    /// Binary exponentiation; `a^0 = 1`.
    pub fn pow(&self, mut e: u64) -> Residue {
        let mut result = self.ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }
}

impl PartialEq for Residue {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other).is_ok() && self.coeffs == other.coeffs
    }
}

impl Eq for Residue {}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Residue({} mod {})", self.to_poly(), self.ring.modulus)
    }
}
