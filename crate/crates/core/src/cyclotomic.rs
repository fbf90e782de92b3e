//! Cyclotomic polynomials, the arithmetic functions around them, and the
//! candidate bases `Phi_k(m + X)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::bigpoly::{IntPoly, QuotientRing};
use crate::error::{Error, Result};

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= k {
        if k.is_multiple_of(p) {
            let mut e = 0;
            while k.is_multiple_of(p) {
                k /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

pub fn euler_phi(k: u64) -> u64 {
    assert!(k >= 1, "euler_phi needs k >= 1");
    factorize(k)
        .into_iter()
        .fold(k, |acc, (p, _)| acc / p * (p - 1))
}

/// Product of the distinct prime divisors; `radical(1) = 1`.
pub fn radical(k: u64) -> u64 {
    assert!(k >= 1, "radical needs k >= 1");
    factorize(k).into_iter().map(|(p, _)| p).product()
}

pub fn is_prime(k: u64) -> bool {
    k >= 2 && factorize(k) == [(k, 1)]
}

/// All positive divisors in ascending order.
pub fn divisors(k: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(k) {
        let current = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(current.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// Every `j` with `phi(j) <= d`, ascending.
///
/// `phi(j) >= sqrt(j / 2)` for all `j`, so no such `j` exceeds `2 d^2`.
pub fn orders_with_totient_at_most(d: u64) -> Vec<u64> {
    (1..=2 * d * d + 4).filter(|&j| euler_phi(j) <= d).collect()
}

fn memo() -> &'static RwLock<HashMap<u64, Arc<IntPoly>>> {
    static MEMO: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// The `k`-th cyclotomic polynomial, obtained as `X^k - 1` divided exactly by
/// `Phi_d` for every proper divisor `d` of `k`. Results are memoized.
pub fn cyclotomic(k: u64) -> Arc<IntPoly> {
    assert!(k >= 1, "cyclotomic needs k >= 1");
    if let Some(p) = memo().read().expect("memo lock").get(&k) {
        return Arc::clone(p);
    }
    let mut acc = IntPoly::x_pow_minus_one(k as usize);
    for d in divisors(k) {
        if d == k {
            break;
        }
        acc = acc
            .div_exact(&cyclotomic(d))
            .expect("Phi_d divides X^k - 1 for d | k");
    }
    let phi = Arc::new(acc);
    memo()
        .write()
        .expect("memo lock")
        .entry(k)
        .or_insert(phi)
        .clone()
}

/// Whether `Phi_k(X) = Phi_rad(k)(X^(k / rad(k)))` holds exactly.
pub fn power_reduction_holds(k: u64) -> bool {
    let r = radical(k);
    *cyclotomic(k) == cyclotomic(r).substitute_power((k / r) as usize)
}

/// A monic polynomial `P` paired with its digit set `{0, ..., |P(0)| - 1}`.
#[derive(Clone, Debug)]
pub struct CnsBasis {
    source: Option<(u64, u64)>,
    poly: IntPoly,
    digit_bound: BigInt,
    ring: Arc<QuotientRing>,
}

impl CnsBasis {
    /// Any monic polynomial of positive degree with nonzero constant term.
    pub fn from_poly(poly: IntPoly) -> Result<Self> {
        let ring = QuotientRing::new(poly.clone())?;
        let digit_bound = poly.coeff(0).abs();
        if digit_bound.is_zero() {
            return Err(Error::PreconditionViolated(
                "constant term must be nonzero".into(),
            ));
        }
        Ok(Self {
            source: None,
            poly,
            digit_bound,
            ring,
        })
    }

    /// `(k, m)` when the basis came from [`base_polynomial`].
    pub fn source(&self) -> Option<(u64, u64)> {
        self.source
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.ring.degree()
    }

    /// `|P(0)|`; digits range over `0..digit_bound`.
    pub fn digit_bound(&self) -> &BigInt {
        &self.digit_bound
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }
}

/// `P(X) = Phi_k(m + X)`, the minimal polynomial of `-m + zeta_k`.
pub fn base_polynomial(k: u64, m: u64) -> Result<CnsBasis> {
    if k < 3 {
        return Err(Error::InvalidK(k));
    }
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let poly = cyclotomic(k).taylor_shift(&BigInt::from(m));
    let mut basis = CnsBasis::from_poly(poly)?;
    basis.source = Some((k, m));
    Ok(basis)
}
