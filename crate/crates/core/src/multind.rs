//! Multiplicative independence of `-m + zeta_k` and `-n + zeta_k`.
//!
//! A relation `(-m + zeta)^p = (-n + zeta)^q` forces the norm relation
//! `Phi_k(m)^p = Phi_k(n)^q` between positive integers. When the norms are
//! multiplicatively dependent with primitive exponent pair `(p1, q1)`, the
//! quotient `alpha^p1 / beta^q1` is a unit of norm one and the relation holds
//! for some multiple of `(p1, q1)` exactly when that quotient is torsion. All
//! torsion in `Q(zeta_k)` has order dividing `lcm(2, k)`, so a single exact
//! comparison in `Z[X] / (Phi_k)` settles it.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::bigpoly::{IntPoly, QuotientRing, Residue};
use crate::cyclotomic::{cyclotomic, divisors, is_prime};
use crate::error::{Error, Result};

/// Writes `a = base^exponent` with `exponent` maximal.
pub fn perfect_power_decompose(a: &BigInt) -> Result<(BigInt, u32)> {
    if *a < BigInt::from(2) {
        return Err(Error::InputTooSmall(a.to_string()));
    }
    let mut base = a.clone();
    let mut exponent = 1u32;
    'strip: loop {
        // base = c^r with c >= 2 needs r <= log2(base)
        let max_r = (base.bits() - 1) as u32;
        for r in (2..=max_r).filter(|&r| is_prime(r as u64)) {
            let root = base.nth_root(r);
            if root.pow(r) == base {
                base = root;
                exponent *= r;
                continue 'strip;
            }
        }
        return Ok((base, exponent));
    }
}

/// The primitive pair `(p, q)` with `a^p = b^q`, if the two are
/// multiplicatively dependent.
pub fn int_mult_dependent(a: &BigInt, b: &BigInt) -> Result<Option<(u64, u64)>> {
    let (c1, s) = perfect_power_decompose(a)?;
    let (c2, t) = perfect_power_decompose(b)?;
    if c1 != c2 {
        return Ok(None);
    }
    let g = s.gcd(&t);
    Ok(Some(((t / g) as u64, (s / g) as u64)))
}

/// `p_{q,i}(n)` for `i = 0, ..., q - 2`: the coefficients of
/// `(-n + zeta_q)^q` in the power basis `1, zeta_q, ..., zeta_q^(q-2)`.
pub fn pki_polynomials(q: u64) -> Result<Vec<IntPoly>> {
    if q < 3 || !is_prime(q) {
        return Err(Error::NotSupportedPrime(q));
    }
    let q_us = q as usize;
    let q_n = IntPoly::monomial(BigInt::from(q), 1);
    let mut binom = BigInt::one();
    let mut out = Vec::with_capacity(q_us - 1);
    for i in 0..=q_us - 2 {
        let sign = if (q_us - i).is_multiple_of(2) { 1 } else { -1 };
        let mut term = &IntPoly::monomial(&binom * sign, q_us - i) + &q_n;
        if i == 0 {
            term = &term + &IntPoly::one();
        }
        out.push(term);
        binom = binom * BigInt::from(q_us - i) / BigInt::from(i + 1);
    }
    Ok(out)
}

/// Whether `(-n0 + X)^q mod Phi_q` has coefficients `p_{q,i}(n0)`.
pub fn pki_cross_check(q: u64, n0: i64) -> Result<bool> {
    let polys = pki_polynomials(q)?;
    let ring = QuotientRing::new((*cyclotomic(q)).clone())?;
    let power = ring.element(vec![BigInt::from(-n0), BigInt::one()]).pow(q);
    let n0 = BigInt::from(n0);
    Ok(polys
        .iter()
        .zip(power.coeffs())
        .all(|(p, c)| p.eval(&n0) == *c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdCertificates {
    pub q: u64,
    /// `gcd(p_{q,0}, p_{q,1})`
    pub g01: IntPoly,
    /// `gcd(p_{q,3}, p_{q,4})`
    pub g34: IntPoly,
}

pub fn gcd_certificates(q: u64) -> Result<GcdCertificates> {
    if q < 7 {
        return Err(Error::NotSupportedPrime(q));
    }
    let p = pki_polynomials(q)?;
    Ok(GcdCertificates {
        q,
        g01: p[0].gcd_z(&p[1])?,
        g34: p[3].gcd_z(&p[4])?,
    })
}

fn cyclotomic_ring(k: u64) -> Arc<QuotientRing> {
    QuotientRing::new((*cyclotomic(k)).clone()).expect("cyclotomic polynomials are monic")
}

/// `-m + X` in the given ring.
fn base_element(ring: &Arc<QuotientRing>, m: &BigInt) -> Residue {
    ring.element(vec![-m, BigInt::one()])
}

/// The `j` in `0..k` with `X^j * lhs = rhs`, if any.
fn rotation(lhs: &Residue, rhs: &Residue, k: u64) -> Option<u64> {
    let mut cur = lhs.clone();
    for j in 0..k {
        if cur == *rhs {
            return Some(j);
        }
        cur = cur.mul_x();
    }
    None
}

/// The unique `j` in `0..k` with `zeta^j (-m + zeta)^p = (-n + zeta)^q`, if any.
pub fn algebraic_check(k: u64, m: i64, n: i64, p: u64, q: u64) -> Result<Option<u64>> {
    if k < 3 {
        return Err(Error::InvalidK(k));
    }
    if p == 0 && q == 0 {
        return Err(Error::InvalidInput("(p, q) must not both be zero".into()));
    }
    let ring = cyclotomic_ring(k);
    let lhs = base_element(&ring, &BigInt::from(m)).pow(p);
    let rhs = base_element(&ring, &BigInt::from(n)).pow(q);
    Ok(rotation(&lhs, &rhs, k))
}

/// All `(j, m)` with `zeta^j (-m + zeta) = (-n + zeta)^q`, i.e. the relations
/// with first exponent one. The left side is affine in `m`, so each `j` is an
/// exact one-variable linear solve.
pub fn first_power_solutions(k: u64, n: i64, q: u64) -> Result<Vec<(u64, BigInt)>> {
    if k < 3 {
        return Err(Error::InvalidK(k));
    }
    let ring = cyclotomic_ring(k);
    let target = base_element(&ring, &BigInt::from(n)).pow(q);
    let mut out = Vec::new();
    let mut zeta_j = ring.one();
    for j in 0..k {
        let zeta_next = zeta_j.mul_x();
        // m * zeta^j = zeta^(j+1) - target
        let rest = zeta_next.sub(&target).expect("same ring");
        let (i, pivot) = zeta_j
            .coeffs()
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .expect("units are nonzero");
        let (m, r) = rest.coeffs()[i].div_rem(pivot);
        if r.is_zero() && zeta_j.scale(&m) == rest {
            out.push((j, m));
        }
        zeta_j = zeta_next;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceWitness {
    pub p: u64,
    pub q: u64,
    pub j: u64,
    /// Set by an independent recomputation through [`algebraic_check`].
    pub verified: bool,
}

/// Which base in `(-m + zeta, -n + zeta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The norms `Phi_k(m)` and `Phi_k(n)` are multiplicatively independent
    /// integers greater than one; opposite-sign exponents are impossible
    /// because both norms exceed one.
    NormIndependent,
    /// The norms satisfy `a^p = b^q`, but `alpha^p / beta^q` is not torsion.
    TorsionRuledOut { p: u64, q: u64 },
    /// One base is a unit of infinite order while the other has norm above
    /// one; any relation forces the norm exponent, then the other, to zero.
    UnitCase { unit: Side },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndependenceVerdict {
    Dependent(DependenceWitness),
    Independent(Certificate),
}

impl IndependenceVerdict {
    pub fn is_independent(&self) -> bool {
        matches!(self, IndependenceVerdict::Independent(_))
    }
}

/// Smallest `e | order_bound` with `x^e = 1`.
fn torsion_order(x: &Residue, order_bound: u64) -> Option<u64> {
    divisors(order_bound)
        .into_iter()
        .find(|&e| x.pow(e).is_one())
}

/// Decides whether `-m + zeta_k` and `-n + zeta_k` are multiplicatively
/// independent, for any `k >= 3` and distinct positive `m`, `n`.
pub fn independence_verdict(k: u64, m: u64, n: u64) -> Result<IndependenceVerdict> {
    if k < 3 {
        return Err(Error::InvalidK(k));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("m and n must be positive".into()));
    }
    if m == n {
        return Err(Error::InvalidInput("m and n must differ".into()));
    }
    if m > i64::MAX as u64 || n > i64::MAX as u64 {
        return Err(Error::InvalidInput("m and n must fit in 63 bits".into()));
    }
    let phi = cyclotomic(k);
    let (big_m, big_n) = (BigInt::from(m), BigInt::from(n));
    let ring = cyclotomic_ring(k);
    let pair = ElementPair {
        k,
        alpha: base_element(&ring, &big_m),
        beta: base_element(&ring, &big_n),
        alpha_norm: phi.eval(&big_m),
        beta_norm: phi.eval(&big_n),
    };
    let mut verdict = pair.decide()?;
    if let IndependenceVerdict::Dependent(w) = &mut verdict {
        w.verified = algebraic_check(k, m as i64, n as i64, w.p, w.q)? == Some(w.j);
    }
    Ok(verdict)
}

/// Two nonzero elements of `Z[zeta_k]` with their (positive) norms.
struct ElementPair {
    k: u64,
    alpha: Residue,
    beta: Residue,
    alpha_norm: BigInt,
    beta_norm: BigInt,
}

impl ElementPair {
    /// The verdict with `verified` left false.
    fn decide(&self) -> Result<IndependenceVerdict> {
        let torsion_bound = self.k.lcm(&2);
        let dependent = |p, q, j| {
            IndependenceVerdict::Dependent(DependenceWitness {
                p,
                q,
                j,
                verified: false,
            })
        };
        let (a, b) = (&self.alpha_norm, &self.beta_norm);

        // |x - zeta| > 1 for x >= 2, so distinct positive inputs never both
        // have norm one.
        if a.is_one() && b.is_one() {
            return Err(Error::InvalidInput("both elements are units".into()));
        }
        if b.is_one() {
            return Ok(match torsion_order(&self.beta, torsion_bound) {
                Some(e) => dependent(0, e, 0),
                None => {
                    IndependenceVerdict::Independent(Certificate::UnitCase { unit: Side::Second })
                }
            });
        }
        if a.is_one() {
            return Ok(match torsion_order(&self.alpha, torsion_bound) {
                Some(e) => dependent(e, 0, 0),
                None => {
                    IndependenceVerdict::Independent(Certificate::UnitCase { unit: Side::First })
                }
            });
        }

        let Some((p1, q1)) = int_mult_dependent(a, b)? else {
            return Ok(IndependenceVerdict::Independent(
                Certificate::NormIndependent,
            ));
        };
        let lhs = self.alpha.pow(p1);
        let rhs = self.beta.pow(q1);
        if lhs.pow(torsion_bound) != rhs.pow(torsion_bound) {
            return Ok(IndependenceVerdict::Independent(
                Certificate::TorsionRuledOut { p: p1, q: q1 },
            ));
        }
        let (mut lhs_u, mut rhs_u) = (lhs.clone(), rhs.clone());
        for u in 1..=torsion_bound {
            if let Some(j) = rotation(&lhs_u, &rhs_u, self.k) {
                return Ok(dependent(u * p1, u * q1, j));
            }
            lhs_u = lhs_u.mul(&lhs)?;
            rhs_u = rhs_u.mul(&rhs)?;
        }
        unreachable!("a torsion quotient is a power of zeta_k up to sign")
    }
}

/// Pairs excluded by the second statement of the independence theorem:
/// `-1 + zeta_6 = zeta_3` is torsion.
pub fn is_documented_dependence(k: u64, m: u64, n: u64) -> bool {
    k == 6 && (m == 1 || n == 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVerdict {
    pub m: u64,
    pub n: u64,
    pub verdict: IndependenceVerdict,
}

/// Verdicts for every `1 <= n < m <= range_max`. This is numerical evidence
/// for the stated range, not a proof for unbounded `m`, `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceSweep {
    pub k: u64,
    pub range_max: u64,
    /// Ordered by `m`, then `n`.
    pub entries: Vec<PairVerdict>,
}

impl IndependenceSweep {
    pub fn dependent(&self) -> impl Iterator<Item = &PairVerdict> {
        self.entries.iter().filter(|e| !e.verdict.is_independent())
    }

    pub fn independent_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.verdict.is_independent())
            .count()
    }

    /// Dependent pairs outside the `k = 6, n = 1` family, plus any witness that
    /// failed re-verification.
    pub fn anomalies(&self) -> Vec<&PairVerdict> {
        self.entries
            .iter()
            .filter(|e| match &e.verdict {
                IndependenceVerdict::Dependent(w) => {
                    !w.verified || !is_documented_dependence(self.k, e.m, e.n)
                }
                IndependenceVerdict::Independent(_) => false,
            })
            .collect()
    }
}

pub fn theorem2_sweep(k: u64, range_max: u64) -> Result<IndependenceSweep> {
    if k < 3 {
        return Err(Error::InvalidK(k));
    }
    let pairs: Vec<(u64, u64)> = (2..=range_max)
        .flat_map(|m| (1..m).map(move |n| (m, n)))
        .collect();
    let entries = pairs
        .into_par_iter()
        .map(|(m, n)| independence_verdict(k, m, n).map(|verdict| PairVerdict { m, n, verdict }))
        .collect::<Result<Vec<_>>>()?;
    Ok(IndependenceSweep {
        k,
        range_max,
        entries,
    })
}

/// A solution of `(x^k - 1) / (x - 1) = y^q`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NagellSolution {
    pub x: u64,
    pub y: BigInt,
    pub k: u64,
    pub q: u64,
}

impl NagellSolution {
    pub fn holds(&self) -> bool {
        let x = BigInt::from(self.x);
        let lhs = (x.pow(self.k as u32) - 1u32) / (&x - 1u32);
        self.x > 1 && self.y > BigInt::one() && lhs == self.y.pow(self.q as u32)
    }
}

/// Every solution with `2 <= x <= x_max`, `3 <= k <= k_max`, `2 <= q <= q_max`
/// and `y > 1`, ordered by `(x, k, q)`.
pub fn nagell_search(x_max: u64, k_max: u64, q_max: u64) -> Vec<NagellSolution> {
    (2..=x_max)
        .into_par_iter()
        .flat_map_iter(|x| {
            let big_x = BigInt::from(x);
            let mut found = Vec::new();
            // repunit (x^k - 1) / (x - 1) built incrementally
            let mut value = BigInt::from(1u32) + &big_x;
            for k in 3..=k_max {
                value = value * &big_x + 1u32;
                for q in 2..=q_max {
                    let y = value.nth_root(q as u32);
                    if y <= BigInt::one() {
                        break;
                    }
                    if y.pow(q as u32) == value {
                        found.push(NagellSolution { x, y, k, q });
                    }
                }
            }
            found
        })
        .collect()
}

/// A solution of `X^2 + 3 = 4 Y^q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuarticSolution {
    pub x: u64,
    pub y: u64,
    pub q: u32,
}

impl QuarticSolution {
    pub fn holds(&self) -> bool {
        let lhs = BigInt::from(self.x).pow(2u32) + 3u32;
        lhs == BigInt::from(4u32) * BigInt::from(self.y).pow(self.q)
    }

    pub fn is_trivial(&self) -> bool {
        self.x == 1 && self.y == 1
    }
}

/// Scans odd `1 <= X <= x_max`. `X = 1` contributes the family `(1, 1, q)` for
/// `1 <= q <= q_max`; every other `X` is reported for each `q >= 2` with
/// `(X^2 + 3) / 4` a perfect `q`-th power. Ordered by `(X, q)`.
pub fn quartic_search(x_max: u64, q_max: u32) -> Vec<QuarticSolution> {
    let odd: Vec<u64> = (1..=x_max).step_by(2).collect();
    odd.into_par_iter()
        .flat_map_iter(|x| {
            // (X^2 + 3) / 4, exact for odd X
            let v = (u128::from(x) * u128::from(x)).div_ceil(4);
            let mut found = Vec::new();
            if x == 1 {
                found.extend((1..=q_max).map(|q| QuarticSolution { x, y: 1, q }));
                return found;
            }
            for q in 2..=q_max {
                let y = v.nth_root(q);
                if y < 2 {
                    break;
                }
                if y.checked_pow(q) == Some(v) {
                    found.push(QuarticSolution {
                        x,
                        y: y.to_u64().expect("y <= v fits"),
                        q,
                    });
                }
            }
            found
        })
        .collect()
}

/// One back-substituted candidate from the solution `(37, 7, 3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndgameCheck {
    pub k: u64,
    pub m: i64,
    pub n: i64,
    pub p: u64,
    pub q: u64,
    /// Rotation `j` making the relation hold, if any.
    pub rotation: Option<u64>,
}

/// Back-substitutes `X = 37` through `X = +-(2M +- 1)` with `M = m` and
/// `Y = 7` through `Phi_k(n) = 7`, for `k = 3` and `k = 6`, and tests
/// `zeta^j (-m + zeta) = (-n + zeta)^3` exactly for every sign choice.
pub fn quartic_endgame() -> Result<Vec<EndgameCheck>> {
    let mut out = Vec::new();
    for k in [3u64, 6] {
        let phi = cyclotomic(k);
        let roots_of = |value: i64| -> Vec<i64> {
            (-50..=50)
                .filter(|&t| phi.eval(&BigInt::from(t)) == BigInt::from(value))
                .collect()
        };
        for m in roots_of(343) {
            for n in roots_of(7) {
                let rotation = algebraic_check(k, m, n, 1, 3)?;
                out.push(EndgameCheck {
                    k,
                    m,
                    n,
                    p: 1,
                    q: 3,
                    rotation,
                });
            }
        }
    }
    Ok(out)
}
