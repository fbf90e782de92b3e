//! Canonical number system checks for a monic basis polynomial `P`.
//!
//! The sufficient criterion used here asks for a positive nondecreasing
//! coefficient chain `0 < p_{d-1} <= ... <= p_0`, a constant term `p_0 >= 2`
//! and no root of unity among the roots of `P`. Digit expansions are computed
//! exactly in `Z[X] / (P)` by the backward division `gamma -> (gamma - a) / X`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::bigpoly::{IntPoly, Residue};
use crate::cyclotomic::{
    base_polynomial, cyclotomic, euler_phi, orders_with_totient_at_most, CnsBasis,
};
use crate::error::{Error, Result};

/// Step fuse for [`encode`] when the caller has no better bound.
pub const DEFAULT_MAX_STEPS: usize = 1_000_000;

/// Largest box [`exhaustive_verify`] enumerates.
pub const DEFAULT_BOX_BUDGET: u64 = 10_000_000;

/// First condition of the criterion that fails, in checking order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `p_{d-1} <= 0`
    NonPositiveLead { index: usize, value: BigInt },
    /// `p_index > p_{index-1}`
    Decrease {
        index: usize,
        upper: BigInt,
        lower: BigInt,
    },
    /// `p_0 < 2`
    SmallConstant(BigInt),
    /// `Phi_order` divides `P`.
    RootOfUnity { order: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositiveLead { index, value } => {
                write!(f, "p_{index} = {value} is not positive")
            }
            Violation::Decrease {
                index,
                upper,
                lower,
            } => {
                write!(f, "p_{index} = {upper} > p_{} = {lower}", index - 1)
            }
            Violation::SmallConstant(p0) => write!(f, "p_0 = {p0} is below 2"),
            Violation::RootOfUnity { order } => {
                write!(f, "Phi_{order} divides P, so a root is a root of unity")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub monotone_ok: bool,
    pub p0_ok: bool,
    pub no_unit_root_ok: bool,
    pub passed: bool,
    pub first_violation: Option<Violation>,
}

fn monotone_violation(p: &IntPoly, d: usize) -> Option<Violation> {
    let lead = p.coeff(d - 1);
    if !lead.is_positive() {
        return Some(Violation::NonPositiveLead {
            index: d - 1,
            value: lead,
        });
    }
    (1..d).rev().find_map(|i| {
        let (upper, lower) = (p.coeff(i), p.coeff(i - 1));
        (upper > lower).then_some(Violation::Decrease {
            index: i,
            upper,
            lower,
        })
    })
}

/// Evaluates the three conditions of the criterion on a monic `P`.
pub fn petho_check(p: &IntPoly) -> Result<CriterionReport> {
    let d = match p.degree() {
        Some(d) if d >= 1 && p.is_monic() => d,
        _ => return Err(Error::NotMonic),
    };
    let monotone = monotone_violation(p, d);
    let p0 = p.coeff(0);
    let p0_ok = p0 >= BigInt::from(2);
    let unit_root = cyclotomic_factor_order(p);

    let first_violation = monotone
        .clone()
        .or_else(|| (!p0_ok).then_some(Violation::SmallConstant(p0)))
        .or_else(|| unit_root.map(|order| Violation::RootOfUnity { order }));
    let monotone_ok = monotone.is_none();
    let no_unit_root_ok = unit_root.is_none();
    Ok(CriterionReport {
        monotone_ok,
        p0_ok,
        no_unit_root_ok,
        passed: monotone_ok && p0_ok && no_unit_root_ok,
        first_violation,
    })
}

/// Smallest `j` with `Phi_j | P`, if any.
///
/// Only orders with `phi(j) <= deg P` can divide, and those are enumerated
/// exhaustively, so no root location is needed.
pub fn cyclotomic_factor_order(p: &IntPoly) -> Option<u64> {
    let d = p.degree()? as u64;
    orders_with_totient_at_most(d).into_iter().find(|&j| {
        p.rem_monic(&cyclotomic(j))
            .map(|r| r.is_zero())
            .unwrap_or(false)
    })
}

pub fn has_cyclotomic_factor(p: &IntPoly) -> bool {
    cyclotomic_factor_order(p).is_some()
}

/// One instance of `C(phi, d) (m - 1)^d / 2 <= p~_d <= C(phi, d) (m + 1)^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientBound {
    pub d: usize,
    /// `C(phi, d) (m - 1)^d`, i.e. twice the lower bound.
    pub twice_lower: BigInt,
    pub value: BigInt,
    pub upper: BigInt,
}

impl CoefficientBound {
    pub fn holds(&self) -> bool {
        self.twice_lower <= BigInt::from(2) * &self.value && self.value <= self.upper
    }
}

fn binomial(n: usize, r: usize) -> BigInt {
    (0..r).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// The bounds for `d = 1, ..., phi(k)`, with `p~_d` read from the
/// coefficient of `X^(phi(k) - d)` in `Phi_k(m + X)`.
pub fn coefficient_bounds(k: u64, m: u64) -> Result<Vec<CoefficientBound>> {
    if k < 3 {
        return Err(Error::InvalidK(k));
    }
    let phi = euler_phi(k);
    if m <= phi {
        return Err(Error::PreconditionViolated(format!(
            "m = {m} must exceed phi({k}) = {phi}"
        )));
    }
    let basis = base_polynomial(k, m)?;
    let phi = phi as usize;
    let (below, above) = (BigInt::from(m - 1), BigInt::from(m + 1));
    Ok((1..=phi)
        .map(|d| {
            let c = binomial(phi, d);
            CoefficientBound {
                d,
                twice_lower: below.pow(d as u32) * &c,
                value: basis.poly().coeff(phi - d),
                upper: above.pow(d as u32) * &c,
            }
        })
        .collect())
}

pub fn coeff_bounds_check(k: u64, m: u64) -> Result<bool> {
    Ok(coefficient_bounds(k, m)?
        .iter()
        .all(CoefficientBound::holds))
}

/// Splits `gamma = digit + X * gamma'` with `digit` in `0..|p_0|`.
pub fn expansion_step(basis: &CnsBasis, gamma: &Residue) -> (BigInt, Residue) {
    let p = basis.poly();
    let a = gamma.coeffs();
    let d = a.len();
    let digit = a[0].mod_floor(basis.digit_bound());
    let t = (&a[0] - &digit) / p.coeff(0);
    let mut next = Vec::with_capacity(d);
    for i in 0..d - 1 {
        next.push(&a[i + 1] - &t * p.coeff(i + 1));
    }
    next.push(-t);
    (digit, basis.ring().element(next))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpansionStatus {
    /// Reached zero; the digits represent the input exactly.
    Terminated,
    /// The state at step `entry` came back after `length` more steps.
    Cycle { entry: usize, length: usize },
    /// The step fuse blew before either outcome was observed.
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitExpansion {
    /// Least significant digit first.
    pub digits: Vec<BigInt>,
    pub status: ExpansionStatus,
    pub steps: usize,
}

impl DigitExpansion {
    pub fn terminated(&self) -> bool {
        self.status == ExpansionStatus::Terminated
    }
}

fn check_ring(basis: &CnsBasis, gamma: &Residue) -> Result<()> {
    if gamma.ring().modulus() == basis.poly() {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// Iterates [`expansion_step`] until zero, a repeated state, or `max_steps`.
pub fn encode(basis: &CnsBasis, gamma: &Residue, max_steps: usize) -> Result<DigitExpansion> {
    check_ring(basis, gamma)?;
    let mut state = gamma.clone();
    let mut digits = Vec::new();
    let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
    let status = loop {
        if state.is_zero() {
            break ExpansionStatus::Terminated;
        }
        if let Some(&entry) = seen.get(state.coeffs()) {
            break ExpansionStatus::Cycle {
                entry,
                length: digits.len() - entry,
            };
        }
        if digits.len() >= max_steps {
            break ExpansionStatus::BudgetExceeded;
        }
        seen.insert(state.coeffs().to_vec(), digits.len());
        let (digit, next) = expansion_step(basis, &state);
        digits.push(digit);
        state = next;
    };
    let steps = digits.len();
    Ok(DigitExpansion {
        digits,
        status,
        steps,
    })
}

/// `sum digits[j] X^j` reduced mod `P`.
pub fn decode(basis: &CnsBasis, digits: &[BigInt]) -> Result<Residue> {
    let bound = basis.digit_bound();
    if let Some((position, digit)) = digits
        .iter()
        .enumerate()
        .find(|(_, d)| d.is_negative() || *d >= bound)
    {
        return Err(Error::DigitOutOfRange {
            position,
            digit: digit.to_string(),
            bound: bound.to_string(),
        });
    }
    let ring = basis.ring();
    let mut acc = ring.zero();
    for d in digits.iter().rev() {
        acc = acc
            .mul_x()
            .add(&ring.constant(d.clone()))
            .expect("same ring");
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub element: Residue,
    pub expansion: DigitExpansion,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub basis: CnsBasis,
    pub box_radius: u64,
    /// Elements examined in enumeration order, up to and including any
    /// counterexample.
    pub tested: u64,
    pub all_terminated: bool,
    pub counterexample: Option<Counterexample>,
}

/// Expands every element whose coefficients all lie in `[-r, r]`, using the
/// default box budget.
pub fn exhaustive_verify(
    basis: &CnsBasis,
    box_radius: u64,
    max_steps: usize,
) -> Result<VerificationReport> {
    exhaustive_verify_within(basis, box_radius, max_steps, DEFAULT_BOX_BUDGET)
}

pub fn exhaustive_verify_within(
    basis: &CnsBasis,
    box_radius: u64,
    max_steps: usize,
    budget: u64,
) -> Result<VerificationReport> {
    if box_radius == 0 {
        return Err(Error::InvalidInput("box radius must be positive".into()));
    }
    let side = 2 * box_radius + 1;
    let d = basis.degree();
    let total = BigInt::from(side).pow(d as u32);
    let total = match total.to_u64() {
        Some(t) if t <= budget => t,
        _ => {
            return Err(Error::BudgetExceeded {
                requested: total.to_string(),
                budget,
            })
        }
    };
    let element_at = |mut idx: u64| {
        let coeffs = (0..d)
            .map(|_| {
                let c = (idx % side) as i64 - box_radius as i64;
                idx /= side;
                BigInt::from(c)
            })
            .collect();
        basis.ring().element(coeffs)
    };
    let expand = |idx: u64| encode(basis, &element_at(idx), max_steps).expect("same ring");

    let failure = (0..total)
        .into_par_iter()
        .find_first(|&idx| !expand(idx).terminated());
    let (tested, counterexample) = match failure {
        Some(idx) => (
            idx + 1,
            Some(Counterexample {
                element: element_at(idx),
                expansion: expand(idx),
            }),
        ),
        None => (total, None),
    };
    Ok(VerificationReport {
        basis: basis.clone(),
        box_radius,
        tested,
        all_terminated: counterexample.is_none(),
        counterexample,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepEntry {
    pub k: u64,
    pub phi: u64,
    pub m: u64,
    pub report: CriterionReport,
    /// `p_1 <= p_0`
    pub case2_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Sweep {
    pub phi_max: u64,
    pub m_max: u64,
    /// Ordered by `k`, then `m`.
    pub entries: Vec<SweepEntry>,
}

impl Theorem1Sweep {
    pub fn pair_count(&self) -> usize {
        self.entries.len()
    }

    pub fn pass_count(&self) -> usize {
        self.entries.iter().filter(|e| e.report.passed).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepEntry> {
        self.entries.iter().filter(|e| !e.report.passed)
    }
}

/// Runs [`petho_check`] on `Phi_k(m + X)` for every `k >= 3` with
/// `phi(k) <= phi_max` and every `phi(k) + 1 <= m <= m_max`.
pub fn theorem1_sweep(phi_max: u64, m_max: u64) -> Theorem1Sweep {
    let pairs: Vec<(u64, u64, u64)> = orders_with_totient_at_most(phi_max)
        .into_iter()
        .filter(|&k| k >= 3)
        .flat_map(|k| {
            let phi = euler_phi(k);
            (phi + 1..=m_max).map(move |m| (k, phi, m))
        })
        .collect();
    let entries = pairs
        .into_par_iter()
        .map(|(k, phi, m)| {
            let basis = base_polynomial(k, m).expect("k >= 3, m >= 1");
            let report = petho_check(basis.poly()).expect("monic");
            let p = basis.poly();
            SweepEntry {
                k,
                phi,
                m,
                report,
                case2_ok: p.coeff(1) <= p.coeff(0),
            }
        })
        .collect();
    Theorem1Sweep {
        phi_max,
        m_max,
        entries,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryComparison {
    pub p1: BigInt,
    pub p0: BigInt,
    /// `p1.cmp(&p0)`
    pub ordering: Ordering,
}

/// Compares the two lowest coefficients of `Phi_k(m + X)`.
pub fn remark_boundary(k: u64, m: u64) -> Result<BoundaryComparison> {
    let basis = base_polynomial(k, m)?;
    let (p1, p0) = (basis.poly().coeff(1), basis.poly().coeff(0));
    let ordering = p1.cmp(&p0);
    Ok(BoundaryComparison { p1, p0, ordering })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn ints(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn basis(c: &[i64]) -> CnsBasis {
        CnsBasis::from_poly(p(c)).unwrap()
    }

    #[test]
    fn knuth_base_passes() {
        let r = petho_check(&p(&[2, 2, 1])).unwrap();
        assert!(r.passed && r.first_violation.is_none());
    }

    #[test]
    fn phi3_has_unit_roots() {
        let r = petho_check(&p(&[1, 1, 1])).unwrap();
        assert!(r.monotone_ok);
        assert!(!r.p0_ok);
        assert!(!r.no_unit_root_ok);
        assert!(!r.passed);
        assert_eq!(
            r.first_violation,
            Some(Violation::SmallConstant(BigInt::one()))
        );
        let r = petho_check(&(p(&[-1, 1]) * p(&[3, 3, 1]) * p(&[1, 1]))).unwrap();
        assert!(!r.no_unit_root_ok);
    }

    #[test]
    fn phi22_shifted_by_ten_breaks_monotonicity() {
        let b = base_polynomial(22, 10).unwrap();
        let r = petho_check(b.poly()).unwrap();
        assert!(!r.monotone_ok && !r.passed);
        assert!(r.p0_ok && r.no_unit_root_ok);
        match r.first_violation {
            Some(Violation::Decrease { index: 1, .. }) => {}
            other => panic!("unexpected violation {other:?}"),
        }
    }

    #[test]
    fn petho_rejects_non_monic() {
        assert_eq!(petho_check(&p(&[2, 2])).unwrap_err(), Error::NotMonic);
        assert_eq!(petho_check(&p(&[1])).unwrap_err(), Error::NotMonic);
    }

    #[test]
    fn negative_lead_reported() {
        let r = petho_check(&p(&[5, -1, 1])).unwrap();
        assert_eq!(
            r.first_violation,
            Some(Violation::NonPositiveLead {
                index: 1,
                value: BigInt::from(-1)
            })
        );
    }

    #[test]
    fn cyclotomic_factor_examples() {
        assert!(has_cyclotomic_factor(&p(&[1, 1, 1])));
        assert!(!has_cyclotomic_factor(&p(&[2, 2, 1])));
        assert_eq!(
            cyclotomic_factor_order(&(p(&[-1, 1]) * p(&[3, 3, 1]))),
            Some(1)
        );
        // Phi_90 has degree 24: still detected inside a degree-26 product.
        let f = &*cyclotomic(90) * &p(&[7, 5, 1]);
        assert_eq!(cyclotomic_factor_order(&f), Some(90));
    }

    #[test]
    fn bounds_examples() {
        let b = coefficient_bounds(3, 3).unwrap();
        assert_eq!(b[0].value, BigInt::from(7));
        assert_eq!(
            (b[0].twice_lower.clone(), b[0].upper.clone()),
            (BigInt::from(4), BigInt::from(8))
        );
        assert_eq!(b[1].value, BigInt::from(13));
        assert_eq!(
            (b[1].twice_lower.clone(), b[1].upper.clone()),
            (BigInt::from(4), BigInt::from(16))
        );
        assert!(coeff_bounds_check(3, 3).unwrap());
        assert_eq!(*base_polynomial(4, 3).unwrap().poly(), p(&[10, 6, 1]));
        assert!(coeff_bounds_check(4, 3).unwrap());
        assert!(coeff_bounds_check(11, 11).unwrap());
        assert!(matches!(
            coeff_bounds_check(11, 10),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn step_examples() {
        let b = base_polynomial(4, 1).unwrap();
        let (digit, next) = expansion_step(&b, &b.ring().element(ints(&[-1])));
        assert_eq!(digit, BigInt::one());
        assert_eq!(next.coeffs(), &ints(&[2, 1])[..]);

        let (digit, next) = expansion_step(&b, &b.ring().zero());
        assert!(digit.is_zero() && next.is_zero());

        let lin = basis(&[2, 1]);
        let (digit, next) = expansion_step(&lin, &lin.ring().element(ints(&[3])));
        assert_eq!(digit, BigInt::one());
        assert_eq!(next.coeffs(), &ints(&[-1])[..]);
    }

    #[test]
    fn encode_examples() {
        let b = base_polynomial(4, 1).unwrap();
        let e = encode(&b, &b.ring().element(ints(&[-1])), 100).unwrap();
        assert_eq!(e.digits, ints(&[1, 0, 1, 1, 1]));
        assert_eq!(e.status, ExpansionStatus::Terminated);
        assert_eq!(e.steps, 5);

        let lin = basis(&[2, 1]);
        let e = encode(&lin, &lin.ring().element(ints(&[3])), 100).unwrap();
        assert_eq!(e.digits, ints(&[1, 1, 1]));
        assert!(e.terminated());

        let bad = basis(&[-2, 1]);
        let e = encode(&bad, &bad.ring().element(ints(&[-1])), 100).unwrap();
        assert_eq!(
            e.status,
            ExpansionStatus::Cycle {
                entry: 0,
                length: 1
            }
        );
        assert_eq!(e.digits, ints(&[1]));
    }

    #[test]
    fn encode_fuse() {
        // Unit constant term: the digit is always 0 and the state drifts.
        let b = basis(&[1, 3, 1]);
        let e = encode(&b, &b.ring().element(ints(&[5, 0])), 50).unwrap();
        assert!(e.steps <= 50);
        assert_ne!(e.status, ExpansionStatus::Terminated);
    }

    #[test]
    fn encode_ring_mismatch() {
        let b = base_polynomial(4, 1).unwrap();
        let other = basis(&[13, 7, 1]);
        let g = other.ring().one();
        assert_eq!(encode(&b, &g, 10).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn gaussian_oracle_for_knuth_digits() {
        // (re, im) arithmetic on b = -1 + i, independent of the ring code
        let mul = |a: (i64, i64), b: (i64, i64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
        let base = (-1, 1);
        let mut power = (1, 0);
        let mut total = (0, 0);
        for d in [1, 0, 1, 1, 1] {
            total = (total.0 + d * power.0, total.1 + d * power.1);
            power = mul(power, base);
        }
        assert_eq!(total, (-1, 0));
    }

    #[test]
    fn decode_examples() {
        let b = base_polynomial(4, 1).unwrap();
        assert!(decode(&b, &[]).unwrap().is_zero());
        assert_eq!(
            decode(&b, &ints(&[1, 0, 1, 1, 1])).unwrap().coeffs(),
            &ints(&[-1, 0])[..]
        );
        assert!(matches!(
            decode(&b, &ints(&[1, 2])),
            Err(Error::DigitOutOfRange { position: 1, .. })
        ));
        assert!(matches!(
            decode(&b, &ints(&[-1])),
            Err(Error::DigitOutOfRange { position: 0, .. })
        ));
    }

    #[test]
    fn exhaustive_examples() {
        let r = exhaustive_verify(&base_polynomial(4, 1).unwrap(), 2, DEFAULT_MAX_STEPS).unwrap();
        assert!(r.all_terminated && r.counterexample.is_none());
        assert_eq!(r.tested, 25);

        let r = exhaustive_verify(&basis(&[-2, 1]), 1, DEFAULT_MAX_STEPS).unwrap();
        assert!(!r.all_terminated);
        let c = r.counterexample.unwrap();
        assert_eq!(c.element.coeffs(), &ints(&[-1])[..]);
        assert!(matches!(c.expansion.status, ExpansionStatus::Cycle { .. }));
        assert_eq!(r.tested, 1);

        let r = exhaustive_verify(&base_polynomial(3, 3).unwrap(), 2, DEFAULT_MAX_STEPS).unwrap();
        assert!(r.all_terminated);
    }

    #[test]
    fn exhaustive_budget() {
        // 7^10 elements
        let b = base_polynomial(11, 11).unwrap();
        assert!(matches!(
            exhaustive_verify(&b, 3, 100),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(exhaustive_verify_within(&base_polynomial(4, 1).unwrap(), 2, 100, 24).is_err());
    }

    #[test]
    fn small_sweeps() {
        let s = theorem1_sweep(2, 3);
        let pairs: Vec<_> = s.entries.iter().map(|e| (e.k, e.m)).collect();
        assert_eq!(pairs, vec![(3, 3), (4, 3), (6, 3)]);
        assert_eq!(s.pass_count(), 3);
        assert!(theorem1_sweep(1, 19).entries.is_empty());
    }

    #[test]
    fn boundary_examples() {
        let c = remark_boundary(11, 10).unwrap();
        assert_eq!(c.ordering, Ordering::Less);
        assert_eq!(c.p1, BigInt::from(10_987_654_321u64));
        assert_eq!(c.p0, BigInt::from(11_111_111_111u64));
        assert_eq!(remark_boundary(22, 10).unwrap().ordering, Ordering::Greater);
        let c = remark_boundary(4, 1).unwrap();
        assert_eq!((c.ordering, c.p0), (Ordering::Equal, BigInt::from(2)));
    }

    #[test]
    fn boundary_k22_against_alternating_oracle() {
        // Phi_22(x) = Phi_11(-x): p_0 = sum (-10)^i, p_1 = -sum i (-10)^(i-1)
        let p0: i128 = (0..=10).map(|i| (-10i128).pow(i)).sum();
        let p1: i128 = -(1..=10)
            .map(|i| i as i128 * (-10i128).pow(i - 1))
            .sum::<i128>();
        let c = remark_boundary(22, 10).unwrap();
        assert_eq!(c.p0, BigInt::from(p0));
        assert_eq!(c.p1, BigInt::from(p1));
    }
}
