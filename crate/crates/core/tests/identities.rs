//! Exhaustive identity checks over small ranges, each against an oracle that
//! does not share the code path under test.

use cyclocns::cns::{
    coeff_bounds_check, exhaustive_verify, petho_check, theorem1_sweep, DEFAULT_MAX_STEPS,
};
use cyclocns::cyclotomic::{
    base_polynomial, cyclotomic, divisors, euler_phi, factorize, power_reduction_holds,
};
use cyclocns::multind::{nagell_search, quartic_search, NagellSolution, QuarticSolution};
use cyclocns::IntPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed};

#[test]
fn cyclotomic_products_and_degrees() {
    for k in 1..=200u64 {
        let product = divisors(k)
            .into_iter()
            .fold(IntPoly::one(), |acc, d| &acc * &*cyclotomic(d));
        assert_eq!(product, IntPoly::x_pow_minus_one(k as usize), "k = {k}");
        assert_eq!(cyclotomic(k).degree(), Some(euler_phi(k) as usize));
        assert!(cyclotomic(k).is_monic());
    }
}

#[test]
fn cyclotomic_constant_terms() {
    for k in 2..=200u64 {
        let f = factorize(k);
        let expected = if f.len() == 1 { f[0].0 as i64 } else { 1 };
        assert!(cyclotomic(k).eval(&BigInt::from(0)).is_one(), "k = {k}");
        // the value at 1 is p for prime powers, else 1
        assert_eq!(
            cyclotomic(k).eval(&BigInt::one()),
            BigInt::from(expected),
            "k = {k}"
        );
    }
}

#[test]
fn power_reduction_everywhere() {
    for k in 2..=200 {
        assert!(power_reduction_holds(k), "k = {k}");
    }
}

#[test]
fn totient_by_counting() {
    for k in 1..=300u64 {
        let count = (1..=k).filter(|a| num_integer::gcd(*a, k) == 1).count() as u64;
        assert_eq!(euler_phi(k), count);
    }
}

/// Elementary symmetric functions of `m - zeta^a` over units `a` computed in
/// floating point, rounded, and compared with the shifted polynomial.
#[test]
fn shifted_coefficients_match_root_products() {
    for k in 3..=16u64 {
        for m in 1..=6u64 {
            let units: Vec<u64> = (1..k).filter(|a| num_integer::gcd(*a, k) == 1).collect();
            let mut e: Vec<(f64, f64)> = vec![(1.0, 0.0)];
            for a in &units {
                let theta = 2.0 * std::f64::consts::PI * (*a as f64) / (k as f64);
                let r = (m as f64 - theta.cos(), -theta.sin());
                let mut next = vec![(0.0, 0.0); e.len() + 1];
                for (i, c) in e.iter().enumerate() {
                    next[i].0 += c.0;
                    next[i].1 += c.1;
                    let prod = (c.0 * r.0 - c.1 * r.1, c.0 * r.1 + c.1 * r.0);
                    next[i + 1].0 += prod.0;
                    next[i + 1].1 += prod.1;
                }
                e = next;
            }
            let p = base_polynomial(k, m).unwrap();
            let phi = units.len();
            for (d, c) in e.iter().enumerate() {
                assert!(c.1.abs() < 1e-6);
                assert_eq!(
                    p.poly().coeff(phi - d),
                    BigInt::from(c.0.round() as i64),
                    "k={k} m={m} d={d}"
                );
            }
        }
    }
}

#[test]
fn base_coefficients_positive_above_threshold() {
    for k in 3..=60u64 {
        let phi = euler_phi(k);
        for m in phi + 1..=phi + 5 {
            let b = base_polynomial(k, m).unwrap();
            assert!(
                b.poly().coeffs().iter().all(|c| c.is_positive()),
                "k={k} m={m}"
            );
        }
    }
}

#[test]
fn criterion_holds_at_desk_scale() {
    for k in 3..=30u64 {
        let phi = euler_phi(k);
        for m in phi + 1..=phi + 10 {
            let b = base_polynomial(k, m).unwrap();
            let r = petho_check(b.poly()).unwrap();
            assert!(r.passed, "k={k} m={m}: {:?}", r.first_violation);
            assert!(
                b.poly().coeff(1) <= b.poly().coeff(0),
                "case 2 at k={k} m={m}"
            );
            assert!(coeff_bounds_check(k, m).unwrap(), "bounds at k={k} m={m}");
        }
    }
}

#[test]
fn criterion_is_sound_on_small_boxes() {
    // Every monic polynomial of degree <= 2 with small coefficients that
    // passes the criterion also expands every element of the radius-2 box.
    for d in 1..=2usize {
        let side = 9i64;
        let total = side.pow(d as u32);
        for idx in 0..total {
            let mut c: Vec<i64> = (0..d)
                .map(|i| (idx / side.pow(i as u32)) % side - 4)
                .collect();
            c.push(1);
            let p = IntPoly::from_i64s(&c);
            if !petho_check(&p).unwrap().passed {
                continue;
            }
            let basis = cyclocns::CnsBasis::from_poly(p.clone()).unwrap();
            let r = exhaustive_verify(&basis, 2, DEFAULT_MAX_STEPS).unwrap();
            assert!(r.all_terminated, "{p}");
        }
    }
    for (k, m) in [(5u64, 5u64), (8, 5), (10, 5), (12, 5)] {
        let b = base_polynomial(k, m).unwrap();
        assert!(petho_check(b.poly()).unwrap().passed);
        assert!(
            exhaustive_verify(&b, 2, DEFAULT_MAX_STEPS)
                .unwrap()
                .all_terminated
        );
    }
}

#[test]
fn full_sweep_counts() {
    let s = theorem1_sweep(26, 19);
    assert_eq!(s.pair_count(), 300);
    assert_eq!(s.pass_count(), 300);
    assert!(s.entries.iter().all(|e| e.case2_ok));
    // phi(k) >= 19 leaves no admissible m <= 19
    assert!(s.entries.iter().all(|e| e.phi <= 18));
}

/// Enumerate y^q directly and compare against the repunit values.
#[test]
fn nagell_against_power_enumeration() {
    let (x_max, k_max) = (30u128, 10u32);
    let mut expected = Vec::new();
    for x in 2..=x_max {
        for k in 3..=k_max {
            let v = (x.pow(k) - 1) / (x - 1);
            let mut q = 2u32;
            while 2u128.pow(q) <= v {
                let mut y = 2u128;
                while y.pow(q) < v {
                    y += 1;
                }
                if y.pow(q) == v {
                    expected.push(NagellSolution {
                        x: x as u64,
                        y: BigInt::from(y),
                        k: k as u64,
                        q: q as u64,
                    });
                }
                q += 1;
            }
        }
    }
    expected.sort();
    let mut got = nagell_search(x_max as u64, k_max as u64, 64);
    got.sort();
    assert_eq!(got, expected);
    assert!(got.iter().all(NagellSolution::holds));
}

/// Walk `Y^q` upwards and test `4 Y^q - 3` for an odd square root.
#[test]
fn quartic_against_power_enumeration() {
    let x_max = 100_000u64;
    let q_max = 50u32;
    let limit = (x_max as u128 * x_max as u128).div_ceil(4);
    let mut expected = Vec::new();
    for q in 2..=q_max {
        let mut y = 2u128;
        while let Some(v) = y.checked_pow(q).filter(|v| *v <= limit) {
            let w = 4 * v - 3;
            let r = (w as f64).sqrt() as u128;
            let r = (r.saturating_sub(2)..=r + 2).find(|s| s * s == w);
            if let Some(x) = r {
                expected.push(QuarticSolution {
                    x: x as u64,
                    y: y as u64,
                    q,
                });
            }
            y += 1;
        }
    }
    let mut got: Vec<_> = quartic_search(x_max, q_max)
        .into_iter()
        .filter(|s| !s.is_trivial())
        .collect();
    got.sort();
    expected.sort();
    assert_eq!(got, expected);
    assert_eq!(got, vec![QuarticSolution { x: 37, y: 7, q: 3 }]);
}
