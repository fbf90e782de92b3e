use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// `gcd(content f, content g) * gcd(pp f, pp g)` with the primitive gcd taken
/// through a primitive pseudo-remainder sequence.
pub(super) fn gcd_z(f: &IntPoly, g: &IntPoly) -> Result<IntPoly> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::BothZero),
        (false, true) => return normalized(f),
        (true, false) => return normalized(g),
        _ => {}
    }
    let (cf, pf) = f.content_and_primitive()?;
    let (cg, pg) = g.content_and_primitive()?;
    let content = cf.gcd(&cg);
    Ok(primitive_gcd(pf, pg).scale(&content))
}

fn normalized(f: &IntPoly) -> Result<IntPoly> {
    let (c, p) = f.content_and_primitive()?;
    Ok(p.scale(&c.abs()))
}

fn primitive_gcd(f: IntPoly, g: IntPoly) -> IntPoly {
    let (mut a, mut b) = if f.degree() >= g.degree() {
        (f, g)
    } else {
        (g, f)
    };
    loop {
        if b.is_zero() {
            return a;
        }
        if b.degree() == Some(0) {
            return IntPoly::one();
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = if r.is_zero() {
            r
        } else {
            r.content_and_primitive().expect("nonzero").1
        };
    }
}

/// Remainder of `lc(b)^e * a` by `b` for some `e >= 0`; only its primitive
/// part is ever used.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree().expect("nonzero divisor");
    let lead = &b.coeffs[db];
    let mut rem: Vec<BigInt> = a.coeffs.clone();
    while rem.len() > db {
        let top = rem.len() - 1;
        let c = rem[top].clone();
        if !c.is_zero() {
            for x in rem.iter_mut() {
                *x *= lead;
            }
            let shift = top - db;
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[shift + j] -= &c * bj;
            }
        }
        debug_assert!(rem[top].is_zero());
        rem.pop();
    }
    IntPoly::new(rem)
}
