//! Heuristic polynomial gcd over Z (evaluate at a large integer, take the
//! integer gcd, reconstruct in the symmetric ξ-adic base, verify by trial
//! division). Used as a fast path in front of the Euclidean gcd over Q.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Poly, Rational};

const ATTEMPTS: usize = 6;
const MAX_XI_BITS: u64 = 4096;

/// Integer polynomial, constant term first, no trailing zeros.
type IntPoly = Vec<BigInt>;

/// Primitive integer polynomial with the same roots as `p` (positive
/// leading coefficient). `p` must be nonzero.
fn primitive_part(p: &Poly) -> IntPoly {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: IntPoly = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let neg = ints.last().is_some_and(|c| c.sign() == Sign::Minus);
    for c in &mut ints {
        *c /= &content;
        if neg {
            *c = -&*c;
        }
    }
    ints
}

fn eval(p: &IntPoly, x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Digits of `h` in base `xi` using the symmetric residue range.
fn interpolate(mut h: BigInt, xi: &BigInt) -> IntPoly {
    let half = xi / 2;
    let mut out = Vec::new();
    while !h.is_zero() {
        let mut c = h.mod_floor(xi);
        if c > half {
            c -= xi;
        }
        h = (&h - &c) / xi;
        out.push(c);
    }
    out
}

fn content(p: &IntPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// True when `d` divides `f` in Z[t].
fn divides(d: &IntPoly, f: &IntPoly) -> bool {
    let Some(lc) = d.last() else { return false };
    if d.len() > f.len() {
        return false;
    }
    let mut rem = f.clone();
    let dd = d.len() - 1;
    for k in (0..=rem.len() - d.len()).rev() {
        let top = &rem[k + dd];
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lc);
        if !r.is_zero() {
            return false;
        }
        for (j, c) in d.iter().enumerate() {
            rem[k + j] -= &q * c;
        }
    }
    rem.iter().all(Zero::is_zero)
}

/// Monic gcd of two nonzero polynomials, or `None` when the heuristic gives up.
pub(super) fn heuristic_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let pa = primitive_part(a);
    let pb = primitive_part(b);
    let max_abs = |p: &IntPoly| p.iter().map(|c| c.abs()).max().unwrap_or_default();
    let bound = max_abs(&pa).min(max_abs(&pb));
    let mut xi: BigInt = bound * 2 + 29;
    for _ in 0..ATTEMPTS {
        if xi.bits() > MAX_XI_BITS {
            return None;
        }
        let h = eval(&pa, &xi).gcd(&eval(&pb, &xi));
        if !h.is_zero() {
            let mut g = interpolate(h, &xi);
            let c = content(&g);
            if !c.is_zero() {
                for x in &mut g {
                    *x /= &c;
                }
                if divides(&g, &pa) && divides(&g, &pb) {
                    let coeffs = g.into_iter().map(Rational::from_integer).collect();
                    return Some(Poly::from_coeffs(coeffs).monic());
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}
