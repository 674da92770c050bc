#![allow(dead_code)]

use proptest::prelude::*;
use schwarzian_core::calculus::CoordMap;
use schwarzian_core::{Poly, RatFunc, RatMat};

pub fn poly_upto(deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-5i64..=5, 0..=deg + 1).prop_map(|cs| Poly::from_ints(&cs))
}

pub fn nonzero_poly_upto(deg: usize) -> impl Strategy<Value = Poly> {
    poly_upto(deg).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn ratfunc_upto(deg: usize) -> impl Strategy<Value = RatFunc> {
    (poly_upto(deg), nonzero_poly_upto(deg)).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

pub fn ratfunc() -> impl Strategy<Value = RatFunc> {
    ratfunc_upto(2)
}

pub fn nonzero_ratfunc() -> impl Strategy<Value = RatFunc> {
    ratfunc().prop_filter("nonzero", |f| !f.is_zero())
}

pub fn nonconstant() -> impl Strategy<Value = RatFunc> {
    ratfunc().prop_filter("nonconstant", |f| !f.is_constant())
}

pub fn ratmat2() -> impl Strategy<Value = RatMat> {
    prop::collection::vec(ratfunc(), 4)
        .prop_map(|es| RatMat::from_rows(vec![es[..2].to_vec(), es[2..].to_vec()]).unwrap())
}

pub fn invertible2() -> impl Strategy<Value = RatMat> {
    ratmat2().prop_filter("det != 0", |m| !m.det().is_zero())
}

/// Integer entries `(a, b, c, d)` with `ad - bc != 0`.
pub fn mobius_entries() -> impl Strategy<Value = [i64; 4]> {
    prop::array::uniform4(-5i64..=5).prop_filter("ad - bc != 0", |[a, b, c, d]| a * d - b * c != 0)
}

pub fn mobius_fn() -> impl Strategy<Value = RatFunc> {
    mobius_entries().prop_map(|[a, b, c, d]| RatFunc::new(Poly::from_ints(&[b, a]), Poly::from_ints(&[d, c])).unwrap())
}

pub fn mobius_map() -> impl Strategy<Value = CoordMap> {
    mobius_fn().prop_map(|f| CoordMap::new(f).unwrap())
}

pub fn coord_map() -> impl Strategy<Value = CoordMap> {
    nonconstant().prop_map(|f| CoordMap::new(f).unwrap())
}

pub fn t() -> RatFunc {
    RatFunc::var()
}

pub fn poly(cs: &[i64]) -> RatFunc {
    RatFunc::from_poly(Poly::from_ints(cs))
}

pub fn frac(num: &[i64], den: &[i64]) -> RatFunc {
    RatFunc::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
}
