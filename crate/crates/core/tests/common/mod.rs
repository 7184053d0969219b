// Independent reference arithmetic on plain `(p, q)` fractions, shared by
// the integration tests.

#![allow(dead_code)]

use mvk::{ChainProduct, MvElement, Rational};

pub type Frac = (i64, i64);

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn norm((p, q): Frac) -> Frac {
    let g = gcd(p, q).max(1);
    let s = if q < 0 { -1 } else { 1 };
    (s * p / g, s * q / g)
}

pub fn add(a: Frac, b: Frac) -> Frac {
    norm((a.0 * b.1 + b.0 * a.1, a.1 * b.1))
}

pub fn sub(a: Frac, b: Frac) -> Frac {
    add(a, (-b.0, b.1))
}

pub fn lt(a: Frac, b: Frac) -> bool {
    a.0 * b.1 < b.0 * a.1
}

pub fn min(a: Frac, b: Frac) -> Frac {
    if lt(b, a) {
        b
    } else {
        a
    }
}

pub fn max(a: Frac, b: Frac) -> Frac {
    if lt(a, b) {
        b
    } else {
        a
    }
}

pub fn oplus(a: Frac, b: Frac) -> Frac {
    min((1, 1), add(a, b))
}

pub fn odot(a: Frac, b: Frac) -> Frac {
    max((0, 1), sub(add(a, b), (1, 1)))
}

pub fn neg(a: Frac) -> Frac {
    sub((1, 1), a)
}

/// The σ term evaluated step by step on [0, 1].
pub fn sigma(x: Frac) -> Frac {
    oplus(odot(x, oplus(x, x)), odot(x, x))
}

pub fn r((p, q): Frac) -> Rational {
    Rational::frac(p, q)
}

pub fn frac(v: &Rational) -> Frac {
    v.to_i64_parts().expect("small")
}

pub fn el(ds: &[u32], vals: &[Frac]) -> MvElement {
    let vs: Vec<Rational> = vals.iter().map(|&v| r(v)).collect();
    ChainProduct::new(ds.to_vec()).unwrap().element(&vs).unwrap()
}

pub fn fracs(e: &MvElement) -> Vec<Frac> {
    e.values().iter().map(frac).collect()
}
