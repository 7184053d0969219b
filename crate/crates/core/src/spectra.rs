//! Spectra, ideals, the centripetal order `⊑`, and indicator constructions.
//!
//! In a finite product of chains every prime ideal is maximal and is the
//! kernel of one coordinate projection, so spectral questions reduce to
//! coordinate questions.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::mv::{ChainProduct, MvElement};
use crate::rational::Rational;

/// A prime (= maximal) ideal, named by the coordinate it projects onto.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectrumPoint(pub usize);

impl SpectrumPoint {
    pub fn index(self) -> usize {
        self.0
    }

    fn check(self, alg: &ChainProduct) -> Result<()> {
        if self.0 < alg.rank() {
            Ok(())
        } else {
            Err(Error::CoordinateOutOfRange {
                index: self.0,
                rank: alg.rank(),
            })
        }
    }
}

pub fn spectrum(alg: &ChainProduct) -> Vec<SpectrumPoint> {
    (0..alg.rank()).map(SpectrumPoint).collect()
}

/// The ideal `{a : a_i = 0 for all i ∈ Z}`.
///
/// `Z` is the vanishing set; the quotient by the ideal is `∏_{i∈Z} Ł_{d_i}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    algebra: ChainProduct,
    vanishing: BTreeSet<usize>,
}

impl Ideal {
    pub fn new(algebra: &ChainProduct, vanishing: impl IntoIterator<Item = usize>) -> Result<Self> {
        let vanishing: BTreeSet<usize> = vanishing.into_iter().collect();
        if let Some(&i) = vanishing.iter().find(|&&i| i >= algebra.rank()) {
            return Err(Error::CoordinateOutOfRange {
                index: i,
                rank: algebra.rank(),
            });
        }
        Ok(Ideal {
            algebra: algebra.clone(),
            vanishing,
        })
    }

    pub fn zero(algebra: &ChainProduct) -> Self {
        Ideal {
            algebra: algebra.clone(),
            vanishing: (0..algebra.rank()).collect(),
        }
    }

    pub fn algebra(&self) -> &ChainProduct {
        &self.algebra
    }

    pub fn vanishing_set(&self) -> &BTreeSet<usize> {
        &self.vanishing
    }

    pub fn contains(&self, a: &MvElement) -> bool {
        a.algebra() == &self.algebra && self.vanishing.iter().all(|&i| a.numerators()[i] == 0)
    }

    pub fn is_proper(&self) -> bool {
        !self.vanishing.is_empty()
    }

    /// Prime iff the quotient is a chain iff the vanishing set is one coordinate.
    pub fn is_prime(&self) -> bool {
        self.vanishing.len() == 1
    }

    /// `∏_{i∈Z} Ł_{d_i}`, or `None` for the improper ideal (trivial quotient).
    pub fn quotient_algebra(&self) -> Option<ChainProduct> {
        if self.vanishing.is_empty() {
            return None;
        }
        let ds = self
            .vanishing
            .iter()
            .map(|&i| self.algebra.denominators()[i])
            .collect();
        ChainProduct::new(ds).ok()
    }

    /// Image of `a` in the quotient.
    pub fn project(&self, a: &MvElement) -> Result<Option<MvElement>> {
        a.algebra()
            .eq(&self.algebra)
            .then_some(())
            .ok_or_else(|| Error::AlgebraMismatch {
                left: self.algebra.to_string(),
                right: a.algebra().to_string(),
            })?;
        Ok(self.quotient_algebra().map(|q| {
            let ks = self.vanishing.iter().map(|&i| a.numerators()[i]).collect();
            q.element_from_numerators(ks).expect("projection stays in carrier")
        }))
    }

    pub fn members(&self) -> Vec<MvElement> {
        self.algebra.elements().filter(|a| self.contains(a)).collect()
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal(Z={:?} in {})", self.vanishing, self.algebra)
    }
}

/// All `2^m` ideals, ordered by the bitmask of their vanishing set.
pub fn enumerate_ideals(alg: &ChainProduct) -> Vec<Ideal> {
    let m = alg.rank();
    assert!(m < 32, "ideal enumeration limited to rank < 32");
    (0..(1u64 << m))
        .map(|bits| Ideal {
            algebra: alg.clone(),
            vanishing: (0..m).filter(|i| bits >> i & 1 == 1).collect(),
        })
        .collect()
}

/// The image of `a` in the chain at `p`, as a real number in [0,1].
pub fn quotient(a: &MvElement, p: SpectrumPoint) -> Result<Rational> {
    p.check(a.algebra())?;
    Ok(a.value(p.index()))
}

/// One coordinate of `x ⊑ y`.
pub(crate) fn below_at(x: &MvElement, y: &MvElement, i: usize) -> bool {
    let (xi, yi) = (x.numerators()[i], y.numerators()[i]);
    match y.side_of_half(i) {
        Ordering::Less => xi <= yi,
        Ordering::Greater => xi >= yi,
        Ordering::Equal => true,
    }
}

/// `x ⊑ y`: at every prime where `y` is below its negation, `x ≤ y`; where `y`
/// is above its negation, `x ≥ y`. Primes where `y = ¬y` impose nothing.
pub fn below_order(x: &MvElement, y: &MvElement) -> Result<bool> {
    x.same_algebra(y)?;
    Ok((0..x.rank()).all(|i| below_at(x, y, i)))
}

/// No `y ≠ x` with `y ⊑ x`.
///
/// `⊑` is a product of per-coordinate relations, so a strictly smaller
/// element exists iff some coordinate admits a different value below `x_i`.
pub fn is_below_minimal(x: &MvElement) -> bool {
    let alg = x.algebra();
    (0..x.rank()).all(|i| {
        let xi = x.numerators()[i];
        let d = alg.denominators()[i];
        (0..=d).all(|v| {
            v == xi
                || !match x.side_of_half(i) {
                    Ordering::Less => v <= xi,
                    Ordering::Greater => v >= xi,
                    Ordering::Equal => true,
                }
        })
    })
}

/// The boolean element with zeroset exactly `w`.
pub fn zeroset_indicator(alg: &ChainProduct, w: &[SpectrumPoint]) -> Result<MvElement> {
    for p in w {
        p.check(alg)?;
    }
    let zeros: HashSet<usize> = w.iter().map(|p| p.index()).collect();
    Ok(alg.boolean(|i| !zeros.contains(&i)))
}

/// Coordinates where `a` vanishes.
pub fn zeroset(a: &MvElement) -> BTreeSet<usize> {
    (0..a.rank()).filter(|&i| a.numerators()[i] == 0).collect()
}

/// The boolean element whose zeroset is `{i : a_i = ρ}`.
pub fn level_set_indicator(a: &MvElement, rho: &Rational) -> Result<MvElement> {
    if !rho.in_unit_interval() {
        return Err(Error::OutsideUnitInterval(rho.to_string()));
    }
    Ok(a.algebra().boolean(|i| &a.value(i) != rho))
}

/// A boolean element that is 0 at `p` and 1 at `q`; every other coordinate is 1.
pub fn separating_element(
    alg: &ChainProduct,
    p: SpectrumPoint,
    q: SpectrumPoint,
) -> Result<MvElement> {
    p.check(alg)?;
    q.check(alg)?;
    if p == q {
        return Err(Error::SamePoint(p.index()));
    }
    Ok(alg.boolean(|i| i != p.index()))
}

/// The subalgebra generated by `gens`: closure of `gens ∪ {0}` under `¬`, `⊕`.
///
/// Returned sorted in enumeration order.
pub fn generated_subalgebra(alg: &ChainProduct, gens: &[MvElement]) -> Result<Vec<MvElement>> {
    for g in gens {
        g.same_algebra(&alg.zero())?;
    }
    let ds = alg.denominators();
    let index = |ks: &[u32]| -> u128 {
        ks.iter()
            .zip(ds)
            .fold(0u128, |acc, (&k, &d)| acc * (u128::from(d) + 1) + u128::from(k))
    };
    let mut seen: HashSet<u128> = HashSet::new();
    let mut members: Vec<Vec<u32>> = Vec::new();
    let mut frontier: Vec<Vec<u32>> = Vec::new();
    for g in std::iter::once(alg.zero()).chain(gens.iter().cloned()) {
        if seen.insert(index(g.numerators())) {
            frontier.push(g.numerators().to_vec());
        }
    }
    let mut scratch = vec![0u32; ds.len()];
    while let Some(x) = frontier.pop() {
        let neg: Vec<u32> = x.iter().zip(ds).map(|(&k, &d)| d - k).collect();
        if seen.insert(index(&neg)) {
            frontier.push(neg);
        }
        members.push(x);
        let x = members.last().expect("just pushed").clone();
        for y in &members {
            for ((s, (&a, &b)), &d) in scratch.iter_mut().zip(x.iter().zip(y)).zip(ds) {
                *s = (a + b).min(d);
            }
            if seen.insert(index(&scratch)) {
                frontier.push(scratch.clone());
            }
        }
    }
    members.sort();
    members
        .into_iter()
        .map(|ks| alg.element_from_numerators(ks))
        .collect()
}
