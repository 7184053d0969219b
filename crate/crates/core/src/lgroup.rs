//! Simplicial unital ℓ-groups `(ℤ^m, u)` and the Γ correspondence with finite
//! products of chains.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::mv::{ChainProduct, MvElement};
use crate::rational::Rational;

/// `ℤ^m` ordered coordinatewise, with strong unit `u = (d_1, …, d_m)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnitalLGroup {
    algebra: ChainProduct,
}

impl UnitalLGroup {
    pub fn new(unit: Vec<u32>) -> Result<Self> {
        if unit.is_empty() {
            return Err(Error::EmptyProduct);
        }
        if unit.contains(&0) {
            return Err(Error::BadUnit(0));
        }
        Ok(UnitalLGroup {
            algebra: ChainProduct::new(unit).expect("unit validated"),
        })
    }

    pub fn from_i64s(unit: &[i64]) -> Result<Self> {
        let u = unit
            .iter()
            .map(|&d| u32::try_from(d).ok().filter(|&d| d > 0).ok_or(Error::BadUnit(d)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(u)
    }

    pub fn unit(&self) -> &[u32] {
        self.algebra.denominators()
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn element(&self, coords: Vec<i64>) -> Result<LGroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::ArityMismatch {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        Ok(LGroupElement {
            group: self.clone(),
            coords,
        })
    }

    pub fn zero(&self) -> LGroupElement {
        LGroupElement {
            group: self.clone(),
            coords: vec![0; self.rank()],
        }
    }

    pub fn unit_element(&self) -> LGroupElement {
        LGroupElement {
            group: self.clone(),
            coords: self.unit().iter().map(|&d| i64::from(d)).collect(),
        }
    }

    /// Γ(G, u): the unit interval `[0, u]` as an MV-algebra.
    pub fn gamma(&self) -> ChainProduct {
        self.algebra.clone()
    }

    /// Inverse of Γ on objects.
    pub fn of_algebra(alg: &ChainProduct) -> Self {
        UnitalLGroup {
            algebra: alg.clone(),
        }
    }

    pub fn to_mv(&self, g: &LGroupElement) -> Result<MvElement> {
        self.check(g)?;
        if !g.in_unit_interval() {
            return Err(Error::OutsideGroupUnitInterval(g.to_string()));
        }
        self.gamma()
            .element_from_numerators(g.coords.iter().map(|&c| c as u32).collect())
    }

    pub fn from_mv(&self, a: &MvElement) -> Result<LGroupElement> {
        a.same_algebra(&self.gamma().zero())?;
        Ok(LGroupElement {
            group: self.clone(),
            coords: a.numerators().iter().map(|&k| i64::from(k)).collect(),
        })
    }

    fn check(&self, g: &LGroupElement) -> Result<()> {
        if &g.group == self {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.to_string(),
                right: g.group.to_string(),
            })
        }
    }
}

impl fmt::Display for UnitalLGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(ℤ^{}, u={:?})", self.rank(), self.unit())
    }
}

impl fmt::Debug for UnitalLGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LGroupElement {
    group: UnitalLGroup,
    coords: Vec<i64>,
}

impl LGroupElement {
    pub fn group(&self) -> &UnitalLGroup {
        &self.group
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn in_unit_interval(&self) -> bool {
        self.coords
            .iter()
            .zip(self.group.unit().iter())
            .all(|(&c, &d)| (0..=i64::from(d)).contains(&c))
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.coords.iter().zip(other.coords.iter()).all(|(a, b)| a <= b)
    }

    fn zip(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        LGroupElement {
            group: self.group.clone(),
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.group.check(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.group.check(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    pub fn scale(&self, n: i64) -> Self {
        LGroupElement {
            group: self.group.clone(),
            coords: self.coords.iter().map(|&c| c * n).collect(),
        }
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.group.check(other)?;
        Ok(self.zip(other, i64::max))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.group.check(other)?;
        Ok(self.zip(other, i64::min))
    }
}

impl fmt::Display for LGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl fmt::Debug for LGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.group)
    }
}

/// `x_1, x_2, …` in the unit interval with `x_i ⊕ x_{i+1} = x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodSequence {
    pub group: UnitalLGroup,
    pub entries: Vec<MvElement>,
}

impl GoodSequence {
    pub fn is_absorbing(&self) -> bool {
        self.entries
            .windows(2)
            .all(|w| w[0].oplus(&w[1]).map(|s| s == w[0]).unwrap_or(false))
    }

    /// Sum of the entries as group elements.
    pub fn sum(&self) -> LGroupElement {
        self.entries.iter().fold(self.group.zero(), |acc, x| {
            acc.add(&self.group.from_mv(x).expect("entry in Γ"))
                .expect("same group")
        })
    }

    /// Entry `i`, or 0 past the end.
    pub fn entry(&self, i: usize) -> MvElement {
        self.entries
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.group.gamma().zero())
    }

    /// Drops trailing zeros.
    pub fn trimmed(&self) -> GoodSequence {
        let mut entries = self.entries.clone();
        while entries.last().is_some_and(|e| e.is_zero()) {
            entries.pop();
        }
        GoodSequence {
            group: self.group.clone(),
            entries,
        }
    }
}

/// `x_i = ((h − (i−1)u) ∨ 0) ∧ u` for `i = 1, 2, …` until the entry is 0.
pub fn good_sequence_of(h: &LGroupElement) -> Result<GoodSequence> {
    if let Some(i) = h.coords.iter().position(|&c| c < 0) {
        return Err(Error::NegativeElement(i));
    }
    let group = h.group.clone();
    let u = group.unit_element();
    let zero = group.zero();
    let mut entries = Vec::new();
    let mut rest = h.clone();
    loop {
        let x = rest.join(&zero)?.meet(&u)?;
        if x.coords.iter().all(|&c| c == 0) {
            break;
        }
        entries.push(group.to_mv(&x)?);
        rest = rest.sub(&u)?;
    }
    Ok(GoodSequence { group, entries })
}

/// General comparability certificate for a pair `h, k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparabilitySplit {
    /// Coordinates with `h_i ≤ k_i`.
    pub below: BTreeSet<usize>,
    /// Coordinates with `h_i > k_i`.
    pub above: BTreeSet<usize>,
    /// Boolean element with zeroset `below`.
    pub e_below: MvElement,
    /// Boolean element with zeroset `above`.
    pub e_above: MvElement,
    /// Multiple of the unit added to both arguments to make them nonnegative.
    pub shift: i64,
}

/// Least `n ≥ 0` with `h + n·u ≥ 0` and `k + n·u ≥ 0`.
fn nonnegative_shift(h: &LGroupElement, k: &LGroupElement) -> i64 {
    h.coords
        .iter()
        .zip(k.coords.iter())
        .zip(h.group.unit().iter())
        .map(|((&a, &b), &d)| {
            let low = a.min(b);
            if low >= 0 {
                0
            } else {
                (-low + i64::from(d) - 1) / i64::from(d)
            }
        })
        .max()
        .unwrap_or(0)
}

/// Splits the coordinates so `h ≤ k` on one factor and `h > k` on the other.
///
/// After shifting both arguments into the positive cone, the comparison at
/// each coordinate is read off the good sequences: `h_N ≤ k_N` iff every entry
/// of the good sequence of `h` is ≤ the matching entry for `k` at `N`.
pub fn comparability_split(h: &LGroupElement, k: &LGroupElement) -> Result<ComparabilitySplit> {
    h.group.check(k)?;
    let group = &h.group;
    let shift = nonnegative_shift(h, k);
    let unit = group.unit();
    let lift = |c: i64, n: usize| c + shift * i64::from(unit[n]);
    let len = (0..group.rank())
        .map(|n| {
            let top = lift(h.coords[n], n).max(lift(k.coords[n], n));
            (top as usize).div_ceil(unit[n] as usize)
        })
        .max()
        .unwrap_or(0);
    let below: BTreeSet<usize> = (0..group.rank())
        .filter(|&n| entrywise_leq(lift(h.coords[n], n), lift(k.coords[n], n), unit[n], len))
        .collect();
    let above: BTreeSet<usize> = (0..group.rank()).filter(|n| !below.contains(n)).collect();
    let alg = group.gamma();
    Ok(ComparabilitySplit {
        e_below: alg.boolean(|i| !below.contains(&i)),
        e_above: alg.boolean(|i| !above.contains(&i)),
        below,
        above,
        shift,
    })
}

/// Coordinate `n` of good-sequence entry `i` for `h_n ≥ 0`.
fn good_entry(h: i64, d: u32, i: usize) -> i64 {
    (h - i as i64 * i64::from(d)).clamp(0, i64::from(d))
}

fn entrywise_leq(h: i64, k: i64, d: u32, len: usize) -> bool {
    (0..len).all(|i| good_entry(h, d, i) <= good_entry(k, d, i))
}

/// For `h, k ≥ 0`: at every coordinate, `h_N ≤ k_N` iff the zero-padded good
/// sequences compare entrywise at `N`.
pub fn good_sequence_order_test(h: &LGroupElement, k: &LGroupElement) -> Result<bool> {
    h.group.check(k)?;
    let hs = good_sequence_of(h)?;
    let ks = good_sequence_of(k)?;
    let len = hs.entries.len().max(ks.entries.len());
    Ok((0..h.group.rank()).all(|n| {
        let direct = h.coords[n] <= k.coords[n];
        let entrywise =
            (0..len).all(|i| hs.entry(i).numerators()[n] <= ks.entry(i).numerators()[n]);
        direct == entrywise
    }))
}

/// The extremal state `g ↦ g_i / d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalState {
    group: UnitalLGroup,
    coordinate: usize,
}

impl ExtremalState {
    pub fn new(group: &UnitalLGroup, coordinate: usize) -> Result<Self> {
        if coordinate >= group.rank() {
            return Err(Error::CoordinateOutOfRange {
                index: coordinate,
                rank: group.rank(),
            });
        }
        Ok(ExtremalState {
            group: group.clone(),
            coordinate,
        })
    }

    pub fn coordinate(&self) -> usize {
        self.coordinate
    }

    pub fn value(&self, g: &LGroupElement) -> Result<Rational> {
        self.group.check(g)?;
        Ok(Rational::frac(
            g.coords[self.coordinate],
            i64::from(self.group.unit()[self.coordinate]),
        ))
    }

    /// Positive generator of the image subgroup, from the images of the
    /// standard basis.
    pub fn image_generator(&self) -> Rational {
        (0..self.group.rank())
            .map(|j| {
                let mut e = vec![0; self.group.rank()];
                e[j] = 1;
                self.value(&self.group.element(e).expect("arity")).expect("same group")
            })
            .fold(Rational::zero(), |acc, v| acc.gcd(&v))
    }

    /// The image is cyclic with generator `1/d_i`: every basis image is an
    /// integer multiple of the computed generator, and the generator is `1/d_i`.
    pub fn is_discrete(&self) -> bool {
        let g = self.image_generator();
        if g.is_zero() {
            return false;
        }
        let multiples = (0..self.group.rank()).all(|j| {
            let mut e = vec![0; self.group.rank()];
            e[j] = 1;
            let v = self.value(&self.group.element(e).expect("arity")).expect("same group");
            (v / g.clone()).is_integer()
        });
        multiples && g == Rational::frac(1, i64::from(self.group.unit()[self.coordinate]))
    }
}
