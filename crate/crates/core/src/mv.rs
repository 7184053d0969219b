//! Finite products of Łukasiewicz chains and their elements.
//!
//! An element of `Ł_{d_1} × … × Ł_{d_m}` is stored as its vector of numerators
//! `k_i` with value `k_i / d_i`; all operations are integer operations on these
//! numerators and therefore exact.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::term::{MvOps, Term};

/// The chain `Ł_d = {0, 1/d, …, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    denominator: u32,
}

impl Chain {
    pub fn new(denominator: u32) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::ChainDenominator(0));
        }
        Ok(Chain { denominator })
    }

    pub fn denominator(self) -> u32 {
        self.denominator
    }

    pub fn len(self) -> u64 {
        u64::from(self.denominator) + 1
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, v: &Rational) -> bool {
        v.in_unit_interval() && v.scaled_integer(self.denominator).is_some()
    }

    pub fn values(self) -> impl Iterator<Item = Rational> {
        let d = i64::from(self.denominator);
        (0..=d).map(move |k| Rational::frac(k, d))
    }
}

/// `Ł_{d_1} × … × Ł_{d_m}`, m ≥ 1, every d_i ≥ 1.
///
/// Cloning is cheap; elements hold a clone of the algebra they live in.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainProduct {
    denominators: Arc<[u32]>,
}

impl ChainProduct {
    pub fn new(denominators: Vec<u32>) -> Result<Self> {
        if denominators.is_empty() {
            return Err(Error::EmptyProduct);
        }
        if denominators.contains(&0) {
            return Err(Error::ChainDenominator(0));
        }
        Ok(ChainProduct {
            denominators: denominators.into(),
        })
    }

    pub fn chain(denominator: u32) -> Result<Self> {
        Self::new(vec![denominator])
    }

    /// Checked constructor for values coming from untyped sources.
    pub fn from_i64s(denominators: &[i64]) -> Result<Self> {
        let ds = denominators
            .iter()
            .map(|&d| u32::try_from(d).ok().filter(|&d| d > 0).ok_or(Error::ChainDenominator(d)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ds)
    }

    pub fn denominators(&self) -> &[u32] {
        &self.denominators
    }

    pub fn rank(&self) -> usize {
        self.denominators.len()
    }

    pub fn factor(&self, i: usize) -> Chain {
        Chain {
            denominator: self.denominators[i],
        }
    }

    pub fn max_denominator(&self) -> u32 {
        self.denominators.iter().copied().max().unwrap_or(1)
    }

    /// `∏ (d_i + 1)`, saturating at `u64::MAX`.
    pub fn carrier_size(&self) -> u64 {
        self.denominators
            .iter()
            .fold(1u64, |acc, &d| acc.saturating_mul(u64::from(d) + 1))
    }

    /// Number of boolean elements, `2^m` (saturating).
    pub fn boolean_count(&self) -> u64 {
        1u64.checked_shl(self.rank() as u32).unwrap_or(u64::MAX)
    }

    pub fn zero(&self) -> MvElement {
        MvElement {
            algebra: self.clone(),
            numerators: vec![0; self.rank()],
        }
    }

    pub fn one(&self) -> MvElement {
        MvElement {
            algebra: self.clone(),
            numerators: self.denominators.to_vec(),
        }
    }

    /// Element with coordinates `k_i / d_i`.
    pub fn element_from_numerators(&self, numerators: Vec<u32>) -> Result<MvElement> {
        if numerators.len() != self.rank() {
            return Err(Error::ArityMismatch {
                expected: self.rank(),
                found: numerators.len(),
            });
        }
        for (i, (&k, &d)) in numerators.iter().zip(self.denominators.iter()).enumerate() {
            if k > d {
                return Err(Error::NotInCarrier {
                    coordinate: i,
                    value: format!("{k}/{d}"),
                    denominator: d,
                });
            }
        }
        Ok(MvElement {
            algebra: self.clone(),
            numerators,
        })
    }

    pub fn element(&self, values: &[Rational]) -> Result<MvElement> {
        if values.len() != self.rank() {
            return Err(Error::ArityMismatch {
                expected: self.rank(),
                found: values.len(),
            });
        }
        let numerators = values
            .iter()
            .zip(self.denominators.iter())
            .enumerate()
            .map(|(i, (v, &d))| {
                v.scaled_integer(d)
                    .filter(|&k| (0..=i64::from(d)).contains(&k))
                    .map(|k| k as u32)
                    .ok_or_else(|| Error::NotInCarrier {
                        coordinate: i,
                        value: v.to_string(),
                        denominator: d,
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MvElement {
            algebra: self.clone(),
            numerators,
        })
    }

    /// The boolean element that is 1 exactly on the coordinates where `mask`
    /// is true.
    pub fn boolean(&self, mask: impl Fn(usize) -> bool) -> MvElement {
        let numerators = (0..self.rank())
            .map(|i| if mask(i) { self.denominators[i] } else { 0 })
            .collect();
        MvElement {
            algebra: self.clone(),
            numerators,
        }
    }

    /// All elements, lexicographic in the numerators (last coordinate fastest).
    pub fn elements(&self) -> Elements {
        Elements {
            algebra: self.clone(),
            next: Some(vec![0; self.rank()]),
        }
    }

    /// All `2^m` boolean elements, ordered by the bitmask of coordinates set to 1
    /// (bit i ↔ coordinate i).
    pub fn booleans(&self) -> impl Iterator<Item = MvElement> + '_ {
        let m = self.rank();
        assert!(m < 64, "boolean enumeration limited to rank < 64");
        (0..(1u64 << m)).map(move |bits| self.boolean(|i| bits >> i & 1 == 1))
    }

    fn check_same(&self, other: &ChainProduct) -> Result<()> {
        if Arc::ptr_eq(&self.denominators, &other.denominators) || self == other {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for ChainProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.denominators.iter().enumerate() {
            if i > 0 {
                write!(f, "×")?;
            }
            write!(f, "Ł_{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ChainProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainProduct({self})")
    }
}

pub struct Elements {
    algebra: ChainProduct,
    next: Option<Vec<u32>>,
}

impl Iterator for Elements {
    type Item = MvElement;

    fn next(&mut self) -> Option<MvElement> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let ds = self.algebra.denominators();
        let mut i = succ.len();
        let mut carried = true;
        while carried && i > 0 {
            i -= 1;
            if succ[i] < ds[i] {
                succ[i] += 1;
                carried = false;
            } else {
                succ[i] = 0;
            }
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(MvElement {
            algebra: self.algebra.clone(),
            numerators: current,
        })
    }
}

/// An element of a [`ChainProduct`]: its vector of dimension-map values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MvElement {
    algebra: ChainProduct,
    numerators: Vec<u32>,
}

impl PartialOrd for MvElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on (algebra, numerators); used only for stable output order.
impl Ord for MvElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.algebra
            .cmp(&other.algebra)
            .then_with(|| self.numerators.cmp(&other.numerators))
    }
}

impl MvElement {
    pub fn algebra(&self) -> &ChainProduct {
        &self.algebra
    }

    pub fn numerators(&self) -> &[u32] {
        &self.numerators
    }

    pub fn rank(&self) -> usize {
        self.numerators.len()
    }

    pub fn value(&self, i: usize) -> Rational {
        Rational::frac(
            i64::from(self.numerators[i]),
            i64::from(self.algebra.denominators[i]),
        )
    }

    pub fn values(&self) -> Vec<Rational> {
        (0..self.rank()).map(|i| self.value(i)).collect()
    }

    /// Position of this element in [`ChainProduct::elements`] order.
    pub fn index(&self) -> usize {
        self.numerators
            .iter()
            .zip(self.algebra.denominators.iter())
            .fold(0usize, |acc, (&k, &d)| acc * (d as usize + 1) + k as usize)
    }

    fn zip_with(&self, other: &MvElement, f: impl Fn(u32, u32, u32) -> u32) -> MvElement {
        debug_assert_eq!(self.algebra.denominators, other.algebra.denominators);
        let numerators = self
            .numerators
            .iter()
            .zip(other.numerators.iter())
            .zip(self.algebra.denominators.iter())
            .map(|((&a, &b), &d)| f(a, b, d))
            .collect();
        MvElement {
            algebra: self.algebra.clone(),
            numerators,
        }
    }

    fn map(&self, f: impl Fn(u32, u32) -> u32) -> MvElement {
        let numerators = self
            .numerators
            .iter()
            .zip(self.algebra.denominators.iter())
            .map(|(&a, &d)| f(a, d))
            .collect();
        MvElement {
            algebra: self.algebra.clone(),
            numerators,
        }
    }

    pub fn same_algebra(&self, other: &MvElement) -> Result<()> {
        self.algebra.check_same(&other.algebra)
    }

    /// `min(1, a_i + b_i)` coordinatewise.
    pub fn oplus(&self, other: &MvElement) -> Result<MvElement> {
        self.same_algebra(other)?;
        Ok(self.oplus_unchecked(other))
    }

    pub(crate) fn oplus_unchecked(&self, other: &MvElement) -> MvElement {
        self.zip_with(other, |a, b, d| (a + b).min(d))
    }

    /// `1 - a_i` coordinatewise.
    pub fn neg(&self) -> MvElement {
        self.map(|a, d| d - a)
    }

    /// `max(0, a_i + b_i - 1)` coordinatewise, i.e. `¬(¬a ⊕ ¬b)`.
    pub fn odot(&self, other: &MvElement) -> Result<MvElement> {
        self.same_algebra(other)?;
        Ok(self.zip_with(other, |a, b, d| (a + b).saturating_sub(d)))
    }

    pub fn join(&self, other: &MvElement) -> Result<MvElement> {
        self.same_algebra(other)?;
        Ok(self.zip_with(other, |a, b, _| a.max(b)))
    }

    pub fn meet(&self, other: &MvElement) -> Result<MvElement> {
        self.same_algebra(other)?;
        Ok(self.zip_with(other, |a, b, _| a.min(b)))
    }

    /// `¬a ⊕ b = 1`.
    pub fn natural_leq(&self, other: &MvElement) -> Result<bool> {
        self.same_algebra(other)?;
        Ok(self.neg().oplus_unchecked(other).is_one())
    }

    /// Chang distance `(a ⊙ ¬b) ⊕ (b ⊙ ¬a)`.
    pub fn chang_distance(&self, other: &MvElement) -> Result<MvElement> {
        let left = self.odot(&other.neg())?;
        let right = other.odot(&self.neg())?;
        left.oplus(&right)
    }

    pub fn apply_term(&self, term: &Term) -> MvElement {
        term.apply(self)
    }

    pub fn is_zero(&self) -> bool {
        self.numerators.iter().all(|&k| k == 0)
    }

    pub fn is_one(&self) -> bool {
        self.numerators == *self.algebra.denominators
    }

    /// `a ⊕ a = a`.
    pub fn is_boolean(&self) -> bool {
        self.oplus_unchecked(self) == *self
    }

    /// `a ∧ ¬a = 0`.
    pub fn is_characteristic(&self) -> bool {
        self.zip_with(&self.neg(), |a, b, _| a.min(b)).is_zero()
    }

    /// Coordinate `i` compared with its own negation: `Less` when `a_i < ¬a_i`.
    pub fn side_of_half(&self, i: usize) -> Ordering {
        (2 * self.numerators[i]).cmp(&self.algebra.denominators[i])
    }

    /// `a_i == 1/2`.
    pub fn is_half_at(&self, i: usize) -> bool {
        self.side_of_half(i) == Ordering::Equal
    }
}

impl MvOps for MvElement {
    fn mv_neg(&self) -> Self {
        self.neg()
    }

    /// Terms only ever combine elements of one algebra.
    fn mv_oplus(&self, other: &Self) -> Self {
        self.oplus_unchecked(other)
    }
}

/// The standard MV-algebra on [0,1].
impl MvOps for Rational {
    fn mv_neg(&self) -> Self {
        Rational::one() - self
    }

    fn mv_oplus(&self, other: &Self) -> Self {
        (self + other).min(Rational::one())
    }
}

fn compact(k: u32, d: u32) -> String {
    let g = gcd(k, d);
    let (k, d) = (k / g, d / g);
    if d == 1 {
        k.to_string()
    } else {
        format!("{k}/{d}")
    }
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Single coordinates print bare (`2/5`), tuples in parentheses (`(1/2,0)`).
impl fmt::Display for MvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .numerators
            .iter()
            .zip(self.algebra.denominators.iter())
            .map(|(&k, &d)| compact(k, d))
            .collect();
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join(","))
        }
    }
}

impl fmt::Debug for MvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.algebra)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(ds: &[u32], vals: &[(i64, i64)]) -> MvElement {
        let alg = ChainProduct::new(ds.to_vec()).unwrap();
        let vals: Vec<Rational> = vals.iter().map(|&(p, q)| Rational::frac(p, q)).collect();
        alg.element(&vals).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(ChainProduct::new(vec![]), Err(Error::EmptyProduct));
        assert!(ChainProduct::new(vec![2, 0]).is_err());
        let alg = ChainProduct::new(vec![2, 3]).unwrap();
        assert!(matches!(
            alg.element(&[Rational::frac(1, 3), Rational::zero()]),
            Err(Error::NotInCarrier { coordinate: 0, .. })
        ));
        assert!(matches!(
            alg.element(&[Rational::zero()]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(alg.element_from_numerators(vec![3, 0]).is_err());
    }

    #[test]
    fn oplus_examples() {
        let h = el(&[2], &[(1, 2)]);
        assert!(h.oplus(&h).unwrap().is_one());
        let a = el(&[3, 2], &[(1, 3), (1, 2)]);
        assert_eq!(a.oplus(&a).unwrap(), el(&[3, 2], &[(2, 3), (1, 1)]));
        assert_eq!(a.oplus(&a.algebra().zero()).unwrap(), a);
    }

    #[test]
    fn neg_examples() {
        let alg = ChainProduct::chain(3).unwrap();
        assert!(alg.zero().neg().is_one());
        assert_eq!(el(&[3], &[(1, 3)]).neg(), el(&[3], &[(2, 3)]));
        let a = el(&[3, 2], &[(1, 3), (1, 2)]);
        assert_eq!(a.neg().neg(), a);
    }

    #[test]
    fn derived_operations() {
        let h = el(&[2], &[(1, 2)]);
        assert!(h.odot(&h).unwrap().is_zero());
        let a = el(&[5], &[(2, 5)]);
        let b = el(&[5], &[(3, 5)]);
        assert_eq!(a.join(&b).unwrap(), b);
        assert_eq!(a.meet(&b).unwrap(), a);
        assert_eq!(a.join(&a.algebra().zero()).unwrap(), a);
    }

    #[test]
    fn order_and_distance() {
        let x = el(&[3, 3], &[(1, 3), (2, 3)]);
        let y = el(&[3, 3], &[(2, 3), (1, 3)]);
        assert!(!x.natural_leq(&y).unwrap());
        assert!(x.natural_leq(&x).unwrap());
        assert!(x.algebra().zero().natural_leq(&x).unwrap());
        let a = el(&[4], &[(1, 4)]);
        let b = el(&[4], &[(3, 4)]);
        assert_eq!(a.chang_distance(&b).unwrap(), el(&[4], &[(1, 2)]));
        assert!(a.chang_distance(&a).unwrap().is_zero());
        let alg = a.algebra();
        assert!(alg.zero().chang_distance(&alg.one()).unwrap().is_one());
    }

    #[test]
    fn mismatch_is_rejected() {
        let a = el(&[2], &[(1, 2)]);
        let b = el(&[4], &[(1, 2)]);
        assert!(matches!(a.oplus(&b), Err(Error::AlgebraMismatch { .. })));
        assert!(a.natural_leq(&b).is_err());
    }

    #[test]
    fn sigma_on_elements() {
        let s = Term::sigma();
        assert_eq!(el(&[2], &[(1, 2)]).apply_term(&s), el(&[2], &[(1, 2)]));
        assert!(el(&[3], &[(1, 3)]).apply_term(&s).is_zero());
        let x = el(&[2, 3], &[(1, 2), (1, 3)]);
        assert_eq!(x.apply_term(&Term::var()), x);
    }

    #[test]
    fn boolean_and_characteristic() {
        let alg = ChainProduct::new(vec![3, 2]).unwrap();
        assert!(alg.zero().is_boolean());
        assert!(alg.one().is_characteristic());
        assert!(!el(&[2], &[(1, 2)]).is_boolean());
        assert!(!el(&[2], &[(1, 2)]).is_characteristic());
        assert!(el(&[3, 2], &[(1, 1), (0, 1)]).is_boolean());
    }

    #[test]
    fn enumeration_order_and_index() {
        let alg = ChainProduct::new(vec![1, 2]).unwrap();
        let all: Vec<MvElement> = alg.elements().collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[1].numerators(), &[0, 1]);
        for (i, e) in all.iter().enumerate() {
            assert_eq!(e.index(), i);
        }
        assert_eq!(alg.booleans().count(), 4);
    }

    #[test]
    fn display_is_compact() {
        assert_eq!(el(&[5], &[(2, 5)]).to_string(), "2/5");
        assert_eq!(el(&[2, 3], &[(1, 2), (0, 1)]).to_string(), "(1/2,0)");
        assert_eq!(el(&[4], &[(2, 4)]).to_string(), "1/2");
    }
}
