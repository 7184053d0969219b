//! Exact one-variable piecewise-linear functions on [0,1].
//!
//! A [`PLFunction`] is a continuous function given by its breakpoints. When
//! every affine piece has integer slope and intercept it is a McNaughton
//! function, i.e. an element of the free one-generator MV-algebra; the
//! pointwise MV operations, composition and term application preserve that
//! property.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::term::{MvOps, Term};

/// Continuous PL map `[0,1] → [0,1]`, normalized: breakpoints strictly
/// increasing from 0 to 1, no collinear interior breakpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PLFunction {
    points: Vec<(Rational, Rational)>,
}

/// One affine piece `y = slope·x + intercept` on `[start, end]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub start: Rational,
    pub end: Rational,
    pub slope: Rational,
    pub intercept: Rational,
}

impl Piece {
    pub fn has_integer_coefficients(&self) -> bool {
        self.slope.is_integer() && self.intercept.is_integer()
    }
}

impl PLFunction {
    /// Validates shape and range, then normalizes.
    pub fn from_points(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::BadBreakpoints("need at least two breakpoints".into()));
        }
        if !points[0].0.is_zero() || !points[points.len() - 1].0.is_one() {
            return Err(Error::BadBreakpoints("breakpoints must start at 0 and end at 1".into()));
        }
        if let Some(w) = points.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::BadBreakpoints(format!(
                "abscissae must increase strictly ({} then {})",
                w[0].0, w[1].0
            )));
        }
        if let Some((x, y)) = points.iter().find(|(_, y)| !y.in_unit_interval()) {
            return Err(Error::BadBreakpoints(format!("value {y} at {x} is outside [0,1]")));
        }
        Ok(Self::normalized(points))
    }

    /// As [`from_points`](Self::from_points), additionally requiring integer
    /// slopes and intercepts.
    pub fn mcnaughton(points: Vec<(Rational, Rational)>) -> Result<Self> {
        let f = Self::from_points(points)?;
        match f.mcnaughton_violation() {
            None => Ok(f),
            Some(why) => Err(Error::NotMcNaughton(why)),
        }
    }

    fn normalized(points: Vec<(Rational, Rational)>) -> Self {
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
        for p in points {
            if let Some(last) = out.last() {
                if last.0 == p.0 {
                    continue;
                }
            }
            while out.len() >= 2 {
                let (x0, y0) = &out[out.len() - 2];
                let (x1, y1) = &out[out.len() - 1];
                let collinear = (y1 - y0) * (&p.0 - x0) == (&p.1 - y0) * (x1 - x0);
                if collinear {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        PLFunction { points: out }
    }

    /// The free generator `π₁(x) = x`.
    pub fn identity() -> Self {
        PLFunction {
            points: vec![(Rational::zero(), Rational::zero()), (Rational::one(), Rational::one())],
        }
    }

    pub fn constant(c: Rational) -> Result<Self> {
        if !c.in_unit_interval() {
            return Err(Error::OutsideUnitInterval(c.to_string()));
        }
        Ok(PLFunction {
            points: vec![(Rational::zero(), c.clone()), (Rational::one(), c)],
        })
    }

    /// `min(1, max(0, slope·x + intercept))`.
    pub fn clamped_affine(slope: &Rational, intercept: &Rational) -> Self {
        let line = |x: &Rational| slope * x + intercept;
        let mut xs = vec![Rational::zero(), Rational::one()];
        if !slope.is_zero() {
            for level in [Rational::zero(), Rational::one()] {
                let x = (&level - intercept) / slope;
                if x > Rational::zero() && x < Rational::one() {
                    xs.push(x);
                }
            }
        }
        xs.sort();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = line(&x).clamp_unit();
                (x, y)
            })
            .collect();
        Self::normalized(points)
    }

    /// `σ* = (π₁)_σ`, built by expanding the term.
    pub fn sigma_star() -> Self {
        Term::sigma().apply(&Self::identity())
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn breakpoints(&self) -> Vec<Rational> {
        self.points.iter().map(|(x, _)| x.clone()).collect()
    }

    pub fn pieces(&self) -> Vec<Piece> {
        self.points
            .windows(2)
            .map(|w| {
                let (x0, y0) = &w[0];
                let (x1, y1) = &w[1];
                let slope = (y1 - y0) / (x1 - x0);
                let intercept = y0 - &(&slope * x0);
                Piece {
                    start: x0.clone(),
                    end: x1.clone(),
                    slope,
                    intercept,
                }
            })
            .collect()
    }

    pub fn mcnaughton_violation(&self) -> Option<String> {
        self.pieces().into_iter().find(|p| !p.has_integer_coefficients()).map(|p| {
            format!(
                "piece on [{}, {}] has slope {} and intercept {}",
                p.start, p.end, p.slope, p.intercept
            )
        })
    }

    pub fn is_mcnaughton(&self) -> bool {
        self.mcnaughton_violation().is_none()
    }

    /// Exact value at `x ∈ [0,1]`.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if !x.in_unit_interval() {
            return Err(Error::OutsideUnitInterval(x.to_string()));
        }
        Ok(self.value_at(x))
    }

    fn value_at(&self, x: &Rational) -> Rational {
        let idx = self.points.partition_point(|(px, _)| px <= x);
        if idx == 0 {
            return self.points[0].1.clone();
        }
        let (x0, y0) = &self.points[idx - 1];
        if x0 == x || idx == self.points.len() {
            return y0.clone();
        }
        let (x1, y1) = &self.points[idx];
        y0 + &((y1 - y0) * (x - x0) / (x1 - x0))
    }

    pub fn neg(&self) -> Self {
        let points = self
            .points
            .iter()
            .map(|(x, y)| (x.clone(), Rational::one() - y))
            .collect();
        PLFunction { points }
    }

    /// Pointwise binary operation. `kink` is the function whose sign changes
    /// mark where the operation switches branch; those roots are inserted as
    /// breakpoints so the result is affine between consecutive points.
    fn combine(
        &self,
        other: &Self,
        kink: impl Fn(&Rational, &Rational) -> Rational,
        op: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Self {
        let xs = merge(&self.breakpoints(), &other.breakpoints());
        let mut refined = Vec::with_capacity(xs.len() * 2);
        for w in xs.windows(2) {
            refined.push(w[0].clone());
            let ha = kink(&self.value_at(&w[0]), &other.value_at(&w[0]));
            let hb = kink(&self.value_at(&w[1]), &other.value_at(&w[1]));
            if let Some(r) = linear_root(&w[0], &w[1], &ha, &hb) {
                refined.push(r);
            }
        }
        refined.push(Rational::one());
        let points = refined
            .into_iter()
            .map(|x| {
                let y = op(&self.value_at(&x), &other.value_at(&x));
                (x, y)
            })
            .collect();
        Self::normalized(points)
    }

    pub fn oplus(&self, other: &Self) -> Self {
        self.combine(
            other,
            |a, b| a + b - Rational::one(),
            |a, b| (a + b).min(Rational::one()),
        )
    }

    pub fn odot(&self, other: &Self) -> Self {
        self.combine(
            other,
            |a, b| a + b - Rational::one(),
            |a, b| (a + b - Rational::one()).max(Rational::zero()),
        )
    }

    pub fn join(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b, |a, b| a.clone().max(b.clone()))
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b, |a, b| a.clone().min(b.clone()))
    }

    pub fn apply_term(&self, term: &Term) -> Self {
        term.apply(self)
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &Self) -> Self {
        compose(outer, self)
    }

    /// Bounded iteration of `f ↦ f_t`, stopping early at exact stabilization.
    pub fn iterate_term(&self, term: &Term, max_steps: usize) -> BoundedIteration {
        let mut steps = vec![self.clone()];
        for k in 0..max_steps {
            let next = steps[k].apply_term(term);
            let stable = next == steps[k];
            steps.push(next);
            if stable {
                return BoundedIteration {
                    steps,
                    stabilized_at: Some(k),
                };
            }
        }
        BoundedIteration {
            steps,
            stabilized_at: None,
        }
    }

    /// Fixed points as closed intervals; isolated fixpoints are degenerate
    /// intervals `(x, x)`. Adjacent intervals are merged.
    pub fn fixpoints(&self) -> Vec<(Rational, Rational)> {
        let mut out: Vec<(Rational, Rational)> = Vec::new();
        let mut push = |a: Rational, b: Rational| {
            if let Some(last) = out.last_mut() {
                if last.1 >= a {
                    if b > last.1 {
                        last.1 = b;
                    }
                    return;
                }
            }
            out.push((a, b));
        };
        for w in self.points.windows(2) {
            let (x0, y0) = &w[0];
            let (x1, y1) = &w[1];
            let h0 = y0 - x0;
            let h1 = y1 - x1;
            if h0.is_zero() && h1.is_zero() {
                push(x0.clone(), x1.clone());
            } else if h0.is_zero() {
                push(x0.clone(), x0.clone());
            } else if h1.is_zero() {
                push(x1.clone(), x1.clone());
            } else if let Some(r) = linear_root(x0, x1, &h0, &h1) {
                push(r.clone(), r);
            }
        }
        out
    }
}

/// Result of [`PLFunction::iterate_term`]. `steps[0]` is the start;
/// `stabilized_at = Some(n)` means `steps[n] == steps[n + 1]`.
#[derive(Clone, Debug)]
pub struct BoundedIteration {
    pub steps: Vec<PLFunction>,
    pub stabilized_at: Option<usize>,
}

/// Sorted union of two sorted breakpoint lists.
fn merge(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut xs: Vec<Rational> = a.iter().chain(b.iter()).cloned().collect();
    xs.sort();
    xs.dedup();
    xs
}

/// Root of the affine function with values `ha` at `a` and `hb` at `b`, when
/// it lies strictly inside `(a, b)`.
fn linear_root(a: &Rational, b: &Rational, ha: &Rational, hb: &Rational) -> Option<Rational> {
    let zero = Rational::zero();
    let straddles = (ha < &zero && hb > &zero) || (ha > &zero && hb < &zero);
    straddles.then(|| a + &((b - a) * ha / (ha - hb)))
}

/// `outer ∘ inner`: breakpoints of `inner` plus preimages of breakpoints of
/// `outer` on each non-constant piece of `inner`.
pub fn compose(outer: &PLFunction, inner: &PLFunction) -> PLFunction {
    let outer_xs = outer.breakpoints();
    let mut xs: Vec<Rational> = Vec::new();
    for w in inner.points.windows(2) {
        let (x0, y0) = &w[0];
        let (x1, y1) = &w[1];
        xs.push(x0.clone());
        if y0 != y1 {
            let (lo, hi) = if y0 < y1 { (y0, y1) } else { (y1, y0) };
            let mut pre: Vec<Rational> = outer_xs
                .iter()
                .filter(|c| *c > lo && *c < hi)
                .map(|c| x0 + &((c - y0) * (x1 - x0) / (y1 - y0)))
                .collect();
            pre.sort();
            xs.extend(pre);
        }
    }
    xs.push(Rational::one());
    let points = xs
        .into_iter()
        .map(|x| {
            let y = outer.value_at(&inner.value_at(&x));
            (x, y)
        })
        .collect();
    PLFunction::normalized(points)
}

/// Pointwise form of `f ⊑ g` over the maximal ideals of Free₁ (points of
/// [0,1]): wherever `g(x) < 1/2`, `f(x) ≤ g(x)`; wherever `g(x) > 1/2`,
/// `f(x) ≥ g(x)`.
///
/// Decided exactly: after splitting at all breakpoints and at the crossings of
/// `g` with 1/2 and of `f` with `g`, both signs are constant on each open
/// cell, so checking breakpoints and cell midpoints suffices.
pub fn below_pointwise(f: &PLFunction, g: &PLFunction) -> bool {
    let half = Rational::half();
    let xs = merge(&f.breakpoints(), &g.breakpoints());
    let mut refined = Vec::with_capacity(xs.len() * 3);
    for w in xs.windows(2) {
        refined.push(w[0].clone());
        let (ga, gb) = (g.value_at(&w[0]), g.value_at(&w[1]));
        let (fa, fb) = (f.value_at(&w[0]), f.value_at(&w[1]));
        let mut roots: Vec<Rational> = [
            linear_root(&w[0], &w[1], &(&ga - &half), &(&gb - &half)),
            linear_root(&w[0], &w[1], &(&fa - &ga), &(&fb - &gb)),
        ]
        .into_iter()
        .flatten()
        .collect();
        roots.sort();
        refined.extend(roots);
    }
    refined.push(Rational::one());
    refined.dedup();
    let holds_at = |x: &Rational| {
        let gx = g.value_at(x);
        let fx = f.value_at(x);
        match gx.cmp(&half) {
            std::cmp::Ordering::Less => fx <= gx,
            std::cmp::Ordering::Greater => fx >= gx,
            std::cmp::Ordering::Equal => true,
        }
    };
    refined.iter().all(&holds_at)
        && refined.windows(2).all(|w| holds_at(&w[0].midpoint(&w[1])))
}

impl MvOps for PLFunction {
    fn mv_neg(&self) -> Self {
        self.neg()
    }

    fn mv_oplus(&self, other: &Self) -> Self {
        self.oplus(other)
    }
}

impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pl[")?;
        for (i, (x, y)) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({x},{y})")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::frac(p, d)
    }

    fn pts(v: &[(i64, i64, i64, i64)]) -> Vec<(Rational, Rational)> {
        v.iter().map(|&(a, b, c, d)| (q(a, b), q(c, d))).collect()
    }

    #[test]
    fn construction_validates() {
        assert!(PLFunction::from_points(pts(&[(0, 1, 0, 1)])).is_err());
        assert!(PLFunction::from_points(pts(&[(1, 4, 0, 1), (1, 1, 1, 1)])).is_err());
        assert!(PLFunction::from_points(pts(&[(0, 1, 0, 1), (1, 2, 3, 2), (1, 1, 1, 1)])).is_err());
        assert!(PLFunction::from_points(pts(&[(0, 1, 0, 1), (1, 2, 0, 1), (1, 2, 0, 1), (1, 1, 1, 1)]))
            .is_err());
        let err = PLFunction::mcnaughton(pts(&[(0, 1, 1, 2), (1, 1, 1, 2)])).unwrap_err();
        assert!(matches!(err, Error::NotMcNaughton(_)));
    }

    #[test]
    fn normalization_drops_collinear_points() {
        let f = PLFunction::from_points(pts(&[(0, 1, 0, 1), (1, 3, 1, 3), (1, 1, 1, 1)])).unwrap();
        assert_eq!(f, PLFunction::identity());
    }

    #[test]
    fn neg_of_identity() {
        let f = PLFunction::identity().neg();
        assert_eq!(f.points(), &pts(&[(0, 1, 1, 1), (1, 1, 0, 1)])[..]);
    }

    #[test]
    fn truncated_sum_and_product() {
        let x = PLFunction::identity();
        let s = x.oplus(&x);
        assert_eq!(s.points(), &pts(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 1, 1)])[..]);
        let p = x.odot(&x);
        assert_eq!(p.points(), &pts(&[(0, 1, 0, 1), (1, 2, 0, 1), (1, 1, 1, 1)])[..]);
        assert_eq!(x.join(&x.neg()).points().len(), 3);
        assert_eq!(x.meet(&x.neg()).eval(&q(1, 2)).unwrap(), q(1, 2));
    }

    #[test]
    fn sigma_star_values() {
        let s = PLFunction::sigma_star();
        assert_eq!(s.eval(&q(0, 1)).unwrap(), q(0, 1));
        assert_eq!(s.eval(&q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(s.eval(&q(1, 1)).unwrap(), q(1, 1));
        assert_eq!(s.eval(&q(1, 3)).unwrap(), q(0, 1));
        assert_eq!(s.eval(&q(3, 4)).unwrap(), q(1, 1));
        assert_eq!(s.eval(&q(2, 5)).unwrap(), q(1, 5));
        assert_eq!(s.eval(&q(1, 5)).unwrap(), q(0, 1));
        assert_eq!(s.breakpoints(), vec![q(0, 1), q(1, 3), q(2, 3), q(1, 1)]);
        assert!(s.is_mcnaughton());
    }

    #[test]
    fn eval_rejects_outside() {
        assert!(PLFunction::identity().eval(&q(-1, 2)).is_err());
        assert!(PLFunction::identity().eval(&q(3, 2)).is_err());
        assert_eq!(PLFunction::identity().eval(&q(2, 7)).unwrap(), q(2, 7));
    }

    #[test]
    fn term_application() {
        let f = PLFunction::identity().oplus(&PLFunction::identity());
        assert_eq!(f.apply_term(&Term::var()), f);
        let half = PLFunction::constant(q(1, 2)).unwrap();
        assert_eq!(half.apply_term(&Term::sigma()), half);
        assert_eq!(PLFunction::identity().apply_term(&Term::sigma()), PLFunction::sigma_star());
    }

    #[test]
    fn composition_examples() {
        let f = PLFunction::identity().oplus(&PLFunction::identity());
        assert_eq!(compose(&PLFunction::identity(), &f), f);
        let c = PLFunction::constant(q(2, 5)).unwrap();
        let s = PLFunction::sigma_star();
        assert_eq!(compose(&s, &c), PLFunction::constant(q(1, 5)).unwrap());
        // σ*(min(1,2x)) = min(1, max(0, 6x − 1)) up to x = 1/2, then 1
        let sf = compose(&s, &f);
        assert_eq!(sf.breakpoints(), vec![q(0, 1), q(1, 6), q(1, 3), q(1, 1)]);
    }

    #[test]
    fn pointwise_order_examples() {
        let x = PLFunction::identity();
        assert!(below_pointwise(&x, &x));
        assert!(below_pointwise(&PLFunction::sigma_star(), &x));
        let one = PLFunction::constant(q(1, 1)).unwrap();
        let quarter = PLFunction::constant(q(1, 4)).unwrap();
        assert!(!below_pointwise(&one, &quarter));
        assert!(!below_pointwise(&x, &PLFunction::sigma_star()));
    }

    #[test]
    fn fixpoints_of_sigma_star() {
        let fx = PLFunction::sigma_star().fixpoints();
        assert_eq!(
            fx,
            vec![(q(0, 1), q(0, 1)), (q(1, 2), q(1, 2)), (q(1, 1), q(1, 1))]
        );
        assert_eq!(PLFunction::identity().fixpoints(), vec![(q(0, 1), q(1, 1))]);
    }

    #[test]
    fn clamped_affine_forms() {
        let a = PLFunction::clamped_affine(&q(3, 1), &q(-1, 1));
        assert_eq!(a, PLFunction::sigma_star());
        let b = PLFunction::clamped_affine(&q(3, 1), &q(0, 1));
        assert_eq!(b.breakpoints(), vec![q(0, 1), q(1, 3), q(1, 1)]);
    }

    #[test]
    fn iteration_on_identity_never_stabilizes() {
        let it = PLFunction::identity().iterate_term(&Term::sigma(), 4);
        assert_eq!(it.stabilized_at, None);
        assert_eq!(it.steps.len(), 5);
        let it = PLFunction::constant(q(1, 2)).unwrap().iterate_term(&Term::sigma(), 4);
        assert_eq!(it.stabilized_at, Some(0));
    }
}
